"""Bigraded motivic stable-stem charts.

Assembles the other engines: Morel's zero line from Milnor-Witt K-theory,
homotopy of completed algebraic cobordism from completed Milnor K-theory
with a Bott element and Lazard generators, the Adams-Novikov E_1 levels,
synthetic stable stems (computed from Ext in the degeneration range, or
loaded from a table file), and the tensor-product formula for
Tate-orientable fields.

Chart conventions: an Ext class in (s, t) sits at stem n = t - s and
weight w = t / 2.  The zeroth Milnor-Witt stem is the diagonal {(k, k)};
in the eta-degree grading (twist -k) it carries Z_p[eta]-type data.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from typing import Optional

from .charts import (AbGroupDesc, BigradedChart, INF, chart_combine,
                     complete_desc, cyclic, free_group)
from .fields import FieldDescriptor, FieldError, milnor_k
from .kmw import KMWChart, complete_kmw, free_basis, milnor_witt
from .hopf import build_algebroid
from .extcharts import ExtChart, ext_chart


class PreconditionError(Exception):
    """A documented precondition fails (maps to CLI exit code 2)."""


@dataclass(frozen=True)
class Box:
    i_min: int
    i_max: int
    j_min: int
    j_max: int

    def contains(self, i: int, j: int) -> bool:
        return self.i_min <= i <= self.i_max and self.j_min <= j <= self.j_max


# ---------------------------------------------------------------------------
# Morel zero line

def morel_zero_line(k: FieldDescriptor, lo: int, hi: int) -> BigradedChart:
    """Diagonal chart (n, n) -> K^MW_{-n}; everything below the diagonal is
    zero, and off-diagonal positions carry no assertion."""
    if k.characteristic() == 2:
        raise PreconditionError("Morel zero line needs characteristic != 2")
    kmw = milnor_witt(k, -hi, -lo)
    entries = {}
    for n in range(lo, hi + 1):
        g = kmw.group(-n)
        if not g.is_zero():
            entries[(n, n)] = g
    return BigradedChart(entries, label=f"Morel 0-line of {k.describe()}")


# ---------------------------------------------------------------------------
# MGL homotopy and ANSS E_1 levels

def _partition_counts(n_max: int) -> list[int]:
    out = [1] + [0] * n_max
    for part in range(1, n_max + 1):
        for n in range(part, n_max + 1):
            out[n] += out[n - part]
    return out


def _colored_partition_counts(colors: int, n_max: int) -> list[int]:
    """Monomial counts of a polynomial ring on `colors` copies of one
    generator per positive degree: s-fold tensor powers of the Lazard
    pattern."""
    out = [1] + [0] * n_max
    for _ in range(colors):
        p1 = _partition_counts(n_max)
        new = [0] * (n_max + 1)
        for a in range(n_max + 1):
            if out[a] == 0:
                continue
            for b in range(0, n_max + 1 - a):
                new[a + b] += out[a] * p1[b]
        out = new
    return out


def mgl_homotopy(k: FieldDescriptor, ell: int, box: Box) -> BigradedChart:
    """pi_** of ell-completed algebraic cobordism: completed Milnor
    K-theory, a Bott element tau in (0, -1), and Lazard generators in
    (2i, i)."""
    return _mgl_like(k, ell, box, levels=1,
                     label=f"MGL^_{ell} over {k.describe()}")


def anss_e1(k: FieldDescriptor, ell: int, s: int, box: Box) -> BigradedChart:
    """Level-s cosimplicial term of the motivic Adams-Novikov E_1 page:
    the s-fold cooperations power is free on monomials in bidegrees
    (2d, d), so the chart is the cobordism pattern with multiplicities from
    an (s+1)-fold colored count."""
    if s < 0:
        raise PreconditionError("cosimplicial level must be >= 0")
    return _mgl_like(k, ell, box, levels=s + 1,
                     label=f"ANSS E1 level {s} over {k.describe()}")


def _mgl_like(k: FieldDescriptor, ell: int, box: Box, levels: int,
              label: str) -> BigradedChart:
    if k.characteristic() == ell:
        raise PreconditionError("completion prime equals the characteristic")
    cmax = box.i_max - 2 * box.j_min
    if cmax < 0:
        return BigradedChart({}, label=label, prime=ell)
    n_top = cmax
    km = milnor_k(k, n_top)
    completed = {n: complete_desc(g, ell) for n, g in km.items()}
    dmax = (box.i_max + n_top) // 2 + 1
    counts = _colored_partition_counts(levels, max(dmax, 0))
    entries: dict[tuple[int, int], AbGroupDesc] = {}
    for n, g in completed.items():
        if g.is_zero():
            continue
        for e in range(0, (cmax - n) // 2 + 1):
            for d in range(0, dmax + 1):
                i = 2 * d - n
                j = d - e - n
                if not box.contains(i, j):
                    continue
                piece = g.scaled(counts[d]) if d <= len(counts) - 1 else None
                if piece is None or piece.is_zero():
                    continue
                cur = entries.get((i, j))
                entries[(i, j)] = piece if cur is None else cur.direct_sum(piece)
    return BigradedChart(entries, label=label, prime=ell)


# ---------------------------------------------------------------------------
# synthetic stems

def degeneration_range(p: int) -> int:
    """Maximal stem through which the E_2 chart is read off as synthetic
    homotopy; conservative classical bounds, with p = 2 table-only."""
    if p == 2:
        return 0
    if p == 3:
        return 20
    return 2 * p * (p - 1) - 3


@dataclass
class SyntheticChart:
    chart: BigradedChart                     # (stem n, weight w)
    p: int
    degeneration_max: int
    filtrations: dict[tuple[int, int], tuple] = dc_field(default_factory=dict)
    source: str = "computed"

    def group(self, n: int, w: int) -> AbGroupDesc:
        return self.chart.group(n, w)

    def milnor_witt_row(self, m: int = 0) -> dict[int, AbGroupDesc]:
        """The m-th Milnor-Witt stem as a singly graded row, keyed by the
        eta-degree twist (the diagonal entry (k+m, k) appears at twist -k)."""
        out = {}
        for (n, w), g in self.chart.entries.items():
            if n - w == m:
                out[-w] = g
        return out

    def to_json(self) -> dict:
        obj = self.chart.to_json()
        obj["axes"] = ["stem", "weight"]
        obj["degeneration_max"] = self.degeneration_max
        obj["source"] = self.source
        obj["filtrations"] = [
            {"stem": n, "weight": w, "entries": list(v)}
            for (n, w), v in sorted(self.filtrations.items(),
                                    key=lambda kv: (kv[0][1], kv[0][0]))]
        return obj


BUILTIN_TABLES: dict[int, dict] = {
    # Synthetic stems at p = 2, Ext-layer entries for low stems.  The
    # zeroth Milnor-Witt row (the eta tower on the diagonal) realizes
    # Z_2[eta]/2eta; the remaining entries reproduce the 2-primary
    # cobordism Ext chart in this range.
    2: {
        "p": 2,
        "stems": {
            "0": [[0, 0, "free"]],
            "1": [[1, 1, 2]],
            "2": [[2, 2, 2]],
            "3": [[2, 1, 4], [3, 3, 2]],
            "4": [[4, 4, 2]],
            "5": [[3, 1, 2], [5, 5, 2]],
            "6": [[4, 2, 2], [4, 2, 2], [6, 6, 2]],
            "7": [[4, 1, 16], [5, 3, 2], [7, 7, 2]],
        },
    },
    # p = 3 table: frozen from the verified E_2 computation, stems <= 12.
    3: {
        "p": 3,
        "stems": {
            "0": [[0, 0, "free"]],
            "3": [[2, 1, 3]],
            "7": [[4, 1, 3]],
            "10": [[6, 2, 3]],
            "11": [[6, 1, 9]],
        },
    },
}


def load_table(source) -> dict:
    if isinstance(source, dict):
        return source
    with open(source, "r", encoding="utf-8") as fh:
        return json.load(fh)


def synthetic_from_table(table: dict, stem_max: int) -> SyntheticChart:
    p = table["p"]
    entries: dict[tuple[int, int], AbGroupDesc] = {}
    filtr: dict[tuple[int, int], tuple] = {}
    for stem_str, items in table["stems"].items():
        n = int(stem_str)
        if n > stem_max:
            continue
        for w, s, order in items:
            if s < 0:
                raise ValueError("negative filtration in table")
            if order == "free":
                g = free_group(1, completed_at=p)
            else:
                g = cyclic(int(order))
            cur = entries.get((n, w))
            entries[(n, w)] = g if cur is None else cur.direct_sum(g)
            filtr.setdefault((n, w), ())
            filtr[(n, w)] = filtr[(n, w)] + ((s, order),)
    chart = BigradedChart(entries, label=f"synthetic stems p={p} (table)",
                          prime=p)
    return SyntheticChart(chart, p, stem_max, filtr, source="table")


def synthetic_stems(p: int, stem_max: int, source: str = "computed",
                    table=None, precision: int = 10) -> SyntheticChart:
    """Synthetic stable stems through the given stem.

    source "computed" runs the Ext engine (odd p, within the degeneration
    range); source "table" loads a table file or the built-in table.
    """
    if source == "table":
        data = load_table(table) if table is not None else BUILTIN_TABLES.get(p)
        if data is None:
            raise PreconditionError(f"no synthetic table available for p={p}")
        if data["p"] != p:
            raise PreconditionError("table prime mismatch")
        return synthetic_from_table(data, stem_max)
    if source != "computed":
        raise ValueError(f"unknown source {source!r}")
    if p == 2:
        raise PreconditionError(
            "p=2 synthetic stems require a table file (no computed source)")
    dmax = degeneration_range(p)
    if stem_max > dmax:
        raise PreconditionError(
            f"stem_max {stem_max} exceeds the degeneration range {dmax} at p={p}")
    s_max = stem_max // (2 * p - 3) + 1
    t_max = stem_max + s_max
    if t_max % 2:
        t_max += 1
    bound = t_max // 2
    alg = build_algebroid("p_typical", bound, p=p)
    ec = ext_chart(alg, p, precision, s_max=s_max, t_max=t_max)
    entries: dict[tuple[int, int], AbGroupDesc] = {}
    filtr: dict[tuple[int, int], tuple] = {}
    for (s, t), g in ec.chart.entries.items():
        n = t - s
        if n > stem_max:
            continue
        w = t // 2
        cur = entries.get((n, w))
        entries[(n, w)] = g if cur is None else cur.direct_sum(g)
        ordr = "free" if g.free_rank else g.order()
        filtr.setdefault((n, w), ())
        filtr[(n, w)] = filtr[(n, w)] + ((s, ordr),)
    chart = BigradedChart(entries, label=f"synthetic stems p={p}", prime=p)
    syn = SyntheticChart(chart, p, stem_max, filtr, source="computed")
    _check_synthetic_invariants(syn)
    return syn


def _check_synthetic_invariants(syn: SyntheticChart):
    for (n, w), anns in syn.filtrations.items():
        for s, _ in anns:
            if s < 0 or (n + s) != 2 * w:
                raise AssertionError(f"filtration annotation out of lane at {(n, w)}")


# ---------------------------------------------------------------------------
# tensor-product formula

def tensor_formula(k: FieldDescriptor, p: int, stem_max: int,
                   source: str = "auto", table=None,
                   precision: int = 10) -> BigradedChart:
    """pi_** of the (p, eta)-completed sphere of a Tate-orientable field:
    the synthetic chart summed over shifts from the free basis of completed
    Milnor-Witt K-theory, then completed degreewise."""
    if not k.tate_orientable(p):
        raise PreconditionError(
            f"{k.describe()} is not Tate-orientable at {p}: "
            "the tensor-product formula does not apply")
    if source == "auto":
        source = "table" if p == 2 else "computed"
    window = stem_max + 2
    kmw = milnor_witt(k, -window, window)
    completed = complete_kmw(kmw, p)
    basis = free_basis(completed, p, field=k)
    syn = synthetic_stems(p, stem_max, source=source, table=table,
                          precision=precision)
    out: dict[tuple[int, int], AbGroupDesc] = {}
    for shift, mult in sorted(basis.items()):
        for (n, w), g in syn.chart.entries.items():
            pos = (n + shift, w + shift)
            piece = g.scaled(mult)
            if piece.is_zero():
                continue
            cur = out.get(pos)
            out[pos] = piece if cur is None else cur.direct_sum(piece)
    # degreewise completion pass (idempotent on already complete entries)
    completed_entries = {pos: complete_desc(g, p) for pos, g in out.items()}
    return BigradedChart(completed_entries,
                         label=f"stems of {k.describe()} at p={p}", prime=p)
