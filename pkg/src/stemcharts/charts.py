"""Bigraded abelian-group charts with Chow-degree bookkeeping.

An AbGroupDesc is a finitely-generated-style descriptor: a free rank (finite
or the countably-infinite marker), a multiset of prime-power torsion orders,
optional precision and completion flags, and a divisibility marker for the
large unit groups showing up in K-theory.  Absent chart entries mean the
zero group; zero descriptors are never stored.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from typing import Callable, Iterable, Optional

INF = "inf"  # countably-infinite marker for ranks and multiplicities


def _is_prime_power(n: int) -> Optional[tuple[int, int]]:
    if n < 2:
        return None
    for p in range(2, n + 1):
        if p * p > n:
            return (n, 1)
        if n % p == 0:
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            return (p, k) if n == 1 else None
    return None


def add_ranks(a, b):
    if a == INF or b == INF:
        return INF
    return a + b


def mul_rank(a, m):
    if a == 0 or m == 0:
        return 0
    if a == INF or m == INF:
        return INF
    return a * m


@dataclass(frozen=True)
class AbGroupDesc:
    """Descriptor of a f.g.-style abelian group Z^r (+) sum Z/p^k."""

    free_rank: object = 0                      # int >= 0 or INF
    torsion: tuple[int, ...] = ()              # sorted prime-power orders
    torsion_infinite: tuple[int, ...] = ()     # orders with countably many copies
    modulus_precision: Optional[int] = None    # orders certified below p^K only
    completed_at: Optional[int] = None         # free part means Z_p, not Z
    divisible: bool = False                    # carries a divisible summand

    def __post_init__(self):
        if self.free_rank != INF and (not isinstance(self.free_rank, int)
                                      or self.free_rank < 0):
            raise ValueError(f"bad free rank {self.free_rank!r}")
        for q in tuple(self.torsion) + tuple(self.torsion_infinite):
            if _is_prime_power(q) is None:
                raise ValueError(f"torsion order {q} is not a prime power")
        object.__setattr__(self, "torsion", tuple(sorted(self.torsion)))
        object.__setattr__(self, "torsion_infinite",
                           tuple(sorted(set(self.torsion_infinite))))
        if self.modulus_precision is not None:
            for q in self.torsion + self.torsion_infinite:
                p, k = _is_prime_power(q)
                if k >= self.modulus_precision:
                    raise ValueError("modulus_precision must exceed exponents")

    def is_zero(self) -> bool:
        return (self.free_rank == 0 and not self.torsion
                and not self.torsion_infinite and not self.divisible)

    def same_group(self, other: "AbGroupDesc") -> bool:
        """Equality of the groups described, ignoring precision bookkeeping."""
        return (self.free_rank == other.free_rank
                and self.torsion == other.torsion
                and self.torsion_infinite == other.torsion_infinite
                and self.completed_at == other.completed_at
                and self.divisible == other.divisible)

    def order(self):
        """Order of the group; INF if infinite."""
        if self.free_rank != 0 or self.divisible or self.torsion_infinite:
            return INF
        out = 1
        for q in self.torsion:
            out *= q
        return out

    def p_primary(self, p: int) -> "AbGroupDesc":
        return AbGroupDesc(
            free_rank=self.free_rank,
            torsion=tuple(q for q in self.torsion if q % p == 0),
            torsion_infinite=tuple(q for q in self.torsion_infinite if q % p == 0),
            modulus_precision=self.modulus_precision,
            completed_at=self.completed_at,
            divisible=self.divisible,
        )

    def direct_sum(self, other: "AbGroupDesc") -> "AbGroupDesc":
        # precision propagates pessimistically: min of declared precisions,
        # floored so that orders certified at construction stay recorded
        precs = [x for x in (self.modulus_precision, other.modulus_precision)
                 if x is not None]
        prec = min(precs) if precs else None
        if prec is not None:
            for q in self.torsion + other.torsion + self.torsion_infinite \
                    + other.torsion_infinite:
                _, k = _is_prime_power(q)
                prec = max(prec, k + 1)
        if self.free_rank == 0:
            comp = other.completed_at
        elif other.free_rank == 0:
            comp = self.completed_at
        else:
            comp = self.completed_at if self.completed_at == other.completed_at else None
        return AbGroupDesc(
            free_rank=add_ranks(self.free_rank, other.free_rank),
            torsion=tuple(sorted(self.torsion + other.torsion)),
            torsion_infinite=tuple(sorted(set(self.torsion_infinite)
                                          | set(other.torsion_infinite))),
            modulus_precision=prec,
            completed_at=comp,
            divisible=self.divisible or other.divisible,
        )

    def scaled(self, mult) -> "AbGroupDesc":
        """Direct sum of `mult` copies (mult a natural number or INF)."""
        if mult == 0:
            return AbGroupDesc()
        if mult == INF:
            return AbGroupDesc(
                free_rank=INF if self.free_rank != 0 else 0,
                torsion=(),
                torsion_infinite=tuple(sorted(set(self.torsion)
                                              | set(self.torsion_infinite))),
                modulus_precision=self.modulus_precision,
                completed_at=self.completed_at,
                divisible=self.divisible,
            )
        return AbGroupDesc(
            free_rank=mul_rank(self.free_rank, mult),
            torsion=tuple(sorted(self.torsion * mult)),
            torsion_infinite=self.torsion_infinite,
            modulus_precision=self.modulus_precision,
            completed_at=self.completed_at,
            divisible=self.divisible,
        )

    def to_json(self) -> dict:
        out: dict = {"free_rank": self.free_rank, "torsion": list(self.torsion)}
        if self.torsion_infinite:
            out["torsion_infinite"] = list(self.torsion_infinite)
        if self.modulus_precision is not None:
            out["modulus_precision"] = self.modulus_precision
        if self.completed_at is not None:
            out["completed_at"] = self.completed_at
        if self.divisible:
            out["divisible"] = True
        return out

    @staticmethod
    def from_json(obj: dict) -> "AbGroupDesc":
        return AbGroupDesc(
            free_rank=obj.get("free_rank", 0),
            torsion=tuple(obj.get("torsion", ())),
            torsion_infinite=tuple(obj.get("torsion_infinite", ())),
            modulus_precision=obj.get("modulus_precision"),
            completed_at=obj.get("completed_at"),
            divisible=bool(obj.get("divisible", False)),
        )

    def shorthand(self) -> str:
        """Compact cell text: '.', 'Z', 'Z^2', 'Zp', '9', 'Z(+)3', ..."""
        if self.is_zero():
            return "."
        parts = []
        if self.free_rank != 0:
            sym = f"Z{self.completed_at}" if self.completed_at else "Z"
            if self.free_rank == 1:
                parts.append(sym)
            else:
                parts.append(f"{sym}^{self.free_rank}")
        if self.divisible:
            parts.append("div")
        for q in self.torsion:
            parts.append(str(q))
        for q in self.torsion_infinite:
            parts.append(f"{q}^inf")
        return "(+)".join(parts)


ZERO_GROUP = AbGroupDesc()


def free_group(rank=1, completed_at: Optional[int] = None) -> AbGroupDesc:
    return AbGroupDesc(free_rank=rank, completed_at=completed_at)


def cyclic(q: int) -> AbGroupDesc:
    """Z/q as a descriptor; q is factored into prime powers."""
    n = q
    torsion = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            pk = 1
            while n % p == 0:
                pk *= p
                n //= p
            torsion.append(pk)
        p += 1
    if n > 1:
        torsion.append(n)
    return AbGroupDesc(torsion=tuple(sorted(torsion)))


def complete_desc(g: AbGroupDesc, p: int) -> AbGroupDesc:
    """Naive p-completion on descriptors.

    Free rank r of Z becomes rank r of Z_p; torsion coprime to p is removed;
    divisible summands die (their p-completion vanishes).
    """
    return AbGroupDesc(
        free_rank=g.free_rank,
        torsion=tuple(q for q in g.torsion if q % p == 0),
        torsion_infinite=tuple(q for q in g.torsion_infinite if q % p == 0),
        modulus_precision=g.modulus_precision,
        completed_at=p if g.free_rank != 0 else None,
        divisible=False,
    )


# ---------------------------------------------------------------------------
# weight functions

class WeightFunction:
    """Superadditive truncation weight: chow (2n), fd(d) (2n + eps_d), or table."""

    def __init__(self, kind: str, d: Optional[int] = None,
                 table: Optional[dict[int, int]] = None):
        if kind not in ("chow", "fd", "custom"):
            raise ValueError(f"unknown weight kind {kind!r}")
        if kind == "fd":
            if d is None or d <= 0:
                raise ValueError("fd weight needs d > 0")
        if kind == "custom" and not table:
            raise ValueError("custom weight needs a table")
        self.kind = kind
        self.d = d
        self.table = dict(table) if table else None

    def __call__(self, n: int) -> int:
        return weight_eval(self, n)

    def check_superadditive(self, window: int = 50) -> bool:
        """f(a)+f(b) >= f(a+b) and f(0)=0 on |a|,|b| <= window."""
        if self(0) != 0:
            return False
        for a in range(-window, window + 1):
            fa = self(a)
            for b in range(-window, window + 1):
                if fa + self(b) < self(a + b):
                    return False
        return True

    def describe(self) -> str:
        if self.kind == "chow":
            return "chow"
        if self.kind == "fd":
            return f"fd({self.d})"
        return "custom"


def chow_weight() -> WeightFunction:
    return WeightFunction("chow")


def fd_weight(d: int) -> WeightFunction:
    return WeightFunction("fd", d=d)


def custom_weight(table: dict[int, int]) -> WeightFunction:
    return WeightFunction("custom", table=table)


def weight_eval(f: WeightFunction, n: int) -> int:
    if f.kind == "chow":
        return 2 * n
    if f.kind == "fd":
        eps = (-n) % f.d
        return 2 * n + eps
    if n not in f.table:
        raise KeyError(f"custom weight queried outside its window at {n}")
    return f.table[n]


def chow_degree(i: int, j: int) -> int:
    return i - 2 * j


# ---------------------------------------------------------------------------
# charts

class ChartError(Exception):
    pass


class BigradedChart:
    """Sparse immutable map (i, j) -> AbGroupDesc; absent entries are zero."""

    def __init__(self, entries: dict[tuple[int, int], AbGroupDesc] | None = None,
                 label: str = "", prime: Optional[int] = None):
        self._entries = {}
        if entries:
            for (i, j), g in entries.items():
                if not isinstance(g, AbGroupDesc):
                    raise TypeError("chart entries must be AbGroupDesc")
                if not g.is_zero():
                    self._entries[(int(i), int(j))] = g
        self.label = label
        self.prime = prime

    @property
    def entries(self) -> dict[tuple[int, int], AbGroupDesc]:
        return dict(self._entries)

    def group(self, i: int, j: int) -> AbGroupDesc:
        return self._entries.get((i, j), ZERO_GROUP)

    def support(self) -> list[tuple[int, int]]:
        return sorted(self._entries, key=lambda ij: (ij[1], ij[0]))

    def is_empty(self) -> bool:
        return not self._entries

    def __eq__(self, other) -> bool:
        if not isinstance(other, BigradedChart):
            return NotImplemented
        return self._entries == other._entries

    def with_label(self, label: str) -> "BigradedChart":
        return BigradedChart(self._entries, label, self.prime)

    def to_json(self) -> dict:
        entries = []
        for (i, j) in self.support():
            ent = {"i": i, "j": j}
            ent.update(self._entries[(i, j)].to_json())
            entries.append(ent)
        return {"label": self.label, "prime": self.prime, "entries": entries}

    def to_json_str(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=False)

    @staticmethod
    def from_json(obj: dict) -> "BigradedChart":
        entries = {}
        for ent in obj.get("entries", []):
            entries[(ent["i"], ent["j"])] = AbGroupDesc.from_json(ent)
        return BigradedChart(entries, obj.get("label", ""), obj.get("prime"))


def truncate_chart(c: BigradedChart, f: WeightFunction, threshold: int,
                   mode: str) -> BigradedChart:
    """Keep entry (i, j) iff i - f(j) satisfies `mode` against threshold."""
    if mode not in ("ge", "lt", "eq"):
        raise ValueError(f"unknown truncation mode {mode!r}")
    out = {}
    for (i, j), g in c.entries.items():
        v = i - weight_eval(f, j)
        keep = (v >= threshold) if mode == "ge" else \
               (v < threshold) if mode == "lt" else (v == threshold)
        if keep:
            out[(i, j)] = g
    return BigradedChart(out, c.label, c.prime)


def chart_combine(a: BigradedChart, b: Optional[BigradedChart], op: str,
                  shift: tuple[int, int] = (0, 0)) -> BigradedChart:
    """direct_sum of two charts, or shift of one chart by (di, dj)."""
    if op == "shift":
        di, dj = shift
        return BigradedChart({(i + di, j + dj): g for (i, j), g in a.entries.items()},
                             a.label, a.prime)
    if op == "direct_sum":
        if b is None:
            raise ValueError("direct_sum needs two charts")
        if a.prime is not None and b.prime is not None and a.prime != b.prime:
            raise ChartError(f"prime mismatch: {a.prime} vs {b.prime}")
        out = a.entries
        for (i, j), g in b.entries.items():
            cur = out.get((i, j))
            out[(i, j)] = g if cur is None else cur.direct_sum(g)
        return BigradedChart(out, a.label or b.label, a.prime or b.prime)
    raise ValueError(f"unknown combine op {op!r}")


def complete_chart(c: BigradedChart, p: int) -> BigradedChart:
    out = {ij: complete_desc(g, p) for ij, g in c.entries.items()}
    return BigradedChart(out, c.label, p)


def charts_same_groups(a: BigradedChart, b: BigradedChart) -> bool:
    """Entrywise group equality, ignoring precision bookkeeping."""
    keys = set(a.entries) | set(b.entries)
    return all(a.group(*k).same_group(b.group(*k)) for k in keys)
