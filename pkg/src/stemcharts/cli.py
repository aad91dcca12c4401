"""Command-line surface.

Subcommands: ext (Adams-Novikov E_2 charts), kmw (Milnor-Witt K-theory of
a catalogued field), stems (tensor-product formula charts), decompose
(F_p[[t]]-module reports), check (validation suites), render (saved chart
JSON), catalog (list/show field descriptors).

Exit codes: 0 success, 2 precondition violation, 3 precision exhausted.
Every command is deterministic given its inputs: re-running reproduces
byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .cache import ENGINE_VERSION, cache_key, cache_load, cache_store
from .charts import BigradedChart
from .catalog import catalog_to_json, get_field, load_catalog
from .extcharts import PrecisionExhausted, ext_chart
from .fields import FieldError
from .fpt import FptModule, IndFptModule, classify_divisible, check_torsion_powers, \
    check_u_sequence, decompose
from .hopf import build_algebroid
from .kmw import NotFreeError, complete_kmw, free_basis, milnor_witt
from .render import render_svg, render_text
from .stems import PreconditionError, synthetic_stems, tensor_formula

EXIT_OK = 0
EXIT_PRECONDITION = 2
EXIT_PRECISION = 3


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _chart_output(chart: BigradedChart, fmt: str, view: str) -> str:
    if fmt == "json":
        return json.dumps(chart.to_json(), indent=1) + "\n"
    if fmt == "grid":
        return render_text(chart, view=view)
    if fmt == "svg":
        return render_svg(chart, view=view)
    raise ValueError(f"unknown format {fmt!r}")


def _with_cache(args, command: str, params: dict, compute):
    """Cache the canonical JSON payload; render from the cached payload."""
    cache_dir = args.cache_dir or os.environ.get("STEMCHARTS_CACHE_DIR")
    payload = None
    key = None
    if cache_dir:
        key = cache_key(command, params)
        payload = cache_load(cache_dir, key)
    if payload is None:
        obj = compute()
        payload = json.dumps(obj, indent=1) + "\n"
        if cache_dir and key:
            cache_store(cache_dir, key, payload)
    return payload


def cmd_ext(args) -> int:
    params = {
        "kind": args.kind, "prime": args.prime, "smax": args.smax,
        "tmax": args.tmax, "precision": args.precision,
        "normalized": not args.unnormalized,
    }

    def compute():
        bound = max((args.tmax + 1) // 2, 1)
        alg = build_algebroid(args.kind, bound,
                              p=args.prime if args.kind == "p_typical" else None)
        ec = ext_chart(alg, args.prime, args.precision, args.smax, args.tmax,
                       normalized=not args.unnormalized)
        return ec.to_json()

    payload = _with_cache(args, "ext", params, compute)
    if args.format == "json":
        _emit(payload, args.out)
    else:
        chart = BigradedChart.from_json(json.loads(payload))
        _emit(_chart_output(chart, args.format, args.view), args.out)
    return EXIT_OK


def cmd_kmw(args) -> int:
    k = get_field(args.field, args.catalog)
    lo, hi = _parse_range(args.range)
    params = {"field": args.field, "range": [lo, hi], "complete": args.complete}

    def compute():
        chart = milnor_witt(k, lo, hi)
        if args.complete:
            chart = complete_kmw(chart, args.complete)
        obj = chart.to_json()
        if args.complete and args.basis:
            basis = free_basis(chart, args.complete, field=k)
            obj["free_basis"] = {str(n): m for n, m in basis.items()}
        return obj

    payload = _with_cache(args, "kmw", params, compute)
    if args.format == "json":
        _emit(payload, args.out)
    else:
        obj = json.loads(payload)
        chart = BigradedChart({(int(n), 0): _desc(g)
                               for n, g in obj["kmw"].items()},
                              label=f"K^MW of {obj['field']}")
        _emit(_chart_output(chart, args.format, "ij"), args.out)
    return EXIT_OK


def _desc(g):
    from .charts import AbGroupDesc
    return AbGroupDesc.from_json(g)


def cmd_stems(args) -> int:
    k = get_field(args.field, args.catalog)
    params = {"field": args.field, "prime": args.prime,
              "stem_max": args.stem_max, "source": args.source,
              "table": bool(args.table), "precision": args.precision}

    def compute():
        chart = tensor_formula(k, args.prime, args.stem_max,
                               source=args.source, table=args.table,
                               precision=args.precision)
        return chart.to_json()

    payload = _with_cache(args, "stems", params, compute)
    if args.format == "json":
        _emit(payload, args.out)
    else:
        chart = BigradedChart.from_json(json.loads(payload))
        _emit(_chart_output(chart, args.format, args.view), args.out)
    return EXIT_OK


def cmd_synthetic(args) -> int:
    params = {"prime": args.prime, "stem_max": args.stem_max,
              "source": args.source, "table": bool(args.table),
              "precision": args.precision}

    def compute():
        syn = synthetic_stems(args.prime, args.stem_max, source=args.source,
                              table=args.table, precision=args.precision)
        return syn.to_json()

    payload = _with_cache(args, "synthetic", params, compute)
    if args.format == "json":
        _emit(payload, args.out)
    else:
        chart = BigradedChart.from_json(json.loads(payload))
        _emit(_chart_output(chart, args.format, args.view), args.out)
    return EXIT_OK


def cmd_decompose(args) -> int:
    with open(args.module_file, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if "modules" in data:
        mods = [FptModule.from_json(m) for m in data["modules"]]
        maps = data["maps"]
        ind = IndFptModule(mods, maps, data.get("stable_from", 0))
        dec = classify_divisible(ind)
        report = dec.to_json()
        report["kind"] = "ind_system"
    else:
        M = FptModule.from_json(data)
        dec = decompose(M)
        tp, witness = check_torsion_powers(M)
        useq = {}
        n = 0
        while M.p ** n <= max(M.dim, 1) and M.dim:
            useq[str(M.p ** n)] = check_u_sequence(M, M.p, n)
            n += 1
        report = dec.to_json()
        report["kind"] = "module"
        report["torsion_power_condition"] = tp
        if witness:
            report["torsion_power_witness"] = witness
        report["u_sequence_exact"] = useq
    _emit(json.dumps(report, indent=1) + "\n", args.out)
    return EXIT_OK


def cmd_render(args) -> int:
    with open(args.chart_file, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    chart = BigradedChart.from_json(obj)
    _emit(_chart_output(chart, args.format, args.view), args.out)
    return EXIT_OK


def cmd_catalog(args) -> int:
    fields = load_catalog(args.catalog)
    if args.show:
        if args.show not in fields:
            raise FieldError(f"unknown field {args.show!r}")
        obj = fields[args.show].to_json()
        _emit(json.dumps(obj, indent=1) + "\n", args.out)
    else:
        obj = catalog_to_json(fields)
        if args.names_only:
            _emit("\n".join(sorted(obj["fields"])) + "\n", args.out)
        else:
            _emit(json.dumps(obj, indent=1) + "\n", args.out)
    return EXIT_OK


def cmd_check(args) -> int:
    from . import checks
    ok = checks.run_suite(args.suite, verbose=True)
    return EXIT_OK if ok else 1


def _parse_range(text: str) -> tuple[int, int]:
    lo, _, hi = text.partition(":")
    return int(lo), int(hi)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="stemcharts",
        description="Exact-arithmetic motivic stable-stem charts "
                    f"(engine {ENGINE_VERSION})")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, view_default="ij"):
        p.add_argument("--format", choices=["json", "grid", "svg"],
                       default="json")
        p.add_argument("--view", choices=["ij", "stem-weight"],
                       default=view_default)
        p.add_argument("--out", default=None, help="write output to a file")
        p.add_argument("--cache-dir", default=None,
                       help="cache directory (default: $STEMCHARTS_CACHE_DIR)")
        p.add_argument("--catalog", default=None, help="field catalog JSON")

    p = sub.add_parser("ext", help="Adams-Novikov E2 chart from the cobar complex")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--smax", type=int, default=6)
    p.add_argument("--tmax", type=int, default=18)
    p.add_argument("--precision", type=int, default=10)
    p.add_argument("--kind", choices=["p_typical", "universal"],
                   default="p_typical")
    p.add_argument("--unnormalized", action="store_true",
                   help="use the unnormalized cobar complex (oracle mode)")
    common(p, view_default="stem-weight")
    p.set_defaults(func=cmd_ext)

    p = sub.add_parser("kmw", help="Milnor-Witt K-theory of a catalog field")
    p.add_argument("--field", required=True)
    p.add_argument("--range", default="-5:5",
                   help="LO:HI degrees (use --range=-5:5 for negative LO)")
    p.add_argument("--complete", type=int, default=None,
                   help="(p, eta)-complete at this prime")
    p.add_argument("--basis", action="store_true",
                   help="include the free basis over pi_0 synthetic")
    common(p)
    p.set_defaults(func=cmd_kmw)

    p = sub.add_parser("stems", help="motivic stable stems via the tensor formula")
    p.add_argument("--field", required=True)
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--stem-max", type=int, default=12)
    p.add_argument("--source", choices=["auto", "computed", "table"],
                   default="auto")
    p.add_argument("--table", default=None, help="synthetic table file")
    p.add_argument("--precision", type=int, default=10)
    common(p)
    p.set_defaults(func=cmd_stems)

    p = sub.add_parser("synthetic", help="synthetic stable stems chart")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--stem-max", type=int, default=12)
    p.add_argument("--source", choices=["computed", "table"], default="computed")
    p.add_argument("--table", default=None)
    p.add_argument("--precision", type=int, default=10)
    common(p)
    p.set_defaults(func=cmd_synthetic)

    p = sub.add_parser("decompose", help="decompose an F_p[[t]]-module file")
    p.add_argument("--module-file", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("render", help="render a saved chart JSON")
    p.add_argument("--chart-file", required=True)
    p.add_argument("--format", choices=["grid", "svg", "json"], default="grid")
    p.add_argument("--view", choices=["ij", "stem-weight"], default="ij")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("catalog", help="list or show field descriptors")
    p.add_argument("--show", default=None)
    p.add_argument("--names-only", action="store_true")
    p.add_argument("--catalog", default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("check", help="run a validation suite")
    p.add_argument("--suite", default="all",
                   choices=["milnor", "fpt", "charts", "hopf", "ext",
                            "stems", "determinism", "all"])
    p.set_defaults(func=cmd_check)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except PrecisionExhausted as exc:
        print(f"stemcharts: precision exhausted: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except (PreconditionError, FieldError, NotFreeError, ValueError) as exc:
        print(f"stemcharts: precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
