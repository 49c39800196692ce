"""Command-line front end.

Subcommands: rank, grass, flags, complex, homology, apartments, orbits,
verify.  All outputs are byte-stable given the same arguments; budgets are
counted in enumerated objects, never wall time, so behaviour is machine
independent.
"""

from __future__ import annotations

import argparse
import json
import sys

from .rings import BudgetExceeded, DEFAULT_BUDGET, make_ring, parse_ring_spec
from .grassmann import (
    enumerate_good_flags,
    enumerate_grassmannian,
    flag_type,
    grassmannian_size_formula,
)
from .complexes import build_filtration, build_tits_complex
from .homology import chain_complex, reduced_homology
from .steinberg import apartment_span_rank, p1_orbit_and_commutant, table_generate
from .verify import run_verify

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_ARGS = 2
EXIT_BUDGET = 3


def _parse_specs(text: str):
    return [parse_ring_spec(part) for part in text.split(",") if part.strip()]


def _emit(args, text: str):
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_text(doc) -> str:
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def cmd_rank(args) -> int:
    specs = _parse_specs(args.rings)
    table = table_generate(specs, args.n_max)
    if args.format == "csv":
        _emit(args, table.to_csv())
    elif args.format == "json":
        _emit(args, _json_text(table.to_json_dict()))
    else:
        _emit(args, table.to_text())
    return EXIT_OK


def cmd_grass(args) -> int:
    spec = parse_ring_spec(args.ring)
    n = args.n
    ks = [args.k] if args.k is not None else list(range(0, n + 1))
    rows = []
    for k in ks:
        row = {"k": k, "formula": grassmannian_size_formula(spec, n, k)}
        if args.enumerate:
            summands = enumerate_grassmannian(spec, n, k, args.budget)
            row["enumerated"] = len(summands)
            row["match"] = row["enumerated"] == row["formula"]
            if args.list:
                row["bases"] = [s.payload_basis() for s in summands]
        rows.append(row)
    doc = {"schema_version": 1, "ring": spec.label, "n": n, "grassmannians": rows}
    if args.format == "json":
        _emit(args, _json_text(doc))
    elif args.format == "csv":
        lines = ["k,formula" + (",enumerated,match" if args.enumerate else "")]
        for r in rows:
            line = f"{r['k']},{r['formula']}"
            if args.enumerate:
                line += f",{r['enumerated']},{str(r['match']).lower()}"
            lines.append(line)
        _emit(args, "\n".join(lines) + "\n")
    else:
        lines = [f"Gr_k^{n}({spec.label})"]
        for r in rows:
            line = f"  k={r['k']}: {r['formula']}"
            if args.enumerate:
                line += f"  (enumerated {r['enumerated']}, {'ok' if r['match'] else 'MISMATCH'})"
            lines.append(line)
        _emit(args, "\n".join(lines) + "\n")
    if args.enumerate and any(not r["match"] for r in rows):
        return EXIT_CHECK_FAILED
    return EXIT_OK


def cmd_flags(args) -> int:
    spec = parse_ring_spec(args.ring)
    lam = flag_type([int(x) for x in args.type.split(",")], args.n)
    flags = enumerate_good_flags(spec, args.n, lam, args.budget)
    doc = {
        "schema_version": 1,
        "ring": spec.label,
        "n": args.n,
        "type": list(lam),
        "count": len(flags),
    }
    if args.list:
        doc["flags"] = [[s.payload_basis() for s in f.summands] for f in flags]
    if args.format == "json":
        _emit(args, _json_text(doc))
    elif args.format == "csv":
        _emit(args, "ring,n,type,count\n" + f"{spec.label},{args.n},{'|'.join(map(str, lam))},{len(flags)}\n")
    else:
        _emit(args, f"good flags of type {lam} in {spec.label}^{args.n}: {len(flags)}\n")
    return EXIT_OK


def _build(args):
    spec = parse_ring_spec(args.ring)
    ring = make_ring(spec)
    if getattr(args, "filtration", None):
        return build_filtration(ring, args.n, args.filtration, args.budget)
    return build_tits_complex(ring, args.n, args.budget)


def cmd_complex(args) -> int:
    cx = _build(args)
    if args.format == "csv":
        raise ValueError("complex export supports json or text, not csv")
    _emit(args, cx.export_text() if args.format == "text" else _json_text(cx.export_document()))
    return EXIT_OK


def cmd_homology(args) -> int:
    cx = _build(args)
    hom = reduced_homology(chain_complex(cx))
    doc = hom.to_json_dict()
    doc["ring"] = cx.ring.spec.label
    doc["n"] = cx.n
    doc["max_rank"] = cx.max_rank
    if args.format == "json":
        _emit(args, _json_text(doc))
    elif args.format == "csv":
        lines = ["degree,betti,torsion"]
        for d in range(len(hom.betti)):
            tors = "|".join(str(t) for t in hom.torsion[d])
            lines.append(f"{d},{hom.betti[d]},{tors}")
        _emit(args, "\n".join(lines) + "\n")
    else:
        name = f"T_({cx.n},{cx.max_rank})" if cx.max_rank < cx.n - 1 else f"T_{cx.n}"
        lines = [f"{name}({cx.ring.spec.label}): f-vector {hom.f_vector}"]
        for d in range(len(hom.betti)):
            tors = hom.torsion[d] or "none"
            lines.append(f"  degree {d}: betti {hom.betti[d]}, torsion {tors}")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_apartments(args) -> int:
    if args.n < 2:
        raise ValueError("apartments need n >= 2 (the complex is empty for n = 1)")
    cx = _build(args)
    hom = reduced_homology(chain_complex(cx))
    res = apartment_span_rank(cx, mode=args.mode, seed=args.seed, budget=args.budget)
    top = cx.dim
    doc = {
        "schema_version": 1,
        "ring": cx.ring.spec.label,
        "n": cx.n,
        "span_rank": res.rank,
        "mode": res.mode,
        "saturated": res.saturated,
        "apartments_used": res.apartments_used,
        "top_betti": hom.betti[top],
        "match": res.rank == hom.betti[top] and res.saturated,
    }
    if args.format == "json":
        _emit(args, _json_text(doc))
    else:
        _emit(
            args,
            f"apartment span rank {res.rank} ({res.mode}, "
            f"{'saturated' if res.saturated else 'LOWER BOUND'}, {res.apartments_used} apartments); "
            f"top betti {hom.betti[top]}; match: {doc['match']}\n",
        )
    return EXIT_OK if doc["match"] else EXIT_CHECK_FAILED


def cmd_orbits(args) -> int:
    spec = parse_ring_spec(args.ring)
    orbits, commutant = p1_orbit_and_commutant(spec, args.budget)
    doc = {
        "schema_version": 1,
        "ring": spec.label,
        "orbits": orbits,
        "commutant_dim": commutant,
        "match": orbits == commutant,
    }
    if args.format == "json":
        _emit(args, _json_text(doc))
    else:
        _emit(
            args,
            f"line pairs over {spec.label}: {orbits} orbits, commutant dimension {commutant}, "
            f"match: {orbits == commutant}\n",
        )
    return EXIT_OK if orbits == commutant else EXIT_CHECK_FAILED


def cmd_verify(args) -> int:
    only = [x for x in args.only.split(",") if x] if args.only else None
    report = run_verify(args.tier, args.budget, only=only, corrupt=args.corrupt_boundary)
    if args.format == "json":
        _emit(args, _json_text(report))
    else:
        lines = []
        for c in report["checks"]:
            lines.append(f"{c['status'].upper():5} {c['id']}: {c['detail']}")
        lines.append(
            f"{report['passed']} passed, {report['failed']} failed, {report['skipped']} skipped"
        )
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if report["ok"] else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="titscomplex",
        description="Flag complexes of finite commutative rings: enumeration, homology, Steinberg ranks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt=("text", "json", "csv")):
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="enumeration budget in objects")
        p.add_argument("--format", choices=fmt, default="text")
        p.add_argument("--output", help="write to this path instead of stdout")
        p.add_argument("--jobs", type=int, default=1, help="worker cap (execution is single-process)")

    p = sub.add_parser("rank", help="Steinberg rank table via the Grassmannian recursion")
    p.add_argument("--rings", required=True, help="comma-separated ring specs, e.g. Z/4,Z/6,F2[e]^2")
    p.add_argument("--n-max", type=int, required=True)
    common(p)
    p.set_defaults(fn=cmd_rank)

    p = sub.add_parser("grass", help="Grassmannian counts (formula, optionally enumerated)")
    p.add_argument("--ring", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--enumerate", action="store_true", help="also enumerate and cross-check")
    p.add_argument("--list", action="store_true", help="include preferred bases (with --enumerate)")
    common(p)
    p.set_defaults(fn=cmd_grass)

    p = sub.add_parser("flags", help="count good flags of a given type")
    p.add_argument("--ring", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--type", required=True, help="composition of n, e.g. 1,1,2")
    p.add_argument("--list", action="store_true")
    common(p)
    p.set_defaults(fn=cmd_flags)

    p = sub.add_parser("complex", help="build and export the complex")
    p.add_argument("--ring", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--filtration", type=int, help="restrict vertices to rank <= m")
    common(p, fmt=("text", "json"))
    p.set_defaults(fn=cmd_complex)

    p = sub.add_parser("homology", help="exact reduced homology (Betti numbers and torsion)")
    p.add_argument("--ring", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--filtration", type=int)
    common(p)
    p.set_defaults(fn=cmd_homology)

    p = sub.add_parser("apartments", help="rank of the apartment-class span vs top homology")
    p.add_argument("--ring", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=("auto", "exhaustive", "sampled"), default="auto")
    p.add_argument("--seed", type=int, default=0)
    common(p, fmt=("text", "json"))
    p.set_defaults(fn=cmd_apartments)

    p = sub.add_parser("orbits", help="orbits on pairs of lines and the commutant dimension (n = 2)")
    p.add_argument("--ring", required=True)
    common(p, fmt=("text", "json"))
    p.set_defaults(fn=cmd_orbits)

    p = sub.add_parser("verify", help="run the verification suite")
    p.add_argument("--tier", choices=("fast", "full"), default="fast")
    p.add_argument("--only", help="comma-separated check ids to run")
    p.add_argument("--corrupt-boundary", action="store_true", help=argparse.SUPPRESS)
    common(p, fmt=("text", "json"))
    p.set_defaults(fn=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs < 1:
        parser.error("--jobs must be >= 1")
    try:
        return args.fn(args)
    except BudgetExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BAD_ARGS


if __name__ == "__main__":
    sys.exit(main())
