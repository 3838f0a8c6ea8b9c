"""Command-line front end: construct, profile, analyze and verify form spaces.

Exit codes: 0 success, 1 a verification failed, 2 usage, parse or shape
error, 3 enumeration budget exceeded.  Reports are canonical JSON written to
stdout or ``--out``.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import __version__
from .analyze import (
    constant_rank_search,
    isotropic_point_count,
    radical_bijection,
    radical_spread,
    rank_n_minus_1_correspondence,
)
from .construct import FAMILIES, build
from .enumeration import (
    BudgetExceeded,
    default_budget,
    pfaffian_divisibility,
    profile,
    rank_distribution,
    verify_bounds,
    verify_common_zeros,
    verify_hermitian_count,
)
from .formspace import FormSpace
from .gf import FieldMismatch
from .serialize import FormatError, canonical_json, dumps, provenance, read_formspace
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def cmd_construct(args: argparse.Namespace) -> int:
    params = {k: getattr(args, k) for k in ("q", "m", "s", "n") if getattr(args, k) is not None}
    m = build(args.family, **params)
    _emit(dumps(m), args.out)
    return EXIT_OK


def _identities(m: FormSpace, prof, budget: int, threads: int) -> list[dict]:
    checks = [verify_common_zeros(m, prof, budget, threads)]
    if m.kind == "symmetric" or (m.kind == "alternating" and m.field.p == 2):
        checks.append(verify_hermitian_count(m, budget=budget, threads=threads))
    if m.kind == "alternating" and m.n % 2 == 0 and m.n > 2 and m.d > m.n // 2:
        checks.append(pfaffian_divisibility(m, prof, budget, threads))
    for f in verify_bounds(m, prof, budget, threads):
        checks.append({"check": "bound", "claim": f.claim, "status": f.status,
                       "passed": f.status != "fail", "detail": f.detail})
    return checks


def cmd_profile(args: argparse.Namespace) -> int:
    m = read_formspace(args.input)
    budget = args.budget_elems
    t0 = time.perf_counter()
    prof = profile(m, projective=not args.full, kernels=args.zcount, zcount=args.zcount,
                   ncount=args.ncount, budget=budget, threads=args.threads,
                   sample=args.sample, seed=args.seed)
    report = {"provenance": provenance(m, mode=prof.mode, budget_elems=budget), "profile": prof.to_dict()}
    code = EXIT_OK
    if args.identities:
        if not prof.exact:
            raise BudgetExceeded("identity checks need an exact rank distribution")
        checks = _identities(m, prof, budget, args.threads)
        report["identities"] = checks
        report["passed"] = all(c["passed"] for c in checks)
        code = EXIT_OK if report["passed"] else EXIT_FAIL
    report["timings"] = {"seconds": round(time.perf_counter() - t0, 3)}
    _emit(canonical_json(report), args.out)
    return code


def cmd_analyze(args: argparse.Namespace) -> int:
    m = read_formspace(args.input)
    budget, threads = args.budget_elems, args.threads
    if not (args.spread is not False or args.bijection or args.correspondence
            or args.const_rank is not None or args.isotropic):
        raise ValueError("choose at least one of --spread, --bijection, --correspondence, --const-rank, --isotropic")
    needs_profile = args.spread is not False or args.bijection or args.correspondence or args.const_rank is not None
    prof = rank_distribution(m, budget=budget, threads=threads) if needs_profile else None
    results: dict[str, dict] = {}
    if args.spread is not False:
        rep = radical_spread(m, args.spread, prof, budget, threads)
        results["spread"] = rep.to_dict()
    if args.bijection:
        results["bijection"] = radical_bijection(m, prof, budget, threads)
    if args.correspondence:
        results["correspondence"] = rank_n_minus_1_correspondence(m, prof, budget, threads)
    if args.const_rank is not None:
        rep = constant_rank_search(m, args.const_rank, args.max_dim, prof, budget, threads, args.node_limit)
        results["const_rank"] = rep.to_dict()
    if args.isotropic:
        results["isotropic"] = isotropic_point_count(m)
    passed = all(r["passed"] for r in results.values())
    report = {"provenance": provenance(m, budget_elems=budget), "analyses": results, "passed": passed}
    _emit(canonical_json(report), args.out)
    return EXIT_OK if passed else EXIT_FAIL


def cmd_verify(args: argparse.Namespace) -> int:
    doc = run_suite(args.suite, args.budget_elems, args.threads, args.timings)
    _emit(canonical_json(doc), args.out)
    return EXIT_OK if doc["summary"]["all_passed"] else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="formrank", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"formrank {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--budget-elems", type=_positive, default=default_budget(),
                       help="maximum number of elements or pairs to enumerate")
        p.add_argument("--threads", type=_positive, default=1)
        p.add_argument("--out", help="write the report here instead of stdout")

    p = sub.add_parser("construct", help="write a constructed form space as JSON")
    p.add_argument("--family", required=True, choices=sorted(FAMILIES))
    for name in ("q", "m", "s", "n"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("profile", help="rank distribution and zero counts of a form-space file")
    p.add_argument("input")
    p.add_argument("--zcount", action="store_true", help="kernel histograms and |Z|")
    p.add_argument("--ncount", action="store_true", help="direct count of |N|")
    p.add_argument("--identities", action="store_true", help="check every applicable identity and bound")
    p.add_argument("--full", action="store_true", help="enumerate all q^d elements instead of projective points")
    p.add_argument("--sample", type=_positive, help="sample this many elements when over budget")
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("analyze", help="radical geometry and constant-rank searches")
    p.add_argument("input")
    p.add_argument("--spread", nargs="?", type=_positive, const=None, default=False, metavar="R",
                   help="radicals of rank-R elements (default: minimum rank)")
    p.add_argument("--bijection", action="store_true", help="rank n-2 lines versus 2-dimensional subspaces")
    p.add_argument("--correspondence", action="store_true", help="rank n-1 lines versus points")
    p.add_argument("--const-rank", type=_positive, metavar="R")
    p.add_argument("--max-dim", type=_positive, metavar="D")
    p.add_argument("--node-limit", type=_positive)
    p.add_argument("--isotropic", action="store_true", help="common isotropic points")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True, choices=sorted(SUITES))
    p.add_argument("--timings", action="store_true", help="include per-check wall time (breaks byte determinism)")
    common(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"formrank: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (FormatError, FieldMismatch, ValueError) as exc:
        print(f"formrank: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
