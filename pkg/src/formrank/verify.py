"""Batch verification suites: every counting statement checked on concrete spaces.

Each check returns a JSON-ready dict with ``id``, ``claim``, ``passed`` and
``detail``.  Randomized checks use fixed seeds, and enumeration merges are
thread-count independent, so suite output is byte-identical for any
``threads`` value (timings are excluded unless requested).
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import __version__
from .analyze import (
    constant_rank_search,
    inverse_subspace_check,
    mu_decomposition,
    radical_bijection,
    radical_spread,
    rank_n_minus_1_correspondence,
    spread_vectors,
)
from .construct import (
    build,
    cyclic_alternating,
    cyclic_symmetric,
    linearized_two_rank,
    symmetric_two_rank,
    trace_hyperplane,
)
from .enumeration import (
    default_budget,
    n_count,
    pfaffian_divisibility,
    rank_distribution,
    verify_bounds,
    verify_common_zeros,
    verify_hermitian_count,
    z_count_direct,
)
from .formspace import alternating_part, bil_space, random_subspace, symm_space
from .gf import GF
from .linalg import batch_det, batch_pfaffian, decode, vmul, vneg

__all__ = ["CATALOGUE", "SUITES", "Context", "run_suite", "catalogue_spaces", "random_alternating"]

# Constructed families with q^d <= 2^20, as (family, parameters).
CATALOGUE: list[tuple[str, dict]] = [
    ("linearized-two-rank", {"q": 2, "m": 1, "s": 2}),
    ("linearized-two-rank", {"q": 3, "m": 1, "s": 2}),
    ("linearized-two-rank", {"q": 4, "m": 1, "s": 2}),
    ("linearized-two-rank", {"q": 5, "m": 1, "s": 2}),
    ("linearized-two-rank", {"q": 7, "m": 1, "s": 2}),
    ("linearized-two-rank", {"q": 2, "m": 1, "s": 3}),
    ("linearized-two-rank", {"q": 3, "m": 1, "s": 3}),
    ("linearized-two-rank", {"q": 2, "m": 1, "s": 4}),
    ("linearized-two-rank", {"q": 2, "m": 2, "s": 2}),
    ("linearized-two-rank", {"q": 3, "m": 2, "s": 2}),
    ("linearized-two-rank", {"q": 4, "m": 2, "s": 2}),
    ("linearized-two-rank", {"q": 2, "m": 1, "s": 5}),
    ("linearized-two-rank", {"q": 2, "m": 3, "s": 2}),
    ("linearized-two-rank", {"q": 2, "m": 2, "s": 3}),
    ("symmetric-two-rank", {"q": 2, "m": 1, "s": 2}),
    ("symmetric-two-rank", {"q": 2, "m": 1, "s": 3}),
    ("symmetric-two-rank", {"q": 3, "m": 1, "s": 3}),
    ("symmetric-two-rank", {"q": 5, "m": 1, "s": 3}),
    ("symmetric-two-rank", {"q": 3, "m": 1, "s": 4}),
    ("symmetric-two-rank", {"q": 2, "m": 2, "s": 2}),
    ("symmetric-two-rank", {"q": 3, "m": 2, "s": 2}),
    ("symmetric-two-rank", {"q": 4, "m": 2, "s": 2}),
    ("symmetric-two-rank", {"q": 2, "m": 3, "s": 2}),
    ("symmetric-two-rank", {"q": 3, "m": 3, "s": 2}),
    ("symmetric-two-rank", {"q": 4, "m": 3, "s": 2}),
    ("symmetric-two-rank", {"q": 2, "m": 2, "s": 3}),
    ("cyclic-symmetric", {"q": 2, "n": 3}),
    ("cyclic-symmetric", {"q": 3, "n": 3}),
    ("cyclic-symmetric", {"q": 4, "n": 3}),
    ("cyclic-symmetric", {"q": 5, "n": 3}),
    ("cyclic-symmetric", {"q": 2, "n": 4}),
    ("cyclic-symmetric", {"q": 3, "n": 4}),
    ("cyclic-symmetric", {"q": 4, "n": 4}),
    ("cyclic-symmetric", {"q": 2, "n": 5}),
    ("cyclic-symmetric", {"q": 3, "n": 5}),
    ("cyclic-symmetric", {"q": 4, "n": 5}),
    ("cyclic-symmetric", {"q": 2, "n": 6}),
    ("cyclic-symmetric", {"q": 2, "n": 7}),
    ("trace-hyperplane", {"q": 2, "n": 2}),
    ("trace-hyperplane", {"q": 3, "n": 2}),
    ("trace-hyperplane", {"q": 2, "n": 3}),
    ("trace-hyperplane", {"q": 2, "n": 4}),
    ("trace-hyperplane", {"q": 3, "n": 4}),
    ("trace-hyperplane", {"q": 4, "n": 4}),
    ("trace-hyperplane", {"q": 5, "n": 4}),
    ("trace-hyperplane", {"q": 7, "n": 4}),
    ("trace-hyperplane", {"q": 2, "n": 6}),
    ("trace-hyperplane", {"q": 3, "n": 6}),
    ("cyclic-alternating", {"q": 2, "m": 2}),
    ("cyclic-alternating", {"q": 3, "m": 2}),
    ("cyclic-alternating", {"q": 4, "m": 2}),
    ("cyclic-alternating", {"q": 5, "m": 2}),
    ("cyclic-alternating", {"q": 7, "m": 2}),
    ("cyclic-alternating", {"q": 2, "m": 3}),
    ("cyclic-alternating", {"q": 3, "m": 3}),
    ("cyclic-alternating", {"q": 2, "m": 4}),
    ("cyclic-alternating", {"q": 2, "m": 5}),
]


def catalogue_spaces(limit: int = 1 << 20):
    """Yield ``(label, FormSpace)`` for catalogue entries with q^d <= limit."""
    for fam, params in CATALOGUE:
        m = build(fam, **params)
        if m.q**m.d <= limit:
            label = fam + "(" + ",".join(f"{k}={v}" for k, v in params.items()) + ")"
            yield label, m


def random_alternating(field: GF, n: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """``count`` uniformly random alternating n x n matrices."""
    out = np.zeros((count, n, n), dtype=np.int64)
    iu = np.triu_indices(n, 1)
    vals = rng.integers(0, field.order, size=(count, len(iu[0])))
    out[:, iu[0], iu[1]] = vals
    out[:, iu[1], iu[0]] = vneg(vals, field)
    return out


def all_alternating(field: GF, n: int) -> np.ndarray:
    iu = np.triu_indices(n, 1)
    k = len(iu[0])
    vals = decode(np.arange(field.order**k), field.order, k)
    out = np.zeros((len(vals), n, n), dtype=np.int64)
    out[:, iu[0], iu[1]] = vals
    out[:, iu[1], iu[0]] = vneg(vals, field)
    return out


@dataclass
class Context:
    budget: int
    threads: int = 1


def _result(cid: str, claim: str, passed: bool, **detail) -> dict:
    return {"id": cid, "claim": claim, "passed": bool(passed), "detail": detail}


# --- checks -------------------------------------------------------------------------------------


def check_two_rank_count(ctx: Context) -> dict:
    m = linearized_two_rank(3, 1, 2)
    prof = rank_distribution(m, projective=False, budget=ctx.budget, threads=ctx.threads)
    expected = (3**2 - 1) ** 2 // (3 - 1)
    return _result("two-rank-count", "linearized two-rank space q=3, n=2: d = 4 and A_1 = (q^n-1)^2/(q^(n-r)-1) = 32",
                   m.d == 4 and prof.A(1) == expected, d=m.d, A=prof.counts, expected_A_1=expected)


def check_common_zeros_random(ctx: Context, trials: int = 100) -> dict:
    rng = np.random.default_rng(20241015)
    field = GF(3)
    fails = []
    for i in range(trials):
        m = random_subspace(field, 3, 1 + i % 5, "bilinear", rng)
        rep = verify_common_zeros(m, budget=ctx.budget, threads=ctx.threads)
        if not rep["passed"]:
            fails.append({"trial": i, "report": rep})
    return _result("common-zeros-random", f"four-way common-zeros identity on {trials} random subspaces of Bil(F_3^3), d <= 5",
                   not fails, trials=trials, failures=fails)


def check_common_zeros_families(ctx: Context) -> dict:
    rows = []
    for label, m in catalogue_spaces():
        rep = verify_common_zeros(m, budget=ctx.budget, threads=ctx.threads)
        rows.append({"space": label, "passed": rep["passed"], "value": rep["sum_A_k_q^(n-k)"], "z_mode": rep["z_mode"]})
    return _result("common-zeros-families", "four-way common-zeros identity on every catalogue family with q^d <= 2^20",
                   all(r["passed"] for r in rows), spaces=rows)


def check_hermitian(ctx: Context) -> dict:
    spaces = [("Symm(F_2^2)", symm_space(GF(2), 2)), ("Symm(F_3^2)", symm_space(GF(3), 2)),
              ("cyclic-symmetric(q=2,n=5)", cyclic_symmetric(2, 5)), ("trace-hyperplane(q=3,n=4)", trace_hyperplane(3, 4))]
    rows = []
    for label, m in spaces:
        rep = verify_hermitian_count(m, budget=ctx.budget, threads=ctx.threads)
        rows.append({"space": label, **{k: rep[k] for k in ("passed", "n_count", "signed_sum", "lambda", "mu")}})
    return _result("hermitian-count", "directly counted |N| matches the signed rank sum",
                   all(r["passed"] for r in rows), spaces=rows)


def check_case_a(ctx: Context) -> dict:
    m = trace_hyperplane(3, 4)
    prof = rank_distribution(m, budget=ctx.budget, threads=ctx.threads)
    z = z_count_direct(m, ctx.budget, ctx.threads)
    nc = n_count(m, budget=ctx.budget, threads=ctx.threads)
    ok = prof.A(3) == 80 and prof.A(4) == 162 and z == 161 and nc == 1
    return _result("opposite-parity-equality", "trace hyperplane q=3, n=4: A_3 = 80, A_4 = 162, |Z| = 161, |N| = 1",
                   ok, A=prof.counts, z_count=z, n_count=nc)


def check_structure_2n(ctx: Context) -> dict:
    m = cyclic_symmetric(2, 5)
    prof = rank_distribution(m, budget=ctx.budget, threads=ctx.threads)
    bij = radical_bijection(m, prof, ctx.budget, ctx.threads)
    ok = ((prof.A(3), prof.A(4), prof.A(5)) == (155, 496, 372) and bij["passed"] and bij["pair_count"] == 465
          and bij["rank_n_minus_2_lines"] == bij["two_dim_subspaces"] == 155)
    return _result("symmetric-2n-structure",
                   "cyclic symmetric q=2, n=5: A_3 = 155, A_4 = 496, A_5 = 372, 155 rank-3 lines <-> 155 planes, "
                   "dim(M_u ∩ M_v) = 1 for all 465 point pairs", ok, A=prof.counts, bijection=bij)


def check_alternating_optimum(ctx: Context) -> dict:
    m = cyclic_alternating(2, 3)
    prof = rank_distribution(m, budget=ctx.budget, threads=ctx.threads)
    div = pfaffian_divisibility(m, prof, ctx.budget, ctx.threads)
    ok = m.d == 9 and prof.nonzero_ranks == [4, 6] and div["passed"] and div["s"] == 2
    return _result("alternating-optimum", "cyclic alternating q=2, m=3: d = 9 = 3m, nonzero ranks {4, 6}, q^2 | A_6",
                   ok, d=m.d, A=prof.counts, divisibility=div)


def check_pfaffian(ctx: Context, samples: int = 10_000) -> dict:
    rows = []
    for q in (2, 3):
        f = GF(q)
        mats = all_alternating(f, 4)
        rows.append(_pf_row(f"all 4x4 over GF({q})", mats, f))
    if samples:
        rng = np.random.default_rng(7)
        for q, k in ((2, 1), (4, 2)):
            f = GF(2, k)
            for n in (6, 8):
                mats = random_alternating(f, n, samples, rng)
                rows.append(_pf_row(f"{samples} random {n}x{n} over GF({q})", mats, f))
    return _result("pfaffian-square", "Pf(A)^2 = det(A) for alternating A", all(r["passed"] for r in rows), cases=rows)


def _pf_row(label: str, mats: np.ndarray, f: GF) -> dict:
    pf = batch_pfaffian(mats, f)
    dt = batch_det(mats, f)
    bad = int(np.count_nonzero(vmul(pf, pf, f) != dt))
    return {"case": label, "count": len(mats), "mismatches": bad, "nonzero_det": int(np.count_nonzero(dt)),
            "passed": bad == 0}


def check_spreads(ctx: Context) -> dict:
    rows = []
    for q, expected in ((4, 65), (5, 126)):
        m = symmetric_two_rank(q, 3, 2)
        rep = radical_spread(m, 3, budget=ctx.budget, threads=ctx.threads)
        row = {"space": f"symmetric-two-rank(q={q},m=3,s=2)", "radicals": rep.observed_count, "expected": expected,
               "is_spread": rep.is_spread, "regime": rep.regime, "mu_checks": rep.mu_checks,
               "passed": rep.passed and rep.observed_count == expected}
        if q == 5:
            dec = mu_decomposition(m, *spread_vectors(rep, 3))
            row["mu_decomposition"] = dec
            row["passed"] = row["passed"] and dec["passed"]
        rows.append(row)
    return _result("radical-spread", "rank-3 radicals of the n=6 two-rank spaces form spreads of q^3 + 1 members",
                   all(r["passed"] for r in rows), spaces=rows)


def check_constant_rank(ctx: Context) -> dict:
    rows = []
    for label, m, r, cap, want in (("trace-hyperplane(q=7,n=4)", trace_hyperplane(7, 4), 3, 3, lambda k: k == 1),
                                   ("trace-hyperplane(q=5,n=4)", trace_hyperplane(5, 4), 3, 2, lambda k: k <= 1),
                                   ("cyclic-symmetric(q=4,n=5)", cyclic_symmetric(4, 5), 3, 3, lambda k: k <= 2)):
        rep = constant_rank_search(m, r, cap, budget=ctx.budget, threads=ctx.threads)
        rows.append({"space": label, "r": r, "max_dim": rep.max_dim, "exhaustive": rep.exhaustive,
                     "bound": rep.bound, "passed": rep.passed and rep.exhaustive and want(rep.max_dim)})
    m = cyclic_symmetric(4, 5)
    alt = alternating_part(m)
    aprof = rank_distribution(alt, budget=ctx.budget, threads=ctx.threads)
    rows.append({"space": "cyclic-symmetric(q=4,n=5) alternating part", "dim": alt.d, "ranks": aprof.nonzero_ranks,
                 "passed": alt.d == 5 and aprof.nonzero_ranks == [4]})
    return _result("constant-rank-subspaces",
                   "largest constant-rank subspaces: 1 for the trace hyperplanes, <= 2 for cyclic q=4, n=5; "
                   "its alternating part is 5-dimensional of constant rank 4", all(r["passed"] for r in rows), cases=rows)


def check_inverse_subspaces(ctx: Context) -> dict:
    rows = []
    for p, k, deg in ((2, 2, 3), (5, 1, 3)):
        rep = inverse_subspace_check(p, k, deg)
        rows.append({k2: rep[k2] for k2 in ("K", "L", "hyperplanes", "planes", "violations", "precondition", "passed")})
    ok = all(r["passed"] and r["precondition"] for r in rows)
    return _result("inverse-subspaces", "no plane U and hyperplane A of GF(q^3)/GF(q) with every nonzero u^-1 in A",
                   ok, cases=rows)


def check_bounds_catalogue(ctx: Context) -> dict:
    rows = []
    for label, m in catalogue_spaces(1 << 16):
        findings = verify_bounds(m, budget=ctx.budget, threads=ctx.threads)
        tally: dict[str, int] = {}
        for f in findings:
            tally[f.status] = tally.get(f.status, 0) + 1
        fails = [f.to_dict() for f in findings if f.status == "fail"]
        rows.append({"space": label, "statuses": dict(sorted(tally.items())), "failures": fails, "passed": not fails})
    return _result("bounds-catalogue", "every applicable dimension bound and count holds on the catalogue (q^d <= 2^16)",
                   all(r["passed"] for r in rows), spaces=rows)


def check_projective_vs_full(ctx: Context) -> dict:
    rows = []
    for label, m in catalogue_spaces(1 << 16):
        a = rank_distribution(m, projective=True, budget=ctx.budget, threads=ctx.threads).counts
        b = rank_distribution(m, projective=False, budget=ctx.budget, threads=ctx.threads).counts
        rows.append({"space": label, "A": a, "passed": a == b})
    return _result("projective-vs-full", "projective and full enumeration give the same A_k",
                   all(r["passed"] for r in rows), spaces=rows)


def check_correspondences(ctx: Context) -> dict:
    from .formspace import alt_space

    rows = []
    for label, m in (("Alt(F_2^3)", alt_space(GF(2), 3)), ("trace-hyperplane(q=3,n=4)", trace_hyperplane(3, 4))):
        rep = rank_n_minus_1_correspondence(m, budget=ctx.budget, threads=ctx.threads)
        rows.append({"space": label, **{k: rep[k] for k in ("lines", "points", "passed")}})
    return _result("rank-n-minus-1-lines", "rank n-1 lines correspond one-to-one with points of V",
                   all(r["passed"] for r in rows), cases=rows)


def check_smoke_structure(ctx: Context) -> dict:
    m = cyclic_symmetric(2, 3)
    bij = radical_bijection(m, budget=ctx.budget, threads=ctx.threads)
    prof = rank_distribution(m, budget=ctx.budget, threads=ctx.threads)
    return _result("symmetric-2n-structure-small", "cyclic symmetric q=2, n=3: A_1 = 7, A_2 = 28, lines <-> planes",
                   prof.A(1) == 7 and prof.A(2) == 28 and bij["passed"], A=prof.counts, bijection=bij)


def check_smoke_bil(ctx: Context) -> dict:
    m = bil_space(GF(2), 2)
    rep = verify_common_zeros(m, budget=ctx.budget, threads=ctx.threads)
    prof = rank_distribution(m, budget=ctx.budget)
    return _result("bil-f2-2", "Bil(F_2^2): A = (1, 9, 6), all four common-zeros sides = 28",
                   prof.counts == [1, 9, 6] and rep["passed"] and rep["sum_A_k_q^(n-k)"] == 28, A=prof.counts, report=rep)


def check_smoke_constant_rank(ctx: Context) -> dict:
    rep = constant_rank_search(trace_hyperplane(5, 4), 3, 2, budget=ctx.budget, threads=ctx.threads)
    return _result("constant-rank-small", "trace hyperplane q=5, n=4: no 2-dimensional constant-rank-3 subspace",
                   rep.passed and rep.max_dim == 1 and rep.exhaustive, max_dim=rep.max_dim, exhaustive=rep.exhaustive)


def check_smoke_inverse(ctx: Context) -> dict:
    rep = inverse_subspace_check(2, 2, 3)
    return _result("inverse-subspaces-small", "GF(64)/GF(4): no plane of inverses inside a hyperplane",
                   rep["passed"] and rep["precondition"], violations=rep["violations"])


SUITES: dict[str, list[Callable[[Context], dict]]] = {
    "paper": [
        check_two_rank_count,
        check_common_zeros_random,
        check_common_zeros_families,
        check_hermitian,
        check_case_a,
        check_structure_2n,
        check_alternating_optimum,
        check_pfaffian,
        check_spreads,
        check_constant_rank,
        check_inverse_subspaces,
        check_correspondences,
        check_bounds_catalogue,
        check_projective_vs_full,
    ],
    "smoke": [
        check_two_rank_count,
        check_smoke_bil,
        check_case_a,
        check_smoke_structure,
        check_alternating_optimum,
        lambda ctx: check_pfaffian(ctx, samples=0),
        check_smoke_constant_rank,
        check_smoke_inverse,
    ],
}


def run_suite(name: str, budget: int | None = None, threads: int = 1, timings: bool = False) -> dict:
    """Run a suite and return the summary document."""
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    ctx = Context(default_budget() if budget is None else budget, threads)
    results = []
    for check in SUITES[name]:
        t0 = time.perf_counter()
        res = check(ctx)
        if timings:
            res["seconds"] = round(time.perf_counter() - t0, 3)
        results.append(res)
    passed = sum(r["passed"] for r in results)
    return {
        "suite": name,
        "tool": {"name": "formrank", "version": __version__},
        "budget_elems": ctx.budget,
        "results": results,
        "summary": {"total": len(results), "passed": passed, "failed": len(results) - passed,
                    "all_passed": passed == len(results)},
    }
