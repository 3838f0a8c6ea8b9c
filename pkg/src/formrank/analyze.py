"""Radical geometry of form spaces and searches for constant-rank subspaces."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

import numpy as np

from .enumeration import (
    RankProfile,
    _map,
    block_coefficients,
    find_elements,
    projective_count,
    rank_distribution,
    rank_table,
)
from .formspace import FormSpace, alternating_part, coefficient_kernel, elements
from .gf import GF, is_prime
from .linalg import (
    Subspace,
    batch_rank,
    combine,
    decode,
    encode,
    fmatmul,
    gaussian_binomial,
    iter_subspaces,
    left_null_space,
    span_vectors,
    vadd,
    vmul,
)

__all__ = [
    "SpreadReport",
    "ConstRankReport",
    "element_radical",
    "radical_spread",
    "spread_vectors",
    "mu_decomposition",
    "radical_bijection",
    "rank_n_minus_1_correspondence",
    "constant_rank_search",
    "isotropic_point_count",
    "inverse_subspace_check",
]


def element_radical(m: FormSpace, c) -> Subspace:
    """Left radical of the element with coefficient vector c."""
    mat = combine(np.asarray(c)[None], m.basis, m.field)[0]
    return Subspace(m.field, m.n, left_null_space(mat, m.field))


def _radicals(m: FormSpace, coeffs: np.ndarray, threads: int = 1) -> list[Subspace]:
    mats = combine(coeffs, m.basis, m.field) if len(coeffs) else np.zeros((0, m.n, m.n), dtype=np.int64)
    return _map(lambda a: Subspace(m.field, m.n, left_null_space(a, m.field)), list(mats), threads)


def _pairwise_trivial(bases: list[np.ndarray], field: GF) -> tuple[bool, dict[int, int]]:
    """Whether all pairs of subspaces (given by independent row bases) meet in 0,
    plus a histogram of intersection dimensions."""
    hist: dict[int, int] = {}
    pairs = list(itertools.combinations(range(len(bases)), 2))
    for start in range(0, len(pairs), 1 << 14):
        chunk = pairs[start:start + (1 << 14)]
        by_shape: dict[tuple, list] = {}
        for i, j in chunk:
            stacked = np.vstack([bases[i], bases[j]])
            by_shape.setdefault(stacked.shape, []).append((stacked, len(bases[i]) + len(bases[j])))
        for items in by_shape.values():
            ranks = batch_rank(np.array([s for s, _ in items]), field)
            for (_, total), rk in zip(items, ranks):
                k = int(total - rk)
                hist[k] = hist.get(k, 0) + 1
    return set(hist) <= {0}, dict(sorted(hist.items()))


def _projective_points(field: GF, n: int) -> np.ndarray:
    q = field.order
    return np.concatenate([block_coefficients(q, n, (lead, 0, q ** (n - lead - 1))) for lead in range(n)])


# --- spreads ---------------------------------------------------------------------------------


@dataclass
class SpreadReport:
    """Radicals of the minimum-rank elements and their spread properties."""

    q: int
    n: int
    r: int
    radicals: list[Subspace]
    elements_per_radical: list[int]
    intersections: dict[int, int]
    pairwise_trivial: bool
    coverage: bool
    expected_count: int
    regime: str
    mu_checks: dict = dc_field(default_factory=dict)

    @property
    def observed_count(self) -> int:
        return len(self.radicals)

    @property
    def is_spread(self) -> bool:
        return self.pairwise_trivial and self.coverage

    @property
    def passed(self) -> bool:
        ok = self.is_spread and self.observed_count == self.expected_count
        return ok and all(v is True for k, v in self.mu_checks.items() if isinstance(v, bool))

    def to_dict(self) -> dict:
        return {
            "q": self.q, "n": self.n, "r": self.r,
            "observed_count": self.observed_count, "expected_count": self.expected_count,
            "pairwise_trivial": self.pairwise_trivial, "intersection_dims": {str(k): v for k, v in self.intersections.items()},
            "coverage": self.coverage, "is_spread": self.is_spread, "regime": self.regime,
            "asserted": self.regime != "observation", "passed": self.passed,
            "mu_checks": self.mu_checks,
            "radicals": [s.basis.tolist() for s in self.radicals],
        }


def _spread_regime(m: FormSpace, r: int) -> str:
    q, n, d = m.q, m.n, m.d
    shape = m.kind == "symmetric" and n == 2 * r and r % 2 == 1 and d == 3 * r
    if shape and q % 2 == 1 and q >= r + 1:
        return "asserted"
    if m.kind == "symmetric" and n == 6 and r == 3 and d == 9 and q >= 4:
        return "asserted-n6"
    if shape and q % 2 == 0 and q >= r + 1:
        return "extension-char2"
    return "observation"


def radical_spread(m: FormSpace, r: int | None = None, prof: RankProfile | None = None,
                   budget: int | None = None, threads: int = 1, check_mu: bool = True) -> SpreadReport:
    """Collect the radicals of all rank-r elements and test whether they form a spread.

    With ``check_mu`` every ``M_u`` is also examined: its dimension, whether
    its nonzero elements share one radical, and whether distinct ``M_u`` meet
    trivially.
    """
    prof = prof if prof is not None and prof.exact else rank_distribution(m, budget=budget, threads=threads)
    ranks = set(prof.nonzero_ranks)
    r = min(ranks) if r is None else r
    if not ranks <= {r, m.n}:
        raise ValueError(f"nonzero ranks {sorted(ranks)} are not contained in {{{r}, {m.n}}}")
    q, n = m.q, m.n
    coeffs = find_elements(m, [r], budget, threads)
    groups: dict[bytes, list] = {}
    for rad in _radicals(m, coeffs, threads):
        groups.setdefault(rad.key, [rad, 0])[1] += 1
    radicals = [g[0] for g in groups.values()]
    counts = [g[1] for g in groups.values()]
    order = sorted(range(len(radicals)), key=lambda i: radicals[i].basis.tobytes())
    radicals = [radicals[i] for i in order]
    counts = [counts[i] for i in order]
    trivial, hist = _pairwise_trivial([s.basis for s in radicals], m.field)
    covered = set()
    for s in radicals:
        covered.update(encode(s.vectors(), q).tolist())
    covered.discard(0)
    coverage = len(covered) == q**n - 1
    expected = q**r + 1 if n == 2 * r else 0
    report = SpreadReport(q, n, r, radicals, counts, hist, trivial, coverage, expected, _spread_regime(m, r))
    if check_mu:
        report.mu_checks = _mu_checks(m, r, threads)
    return report


def _mu_checks(m: FormSpace, r: int, threads: int) -> dict:
    pts = _projective_points(m.field, m.n)

    def one(u: np.ndarray) -> tuple[Subspace, int]:
        # dimension of the radical shared by every element of M_u
        ker = coefficient_kernel(m, u)
        if not ker.dim:
            return ker, m.n
        mats = elements(m, ker.basis)
        return ker, len(left_null_space(np.hstack(list(mats)), m.field))

    results = _map(one, list(pts), threads)
    dims = {k.dim for k, _ in results}
    shared = all(rad == m.n - r for _, rad in results)
    distinct: dict[bytes, Subspace] = {}
    for k, _ in results:
        distinct.setdefault(k.key, k)
    trivial, _ = _pairwise_trivial([s.basis for s in distinct.values()], m.field)
    return {
        "dims_M_u": sorted(dims),
        "all_dim_r": dims == {r},
        "common_radical": shared,
        "distinct_M_u": len(distinct),
        "distinct_meet_trivially": trivial,
    }


def spread_vectors(report: SpreadReport, count: int = 3) -> list[np.ndarray]:
    """One nonzero vector from each of the first ``count`` spread members."""
    if report.observed_count < count:
        raise ValueError(f"only {report.observed_count} radicals available")
    return [s.basis[0].copy() for s in report.radicals[:count]]


def mu_decomposition(m: FormSpace, u, w, z, budget: int | None = None) -> dict:
    """Check ``M = M_u ⊕ M_w ⊕ M_z`` and the rank pattern inside ``M_u ⊕ M_w``."""
    ku, kw, kz = (coefficient_kernel(m, x) for x in (u, w, z))
    if ku == kw or ku == kz or kw == kz:
        raise ValueError("M_u, M_w, M_z must be pairwise distinct")
    uw = ku + kw
    total = uw + kz
    meet_uw = ku.intersection(kw).dim
    meet = uw.intersection(kz).dim
    vecs = uw.vectors()
    mats = combine(vecs, m.basis, m.field)
    ranks = batch_rank(mats, m.field)
    q = m.q
    in_u = np.isin(encode(vecs, q), encode(ku.vectors(), q))
    in_w = np.isin(encode(vecs, q), encode(kw.vectors(), q))
    outside = ~(in_u | in_w)
    low = set(ranks[~outside & (encode(vecs, q) != 0)].tolist())
    r = min(low) if low else None
    stray = int(np.count_nonzero(outside & (ranks != m.n)))
    ok = meet_uw == 0 and meet == 0 and total.dim == m.d and stray == 0
    return {
        "check": "mu-decomposition",
        "dims": [ku.dim, kw.dim, kz.dim],
        "M_u∩M_w": meet_uw,
        "(M_u+M_w)∩M_z": meet,
        "sum_dim": total.dim,
        "d": m.d,
        "rank_on_M_u∪M_w": sorted(low),
        "elements_outside_union": int(np.count_nonzero(outside)),
        "outside_union_not_full_rank": stray,
        "r": r,
        "passed": bool(ok),
    }


# --- correspondences -------------------------------------------------------------------------


def _radical_keys(m: FormSpace, coeffs: np.ndarray, threads: int) -> list[bytes]:
    return [s.key for s in _radicals(m, coeffs, threads)]


def radical_bijection(m: FormSpace, prof: RankProfile | None = None, budget: int | None = None,
                      threads: int = 1) -> dict:
    """Rank n-2 lines versus 2-dimensional subspaces of V, for 2n-dimensional
    symmetric M with every nonzero rank at least n - 2."""
    n, q, d = m.n, m.q, m.d
    prof = prof if prof is not None and prof.exact else rank_distribution(m, budget=budget, threads=threads)
    if m.kind != "symmetric" or d != 2 * n or n < 3 or prof.min_rank < n - 2:
        raise ValueError("needs a symmetric 2n-dimensional space with all nonzero ranks >= n - 2")
    coeffs = find_elements(m, [n - 2], budget, threads)
    keys = _radical_keys(m, coeffs, threads)
    planes = gaussian_binomial(n, 2, q)
    distinct = len(set(keys))
    injective = distinct == len(keys)
    surjective = distinct == planes
    # dim M_u ∩ M_v for independent u, v: stack u^T A_i and v^T A_i
    pts = _projective_points(m.field, n)
    rows = fmatmul(pts[:, None, None, :], m.basis[None], m.field)[:, :, 0, :]  # (P, d, n)
    hist: dict[int, int] = {}
    pairs = np.array(list(itertools.combinations(range(len(pts)), 2)), dtype=np.int64).reshape(-1, 2)
    for s in range(0, len(pairs), 1 << 14):
        chunk = pairs[s:s + (1 << 14)]
        stacked = np.concatenate([rows[chunk[:, 0]], rows[chunk[:, 1]]], axis=2)
        dims = d - batch_rank(stacked, m.field)
        for k, c in zip(*np.unique(dims, return_counts=True)):
            hist[int(k)] = hist.get(int(k), 0) + int(c)
    pairs_one = set(hist) == {1}
    lower = (q**n - 1) * (q ** (n - 1) - 1) // (q * q - 1)
    out = {
        "check": "radical-bijection",
        "n": n, "q": q,
        "rank_n_minus_2_lines": len(keys),
        "two_dim_subspaces": planes,
        "distinct_radicals": distinct,
        "injective": injective,
        "surjective": surjective,
        "bijective": injective and surjective,
        "pair_count": int(len(pairs)),
        "pair_intersection_dims": {str(k): v for k, v in sorted(hist.items())},
        "A_n_minus_2": prof.A(n - 2),
    }
    if n % 2 == 1:
        out["passed"] = bool(injective and surjective and pairs_one)
    else:
        out["A_n_minus_2_lower_bound"] = lower
        out["passed"] = bool(surjective and prof.A(n - 2) >= lower)
    return out


def rank_n_minus_1_correspondence(m: FormSpace, prof: RankProfile | None = None,
                                  budget: int | None = None, threads: int = 1) -> dict:
    """Rank n-1 lines of M versus points of V.

    Shapes: alternating, n odd, d = n, constant rank n - 1; or symmetric,
    n even, d = n + 1, every nonzero rank at least n - 1.
    """
    n, q, d = m.n, m.q, m.d
    prof = prof if prof is not None and prof.exact else rank_distribution(m, budget=budget, threads=threads)
    ranks = set(prof.nonzero_ranks)
    alt_shape = m.kind == "alternating" and n % 2 == 1 and d == n and ranks == {n - 1}
    sym_shape = m.kind == "symmetric" and n % 2 == 0 and d == n + 1 and prof.min_rank >= n - 1
    if not (alt_shape or sym_shape):
        raise ValueError("shape not supported: need (alternating, n odd, d = n, constant rank n-1) "
                         "or (symmetric, n even, d = n+1, ranks >= n-1)")
    coeffs = find_elements(m, [n - 1], budget, threads)
    keys = _radical_keys(m, coeffs, threads)
    points = projective_count(q, n)
    distinct = len(set(keys))
    return {
        "check": "rank-n-minus-1-correspondence",
        "n": n, "q": q,
        "lines": len(keys),
        "points": points,
        "distinct_radicals": distinct,
        "bijective": distinct == len(keys) == points,
        "passed": distinct == len(keys) == points,
    }


# --- constant rank subspaces ----------------------------------------------------------------------


@dataclass
class ConstRankReport:
    """Largest constant-rank-r subspace found by an exhaustive search."""

    r: int
    max_dim: int
    certificate: np.ndarray
    exhaustive: bool
    capped: bool
    nodes: int
    candidates: int
    certificate_ok: bool
    bound: dict | None = None

    @property
    def passed(self) -> bool:
        if not self.certificate_ok:
            return False
        if self.bound and self.bound["asserted"]:
            return self.bound["status"] == "pass"
        return True

    def to_dict(self) -> dict:
        return {
            "r": self.r, "max_dim": self.max_dim, "certificate": self.certificate.tolist(),
            "exhaustive": self.exhaustive, "capped": self.capped, "nodes": self.nodes,
            "candidates": self.candidates, "certificate_ok": self.certificate_ok,
            "bound": self.bound, "passed": self.passed,
        }


class _IndexArith:
    """Addition and scaling of elements addressed by coefficient index."""

    def __init__(self, field: GF, d: int):
        self.field = field
        self.d = d
        self.q = field.order
        self.xor = field.p == 2

    def add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.xor:
            return np.bitwise_xor(a, b)
        va, vb = decode(a, self.q, self.d), decode(b, self.q, self.d)
        return encode(vadd(va, vb, self.field), self.q)

    def scale(self, a: np.ndarray, c: int) -> np.ndarray:
        return encode(vmul(decode(a, self.q, self.d), c, self.field), self.q)


def _certificate_ranks(m: FormSpace, basis: np.ndarray) -> set[int]:
    vecs = span_vectors(basis, m.field)[1:]
    return set(batch_rank(combine(vecs, m.basis, m.field), m.field).tolist())


def _constant_rank_bound(m: FormSpace, r: int, prof: RankProfile) -> dict | None:
    """The strongest applicable upper bound on a constant-rank-r subspace of M."""
    q, n, d = m.q, m.n, m.d
    low = prof.min_rank
    cands = []
    if m.kind != "symmetric":
        return None
    params = m.params or {}
    if (params.get("family") == "trace-hyperplane" and is_prime(n + 1) and r == n - 1):
        cands.append(("trace construction, n + 1 prime, q >= n: max = 1", 1, q >= n))
    if n % 2 == 0 and d == n + 1 and low >= n - 1 and r == n - 1:
        cands.append(("symmetric, n even, d = n + 1, ranks >= n - 1, q >= n: max <= n/2", n // 2, q >= n))
        if n == 4:
            cands.append(("n = 4, d = 5, ranks >= 3, q >= 4: max <= 1", 1, q >= 4))
    if n == 5 and d == 10 and low >= 3 and r == 3:
        cands.append(("n = 5, d = 10, ranks >= 3, q >= 4: max <= 1", 1, q >= 4))
    if m.field.p == 2 and n % 2 == 1 and n >= 3 and d == 2 * n and low >= n - 2 and r == n - 2:
        cands.append(("q even, n odd, d = 2n, ranks >= n - 2, q >= n - 1: max <= (2n - 3)/3",
                      (2 * n - 3) // 3, q >= n - 1))
    if not cands:
        return None
    asserted = [c for c in cands if c[2]]
    claim, value, ok = min(asserted or cands, key=lambda c: c[1])
    return {"claim": claim, "value": value, "asserted": bool(asserted)}


def constant_rank_search(m: FormSpace, r: int, max_dim: int | None = None, prof: RankProfile | None = None,
                         budget: int | None = None, threads: int = 1, node_limit: int | None = None) -> ConstRankReport:
    """Depth-first search for the largest subspace of M whose nonzero elements all have rank r.

    Bases are built from projective points in increasing index order, so each
    subspace is reached through its key-sorted bases only.  A candidate c can
    extend the span S when every ``s + c`` with s in S has rank r; the
    candidate list is filtered once per level, so deeper levels only see
    survivors.
    """
    q, d = m.q, m.d
    prof = prof if prof is not None and prof.exact else rank_distribution(m, budget=budget, threads=threads)
    max_dim = d if max_dim is None else max_dim
    table = rank_table(m, budget, threads)
    reps = find_elements(m, [r], budget, threads)
    cand = np.sort(encode(reps, q)) if len(reps) else np.zeros(0, dtype=np.int64)
    arith = _IndexArith(m.field, d)
    scalars = list(range(1, q))
    best: list[int] = []
    nodes = 0
    stopped = False

    def extend(span: np.ndarray, chosen: list[int], pool: np.ndarray) -> None:
        nonlocal best, nodes, stopped
        if len(chosen) > len(best):
            best = list(chosen)
        if len(chosen) >= max_dim or stopped:
            return
        for pos, c in enumerate(pool):
            if node_limit is not None and nodes >= node_limit:
                stopped = True
                return
            nodes += 1
            if len(chosen) + 1 + (len(pool) - pos - 1) <= len(best):
                return
            # new elements are s + a c with a != 0; scaling lets us fix the coefficient of c' to 1
            shifted = np.concatenate([arith.add(span, arith.scale(np.array([c]), a)) for a in scalars])
            rest = pool[pos + 1:]
            if len(rest):
                ok = np.ones(len(rest), dtype=bool)
                for s in shifted:
                    ok &= table[arith.add(rest, np.full(len(rest), s))] == r
                    if not ok.any():
                        break
                rest = rest[ok]
            extend(np.concatenate([span, shifted]), chosen + [int(c)], rest)

    extend(np.zeros(1, dtype=np.int64), [], cand)
    cert = decode(np.array(best, dtype=np.int64), q, d) if best else np.zeros((0, d), dtype=np.int64)
    cert_ok = (not best) or _certificate_ranks(m, cert) == {r}
    bound = _constant_rank_bound(m, r, prof)
    if bound is not None:
        bound["status"] = "pass" if len(best) <= bound["value"] else "fail"
        if not bound["asserted"]:
            bound["status"] = "observation"
    return ConstRankReport(r, len(best), cert, not stopped, len(best) >= max_dim and max_dim < d, nodes,
                           len(cand), bool(cert_ok), bound)


def isotropic_point_count(nsub: FormSpace) -> dict:
    """Nonzero v with f(v, v) = 0 for every f in N, compared with q^(n - d) - 1."""
    if nsub.d == 0:
        raise ValueError("N must be nonzero")
    if nsub.kind == "bilinear":
        raise ValueError("N must be symmetric or alternating")
    q, n, d = nsub.q, nsub.n, nsub.d
    vs = decode(np.arange(q**n), q, n)
    left = fmatmul(vs[:, None, None, :], nsub.basis[None], nsub.field)
    vals = fmatmul(left, vs[:, None, :, None], nsub.field)[:, :, 0, 0]
    count = int((vals == 0).all(axis=1).sum()) - 1
    ranks = set(rank_distribution(nsub, budget=None).nonzero_ranks)
    odd_const = len(ranks) == 1 and next(iter(ranks)) % 2 == 1
    expected = q ** (n - d) - 1 if n >= d else None
    asserted = odd_const and q >= n and expected is not None
    return {
        "check": "isotropic-points",
        "count": count,
        "expected": expected,
        "ranks": sorted(ranks),
        "asserted": asserted,
        "passed": (count == expected) if asserted else True,
    }


# --- inverse subspaces -------------------------------------------------------------------------------------


def inverse_subspace_check(p: int, k_sub: int, rel_deg: int) -> dict:
    """Search for a hyperplane A and a plane U of L over K with every nonzero
    element of U the inverse of an element of A.

    K = GF(p^k_sub), L = GF(p^(k_sub rel_deg)).  The absence of such a pair is
    asserted when [L:K] > 2 is prime (no intermediate fields) and
    |K| >= [L:K] - 1; otherwise the scan runs as an observation.
    """
    K = GF(p, k_sub)
    L = GF(p, k_sub * rel_deg, sub_degree=k_sub)
    intermediate = [e for e in range(2, rel_deg) if rel_deg % e == 0]
    precondition = rel_deg > 2 and not intermediate and K.order >= rel_deg - 1
    inv = L.tables.inv if L.order <= 1024 else None

    def to_codes(basis: np.ndarray) -> np.ndarray:
        vecs = span_vectors(basis, K)
        return np.array([L.from_coords(v, K) for v in vecs], dtype=np.int64)

    hyper = [to_codes(b) for b in iter_subspaces(K, rel_deg, rel_deg - 1)]
    planes = [to_codes(b) for b in iter_subspaces(K, rel_deg, 2)]
    inverses = [np.array([inv[x] if inv is not None else L.inv(int(x)) for x in a if x], dtype=np.int64)
                for a in hyper]
    violations = 0
    witness = None
    for ai, inv_a in enumerate(inverses):
        members = set(inv_a.tolist())
        for ui, u in enumerate(planes):
            if all(int(x) in members for x in u if x):
                violations += 1
                if witness is None:
                    witness = {"A": hyper[ai].tolist(), "U": u.tolist()}
    return {
        "check": "inverse-subspaces",
        "K": K.order,
        "L": L.order,
        "degree": rel_deg,
        "precondition": precondition,
        "intermediate_degrees": intermediate,
        "hyperplanes": len(hyper),
        "planes": len(planes),
        "violations": violations,
        "witness": witness,
        "asserted": precondition,
        "passed": violations == 0 if precondition else True,
    }
