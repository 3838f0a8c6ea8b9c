"""Exhaustive enumeration over a form space: rank distributions and zero counts.

Coefficient vectors are visited in fixed-size blocks (lexicographic order, or
projectively with first nonzero coefficient 1).  Block boundaries depend only
on (q, d), never on the thread count, and per-block results are merged in
block order, so every result is identical for any number of workers.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .formspace import FormSpace, alternating_part
from .gf import GF, hermitian_quadratic
from .linalg import batch_pfaffian, batch_rank, combine, decode, encode, fmatmul, vadd, vmul

__all__ = [
    "BLOCK_SIZE",
    "DEFAULT_BUDGET",
    "BudgetExceeded",
    "RankProfile",
    "default_budget",
    "projective_count",
    "iter_blocks",
    "block_coefficients",
    "rank_distribution",
    "projective_ranks",
    "find_elements",
    "rank_table",
    "kernel_dimensions",
    "z_count",
    "z_count_direct",
    "n_count",
    "profile",
    "verify_common_zeros",
    "verify_hermitian_count",
    "pfaffian_divisibility",
    "Finding",
    "verify_bounds",
]

DEFAULT_BUDGET = 1 << 24
BLOCK_SIZE = 1 << 13
BUDGET_ENV = "FORMRANK_BUDGET_ELEMS"


class BudgetExceeded(RuntimeError):
    """The requested enumeration is larger than the element budget."""


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else DEFAULT_BUDGET


def _check_budget(count: int, budget: int | None, what: str) -> None:
    budget = default_budget() if budget is None else budget
    if count > budget:
        raise BudgetExceeded(f"{what} needs {count} evaluations, budget is {budget}")


def projective_count(q: int, d: int) -> int:
    return (q**d - 1) // (q - 1)


# --- blocks ------------------------------------------------------------------------------

Block = tuple[int, int, int]  # (lead, start, stop); lead = -1 means the full space


def iter_blocks(q: int, d: int, projective: bool) -> list[Block]:
    out = []
    if projective:
        for lead in range(d):
            size = q ** (d - lead - 1)
            out.extend((lead, s, min(size, s + BLOCK_SIZE)) for s in range(0, size, BLOCK_SIZE))
    else:
        size = q**d
        out.extend((-1, s, min(size, s + BLOCK_SIZE)) for s in range(0, size, BLOCK_SIZE))
    return out


def block_coefficients(q: int, d: int, block: Block) -> np.ndarray:
    lead, start, stop = block
    idx = np.arange(start, stop, dtype=np.int64)
    if lead < 0:
        return decode(idx, q, d)
    c = np.zeros((len(idx), d), dtype=np.int64)
    c[:, lead] = 1
    if lead < d - 1:
        c[:, lead + 1:] = decode(idx, q, d - lead - 1)
    return c


def _map(fn: Callable, items: Sequence, threads: int) -> list:
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _block_ranks(m: FormSpace, block: Block) -> tuple[np.ndarray, np.ndarray]:
    c = block_coefficients(m.q, m.d, block)
    return c, batch_rank(combine(c, m.basis, m.field), m.field)


# --- rank distribution ----------------------------------------------------------------------


@dataclass
class RankProfile:
    """Rank counts ``A_0..A_n`` of a form space plus optional zero counts.

    In ``sampled`` mode ``counts`` are raw tallies over ``samples`` random
    elements and never exact.
    """

    q: int
    n: int
    d: int
    counts: list[int]
    mode: str
    samples: int | None = None
    z_count: int | None = None
    n_count: int | None = None
    hermitian: tuple[int, int] | None = None
    d_histogram: dict[int, int] | None = None
    e_histogram: dict[int, int] | None = None
    extra: dict = dc_field(default_factory=dict)

    @property
    def exact(self) -> bool:
        return self.mode in ("full", "projective")

    def A(self, k: int) -> int:
        return self.counts[k] if 0 <= k < len(self.counts) else 0

    @property
    def nonzero_ranks(self) -> list[int]:
        return [k for k in range(1, self.n + 1) if self.counts[k]]

    @property
    def min_rank(self) -> int:
        ranks = self.nonzero_ranks
        return min(ranks) if ranks else 0

    def to_dict(self) -> dict:
        out = {"q": self.q, "n": self.n, "d": self.d, "mode": self.mode, "A": list(self.counts)}
        if self.samples is not None:
            out["samples"] = self.samples
        if self.z_count is not None:
            out["z_count"] = self.z_count
        if self.n_count is not None:
            out["n_count"] = self.n_count
            out["hermitian"] = {"lambda": self.hermitian[0], "mu": self.hermitian[1]}
        if self.d_histogram is not None:
            out["d_histogram"] = {str(k): v for k, v in sorted(self.d_histogram.items())}
        if self.e_histogram is not None:
            out["e_histogram"] = {str(k): v for k, v in sorted(self.e_histogram.items())}
        out.update(self.extra)
        return out


def rank_distribution(m: FormSpace, projective: bool = True, budget: int | None = None,
                      threads: int = 1, sample: int | None = None, seed: int = 0) -> RankProfile:
    """Exact ``A_k`` by enumeration; random sampling if ``sample`` is given and
    the space is over budget."""
    q, d, n = m.q, m.d, m.n
    total = projective_count(q, d) if projective else q**d
    budget = default_budget() if budget is None else budget
    if total > budget:
        if not sample:
            raise BudgetExceeded(f"rank distribution needs {total} evaluations, budget is {budget}")
        rng = np.random.default_rng(seed)
        counts = np.zeros(n + 1, dtype=np.int64)
        for start in range(0, sample, BLOCK_SIZE):
            c = rng.integers(0, q, size=(min(sample, start + BLOCK_SIZE) - start, d))
            counts += np.bincount(batch_rank(combine(c, m.basis, m.field), m.field), minlength=n + 1)
        return RankProfile(q, n, d, [int(x) for x in counts], "sampled", samples=sample)
    parts = _map(lambda b: np.bincount(_block_ranks(m, b)[1], minlength=n + 1),
                 iter_blocks(q, d, projective), threads)
    counts = np.sum(parts, axis=0) if parts else np.zeros(n + 1, dtype=np.int64)
    if projective:
        counts = [0] + [int(x) * (q - 1) for x in counts[1:]]
        counts[0] = 1
    else:
        counts = [int(x) for x in counts]
    return RankProfile(q, n, d, counts, "projective" if projective else "full")


def projective_ranks(m: FormSpace, budget: int | None = None, threads: int = 1) -> tuple[np.ndarray, np.ndarray]:
    """All projective representatives (coefficient rows) and their ranks."""
    _check_budget(projective_count(m.q, m.d), budget, "projective enumeration")
    parts = _map(lambda b: _block_ranks(m, b), iter_blocks(m.q, m.d, True), threads)
    if not parts:
        return np.zeros((0, m.d), dtype=np.int64), np.zeros(0, dtype=np.int64)
    return np.concatenate([p[0] for p in parts]), np.concatenate([p[1] for p in parts])


def find_elements(m: FormSpace, ranks: Iterable[int], budget: int | None = None,
                  threads: int = 1) -> np.ndarray:
    """Coefficient rows of projective representatives whose rank is in ``ranks``."""
    wanted = np.array(sorted(set(ranks)), dtype=np.int64)
    _check_budget(projective_count(m.q, m.d), budget, "element search")

    def keep(block: Block) -> np.ndarray:
        c, r = _block_ranks(m, block)
        return c[np.isin(r, wanted)]

    parts = _map(keep, iter_blocks(m.q, m.d, True), threads)
    return np.concatenate(parts) if parts else np.zeros((0, m.d), dtype=np.int64)


def rank_table(m: FormSpace, budget: int | None = None, threads: int = 1) -> np.ndarray:
    """Rank of every element, indexed by the lexicographic coefficient index."""
    q, d = m.q, m.d
    _check_budget(q**d, budget, "rank table")
    table = np.zeros(q**d, dtype=np.int8)
    coeffs, ranks = projective_ranks(m, budget, threads)
    for c in range(1, q):
        table[encode(vmul(coeffs, c, m.field), q)] = ranks
    return table


# --- vectors of V ----------------------------------------------------------------------------


def kernel_dimensions(m: FormSpace, side: str = "left", budget: int | None = None,
                      threads: int = 1) -> np.ndarray:
    """``d(u) = dim M_u^L`` (or ``e(u)`` for side='right') for every u, indexed lexicographically.

    Entry 0 (u = 0) is d.
    """
    q, n, d = m.q, m.n, m.d
    _check_budget(q**n, budget, "kernel profile")
    blocks = [(-1, s, min(q**n, s + BLOCK_SIZE)) for s in range(0, q**n, BLOCK_SIZE)]
    basis = m.basis[None]

    def one(block: Block) -> np.ndarray:
        u = block_coefficients(q, n, block)
        if side == "left":
            rows = fmatmul(u[:, None, None, :], basis, m.field)
        elif side == "right":
            rows = fmatmul(basis, u[:, None, :, None], m.field)
        else:
            raise ValueError("side must be 'left' or 'right'")
        return d - batch_rank(rows.reshape(len(u), d, n), m.field)

    return np.concatenate(_map(one, blocks, threads))


def _histogram(values: np.ndarray) -> dict[int, int]:
    keys, counts = np.unique(values, return_counts=True)
    return {int(k): int(c) for k, c in zip(keys, counts)}


def z_count(m: FormSpace, budget: int | None = None, threads: int = 1,
            dims: np.ndarray | None = None) -> int:
    """|Z(M)| as ``sum_u q^(n - d + d(u))``."""
    dims = kernel_dimensions(m, "left", budget, threads) if dims is None else dims
    q, n, d = m.q, m.n, m.d
    return sum(c * q ** (n - d + k) for k, c in _histogram(dims).items())


def _pair_values(m: FormSpace, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """``f_i(u_b, v_c)`` for every basis form i: shape (len(u), d, len(v))."""
    left = fmatmul(u[:, None, None, :], m.basis[None], m.field)[:, :, 0, :]  # (B, d, n)
    return fmatmul(left, v.T[None], m.field)


def _pair_blocks(m: FormSpace) -> tuple[np.ndarray, list[Block]]:
    q, n = m.q, m.n
    vs = decode(np.arange(q**n), q, n)
    step = max(1, (1 << 21) // max(1, m.d * q**n))
    return vs, [(-1, s, min(q**n, s + step)) for s in range(0, q**n, step)]


def z_count_direct(m: FormSpace, budget: int | None = None, threads: int = 1) -> int:
    """|Z(M)| by scanning all pairs (u, v)."""
    _check_budget(m.q ** (2 * m.n), budget, "pair scan")
    vs, blocks = _pair_blocks(m)

    def one(block: Block) -> int:
        g = _pair_values(m, vs[block[1]:block[2]], vs)
        return int((g == 0).all(axis=1).sum())

    return sum(_map(one, blocks, threads))


def _check_irreducible(field: GF, lam: int, mu: int) -> None:
    for x in range(field.order):
        if field.add(field.add(field.mul(x, x), field.mul(lam, x)), mu) == 0:
            raise ValueError(f"x^2 + {lam}x + {mu} has the root {x}; it must be irreducible")


def n_count(m: FormSpace, lam: int | None = None, mu: int | None = None,
            budget: int | None = None, threads: int = 1) -> int:
    """|N(M)|: pairs with ``f(u,u) + lam f(u,v) + mu f(v,v) = 0`` for all f, by direct scan."""
    if m.kind == "bilinear":
        raise ValueError("N(M) is defined for symmetric form spaces")
    if lam is None or mu is None:
        lam, mu = hermitian_quadratic(m.field)
    _check_irreducible(m.field, lam, mu)
    _check_budget(m.q ** (2 * m.n), budget, "pair scan")
    f = m.field
    vs, blocks = _pair_blocks(m)
    left = fmatmul(vs[:, None, None, :], m.basis[None], f)[:, :, 0, :]  # (Q, d, n)
    diag = fmatmul(left[:, :, None, :], vs[:, None, :, None], f)[:, :, 0, 0]  # (Q, d)
    mu_diag = vmul(diag, mu, f).T[None]  # (1, d, Q)

    def one(block: Block) -> int:
        s, e = block[1], block[2]
        g = fmatmul(left[s:e], vs.T[None], f)  # (B, d, Q)
        cond = vadd(vadd(diag[s:e, :, None], vmul(g, lam, f), f), mu_diag, f)
        return int((cond == 0).all(axis=1).sum())

    return sum(_map(one, blocks, threads))


def profile(m: FormSpace, projective: bool = True, kernels: bool = True, zcount: bool = True,
            ncount: bool = False, hermitian: tuple[int, int] | None = None,
            budget: int | None = None, threads: int = 1, sample: int | None = None,
            seed: int = 0) -> RankProfile:
    """Rank distribution plus kernel histograms and zero counts as requested."""
    prof = rank_distribution(m, projective, budget, threads, sample, seed)
    if kernels or zcount:
        dl = kernel_dimensions(m, "left", budget, threads)
        prof.d_histogram = _histogram(dl[1:])
        prof.e_histogram = _histogram(kernel_dimensions(m, "right", budget, threads)[1:])
        if zcount:
            prof.z_count = z_count(m, dims=dl)
    if ncount:
        lam, mu = hermitian if hermitian else hermitian_quadratic(m.field)
        prof.n_count = n_count(m, lam, mu, budget, threads)
        prof.hermitian = (lam, mu)
    return prof


# --- identities ----------------------------------------------------------------------------


def _scaled(count: int, q: int, shift: int) -> int | str:
    val = Fraction(count) * Fraction(q) ** shift
    return int(val) if val.denominator == 1 else str(val)


def verify_common_zeros(m: FormSpace, prof: RankProfile | None = None, budget: int | None = None,
                        threads: int = 1) -> dict:
    """Check ``q^(d-n)|Z| = sum q^d(u) = sum q^e(u) = sum A_k q^(n-k)``.

    |Z| is counted by the pair scan when it fits the budget, otherwise from
    the left kernel dimensions.
    """
    q, n, d = m.q, m.n, m.d
    if prof is None or not prof.exact:
        prof = rank_distribution(m, budget=budget, threads=threads)
    dl = kernel_dimensions(m, "left", budget, threads)
    dr = kernel_dimensions(m, "right", budget, threads)
    budget_v = default_budget() if budget is None else budget
    if q ** (2 * n) <= budget_v:
        z, z_mode = z_count_direct(m, budget, threads), "pair-scan"
    else:
        z, z_mode = z_count(m, dims=dl), "kernel-sum"
    sum_d = sum(c * q**k for k, c in _histogram(dl).items())
    sum_e = sum(c * q**k for k, c in _histogram(dr).items())
    sum_a = sum(a * q ** (n - k) for k, a in enumerate(prof.counts))
    passed = z * q**d == sum_d * q**n and sum_d == sum_e == sum_a
    return {
        "check": "common-zeros",
        "passed": bool(passed),
        "z_count": z,
        "z_mode": z_mode,
        "q^(d-n)|Z|": _scaled(z, q, d - n),
        "sum_q^d(u)": sum_d,
        "sum_q^e(u)": sum_e,
        "sum_A_k_q^(n-k)": sum_a,
    }


def verify_hermitian_count(m: FormSpace, lam: int | None = None, mu: int | None = None,
                           prof: RankProfile | None = None, budget: int | None = None,
                           threads: int = 1) -> dict:
    """Check ``q^(d-n)|N| = sum (-1)^k A_k q^(n-k)`` against a direct count of N."""
    if not (m.kind == "symmetric" or (m.kind == "alternating" and m.field.p == 2)):
        raise ValueError("the hermitian count needs a space of symmetric matrices")
    q, n, d = m.q, m.n, m.d
    if lam is None or mu is None:
        lam, mu = hermitian_quadratic(m.field)
    if prof is None or not prof.exact:
        prof = rank_distribution(m, budget=budget, threads=threads)
    nc = n_count(m, lam, mu, budget, threads)
    rhs = sum((-1) ** k * a * q ** (n - k) for k, a in enumerate(prof.counts))
    return {
        "check": "hermitian-count",
        "passed": bool(nc * q**d == rhs * q**n),
        "lambda": lam,
        "mu": mu,
        "n_count": nc,
        "q^(d-n)|N|": _scaled(nc, q, d - n),
        "signed_sum": rhs,
    }


def pfaffian_divisibility(m: FormSpace, prof: RankProfile | None = None, budget: int | None = None,
                          threads: int = 1) -> dict:
    """For alternating M on an even space of dimension 2m > 2 with d = s m + t
    (s >= 1, 0 < t <= m), check that q^s divides the number of nondegenerate
    elements.  The count is taken twice: from ranks and from nonzero Pfaffians."""
    if m.kind != "alternating":
        raise ValueError("divisibility check needs an alternating form space")
    n, d, q = m.n, m.d, m.q
    if n % 2 or n <= 2:
        raise ValueError("n must be even and greater than 2")
    half = n // 2
    if d <= half:
        raise ValueError(f"d = {d} must exceed n/2 = {half}")
    s = (d - 1) // half
    t = d - s * half
    if prof is None or not prof.exact:
        prof = rank_distribution(m, budget=budget, threads=threads)
    a_n = prof.A(n)
    out = {"check": "pfaffian-divisibility", "m": half, "s": s, "t": t, "A_n": a_n,
           "divisor": q**s, "divisible": a_n % q**s == 0}
    if n <= 8 and projective_count(q, d) <= (default_budget() if budget is None else budget):
        def one(block: Block) -> int:
            c = block_coefficients(q, d, block)
            pf = batch_pfaffian(combine(c, m.basis, m.field), m.field, check=False)
            return int(np.count_nonzero(pf))

        out["pfaffian_count"] = sum(_map(one, iter_blocks(q, d, True), threads)) * (q - 1)
    out["passed"] = bool(out["divisible"] and out.get("pfaffian_count", a_n) == a_n)
    return out


# --- bounds ------------------------------------------------------------------------------------


@dataclass
class Finding:
    """One applicable dimension bound or counting statement.

    ``status`` is "pass" or "fail" when all side conditions hold, and
    "observation" when the same quantity is computed outside the regime in
    which the statement is asserted.
    """

    claim: str
    status: str
    detail: dict

    def to_dict(self) -> dict:
        return {"claim": self.claim, "status": self.status, "detail": self.detail}


def _status(ok: bool, asserted: bool = True) -> str:
    if not asserted:
        return "observation"
    return "pass" if ok else "fail"


def verify_bounds(m: FormSpace, prof: RankProfile | None = None, budget: int | None = None,
                  threads: int = 1) -> list[Finding]:
    """Classify M by its rank set and check every applicable bound."""
    q, n, d, kind = m.q, m.n, m.d, m.kind
    if prof is None or not prof.exact:
        prof = rank_distribution(m, budget=budget, threads=threads)
    ranks = prof.nonzero_ranks
    rs = set(ranks)
    out: list[Finding] = []

    def add(claim: str, ok: bool, asserted: bool = True, **detail) -> None:
        out.append(Finding(claim, _status(ok, asserted), {"d": d, "n": n, "q": q, **detail}))

    dl = kernel_dimensions(m, "left", budget, threads)[1:]
    dr = kernel_dimensions(m, "right", budget, threads)[1:]
    zc = z_count(m, dims=np.concatenate([[d], dl]))
    trivial = 2 * q**n - 1

    add("d(u) >= d - n and e(u) >= d - n for u != 0", bool(dl.min() >= d - n and dr.min() >= d - n),
        min_d=int(dl.min()), min_e=int(dr.min()))
    if kind == "alternating":
        add("alternating: d(u) >= d - n + 1 for u != 0", bool(dl.min() >= d - n + 1), min_d=int(dl.min()))
    if kind != "bilinear":
        add("symmetric/alternating: d(u) = e(u)", bool(np.array_equal(dl, dr)))
    only_trivial = zc == trivial
    add("|Z| >= 2q^n - 1", zc >= trivial, z_count=zc)
    add("|Z| = 2q^n - 1 iff d(u) = e(u) = d - n for all u != 0",
        only_trivial == bool((dl == d - n).all() and (dr == d - n).all()), z_count=zc)

    if len(rs) == 1:
        (r,) = rs
        add("constant rank r: d <= 2n - r", d <= 2 * n - r, r=r)
        add("constant rank r, q >= r + 1: d <= n", d <= n, asserted=q >= r + 1, r=r)
    if len(rs) == 2 and max(rs) == n:
        r = min(rs)
        add("ranks in {r, n}: d <= 3n - r", d <= 3 * n - r, r=r)
        add("ranks in {r, n}, q >= r + 1: d <= 2n", d <= 2 * n, asserted=q >= r + 1, r=r)
        if d == 2 * n:
            expect = Fraction((q**n - 1) ** 2, q ** (n - r) - 1)
            add("ranks in {r, n}, d = 2n, q >= r + 1: (n - r) | n and A_r = (q^n - 1)^2 / (q^(n-r) - 1)",
                n % (n - r) == 0 and prof.A(r) == expect, asserted=q >= r + 1,
                r=r, A_r=prof.A(r), expected=str(expect))

    if kind == "alternating" and n % 2 == 0 and n > 2:
        half = n // 2
        if prof.min_rank >= n - 2 or not ranks:
            add("alternating, ranks >= n - 2: d <= 3n/2", d <= 3 * half)
        if d > half:
            rep = pfaffian_divisibility(m, prof, budget, threads)
            add("alternating, d = s n/2 + t: q^s divides A_n", rep["passed"],
                s=rep["s"], t=rep["t"], A_n=rep["A_n"])
    if kind == "alternating" and n % 2 == 1 and rs == {n - 1}:
        add("alternating, n odd, constant rank n - 1: d <= n", d <= n)
        if d == n:
            add("alternating, n odd, constant rank n - 1, d = n: d(u) = 1", bool((dl == 1).all()))

    if kind == "symmetric":
        out.extend(_symmetric_findings(m, prof, dl, zc, budget, threads))
    return out


def _symmetric_findings(m: FormSpace, prof: RankProfile, dl: np.ndarray, zc: int,
                        budget: int | None, threads: int) -> list[Finding]:
    q, n, d = m.q, m.n, m.d
    rs = set(prof.nonzero_ranks)
    out: list[Finding] = []
    char2 = m.field.p == 2

    def add(claim: str, ok: bool, asserted: bool = True, **detail) -> None:
        out.append(Finding(claim, _status(ok, asserted), {"d": d, "n": n, "q": q, **detail}))

    def alt_profile() -> RankProfile:
        return rank_distribution(alternating_part(m), budget=budget, threads=threads)

    if len(rs) == 2:
        r, ell = sorted(rs)
        if (r + ell) % 2 == 1 and n >= 2:
            add("symmetric, ranks {r, l} of opposite parity: d <= 2n - r (q != 2)",
                d <= 2 * n - r, asserted=q != 2, r=r, l=ell)
        if ell == n and n % 2 == 0 and r % 2 == 1:
            add("symmetric, n even, ranks {r, n}, r odd: d <= 2n - r", d <= 2 * n - r, r=r)
        if ell == n and (n - r) % 2 == 1 and d == 2 * n - r:
            a_r, a_n = prof.A(r), prof.A(n)
            add("symmetric, ranks {r, n} of opposite parity, d = 2n - r: A_r >= q^n - 1, "
                "A_n <= q^(2n-r) - q^n", a_r >= q**n - 1 and a_n <= q ** (2 * n - r) - q**n,
                r=r, A_r=a_r, A_n=a_n)
            nc = _n_count_or_formula(m, prof, budget, threads)
            if r % 2 == 1:
                ok = (a_r == q**n - 1 and a_n == q ** (2 * n - r) - q**n and zc == 2 * q**n - 1
                      and nc == 1 and bool((dl == n - r).all()))
                add("n even, r odd: A_r = q^n - 1, A_n = q^(2n-r) - q^n, |Z| = 2q^n - 1, |N| = 1, "
                    "d(u) = n - r", ok, r=r, A_r=a_r, A_n=a_n, z_count=zc, n_count=nc)
                if char2:
                    alt = alternating_part(m)
                    add("n even, r odd, q even: dim M_Alt = n - r", alt.d == n - r, r=r, alt_dim=alt.d)
            else:
                e1 = a_r == q**n - 1
                e2 = nc == 2 * q**r - 1
                e3 = zc == 2 * q**n - 1
                add("n odd, r even: |N| >= 2q^r - 1, and A_r = q^n - 1 iff |N| = 2q^r - 1 iff "
                    "|Z| = 2q^n - 1", nc >= 2 * q**r - 1 and e1 == e2 == e3,
                    r=r, n_count=nc, equality=bool(e2))
    if n == 6 and rs and rs <= {3, 6}:
        add("symmetric, n = 6, ranks in {3, 6}, q >= 4: d <= 9", d <= 9, asserted=q >= 4)
        if d == 9:
            add("n = 6, d = 9: d(u) = 3", bool((dl == 3).all()), asserted=q >= 4)
    if n == 4 and rs and rs <= {2, 4}:
        add("symmetric, n = 4, ranks in {2, 4}, q odd: d <= 6", d <= 6, asserted=q % 2 == 1)
        if d == 6:
            add("n = 4, d = 6, q odd: A_2 = q^4 - 1 and d(u) = 2",
                prof.A(2) == q**4 - 1 and bool((dl == 2).all()), asserted=q % 2 == 1, A_2=prof.A(2))
    if len(rs) == 3 and max(rs) == n:
        r, ell, _ = sorted(rs)
        if (r + ell) % 2 == 1:
            add("symmetric, ranks {r, l, n}, r and l of opposite parity: d <= 3n - r - 2 and "
                "d(u) <= 2n - 2 - r (q != 2)", d <= 3 * n - r - 2 and bool((dl <= 2 * n - 2 - r).all()),
                asserted=q != 2, r=r, l=ell)
    if rs and min(rs) >= n - 2 and n >= 3:
        exempt = n % 2 == 0 and q == 2
        add("symmetric, ranks >= n - 2: d <= 2n", d <= 2 * n, asserted=not exempt)
        if d == 2 * n:
            add("symmetric, ranks >= n - 2, d = 2n: d(u) = n", bool((dl == n).all()), asserted=not exempt)
            if n % 2 == 1:
                a1, a2 = prof.A(n - 1), prof.A(n - 2)
                add("n odd, d = 2n, ranks >= n - 2: A_(n-1) = q^(n-1)(q^n - 1), "
                    "A_(n-2) = (q^n - 1)(q^(n-1) - 1)/(q^2 - 1)",
                    a1 == q ** (n - 1) * (q**n - 1) and a2 * (q * q - 1) == (q**n - 1) * (q ** (n - 1) - 1),
                    A_n_minus_1=a1, A_n_minus_2=a2)
                if char2:
                    ap = alt_profile()
                    add("n odd, q even, d = 2n: M_Alt is n-dimensional of constant rank n - 1",
                        ap.d == n and ap.nonzero_ranks == [n - 1], alt_dim=ap.d, alt_ranks=ap.nonzero_ranks)
            elif n >= 4:
                a1, a2 = prof.A(n - 1), prof.A(n - 2)
                add("n even, d = 2n, ranks >= n - 2: A_(n-2) >= (q^n - 1)(q^(n-1) - 1)/(q^2 - 1)",
                    a2 * (q * q - 1) >= (q**n - 1) * (q ** (n - 1) - 1), A_n_minus_2=a2)
                add("n even, d = 2n, ranks >= n - 2, q != 2: A_(n-1) <= q^(n-1)(q^n - 1)",
                    a1 <= q ** (n - 1) * (q**n - 1), asserted=q != 2, A_n_minus_1=a1)
    if char2 and rs == {n}:
        add("q even, all nonzero ranks n: M_Alt = 0", alternating_part(m).d == 0)
    if char2 and zc == 2 * q**n - 1:
        add("q even, Z(M) trivial: dim M_Alt = d - n", alternating_part(m).d == d - n)
    return out


def _n_count_or_formula(m: FormSpace, prof: RankProfile, budget: int | None, threads: int) -> int:
    budget = default_budget() if budget is None else budget
    if m.q ** (2 * m.n) <= budget:
        return n_count(m, budget=budget, threads=threads)
    q, n, d = m.q, m.n, m.d
    signed = sum((-1) ** k * a * q ** (n - k) for k, a in enumerate(prof.counts))
    return int(Fraction(signed * q**n, q**d))
