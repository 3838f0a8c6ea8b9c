"""Exact matrix algebra over small finite fields.

Matrices are numpy ``int64`` arrays of element codes of a :class:`~formrank.gf.GF`
(see :mod:`formrank.gf`).  Prime fields use modular arithmetic directly,
other fields go through the operation tables.  Batched routines take a
stack ``(B, rows, cols)`` and eliminate all matrices at once; GF(2) has a
bit-packed path where each row is a machine word.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .gf import GF

__all__ = [
    "FormMatrix",
    "Subspace",
    "vadd",
    "vsub",
    "vmul",
    "vneg",
    "fmatmul",
    "combine",
    "encode",
    "decode",
    "rref",
    "rank",
    "null_space",
    "left_null_space",
    "radical_left",
    "radical_right",
    "det",
    "pfaffian",
    "batch_rank",
    "batch_det",
    "batch_pfaffian",
    "inverse_mod_p",
    "iter_subspaces",
    "gaussian_binomial",
    "span_vectors",
]


# --- elementwise field arithmetic on code arrays --------------------------------


def vadd(a, b, field: GF):
    if field.p == 2:
        return np.bitwise_xor(a, b)
    if field.k == 1:
        return (np.add(a, b)) % field.p
    return field.tables.add[a, b]


def vsub(a, b, field: GF):
    if field.p == 2:
        return np.bitwise_xor(a, b)
    if field.k == 1:
        return np.subtract(a, b) % field.p
    return field.tables.sub[a, b]


def vmul(a, b, field: GF):
    if field.k == 1:
        return np.multiply(a, b) % field.p
    return field.tables.mul[a, b]


def vneg(a, field: GF):
    if field.p == 2:
        return np.asarray(a)
    if field.k == 1:
        return np.negative(a) % field.p
    return field.tables.neg[a]


def fmatmul(x: np.ndarray, y: np.ndarray, field: GF) -> np.ndarray:
    """Matrix product over ``field`` with numpy broadcasting rules."""
    x = np.asarray(x, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    if field.k == 1:
        return np.matmul(x, y) % field.p
    inner = x.shape[-1]
    acc = None
    for j in range(inner):
        term = vmul(x[..., :, j, None], y[..., j, None, :], field)
        acc = term if acc is None else vadd(acc, term, field)
    return acc


def combine(coeffs: np.ndarray, basis: np.ndarray, field: GF) -> np.ndarray:
    """Linear combinations ``sum_i coeffs[b, i] * basis[i]`` for a batch of coefficient rows."""
    coeffs = np.atleast_2d(np.asarray(coeffs, dtype=np.int64))
    basis = np.asarray(basis, dtype=np.int64)
    d = basis.shape[0]
    tail = basis.shape[1:]
    if d == 0:
        return np.zeros((coeffs.shape[0],) + tail, dtype=np.int64)
    flat = fmatmul(coeffs, basis.reshape(d, -1), field)
    return flat.reshape((coeffs.shape[0],) + tail)


def encode(vectors: np.ndarray, q: int) -> np.ndarray:
    """Index of each row in lexicographic order (first coordinate most significant)."""
    vectors = np.asarray(vectors, dtype=np.int64)
    n = vectors.shape[-1]
    weights = q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return vectors @ weights


def decode(index, q: int, n: int) -> np.ndarray:
    """Inverse of :func:`encode`."""
    index = np.asarray(index, dtype=np.int64)
    weights = q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return (index[..., None] // weights) % q


# --- scalar elimination ------------------------------------------------------------


def _as_array(a, field: GF | None) -> tuple[np.ndarray, GF]:
    if isinstance(a, FormMatrix):
        return a.entries, a.field
    if field is None:
        raise TypeError("a field is required for raw arrays")
    return np.asarray(a, dtype=np.int64), field


def rref(a, field: GF | None = None) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form; pivots are chosen as the first nonzero in column order."""
    a, field = _as_array(a, field)
    r = np.array(a, dtype=np.int64, copy=True)
    if r.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    m, n = r.shape
    inv = field.tables.inv
    pivots: list[int] = []
    row = 0
    for col in range(n):
        if row == m:
            break
        nz = np.nonzero(r[row:, col])[0]
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            r[[row, piv]] = r[[piv, row]]
        r[row] = vmul(r[row], inv[r[row, col]], field)
        for other in np.nonzero(r[:, col])[0]:
            if other != row:
                r[other] = vsub(r[other], vmul(r[other, col], r[row], field), field)
        pivots.append(col)
        row += 1
    return r, pivots


def _rank_gf2(a: np.ndarray) -> int:
    rows = [int("".join(map(str, row[::-1])) or "0", 2) for row in a.tolist()]
    rank = 0
    while rows:
        pivot = rows.pop()
        if pivot:
            rank += 1
            low = pivot & -pivot
            rows = [r ^ pivot if r & low else r for r in rows]
    return rank


def rank(a, field: GF | None = None) -> int:
    a, field = _as_array(a, field)
    if a.size == 0:
        return 0
    if field.order == 2:
        return _rank_gf2(a)
    return len(rref(a, field)[1])


def null_space(a, field: GF | None = None) -> np.ndarray:
    """Basis (rows, canonical RREF) of ``{x : a @ x = 0}``."""
    a, field = _as_array(a, field)
    m, n = a.shape
    r, pivots = rref(a, field) if m else (np.zeros((0, n), np.int64), [])
    free = [j for j in range(n) if j not in pivots]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for i, fcol in enumerate(free):
        basis[i, fcol] = 1
        for row, pcol in enumerate(pivots):
            basis[i, pcol] = vneg(r[row, fcol], field)
    if len(basis):
        basis = rref(basis, field)[0]
    return basis


def left_null_space(a, field: GF | None = None) -> np.ndarray:
    """Basis of ``{y : y @ a = 0}``."""
    a, field = _as_array(a, field)
    return null_space(a.T, field)


def inverse_mod_p(mat: np.ndarray, p: int) -> np.ndarray:
    """Inverse of a square matrix over the prime field GF(p)."""
    mat = np.asarray(mat, dtype=np.int64) % p
    n = mat.shape[0]
    field = GF(p)
    r, pivots = rref(np.hstack([mat, np.eye(n, dtype=np.int64)]), field)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return r[:, n:]


def det(a, field: GF | None = None) -> int:
    a, field = _as_array(a, field)
    return int(batch_det(a[None], field)[0])


def _check_alternating(a: np.ndarray, field: GF) -> None:
    if a.shape[0] != a.shape[1]:
        raise ValueError("Pfaffian needs a square matrix")
    if a.shape[0] % 2:
        raise ValueError("Pfaffian needs even size")
    if np.any(np.diagonal(a)) or not np.array_equal(a, vneg(a.T, field)):
        raise ValueError("Pfaffian needs an alternating matrix")


def pfaffian(a, field: GF | None = None) -> int:
    """Pfaffian of an alternating matrix.

    Expansion along the first row up to size 8, skew-symmetric elimination
    above that.
    """
    a, field = _as_array(a, field)
    _check_alternating(a, field)
    if a.shape[0] <= 8:
        return int(batch_pfaffian(a[None], field, check=False)[0])
    return _pfaffian_elimination(a, field)


def _pfaffian_elimination(a: np.ndarray, field: GF) -> int:
    a = np.array(a, dtype=np.int64, copy=True)
    n = a.shape[0]
    inv = field.tables.inv
    pf = 1
    for k in range(0, n, 2):
        nz = np.nonzero(a[k, k + 1:])[0]
        if nz.size == 0:
            return 0
        j = k + 1 + int(nz[0])
        if j != k + 1:
            a[[k + 1, j]] = a[[j, k + 1]]
            a[:, [k + 1, j]] = a[:, [j, k + 1]]
            pf = field.neg(pf)
        pf = field.mul(pf, int(a[k, k + 1]))
        for l in range(k + 2, n):
            # congruences by unit triangular matrices keep the Pfaffian
            t = field.mul(int(a[k, l]), int(inv[a[k, k + 1]]))
            if t:
                a[:, l] = vsub(a[:, l], vmul(t, a[:, k + 1], field), field)
                a[l, :] = vsub(a[l, :], vmul(t, a[k + 1, :], field), field)
            s = field.mul(int(a[k + 1, l]), int(inv[a[k + 1, k]]))
            if s:
                a[:, l] = vsub(a[:, l], vmul(s, a[:, k], field), field)
                a[l, :] = vsub(a[l, :], vmul(s, a[k, :], field), field)
    return pf


# --- batched elimination ---------------------------------------------------------------


def _batch_rank_gf2(a: np.ndarray) -> np.ndarray:
    bsz, nrows, ncols = a.shape
    if ncols > 63:
        return _batch_rank_generic(a, GF(2))
    weights = (np.ones(1, dtype=np.int64) << np.arange(ncols, dtype=np.int64))
    rows = (a & 1) @ weights
    used = np.zeros((bsz, nrows), dtype=bool)
    ranks = np.zeros(bsz, dtype=np.int64)
    idx = np.arange(bsz)
    for c in range(ncols):
        cand = (((rows >> c) & 1) == 1) & ~used
        has = cand.any(axis=1)
        if not has.any():
            continue
        piv = cand.argmax(axis=1)
        prow = rows[idx, piv]
        cand[idx, piv] = False
        rows ^= np.where(cand, prow[:, None], 0)
        used[idx[has], piv[has]] = True
        ranks += has
    return ranks


def _batch_rank_generic(a: np.ndarray, field: GF) -> np.ndarray:
    bsz, nrows, ncols = a.shape
    inv = field.tables.inv
    used = np.zeros((bsz, nrows), dtype=bool)
    ranks = np.zeros(bsz, dtype=np.int64)
    idx = np.arange(bsz)
    for c in range(ncols):
        col = a[:, :, c]
        cand = (col != 0) & ~used
        has = cand.any(axis=1)
        if not has.any():
            continue
        piv = cand.argmax(axis=1)
        pval = col[idx, piv]
        factor = vmul(col, inv[pval][:, None], field)
        factor[idx, piv] = 0
        factor[used] = 0
        prow = a[idx, piv, c:]
        a[:, :, c:] = vsub(a[:, :, c:], vmul(factor[:, :, None], prow[:, None, :], field), field)
        used[idx[has], piv[has]] = True
        ranks += has
    return ranks


def batch_rank(mats, field: GF) -> np.ndarray:
    """Ranks of a stack of matrices ``(B, rows, cols)``."""
    a = np.array(mats, dtype=np.int64, copy=True)
    if a.ndim == 2:
        a = a[None]
    if a.shape[0] == 0 or a.shape[1] == 0 or a.shape[2] == 0:
        return np.zeros(a.shape[0], dtype=np.int64)
    if field.order == 2:
        return _batch_rank_gf2(a)
    return _batch_rank_generic(a, field)


def batch_det(mats, field: GF) -> np.ndarray:
    """Determinants of a stack of square matrices."""
    a = np.array(mats, dtype=np.int64, copy=True)
    bsz, n, _ = a.shape
    inv = field.tables.inv
    used = np.zeros((bsz, n), dtype=bool)
    singular = np.zeros(bsz, dtype=bool)
    pivrows = np.zeros((bsz, n), dtype=np.int64)
    prod = np.ones(bsz, dtype=np.int64)
    idx = np.arange(bsz)
    for c in range(n):
        col = a[:, :, c]
        cand = (col != 0) & ~used
        has = cand.any(axis=1)
        singular |= ~has
        piv = cand.argmax(axis=1)
        pivrows[:, c] = piv
        pval = col[idx, piv]
        prod = vmul(prod, pval, field)
        factor = vmul(col, inv[pval][:, None], field)
        factor[idx, piv] = 0
        factor[used] = 0
        prow = a[idx, piv, c:]
        a[:, :, c:] = vsub(a[:, :, c:], vmul(factor[:, :, None], prow[:, None, :], field), field)
        used[idx[has], piv[has]] = True
    if field.p != 2:
        inversions = np.zeros(bsz, dtype=np.int64)
        for i in range(n):
            inversions += (pivrows[:, i, None] > pivrows[:, i + 1:]).sum(axis=1)
        odd = (inversions % 2) == 1
        prod = np.where(odd, vneg(prod, field), prod)
    return np.where(singular, 0, prod)


def batch_pfaffian(mats, field: GF, check: bool = True) -> np.ndarray:
    """Pfaffians of a stack of alternating matrices by expansion along the first row."""
    a = np.asarray(mats, dtype=np.int64)
    bsz, n, _ = a.shape
    if check:
        for m in a:
            _check_alternating(m, field)
    memo: dict[tuple[int, ...], np.ndarray] = {}

    def pf(rest: tuple[int, ...]) -> np.ndarray:
        if not rest:
            return np.ones(bsz, dtype=np.int64)
        if rest in memo:
            return memo[rest]
        i = rest[0]
        total = np.zeros(bsz, dtype=np.int64)
        for pos, j in enumerate(rest[1:]):
            entry = a[:, i, j]
            if not entry.any():
                continue
            sub = tuple(x for x in rest[1:] if x != j)
            term = vmul(entry, pf(sub), field)
            total = vadd(total, term, field) if pos % 2 == 0 else vsub(total, term, field)
        memo[rest] = total
        return total

    return pf(tuple(range(n)))


# --- forms and subspaces ------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FormMatrix:
    """An n x n matrix over GF(q) representing the bilinear form ``(u, v) -> u^T A v``."""

    field: GF
    entries: np.ndarray

    def __post_init__(self):
        e = np.array(self.entries, dtype=np.int64, copy=True)
        if e.ndim != 2 or e.shape[0] != e.shape[1]:
            raise ValueError("form matrices must be square")
        if e.size and (e.min() < 0 or e.max() >= self.field.order):
            raise ValueError("entries out of range for the field")
        e.setflags(write=False)
        object.__setattr__(self, "entries", e)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @property
    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self.entries, self.entries.T))

    @property
    def is_alternating(self) -> bool:
        e = self.entries
        return not np.any(np.diagonal(e)) and bool(np.array_equal(e, vneg(e.T, self.field)))

    def rank(self) -> int:
        return rank(self.entries, self.field)

    def evaluate(self, u, v) -> int:
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        return int(fmatmul(fmatmul(u[None, :], self.entries, self.field), v[:, None], self.field)[0, 0])

    def transpose(self) -> "FormMatrix":
        return FormMatrix(self.field, self.entries.T)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, FormMatrix) and other.field == self.field
                and np.array_equal(other.entries, self.entries))

    def __hash__(self) -> int:
        return hash((self.field, self.entries.tobytes()))


class Subspace:
    """A subspace of GF(q)^n held by its reduced row echelon basis."""

    __slots__ = ("field", "n", "basis")

    def __init__(self, field: GF, n: int, vectors=()):
        vecs = np.asarray(vectors, dtype=np.int64).reshape(-1, n)
        if len(vecs):
            r, piv = rref(vecs, field)
            vecs = r[: len(piv)]
        vecs = np.ascontiguousarray(vecs)
        vecs.setflags(write=False)
        self.field = field
        self.n = n
        self.basis = vecs

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def key(self) -> bytes:
        return self.basis.astype(np.int16).tobytes() + bytes([self.n])

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Subspace) and other.field == self.field and other.n == self.n
                and np.array_equal(other.basis, self.basis))

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, n={self.n}, basis={self.basis.tolist()})"

    def _check(self, other: "Subspace") -> None:
        if other.n != self.n or other.field != self.field:
            raise ValueError("subspaces live in different ambient spaces")

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.field, self.n, np.vstack([self.basis, other.basis]))

    def intersection(self, other: "Subspace") -> "Subspace":
        """Intersection via the kernel of the stacked bases."""
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace(self.field, self.n)
        stacked = np.hstack([self.basis.T, vneg(other.basis.T, self.field)])
        kern = null_space(stacked, self.field)
        if len(kern) == 0:
            return Subspace(self.field, self.n)
        return Subspace(self.field, self.n, fmatmul(kern[:, : self.dim], self.basis, self.field))

    __and__ = intersection

    def contains(self, v) -> bool:
        v = np.asarray(v, dtype=np.int64).reshape(1, self.n)
        return rank(np.vstack([self.basis, v]), self.field) == self.dim

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def vectors(self) -> np.ndarray:
        return span_vectors(self.basis, self.field)

    @classmethod
    def full(cls, field: GF, n: int) -> "Subspace":
        return cls(field, n, np.eye(n, dtype=np.int64))


def span_vectors(basis: np.ndarray, field: GF) -> np.ndarray:
    """All ``q^k`` vectors of the span of ``basis`` (rows), in coefficient-index order."""
    basis = np.asarray(basis, dtype=np.int64)
    k = basis.shape[0]
    coeffs = decode(np.arange(field.order**k), field.order, k)
    return combine(coeffs, basis, field)


def radical_left(a, field: GF | None = None) -> Subspace:
    """``{u : u^T A = 0}``."""
    a, field = _as_array(a, field)
    return Subspace(field, a.shape[0], left_null_space(a, field))


def radical_right(a, field: GF | None = None) -> Subspace:
    """``{w : A w = 0}``."""
    a, field = _as_array(a, field)
    return Subspace(field, a.shape[0], null_space(a, field))


def iter_subspaces(field: GF, n: int, k: int) -> Iterator[np.ndarray]:
    """Every k-dimensional subspace of GF(q)^n, as its RREF basis."""
    q = field.order
    for pivots in itertools.combinations(range(n), k):
        free = [(i, j) for i, pc in enumerate(pivots) for j in range(pc + 1, n) if j not in pivots]
        for vals in itertools.product(range(q), repeat=len(free)):
            m = np.zeros((k, n), dtype=np.int64)
            for i, pc in enumerate(pivots):
                m[i, pc] = 1
            for (i, j), v in zip(free, vals):
                m[i, j] = v
            yield m


@lru_cache(maxsize=None)
def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of an n-dimensional space over GF(q)."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den
