"""Slow, independent reference implementations used as test oracles.

Nothing here calls into ``formrank`` arithmetic: field operations are
schoolbook polynomial arithmetic on coefficient lists, and every count is a
direct scan over all elements or pairs.
"""

from __future__ import annotations

import itertools
from functools import lru_cache


class PyField:
    """GF(p^k) on integer codes sum c_i p^i, reduced by a monic modulus (low degree first)."""

    def __init__(self, p: int, modulus: tuple[int, ...]):
        self.p = p
        self.k = len(modulus) - 1
        self.modulus = tuple(modulus)
        self.order = p**self.k
        self._inv = {}
        for a in range(1, self.order):
            for b in range(1, self.order):
                if self.mul(a, b) == 1:
                    self._inv[a] = b
                    break

    def digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def code(self, ds) -> int:
        return sum(int(c) * self.p**i for i, c in enumerate(ds))

    def add(self, a: int, b: int) -> int:
        return self.code((x + y) % self.p for x, y in zip(self.digits(a), self.digits(b)))

    def neg(self, a: int) -> int:
        return self.code((-x) % self.p for x in self.digits(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * self.k)
        for i, x in enumerate(da):
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % self.p
        for deg in range(len(prod) - 1, self.k - 1, -1):
            c = prod[deg]
            if c:
                for i, m in enumerate(self.modulus):
                    prod[deg - self.k + i] = (prod[deg - self.k + i] - c * m) % self.p
        return self.code(prod[: self.k])

    def inv(self, a: int) -> int:
        return self._inv[a]


@lru_cache(maxsize=None)
def py_field(p: int, modulus: tuple[int, ...]) -> PyField:
    return PyField(p, modulus)


def oracle_for(field) -> PyField:
    return py_field(field.p, tuple(field.modulus))


def rank(mat, F: PyField) -> int:
    a = [list(map(int, row)) for row in mat]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = F.inv(a[r][c])
        a[r] = [F.mul(inv, x) for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(a[i], a[r])]
        r += 1
    return r


def det_leibniz(mat, F: PyField) -> int:
    n = len(mat)
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = 1
        for i in range(n):
            term = F.mul(term, int(mat[i][perm[i]]))
        total = F.sub(total, term) if inversions % 2 else F.add(total, term)
    return total


def pfaffian_matchings(mat, F: PyField) -> int:
    """Sum over perfect matchings with crossing signs."""
    n = len(mat)
    if n % 2:
        return 0

    def rec(idx: tuple[int, ...]) -> int:
        if not idx:
            return 1
        first, rest = idx[0], idx[1:]
        total = 0
        for pos, j in enumerate(rest):
            sub = rest[:pos] + rest[pos + 1:]
            term = F.mul(int(mat[first][j]), rec(sub))
            total = F.sub(total, term) if pos % 2 else F.add(total, term)
        return total

    return rec(tuple(range(n)))


def combine(coeffs, basis, F: PyField):
    n = len(basis[0])
    out = [[0] * n for _ in range(n)]
    for c, b in zip(coeffs, basis):
        for i in range(n):
            for j in range(n):
                out[i][j] = F.add(out[i][j], F.mul(int(c), int(b[i][j])))
    return out


def all_vectors(q: int, n: int):
    return itertools.product(range(q), repeat=n)


def rank_counts(basis, n: int, F: PyField) -> list[int]:
    """A_0..A_n over all q^d elements."""
    counts = [0] * (n + 1)
    for c in all_vectors(F.order, len(basis)):
        counts[rank(combine(c, basis, F), F)] += 1
    return counts


def form_value(mat, u, v, F: PyField) -> int:
    total = 0
    for i, ui in enumerate(u):
        if ui:
            for j, vj in enumerate(v):
                if vj:
                    total = F.add(total, F.mul(F.mul(ui, int(mat[i][j])), vj))
    return total


def z_pairs(basis, n: int, F: PyField) -> int:
    vecs = list(all_vectors(F.order, n))
    return sum(1 for u in vecs for v in vecs if all(form_value(b, u, v, F) == 0 for b in basis))


def n_pairs(basis, n: int, F: PyField, lam: int, mu: int) -> int:
    vecs = list(all_vectors(F.order, n))
    count = 0
    for u in vecs:
        for v in vecs:
            ok = True
            for b in basis:
                val = F.add(F.add(form_value(b, u, u, F), F.mul(lam, form_value(b, u, v, F))),
                            F.mul(mu, form_value(b, v, v, F)))
                if val:
                    ok = False
                    break
            count += ok
    return count


def isotropic_vectors(basis, n: int, F: PyField) -> int:
    """Nonzero w with f(w, w) = 0 for every basis form."""
    return sum(1 for w in all_vectors(F.order, n)
               if any(w) and all(form_value(b, w, w, F) == 0 for b in basis))


def is_irreducible_quadratic(lam: int, mu: int, F: PyField) -> bool:
    return all(F.add(F.add(F.mul(x, x), F.mul(lam, x)), mu) for x in range(F.order))
