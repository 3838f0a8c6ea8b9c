"""Finite field arithmetic over GF(p^k), with Frobenius and relative traces.

Elements are plain ``int`` codes: the coefficient vector ``(c_0, ..., c_{k-1})``
of an element in the power basis of the modulus root ``t`` is packed as
``sum(c_i * p**i)``.  :class:`FieldElement` wraps a code together with its
field for operator-style use; the bulk code paths work on raw codes and on
numpy arrays of codes through :attr:`GF.tables`.

A tower ``GF(q0) <= GF(q0^m)`` is modelled as a single absolute field plus
the absolute degree of the declared subfield (``sub_degree``); the Frobenius
``sigma`` is ``x -> x^q0`` and :meth:`GF.rel_trace` sums its powers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "FieldMismatch",
    "GF",
    "FieldElement",
    "default_modulus",
    "is_irreducible",
    "is_prime",
    "prime_power",
    "hermitian_quadratic",
    "ff_add",
    "ff_mul",
    "ff_inv",
    "frobenius",
    "rel_trace",
    "subfield_basis",
]

TABLE_LIMIT = 1024


class FieldMismatch(ValueError):
    """Operands belong to different fields."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, k)`` with ``q == p**k``; raise ``ValueError`` otherwise."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, k


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# --- polynomials over GF(p), little-endian coefficient lists -----------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], f: Sequence[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fi) % p
        _trim(a)
    return a


def _pmulmod(a: Sequence[int], b: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _pmod(out, f, p)


def _ppowmod(a: Sequence[int], e: int, f: Sequence[int], p: int) -> list[int]:
    result: list[int] = [1]
    base = list(a)
    while e:
        if e & 1:
            result = _pmulmod(result, base, f, p)
        base = _pmulmod(base, base, f, p)
        e >>= 1
    return result


def _psub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over GF(p) (little-endian coefficients)."""
    f = [c % p for c in modulus]
    k = len(f) - 1
    if k < 1 or f[-1] != 1:
        return False
    if k == 1:
        return True
    x = [0, 1]

    def frob_power(j: int) -> list[int]:
        r = x
        for _ in range(j):
            r = _ppowmod(r, p, f, p)
        return r

    if _psub(frob_power(k), x, p):
        return False
    for ell in _prime_factors(k):
        g = _pgcd(f, _psub(frob_power(k // ell), x, p), p)
        if len(g) > 1:
            return False
    return True


@lru_cache(maxsize=None)
def default_modulus(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree ``k`` over GF(p).

    Candidates are ordered by ``(c_{k-1}, ..., c_0)``, i.e. highest
    non-leading coefficient compared first.
    """
    if not is_prime(p):
        raise ValueError(f"characteristic {p} is not prime")
    if k == 1:
        return (0, 1)
    for code in range(p**k):
        low = [(code // p**i) % p for i in range(k)]
        if low[0] == 0:
            continue
        cand = tuple(low) + (1,)
        if is_irreducible(cand, p):
            return cand
    raise AssertionError("no irreducible polynomial found")


# --- the field ----------------------------------------------------------------


@dataclass(frozen=True)
class Tables:
    """Full operation tables of a small field, indexed by element codes."""

    add: np.ndarray
    sub: np.ndarray
    mul: np.ndarray
    neg: np.ndarray
    inv: np.ndarray  # inv[0] is 0 by convention


class GF:
    """The finite field GF(p^k) defined by a monic irreducible modulus.

    ``sub_degree`` optionally declares the subfield GF(p^sub_degree) of a
    tower; it must divide ``k``.
    """

    def __init__(
        self,
        p: int,
        k: int = 1,
        modulus: Sequence[int] | None = None,
        sub_degree: int | None = None,
    ):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if k < 1:
            raise ValueError("degree must be at least 1")
        if modulus is None:
            modulus = default_modulus(p, k)
        modulus = tuple(int(c) for c in modulus)
        if len(modulus) != k + 1:
            raise ValueError(f"modulus must have {k + 1} coefficients")
        if any(not 0 <= c < p for c in modulus):
            raise ValueError("modulus coefficients must lie in [0, p)")
        if modulus[-1] != 1:
            raise ValueError("modulus must be monic")
        if not is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is reducible over GF({p})")
        if sub_degree is not None and (sub_degree < 1 or k % sub_degree):
            raise ValueError(f"subfield degree {sub_degree} does not divide {k}")
        self.p = p
        self.k = k
        self.modulus = modulus
        self.sub_degree = sub_degree
        self.order = p**k
        self._powers = [p**i for i in range(k)]

    # identity -----------------------------------------------------------
    @property
    def key(self) -> tuple:
        return (self.p, self.k, self.modulus, self.sub_degree)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GF) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        tail = f", sub_degree={self.sub_degree}" if self.sub_degree else ""
        return f"GF({self.p}^{self.k}, modulus={list(self.modulus)}{tail})"

    @property
    def is_prime_field(self) -> bool:
        return self.k == 1

    @property
    def subfield_order(self) -> int:
        if self.sub_degree is None:
            raise ValueError(f"{self!r} has no declared subfield")
        return self.p**self.sub_degree

    def to_dict(self) -> dict:
        out = {"p": self.p, "k": self.k, "modulus": list(self.modulus)}
        if self.sub_degree is not None:
            out["q0"] = self.subfield_order
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "GF":
        p, k = int(data["p"]), int(data["k"])
        sub = None
        if data.get("q0") is not None:
            p0, sub = prime_power(int(data["q0"]))
            if p0 != p:
                raise ValueError("subfield characteristic mismatch")
        return cls(p, k, data.get("modulus"), sub)

    def with_subfield(self, sub_degree: int | None) -> "GF":
        return GF(self.p, self.k, self.modulus, sub_degree)

    # codes ----------------------------------------------------------------
    def digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.k):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def from_digits(self, cs: Iterable[int]) -> int:
        return sum((int(c) % self.p) * w for c, w in zip(cs, self._powers))

    def element(self, value: int | Sequence[int]) -> "FieldElement":
        if not isinstance(value, (int, np.integer)):
            value = self.from_digits(value)
        value = int(value)
        if not 0 <= value < self.order:
            raise ValueError(f"code {value} out of range for {self!r}")
        return FieldElement(self, value)

    def elements(self) -> range:
        return range(self.order)

    @property
    def generator_code(self) -> int:
        """Code of the modulus root ``t`` (the element ``x`` itself)."""
        return self.p if self.k > 1 else 1

    # scalar arithmetic on codes -------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.k == 1:
            return (a + b) % self.p
        da, db = self.digits(a), self.digits(b)
        return self.from_digits((x + y) for x, y in zip(da, db))

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.k == 1:
            return (-a) % self.p
        return self.from_digits(-x for x in self.digits(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        if self.p == 2:
            return self._mul2(a, b)
        return self.from_digits(_pmulmod(self.digits(a), self.digits(b), self.modulus, self.p))

    @cached_property
    def _mod_int(self) -> int:
        return sum(c << i for i, c in enumerate(self.modulus))

    def _mul2(self, a: int, b: int) -> int:
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a >> self.k:
                a ^= self._mod_int
        return r

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        """Inverse by the extended Euclidean algorithm on polynomials."""
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        p = self.p
        if self.k == 1:
            return pow(a, p - 2, p)
        r0, r1 = list(self.modulus), _trim(self.digits(a))
        s0, s1 = [], [1]
        while len(r1) > 1:
            # polynomial division r0 = quot * r1 + rem
            rem = list(r0)
            quot = [0] * (len(r0) - len(r1) + 1)
            inv_lead = pow(r1[-1], p - 2, p)
            while len(rem) >= len(r1) and rem:
                c = rem[-1] * inv_lead % p
                shift = len(rem) - len(r1)
                quot[shift] = c
                for i, x in enumerate(r1):
                    rem[shift + i] = (rem[shift + i] - c * x) % p
                _trim(rem)
            prod = [0] * (len(quot) + len(s1))
            for i, x in enumerate(quot):
                for j, y in enumerate(s1):
                    prod[i + j] += x * y
            r0, r1 = r1, rem
            s0, s1 = s1, _psub(s0, prod, p)
        c = pow(r1[0], p - 2, p)
        return self.from_digits([x * c for x in s1] + [0] * (self.k - len(s1)))

    def inv_by_power(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self.pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def sqrt_char2(self, a: int) -> int:
        """Square root in characteristic 2 (inverse Frobenius)."""
        if self.p != 2:
            raise ValueError("square root map only defined here in characteristic 2")
        return self.pow(a, self.order // 2)

    def is_square(self, a: int) -> bool:
        if a == 0 or self.p == 2:
            return True
        return self.pow(a, (self.order - 1) // 2) == 1

    # linear-algebraic view over GF(p) ------------------------------------------
    @cached_property
    def _frob_p(self) -> np.ndarray:
        t = self.generator_code
        cols = [self.digits(self.pow(self.pow(t, i), self.p)) for i in range(self.k)]
        return np.array(cols, dtype=np.int64).T % self.p

    @lru_cache(maxsize=None)
    def _frob_matrix(self, j: int) -> np.ndarray:
        """Matrix over GF(p) of ``x -> x^(p^j)`` acting on digit vectors."""
        j %= self.k
        m = np.eye(self.k, dtype=np.int64)
        for _ in range(j):
            m = (self._frob_p @ m) % self.p
        return m

    def frob_p(self, a: int, j: int) -> int:
        """``a^(p^j)``."""
        if j % self.k == 0:
            return a
        v = np.array(self.digits(a), dtype=np.int64)
        return self.from_digits((self._frob_matrix(j) @ v) % self.p)

    @lru_cache(maxsize=None)
    def _trace_matrix(self, over: int) -> np.ndarray:
        if self.k % over:
            raise ValueError(f"GF(p^{over}) is not a subfield of {self!r}")
        m = np.zeros((self.k, self.k), dtype=np.int64)
        for i in range(self.k // over):
            m += self._frob_matrix(over * i)
        return m % self.p

    def _resolve_sub(self, over: int | None) -> int:
        if over is None:
            if self.sub_degree is None:
                raise ValueError(f"{self!r} has no declared subfield")
            return self.sub_degree
        return over

    def frobenius(self, a: int, e: int = 1, over: int | None = None) -> int:
        """``sigma^e(a) = a^(q0^e)`` for the subfield GF(p^over) (default: declared)."""
        return self.frob_p(a, self._resolve_sub(over) * e)

    def rel_trace(self, a: int, over: int | None = None) -> int:
        """Trace from this field down to GF(p^over), as an element of this field."""
        over = self._resolve_sub(over)
        v = np.array(self.digits(a), dtype=np.int64)
        return self.from_digits((self._trace_matrix(over) @ v) % self.p)

    def absolute_trace(self, a: int) -> int:
        """Trace to the prime field, returned as an integer in [0, p)."""
        return self.rel_trace(a, 1)

    def in_subfield(self, a: int, over: int | None = None) -> bool:
        return self.frobenius(a, 1, over) == a

    # bulk tables ------------------------------------------------------------------
    @cached_property
    def tables(self) -> Tables:
        q = self.order
        if q > TABLE_LIMIT:
            raise ValueError(f"tables not built for fields larger than {TABLE_LIMIT}")
        codes = np.arange(q)
        if self.k == 1:
            add = (codes[:, None] + codes[None, :]) % q
            mul = (codes[:, None] * codes[None, :]) % q
            neg = (-codes) % q
        else:
            dig = np.array([self.digits(a) for a in range(q)], dtype=np.int64)
            w = np.array(self._powers, dtype=np.int64)
            add = (((dig[:, None, :] + dig[None, :, :]) % self.p) @ w)
            neg = ((-dig) % self.p) @ w
            mul = np.zeros((q, q), dtype=np.int64)
            for a in range(1, q):
                for b in range(a, q):
                    mul[a, b] = mul[b, a] = self.mul(a, b)
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv[a] = self.inv(a)
        sub = add[:, neg]
        for t in (add, sub, mul, neg, inv):
            t.setflags(write=False)
        return Tables(add=add, sub=sub, mul=mul, neg=neg, inv=inv)

    # subfields and coordinates ------------------------------------------------------
    def subfield_generator(self, e: int) -> int:
        """A generator of the multiplicative group of the subfield GF(p^e)."""
        if self.k % e:
            raise ValueError(f"GF(p^{e}) is not a subfield of {self!r}")
        qs = self.p**e
        if qs == 2:
            return 1
        cof = (self.order - 1) // (qs - 1)
        ell = _prime_factors(qs - 1)
        for g in range(2, self.order):
            h = self.pow(g, cof)
            if h and all(self.pow(h, (qs - 1) // l) != 1 for l in ell):
                return h
        raise AssertionError("no subfield generator found")

    @lru_cache(maxsize=None)
    def embedding(self, small: "GF") -> tuple[int, ...]:
        """Codes in this field of the elements of ``small`` (indexed by small code).

        The image of ``small``'s modulus root is the least root (by code) of
        that modulus inside this field.
        """
        if small.p != self.p or self.k % small.k:
            raise ValueError(f"{small!r} does not embed in {self!r}")
        if small.k == 1:
            return tuple(range(small.p))
        h = self.subfield_generator(small.k)
        candidates = sorted({0} | {self.pow(h, i) for i in range(small.order - 1)})
        theta = None
        for y in candidates:
            acc = 0
            for c in reversed(small.modulus):
                acc = self.add(self.mul(acc, y), c)
            if acc == 0:
                theta = y
                break
        if theta is None:
            raise AssertionError("modulus has no root in the extension")
        theta_pows = [self.pow(theta, j) for j in range(small.k)]
        out = []
        for c in range(small.order):
            acc = 0
            for dj, tj in zip(small.digits(c), theta_pows):
                if dj:
                    acc = self.add(acc, self.mul(dj, tj))
            out.append(acc)
        return tuple(out)

    @lru_cache(maxsize=None)
    def _coordinate_system(self, small: "GF") -> tuple[np.ndarray, tuple[int, ...]]:
        """Inverse of the GF(p)-matrix of the basis ``theta^j * t^i``."""
        emb = self.embedding(small)
        theta_pows = [emb[small.p**j] for j in range(small.k)] if small.k > 1 else [1]
        basis = subfield_power_basis(self, small.k)
        cols = []
        for b in basis:
            for tj in theta_pows:
                cols.append(self.digits(self.mul(tj, b)))
        mat = np.array(cols, dtype=np.int64).T
        from .linalg import inverse_mod_p

        return inverse_mod_p(mat, self.p), tuple(basis)

    def coords(self, a: int, small: "GF") -> list[int]:
        """Coordinates (codes of ``small``) of ``a`` in :func:`subfield_power_basis`."""
        inv, basis = self._coordinate_system(small)
        raw = (inv @ np.array(self.digits(a), dtype=np.int64)) % self.p
        e = small.k
        return [small.from_digits(raw[i * e:(i + 1) * e]) for i in range(len(basis))]

    def from_coords(self, cs: Sequence[int], small: "GF") -> int:
        emb = self.embedding(small)
        _, basis = self._coordinate_system(small)
        acc = 0
        for c, b in zip(cs, basis):
            if c:
                acc = self.add(acc, self.mul(emb[int(c)], b))
        return acc


def subfield_power_basis(field: GF, e: int) -> list[int]:
    """Power basis ``1, t, ..., t^(k/e - 1)`` of ``field`` over GF(p^e), as codes."""
    if field.k % e:
        raise ValueError(f"GF(p^{e}) is not a subfield of {field!r}")
    t = field.generator_code
    return [field.pow(t, i) for i in range(field.k // e)]


@dataclass(frozen=True)
class FieldElement:
    field: GF
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(self.field.digits(self.value))

    def _check(self, other: "FieldElement") -> None:
        if not isinstance(other, FieldElement) or other.field != self.field:
            raise FieldMismatch("operands live in different fields")

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.field, self.field.add(self.value, other.value))

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.field, self.field.sub(self.value, other.value))

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.field, self.field.mul(self.value, other.value))

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.field, self.field.div(self.value, other.value))

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, e: int) -> "FieldElement":
        return FieldElement(self.field, self.field.pow(self.value, e))

    def __bool__(self) -> bool:
        return self.value != 0

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def __repr__(self) -> str:
        return f"FieldElement({list(self.coeffs)} in GF({self.field.p}^{self.field.k}))"


def ff_add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def ff_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def ff_inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def frobenius(a: FieldElement, e: int = 1) -> FieldElement:
    return FieldElement(a.field, a.field.frobenius(a.value, e))


def rel_trace(a: FieldElement) -> FieldElement:
    return FieldElement(a.field, a.field.rel_trace(a.value))


def subfield_basis(field: GF) -> list[FieldElement]:
    """GF(q0)-basis of a tower field: powers of the modulus root."""
    if field.sub_degree is None:
        raise ValueError(f"{field!r} has no declared subfield")
    return [FieldElement(field, c) for c in subfield_power_basis(field, field.sub_degree)]


def hermitian_quadratic(field: GF) -> tuple[int, int]:
    """Codes ``(lam, mu)`` with ``x^2 + lam*x + mu`` irreducible over ``field``.

    Odd order: ``lam = 0`` and ``mu = -(least non-square)``.  Even order:
    the least ``(lam, mu)`` pair (by codes) without a root in the field.
    """
    if field.p != 2:
        ns = next(a for a in range(1, field.order) if not field.is_square(a))
        return 0, field.neg(ns)
    for lam, mu in itertools.product(range(field.order), repeat=2):
        if mu == 0:
            continue
        if all(field.add(field.add(field.mul(x, x), field.mul(lam, x)), mu) != 0
               for x in range(field.order)):
            return lam, mu
    raise AssertionError("no irreducible quadratic found")
