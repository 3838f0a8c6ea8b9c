"""Explicit subspaces of forms built from trace forms over extension fields.

Each constructor works in an extension L of K = GF(q), writes the forms as
``(x, y) -> Tr_{L/K}(...)`` on a K-subspace of L and flattens them to n x n
matrices over K.  The domain basis is the power basis ``1, t, t^2, ...`` of L
over K (``t`` the root of L's modulus) or, for subspaces of L, the RREF basis
of their K-coordinates.  Both choices are deterministic so the output is
reproducible byte for byte.
"""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from .formspace import FormSpace
from .gf import GF, prime_power, subfield_power_basis
from .linalg import null_space

__all__ = [
    "FAMILIES",
    "build",
    "linearized_two_rank",
    "symmetric_two_rank",
    "trace_hyperplane",
    "cyclic_symmetric",
    "cyclic_alternating",
]


class _Tower:
    """K = GF(q) inside L = GF(q^N), with K-coordinates on L."""

    def __init__(self, q: int, degree: int):
        p, a = prime_power(q)
        self.q = q
        self.a = a
        self.degree = degree
        self.K = GF(p, a)
        self.L = GF(p, a * degree, sub_degree=a)
        self.power_basis = subfield_power_basis(self.L, a)

    def sigma(self, x: int, e: int = 1) -> int:
        """``x^(q^e)``."""
        return self.L.frobenius(x, e)

    def trace(self, x: int) -> int:
        """Tr_{L/K}(x) as a code of K."""
        return self.L.coords(self.L.rel_trace(x), self.K)[0]

    def kernel(self, fn: Callable[[int], int]) -> list[int]:
        """Elements of L spanning the kernel of a K-linear map L -> L."""
        cols = [self.L.coords(fn(b), self.K) for b in self.power_basis]
        mat = np.array(cols, dtype=np.int64).T
        return [self.L.from_coords(v, self.K) for v in null_space(mat, self.K)]

    def provenance(self) -> dict:
        return {"extension_degree": self.degree, "extension_modulus": list(self.L.modulus)}


def _flatten(tower: _Tower, domain: Sequence[int], forms: Sequence[Callable[[int, int], int]]) -> np.ndarray:
    n = len(domain)
    out = np.zeros((len(forms), n, n), dtype=np.int64)
    for i, f in enumerate(forms):
        for j, x in enumerate(domain):
            for l, y in enumerate(domain):
                out[i, j, l] = tower.trace(f(x, y))
    return out


def _check_positive(**kw: int) -> None:
    for name, v in kw.items():
        if not isinstance(v, (int, np.integer)) or v < 1:
            raise ValueError(f"{name} must be a positive integer, got {v!r}")


def linearized_two_rank(q: int, m: int, s: int) -> FormSpace:
    """2n-dimensional subspace of Bil(V) with nonzero ranks in {n - m, n}, n = ms.

    On L = GF(q^n) take ``F_{a,b}(x, y) = Tr_{L/GF(q)}(y (a x + b x^Q))`` with
    Q = q^m and a, b ranging over L.  The left radical of ``F_{a,b}`` is the
    kernel of the Q-linearized map ``x -> a x + b x^Q``, a GF(Q)-subspace of
    dimension at most 1.  s = 1 is rejected since then x^Q = x.
    """
    _check_positive(m=m, s=s)
    if s < 2:
        raise ValueError("s must be at least 2 (for s = 1 the forms collapse)")
    tw = _Tower(q, m * s)
    L = tw.L
    w = tw.power_basis

    def form(a: int, b: int) -> Callable[[int, int], int]:
        return lambda x, y: L.mul(y, L.add(L.mul(a, x), L.mul(b, tw.sigma(x, m))))

    forms = [form(a, 0) for a in w] + [form(0, b) for b in w]
    n = m * s
    params = {"family": "linearized-two-rank", "q": q, "m": m, "s": s, "n": n, "r": n - m}
    return FormSpace(tw.K, n, "bilinear", _flatten(tw, w, forms), params | tw.provenance())


def _symmetric_trace_space(q: int, m: int, s: int, family: str) -> FormSpace:
    tw = _Tower(q, m * (s + 1))
    L = tw.L
    # W = kernel of Tr_{L/GF(q^m)}
    w = tw.kernel(lambda x: L.rel_trace(x, tw.a * m))
    forms = [(lambda z: (lambda x, y: L.mul(z, L.mul(x, y))))(z) for z in tw.power_basis]
    n = m * s
    params = {"family": family, "q": q, "m": m, "s": s, "n": n, "r": n - m}
    return FormSpace(tw.K, n, "symmetric", _flatten(tw, w, forms), params | tw.provenance())


def symmetric_two_rank(q: int, m: int, s: int) -> FormSpace:
    """(2n - r)-dimensional symmetric subspace with nonzero ranks in {r, n}.

    n = ms, r = n - m.  L = GF(q^(m(s+1))), W = kernel of the trace
    L -> GF(q^m), and M = {Tr_{L/GF(q)}(z x y) restricted to W : z in L}.
    The radical of the form for z is ``W ∩ z^-1 GF(q^m)``.
    """
    _check_positive(m=m, s=s)
    if s < 2:
        raise ValueError("s must be at least 2 (n = ms >= 2 and r = n - m > 0)")
    return _symmetric_trace_space(q, m, s, "symmetric-two-rank")


def trace_hyperplane(q: int, n: int) -> FormSpace:
    """(n+1)-dimensional symmetric subspace on the trace-zero hyperplane of GF(q^(n+1)).

    Every nonzero element has rank n - 1 or n.
    """
    _check_positive(n=n)
    if n < 2:
        raise ValueError("n must be at least 2")
    out = _symmetric_trace_space(q, 1, n, "trace-hyperplane")
    params = {"family": "trace-hyperplane", "q": q, "n": n} | {
        k: out.params[k] for k in ("extension_degree", "extension_modulus")}
    return FormSpace(out.field, out.n, out.kind, out.basis, params)


def cyclic_symmetric(q: int, n: int) -> FormSpace:
    """2n-dimensional symmetric subspace with every nonzero rank at least n - 2.

    ``f_{λ,μ}(x, y) = Tr(λ x y + μ x σ(y) + μ σ(x) y)`` on L = GF(q^n), σ the
    q-power map; basis: λ over the power basis, then μ over the power basis.
    """
    _check_positive(n=n)
    if n < 3:
        raise ValueError("n must be at least 3")
    tw = _Tower(q, n)
    L = tw.L
    w = tw.power_basis
    sig = {x: tw.sigma(x) for x in w}

    def lam_form(lam: int) -> Callable[[int, int], int]:
        return lambda x, y: L.mul(lam, L.mul(x, y))

    def mu_form(mu: int) -> Callable[[int, int], int]:
        return lambda x, y: L.mul(mu, L.add(L.mul(x, sig[y]), L.mul(sig[x], y)))

    forms = [lam_form(c) for c in w] + [mu_form(c) for c in w]
    params = {"family": "cyclic-symmetric", "q": q, "n": n}
    return FormSpace(tw.K, n, "symmetric", _flatten(tw, w, forms), params | tw.provenance())


def cyclic_alternating(q: int, m: int) -> FormSpace:
    """3m-dimensional alternating subspace on GF(q^(2m)), nonzero ranks in {2m - 2, 2m}.

    ``f_{λ,μ}(x, y) = Tr(λ σ^m(x) y + μ x σ^(m-1)(y) - μ σ^(m-1)(x) y)`` with
    μ in L and λ in L' = {x : σ^m(x) = -x}; basis: λ over the RREF basis of
    L', then μ over the power basis.
    """
    _check_positive(m=m)
    if m < 2:
        raise ValueError("m must be at least 2")
    n = 2 * m
    tw = _Tower(q, n)
    L = tw.L
    w = tw.power_basis
    lam_basis = tw.kernel(lambda x: L.add(tw.sigma(x, m), x))
    half = {x: tw.sigma(x, m) for x in w}
    prev = {x: tw.sigma(x, m - 1) for x in w}

    def lam_form(lam: int) -> Callable[[int, int], int]:
        return lambda x, y: L.mul(lam, L.mul(half[x], y))

    def mu_form(mu: int) -> Callable[[int, int], int]:
        return lambda x, y: L.mul(mu, L.sub(L.mul(x, prev[y]), L.mul(prev[x], y)))

    forms = [lam_form(c) for c in lam_basis] + [mu_form(c) for c in w]
    params = {"family": "cyclic-alternating", "q": q, "m": m, "n": n}
    return FormSpace(tw.K, n, "alternating", _flatten(tw, w, forms), params | tw.provenance())


FAMILIES: dict[str, tuple[Callable[..., FormSpace], tuple[str, ...]]] = {
    "linearized-two-rank": (linearized_two_rank, ("q", "m", "s")),
    "symmetric-two-rank": (symmetric_two_rank, ("q", "m", "s")),
    "cyclic-symmetric": (cyclic_symmetric, ("q", "n")),
    "cyclic-alternating": (cyclic_alternating, ("q", "m")),
    "trace-hyperplane": (trace_hyperplane, ("q", "n")),
}


def build(family: str, **params: int) -> FormSpace:
    """Build a family by its CLI name; extra parameters are rejected."""
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}")
    fn, names = FAMILIES[family]
    missing = [k for k in names if params.get(k) is None]
    if missing:
        raise ValueError(f"family {family} needs parameters {', '.join(missing)}")
    extra = [k for k, v in params.items() if v is not None and k not in names]
    if extra:
        raise ValueError(f"family {family} does not take {', '.join(extra)}")
    return fn(**{k: params[k] for k in names})
