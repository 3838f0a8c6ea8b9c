"""Subspaces of bilinear forms and the subspaces attached to vectors of V.

A :class:`FormSpace` is a basis of ``d`` linearly independent n x n matrices
over GF(q).  Elements are addressed by coefficient vectors in GF(q)^d, so
every subspace of M (``M_u``, ``M_U``, ``M_Alt``) is returned both as a
:class:`~formrank.linalg.Subspace` of coefficient space and, on request, as
a FormSpace of its own.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache

import numpy as np

from .gf import GF
from .linalg import (
    FormMatrix,
    Subspace,
    combine,
    fmatmul,
    left_null_space,
    null_space,
    rank,
    vneg,
)

KINDS = ("bilinear", "symmetric", "alternating")

__all__ = [
    "KINDS",
    "FormSpace",
    "classify_kind",
    "element",
    "elements",
    "coefficient_kernel",
    "sub_at_vector",
    "subspace_kernel",
    "sub_at_subspace",
    "alternating_coefficients",
    "alternating_part",
    "isotropic_subspace",
    "restrict",
    "bil_space",
    "symm_space",
    "alt_space",
    "random_subspace",
]


def _is_symmetric(m: np.ndarray) -> bool:
    return bool(np.array_equal(m, m.T))


def _is_alternating(m: np.ndarray, field: GF) -> bool:
    return not np.any(np.diagonal(m)) and bool(np.array_equal(m, vneg(m.T, field)))


@dataclass(frozen=True, eq=False)
class FormSpace:
    """A d-dimensional subspace M of Bil(V), V = GF(q)^n."""

    field: GF
    n: int
    kind: str
    basis: np.ndarray
    params: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}")
        b = np.array(self.basis, dtype=np.int64, copy=True).reshape(-1, self.n, self.n)
        if b.size and (b.min() < 0 or b.max() >= self.field.order):
            raise ValueError("basis entries out of range for the field")
        if len(b) and rank(b.reshape(len(b), -1), self.field) != len(b):
            raise ValueError("basis matrices are linearly dependent")
        if self.kind == "symmetric" and not all(_is_symmetric(m) for m in b):
            raise ValueError("kind=symmetric but a basis matrix is not symmetric")
        if self.kind == "alternating" and not all(_is_alternating(m, self.field) for m in b):
            raise ValueError("kind=alternating but a basis matrix is not alternating")
        b.setflags(write=False)
        object.__setattr__(self, "basis", b)

    @property
    def d(self) -> int:
        return self.basis.shape[0]

    @property
    def q(self) -> int:
        return self.field.order

    def __len__(self) -> int:
        return self.d

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, FormSpace) and other.field == self.field and other.n == self.n
                and other.kind == self.kind and np.array_equal(other.basis, self.basis))

    def __hash__(self) -> int:
        return hash((self.field, self.n, self.kind, self.basis.tobytes()))

    def __repr__(self) -> str:
        return f"FormSpace(q={self.q}, n={self.n}, d={self.d}, kind={self.kind!r})"

    def matrices(self) -> list[FormMatrix]:
        return [FormMatrix(self.field, m) for m in self.basis]

    def span_space(self) -> Subspace:
        """M as a subspace of the n^2-dimensional space of all matrices."""
        return Subspace(self.field, self.n * self.n, self.basis.reshape(self.d, -1))

    def subspace(self, coeffs: Subspace, kind: str | None = None) -> "FormSpace":
        """The FormSpace spanned by the elements with the given coefficient vectors."""
        mats = combine(coeffs.basis, self.basis, self.field) if coeffs.dim else np.zeros((0, self.n, self.n))
        return FormSpace(self.field, self.n, kind or self.kind, mats)


def classify_kind(m: FormSpace) -> str:
    if all(_is_alternating(b, m.field) for b in m.basis):
        return "alternating"
    if all(_is_symmetric(b) for b in m.basis):
        return "symmetric"
    return "bilinear"


def element(m: FormSpace, c) -> FormMatrix:
    c = np.asarray(c, dtype=np.int64)
    if c.shape != (m.d,):
        raise ValueError(f"coefficient vector must have length {m.d}")
    return FormMatrix(m.field, combine(c[None], m.basis, m.field)[0])


def elements(m: FormSpace, coeffs) -> np.ndarray:
    """Stack of element matrices for a batch of coefficient rows."""
    return combine(coeffs, m.basis, m.field)


def _vector(m: FormSpace, u) -> np.ndarray:
    u = np.asarray(u, dtype=np.int64)
    if u.shape != (m.n,):
        raise ValueError(f"vector must have length {m.n}")
    return u


def coefficient_kernel(m: FormSpace, u, side: str = "left") -> Subspace:
    """Coefficients of ``M_u^L`` (forms with u in the left radical) or ``M_u^R``."""
    u = _vector(m, u)
    if not u.any():
        raise ValueError("u must be nonzero")
    if side == "left":
        rows = fmatmul(u[None, :], m.basis, m.field)[:, 0, :]
    elif side == "right":
        rows = fmatmul(m.basis, u[:, None], m.field)[:, :, 0]
    else:
        raise ValueError("side must be 'left' or 'right'")
    return Subspace(m.field, m.d, left_null_space(rows, m.field))


def sub_at_vector(m: FormSpace, u, side: str = "left") -> FormSpace:
    return m.subspace(coefficient_kernel(m, u, side))


def subspace_kernel(m: FormSpace, u_space: Subspace) -> Subspace:
    """Coefficients of ``M_U``: forms whose radical contains U."""
    if m.kind == "bilinear":
        raise ValueError("M_U is two-sided only for symmetric or alternating spaces; "
                         "use coefficient_kernel per side")
    if u_space.n != m.n:
        raise ValueError("U lives in the wrong ambient space")
    if u_space.dim == 0 or u_space.dim == m.n:
        raise ValueError("U must be a nonzero proper subspace")
    blocks = fmatmul(u_space.basis[None, :, :], m.basis, m.field)  # (d, dimU, n)
    rows = blocks.reshape(m.d, -1)
    return Subspace(m.field, m.d, left_null_space(rows, m.field))


def sub_at_subspace(m: FormSpace, u_space: Subspace) -> FormSpace:
    return m.subspace(subspace_kernel(m, u_space))


def alternating_coefficients(m: FormSpace) -> Subspace:
    """Coefficients of ``M_Alt`` (characteristic 2, symmetric M)."""
    if m.field.p != 2:
        raise ValueError("M_Alt is defined here for characteristic 2 only")
    if m.kind == "alternating":
        return Subspace.full(m.field, m.d)
    if m.kind != "symmetric":
        raise ValueError("M_Alt needs a symmetric form space")
    diag = np.diagonal(m.basis, axis1=1, axis2=2)
    return Subspace(m.field, m.d, left_null_space(diag, m.field))


def alternating_part(m: FormSpace) -> FormSpace:
    return m.subspace(alternating_coefficients(m), kind="alternating")


@lru_cache(maxsize=None)
def _sqrt_table(field: GF) -> np.ndarray:
    return np.array([field.sqrt_char2(a) for a in range(field.order)], dtype=np.int64)


def isotropic_subspace(m: FormSpace) -> Subspace:
    """V(M) = {w : f(w, w) = 0 for all f in M} in characteristic 2.

    ``f(w, w) = sum_j a_jj w_j^2 = (sum_j sqrt(a_jj) w_j)^2`` so V(M) is the
    joint kernel of the square-rooted diagonals.
    """
    if m.field.p != 2:
        raise ValueError("V(M) is a subspace only in characteristic 2")
    if m.kind == "bilinear":
        raise ValueError("V(M) needs a symmetric form space")
    roots = _sqrt_table(m.field)[np.diagonal(m.basis, axis1=1, axis2=2)]
    if m.d == 0:
        return Subspace.full(m.field, m.n)
    return Subspace(m.field, m.n, null_space(roots, m.field))


def restrict(m: FormSpace, w: Subspace) -> FormSpace:
    """Forms of M restricted to ``w x w``, in the coordinates of w's basis.

    The restricted matrices may be dependent; a basis of their span is kept.
    """
    b = w.basis
    mats = fmatmul(fmatmul(b[None], m.basis, m.field), b.T[None], m.field)
    flat = Subspace(m.field, w.dim * w.dim, mats.reshape(m.d, -1))
    return FormSpace(m.field, w.dim, m.kind, flat.basis.reshape(-1, w.dim, w.dim))


# --- standard spaces ------------------------------------------------------------------


def _unit(n: int, i: int, j: int) -> np.ndarray:
    e = np.zeros((n, n), dtype=np.int64)
    e[i, j] = 1
    return e


def bil_space(field: GF, n: int) -> FormSpace:
    mats = [_unit(n, i, j) for i in range(n) for j in range(n)]
    return FormSpace(field, n, "bilinear", np.array(mats), {"family": "Bil", "n": n})


def symm_space(field: GF, n: int) -> FormSpace:
    mats = []
    for i in range(n):
        for j in range(i, n):
            e = _unit(n, i, j)
            e[j, i] = 1
            mats.append(e)
    return FormSpace(field, n, "symmetric", np.array(mats), {"family": "Symm", "n": n})


def alt_space(field: GF, n: int) -> FormSpace:
    mats = []
    for i in range(n):
        for j in range(i + 1, n):
            e = _unit(n, i, j)
            e[j, i] = field.neg(1)
            mats.append(e)
    return FormSpace(field, n, "alternating", np.array(mats).reshape(-1, n, n), {"family": "Alt", "n": n})


def random_subspace(field: GF, n: int, d: int, kind: str = "bilinear",
                    rng: np.random.Generator | None = None) -> FormSpace:
    """A uniformly chosen basis of d independent forms of the given kind."""
    rng = np.random.default_rng() if rng is None else rng
    ambient = {"bilinear": bil_space, "symmetric": symm_space, "alternating": alt_space}[kind](field, n)
    if d > ambient.d:
        raise ValueError(f"{kind} forms on GF(q)^{n} span only {ambient.d} dimensions")
    while True:
        coeffs = rng.integers(0, field.order, size=(d, ambient.d))
        if rank(coeffs, field) == d:
            mats = combine(coeffs, ambient.basis, field)
            return FormSpace(field, n, kind, mats, {"family": "random", "kind": kind})
