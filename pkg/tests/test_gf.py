from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from formrank.gf import (
    GF,
    FieldElement,
    FieldMismatch,
    default_modulus,
    hermitian_quadratic,
    is_irreducible,
    prime_power,
    subfield_basis,
    subfield_power_basis,
)
from oracles import is_irreducible_quadratic, oracle_for


def test_prime_power_parsing():
    assert prime_power(64) == (2, 6)
    assert prime_power(49) == (7, 2)
    for bad in (1, 6, 12, 100):
        with pytest.raises(ValueError):
            prime_power(bad)


def test_default_modulus_is_least_irreducible():
    assert default_modulus(2, 2) == (1, 1, 1)
    assert default_modulus(2, 3) == (1, 1, 0, 1)
    assert default_modulus(3, 2) == (1, 0, 1)
    assert is_irreducible((1, 1, 0, 0, 1), 2)
    assert not is_irreducible((1, 0, 1), 2)  # (x + 1)^2


def test_reducible_modulus_rejected():
    with pytest.raises(ValueError):
        GF(2, 2, modulus=(1, 0, 1))
    with pytest.raises(ValueError):
        GF(6)


def test_field_axioms_exhaustive(small_field):
    f = small_field
    t = f.tables
    q = f.order
    a = np.arange(q)
    assert np.array_equal(t.add[0], a) and np.array_equal(t.mul[1], a)
    assert np.array_equal(t.add, t.add.T) and np.array_equal(t.mul, t.mul.T)
    # associativity and distributivity over all triples
    assert np.array_equal(t.add[t.add[a[:, None], a[None, :]][:, :, None], a[None, None, :]],
                          t.add[a[:, None, None], t.add[a[:, None], a[None, :]][None]])
    assert np.array_equal(t.mul[t.mul[a[:, None], a[None, :]][:, :, None], a[None, None, :]],
                          t.mul[a[:, None, None], t.mul[a[:, None], a[None, :]][None]])
    lhs = t.mul[a[:, None, None], t.add[a[:, None], a[None, :]][None]]
    rhs = t.add[t.mul[a[:, None], a[None, :]][:, :, None], t.mul[a[:, None], a[None, :]][:, None, :]]
    assert np.array_equal(lhs, rhs)
    assert np.all(t.add[a, t.neg] == 0)
    assert np.all(t.mul[a[1:], t.inv[1:]] == 1)
    # every row of the multiplication table on nonzero elements is a permutation
    assert all(len(set(row[1:])) == q - 1 for row in t.mul[1:])


def test_multiplication_matches_oracle(small_field):
    f = small_field
    o = oracle_for(f)
    q = f.order
    for a in range(q):
        for b in range(q):
            assert f.mul(a, b) == o.mul(a, b)
            assert f.add(a, b) == o.add(a, b)


@given(st.sampled_from([(2, 3), (2, 6), (3, 3), (5, 2), (2, 10), (3, 5)]), st.data())
def test_scalar_ops_consistent(pk, data):
    f = GF(*pk)
    a = data.draw(st.integers(0, f.order - 1))
    b = data.draw(st.integers(1, f.order - 1))
    assert f.mul(f.div(a, b), b) == a
    assert f.sub(f.add(a, b), b) == a
    assert f.pow(b, f.order - 1) == 1
    assert f.inv(b) == f.inv_by_power(b)


def test_frobenius_is_automorphism():
    f = GF(2, 6)
    for a in range(64):
        for b in range(0, 64, 7):
            assert f.frob_p(f.mul(a, b), 1) == f.mul(f.frob_p(a, 1), f.frob_p(b, 1))
        assert f.frob_p(a, 6) == a


@pytest.mark.parametrize("over", [1, 2, 3])
def test_relative_trace_surjective_gf64(over):
    f = GF(2, 6)
    images = [f.rel_trace(a, over) for a in range(64)]
    sub = set(f.embedding(GF(2, over)))
    assert set(images) == sub
    # each value of the subfield is hit equally often
    assert all(images.count(v) == 64 // len(sub) for v in sub)


def test_relative_trace_linear_and_in_subfield():
    f = GF(3, 4, sub_degree=2)
    for a in range(0, 81, 5):
        tr = f.rel_trace(a)
        assert f.in_subfield(tr)
        for c in f.embedding(GF(3, 2)):
            assert f.rel_trace(f.mul(c, a)) == f.mul(c, tr)


def test_embedding_is_homomorphism():
    big, small = GF(2, 6), GF(2, 3)
    emb = big.embedding(small)
    for a in range(8):
        for b in range(8):
            assert emb[small.mul(a, b)] == big.mul(emb[a], emb[b])
            assert emb[small.add(a, b)] == big.add(emb[a], emb[b])


def test_coordinates_round_trip():
    big, small = GF(2, 6), GF(2, 2)
    assert len(subfield_power_basis(big, 2)) == 3
    for a in range(64):
        assert big.from_coords(big.coords(a, small), small) == a


def test_field_elements_and_mismatch():
    f = GF(3, 2)
    x = f.element([0, 1])
    assert (x * x.inverse()).value == 1
    assert (x + f.element(0)) == x
    with pytest.raises(FieldMismatch):
        x + GF(3).element(1)
    assert isinstance(subfield_basis(GF(2, 4, sub_degree=2))[0], FieldElement)


def test_serialization_round_trip():
    f = GF(2, 4, sub_degree=2)
    assert GF.from_dict(f.to_dict()) == f


@pytest.mark.parametrize("q", [2, 3, 4, 5, 8, 9, 16, 25])
def test_hermitian_quadratic_irreducible(q):
    p, k = prime_power(q)
    f = GF(p, k)
    lam, mu = hermitian_quadratic(f)
    assert is_irreducible_quadratic(lam, mu, oracle_for(f))


@pytest.mark.parametrize("p,k,e", [(2, 6, 2), (2, 6, 3), (3, 4, 2), (3, 6, 2), (3, 6, 3), (5, 2, 1), (2, 8, 4)])
def test_frobenius_fixed_set_is_subfield(p, k, e):
    f = GF(p, k)
    fixed = {a for a in range(f.order) if f.frobenius(a, 1, over=e) == a}
    assert fixed == set(f.embedding(GF(p, e)))


@pytest.mark.parametrize("p,k,e", [(2, 6, 2), (2, 6, 3), (3, 4, 2), (3, 6, 2), (3, 6, 3), (2, 8, 4)])
def test_trace_composition_is_absolute_trace(p, k, e):
    f = GF(p, k)
    for a in range(f.order):
        inner = f.rel_trace(a, e)
        # trace of GF(p^e) down to GF(p), computed inside f
        outer = 0
        for i in range(e):
            outer = f.add(outer, f.frob_p(inner, i))
        assert outer == f.absolute_trace(a)


def test_subfield_basis_full_rank():
    from formrank.linalg import rank

    f = GF(2, 6, sub_degree=1)
    basis = subfield_basis(f)
    assert len(basis) == 6
    assert rank(np.array([b.coeffs for b in basis]), GF(2)) == 6
    for m in (2, 3):
        assert len(subfield_basis(GF(2, 6, sub_degree=m))) == 6 // m
