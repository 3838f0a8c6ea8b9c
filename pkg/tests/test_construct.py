from __future__ import annotations

import pytest

from formrank.construct import (
    FAMILIES,
    build,
    cyclic_alternating,
    cyclic_symmetric,
    linearized_two_rank,
    symmetric_two_rank,
    trace_hyperplane,
)
from formrank.enumeration import rank_distribution
from oracles import oracle_for, rank_counts


def _oracle_counts(m):
    return rank_counts(m.basis.tolist(), m.n, oracle_for(m.field))


@pytest.mark.parametrize("q,m,s", [(2, 1, 2), (3, 1, 2), (2, 1, 3), (4, 1, 2)])
def test_linearized_two_rank_oracle(q, m, s):
    sp = linearized_two_rank(q, m, s)
    n = m * s
    counts = _oracle_counts(sp)
    assert sp.d == 2 * n and sp.kind == "bilinear"
    assert {k for k in range(1, n + 1) if counts[k]} <= {n - m, n}
    assert counts[n - m] == (q**n - 1) ** 2 // (q**m - 1)


@pytest.mark.parametrize("q,m,s", [(2, 2, 2), (3, 2, 2), (2, 1, 5), (2, 3, 2)])
def test_linearized_two_rank_counts(q, m, s):
    sp = linearized_two_rank(q, m, s)
    n = m * s
    prof = rank_distribution(sp, projective=False)
    assert set(prof.nonzero_ranks) <= {n - m, n}
    assert prof.A(n - m) == (q**n - 1) ** 2 // (q**m - 1)


@pytest.mark.parametrize("q,m,s", [(2, 1, 2), (3, 1, 2), (2, 1, 3), (2, 2, 2)])
def test_symmetric_two_rank_oracle(q, m, s):
    sp = symmetric_two_rank(q, m, s)
    n = m * s
    counts = _oracle_counts(sp)
    assert sp.d == n + m and sp.kind == "symmetric"
    assert {k for k in range(1, n + 1) if counts[k]} <= {n - m, n}


@pytest.mark.parametrize("q,n", [(2, 2), (3, 2), (2, 3), (3, 3), (2, 4)])
def test_trace_hyperplane_oracle(q, n):
    sp = trace_hyperplane(q, n)
    counts = _oracle_counts(sp)
    assert sp.d == n + 1
    assert {k for k in range(1, n + 1) if counts[k]} <= {n - 1, n}
    assert sp.params["family"] == "trace-hyperplane"


@pytest.mark.parametrize("q,n", [(2, 3), (3, 3), (2, 4)])
def test_cyclic_symmetric_oracle(q, n):
    sp = cyclic_symmetric(q, n)
    counts = _oracle_counts(sp)
    assert sp.d == 2 * n
    assert min(k for k in range(1, n + 1) if counts[k]) >= n - 2


@pytest.mark.parametrize("q,n", [(2, 5), (3, 4), (4, 4), (2, 6)])
def test_cyclic_symmetric_min_rank(q, n):
    prof = rank_distribution(cyclic_symmetric(q, n))
    assert prof.min_rank >= n - 2


@pytest.mark.parametrize("q,m", [(2, 2), (3, 2), (4, 2), (2, 3), (5, 2)])
def test_cyclic_alternating_ranks(q, m):
    sp = cyclic_alternating(q, m)
    assert sp.d == 3 * m and sp.kind == "alternating"
    assert set(rank_distribution(sp).nonzero_ranks) <= {2 * m - 2, 2 * m}


def test_cyclic_alternating_oracle_small():
    sp = cyclic_alternating(2, 2)
    counts = _oracle_counts(sp)
    assert {k for k in range(1, 5) if counts[k]} <= {2, 4}


def test_build_dispatch_and_errors():
    assert build("cyclic-symmetric", q=2, n=5).d == 10
    with pytest.raises(ValueError):
        build("nope", q=2)
    with pytest.raises(ValueError):
        build("cyclic-symmetric", q=2)
    with pytest.raises(ValueError):
        build("cyclic-symmetric", q=2, n=5, m=1)
    with pytest.raises(ValueError):
        build("trace-hyperplane", q=6, n=4)
    with pytest.raises(ValueError):
        linearized_two_rank(2, 1, 1)
    assert set(FAMILIES) == {"linearized-two-rank", "symmetric-two-rank", "cyclic-symmetric",
                             "cyclic-alternating", "trace-hyperplane"}


def test_constructions_are_deterministic():
    a, b = cyclic_symmetric(3, 4), cyclic_symmetric(3, 4)
    assert a == b and a.params == b.params
    assert a.params["extension_degree"] == 4
