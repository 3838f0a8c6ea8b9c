"""Radicals of minimum-rank elements: spreads and line/plane correspondences.

Run with ``python3 demos/radical_geometry.py``.
"""

from __future__ import annotations

from formrank import (
    cyclic_symmetric,
    mu_decomposition,
    radical_bijection,
    radical_spread,
    symmetric_two_rank,
)
from formrank.analyze import spread_vectors


def main() -> None:
    m = symmetric_two_rank(4, 3, 2)
    rep = radical_spread(m, 3)
    print(f"symmetric two-rank space over GF(4), n = 6, d = {m.d}")
    print(f"  rank-3 elements have {rep.observed_count} distinct radicals (q^3 + 1 = {4**3 + 1})")
    print(f"  pairwise trivial: {rep.pairwise_trivial}, cover V: {rep.coverage}, regime: {rep.regime}")
    dec = mu_decomposition(m, *spread_vectors(rep, 3))
    print(f"  M = M_u + M_w + M_z with dims {dec['dims']}: {dec['passed']}")

    m = cyclic_symmetric(2, 5)
    bij = radical_bijection(m)
    print(f"\ncyclic symmetric space over GF(2), n = 5, d = {m.d}")
    print(f"  {bij['rank_n_minus_2_lines']} rank-3 lines, {bij['two_dim_subspaces']} planes in V, "
          f"bijective: {bij['bijective']}")
    print(f"  dim(M_u ∩ M_v) over {bij['pair_count']} point pairs: {bij['pair_intersection_dims']}")


if __name__ == "__main__":
    main()
