"""Exhaustive search for large constant-rank subspaces.

Run with ``python3 demos/constant_rank.py``.
"""

from __future__ import annotations

from formrank import alternating_part, constant_rank_search, cyclic_symmetric, rank_distribution, trace_hyperplane


def main() -> None:
    for label, m, r in [("trace hyperplane q=5, n=4", trace_hyperplane(5, 4), 3),
                        ("trace hyperplane q=7, n=4", trace_hyperplane(7, 4), 3),
                        ("cyclic symmetric q=4, n=5", cyclic_symmetric(4, 5), 3)]:
        rep = constant_rank_search(m, r)
        bound = rep.bound["claim"] if rep.bound else "none"
        print(f"{label}: largest constant-rank-{r} subspace has dim {rep.max_dim} "
              f"({rep.nodes} nodes, exhaustive={rep.exhaustive}); bound: {bound}")

    alt = alternating_part(cyclic_symmetric(4, 5))
    print(f"\nalternating part of the q=4 cyclic space: dim {alt.d}, "
          f"nonzero ranks {rank_distribution(alt).nonzero_ranks}")


if __name__ == "__main__":
    main()
