"""Rank distributions of the constructed families and the identities they satisfy.

Run with ``python3 demos/rank_distributions.py``.
"""

from __future__ import annotations

from formrank import (
    cyclic_alternating,
    cyclic_symmetric,
    linearized_two_rank,
    rank_distribution,
    trace_hyperplane,
    verify_common_zeros,
    verify_hermitian_count,
)


def show(label, m):
    prof = rank_distribution(m)
    nonzero = {k: a for k, a in enumerate(prof.counts) if k and a}
    print(f"{label:34s} q={m.q} n={m.n} d={m.d:2d}  A_k: {nonzero}")
    return prof


def main() -> None:
    print("Every nonzero element of these spaces has one of very few ranks.\n")
    show("linearized two-rank (q=3, n=2)", linearized_two_rank(3, 1, 2))
    show("linearized two-rank (q=2, n=4, m=2)", linearized_two_rank(2, 2, 2))
    show("trace hyperplane (q=3, n=4)", trace_hyperplane(3, 4))
    show("cyclic symmetric (q=2, n=5)", cyclic_symmetric(2, 5))
    show("cyclic alternating (q=2, 2m=6)", cyclic_alternating(2, 3))

    print("\nCommon zeros counted four ways, all scaled to q^(d-n)|Z|:")
    for label, m in [("trace hyperplane (3, 4)", trace_hyperplane(3, 4)),
                     ("cyclic symmetric (2, 5)", cyclic_symmetric(2, 5))]:
        rep = verify_common_zeros(m)
        print(f"  {label}: |Z| = {rep['z_count']}, q^(d-n)|Z| = {rep['q^(d-n)|Z|']}, "
              f"sum q^d(u) = {rep['sum_q^d(u)']}, sum q^e(u) = {rep['sum_q^e(u)']}, "
              f"sum A_k q^(n-k) = {rep['sum_A_k_q^(n-k)']}")

    print("\nThe hermitian zero set N against the signed rank sum:")
    rep = verify_hermitian_count(trace_hyperplane(3, 4))
    print(f"  trace hyperplane (3, 4): |N| = {rep['n_count']}, q^(d-n)|N| = {rep['q^(d-n)|N|']}, "
          f"signed sum = {rep['signed_sum']}")


if __name__ == "__main__":
    main()
