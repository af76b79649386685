"""A tour of defect sequences for the bundled operator models.

Every contractive tuple T carries a sequence of integers: the rank of
I - sum T_w X T_w* over words of each length.  This script builds the
standard models and prints their ladders next to the theoretical growth
ceilings, so you can see which models are extremal and which fall short.

Run it directly:

    python demos/defect_ladders.py
"""

from defectseq import (
    commuting_bound,
    defect_sequence,
    finite_phi_compression,
    fock_creation,
    geometric_bound,
    right_creation_compression,
    symmetric_fock_shift,
)


def show(title, T, n_max, commuting=False):
    rep = defect_sequence(T, n_max)
    d1 = rep.deltas[0] if rep.deltas else 0
    print(f"\n{title}  (d = {T.d}, dim = {T.h})")
    print(f"  ladder      : {list(rep.deltas)}")
    free = [geometric_bound(T.d, n, d1) for n in range(1, len(rep.deltas) + 1)]
    print(f"  free ceiling: {free}")
    if commuting:
        comm = [commuting_bound(T.d, n, d1)
                for n in range(1, len(rep.deltas) + 1)]
        print(f"  comm ceiling: {comm}")
    if rep.reached_full:
        print("  the ladder fills the whole space")
    elif rep.stabilized_at is not None:
        print(f"  stabilizes at step {rep.stabilized_at}")


def main():
    print("Defect ladders for the model gallery")
    print("=" * 52)

    # The free creation tuple meets the geometric ceiling exactly:
    # 1, 3, 7, 15, ... on two letters.
    show("Creation tuple on the truncated word space",
         fock_creation(2, 4), 5)

    # Its commuting cousin meets the smaller binomial ceiling instead.
    show("Symmetric shift on monomials",
         symmetric_fock_shift(2, 4), 5, commuting=True)

    # Compressing away a shifted copy of the space breaks extremality:
    # the second step produces d instead of the ceiling value.
    show("Compression along a single right shift",
         right_creation_compression(2, 3, 2), 3)

    # The same construction driven by a unit vector phi.  A balanced
    # two-letter phi still doubles each step, one dimension below the
    # free ceiling's pace.
    w = 2.0 ** -0.5
    show("Compression along a balanced phi",
         finite_phi_compression(2, 3, {(1,): w, (2,): w}), 4)

    print("\nEvery ladder is monotone and sits below its ceiling;")
    print("only the first two models touch theirs at every step.")


if __name__ == "__main__":
    main()
