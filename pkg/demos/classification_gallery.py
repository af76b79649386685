"""Classifying tuples: purity, extremality, and irreducibility.

The classifier answers four questions about a contractive tuple: do the
iterates of the trace-shrinking map die out (purity); does the defect
ladder meet its ceiling (extremality, in the free and in the commuting
sense); how large is the self-adjoint commutant; and is the tuple
irreducible.  This script walks through examples where the answers
pull in different directions.

Run it directly:

    python demos/classification_gallery.py
"""

import math

import numpy as np

from defectseq import (
    classify,
    direct_sum,
    fock_creation,
    pure_nonmaximal_example,
    spherical_shift_sum,
    symmetric_fock_shift,
)


def describe(title, T):
    rep = classify(T)
    print(f"\n{title}  (d = {T.d}, dim = {T.h})")
    print(f"  commuting        : {rep.commuting}")
    print(f"  purity           : {rep.purity.status.value}"
          f" after {rep.purity.iterations} iterations")
    print(f"  first defect     : {rep.delta_1}")
    print(f"  extremal (free)  : {rep.maximal_noncomm.maximal}")
    if rep.maximal_comm is not None:
        print(f"  extremal (comm)  : {rep.maximal_comm.maximal}")
    print(f"  commutant dim    : {rep.commutant_dim}")
    print(f"  irreducible      : {rep.irreducible}")
    return rep


def main():
    print("Classification gallery")
    print("=" * 52)

    # The canonical extremal example: pure, irreducible, and its ladder
    # touches the free ceiling at every step.
    describe("Creation tuple", fock_creation(2, 3))

    # Still pure and irreducible, but only extremal among commuting
    # tuples; the free ceiling races ahead of the binomial one.
    describe("Symmetric shift", symmetric_fock_shift(2, 3))

    # Purity without extremality: the ladder grows one dimension per
    # step, far below both ceilings.
    describe("Slow-growth example", pure_nonmaximal_example(2, 4, 0.5))

    # Purity without irreducibility: a direct sum is reducible by
    # construction, yet each summand dies out, so the sum does too.
    describe("Direct sum of two pure models",
             direct_sum(fock_creation(2, 2), symmetric_fock_shift(2, 2)))

    # Failure of purity: pad the shift with a scalar row whose weights
    # have unit square sum.  The iterates converge to the projection
    # onto the scalar block instead of to zero.
    w = 1.0 / math.sqrt(2.0)
    mixed = describe("Shift padded with a spherical scalar block",
                     spherical_shift_sum(2, 3, (w, w), 2))
    Q = mixed.purity.limit
    gap = np.linalg.norm(Q @ Q - Q, 2)
    print(f"\n  limit is a projection up to {gap:.2e};"
          f" trace {np.trace(Q).real:.1f} counts the padded block")


if __name__ == "__main__":
    main()
