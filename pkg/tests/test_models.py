"""Tests for the model gallery: shifts, compressions, random ensembles."""

import math

import numpy as np
import pytest

from defectseq.classify import Purity, commutant_dimension, purity
from defectseq.defect import defect_dimension, defect_sequence, is_contractive
from defectseq.errors import ArgumentError
from defectseq.linalg import subspace_equal
from defectseq.models import (
    coinvariant_hull,
    finite_phi_compression,
    finite_phi_subspace,
    fock_basis,
    fock_creation,
    haar_unitary,
    monomial_basis,
    pure_nonmaximal_example,
    random_coinvariant_compression,
    random_coinvariant_subspace,
    random_contractive,
    right_creation_compression,
    right_creation_subspace,
    scalar_spherical_tuple,
    spherical_shift_sum,
    symmetric_fock_shift,
    symmetric_shift_via_compression,
    symmetrizer,
)
from defectseq.tuples import OperatorTuple


def permutation_operator(d, perm):
    """Matrix permuting the tensor factors of (C^d)^{otimes k}."""
    k = len(perm)
    n = d ** k
    P = np.zeros((n, n))
    for idx in range(n):
        digits = []
        rem = idx
        for _ in range(k):
            digits.append(rem % d)
            rem //= d
        digits.reverse()
        moved = [digits[perm[pos]] for pos in range(k)]
        out = 0
        for g in moved:
            out = out * d + g
        P[out, idx] = 1.0
    return P


class TestFockModel:
    def test_basis_enumerates_words_by_length(self):
        words = fock_basis(2, 2)
        assert words == [(), (1,), (2,), (1, 1), (1, 2), (2, 1), (2, 2)]
        assert len(fock_basis(3, 3)) == 1 + 3 + 9 + 27

    def test_row_sums_to_complement_of_vacuum(self):
        v = fock_creation(2, 2)
        total = sum(op @ op.conj().T for op in v.ops)
        expected = np.eye(7)
        expected[0, 0] = 0.0
        assert np.array_equal(total, expected)

    def test_defect_ladder_doubles(self):
        rep = defect_sequence(fock_creation(2, 3), 6)
        assert rep.deltas == (1, 3, 7, 15)

    def test_irreducible_with_trivial_commutant(self):
        assert commutant_dimension(fock_creation(2, 2)) == 1


class TestSymmetricShift:
    def test_monomial_count(self):
        assert len(monomial_basis(2, 3)) == math.comb(5, 2)
        assert len(monomial_basis(3, 2)) == math.comb(5, 3)

    def test_shift_commutes(self):
        s = symmetric_fock_shift(2, 3)
        a, b = s.ops
        assert np.allclose(a @ b, b @ a, atol=1e-13)

    def test_first_defect_is_the_constant_monomial(self):
        s = symmetric_fock_shift(2, 3)
        from defectseq.defect import defect_operator
        d1 = defect_operator(s, 1)
        want = np.zeros_like(d1)
        want[0, 0] = 1.0
        assert np.allclose(d1, want, atol=1e-12)

    def test_binomial_ladder(self):
        assert defect_sequence(symmetric_fock_shift(2, 3), 6).deltas \
            == (1, 3, 6, 10)
        assert defect_sequence(symmetric_fock_shift(3, 3), 6).deltas \
            == (1, 4, 10, 20)

    @pytest.mark.parametrize("d,L", [(2, 3), (3, 2)])
    def test_direct_build_matches_compression(self, d, L):
        direct = symmetric_fock_shift(d, L)
        compressed = symmetric_shift_via_compression(d, L)
        dev = max(np.abs(x - y).max()
                  for x, y in zip(direct.ops, compressed.ops))
        assert dev <= 1e-10


class TestSymmetrizer:
    def test_projection_with_binomial_trace(self):
        for d, k in [(2, 2), (2, 3), (3, 2)]:
            S = symmetrizer(d, k)
            assert np.allclose(S @ S, S, atol=1e-13)
            assert np.allclose(S, S.conj().T, atol=1e-13)
            assert np.trace(S).real == pytest.approx(
                math.comb(k + d - 1, d - 1), abs=1e-10)

    def test_absorbs_factor_permutations(self):
        S = symmetrizer(2, 3)
        for perm in [(1, 0, 2), (2, 0, 1), (0, 2, 1)]:
            P = permutation_operator(2, perm)
            assert np.allclose(S @ P, S, atol=1e-12)
            assert np.allclose(P @ S, S, atol=1e-12)

    def test_fixes_elementary_tensor_powers(self):
        S = symmetrizer(2, 3)
        x = np.array([0.6, 0.8])
        v = np.kron(np.kron(x, x), x)
        assert np.allclose(S @ v, v, atol=1e-12)


class TestWordCompressions:
    def test_right_shift_subspace_dimension(self):
        # Removing T_w-shifted copies of each level below L - j leaves
        # the rest of the word basis.
        assert right_creation_subspace(2, 2, 1).dim == 4
        assert right_creation_subspace(2, 3, 2).dim == 8

    def test_right_shift_defect_start(self):
        for d in (2, 3):
            T = right_creation_compression(d, 3, d)
            rep = defect_sequence(T, 2)
            assert rep.deltas == (1, d)

    def test_single_letter_phi_matches_right_shift(self):
        sub_phi = finite_phi_subspace(2, 3, {(2,): 1.0})
        sub_rj = right_creation_subspace(2, 3, 2)
        assert subspace_equal(sub_phi, sub_rj)
        t_phi = finite_phi_compression(2, 3, {(2,): 1.0})
        t_rj = right_creation_compression(2, 3, 2)
        assert defect_sequence(t_phi, 3).deltas \
            == defect_sequence(t_rj, 3).deltas

    def test_phi_beyond_truncation_changes_nothing(self):
        full = fock_creation(2, 2)
        T = finite_phi_compression(2, 2, {(1, 2, 1): 1.0})
        assert max(np.abs(x - y).max()
                   for x, y in zip(full.ops, T.ops)) == 0.0

    def test_phi_validation(self):
        with pytest.raises(ArgumentError):
            finite_phi_compression(2, 3, {})
        with pytest.raises(ArgumentError):
            finite_phi_compression(2, 3, {(1,): 0.5})
        with pytest.raises(ArgumentError):
            finite_phi_compression(2, 3, {(): 1.0})
        with pytest.raises(ArgumentError):
            finite_phi_compression(2, 3, {(1,): 0.6, (3,): 0.8})

    def test_balanced_two_letter_phi_keeps_doubling(self):
        w = 1.0 / math.sqrt(2.0)
        T = finite_phi_compression(2, 3, {(1,): w, (2,): w})
        assert defect_sequence(T, 4).deltas == (1, 2, 4, 8)


class TestPureNonmaximal:
    def test_start_of_the_ladder(self):
        T = pure_nonmaximal_example(2, 4, 0.5)
        rep = defect_sequence(T, 2)
        assert rep.deltas == (2, 3)

    def test_is_pure(self):
        T = pure_nonmaximal_example(2, 4, 0.5)
        assert purity(T).status is Purity.PURE

    def test_validation(self):
        with pytest.raises(ArgumentError):
            pure_nonmaximal_example(1, 3, 0.5)
        with pytest.raises(ArgumentError):
            pure_nonmaximal_example(2, 3, 1.0)


class TestSphericalModels:
    def test_scalar_tuple_values(self):
        s = scalar_spherical_tuple((0.6, 0.8), 2)
        assert s.d == 2 and s.h == 2
        assert np.array_equal(s.ops[0], 0.6 * np.eye(2))
        assert np.array_equal(s.ops[1], 0.8 * np.eye(2))

    def test_scalar_tuple_validation(self):
        with pytest.raises(ArgumentError):
            scalar_spherical_tuple((0.5, 0.5), 1)
        with pytest.raises(ArgumentError):
            scalar_spherical_tuple((), 1)

    def test_sum_requires_matching_lengths(self):
        with pytest.raises(ArgumentError):
            spherical_shift_sum(2, 2, (0.6,), 1)

    def test_sum_defects_match_the_shift_summand(self):
        w = 1.0 / math.sqrt(2.0)
        A = spherical_shift_sum(2, 3, (w, w), 2)
        S = symmetric_fock_shift(2, 3)
        for n in (1, 2, 3):
            assert defect_dimension(A, n) == defect_dimension(S, n)


class TestRandomEnsembles:
    def test_haar_unitary_properties(self):
        rng = np.random.default_rng(5)
        u = haar_unitary(6, rng)
        assert np.allclose(u @ u.conj().T, np.eye(6), atol=1e-12)
        again = haar_unitary(6, np.random.default_rng(5))
        assert np.array_equal(u, again)

    def test_random_contractive_hits_requested_rank(self):
        for seed in range(10):
            rank = seed % 4
            T = random_contractive(2, 6, rank, seed)
            assert is_contractive(T)
            assert defect_dimension(T, 1) == rank

    def test_random_contractive_accepts_generator_or_seed(self):
        a = random_contractive(2, 5, 2, 11)
        b = random_contractive(2, 5, 2, np.random.default_rng(11))
        assert all(np.array_equal(x, y) for x, y in zip(a.ops, b.ops))

    def test_coinvariant_hull_of_the_vacuum_is_one_dimensional(self):
        v = fock_creation(2, 2)
        vac = np.eye(7)[:, :1]
        hull = coinvariant_hull(v, vac)
        assert hull.dim == 1

    def test_coinvariant_hull_is_adjoint_stable(self):
        rng = np.random.default_rng(8)
        v = fock_creation(2, 3)
        seedvec = rng.standard_normal((15, 2))
        hull = coinvariant_hull(v, seedvec)
        proj = hull.projector()
        for op in v.ops:
            image = op.conj().T @ hull.basis
            assert np.linalg.norm(image - proj @ image) < 1e-10

    def test_random_coinvariant_compression_is_contractive_and_pure(self):
        for seed in range(6):
            T = random_coinvariant_compression(2, 2, 2, seed)
            assert is_contractive(T)
            assert purity(T).status is Purity.PURE

    def test_random_coinvariant_subspace_determinism(self):
        _, a = random_coinvariant_subspace(2, 2, 2, 3)
        _, b = random_coinvariant_subspace(2, 2, 2, 3)
        assert np.array_equal(a.basis, b.basis)
