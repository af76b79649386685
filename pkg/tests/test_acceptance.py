"""End-to-end acceptance checks for the shipped feature set.

Each test prints one summary line so a verbose run reads as a checklist.
The ensemble sizes and time limits here are deliberate; do not shrink
them to make a failure go away.
"""

import math
import subprocess
import sys
import time

import numpy as np

from defectseq.classify import (
    Purity,
    commutant_dimension,
    is_irreducible,
    is_maximal_commuting,
    is_maximal_noncommutative,
    purity,
)
from defectseq.defect import (
    defect_dimension,
    defect_operator,
    defect_sequence,
    defect_space,
    defect_space_via_words,
    rank_symmetry_check,
    verify_product_bounds,
)
from defectseq.linalg import coordinate_subspace, numerical_rank, subspace_equal
from defectseq.models import (
    fock_creation,
    monomial_basis,
    pure_nonmaximal_example,
    random_coinvariant_compression,
    random_contractive,
    right_creation_compression,
    spherical_shift_sum,
    symmetric_fock_shift,
    symmetric_shift_via_compression,
    symmetrizer,
)
from defectseq.tuples import OperatorTuple, compress, direct_sum


def _note(label, detail):
    print(f"[acceptance] {label}: {detail}")


def _random_sample(index):
    rng = np.random.default_rng((40, index))
    d = int(rng.integers(1, 4))
    h = int(rng.integers(3, 9))
    rank = int(rng.integers(1, 4))
    return random_contractive(d, h, rank, rng)


def _coinvariant_sample(index):
    d = 2 + index % 2
    gens = 1 + index % 2
    return random_coinvariant_compression(d, 2, gens, index)


def test_creation_tuple_defect_doubles_minus_one():
    start = time.perf_counter()
    v = fock_creation(2, 6)
    rep = defect_sequence(v, 6)
    elapsed = time.perf_counter() - start
    assert rep.deltas == tuple(2 ** n - 1 for n in range(1, 7))
    assert elapsed < 10.0
    _note("free doubling ladder", f"{rep.deltas} in {elapsed:.2f}s")


def test_symmetric_shift_defect_follows_binomials():
    start = time.perf_counter()
    two = defect_sequence(symmetric_fock_shift(2, 6), 6)
    three = defect_sequence(symmetric_fock_shift(3, 4), 4)
    elapsed = time.perf_counter() - start
    assert two.deltas == tuple(n * (n + 1) // 2 for n in range(1, 7))
    assert three.deltas == (1, 4, 10, 20)
    assert elapsed < 10.0
    _note("commuting binomial ladder",
          f"{two.deltas} and {three.deltas} in {elapsed:.2f}s")


def test_compressed_right_shift_breaks_extremality():
    outcomes = []
    for d in (2, 3):
        T = right_creation_compression(d, 3, d)
        rep = defect_sequence(T, 2)
        assert rep.deltas == (1, d)
        assert not is_maximal_noncommutative(T)
        outcomes.append(rep.deltas)
    _note("compressed right shift", f"ladders {outcomes}, neither extremal")


def test_seeded_ensemble_satisfies_every_growth_law():
    start = time.perf_counter()
    samples = [("random", i, _random_sample(i)) for i in range(200)]
    samples += [("coinvariant", i, _coinvariant_sample(i)) for i in range(50)]
    violations = []

    for kind, index, T in samples:
        tag = f"{kind}[{index}]"
        rep = defect_sequence(T, 4)
        deltas = rep.deltas

        if any(a > b for a, b in zip(deltas, deltas[1:])):
            violations.append(f"{tag}: not monotone {deltas}")
        if not all(rep.bound_ok_noncomm):
            violations.append(f"{tag}: geometric bound broken {deltas}")

        for n in (1, 2, 3):
            if not subspace_equal(defect_space(T, n),
                                  defect_space_via_words(T, n)):
                violations.append(f"{tag}: word span differs at step {n}")

        if rep.stabilized_at is not None:
            level = deltas[rep.stabilized_at - 1]
            later = defect_dimension(T, rep.stabilized_at + 2)
            if later != level:
                violations.append(
                    f"{tag}: stabilized at {rep.stabilized_at} "
                    f"on {level} but step +2 gives {later}")

        for n in (1, 2):
            verdict = rank_symmetry_check(T, n)
            if verdict.rank_left != defect_dimension(T, n):
                violations.append(f"{tag}: left rank mismatch at {n}")
            if verdict.rank_right - verdict.rank_left \
                    != (T.d ** n - 1) * T.h:
                violations.append(f"{tag}: rank offset wrong at {n}")

    elapsed = time.perf_counter() - start
    assert violations == []
    assert elapsed < 120.0
    _note("growth-law ensemble",
          f"{len(samples)} tuples, 0 violations, {elapsed:.1f}s")


def test_product_defect_dimension_bounds_hold():
    violations = []
    for i in range(100):
        rng = np.random.default_rng((50, i))
        h = int(rng.integers(2, 7))
        b = random_contractive(int(rng.integers(1, 3)), h,
                               int(rng.integers(0, 3)), rng)
        c = random_contractive(int(rng.integers(1, 3)), h,
                               int(rng.integers(0, 3)), rng)
        chk = verify_product_bounds(b, c)
        if not chk.ok:
            violations.append(
                f"pair[{i}]: {chk.delta_b}, {chk.delta_c}, {chk.delta_bc}")
    assert violations == []
    _note("product bounds", "100 pairs, 0 violations")


def test_pure_tuples_grow_one_step_at_a_time():
    pool = [fock_creation(2, 2), fock_creation(2, 3)]
    pool += [_random_sample(i) for i in range(40)]
    pool += [_coinvariant_sample(i) for i in range(10)]

    pure_count = 0
    violations = []
    for index, T in enumerate(pool):
        if purity(T).status is not Purity.PURE:
            continue
        pure_count += 1
        rep = defect_sequence(T, T.h + 1)
        strict = all(a < b for a, b in zip(rep.deltas, rep.deltas[1:]))
        if not (strict and rep.reached_full):
            violations.append(f"pool[{index}]: {rep.deltas} on dim {T.h}")
    assert violations == []
    assert pure_count > 0

    ladder = OperatorTuple((np.diag(np.ones(4), -1),))
    rep = defect_sequence(ladder, 5)
    assert rep.deltas == (1, 2, 3, 4, 5)
    assert purity(ladder).status is Purity.PURE
    _note("pure growth",
          f"{pure_count} pure tuples strictly increasing; "
          f"nilpotent ladder {rep.deltas}")


def test_small_gallery_examples_behave_as_documented():
    slow = pure_nonmaximal_example(2, 4, 0.5)
    assert purity(slow).status is Purity.PURE
    assert defect_sequence(slow, 2).deltas == (2, 3)
    assert not is_maximal_noncommutative(slow)
    assert not is_maximal_commuting(slow)

    paired = direct_sum(fock_creation(2, 2), symmetric_fock_shift(2, 2))
    assert defect_dimension(paired, 1) == 2
    assert purity(paired).status is Purity.PURE
    assert commutant_dimension(paired) >= 2

    w = 1.0 / math.sqrt(2.0)
    mixed = spherical_shift_sum(2, 3, (w, w), 2)
    shift = symmetric_fock_shift(2, 3)
    for n in (1, 2, 3, 4):
        assert defect_dimension(mixed, n) == defect_dimension(shift, n)
    verdict = purity(mixed)
    assert verdict.status is Purity.NOT_PURE
    Q = verdict.limit
    gap = float(np.linalg.norm(Q @ Q - Q, 2))
    assert gap <= 1e-8
    _note("gallery examples",
          f"slow-growth ladder (2, 3); mixed-sum limit gap {gap:.2e}")


def test_irreducible_tuples_with_defect_are_pure():
    pool = [fock_creation(2, 2), fock_creation(2, 3)]
    pool += [_random_sample(i) for i in range(30)]
    pool += [_coinvariant_sample(i) for i in range(10)]

    hits = 0
    for index, T in enumerate(pool):
        if not is_irreducible(T) or defect_dimension(T, 1) == 0:
            continue
        hits += 1
        assert purity(T).status is Purity.PURE, f"pool[{index}]"

    assert hits > 0
    assert commutant_dimension(fock_creation(2, 3)) == 1
    assert purity(fock_creation(2, 3)).status is Purity.PURE
    _note("irreducibility implies purity", f"{hits} irreducible witnesses")


def test_two_shift_constructions_agree():
    for d, L in [(2, 3), (3, 2)]:
        direct = symmetric_fock_shift(d, L)
        via = symmetric_shift_via_compression(d, L)
        dev = max(float(np.abs(x - y).max())
                  for x, y in zip(direct.ops, via.ops))
        assert dev <= 1e-10

    for d, k in [(2, 2), (2, 3), (3, 2)]:
        S = symmetrizer(d, k)
        assert float(np.abs(S @ S - S).max()) <= 1e-12
        assert float(np.abs(S - S.conj().T).max()) <= 1e-12
        assert abs(np.trace(S).real
                   - math.comb(k + d - 1, d - 1)) <= 1e-9
    _note("construction cross-check",
          "compression route matches to 1e-10; symmetrizers exact")


def test_restricted_shift_keeps_interior_defect_rank():
    top = 5
    shift = symmetric_fock_shift(2, top)
    basis = monomial_basis(2, top)
    keep = [p for p, alpha in enumerate(basis) if alpha[0] >= 1]
    restriction = compress(shift, coordinate_subspace(shift.h, keep))
    d1 = defect_operator(restriction, 1)

    kept = [basis[p] for p in keep]
    interior = [q for q, alpha in enumerate(kept) if sum(alpha) < top]
    inner_rank = numerical_rank(d1[np.ix_(interior, interior)])
    assert inner_rank >= 2
    _note("restricted shift defect",
          f"interior rank {inner_rank} (truncation top degree excluded)")


def test_verification_reports_are_byte_identical(tmp_path):
    reports = []
    for run in (1, 2):
        path = tmp_path / f"run{run}.json"
        proc = subprocess.run(
            [sys.executable, "-m", "defectseq", "verify",
             "--suite", "all", "--seed", "1", "--report", str(path)],
            capture_output=True, text=True, timeout=300)
        assert proc.returncode == 0, proc.stdout + proc.stderr
        reports.append(path.read_bytes())
    assert reports[0] == reports[1]
    _note("reproducibility",
          f"two full verification runs, {len(reports[0])} identical bytes")
