"""Structural verdicts for contractive tuples.

This module answers the qualitative questions about a tuple: is it a
row contraction, do its entries commute, do the cp-map iterates at the
identity die out (purity), does the defect sequence grow as fast as the
dimension count allows (maximality, in the free and in the commuting
sense), and is the tuple irreducible in the sense that nothing but
scalars commutes with all entries and their adjoints.

Purity is decided by fixed-point iteration with a three-way verdict.
The iterates X_k = cp^k(I) decrease in the positive semidefinite order,
so either they fall below the purity threshold (Pure), or they settle
at a nonzero fixed point (NotPure, with the limit reported), or the
iteration budget runs out first (Undecided).  An honest Undecided is
preferred over a spectral shortcut that the rest of the package could
not cross-check.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .config import size_cap
from .defect import (
    defect_dimension,
    geometric_bound,
    commuting_bound,
    is_contractive,
    require_contractive,
)
from .errors import ArgumentError, ConsistencyError, SizeCapError
from .linalg import (
    DEFAULT_TOL,
    RankTolerance,
    hermitian_norm,
    hermitize,
    numerical_rank,
    readonly_copy,
)
from .tuples import apply_cp_map, is_commuting

__all__ = [
    "ClassificationReport",
    "MaximalityVerdict",
    "Purity",
    "PurityVerdict",
    "classify",
    "commutant_dimension",
    "is_commuting",
    "is_contractive",
    "is_irreducible",
    "is_maximal_commuting",
    "is_maximal_noncommutative",
    "maximality_commuting",
    "maximality_noncommutative",
    "purity",
]

DEFAULT_MAX_ITER = 10000
DEFAULT_EPS_PURE = 1e-10
DEFAULT_EPS_CONV = 1e-12


class Purity(enum.Enum):
    """Outcome of the purity iteration."""

    PURE = "Pure"
    NOT_PURE = "NotPure"
    UNDECIDED = "Undecided"


@dataclass(frozen=True, eq=False)
class PurityVerdict:
    """Result of iterating the cp map at the identity.

    ``residual_norm`` is the spectral norm of the last iterate.  For a
    NotPure verdict ``limit`` holds that iterate; it is positive
    semidefinite and one application of the cp map moves it by no more
    than the relative convergence threshold.  Pure and Undecided
    verdicts carry no limit.
    """

    status: Purity
    iterations: int
    residual_norm: float
    limit: np.ndarray | None = None

    def __post_init__(self):
        if (self.status is Purity.NOT_PURE) != (self.limit is not None):
            raise ConsistencyError("limit must accompany exactly the NotPure verdict")


def purity(T, max_iter=DEFAULT_MAX_ITER, eps_pure=DEFAULT_EPS_PURE,
           eps_conv=DEFAULT_EPS_CONV, tol=None):
    """Classify the tuple as Pure, NotPure, or Undecided.

    Iterates X ->  cp(X) from the identity, re-symmetrizing each step.
    Returns Pure once the spectral norm of the iterate drops to
    ``eps_pure``; returns NotPure once one step moves the iterate by no
    more than ``eps_conv`` relative to its current norm while that norm
    is still above the purity threshold; returns Undecided when
    ``max_iter`` steps decide neither.  The step criterion is relative
    on purpose: a slowly decaying pure iterate has small absolute steps
    but its relative step stays near one minus the decay rate, so only
    a genuine fixed point can trigger the NotPure branch.  Requires a
    contractive tuple, which makes the iterates a decreasing chain of
    positive contractions.
    """
    if max_iter < 1:
        raise ArgumentError("iteration budget must be at least 1")
    tol = DEFAULT_TOL if tol is None else tol
    require_contractive(T, tol)
    x = np.eye(T.h, dtype=np.complex128)
    norm = 1.0
    for k in range(1, max_iter + 1):
        nxt = apply_cp_map(T, x)
        norm = hermitian_norm(nxt)
        if norm <= eps_pure:
            return PurityVerdict(Purity.PURE, k, norm)
        step = hermitian_norm(x - nxt)
        if step <= eps_conv * norm:
            return PurityVerdict(Purity.NOT_PURE, k, norm, readonly_copy(nxt))
        x = nxt
    return PurityVerdict(Purity.UNDECIDED, max_iter, norm)


@dataclass(frozen=True)
class MaximalityVerdict:
    """Whether the defect sequence meets its growth bound with equality.

    ``horizon`` is the largest index the finite dimension allows the
    check to be meaningful for (the bound still fits inside h); the
    default horizon is computed from Delta_1 and recorded here.
    ``deltas`` and ``bounds`` list the compared values; on failure
    ``failed_at`` names the first index where they split and the lists
    stop there.
    """

    maximal: bool
    horizon: int
    deltas: tuple
    bounds: tuple
    failed_at: int | None

    def __post_init__(self):
        if len(self.deltas) != len(self.bounds):
            raise ConsistencyError("deltas and bounds must align")
        if self.maximal and self.failed_at is not None:
            raise ConsistencyError("maximal verdict cannot carry a failure index")


def _default_horizon(d, h, delta_1, bound_fn):
    # Largest n with bound(n) <= h; equality past that point is
    # impossible because the defect dimension cannot exceed h.
    if delta_1 == 0:
        return 1
    n = 1
    while bound_fn(d, n + 1, delta_1) <= h:
        n += 1
    return n


def _maximality(T, horizon, tol, bound_fn):
    require_contractive(T, tol)
    h = T.h
    x = np.eye(T.h, dtype=np.complex128)
    eye = np.eye(h)
    deltas = []
    bounds = []
    failed_at = None

    x = apply_cp_map(T, x)
    delta_1 = numerical_rank(hermitize(eye - x), tol)
    if horizon is None:
        horizon = _default_horizon(T.d, h, delta_1, bound_fn)
    elif horizon < 1:
        raise ArgumentError("horizon must be at least 1")

    delta = delta_1
    for n in range(1, horizon + 1):
        if n > 1:
            x = apply_cp_map(T, x)
            delta = numerical_rank(hermitize(eye - x), tol)
        bound = bound_fn(T.d, n, delta_1)
        deltas.append(delta)
        bounds.append(bound)
        if delta != bound:
            failed_at = n
            break
        if delta == h:
            break
    return MaximalityVerdict(
        maximal=failed_at is None,
        horizon=horizon,
        deltas=tuple(deltas),
        bounds=tuple(bounds),
        failed_at=failed_at,
    )


def maximality_noncommutative(T, horizon=None, tol=None):
    """Does Delta_n hit the geometric bound (1 + d + ... + d**(n-1)) Delta_1?

    Checks equality for n = 1 .. horizon, stopping early once the
    defect dimension reaches the full space or the first mismatch
    appears.  When no horizon is given it defaults to the largest n for
    which the bound still fits inside h, the only range where equality
    is possible at all; a tuple with Delta_1 = 0 is reported maximal
    with horizon 1 since its whole defect sequence is zero.  Returns the
    full verdict record; ``is_maximal_noncommutative`` reduces it to a
    boolean.
    """
    tol = DEFAULT_TOL if tol is None else tol
    return _maximality(T, horizon, tol, geometric_bound)


def maximality_commuting(T, horizon=None, tol=None):
    """Does Delta_n hit the binomial bound available for commuting tuples?

    Same contract as the free version with the monomial-count bound;
    raises ArgumentError when the tuple does not commute, because the
    bound is meaningless there.
    """
    tol = DEFAULT_TOL if tol is None else tol
    if not is_commuting(T, tol):
        raise ArgumentError("commuting maximality asked of a noncommuting tuple")
    return _maximality(T, horizon, tol, commuting_bound)


def is_maximal_noncommutative(T, horizon=None, tol=None):
    """Boolean form of ``maximality_noncommutative``."""
    return maximality_noncommutative(T, horizon, tol).maximal


def is_maximal_commuting(T, horizon=None, tol=None):
    """Boolean form of ``maximality_commuting``."""
    return maximality_commuting(T, horizon, tol).maximal


def commutant_dimension(T, tol=None):
    """Dimension of { X : X T_i = T_i X and X T_i* = T_i* X for all i }.

    Vectorizes the 2d commutation constraints into a stacked linear
    system on h**2 unknowns and counts its numerical nullity.  The
    identity always commutes, so the result is at least 1.  Refuses
    spaces with h**2 beyond the size cap; the stacked system holds
    2 d h**2 rows of h**2 entries.
    """
    tol = DEFAULT_TOL if tol is None else tol
    h = T.h
    cap = size_cap()
    if h * h > cap:
        raise SizeCapError(
            f"commutant system needs h^2 = {h * h} unknowns, cap is {cap}"
        )
    eye = np.eye(h, dtype=np.complex128)
    blocks = []
    for op in T.ops:
        for a in (op, op.conj().T):
            # Row-major vectorization: vec(A X) = kron(A, I) vec(X) and
            # vec(X A) = kron(I, A^T) vec(X).
            blocks.append(np.kron(a, eye) - np.kron(eye, a.T))
    system = np.vstack(blocks)
    return h * h - numerical_rank(system, tol)


def is_irreducible(T, tol=None):
    """True when only scalars commute with the tuple and its adjoints."""
    tol = DEFAULT_TOL if tol is None else tol
    return commutant_dimension(T, tol) == 1


@dataclass(frozen=True, eq=False)
class ClassificationReport:
    """Aggregate structural verdict for one tuple.

    For a non-contractive input only ``contractive`` and ``commuting``
    are filled; every analysis field is None because the defect
    machinery is not defined there.  ``maximal_comm`` is present exactly
    when the tuple commutes.
    """

    contractive: bool
    commuting: bool
    purity: PurityVerdict | None
    delta_1: int | None
    maximal_noncomm: MaximalityVerdict | None
    maximal_comm: MaximalityVerdict | None
    commutant_dim: int | None
    irreducible: bool | None
    tol: RankTolerance

    def __post_init__(self):
        if self.contractive and self.commuting and self.maximal_comm is None:
            raise ConsistencyError("commuting tuple classified without its bound")
        if not self.commuting and self.maximal_comm is not None:
            raise ConsistencyError("commuting bound reported for a noncommuting tuple")


def classify(T, tol=None, max_iter=DEFAULT_MAX_ITER,
             eps_pure=DEFAULT_EPS_PURE, eps_conv=DEFAULT_EPS_CONV):
    """Run every structural check and cross-validate the outcome.

    An irreducible tuple with positive first defect cannot have a
    nonzero cp-map fixed point, so a NotPure verdict in that situation
    raises ConsistencyError instead of returning quietly; Undecided is
    not treated as a contradiction.
    """
    tol = DEFAULT_TOL if tol is None else tol
    contractive = is_contractive(T, tol)
    commuting = is_commuting(T, tol)
    if not contractive:
        return ClassificationReport(
            contractive=False,
            commuting=commuting,
            purity=None,
            delta_1=None,
            maximal_noncomm=None,
            maximal_comm=None,
            commutant_dim=None,
            irreducible=None,
            tol=tol,
        )
    verdict = purity(T, max_iter=max_iter, eps_pure=eps_pure,
                     eps_conv=eps_conv, tol=tol)
    delta_1 = defect_dimension(T, 1, tol)
    maximal_noncomm = maximality_noncommutative(T, None, tol)
    maximal_comm = maximality_commuting(T, None, tol) if commuting else None
    commutant_dim = commutant_dimension(T, tol)
    irreducible = commutant_dim == 1
    if irreducible and delta_1 > 0 and verdict.status is Purity.NOT_PURE:
        raise ConsistencyError(
            "irreducible tuple with positive defect came back NotPure; "
            "this contradicts the purity law for irreducible tuples"
        )
    return ClassificationReport(
        contractive=True,
        commuting=commuting,
        purity=verdict,
        delta_1=delta_1,
        maximal_noncomm=maximal_noncomm,
        maximal_comm=maximal_comm,
        commutant_dim=commutant_dim,
        irreducible=irreducible,
        tol=tol,
    )
