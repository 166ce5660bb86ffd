"""Density matrices for discrete events, superposition events and partitions.

For an outcome space with point masses ``p`` and a non-empty event ``S``:

* ``rho_discrete(S)`` is diagonal with entries ``p_i / Pr(S)`` on ``S``;
* ``rho_superposition(S)`` is ``|s><s|`` where ``s_i = sqrt(p_i / Pr(S))`` on ``S``;
* ``rho_partition(pi)`` is ``sum_j Pr(B_j) rho_superposition(B_j)``.

Probabilities of an event ``T`` are read off as ``tr[P_T rho]``.  The two
event kinds give the same numbers and differ only in their off-diagonal
entries, which is what the purity test and the spectra expose.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import (
    AsymmetricRelation,
    EmptyConditioningEvent,
    IndexOutOfRange,
    InvalidDensityMatrix,
    NotPure,
    SpaceMismatch,
    UnknownOutcome,
)
from .probability import Event, OutcomeSpace, Partition, characteristic_vector, pr

TRACE_TOL = 1e-12
NORM_TOL = 1e-12
PSD_TOL = 1e-10
PURITY_TOL = 1e-10
RECOVERY_TOL = 1e-8
SUPPORT_TOL = 1e-9


class Kind(str, enum.Enum):
    DISCRETE = "discrete-event"
    SUPERPOSITION = "superposition-event"
    PARTITION = "partition"
    OTHER = "other"


def _check_space(a: OutcomeSpace, b: OutcomeSpace) -> None:
    if a is not b and a != b:
        raise SpaceMismatch("objects belong to different outcome spaces")


def _nonempty(S: Event) -> None:
    if S.is_empty():
        raise EmptyConditioningEvent("event must be non-empty")


@dataclass(frozen=True)
class BinaryRelation:
    space: OutcomeSpace = field(repr=False)
    pairs: frozenset[tuple[int, int]]

    def __post_init__(self):
        pairs = frozenset((int(j), int(k)) for j, k in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        n = self.space.n
        for j, k in pairs:
            if not (0 <= j < n and 0 <= k < n):
                raise UnknownOutcome(f"pair {(j, k)} out of range for n={n}")

    def is_symmetric(self) -> bool:
        return all((k, j) in self.pairs for j, k in self.pairs)


def diagonal_relation(S: Event) -> BinaryRelation:
    return BinaryRelation(S.space, frozenset((i, i) for i in S.members))


def product_relation(S: Event) -> BinaryRelation:
    return BinaryRelation(S.space, frozenset((j, k) for j in S.members for k in S.members))


def incidence_matrix(R: BinaryRelation) -> np.ndarray:
    """0/1 matrix with a 1 at (j, k) exactly when (j, k) is in ``R``."""
    if not R.is_symmetric():
        raise AsymmetricRelation("only symmetric relations have symmetric incidence matrices")
    m = np.zeros((R.space.n, R.space.n))
    for j, k in R.pairs:
        m[j, k] = 1.0
    return m


def projection(S: Event) -> np.ndarray:
    return np.diag(characteristic_vector(S))


@dataclass(frozen=True)
class AmplitudeVector:
    """Normalized real vector ``|s>``; its squared entries are outcome probabilities."""

    space: OutcomeSpace = field(repr=False)
    support: Event
    entries: np.ndarray

    def __post_init__(self):
        entries = linalg.real_vector(self.entries)
        if entries.shape[0] != self.space.n:
            raise InvalidDensityMatrix(f"amplitude has length {entries.shape[0]}, space has {self.space.n}")
        norm2 = linalg.inner(entries, entries)
        if abs(norm2 - 1.0) > NORM_TOL:
            raise InvalidDensityMatrix(f"amplitude vector not normalized (<s|s> = {norm2!r})")
        entries.flags.writeable = False
        object.__setattr__(self, "entries", entries)

    @property
    def has_negative_entries(self) -> bool:
        """True if some entry is below ``-SUPPORT_TOL``; impossible for a genuine ``|s>``."""
        return bool(np.any(self.entries < -SUPPORT_TOL))


@dataclass(frozen=True)
class DensityMatrix:
    """Symmetric, trace-one, positive semidefinite real matrix over a space.

    ``kind`` and ``provenance`` record how the matrix was built and never
    enter any computation.
    """

    space: OutcomeSpace = field(repr=False)
    matrix: np.ndarray
    kind: Kind = Kind.OTHER
    provenance: Event | Partition | None = field(default=None, repr=False)

    def __post_init__(self):
        m = linalg.sym_matrix(self.matrix)
        n = self.space.n
        if m.shape != (n, n):
            raise InvalidDensityMatrix(f"matrix shape {m.shape} does not match n={n}")
        tr = linalg.trace(m)
        if abs(tr - 1.0) > TRACE_TOL:
            raise InvalidDensityMatrix(f"trace is {tr!r}, not 1")
        # min eigenvalue >= -PSD_TOL  <=>  M + PSD_TOL*I is positive definite
        try:
            np.linalg.cholesky(m + PSD_TOL * np.eye(n))
        except np.linalg.LinAlgError:
            raise InvalidDensityMatrix("matrix has a negative eigenvalue") from None
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "kind", Kind(self.kind))

    @property
    def n(self) -> int:
        return self.space.n

    def diagonal(self) -> np.ndarray:
        return np.diag(self.matrix).copy()


def amplitude_vector(space: OutcomeSpace, S: Event) -> AmplitudeVector:
    """``|s>`` with entries ``sqrt(p_i / Pr(S))`` on ``S`` and 0 elsewhere."""
    _check_space(space, S.space)
    _nonempty(S)
    total = pr(space, S)
    entries = np.zeros(space.n)
    for i in S.members:
        entries[i] = math.sqrt(space.probs[i] / total)
    return AmplitudeVector(space, S, entries)


def rho_discrete(space: OutcomeSpace, S: Event) -> DensityMatrix:
    _check_space(space, S.space)
    _nonempty(S)
    total = pr(space, S)
    diag = np.zeros(space.n)
    for i in S.members:
        diag[i] = space.probs[i] / total
    return DensityMatrix(space, np.diag(diag), Kind.DISCRETE, S)


def rho_superposition(space: OutcomeSpace, S: Event) -> DensityMatrix:
    """The pure state ``|s><s|``.

    Entries are evaluated as ``sqrt(p_j p_k) / Pr(S)``, which equals
    ``s_j s_k`` but rounds once instead of twice.
    """
    _check_space(space, S.space)
    _nonempty(S)
    total = pr(space, S)
    w = characteristic_vector(S) * space.prob_array()
    return DensityMatrix(space, np.sqrt(np.multiply.outer(w, w)) / total, Kind.SUPERPOSITION, S)


def rho_partition(space: OutcomeSpace, pi: Partition) -> DensityMatrix:
    """Probability-weighted sum of the pure matrices of the superposed blocks."""
    _check_space(space, pi.space)
    m = np.zeros((space.n, space.n))
    for block in pi.blocks:
        m += pr(space, block) * rho_superposition(space, block).matrix
    return DensityMatrix(space, m, Kind.PARTITION, pi)


def prob_trace(rho: DensityMatrix, T: Event) -> float:
    """``tr[P_T rho]``, the probability of ``T`` given the state ``rho``."""
    _check_space(rho.space, T.space)
    return linalg.trace(linalg.mat_mul(projection(T), rho.matrix))


def born_probability(s: AmplitudeVector, i: int) -> float:
    """Squared amplitude ``<u_i|s>^2``."""
    if not 0 <= i < s.space.n:
        raise IndexOutOfRange(f"outcome index {i} out of range for n={s.space.n}")
    return float(s.entries[i]) ** 2


def is_pure(rho: DensityMatrix, tol: float = PURITY_TOL) -> bool:
    m = rho.matrix
    return float(np.max(np.abs(linalg.mat_mul(m, m) - m))) <= tol


def spectrum_of(rho: DensityMatrix) -> linalg.Spectrum:
    """Jacobi spectrum of ``rho`` with near-zero eigenvalues clamped to 0."""
    spec = linalg.sym_eigen(rho.matrix)
    return linalg.Spectrum(spec.clamped(), spec.eigenvectors, spec.sweeps)


def recover_amplitude(rho: DensityMatrix) -> AmplitudeVector:
    """Rebuild ``|s>`` from a pure density matrix as its eigenvalue-1 eigenvector.

    The sign is fixed so that the entries sum to a nonnegative number.  The
    support is the set of entries above ``SUPPORT_TOL``.
    """
    spec = linalg.sym_eigen(rho.matrix)
    top = float(spec.eigenvalues[0])
    if abs(top - 1.0) > RECOVERY_TOL:
        raise NotPure(f"largest eigenvalue is {top!r}, not 1")
    v = spec.vector(0)
    if math.fsum(v) < 0.0:
        v = -v
    v = v / math.sqrt(linalg.inner(v, v))
    support = Event(rho.space, frozenset(int(i) for i in np.flatnonzero(v > SUPPORT_TOL)))
    return AmplitudeVector(rho.space, support, v)


def predicted_eigenvalues(rho: DensityMatrix) -> np.ndarray:
    """The eigenvalue multiset each construction is known to have, sorted descending.

    ``rho_discrete(S)``: the conditional probabilities ``p_i / Pr(S)`` padded
    with zeros.  ``rho_superposition(S)``: one 1 and zeros.  ``rho_partition``:
    the block probabilities padded with zeros.
    """
    space, n = rho.space, rho.n
    src = rho.provenance
    if rho.kind is Kind.DISCRETE:
        total = pr(space, src)
        vals = [space.probs[i] / total for i in src.members]
    elif rho.kind is Kind.SUPERPOSITION:
        vals = [1.0]
    elif rho.kind is Kind.PARTITION:
        vals = [pr(space, b) for b in src.blocks]
    else:
        raise ValueError(f"no predicted spectrum for kind {rho.kind.value!r}")
    vals = vals + [0.0] * (n - len(vals))
    return np.array(sorted(vals, reverse=True))


def multiset_deviation(a, b) -> float:
    """Max difference between two eigenvalue multisets compared after sorting."""
    a = np.sort(np.asarray(a, dtype=float))
    b = np.sort(np.asarray(b, dtype=float))
    if a.shape != b.shape:
        return math.inf
    return float(np.max(np.abs(a - b))) if a.size else 0.0
