"""Finite outcome spaces, events, partitions and set-based probability.

Everything here is classical: probabilities are sums of point masses.  The
matrix constructions in :mod:`bornrule.superposition` are checked against
these functions.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DuplicateLabel,
    EmptyBlock,
    EmptySpace,
    IncompleteCover,
    LengthMismatch,
    NonPositiveProbability,
    NotNormalized,
    OverlappingBlocks,
    SpaceMismatch,
    UnknownOutcome,
    ZeroProbabilityCondition,
)

INGEST_TOL = 1e-9


@dataclass(frozen=True)
class OutcomeSpace:
    """Ordered outcomes ``u_1..u_n`` with strictly positive point masses.

    Outcome identity is the index; labels are only for display and lookup.
    """

    labels: tuple[str, ...]
    probs: tuple[float, ...]

    def __post_init__(self):
        labels = tuple(str(label) for label in self.labels)
        probs = tuple(float(p) for p in self.probs)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "probs", probs)

        if len(labels) != len(probs):
            raise LengthMismatch(f"{len(labels)} labels but {len(probs)} probabilities")
        if not labels:
            raise EmptySpace("an outcome space needs at least one outcome")
        seen = set()
        for label in labels:
            if label in seen:
                raise DuplicateLabel(f"duplicate outcome label {label!r}")
            seen.add(label)
        for label, p in zip(labels, probs):
            if not math.isfinite(p) or p <= 0.0:
                raise NonPositiveProbability(f"probability of {label!r} is {p!r}; must be > 0")
        total = math.fsum(probs)
        if abs(total - 1.0) > INGEST_TOL:
            raise NotNormalized(f"probabilities sum to {total!r}, not 1")

    @property
    def n(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise UnknownOutcome(f"no outcome labelled {label!r}") from None

    def event(self, labels: Iterable[str]) -> Event:
        """Event made of the outcomes with the given labels."""
        return Event(self, frozenset(self.index(label) for label in labels))

    def full(self) -> Event:
        return Event(self, frozenset(range(self.n)))

    def empty(self) -> Event:
        return Event(self, frozenset())

    def singleton(self, i: int) -> Event:
        return Event(self, frozenset((i,)))

    def prob_array(self) -> np.ndarray:
        return np.array(self.probs, dtype=float)


@dataclass(frozen=True)
class Event:
    """A subset of outcome indices of ``space``.

    Empty events are legal values (they come out of intersections) but are
    rejected wherever an event is conditioned on.
    """

    space: OutcomeSpace = field(repr=False)
    members: frozenset[int]

    def __post_init__(self):
        members = frozenset(int(i) for i in self.members)
        object.__setattr__(self, "members", members)
        for i in members:
            if not 0 <= i < self.space.n:
                raise UnknownOutcome(f"outcome index {i} out of range for n={self.space.n}")

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, i: int) -> bool:
        return i in self.members

    def __iter__(self):
        return iter(sorted(self.members))

    def is_empty(self) -> bool:
        return not self.members

    def labels(self) -> list[str]:
        return [self.space.labels[i] for i in sorted(self.members)]


def new_outcome_space(labels: Sequence[str], probs: Sequence[float]) -> OutcomeSpace:
    return OutcomeSpace(tuple(labels), tuple(probs))


def uniform_space(labels: Sequence[str]) -> OutcomeSpace:
    n = len(labels)
    return OutcomeSpace(tuple(labels), (1.0 / n,) * n)


def _same_space(a: OutcomeSpace, b: OutcomeSpace) -> None:
    if a is not b and a != b:
        raise SpaceMismatch("events belong to different outcome spaces")


def pr(space: OutcomeSpace, S: Event) -> float:
    """Sum of the point probabilities of the outcomes in ``S``."""
    _same_space(space, S.space)
    return math.fsum(space.probs[i] for i in S.members)


def intersect(T: Event, S: Event) -> Event:
    _same_space(T.space, S.space)
    return Event(S.space, T.members & S.members)


def union(T: Event, S: Event) -> Event:
    _same_space(T.space, S.space)
    return Event(S.space, T.members | S.members)


def cond_pr_classical(space: OutcomeSpace, T: Event, S: Event) -> float:
    """``Pr(T | S) = Pr(T ∩ S) / Pr(S)``."""
    _same_space(space, T.space)
    _same_space(space, S.space)
    if S.is_empty():
        raise ZeroProbabilityCondition("cannot condition on the empty event")
    denom = pr(space, S)
    if denom <= 0.0:
        raise ZeroProbabilityCondition("conditioning event has probability 0")
    return pr(space, intersect(T, S)) / denom


def characteristic_vector(S: Event) -> np.ndarray:
    chi = np.zeros(S.space.n)
    chi[list(S.members)] = 1.0
    return chi


@dataclass(frozen=True)
class Partition:
    """Disjoint non-empty blocks whose union is the whole outcome space."""

    space: OutcomeSpace = field(repr=False)
    blocks: tuple[Event, ...]

    def __post_init__(self):
        blocks = tuple(self.blocks)
        object.__setattr__(self, "blocks", blocks)
        covered: set[int] = set()
        for block in blocks:
            _same_space(self.space, block.space)
            if block.is_empty():
                raise EmptyBlock("partition blocks must be non-empty")
            if covered & block.members:
                raise OverlappingBlocks(
                    f"outcomes {sorted(covered & block.members)} appear in more than one block"
                )
            covered |= block.members
        missing = set(range(self.space.n)) - covered
        if missing:
            raise IncompleteCover(f"outcomes {sorted(missing)} are not in any block")

    def __len__(self) -> int:
        return len(self.blocks)

    def block_sets(self) -> frozenset[frozenset[int]]:
        return frozenset(b.members for b in self.blocks)

    def block_of(self, i: int) -> Event:
        for block in self.blocks:
            if i in block:
                return block
        raise UnknownOutcome(f"outcome index {i} out of range")


def new_partition(space: OutcomeSpace, blocks: Iterable[Event | Iterable[int]]) -> Partition:
    events = tuple(b if isinstance(b, Event) else Event(space, frozenset(b)) for b in blocks)
    return Partition(space, events)


def discrete_partition(space: OutcomeSpace) -> Partition:
    """The all-singletons partition (top of the refinement order)."""
    return Partition(space, tuple(space.singleton(i) for i in range(space.n)))


def indiscrete_partition(space: OutcomeSpace) -> Partition:
    """The one-block partition ``{U}`` (bottom of the refinement order)."""
    return Partition(space, (space.full(),))


def refines(fine: Partition, coarse: Partition) -> bool:
    """True iff every block of ``fine`` lies inside some block of ``coarse``."""
    _same_space(fine.space, coarse.space)
    coarse_sets = [b.members for b in coarse.blocks]
    return all(any(b.members <= c for c in coarse_sets) for b in fine.blocks)
