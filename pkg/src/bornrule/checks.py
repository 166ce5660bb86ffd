"""Property checks run by ``bornrule verify``.

Each check evaluates one identity of the construction over the named events
and partitions of a space file plus randomly drawn ones, and records the
worst deviation seen.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .probability import (
    Event,
    OutcomeSpace,
    Partition,
    cond_pr_classical,
    discrete_partition,
    indiscrete_partition,
    intersect,
    new_partition,
    pr,
    refines,
    uniform_space,
)
from .superposition import (
    amplitude_vector,
    born_probability,
    incidence_matrix,
    is_pure,
    multiset_deviation,
    predicted_eigenvalues,
    prob_trace,
    product_relation,
    recover_amplitude,
    rho_discrete,
    rho_partition,
    rho_superposition,
    spectrum_of,
)

IDENTITY_TOL = 1e-12
SPECTRUM_TOL = 1e-9
RECOVERY_TOL = 1e-8


# random objects

def random_space(rng: np.random.Generator, n: int | None = None, max_n: int = 12) -> OutcomeSpace:
    """Space with ``n`` outcomes and Dirichlet(1) point masses bounded away from 0."""
    if n is None:
        n = int(rng.integers(1, max_n + 1))
    w = rng.dirichlet(np.ones(n)) + 1e-3
    return OutcomeSpace(tuple(f"u{i + 1}" for i in range(n)), tuple(w / w.sum()))


def random_event(rng: np.random.Generator, space: OutcomeSpace, nonempty: bool = True) -> Event:
    while True:
        members = frozenset(int(i) for i in np.flatnonzero(rng.random(space.n) < 0.5))
        if members or not nonempty:
            return Event(space, members)


def random_partition(rng: np.random.Generator, space: OutcomeSpace) -> Partition:
    k = int(rng.integers(1, space.n + 1))
    labels = rng.integers(0, k, size=space.n)
    blocks = [np.flatnonzero(labels == b) for b in range(k)]
    return new_partition(space, [b for b in blocks if b.size])


def coarsen(rng: np.random.Generator, pi: Partition) -> Partition:
    """Random partition that ``pi`` refines, built by merging blocks of ``pi``."""
    groups = rng.integers(0, len(pi), size=len(pi))
    merged: dict[int, set[int]] = {}
    for g, block in zip(groups, pi.blocks):
        merged.setdefault(int(g), set()).update(block.members)
    return new_partition(pi.space, list(merged.values()))


def offdiag_support(m: np.ndarray, tol: float) -> set[tuple[int, int]]:
    return {(j, k) for j, k in zip(*np.nonzero(np.abs(m) > tol)) if j != k}


@dataclass
class PropertyResult:
    name: str
    tolerance: float
    worst_deviation: float = 0.0
    checks: int = 0
    failures: int = 0
    examples: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def record(self, deviation: float, what: str = "") -> None:
        self.checks += 1
        if deviation > self.worst_deviation or math.isnan(deviation):
            self.worst_deviation = deviation
        if not deviation <= self.tolerance:
            self.failures += 1
            if len(self.examples) < 5:
                self.examples.append(f"{what}: deviation {deviation:.3e}")

    def flag(self, ok: bool, what: str = "") -> None:
        """Record a yes/no check; a failure counts as deviation 1."""
        self.record(0.0 if ok else 1.0, what)

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "worst_deviation": self.worst_deviation,
            "tolerance": self.tolerance,
            "checks": self.checks,
            "failures": self.failures,
            "examples": list(self.examples),
        }


def _name(S: Event) -> str:
    return "{" + ",".join(S.labels()) + "}"


def run_properties(
    space: OutcomeSpace,
    events: list[Event],
    partitions: list[Partition],
    *,
    trials: int = 200,
    tolerance: float = 1e-10,
    seed: int = 0,
) -> list[PropertyResult]:
    """Evaluate every property over the given objects plus ``trials`` random ones.

    ``tolerance`` is the purity threshold and the zero threshold for
    off-diagonal supports; the numeric identities use their own fixed
    tolerances.
    """
    rng = np.random.default_rng(seed)
    conds = [S for S in events if not S.is_empty()]
    conds += [random_event(rng, space) for _ in range(trials)]
    tests = list(events) + [random_event(rng, space, nonempty=False) for _ in range(trials)]
    parts = list(partitions) + [random_partition(rng, space) for _ in range(trials)]
    pairs = [(S, T) for S in conds for T in tests[:8]]
    pairs += [(conds[k], tests[k % len(tests)]) for k in range(len(conds))]

    born = PropertyResult("born_identity", IDENTITY_TOL)
    agree = PropertyResult("probability_agreement", IDENTITY_TOL)
    sharp = PropertyResult("sharpening", IDENTITY_TOL)
    purity = PropertyResult("purity_dichotomy", 0.0)
    incid = PropertyResult("incidence_identity", IDENTITY_TOL)
    spectra = PropertyResult("spectrum_claims", SPECTRUM_TOL)
    summ = PropertyResult("trace_vs_summation", IDENTITY_TOL)
    ends = PropertyResult("partition_endpoints", IDENTITY_TOL)
    mono = PropertyResult("monotone_refinement", 0.0)
    recov = PropertyResult("amplitude_recovery", RECOVERY_TOL)

    for S in conds:
        mixed = rho_discrete(space, S)
        pure = rho_superposition(space, S)
        s = amplitude_vector(space, S)
        for i in range(space.n):
            ui = space.singleton(i)
            a = born_probability(s, i)
            b = prob_trace(pure, ui)
            c = cond_pr_classical(space, ui, S)
            born.record(max(abs(a - b), abs(a - c), abs(b - c)), f"S={_name(S)} i={i}")

        purity.flag(is_pure(pure, tolerance), f"rho(Σ{_name(S)}) not pure")
        purity.flag(is_pure(mixed, tolerance) == (len(S) == 1), f"rho({_name(S)}) purity")

        flat = uniform_space(space.labels)
        Su = Event(flat, S.members)
        lhs = len(S) * rho_superposition(flat, Su).matrix
        incid.record(float(np.max(np.abs(lhs - incidence_matrix(product_relation(Su))))), _name(S))

        for rho in (mixed, pure):
            dev = multiset_deviation(spectrum_of(rho).eigenvalues, predicted_eigenvalues(rho))
            spectra.record(dev, f"{rho.kind.value} {_name(S)}")

        rec = recover_amplitude(pure)
        recov.record(float(np.max(np.abs(rec.entries - s.entries))), _name(S))

    for S, T in pairs:
        mixed = rho_discrete(space, S)
        pure = rho_superposition(space, S)
        c = cond_pr_classical(space, T, S)
        a = prob_trace(mixed, T)
        b = prob_trace(pure, T)
        agree.record(max(abs(a - c), abs(b - c), abs(a - b)), f"T={_name(T)} S={_name(S)}")
        sharp.record(abs(b - prob_trace(pure, intersect(T, S))), f"T={_name(T)} S={_name(S)}")

    rho_u = rho_discrete(space, space.full())
    for T in conds + tests:
        summ.record(abs(prob_trace(rho_u, T) - pr(space, T)), _name(T))

    for pi in parts:
        rho = rho_partition(space, pi)
        dev = multiset_deviation(spectrum_of(rho).eigenvalues, predicted_eigenvalues(rho))
        spectra.record(dev, f"partition with {len(pi)} blocks")
        coarse = coarsen(rng, pi)
        ok = refines(pi, coarse) and offdiag_support(rho.matrix, tolerance) <= offdiag_support(
            rho_partition(space, coarse).matrix, tolerance
        )
        mono.flag(ok, f"partition with {len(pi)} blocks")

    top = rho_partition(space, discrete_partition(space)).matrix
    bottom = rho_partition(space, indiscrete_partition(space)).matrix
    ends.record(float(np.max(np.abs(top - rho_discrete(space, space.full()).matrix))), "1_U")
    ends.record(float(np.max(np.abs(bottom - rho_superposition(space, space.full()).matrix))), "0_U")

    return [born, agree, sharp, purity, incid, spectra, summ, ends, mono, recov]


def eigensolver_residuals(m) -> tuple[float, float]:
    """(reconstruction, orthonormality) residuals of :func:`linalg.sym_eigen`, max-norm."""
    spec = linalg.sym_eigen(m)
    v = spec.eigenvectors
    recon = float(np.max(np.abs(spec.reconstruct() - np.asarray(m)))) if v.size else 0.0
    ortho = float(np.max(np.abs(v.T @ v - np.eye(v.shape[0])))) if v.size else 0.0
    return recon, ortho
