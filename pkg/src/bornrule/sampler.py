"""Seeded measurement simulation over the diagonal of a density matrix.

Randomness comes from SplitMix64 (Steele, Lea & Flood 2014; constants as in
Vigna's reference C code).  Outcome ``k`` of a generator seeded with ``x`` is
``mix(x + (k + 1) * 0x9E3779B97F4A7C15 mod 2**64)``, so blocks of draws can
be produced in one vectorised step and still match the scalar stream
bit-for-bit.  Uniform doubles are ``(u64 >> 11) * 2**-53``.

A measurement picks outcome ``i`` with probability ``rho_ii = tr[P_{u_i} rho]``
by inverse-CDF search over the diagonal in index order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BornRuleError
from .probability import Event, OutcomeSpace
from .superposition import DensityMatrix, rho_discrete, rho_superposition

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB
TO_UNIT = 2.0 ** -53

INDISTINGUISHABLE = "indistinguishable"
DISTINGUISHABLE = "distinguishable"


def _mix64(z: int) -> int:
    z = ((z ^ (z >> 30)) * MIX1) & MASK64
    z = ((z ^ (z >> 27)) * MIX2) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """SplitMix64 generator.  One instance must not be shared across workers."""

    def __init__(self, seed: int):
        self.state = int(seed) & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GAMMA) & MASK64
        return _mix64(self.state)

    def next_float(self) -> float:
        return (self.next_u64() >> 11) * TO_UNIT

    def u64_block(self, count: int) -> np.ndarray:
        """The next ``count`` outputs as a uint64 array; advances the state by ``count``."""
        steps = np.arange(1, count + 1, dtype=np.uint64)
        with np.errstate(over="ignore"):
            z = np.uint64(self.state) + steps * np.uint64(GAMMA)
            z = (z ^ (z >> np.uint64(30))) * np.uint64(MIX1)
            z = (z ^ (z >> np.uint64(27))) * np.uint64(MIX2)
            z = z ^ (z >> np.uint64(31))
        self.state = (self.state + count * GAMMA) & MASK64
        return z

    def float_block(self, count: int) -> np.ndarray:
        return (self.u64_block(count) >> np.uint64(11)).astype(np.float64) * TO_UNIT


def derive_seeds(seed: int, count: int) -> list[int]:
    """Per-shard seeds: the first ``count`` outputs of ``SplitMix64(seed)``."""
    rng = SplitMix64(seed)
    return [rng.next_u64() for _ in range(count)]


@dataclass(frozen=True)
class TrialConfig:
    seed: int
    trials: int

    def __post_init__(self):
        if not 0 <= int(self.seed) <= MASK64:
            raise BornRuleError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if int(self.trials) < 1:
            raise BornRuleError(f"trials must be >= 1, got {self.trials}")


@dataclass(frozen=True)
class EmpiricalResult:
    counts: list[int]
    frequencies: list[float]
    expected: list[float]
    max_abs_deviation: float

    @property
    def trials(self) -> int:
        return sum(self.counts)

    def as_dict(self) -> dict:
        return {
            "trials": self.trials,
            "counts": list(self.counts),
            "frequencies": list(self.frequencies),
            "expected": list(self.expected),
            "max_abs_deviation": self.max_abs_deviation,
        }


def _cdf(rho: DensityMatrix) -> tuple[np.ndarray, int]:
    diag = np.clip(rho.diagonal(), 0.0, None)
    last = int(np.flatnonzero(diag > 0.0)[-1])
    return np.cumsum(diag), last


def _pick(cdf: np.ndarray, last: int, u):
    # first index whose cumulative mass exceeds u; round-off past the end lands
    # on the last outcome that has mass
    return np.minimum(np.searchsorted(cdf, u, side="right"), last)


def measure_once(rho: DensityMatrix, rng: SplitMix64) -> int:
    cdf, last = _cdf(rho)
    return int(_pick(cdf, last, rng.next_float()))


def _tabulate(rho: DensityMatrix, counts: np.ndarray) -> EmpiricalResult:
    trials = int(counts.sum())
    freqs = counts / trials
    expected = rho.diagonal()
    return EmpiricalResult(
        counts=[int(c) for c in counts],
        frequencies=[float(f) for f in freqs],
        expected=[float(e) for e in expected],
        max_abs_deviation=float(np.max(np.abs(freqs - expected))),
    )


def _draw_counts(rho: DensityMatrix, seed: int, trials: int) -> np.ndarray:
    cdf, last = _cdf(rho)
    rng = SplitMix64(seed)
    counts = np.zeros(rho.n, dtype=np.int64)
    chunk = 1 << 20
    remaining = trials
    while remaining:
        k = min(chunk, remaining)
        counts += np.bincount(_pick(cdf, last, rng.float_block(k)), minlength=rho.n)
        remaining -= k
    return counts


def run_experiment(rho: DensityMatrix, cfg: TrialConfig, shards: int = 1) -> EmpiricalResult:
    """Tabulate ``cfg.trials`` independent measurements of ``rho``.

    With ``shards == 1`` the draws are exactly the sequence ``measure_once``
    would produce from ``SplitMix64(cfg.seed)``.  With ``shards > 1`` shard
    ``j`` gets seed ``derive_seeds(cfg.seed, shards)[j]`` and the first
    ``trials % shards`` shards take one extra trial; this is deterministic
    too, but a different stream from the unsharded run.
    """
    if shards < 1:
        raise BornRuleError(f"shards must be >= 1, got {shards}")
    if shards == 1:
        return _tabulate(rho, _draw_counts(rho, cfg.seed, cfg.trials))
    base, extra = divmod(cfg.trials, shards)
    counts = np.zeros(rho.n, dtype=np.int64)
    for j, seed in enumerate(derive_seeds(cfg.seed, shards)):
        size = base + (1 if j < extra else 0)
        if size:
            counts += _draw_counts(rho, seed, size)
    return _tabulate(rho, counts)


def deviation_bound(trials: int, sigmas: float = 4.0) -> float:
    """``sigmas`` standard deviations of a worst-case (p = 1/2) binomial frequency."""
    return sigmas * math.sqrt(0.25 / trials)


@dataclass(frozen=True)
class IndistinguishabilityReport:
    discrete: EmpiricalResult
    superposition: EmpiricalResult
    deviation_bound: float
    difference_bound: float
    max_frequency_difference: float
    verdict: str

    def as_dict(self) -> dict:
        return {
            "discrete": self.discrete.as_dict(),
            "superposition": self.superposition.as_dict(),
            "deviation_bound": self.deviation_bound,
            "difference_bound": self.difference_bound,
            "max_frequency_difference": self.max_frequency_difference,
            "verdict": self.verdict,
        }


def indistinguishability_report(
    space: OutcomeSpace, S: Event, cfg: TrialConfig, shards: int = 1
) -> IndistinguishabilityReport:
    """Measure ``rho(S)`` and ``rho(ΣS)`` with seeds ``seed`` and ``seed + 1`` and compare."""
    mixed = run_experiment(rho_discrete(space, S), cfg, shards)
    pure_cfg = TrialConfig((cfg.seed + 1) & MASK64, cfg.trials)
    pure = run_experiment(rho_superposition(space, S), pure_cfg, shards)

    dev_bound = deviation_bound(cfg.trials)
    diff_bound = deviation_bound(cfg.trials, 8.0)
    diff = float(np.max(np.abs(np.subtract(mixed.frequencies, pure.frequencies))))
    ok = (
        mixed.max_abs_deviation < dev_bound
        and pure.max_abs_deviation < dev_bound
        and diff < diff_bound
    )
    return IndistinguishabilityReport(
        mixed, pure, dev_bound, diff_bound, diff, INDISTINGUISHABLE if ok else DISTINGUISHABLE
    )
