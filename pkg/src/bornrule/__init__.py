"""Finite probability with superposition events and their density matrices."""

from .errors import *  # noqa: F401,F403
from .linalg import Spectrum, inner, mat_mul, outer, sym_eigen, trace
from .probability import (
    Event,
    OutcomeSpace,
    Partition,
    characteristic_vector,
    cond_pr_classical,
    discrete_partition,
    indiscrete_partition,
    intersect,
    new_outcome_space,
    new_partition,
    pr,
    refines,
    uniform_space,
)
from .sampler import (
    EmpiricalResult,
    SplitMix64,
    TrialConfig,
    indistinguishability_report,
    measure_once,
    run_experiment,
)
from .superposition import (
    AmplitudeVector,
    BinaryRelation,
    DensityMatrix,
    Kind,
    amplitude_vector,
    born_probability,
    diagonal_relation,
    incidence_matrix,
    is_pure,
    prob_trace,
    product_relation,
    projection,
    recover_amplitude,
    rho_discrete,
    rho_partition,
    rho_superposition,
    spectrum_of,
)

__version__ = "0.1.0"
