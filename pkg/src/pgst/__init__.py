"""Pretty good state transfer on uniformly coupled XY spin chains.

The single-excitation dynamics of an n-site chain is the continuous-time
walk exp(iAt) on the path P_n. This package classifies which n admit pretty
good end-to-end transfer, simulates the fidelity, certifies the negative
cases with integer eigenvalue relations, and answers the controllability
questions for internal vertices.
"""

from .classifier import Classification, Form, Verdict, classify, euler_phi, is_prime, theta_degree
from .control import is_controllable, walk_matrix
from .errors import (
    ConvergenceError,
    DomainError,
    InvalidInputError,
    PGSTError,
    UnsupportedSizeError,
    WitnessError,
)
from .evolution import amplitude, fidelity, fidelity_many, oracle_exponential, phase_reduced
from .relations import bound_report, dependence_witness
from .search import earliest_time, figure1_table, max_fidelity_estimate, phase_target, realize_target
from .spectrum import THETA_ZERO, PathSpectrum, path_spectrum

__version__ = "0.1.0"

__all__ = [
    "THETA_ZERO",
    "Classification",
    "ConvergenceError",
    "DomainError",
    "Form",
    "InvalidInputError",
    "PGSTError",
    "PathSpectrum",
    "UnsupportedSizeError",
    "Verdict",
    "WitnessError",
    "amplitude",
    "bound_report",
    "classify",
    "dependence_witness",
    "earliest_time",
    "euler_phi",
    "fidelity",
    "fidelity_many",
    "figure1_table",
    "is_controllable",
    "is_prime",
    "max_fidelity_estimate",
    "oracle_exponential",
    "path_spectrum",
    "phase_reduced",
    "phase_target",
    "realize_target",
    "theta_degree",
    "walk_matrix",
]
