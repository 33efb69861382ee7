"""Quantum discord of two-qubit X-states.

Closed-form endpoint regions, a safeguarded Newton search on the
one-variable reduction F(z), a brute-force measurement oracle, and the
rank-2 purification bridge between classical correlation and
entanglement of formation.
"""

from .engine import (DiscordResult, FContext, MaxResult, NewtonRun, Region,
                     analytic_max, classify_region, discord, f_derivative,
                     f_second_derivative, f_value, global_max,
                     newton_critical_point, region_conditions)
from .entanglement import (KoashiWinterReport, RankError,
                           RankTwoDecomposition, concurrence,
                           entanglement_of_formation, eof_from_concurrence,
                           koashi_winter, mu_spectrum, mu_spectrum_closed,
                           purification_marginal_ab, rank_two_classify,
                           spin_flip)
from .oracle import (ConditionalEnsemble, MeasurementPoint, OracleResult,
                     conditional_ensemble, conditional_entropy,
                     conjugate_paulis, correlation_objective,
                     measurement_direction, oracle_classical_correlation,
                     theta_circle_max)
from .sampling import (random_bell_diagonal, random_case, random_rank_two,
                       random_states)
from .states import (BlochX, PhysicalityError, XDensityMatrix, XPatternError,
                     binary_entropy, bloch_to_matrix, corner_phases,
                     marginals, matrix_to_bloch, mutual_information,
                     physicality_margins, spectrum, state_entropy, xlog2)

__version__ = "0.1.0"

__all__ = [
    "BlochX", "ConditionalEnsemble", "DiscordResult", "FContext",
    "KoashiWinterReport", "MaxResult", "MeasurementPoint", "NewtonRun",
    "OracleResult", "PhysicalityError", "RankError", "RankTwoDecomposition",
    "Region", "XDensityMatrix", "XPatternError", "analytic_max",
    "binary_entropy", "bloch_to_matrix", "classify_region",
    "concurrence", "conditional_ensemble", "conditional_entropy",
    "conjugate_paulis", "corner_phases", "correlation_objective", "discord",
    "entanglement_of_formation", "eof_from_concurrence", "f_derivative",
    "f_second_derivative", "f_value", "global_max", "koashi_winter",
    "marginals", "matrix_to_bloch", "measurement_direction", "mu_spectrum",
    "mu_spectrum_closed", "mutual_information", "newton_critical_point",
    "oracle_classical_correlation", "physicality_margins",
    "purification_marginal_ab", "random_bell_diagonal", "random_case",
    "random_rank_two", "random_states", "region_conditions", "spectrum",
    "spin_flip", "state_entropy", "theta_circle_max", "xlog2",
]
