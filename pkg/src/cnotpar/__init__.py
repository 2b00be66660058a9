"""Three-fidelity characterization of controlled-NOT gates."""
from cnotpar.entanglement import (
    bound_from_correlations,
    bound_from_fidelities,
    concurrence_report,
    output_correlations,
    wootters_concurrence,
)
from cnotpar.evaluator import (
    CANONICAL_SETTINGS,
    BasisSetting,
    FidelityTriple,
    ProbabilityTable,
    evaluate_channel,
    measurement_plan,
    p_e_estimate,
    truth_table,
)
from cnotpar.gatezoo import (
    channel,
    cnot_unitary,
    reconstruct_from_fidelities,
    verify_expansion,
    werner_mixture,
)
from cnotpar.qcore import SuperOperator, apply, choi_of, is_cp, is_tp

__version__ = "0.1.0"
