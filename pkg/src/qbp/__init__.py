"""Quantum branching programs: simulation, model-to-model transpilation and degree bounds."""
from . import circuit, transpile  # noqa: F401  (circuit registers its validate/simulate hooks)
from .analysis import (
    MultilinearPoly,
    acceptance_poly_degree,
    approx_length_lower_bound,
    equivalent,
    exact_degree,
    length_lower_bound,
    multilinear_coefficients,
)
from .circuit import OracleCall, QramGate, QueryCircuit, Unitary, simulate_circuit, validate_circuit
from .model import (
    AqbpProgram,
    ClassicalBp,
    GqbpProgram,
    NqbpProgram,
    QuantumTransformation,
    ValidationReport,
    measures,
    validate,
)
from .sim import BooleanTable, accept_prob_gqbp, acceptance, run_aqbp, run_gqbp, run_nqbp, truth_table
