"""Algebraic controllability of quantum spin networks from a subset of sites."""
from .closure import ClosureResult, IndeterminateError, lie_closure
from .control import (
    CapacityError,
    ControllabilityReport,
    DirectVerdict,
    SufficientVerdict,
    TheoremViolation,
    check,
    controllability_check,
    sufficient_criterion,
)
from .infection import InfectionCertificate, InfectionOutcome, infect, min_infecting_sets, verify_certificate
from .network import (
    AKLT,
    XX,
    Custom,
    Edge,
    Heisenberg,
    Ising,
    Network,
    NetworkError,
    assemble_hamiltonian,
    chain,
    coupling_operator,
    graph_of,
    parse_network,
    star,
)
from .operators import PauliPolynomial, PauliTerm, commutator, embed_local, hs_inner, pauli_bracket, su_basis
from .propagation import PropagationReport, propagation_check

__version__ = "0.1.0"
