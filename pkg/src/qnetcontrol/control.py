"""Controllability of a network from its control set.

Two independent routes:

* :func:`controllability_check` computes the Lie closure of the drift and the
  control algebra directly and compares it with su(D);
* :func:`sufficient_criterion` combines graph infection with per-edge
  propagation. It can only guarantee controllability, never refute it.

:func:`check` runs both and enforces that a guarantee is never contradicted
by the direct test.
"""
from __future__ import annotations

import dataclasses
import enum
import itertools
from dataclasses import dataclass, field

import numpy as np

from .closure import DEFAULT_TOL, ClosureResult, IndeterminateError, lie_closure
from .infection import InfectionOutcome, infect
from .network import Network, assemble_hamiltonian, assemble_pauli, graph_of
from .operators import PauliPolynomial, embed_local, joint_su_basis, su_basis, traceless_part
from .propagation import PropagationReport, propagation_check

DEFAULT_CAP = 64


class DirectVerdict(str, enum.Enum):
    CONTROLLABLE = "Controllable"
    NOT_CONTROLLABLE = "NotControllable"
    INDETERMINATE = "Indeterminate"


class SufficientVerdict(str, enum.Enum):
    GUARANTEED = "GuaranteedControllable"
    INCONCLUSIVE = "Inconclusive"
    NOT_APPLICABLE = "NotApplicable"


class CapacityError(ValueError):
    pass


class TheoremViolation(AssertionError):
    """The sufficient criterion guaranteed control but the direct test refuted it."""


@dataclass(frozen=True)
class EdgePropagation:
    a: object
    b: object
    report: PropagationReport
    forcing: bool = False

    @property
    def source(self):
        return self.a if self.report.side == "n" else self.b


@dataclass
class ControllabilityReport:
    network: str
    control_set: tuple
    tol: float
    cap: int
    representation: str = ""
    direct_verdict: DirectVerdict | None = None
    closure_dim: int | None = None
    target_dim: int | None = None
    closure_rounds: int | None = None
    max_residual: float | None = None
    sufficient_verdict: SufficientVerdict | None = None
    infection: InfectionOutcome | None = None
    per_edge_propagation: list[EdgePropagation] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)


def _require_control(net: Network) -> None:
    if not net.control_set:
        raise ValueError("control_set must be nonempty for controllability queries")


def _control_generators(net: Network, joint: bool) -> list[np.ndarray]:
    idx = sorted(net.index(c) for c in net.control_set)
    dims = net.dims
    if joint:
        return [embed_local(g, idx, dims) for g in joint_su_basis([dims[i] for i in idx])]
    return [embed_local(g, [i], dims) for i in idx for g in su_basis(dims[i])]


def control_generators(net: Network, representation: str = "dense", joint: bool = True) -> list:
    """Drift ``iH`` (traceless part) followed by the control algebra on ``C``.

    ``joint=True`` uses the full algebra of the composite control space;
    ``joint=False`` only the local algebras of the individual control sites.
    """
    _require_control(net)
    if representation == "pauli":
        drift = assemble_pauli(net)
        return ([drift] if drift.terms else []) + _pauli_controls(net, joint)
    h = traceless_part(assemble_hamiltonian(net))
    gens = [1j * h] if np.any(np.abs(h) > 0) else []
    return gens + _control_generators(net, joint)


def _pauli_controls(net: Network, joint: bool) -> list[PauliPolynomial]:
    n = len(net.nodes)
    idx = sorted(net.index(c) for c in net.control_set)
    out = []
    if joint:
        for letters in itertools.product("IXYZ", repeat=len(idx)):
            s = [(i, p) for i, p in zip(idx, letters) if p != "I"]
            if s:
                out.append(PauliPolynomial({tuple(s): 1.0}, n))
    else:
        for i in idx:
            out += [PauliPolynomial({((i, p),): 1.0}, n) for p in "XYZ"]
    return out


def _pick_representation(net: Network, representation: str) -> str:
    if representation == "auto":
        return "pauli" if net.all_qubits else "dense"
    if representation not in ("dense", "pauli"):
        raise ValueError(f"unknown representation {representation!r}")
    if representation == "pauli" and not net.all_qubits:
        raise ValueError("Pauli representation requires an all-qubit network")
    return representation


def direct_closure(net: Network, tol: float = DEFAULT_TOL, cap: int = DEFAULT_CAP,
                   representation: str = "auto", joint: bool = True) -> ClosureResult:
    _require_control(net)
    if net.hilbert_dim > cap:
        raise CapacityError(
            f"Hilbert dimension {net.hilbert_dim} exceeds cap {cap} "
            f"(closure target {net.hilbert_dim ** 2 - 1})")
    rep = _pick_representation(net, representation)
    return lie_closure(control_generators(net, rep, joint), tol=tol)


def controllability_check(net: Network, tol: float = DEFAULT_TOL, cap: int = DEFAULT_CAP,
                          representation: str = "auto", joint: bool = True) -> ControllabilityReport:
    """Direct test: does ``<iH, L(C)>`` equal su(D)?

    ``cap`` bounds the total Hilbert dimension D. Indeterminate rank decisions
    give an ``Indeterminate`` verdict instead of raising.
    """
    rep = _pick_representation(net, representation)
    report = ControllabilityReport(net.name, tuple(sorted(net.control_set)), tol, cap, rep)
    report.target_dim = net.hilbert_dim ** 2 - 1
    try:
        res = direct_closure(net, tol, cap, rep, joint)
    except IndeterminateError as err:
        report.direct_verdict = DirectVerdict.INDETERMINATE
        report.max_residual = err.residual
        report.notes.append(str(err))
        return report
    report.closure_dim = res.dim
    report.closure_rounds = res.rounds
    report.max_residual = res.max_residual
    report.direct_verdict = (DirectVerdict.CONTROLLABLE if res.dim == report.target_dim
                             else DirectVerdict.NOT_CONTROLLABLE)
    return report


def edge_propagation(net: Network, tol: float = DEFAULT_TOL, forcing_steps=()) -> list[EdgePropagation]:
    """Propagation of every edge from both ends; results are cached per model."""
    forcing = {(n, m) for n, m in forcing_steps}
    cache: dict = {}
    out = []
    for e in net.edges:
        da, db = net.nodes[e.a], net.nodes[e.b]
        for side, src, dst in (("n", e.a, e.b), ("m", e.b, e.a)):
            key = (e.model, da, db, side)
            if key not in cache:
                cache[key] = propagation_check(e.model, da, db, tol, side)
            out.append(EdgePropagation(e.a, e.b, cache[key], (src, dst) in forcing))
    return out


def sufficient_criterion(net: Network, tol: float = DEFAULT_TOL) -> ControllabilityReport:
    """Infection of the coupling graph plus propagation along the forcing edges.

    Networks with onsite fields are outside the criterion (``NotApplicable``).
    The proof only uses propagation from each forcer ``n_k`` to ``m_k``, so
    those are the edges and sides that decide the verdict; all edges are
    still evaluated and reported.
    """
    _require_control(net)
    report = ControllabilityReport(net.name, tuple(sorted(net.control_set)), tol, 0)
    outcome = infect(graph_of(net), net.control_set)
    report.infection = outcome
    steps = outcome.certificate.steps if outcome.infecting else ()
    report.per_edge_propagation = edge_propagation(net, tol, steps)
    if net.onsite:
        report.sufficient_verdict = SufficientVerdict.NOT_APPLICABLE
        report.notes.append("onsite fields present: the criterion covers pure two-body drifts only")
        return report
    forcing_ok = all(p.report.propagating for p in report.per_edge_propagation if p.forcing)
    if outcome.infecting and forcing_ok:
        report.sufficient_verdict = SufficientVerdict.GUARANTEED
    else:
        report.sufficient_verdict = SufficientVerdict.INCONCLUSIVE
        if not outcome.infecting:
            report.notes.append("control set does not infect the graph")
        if not forcing_ok:
            report.notes.append("a forcing edge is not algebraically propagating")
    return report


def check(net: Network, tol: float = DEFAULT_TOL, cap: int = DEFAULT_CAP,
          representation: str = "auto", direct: bool = True) -> ControllabilityReport:
    """Run the sufficient criterion and (unless ``direct=False``) the direct test.

    Raises :class:`TheoremViolation` if a guaranteed network is found not
    controllable; that would indicate a numerical-rank bug.
    """
    suff = sufficient_criterion(net, tol)
    if not direct:
        suff.cap = cap
        return suff
    report = controllability_check(net, tol, cap, representation)
    merged = dataclasses.replace(
        report,
        sufficient_verdict=suff.sufficient_verdict,
        infection=suff.infection,
        per_edge_propagation=suff.per_edge_propagation,
        notes=report.notes + suff.notes,
    )
    if (merged.sufficient_verdict is SufficientVerdict.GUARANTEED
            and merged.direct_verdict is DirectVerdict.NOT_CONTROLLABLE):
        raise TheoremViolation(
            f"{net.name or 'network'}: criterion guarantees control but closure dim is "
            f"{merged.closure_dim}/{merged.target_dim}")
    return merged
