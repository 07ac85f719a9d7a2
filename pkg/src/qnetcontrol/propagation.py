"""Two-site propagation test.

A coupling ``H`` between sites ``n`` and ``m`` is propagating from ``n`` when
the local algebra su(d_n) on ``n`` together with the brackets
``[iH, su(d_n)]`` generates all of su(d_n d_m).
"""
from __future__ import annotations

from dataclasses import dataclass

from .closure import DEFAULT_TOL, lie_closure
from .network import CouplingModel, coupling_operator
from .operators import commutator, embed_local, su_basis, traceless_part


@dataclass(frozen=True)
class PropagationReport:
    propagating: bool
    closure_dim: int
    target_dim: int
    basis_norm_residual: float
    side: str = "n"


def propagation_generators(model: CouplingModel, d_n: int, d_m: int, side: str = "n") -> list:
    h = traceless_part(coupling_operator(model, d_n, d_m))
    if side == "n":
        local = [embed_local(g, [0], [d_n, d_m]) for g in su_basis(d_n)]
    elif side == "m":
        local = [embed_local(g, [1], [d_n, d_m]) for g in su_basis(d_m)]
    else:
        raise ValueError(f"side must be 'n' or 'm', got {side!r}")
    return local + [commutator(1j * h, g) for g in local]


def propagation_check(model: CouplingModel, d_n: int = 2, d_m: int = 2,
                      tol: float = DEFAULT_TOL, side: str = "n") -> PropagationReport:
    """Decide propagation of ``model`` from site ``n`` (or ``m`` with ``side='m'``).

    Raises :class:`~qnetcontrol.closure.IndeterminateError` rather than
    returning a verdict when a rank decision is ambiguous at ``tol``.
    """
    target = (d_n * d_m) ** 2 - 1
    res = lie_closure(propagation_generators(model, d_n, d_m, side), target, tol)
    return PropagationReport(res.dim == target, res.dim, target, res.max_residual, side)
