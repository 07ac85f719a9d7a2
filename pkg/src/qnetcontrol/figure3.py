"""Built-in table of small example networks with known verdicts.

All couplings are equal (``c = 1``) and either isotropic Heisenberg or XX.
``source`` records where each expectation comes from:
``stated`` for verdicts given with the example itself, ``theorem`` for rows whose
expected verdict follows from infection plus propagation, and ``symmetry``
for rows where a permutation of equivalent sites commutes with the drift
and every control, which rules out full control.
"""
from __future__ import annotations

from dataclasses import dataclass

from .closure import DEFAULT_TOL
from .control import DEFAULT_CAP, DirectVerdict, controllability_check
from .infection import infect
from .network import Heisenberg, Network, XX, chain, graph_of, star
from .reports import Figure3Row, Figure3Table


@dataclass(frozen=True)
class Example:
    label: str
    description: str
    network: Network
    expected_ac: bool
    expected_infection: bool
    source: str


def examples() -> list[Example]:
    heis = Heisenberg(1.0, 1.0)
    return [
        Example("xx-chain-2", "XX chain of 2, C={1}", chain(2, XX(1.0), control=[1], name="xx-chain-2"),
                False, True, "stated"),
        Example("heis-chain-2", "Heisenberg chain of 2, C={1}", chain(2, heis, control=[1], name="heis-chain-2"),
                True, True, "stated"),
        Example("heis-chain-3", "Heisenberg chain of 3, C={1}", chain(3, heis, control=[1], name="heis-chain-3"),
                True, True, "stated"),
        Example("star-4-two-leaves", "Heisenberg star, center 0, C={1,2}",
                star(3, heis, control=[1, 2], name="star-4-two-leaves"), True, True, "theorem"),
        Example("star-4-leaf", "Heisenberg star, center 0, C={1}",
                star(3, heis, control=[1], name="star-4-leaf"), False, False, "stated"),
        Example("star-4-center", "Heisenberg star, center 0, C={0}",
                star(3, heis, control=[0], name="star-4-center"), False, False, "symmetry"),
    ]


def figure3_table(tol: float = DEFAULT_TOL, cap: int = DEFAULT_CAP,
                  representation: str = "auto") -> Figure3Table:
    rows = []
    reps = set()
    for ex in examples():
        rep = controllability_check(ex.network, tol, cap, representation)
        reps.add(rep.representation)
        ac = None if rep.direct_verdict is DirectVerdict.INDETERMINATE else (
            rep.direct_verdict is DirectVerdict.CONTROLLABLE)
        inf = infect(graph_of(ex.network), ex.network.control_set).infecting
        rows.append(Figure3Row(ex.label, ex.description, ex.source, ex.expected_ac, ex.expected_infection,
                               ac, inf, rep.closure_dim, rep.target_dim, rep.direct_verdict.value))
    return Figure3Table(tuple(rows), tol, cap, "/".join(sorted(reps)))
