"""Graph infection (zero forcing).

An infected node infects a healthy neighbor iff that neighbor is its only
healthy one. A seed set is *infecting* when the rule eventually reaches
every node. Graphs are adjacency mappings ``{node: iterable of neighbors}``;
``networkx`` graphs are accepted as well.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping

MAX_EXHAUSTIVE_NODES = 24


class GraphTooLargeError(ValueError):
    pass


@dataclass(frozen=True)
class InfectionCertificate:
    """Seed set plus ordered ``(forcer, forced)`` steps."""

    seed: frozenset
    steps: tuple[tuple[Hashable, Hashable], ...] = ()

    def infected(self) -> frozenset:
        return self.seed | {m for _, m in self.steps}


@dataclass(frozen=True)
class InfectionOutcome:
    infecting: bool
    stuck_set: frozenset
    certificate: InfectionCertificate | None = field(default=None)


def adjacency(graph) -> dict[Hashable, frozenset]:
    """Normalize ``graph`` to a symmetric ``{node: frozenset(neighbors)}`` mapping."""
    if hasattr(graph, "adj"):
        graph = graph.adj
    adj: dict[Hashable, set] = {n: set() for n in graph}
    for n, nbrs in graph.items():
        for m in nbrs:
            if m == n:
                raise ValueError(f"self-loop on node {n!r}")
            if m not in adj:
                raise KeyError(f"neighbor {m!r} of {n!r} is not a node")
            adj[n].add(m)
            adj[m].add(n)
    return {n: frozenset(v) for n, v in adj.items()}


def _sort_key(x):
    # ids within one graph share a type; the type name keeps mixed graphs ordered
    return (type(x).__name__, x)


def available_forces(adj: Mapping, infected: set) -> list[tuple]:
    """All ``(forcer, forced)`` pairs allowed by the rule for the current set."""
    out = []
    for n in infected:
        healthy = [m for m in adj[n] if m not in infected]
        if len(healthy) == 1:
            out.append((n, healthy[0]))
    return out


def infect(graph, seed: Iterable[Hashable], rng: random.Random | None = None) -> InfectionOutcome:
    """Run the forcing rule from ``seed`` to its fixpoint.

    Forces are applied one at a time, smallest ``(forcer, forced)`` first.
    Passing ``rng`` picks a random available force instead; the final set
    does not depend on the order.
    """
    adj = adjacency(graph)
    seed = frozenset(seed)
    unknown = seed - adj.keys()
    if unknown:
        raise KeyError(f"seed contains unknown node(s) {sorted(unknown, key=_sort_key)}")
    infected = set(seed)
    steps = []
    while True:
        forces = available_forces(adj, infected)
        if not forces:
            break
        if rng is None:
            n, m = min(forces, key=lambda nm: (_sort_key(nm[0]), _sort_key(nm[1])))
        else:
            forces.sort(key=lambda nm: (_sort_key(nm[0]), _sort_key(nm[1])))
            n, m = rng.choice(forces)
        infected.add(m)
        steps.append((n, m))
    done = len(infected) == len(adj) and (bool(seed) or not adj)
    cert = InfectionCertificate(seed, tuple(steps)) if done else None
    return InfectionOutcome(done, frozenset(infected), cert)


def verify_certificate(graph, cert: InfectionCertificate) -> bool:
    """Check every step against the prefix set and that the steps end at all nodes."""
    try:
        adj = adjacency(graph)
        current = set(cert.seed)
        if not current <= adj.keys() or (adj and not current):
            return False
        for n, m in cert.steps:
            if n not in current or m in current:
                return False
            if {x for x in adj[n] if x not in current} != {m}:
                return False
            current.add(m)
        return current == set(adj)
    except (TypeError, ValueError, KeyError):
        return False


def is_infecting(graph, seed: Iterable[Hashable]) -> bool:
    return infect(graph, seed).infecting


def min_infecting_sets(graph, max_size: int) -> list[frozenset]:
    """All inclusion-minimal infecting sets with at most ``max_size`` nodes.

    Exhaustive over subsets in order of size, so only usable for small graphs.
    """
    adj = adjacency(graph)
    if len(adj) > MAX_EXHAUSTIVE_NODES:
        raise GraphTooLargeError(f"exhaustive search limited to {MAX_EXHAUSTIVE_NODES} nodes, got {len(adj)}")
    nodes = sorted(adj, key=_sort_key)
    found: list[frozenset] = []
    for size in range(1, min(max_size, len(nodes)) + 1):
        for combo in itertools.combinations(nodes, size):
            s = frozenset(combo)
            # by monotonicity a non-minimal set contains an earlier minimal one
            if any(f <= s for f in found):
                continue
            if infect(adj, s).infecting:
                found.append(s)
    return found
