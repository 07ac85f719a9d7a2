"""Network description, coupling models and Hamiltonian assembly.

A network is a set of sites with local dimensions, explicitly declared
two-site couplings, optional single-qubit fields, and a controlled subset.
The drift Hamiltonian is the sum of the embedded edge terms plus the
embedded field terms ``b . (X, Y, Z)``.
"""
from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from typing import Any, Hashable, Iterable, Mapping, Union

import numpy as np

from .operators import PauliPolynomial, embed_local, pauli, spin_operators

NodeId = Union[int, str]
SCHEMA_VERSION = 1


class NetworkError(ValueError):
    """Invalid network description; ``path`` locates the offending field."""

    def __init__(self, message: str, path: str = ""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


# --------------------------------------------------------------------------
# coupling models


@dataclass(frozen=True)
class Heisenberg:
    """``c (XX + YY + delta ZZ)`` on two qubits."""

    c: float = 1.0
    delta: float = 1.0
    kind = "heisenberg"


@dataclass(frozen=True)
class XX:
    """``c (XX + YY)`` on two qubits."""

    c: float = 1.0
    kind = "xx"


@dataclass(frozen=True)
class Ising:
    """``c ZZ`` on two qubits."""

    c: float = 1.0
    kind = "ising"


@dataclass(frozen=True)
class AKLT:
    """``c (A (S.S)**2 + B S.S)`` on two spin-1 sites."""

    c: float = 1.0
    A: float = 1.0 / 3.0
    B: float = 1.0
    kind = "aklt"


@dataclass(frozen=True, eq=False)
class Custom:
    """Arbitrary Hermitian two-site matrix, acting on ``H_a (x) H_b`` in edge order."""

    matrix: np.ndarray
    kind = "custom"

    def __post_init__(self):
        object.__setattr__(self, "matrix", np.array(self.matrix, dtype=complex))

    def __eq__(self, other):
        return (isinstance(other, Custom) and self.matrix.shape == other.matrix.shape
                and bool(np.array_equal(self.matrix, other.matrix)))

    def __hash__(self):
        return hash((self.matrix.shape, self.matrix.tobytes()))


CouplingModel = Union[Heisenberg, XX, Ising, AKLT, Custom]

_QUBIT_KINDS = (Heisenberg, XX, Ising)


def coupling_operator(model: CouplingModel, d_a: int = 2, d_b: int = 2) -> np.ndarray:
    """Hermitian two-site operator of ``model`` on the ``d_a * d_b`` space."""
    if isinstance(model, _QUBIT_KINDS):
        if (d_a, d_b) != (2, 2):
            raise NetworkError(f"{model.kind} coupling needs two qubits, got dims ({d_a}, {d_b})")
        xx, yy, zz = (np.kron(pauli(p), pauli(p)) for p in "XYZ")
        if isinstance(model, Heisenberg):
            return model.c * (xx + yy + model.delta * zz)
        if isinstance(model, XX):
            return model.c * (xx + yy)
        return model.c * zz
    if isinstance(model, AKLT):
        if (d_a, d_b) != (3, 3):
            raise NetworkError(f"aklt coupling needs two spin-1 sites, got dims ({d_a}, {d_b})")
        s = spin_operators(3)
        ss = sum(np.kron(op, op) for op in (s.sx, s.sy, s.sz))
        return model.c * (model.A * ss @ ss + model.B * ss)
    if isinstance(model, Custom):
        m = model.matrix
        if m.shape != (d_a * d_b, d_a * d_b):
            raise NetworkError(f"custom matrix has shape {m.shape}, expected {(d_a * d_b,) * 2}")
        if not np.allclose(m, m.conj().T, atol=1e-12):
            raise NetworkError("custom matrix is not Hermitian")
        return m.copy()
    raise TypeError(f"unknown coupling model {model!r}")


def coupling_strength(model: CouplingModel) -> float | None:
    return getattr(model, "c", None)


# --------------------------------------------------------------------------
# network


@dataclass(frozen=True)
class Edge:
    a: NodeId
    b: NodeId
    model: CouplingModel


@dataclass(frozen=True)
class Network:
    """Sites, couplings, fields and control set.

    ``nodes`` maps node id to local dimension, in the Kronecker order used
    for all global operators. ``onsite`` maps qubit node ids to a field
    vector ``(bx, by, bz)``.
    """

    nodes: Mapping[NodeId, int]
    edges: tuple[Edge, ...] = ()
    onsite: Mapping[NodeId, tuple[float, float, float]] = field(default_factory=dict)
    control_set: frozenset = frozenset()
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "nodes", dict(self.nodes))
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "onsite", {k: tuple(float(x) for x in v) for k, v in dict(self.onsite).items()})
        object.__setattr__(self, "control_set", frozenset(self.control_set))
        validate(self)

    @property
    def node_ids(self) -> list[NodeId]:
        return list(self.nodes)

    @property
    def dims(self) -> list[int]:
        return list(self.nodes.values())

    @property
    def hilbert_dim(self) -> int:
        return int(np.prod(self.dims, dtype=int))

    @property
    def all_qubits(self) -> bool:
        return all(d == 2 for d in self.dims)

    def index(self, node: NodeId) -> int:
        return self.node_ids.index(node)

    def with_control(self, control: Iterable[NodeId]) -> "Network":
        return Network(self.nodes, self.edges, self.onsite, frozenset(control), self.name)


def validate(net: Network) -> None:
    ids = list(net.nodes)
    kinds = {type(i) for i in ids}
    if kinds - {int, str} or len(kinds) > 1:
        raise NetworkError("node ids must be all integers or all strings", "nodes")
    for i, (node, d) in enumerate(net.nodes.items()):
        if not isinstance(d, (int, np.integer)) or isinstance(d, bool) or d < 2:
            raise NetworkError(f"local dimension must be an integer >= 2, got {d!r}", f"nodes[{i}].dim")
    seen = set()
    for i, e in enumerate(net.edges):
        path = f"edges[{i}]"
        for end in (e.a, e.b):
            if end not in net.nodes:
                raise NetworkError(f"unknown node {end!r}", path)
        if e.a == e.b:
            raise NetworkError(f"self-loop on node {e.a!r}", path)
        pair = frozenset((e.a, e.b))
        if pair in seen:
            raise NetworkError(f"duplicate edge ({e.a!r}, {e.b!r})", path)
        seen.add(pair)
        c = coupling_strength(e.model)
        if c is not None and c == 0:
            raise NetworkError("coupling constant c must be nonzero", path + ".coupling.c")
        try:
            h = coupling_operator(e.model, net.nodes[e.a], net.nodes[e.b])
        except NetworkError as err:
            raise NetworkError(str(err), path + ".coupling") from None
        if not np.any(h):
            raise NetworkError("coupling operator is zero", path + ".coupling")
    for node, b in net.onsite.items():
        path = f"onsite[{node!r}]"
        if node not in net.nodes:
            raise NetworkError(f"unknown node {node!r}", path)
        if net.nodes[node] != 2:
            raise NetworkError("onsite fields are only supported on qubit sites", path)
        if len(b) != 3:
            raise NetworkError("field must have three components (bx, by, bz)", path)
    for node in net.control_set:
        if node not in net.nodes:
            raise NetworkError(f"unknown node {node!r}", "control_set")


def graph_of(net: Network) -> dict[NodeId, set[NodeId]]:
    """Undirected adjacency of the coupling graph; fields never add edges."""
    adj: dict[NodeId, set[NodeId]] = {n: set() for n in net.nodes}
    for e in net.edges:
        adj[e.a].add(e.b)
        adj[e.b].add(e.a)
    return adj


def edge_operator(net: Network, edge: Edge) -> np.ndarray:
    h = coupling_operator(edge.model, net.nodes[edge.a], net.nodes[edge.b])
    return embed_local(h, [net.index(edge.a), net.index(edge.b)], net.dims)


def assemble_hamiltonian(net: Network) -> np.ndarray:
    """Dense Hermitian drift Hamiltonian over all sites."""
    dims = net.dims
    dim = net.hilbert_dim
    h = np.zeros((dim, dim), dtype=complex)
    for e in net.edges:
        h += edge_operator(net, e)
    for node, b in net.onsite.items():
        local = sum(bi * pauli(p) for bi, p in zip(b, "XYZ"))
        h += embed_local(local, [net.index(node)], dims)
    return h


def assemble_pauli(net: Network) -> PauliPolynomial:
    """The drift as the polynomial ``i H`` (traceless part) for all-qubit networks."""
    if not net.all_qubits:
        raise NetworkError("Pauli representation requires every site to be a qubit")
    n = len(net.nodes)
    terms: dict[tuple, float] = {}

    def add(string, c):
        s = tuple(sorted(string))
        terms[s] = terms.get(s, 0.0) + c

    for e in net.edges:
        a, b = net.index(e.a), net.index(e.b)
        m = e.model
        if isinstance(m, (Heisenberg, XX)):
            add([(a, "X"), (b, "X")], m.c)
            add([(a, "Y"), (b, "Y")], m.c)
            if isinstance(m, Heisenberg):
                add([(a, "Z"), (b, "Z")], m.c * m.delta)
        elif isinstance(m, Ising):
            add([(a, "Z"), (b, "Z")], m.c)
        else:
            # generic two-qubit matrix: decompose on the edge, then relabel sites
            h = coupling_operator(m, 2, 2)
            local = PauliPolynomial.from_dense(1j * (h - np.trace(h) / 4 * np.eye(4)), 2)
            for s, c in local.terms.items():
                add([((a, b)[site], letter) for site, letter in s], c)
    for node, bvec in net.onsite.items():
        i = net.index(node)
        for bi, p in zip(bvec, "XYZ"):
            add([(i, p)], bi)
    return PauliPolynomial({s: c for s, c in terms.items() if c != 0.0}, n)


# --------------------------------------------------------------------------
# document format

_TOP_KEYS = {"schema_version", "name", "nodes", "edges", "onsite", "control_set"}
_MODEL_KEYS = {
    "heisenberg": ({"kind", "c", "delta"}, {"kind", "c", "delta"}),
    "xx": ({"kind", "c"}, {"kind", "c"}),
    "ising": ({"kind", "c"}, {"kind", "c"}),
    "aklt": ({"kind", "c", "A", "B"}, {"kind", "c", "A", "B"}),
    "custom": ({"kind", "matrix_re", "matrix_im"}, {"kind", "matrix_re"}),
}


def _require_keys(obj: Any, allowed: set, required: set, path: str) -> None:
    if not isinstance(obj, dict):
        raise NetworkError(f"expected an object, got {type(obj).__name__}", path)
    unknown = set(obj) - allowed
    if unknown:
        raise NetworkError(f"unknown field(s) {sorted(unknown)}", path)
    missing = required - set(obj)
    if missing:
        raise NetworkError(f"missing field(s) {sorted(missing)}", path)


def _number(x: Any, path: str) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise NetworkError(f"expected a number, got {x!r}", path)
    return float(x)


def model_from_dict(obj: Any, path: str = "coupling") -> CouplingModel:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise NetworkError("coupling must be an object with a 'kind'", path)
    kind = obj["kind"]
    if kind not in _MODEL_KEYS:
        raise NetworkError(f"unknown coupling kind {kind!r}", path + ".kind")
    allowed, required = _MODEL_KEYS[kind]
    _require_keys(obj, allowed, required, path)
    params = {k: _number(v, f"{path}.{k}") for k, v in obj.items() if k not in ("kind", "matrix_re", "matrix_im")}
    if kind == "heisenberg":
        return Heisenberg(**params)
    if kind == "xx":
        return XX(**params)
    if kind == "ising":
        return Ising(**params)
    if kind == "aklt":
        return AKLT(**params)
    try:
        re = np.array(obj["matrix_re"], dtype=float)
        im = np.array(obj.get("matrix_im", np.zeros_like(re)), dtype=float)
    except (TypeError, ValueError):
        raise NetworkError("matrix entries must be numbers", path) from None
    if re.ndim != 2 or re.shape != im.shape:
        raise NetworkError("matrix_re/matrix_im must be equal-shape 2-D arrays", path)
    return Custom(re + 1j * im)


def model_to_dict(model: CouplingModel) -> dict:
    if isinstance(model, Custom):
        out = {"kind": "custom", "matrix_re": model.matrix.real.tolist()}
        if np.any(model.matrix.imag):
            out["matrix_im"] = model.matrix.imag.tolist()
        return out
    out = {"kind": model.kind}
    out.update(dataclasses.asdict(model))
    return out


def _node_id(x: Any, path: str) -> NodeId:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise NetworkError(f"node id must be an integer or string, got {x!r}", path)
    return x


def network_from_dict(doc: Any) -> Network:
    """Build and validate a :class:`Network` from a parsed document."""
    _require_keys(doc, _TOP_KEYS, {"nodes"}, "")
    version = doc.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise NetworkError(f"unsupported schema_version {version!r}", "schema_version")
    if not isinstance(doc["nodes"], list) or not doc["nodes"]:
        raise NetworkError("expected a nonempty list", "nodes")
    nodes: dict[NodeId, int] = {}
    for i, n in enumerate(doc["nodes"]):
        path = f"nodes[{i}]"
        _require_keys(n, {"id", "dim"}, {"id"}, path)
        nid = _node_id(n["id"], path + ".id")
        if nid in nodes:
            raise NetworkError(f"duplicate node id {nid!r}", path + ".id")
        dim = n.get("dim", 2)
        if isinstance(dim, bool) or not isinstance(dim, int):
            raise NetworkError(f"dim must be an integer, got {dim!r}", path + ".dim")
        nodes[nid] = dim
    edges = []
    for i, e in enumerate(doc.get("edges", [])):
        path = f"edges[{i}]"
        _require_keys(e, {"a", "b", "coupling"}, {"a", "b", "coupling"}, path)
        edges.append(Edge(_node_id(e["a"], path + ".a"), _node_id(e["b"], path + ".b"),
                          model_from_dict(e["coupling"], path + ".coupling")))
    onsite = {}
    for i, f in enumerate(doc.get("onsite", [])):
        path = f"onsite[{i}]"
        _require_keys(f, {"node", "field"}, {"node", "field"}, path)
        node = _node_id(f["node"], path + ".node")
        if node in onsite:
            raise NetworkError(f"duplicate field on node {node!r}", path + ".node")
        vec = f["field"]
        if not isinstance(vec, list) or len(vec) != 3:
            raise NetworkError("field must be a list [bx, by, bz]", path + ".field")
        onsite[node] = tuple(_number(x, f"{path}.field[{j}]") for j, x in enumerate(vec))
    control = doc.get("control_set", [])
    if not isinstance(control, list):
        raise NetworkError("expected a list of node ids", "control_set")
    control = [_node_id(c, f"control_set[{j}]") for j, c in enumerate(control)]
    name = doc.get("name", "")
    if not isinstance(name, str):
        raise NetworkError("expected a string", "name")
    return Network(nodes, tuple(edges), onsite, frozenset(control), name)


def network_to_dict(net: Network) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "name": net.name,
        "nodes": [{"id": n, "dim": d} for n, d in net.nodes.items()],
        "edges": [{"a": e.a, "b": e.b, "coupling": model_to_dict(e.model)} for e in net.edges],
        "onsite": [{"node": n, "field": list(b)} for n, b in net.onsite.items()],
        "control_set": sorted(net.control_set),
    }


def parse_network(document: str) -> Network:
    """Parse a JSON network document."""
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as err:
        raise NetworkError(f"malformed JSON: {err}") from None
    return network_from_dict(doc)


def dump_network(net: Network) -> str:
    return json.dumps(network_to_dict(net), indent=2)


# --------------------------------------------------------------------------
# common topologies


def chain(n: int, model: CouplingModel | Iterable[CouplingModel], control: Iterable[Hashable] = (1,),
          dim: int = 2, onsite_field: tuple[float, float, float] | None = None, name: str = "") -> Network:
    """Open chain with nodes ``1..n``; ``model`` may be one model or one per bond."""
    models = [model] * (n - 1) if not isinstance(model, (list, tuple)) else list(model)
    if len(models) != n - 1:
        raise ValueError(f"need {n - 1} bond models, got {len(models)}")
    nodes = {i: dim for i in range(1, n + 1)}
    edges = tuple(Edge(i, i + 1, m) for i, m in zip(range(1, n), models))
    onsite = {i: onsite_field for i in nodes} if onsite_field is not None else {}
    return Network(nodes, edges, onsite, frozenset(control), name or f"chain-{n}")


def star(n_leaves: int, model: CouplingModel, control: Iterable[Hashable] = (1,),
         dim: int = 2, name: str = "") -> Network:
    """Star with center ``0`` and leaves ``1..n_leaves``."""
    nodes = {i: dim for i in range(n_leaves + 1)}
    edges = tuple(Edge(0, i, model) for i in range(1, n_leaves + 1))
    return Network(nodes, edges, {}, frozenset(control), name or f"star-{n_leaves + 1}")
