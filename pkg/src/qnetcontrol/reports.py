"""Structured (JSON) and plain-text rendering of reports.

Every structured document carries ``schema_version`` and a ``type`` tag;
``from_dict(to_dict(x)) == x`` for all report types.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .closure import ClosureResult
from .control import ControllabilityReport, DirectVerdict, EdgePropagation, SufficientVerdict
from .infection import InfectionCertificate, InfectionOutcome
from .propagation import PropagationReport

SCHEMA_VERSION = "1.0"


@dataclass(frozen=True)
class ClosureSummary:
    """A :class:`ClosureResult` without its basis, as reported by the CLI."""

    network: str
    control_set: tuple
    dim: int
    target_dim: int
    rounds: int
    saturated: bool
    max_residual: float
    representation: str
    tol: float
    cap: int

    @classmethod
    def from_result(cls, res: ClosureResult, network: str, control_set, cap: int) -> "ClosureSummary":
        return cls(network, tuple(sorted(control_set)), res.dim, res.target_dim, res.rounds,
                   res.saturated, res.max_residual, res.representation, res.tol, cap)


@dataclass(frozen=True)
class PropagationEntry:
    """One propagation run: a coupling (as its document form) on given dims."""

    label: str
    model: dict
    d_n: int
    d_m: int
    report: PropagationReport
    tol: float


@dataclass(frozen=True)
class Figure3Row:
    label: str
    description: str
    source: str
    expected_ac: bool
    expected_infection: bool
    computed_ac: bool | None
    computed_infection: bool
    closure_dim: int | None
    target_dim: int
    direct_verdict: str

    @property
    def matches(self) -> bool:
        return self.computed_ac == self.expected_ac and self.computed_infection == self.expected_infection


@dataclass(frozen=True)
class Figure3Table:
    rows: tuple[Figure3Row, ...]
    tol: float
    cap: int
    representation: str
    rc_column: str = "out of scope"

    @property
    def all_match(self) -> bool:
        return all(r.matches for r in self.rows)


@dataclass(frozen=True)
class PropagationTable:
    entries: tuple[PropagationEntry, ...] = field(default_factory=tuple)


# --------------------------------------------------------------------------
# to / from dict


def _ids(xs) -> list:
    return sorted(xs, key=lambda x: (type(x).__name__, x))


def _outcome_to(o: InfectionOutcome) -> dict:
    out = {"infecting": o.infecting, "stuck_set": _ids(o.stuck_set), "certificate": None}
    if o.certificate is not None:
        out["certificate"] = {"seed": _ids(o.certificate.seed),
                              "steps": [list(s) for s in o.certificate.steps]}
    return out


def _outcome_from(d: dict) -> InfectionOutcome:
    cert = d.get("certificate")
    if cert is not None:
        cert = InfectionCertificate(frozenset(cert["seed"]), tuple(tuple(s) for s in cert["steps"]))
    return InfectionOutcome(d["infecting"], frozenset(d["stuck_set"]), cert)


def _prop_to(p: PropagationReport) -> dict:
    return {"propagating": p.propagating, "closure_dim": p.closure_dim, "target_dim": p.target_dim,
            "basis_norm_residual": p.basis_norm_residual, "side": p.side}


def _prop_from(d: dict) -> PropagationReport:
    return PropagationReport(d["propagating"], d["closure_dim"], d["target_dim"],
                             d["basis_norm_residual"], d["side"])


def to_dict(obj: Any) -> dict:
    if isinstance(obj, InfectionOutcome):
        body = {"type": "infection", **_outcome_to(obj)}
    elif isinstance(obj, PropagationReport):
        body = {"type": "propagation", **_prop_to(obj)}
    elif isinstance(obj, PropagationTable):
        body = {"type": "propagation_table", "entries": [
            {"label": e.label, "model": e.model, "d_n": e.d_n, "d_m": e.d_m, "tol": e.tol,
             "report": _prop_to(e.report)} for e in obj.entries]}
    elif isinstance(obj, ClosureSummary):
        body = {"type": "closure", **{k: getattr(obj, k) for k in ClosureSummary.__dataclass_fields__}}
        body["control_set"] = list(obj.control_set)
    elif isinstance(obj, ControllabilityReport):
        body = {
            "type": "controllability",
            "network": obj.network,
            "control_set": list(obj.control_set),
            "tol": obj.tol,
            "cap": obj.cap,
            "representation": obj.representation,
            "direct_verdict": obj.direct_verdict.value if obj.direct_verdict else None,
            "closure_dim": obj.closure_dim,
            "target_dim": obj.target_dim,
            "closure_rounds": obj.closure_rounds,
            "max_residual": obj.max_residual,
            "sufficient_verdict": obj.sufficient_verdict.value if obj.sufficient_verdict else None,
            "infection": _outcome_to(obj.infection) if obj.infection else None,
            "per_edge_propagation": [
                {"a": p.a, "b": p.b, "forcing": p.forcing, "report": _prop_to(p.report)}
                for p in obj.per_edge_propagation],
            "notes": list(obj.notes),
        }
    elif isinstance(obj, Figure3Table):
        body = {"type": "figure3", "tol": obj.tol, "cap": obj.cap, "representation": obj.representation,
                "rc_column": obj.rc_column,
                "rows": [{k: getattr(r, k) for k in Figure3Row.__dataclass_fields__} for r in obj.rows]}
    else:
        raise TypeError(f"no structured form for {type(obj).__name__}")
    return {"schema_version": SCHEMA_VERSION, **body}


def from_dict(d: dict) -> Any:
    if d.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema_version {d.get('schema_version')!r}")
    kind = d.get("type")
    if kind == "infection":
        return _outcome_from(d)
    if kind == "propagation":
        return _prop_from(d)
    if kind == "propagation_table":
        return PropagationTable(tuple(
            PropagationEntry(e["label"], e["model"], e["d_n"], e["d_m"], _prop_from(e["report"]), e["tol"])
            for e in d["entries"]))
    if kind == "closure":
        fields = {k: d[k] for k in ClosureSummary.__dataclass_fields__}
        fields["control_set"] = tuple(fields["control_set"])
        return ClosureSummary(**fields)
    if kind == "controllability":
        return ControllabilityReport(
            network=d["network"],
            control_set=tuple(d["control_set"]),
            tol=d["tol"],
            cap=d["cap"],
            representation=d["representation"],
            direct_verdict=DirectVerdict(d["direct_verdict"]) if d["direct_verdict"] else None,
            closure_dim=d["closure_dim"],
            target_dim=d["target_dim"],
            closure_rounds=d["closure_rounds"],
            max_residual=d["max_residual"],
            sufficient_verdict=SufficientVerdict(d["sufficient_verdict"]) if d["sufficient_verdict"] else None,
            infection=_outcome_from(d["infection"]) if d["infection"] else None,
            per_edge_propagation=[EdgePropagation(p["a"], p["b"], _prop_from(p["report"]), p["forcing"])
                                  for p in d["per_edge_propagation"]],
            notes=list(d["notes"]),
        )
    if kind == "figure3":
        return Figure3Table(tuple(Figure3Row(**r) for r in d["rows"]), d["tol"], d["cap"],
                            d["representation"], d["rc_column"])
    raise ValueError(f"unknown report type {kind!r}")


def dumps(obj: Any) -> str:
    return json.dumps(to_dict(obj), indent=2)


def loads(text: str) -> Any:
    return from_dict(json.loads(text))


# --------------------------------------------------------------------------
# text


def _fmt_set(xs) -> str:
    return "{" + ", ".join(str(x) for x in _ids(xs)) + "}"


def _yes(b) -> str:
    return "n/a" if b is None else ("yes" if b else "no")


def render_infection(o: InfectionOutcome) -> str:
    lines = [f"infecting: {_yes(o.infecting)}"]
    if o.certificate is not None:
        lines.append(f"seed: {_fmt_set(o.certificate.seed)}")
        lines += [f"  step {k + 1}: {n} -> {m}" for k, (n, m) in enumerate(o.certificate.steps)]
    else:
        lines.append(f"stuck at: {_fmt_set(o.stuck_set)}")
    return "\n".join(lines)


def render_propagation(p: PropagationReport, label: str = "") -> str:
    head = f"{label}: " if label else ""
    verdict = "propagating" if p.propagating else "not propagating"
    return (f"{head}{verdict} (dim {p.closure_dim}/{p.target_dim}, side {p.side}, "
            f"max rejected residual {p.basis_norm_residual:.1e})")


def render_controllability(r: ControllabilityReport) -> str:
    lines = []
    name = r.network or "network"
    lines.append(f"{name}, C={_fmt_set(r.control_set)}")
    if r.sufficient_verdict is not None:
        direct = ""
        if r.direct_verdict is not None:
            dims = f" (dim {r.closure_dim}/{r.target_dim})" if r.closure_dim is not None else ""
            direct = f"; direct: {r.direct_verdict.value}{dims}"
        lines.append(f"{r.sufficient_verdict.value}{direct}")
    elif r.direct_verdict is not None:
        lines.append(f"direct: {r.direct_verdict.value} (dim {r.closure_dim}/{r.target_dim})")
    if r.infection is not None:
        lines.append("graph infection:")
        lines += ["  " + ln for ln in render_infection(r.infection).splitlines()]
    if r.per_edge_propagation:
        lines.append("edge propagation:")
        for p in r.per_edge_propagation:
            mark = " [forcing]" if p.forcing else ""
            lines.append("  " + render_propagation(p.report, f"{p.source}->{p.b if p.source == p.a else p.a}") + mark)
    for note in r.notes:
        lines.append(f"note: {note}")
    lines.append(f"tol={r.tol:g} cap={r.cap} representation={r.representation or 'n/a'}")
    return "\n".join(lines)


def render_closure(s: ClosureSummary) -> str:
    return (f"{s.network or 'network'}, C={_fmt_set(s.control_set)}: closure dim {s.dim}/{s.target_dim}, "
            f"rounds {s.rounds}, saturated {_yes(s.saturated)}, max rejected residual {s.max_residual:.1e}\n"
            f"tol={s.tol:g} cap={s.cap} representation={s.representation}")


def render_figure3(t: Figure3Table) -> str:
    header = ["network", "AC exp", "AC got", "infect exp", "infect got", "RC", "dim", "source", "match"]
    rows = [[r.label, _yes(r.expected_ac), _yes(r.computed_ac), _yes(r.expected_infection),
             _yes(r.computed_infection), t.rc_column,
             f"{r.closure_dim}/{r.target_dim}" if r.closure_dim is not None else r.direct_verdict,
             r.source, "ok" if r.matches else "MISMATCH"] for r in t.rows]
    widths = [max(len(str(x)) for x in col) for col in zip(header, *rows)]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    lines = [fmt.format(*header), fmt.format(*["-" * w for w in widths])]
    lines += [fmt.format(*r) for r in rows]
    lines.append(f"tol={t.tol:g} cap={t.cap} representation={t.representation}")
    return "\n".join(lines)


def render_propagation_table(t: PropagationTable) -> str:
    return "\n".join(render_propagation(e.report, e.label) for e in t.entries)


def render(obj: Any) -> str:
    if isinstance(obj, InfectionOutcome):
        return render_infection(obj)
    if isinstance(obj, PropagationReport):
        return render_propagation(obj)
    if isinstance(obj, PropagationTable):
        return render_propagation_table(obj)
    if isinstance(obj, ClosureSummary):
        return render_closure(obj)
    if isinstance(obj, ControllabilityReport):
        return render_controllability(obj)
    if isinstance(obj, Figure3Table):
        return render_figure3(obj)
    raise TypeError(f"no text form for {type(obj).__name__}")
