import pytest

from qnetcontrol.control import check, direct_closure
from qnetcontrol.figure3 import examples, figure3_table
from qnetcontrol.infection import infect
from qnetcontrol.network import XX, Heisenberg, Ising, chain, graph_of, model_to_dict, star
from qnetcontrol.propagation import propagation_check
from qnetcontrol.reports import (
    ClosureSummary,
    PropagationEntry,
    PropagationTable,
    dumps,
    from_dict,
    loads,
    render,
    to_dict,
)


def _reports():
    heis = chain(3, Heisenberg(), control=[1])
    star_leaf = star(3, Heisenberg(), control=[1])
    out = [
        infect(graph_of(heis), {1}),
        infect(graph_of(star_leaf), {1}),
        propagation_check(XX(1.0)),
        PropagationTable((PropagationEntry("xx", model_to_dict(XX(1.0)), 2, 2, propagation_check(XX(1.0)), 1e-9),)),
        ClosureSummary.from_result(direct_closure(heis), heis.name, heis.control_set, 64),
        check(heis),
        check(star_leaf),
        check(chain(2, Ising(1.0), onsite_field=(1.0, 0.7, 0.3))),
        check(chain(3, Heisenberg(), control=[1]), direct=False),
        figure3_table(),
    ]
    return out


@pytest.mark.parametrize("report", _reports(), ids=lambda r: type(r).__name__)
def test_roundtrip(report):
    assert loads(dumps(report)) == report
    assert from_dict(to_dict(report)) == report
    assert render(report)


def test_schema_version_required():
    doc = to_dict(propagation_check(XX(1.0)))
    doc["schema_version"] = "0.1"
    with pytest.raises(ValueError):
        from_dict(doc)
    with pytest.raises(ValueError):
        from_dict({"schema_version": "1.0", "type": "nope"})


def test_unknown_object():
    with pytest.raises(TypeError):
        to_dict(object())
    with pytest.raises(TypeError):
        render(object())


def test_check_text():
    text = render(check(chain(4, Heisenberg(), control=[1])))
    assert "GuaranteedControllable; direct: Controllable (dim 255/255)" in text
    assert "tol=1e-09 cap=64 representation=pauli" in text


def test_settings_always_reported():
    net = chain(2, XX(1.0))
    summary = ClosureSummary.from_result(direct_closure(net), net.name, net.control_set, 64)
    for rep in (check(net), figure3_table(), summary):
        assert {"tol", "cap", "representation"} <= to_dict(rep).keys()


def test_figure3_rows():
    table = figure3_table()
    rows = {r.label: r for r in table.rows}
    assert rows["star-4-leaf"].computed_ac is False and rows["star-4-leaf"].computed_infection is False
    assert rows["xx-chain-2"].computed_ac is False and rows["xx-chain-2"].computed_infection is True
    assert table.all_match
    assert [e.label for e in examples()] == [r.label for r in table.rows]
    assert "out of scope" in render(table)
