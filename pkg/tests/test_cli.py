import json
import subprocess
import sys
from pathlib import Path

import pytest

from qnetcontrol.cli import (
    EXIT_CAPACITY,
    EXIT_ERROR,
    EXIT_INDETERMINATE,
    EXIT_MISMATCH,
    RunConfig,
    main,
    run,
)
from qnetcontrol.network import XX, Heisenberg, dump_network, chain, star
from qnetcontrol.reports import loads

NETWORKS = Path(__file__).resolve().parent.parent / "networks"


@pytest.fixture
def write(tmp_path):
    def _write(net, name="net.json"):
        path = tmp_path / name
        path.write_text(dump_network(net))
        return str(path)
    return _write


def test_check_heisenberg_chain4(write, capsys):
    assert main(["check", write(chain(4, Heisenberg(), control=[1]))]) == 0
    assert "GuaranteedControllable; direct: Controllable (dim 255/255)" in capsys.readouterr().out


def test_check_structured(write, capsys):
    assert main(["check", write(chain(2, XX(1.0))), "--format", "json"]) == 0
    rep = loads(capsys.readouterr().out)
    assert rep.direct_verdict.value == "NotControllable" and rep.cap == 64


def test_seed_set_override(write, capsys):
    path = write(star(3, Heisenberg(), control=[1]))
    assert main(["infect", path]) == 0
    assert "infecting: no" in capsys.readouterr().out
    assert main(["infect", path, "--seed-set", "1,2"]) == 0
    assert "infecting: yes" in capsys.readouterr().out


def test_closure_command(write, capsys):
    assert main(["closure", write(chain(3, Heisenberg())), "--representation", "dense"]) == 0
    out = capsys.readouterr().out
    assert "closure dim 63/63" in out and "representation=dense" in out


def test_propagate_sweep(capsys):
    doc = json.dumps({"kind": "heisenberg", "c": 1})
    assert main(["propagate", "--coupling", doc, "--sweep", "0,0.5,1,2", "--format", "json"]) == 0
    table = loads(capsys.readouterr().out)
    dims = [(e.model["delta"], e.report.closure_dim) for e in table.entries if e.report.side == "n"]
    assert dims == [(0.0, 10), (0.5, 15), (1.0, 15), (2.0, 15)]


def test_propagate_file(write, capsys):
    assert main(["propagate", write(chain(3, [Heisenberg(), XX()]))]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 4
    assert sum("not propagating" in ln for ln in lines) == 2


def test_propagate_qutrits(capsys):
    doc = json.dumps({"kind": "aklt", "c": 1, "A": 1, "B": 1})
    assert main(["propagate", "--coupling", doc, "--dims", "3,3"]) == 0
    assert "dim 80/80" in capsys.readouterr().out


def test_figure3(capsys):
    assert main(["figure3"]) == 0
    out = capsys.readouterr().out
    assert "MISMATCH" not in out
    star_row = next(ln for ln in out.splitlines() if ln.startswith("star-4-leaf"))
    assert star_row.split()[1:5] == ["no", "no", "no", "no"]


def test_figure3_mismatch_exit(monkeypatch):
    from qnetcontrol import cli, figure3
    from qnetcontrol.figure3 import Example

    real = figure3.examples()
    flipped = [Example(e.label, e.description, e.network, not e.expected_ac, e.expected_infection, e.source)
               for e in real[:1]]
    monkeypatch.setattr(figure3, "examples", lambda: flipped)
    assert cli.main(["figure3"]) == EXIT_MISMATCH


def test_capacity_exit(write, capsys):
    assert main(["closure", write(chain(7, Heisenberg()))]) == EXIT_CAPACITY
    assert "capacity" in capsys.readouterr().err


def test_indeterminate_exit(write, monkeypatch):
    from qnetcontrol import control
    from qnetcontrol.closure import IndeterminateError

    def boom(*args, **kwargs):
        raise IndeterminateError(5e-10, 1e-9, 3)

    monkeypatch.setattr(control, "lie_closure", boom)
    path = write(chain(2, Heisenberg()))
    assert main(["check", path]) == EXIT_INDETERMINATE
    assert main(["closure", path]) == EXIT_INDETERMINATE


def test_input_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"nodes": [{"id": 1}], "edges": [{"a": 1, "b": 1, "coupling": {"kind": "xx", "c": 1}}]}))
    assert main(["check", str(bad)]) == EXIT_ERROR
    assert "self-loop" in capsys.readouterr().err
    assert main(["check", str(tmp_path / "missing.json")]) == EXIT_ERROR
    assert main(["check", str(bad), "--tol", "0"]) == EXIT_ERROR
    assert main(["propagate"]) == EXIT_ERROR


def test_run_config_invariants():
    with pytest.raises(ValueError):
        RunConfig("check", tol=-1)
    with pytest.raises(ValueError):
        RunConfig("check", cap=3)
    with pytest.raises(ValueError):
        RunConfig("plot")
    status, report = run(RunConfig("check", str(NETWORKS / "xx_chain2.json")))
    assert status == 0 and report.closure_dim == 10


@pytest.mark.parametrize("path", sorted(NETWORKS.glob("*.json")), ids=lambda p: p.name)
def test_shipped_networks(path):
    status, _ = run(RunConfig("check", str(path)))
    assert status == 0


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "qnetcontrol", "figure3", "--format", "json"],
                         capture_output=True, text=True, check=False)
    assert out.returncode == 0
    assert loads(out.stdout).all_match
