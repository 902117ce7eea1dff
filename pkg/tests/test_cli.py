import json

import numpy as np
import pytest

from qbp import io, zoo
from qbp.cli import main
from qbp.model import GqbpProgram


@pytest.fixture
def docs(tmp_path):
    paths = {}

    def put(name, obj):
        p = tmp_path / name
        io.save(obj, p)
        paths[name] = str(p)

    put("maj3.gqbp.json", zoo.build_maj3())
    put("parity4.gqbp.json", zoo.build_parity(4))
    put("dj.circuit.json", zoo.random_phase_circuit(2, 3, 3, 7))
    p4 = zoo.build_parity(4)
    put("parity4c.gqbp.json", GqbpProgram(4, p4.levels, p4.labels, p4.initial, p4.steps, frozenset({"v2_0"})))
    put("bad-norm.gqbp.json", GqbpProgram(1, (("a", "b"),), {}, np.array([0.5, 0.0]), (), frozenset({"a"})))
    put("const.table.json", io.loads('{"kind": "table", "version": 1, "n": 2, "values": [1, 1, 1, 1]}'))
    (tmp_path / "broken.json").write_text('{"kind": "gqbp", ')
    paths["broken.json"] = str(tmp_path / "broken.json")
    paths["dir"] = tmp_path
    return paths


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate(docs, capsys):
    assert run(capsys, "validate", docs["maj3.gqbp.json"])[:2] == (0, "ok\n")
    code, out, _ = run(capsys, "validate", docs["bad-norm.gqbp.json"])
    assert code == 1 and out == "initial-norm at level 0: 7.500e-01\n"
    assert run(capsys, "validate", docs["broken.json"])[0] == 2


def test_run(docs, capsys):
    assert run(capsys, "run", docs["maj3.gqbp.json"], "--input", "110")[:2] == (0, "1.000000000000\n")
    assert run(capsys, "run", docs["parity4.gqbp.json"], "--input", "0110")[:2] == (0, "0.000000000000\n")
    code, _, err = run(capsys, "run", docs["maj3.gqbp.json"], "--input", "11")
    assert code == 2 and "n=3" in err


def test_run_nqbp_prints_triple(docs, capsys):
    out_path = docs["dir"] / "m.nqbp.json"
    run(capsys, "transpile", docs["maj3.gqbp.json"], "--to", "nqbp", "-o", out_path)
    code, out, _ = run(capsys, "run", out_path, "--input", "011")
    assert code == 0
    assert out.splitlines() == ["1.000000000000", "p_acc=1.000000000000 p_rej=0.000000000000 p_residual=0.000000000000"]


def test_table(docs, capsys):
    code, out, _ = run(capsys, "table", docs["maj3.gqbp.json"])
    rows = [line.split() for line in out.splitlines()]
    assert code == 0 and len(rows) == 8
    assert [r[0] for r in rows][:3] == ["000", "100", "010"]
    assert [float(r[1]) for r in rows] == pytest.approx([0, 0, 0, 1, 0, 1, 1, 1])
    code, out, _ = run(capsys, "table", docs["maj3.gqbp.json"], "--json")
    assert json.loads(out)["kind"] == "table"


def test_table_cap(docs, capsys, monkeypatch):
    monkeypatch.setenv("QBP_MAX_N", "2")
    assert run(capsys, "table", docs["maj3.gqbp.json"])[0] == 2


def test_transpile(docs, capsys):
    code, out, _ = run(capsys, "transpile", docs["dj.circuit.json"], "--to", "gqbp", "--remove-dummies")
    assert code == 0 and out.splitlines()[0].startswith("width=4 length=3")
    code, out, _ = run(capsys, "transpile", docs["parity4.gqbp.json"], "--to", "circuit-oracle")
    assert out.splitlines()[0] == "qubits=5 queries=4"
    code, out, _ = run(capsys, "transpile", docs["maj3.gqbp.json"], "--to", "circuit-oracle")
    assert out.splitlines()[0] == "qubits=7 queries=4" and "(holds)" in out


def test_transpile_unsupported(docs, capsys):
    circ = docs["dir"] / "c.json"
    run(capsys, "transpile", docs["maj3.gqbp.json"], "--to", "circuit-oracle", "-o", circ)
    code, _, err = run(capsys, "transpile", circ, "--to", "gqbp")
    assert code == 2 and "phase-oracle" in err


def test_gen(docs, capsys):
    out = docs["dir"] / "r.json"
    assert run(capsys, "gen", "random-gqbp", "--w", 4, "--l", 3, "--n", 4, "--seed", 7, "-o", out)[0] == 0
    code, text, _ = run(capsys, "gen", "random-gqbp", "--w", 4, "--l", 3, "--n", 4, "--seed", 7)
    assert text == out.read_text()
    assert json.loads(run(capsys, "gen", "dj", "--n", 4)[1])["n"] == 4
    assert run(capsys, "gen", "parity", "--n", 3)[0] == 2


def test_degree(docs, capsys):
    assert run(capsys, "degree", docs["parity4.gqbp.json"])[1] == "degree=4 length_lower_bound=2\n"
    assert run(capsys, "degree", docs["maj3.gqbp.json"])[1] == "degree=3 length_lower_bound=2\n"
    assert run(capsys, "degree", "--table", docs["const.table.json"])[1] == "degree=0 length_lower_bound=0\n"
    assert run(capsys, "degree")[0] == 2


def test_equiv(docs, capsys):
    circ = docs["dir"] / "m.circuit.json"
    run(capsys, "transpile", docs["maj3.gqbp.json"], "--to", "circuit-oracle", "-o", circ)
    assert run(capsys, "equiv", docs["maj3.gqbp.json"], circ)[0] == 0
    code, out, _ = run(capsys, "equiv", docs["parity4.gqbp.json"], docs["parity4c.gqbp.json"])
    assert code == 1 and "witness=" in out
    assert run(capsys, "equiv", docs["parity4.gqbp.json"], docs["maj3.gqbp.json"])[0] == 2


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["transpile", "x.json", "--to", "bdd"])
    assert exc.value.code == 2
    capsys.readouterr()
