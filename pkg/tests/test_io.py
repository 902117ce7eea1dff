import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qbp import io, sim, zoo
from qbp import transpile as tp
from qbp.model import ClassicalBp


def coin():
    return ClassicalBp(2, (("s",), ("r", "a")), {"s": 1}, {"s": 1.0},
                       {("s", 0, "r"): 0.25, ("s", 0, "a"): 0.75, ("s", 1, "a"): 1.0},
                       frozenset({"a"}), frozenset({"r"}))


INSTANCES = {
    "gqbp": zoo.build_maj3,
    "aqbp": lambda: zoo.random_aqbp(3, 2, 3, 1),
    "nqbp": lambda: tp.gqbp_to_nqbp(zoo.build_parity(4)),
    "classical": coin,
    "circuit": lambda: tp.gqbp_to_oracle_circuit(zoo.build_maj3()),
    "table": lambda: sim.truth_table(zoo.build_dj(4)),
}


@pytest.mark.parametrize("kind", sorted(INSTANCES))
def test_round_trip_is_exact(kind):
    obj = INSTANCES[kind]()
    text = io.dumps(obj)
    doc = json.loads(text)
    assert doc["kind"] == kind and doc["version"] == 1
    back = io.loads(text)
    assert io.dumps(back) == text
    assert np.array_equal(sim.truth_table(back).values, sim.truth_table(obj).values)


def test_circuit_ops_are_tagged():
    doc = io.to_document(zoo.random_qram_circuit(1, 1, 2, 0))
    assert [op["op"] for op in doc["ops"]] == ["unitary", "qram", "unitary"]
    doc = io.to_document(tp.aqbp_to_oracle_circuit(zoo.random_aqbp(2, 1, 2, 0)))
    assert {"op": "oracle", "index": "index", "value": "value"} in doc["ops"]


def test_complex_as_pairs():
    doc = io.to_document(zoo.build_parity(2))
    assert doc["initial"][0]["amp"] == [1 / np.sqrt(2), 0.0]
    assert {"step": 1, "from": "v0_0", "bit": 1, "to": "v1_0", "amp": [-1 / np.sqrt(2), -0.0]} in doc["transitions"]


@given(st.integers(1, 4), st.integers(0, 3), st.integers(1, 4), st.integers(0, 10**6))
def test_random_gqbp_round_trip(w, l, n, seed):
    g = zoo.random_phase_gqbp(w, l, n, seed)
    back = io.loads(io.dumps(g))
    assert back.levels == g.levels and back.labels == g.labels and back.accept == g.accept
    for (a0, a1), (b0, b1) in zip(g.steps, back.steps):
        assert np.array_equal(a0, b0) and np.array_equal(a1, b1)


def test_save_and_load(tmp_path):
    path = tmp_path / "p.json"
    io.save(zoo.build_dj(4), path)
    assert sim.accept_prob_gqbp(io.load(path), "0011") == pytest.approx(1)


@pytest.mark.parametrize(
    "text,match",
    [
        ("{bad", "line 1 column 2"),
        ("[]", "JSON object"),
        ('{"kind": "bdd", "version": 1}', "unknown document kind"),
        ('{"kind": "table", "version": 2, "n": 1, "values": [0, 1]}', "version"),
        ('{"kind": "table", "version": 1, "n": 1}', "missing field 'values'"),
        ('{"kind": "table", "version": 1, "n": 2, "values": [0, 1]}', "needs 4 values"),
        ('{"kind": "aqbp", "version": 1, "n": 1, "d": 1, "initial": ["x"], "steps": [], "accept": []}',
         "complex"),
    ],
)
def test_parse_errors(text, match):
    with pytest.raises(io.ParseError, match=match):
        io.loads(text)


def test_missing_file(tmp_path):
    with pytest.raises(io.ParseError):
        io.load(tmp_path / "absent.json")
