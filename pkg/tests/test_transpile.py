import warnings

import numpy as np
import pytest
from conftest import reference_circuit_prob, table_of
from hypothesis import given
from hypothesis import strategies as st

from qbp import circuit as qc
from qbp import io, sim, zoo
from qbp import transpile as tp
from qbp.analysis import equivalent
from qbp.model import AqbpProgram, NqbpProgram, ProgramMeasures, QuantumTransformation, measures, validate

X = np.array([[0, 1], [1, 0]])
H = np.array([[1, 1], [1, -1]]) / np.sqrt(2)


def nqbp_table(p):
    return np.array([sim.run_nqbp(p, x).p_acc for x in sim.all_inputs(p.n)])


def flip():
    return AqbpProgram(1, 2, [1, 0], (QuantumTransformation(0, np.eye(2), X),), frozenset({1}))


class TestAqbpToGqbp:
    def test_bit_flip(self):
        g = tp.aqbp_to_gqbp(flip())
        assert measures(g) == ProgramMeasures(2, 1, 4)
        assert list(sim.truth_table(g).values) == [0, 1]

    def test_superposed_initial_kept(self):
        a = zoo.random_aqbp(3, 2, 2, 5)
        g = tp.aqbp_to_gqbp(a)
        assert np.array_equal(g.initial, a.initial)

    @given(st.integers(1, 4), st.integers(0, 4), st.integers(1, 4), st.integers(0, 10**6))
    def test_equivalent(self, d, l, n, seed):
        a = zoo.random_aqbp(d, l, n, seed)
        g = tp.aqbp_to_gqbp(a)
        assert validate(g).ok
        assert (measures(g).width, measures(g).length) == (d, l)
        assert equivalent(a, g).equivalent


class TestGqbpNqbp:
    @pytest.mark.parametrize("g", [zoo.build_maj3(), zoo.build_parity(4), zoo.build_dj(4)], ids=["maj3", "parity4", "dj4"])
    def test_zoo_embeds(self, g):
        p = tp.gqbp_to_nqbp(g)
        assert validate(p).ok
        assert np.abs(nqbp_table(p) - sim.acceptance_vector(g)).max() <= 1e-9
        for x in sim.all_inputs(g.n):
            assert sim.run_nqbp(p, x).p_residual <= 1e-9
        # superposed start -> one fan-out node and one extra step
        assert (p.size, p.steps) == (measures(g).size + 1, g.length + 1)

    def test_maj3_example(self):
        out = sim.run_nqbp(tp.gqbp_to_nqbp(zoo.build_maj3()), "110")
        assert (out.p_acc, out.p_rej, out.p_residual) == pytest.approx((1, 0, 0))

    def test_single_start_needs_no_fanout(self):
        g = tp.aqbp_to_gqbp(zoo.random_aqbp(2, 2, 2, 1))
        g = type(g)(g.n, g.levels, g.labels, [1, 0], g.steps, g.accept)
        p = tp.gqbp_to_nqbp(g)
        assert (p.size, p.steps) == (measures(g).size, g.length)
        assert np.allclose(nqbp_table(p), sim.acceptance_vector(g))

    def test_partition(self):
        g = zoo.build_maj3()
        p = tp.gqbp_to_nqbp(g)
        assert p.acc == g.accept
        assert p.rej == {"v2_0", "v2_2"}

    @given(st.integers(1, 4), st.integers(0, 3), st.integers(1, 4), st.integers(0, 10**6))
    def test_round_trip(self, w, l, n, seed):
        g = zoo.random_phase_gqbp(w, l, n, seed)
        p = tp.gqbp_to_nqbp(g)
        assert validate(p).ok
        outs = [sim.run_nqbp(p, x) for x in sim.all_inputs(n)]
        assert max(o.p_residual for o in outs) <= 1e-9
        assert np.allclose([o.p_acc for o in outs], sim.acceptance_vector(g), atol=1e-9)
        assert not tp.nqbp_may_halt_early(p)
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            back = tp.nqbp_to_gqbp(p)
        assert validate(back).ok and equivalent(back, g).equivalent
        assert measures(back).width == p.size and back.length == p.steps


class TestNqbpDivergence:
    def parked(self):
        # amplitude reaches acc after step 1 of 2, then rotates away
        swap = np.array([[0, 1], [1, 0]])
        return NqbpProgram(1, ("a", "b"), {"a"}, set(), {"b"}, {"a": 0, "b": 0}, "b", swap, swap, 2)

    def test_warning_and_disagreement(self):
        p = self.parked()
        assert tp.nqbp_may_halt_early(p)
        with pytest.warns(tp.EarlyHaltWarning):
            g = tp.nqbp_to_gqbp(p)
        assert sim.run_nqbp(p, "0").p_acc == 1
        res = equivalent(p, g)
        assert not res.equivalent and res.max_deviation == pytest.approx(1)

    def test_certificate_notes_risk(self):
        with pytest.warns(tp.EarlyHaltWarning):
            _, cert = tp.transpile(self.parked(), "gqbp")
        assert cert.notes == ["may halt early"]


class TestQram:
    def test_single_gate(self):
        c = qc.QueryCircuit(1, 1, "qram", {"r": (0, 1)}, (qc.QramGate(0, np.eye(2), X, (0,)),), "r", {1})
        a = tp.qram_circuit_to_aqbp(c)
        assert (a.d, a.length) == (2, 1)
        assert list(sim.truth_table(a).values) == [0, 1]

    def test_unitary_only(self):
        c = qc.QueryCircuit(1, 1, "qram", {"r": (0, 1)}, (qc.Unitary((0,), H),), "r", {1})
        a = tp.qram_circuit_to_aqbp(c)
        assert a.length == 0 and sim.run_aqbp(a, "0") == pytest.approx(0.5)

    def test_rejects_other_models(self):
        with pytest.raises(tp.UnsupportedTranspile):
            tp.qram_circuit_to_aqbp(zoo.deutsch_circuit())

    @given(st.integers(1, 2), st.integers(0, 3), st.integers(1, 3), st.integers(0, 10**6))
    def test_equivalent(self, q, t, n, seed):
        c = zoo.random_qram_circuit(q, t, n, seed)
        a = tp.qram_circuit_to_aqbp(c)
        assert validate(a).ok
        assert (a.d, a.length) == (1 << q, t)
        assert equivalent(a, c).equivalent

    def test_partial_register_gates(self):
        # gates on a subset of qubits and measurement of a sub-register
        ops = (qc.Unitary((1,), H), qc.QramGate(1, np.eye(2), X, (0,)), qc.QramGate(0, H, X @ H, (1,)))
        c = qc.QueryCircuit(2, 2, "qram", {"r": (0, 2), "lo": (1, 1)}, ops, "lo", {1})
        a = tp.qram_circuit_to_aqbp(c)
        ref = table_of(lambda x: reference_circuit_prob(c, x), 2)
        assert np.allclose(sim.truth_table(a).values, ref)

    @given(st.integers(1, 4), st.integers(0, 4), st.integers(1, 4), st.integers(0, 10**6))
    def test_aqbp_round_trip(self, d, l, n, seed):
        a = zoo.random_aqbp(d, l, n, seed)
        c = tp.aqbp_to_qram_circuit(a)
        assert validate(c).ok
        assert c.qubits == tp.qubits_for(d) and qc.count_oracle_calls(c) == l
        assert equivalent(a, c).equivalent
        assert equivalent(a, tp.qram_circuit_to_aqbp(c)).equivalent

    def test_equal_pair_gives_identity_control(self):
        u = zoo.random_unitary(2, np.random.default_rng(0))
        a = AqbpProgram(1, 2, [1, 0], (QuantumTransformation(0, u, u),), frozenset({0}))
        gate = tp.aqbp_to_qram_circuit(a).ops[-1]
        assert np.allclose(gate.u1, np.eye(2))


class TestAqbpOracle:
    def test_counts(self):
        a = zoo.random_aqbp(3, 3, 4, 11)
        c = tp.aqbp_to_oracle_circuit(a)
        assert qc.count_oracle_calls(c) == 6
        assert c.qubits == 2 + 2 + 1

    def test_length_zero(self):
        a = AqbpProgram(2, 2, [1, 0], (), frozenset({0}))
        c = tp.aqbp_to_oracle_circuit(a)
        assert c.ops == () and sim.truth_table(c).values.tolist() == [1, 1, 1, 1]
        b = AqbpProgram(2, 2, [0.6, 0.8], (), frozenset({1}))
        assert sim.truth_table(tp.aqbp_to_oracle_circuit(b)).values == pytest.approx([0.64] * 4)

    @given(st.integers(1, 4), st.integers(0, 3), st.integers(1, 4), st.integers(0, 10**6))
    def test_equivalent(self, d, l, n, seed):
        a = zoo.random_aqbp(d, l, n, seed)
        c = tp.aqbp_to_oracle_circuit(a)
        assert validate(c).ok
        assert c.qubits == tp.qubits_for(n) + tp.qubits_for(d) + 1
        assert qc.count_oracle_calls(c) == 2 * l
        assert equivalent(a, c).equivalent


class TestPhaseCircuit:
    def test_deutsch(self):
        g = tp.phase_circuit_to_gqbp(zoo.deutsch_circuit())
        assert (measures(g).width, measures(g).length) == (2, 3)
        assert list(np.round(sim.truth_table(g).values, 12)) == [0, 1, 1, 0]
        h = tp.remove_dummy_levels(g)
        assert h.length == 1 and equivalent(g, h).equivalent

    def test_no_queries(self):
        c = qc.QueryCircuit(1, 1, "phase", {"r": (0, 1)}, (qc.Unitary((0,), H),), "r", {1})
        g = tp.phase_circuit_to_gqbp(c)
        assert g.length == 1 and tp.is_dummy_step(*g.steps[0])
        h = tp.remove_dummy_levels(g)
        assert h.length == 0 and sim.accept_prob_gqbp(h, "1") == pytest.approx(0.5)

    def test_partial_index_register(self):
        # index register is the low qubit only; the unused high qubit reads nothing
        ops = (qc.Unitary((0, 1), np.kron(H, H)), qc.OracleCall("lo"), qc.Unitary((0, 1), np.kron(H, H)))
        c = qc.QueryCircuit(2, 2, "phase", {"r": (0, 2), "lo": (1, 1)}, ops, "r", {1, 2})
        g = tp.phase_circuit_to_gqbp(c)
        ref = table_of(lambda x: reference_circuit_prob(c, x), 2)
        assert np.allclose(sim.truth_table(g).values, ref)

    def test_rejects_standard(self):
        c = tp.aqbp_to_oracle_circuit(flip())
        with pytest.raises(tp.UnsupportedTranspile):
            tp.phase_circuit_to_gqbp(c)

    @given(st.integers(1, 3), st.integers(0, 3), st.integers(1, 4), st.integers(0, 10**6))
    def test_equivalent_and_dummy_removal(self, q, t, n, seed):
        c = zoo.random_phase_circuit(q, t, n, seed)
        g = tp.phase_circuit_to_gqbp(c)
        assert validate(g).ok
        assert (measures(g).width, g.length) == (1 << q, 2 * t + 1)
        assert equivalent(g, c).equivalent
        h = tp.remove_dummy_levels(g)
        assert validate(h).ok and h.length == t and equivalent(h, c).equivalent
        assert tp.remove_dummy_levels(h) is h


class TestRemoveDummies:
    def test_no_dummies_unchanged(self):
        g = zoo.build_maj3()
        assert tp.remove_dummy_levels(g) is g
        assert io.dumps(tp.remove_dummy_levels(g)) == io.dumps(g)

    def test_absorbs_into_predecessor(self):
        c = qc.QueryCircuit(2, 1, "phase", {"r": (0, 1)},
                            (qc.Unitary((0,), H), qc.OracleCall("r"), qc.Unitary((0,), H), qc.Unitary((0,), X)),
                            "r", {0})
        g = tp.phase_circuit_to_gqbp(c)
        h = tp.remove_dummy_levels(g)
        assert h.length == 1 and measures(h).width <= measures(g).width
        assert h.levels[-1] == g.levels[-1]
        assert equivalent(g, h).equivalent


class TestOracleCircuit:
    def test_maj3(self):
        c = tp.gqbp_to_oracle_circuit(zoo.build_maj3())
        assert (c.qubits, qc.count_oracle_calls(c)) == (7, 4)
        assert list(np.round(sim.truth_table(c).values, 12)) == [0, 0, 0, 1, 0, 1, 1, 1]

    def test_parity4_follows_formula(self):
        # l=2, w=2, n=4: 2*1 + 2 + 1 qubits, 2*2 queries
        c = tp.gqbp_to_oracle_circuit(zoo.build_parity(4))
        assert (c.qubits, qc.count_oracle_calls(c)) == (5, 4)
        assert equivalent(c, zoo.build_parity(4)).equivalent

    def test_smallest(self):
        g = zoo.random_phase_gqbp(2, 1, 2, 3)
        c = tp.gqbp_to_oracle_circuit(g)
        assert (c.qubits, qc.count_oracle_calls(c)) == (3, 2)
        assert equivalent(c, g).equivalent

    def test_length_zero(self):
        g = zoo.random_phase_gqbp(3, 0, 2, 0)
        c = tp.gqbp_to_oracle_circuit(g)
        assert qc.count_oracle_calls(c) == 0 and equivalent(c, g).equivalent

    def test_uneven_widths(self):
        a = tp.aqbp_to_gqbp(zoo.random_aqbp(3, 2, 3, 4))
        c = tp.gqbp_to_oracle_circuit(a)
        assert c.qubits == 2 * 2 + 2 + 1
        assert equivalent(c, a).equivalent

    @given(st.sampled_from([2, 4]), st.integers(1, 3), st.integers(1, 4), st.integers(0, 10**6))
    def test_equivalent(self, w, l, n, seed):
        g = zoo.random_phase_gqbp(w, l, n, seed)
        c = tp.gqbp_to_oracle_circuit(g)
        assert validate(c).ok
        assert c.qubits == l * tp.qubits_for(w) + tp.qubits_for(n) + 1
        assert qc.count_oracle_calls(c) == 2 * l
        assert equivalent(c, g).equivalent


class TestDispatcher:
    @pytest.mark.parametrize(
        "make,to",
        [
            (lambda: zoo.random_aqbp(2, 2, 2, 0), "gqbp"),
            (lambda: zoo.random_aqbp(2, 2, 2, 0), "nqbp"),
            (lambda: zoo.random_aqbp(2, 2, 2, 0), "circuit-qram"),
            (lambda: zoo.random_aqbp(2, 2, 2, 0), "circuit-oracle"),
            (zoo.build_maj3, "nqbp"),
            (zoo.build_maj3, "circuit-oracle"),
            (lambda: zoo.random_qram_circuit(2, 2, 2, 0), "aqbp"),
            (lambda: zoo.random_qram_circuit(2, 2, 2, 0), "gqbp"),
            (zoo.deutsch_circuit, "gqbp"),
        ],
    )
    def test_certificates_hold(self, make, to):
        src = make()
        out, cert = tp.transpile(src, to)
        assert cert.bound_satisfied, cert
        assert validate(out).ok and equivalent(src, out).equivalent

    def test_remove_dummies_flag(self):
        c = zoo.random_phase_circuit(2, 3, 3, 1)
        out, cert = tp.transpile(c, "gqbp", remove_dummies=True)
        assert cert.bound_satisfied and cert.target["length"] == 3 and cert.target["width"] == 4
        assert str(cert).splitlines()[0] == "width=4 length=3 size=16"

    @pytest.mark.parametrize(
        "make,to",
        [
            (zoo.build_maj3, "aqbp"),
            (zoo.build_maj3, "circuit-qram"),
            (lambda: tp.aqbp_to_oracle_circuit(flip()), "gqbp"),
            (zoo.deutsch_circuit, "circuit-oracle"),
            (zoo.build_maj3, "bogus"),
        ],
    )
    def test_unsupported(self, make, to):
        with pytest.raises(tp.UnsupportedTranspile):
            tp.transpile(make(), to)
