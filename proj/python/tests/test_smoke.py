import math

import numpy as np
import pytest

import qdefinetti as q


def test_circuit1_reconstruction():
    mix = q.fixtures.circuit1()
    rec = q.reconstruct(q.synthesize(mix, 3), mix.atoms)
    assert np.allclose(rec.mixture.weights, [0.5, 0.5], atol=1e-8)
    assert rec.residual <= 1e-10


def test_state_roundtrip_through_numpy():
    qubit = q.Algebra([2])
    rho = np.array([[0.75, 0.25j], [-0.25j, 0.25]])
    s = q.StateVec.from_dense(qubit, rho)
    assert np.allclose(s.to_dense(), rho)
    with pytest.raises(q.ValidationError):
        q.StateVec.from_dense(qubit, np.eye(2))


def test_check_reports_violation_level():
    qubit = q.Algebra([2])
    seq = q.ExchSeq(qubit, [q.StateVec.pure(np.array([1, 0])), q.StateVec.pure(np.array([0, 1, 0, 0]))])
    rep = q.check_exchangeable(seq)
    assert not rep.verdict
    assert rep.first_violation().level == 2
    assert q.ExchangeabilityReport.from_json(rep.to_json()) == rep


def test_singlet_not_representable():
    singlet = q.fixtures.singlet_sequence()
    assert q.check_exchangeable(singlet).verdict
    rec = q.reconstruct(singlet, q.default_atoms(2, 200, 0))
    assert rec.residual >= 0.9 * math.sqrt(0.75)


def test_not_exchangeable_is_raised():
    qubit = q.Algebra([2])
    seq = q.ExchSeq(qubit, [q.StateVec.pure(np.array([1, 0])), q.StateVec.pure(np.array([0, 1, 0, 0]))])
    with pytest.raises(q.NotExchangeable):
        q.reconstruct(seq, q.fixtures.circuit1().atoms)


def test_circuit_cone_factors():
    cone = q.fixtures.circuit_cone(3)
    atoms = q.fixtures.circuit1().atoms
    med = q.mediating_map(cone, atoms)
    assert q.factorization_error(cone, med) <= 1e-7
    plus = q.StateVec.pure(np.array([1, 1]) / math.sqrt(2))
    assert np.allclose(med(plus).weights, [0.5, 0.5], atol=1e-9)
    assert q.uniqueness_check(cone, atoms, 5, 1).max_pairwise_distance <= 1e-8


def test_channel_predicates():
    assert not q.is_completely_positive(q.channels.transpose(2))
    assert q.is_completely_positive(q.channels.depolarizing(2))
    assert q.is_unital(q.channels.depolarizing(2, q.Direction.HEISENBERG))


def test_coin():
    c = q.classical
    grid = [c.coin(0.0), c.coin(0.5), c.coin(1.0)]
    seq = c.synthesize(grid, [1 / 3] * 3, 5)
    res = c.hs_reconstruct(seq, grid)
    assert np.allclose(res.weights, [1 / 3] * 3, atol=1e-8)
    quantum = q.reconstruct(c.commutative_encoding(seq), c.commutative_atoms(grid))
    assert np.allclose(quantum.mixture.weights, res.weights, atol=1e-8)


def test_eta_tau_composition():
    rng = np.random.default_rng(0)
    qubit = q.Algebra([2])
    a = q.Element.from_dense(q.Algebra([4]), rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))
    direct = q.eta_tau(a, qubit, [2, 0], 3)
    stepwise = q.eta_tau(q.eta_tau(a, qubit, [1, 0], 2), qubit, [0, 2], 3)
    assert np.allclose(direct.to_dense(), stepwise.to_dense(), atol=1e-12)


def test_files(tmp_path):
    seq = q.synthesize(q.fixtures.equator(8), 3)
    path = str(tmp_path / "seq.json")
    q.save(seq, path)
    back = q.load_sequence(path)
    assert back.depth == 3
    assert np.allclose(back.level(3).to_dense(), seq.level(3).to_dense())
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    with pytest.raises(q.SchemaError):
        q.load_sequence(str(bad))
