import json

import numpy as np
import pytest

import projlat as pl


def blocks(*arrays):
    return [np.asarray(a, dtype=complex) for a in arrays]


def close(xs, ys, tol=1e-10):
    return all(np.linalg.norm(x - y, 2) <= tol for x, y in zip(xs, ys))


def test_supports_of_nilpotent():
    x = blocks([[0, 0], [1, 0]])
    assert close(pl.left_support(x), blocks([[0, 0], [0, 1]]))
    assert close(pl.right_support(x), blocks([[1, 0], [0, 0]]))


def test_invert_and_polar():
    x = blocks(np.diag([1, 2]), [[3]])
    assert close(pl.invert(x), blocks(np.diag([1, 0.5]), [[1 / 3]]))
    v, m = pl.polar_decompose(blocks(np.diag([-2, 0])))
    assert close(v, blocks(np.diag([-1, 0])))
    assert close(m, blocks(np.diag([2, 0])))
    with pytest.raises(pl.NotInvertible):
        pl.invert(blocks(np.diag([1, 0])))


def test_center_valued_norm():
    z = pl.center_valued_norm(blocks(np.diag([1, 2]), [[3]]))
    assert close(z, blocks(2 * np.eye(2), [[3]]))
    assert pl.is_central(z)


def test_meet_join_of_45_degree_pair():
    p = blocks(np.diag([1, 0]))
    q = blocks([[0.5, 0.5], [0.5, 0.5]])
    assert close(pl.meet(p, q), blocks(np.zeros((2, 2))))
    assert close(pl.join(p, q), blocks(np.eye(2)))
    assert not pl.leq(p, q)
    assert pl.ls_orthogonal(p, q)
    s = pl.orthogonalizer(p, q)
    assert close(s, blocks([[1, -1], [0, np.sqrt(2)]]), 1e-9)


def test_halmos_round_trip():
    p = blocks(np.diag([1, 0]))
    q = blocks([[0.5, 0.5], [0.5, 0.5]])
    d = pl.halmos_decompose(p, q)
    assert close(d["a"], blocks(np.diag([2 ** -0.5, 0])), 1e-9)
    assert close(d["b"], blocks(np.diag([2 ** -0.5, 0])), 1e-9)


def test_graph_projection_and_recovery():
    q = pl.graph_projection(blocks([[2]]), pl.Slot.s12)
    expected = np.zeros((3, 3))
    expected[:2, :2] = [[0.2, 0.4], [0.4, 0.8]]
    assert close(q, blocks(expected))
    assert close(pl.recover_operator(q, pl.Slot.s12), blocks([[2]]))


def test_coordinatize_inner_automorphism():
    t = np.diag([1.0, 2.0, 3.0]) + np.triu(np.ones((3, 3)), 1)
    r = pl.coordinatize(pl.from_conjugation(blocks(t)))
    assert r["passed"]
    rng = np.random.default_rng(1)
    x = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    expected = t @ x @ np.linalg.inv(t)
    (got,) = r["Psi"](blocks(x))
    assert np.linalg.norm(got - expected, 2) <= 1e-6 * np.linalg.cond(t)


def test_inner_factor_of_python_map():
    y = np.diag([1.0, 2.0])
    yi = np.linalg.inv(y)
    f = pl.inner_factor(lambda xs: [y @ xs[0] @ yi], [2])
    assert f["kinds"] == ["linear"]
    assert f["residual"] <= 1e-10
    y_hat = f["y"][0]
    assert abs(np.vdot(y_hat, y)) / (np.linalg.norm(y_hat) * np.linalg.norm(y)) >= 1 - 1e-10


def test_dye_rejects_non_unitary_map():
    t = blocks([[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    with pytest.raises(pl.OrthogonalityNotPreserved):
        pl.dye_extension(pl.from_conjugation(t))


def test_split9_piece_counts():
    assert len(pl.block_split9(blocks(np.ones((3, 3))), [(1, 2)])) == 9
    assert len(pl.block_split9(blocks(np.zeros((3, 3))), [(1, 2)])) == 0


def test_verify_suite_report():
    report = json.loads(pl.verify_suite([3], seed=0, samples=5))
    assert report["passed"]
    assert all(c["status"] == "PASS" for c in report["checks"])
