import math

import numpy as np
import pytest

from coarsefp import (
    AffineAction,
    ConvergenceError,
    DescentConfig,
    FixedPointResult,
    InputError,
    NoFixedPointEvidence,
    cocycle_check,
    coboundary_solve,
    compose_word,
    displacement,
    evaluate_word,
    fixed_point_search,
    gaussian_embedding,
    hilbert,
    lipschitz_check,
    lp,
    parse_word,
    reduce_word,
)


def rotation(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


def rotation_about(theta: float, centre) -> AffineAction:
    """Single generator rotating the plane about a fixed centre."""
    centre = np.asarray(centre, dtype=float)
    R = rotation(theta)
    return AffineAction(hilbert(2), {"s": R}, {"s": centre - R @ centre})


def plane_translation(v) -> AffineAction:
    return AffineAction(hilbert(2), {"s": np.eye(2)}, {"s": np.asarray(v, float)})


def test_action_validation():
    with pytest.raises(InputError):
        AffineAction(lp(4.0, 2), {"s": np.eye(2)}, {"s": np.zeros(2)})
    with pytest.raises(InputError):
        AffineAction(hilbert(2), {"s": 2.0 * np.eye(2)}, {"s": np.zeros(2)})
    with pytest.raises(InputError):
        AffineAction(hilbert(2), {"s": np.eye(2)}, {"u": np.zeros(2)})
    with pytest.raises(InputError):
        AffineAction(hilbert(2), {}, {})
    with pytest.raises(InputError):
        AffineAction(hilbert(2), {"s": np.eye(2)}, {"s": np.array([np.nan, 0.0])})


def test_relations_verified_on_construction():
    a = rotation_about(math.pi / 2.0, (1.0, 1.0))
    ok = AffineAction(
        hilbert(2), a.linear, a.translation, relations=("s s s s",)
    )
    assert ok.relations == ((("s", 1),) * 4,)
    with pytest.raises(InputError):
        AffineAction(hilbert(2), a.linear, a.translation, relations=("s s s",))


def test_parse_and_reduce_words():
    assert parse_word("a b^-1 a") == [("a", 1), ("b", -1), ("a", 1)]
    assert parse_word([("a", 1), ("a", -1)]) == [("a", 1), ("a", -1)]
    assert reduce_word(parse_word("a a^-1 b")) == [("b", 1)]
    assert reduce_word(parse_word("a b b^-1 a^-1")) == []
    with pytest.raises(InputError):
        parse_word([("a", 2)])


def test_compose_word_matches_stepwise_evaluation():
    a = rotation_about(0.7, (0.3, -1.2))
    rng = np.random.default_rng(0)
    x = rng.standard_normal(2)
    P, t = compose_word(a, "s s s^-1 s s")
    direct = x.copy()
    for lab, p in reduce_word(parse_word("s s s^-1 s s")):
        Q = a.linear[lab] if p == 1 else a.linear[lab].T
        u = a.translation[lab]
        direct = Q @ direct + (u if p == 1 else -(Q @ u))
    assert np.allclose(P @ x + t, direct, atol=1e-12)
    assert np.allclose(evaluate_word(a, "s s s^-1 s s", x), direct, atol=1e-12)


def test_rotation_power_four_is_identity():
    a = rotation_about(math.pi / 2.0, (1.0, 1.0))
    P, t = compose_word(a, "s s s s")
    assert np.allclose(P, np.eye(2), atol=1e-12)
    assert np.allclose(t, 0.0, atol=1e-12)


def test_inverse_letter_inverts():
    a = rotation_about(0.9, (2.0, 0.5))
    P, t = compose_word(a, "s s^-1")
    assert np.allclose(P, np.eye(2), atol=1e-12)
    assert np.allclose(t, 0.0, atol=1e-12)


def test_cocycle_identity_holds():
    rng = np.random.default_rng(1)
    Q1, _ = np.linalg.qr(rng.standard_normal((3, 3)))
    Q2, _ = np.linalg.qr(rng.standard_normal((3, 3)))
    a = AffineAction(
        hilbert(3),
        {"a": Q1, "b": Q2},
        {"a": rng.standard_normal(3), "b": rng.standard_normal(3)},
    )
    assert cocycle_check(a, samples=300)


def test_displacement_and_lipschitz():
    a = plane_translation([3.0, 4.0])
    assert displacement(a, np.zeros(2)) == pytest.approx(5.0, abs=1e-12)
    assert displacement(a, np.array([7.0, -2.0])) == pytest.approx(5.0, abs=1e-12)
    assert lipschitz_check(a)
    b = rotation_about(math.pi / 3.0, (0.0, 0.0))
    assert lipschitz_check(b)


def test_descent_finds_rotation_centre():
    a = rotation_about(math.pi / 2.0, (1.0, 1.0))
    res = fixed_point_search(a, DescentConfig())
    assert isinstance(res, FixedPointResult)
    assert res.displacement <= 1e-8
    assert np.linalg.norm(res.point - np.array([1.0, 1.0])) < 1e-7
    assert res.iterations <= 50


def test_descent_from_far_start_still_converges():
    a = rotation_about(2.0, (-3.0, 5.0))
    res = fixed_point_search(a, DescentConfig(), x0=np.array([100.0, -40.0]))
    assert isinstance(res, FixedPointResult)
    assert np.linalg.norm(res.point - np.array([-3.0, 5.0])) < 1e-6


def test_descent_immediate_on_fixed_start():
    a = rotation_about(1.0, (0.0, 0.0))
    res = fixed_point_search(a, DescentConfig(), x0=np.zeros(2))
    assert isinstance(res, FixedPointResult)
    assert res.displacement <= 1e-8
    assert res.iterations == 0


def test_translation_yields_no_fixed_point_evidence():
    a = plane_translation([1.0, 0.0])
    res = fixed_point_search(a, DescentConfig(max_iters=200))
    assert isinstance(res, NoFixedPointEvidence)
    # a pure translation moves every point by exactly 1
    assert res.displacement == pytest.approx(1.0, abs=1e-12)
    assert res.min_sampled >= res.alpha * res.displacement
    assert res.samples == 1000


def test_two_generator_action_with_common_fixed_point():
    centre = np.array([0.5, -0.25])
    R1, R2 = rotation(1.1), rotation(-2.4)
    a = AffineAction(
        hilbert(2),
        {"a": R1, "b": R2},
        {"a": centre - R1 @ centre, "b": centre - R2 @ centre},
    )
    res = fixed_point_search(a, DescentConfig())
    assert isinstance(res, FixedPointResult)
    assert np.linalg.norm(res.point - centre) < 1e-6
    v = coboundary_solve(a)
    assert v is not None
    assert np.linalg.norm(v - centre) < 1e-7


def test_coboundary_solve_rejects_translation():
    assert coboundary_solve(plane_translation([1.0, 0.0])) is None


def test_descent_config_guards():
    with pytest.raises(InputError):
        DescentConfig(alpha=1.5)
    with pytest.raises(InputError):
        DescentConfig(R=-1.0)
    with pytest.raises(InputError):
        DescentConfig(tol=0.0)


def test_gaussian_embedding_two_points_exact():
    pts = np.array([[0.0, 0.0], [1.0, 0.0]])
    t = 0.8
    F = gaussian_embedding(pts, t)
    G = F.T @ F
    g = math.exp(-t)
    assert np.allclose(G, [[1.0, g], [g, 1.0]], atol=1e-10)
    # embedded points are unit vectors with the prescribed separation
    d2 = np.sum((F[:, 0] - F[:, 1]) ** 2)
    assert d2 == pytest.approx(2.0 - 2.0 * g, abs=1e-10)


def test_gaussian_embedding_gram_properties():
    rng = np.random.default_rng(2)
    for t in (0.1, 1.0, 5.0):
        pts = rng.standard_normal((12, 3))
        F = gaussian_embedding(pts, t)
        G = F.T @ F
        assert np.allclose(np.diag(G), 1.0, atol=1e-9)
        sq = np.sum((pts[:, None, :] - pts[None, :, :]) ** 2, axis=2)
        assert np.allclose(G, np.exp(-t * sq), atol=1e-8)
        lam = np.linalg.eigvalsh(G)
        assert lam[0] >= -1e-9


def test_gaussian_embedding_guards():
    with pytest.raises(InputError):
        gaussian_embedding(np.zeros((2, 2)), 0.0)
    with pytest.raises(InputError):
        gaussian_embedding(np.array([[np.inf, 0.0]]), 1.0)


def test_evaluate_word_identity_on_empty():
    a = rotation_about(0.3, (1.0, 2.0))
    x = np.array([4.0, -1.0])
    assert np.allclose(evaluate_word(a, "", x), x, atol=1e-15)
