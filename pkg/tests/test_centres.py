import math

import numpy as np
import pytest

from coarsefp import (
    BoundedSet,
    ConvergenceError,
    InputError,
    ShoppingConfig,
    WeightedSet,
    annulus_invariance_check,
    centre_equivariance_check,
    chebyshev_centre,
    compactness_demo,
    hilbert,
    hilbert_nested_bound_check,
    hull_distance,
    lp,
    mean_centre,
    projected_radius,
    radius_at,
    shopping_centre,
    solve_centre,
    stability_bound_check,
    swap_family_set,
    swap_isometry,
)

from helpers import (
    lp_grid_oracle,
    lp_kkt_residual,
    meb_oracle,
    random_orthogonal,
    random_point_set,
    random_signed_permutation,
)


def test_triangle_centre_exact():
    # Equilateral triangle inscribed in the unit circle: centre at the
    # origin, radius 1, circumradius of the vertex set 1.
    ang = np.array([0.0, 2.0 * np.pi / 3.0, 4.0 * np.pi / 3.0])
    pts = np.stack([np.cos(ang), np.sin(ang)], axis=1)
    z, rho = chebyshev_centre(BoundedSet(hilbert(2), pts))
    assert np.linalg.norm(z) < 1e-9
    assert rho == pytest.approx(1.0, abs=1e-9)


def test_unit_edge_triangle_radius():
    pts = np.array([[0.0, 0.0], [1.0, 0.0], [0.5, math.sqrt(3.0) / 2.0]])
    _, rho = chebyshev_centre(BoundedSet(hilbert(2), pts))
    assert rho == pytest.approx(1.0 / math.sqrt(3.0), abs=1e-9)


def test_single_and_pair_edge_cases():
    sp = hilbert(3)
    p = np.array([[1.0, -2.0, 0.5]])
    z, rho = chebyshev_centre(BoundedSet(sp, p))
    assert np.allclose(z, p[0]) and rho == 0.0
    pair = np.array([[0.0, 0.0, 0.0], [2.0, 0.0, 0.0]])
    z, rho = chebyshev_centre(BoundedSet(sp, pair))
    assert np.allclose(z, [1.0, 0.0, 0.0], atol=1e-9)
    assert rho == pytest.approx(1.0, abs=1e-9)


@pytest.mark.parametrize("dim", [2, 3])
def test_hilbert_centres_match_brute_force(dim):
    rng = np.random.default_rng(100 + dim)
    for _ in range(60):
        pts = random_point_set(rng, rng.integers(3, 9), dim)
        z, rho = chebyshev_centre(BoundedSet(hilbert(dim), pts))
        zo, ro = meb_oracle(pts)
        assert rho == pytest.approx(ro, abs=1e-6)
        assert np.linalg.norm(z - zo) < 1e-5


def test_lp_centres_certified_optimal():
    # The lp radius functional is convex, so optimality is certified two
    # ways: the solver never loses to an independent grid search, and zero
    # lies in the hull of the active gradients (the exact minimax condition).
    rng = np.random.default_rng(7)
    sp = lp(4.0, 2)
    for _ in range(12):
        pts = random_point_set(rng, rng.integers(3, 8), 2)
        A = BoundedSet(sp, pts)
        z, rho = chebyshev_centre(A, tol=1e-10)
        assert rho == pytest.approx(radius_at(A, z), abs=1e-12)
        zo, ro = lp_grid_oracle(pts, 4.0)
        assert rho <= ro + 1e-6
        assert abs(rho - ro) < 0.05
        res, n_active = lp_kkt_residual(pts, z, 4.0)
        assert n_active >= 2
        assert res <= 1e-5


def test_lp_centre_small_p_certified():
    rng = np.random.default_rng(9)
    sp = lp(1.5, 2)
    for _ in range(6):
        pts = random_point_set(rng, 5, 2)
        z, rho = chebyshev_centre(BoundedSet(sp, pts), tol=1e-10)
        zo, ro = lp_grid_oracle(pts, 1.5)
        assert rho <= ro + 1e-6
        res, n_active = lp_kkt_residual(pts, z, 1.5)
        assert n_active >= 2
        assert res <= 1e-5


def test_radius_at_matches_definition():
    rng = np.random.default_rng(3)
    pts = random_point_set(rng, 6, 3)
    A = BoundedSet(hilbert(3), pts)
    x = rng.standard_normal(3)
    assert radius_at(A, x) == pytest.approx(np.linalg.norm(pts - x, axis=1).max())


def test_solver_diagnostics_populated():
    rng = np.random.default_rng(11)
    pts = random_point_set(rng, 8, 3)
    sol = solve_centre(BoundedSet(hilbert(3), pts))
    assert sol.iterations >= 1
    assert sol.residual >= 0.0
    assert sol.rho == pytest.approx(np.linalg.norm(pts - sol.centre, axis=1).max(), abs=1e-9)


def test_annulus_invariance():
    rng = np.random.default_rng(21)
    for _ in range(10):
        pts = random_point_set(rng, 12, 3)
        A = BoundedSet(hilbert(3), pts)
        assert annulus_invariance_check(A, eps=1e-6)
    with pytest.raises(InputError):
        annulus_invariance_check(A, eps=0.0)


def test_nested_bound_random_subsets():
    rng = np.random.default_rng(31)
    for _ in range(25):
        pts = random_point_set(rng, 10, 3)
        A = BoundedSet(hilbert(3), pts)
        keep = rng.random(10) < 0.7
        keep[rng.integers(0, 10)] = True
        B = BoundedSet(hilbert(3), pts[keep])
        assert hilbert_nested_bound_check(A, B, slack=1e-7)


def test_nested_bound_tight_case():
    # A = {-e1, +e1}, B = {+e1}: |Z(A) Z(B)| = 1 = sqrt(1 - 0), equality.
    sp = hilbert(2)
    A = BoundedSet(sp, np.array([[-1.0, 0.0], [1.0, 0.0]]))
    B = BoundedSet(sp, np.array([[1.0, 0.0]]))
    assert hilbert_nested_bound_check(A, B, slack=1e-9)


def test_nested_bound_requires_subset():
    sp = hilbert(2)
    A = BoundedSet(sp, np.array([[0.0, 0.0], [1.0, 0.0]]))
    B = BoundedSet(sp, np.array([[5.0, 5.0]]))
    with pytest.raises(InputError):
        hilbert_nested_bound_check(A, B)
    with pytest.raises(InputError):
        hilbert_nested_bound_check(BoundedSet(lp(4.0, 2), A.points), B)


@pytest.mark.parametrize("kind,p", [("hilbert", None), ("lp", 4.0)])
def test_stability_bound_random_subsets(kind, p):
    sp = hilbert(3) if kind == "hilbert" else lp(p, 3)
    rng = np.random.default_rng(41)
    for _ in range(15):
        pts = random_point_set(rng, 9, 3)
        keep = rng.random(9) < 0.7
        keep[rng.integers(0, 9)] = True
        A = BoundedSet(sp, pts)
        B = BoundedSet(sp, pts[keep])
        for eps in (0.5, 1.0):
            assert stability_bound_check(A, B, eps, slack=1e-6)


def test_equivariance_hilbert_rotations():
    rng = np.random.default_rng(51)
    for _ in range(10):
        pts = random_point_set(rng, 7, 3)
        A = BoundedSet(hilbert(3), pts)
        Q = random_orthogonal(rng, 3)
        t = rng.standard_normal(3)
        assert centre_equivariance_check(A, Q, t, tol=1e-6)


def test_equivariance_lp_signed_permutations():
    rng = np.random.default_rng(61)
    sp = lp(3.0, 3)
    for _ in range(6):
        pts = random_point_set(rng, 6, 3)
        A = BoundedSet(sp, pts)
        P = random_signed_permutation(rng, 3)
        t = rng.standard_normal(3)
        assert centre_equivariance_check(A, P, t, tol=1e-5)


def test_equivariance_rejects_generic_matrix_for_lp():
    sp = lp(3.0, 2)
    A = BoundedSet(sp, np.array([[0.0, 0.0], [1.0, 1.0]]))
    th = 0.3
    R = np.array([[math.cos(th), -math.sin(th)], [math.sin(th), math.cos(th)]])
    with pytest.raises(InputError):
        centre_equivariance_check(A, R, np.zeros(2))


def test_hull_distance_inside_and_outside():
    pts = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
    coeffs, res = hull_distance(pts, np.array([0.25, 0.25]))
    assert res < 1e-8
    assert coeffs.sum() == pytest.approx(1.0, abs=1e-9)
    assert np.all(coeffs >= -1e-12)
    _, res_out = hull_distance(pts, np.array([2.0, 0.0]))
    assert res_out == pytest.approx(1.0, abs=1e-4)


def test_mean_centre_depth_zero_is_plain_centre():
    rng = np.random.default_rng(71)
    pts = random_point_set(rng, 8, 2)
    mu = WeightedSet(hilbert(2), pts, np.full(8, 0.125))
    z0 = mean_centre(mu, 0)
    z, _ = chebyshev_centre(BoundedSet(hilbert(2), pts))
    assert np.linalg.norm(z0 - z) < 1e-7


def test_mean_centre_full_depth_is_barycentre():
    rng = np.random.default_rng(81)
    pts = random_point_set(rng, 8, 2)
    w = rng.uniform(0.5, 2.0, size=8)
    mu = WeightedSet(hilbert(2), pts, w)
    zF = mean_centre(mu, 8)  # 2^8 cells, every cell a singleton
    bary = (w[:, None] * pts).sum(axis=0) / w.sum()
    assert np.linalg.norm(zF - bary) < 1e-9


def test_mean_centre_interpolates():
    # a heavy far cluster drags the deep mean centre toward it
    sp = hilbert(2)
    pts = np.vstack([np.zeros((1, 2)), np.full((1, 2), 10.0)])
    mu = WeightedSet(sp, pts, np.array([1.0, 3.0]))
    z0 = mean_centre(mu, 0)
    z3 = mean_centre(mu, 3)
    assert np.allclose(z0, [5.0, 5.0], atol=1e-7)
    assert np.allclose(z3, [7.5, 7.5], atol=1e-7)
    with pytest.raises(InputError):
        mean_centre(mu, -1)


def test_projected_radius_decreases_along_principal_directions():
    L = swap_family_set(6)
    r0 = projected_radius(L, np.zeros((0, 6)))
    e1 = np.eye(6)[:1]
    r1 = projected_radius(L, e1)
    assert r0 == pytest.approx(10.0, abs=1e-9)  # the far points dominate
    assert r1 < r0
    with pytest.raises(InputError):
        projected_radius(L, np.array([[1.0, 1.0, 0.0, 0.0, 0.0, 0.0]]))
    with pytest.raises(InputError):
        projected_radius(BoundedSet(lp(4.0, 2), np.zeros((1, 2))), np.zeros((0, 2)))


def test_shopping_centre_on_swap_family():
    L = swap_family_set(8)
    res = shopping_centre(L, ShoppingConfig(subspace_budget=1, tol=1e-6))
    assert np.linalg.norm(res.centre) < 1e-6
    assert res.s_hat == pytest.approx(1.0, abs=1e-9)
    assert res.hull_residual <= 1e-6
    # s_path starts at the plain radius and never increases
    assert res.s_path[0] == pytest.approx(10.0, abs=1e-9)
    assert all(b <= a + 1e-9 for a, b in zip(res.s_path, res.s_path[1:]))


def test_shopping_centre_budget_guard():
    L = swap_family_set(4)
    with pytest.raises(InputError):
        shopping_centre(L, ShoppingConfig(subspace_budget=4))
    with pytest.raises(InputError):
        ShoppingConfig(subspace_budget=1, eps_schedule=(0.5, 0.5))
    with pytest.raises(InputError):
        shopping_centre(BoundedSet(lp(4.0, 3), np.eye(3)), ShoppingConfig(subspace_budget=1))


def test_centres_spread_while_shopping_centres_stay():
    rep = compactness_demo(8)
    assert not rep.degenerate
    assert rep.pairwise_min == pytest.approx(math.sqrt(2.0), abs=1e-6)
    assert rep.pairwise_max == pytest.approx(math.sqrt(2.0), abs=1e-6)
    assert rep.shopping_norms.max() < 0.05
    assert np.allclose(rep.s_hats, 1.0, atol=1e-6)


def test_bounded_set_validation():
    with pytest.raises(InputError):
        BoundedSet(hilbert(2), np.zeros((0, 2)))
    with pytest.raises(InputError):
        BoundedSet(hilbert(2), np.array([[np.inf, 0.0]]))
    with pytest.raises(InputError):
        WeightedSet(hilbert(2), np.zeros((2, 2)), np.array([-1.0, 2.0]))
