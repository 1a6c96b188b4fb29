"""Spherical nets, the sampled outer polytope, and the sandwich check."""

import math

import numpy as np
import pytest

from johngap.errors import BadRange, OracleRangeViolation, StrategyUnavailable
from johngap.frames import build_simplex, simplex_hrep
from johngap.nets import (
    SupportOracle,
    approx_polytope,
    build_net,
    empirical_covering_gap,
    lipschitz_audit,
    net_size_exponent,
    polytope_support_oracle,
    random_sandwich_body,
    sandwich_check,
)
from johngap.polytope import HPolytope, support_values


def test_grid_net_2d_counts():
    net = build_net(2, 0.1)
    assert net.size == math.ceil(2.0 * math.pi / 0.1) == 63
    assert net.certified
    assert np.abs(np.linalg.norm(net.points, axis=1) - 1.0).max() < 1e-12


def test_grid_net_2d_boundary_eps():
    assert build_net(2, 2.0).size == 4


def test_grid_net_2d_covering():
    net = build_net(2, 0.1)
    ang = np.random.default_rng(0).random(2000) * 2.0 * np.pi
    D = np.column_stack([np.cos(ang), np.sin(ang)])
    best = (D @ net.points.T).max(axis=1)
    gap = np.sqrt(np.maximum(2.0 - 2.0 * best, 0.0)).max()
    assert gap <= 0.1


def test_grid_net_3d_covering(rng):
    net = build_net(3, 0.25)
    gap = empirical_covering_gap(net.points, 3, rng, 20_000)
    assert gap <= 0.25
    assert net.certified


def test_grid_net_high_dim_unavailable():
    with pytest.raises(StrategyUnavailable):
        build_net(4, 0.3)


def test_random_net_reports_gap(rng):
    net = build_net(3, 0.4, strategy="random", rng=rng)
    assert not net.certified
    assert net.empirical_max_gap is not None
    assert net.empirical_max_gap < 0.4


def test_bad_eps():
    with pytest.raises(BadRange):
        build_net(2, 0.0)
    with pytest.raises(BadRange):
        build_net(2, 2.5)


def test_approx_ball_oracle():
    h = SupportOracle(fn=lambda d: 1.0, lipschitz=1.0)
    net = build_net(2, 0.3)
    P = approx_polytope(h, net)
    assert np.all(P.offsets == 1.0)
    assert P.num_rows == net.size


def test_approx_offsets_bit_exact():
    f = build_simplex(2)
    K = simplex_hrep(f)
    h = polytope_support_oracle(K, 2.0)
    net = build_net(2, 0.2)
    P = approx_polytope(h, net)
    assert np.array_equal(P.offsets, support_values(K, net.points))


def test_oracle_range_violation():
    h = SupportOracle(fn=lambda d: 0.5, lipschitz=2.0)
    with pytest.raises(OracleRangeViolation):
        approx_polytope(h, build_net(2, 0.5))


def test_sandwich_simplex_2d():
    f = build_simplex(2)
    K = simplex_hrep(f)
    R, delta = 2.0, 0.2
    net = build_net(2, delta / (2.0 * R))
    P = approx_polytope(polytope_support_oracle(K, R), net)
    rep = sandwich_check(K, P, delta)
    assert rep.outer_ok and rep.inner_ok
    assert rep.outer_margin <= 1e-8


def test_sandwich_detects_coarse_net():
    """eps far above delta/(2R) must break the inner inclusion."""
    f = build_simplex(2)
    K = simplex_hrep(f)
    net = build_net(2, 1.5)
    P = approx_polytope(polytope_support_oracle(K, 2.0), net)
    rep = sandwich_check(K, P, 0.01)
    assert rep.outer_ok
    assert not rep.inner_ok


def test_sandwich_ball_gap_geometry(rng):
    """For K = ball, inner inclusion holds iff net gap angle is small enough."""
    delta = 0.1
    ball = HPolytope(*_fine_ball_hrep())
    h = polytope_support_oracle(ball, 1.001)
    fine = build_net(2, 0.05)
    P = approx_polytope(h, fine)
    rep = sandwich_check(ball, P, delta)
    assert rep.outer_ok and rep.inner_ok
    # 4 directions at 90 degrees: support of P in between is 1/cos(45) > 1/(1-delta)
    coarse = build_net(2, 2.0)
    P2 = approx_polytope(h, coarse)
    rep2 = sandwich_check(ball, P2, delta)
    assert rep2.outer_ok and not rep2.inner_ok


def _fine_ball_hrep(count=720):
    ang = 2.0 * np.pi * np.arange(count) / count
    return np.column_stack([np.cos(ang), np.sin(ang)]), np.ones(count)


def test_bad_delta():
    f = build_simplex(2)
    K = simplex_hrep(f)
    with pytest.raises(BadRange):
        sandwich_check(K, K, 0.0)
    with pytest.raises(BadRange):
        sandwich_check(K, K, 1.0)


def test_lipschitz_constant_oracle(rng):
    h = SupportOracle(fn=lambda d: 1.0, lipschitz=1.0, batch_fn=lambda D: np.ones(len(D)))
    assert lipschitz_audit(h, 1.0, 2000, rng, 3).worst_ratio == 0.0


def test_lipschitz_thin_box(rng):
    R = 4.0
    K = HPolytope(np.vstack([np.eye(2), -np.eye(2)]), np.array([R, 1.0, R, 1.0]))
    h = polytope_support_oracle(K, R)
    rep = lipschitz_audit(h, R, 3000, rng, 2)
    assert rep.worst_ratio <= R + 1e-6


def test_lipschitz_simplex(rng):
    n = 5
    K = simplex_hrep(build_simplex(n))
    h = polytope_support_oracle(K, float(n))
    rep = lipschitz_audit(h, float(n), 2000, rng, n)
    assert rep.worst_ratio <= n + 1e-6


@pytest.mark.parametrize("n,R", [(2, 1.5), (2, 3.0), (3, 2.0)])
def test_random_sandwich_body_class(n, R, rng):
    for _ in range(5):
        K = random_sandwich_body(n, R, rng)
        X = rng.standard_normal((500, n))
        X /= np.linalg.norm(X, axis=1)[:, None]
        assert ((X @ K.normals.T) <= K.offsets[None, :] + 1e-12).all()  # B ⊂ K
        from johngap.polytope import enumerate_vertices

        V = enumerate_vertices(K)
        assert np.linalg.norm(V, axis=1).max() <= R + 1e-9  # K ⊂ R B


def test_net_size_exponent_reported():
    net = build_net(2, 0.05)
    c = net_size_exponent(net, 2.0, 0.2)
    assert 0.0 < c < 5.0
