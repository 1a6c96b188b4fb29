"""Contact-frame and equatorial-section identities."""

import math

import numpy as np
import pytest

from johngap.errors import DimensionTooSmall
from johngap.frames import (
    build_simplex,
    equator_frame,
    frame_to_json,
    john_check,
    simplex_hrep,
)
from johngap.polytope import contains, radial_value, support_value


@pytest.mark.parametrize("n", [2, 3, 10, 100, 2000])
def test_gram_identities(n):
    f = build_simplex(n)
    G = f.contacts @ f.contacts.T
    assert np.abs(np.diag(G) - 1.0).max() < 1e-10
    off = G - np.eye(n + 1)
    mask = ~np.eye(n + 1, dtype=bool)
    assert np.abs(off[mask] + 1.0 / n).max() < 1e-10
    assert np.abs(f.contacts.sum(axis=0)).max() < 1e-9


@pytest.mark.parametrize("n", [2, 3, 10, 100])
def test_john_decomposition(n):
    f = build_simplex(n)
    rep = john_check(f.contacts, f.weights)
    assert rep.identity_error <= 1e-8
    assert rep.barycenter_error <= 1e-9


def test_john_check_coordinate_frame():
    pts = np.vstack([np.eye(3), -np.eye(3)])
    rep = john_check(pts, np.full(6, 0.5))
    assert rep.identity_error <= 1e-12
    assert rep.barycenter_error == 0.0


def test_john_check_wrong_weights_detected():
    n = 5
    f = build_simplex(n)
    rep = john_check(f.contacts, np.ones(n + 1))
    # sum u_i u_i^T = ((n+1)/n) I, so the residual is ||I/n||_F = sqrt(n)/n
    assert abs(rep.identity_error - math.sqrt(n) / n) < 1e-10


def test_hrep_geometry():
    f = build_simplex(2)
    K = simplex_hrep(f)
    assert contains(K, np.zeros(2))
    assert abs(radial_value(K, -f.contacts[0]) - 2.0) < 1e-12
    f3 = build_simplex(3)
    assert abs(support_value(simplex_hrep(f3), f3.contacts[0]) - 1.0) < 1e-8


def test_ball_inside_simplex(rng):
    f = build_simplex(6)
    K = simplex_hrep(f)
    X = rng.standard_normal((1000, 6))
    X /= np.linalg.norm(X, axis=1)[:, None]
    assert ((X @ K.normals.T) <= 1.0 + 1e-12).all()


@pytest.mark.parametrize("n", [3, 4, 10, 100])
def test_equator_frame(n):
    f = build_simplex(n)
    ef = equator_frame(f)
    assert abs(ef.c_n - math.sqrt((n - 1.0) / (n + 1.0))) < 1e-12
    assert np.abs(ef.dirs @ ef.beta).max() < 1e-10
    G = ef.dirs @ ef.dirs.T
    mask = ~np.eye(n, dtype=bool)
    assert np.abs(G[mask] + 1.0 / (n - 1.0)).max() < 1e-10
    assert np.abs(np.diag(G) - 1.0).max() < 1e-10


def test_equator_vertices_on_boundary():
    n = 7
    f = build_simplex(n)
    ef = equator_frame(f)
    K = simplex_hrep(f)
    for v in ef.dirs:
        p = ef.c_n * n * v
        assert contains(K, p, 1e-7)
        assert abs(float(p @ ef.beta)) < 1e-8
        # on the boundary: some facet is tight
        assert (1.0 - K.normals @ p).min() < 1e-7


def test_c3_value():
    assert abs(equator_frame(build_simplex(3)).c_n - math.sqrt(0.5)) < 1e-12


def test_c_n_monotone_to_one():
    vals = [equator_frame(build_simplex(n)).c_n for n in (3, 5, 10, 50, 200)]
    assert all(a < b for a, b in zip(vals, vals[1:]))
    assert vals[-1] < 1.0


def test_equator_needs_three_dims():
    with pytest.raises(DimensionTooSmall):
        equator_frame(build_simplex(2))


def test_frame_json():
    d = frame_to_json(build_simplex(3))
    assert d["dim"] == 3
    assert len(d["contacts"]) == 4
    assert float(d["c_n"]) == equator_frame(build_simplex(3)).c_n
