"""Certificate hypothesis checking, counting lemma, and the facet audit."""

import json

import numpy as np
import pytest

from johngap import body as hb
from johngap.certificates import (
    Certificate,
    adversarial_facet_audit,
    certificate_from_json_dict,
    counting_check,
    counting_trials,
    facet_lower_bound,
    verify_hypotheses,
)
from johngap.errors import UnverifiedCertificate
from johngap.polytope import ConvexCoefficients, HPolytope, polar_decompose


@pytest.fixture(scope="module")
def verified(small_instance):
    cert = hb.extract_certificate(small_instance)
    rep = verify_hypotheses(cert, small_instance.body)
    assert rep.passed
    return cert, small_instance.body, rep


def test_pass_on_built_instance(verified):
    cert, K, rep = verified
    assert rep.diagonal_worst <= 1e-9
    assert rep.cross_worst <= 0.0
    assert rep.polar_worst <= rep.threshold + 1e-9
    assert rep.membership_worst <= 1e-8
    assert rep.failing_family is None


def test_facet_lower_bound(verified):
    cert, _, rep = verified
    assert abs(facet_lower_bound(cert, rep) - cert.m / (2.0 * cert.R)) < 1e-12


def test_bound_requires_verified(verified):
    cert, _, _ = verified
    with pytest.raises(UnverifiedCertificate):
        facet_lower_bound(cert, None)


def test_planted_duplicate_facet_dir(verified):
    """Replacing y_2 by y_1 plants a cross-term violation at index 1."""
    cert, K, _ = verified
    Y = cert.facet_dirs.copy()
    Y[1] = Y[0]
    bad = Certificate(cert.witnesses, Y, cert.polar_generators, cert.R)
    rep = verify_hypotheses(bad, K)
    assert not rep.passed
    assert rep.failing_family in ("diagonal", "cross")


def test_planted_witness_shrink_sensitivity(verified):
    """Scaling witnesses by (1 - eps) breaks the diagonal by exactly eps."""
    cert, K, _ = verified
    eps = 1e-6
    bad = Certificate(
        (1.0 - eps) * cert.witnesses, cert.facet_dirs, cert.polar_generators, cert.R
    )
    rep = verify_hypotheses(bad, K)
    assert not rep.passed
    assert rep.failing_family == "diagonal"
    assert abs(rep.diagonal_worst - eps) < 1e-9


def test_planted_membership_violation(verified):
    cert, K, _ = verified
    X = cert.witnesses.copy()
    X[0] = 1.5 * X[0]
    bad = Certificate(X, cert.facet_dirs, cert.polar_generators, cert.R)
    rep = verify_hypotheses(bad, K)
    assert not rep.passed


def test_single_witness_certificate():
    p = hb.params_for_k(1100, 9, m=1, seed=5)
    inst = hb.build_instance(p)
    cert = hb.extract_certificate(inst)
    rep = verify_hypotheses(cert, inst.body)
    assert rep.passed
    assert rep.cross_worst == -np.inf


def test_counting_on_own_facet_dir(verified):
    cert, _, _ = verified
    lam = np.zeros(cert.m + cert.polar_generators.shape[0])
    lam[0] = 1.0
    rep = counting_check(cert, cert.facet_dirs[0], ConvexCoefficients(lam))
    assert rep.O_size == 1 and rep.ok and rep.lambda_floor_ok


def test_counting_on_polar_generator(verified):
    cert, _, _ = verified
    g = cert.polar_generators[2]
    lam = np.zeros(cert.m + cert.polar_generators.shape[0])
    lam[cert.m + 2] = 1.0
    rep = counting_check(cert, g, ConvexCoefficients(lam))
    assert rep.O_size == 0 and rep.ok and rep.lambda_floor_ok


def test_counting_trials_no_violations(verified, rng):
    cert, _, _ = verified
    trials, violations = counting_trials(cert, 500, rng, lp_points=2)
    assert trials == 502
    assert violations == 0


def test_counting_lp_decomposition(verified, rng):
    cert, _, _ = verified
    G = cert.generators()
    w = 0.5 * G[0] + 0.5 * G[1]
    coeffs = polar_decompose(G, w)
    rep = counting_check(cert, w, coeffs)
    assert rep.ok and rep.lambda_floor_ok


@pytest.fixture(scope="module")
def audit_verified(audit_instance):
    cert = hb.extract_certificate(audit_instance)
    rep = verify_hypotheses(cert, audit_instance.body)
    assert rep.passed
    return cert, audit_instance.body


def test_audit_self(audit_verified):
    cert, K = audit_verified
    rep = adversarial_facet_audit(cert, K, K)
    assert rep.sandwich_ok
    assert rep.facets_P == K.num_rows
    assert rep.facets_P >= rep.bound
    assert rep.consistent


def _toy_cert_and_body():
    """Synthetic low-dimensional certificate; the audit only consumes (m, R)
    and the two bodies, so hypothesis validity is irrelevant here."""
    ang = np.pi * np.arange(6) / 3.0
    normals = np.column_stack([np.cos(ang), np.sin(ang)])  # regular hexagon
    K = HPolytope(normals, np.ones(6))
    cert = Certificate(
        witnesses=normals, facet_dirs=normals, polar_generators=normals[:3], R=2.0
    )
    return cert, K


def test_audit_coarse_body_fails_sandwich():
    """A body that misses K entirely fails the outer inclusion."""
    cert, K = _toy_cert_and_body()
    # P is a small triangle: K is not inside it, so K ⊂ P fails
    P = HPolytope(3.0 * K.normals, np.ones(K.num_rows))
    rep = adversarial_facet_audit(cert, K, P)
    assert not rep.sandwich_ok
    assert not rep.outer_ok
    assert rep.consistent


def test_audit_dropped_facet_row():
    cert, K = _toy_cert_and_body()
    P = HPolytope(K.normals[:-1].copy(), K.offsets[:-1].copy())
    rep = adversarial_facet_audit(cert, K, P)
    assert rep.consistent
    if rep.sandwich_ok:
        assert rep.facets_P >= rep.bound


def test_audit_requires_unit_offsets():
    cert, K = _toy_cert_and_body()
    P = HPolytope(K.normals.copy(), 2.0 * np.ones(K.num_rows))
    with pytest.raises(ValueError):
        adversarial_facet_audit(cert, K, P)


def test_certificate_json_roundtrip(small_instance):
    d = json.loads(hb.instance_dumps(small_instance))
    cert, K = certificate_from_json_dict(d)
    assert np.array_equal(K.normals, small_instance.body.normals)
    assert np.array_equal(cert.witnesses, small_instance.witnesses)
    rep = verify_hypotheses(cert, K)
    assert rep.passed
