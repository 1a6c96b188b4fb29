"""Certificate verification and the facet-count lower bound m/(2R).

A certificate bundles witnesses x_i, facet directions y_i, the polar
generators of the untouched part of the body, and the ratio R. Its three
inequality families imply that any polytope sandwiched as K ⊂ P ⊂ RK has
at least m/(2R) facets; the counting argument behind that implication is
also checked directly on decomposed polar points.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import DimensionMismatch, UnverifiedCertificate
from .polytope import contains, inclusion_check, polar_decompose


@dataclass(frozen=True)
class Certificate:
    witnesses: np.ndarray  # (m, n)
    facet_dirs: np.ndarray  # (m, n)
    polar_generators: np.ndarray  # (g, n), generators of L°
    R: float

    def __post_init__(self):
        X = np.ascontiguousarray(self.witnesses, dtype=np.float64)
        Y = np.ascontiguousarray(self.facet_dirs, dtype=np.float64)
        U = np.ascontiguousarray(self.polar_generators, dtype=np.float64)
        if X.shape != Y.shape or X.shape[1] != U.shape[1]:
            raise DimensionMismatch("witnesses, facet dirs and polar generators disagree")
        if self.R <= 1.0:
            raise ValueError("certificate requires R > 1")
        for a in (X, Y, U):
            a.setflags(write=False)
        object.__setattr__(self, "witnesses", X)
        object.__setattr__(self, "facet_dirs", Y)
        object.__setattr__(self, "polar_generators", U)

    @property
    def m(self):
        return self.witnesses.shape[0]

    @property
    def dim(self):
        return self.witnesses.shape[1]

    @property
    def threshold(self):
        return 1.0 / (2.0 * self.R)

    def generators(self):
        """Generator list of K° in the order the coefficients index it."""
        return np.vstack([self.facet_dirs, self.polar_generators])


@dataclass(frozen=True)
class HypothesisReport:
    passed: bool
    diagonal_worst: float  # max_i |<x_i, y_i> - 1|
    cross_worst: float  # max_{i != j} <x_i, y_j> (-inf when m = 1)
    polar_worst: float  # max_{i, g} <x_i, g>
    membership_worst: float  # max_i max_row (<x_i, a> - b)
    boundary_worst: float  # max_i distance of x_i from its own facet plane
    threshold: float
    failing_family: str | None
    failing_index: int | None


def verify_hypotheses(cert, K, tol=1e-9, membership_tol=1e-8):
    """Check all three inequality families plus x_i ∈ K and x_i ∈ ∂K."""
    X, Y, U = cert.witnesses, cert.facet_dirs, cert.polar_generators
    if K.dim != cert.dim:
        raise DimensionMismatch("certificate and body dimensions differ")
    thr = cert.threshold
    G = X @ Y.T  # (m, m)
    diag = np.abs(np.diag(G) - 1.0)
    diagonal_worst = float(diag.max())
    off = G.copy()
    np.fill_diagonal(off, -np.inf)
    cross_worst = float(off.max()) if cert.m > 1 else -math.inf
    polar = X @ U.T
    polar_worst = float(polar.max())
    slack = (X @ K.normals.T) - K.offsets[None, :]
    membership_worst = float(slack.max())
    # x_i lies on the hyperplane of its own facet row of K iff <x_i,y_i> = 1.
    boundary_worst = diagonal_worst / float(np.linalg.norm(Y, axis=1).max())

    failing_family = None
    failing_index = None
    if diagonal_worst > tol:
        failing_family, failing_index = "diagonal", int(diag.argmax())
    elif cert.m > 1 and cross_worst > thr + tol:
        failing_family, failing_index = "cross", int(np.unravel_index(off.argmax(), off.shape)[0])
    elif polar_worst > thr + tol:
        failing_family, failing_index = "polar", int(np.unravel_index(polar.argmax(), polar.shape)[0])
    elif membership_worst > membership_tol:
        failing_family, failing_index = "membership", int(np.unravel_index(slack.argmax(), slack.shape)[0])
    return HypothesisReport(
        passed=failing_family is None,
        diagonal_worst=diagonal_worst,
        cross_worst=cross_worst,
        polar_worst=polar_worst,
        membership_worst=membership_worst,
        boundary_worst=boundary_worst,
        threshold=thr,
        failing_family=failing_family,
        failing_index=failing_index,
    )


def facet_lower_bound(cert, report):
    """m/(2R): the certified minimum facet count of any sandwiched polytope."""
    if report is None or not report.passed:
        raise UnverifiedCertificate("verify_hypotheses must pass before the bound applies")
    return cert.m / (2.0 * cert.R)


@dataclass(frozen=True)
class CountingReport:
    O_size: int
    ok: bool  # O_size <= 2R
    lambda_floor_ok: bool  # lam_i >= 1/(2R) - tol for every i in O


def counting_check(cert, w, coeffs, tol=1e-9):
    """The proof's counting step for one polar point w with decomposition coeffs.

    O = {i : R <x_i, w> >= 1}; any fixed feasible convex decomposition of w
    over [y_1..y_m] + polar generators must put weight >= 1/(2R) on each
    index in O, which caps |O| at 2R.
    """
    w = np.asarray(w, dtype=np.float64)
    lam = coeffs.lam
    if lam.shape[0] != cert.m + cert.polar_generators.shape[0]:
        raise DimensionMismatch("coefficients must index facet dirs then polar generators")
    hits = cert.R * (cert.witnesses @ w) >= 1.0 - 1e-12
    O = np.nonzero(hits)[0]
    floor = cert.threshold - tol
    floor_ok = bool((lam[O] >= floor).all()) if O.size else True
    return CountingReport(O_size=int(O.size), ok=bool(O.size <= 2.0 * cert.R), lambda_floor_ok=floor_ok)


def counting_trials(cert, count, rng, mix=5, lp_points=0, tol=1e-9):
    """Monte Carlo sweep of counting_check over random points of K°.

    Each trial mixes ``mix`` random generators with Dirichlet weights (a
    feasible decomposition by construction). ``lp_points`` extra boundary
    normals of K are decomposed from scratch with the LP instead.
    Returns (trials, violations).
    """
    from .polytope import ConvexCoefficients

    G = cert.generators()
    total_gen = G.shape[0]
    violations = 0
    trials = 0
    for start in range(0, count, 4096):
        batch = min(4096, count - start)
        idx = rng.integers(0, total_gen, size=(batch, mix))
        wts = rng.dirichlet(np.ones(mix), size=batch)
        for t in range(batch):
            lam = np.zeros(total_gen)
            np.add.at(lam, idx[t], wts[t])
            w = G[idx[t]].T @ wts[t]
            rep = counting_check(cert, w, ConvexCoefficients(lam), tol=tol)
            trials += 1
            if not (rep.ok and rep.lambda_floor_ok):
                violations += 1
    for j in range(lp_points):
        pick = int(rng.integers(0, total_gen))
        w = G[pick]
        coeffs = polar_decompose(G, w)
        rep = counting_check(cert, w, coeffs, tol=tol)
        trials += 1
        if not (rep.ok and rep.lambda_floor_ok):
            violations += 1
    return trials, violations


@dataclass(frozen=True)
class AuditReport:
    sandwich_ok: bool
    outer_ok: bool  # K ⊂ P
    inner_ok: bool  # P ⊂ RK
    facets_P: int
    bound: float
    consistent: bool  # never (sandwich holds and P has fewer facets than bound)


def adversarial_facet_audit(cert, K, P, tol=1e-7):
    """Audit one candidate P against the theorem: sandwich implies many facets."""
    if np.abs(P.offsets - 1.0).max() > 1e-9:
        raise ValueError("audit requires candidate offsets normalized to 1")
    outer = inclusion_check(K, P, 1.0, tol=tol)
    inner = inclusion_check(P, K, cert.R, tol=tol)
    sandwich = outer.holds and inner.holds
    bound = cert.m / (2.0 * cert.R)
    consistent = not (sandwich and P.num_rows < bound)
    return AuditReport(
        sandwich_ok=sandwich,
        outer_ok=outer.holds,
        inner_ok=inner.holds,
        facets_P=P.num_rows,
        bound=bound,
        consistent=consistent,
    )


def certificate_from_json_dict(d):
    """Rebuild a certificate from a serialized hard-body instance."""
    from .polytope import HPolytope

    n = int(d["params"]["n"])
    m = int(d["params"]["m"])
    R = float(d["params"]["R"])
    body = HPolytope.from_json_dict(d["polytope"])
    X = np.array([[float(v) for v in row] for row in d["witnesses"]])
    U = body.normals[: n + 1]
    Y = body.normals[n + 1 :]
    if Y.shape[0] != m or X.shape != (m, n):
        raise DimensionMismatch("serialized instance is inconsistent")
    return Certificate(witnesses=X, facet_dirs=Y, polar_generators=U, R=R), body
