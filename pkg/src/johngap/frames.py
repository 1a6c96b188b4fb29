"""Regular simplex in John's position: contact frame and equatorial section.

The n+1 contact directions are built from the standard embedding in
R^{n+1} (unit vectors e_i recentred at the centroid) and mapped down with
a single Householder reflector, which is O(n^2) and deterministic.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, DimensionTooSmall
from .polytope import HPolytope


@dataclass(frozen=True)
class SimplexFrame:
    """Contact directions u_1..u_{n+1} of the inradius-1 regular simplex."""

    contacts: np.ndarray  # (n+1, n), unit rows with pairwise dot -1/n
    weights: np.ndarray  # (n+1,), all n/(n+1)

    def __post_init__(self):
        self.contacts.setflags(write=False)
        self.weights.setflags(write=False)

    @property
    def dim(self):
        return self.contacts.shape[1]


@dataclass(frozen=True)
class EquatorFrame:
    """Unit vertex directions of the equatorial section Delta_n ∩ {<x,u1>=0}.

    The section is an (n-1)-dimensional regular simplex with vertices
    c_n * n * dirs[i]; dirs has pairwise dot -1/(n-1) and every row is
    orthogonal to the pole ``beta``.
    """

    beta: np.ndarray  # (n,), = u_1
    dirs: np.ndarray  # (n, n), unit rows orthogonal to beta
    c_n: float

    def __post_init__(self):
        self.beta.setflags(write=False)
        self.dirs.setflags(write=False)

    @property
    def dim(self):
        return self.beta.shape[0]


def build_simplex(n):
    """Contact frame of the regular simplex with inradius 1 in R^n."""
    if n < 2:
        raise DimensionTooSmall("need n >= 2")
    # Embedded contacts: s*(e_i - centroid) in R^{n+1}, then drop to the
    # orthogonal complement of the all-ones direction via the Householder
    # reflector sending that direction to e_{n+1}.
    a = 1.0 / np.sqrt(n + 1.0)
    w = np.full(n + 1, a)
    w[n] -= 1.0
    wn2 = float(w @ w)
    s = np.sqrt((n + 1.0) / n)
    tvec = w - w.sum() / (n + 1.0)
    U = np.full((n + 1, n), -s / (n + 1.0))
    U[:n, :n] += s * np.eye(n)
    U -= (2.0 * s / wn2) * np.outer(tvec, w[:n])
    weights = np.full(n + 1, n / (n + 1.0))
    return SimplexFrame(contacts=U, weights=weights)


def simplex_hrep(frame):
    """Delta_n = {x : <x, u_i> <= 1 for every contact u_i}."""
    return HPolytope(frame.contacts.copy(), np.ones(frame.contacts.shape[0]))


@dataclass(frozen=True)
class JohnReport:
    identity_error: float  # Frobenius norm of sum a_i x_i x_i^T - I
    barycenter_error: float  # Euclidean norm of sum a_i x_i


def john_check(points, weights):
    """Residuals of the John identity-decomposition conditions."""
    X = np.asarray(points, dtype=np.float64)
    a = np.asarray(weights, dtype=np.float64)
    if X.ndim != 2 or a.shape != (X.shape[0],):
        raise DimensionMismatch("need one weight per point")
    n = X.shape[1]
    M = (X * a[:, None]).T @ X - np.eye(n)
    bary = a @ X
    return JohnReport(
        identity_error=float(np.linalg.norm(M)),
        barycenter_error=float(np.linalg.norm(bary)),
    )


def equator_frame(frame):
    """Vertex directions of the equatorial simplex cut out by <x, u_1> = 0.

    Vertices of the section are found on the simplex edges [w_1, w_i] with
    w_i = -n*u_i, giving p_i = -(n/(n+1))u_1 - (n^2/(n+1))u_i for i >= 2.
    """
    n = frame.dim
    if n < 3:
        raise DimensionTooSmall("equatorial section needs n >= 3")
    U = frame.contacts
    beta = U[0].copy()
    P = -(n / (n + 1.0)) * beta[None, :] - (n * n / (n + 1.0)) * U[1:]
    norms = np.linalg.norm(P, axis=1)
    dirs = P / norms[:, None]
    c_n = float(norms.mean() / n)
    return EquatorFrame(beta=beta, dirs=dirs, c_n=c_n)


def frame_to_json(frame):
    d = {
        "dim": frame.dim,
        "contacts": [[repr(float(v)) for v in row] for row in frame.contacts],
    }
    if frame.dim >= 3:
        d["c_n"] = repr(equator_frame(frame).c_n)
    else:
        d["c_n"] = None
    return d
