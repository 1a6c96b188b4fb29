"""Spherical nets and the support-sampled outer polytope P_delta.

With a net of mesh delta/(2R) on the sphere and a support oracle taking
values in [1, R], the polytope P with one facet per net direction at the
sampled support value satisfies (1-delta) P ⊂ K ⊂ P.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import BadRange, OracleRangeViolation, StrategyUnavailable
from .polytope import HPolytope, inclusion_check, support_values


@dataclass(frozen=True)
class SphericalNet:
    points: np.ndarray  # (N, n) unit rows
    mesh: float  # target covering radius (Euclidean)
    strategy: str  # "grid" or "random"
    certified: bool
    empirical_max_gap: float | None = None

    @property
    def size(self):
        return self.points.shape[0]

    @property
    def dim(self):
        return self.points.shape[1]


def _grid_net_2d(eps):
    count = math.ceil(2.0 * math.pi / eps)
    ang = 2.0 * math.pi * np.arange(count) / count
    return np.column_stack([np.cos(ang), np.sin(ang)])


def _grid_net_3d(eps):
    # Latitude bands of width <= eps/2; within each band, points along the
    # widest parallel with arc spacing <= eps/2. Any direction is then within
    # geodesic distance eps/4 + eps/4 of a net point, and chord <= geodesic.
    bands = math.ceil(math.pi / (eps / 2.0))
    dphi = math.pi / bands
    pts = []
    for j in range(bands):
        phi = (j + 0.5) * dphi
        smax = 1.0 if (phi - dphi / 2.0) <= math.pi / 2.0 <= (phi + dphi / 2.0) else max(
            math.sin(phi - dphi / 2.0), math.sin(phi + dphi / 2.0)
        )
        count = max(1, math.ceil(2.0 * math.pi * smax / (eps / 2.0)))
        lam = 2.0 * math.pi * np.arange(count) / count
        pts.append(
            np.column_stack(
                [
                    math.sin(phi) * np.cos(lam),
                    math.sin(phi) * np.sin(lam),
                    np.full(count, math.cos(phi)),
                ]
            )
        )
    return np.vstack(pts)


def random_unit(n, count, rng):
    X = rng.standard_normal((count, n))
    X /= np.linalg.norm(X, axis=1)[:, None]
    return X


def empirical_covering_gap(points, n, rng, test_dirs=10_000):
    """Max distance from sampled test directions to the net (chunked)."""
    worst = 0.0
    for start in range(0, test_dirs, 2000):
        D = random_unit(n, min(2000, test_dirs - start), rng)
        dots = D @ points.T
        best = dots.max(axis=1)
        gap = np.sqrt(np.maximum(2.0 - 2.0 * best, 0.0)).max()
        worst = max(worst, float(gap))
    return worst


RANDOM_NET_FACTOR = 3.0


def build_net(n, eps, strategy="grid", rng=None, test_dirs=10_000):
    if not 0.0 < eps <= 2.0:
        raise BadRange("mesh must be in (0, 2]")
    if strategy == "grid":
        if n == 2:
            pts = _grid_net_2d(eps)
        elif n == 3:
            pts = _grid_net_3d(eps)
        else:
            raise StrategyUnavailable("certified grid nets exist only for n <= 3")
        return SphericalNet(points=pts, mesh=eps, strategy="grid", certified=True)
    if strategy == "random":
        if rng is None:
            rng = np.random.default_rng(0)
        # volume bound on the covering number, padded for random placement
        count = math.ceil(RANDOM_NET_FACTOR * (1.0 + 2.0 / eps) ** n)
        count = max(count, 2 * n)
        pts = random_unit(n, count, rng)
        gap = empirical_covering_gap(pts, n, rng, test_dirs)
        return SphericalNet(
            points=pts, mesh=eps, strategy="random", certified=False, empirical_max_gap=gap
        )
    raise StrategyUnavailable(f"unknown strategy {strategy!r}")


@dataclass(frozen=True)
class SupportOracle:
    """Support function h restricted to the sphere, declared to lie in
    [1, lipschitz] and be lipschitz-Lipschitz."""

    fn: object  # direction -> float
    lipschitz: float
    batch_fn: object = None  # optional (N, n) -> (N,)

    def __call__(self, d):
        return float(self.fn(np.asarray(d, dtype=np.float64)))

    def many(self, D):
        if self.batch_fn is not None:
            return np.asarray(self.batch_fn(D), dtype=np.float64)
        return np.array([self(d) for d in D])


def polytope_support_oracle(K, R):
    """Support oracle of an H-polytope with B ⊂ K ⊂ R·B."""
    from .polytope import support_value

    return SupportOracle(
        fn=lambda d: support_value(K, d),
        lipschitz=float(R),
        batch_fn=lambda D: support_values(K, D),
    )


def approx_polytope(h, net, range_tol=1e-9):
    """P_delta: one facet per net direction at the sampled support value."""
    if net.size == 0:
        raise BadRange("net is empty")
    vals = h.many(net.points)
    if vals.min() < 1.0 - range_tol or vals.max() > h.lipschitz + range_tol:
        raise OracleRangeViolation(
            f"oracle range [{vals.min()}, {vals.max()}] outside [1, {h.lipschitz}]"
        )
    return HPolytope(net.points.copy(), vals)


@dataclass(frozen=True)
class SandwichReport:
    outer_ok: bool  # K ⊂ P
    inner_ok: bool  # (1-delta) P ⊂ K
    outer_margin: float
    inner_margin: float


def sandwich_check(K, P, delta, tol=1e-7):
    """Verify (1-delta) P ⊂ K ⊂ P by LP, facet family by facet family."""
    if not 0.0 < delta < 1.0:
        raise BadRange("delta must be in (0, 1)")
    outer = inclusion_check(K, P, 1.0, tol=tol)
    # (1-delta) P ⊂ K  <=>  support(P, y) <= b / (1-delta) per facet (y, b) of K.
    inner = inclusion_check(P, K, 1.0 / (1.0 - delta), tol=tol)
    return SandwichReport(
        outer_ok=outer.holds,
        inner_ok=inner.holds,
        outer_margin=outer.worst_margin,
        inner_margin=inner.worst_margin,
    )


@dataclass(frozen=True)
class LipschitzReport:
    worst_ratio: float
    trials: int


def lipschitz_audit(h, R, trials, rng, n):
    """Sampled |h(a) - h(t)| / |a - t| over unit pairs, near and far."""
    if trials < 1:
        raise BadRange("need trials >= 1")
    worst = 0.0
    done = 0
    while done < trials:
        batch = min(2000, trials - done)
        A = random_unit(n, batch, rng)
        # half the pairs are nearby perturbations to probe the local slope
        T = random_unit(n, batch, rng)
        near = rng.random(batch) < 0.5
        T[near] = A[near] + 0.05 * random_unit(n, int(near.sum()), rng)
        T /= np.linalg.norm(T, axis=1)[:, None]
        va = h.many(A)
        vt = h.many(T)
        dist = np.linalg.norm(A - T, axis=1)
        good = dist > 1e-9
        if good.any():
            worst = max(worst, float((np.abs(va - vt)[good] / dist[good]).max()))
        done += batch
    return LipschitzReport(worst_ratio=worst, trials=trials)


def random_sandwich_body(n, R, rng, max_rows=160):
    """Random H-polytope with B ⊂ K ⊂ R·B, for n <= 3 test grids.

    All normals are unit and all offsets >= 1, so B ⊂ K automatically; rows
    are added until vertex enumeration confirms the circumradius is <= R.
    """
    from .polytope import enumerate_vertices

    if n > 3:
        raise BadRange("generator relies on vertex enumeration; n <= 3 only")
    hi = 1.0 + 0.3 * (R - 1.0)
    while True:
        normals = np.vstack([np.eye(n), -np.eye(n)])
        offsets = 1.0 + (hi - 1.0) * rng.random(2 * n)
        while normals.shape[0] <= max_rows:
            K = HPolytope(normals.copy(), offsets.copy())
            V = enumerate_vertices(K)
            if V.shape[0] and np.linalg.norm(V, axis=1).max() <= R:
                return K
            fresh = random_unit(n, 8, rng)
            normals = np.vstack([normals, fresh])
            offsets = np.concatenate([offsets, 1.0 + (hi - 1.0) * rng.random(8)])
        # extremely unlucky draw; start over


def net_size_exponent(net, R, delta):
    """Calibrated c with |net| = exp(c log(2R/delta) n)."""
    return math.log(net.size) / (math.log(2.0 * R / delta) * net.dim)
