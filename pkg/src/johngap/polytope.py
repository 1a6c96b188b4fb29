"""H-representation polytopes and LP-backed geometric oracles.

A polytope is stored as rows (a_i, b_i) meaning <x, a_i> <= b_i. Support
values are computed through the LP dual (min b.lam s.t. A^T lam = d,
lam >= 0), which keeps the tableau small even when the polytope has very
many facets. Radial values are closed-form over the rows.
"""

from dataclasses import dataclass
from itertools import combinations
import json

import numpy as np

from . import backend
from .errors import (
    DimensionMismatch,
    EmptyPolytope,
    NonUnitOffsets,
    NotInHull,
    UnboundedDirection,
    ZeroDirection,
)

LP_TOL = 1e-9


@dataclass(frozen=True)
class HPolytope:
    """Intersection of halfspaces {x : <x, normals[i]> <= offsets[i]}."""

    normals: np.ndarray  # (m, n)
    offsets: np.ndarray  # (m,)

    def __post_init__(self):
        normals = np.ascontiguousarray(self.normals, dtype=np.float64)
        offsets = np.ascontiguousarray(self.offsets, dtype=np.float64)
        if normals.ndim != 2 or offsets.ndim != 1 or normals.shape[0] != offsets.shape[0]:
            raise DimensionMismatch("normals must be (m, n) with m offsets")
        if not (np.isfinite(normals).all() and np.isfinite(offsets).all()):
            raise ValueError("non-finite entries in H-representation")
        row_norms = np.linalg.norm(normals, axis=1)
        if normals.shape[0] and row_norms.min() < 1e-14:
            raise ZeroDirection("zero-norm facet normal rejected")
        normals.setflags(write=False)
        offsets.setflags(write=False)
        object.__setattr__(self, "normals", normals)
        object.__setattr__(self, "offsets", offsets)

    @property
    def dim(self):
        return self.normals.shape[1]

    @property
    def num_rows(self):
        return self.normals.shape[0]

    def to_json_dict(self):
        """JSON form with reals as full-precision decimal strings."""
        return {
            "dim": self.dim,
            "normals": [[repr(float(v)) for v in row] for row in self.normals],
            "offsets": [repr(float(v)) for v in self.offsets],
        }

    @classmethod
    def from_json_dict(cls, d):
        normals = np.array([[float(v) for v in row] for row in d["normals"]], dtype=np.float64)
        offsets = np.array([float(v) for v in d["offsets"]], dtype=np.float64)
        if normals.shape != (len(d["offsets"]), int(d["dim"])):
            raise DimensionMismatch("inconsistent dimensions in serialized polytope")
        return cls(normals, offsets)

    def dumps(self):
        return json.dumps(self.to_json_dict(), indent=None, separators=(",", ":"))

    @classmethod
    def loads(cls, s):
        return cls.from_json_dict(json.loads(s))


@dataclass(frozen=True)
class ConvexCoefficients:
    """Nonnegative weights summing to 1 over a fixed generator list."""

    lam: np.ndarray

    def __post_init__(self):
        lam = np.asarray(self.lam, dtype=np.float64)
        if lam.min(initial=0.0) < -1e-9 or abs(lam.sum() - 1.0) > 1e-6:
            raise ValueError("not a convex combination")
        object.__setattr__(self, "lam", lam)

    def combine(self, generators):
        return np.asarray(generators, dtype=np.float64).T @ self.lam


def _raise_for_status(status):
    if status == backend.INFEASIBLE:
        # d is not in the cone of the normals: K recedes in direction d.
        raise UnboundedDirection("support unbounded in this direction")
    if status == backend.UNBOUNDED:
        raise EmptyPolytope("polytope is empty")
    raise EmptyPolytope("LP did not converge")


def _support_scipy(K, d):
    from scipy.optimize import linprog

    res = linprog(
        -d, A_ub=K.normals, b_ub=K.offsets, bounds=(None, None), method="highs"
    )
    if res.status == 3:
        raise UnboundedDirection("support unbounded in this direction")
    if res.status == 2:
        raise EmptyPolytope("polytope is empty")
    if not res.success:
        raise EmptyPolytope("LP did not converge")
    return -float(res.fun)


# The dense tableau has dim+1 rows, and its pivot count grows with the
# basis size; past this dimension HiGHS wins regardless of facet count.
_SCIPY_DIM_THRESHOLD = 400


def support_value(K, d):
    """max <x, d> over x in K, via the dual LP."""
    d = np.asarray(d, dtype=np.float64)
    if d.shape != (K.dim,):
        raise DimensionMismatch("direction dimension mismatch")
    if K.dim > _SCIPY_DIM_THRESHOLD:
        return _support_scipy(K, d)
    status, lam, obj = backend.solve_eq(K.offsets, K.normals.T, d, tol=LP_TOL)
    if status != backend.OPTIMAL:
        _raise_for_status(status)
    return obj


def support_values(K, directions):
    """Support in each row of ``directions``; one dual LP per direction."""
    D = np.ascontiguousarray(directions, dtype=np.float64)
    if D.ndim != 2 or D.shape[1] != K.dim:
        raise DimensionMismatch("directions must be (N, dim)")
    if K.dim > _SCIPY_DIM_THRESHOLD:
        return np.array([_support_scipy(K, d) for d in D])
    vals, stats = backend.support_batch(
        K.offsets, np.ascontiguousarray(K.normals.T), D, LP_TOL
    )
    if (stats != backend.OPTIMAL).any():
        _raise_for_status(int(stats[stats != backend.OPTIMAL][0]))
    return vals


def radial_value(K, d):
    """sup {r > 0 : r d in K} for K with 0 strictly inside; may be +inf."""
    d = np.asarray(d, dtype=np.float64)
    nd = np.linalg.norm(d)
    if nd < 1e-14:
        raise ZeroDirection("radial direction is zero")
    if K.offsets.min(initial=np.inf) <= 0:
        raise ValueError("radial_value requires all offsets > 0 (0 interior)")
    dots = K.normals @ d
    active = dots > 0
    if not active.any():
        return np.inf
    return float((K.offsets[active] / dots[active]).min())


def contains(K, x, tol=1e-9):
    x = np.asarray(x, dtype=np.float64)
    return bool((K.normals @ x <= K.offsets + tol).all())


def polar_vertices(K, tol=1e-9):
    """Generators of K° = conv{a_i} for a body with all offsets 1."""
    if K.num_rows == 0 or np.abs(K.offsets - 1.0).max() > tol:
        raise NonUnitOffsets("polar_vertices requires all offsets equal to 1")
    return K.normals


@dataclass(frozen=True)
class InclusionReport:
    holds: bool
    worst_margin: float
    worst_facet: int


def inclusion_check(inner, outer, scale=1.0, tol=1e-7):
    """Check inner ⊂ scale·outer facet by facet of the outer body.

    Per facet (a, b) of the outer body this asks support(inner, a) <= scale*b,
    so the work is one small LP per outer facet regardless of how many
    vertices the inner body has.
    """
    margins = support_values(inner, outer.normals) - scale * outer.offsets
    worst_facet = int(np.argmax(margins))
    worst = float(margins[worst_facet])
    return InclusionReport(holds=bool(worst <= tol), worst_margin=worst, worst_facet=worst_facet)


# Above this many equality-matrix entries the dense two-phase simplex becomes
# the bottleneck; hand the decomposition to scipy's HiGHS instead.
_SCIPY_SIZE_THRESHOLD = 500_000


def polar_decompose(generators, w, tol=1e-7):
    """One feasible convex combination of ``generators`` equal to ``w``."""
    G = np.ascontiguousarray(generators, dtype=np.float64)
    w = np.asarray(w, dtype=np.float64)
    g, n = G.shape
    if w.shape != (n,):
        raise DimensionMismatch("target dimension mismatch")
    A = np.empty((n + 1, g))
    A[:n] = G.T
    A[n] = 1.0
    b = np.concatenate([w, [1.0]])
    if A.size > _SCIPY_SIZE_THRESHOLD:
        from scipy.optimize import linprog

        res = linprog(np.zeros(g), A_eq=A, b_eq=b, bounds=(0, None), method="highs")
        if not res.success:
            raise NotInHull("target is not in the convex hull of the generators")
        lam = np.maximum(res.x, 0.0)
    else:
        status, lam, _ = backend.solve_eq(np.zeros(g), A, b, tol=LP_TOL)
        if status != backend.OPTIMAL:
            raise NotInHull("target is not in the convex hull of the generators")
    resid = np.abs(G.T @ lam - w).max()
    if resid > tol or abs(lam.sum() - 1.0) > tol:
        raise NotInHull("decomposition residual exceeds tolerance")
    lam = lam / lam.sum()
    return ConvexCoefficients(lam)


def enumerate_vertices(K, tol=1e-9):
    """Brute-force vertex enumeration; test oracle, intended for dim <= 3.

    Intersects every n-row subset and keeps feasible solutions, so it is
    exhaustive but exponential; callers must ensure K is bounded.
    """
    n = K.dim
    m = K.num_rows
    A, b = K.normals, K.offsets
    if m < n:
        return np.empty((0, n))
    idx = np.array(list(combinations(range(m), n)))
    subA = A[idx]  # (ncomb, n, n)
    dets = np.abs(np.linalg.det(subA))
    good = dets > tol
    if not good.any():
        return np.empty((0, n))
    X = np.linalg.solve(subA[good], b[idx[good]][..., None])[..., 0]
    feas = (X @ A.T <= b[None, :] + 1e-8 * (1.0 + np.abs(b))[None, :]).all(axis=1)
    V = X[feas]
    if V.shape[0] == 0:
        return np.empty((0, n))
    _, keep = np.unique(np.round(V, 7), axis=0, return_index=True)
    return V[np.sort(keep)]
