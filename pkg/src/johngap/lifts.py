"""Tilting equatorial directions off the equator.

For a pole beta and theta on the equator S^{n-1} ∩ beta^⊥:

    down(theta) = -(1/8) beta + sqrt(1 - 1/64) theta
    up(theta)   = sqrt(1 - 1/49) beta + (1/7) theta

Both are unit, <up(theta), down(theta)> = 1/C0 independently of theta, and
<down(alpha), up(theta)> > 0 forces <alpha, theta> >= sqrt(48/63) > 3/4.
"""

from dataclasses import dataclass
from functools import lru_cache
import math

import numpy as np

from .errors import NotOrthogonal, NotUnit

DOWN_POLE = -1.0 / 8.0
DOWN_EQ = math.sqrt(1.0 - 1.0 / 64.0)
UP_POLE = math.sqrt(1.0 - 1.0 / 49.0)
UP_EQ = 1.0 / 7.0

# <alpha, theta> at which <down(alpha), up(theta)> crosses zero.
SEPARATION_DOT = math.sqrt(48.0 / 63.0)

ORTHO_TOL = 1e-10


@lru_cache(maxsize=1)
def c0_constant():
    """1 / <up(theta), down(theta)>, evaluated once in extended precision."""
    import mpmath as mp

    with mp.workdps(50):
        one = mp.mpf(1)
        val = 1 / ((one / 7) * mp.sqrt(1 - one / 64) * (1 - mp.sqrt(mp.mpf(48) / 63)))
        return float(val)


def _prepare(theta, beta):
    theta = np.asarray(theta, dtype=np.float64)
    beta = np.asarray(beta, dtype=np.float64)
    bn = np.linalg.norm(beta)
    tn = np.linalg.norm(theta)
    if abs(bn - 1.0) > 1e-8 or tn < 1e-12:
        raise NotUnit("pole and direction must be unit vectors")
    if abs(tn - 1.0) > 1e-6:
        raise NotUnit("equatorial direction must be unit")
    if abs(float(theta @ beta)) / tn > 1e-6:
        raise NotOrthogonal("direction not orthogonal to the pole")
    # Renormalize so downstream unit-norm identities hold to ~1e-12.
    theta = theta / tn
    d = float(theta @ beta)
    if abs(d) > ORTHO_TOL:
        theta = theta - d * beta
        theta = theta / np.linalg.norm(theta)
    return theta, beta


def lift_down(theta, beta):
    theta, beta = _prepare(theta, beta)
    return DOWN_POLE * beta + DOWN_EQ * theta


def lift_up(theta, beta):
    theta, beta = _prepare(theta, beta)
    return UP_POLE * beta + UP_EQ * theta


def lift_down_many(thetas, beta):
    """Row-wise lift without per-row validation; rows must be unit ⊥ beta."""
    return DOWN_POLE * beta[None, :] + DOWN_EQ * np.asarray(thetas, dtype=np.float64)


def lift_up_many(thetas, beta):
    return UP_POLE * beta[None, :] + UP_EQ * np.asarray(thetas, dtype=np.float64)


@dataclass(frozen=True)
class SeparationReport:
    lhs: float  # <down(alpha), up(theta)>
    rhs: float  # <alpha, theta>
    implication_ok: bool


def separation_implication(alpha, theta, beta):
    """Check: <down(alpha), up(theta)> > 0 implies <alpha, theta> > 3/4."""
    a_down = lift_down(alpha, beta)
    t_up = lift_up(theta, beta)
    lhs = float(a_down @ t_up)
    alpha_n, _ = _prepare(alpha, beta)
    theta_n, _ = _prepare(theta, beta)
    rhs = float(alpha_n @ theta_n)
    ok = (lhs <= 0.0) or (rhs > 0.75)
    return SeparationReport(lhs=lhs, rhs=rhs, implication_ok=ok)


def random_equatorial(beta, count, rng):
    """Uniform directions on the equator orthogonal to ``beta``."""
    n = beta.shape[0]
    X = rng.standard_normal((count, n))
    X -= np.outer(X @ beta, beta)
    X /= np.linalg.norm(X, axis=1)[:, None]
    return X
