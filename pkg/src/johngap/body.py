"""The hard-to-approximate body: a John-position simplex cut by many
halfspaces whose normals are lifted separated-subset directions.

Facet directions are y_i = up(v_{I_i}); witnesses are x_i = C0 * down(v_{I_i}),
so <x_i, y_i> = 1 exactly, mismatched pairs have <x_i, y_j> <= 0, and every
<x_i, u_j> stays below the certificate threshold 1/(2R) = 3 C0 sqrt(k)/n.
"""

from dataclasses import dataclass, field
import json
import math

import numpy as np

from .errors import DegenerateK, OutOfRegime
from .frames import build_simplex, equator_frame
from .lifts import c0_constant, lift_down_many, lift_up_many
from .polytope import HPolytope
from .subsets import find_separated_family, subset_norm_constant

DEFAULT_M_MAX = 100_000

# R-admissibility constants from the facet-count analysis.
C_PRIME = None  # filled lazily; 1/(720 C0^2)


def _c_prime():
    global C_PRIME
    if C_PRIME is None:
        C_PRIME = 1.0 / (720.0 * c0_constant() ** 2)
    return C_PRIME


def c1_constant():
    return min(1.0, math.sqrt(_c_prime() / 8.0), 1.0 / (60.0 * c0_constant()))


def c0_lower_constant():
    """Coefficient of sqrt(n) in the lower admissibility bound on R."""
    return math.sqrt(2.0) * math.exp(4.0) / (6.0 * c0_constant())


@dataclass(frozen=True)
class HardBodyParams:
    n: int
    k: int
    m: int
    R: float  # realized ratio n / (6 C0 sqrt(k))
    seed: int
    m_max: int = DEFAULT_M_MAX
    requested_R: float | None = None
    log_m_exact: float = 0.0  # (k/20) log(n/2k), before the m_max cap
    flags: dict = field(default_factory=dict)

    @property
    def threshold(self):
        """Certificate threshold 1/(2R)."""
        return 1.0 / (2.0 * self.R)


def _admissibility_flags(n, k, R):
    return {
        "k_in_range": bool(100 <= k <= n / (2.0 * math.exp(8.0))),
        "R_above_sqrt_scale": bool(R >= c0_lower_constant() * math.sqrt(n)),
        "R_below_linear_scale": bool(R <= c1_constant() * n),
        "R_above_sqrt_en": bool(R > math.sqrt(math.e * n)),
    }


def _finish_params(n, k, seed, m, m_max, requested_R):
    C0 = c0_constant()
    R = n / (6.0 * C0 * math.sqrt(k))
    log_m_exact = (k / 20.0) * math.log(n / (2.0 * k)) if n > 2 * k else 0.0
    if m is None:
        m = int(min(math.floor(math.exp(min(log_m_exact, math.log(m_max * 2.0)))), m_max))
        m = max(m, 1)
    return HardBodyParams(
        n=n,
        k=k,
        m=int(m),
        R=R,
        seed=int(seed),
        m_max=int(m_max),
        requested_R=requested_R,
        log_m_exact=log_m_exact,
        flags=_admissibility_flags(n, k, R),
    )


def derive_params(n, R, seed=0, m=None, m_max=DEFAULT_M_MAX):
    """Parameters from (n, R): k = round((n/(6 C0 R))^2), m = (n/2k)^(k/20).

    Admissibility of (n, k, R) is recorded in ``flags``, never enforced.
    """
    if n < 3 or R <= 0:
        raise DegenerateK("need n >= 3 and R > 0")
    C0 = c0_constant()
    k = math.floor((n / (6.0 * C0 * R)) ** 2 + 0.5)
    if k < 1:
        raise DegenerateK(f"k rounds to 0 at n={n}, R={R}; the ratio is too large")
    return _finish_params(n, k, seed, m, m_max, requested_R=float(R))


def params_for_k(n, k, m=None, seed=0, m_max=DEFAULT_M_MAX):
    """Parameters from an explicit k (the realized R follows from it)."""
    if n < 3 or not 1 <= k <= n:
        raise DegenerateK(f"need n >= 3 and 1 <= k <= n, got n={n}, k={k}")
    return _finish_params(n, k, seed, m, m_max, requested_R=None)


@dataclass(frozen=True)
class HardBodyInstance:
    params: HardBodyParams
    frame: object  # SimplexFrame
    equator: object  # EquatorFrame
    subsets: list  # m KSubsets, pairwise overlap < k/2
    facet_dirs: np.ndarray  # (m, n) rows y_i
    witnesses: np.ndarray  # (m, n) rows x_i, |x_i| = C0
    body: HPolytope  # (n+1) + m rows, all offsets 1


def build_instance(params, max_attempts=10_000):
    n, k, m = params.n, params.k, params.m
    frame = build_simplex(n)
    ef = equator_frame(frame)
    rng = np.random.default_rng(params.seed)
    subsets = find_separated_family(n, k, m, rng, max_attempts=max_attempts)

    ind = np.zeros((m, n))
    for row, I in enumerate(subsets):
        ind[row, [i - 1 for i in I.indices]] = 1.0
    vdirs = (subset_norm_constant(n, k) / math.sqrt(k)) * (ind @ ef.dirs)

    Y = lift_up_many(vdirs, ef.beta)
    X = c0_constant() * lift_down_many(vdirs, ef.beta)
    body = HPolytope(
        np.vstack([frame.contacts, Y]),
        np.ones(n + 1 + m),
    )
    return HardBodyInstance(
        params=params,
        frame=frame,
        equator=ef,
        subsets=subsets,
        facet_dirs=Y,
        witnesses=X,
        body=body,
    )


def extract_certificate(inst):
    from .certificates import Certificate

    return Certificate(
        witnesses=inst.witnesses,
        facet_dirs=inst.facet_dirs,
        polar_generators=inst.frame.contacts,
        R=inst.params.R,
    )


@dataclass(frozen=True)
class TheoremBound:
    n: int
    R: float
    log_facet_bound: float  # log(m/2R) with the uncapped m
    simplified_log_bound: float  # C' log(R^2/n) n^2/R^2 - log(2n)
    c_prime: float


def theorem_bound(n, R):
    """Facet lower bound log(m/(2R)) at the (n, R)-derived parameters."""
    if R <= math.sqrt(math.e * n):
        raise OutOfRegime(f"need R > sqrt(e n); got R={R}, n={n}")
    C0 = c0_constant()
    k_exact = (n / (6.0 * C0 * R)) ** 2
    log_m = (k_exact / 20.0) * math.log(18.0 * C0 * C0 * R * R / n)
    log_bound = log_m - math.log(2.0 * R)
    cp = _c_prime()
    simplified = cp * math.log(R * R / n) * n * n / (R * R) - math.log(2.0 * n)
    return TheoremBound(
        n=n,
        R=float(R),
        log_facet_bound=log_bound,
        simplified_log_bound=simplified,
        c_prime=cp,
    )


def instance_to_json_dict(inst):
    """Stable serialization of an instance; floats as decimal strings."""
    p = inst.params
    return {
        "params": {
            "n": p.n,
            "k": p.k,
            "m": p.m,
            "R": repr(p.R),
            "seed": p.seed,
            "m_max": p.m_max,
            "log_m_exact": repr(p.log_m_exact),
            "flags": p.flags,
        },
        "frame_ref": {"dim": p.n, "construction": "householder-contact-frame"},
        "subsets": [list(I.indices) for I in inst.subsets],
        "polytope": inst.body.to_json_dict(),
        "witnesses": [[repr(float(v)) for v in row] for row in inst.witnesses],
    }


def instance_dumps(inst):
    return json.dumps(instance_to_json_dict(inst), indent=None, separators=(",", ":"))
