"""Uniform k-subsets, hypergeometric tails, and separated direction families.

Tail probabilities are evaluated in log space with log-gamma so values far
below double underflow still compare correctly against the closed-form
bound (2k/n)^(k/5).
"""

from dataclasses import dataclass
import math

import numpy as np
from scipy.special import gammaln, logsumexp

from .errors import BadRange, DimensionMismatch, FamilyNotFound, OutOfRegime

# Admissible regime of the tail bound: 100 < k < n / (2 e^8).
REGIME_DENOM = 2.0 * math.exp(8.0)


@dataclass(frozen=True)
class KSubset:
    """Sorted k-subset of {1, ..., n}."""

    n: int
    indices: tuple

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        if not idx or any(i < 1 or i > self.n for i in idx):
            raise BadRange("indices must lie in [1..n]")
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise BadRange("indices must be strictly increasing")
        object.__setattr__(self, "indices", idx)

    @property
    def k(self):
        return len(self.indices)


def sample_ksubset(n, k, rng):
    """Uniform k-subset via partial Fisher-Yates over a sparse index map."""
    if not 1 <= k <= n:
        raise BadRange(f"need 1 <= k <= n, got k={k}, n={n}")
    mapping = {}
    chosen = []
    for i in range(k):
        j = int(rng.integers(i, n))
        vj = mapping.get(j, j)
        mapping[j] = mapping.get(i, i)
        mapping[i] = vj
        chosen.append(vj)
    return KSubset(n=n, indices=sorted(c + 1 for c in chosen))


def intersection_size(I, J):
    if I.n != J.n:
        raise DimensionMismatch("subsets drawn from different ground sets")
    # sorted merge
    a, b = I.indices, J.indices
    i = j = count = 0
    while i < len(a) and j < len(b):
        if a[i] == b[j]:
            count += 1
            i += 1
            j += 1
        elif a[i] < b[j]:
            i += 1
        else:
            j += 1
    return count


def _check_point_args(n, k, l):
    if not (0 <= l <= k <= n):
        raise BadRange(f"need 0 <= l <= k <= n, got n={n}, k={k}, l={l}")


def log_point_mass(n, k, l):
    """log P(|I ∩ J| = l) = log [ C(k,l) C(n-k,k-l) / C(n,k) ]; -inf if impossible."""
    _check_point_args(n, k, l)
    if k - l > n - k:
        return -math.inf

    def lc(a, b):
        return gammaln(a + 1) - gammaln(b + 1) - gammaln(a - b + 1)

    return float(lc(k, l) + lc(n - k, k - l) - lc(n, k))


def exact_point_mass(n, k, l):
    return math.exp(log_point_mass(n, k, l))


def log_exact_tail(n, k, t):
    """log P(|I ∩ J| >= t); t may be fractional (e.g. k/2)."""
    if t <= 0:
        return 0.0
    lo = math.ceil(t)
    if lo > k:
        return -math.inf
    terms = [log_point_mass(n, k, l) for l in range(lo, k + 1)]
    terms = [v for v in terms if v > -math.inf]
    if not terms:
        return -math.inf
    return float(logsumexp(np.array(terms)))


def exact_tail(n, k, t):
    v = log_exact_tail(n, k, t)
    return 0.0 if v == -math.inf else min(math.exp(v), 1.0)


@dataclass(frozen=True)
class TailReport:
    n: int
    k: int
    threshold: float
    exact_tail_log: float
    bound_log: float
    satisfied: bool


def in_tail_regime(n, k):
    return 100 < k < n / REGIME_DENOM


def tail_bound_check(n, k):
    """Compare the exact k/2 tail against (2k/n)^(k/5) in log space."""
    if not in_tail_regime(n, k):
        raise OutOfRegime(f"need 100 < k < n/(2e^8); got n={n}, k={k}")
    t = k / 2.0
    exact_log = log_exact_tail(n, k, t)
    bound_log = (k / 5.0) * math.log(2.0 * k / n)
    return TailReport(
        n=n,
        k=k,
        threshold=t,
        exact_tail_log=exact_log,
        bound_log=bound_log,
        satisfied=bool(exact_log <= bound_log),
    )


def find_separated_family(n, k, m, rng, max_attempts=10_000):
    """Greedy rejection sampling for m k-subsets with pairwise overlap < k/2.

    ``max_attempts`` bounds consecutive rejections; success is certified a
    posteriori by the caller counting pairwise intersections.
    """
    if m < 1:
        raise BadRange("need m >= 1")
    kept = []
    members = np.zeros((m, n))
    misses = 0
    while len(kept) < m:
        cand = sample_ksubset(n, k, rng)
        ind = np.zeros(n)
        ind[[i - 1 for i in cand.indices]] = 1.0
        if kept:
            overlaps = members[: len(kept)] @ ind
            if overlaps.max() >= k / 2.0:
                misses += 1
                if misses >= max_attempts:
                    raise FamilyNotFound(
                        f"no separated family of size {m} after {max_attempts} "
                        f"consecutive rejections (n={n}, k={k})"
                    )
                continue
        members[len(kept)] = ind
        kept.append(cand)
        misses = 0
    return kept


def subset_norm_constant(n, k):
    """c_{n,k} = 1/sqrt(1 - (k-1)/(n-1)), so that v_I is unit."""
    return 1.0 / math.sqrt(1.0 - (k - 1.0) / (n - 1.0))


def subset_direction(ef, I):
    """Unit direction v_I = normalized sum of the equator directions in I."""
    n = ef.dirs.shape[0]
    if I.n != n:
        raise DimensionMismatch("subset ground set must match the equator frame")
    k = I.k
    s = ef.dirs[[i - 1 for i in I.indices]].sum(axis=0)
    return (subset_norm_constant(n, k) / math.sqrt(k)) * s


def pair_dot_formula(n, k, overlap):
    """Closed form for <v_I, v_J> given |I ∩ J|."""
    c2 = subset_norm_constant(n, k) ** 2
    return (c2 / k) * (-(k * k) / (n - 1.0) + overlap * (1.0 + 1.0 / (n - 1.0)))


def direction_separation(ef, I, J):
    """<v_I, v_J> from the actual vectors (the formula is the test oracle)."""
    return float(subset_direction(ef, I) @ subset_direction(ef, J))
