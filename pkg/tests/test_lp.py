"""The two-phase simplex kernel: both backends, cross-checked against scipy."""

import numpy as np
import pytest

from johngap import _simplex_py as ref
from johngap import backend


def _random_feasible_lp(rng, m, n):
    """Equality-form LP with a known feasible point (so never infeasible)."""
    A = rng.standard_normal((m, n))
    x0 = rng.random(n)  # nonnegative
    b = A @ x0
    c = rng.standard_normal(n)
    return c, A, b


def test_trivial_identity():
    # min x1 + x2 s.t. x1 + x2 = 1
    status, x, obj = ref.solve_eq(np.ones(2), np.ones((1, 2)), np.ones(1))
    assert status == ref.OPTIMAL
    assert abs(obj - 1.0) < 1e-12
    assert abs(x.sum() - 1.0) < 1e-12


def test_unbounded():
    # min -x1 s.t. x1 - x2 = 0: ray (t, t) drives objective to -inf
    status, _, _ = ref.solve_eq(np.array([-1.0, 0.0]), np.array([[1.0, -1.0]]), np.zeros(1))
    assert status == ref.UNBOUNDED


def test_infeasible():
    # x1 + x2 = -1 with x >= 0
    status, _, _ = ref.solve_eq(np.zeros(2), np.ones((1, 2)), np.array([-1.0]))
    assert status == ref.INFEASIBLE


def test_negative_rhs_rows_handled():
    # rows with b < 0 must be sign-flipped internally
    A = np.array([[-1.0, 0.0], [0.0, 1.0]])
    b = np.array([-2.0, 3.0])
    status, x, obj = ref.solve_eq(np.array([1.0, 1.0]), A, b)
    assert status == ref.OPTIMAL
    assert np.allclose(x, [2.0, 3.0], atol=1e-9)
    assert abs(obj - 5.0) < 1e-9


def test_degenerate_stall_terminates():
    # classic cycling-prone structure; the Bland switch must terminate it
    A = np.array(
        [
            [0.25, -8.0, -1.0, 9.0, 1.0, 0.0, 0.0],
            [0.5, -12.0, -0.5, 3.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0],
        ]
    )
    b = np.array([0.0, 0.0, 1.0])
    c = np.array([-0.75, 150.0, -0.02, 6.0, 0.0, 0.0, 0.0])
    status, x, obj = ref.solve_eq(c, A, b)
    assert status == ref.OPTIMAL
    from scipy.optimize import linprog

    res = linprog(c, A_eq=A, b_eq=b, bounds=(0, None), method="highs")
    assert res.success
    assert abs(obj - res.fun) < 1e-9


@pytest.mark.parametrize("m,n", [(3, 6), (8, 15), (20, 35)])
def test_matches_scipy_on_random_lps(m, n, rng):
    from scipy.optimize import linprog

    for _ in range(40):
        c, A, b = _random_feasible_lp(rng, m, n)
        status, x, obj = ref.solve_eq(c, A, b)
        res = linprog(c, A_eq=A, b_eq=b, bounds=(0, None), method="highs")
        if res.status == 3:  # unbounded
            assert status == ref.UNBOUNDED
            continue
        assert res.success
        assert status == ref.OPTIMAL
        assert abs(obj - res.fun) < 1e-6 * (1.0 + abs(res.fun))
        assert np.abs(A @ x - b).max() < 1e-7


def test_backend_parity(rng):
    """Compiled kernel and numpy fallback agree bit-for-bit on status/objective."""
    if backend.backend_name() == "python":
        pytest.skip("compiled backend not available")
    for _ in range(200):
        m = int(rng.integers(1, 10))
        n = int(rng.integers(m, m + 15))
        c, A, b = _random_feasible_lp(rng, m, n)
        s1, x1, o1 = ref.solve_eq(c, A, b)
        s2, x2, o2 = backend.solve_eq(c, A, b)
        assert s1 == s2
        if s1 == ref.OPTIMAL:
            assert o1 == o2
            assert np.array_equal(x1, x2)


def test_support_batch_matches_single(rng):
    m, n, N = 12, 4, 50
    A = rng.standard_normal((m, n))
    A /= np.linalg.norm(A, axis=1)[:, None]
    b = 1.0 + rng.random(m)
    D = rng.standard_normal((N, n))
    vals, stats = backend.support_batch(b, np.ascontiguousarray(A.T), D, 1e-9)
    for t in range(N):
        s, _, obj = backend.solve_eq(b, np.ascontiguousarray(A.T), D[t])
        assert stats[t] == s
        if s == backend.OPTIMAL:
            assert vals[t] == obj
