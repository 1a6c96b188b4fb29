"""Pure-numpy tableau simplex for equality-form LPs.

Reference implementation; the compiled Cython kernel in ``_simplex_c``
mirrors this algorithm step for step so either backend can serve
``johngap.lp``. Keep the two in sync.

Problem form: minimize c.x subject to A x = b, x >= 0, with A dense
(r x m). Two-phase method. Entering rule is Dantzig (most negative
reduced cost) until the objective stalls, then Bland's smallest-index
rule, which guarantees termination; the leaving row always breaks ratio
ties by smallest basis index.
"""

import numpy as np

OPTIMAL = 0
INFEASIBLE = 1
UNBOUNDED = 2
ITERATION_LIMIT = 3

_STALL_LIMIT = 30

# A column with no positive entries certifies unboundedness only when its
# reduced cost is decisively negative; marginal columns (within rounding of
# the optimality tolerance) are dropped instead, since degenerate inputs can
# flip their sign either way.
_UNBOUNDED_TOL = 1e-6


def _pivot_loop(T, basis, m_enter, tol, max_iter):
    """Run simplex pivots on tableau T in place. Returns a status code.

    Row layout: rows 0..r-1 are constraints, row r holds reduced costs and
    -objective in the last column. Only columns < m_enter may enter.
    """
    r = len(basis)
    cost = T[r]
    bland = False
    stall = 0
    best_obj = -cost[-1]
    for _ in range(max_iter):
        red = cost[:m_enter]
        if bland:
            neg = np.nonzero(red < -tol)[0]
            if neg.size == 0:
                return OPTIMAL
            j = int(neg[0])
        else:
            j = int(np.argmin(red))
            if red[j] >= -tol:
                return OPTIMAL
        col = T[:r, j]
        pos = np.nonzero(col > tol)[0]
        if pos.size == 0:
            if cost[j] < -_UNBOUNDED_TOL:
                return UNBOUNDED
            cost[j] = 0.0
            continue
        ratios = T[pos, -1] / col[pos]
        rmin = ratios.min()
        # Bland tie-break on the leaving variable is kept in both modes.
        tied = pos[ratios <= rmin + tol * (1.0 + abs(rmin))]
        i = int(min(tied, key=lambda t: basis[t]))
        piv = T[i, j]
        rowi = T[i] / piv
        colj = T[:, j].copy()
        T -= np.outer(colj, rowi)
        T[i] = rowi
        T[:, j] = 0.0
        T[i, j] = 1.0
        basis[i] = j
        obj = -cost[-1]
        if obj < best_obj - tol:
            best_obj = obj
            stall = 0
        else:
            stall += 1
            if stall >= _STALL_LIMIT:
                bland = True
    return ITERATION_LIMIT


def solve_eq(c, A, b, tol=1e-9, max_iter=0):
    """Solve min c.x s.t. A x = b, x >= 0. Returns (status, x, objective)."""
    A = np.ascontiguousarray(A, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    c = np.asarray(c, dtype=np.float64)
    r, m = A.shape
    if max_iter <= 0:
        max_iter = 200 * (r + m) + 2000

    sign = np.where(b < 0, -1.0, 1.0)
    T = np.zeros((r + 1, m + r + 1))
    T[:r, :m] = A * sign[:, None]
    T[:r, m : m + r] = np.eye(r)
    T[:r, -1] = b * sign
    basis = [m + i for i in range(r)]

    # Phase 1: minimize the sum of artificials.
    T[r, :m] = -T[:r, :m].sum(axis=0)
    T[r, -1] = -T[:r, -1].sum()
    status = _pivot_loop(T, basis, m, tol, max_iter)
    if status == ITERATION_LIMIT:
        return status, np.zeros(m), 0.0
    feas_tol = tol * max(1.0, float(np.abs(b).max(initial=0.0))) * 10.0
    if -T[r, -1] > feas_tol:
        return INFEASIBLE, np.zeros(m), 0.0

    # Drive leftover artificials out of the basis where the row allows it;
    # rows that are zero over the original columns are redundant and inert.
    for i in range(r):
        if basis[i] >= m:
            row = T[i, :m]
            j = int(np.argmax(np.abs(row)))
            if abs(row[j]) > 1e-7:
                piv = T[i, j]
                rowi = T[i] / piv
                colj = T[:, j].copy()
                T -= np.outer(colj, rowi)
                T[i] = rowi
                T[:, j] = 0.0
                T[i, j] = 1.0
                basis[i] = j

    # Phase 2: install the true costs and re-reduce against the basis.
    T[r, :] = 0.0
    T[r, :m] = c
    for i in range(r):
        if basis[i] < m and c[basis[i]] != 0.0:
            T[r] -= c[basis[i]] * T[i]
    status = _pivot_loop(T, basis, m, tol, max_iter)
    x = np.zeros(m)
    for i in range(r):
        if basis[i] < m:
            x[basis[i]] = T[i, -1]
    return status, x, float(-T[r, -1])


def support_batch(offsets, normals_t, D, tol=1e-9, max_iter=0):
    """Dual support LPs min b.lam s.t. A^T lam = d for each row d of D.

    Same contract as the compiled kernel; this fallback just loops solve_eq.
    """
    D = np.asarray(D, dtype=np.float64)
    N = D.shape[0]
    vals = np.zeros(N)
    stats = np.zeros(N, dtype=np.int64)
    for t in range(N):
        stats[t], _, vals[t] = solve_eq(offsets, normals_t, D[t], tol=tol, max_iter=max_iter)
    return vals, stats
