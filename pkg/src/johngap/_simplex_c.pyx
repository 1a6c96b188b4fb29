# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled tableau simplex for equality-form LPs.

Mirrors ``_simplex_py`` (same pivot rules, tolerances and status codes);
only the inner loops are lowered to C. ``support_batch`` reuses one
tableau across many right-hand sides, which is the hot path when a
spherical net contributes one LP per facet. Keep the two backends in sync.
"""

import numpy as np

cimport numpy as cnp

OPTIMAL = 0
INFEASIBLE = 1
UNBOUNDED = 2
ITERATION_LIMIT = 3

cdef int _STALL_LIMIT = 30

# A column with no positive entries certifies unboundedness only when its
# reduced cost is decisively negative; marginal columns are dropped instead.
cdef double _UNBOUNDED_TOL = 1e-6


cdef inline void _apply_pivot(double[:, ::1] T, Py_ssize_t nrows, Py_ssize_t ncols,
                              Py_ssize_t i, Py_ssize_t j) noexcept nogil:
    cdef Py_ssize_t p, q
    cdef double piv = T[i, j]
    cdef double f
    for q in range(ncols):
        T[i, q] /= piv
    for p in range(nrows):
        if p == i:
            continue
        f = T[p, j]
        if f != 0.0:
            for q in range(ncols):
                T[p, q] -= f * T[i, q]
    for p in range(nrows):
        T[p, j] = 0.0
    T[i, j] = 1.0


cdef int _pivot_loop(double[:, ::1] T, long[::1] basis, Py_ssize_t m_enter,
                     double tol, long max_iter) noexcept nogil:
    cdef Py_ssize_t r = basis.shape[0]
    cdef Py_ssize_t ncols = T.shape[1]
    cdef Py_ssize_t i, j, q, best_i
    cdef long it
    cdef int bland = 0
    cdef int stall = 0
    cdef int found
    cdef double best_obj = -T[r, ncols - 1]
    cdef double red, ratio, rmin, obj, rtol

    for it in range(max_iter):
        j = -1
        if bland:
            for q in range(m_enter):
                if T[r, q] < -tol:
                    j = q
                    break
        else:
            red = -tol
            for q in range(m_enter):
                if T[r, q] < red:
                    red = T[r, q]
                    j = q
        if j < 0:
            return 0  # OPTIMAL
        found = 0
        rmin = 0.0
        for q in range(r):
            if T[q, j] > tol:
                ratio = T[q, ncols - 1] / T[q, j]
                if found == 0 or ratio < rmin:
                    rmin = ratio
                found = 1
        if found == 0:
            if T[r, j] < -_UNBOUNDED_TOL:
                return 2  # UNBOUNDED
            T[r, j] = 0.0
            continue
        best_i = -1
        rtol = rmin + tol * (1.0 + (rmin if rmin >= 0.0 else -rmin))
        for q in range(r):
            if T[q, j] > tol:
                ratio = T[q, ncols - 1] / T[q, j]
                if ratio <= rtol:
                    if best_i < 0 or basis[q] < basis[best_i]:
                        best_i = q
        i = best_i
        _apply_pivot(T, r + 1, ncols, i, j)
        basis[i] = j
        obj = -T[r, ncols - 1]
        if obj < best_obj - tol:
            best_obj = obj
            stall = 0
        else:
            stall += 1
            if stall >= _STALL_LIMIT:
                bland = 1
    return 3  # ITERATION_LIMIT


cdef int _two_phase(const double[:, ::1] A, const double[::1] b, const double[::1] c,
                    double[:, ::1] T, long[::1] basis,
                    double tol, long max_iter, double* obj_out) noexcept nogil:
    """Run two-phase simplex into a caller-provided tableau. Returns status."""
    cdef Py_ssize_t r = A.shape[0]
    cdef Py_ssize_t m = A.shape[1]
    cdef Py_ssize_t ncols = m + r + 1
    cdef Py_ssize_t i, j, q
    cdef double sg, s, f, bmax, amax
    cdef int status

    bmax = 0.0
    for i in range(r):
        sg = -1.0 if b[i] < 0.0 else 1.0
        for q in range(m):
            T[i, q] = sg * A[i, q]
        for q in range(r):
            T[i, m + q] = 1.0 if q == i else 0.0
        T[i, ncols - 1] = sg * b[i]
        if T[i, ncols - 1] > bmax:
            bmax = T[i, ncols - 1]
        basis[i] = m + i

    # Phase 1: minimize the sum of artificials.
    for q in range(m):
        s = 0.0
        for i in range(r):
            s += T[i, q]
        T[r, q] = -s
    for q in range(m, ncols - 1):
        T[r, q] = 0.0
    s = 0.0
    for i in range(r):
        s += T[i, ncols - 1]
    T[r, ncols - 1] = -s

    status = _pivot_loop(T, basis, m, tol, max_iter)
    if status == 3:
        obj_out[0] = 0.0
        return 3
    f = 1.0 if bmax < 1.0 else bmax
    if -T[r, ncols - 1] > tol * f * 10.0:
        obj_out[0] = 0.0
        return 1  # INFEASIBLE

    # Drive leftover artificials out of the basis where the row allows it.
    for i in range(r):
        if basis[i] >= m:
            j = -1
            amax = 0.0
            for q in range(m):
                f = T[i, q] if T[i, q] > 0.0 else -T[i, q]
                if f > amax:
                    amax = f
                    j = q
            if j >= 0 and amax > 1e-7:
                _apply_pivot(T, r + 1, ncols, i, j)
                basis[i] = j

    # Phase 2: install the true costs and re-reduce against the basis.
    for q in range(ncols):
        T[r, q] = 0.0
    for q in range(m):
        T[r, q] = c[q]
    for i in range(r):
        if basis[i] < m and c[basis[i]] != 0.0:
            f = c[basis[i]]
            for q in range(ncols):
                T[r, q] -= f * T[i, q]
    status = _pivot_loop(T, basis, m, tol, max_iter)
    obj_out[0] = -T[r, ncols - 1]
    return status


def solve_eq(c, A, b, double tol=1e-9, long max_iter=0):
    """Solve min c.x s.t. A x = b, x >= 0. Returns (status, x, objective)."""
    A = np.ascontiguousarray(A, dtype=np.float64)
    b = np.ascontiguousarray(b, dtype=np.float64)
    c = np.ascontiguousarray(c, dtype=np.float64)
    cdef Py_ssize_t r = A.shape[0]
    cdef Py_ssize_t m = A.shape[1]
    if max_iter <= 0:
        max_iter = 200 * (r + m) + 2000

    T_arr = np.zeros((r + 1, m + r + 1))
    basis_arr = np.zeros(r, dtype=np.int64)
    cdef double[:, ::1] T = T_arr
    cdef long[::1] basis = basis_arr
    cdef const double[:, ::1] Av = A
    cdef const double[::1] bv = b
    cdef const double[::1] cv = c
    cdef double obj = 0.0
    cdef int status = _two_phase(Av, bv, cv, T, basis, tol, max_iter, &obj)
    x = np.zeros(m)
    cdef Py_ssize_t i
    if status == 0:
        for i in range(r):
            if basis[i] < m:
                x[basis[i]] = T[i, m + r]
    return int(status), x, float(obj)


def support_batch(offsets, normals_t, D, double tol=1e-9, long max_iter=0):
    """Dual support LPs min b.lam s.t. A^T lam = d for each row d of D.

    ``offsets`` is (m,), ``normals_t`` is (n, m) = A^T, ``D`` is (N, n).
    Returns (values (N,), statuses (N,)) with one tableau reused throughout.
    """
    offsets = np.ascontiguousarray(offsets, dtype=np.float64)
    normals_t = np.ascontiguousarray(normals_t, dtype=np.float64)
    D = np.ascontiguousarray(D, dtype=np.float64)
    cdef Py_ssize_t n = normals_t.shape[0]
    cdef Py_ssize_t m = normals_t.shape[1]
    cdef Py_ssize_t N = D.shape[0]
    if max_iter <= 0:
        max_iter = 200 * (n + m) + 2000

    T_arr = np.zeros((n + 1, m + n + 1))
    basis_arr = np.zeros(n, dtype=np.int64)
    vals = np.zeros(N)
    stats = np.zeros(N, dtype=np.int64)
    cdef double[:, ::1] T = T_arr
    cdef long[::1] basis = basis_arr
    cdef const double[:, ::1] Av = normals_t
    cdef const double[::1] cv = offsets
    cdef const double[:, ::1] Dv = D
    cdef double[::1] vv = vals
    cdef long[::1] sv = stats
    cdef double obj
    cdef Py_ssize_t t
    with nogil:
        for t in range(N):
            obj = 0.0
            sv[t] = _two_phase(Av, Dv[t], cv, T, basis, tol, max_iter, &obj)
            vv[t] = obj
    return vals, stats
