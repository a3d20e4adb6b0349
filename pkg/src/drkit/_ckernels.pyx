# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled float kernels: octonion products, Cayley curvature, Jacobi matrices."""
import numpy as np
cimport numpy as cnp

cnp.import_array()

cdef long _IDX[8][8]
cdef double _SGN[8][8]
cdef bint _ready = False


cdef void _load_table():
    global _ready
    from .octonion import structure_table
    index, sign = structure_table(8)
    cdef int i, j
    for i in range(8):
        for j in range(8):
            _IDX[i][j] = index[i, j]
            _SGN[i][j] = sign[i, j]
    _ready = True


cdef inline void _omul(const double* a, const double* b, double* out) noexcept nogil:
    cdef int i, j
    for i in range(8):
        out[i] = 0.0
    for i in range(8):
        if a[i] == 0.0:
            continue
        for j in range(8):
            out[_IDX[i][j]] += _SGN[i][j] * a[i] * b[j]


cdef inline void _conj(const double* a, double* out) noexcept nogil:
    cdef int i
    out[0] = a[0]
    for i in range(1, 8):
        out[i] = -a[i]


cdef inline double _dot8(const double* a, const double* b) noexcept nogil:
    cdef double acc = 0.0
    cdef int i
    for i in range(8):
        acc += a[i] * b[i]
    return acc


cdef void _curv(const double* X, const double* Y, const double* Z, double eps, double* out) noexcept nogil:
    cdef const double* a = X
    cdef const double* b = X + 8
    cdef const double* c = Y
    cdef const double* d = Y + 8
    cdef const double* e = Z
    cdef const double* f = Z + 8
    cdef double t1[8]
    cdef double t2[8]
    cdef double t3[8]
    cdef double adcb[8]
    cdef double cj[8]
    cdef double ce = _dot8(c, e), ae = _dot8(a, e), df = _dot8(d, f), bf = _dot8(b, f)
    cdef double q = eps / 4.0
    cdef int i

    _omul(a, d, t1)
    _omul(c, b, t2)
    for i in range(8):
        adcb[i] = t1[i] - t2[i]
        out[i] = 4 * ce * a[i] - 4 * ae * c[i]
        out[8 + i] = 4 * df * b[i] - 4 * bf * d[i]
    # (ed)b* - (eb)d* + (ad - cb)f*
    _omul(e, d, t1)
    _conj(b, cj)
    _omul(t1, cj, t2)
    for i in range(8):
        out[i] += t2[i]
    _omul(e, b, t1)
    _conj(d, cj)
    _omul(t1, cj, t2)
    for i in range(8):
        out[i] -= t2[i]
    _conj(f, cj)
    _omul(adcb, cj, t2)
    for i in range(8):
        out[i] += t2[i]
    # a*(cf) - c*(af) - e*(ad - cb)
    _omul(c, f, t1)
    _conj(a, cj)
    _omul(cj, t1, t2)
    for i in range(8):
        out[8 + i] += t2[i]
    _omul(a, f, t1)
    _conj(c, cj)
    _omul(cj, t1, t2)
    for i in range(8):
        out[8 + i] -= t2[i]
    _conj(e, cj)
    _omul(cj, adcb, t3)
    for i in range(8):
        out[8 + i] -= t3[i]
    for i in range(16):
        out[i] *= q


def oct_mul_batch(A, B):
    if not _ready:
        _load_table()
    cdef double[:, ::1] a = np.ascontiguousarray(A, dtype=np.float64)
    cdef double[:, ::1] b = np.ascontiguousarray(B, dtype=np.float64)
    cdef Py_ssize_t N = a.shape[0], k
    out_arr = np.empty((N, 8))
    cdef double[:, ::1] out = out_arr
    with nogil:
        for k in range(N):
            _omul(&a[k, 0], &b[k, 0], &out[k, 0])
    return out_arr


def cayley_curvature_batch(X, Y, Z, int eps):
    if not _ready:
        _load_table()
    cdef double[:, ::1] x = np.ascontiguousarray(np.atleast_2d(X), dtype=np.float64)
    cdef double[:, ::1] y = np.ascontiguousarray(np.atleast_2d(Y), dtype=np.float64)
    cdef double[:, ::1] z = np.ascontiguousarray(np.atleast_2d(Z), dtype=np.float64)
    cdef Py_ssize_t N = x.shape[0], k
    out_arr = np.empty((N, 16))
    cdef double[:, ::1] out = out_arr
    cdef double e = eps
    with nogil:
        for k in range(N):
            _curv(&x[k, 0], &y[k, 0], &z[k, 0], e, &out[k, 0])
    return out_arr


def cayley_sectional_batch(X, Y, int eps):
    if not _ready:
        _load_table()
    cdef double[:, ::1] x = np.ascontiguousarray(np.atleast_2d(X), dtype=np.float64)
    cdef double[:, ::1] y = np.ascontiguousarray(np.atleast_2d(Y), dtype=np.float64)
    cdef Py_ssize_t N = x.shape[0], k
    cdef int i
    out_arr = np.empty(N)
    cdef double[::1] out = out_arr
    cdef double r[16]
    cdef double num, xx, yy, xy, e = eps
    with nogil:
        for k in range(N):
            _curv(&y[k, 0], &x[k, 0], &x[k, 0], e, r)
            num = 0.0
            xx = 0.0
            yy = 0.0
            xy = 0.0
            for i in range(16):
                num += r[i] * y[k, i]
                xx += x[k, i] * x[k, i]
                yy += y[k, i] * y[k, i]
                xy += x[k, i] * y[k, i]
            out[k] = num / (xx * yy - xy * xy)
    return out_arr


def cayley_jacobi_matrix(T, int eps):
    if not _ready:
        _load_table()
    cdef double[::1] t = np.ascontiguousarray(T, dtype=np.float64)
    out_arr = np.empty((16, 16))
    cdef double[:, ::1] out = out_arr
    cdef double w[16]
    cdef double r[16]
    cdef int i, j
    for j in range(16):
        for i in range(16):
            w[i] = 0.0
        w[j] = 1.0
        _curv(w, &t[0], &t[0], eps, r)
        for i in range(16):
            out[i, j] = r[i]
    return out_arr


cdef void _jac(const double[:, :, ::1] G, const double* T, Py_ssize_t n, Py_ssize_t m,
               double* MV, double* MW, double* JYV, double[:, ::1] out) noexcept nogil:
    # MV[i*m + k] = (J_k V)_i ; MW[i*m + k] = (J_k J_Y V)_i
    cdef Py_ssize_t i, j, k, d = n + m + 1
    cdef const double* V = T
    cdef const double* Y = T + n
    cdef double s = T[n + m]
    cdef double nu = 0.0, vv2 = 0.0, acc, gap
    for i in range(d):
        nu += T[i] * T[i]
    for i in range(n):
        vv2 += V[i] * V[i]
    for k in range(m):
        for i in range(n):
            acc = 0.0
            for j in range(n):
                acc += G[k, i, j] * V[j]
            MV[i * m + k] = acc
    for i in range(n):
        acc = 0.0
        for k in range(m):
            acc += Y[k] * MV[i * m + k]
        JYV[i] = acc
    for k in range(m):
        for i in range(n):
            acc = 0.0
            for j in range(n):
                acc += G[k, i, j] * JYV[j]
            MW[i * m + k] = acc
    gap = nu - 0.75 * vv2
    for i in range(n):
        for j in range(i, n):
            acc = 0.0
            for k in range(m):
                acc += MV[i * m + k] * MV[j * m + k]
            acc = -0.75 * acc + 0.25 * V[i] * V[j]
            if i == j:
                acc -= 0.25 * nu
            out[i, j] = acc
            out[j, i] = acc
        for k in range(m):
            acc = 0.75 * MW[i * m + k] - 0.75 * s * MV[i * m + k] + V[i] * Y[k]
            out[i, n + k] = acc
            out[n + k, i] = acc
        acc = 0.75 * JYV[i] + 0.25 * s * V[i]
        out[i, d - 1] = acc
        out[d - 1, i] = acc
    for k in range(m):
        for j in range(k, m):
            acc = Y[k] * Y[j]
            if j == k:
                acc -= gap
            out[n + k, n + j] = acc
            out[n + j, n + k] = acc
        out[n + k, d - 1] = s * Y[k]
        out[d - 1, n + k] = s * Y[k]
    out[d - 1, d - 1] = -gap + s * s


def jacobi_matrix_batch(gens, Ts):
    cdef double[:, :, ::1] G = np.ascontiguousarray(gens, dtype=np.float64)
    cdef double[:, ::1] T = np.ascontiguousarray(np.atleast_2d(Ts), dtype=np.float64)
    cdef Py_ssize_t m = G.shape[0], n = G.shape[1], N = T.shape[0], d = n + m + 1, k
    out_arr = np.empty((N, d, d))
    cdef double[:, :, ::1] out = out_arr
    cdef double[::1] MV = np.empty(n * m), MW = np.empty(n * m), JYV = np.empty(n)
    with nogil:
        for k in range(N):
            _jac(G, &T[k, 0], n, m, &MV[0], &MW[0], &JYV[0], out[k])
    return out_arr


def jacobi_matrix(gens, T):
    return jacobi_matrix_batch(gens, np.asarray(T, dtype=np.float64)[None, :])[0]


def jacobi_traces_batch(gens, Ts):
    cdef double[:, :, ::1] G = np.ascontiguousarray(gens, dtype=np.float64)
    cdef double[:, ::1] T = np.ascontiguousarray(np.atleast_2d(Ts), dtype=np.float64)
    cdef Py_ssize_t m = G.shape[0], n = G.shape[1], N = T.shape[0], d = n + m + 1, k, i, j
    tr_arr = np.empty(N)
    tr2_arr = np.empty(N)
    cdef double[::1] tr = tr_arr, tr2 = tr2_arr
    cdef double[:, ::1] M = np.empty((d, d))
    cdef double[::1] MV = np.empty(n * m), MW = np.empty(n * m), JYV = np.empty(n)
    cdef double a, b
    with nogil:
        for k in range(N):
            _jac(G, &T[k, 0], n, m, &MV[0], &MW[0], &JYV[0], M)
            a = 0.0
            b = 0.0
            for i in range(d):
                a += M[i, i]
                for j in range(d):
                    b += M[i, j] * M[i, j]
            tr[k] = a
            tr2[k] = b
    return tr_arr, tr2_arr
