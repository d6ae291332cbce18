# cython: language_level=3
# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernel backend: scalar trapezoid membership, Mamdani clip/max
aggregation with discrete centroid, and the forward-Euler circuit loop.

Entry points mirror memfuzz._kernels.pure exactly.
"""
import numpy as np

from libc.math cimport pow


cdef inline double _trap(double a, double b, double c, double d, double u) noexcept nogil:
    if u < a or u > d:
        return 0.0
    if u < b:
        return (u - a) / (b - a)
    if u <= c:
        return 1.0
    return (d - u) / (d - c)


cdef void _strengths(double[::1] in_lo, double[::1] in_hi,
                     int[:, ::1] ante_var, double[:, :, ::1] ante_mf,
                     double[::1] weights, double[::1] values,
                     double[::1] clamped, double[::1] out) noexcept nogil:
    cdef Py_ssize_t n_in = in_lo.shape[0]
    cdef Py_ssize_t n_rules = ante_var.shape[0]
    cdef Py_ssize_t max_ante = ante_var.shape[1]
    cdef Py_ssize_t vi, ri, ai
    cdef double u, s, m
    for vi in range(n_in):
        u = values[vi]
        if u < in_lo[vi]:
            u = in_lo[vi]
        elif u > in_hi[vi]:
            u = in_hi[vi]
        clamped[vi] = u
    for ri in range(n_rules):
        s = 1.0
        for ai in range(max_ante):
            vi = ante_var[ri, ai]
            if vi < 0:
                continue
            m = _trap(ante_mf[ri, ai, 0], ante_mf[ri, ai, 1],
                      ante_mf[ri, ai, 2], ante_mf[ri, ai, 3], clamped[vi])
            if m < s:
                s = m
        out[ri] = weights[ri] * s


cdef (double, int) _centroid(double[::1] grid, double[::1] strengths,
                             double[:, ::1] cons_mf) noexcept nogil:
    cdef Py_ssize_t res = grid.shape[0]
    cdef Py_ssize_t n_rules = strengths.shape[0]
    cdef Py_ssize_t gi, ri
    cdef double u, agg, s, m, num = 0.0, den = 0.0
    for gi in range(res):
        u = grid[gi]
        agg = 0.0
        for ri in range(n_rules):
            s = strengths[ri]
            if s <= agg:
                continue
            m = _trap(cons_mf[ri, 0], cons_mf[ri, 1], cons_mf[ri, 2], cons_mf[ri, 3], u)
            if m > s:
                m = s
            if m > agg:
                agg = m
        num += u * agg
        den += agg
    if den == 0.0:
        return 0.5 * (grid[0] + grid[res - 1]), 0
    return num / den, 1


def mamdani_eval(double[::1] in_lo, double[::1] in_hi,
                 int[:, ::1] ante_var, double[:, :, ::1] ante_mf,
                 double[::1] weights, double[:, ::1] cons_mf,
                 double[::1] grid, double[::1] values):
    """Single crisp evaluation; returns (value, fired)."""
    cdef double[::1] strengths = np.empty(weights.shape[0])
    cdef double[::1] clamped = np.empty(in_lo.shape[0])
    cdef double value
    cdef int fired
    with nogil:
        _strengths(in_lo, in_hi, ante_var, ante_mf, weights, values, clamped, strengths)
        value, fired = _centroid(grid, strengths, cons_mf)
    return value, bool(fired)


def mamdani_eval_batch(double[::1] in_lo, double[::1] in_hi,
                       int[:, ::1] ante_var, double[:, :, ::1] ante_mf,
                       double[::1] weights, double[:, ::1] cons_mf,
                       double[::1] grid, double[:, ::1] points):
    """Evaluate many input rows; returns (values, unfired_count)."""
    cdef Py_ssize_t n = points.shape[0]
    out = np.empty(n)
    cdef double[::1] out_v = out
    cdef double[::1] strengths = np.empty(weights.shape[0])
    cdef double[::1] clamped = np.empty(in_lo.shape[0])
    cdef Py_ssize_t pi
    cdef double value
    cdef int fired
    cdef long unfired = 0
    with nogil:
        for pi in range(n):
            _strengths(in_lo, in_hi, ante_var, ante_mf, weights, points[pi], clamped, strengths)
            value, fired = _centroid(grid, strengths, cons_mf)
            out_v[pi] = value
            if fired == 0:
                unfired += 1
    return out, unfired


def run_circuit(double[::1] v_src, double dt, double k,
                double r_on, double r_off, double r_series, double x0,
                int wcode, double wp1, double wp2,
                double[::1] in_lo, double[::1] in_hi,
                int[:, ::1] ante_var, double[:, :, ::1] ante_mf,
                double[::1] weights, double[:, ::1] cons_mf,
                double[::1] grid, int elec_index, int state_index):
    """Forward-Euler loop over the series circuit; see the pure backend
    for the window-code table.  Returns (i, v_mem, x, r, f, unfired)."""
    cdef Py_ssize_t n = v_src.shape[0]
    out_i = np.empty(n)
    out_v = np.empty(n)
    out_x = np.empty(n)
    out_r = np.empty(n)
    out_f = np.empty(n)
    cdef double[::1] vi_ = out_i, vv_ = out_v, vx_ = out_x, vr_ = out_r, vf_ = out_f
    cdef bint fuzzy = wcode >= 5
    cdef Py_ssize_t n_rules = weights.shape[0] if fuzzy else 0
    cdef Py_ssize_t n_in = in_lo.shape[0] if fuzzy else 0
    cdef double[::1] strengths = np.empty(max(n_rules, 1))
    cdef double[::1] clamped = np.empty(max(n_in, 1))
    cdef double[::1] values = np.zeros(max(n_in, 1))
    cdef Py_ssize_t step
    cdef double x = x0, r, cur, vm, f, stp, value
    cdef int fired
    cdef long unfired = 0
    with nogil:
        for step in range(n):
            r = r_on * x + r_off * (1.0 - x)
            cur = v_src[step] / (r + r_series)
            vm = cur * r
            if wcode == 0:
                f = 1.0
            elif wcode == 1:
                f = x - x * x
            elif wcode == 2:
                f = 1.0 - pow(2.0 * x - 1.0, 2.0 * wp1)
            elif wcode == 3:
                stp = 1.0 if -cur >= 0.0 else 0.0
                f = 1.0 - pow(x - stp, 2.0 * wp1)
            elif wcode == 4:
                f = wp2 * (1.0 - pow((x - 0.5) * (x - 0.5) + 0.75, wp1))
            else:
                values[elec_index] = cur if wcode == 5 else vm
                values[state_index] = x
                _strengths(in_lo, in_hi, ante_var, ante_mf, weights, values, clamped, strengths)
                value, fired = _centroid(grid, strengths, cons_mf)
                if fired == 0:
                    unfired += 1
                f = wp1 * value
                if f < 0.0:
                    f = 0.0
            vi_[step] = cur
            vv_[step] = vm
            vx_[step] = x
            vr_[step] = r
            vf_[step] = f
            if step + 1 < n:
                x = x + dt * (k * cur * f)
                if x < 0.0:
                    x = 0.0
                elif x > 1.0:
                    x = 1.0
    return out_i, out_v, out_x, out_r, out_f, unfired
