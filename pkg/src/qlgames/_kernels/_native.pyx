# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: payoff surface and Monte Carlo round loops.

Must stay semantically identical to ``_fallback.py``; the simulator
loops replicate its comparison logic exactly so that both backends
produce bit-identical outcome arrays from the same uniforms.
"""

import numpy as np

from libc.math cimport cos, sin

cdef int[5] OPPOSITE = [0, 3, 4, 1, 2]
cdef int[10] QCONTEXT = [0, 0, 1, 0, 1, 0, 0, 1, 0, 1]
cdef int[10] PLANE_CATCH = [-1, -1, -1, -1, -1, 0, 3, 4, 1, 2]
cdef int[3] ZPOS = [0, 1, 3]
cdef int[3] TPOS = [0, 2, 4]


cdef inline Py_ssize_t _cdf_pick(const double[::1] cdf, double u, Py_ssize_t last) nogil:
    # count of entries <= u, capped at last (matches searchsorted side="right")
    cdef Py_ssize_t i = 0
    while i < last and u >= cdf[i]:
        i += 1
    return i


def payoff_surface_half(double a, double b, double c, double d,
                        double tha, double thb,
                        double[::1] alphas, double[::1] betas):
    """Expected-payoff surface F over an (alphas x betas) grid, radians."""
    cdef Py_ssize_t n = alphas.shape[0]
    cdef Py_ssize_t m = betas.shape[0]
    out = np.empty((n, m), dtype=np.float64)
    cb2 = np.empty(m, dtype=np.float64)
    sb2 = np.empty(m, dtype=np.float64)
    ct2 = np.empty(m, dtype=np.float64)
    st2 = np.empty(m, dtype=np.float64)
    cdef double[:, ::1] o = out
    cdef double[::1] vcb2 = cb2, vsb2 = sb2, vct2 = ct2, vst2 = st2
    cdef Py_ssize_t i, j
    cdef double ca, sa, ct, st, x
    for j in range(m):
        x = cos(betas[j])
        vcb2[j] = x * x
        x = sin(betas[j])
        vsb2[j] = x * x
        x = cos(betas[j] - thb)
        vct2[j] = x * x
        x = sin(betas[j] - thb)
        vst2[j] = x * x
    with nogil:
        for i in range(n):
            x = cos(alphas[i])
            ca = x * x
            x = sin(alphas[i])
            sa = x * x
            x = cos(alphas[i] - tha)
            ct = x * x
            x = sin(alphas[i] - tha)
            st = x * x
            for j in range(m):
                o[i, j] = (a * ca * vsb2[j] + c * sa * vcb2[j]
                           + b * ct * vst2[j] + d * st * vct2[j])
    return out


def quantum_half_rounds(double p1, double p2, double q1, double q2,
                        double a, double b, double c, double d,
                        double[:, ::1] uniforms):
    cdef Py_ssize_t n = uniforms.shape[0]
    payoff = np.zeros(n, dtype=np.float64)
    ctx = np.empty(n, dtype=np.int8)
    question = np.empty(n, dtype=np.int8)
    position = np.empty(n, dtype=np.int8)
    answer = np.empty(n, dtype=np.int8)
    cdef double[::1] vpay = payoff
    cdef signed char[::1] vctx = ctx, vq = question, vpos = position, vans = answer
    cdef double[5] paytab
    paytab[0] = 0.0
    paytab[1] = a
    paytab[2] = b
    paytab[3] = c
    paytab[4] = d
    cdef Py_ssize_t r
    cdef int cx, q, pos
    with nogil:
        for r in range(n):
            if uniforms[r, 0] >= 0.5:
                cx = 1
                q = 2 if uniforms[r, 1] < p2 else 4
                pos = 2 if uniforms[r, 2] < q2 else 4
            else:
                cx = 0
                q = 1 if uniforms[r, 1] < p1 else 3
                pos = 1 if uniforms[r, 2] < q1 else 3
            vctx[r] = <signed char> cx
            vq[r] = <signed char> q
            vpos[r] = <signed char> pos
            if pos == q:
                vans[r] = 1
                vpay[r] = 0.0
            else:
                vans[r] = 0
                vpay[r] = paytab[q]
    return payoff, ctx, question, position, answer


def mechanical_half_rounds(double[::1] base_cdf, double[::1] policy_cdf,
                           double a, double b, double c, double d,
                           double[:, ::1] uniforms):
    cdef Py_ssize_t n = uniforms.shape[0]
    payoff = np.zeros(n, dtype=np.float64)
    question = np.empty(n, dtype=np.int8)
    position = np.empty(n, dtype=np.int8)
    answer = np.empty(n, dtype=np.int8)
    final_position = np.empty(n, dtype=np.int8)
    cdef double[::1] vpay = payoff
    cdef signed char[::1] vq = question, vpos = position, vans = answer, vfin = final_position
    cdef double[5] paytab
    paytab[0] = 0.0
    paytab[1] = a
    paytab[2] = b
    paytab[3] = c
    paytab[4] = d
    cdef Py_ssize_t r
    cdef int q, pos
    with nogil:
        for r in range(n):
            pos = <int> _cdf_pick(base_cdf, uniforms[r, 2], 3) + 1
            q = <int> _cdf_pick(policy_cdf, uniforms[r, 1], 3) + 1
            vpos[r] = <signed char> pos
            vq[r] = <signed char> q
            if pos == OPPOSITE[q]:
                vans[r] = 0
                vfin[r] = <signed char> pos
                vpay[r] = paytab[q]
            else:
                vans[r] = 1
                vfin[r] = <signed char> q
    return payoff, question, position, answer, final_position


def quantum_one_rounds(double[::1] qcdf, double[::1] zcdf, double[::1] tcdf,
                       double[::1] u_pay, double[::1] v_pay,
                       bint risk_always, double[:, ::1] uniforms):
    cdef Py_ssize_t n = uniforms.shape[0]
    payoff = np.zeros(n, dtype=np.float64)
    first = np.empty(n, dtype=np.int8)
    second = np.full(n, -1, dtype=np.int8)
    position = np.empty(n, dtype=np.int8)
    answer1 = np.empty(n, dtype=np.int8)
    answer2 = np.full(n, -1, dtype=np.int8)
    cdef double[::1] vpay = payoff
    cdef signed char[::1] vfirst = first, vsec = second, vpos = position
    cdef signed char[::1] va1 = answer1, va2 = answer2
    cdef Py_ssize_t r
    cdef int fq, pos, sec
    cdef bint yes
    with nogil:
        for r in range(n):
            fq = <int> _cdf_pick(qcdf, uniforms[r, 1], 9)
            if QCONTEXT[fq] == 1:
                pos = TPOS[_cdf_pick(tcdf, uniforms[r, 2], 2)]
            else:
                pos = ZPOS[_cdf_pick(zcdf, uniforms[r, 2], 2)]
            vfirst[r] = <signed char> fq
            vpos[r] = <signed char> pos
            if fq <= 4:
                if fq == 0:
                    yes = pos == 0
                else:
                    yes = pos != 0 and pos != OPPOSITE[fq]
                va1[r] = 1 if yes else 0
                if not yes:
                    if not risk_always:
                        vpay[r] = u_pay[fq]
                    elif fq != 0:
                        vsec[r] = 0
                        if pos == 0:
                            va2[r] = 1
                        else:
                            va2[r] = 0
                            vpay[r] = v_pay[pos]
                    else:
                        sec = 1 + <int> (uniforms[r, 3] * 4.0)
                        vsec[r] = <signed char> sec
                        if pos == OPPOSITE[sec]:
                            va2[r] = 0
                            vpay[r] = v_pay[pos]
                        else:
                            va2[r] = 1
            else:
                yes = pos != PLANE_CATCH[fq]
                va1[r] = 1 if yes else 0
                if not yes:
                    vpay[r] = v_pay[PLANE_CATCH[fq]]
    return payoff, first, second, position, answer1, answer2
