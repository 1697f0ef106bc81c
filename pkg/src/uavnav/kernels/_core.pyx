# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled dense-layer kernels.

Mirrors uavnav.kernels.numpy_backend; the fused loops avoid temporary
arrays and BLAS dispatch overhead on the small matrices this package uses.
"""

from libc.math cimport tanh as c_tanh

import numpy as np

cimport numpy as cnp

cnp.import_array()

ACT_IDENTITY = 0
ACT_RELU = 1
ACT_TANH = 2


def affine(cnp.ndarray x_arr, cnp.ndarray w_arr, cnp.ndarray b_arr):
    cdef double[:, ::1] x = np.ascontiguousarray(x_arr, dtype=np.float64)
    cdef double[:, ::1] w = np.ascontiguousarray(w_arr, dtype=np.float64)
    cdef double[::1] b = np.ascontiguousarray(b_arr, dtype=np.float64)
    cdef Py_ssize_t n_batch = x.shape[0]
    cdef Py_ssize_t n_in = x.shape[1]
    cdef Py_ssize_t n_out = w.shape[0]
    if w.shape[1] != n_in or b.shape[0] != n_out:
        raise ValueError("affine: shape mismatch")
    out_arr = np.empty((n_batch, n_out), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t i, o, j
    cdef double acc
    with nogil:
        for i in range(n_batch):
            for o in range(n_out):
                acc = b[o]
                for j in range(n_in):
                    acc += x[i, j] * w[o, j]
                out[i, o] = acc
    return out_arr


def affine_backward(cnp.ndarray x_arr, cnp.ndarray w_arr, cnp.ndarray dy_arr):
    cdef double[:, ::1] x = np.ascontiguousarray(x_arr, dtype=np.float64)
    cdef double[:, ::1] w = np.ascontiguousarray(w_arr, dtype=np.float64)
    cdef double[:, ::1] dy = np.ascontiguousarray(dy_arr, dtype=np.float64)
    cdef Py_ssize_t n_batch = x.shape[0]
    cdef Py_ssize_t n_in = x.shape[1]
    cdef Py_ssize_t n_out = w.shape[0]
    if w.shape[1] != n_in or dy.shape[0] != n_batch or dy.shape[1] != n_out:
        raise ValueError("affine_backward: shape mismatch")
    dx_arr = np.zeros((n_batch, n_in), dtype=np.float64)
    dw_arr = np.zeros((n_out, n_in), dtype=np.float64)
    db_arr = np.zeros(n_out, dtype=np.float64)
    cdef double[:, ::1] dx = dx_arr
    cdef double[:, ::1] dw = dw_arr
    cdef double[::1] db = db_arr
    cdef Py_ssize_t i, o, j
    cdef double d
    with nogil:
        for i in range(n_batch):
            for o in range(n_out):
                d = dy[i, o]
                db[o] += d
                for j in range(n_in):
                    dx[i, j] += d * w[o, j]
                    dw[o, j] += d * x[i, j]
    return dx_arr, dw_arr, db_arr


def activation(cnp.ndarray z_arr, int kind):
    cdef double[:, ::1] z = np.ascontiguousarray(z_arr, dtype=np.float64)
    cdef Py_ssize_t n_batch = z.shape[0]
    cdef Py_ssize_t n = z.shape[1]
    out_arr = np.empty((n_batch, n), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t i, j
    cdef double v
    if kind not in (ACT_IDENTITY, ACT_RELU, ACT_TANH):
        raise ValueError(f"unknown activation code {kind}")
    with nogil:
        for i in range(n_batch):
            for j in range(n):
                v = z[i, j]
                if kind == ACT_RELU:
                    out[i, j] = v if v > 0.0 else 0.0
                elif kind == ACT_TANH:
                    out[i, j] = c_tanh(v)
                else:
                    out[i, j] = v
    return out_arr


def activation_backward(cnp.ndarray z_arr, int kind, cnp.ndarray da_arr):
    cdef double[:, ::1] z = np.ascontiguousarray(z_arr, dtype=np.float64)
    cdef double[:, ::1] da = np.ascontiguousarray(da_arr, dtype=np.float64)
    cdef Py_ssize_t n_batch = z.shape[0]
    cdef Py_ssize_t n = z.shape[1]
    if da.shape[0] != n_batch or da.shape[1] != n:
        raise ValueError("activation_backward: shape mismatch")
    out_arr = np.empty((n_batch, n), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t i, j
    cdef double t
    if kind not in (ACT_IDENTITY, ACT_RELU, ACT_TANH):
        raise ValueError(f"unknown activation code {kind}")
    with nogil:
        for i in range(n_batch):
            for j in range(n):
                if kind == ACT_RELU:
                    out[i, j] = da[i, j] if z[i, j] > 0.0 else 0.0
                elif kind == ACT_TANH:
                    t = c_tanh(z[i, j])
                    out[i, j] = da[i, j] * (1.0 - t * t)
                else:
                    out[i, j] = da[i, j]
    return out_arr
