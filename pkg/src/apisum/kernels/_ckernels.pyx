# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the two hot loops: pairwise cosine and rank iteration.

Mirrors ``_pykernels`` operation for operation; compiled without fast-math
so both backends produce identical IEEE-754 results.
"""

from cpython cimport array
import array

from libc.math cimport sqrt

BACKEND = "c"

cdef array.array _DOUBLE_TEMPLATE = array.array("d")


def cosine_matrix(double[::1] vectors, Py_ssize_t n, Py_ssize_t dim):
    """Flat n*n matrix of pairwise clamped cosines over flat row vectors."""
    cdef array.array norms_arr = array.clone(_DOUBLE_TEMPLATE, n, zero=True)
    cdef array.array weights_arr = array.clone(_DOUBLE_TEMPLATE, n * n, zero=True)
    cdef double[::1] norms = norms_arr
    cdef double[::1] weights = weights_arr

    cdef Py_ssize_t i, j, k, bi, bj
    cdef double acc, dot, c

    for i in range(n):
        acc = 0.0
        bi = i * dim
        for k in range(dim):
            acc += vectors[bi + k] * vectors[bi + k]
        norms[i] = sqrt(acc)

    for i in range(n):
        if norms[i] == 0.0:
            continue
        bi = i * dim
        for j in range(i + 1, n):
            if norms[j] == 0.0:
                continue
            bj = j * dim
            dot = 0.0
            for k in range(dim):
                dot += vectors[bi + k] * vectors[bj + k]
            c = dot / (norms[i] * norms[j])
            if c < 0.0:
                c = 0.0
            elif c > 1.0:
                c = 1.0
            weights[i * n + j] = c
            weights[j * n + i] = c
    return weights_arr


def pagerank(double[::1] weights, Py_ssize_t n, double damping,
             double tolerance, Py_ssize_t max_iterations):
    """Damped score iteration over a flat n*n nonnegative weight matrix."""
    cdef double base = 1.0 - damping

    cdef array.array strengths_arr = array.clone(_DOUBLE_TEMPLATE, n, zero=True)
    cdef array.array transition_arr = array.clone(_DOUBLE_TEMPLATE, n * n, zero=True)
    cdef array.array scores_arr = array.clone(_DOUBLE_TEMPLATE, n, zero=False)
    cdef array.array new_arr = array.clone(_DOUBLE_TEMPLATE, n, zero=True)
    cdef double[::1] strengths = strengths_arr
    cdef double[::1] transition = transition_arr
    cdef double[::1] scores = scores_arr
    cdef double[::1] new_scores = new_arr
    cdef double[::1] tmp

    cdef Py_ssize_t i, j, k, row
    cdef double acc, s, diff, residual

    for j in range(n):
        acc = 0.0
        row = j * n
        for k in range(n):
            acc += weights[row + k]
        strengths[j] = acc

    for j in range(n):
        if strengths[j] == 0.0:
            continue
        row = j * n
        for i in range(n):
            transition[i * n + j] = weights[row + i] / strengths[j]

    for i in range(n):
        scores[i] = 1.0

    cdef Py_ssize_t iterations = 0
    cdef bint converged = False
    while iterations < max_iterations:
        iterations += 1
        residual = 0.0
        for i in range(n):
            acc = 0.0
            row = i * n
            for j in range(n):
                acc += transition[row + j] * scores[j]
            s = base + damping * acc
            new_scores[i] = s
            diff = s - scores[i]
            if diff < 0.0:
                diff = -diff
            if diff > residual:
                residual = diff
        tmp = scores
        scores = new_scores
        new_scores = tmp
        if residual < tolerance:
            converged = True
            break

    cdef array.array out = array.clone(_DOUBLE_TEMPLATE, n, zero=False)
    cdef double[::1] out_view = out
    for i in range(n):
        out_view[i] = scores[i]
    return out, iterations, bool(converged)
