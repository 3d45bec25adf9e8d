"""Pure-Python kernels: the fallback when the compiled extension is absent.

Operation order matches ``_ckernels.pyx`` line for line so both backends
produce identical IEEE-754 results.
"""

from __future__ import annotations

from array import array
from math import sqrt

BACKEND = "python"


def cosine_matrix(vectors, n, dim):
    """Flat n*n matrix of pairwise clamped cosines over flat row vectors.

    ``vectors`` holds n rows of ``dim`` doubles.  Off-diagonal entries are
    cosine similarity clamped into [0, 1]; the diagonal is 0; a zero-norm
    row is similar to nothing.
    """
    norms = array("d", bytes(8 * n))
    for i in range(n):
        acc = 0.0
        base = i * dim
        for k in range(dim):
            acc += vectors[base + k] * vectors[base + k]
        norms[i] = sqrt(acc)

    weights = array("d", bytes(8 * n * n))
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
    return weights


def pagerank(weights, n, damping, tolerance, max_iterations):
    """Damped score iteration over a flat n*n nonnegative weight matrix.

    Scores start at 1.0 and update to ``(1-d) + d * sum_j w[j][i] /
    strength[j] * s[j]`` until the max component change drops below the
    tolerance or the iteration budget runs out.  Vertices with zero total
    weight stay at exactly ``1 - d``.
    """
    base = 1.0 - damping

    strengths = array("d", bytes(8 * n))
    for j in range(n):
        acc = 0.0
        row = j * n
        for k in range(n):
            acc += weights[row + k]
        strengths[j] = acc

    # transition[i*n + j]: share of j's score flowing to i
    transition = array("d", bytes(8 * n * n))
    for j in range(n):
        if strengths[j] == 0.0:
            continue
        row = j * n
        for i in range(n):
            transition[i * n + j] = weights[row + i] / strengths[j]

    scores = array("d", [1.0] * n)
    iterations = 0
    converged = False
    while iterations < max_iterations:
        iterations += 1
        new_scores = array("d", bytes(8 * n))
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
        scores = new_scores
        if residual < tolerance:
            converged = True
            break
    return scores, iterations, converged
