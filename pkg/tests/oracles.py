"""Independent brute-force oracles, deliberately outside the main code paths.

These reimplement contracts in the most literal way possible (nested lists,
no kernels module, no shared helpers) so test comparisons are meaningful.
"""


def brute_force_rank(weights, damping=0.85, iterations=10_000):
    """Fixed-point iteration of the damped rank update, run to `iterations`.

    Stops early only when an iteration changes nothing bitwise, at which
    point every later iteration is provably identical, so the result equals
    the full run.
    """
    n = len(weights)
    strengths = [sum(weights[j][k] for k in range(n)) for j in range(n)]
    scores = [1.0] * n
    for _ in range(iterations):
        new_scores = []
        for i in range(n):
            incoming = 0.0
            for j in range(n):
                if strengths[j] > 0.0:
                    incoming += weights[j][i] / strengths[j] * scores[j]
            new_scores.append((1.0 - damping) + damping * incoming)
        if new_scores == scores:
            break
        scores = new_scores
    return scores


def selection_oracle(sentence_count, mention_positions):
    """Direct set comprehension of the selection rule."""
    if sentence_count == 0:
        return set()
    mentions = set(mention_positions)
    neighbors = {m - 1 for m in mentions} | {m + 1 for m in mentions}
    clipped = {i for i in neighbors if 0 <= i < sentence_count}
    return {0} | mentions | clipped
