"""Permutation-sampling Shapley values for token attribution.

A model's score for an utterance is a set function over its tokens: hide
some tokens, score what remains. Shapley values split the score among the
tokens by averaging each token's marginal contribution over random orderings.
Sampling orderings keeps the cost linear in the token count per sample, and
the telescoping sum along every ordering makes the attribution additive by
construction: base value + all token values recovers the full-input score
(up to float rounding), no matter how few orderings are sampled.
"""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

Mask = tuple[bool, ...]
Evaluate = Callable[[Sequence[Mask]], Sequence[float]]


def permutation_values(evaluate: Evaluate, n_tokens: int, samples: int,
                       rng: np.random.Generator) -> tuple[float, list[float]]:
    """Attribute a set function's output over ``n_tokens`` positions.

    ``evaluate`` maps a batch of keep-masks (True = token visible) to one
    score per mask; it must be deterministic. Returns ``(base, values)``
    where ``base`` is the all-hidden score and ``values[t]`` the mean
    marginal contribution of token ``t`` over ``samples`` random orderings.
    Identical masks are evaluated once, so the empty and full masks — shared
    by every ordering — cost one evaluation each.
    """
    if n_tokens < 0:
        raise ValueError("n_tokens must be >= 0")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    empty: Mask = (False,) * n_tokens
    full: Mask = (True,) * n_tokens
    if n_tokens == 0:
        return float(evaluate([empty])[0]), []

    orderings = [rng.permutation(n_tokens) for _ in range(samples)]
    masks: list[Mask] = [empty, full]
    index: dict[Mask, int] = {empty: 0, full: 1}
    for order in orderings:
        kept = list(empty)
        for position in order[:-1]:  # the last prefix is always the full mask
            kept[position] = True
            key = tuple(kept)
            if key not in index:
                index[key] = len(masks)
                masks.append(key)

    scores = [float(s) for s in evaluate(masks)]
    if len(scores) != len(masks):
        raise ValueError("evaluate returned a different number of scores than masks")

    totals = [0.0] * n_tokens
    for order in orderings:
        previous = scores[0]
        kept = list(empty)
        for position in order:
            kept[position] = True
            current = scores[index[tuple(kept)]]
            totals[position] += current - previous
            previous = current
    return scores[0], [total / samples for total in totals]
