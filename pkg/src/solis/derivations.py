"""Derivations of a word sequence and their probabilities.

A derivation fixes, for every step and every position, the production that
rewrote that position.  Its probability is the product of the chosen
production probabilities; the probability of the whole sequence is the sum
over all of its derivations.  Enumeration of that sum is kept as an oracle;
the default path exploits the fact that choices in different steps are
independent, so the sum factors into one term per step, each computable by
a quadratic dynamic program without materializing any derivation.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Mapping

from .compositions import StepAssignment
from .errors import CapExceeded, IncompatibleSequence
from .model import LogLinear, Partial0LSystem, Production, S0LSystem, Sequence, Symbol, Word

#: refuse to stream a derivation space larger than this unless told otherwise
DEFAULT_DERIVATION_CAP = 10**7

#: multiset of applied productions over a whole derivation
ProductionCounts = Counter[Production]


@dataclass(frozen=True)
class Derivation:
    """One per-step assignment chain: each step's target is the next source."""

    steps: tuple[StepAssignment, ...]

    def __post_init__(self) -> None:
        for first, second in zip(self.steps, self.steps[1:]):
            if first.target != second.source:
                raise ValueError(
                    f"steps do not chain: {first.target!r} != {second.source!r}"
                )


def enumerate_derivations(
    system: Partial0LSystem,
    theta: Sequence,
    cap: int = DEFAULT_DERIVATION_CAP,
) -> Iterator[Derivation]:
    """Yield every derivation of theta whose productions all lie in system.

    The stream is the Cartesian product of the per-step valid assignments,
    earlier steps most significant, each step in the enumeration order of
    enumerate_step_assignments.  Raises IncompatibleSequence if some step
    admits no valid assignment (1-based step index in the error) and
    CapExceeded if the derivation count exceeds cap; the count carried by
    CapExceeded is a lower bound when a single step already overflows.
    """
    if cap < 1:
        raise ValueError("cap must be a positive integer")
    index = _successor_sets(system.productions)
    per_step: list[list[StepAssignment]] = []
    truncated = False
    for number, (x, y) in enumerate(theta.steps(), start=1):
        assignments, cut = _step_assignments(index, x, y, limit=cap)
        if not assignments:
            raise IncompatibleSequence(
                f"step {number} has no valid assignment under the given system",
                step=number,
            )
        truncated = truncated or cut
        per_step.append(assignments)
    total = 1
    for assignments in per_step:
        total *= len(assignments)
    if total > cap:
        qualifier = "at least " if truncated else ""
        raise CapExceeded(
            f"derivation space holds {qualifier}{total} derivations, cap is {cap}",
            count=total,
            cap=cap,
        )
    return (Derivation(steps=combo) for combo in product(*per_step))


def count_productions(d: Derivation) -> ProductionCounts:
    """Multiset of productions applied across all steps and positions."""
    counts: ProductionCounts = Counter()
    for step in d.steps:
        counts.update(step.productions())
    return counts


def derivation_probability(g: S0LSystem, d: Derivation) -> float:
    """Product of the probabilities of the applied productions.

    A production missing from g contributes 0, not an error.
    """
    result = 1.0
    for production, count in count_productions(d).items():
        p = g.probability(production)
        if p == 0.0:
            return 0.0
        result *= p**count
    return result


def sequence_probability_naive(
    g: S0LSystem, theta: Sequence, cap: int = DEFAULT_DERIVATION_CAP
) -> float:
    """Sum of derivation_probability over every derivation, by enumeration.

    Oracle for sequence_probability; returns 0.0 when theta is incompatible
    with g.  CapExceeded propagates.
    """
    try:
        stream = enumerate_derivations(g.base, theta, cap)
        return math.fsum(derivation_probability(g, d) for d in stream)
    except IncompatibleSequence:
        return 0.0


def sequence_probability(g: S0LSystem, theta: Sequence) -> LogLinear:
    """Probability that g generates theta, as (log value, linear value).

    Computed per step by dynamic programming and combined in log space, so
    the log survives underflow of the linear value.  Incompatible sequences
    give (-inf, 0.0).
    """
    values = step_values(g.prob, theta)
    log = 0.0
    for value in values:
        if value <= 0.0:
            return LogLinear(float("-inf"), 0.0)
        log += math.log(value)
    return LogLinear(log, math.prod(values))


def probability_gradient(g: S0LSystem, theta: Sequence) -> dict[Production, float]:
    """Exact partial derivatives of the linear p(theta) per production.

    Forward and backward tables per step give each step-sum's gradient; the
    product rule combines steps, with explicit handling of zero-valued steps
    (two or more zero steps kill every derivative).
    """
    values, grads = step_gradients(g.prob, theta)
    total: dict[Production, float] = {p: 0.0 for p in g.prob}
    zero_steps = [j for j, value in enumerate(values) if value == 0.0]
    if len(zero_steps) >= 2:
        return total
    if len(zero_steps) == 1:
        j = zero_steps[0]
        rest = math.prod(value for i, value in enumerate(values) if i != j)
        for production, slope in grads[j].items():
            total[production] = rest * slope
        return total
    m = len(values)
    prefix = [1.0] * (m + 1)
    for j, value in enumerate(values):
        prefix[j + 1] = prefix[j] * value
    suffix = [1.0] * (m + 1)
    for j in range(m - 1, -1, -1):
        suffix[j] = suffix[j + 1] * values[j]
    for j, grad in enumerate(grads):
        rest = prefix[j] * suffix[j + 1]
        for production, slope in grad.items():
            total[production] += rest * slope
    return total


def step_values(prob: Mapping[Production, float], theta: Sequence) -> list[float]:
    """The per-step sums S(w_j, w_{j+1}) whose product is p(theta).

    Accepts any nonnegative weighting of productions, normalized or not;
    weights absent from the mapping count as zero.
    """
    index = _weight_index(prob)
    return [_forward(index, x, y)[-1][-1] for x, y in theta.steps()]


def step_gradients(
    prob: Mapping[Production, float], theta: Sequence
) -> tuple[list[float], list[dict[Production, float]]]:
    """Per-step values and per-step gradients with respect to each weight.

    The j-th gradient maps a production to the derivative of the j-th step
    sum; productions with zero or absent weight are omitted.
    """
    index = _weight_index(prob)
    values: list[float] = []
    grads: list[dict[Production, float]] = []
    for x, y in theta.steps():
        forward = _forward(index, x, y)
        backward = _backward(index, x, y)
        values.append(forward[-1][-1])
        grads.append(_step_gradient(index, x, y, forward, backward))
    return values, grads


_WeightIndex = dict[Symbol, list[tuple[int, dict[Word, float]]]]


def _weight_index(prob: Mapping[Production, float]) -> _WeightIndex:
    """Group weights by predecessor, then by successor length (ascending)."""
    by_symbol: dict[Symbol, dict[int, dict[Word, float]]] = {}
    for production in sorted(prob):
        weight = prob[production]
        if weight == 0.0:
            continue
        if weight < 0.0:
            raise ValueError(f"negative weight for {production}")
        lengths = by_symbol.setdefault(production.predecessor, {})
        lengths.setdefault(len(production.successor), {})[production.successor] = weight
    return {a: sorted(lengths.items()) for a, lengths in by_symbol.items()}


def _forward(index: _WeightIndex, x: Word, y: Word) -> list[list[float]]:
    """forward[i][k] = total weight of rewriting x[:i] into y[:k]."""
    n = len(y)
    rows = [[0.0] * (n + 1) for _ in range(len(x) + 1)]
    rows[0][0] = 1.0
    for i, a in enumerate(x, start=1):
        prev, row = rows[i - 1], rows[i]
        for length, weights in index.get(a, ()):
            for k in range(length, n + 1):
                base = prev[k - length]
                if base:
                    w = weights.get(y[k - length : k])
                    if w is not None:
                        row[k] += base * w
    return rows


def _backward(index: _WeightIndex, x: Word, y: Word) -> list[list[float]]:
    """backward[i][k] = total weight of rewriting x[i:] into y[k:]."""
    n = len(y)
    rows = [[0.0] * (n + 1) for _ in range(len(x) + 1)]
    rows[len(x)][n] = 1.0
    for i in range(len(x) - 1, -1, -1):
        nxt, row = rows[i + 1], rows[i]
        for length, weights in index.get(x[i], ()):
            for k in range(0, n - length + 1):
                tail = nxt[k + length]
                if tail:
                    w = weights.get(y[k : k + length])
                    if w is not None:
                        row[k] += w * tail
    return rows


def _step_gradient(
    index: _WeightIndex,
    x: Word,
    y: Word,
    forward: list[list[float]],
    backward: list[list[float]],
) -> dict[Production, float]:
    n = len(y)
    grad: dict[Production, float] = {}
    for i, a in enumerate(x):
        prev, nxt = forward[i], backward[i + 1]
        for length, weights in index.get(a, ()):
            for k in range(length, n + 1):
                mass = prev[k - length] * nxt[k]
                if mass:
                    z = y[k - length : k]
                    if z in weights:
                        key = Production(a, z)
                        grad[key] = grad.get(key, 0.0) + mass
    return grad


def _successor_sets(
    productions: Iterable[Production],
) -> dict[Symbol, list[tuple[int, set[Word]]]]:
    by_symbol: dict[Symbol, dict[int, set[Word]]] = {}
    for production in productions:
        lengths = by_symbol.setdefault(production.predecessor, {})
        lengths.setdefault(len(production.successor), set()).add(production.successor)
    return {a: sorted(lengths.items()) for a, lengths in by_symbol.items()}


def _step_assignments(
    index: dict[Symbol, list[tuple[int, set[Word]]]],
    x: Word,
    y: Word,
    limit: int | None = None,
) -> tuple[list[StepAssignment], bool]:
    """Valid assignments for one step, in ascending-cut order.

    Successors are tried shortest first at each position, which reproduces
    the cut-lexicographic order of enumerate_step_assignments when every
    candidate is allowed.  Collection stops once len exceeds limit; the
    second return value reports that truncation.
    """
    n = len(y)
    out: list[StepAssignment] = []
    parts: list[Word] = []

    def walk(i: int, k: int) -> bool:
        if limit is not None and len(out) > limit:
            return True
        if i == len(x):
            if k == n:
                out.append(StepAssignment(x, y, tuple(parts)))
            return False
        for length, successors in index.get(x[i], ()):
            if k + length > n:
                break
            z = y[k : k + length]
            if z in successors:
                parts.append(z)
                if walk(i + 1, k + length):
                    return True
                parts.pop()
        return False

    cut = walk(0, 0)
    return out, cut
