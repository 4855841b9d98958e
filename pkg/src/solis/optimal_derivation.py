"""Best single derivation: which derivation can any system make most likely?

For a fixed derivation, the best probability assignment is a closed-form
maximization of a product of powers over weighted simplices, one simplex per
predecessor.  Plugging the production counts of the derivation in gives an
upper bound on its probability under any system, attained by setting each
production's probability to count / occurrences.  The search for the best
derivation is then a discrete argmax of that bound over the free system's
derivation stream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .derivations import (
    DEFAULT_DERIVATION_CAP,
    Derivation,
    ProductionCounts,
    count_productions,
    enumerate_derivations,
)
from .free_system import build_free_system
from .model import (
    LogLinear,
    Partial0LSystem,
    S0LSystem,
    Sequence,
    occurrence_counts,
)


@dataclass(frozen=True)
class SimplexProductProblem:
    """Maximize prod x_i^exponents[i] subject to sum coefficients[i]*x_i = budget."""

    exponents: tuple[int, ...]
    coefficients: tuple[float, ...]
    budget: float

    def __post_init__(self) -> None:
        if len(self.exponents) != len(self.coefficients):
            raise ValueError("exponents and coefficients must have equal length")
        if not self.exponents:
            raise ValueError("need at least one variable")
        if any(n <= 0 for n in self.exponents):
            raise ValueError("exponents must be positive integers")
        if any(a <= 0.0 for a in self.coefficients):
            raise ValueError("coefficients must be positive")
        if self.budget <= 0.0:
            raise ValueError("budget must be positive")


def simplex_product_max(problem: SimplexProductProblem) -> tuple[list[float], float]:
    """Closed-form argmax and maximum of the constrained product of powers.

    argmax x_i = budget * n_i / (N * a_i) with N the sum of exponents; the
    maximum is (budget / N)^N * prod (n_i / a_i)^n_i.
    """
    total = sum(problem.exponents)
    argmax = [
        problem.budget * n / (total * a)
        for n, a in zip(problem.exponents, problem.coefficients)
    ]
    value = (problem.budget / total) ** total
    for n, a in zip(problem.exponents, problem.coefficients):
        value *= (n / a) ** n
    return argmax, value


def derivation_bound(theta: Sequence, counts: ProductionCounts) -> LogLinear:
    """Upper bound on the probability of a derivation with these counts.

    Over all probability assignments of all systems, a derivation's
    probability is at most prod(count^count) / prod(occ^occ), where occ
    ranges over per-symbol occurrence totals in all words but the last.
    Returned as (log, linear); the linear value is the correctly rounded
    float of the exact integer ratio.
    """
    occurrences = occurrence_counts(theta)
    log = 0.0
    numerator = 1
    denominator = 1
    for count in counts.values():
        log += count * math.log(count)
        numerator *= count**count
    for occ in occurrences.values():
        log -= occ * math.log(occ)
        denominator *= occ**occ
    return LogLinear(log, float(Fraction(numerator, denominator)))


def best_derivation(
    theta: Sequence, cap: int = DEFAULT_DERIVATION_CAP
) -> tuple[Derivation, S0LSystem, LogLinear]:
    """The derivation of theta with the highest achievable probability.

    Enumerates the free system's derivations, scores each by the exact
    integer numerator of derivation_bound (the denominator is shared), and
    keeps the first maximum.  Derivations with identical production counts
    have identical bounds, so repeated count multisets are skipped.  The
    returned system puts probability count / occurrences on each used
    production, which attains the bound.
    """
    free = build_free_system(theta)
    occurrences = occurrence_counts(theta)
    best: Derivation | None = None
    best_counts: ProductionCounts | None = None
    best_score = -1
    seen: set[frozenset] = set()
    for derivation in enumerate_derivations(free, theta, cap):
        counts = count_productions(derivation)
        key = frozenset(counts.items())
        if key in seen:
            continue
        seen.add(key)
        score = 1
        for count in counts.values():
            score *= count**count
        if score > best_score:
            best, best_counts, best_score = derivation, counts, score
    assert best is not None and best_counts is not None
    prob = {
        production: count / occurrences[production.predecessor]
        for production, count in best_counts.items()
    }
    base = Partial0LSystem(
        alphabet=frozenset(theta.symbols()),
        axiom=theta.axiom,
        productions=tuple(best_counts),
    )
    system = S0LSystem(base=base, prob=prob)
    return best, system, derivation_bound(theta, best_counts)
