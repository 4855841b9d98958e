"""Best stochastic system: which probability assignment maximizes p(theta)?

The objective is p(theta) viewed as a polynomial in one variable per free
production, a posynomial whose monomials are derivation count-multisets.
Every monomial has the same degree within each predecessor's variable block
(each occurrence of a symbol is rewritten exactly once), so the feasible set
is a product of per-predecessor simplices and the multiplicative update
x' = x * grad / (block mass) never decreases the objective.  Maximization is
not convex, so the solver multi-restarts and certifies nothing beyond
monotone ascent; tests compare it against grid search on small instances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .derivations import (
    count_productions,
    enumerate_derivations,
    sequence_probability,
    step_gradients,
    step_values,
)
from .errors import CapExceeded
from .free_system import build_free_system
from .model import (
    LogLinear,
    Partial0LSystem,
    Production,
    S0LSystem,
    Sequence,
    Symbol,
    occurrence_counts,
)

#: skip monomial expansion when the derivation space is larger than this
DEFAULT_EXPANSION_CAP = 10_000


@dataclass(frozen=True)
class Monomial:
    """coefficient * prod variable^exponent; exponents sorted canonically."""

    coefficient: int
    exponents: tuple[tuple[Production, int], ...]


@dataclass(frozen=True, eq=False)
class PosynomialObjective:
    """p(theta) as a polynomial over the free system's production variables.

    The factored form (theta plus free system, evaluated per step by dynamic
    programming) is always available; the expanded monomial list is only
    populated when the derivation space fits under the expansion cap.
    """

    theta: Sequence
    free: Partial0LSystem
    variables: tuple[Production, ...]
    blocks: dict[Symbol, tuple[Production, ...]]
    monomials: tuple[Monomial, ...] | None


@dataclass(frozen=True)
class SolverConfig:
    restarts: int = 16
    max_iters: int = 5000
    rel_tol: float = 1e-10
    prune_eps: float = 1e-9
    seed: int = 0

    def __post_init__(self) -> None:
        if self.restarts < 1:
            raise ValueError("restarts must be positive")
        if self.max_iters < 1:
            raise ValueError("max_iters must be positive")
        if not 0.0 < self.rel_tol < 1.0:
            raise ValueError("rel_tol must lie in (0, 1)")
        if not 0.0 < self.prune_eps < 1.0:
            raise ValueError("prune_eps must lie in (0, 1)")


@dataclass
class RestartTrace:
    """Objective values after each update of one restart, plus flags."""

    restart: int
    values: list[float]
    degenerate: list[tuple[int, Symbol]] = field(default_factory=list)
    converged: bool = False

    @property
    def iterations(self) -> int:
        return len(self.values) - 1


def build_objective(theta: Sequence, cap: int = DEFAULT_EXPANSION_CAP) -> PosynomialObjective:
    """Objective for theta over its free system's productions.

    Monomials are grouped derivation counts; grouping is attempted only when
    the derivation space fits under cap (pass cap=0 to skip expansion, e.g.
    when only the factored form is needed).  The factored form never fails.
    """
    free = build_free_system(theta)
    blocks: dict[Symbol, list[Production]] = {}
    for production in free.productions:
        blocks.setdefault(production.predecessor, []).append(production)
    monomials: tuple[Monomial, ...] | None = None
    if cap > 0:
        grouped: dict[tuple[tuple[Production, int], ...], int] = {}
        try:
            for derivation in enumerate_derivations(free, theta, cap):
                key = tuple(sorted(count_productions(derivation).items()))
                grouped[key] = grouped.get(key, 0) + 1
        except CapExceeded:
            monomials = None
        else:
            monomials = tuple(
                Monomial(coefficient, exponents)
                for exponents, coefficient in sorted(grouped.items())
            )
    return PosynomialObjective(
        theta=theta,
        free=free,
        variables=free.productions,
        blocks={symbol: tuple(block) for symbol, block in blocks.items()},
        monomials=monomials,
    )


def evaluate_objective(
    obj: PosynomialObjective, x: Mapping[Production, float]
) -> float:
    """Objective value at x via the factored per-step form.

    x need not be normalized, only nonnegative; missing variables count 0.
    """
    return math.prod(step_values(x, obj.theta))


def evaluate_monomials(
    obj: PosynomialObjective, x: Mapping[Production, float]
) -> float:
    """Objective value by expanded monomials; requires them to be present."""
    if obj.monomials is None:
        raise ValueError("objective was built without monomial expansion")
    total = 0.0
    for monomial in obj.monomials:
        term = float(monomial.coefficient)
        for production, exponent in monomial.exponents:
            term *= x.get(production, 0.0) ** exponent
        total += term
    return total


def maximize(
    obj: PosynomialObjective, cfg: SolverConfig | None = None
) -> tuple[dict[Production, float], float, tuple[RestartTrace, ...]]:
    """Multi-restart multiplicative ascent over the product of simplices.

    Restart 0 starts uniform per block; the rest start at random interior
    points drawn via normalized exponentials with per-restart seeds derived
    from cfg.seed.  Within a restart the objective never decreases; across
    restarts the best value wins, earliest restart first on ties.
    """
    cfg = cfg or SolverConfig()
    if not obj.variables:
        raise ValueError("objective has no variables")
    best_x: dict[Production, float] | None = None
    best_value = -1.0
    traces: list[RestartTrace] = []
    for restart in range(cfg.restarts):
        x, value, trace = _ascend(obj, _start_point(obj, cfg, restart), cfg, restart)
        traces.append(trace)
        if value > best_value:
            best_x, best_value = x, value
    assert best_x is not None
    return best_x, best_value, tuple(traces)


def infer_optimal_system(
    theta: Sequence, cfg: SolverConfig | None = None
) -> tuple[S0LSystem, LogLinear]:
    """Solve for the system maximizing p(theta) and package it.

    Runs the solver on the factored objective, assembles the surviving
    productions into a system, and reports p(theta) under that system.
    """
    cfg = cfg or SolverConfig()
    obj = build_objective(theta, cap=0)
    x_star, _, _ = maximize(obj, cfg)
    system = assemble_system(theta, obj, x_star, cfg.prune_eps)
    return system, sequence_probability(system, theta)


def assemble_system(
    theta: Sequence,
    obj: PosynomialObjective,
    x_star: Mapping[Production, float],
    prune_eps: float,
) -> S0LSystem:
    """Turn a solver point into a stochastic system.

    Drops productions below prune_eps, renormalizes each block, and gives
    symbols that occur only in the last word (hence are never rewritten) the
    identity rule a -> a, marked as a default.  Every block keeps at least
    its largest entry, so renormalization is always well defined.
    """
    prob: dict[Production, float] = {}
    for block in obj.blocks.values():
        survivors = [p for p in block if x_star[p] >= prune_eps]
        if not survivors:
            survivors = [max(block, key=lambda p: x_star[p])]
        total = sum(x_star[p] for p in survivors)
        for p in survivors:
            prob[p] = x_star[p] / total
    occurrences = occurrence_counts(theta)
    defaults: list[Production] = []
    for symbol in sorted(theta.symbols()):
        if occurrences[symbol] == 0:
            identity = Production(symbol, (symbol,))
            prob[identity] = 1.0
            defaults.append(identity)
    base = Partial0LSystem(
        alphabet=frozenset(theta.symbols()),
        axiom=theta.axiom,
        productions=tuple(prob),
    )
    return S0LSystem(base=base, prob=prob, defaults=frozenset(defaults))


def _start_point(
    obj: PosynomialObjective, cfg: SolverConfig, restart: int
) -> dict[Production, float]:
    x: dict[Production, float] = {}
    if restart == 0:
        for block in obj.blocks.values():
            share = 1.0 / len(block)
            for production in block:
                x[production] = share
        return x
    rng = np.random.default_rng([cfg.seed, restart])
    for block in obj.blocks.values():
        draws = rng.exponential(size=len(block))
        total = float(draws.sum())
        if total == 0.0:
            draws = np.ones(len(block))
            total = float(len(block))
        for production, draw in zip(block, draws):
            x[production] = float(draw) / total
    return x


def _ascend(
    obj: PosynomialObjective,
    x: dict[Production, float],
    cfg: SolverConfig,
    restart: int,
) -> tuple[dict[Production, float], float, RestartTrace]:
    values, grads = step_gradients(x, obj.theta)
    current = math.prod(values)
    trace = RestartTrace(restart=restart, values=[current])
    for iteration in range(1, cfg.max_iters + 1):
        masses = _block_masses(x, values, grads)
        if masses is None:
            # objective is 0 here: every numerator vanishes, nothing to renormalize
            trace.degenerate.extend((iteration, symbol) for symbol in obj.blocks)
            break
        for symbol, block in obj.blocks.items():
            block_mass = [masses.get(p, 0.0) for p in block]
            total = sum(block_mass)
            if total <= 0.0:
                trace.degenerate.append((iteration, symbol))
                continue
            for production, mass in zip(block, block_mass):
                x[production] = mass / total
        values, grads = step_gradients(x, obj.theta)
        previous, current = current, math.prod(values)
        trace.values.append(current)
        if abs(current - previous) <= cfg.rel_tol * max(abs(current), 1e-300):
            trace.converged = True
            break
    return x, current, trace


def _block_masses(
    x: Mapping[Production, float],
    values: list[float],
    grads: list[dict[Production, float]],
) -> dict[Production, float] | None:
    """x_p times the gradient of log p(theta), or None where p(theta) = 0."""
    if any(value == 0.0 for value in values):
        return None
    masses: dict[Production, float] = {}
    for value, grad in zip(values, grads):
        for production, slope in grad.items():
            masses[production] = masses.get(production, 0.0) + slope / value
    return {p: x.get(p, 0.0) * m for p, m in masses.items()}
