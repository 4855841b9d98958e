"""Command line interface.

Subcommands: free, enumerate, prob, infer-derivation, infer-system, sample.
Standard output is deterministic given identical inputs and seeds (it starts
with sha256 digests of the input files); timing and diagnostics go to
standard error.  Exit codes: 0 success, 1 usage or input errors, 2 sequence
incompatible with the system at hand, 3 a cap or length guard tripped.
"""

from __future__ import annotations

import argparse
import math
import sys
import time

from .derivations import (
    DEFAULT_DERIVATION_CAP,
    count_productions,
    derivation_probability,
    enumerate_derivations,
    sequence_probability,
)
from .errors import (
    CapExceeded,
    FormatError,
    IncompatibleSequence,
    IncompatibleStep,
    MissingProduction,
    WordLengthExceeded,
)
from .formats import (
    file_digest,
    format_real,
    parse_sequence_file,
    parse_system_file,
    serialize_derivation,
    serialize_partial_system,
    serialize_system,
    serialize_word,
)
from .free_system import build_free_system
from .model import Production, Sequence
from .optimal_derivation import best_derivation
from .optimal_system import (
    DEFAULT_EXPANSION_CAP,
    PosynomialObjective,
    SolverConfig,
    assemble_system,
    build_objective,
    maximize,
)
from .sampler import sample_sequence


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors; this tool reserves 2, so use 1."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"error: usage: {message}", file=sys.stderr)
        raise SystemExit(1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="solis", description=__doc__.splitlines()[0])
    commands = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        sub = commands.add_parser(name, help=help_text)
        sub.add_argument(
            "--tokens",
            action="store_true",
            help="whitespace-separated multi-character symbols in input files",
        )
        return sub

    sub = add("free", "emit the free system of a sequence")
    sub.add_argument("sequence", help="sequence file, one word per line")

    sub = add("enumerate", "list the derivations of a sequence")
    sub.add_argument("sequence")
    sub.add_argument("--system", help="restrict to this system and report probabilities")
    sub.add_argument("--max-derivations", type=int, default=DEFAULT_DERIVATION_CAP)

    sub = add("prob", "probability that a system generates a sequence")
    sub.add_argument("sequence")
    sub.add_argument("--system", required=True)

    sub = add("infer-derivation", "most probable single derivation and its system")
    sub.add_argument("sequence")
    sub.add_argument("--max-derivations", type=int, default=DEFAULT_DERIVATION_CAP)

    sub = add("infer-system", "system maximizing the sequence probability")
    sub.add_argument("sequence")
    sub.add_argument("--restarts", type=int, default=SolverConfig.restarts)
    sub.add_argument("--max-iters", type=int, default=SolverConfig.max_iters)
    sub.add_argument("--tol", type=float, default=SolverConfig.rel_tol)
    sub.add_argument("--prune-eps", type=float, default=SolverConfig.prune_eps)
    sub.add_argument("--seed", type=int, default=SolverConfig.seed)
    sub.add_argument(
        "--show-objective",
        action="store_true",
        help="print the expanded objective when small enough",
    )

    sub = add("sample", "sample a trace from a system")
    sub.add_argument("--system", required=True)
    sub.add_argument("--steps", type=int, required=True)
    sub.add_argument("--seed", type=int, default=0)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    handlers = {
        "free": _cmd_free,
        "enumerate": _cmd_enumerate,
        "prob": _cmd_prob,
        "infer-derivation": _cmd_infer_derivation,
        "infer-system": _cmd_infer_system,
        "sample": _cmd_sample,
    }
    start = time.perf_counter()
    try:
        lines = handlers[args.command](args)
    except (FormatError, OSError, ValueError) as exc:
        return _fail(1, exc)
    except (IncompatibleSequence, IncompatibleStep, MissingProduction) as exc:
        return _fail(2, exc)
    except (CapExceeded, WordLengthExceeded) as exc:
        return _fail(3, exc)
    finally:
        elapsed = (time.perf_counter() - start) * 1000.0
        print(f"time_ms: {elapsed:.3f}", file=sys.stderr)
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


def _fail(code: int, exc: Exception) -> int:
    print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
    return code


def _header(command: str, paths: list[str]) -> list[str]:
    lines = [f"command: {command}"]
    for path in paths:
        lines.append(f"input: {path} sha256={file_digest(path)}")
    return lines


def _production_text(production: Production, tokens: bool) -> str:
    return f"{production.predecessor} -> {serialize_word(production.successor, tokens)}"


def _uses_tokens(theta: Sequence) -> bool:
    return any(len(symbol) != 1 for symbol in theta.symbols())


def _cmd_free(args: argparse.Namespace) -> list[str]:
    theta = parse_sequence_file(args.sequence, args.tokens)
    system = build_free_system(theta)
    return _header("free", [args.sequence]) + serialize_partial_system(system).splitlines()


def _cmd_enumerate(args: argparse.Namespace) -> list[str]:
    theta = parse_sequence_file(args.sequence, args.tokens)
    paths = [args.sequence]
    system = None
    if args.system:
        system = parse_system_file(args.system, args.tokens)
        paths.append(args.system)
        base = system.base
    else:
        base = build_free_system(theta)
    derivations = list(enumerate_derivations(base, theta, cap=args.max_derivations))
    tokens = _uses_tokens(theta)
    lines = _header("enumerate", paths)
    lines.append(f"derivations: {len(derivations)}")
    for number, derivation in enumerate(derivations, start=1):
        lines.append(f"derivation {number}:")
        for step_line in serialize_derivation(derivation).splitlines():
            lines.append(f"  {step_line}")
        counts = count_productions(derivation)
        counts_text = "; ".join(
            f"{_production_text(p, tokens)}: {c}" for p, c in sorted(counts.items())
        )
        lines.append(f"  counts: {counts_text}")
        if system is not None:
            lines.append(f"  p(d) = {format_real(derivation_probability(system, derivation))}")
    if system is not None:
        total = math.fsum(derivation_probability(system, d) for d in derivations)
        lines.append(f"p(theta) = {format_real(total)}")
    return lines


def _cmd_prob(args: argparse.Namespace) -> list[str]:
    theta = parse_sequence_file(args.sequence, args.tokens)
    system = parse_system_file(args.system, args.tokens)
    value = sequence_probability(system, theta)
    lines = _header("prob", [args.sequence, args.system])
    lines.append(f"p(theta) = {format_real(value.linear)}")
    lines.append(f"log p(theta) = {format_real(value.log)}")
    return lines


def _cmd_infer_derivation(args: argparse.Namespace) -> list[str]:
    theta = parse_sequence_file(args.sequence, args.tokens)
    derivation, system, value = best_derivation(theta, cap=args.max_derivations)
    lines = _header("infer-derivation", [args.sequence])
    lines.append(f"value = {format_real(value.linear)}")
    lines.append(f"log value = {format_real(value.log)}")
    lines.append("derivation:")
    for step_line in serialize_derivation(derivation).splitlines():
        lines.append(f"  {step_line}")
    lines.extend(serialize_system(system).splitlines())
    return lines


def _cmd_infer_system(args: argparse.Namespace) -> list[str]:
    theta = parse_sequence_file(args.sequence, args.tokens)
    cfg = SolverConfig(
        restarts=args.restarts,
        max_iters=args.max_iters,
        rel_tol=args.tol,
        prune_eps=args.prune_eps,
        seed=args.seed,
    )
    cap = DEFAULT_EXPANSION_CAP if args.show_objective else 0
    obj = build_objective(theta, cap=cap)
    x_star, _, traces = maximize(obj, cfg)
    best = 0
    for index, trace in enumerate(traces):
        if trace.values[-1] > traces[best].values[-1]:
            best = index
    system = assemble_system(theta, obj, x_star, cfg.prune_eps)
    value = sequence_probability(system, theta)
    lines = _header("infer-system", [args.sequence])
    lines.append(f"restarts: {cfg.restarts}")
    lines.append(f"best restart: {best}")
    lines.append(f"iterations: {traces[best].iterations}")
    lines.append(f"converged: {'yes' if traces[best].converged else 'no'}")
    if args.show_objective:
        lines.append(_objective_text(obj, _uses_tokens(theta)))
    lines.append(f"value = {format_real(value.linear)}")
    lines.append(f"log value = {format_real(value.log)}")
    lines.extend(serialize_system(system).splitlines())
    return lines


def _objective_text(obj: PosynomialObjective, tokens: bool) -> str:
    if obj.monomials is None:
        return "objective: not expanded (derivation space exceeds cap)"
    terms = []
    for monomial in obj.monomials:
        factors = []
        if monomial.coefficient != 1:
            factors.append(str(monomial.coefficient))
        for production, exponent in monomial.exponents:
            factor = f"X[{_production_text(production, tokens)}]"
            if exponent > 1:
                factor += f"^{exponent}"
            factors.append(factor)
        terms.append(" ".join(factors))
    return "objective: " + " + ".join(terms)


def _cmd_sample(args: argparse.Namespace) -> list[str]:
    system = parse_system_file(args.system, args.tokens)
    record = sample_sequence(system, args.steps, args.seed)
    tokens = any(len(symbol) != 1 for symbol in system.base.alphabet)
    lines = _header("sample", [args.system])
    lines.append(f"seed: {args.seed}")
    lines.append(f"steps: {args.steps}")
    for number, word in enumerate(record.sequence.words):
        lines.append(f"word {number}: {serialize_word(word, tokens)}")
    log = sum(
        count * math.log(system.prob[production])
        for production, count in count_productions(record.derivation).items()
    )
    lines.append(f"p(d) = {format_real(record.probability)}")
    lines.append(f"log p(d) = {format_real(log)}")
    return lines


if __name__ == "__main__":
    sys.exit(main())
