"""Text formats: sequence files, system files, and canonical rendering.

Sequence files hold one word per line, in order.  System files hold an
`axiom:` line followed by `rule:` lines in canonical production order.
Default tokenization treats every character as one symbol; token mode
splits on whitespace so multi-character symbols work.  Blank lines and
lines starting with `#` are ignored in both formats.  The literal `<eps>`
stands for the empty word, keeping rule lines unambiguous.

All numbers render with 12 significant digits; parsing accepts decimals,
scientific notation, and exact fractions like `2/9`.
"""

from __future__ import annotations

import hashlib
from fractions import Fraction

from .derivations import Derivation
from .errors import FormatError
from .model import Partial0LSystem, Production, S0LSystem, Sequence, Word

EPSILON_TOKEN = "<eps>"
DEFAULT_MARKER = "# default"


def format_real(value: float) -> str:
    """12 significant digits, the package-wide numeric output format."""
    return f"{value:.12g}"


def parse_word(
    text: str, tokens: bool = False, *, source: str = "<string>", line: int | None = None
) -> Word:
    if text == EPSILON_TOKEN:
        return ()
    if not text:
        raise FormatError(f"empty word must be written as {EPSILON_TOKEN}", source, line)
    if tokens:
        parts = tuple(text.split())
        if EPSILON_TOKEN in parts:
            raise FormatError(f"{EPSILON_TOKEN} cannot appear inside a word", source, line)
        return parts
    if any(c.isspace() for c in text):
        raise FormatError(
            "whitespace inside a word; use token mode for multi-character symbols",
            source,
            line,
        )
    return tuple(text)


def serialize_word(word: Word, tokens: bool = False) -> str:
    if not word:
        return EPSILON_TOKEN
    return " ".join(word) if tokens else "".join(word)


def parse_sequence_file(path: str, tokens: bool = False) -> Sequence:
    """Read a sequence of words, one per line, first line the axiom."""
    source = str(path)
    words: list[Word] = []
    with open(path, encoding="utf-8") as handle:
        for number, raw in enumerate(handle, start=1):
            text = raw.strip()
            if not text or text.startswith("#"):
                continue
            words.append(parse_word(text, tokens, source=source, line=number))
    if len(words) < 2:
        raise FormatError("a sequence file needs at least two words", source)
    return Sequence(words=tuple(words))


def parse_system_file(path: str, tokens: bool = False) -> S0LSystem:
    """Read an `axiom:` line plus `rule: a -> y p=<prob>` lines."""
    source = str(path)
    axiom: Word | None = None
    prob: dict[Production, float] = {}
    defaults: set[Production] = set()
    with open(path, encoding="utf-8") as handle:
        for number, raw in enumerate(handle, start=1):
            text = raw.strip()
            if not text or text.startswith("#"):
                continue
            if text.startswith("axiom:"):
                if axiom is not None:
                    raise FormatError("more than one axiom line", source, number)
                axiom = parse_word(
                    text[len("axiom:") :].strip(), tokens, source=source, line=number
                )
                continue
            if text.startswith("rule:"):
                production, value, is_default = _parse_rule(
                    text[len("rule:") :], tokens, source, number
                )
                if production in prob:
                    raise FormatError(f"duplicate rule {production}", source, number)
                prob[production] = value
                if is_default:
                    defaults.add(production)
                continue
            raise FormatError(f"unrecognized line {text!r}", source, number)
    if axiom is None:
        raise FormatError("missing axiom line", source)
    alphabet = set(axiom) | {p.predecessor for p in prob}
    for production in prob:
        alphabet.update(production.successor)
    base = Partial0LSystem(
        alphabet=frozenset(alphabet), axiom=axiom, productions=tuple(prob)
    )
    try:
        return S0LSystem(base=base, prob=prob, defaults=frozenset(defaults))
    except ValueError as exc:
        raise FormatError(str(exc), source) from exc


def serialize_system(g: S0LSystem) -> str:
    """Canonical text for a stochastic system; reparses to the same text.

    Words are space-joined exactly when some alphabet symbol has more than
    one character, in which case the file must be parsed in token mode.
    """
    tokens = _needs_tokens(g.base)
    lines = [f"axiom: {serialize_word(g.base.axiom, tokens)}"]
    for production in g.base.productions:
        line = (
            f"rule: {production.predecessor} -> "
            f"{serialize_word(production.successor, tokens)}"
            f" p={format_real(g.prob[production])}"
        )
        if production in g.defaults:
            line += f" {DEFAULT_MARKER}"
        lines.append(line)
    return "\n".join(lines) + "\n"


def serialize_partial_system(system: Partial0LSystem) -> str:
    """Text form of a probability-free system (the free system, typically)."""
    tokens = _needs_tokens(system)
    lines = [
        f"alphabet: {' '.join(sorted(system.alphabet))}",
        f"axiom: {serialize_word(system.axiom, tokens)}",
    ]
    for production in system.productions:
        lines.append(
            f"rule: {production.predecessor} -> "
            f"{serialize_word(production.successor, tokens)}"
        )
    return "\n".join(lines) + "\n"


def serialize_derivation(d: Derivation) -> str:
    """One line per step; parts separated by ' | ' in position order."""
    tokens = any(
        len(symbol) != 1 for step in d.steps for symbol in step.source + step.target
    )
    lines = []
    for number, step in enumerate(d.steps, start=1):
        parts = " | ".join(serialize_word(part, tokens) for part in step.parts)
        lines.append(f"step {number}: {parts}")
    return "\n".join(lines) + "\n"


def file_digest(path: str) -> str:
    with open(path, "rb") as handle:
        return hashlib.sha256(handle.read()).hexdigest()


def _needs_tokens(system: Partial0LSystem) -> bool:
    return any(len(symbol) != 1 for symbol in system.alphabet)


def _parse_rule(
    text: str, tokens: bool, source: str, line: int
) -> tuple[Production, float, bool]:
    work = text.strip()
    is_default = False
    if work.endswith(DEFAULT_MARKER):
        is_default = True
        work = work[: -len(DEFAULT_MARKER)].rstrip()
    head, sep, prob_text = work.rpartition(" p=")
    if not sep:
        raise FormatError("rule line must end with ' p=<probability>'", source, line)
    pred_text, arrow, succ_text = head.partition("->")
    if not arrow:
        raise FormatError("rule line must contain '->'", source, line)
    predecessor = pred_text.strip()
    if not predecessor or any(c.isspace() for c in predecessor):
        raise FormatError(f"bad predecessor {predecessor!r}", source, line)
    if not tokens and len(predecessor) != 1:
        raise FormatError(
            f"multi-character predecessor {predecessor!r}; use token mode",
            source,
            line,
        )
    successor = parse_word(succ_text.strip(), tokens, source=source, line=line)
    return Production(predecessor, successor), _parse_probability(
        prob_text.strip(), source, line
    ), is_default


def _parse_probability(text: str, source: str, line: int) -> float:
    try:
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError):
        pass
    try:
        return float(text)
    except ValueError:
        raise FormatError(f"bad probability {text!r}", source, line) from None
