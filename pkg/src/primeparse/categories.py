"""Category algebra: slashed categories and the combination machinery.

A category is either an atomic symbol (``DP``, ``VoiceP``, ...) or a
directional functor ``result/argument`` (seeks its argument to the right)
or ``result\\argument`` (seeks it to the left).  Categories combine through
six composition rules, tried in a fixed order, plus a single type-raising
rule that lifts a subject ``DP`` so it can compose with its predicate
before the predicate is saturated.

Everything here is pure and immutable; categories are hashable and safe
to share across parser instances.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

FORWARD = "/"
BACKWARD = "\\"


class CategoryError(ValueError):
    """Raised for malformed category text or undeclared atoms."""


@dataclass(frozen=True, slots=True)
class Category:
    """An atomic symbol or a directional functor.

    Atoms have ``atom`` set and the functor fields ``None``; functors have
    ``atom`` ``None`` and carry ``result``, ``slash`` and ``argument``.
    Use :meth:`atomic` and :meth:`functor` instead of the raw constructor.
    """

    atom: Optional[str] = None
    result: Optional["Category"] = None
    slash: Optional[str] = None
    argument: Optional["Category"] = None

    @classmethod
    def atomic(cls, name: str) -> "Category":
        if not name or not name.replace("-", "").isalnum():
            raise CategoryError(f"invalid atom name: {name!r}")
        return cls(atom=name)

    @classmethod
    def functor(cls, result: "Category", slash: str, argument: "Category") -> "Category":
        if slash not in (FORWARD, BACKWARD):
            raise CategoryError(f"invalid slash: {slash!r}")
        return cls(atom=None, result=result, slash=slash, argument=argument)

    @property
    def is_atom(self) -> bool:
        return self.atom is not None

    def atoms(self) -> Iterator[str]:
        """Yield every atomic symbol occurring in this category."""
        if self.is_atom:
            yield self.atom
        else:
            yield from self.result.atoms()
            yield from self.argument.atoms()

    def __str__(self) -> str:
        if self.is_atom:
            return self.atom
        return f"{self._wrap(self.result)}{self.slash}{self._wrap(self.argument)}"

    @staticmethod
    def _wrap(part: "Category") -> str:
        text = str(part)
        return text if part.is_atom else f"({text})"

    def __repr__(self) -> str:
        return f"Category({str(self)!r})"


def parse_category(text: str) -> Category:
    """Parse the textual form, e.g. ``(TP\\DP)/DP``.

    Slashes are left-associative: ``A/B/C`` reads as ``(A/B)/C``.
    """
    tokens = _lex(text)
    cat, pos = _parse_expr(tokens, 0)
    if pos != len(tokens):
        raise CategoryError(f"trailing input in category: {text!r}")
    return cat


def _lex(text: str) -> list[str]:
    tokens: list[str] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "()/\\":
            tokens.append(ch)
            i += 1
        else:
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "-"):
                j += 1
            if j == i:
                raise CategoryError(f"unexpected character {ch!r} in {text!r}")
            tokens.append(text[i:j])
            i = j
    if not tokens:
        raise CategoryError("empty category")
    return tokens


def _parse_expr(tokens: list[str], pos: int) -> tuple[Category, int]:
    left, pos = _parse_part(tokens, pos)
    while pos < len(tokens) and tokens[pos] in (FORWARD, BACKWARD):
        slash = tokens[pos]
        right, pos = _parse_part(tokens, pos + 1)
        left = Category.functor(left, slash, right)
    return left, pos


def _parse_part(tokens: list[str], pos: int) -> tuple[Category, int]:
    if pos >= len(tokens):
        raise CategoryError("unexpected end of category")
    tok = tokens[pos]
    if tok == "(":
        inner, pos = _parse_expr(tokens, pos + 1)
        if pos >= len(tokens) or tokens[pos] != ")":
            raise CategoryError("unbalanced parentheses in category")
        return inner, pos + 1
    if tok in (FORWARD, BACKWARD, ")"):
        raise CategoryError(f"unexpected {tok!r} in category")
    return Category.atomic(tok), pos + 1


# The six composition rules, in the order the parser tries them.  Each
# takes (state, tag) and returns the composed category or None.

def _forward_composition(left: Category, right: Category) -> Optional[Category]:
    # X/Y + Y -> X
    if not left.is_atom and left.slash == FORWARD and left.argument == right:
        return left.result
    return None


def _backward_composition(left: Category, right: Category) -> Optional[Category]:
    # Y + X\Y -> X
    if not right.is_atom and right.slash == BACKWARD and right.argument == left:
        return right.result
    return None


def _forward_harmonic(left: Category, right: Category) -> Optional[Category]:
    # X/Y + Y/Z -> X/Z
    if (not left.is_atom and left.slash == FORWARD
            and not right.is_atom and right.slash == FORWARD
            and left.argument == right.result):
        return Category.functor(left.result, FORWARD, right.argument)
    return None


def _backward_harmonic(left: Category, right: Category) -> Optional[Category]:
    # Y\Z + X\Y -> X\Z
    if (not left.is_atom and left.slash == BACKWARD
            and not right.is_atom and right.slash == BACKWARD
            and right.argument == left.result):
        return Category.functor(right.result, BACKWARD, left.argument)
    return None


def _forward_crossed(left: Category, right: Category) -> Optional[Category]:
    # X/Y + Y\Z -> X\Z
    if (not left.is_atom and left.slash == FORWARD
            and not right.is_atom and right.slash == BACKWARD
            and left.argument == right.result):
        return Category.functor(left.result, BACKWARD, right.argument)
    return None


def _backward_crossed(left: Category, right: Category) -> Optional[Category]:
    # Y/Z + X\Y -> X/Z
    if (not left.is_atom and left.slash == FORWARD
            and not right.is_atom and right.slash == BACKWARD
            and right.argument == left.result):
        return Category.functor(right.result, FORWARD, left.argument)
    return None


COMBINATION_RULES: tuple[tuple[str, object], ...] = (
    ("forward composition", _forward_composition),
    ("backward composition", _backward_composition),
    ("forward harmonic composition", _forward_harmonic),
    ("backward harmonic composition", _backward_harmonic),
    ("forward crossed composition", _forward_crossed),
    ("backward crossed composition", _backward_crossed),
)

# The single type-raising rule: DP -> TP/(TP\DP).
_RAISABLE = Category.atomic("DP")
_RAISED = Category.functor(
    Category.atomic("TP"),
    FORWARD,
    Category.functor(Category.atomic("TP"), BACKWARD, Category.atomic("DP")),
)


def compose(left: Category, right: Category) -> Optional[tuple[Category, str]]:
    """Combine two categories with the first applicable rule.

    Returns ``(composed, rule_name)`` or ``None`` when no rule applies.
    """
    for name, rule in COMBINATION_RULES:
        out = rule(left, right)
        if out is not None:
            return out, name
    return None


def type_raise(cat: Category) -> Optional[Category]:
    """Raise ``DP`` to ``TP/(TP\\DP)``; any other input raises nothing."""
    if cat == _RAISABLE:
        return _RAISED
    return None


@dataclass(frozen=True, slots=True)
class CompositionTrace:
    """How a combination succeeded: the rule used and any raising applied.

    ``raised`` is ``None`` for plain composition, or ``"left"``/``"right"``
    naming the operand that was type-raised first.
    """

    rule: str
    raised: Optional[str] = None


def compose_with_raising(left: Category, right: Category) -> Optional[tuple[Category, CompositionTrace]]:
    """Combine two categories, falling back on type-raising.

    Plain composition is attempted first; on failure the left operand and
    then the right operand is raised (at most one per attempt) and
    composition retried.  Returns the composed category with a trace, or
    ``None`` if every attempt fails.
    """
    plain = compose(left, right)
    if plain is not None:
        return plain[0], CompositionTrace(rule=plain[1])
    raised_left = type_raise(left)
    if raised_left is not None:
        out = compose(raised_left, right)
        if out is not None:
            return out[0], CompositionTrace(rule=out[1], raised="left")
    raised_right = type_raise(right)
    if raised_right is not None:
        out = compose(left, raised_right)
        if out is not None:
            return out[0], CompositionTrace(rule=out[1], raised="right")
    return None
