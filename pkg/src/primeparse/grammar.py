"""Declarative memory content: lexical chunks, null elements, grammar files.

A grammar bundles an atom inventory, a closed lexicon mapping each word to
its candidate categories (with optional initial counts from which prior
probabilities are derived), and an inventory of null elements keyed by the
exact parse states that license them.

Grammars are loaded from a line-oriented text format::

    GRAMMAR participial-phase
    ATOMS DP NP TP CP PP VoiceP ProgP AdjP eos

    LEXICON
    the   DP/NP
    cat   NP:96 | NP/CP:2.5 | NP/VoiceP:1.1 | NP/(VoiceP/ProgP):0.5

    NULLS
    null-wh-object   CP/DP   after: DP/CP

A loaded grammar is immutable and shared read-only across model
instances; per-instance counts live in :mod:`primeparse.memory`.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional

from .categories import Category, CategoryError, compose_with_raising, parse_category

WHIZ_DELETION = "whiz-deletion"
PARTICIPIAL_PHASE = "participial-phase"

# Null categories posited only by the whiz-deletion analysis of subject
# relative clauses; their presence/absence is a theory invariant.
SUBJECT_RC_NULL_CATEGORIES = (
    parse_category("CP/(TP\\DP)"),        # silent relativizer
    parse_category("(TP\\DP)/VoiceP"),     # silent finite auxiliary
    parse_category("(TP\\DP)/(VoiceP/ProgP)"),  # silent progressive auxiliary
)

# Noun categories that attach reduced relatives directly, posited only by
# the participial-phase analysis.
PARTICIPIAL_NOUN_CATEGORIES = (
    parse_category("NP/VoiceP"),
    parse_category("NP/(VoiceP/ProgP)"),
)


class GrammarError(ValueError):
    """Raised for malformed or invariant-violating grammar files."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UnknownWordError(KeyError):
    """Raised when a token has no lexical chunk (the lexicon is closed)."""

    def __init__(self, word: str):
        self.word = word
        super().__init__(f"unknown word: {word!r}")


@dataclass(frozen=True, slots=True)
class LexicalChunk:
    """A word with its candidate categories and initial counts."""

    word: str
    candidates: tuple[tuple[Category, float], ...]

    def categories(self) -> tuple[Category, ...]:
        return tuple(cat for cat, _ in self.candidates)

    def priors(self) -> tuple[tuple[Category, float], ...]:
        """Candidate categories with ``P(category | word)`` from counts.

        All-zero counts yield a uniform distribution.
        """
        total = sum(count for _, count in self.candidates)
        if total <= 0.0:
            p = 1.0 / len(self.candidates)
            return tuple((cat, p) for cat, _ in self.candidates)
        return tuple((cat, count / total) for cat, count in self.candidates)


@dataclass(frozen=True, slots=True)
class NullElementSpec:
    """A covert token: its category and the parse states that license it."""

    name: str
    category: Category
    licensing: tuple[Category, ...]


@dataclass(frozen=True, slots=True)
class Grammar:
    name: str
    atoms: tuple[str, ...]
    chunks: dict[str, LexicalChunk]
    nulls: tuple[NullElementSpec, ...]

    def candidates_for(self, word: str) -> tuple[tuple[Category, float], ...]:
        """Candidate categories for ``word`` with their prior probabilities."""
        chunk = self.chunks.get(word)
        if chunk is None:
            raise UnknownWordError(word)
        return chunk.priors()

    def chunk_for(self, word: str) -> LexicalChunk:
        chunk = self.chunks.get(word)
        if chunk is None:
            raise UnknownWordError(word)
        return chunk

    def licensed_nulls(self, state: Category) -> tuple[NullElementSpec, ...]:
        """Null elements whose licensing set contains exactly this state."""
        return tuple(spec for spec in self.nulls if state in spec.licensing)

    def candidate_count(self, word: str) -> int:
        return len(self.chunk_for(word).candidates)

    def to_text(self) -> str:
        """Serialize back to the grammar text format."""
        lines = [f"GRAMMAR {self.name}", "ATOMS " + " ".join(self.atoms), "", "LEXICON"]
        width = max(len(w) for w in self.chunks) + 2
        for word, chunk in self.chunks.items():
            entry = " | ".join(
                f"{cat}:{count:g}" if count else str(cat)
                for cat, count in chunk.candidates
            )
            lines.append(f"{word:<{width}}{entry}")
        if self.nulls:
            lines.extend(["", "NULLS"])
            for spec in self.nulls:
                states = ", ".join(str(s) for s in spec.licensing)
                lines.append(f"{spec.name}  {spec.category}  after: {states}")
        return "\n".join(lines) + "\n"


def load_grammar(path: str | Path) -> Grammar:
    """Load and validate a grammar file."""
    text = Path(path).read_text(encoding="utf-8")
    return loads_grammar(text)


def loads_grammar(text: str) -> Grammar:
    """Parse a grammar from text; see module docstring for the format."""
    name = ""
    atoms: list[str] = []
    chunks: dict[str, LexicalChunk] = {}
    nulls: list[NullElementSpec] = []
    section = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        if head == "GRAMMAR":
            name = rest.strip()
            if not name:
                raise GrammarError("GRAMMAR requires a name", lineno)
            continue
        if head == "ATOMS":
            atoms.extend(rest.split())
            continue
        if line in ("LEXICON", "NULLS"):
            section = line
            continue
        if section == "LEXICON":
            word, chunk = _parse_lexicon_line(line, atoms, lineno)
            if word in chunks:
                raise GrammarError(f"duplicate lexicon entry for {word!r}", lineno)
            chunks[word] = chunk
        elif section == "NULLS":
            nulls.append(_parse_null_line(line, atoms, lineno))
        else:
            raise GrammarError(f"content outside any section: {line!r}", lineno)

    if not name:
        raise GrammarError("missing GRAMMAR header")
    if not atoms:
        raise GrammarError("missing ATOMS declaration")
    if not chunks:
        raise GrammarError("empty LEXICON")

    grammar = Grammar(name=name, atoms=tuple(atoms), chunks=chunks, nulls=tuple(nulls))
    _validate(grammar)
    return grammar


def _parse_category_checked(text: str, atoms: Iterable[str], lineno: int) -> Category:
    try:
        cat = parse_category(text)
    except CategoryError as exc:
        raise GrammarError(str(exc), lineno) from exc
    atom_set = set(atoms)
    for atom in cat.atoms():
        if atom not in atom_set:
            raise GrammarError(f"undeclared atom {atom!r} in {text!r}", lineno)
    return cat


def _parse_lexicon_line(line: str, atoms: list[str], lineno: int) -> tuple[str, LexicalChunk]:
    parts = line.split(None, 1)
    if len(parts) != 2:
        raise GrammarError(f"lexicon entry needs a word and categories: {line!r}", lineno)
    word, entry = parts
    candidates: list[tuple[Category, float]] = []
    for item in entry.split("|"):
        item = item.strip()
        cat_text, _, count_text = item.rpartition(":")
        if cat_text:
            try:
                count = float(count_text)
            except ValueError:
                raise GrammarError(f"bad count in {item!r}", lineno) from None
        else:
            cat_text, count = item, 0.0
        if count < 0:
            raise GrammarError(f"negative count in {item!r}", lineno)
        candidates.append((_parse_category_checked(cat_text, atoms, lineno), count))
    if not candidates:
        raise GrammarError(f"word {word!r} has no candidate categories", lineno)
    seen = set()
    for cat, _ in candidates:
        if cat in seen:
            raise GrammarError(f"duplicate candidate {cat} for {word!r}", lineno)
        seen.add(cat)
    return word, LexicalChunk(word=word, candidates=tuple(candidates))


def _parse_null_line(line: str, atoms: list[str], lineno: int) -> NullElementSpec:
    before, sep, states_text = line.partition("after:")
    if not sep:
        raise GrammarError(f"null entry needs an 'after:' licensing list: {line!r}", lineno)
    parts = before.split()
    if len(parts) != 2:
        raise GrammarError(f"null entry needs a name and a category: {line!r}", lineno)
    name, cat_text = parts
    category = _parse_category_checked(cat_text, atoms, lineno)
    licensing = tuple(
        _parse_category_checked(state.strip(), atoms, lineno)
        for state in states_text.split(",")
        if state.strip()
    )
    if not licensing:
        raise GrammarError(f"null element {name!r} has an empty licensing set", lineno)
    return NullElementSpec(name=name, category=category, licensing=licensing)


def _validate(grammar: Grammar) -> None:
    names = set()
    for spec in grammar.nulls:
        if spec.name in names:
            raise GrammarError(f"duplicate null element {spec.name!r}")
        names.add(spec.name)
        for state in spec.licensing:
            if compose_with_raising(state, spec.category) is None:
                raise GrammarError(
                    f"null element {spec.name!r} cannot integrate with its "
                    f"licensing state {state}"
                )

    lexical_categories = {
        cat for chunk in grammar.chunks.values() for cat in chunk.categories()
    }
    null_categories = {spec.category for spec in grammar.nulls}

    if grammar.name == WHIZ_DELETION:
        for cat in SUBJECT_RC_NULL_CATEGORIES:
            if cat not in null_categories:
                raise GrammarError(
                    f"whiz-deletion grammar must declare a null element {cat}"
                )
        for cat in PARTICIPIAL_NOUN_CATEGORIES:
            if cat in lexical_categories:
                raise GrammarError(
                    f"whiz-deletion grammar must not assign the participial "
                    f"noun category {cat}"
                )
    elif grammar.name == PARTICIPIAL_PHASE:
        for cat in SUBJECT_RC_NULL_CATEGORIES:
            if cat in null_categories:
                raise GrammarError(
                    f"participial-phase grammar must not declare a null "
                    f"element {cat}"
                )
        for cat in PARTICIPIAL_NOUN_CATEGORIES:
            if cat not in lexical_categories:
                raise GrammarError(
                    f"participial-phase grammar must assign the noun "
                    f"category {cat}"
                )


def bundled_grammar_path(name: str) -> Path:
    """Filesystem path of a grammar shipped with the package."""
    filename = name.replace("-", "_") + ".grammar"
    ref = resources.files("primeparse") / "grammars" / filename
    with resources.as_file(ref) as path:
        return Path(path)


def load_bundled(name: str) -> Grammar:
    """Load one of the two bundled theory grammars by name."""
    return load_grammar(bundled_grammar_path(name))
