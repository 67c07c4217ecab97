"""Activation dynamics: simulated clock, base-level decay, spreading,
within-sentence inhibition, retrieval latency, and count-based learning.

One :class:`InstanceMemory` owns all mutable statistics for a single model
instance: encounter histories per syntactic category (driving base-level
activation), per-word category counts (driving spreading activation),
per-state null-choice counts, and the per-sentence discard logs that feed
inhibition.  Instances never share mutable state, so any number of them
may run in parallel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .categories import Category
from .grammar import Grammar

NOT_NULL = "not-null"

# Fixed architecture-level parameters, shared by every instance.
DECAY = 0.5
LATENCY_EXPONENT = 1.0
MAX_SPREAD = 1.5
GIVE_UP_AFTER = 2000


class MemoryInternalError(RuntimeError):
    """A violated timing invariant, e.g. reusing a chunk before the clock advanced."""


@dataclass(frozen=True, slots=True)
class InstanceParams:
    """All hyperparameters for one model instance.

    ``decay``, ``latency_exponent``, ``max_spread`` and ``give_up_after``
    are fixed across instances; ``latency_factor`` and ``noise_sd`` are
    sampled per instance.
    """

    latency_factor: float
    noise_sd: float
    seed: int = 0
    decay: float = DECAY
    latency_exponent: float = LATENCY_EXPONENT
    max_spread: float = MAX_SPREAD
    give_up_after: int = GIVE_UP_AFTER

    def __post_init__(self):
        if self.latency_factor <= 0:
            raise ValueError("latency factor must be positive")
        if self.noise_sd < 0:
            raise ValueError("noise sd must be non-negative")


class Clock:
    """Simulated time in seconds; advances only by retrieval latencies.

    Starts at 1 s so the first encounters always lie strictly in the past
    of later retrievals.
    """

    __slots__ = ("now",)

    def __init__(self, start: float = 1.0):
        self.now = start

    def advance(self, dt: float) -> None:
        if dt < 0:
            raise MemoryInternalError(f"clock may not move backwards (dt={dt})")
        self.now += dt


class EncounterLog:
    """Append-only log of encounter timestamps with a cached array view."""

    __slots__ = ("_buf", "_n")

    def __init__(self):
        self._buf = np.empty(8, dtype=np.float64)
        self._n = 0

    def add(self, t: float) -> None:
        if self._n == len(self._buf):
            grown = np.empty(2 * len(self._buf), dtype=np.float64)
            grown[: self._n] = self._buf
            self._buf = grown
        self._buf[self._n] = t
        self._n += 1

    def __len__(self) -> int:
        return self._n

    @property
    def times(self) -> np.ndarray:
        return self._buf[: self._n]


def base_level_activation(times: np.ndarray, now: float, d: float) -> float:
    """log of the summed power-law decayed trace of past encounters.

    Zero encounters give exactly 0; an encounter at or after ``now`` is an
    internal error (the clock must advance before a chunk is reused).
    """
    if len(times) == 0:
        return 0.0
    elapsed = now - np.asarray(times)
    if elapsed.min() <= 0.0:
        raise MemoryInternalError("encounter with zero or negative elapsed time")
    return float(np.log(np.sum(elapsed ** -d)))


def lexical_activation(prior: float, m: float) -> float:
    """Context-independent activation a word spreads to one candidate."""
    return m * prior


def inhibition(discard_times: list[float], now: float, d: float) -> float:
    """Floor-at-zero log of the summed decayed trace of within-sentence discards.

    No discards give exactly 0.  Discards logged at the current instant
    (elapsed time zero) are not yet in the past and contribute nothing.
    The floor keeps inhibition a pure penalty: a lone long-past discard
    would otherwise push the log-sum negative and *raise* activation,
    letting a discarded candidate outrank an untouched one.
    """
    total = 0.0
    count = 0
    for t in discard_times:
        elapsed = now - t
        if elapsed > 0.0:
            total += elapsed ** -d
            count += 1
    if count == 0:
        return 0.0
    return max(0.0, math.log(total))


def total_activation(b: float, l: float, i: float, eps: float) -> float:
    return b + l - i + eps


def retrieval_latency(activations: list[float], f_factor: float, f_exp: float) -> float:
    """Total time for the chunk retrievals performed while processing a word."""
    return sum(f_factor * math.exp(-f_exp * a) for a in activations)


@dataclass(slots=True)
class ActivationParts:
    """Component breakdown of one scored candidate, for traces and tests."""

    base: float
    spread: float
    inhibition: float
    noise: float

    @property
    def total(self) -> float:
        return total_activation(self.base, self.spread, self.inhibition, self.noise)


@dataclass(slots=True)
class InstanceMemory:
    """All per-instance mutable memory state."""

    grammar: Grammar
    params: InstanceParams
    rng: np.random.Generator = None
    clock: Clock = field(default_factory=Clock)
    chunk_stats: dict = field(default_factory=dict)
    lexical_counts: dict = field(default_factory=dict)
    null_counts: dict = field(default_factory=dict)
    _discards: dict = field(default_factory=dict)
    _null_discards: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.rng is None:
            self.rng = np.random.default_rng(self.params.seed)
        for word, chunk in self.grammar.chunks.items():
            self.lexical_counts[word] = {cat: count for cat, count in chunk.candidates}

    # -- priors -----------------------------------------------------------

    def lexical_priors(self, word: str) -> list[tuple[Category, float]]:
        """Candidate categories with P(category | word) from current counts."""
        counts = self.lexical_counts[word]
        total = sum(counts.values())
        if total <= 0.0:
            p = 1.0 / len(counts)
            return [(cat, p) for cat in counts]
        return [(cat, count / total) for cat, count in counts.items()]

    def null_choice_priors(self, state: Category, options: list[str]) -> list[float]:
        counts = [self.null_counts.get((state, name), 0.0) for name in options]
        total = sum(counts)
        if total <= 0.0:
            return [1.0 / len(options)] * len(options)
        return [c / total for c in counts]

    # -- activation -------------------------------------------------------

    def base_level(self, cat: Category) -> float:
        log = self.chunk_stats.get(cat)
        if log is None or len(log) == 0:
            return 0.0
        return base_level_activation(log.times, self.clock.now, self.params.decay)

    def score_candidate(self, word_index: int, cat: Category, prior: float,
                        give_up: bool) -> ActivationParts:
        """Score one lexical candidate for retrieval (one fresh noise draw)."""
        inh = inhibition(self._discards.get((word_index, cat), ()),
                         self.clock.now, self.params.decay)
        eps = float(self.rng.normal(0.0, self.params.noise_sd))
        if give_up:
            return ActivationParts(base=0.0, spread=0.0, inhibition=inh, noise=eps)
        return ActivationParts(
            base=self.base_level(cat),
            spread=lexical_activation(prior, self.params.max_spread),
            inhibition=inh,
            noise=eps,
        )

    def score_null_choice(self, anchor: int, prior: float, choice: str,
                          give_up: bool) -> ActivationParts:
        """Score one null-or-not option; no base-level term by design."""
        inh = inhibition(self._null_discards.get((anchor, choice), ()),
                         self.clock.now, self.params.decay)
        eps = float(self.rng.normal(0.0, self.params.noise_sd))
        spread = 0.0 if give_up else lexical_activation(prior, self.params.max_spread)
        return ActivationParts(base=0.0, spread=spread, inhibition=inh, noise=eps)

    # -- discard log (inhibition source) ------------------------------------

    def start_sentence(self) -> None:
        self._discards.clear()
        self._null_discards.clear()

    def note_discard(self, word_index: int, cat: Category, t: float) -> None:
        self._discards.setdefault((word_index, cat), []).append(t)

    def note_null_discard(self, anchor: int, choice: str, t: float) -> None:
        self._null_discards.setdefault((anchor, choice), []).append(t)

    # -- learning -----------------------------------------------------------

    def learn_from_parse(
        self,
        final_tokens: list[tuple[str, Category, float]],
        final_null_choices: list[tuple[Category, str]],
    ) -> None:
        """Count updates from a completed sentence.

        ``final_tokens`` holds the surviving (word, category, completion
        time) assignment for overt tokens; each contributes one encounter
        timestamp and one lexical count.  ``final_null_choices`` holds the
        surviving (licensing state, choice) decisions, including explicit
        not-null choices.  The per-sentence discard logs are cleared.
        """
        for word, cat, t in final_tokens:
            log = self.chunk_stats.get(cat)
            if log is None:
                log = self.chunk_stats[cat] = EncounterLog()
            log.add(t)
            self.lexical_counts[word][cat] += 1.0
        for state, choice in final_null_choices:
            key = (state, choice)
            self.null_counts[key] = self.null_counts.get(key, 0.0) + 1.0
        self.start_sentence()
