"""The serial parsing loop: retrieve, integrate, reanalyze, predict nulls.

Tokens are processed strictly left to right against a single composed
parse state.  For each overt token the lexical candidates are scored by
activation and tried in descending order; the first that composes with
the state is committed.  When none does, the parser backtracks: it picks
an earlier index (always the start, or sampled by lexical uncertainty),
logs every category retrieved in the abandoned span as discarded (feeding
inhibition), restores the saved state, and reprocesses.  After every
successful integration the parser asks whether a covert token follows,
scoring the licensed null elements against an explicit not-null option.

After a configurable number of backtracks the parser gives up on prior
knowledge: activations drop their base-level and spreading terms so that
inhibition and noise alone decide, which guarantees the loop escapes
garden paths eventually.  A hard cap well above that bound turns
non-derivable input into an error instead of an endless loop.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .categories import Category, compose_with_raising
from .grammar import Grammar
from .memory import NOT_NULL, ActivationParts, InstanceMemory, retrieval_latency

BACK_TO_START = "back-to-start"
UNCERTAINTY_WEIGHTED = "uncertainty-weighted"
STRATEGIES = (BACK_TO_START, UNCERTAINTY_WEIGHTED)

HARD_CAP_FACTOR = 10
_MAX_NULL_CHAIN = 16


class ParseAbortError(RuntimeError):
    """The hard iteration cap was hit: the grammar cannot derive the input."""


@dataclass(slots=True)
class NullInsertion:
    """A covert token committed into the sequence after an overt token."""

    anchor: int
    name: str
    category: Category
    licensing_state: Category


@dataclass(slots=True)
class Decision:
    """One null-or-not decision, anchored to the overt token it followed."""

    anchor: int
    state: Category
    choice: str


@dataclass(slots=True)
class ReanalysisEvent:
    trigger_index: int
    backtrack_index: int
    discarded: list[tuple[int, Category]]


@dataclass(slots=True)
class Retrieval:
    """Trace record for one chunk retrieval (lexical or null decision)."""

    word_index: int
    label: str
    parts: ActivationParts
    latency: float
    committed: bool


@dataclass(slots=True)
class _Slot:
    surface: str
    committed: Optional[Category] = None
    commit_time: Optional[float] = None
    tried: list[Category] = field(default_factory=list)


@dataclass(slots=True)
class ParseResult:
    """Completed assignment of one token sequence."""

    words: list[str]
    categories: list[Category]
    commit_times: list[float]
    nulls: list[NullInsertion]
    decisions: list[Decision]
    final_state: Category
    reanalyses: int
    gave_up: bool
    sim_time: float
    events: list[ReanalysisEvent]
    retrievals: list[Retrieval]

    def final_tokens(self) -> list[tuple[str, Category, float]]:
        return list(zip(self.words, self.categories, self.commit_times))

    def final_null_choices(self) -> list[tuple[Category, str]]:
        return [(d.state, d.choice) for d in self.decisions]

    def token_sequence(self) -> list[tuple[str, Category, bool]]:
        """Overt and null tokens in surface order as (label, category, is_null)."""
        by_anchor: dict[int, list[NullInsertion]] = {}
        for ins in self.nulls:
            by_anchor.setdefault(ins.anchor, []).append(ins)
        out: list[tuple[str, Category, bool]] = []
        for i, (word, cat) in enumerate(zip(self.words, self.categories)):
            out.append((word, cat, False))
            for ins in by_anchor.get(i, ()):
                out.append((ins.name, ins.category, True))
        return out


class Parser:
    """A single-instance, single-threaded incremental parser."""

    def __init__(self, memory: InstanceMemory, strategy: str = BACK_TO_START,
                 keep_trace: bool = False):
        if strategy not in STRATEGIES:
            raise ValueError(f"unknown reanalysis strategy: {strategy!r}")
        self.memory = memory
        self.grammar: Grammar = memory.grammar
        self.strategy = strategy
        self.keep_trace = keep_trace
        self._trace: list[Retrieval] = []

    # -- public entry points ------------------------------------------------

    def parse_sentence(self, words: list[str],
                       allowed_final: Optional[frozenset[Category]] = None) -> ParseResult:
        """Assign a category to every token, backtracking as needed."""
        return self._run(list(words), allowed_final)

    def parse_prefix(self, words: list[str],
                     allowed_final: frozenset[Category]) -> ParseResult:
        """Parse a sentence prefix constrained to end in an allowed state.

        Ending anywhere else triggers a reanalysis exactly like an
        integration failure.
        """
        if not allowed_final:
            raise ValueError("parse_prefix requires a non-empty allowed set")
        return self._run(list(words), frozenset(allowed_final))

    def select_reanalysis_index(self, words: list[str], trigger: int) -> int:
        """Choose the index to backtrack to, per the configured strategy."""
        if trigger < 1:
            raise ValueError("reanalysis needs at least one committed token")
        if self.strategy == BACK_TO_START:
            return 0
        weights = np.array(
            [self.grammar.candidate_count(w) for w in words[:trigger]], dtype=float)
        return int(self.memory.rng.choice(trigger, p=weights / weights.sum()))

    # -- main loop ------------------------------------------------------------

    def _run(self, words: list[str], allowed_final: Optional[frozenset[Category]]) -> ParseResult:
        if not words:
            raise ValueError("cannot parse an empty token sequence")
        for w in words:
            self.grammar.chunk_for(w)  # closed lexicon: fail before any state changes

        mem = self.memory
        params = mem.params
        clock = mem.clock
        mem.start_sentence()

        n = len(words)
        hard_cap = HARD_CAP_FACTOR * params.give_up_after
        slots = [_Slot(w) for w in words]
        snapshots: list[Optional[tuple[Optional[Category], float]]] = [None] * n
        nulls: list[NullInsertion] = []
        decisions: list[Decision] = []
        events: list[ReanalysisEvent] = []
        retrievals: list[Retrieval] = []
        self._trace = retrievals
        state: Optional[Category] = None
        reanalyses = 0
        gave_up = False
        start_time = clock.now
        i = 0

        while True:
            while i < n:
                give_up = reanalyses >= params.give_up_after
                gave_up = gave_up or give_up
                snapshots[i] = (state, clock.now)
                word = words[i]
                slot = slots[i]
                slot.tried = []
                latencies: list[float] = []

                scored = [
                    (mem.score_candidate(i, cat, prior, give_up), cat)
                    for cat, prior in mem.lexical_priors(word)
                ]
                scored.sort(key=lambda item: -item[0].total)

                committed = None
                new_state = None
                for parts, cat in scored:
                    latencies.append(parts.total)
                    slot.tried.append(cat)
                    if state is None:
                        committed, new_state = cat, cat
                    else:
                        out = compose_with_raising(state, cat)
                        if out is not None:
                            committed, new_state = cat, out[0]
                    if self.keep_trace:
                        retrievals.append(Retrieval(
                            word_index=i, label=str(cat), parts=parts,
                            latency=retrieval_latency(
                                [parts.total], params.latency_factor,
                                params.latency_exponent),
                            committed=committed is cat))
                    if committed is not None:
                        break

                if committed is None:
                    reanalyses += 1
                    if reanalyses > hard_cap:
                        raise ParseAbortError(
                            f"no parse within {hard_cap} reanalyses at token "
                            f"{i} ({word!r}); the grammar cannot derive this input")
                    t_discard = clock.now
                    clock.advance(retrieval_latency(
                        latencies, params.latency_factor, params.latency_exponent))
                    z = self.select_reanalysis_index(words, i)
                    discarded = self._discard_span(slots, nulls, decisions, z, i, t_discard)
                    events.append(ReanalysisEvent(i, z, discarded))
                    state = snapshots[z][0]
                    i = z
                    continue

                slot.committed = committed
                state = new_state
                state, inserted = self._null_phase(state, i, give_up, latencies, decisions)
                nulls.extend(inserted)
                clock.advance(retrieval_latency(
                    latencies, params.latency_factor, params.latency_exponent))
                slot.commit_time = clock.now
                i += 1

            if allowed_final is None or state in allowed_final:
                break

            # Final state not allowed: backtrack exactly as on failure.
            reanalyses += 1
            if reanalyses > hard_cap:
                raise ParseAbortError(
                    f"no allowed final state within {hard_cap} reanalyses; "
                    f"stuck at {state}")
            t_discard = clock.now
            z = self.select_reanalysis_index(words, n)
            discarded = self._discard_span(slots, nulls, decisions, z, n - 1, t_discard)
            events.append(ReanalysisEvent(n, z, discarded))
            state = snapshots[z][0]
            i = z

        return ParseResult(
            words=words,
            categories=[slot.committed for slot in slots],
            commit_times=[slot.commit_time for slot in slots],
            nulls=nulls,
            decisions=decisions,
            final_state=state,
            reanalyses=reanalyses,
            gave_up=gave_up,
            sim_time=clock.now - start_time,
            events=events,
            retrievals=retrievals,
        )

    # -- pieces ---------------------------------------------------------------

    def _null_phase(self, state: Category, anchor: int, give_up: bool,
                    latencies: list[float], decisions: list[Decision],
                    ) -> tuple[Category, list[NullInsertion]]:
        """Run null-or-not decisions until not-null wins or nothing is licensed.

        Every decision costs one chunk retrieval, charged to the anchoring
        word.  Unlicensed states decide nothing and cost nothing.
        """
        mem = self.memory
        inserted: list[NullInsertion] = []
        while True:
            licensed = self.grammar.licensed_nulls(state)
            if not licensed:
                return state, inserted
            if len(inserted) > _MAX_NULL_CHAIN:
                raise ParseAbortError(
                    f"runaway null-element chain after {state}; "
                    f"check the grammar's licensing sets")
            options = [spec.name for spec in licensed] + [NOT_NULL]
            priors = mem.null_choice_priors(state, options)
            scored = [
                (mem.score_null_choice(anchor, prior, name, give_up), name)
                for name, prior in zip(options, priors)
            ]
            best = max(range(len(scored)), key=lambda k: scored[k][0].total)
            parts, choice = scored[best]
            latencies.append(parts.total)
            decisions.append(Decision(anchor=anchor, state=state, choice=choice))
            if self.keep_trace:
                self._trace.append(Retrieval(
                    word_index=anchor, label=f"null:{choice}", parts=parts,
                    latency=retrieval_latency(
                        [parts.total], mem.params.latency_factor,
                        mem.params.latency_exponent),
                    committed=True))
            if choice == NOT_NULL:
                return state, inserted
            spec = licensed[best]
            out = compose_with_raising(state, spec.category)
            if out is None:
                raise ParseAbortError(
                    f"licensed null {spec.name!r} failed to integrate with {state}")
            inserted.append(NullInsertion(
                anchor=anchor, name=spec.name, category=spec.category,
                licensing_state=state))
            state = out[0]

    def _discard_span(self, slots: list[_Slot], nulls: list[NullInsertion],
                      decisions: list[Decision], z: int, end: int,
                      t_discard: float) -> list[tuple[int, Category]]:
        """Discard every category retrieved for tokens z..end and the null
        tokens inserted in that span; restore bookkeeping for a fresh pass.

        Discards are stamped with the clock reading at the failure, which
        precedes the charge for the failed retrievals, so the next pass
        sees them strictly in the past.
        """
        mem = self.memory
        discarded: list[tuple[int, Category]] = []
        for j in range(z, end + 1):
            slot = slots[j]
            cats = list(dict.fromkeys(
                slot.tried + ([slot.committed] if slot.committed is not None else [])))
            for cat in cats:
                mem.note_discard(j, cat, t_discard)
                discarded.append((j, cat))
            slot.committed = None
            slot.commit_time = None
            slot.tried = []
        kept = [ins for ins in nulls if ins.anchor < z]
        for ins in nulls:
            if ins.anchor >= z:
                mem.note_null_discard(ins.anchor, ins.name, t_discard)
        nulls[:] = kept
        decisions[:] = [d for d in decisions if d.anchor < z]
        return discarded
