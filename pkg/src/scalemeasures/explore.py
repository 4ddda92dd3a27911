"""Interactive and automatic search for a preferred scale-measure.

The engine walks candidate object sets of a base context in lectic
order.  Whenever the current scale does not yet close a candidate set,
the expert is shown the object implication from the candidate to its
scale closure and either accepts it, coarsening the implication theory,
or names base attributes whose derivation refutes it; the refuting
extent then joins the scale as a new attribute.  Either reply makes
progress, and the walk ends at the full object set with a scale-measure
tailored to the expert's answers.
"""

from __future__ import annotations

import random
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass

from .bits import is_subset, iter_bits
from .context import FormalContext, next_closure_mask
from .errors import (ExplorationPhaseError, FcaError,
                     RejectedCounterexampleError, ScriptError)
from .families import ClosureFamily, render_object_set
from .implications import ImplicationTheory, ObjectImplication, object_canonical_base
from .importance import Measure, rank_concepts
from .scales import ScaleMeasure


@dataclass(frozen=True)
class Query:
    """One yes-or-refute question about an object implication."""

    premise: frozenset[str]
    conclusion: frozenset[str]
    shared_intent: frozenset[str]
    candidates: frozenset[str]


@dataclass(frozen=True)
class Accept:
    """The expert confirms that the conclusion may replace the premise."""


@dataclass(frozen=True)
class Counterexample:
    """The expert insists on attributes separating part of the conclusion."""

    attributes: frozenset[str]


Answer = Accept | Counterexample


@dataclass(frozen=True)
class QueryRecord:
    query: Query
    answer: Answer
    new_extent: frozenset[str] | None = None


@dataclass(frozen=True)
class ExplorationLimits:
    max_queries: int | None = None
    max_scale_attributes: int | None = None


class ExplorationSession:
    """Mutable state of one exploration run.

    The object order of the context fixes the lectic walk, so callers
    wanting a particular question sequence reorder the context first or
    pass `order`.
    """

    def __init__(self, base: FormalContext, init_base: bool = True,
                 order: Sequence[str] | None = None,
                 limits: ExplorationLimits | None = None):
        if order is not None:
            base = base.reorder_objects(order)
        self.base = base
        self.init_base = init_base
        self.limits = limits or ExplorationLimits()
        self._n = base.n_objects
        self._full = base._full_objects
        self._scale_masks: list[int] = []
        self._compiled: list[tuple[int, int]] = []
        self.base_theory = (object_canonical_base(base) if init_base
                            else ImplicationTheory())
        for imp in self.base_theory:
            self._compiled.append((base.object_mask(imp.premise),
                                   base.object_mask(imp.conclusion)))
        self._accepted: list[ObjectImplication] = []
        self.history: list[QueryRecord] = []
        self.truncated = False
        self.done = False
        self._premise = self._theory_close(0)
        self._query: Query | None = None
        self._conclusion_mask = 0
        self._shared_amask = 0
        self._candidates_amask = 0
        self._refresh()

    # -- internal closure arithmetic ---------------------------------------

    def _theory_close(self, mask: int) -> int:
        changed = True
        while changed:
            changed = False
            for p, c in self._compiled:
                if is_subset(p, mask) and c & ~mask:
                    mask |= c
                    changed = True
        return mask

    def _scale_close(self, mask: int) -> int:
        out = self._full
        for ext in self._scale_masks:
            if is_subset(mask, ext):
                out &= ext
        return out

    def _budget_exhausted(self) -> bool:
        lim = self.limits
        if lim.max_queries is not None and len(self.history) >= lim.max_queries:
            return True
        return (lim.max_scale_attributes is not None
                and len(self._scale_masks) >= lim.max_scale_attributes)

    def _refresh(self) -> None:
        while True:
            if self._premise == self._full:
                self.done = True
                self._query = None
                return
            if self._budget_exhausted():
                self.done = True
                self.truncated = True
                self._query = None
                return
            conclusion = self._scale_close(self._premise)
            if conclusion != self._premise:
                shared = self.base._derive_objects(conclusion)
                premise_intent = self.base._derive_objects(self._premise)
                self._conclusion_mask = conclusion
                self._shared_amask = shared
                self._candidates_amask = premise_intent & ~shared
                self._query = Query(
                    premise=self.base.object_names(self._premise),
                    conclusion=self.base.object_names(conclusion),
                    shared_intent=self.base.attribute_names(shared),
                    candidates=self.base.attribute_names(self._candidates_amask))
                return
            nxt = next_closure_mask(self._premise, self._n, self._theory_close)
            if nxt is None:
                self.done = True
                self._query = None
                return
            self._premise = nxt

    # -- public state -------------------------------------------------------

    def current_query(self) -> Query | None:
        return self._query

    @property
    def accepted(self) -> tuple[ObjectImplication, ...]:
        return tuple(self._accepted)

    def theory(self) -> ImplicationTheory:
        """Current theory: the initial implications plus every accept."""
        return ImplicationTheory(tuple(self.base_theory) + tuple(self._accepted))

    def scale_attribute_extents(self) -> list[frozenset[str]]:
        return [self.base.object_names(m) for m in self._scale_masks]

    def scale_context(self) -> FormalContext:
        labels = [render_object_set(m, self.base.objects)
                  for m in self._scale_masks]
        incidence = []
        for m, label in zip(self._scale_masks, labels):
            for i in iter_bits(m):
                incidence.append((self.base.objects[i], label))
        return FormalContext(self.base.objects, labels, incidence,
                             name="explored-scale")

    def scale_measure(self) -> ScaleMeasure:
        return ScaleMeasure(self.base, self.scale_context())

    def reflected_family(self) -> ClosureFamily:
        return self.scale_measure().reflected_extents()

    def counterexample_count(self) -> int:
        return sum(1 for r in self.history if isinstance(r.answer, Counterexample))

    def accept_count(self) -> int:
        return len(self._accepted)

    # -- answers -------------------------------------------------------------

    def _require_query(self) -> Query:
        if self._query is None:
            raise ExplorationPhaseError("no query is pending")
        return self._query

    def answer_accept(self) -> None:
        """Adopt the pending implication and move to the next premise."""
        query = self._require_query()
        imp = ObjectImplication(query.premise, query.conclusion)
        self._accepted.append(imp)
        self._compiled.append((self._premise, self._conclusion_mask))
        self.history.append(QueryRecord(query, Accept()))
        nxt = next_closure_mask(self._premise, self._n, self._theory_close)
        self._premise = self._full if nxt is None else nxt
        self._refresh()

    def answer_counterexample(self, attributes: Iterable[str]) -> frozenset[str]:
        """Refute the pending implication with base attributes.

        The attributes must be a non-empty subset of the query's
        candidates.  The derivation of the shared intent together with
        the chosen attributes becomes a new scale attribute; its extent
        is returned.
        """
        query = self._require_query()
        attrs = frozenset(attributes)
        if not attrs:
            raise RejectedCounterexampleError(
                "a counterexample needs at least one attribute")
        amask = self.base.attribute_mask(attrs)
        stray = amask & ~self._candidates_amask
        if stray:
            raise RejectedCounterexampleError(
                "attributes outside the candidate set: "
                + ", ".join(sorted(self.base.attribute_names(stray))),
                offending=self.base.attribute_names(stray))
        extent = self.base._derive_attributes(self._shared_amask | amask)
        if not is_subset(self._premise, extent):
            raise FcaError("internal error: counterexample lost the premise")
        if is_subset(self._conclusion_mask, extent):
            raise FcaError("internal error: counterexample failed to refute")
        if extent in self._scale_masks:
            raise FcaError("internal error: duplicate scale attribute")
        self._scale_masks.append(extent)
        names = self.base.object_names(extent)
        self.history.append(QueryRecord(query, Counterexample(attrs), names))
        self._refresh()
        return names

    def answer(self, ans: Answer) -> None:
        if isinstance(ans, Accept):
            self.answer_accept()
        elif isinstance(ans, Counterexample):
            self.answer_counterexample(ans.attributes)
        else:
            raise FcaError(f"not an answer: {ans!r}")

    # -- serialization --------------------------------------------------------

    def to_doc(self) -> dict:
        from .formats import context_to_doc

        def names(s: Iterable[str]) -> list[str]:
            return sorted(s)

        steps = []
        for rec in self.history:
            entry: dict = {
                "premise": names(rec.query.premise),
                "conclusion": names(rec.query.conclusion),
                "shared_intent": names(rec.query.shared_intent),
                "candidates": names(rec.query.candidates),
            }
            if isinstance(rec.answer, Accept):
                entry["accept"] = True
            else:
                entry["counterexample"] = names(rec.answer.attributes)
                entry["new_extent"] = names(rec.new_extent or ())
            steps.append(entry)
        return {
            "type": "exploration-session",
            "version": 1,
            "context": context_to_doc(self.base),
            "init_base": self.init_base,
            "limits": {"max_queries": self.limits.max_queries,
                       "max_scale_attributes": self.limits.max_scale_attributes},
            "history": steps,
            "scale_attributes": [sorted(self.base.object_names(m))
                                 for m in self._scale_masks],
            "premise": sorted(self.base.object_names(self._premise)),
            "done": self.done,
            "truncated": self.truncated,
        }

    @staticmethod
    def from_doc(doc: dict) -> "ExplorationSession":
        from .formats import context_from_doc

        ctx = context_from_doc(doc["context"])
        limits = doc.get("limits") or {}
        session = ExplorationSession(
            ctx, init_base=doc.get("init_base", True),
            limits=ExplorationLimits(
                max_queries=limits.get("max_queries"),
                max_scale_attributes=limits.get("max_scale_attributes")))
        for entry in doc.get("history", ()):
            if entry.get("accept"):
                session.answer_accept()
            else:
                session.answer_counterexample(entry["counterexample"])
        return session


def start_session(base: FormalContext, init_base: bool = True,
                  order: Sequence[str] | None = None,
                  limits: ExplorationLimits | None = None) -> ExplorationSession:
    return ExplorationSession(base, init_base=init_base, order=order,
                              limits=limits)


def replay(base: FormalContext, answers: Iterable[Answer],
           init_base: bool = True, order: Sequence[str] | None = None,
           limits: ExplorationLimits | None = None) -> ExplorationSession:
    """Re-run a session from recorded answers; extra answers raise."""
    session = ExplorationSession(base, init_base=init_base, order=order,
                                 limits=limits)
    for ans in answers:
        session.answer(ans)
    return session


# ---------------------------------------------------------------------------
# experts


@dataclass(frozen=True)
class ScriptStep:
    answer: Answer
    premise: frozenset[str] | None = None


def scripted_expert(steps: Sequence[ScriptStep]) -> Callable[[Query], Answer]:
    """Expert replaying a fixed answer list, checking premises on the way."""
    state = {"at": 0}

    def expert(query: Query) -> Answer:
        i = state["at"]
        if i >= len(steps):
            raise ScriptError(
                f"script exhausted, query for premise {sorted(query.premise)} "
                f"left unanswered")
        step = steps[i]
        if step.premise is not None and step.premise != query.premise:
            raise ScriptError(
                f"script expected premise {sorted(step.premise)} but the "
                f"session asked about {sorted(query.premise)}")
        state["at"] = i + 1
        return step.answer

    return expert


def automatic_expert(base: FormalContext, measure: str | Measure = "separation",
                     top: int | None = None, budget: int = 10,
                     seed: int | None = 0) -> Callable[[Query], Answer]:
    """Expert refuting with important concepts until a budget runs out.

    Concepts are ranked once by the chosen importance measure; on each
    query one of the ranked concepts whose intent meets the candidate
    attributes is drawn at random and its candidate attributes form the
    counterexample.  Without such a concept, or out of budget, the
    implication is accepted.
    """
    ranked = rank_concepts(base, measure, top)
    rng = random.Random(seed)
    state = {"left": budget}

    def expert(query: Query) -> Answer:
        if state["left"] <= 0:
            return Accept()
        valid = [cs for cs in ranked if cs.concept.intent & query.candidates]
        if not valid:
            return Accept()
        choice = rng.choice(valid)
        state["left"] -= 1
        return Counterexample(frozenset(choice.concept.intent & query.candidates))

    return expert


def accepting_expert() -> Callable[[Query], Answer]:
    def expert(query: Query) -> Answer:
        return Accept()

    return expert


def exhaustive_expert() -> Callable[[Query], Answer]:
    """Expert that always refutes with every candidate attribute.

    Drives the scale to reflect every extent of the base.
    """

    def expert(query: Query) -> Answer:
        if query.candidates:
            return Counterexample(query.candidates)
        return Accept()

    return expert


# ---------------------------------------------------------------------------
# running


@dataclass(frozen=True)
class ExplorationResult:
    session: ExplorationSession
    measure: ScaleMeasure
    theory: ImplicationTheory
    history: tuple[QueryRecord, ...]
    truncated: bool

    @property
    def accepts(self) -> int:
        return self.session.accept_count()

    @property
    def counterexamples(self) -> int:
        return self.session.counterexample_count()


def run(base: FormalContext, expert: Callable[[Query], Answer],
        init_base: bool = True, order: Sequence[str] | None = None,
        limits: ExplorationLimits | None = None) -> ExplorationResult:
    """Drive a session with the given expert until done or truncated."""
    session = ExplorationSession(base, init_base=init_base, order=order,
                                 limits=limits)
    while True:
        query = session.current_query()
        if query is None:
            break
        session.answer(expert(query))
    return ExplorationResult(session=session, measure=session.scale_measure(),
                             theory=session.theory(),
                             history=tuple(session.history),
                             truncated=session.truncated)
