"""Concept importance measures and a small registry for them.

The built-in separation measure relates the area of a concept's
rectangle to the total incidence weight touching its extent and intent;
scores are exact rationals so ranking ties are reproducible.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass
from fractions import Fraction

from .bits import lectic_key
from .context import FormalConcept, FormalContext
from .errors import FcaError, UndefinedScoreError

Measure = Callable[[FormalContext, FormalConcept], Fraction]


def separation_index(ctx: FormalContext, concept: FormalConcept) -> Fraction:
    """Share of the incidence weight around a concept covered by it.

    The numerator is the rectangle area |extent|·|intent|; the
    denominator sums the attribute counts of the extent's objects and the
    object counts of the intent's attributes, counting the rectangle
    itself once.  Undefined when extent or intent is empty.
    """
    if not concept.extent or not concept.intent:
        raise UndefinedScoreError(
            "separation is undefined for concepts with an empty side")
    area = len(concept.extent) * len(concept.intent)
    row_weight = 0
    for g in concept.extent:
        row_weight += ctx._rows[ctx._object_index(g)].bit_count()
    col_weight = 0
    for m in concept.intent:
        col_weight += ctx._cols[ctx._attribute_index(m)].bit_count()
    return Fraction(area, row_weight + col_weight - area)


MEASURES: dict[str, Measure] = {
    "separation": separation_index,
}


def resolve_measure(measure: str | Measure) -> Measure:
    if callable(measure):
        return measure
    try:
        return MEASURES[measure]
    except KeyError:
        known = ", ".join(sorted(MEASURES))
        raise FcaError(f"unknown measure {measure!r}, available: {known}") from None


@dataclass(frozen=True)
class ConceptScore:
    concept: FormalConcept
    score: Fraction

    def as_row(self) -> tuple[str, str, str]:
        return (",".join(sorted(self.concept.extent)),
                ",".join(sorted(self.concept.intent)),
                str(self.score))


def rank_concepts(ctx: FormalContext, measure: str | Measure = "separation",
                  top: int | None = None) -> list[ConceptScore]:
    """Score all concepts with non-empty extent and intent, best first.

    Ties break deterministically on the lectic position of the extent,
    so equal scores keep a stable order.  `top` trims the list.
    """
    fn = resolve_measure(measure)
    n = ctx.n_objects
    scored = []
    for concept in ctx.concepts():
        if not concept.extent or not concept.intent:
            continue
        scored.append(ConceptScore(concept, fn(ctx, concept)))
    scored.sort(key=lambda cs: (-cs.score,
                                lectic_key(ctx.object_mask(cs.concept.extent), n)))
    if top is not None:
        scored = scored[:top]
    return scored
