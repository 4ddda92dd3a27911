from __future__ import annotations

from fractions import Fraction

import pytest

from scalemeasures.context import FormalConcept
from scalemeasures.errors import FcaError, UndefinedScoreError
from scalemeasures.importance import (rank_concepts, resolve_measure,
                                      separation_index)


def concept_for(ctx, extent):
    for c in ctx.concepts():
        if c.extent == frozenset(extent):
            return c
    raise AssertionError(f"no concept with extent {extent}")


def test_separation_frozen_values(tiny):
    c = concept_for(tiny, {"3"})
    assert separation_index(tiny, c) == Fraction(1, 2)
    c = concept_for(tiny, {"1", "3"})
    assert separation_index(tiny, c) == Fraction(2, 3)


def test_separation_is_exact(tiny):
    for c in tiny.concepts():
        if not c.extent or not c.intent:
            continue
        score = separation_index(tiny, c)
        assert isinstance(score, Fraction)
        assert 0 < score <= 1


def test_separation_undefined_for_empty_sides(tiny):
    with pytest.raises(UndefinedScoreError):
        separation_index(tiny, FormalConcept(frozenset(), frozenset({"a", "b"})))
    with pytest.raises(UndefinedScoreError):
        separation_index(
            tiny, FormalConcept(frozenset({"1", "2", "3"}), frozenset()))


def test_rank_is_sorted_and_deterministic(living_beings):
    ranked = rank_concepts(living_beings)
    assert ranked == rank_concepts(living_beings)
    scores = [cs.score for cs in ranked]
    assert scores == sorted(scores, reverse=True)
    # boundary concepts with an empty side never appear
    for cs in ranked:
        assert cs.concept.extent and cs.concept.intent


def test_rank_top_trims(living_beings):
    full = rank_concepts(living_beings)
    assert rank_concepts(living_beings, top=5) == full[:5]
    assert rank_concepts(living_beings, top=0) == []


def test_rank_accepts_callable(tiny):
    flat = rank_concepts(tiny, measure=lambda ctx, c: Fraction(1))
    assert len(flat) == 3
    # all tied, so the lectic tiebreak fixes the order
    assert flat == rank_concepts(tiny, measure=lambda ctx, c: Fraction(1))


def test_unknown_measure_name():
    with pytest.raises(FcaError, match="separation"):
        resolve_measure("nonsense")


def test_score_rows_render(tiny):
    row = rank_concepts(tiny)[0].as_row()
    assert len(row) == 3
    extent, intent, score = row
    assert "," not in score
    assert Fraction(score) > 0