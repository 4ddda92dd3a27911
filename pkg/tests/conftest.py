from __future__ import annotations

import itertools
import random
from pathlib import Path

import pytest

from scalemeasures.context import FormalContext

DATA = Path(__file__).resolve().parents[1] / "src" / "scalemeasures" / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def living_beings() -> FormalContext:
    from scalemeasures.formats import load_context

    return load_context(DATA / "living_beings.cxt")


@pytest.fixture(scope="session")
def fig2_scale() -> FormalContext:
    from scalemeasures.formats import load_context

    return load_context(DATA / "fig2_scale.cxt")


@pytest.fixture(scope="session")
def spices() -> FormalContext:
    from scalemeasures.formats import load_context

    return load_context(DATA / "spices_synth.cxt")


@pytest.fixture()
def tiny() -> FormalContext:
    # Ext = {{3}, {1,3}, {2,3}, {1,2,3}}, a 4-element diamond.
    return FormalContext(
        ["1", "2", "3"], ["a", "b"],
        [("1", "a"), ("2", "b"), ("3", "a"), ("3", "b")], name="tiny")


def random_context(rng: random.Random, max_objects: int = 5,
                   max_attributes: int = 6, density: float | None = None,
                   name: str = "rnd") -> FormalContext:
    """Sample a small context; shared by the randomized suites."""
    n = rng.randint(1, max_objects)
    m = rng.randint(1, max_attributes)
    p = density if density is not None else rng.uniform(0.2, 0.8)
    objects = [f"g{i}" for i in range(n)]
    attributes = [f"m{j}" for j in range(m)]
    incidence = [(g, a) for g in objects for a in attributes
                 if rng.random() < p]
    return FormalContext(objects, attributes, incidence, name=name)


def brute_force_extents(ctx: FormalContext) -> set[frozenset[str]]:
    """Independent oracle: close every subset of G by double derivation."""
    out = set()
    for r in range(ctx.n_objects + 1):
        for combo in itertools.combinations(ctx.objects, r):
            out.add(ctx.closure(frozenset(combo)))
    return out


def random_valid_measure(rng: random.Random, base: FormalContext,
                         rename: bool | None = None):
    """Sample a valid scale-measure on `base`.

    Keeps a random subfamily of the base's extents (always the full set),
    intersection-closes it, and realizes it as a membership scale.  With
    `rename` (or at random) the scale's objects get fresh names and the
    measure carries an explicit object map, exercising the non-identity
    path.
    """
    from scalemeasures.families import ClosureFamily
    from scalemeasures.scales import ScaleMeasure, canonical_scale

    chosen = {frozenset(base.objects)}
    for e in base.extents():
        if rng.random() < 0.5:
            chosen.add(e)
    fam = ClosureFamily.intersection_close(base.objects, chosen)
    scale = canonical_scale(fam, name="sampled")
    if rename is None:
        rename = rng.random() < 0.3
    if not rename:
        return ScaleMeasure(base, scale)
    renamed = [f"s:{g}" for g in scale.objects]
    pairs = [(f"s:{g}", m) for g in scale.objects for m in scale.attributes
             if scale.has(g, m)]
    relabeled = FormalContext(renamed, scale.attributes, pairs,
                              name="sampled-renamed")
    return ScaleMeasure(base, relabeled,
                        assignment={g: f"s:{g}" for g in base.objects})
