"""Regenerate the bundled synthetic dishes-by-spices context.

Deterministic: a fixed seed drives every sampling step, so the committed
.cxt file is reproducible byte for byte.  Eight dish categories share a
handful of base spices each; individual dishes drop one base spice at
random and pick up a few extras.  The numbers below were tuned so the
context has a concept count in the low hundreds, big enough that the
automatic scaling demo has something to compress.
"""

from __future__ import annotations

import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from scalemeasures.context import FormalContext
from scalemeasures.formats import write_cxt

SEED = 20210521
N_CATEGORIES = 8
DISHES_PER_CATEGORY = 7
N_SPICES = 37
BASE_SPICES_PER_CATEGORY = 6
EXTRAS_PER_DISH = 3


def build() -> FormalContext:
    rng = random.Random(SEED)
    spices = [f"spice{j + 1:02d}" for j in range(N_SPICES)]
    # spice01 acts like salt: nearly universal, keeps the lattice connected.
    profiles = []
    for _ in range(N_CATEGORIES):
        profiles.append(rng.sample(spices[1:], BASE_SPICES_PER_CATEGORY))
    objects = []
    incidence = []
    dish = 0
    for c in range(N_CATEGORIES):
        for _ in range(DISHES_PER_CATEGORY):
            dish += 1
            name = f"dish{dish:02d}"
            objects.append(name)
            used = set(profiles[c])
            if rng.random() < 0.5:
                used.discard(rng.choice(profiles[c]))
            used.update(rng.sample(spices[1:], EXTRAS_PER_DISH))
            if rng.random() < 0.9:
                used.add(spices[0])
            for s in sorted(used):
                incidence.append((name, s))
    return FormalContext(objects, spices, incidence, name="synthetic spices")


def main() -> None:
    ctx = build()
    out = Path(__file__).resolve().parents[1] / "src" / "scalemeasures" / \
        "data" / "spices_synth.cxt"
    out.write_text(write_cxt(ctx))
    print(f"{ctx.n_objects}x{ctx.n_attributes}, "
          f"{len(ctx.incidence_pairs())} incidences, "
          f"{ctx.concept_count()} concepts -> {out}")


if __name__ == "__main__":
    main()
