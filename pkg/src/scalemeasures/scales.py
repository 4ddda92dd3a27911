"""Scale-measures: continuous maps between contexts and their normal forms.

A scale-measure consists of a scale context together with a map sending
each object of a base context to an object of the scale, such that the
preimage of every scale extent is an extent of the base.  The preimages,
called the reflected extents, always form a closure family over the base
objects; two scale-measures with the same reflected extents are
interchangeable, and the canonical representative uses the reflected
extents themselves as scale attributes with membership as incidence.
"""

from __future__ import annotations

import enum
from collections.abc import Iterable, Mapping
from dataclasses import dataclass

from .bits import iter_bits
from .context import FormalContext
from .errors import FcaError, NotAScaleMeasureError, UnknownElementError
from .families import ClosureFamily, render_object_set
from .ideal import ideal_join


@dataclass(frozen=True)
class ScaleMeasure:
    """A scale context plus an object map from a base context into it.

    `assignment` must be total on the base objects and hit only scale
    objects.  Omit it to get the identity map, which requires the scale
    to use exactly the base's object names.
    """

    base: FormalContext
    scale: FormalContext
    assignment: Mapping[str, str] | None = None

    def __post_init__(self):
        if self.assignment is None:
            if set(self.base.objects) != set(self.scale.objects):
                raise FcaError(
                    "an identity assignment needs equal object sets; "
                    "pass an explicit object map")
        else:
            targets = set(self.scale.objects)
            for g in self.base.objects:
                if g not in self.assignment:
                    raise FcaError(f"assignment misses base object {g!r}")
                if self.assignment[g] not in targets:
                    raise UnknownElementError(self.assignment[g], "scale object")

    def assigned(self, g: str) -> str:
        return g if self.assignment is None else self.assignment[g]

    # -- reflection -------------------------------------------------------

    def _preimage_mask(self, scale_extent_mask: int) -> int:
        scale_index = {name: i for i, name in enumerate(self.scale.objects)}
        mask = 0
        for i, g in enumerate(self.base.objects):
            j = scale_index[self.assigned(g)]
            if (scale_extent_mask >> j) & 1:
                mask |= 1 << i
        return mask

    def reflected_extent_masks(self) -> list[int]:
        seen = set()
        out = []
        for em in self.scale._extent_masks():
            pm = self._preimage_mask(em)
            if pm not in seen:
                seen.add(pm)
                out.append(pm)
        return out

    def reflected_extents(self) -> ClosureFamily:
        """Preimages of the scale's extents as a family over the base objects."""
        return ClosureFamily.from_masks(self.base.objects,
                                        self.reflected_extent_masks(),
                                        validate=False)

    def is_valid(self) -> bool:
        """Whether every reflected scale extent is an extent of the base."""
        return self.invalid_witness() is None

    def invalid_witness(self) -> frozenset[str] | None:
        """A reflected set that fails to be a base extent, if any."""
        for pm in self.reflected_extent_masks():
            if self.base._closure(pm) != pm:
                return self.base.object_names(pm)
        return None

    def ensure_valid(self) -> None:
        witness = self.invalid_witness()
        if witness is not None:
            raise NotAScaleMeasureError(
                f"reflected set {sorted(witness)} is not an extent of the base",
                witness=witness)


class Comparison(enum.Enum):
    FINER = "finer"
    COARSER = "coarser"
    EQUIVALENT = "equivalent"
    INCOMPARABLE = "incomparable"


def compare(a: ScaleMeasure, b: ScaleMeasure) -> Comparison:
    """Order two scale-measures over one base by their reflected extents.

    `a` is finer than `b` when it reflects every extent `b` does.
    """
    if a.base != b.base:
        raise FcaError("scale-measures over different bases are not comparable")
    fa = set(a.reflected_extent_masks())
    fb = set(b.reflected_extent_masks())
    if fa == fb:
        return Comparison.EQUIVALENT
    if fa >= fb:
        return Comparison.FINER
    if fa <= fb:
        return Comparison.COARSER
    return Comparison.INCOMPARABLE


# ---------------------------------------------------------------------------
# canonical representation


def canonical_scale(family: ClosureFamily, name: str = "") -> FormalContext:
    """Context whose objects are the ground set, attributes the family
    members, and incidence plain membership.

    Its extents are exactly the family, so it canonically realizes the
    family as a scale.
    """
    attrs = [render_object_set(m, family.order) for m in family.member_masks]
    incidence = []
    for m, label in zip(family.member_masks, attrs):
        for i in iter_bits(m):
            incidence.append((family.order[i], label))
    return FormalContext(family.order, attrs, incidence, name=name)


def canonical_representation(sm: ScaleMeasure) -> ScaleMeasure:
    """Equivalent scale-measure in canonical form: identity map onto the
    scale built from the reflected extents."""
    sm.ensure_valid()
    family = sm.reflected_extents()
    scale = canonical_scale(family, name="canonical")
    return ScaleMeasure(sm.base, scale)


# ---------------------------------------------------------------------------
# conjunctive normal form


@dataclass(frozen=True)
class LogicalAttribute:
    """A conjunction of base attributes used as a single scale attribute."""

    label: str
    source_attributes: tuple[str, ...]
    extent: frozenset[str]


@dataclass(frozen=True)
class ConjunctiveScale:
    """A scale-measure whose attributes are conjunctions over the base."""

    measure: ScaleMeasure
    attributes: tuple[LogicalAttribute, ...]


def conjunctive_normalform(sm: ScaleMeasure) -> ConjunctiveScale:
    """Express an equivalent scale through conjunctions of base attributes.

    Each reflected extent contributes one logical attribute conjoining
    the base attributes shared by the extent's objects; an extent whose
    objects share nothing yields the empty conjunction, which every
    object satisfies.
    """
    sm.ensure_valid()
    base = sm.base
    family = sm.reflected_extents()
    logical = []
    incidence: list[tuple[str, str]] = []
    labels = []
    for m in family.member_masks:
        intent = base._derive_objects(m)
        sources = tuple(base.attributes[j] for j in iter_bits(intent))
        label = "∧".join(sources) if sources else "⊤"
        logical.append(LogicalAttribute(label=label, source_attributes=sources,
                                        extent=base.object_names(m)))
        labels.append(label)
        for i in iter_bits(m):
            incidence.append((base.objects[i], label))
    scale = FormalContext(base.objects, labels, incidence, name="conjunctive")
    return ConjunctiveScale(measure=ScaleMeasure(base, scale),
                            attributes=tuple(logical))


# ---------------------------------------------------------------------------
# apposition


def apposition(measures: Iterable[ScaleMeasure]) -> ScaleMeasure:
    """Combine scale-measures over one base by joining their attributes.

    Inputs with a non-identity object map are first brought to canonical
    form.  The result's reflected extents are the intersection closure of
    the union of the inputs' reflected extents, the join of the
    coarsenings involved.
    """
    measures = list(measures)
    if not measures:
        raise FcaError("apposition needs at least one scale-measure")
    base = measures[0].base
    for sm in measures:
        if sm.base != base:
            raise FcaError("apposition requires a common base context")
        sm.ensure_valid()
    normalized = [sm if sm.assignment is None and set(sm.scale.objects) == set(base.objects)
                  else canonical_representation(sm) for sm in measures]
    attrs: list[str] = []
    used = set()
    incidence: list[tuple[str, str]] = []
    for k, sm in enumerate(normalized):
        for attr in sm.scale.attributes:
            label = attr
            while label in used:
                label = f"{label}#{k}"
            used.add(label)
            for g in base.objects:
                if sm.scale.has(sm.assigned(g), attr):
                    incidence.append((g, label))
            attrs.append(label)
    scale = FormalContext(base.objects, attrs, incidence, name="apposition")
    return ScaleMeasure(base, scale)


def reflected_join(measures: Iterable[ScaleMeasure]) -> ClosureFamily:
    """Join of the coarsenings reflected by the given scale-measures."""
    families = [sm.reflected_extents() for sm in measures]
    if not families:
        raise FcaError("need at least one scale-measure")
    acc = families[0]
    for fam in families[1:]:
        acc = ideal_join(acc, fam)
    return acc


def identity_measure(base: FormalContext) -> ScaleMeasure:
    """The finest scale-measure: the base context scaled by itself."""
    return ScaleMeasure(base, base)


def coarsest_measure(base: FormalContext) -> ScaleMeasure:
    """The coarsest scale-measure, reflecting only the full object set."""
    family = ClosureFamily.from_masks(base.objects, (base._full_objects,),
                                      validate=False)
    return ScaleMeasure(base, canonical_scale(family, name="coarsest"))
