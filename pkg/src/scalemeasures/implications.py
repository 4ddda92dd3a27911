"""Object implications, implication theories, and the canonical base.

Implications here live on the object side of a context: premise and
conclusion are object sets, and an implication holds when every attribute
shared by the premise is shared by the conclusion as well, equivalently
when the conclusion is contained in the premise's closure.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass

from .bits import is_subset, iter_bits
from .context import FormalContext, next_closure_mask


@dataclass(frozen=True)
class ObjectImplication:
    premise: frozenset[str]
    conclusion: frozenset[str]

    def __str__(self) -> str:
        lhs = "{" + ", ".join(sorted(self.premise)) + "}"
        rhs = "{" + ", ".join(sorted(self.conclusion)) + "}"
        return f"{lhs} -> {rhs}"


class ImplicationTheory:
    """An ordered, duplicate-free collection of object implications."""

    def __init__(self, implications: Iterable[ObjectImplication] = ()):
        seen = set()
        items = []
        for imp in implications:
            if imp not in seen:
                seen.add(imp)
                items.append(imp)
        self.implications: tuple[ObjectImplication, ...] = tuple(items)

    def __iter__(self) -> Iterator[ObjectImplication]:
        return iter(self.implications)

    def __len__(self) -> int:
        return len(self.implications)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ImplicationTheory):
            return NotImplemented
        return set(self.implications) == set(other.implications)

    def __hash__(self) -> int:
        return hash(frozenset(self.implications))

    def closure(self, objects: Iterable[str]) -> frozenset[str]:
        """Smallest superset of `objects` respecting every implication."""
        result = set(objects)
        changed = True
        while changed:
            changed = False
            for imp in self.implications:
                if imp.premise <= result and not imp.conclusion <= result:
                    result |= imp.conclusion
                    changed = True
        return frozenset(result)

    def models(self, objects: frozenset[str]) -> bool:
        """True when the set respects every implication of the theory."""
        return all(imp.conclusion <= objects
                   for imp in self.implications if imp.premise <= objects)


def implication_holds(ctx: FormalContext, imp: ObjectImplication) -> bool:
    """Whether the implication holds in the context.

    Holds exactly when the premise's derivation is contained in the
    conclusion's derivation, i.e. the conclusion lies inside the premise's
    closure.
    """
    pm = ctx._derive_objects(ctx.object_mask(imp.premise))
    cm = ctx._derive_objects(ctx.object_mask(imp.conclusion))
    return is_subset(pm, cm)


def theory_closure_mask(compiled: list[tuple[int, int]], mask: int) -> int:
    changed = True
    while changed:
        changed = False
        for p, c in compiled:
            if is_subset(p, mask) and c & ~mask:
                mask |= c
                changed = True
    return mask


def compile_theory(ctx: FormalContext, theory: ImplicationTheory) -> list[tuple[int, int]]:
    return [(ctx.object_mask(imp.premise), ctx.object_mask(imp.conclusion))
            for imp in theory]


def object_canonical_base(ctx: FormalContext) -> ImplicationTheory:
    """Canonical base of object implications of the context.

    Premises are enumerated lectically with the growing base supplying
    the closure, the standard way.  The result is sound and complete for
    the context's object implications and premise-minimal.
    """
    n = ctx.n_objects
    full = ctx._full_objects
    compiled: list[tuple[int, int]] = []

    def theory_close(mask: int) -> int:
        return theory_closure_mask(compiled, mask)

    out = []
    current = 0
    while True:
        closed = ctx._closure(current)
        if closed != current:
            compiled.append((current, closed))
            out.append(ObjectImplication(ctx.object_names(current),
                                         ctx.object_names(closed)))
        if current == full:
            break
        nxt = next_closure_mask(current, n, theory_close)
        if nxt is None:
            break
        current = nxt
    return ImplicationTheory(out)


def theory_fixpoint_masks(compiled: list[tuple[int, int]], size: int) -> list[int]:
    """All subsets of an n-element ground set closed under the theory.

    Brute force over the powerset; callers keep `size` small.
    """
    out = []
    for mask in range(1 << size):
        if theory_closure_mask(compiled, mask) == mask:
            out.append(mask)
    return out


def holds_in_family(imp_premise: int, imp_conclusion: int, member: int) -> bool:
    return not is_subset(imp_premise, member) or is_subset(imp_conclusion, member)
