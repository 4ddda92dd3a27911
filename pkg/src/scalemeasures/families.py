"""Families of object sets closed under intersection.

A closure family over a ground set G is a collection of subsets of G that
contains G itself and is closed under arbitrary intersections.  Families
are tied to a declared ground order so that members can be rendered and
compared deterministically.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from .bits import is_subset, iter_bits, lectic_key, names_of
from .errors import InvalidFamilyError, UnknownElementError


@dataclass(frozen=True)
class ClosureFamily:
    """An intersection-closed set family containing its ground set.

    `order` lists the ground set; `member_masks` holds the members as
    bitmasks over that order, sorted lectically and duplicate-free.
    Construct through `from_sets`, `from_masks`, or `intersection_close`.
    """

    order: tuple[str, ...]
    member_masks: tuple[int, ...]

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_masks(order: tuple[str, ...], masks: Iterable[int],
                   validate: bool = True) -> ClosureFamily:
        n = len(order)
        unique = set(masks)
        full = (1 << n) - 1
        for m in unique:
            if m & ~full:
                raise InvalidFamilyError("member outside the ground set")
        fam = ClosureFamily(order, tuple(
            sorted(unique, key=lambda m: lectic_key(m, n))))
        if validate:
            fam._check()
        return fam

    @staticmethod
    def from_sets(order: Iterable[str], members: Iterable[Iterable[str]]) -> ClosureFamily:
        order = tuple(order)
        index = {name: i for i, name in enumerate(order)}
        masks = []
        for member in members:
            m = 0
            for name in member:
                if name not in index:
                    raise UnknownElementError(name, "object")
                m |= 1 << index[name]
            masks.append(m)
        return ClosureFamily.from_masks(order, masks)

    @staticmethod
    def intersection_close(order: Iterable[str], members: Iterable[Iterable[str]]) -> ClosureFamily:
        """Smallest closure family over `order` containing all `members`."""
        order = tuple(order)
        index = {name: i for i, name in enumerate(order)}
        masks = set()
        for member in members:
            m = 0
            for name in member:
                if name not in index:
                    raise UnknownElementError(name, "object")
                m |= 1 << index[name]
            masks.add(m)
        return ClosureFamily.from_masks(order, _close_masks(len(order), masks),
                                        validate=False)

    def _check(self) -> None:
        full = self.full_mask
        if full not in set(self.member_masks):
            raise InvalidFamilyError("the ground set itself must be a member")
        present = set(self.member_masks)
        for a in self.member_masks:
            if a & ~full:
                raise InvalidFamilyError("member outside the ground set")
            for b in self.member_masks:
                if a < b and (a & b) not in present:
                    raise InvalidFamilyError(
                        f"not intersection-closed: "
                        f"{set(names_of(a, self.order))} and {set(names_of(b, self.order))}")

    # -- views -------------------------------------------------------------

    @property
    def full_mask(self) -> int:
        return (1 << len(self.order)) - 1

    @property
    def ground(self) -> frozenset[str]:
        return frozenset(self.order)

    def members(self) -> list[frozenset[str]]:
        return [frozenset(names_of(m, self.order)) for m in self.member_masks]

    def member_set(self) -> frozenset[frozenset[str]]:
        return frozenset(self.members())

    def __len__(self) -> int:
        return len(self.member_masks)

    def contains_mask(self, mask: int) -> bool:
        return mask in set(self.member_masks)

    def __contains__(self, member: Iterable[str]) -> bool:
        index = {name: i for i, name in enumerate(self.order)}
        m = 0
        for name in member:
            if name not in index:
                return False
            m |= 1 << index[name]
        return self.contains_mask(m)

    def is_subfamily(self, other: ClosureFamily) -> bool:
        if self.order != other.order:
            raise InvalidFamilyError("families live over different ground orders")
        return set(self.member_masks) <= set(other.member_masks)

    def _smallest_mask_containing(self, mask: int) -> int:
        result = self.full_mask
        for m in self.member_masks:
            if is_subset(mask, m):
                result &= m
        return result

    def smallest_member_containing(self, objects: Iterable[str]) -> frozenset[str]:
        """Intersection of all members containing the given objects.

        This is the closure of the set in the family, well defined
        because the ground set is always a member.
        """
        index = {name: i for i, name in enumerate(self.order)}
        mask = 0
        for name in objects:
            if name not in index:
                raise UnknownElementError(name, "object")
            mask |= 1 << index[name]
        return frozenset(names_of(self._smallest_mask_containing(mask),
                                  self.order))

    def render(self) -> list[str]:
        return [render_object_set(m, self.order) for m in self.member_masks]


def render_object_set(mask: int, order: tuple[str, ...]) -> str:
    return "{" + ",".join(names_of(mask, order)) + "}"


def _close_masks(size: int, masks: set[int]) -> set[int]:
    full = (1 << size) - 1
    closed = set(masks)
    closed.add(full)
    frontier = list(closed)
    while frontier:
        nxt = []
        for a in frontier:
            for b in list(closed):
                c = a & b
                if c not in closed:
                    closed.add(c)
                    nxt.append(c)
        frontier = nxt
    return closed


def is_closure_family(order: Iterable[str], members: Iterable[Iterable[str]]) -> bool:
    """Check the closure family laws without raising."""
    try:
        ClosureFamily.from_sets(order, members)
    except (InvalidFamilyError, UnknownElementError):
        return False
    return True


def extent_family(ctx) -> ClosureFamily:
    """The extent closure system of a formal context."""
    return ClosureFamily.from_masks(ctx.objects, ctx._extent_masks(),
                                    validate=False)
