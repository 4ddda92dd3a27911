"""Formal contexts, derivations, and concept enumeration.

A formal context is a binary relation between finitely many named objects
and named attributes.  Objects carry an explicit order; that order fixes
the lectic enumeration of closed object sets and the bit layout of the
masks used internally.  All public set arguments and results are name
based; masks never leak out of the underscore API.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from .bits import is_subset, iter_bits, lectic_key, names_of
from .errors import DuplicateNameError, FcaError, UnknownElementError


@dataclass(frozen=True)
class FormalConcept:
    """A maximal rectangle of the incidence relation.

    Extent and intent determine each other, so equality and hashing use
    the extent/intent pair extensionally.
    """

    extent: frozenset[str]
    intent: frozenset[str]


def _index(names: tuple[str, ...], kind: str) -> dict[str, int]:
    index: dict[str, int] = {}
    for i, name in enumerate(names):
        if name in index:
            raise DuplicateNameError(f"duplicate {kind} name: {name!r}")
        index[name] = i
    return index


class FormalContext:
    """Named objects, named attributes, and an incidence relation.

    The object list must be non-empty.  An empty attribute list is legal:
    scale contexts start out that way during exploration.  Incidence is
    given as (object, attribute) name pairs; unknown names are rejected
    with the offending name in the error.
    """

    __slots__ = ("objects", "attributes", "name", "_obj_index", "_attr_index",
                 "_rows", "_cols", "_extent_cache")

    def __init__(self, objects: Iterable[str], attributes: Iterable[str],
                 incidence: Iterable[tuple[str, str]], name: str = ""):
        self.objects = tuple(objects)
        self.attributes = tuple(attributes)
        self.name = name
        if not self.objects:
            raise FcaError("a context needs at least one object")
        self._obj_index = _index(self.objects, "object")
        self._attr_index = _index(self.attributes, "attribute")
        rows = [0] * len(self.objects)
        cols = [0] * len(self.attributes)
        for g, m in incidence:
            i = self._obj_index.get(g)
            if i is None:
                raise UnknownElementError(g, "object")
            j = self._attr_index.get(m)
            if j is None:
                raise UnknownElementError(m, "attribute")
            rows[i] |= 1 << j
            cols[j] |= 1 << i
        self._rows = tuple(rows)
        self._cols = tuple(cols)
        self._extent_cache: tuple[int, ...] | None = None

    # -- basic shape ----------------------------------------------------

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_attributes(self) -> int:
        return len(self.attributes)

    def incidence_pairs(self) -> list[tuple[str, str]]:
        """All (object, attribute) pairs of the relation, row by row."""
        pairs = []
        for i, g in enumerate(self.objects):
            for j in iter_bits(self._rows[i]):
                pairs.append((g, self.attributes[j]))
        return pairs

    def has(self, obj: str, attr: str) -> bool:
        return bool(self._rows[self._object_index(obj)]
                    & (1 << self._attribute_index(attr)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FormalContext):
            return NotImplemented
        return (self.objects == other.objects
                and self.attributes == other.attributes
                and self._rows == other._rows)

    def __hash__(self) -> int:
        return hash((self.objects, self.attributes, self._rows))

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return (f"<FormalContext{label} {self.n_objects} objects x "
                f"{self.n_attributes} attributes>")

    # -- name/mask conversions ------------------------------------------

    def _object_index(self, name: str) -> int:
        try:
            return self._obj_index[name]
        except KeyError:
            raise UnknownElementError(name, "object") from None

    def _attribute_index(self, name: str) -> int:
        try:
            return self._attr_index[name]
        except KeyError:
            raise UnknownElementError(name, "attribute") from None

    def object_mask(self, names: Iterable[str]) -> int:
        m = 0
        for name in names:
            m |= 1 << self._object_index(name)
        return m

    def attribute_mask(self, names: Iterable[str]) -> int:
        m = 0
        for name in names:
            m |= 1 << self._attribute_index(name)
        return m

    def object_names(self, mask: int) -> frozenset[str]:
        return frozenset(names_of(mask, self.objects))

    def attribute_names(self, mask: int) -> frozenset[str]:
        return frozenset(names_of(mask, self.attributes))

    @property
    def _full_objects(self) -> int:
        return (1 << len(self.objects)) - 1

    @property
    def _full_attributes(self) -> int:
        return (1 << len(self.attributes)) - 1

    # -- derivation operators -------------------------------------------

    def _derive_objects(self, omask: int) -> int:
        common = self._full_attributes
        for i in iter_bits(omask):
            common &= self._rows[i]
        return common

    def _derive_attributes(self, amask: int) -> int:
        common = self._full_objects
        for j in iter_bits(amask):
            common &= self._cols[j]
        return common

    def _closure(self, omask: int) -> int:
        return self._derive_attributes(self._derive_objects(omask))

    def derive_objects(self, objects: Iterable[str]) -> frozenset[str]:
        """Attributes shared by every object in the given set."""
        return self.attribute_names(self._derive_objects(self.object_mask(objects)))

    def derive_attributes(self, attributes: Iterable[str]) -> frozenset[str]:
        """Objects carrying every attribute in the given set."""
        return self.object_names(self._derive_attributes(self.attribute_mask(attributes)))

    def closure(self, objects: Iterable[str]) -> frozenset[str]:
        """Closure of an object set under double derivation."""
        return self.object_names(self._closure(self.object_mask(objects)))

    def is_extent(self, objects: Iterable[str]) -> bool:
        m = self.object_mask(objects)
        return self._closure(m) == m

    # -- concepts ---------------------------------------------------------

    def _extent_masks(self) -> tuple[int, ...]:
        """All extents in lectic enumeration order, cached."""
        if self._extent_cache is None:
            n = len(self.objects)
            out = []
            current = self._closure(0)
            while True:
                out.append(current)
                nxt = next_closure_mask(current, n, self._closure)
                if nxt is None:
                    break
                current = nxt
            self._extent_cache = tuple(out)
        return self._extent_cache

    def extents(self) -> list[frozenset[str]]:
        return [self.object_names(m) for m in self._extent_masks()]

    def concepts(self) -> list[FormalConcept]:
        """All formal concepts, in lectic order of their extents."""
        out = []
        for m in self._extent_masks():
            out.append(FormalConcept(self.object_names(m),
                                     self.attribute_names(self._derive_objects(m))))
        return out

    def concept_count(self) -> int:
        return len(self._extent_masks())

    # -- context transforms -----------------------------------------------

    def reorder_objects(self, order: Iterable[str]) -> FormalContext:
        """Same context with its objects listed in the given order.

        The new order must be a permutation of the current object list.
        """
        new_order = tuple(order)
        if sorted(new_order) != sorted(self.objects):
            missing = set(self.objects) - set(new_order)
            extra = set(new_order) - set(self.objects)
            detail = missing or extra or {"(duplicates)"}
            raise FcaError(f"object order must be a permutation, check: "
                           f"{', '.join(sorted(map(str, detail)))}")
        return FormalContext(new_order, self.attributes,
                             self.incidence_pairs(), name=self.name)

    def lectic_sorted(self, sets: Iterable[frozenset[str]]) -> list[frozenset[str]]:
        """Sort object sets by the lectic order of this context."""
        n = len(self.objects)
        return sorted(sets, key=lambda s: lectic_key(self.object_mask(s), n))


def next_closure_mask(current: int, size: int, close) -> int | None:
    """Lectically next closed mask after `current`, or None past the top.

    `close` maps a mask to its closure mask.  Position 0 is the most
    significant.  The scan tries positions from the least significant up,
    as the standard algorithm prescribes.
    """
    for p in range(size - 1, -1, -1):
        bit = 1 << p
        if current & bit:
            continue
        prefix = bit - 1
        candidate = close((current & prefix) | bit)
        if candidate & prefix == current & prefix:
            return candidate
    return None


def next_closure(current: frozenset[str], ground: tuple[str, ...], close) -> frozenset[str] | None:
    """Name-based lectic successor among the closed sets of `close`.

    `current` must itself be closed; `close` maps a frozenset of names to
    its closure.  Returns None when `current` is the lectically largest
    closed set.
    """
    from .errors import NotClosedError

    index = {name: i for i, name in enumerate(ground)}
    unknown = [x for x in current if x not in index]
    if unknown:
        raise UnknownElementError(unknown[0], "element")
    if close(current) != current:
        raise NotClosedError(f"{sorted(current)} is not closed")

    def close_mask(mask: int) -> int:
        s = close(frozenset(ground[i] for i in iter_bits(mask)))
        m = 0
        for name in s:
            m |= 1 << index[name]
        return m

    cur_mask = 0
    for name in current:
        cur_mask |= 1 << index[name]
    nxt = next_closure_mask(cur_mask, len(ground), close_mask)
    if nxt is None:
        return None
    return frozenset(names_of(nxt, ground))


def subset_mask(a: int, b: int) -> bool:
    return is_subset(a, b)
