"""The ordered collection of all sub-closure-systems of a context's extents.

Every intersection-closed subfamily of the extent system that still
contains the full object set is a coarsening of the context.  Ordered by
containment these coarsenings form a complete lattice; this module
enumerates it, computes its irreducible elements, joins, meets, join
complements, induced closure operators, neutral elements, and a suite of
structural property checks.

Enumeration-backed functions are oracle-grade and refuse inputs whose
extent count exceeds a configurable bound.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from .bits import is_subset, iter_bits
from .errors import BoundExceededError, FcaError, InvalidFamilyError
from .families import ClosureFamily, render_object_set

DEFAULT_ENUMERATION_BOUND = 16


# ---------------------------------------------------------------------------
# extent lattice groundwork


def _require_subfamily(r: ClosureFamily, extents: ClosureFamily) -> None:
    if r.order != extents.order:
        raise InvalidFamilyError("family order differs from the extent order")
    if not set(r.member_masks) <= set(extents.member_masks):
        raise InvalidFamilyError("family contains a set that is not an extent")


def extent_cover_pairs(extents: ClosureFamily) -> list[tuple[int, int]]:
    """Cover pairs (lower, upper) of the extent system ordered by containment."""
    masks = sorted(extents.member_masks, key=lambda m: m.bit_count())
    pairs = []
    for i, a in enumerate(masks):
        for b in masks[i + 1:]:
            if a == b or not is_subset(a, b):
                continue
            if any(c != a and c != b and is_subset(a, c) and is_subset(c, b)
                   for c in masks):
                continue
            pairs.append((a, b))
    return pairs


def _meet_irreducible_members(masks: Iterable[int], full: int) -> set[int]:
    """Members with a unique upper cover inside the family, top excluded."""
    masks = list(masks)
    out = set()
    for a in masks:
        if a == full:
            continue
        above = full
        for b in masks:
            if b != a and is_subset(a, b):
                above &= b
        if above != a:
            out.add(a)
    return out


# ---------------------------------------------------------------------------
# irreducibles of the ideal


@dataclass(frozen=True)
class IdealElementDescriptor:
    """A distinguished ideal element together with how it was generated.

    For meet-irreducible elements `generator` holds the extent-lattice
    cover pair the element was built from.
    """

    family: ClosureFamily
    is_join_irreducible: bool
    is_meet_irreducible: bool
    generator: tuple[frozenset[str], frozenset[str]] | None = None


def join_irreducibles(extents: ClosureFamily) -> list[ClosureFamily]:
    """Atoms of the ideal: the two-member families {G, A} for each extent A."""
    full = extents.full_mask
    return [ClosureFamily.from_masks(extents.order, (full, a), validate=False)
            for a in extents.member_masks if a != full]


def model_family(extents: ClosureFamily, premise: Iterable[str],
                 conclusion: Iterable[str]) -> ClosureFamily:
    """Extents respecting the single implication premise -> conclusion."""
    index = {name: i for i, name in enumerate(extents.order)}
    pmask = 0
    for name in premise:
        pmask |= 1 << _lookup(index, name)
    cmask = 0
    for name in conclusion:
        cmask |= 1 << _lookup(index, name)
    kept = [m for m in extents.member_masks
            if not is_subset(pmask, m) or is_subset(cmask, m)]
    return ClosureFamily.from_masks(extents.order, kept, validate=False)


def _lookup(index: dict[str, int], name: str) -> int:
    from .errors import UnknownElementError

    try:
        return index[name]
    except KeyError:
        raise UnknownElementError(name, "object") from None


def meet_irreducibles(extents: ClosureFamily) -> list[IdealElementDescriptor]:
    """Meet-irreducible ideal elements, one per extent-lattice cover pair.

    For a cover pair A below B the element collects every extent D with
    A contained in D only when some fixed witness of B minus A is in D;
    the witness choice does not change the family.
    """
    out = []
    seen: dict[tuple[int, ...], tuple[int, int]] = {}
    for a, b in extent_cover_pairs(extents):
        witness = next(iter_bits(b & ~a))
        kept = tuple(m for m in extents.member_masks
                     if not is_subset(a, m) or (m >> witness) & 1)
        if kept in seen:
            continue
        seen[kept] = (a, b)
        fam = ClosureFamily.from_masks(extents.order, kept, validate=False)
        out.append(IdealElementDescriptor(
            family=fam, is_join_irreducible=(len(fam) == 2),
            is_meet_irreducible=True,
            generator=(frozenset(_names(a, extents.order)),
                       frozenset(_names(b, extents.order)))))
    return out


def _names(mask: int, order: tuple[str, ...]) -> tuple[str, ...]:
    return tuple(order[i] for i in iter_bits(mask))


def count_meet_irreducibles(extents: ClosureFamily) -> int:
    """Number of meet-irreducible ideal elements.

    Equals the number of cover pairs of the extent lattice; the equality
    is recomputed here and a mismatch raises rather than being papered
    over.
    """
    pairs = extent_cover_pairs(extents)
    count = len(meet_irreducibles(extents))
    if count != len(pairs):
        raise FcaError(
            f"meet-irreducible count {count} does not match the "
            f"{len(pairs)} extent cover pairs")
    return count


# ---------------------------------------------------------------------------
# joins, meets, complements


def ideal_meet(a: ClosureFamily, b: ClosureFamily) -> ClosureFamily:
    """Largest coarsening below both: the plain intersection of members."""
    if a.order != b.order:
        raise InvalidFamilyError("families live over different ground orders")
    kept = set(a.member_masks) & set(b.member_masks)
    return ClosureFamily.from_masks(a.order, kept, validate=False)


def ideal_join(a: ClosureFamily, b: ClosureFamily) -> ClosureFamily:
    """Smallest coarsening above both: close the union under intersection."""
    if a.order != b.order:
        raise InvalidFamilyError("families live over different ground orders")
    masks = set(a.member_masks) | set(b.member_masks)
    out = set(masks)
    frontier = list(masks)
    while frontier:
        nxt = []
        for x in frontier:
            for y in masks:
                z = x & y
                if z not in out:
                    out.add(z)
                    nxt.append(z)
        frontier = nxt
        masks = out.copy()
    return ClosureFamily.from_masks(a.order, out, validate=False)


def join_complement(r: ClosureFamily, extents: ClosureFamily) -> ClosureFamily:
    """Smallest ideal element whose join with `r` restores all extents.

    Built from the meet-irreducible members of the extent system that are
    not meet-irreducible inside `r`.
    """
    _require_subfamily(r, extents)
    full = extents.full_mask
    m_ext = _meet_irreducible_members(extents.member_masks, full)
    m_r = _meet_irreducible_members(r.member_masks, full)
    gens = (m_ext - m_r) | {full}
    out = set(gens)
    frontier = list(gens)
    while frontier:
        nxt = []
        for x in frontier:
            for y in list(out):
                z = x & y
                if z not in out:
                    out.add(z)
                    nxt.append(z)
        frontier = nxt
    return ClosureFamily.from_masks(extents.order, out, validate=False)


def induced_closure_operator(r: ClosureFamily):
    """The closure operator on object sets whose closed sets are `r`.

    Returns a callable mapping an object set to the smallest member of
    `r` containing it.  Larger families yield pointwise smaller
    operators, which is the order-reversing correspondence between
    coarsenings and their operators.
    """
    index = {name: i for i, name in enumerate(r.order)}

    def close(objects: Iterable[str]) -> frozenset[str]:
        mask = 0
        for name in objects:
            mask |= 1 << _lookup(index, name)
        return frozenset(_names(r._smallest_mask_containing(mask), r.order))

    close.family = r
    return close


# ---------------------------------------------------------------------------
# enumeration engine


class IdealLattice:
    """Enumerated ideal of sub-closure-systems with fast meet and join.

    Elements are bitmasks over the lectically sorted extent list; bit k
    set means extent k belongs to the family.  Meet is bitwise and; join
    closes the union under pairwise intersection through a lookup of the
    extent intersection table.
    """

    def __init__(self, extents: ClosureFamily,
                 bound: int | None = DEFAULT_ENUMERATION_BOUND):
        self.extents = extents
        self.masks = extents.member_masks
        self.e = len(self.masks)
        if bound is not None and self.e > bound:
            raise BoundExceededError(
                f"{self.e} extents exceed the enumeration bound {bound}; "
                f"raise the bound explicitly to force the computation")
        self.index = {m: i for i, m in enumerate(self.masks)}
        self.top_bit = 1 << self.index[extents.full_mask]
        self.inter = [[self.index[a & b] for b in self.masks] for a in self.masks]
        self._join_memo: dict[int, int] = {}
        self._elements: list[int] | None = None

    # family-mask helpers

    def close(self, fmask: int) -> int:
        """Close a family mask under pairwise extent intersection."""
        fmask |= self.top_bit
        memo = self._join_memo
        cached = memo.get(fmask)
        if cached is not None:
            return cached
        start = fmask
        changed = True
        while changed:
            changed = False
            bits = list(iter_bits(fmask))
            for x, i in enumerate(bits):
                row = self.inter[i]
                for j in bits[x + 1:]:
                    k = row[j]
                    if not (fmask >> k) & 1:
                        fmask |= 1 << k
                        changed = True
        memo[start] = fmask
        return fmask

    def is_closed(self, fmask: int) -> bool:
        if not fmask & self.top_bit:
            return False
        bits = list(iter_bits(fmask))
        for x, i in enumerate(bits):
            row = self.inter[i]
            for j in bits[x + 1:]:
                if not (fmask >> row[j]) & 1:
                    return False
        return True

    def elements(self) -> list[int]:
        """All ideal elements as family masks, smallest families first."""
        if self._elements is None:
            found = []
            top_bit = self.top_bit
            for raw in range(1 << self.e):
                fmask = raw
                if not fmask & top_bit:
                    continue
                if self.is_closed(fmask):
                    found.append(fmask)
            found.sort(key=lambda f: (f.bit_count(), f))
            self._elements = found
        return self._elements

    def join(self, a: int, b: int) -> int:
        return self.close(a | b)

    def meet(self, a: int, b: int) -> int:
        return a & b

    @property
    def top(self) -> int:
        return (1 << self.e) - 1

    @property
    def bottom(self) -> int:
        return self.top_bit

    def family(self, fmask: int) -> ClosureFamily:
        return ClosureFamily.from_masks(
            self.extents.order,
            (self.masks[i] for i in iter_bits(fmask)), validate=False)

    def family_mask(self, fam: ClosureFamily) -> int:
        _require_subfamily(fam, self.extents)
        fmask = 0
        for m in fam.member_masks:
            fmask |= 1 << self.index[m]
        return fmask

    def covers(self, a: int, b: int) -> bool:
        """Whether b covers a inside the enumerated ideal."""
        if a == b or a & ~b:
            return False
        gap = b.bit_count() - a.bit_count()
        if gap == 1:
            return True
        for i in iter_bits(b & ~a):
            z = self.close(a | (1 << i))
            if z != b:
                return False
        return True


def enumerate_ideal(extents: ClosureFamily,
                    bound: int | None = DEFAULT_ENUMERATION_BOUND) -> list[ClosureFamily]:
    """Every sub-closure-system of the extents, smallest families first.

    Brute force over subfamilies, so the extent count is gated by
    `bound`; pass a larger bound (or None) to force bigger inputs.
    """
    lat = IdealLattice(extents, bound)
    return [lat.family(f) for f in lat.elements()]


def covers(lower: ClosureFamily, upper: ClosureFamily) -> bool:
    """Whether `upper` covers `lower` in the containment order.

    Holds exactly when `upper` adds a single set that is meet-irreducible
    within `upper`.
    """
    if lower.order != upper.order:
        raise InvalidFamilyError("families live over different ground orders")
    low = set(lower.member_masks)
    up = set(upper.member_masks)
    if not low <= up:
        return False
    added = up - low
    if len(added) != 1:
        return False
    a = added.pop()
    return a in _meet_irreducible_members(up, upper.full_mask)


# ---------------------------------------------------------------------------
# neutrality


def is_neutral(r: ClosureFamily, extents: ClosureFamily) -> bool:
    """Triple test for neutrality of an ideal element.

    For every incomparable extent pair (A, B) with C their intersection,
    the family must contain none or all of A, B, C.
    """
    _require_subfamily(r, extents)
    members = set(r.member_masks)
    masks = extents.member_masks
    for i, a in enumerate(masks):
        for b in masks[i + 1:]:
            if is_subset(a, b) or is_subset(b, a):
                continue
            c = a & b
            inside = (a in members) + (b in members) + (c in members)
            if inside not in (0, 3):
                return False
    return True


def neutral_elements(extents: ClosureFamily,
                     bound: int | None = DEFAULT_ENUMERATION_BOUND) -> list[ClosureFamily]:
    """All ideal elements passing the triple test, smallest first."""
    lat = IdealLattice(extents, bound)
    members_of = lat.masks
    out = []
    for fmask in lat.elements():
        fam_members = {members_of[i] for i in iter_bits(fmask)}
        if _triple_rule_fixpoint(fam_members, extents):
            out.append(lat.family(fmask))
    return out


def _triple_rule_fixpoint(members: set[int], extents: ClosureFamily) -> bool:
    """True when the triple rule adds nothing, i.e. the seed is a fixpoint."""
    masks = extents.member_masks
    for i, a in enumerate(masks):
        for b in masks[i + 1:]:
            if is_subset(a, b) or is_subset(b, a):
                continue
            c = a & b
            inside = (a in members) + (b in members) + (c in members)
            if inside not in (0, 3):
                return False
    return True


# ---------------------------------------------------------------------------
# structural property report


@dataclass(frozen=True)
class PropertyCheck:
    name: str
    passed: bool
    witness: str | None = None


@dataclass(frozen=True)
class IdealPropertyReport:
    extent_count: int
    ideal_size: int
    atom_count: int
    cover_pair_count: int
    meet_irreducible_count: int
    checks: tuple[PropertyCheck, ...]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> PropertyCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def rows(self) -> list[tuple[str, str, str]]:
        return [(c.name, "pass" if c.passed else "fail", c.witness or "")
                for c in self.checks]

    def to_dict(self) -> dict:
        return {
            "extent_count": self.extent_count,
            "ideal_size": self.ideal_size,
            "atom_count": self.atom_count,
            "cover_pair_count": self.cover_pair_count,
            "meet_irreducible_count": self.meet_irreducible_count,
            "checks": [{"name": c.name, "passed": c.passed,
                        "witness": c.witness} for c in self.checks],
        }


def property_suite(extents: ClosureFamily,
                   bound: int | None = DEFAULT_ENUMERATION_BOUND) -> IdealPropertyReport:
    """Verify the structural laws of the ideal by exhaustive computation.

    Checks join-semidistributivity, lower semimodularity, their
    conjunction, join-pseudocomplements, cardinality ranking, and
    atomisticity, reporting a witness for any failure.
    """
    lat = IdealLattice(extents, bound)
    elems = lat.elements()
    pos = {f: k for k, f in enumerate(elems)}
    top = lat.top

    def describe(fmask: int) -> str:
        fam = lat.family(fmask)
        return "{" + ", ".join(render_object_set(m, fam.order)
                               for m in fam.member_masks) + "}"

    # ranked by cardinality: every cover pair differs by exactly one member
    ranked_witness = None
    for x in elems:
        if ranked_witness:
            break
        for y in elems:
            if x == y or x & ~y:
                continue
            if y.bit_count() - x.bit_count() >= 2 and lat.covers(x, y):
                ranked_witness = f"cover gap between {describe(x)} and {describe(y)}"
                break
    ranked = PropertyCheck("ranked_by_cardinality", ranked_witness is None,
                           ranked_witness)

    def is_cover(a: int, b: int) -> bool:
        if ranked.passed:
            return is_subset(a, b) and b.bit_count() - a.bit_count() == 1
        return lat.covers(a, b)

    # join semidistributivity via group infima
    jsd_witness = None
    for x in elems:
        groups: dict[int, int] = {}
        for y in elems:
            v = lat.join(x, y)
            groups[v] = groups.get(v, ~0) & y
        for v, inf in groups.items():
            if lat.join(x, inf & top) != v:
                jsd_witness = (f"join over {describe(x)} not semidistributive "
                               f"at value {describe(v)}")
                break
        if jsd_witness:
            break
    jsd = PropertyCheck("join_semidistributive", jsd_witness is None, jsd_witness)

    # lower semimodularity
    lsm_witness = None
    for i, x in enumerate(elems):
        if lsm_witness:
            break
        for y in elems:
            if x == y or is_subset(x, y) or is_subset(y, x):
                continue
            if is_cover(x, lat.join(x, y)) and not is_cover(x & y, y):
                lsm_witness = f"{describe(x)} against {describe(y)}"
                break
    lsm = PropertyCheck("lower_semimodular", lsm_witness is None, lsm_witness)

    meet_dist = PropertyCheck(
        "meet_distributive", jsd.passed and lsm.passed,
        None if jsd.passed and lsm.passed else
        (jsd.witness or lsm.witness))

    # join pseudocomplements
    jpc_witness = None
    for x in elems:
        saturating = [y for y in elems if lat.join(x, y) == top]
        least = top
        for y in saturating:
            least &= y
        if lat.join(x, least) != top:
            jpc_witness = f"no least join complement for {describe(x)}"
            break
    jpc = PropertyCheck("join_pseudocomplemented", jpc_witness is None, jpc_witness)

    # atomistic: each element is the join of the atoms below it
    atoms = [f for f in elems if f.bit_count() == 2]
    atomistic_witness = None
    for x in elems:
        acc = lat.bottom
        for a in atoms:
            if is_subset(a, x):
                acc = lat.join(acc, a)
        if acc != x:
            atomistic_witness = f"{describe(x)} exceeds the join of its atoms"
            break
    atomistic = PropertyCheck("atomistic", atomistic_witness is None,
                              atomistic_witness)

    return IdealPropertyReport(
        extent_count=lat.e,
        ideal_size=len(elems),
        atom_count=len(atoms),
        cover_pair_count=len(extent_cover_pairs(extents)),
        meet_irreducible_count=len(meet_irreducibles(extents)),
        checks=(jsd, lsm, meet_dist, jpc, ranked, atomistic),
    )
