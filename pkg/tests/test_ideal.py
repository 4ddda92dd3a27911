from __future__ import annotations

import random

import pytest

from scalemeasures.context import FormalContext
from scalemeasures.errors import BoundExceededError, InvalidFamilyError
from scalemeasures.families import ClosureFamily, extent_family
from scalemeasures.ideal import (IdealLattice, count_meet_irreducibles,
                                 covers, enumerate_ideal, ideal_join,
                                 ideal_meet, induced_closure_operator,
                                 is_neutral, join_complement,
                                 join_irreducibles, meet_irreducibles,
                                 model_family, neutral_elements,
                                 property_suite)

import oracles
from conftest import random_context


def chain_context(n: int) -> FormalContext:
    """Objects g0..g(n-1); gi has attributes m0..mi. Extents form a chain."""
    objects = [f"g{i}" for i in range(n)]
    attributes = [f"m{j}" for j in range(n)]
    incidence = [(f"g{i}", f"m{j}") for i in range(n) for j in range(i + 1)]
    return FormalContext(objects, attributes, incidence, name=f"chain{n}")


def tiny_extents(tiny) -> ClosureFamily:
    return extent_family(tiny)


def test_tiny_frozen_counts(tiny):
    ext = extent_family(tiny)
    assert len(ext) == 4
    ideal = enumerate_ideal(ext)
    assert len(ideal) == 7
    assert len(join_irreducibles(ext)) == 3
    assert count_meet_irreducibles(ext) == 4
    assert len(meet_irreducibles(ext)) == 4


def test_enumeration_matches_brute_force():
    rng = random.Random(11)
    for _ in range(40):
        ctx = random_context(rng, max_objects=4, max_attributes=5)
        ext = extent_family(ctx)
        expected = oracles.brute_force_ideal(ext)
        got = {oracles.family_set(f) for f in enumerate_ideal(ext)}
        assert got == expected


def test_enumeration_bound():
    ctx = chain_context(5)
    ext = extent_family(ctx)
    with pytest.raises(BoundExceededError):
        enumerate_ideal(ext, bound=3)
    assert len(enumerate_ideal(ext, bound=None)) == 2 ** (len(ext) - 1)


def test_chain_ideal_is_a_powerset():
    # Every subfamily of a chain is intersection-closed.
    for n in (2, 3, 4):
        ext = extent_family(chain_context(n))
        assert len(enumerate_ideal(ext)) == 2 ** (len(ext) - 1)


def test_atoms_are_the_two_element_families(tiny):
    ext = extent_family(tiny)
    atoms = join_irreducibles(ext)
    poset = oracles.brute_force_ideal(ext)
    assert {oracles.family_set(a) for a in atoms} == oracles.atoms_of(poset)
    for fam in atoms:
        assert len(fam) == 2
        assert frozenset(tiny.objects) in fam.member_set()


def test_model_family_frozen(tiny):
    mf = model_family(extent_family(tiny), frozenset({"3"}), frozenset({"1"}))
    assert mf.member_set() == {frozenset({"1", "3"}),
                               frozenset({"1", "2", "3"})}


def test_meet_irreducibles_against_unique_upper_cover():
    rng = random.Random(12)
    for _ in range(30):
        ctx = random_context(rng, max_objects=4, max_attributes=5)
        ext = extent_family(ctx)
        poset = oracles.brute_force_ideal(ext)
        expected = oracles.meet_irreducible_elements(poset)
        got = {oracles.family_set(d.family) for d in meet_irreducibles(ext)}
        assert got == expected
        assert count_meet_irreducibles(ext) == len(expected)


def test_meet_irreducible_descriptors_carry_cover_pairs(tiny):
    ext = extent_family(tiny)
    for d in meet_irreducibles(ext):
        assert d.is_meet_irreducible
        lower, upper = d.generator
        assert lower < upper
        assert lower in ext.member_set()
        assert upper in ext.member_set()
        # the family is exactly the extents respecting lower -> witness
        assert d.family.is_subfamily(ext)


def test_meet_and_join_against_poset():
    rng = random.Random(13)
    for _ in range(25):
        ctx = random_context(rng, max_objects=4, max_attributes=4)
        ext = extent_family(ctx)
        ideal = enumerate_ideal(ext)
        poset = {oracles.family_set(f) for f in ideal}
        for _ in range(10):
            a = rng.choice(ideal)
            b = rng.choice(ideal)
            m = ideal_meet(a, b)
            j = ideal_join(a, b)
            assert oracles.family_set(m) == oracles.poset_meet(
                oracles.family_set(a), oracles.family_set(b))
            assert oracles.family_set(j) == oracles.poset_join(
                poset, oracles.family_set(a), oracles.family_set(b))


def test_cover_characterization():
    rng = random.Random(14)
    for _ in range(20):
        ctx = random_context(rng, max_objects=4, max_attributes=4)
        ext = extent_family(ctx)
        ideal = enumerate_ideal(ext)
        poset = {oracles.family_set(f) for f in ideal}
        for a in ideal:
            for b in ideal:
                expected = oracles.covers_in(poset, oracles.family_set(a),
                                             oracles.family_set(b))
                assert covers(a, b) == expected


def test_join_complement_is_a_minimal_complement():
    rng = random.Random(15)
    for _ in range(25):
        ctx = random_context(rng, max_objects=4, max_attributes=4)
        ext = extent_family(ctx)
        ideal = enumerate_ideal(ext)
        poset = {oracles.family_set(f) for f in ideal}
        top = oracles.family_set(ext)
        for r in ideal:
            c = join_complement(r, ext)
            cset = oracles.family_set(c)
            assert oracles.poset_join(poset, oracles.family_set(r), cset) == top
            minimal = oracles.minimal_join_complements(poset,
                                                       oracles.family_set(r))
            assert cset in minimal


def test_induced_operators_form_a_dual_isomorphism():
    rng = random.Random(16)
    for _ in range(20):
        ctx = random_context(rng, max_objects=4, max_attributes=4)
        ext = extent_family(ctx)
        ideal = enumerate_ideal(ext)
        ground = frozenset(ctx.objects)
        tables = {}
        for fam in ideal:
            close = induced_closure_operator(fam)
            table = tuple((s, close(s))
                          for s, _ in oracles.closure_table(
                              oracles.family_set(fam), ground))
            assert table == oracles.closure_table(oracles.family_set(fam),
                                                  ground)
            tables[oracles.family_set(fam)] = table
        # bijective: distinct families induce distinct operators
        assert len(set(tables.values())) == len(ideal)
        # antitone: bigger family, pointwise smaller closure
        fams = list(tables)
        for a in fams:
            for b in fams:
                if a <= b:
                    assert all(cb <= ca for (_, ca), (_, cb)
                               in zip(tables[a], tables[b]))


def test_neutrality_agrees_with_median_oracle():
    rng = random.Random(17)
    checked = 0
    while checked < 15:
        ctx = random_context(rng, max_objects=4, max_attributes=4)
        ext = extent_family(ctx)
        ideal = enumerate_ideal(ext)
        if len(ideal) > 40:
            continue
        checked += 1
        poset = {oracles.family_set(f) for f in ideal}
        neutral = {oracles.family_set(f) for f in neutral_elements(ext)}
        for fam in ideal:
            fset = oracles.family_set(fam)
            assert is_neutral(fam, ext) == (fset in neutral)
            assert (fset in neutral) == oracles.is_neutral_by_median(
                poset, fset)


def test_neutrality_agrees_with_triple_generation_on_small_ideals():
    rng = random.Random(18)
    checked = 0
    while checked < 8:
        ctx = random_context(rng, max_objects=4, max_attributes=4)
        ext = extent_family(ctx)
        ideal = enumerate_ideal(ext)
        if not 3 <= len(ideal) <= 14:
            continue
        checked += 1
        poset = {oracles.family_set(f) for f in ideal}
        for fam in ideal:
            fset = oracles.family_set(fam)
            assert is_neutral(fam, ext) == oracles.is_neutral_by_definition(
                poset, fset)


def test_tiny_neutral_elements_frozen(tiny):
    ext = extent_family(tiny)
    neutral = neutral_elements(ext)
    got = {oracles.family_set(f) for f in neutral}
    bottom = frozenset({frozenset({"1", "2", "3"})})
    assert got == {bottom, oracles.family_set(ext)}


def test_chain_everything_neutral():
    ext = extent_family(chain_context(4))
    ideal = enumerate_ideal(ext)
    neutral = neutral_elements(ext)
    assert len(neutral) == len(ideal)


def test_property_suite_on_tiny(tiny):
    report = property_suite(extent_family(tiny))
    assert report.extent_count == 4
    assert report.ideal_size == 7
    assert report.atom_count == 3
    assert report.meet_irreducible_count == 4
    assert report.all_passed
    names = {c.name for c in report.checks}
    assert names == {"join_semidistributive", "lower_semimodular",
                     "meet_distributive", "join_pseudocomplemented",
                     "ranked_by_cardinality", "atomistic"}


def test_property_suite_random():
    rng = random.Random(19)
    done = 0
    while done < 25:
        ctx = random_context(rng, max_objects=5, max_attributes=5)
        ext = extent_family(ctx)
        if len(ext) > 10:
            continue
        ideal = enumerate_ideal(ext)
        if len(ideal) > 64:
            continue
        done += 1
        report = property_suite(ext)
        assert report.all_passed, [
            (c.name, c.witness) for c in report.checks if not c.passed]
        assert report.ideal_size == len(ideal)


def test_property_suite_bound():
    ctx = chain_context(6)
    with pytest.raises(BoundExceededError):
        property_suite(extent_family(ctx), bound=4)


def test_ideal_lattice_engine_roundtrip(tiny):
    ext = extent_family(tiny)
    lat = IdealLattice(ext)
    elems = lat.elements()
    assert len(elems) == 7
    assert lat.bottom == elems[0]
    assert lat.top == elems[-1]
    for f in elems:
        assert lat.family_mask(lat.family(f)) == f
        assert lat.is_closed(f)


def test_mismatched_orders_rejected(tiny):
    ext = extent_family(tiny)
    other = ClosureFamily.from_sets(("x",), [frozenset({"x"})])
    with pytest.raises(InvalidFamilyError):
        ideal_meet(ext, other)
