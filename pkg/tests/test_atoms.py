"""Atomicity, complete atom enumeration, length profiles, monoid Davenport."""

import random
from itertools import product

import pytest

from pmzs import (
    AtomCache,
    ResourceLimitError,
    Sequence,
    atom_length_profile,
    davenport,
    davenport_monoid,
    divides_pm,
    enumerate_atoms,
    is_atom,
    make_group,
    parse_group,
    parse_subset,
)
from helpers import brute_factorization_lengths, brute_is_atom, brute_is_pm_zero_sum, small_group_list


def test_is_atom_examples():
    g8 = make_group([8])
    e, e3 = g8.element(1), g8.element(3)
    assert is_atom(Sequence.of(g8, e, e))
    assert is_atom(Sequence.of(g8, e3, e3))
    assert is_atom(Sequence.of(g8, e, e, e, e3))
    assert not is_atom(Sequence.from_items(g8, [(e, 4)]))
    g5 = make_group([5])
    assert is_atom(Sequence.from_items(g5, [(g5.element(1), 5)]))
    assert not is_atom(Sequence.from_items(g5, [(g5.element(1), 4)]))
    assert not is_atom(Sequence.empty(g5))


def test_zero_is_prime_atom():
    g4 = make_group([4])
    zero = g4.zero()
    assert is_atom(Sequence.of(g4, zero))
    assert not is_atom(Sequence.of(g4, zero, zero))
    assert not is_atom(Sequence.of(g4, zero, g4.element(1), g4.element(1)))


def test_is_atom_matches_brute_force():
    rng = random.Random(5)
    for group in small_group_list(8):
        for _ in range(12):
            terms = [group.element_at(rng.randrange(group.order)) for _ in range(rng.randrange(1, 5))]
            seq = Sequence.of(group, *terms)
            assert is_atom(seq) == brute_is_atom(seq), str(seq)


def test_enumerate_atoms_single_generator_c5():
    g5 = make_group([5])
    atoms = enumerate_atoms(g5, [g5.element(1)])
    assert sorted(atoms.lengths()) == [2, 5]
    assert {a for a in atoms.sequences()} == {
        Sequence.from_items(g5, [(g5.element(1), 2)]),
        Sequence.from_items(g5, [(g5.element(1), 5)]),
    }


def test_enumerate_atoms_c8_pair():
    g8 = make_group([8])
    atoms = enumerate_atoms(g8, parse_subset(g8, "[(1),(3)]"))
    expected = {
        Sequence.from_items(g8, [(g8.element(1), 2)]),
        Sequence.from_items(g8, [(g8.element(3), 2)]),
        Sequence.from_items(g8, [(g8.element(1), 3), (g8.element(3), 1)]),
        Sequence.from_items(g8, [(g8.element(1), 1), (g8.element(3), 3)]),
    }
    assert set(atoms.sequences()) == expected


def test_enumerate_atoms_even_construction_c4x4():
    g = make_group([4, 4])
    e0, e1, e2 = g.element(2, 2), g.element(1, 0), g.element(0, 1)
    atoms = enumerate_atoms(g, [e0, e1, e2])
    expected = {
        Sequence.from_items(g, [(e0, 2)]),
        Sequence.from_items(g, [(e1, 2)]),
        Sequence.from_items(g, [(e2, 2)]),
        Sequence.from_items(g, [(e0, 1), (e1, 2), (e2, 2)]),
    }
    assert set(atoms.sequences()) == expected


def test_zero_stripped_and_flagged():
    g5 = make_group([5])
    atoms = enumerate_atoms(g5, [g5.zero(), g5.element(1)])
    assert atoms.includes_zero
    assert all(not g.is_zero for g in atoms.ground)
    assert sorted(atoms.lengths()) == [2, 5]


def test_atom_length_profile_goldens():
    g5 = make_group([5])
    prof = atom_length_profile(enumerate_atoms(g5, [g5.element(1)]))
    assert prof.max_length == 5 and prof.gcd_lengths_minus_2 == 3

    g17 = make_group([17])
    prof = atom_length_profile(enumerate_atoms(g17, parse_subset(g17, "[(1),(4)]")))
    assert prof.gcd_lengths_minus_2 == 3

    g16 = make_group([2, 2, 2, 2])
    coset = [g16.element(1, a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)]
    prof = atom_length_profile(enumerate_atoms(g16, coset))
    assert prof.gcd_lengths_minus_2 == 2


def test_profile_degenerate_cases():
    g5 = make_group([5])
    only_zero = enumerate_atoms(g5, [g5.zero()])
    prof = atom_length_profile(only_zero)
    assert prof.max_length == 1 and prof.gcd_lengths_minus_2 == 0
    empty = enumerate_atoms(g5, [])
    prof = atom_length_profile(empty)
    assert prof.max_length == 0 and prof.gcd_lengths_minus_2 == 0


def test_atom_lengths_within_davenport_bound():
    for group in small_group_list(9):
        nonzero = [group.element_at(i) for i in range(1, group.order)]
        atoms = enumerate_atoms(group, nonzero)
        bound = davenport(group)
        assert all(length <= bound for length in atoms.lengths())


def test_completeness_every_pm_zero_sum_factors():
    # every signed zero-sum sequence within the bound factors into listed atoms
    for spec, subset_literal in [("C5", "[(1),(2)]"), ("C8", "[(1),(3)]"), ("C2xC4", "[(1,0),(0,1),(1,2)]")]:
        group = parse_group(spec)
        subset = parse_subset(group, subset_literal)
        atoms = enumerate_atoms(group, subset)
        vectors = atoms.vectors
        indices = [g.index for g in atoms.ground]
        for combo in product(*[range(atoms.bound + 1) for _ in indices]):
            if not 2 <= sum(combo) <= atoms.bound:
                continue
            seq = Sequence(group, tuple((i, m) for i, m in zip(indices, combo) if m))
            if brute_is_pm_zero_sum(seq):
                lengths = brute_factorization_lengths(combo, vectors)
                assert lengths, f"{seq} over {spec} does not factor"


def test_no_atom_divides_another():
    for spec, subset_literal in [("C8", "[(1),(3)]"), ("C17", "[(1),(4)]"), ("C9", "[(1),(3)]")]:
        group = parse_group(spec)
        atoms = enumerate_atoms(group, parse_subset(group, subset_literal))
        seqs = atoms.sequences()
        for a in seqs:
            for b in seqs:
                if a != b:
                    assert not divides_pm(a, b), f"{a} divides {b}"


def test_single_generator_laws():
    for group in small_group_list(12):
        for i in range(1, group.order):
            g = group.element_at(i)
            atoms = enumerate_atoms(group, [g])
            d = g.order()
            if d % 2 == 1:
                assert sorted(atoms.lengths()) == [2, d]
            else:
                assert sorted(atoms.lengths()) == [2]


def test_davenport_monoid_values():
    for spec, expected in [("C5", 5), ("C8", 5), ("C2xC4", 4), ("C6", 4), ("C10", 6)]:
        group = parse_group(spec)
        nonzero = [group.element_at(i) for i in range(1, group.order)]
        assert davenport_monoid(group, nonzero) == expected, spec
        if spec in ("C5", "C8"):
            assert davenport_monoid(group, nonzero, reduce_signs=False) == expected


def test_resource_caps():
    g = make_group([3, 3, 3])  # 26 nonzero elements
    nonzero = [g.element_at(i) for i in range(1, g.order)]
    with pytest.raises(ResourceLimitError):
        enumerate_atoms(g, nonzero)
    g31 = make_group([31])
    with pytest.raises(ResourceLimitError):
        enumerate_atoms(g31, [g31.element(1)])  # bound 31 > default 20


def test_atom_cache_round_trip(tmp_path):
    g8 = make_group([8])
    subset = parse_subset(g8, "[(1),(3)]")
    cache = AtomCache(tmp_path)
    cold = enumerate_atoms(g8, subset, cache=cache)
    warm = enumerate_atoms(g8, subset, cache=cache)
    assert cold == warm
    assert list(tmp_path.glob("atoms-*.json"))


def test_atom_set_json_round_trip():
    from pmzs.atoms import AtomSet

    g8 = make_group([8])
    atoms = enumerate_atoms(g8, parse_subset(g8, "[(1),(3)]"))
    clone = AtomSet.from_json_dict(atoms.to_json_dict())
    assert clone == atoms
