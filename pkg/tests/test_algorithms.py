import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dismantlable.algorithms import (Crown, DismantlingWitness, NotDismantlable, brute_force_dismantlable,
                                     crown_relations_ok, dismantle, find_boolean_cube, find_crown,
                                     has_two_incomparable_removable, is_closed, lattice_laws, removable_elements,
                                     validate_crown, verify_dismantling_witness)
from dismantlable.lattice import boolean_lattice, chain, diamond, lattice_from_covers, pentagon, random_lattice


def crown_lattice(half):
    """Bottom, x_1..x_n, y_1..y_n, top with the crown comparabilities; not dismantlable."""
    n = half
    bottom, top = 0, 2 * n + 1
    xs = list(range(1, n + 1))
    ys = list(range(n + 1, 2 * n + 1))
    covers = [(bottom, x) for x in xs] + [(y, top) for y in ys]
    for i in range(n):
        covers += [(xs[i], ys[i]), (xs[(i + 1) % n], ys[i])]
    return lattice_from_covers(2 * n + 2, covers), xs, ys


def doubly_irreducible_oracle(lat, alive):
    """At most one upper and one lower cover inside the alive subposet."""
    out = []
    for z in alive:
        ups = [b for b in alive if b != z and lat.leq[z, b]]
        downs = [b for b in alive if b != z and lat.leq[b, z]]
        up_covers = [b for b in ups if not any(c != b and lat.leq[c, b] for c in ups)]
        down_covers = [b for b in downs if not any(c != b and lat.leq[b, c] for c in downs)]
        if len(up_covers) <= 1 and len(down_covers) <= 1:
            out.append(z)
    return out


lattices = st.integers(0, 2 ** 32 - 1).map(lambda seed: random_lattice(np.random.default_rng(seed), 12))


def test_chain_and_cube_fixtures():
    assert isinstance(dismantle(chain(4)), DismantlingWitness)
    assert isinstance(dismantle(boolean_lattice(2)), DismantlingWitness)
    w = dismantle(boolean_lattice(3))
    assert isinstance(w, NotDismantlable) and len(w.stuck) == 8


def test_removable_elements_of_fixtures():
    assert removable_elements(chain(4)) == [0, 1, 2, 3]
    assert removable_elements(boolean_lattice(3)) == []
    assert removable_elements(diamond()) != []


@pytest.mark.parametrize("half", [3, 4, 5])
def test_crown_lattices_are_stuck_and_crown_found(half):
    lat, xs, ys = crown_lattice(half)
    assert isinstance(dismantle(lat), NotDismantlable)
    assert not brute_force_dismantlable(lat)
    c = find_crown(lat)
    assert c is not None and c.order == 2 * half and validate_crown(lat, c)
    assert validate_crown(lat, Crown(tuple(xs), tuple(ys)))


def test_crown_search_respects_bound():
    lat, _, _ = crown_lattice(4)
    assert find_crown(lat, 6) is None
    assert find_crown(lat, 8) is not None
    with pytest.raises(ValueError):
        find_crown(lat, 4)


def test_crown_relations_reject_bad_input():
    leq = lambda a, b: a == b
    assert not crown_relations_ok(leq, [0, 1], [2, 3])
    assert not crown_relations_ok(leq, [0, 1, 2], [3, 4, 5])   # missing comparabilities
    lat, xs, ys = crown_lattice(3)
    swapped = Crown(tuple(xs), tuple(ys[1:] + ys[:1]))
    assert not validate_crown(lat, swapped)


def test_witness_verification():
    lat = diamond()
    w = dismantle(lat)
    assert verify_dismantling_witness(lat, w)
    bad = [lat.bottom] + [z for z in range(len(lat)) if z != lat.bottom]
    assert not verify_dismantling_witness(lat, bad)
    with pytest.raises(ValueError):
        verify_dismantling_witness(lat, [0, 1])


def test_laws_on_fixtures():
    n5 = lattice_laws(pentagon())
    assert not n5.modular and not n5.distributive
    a, b, c = n5.modular_witness
    p = pentagon()
    assert p.leq[a, c]
    assert p.join[a, p.meet[b, c]] != p.meet[p.join[a, b], c]
    m3 = lattice_laws(diamond())
    assert m3.modular and not m3.distributive
    b3 = lattice_laws(boolean_lattice(3))
    assert b3.modular and b3.distributive


def test_boolean_cube_detection():
    assert find_boolean_cube(boolean_lattice(3)) is not None
    assert find_boolean_cube(boolean_lattice(2)) is None
    assert find_boolean_cube(diamond()) is None
    assert find_boolean_cube(boolean_lattice(4)) is not None


def test_oracle_cap():
    with pytest.raises(ValueError):
        brute_force_dismantlable(chain(13))


@settings(max_examples=150, deadline=None)
@given(lattices)
def test_greedy_matches_oracle(lat):
    assert isinstance(dismantle(lat), DismantlingWitness) == brute_force_dismantlable(lat)


@settings(max_examples=150, deadline=None)
@given(lattices)
def test_removable_means_doubly_irreducible(lat):
    alive = list(range(len(lat)))
    assert removable_elements(lat) == doubly_irreducible_oracle(lat, alive)


@settings(max_examples=100, deadline=None)
@given(lattices)
def test_dismantling_iff_no_crown(lat):
    w = dismantle(lat)
    c = find_crown(lat)
    if isinstance(w, DismantlingWitness):
        assert c is None and verify_dismantling_witness(lat, w)
    else:
        assert c is not None and validate_crown(lat, c)
        assert removable_elements(lat, w.stuck) == []
        assert is_closed(lat, w.stuck)


@settings(max_examples=100, deadline=None)
@given(lattices)
def test_dismantlable_non_chains_have_two_incomparable_removable(lat):
    if isinstance(dismantle(lat), DismantlingWitness) and not lat.is_chain():
        assert has_two_incomparable_removable(lat)


@settings(max_examples=60, deadline=None)
@given(lattices)
def test_laws_match_triple_scan(lat):
    n = len(lat)
    m, j, leq = lat.meet, lat.join, lat.leq
    modular = all(j[a, m[b, c]] == m[j[a, b], c]
                  for a, b, c in itertools.product(range(n), repeat=3) if leq[a, c])
    distributive = all(m[a, j[b, c]] == j[m[a, b], m[a, c]] for a, b, c in itertools.product(range(n), repeat=3))
    laws = lattice_laws(lat)
    assert (laws.modular, laws.distributive) == (modular, distributive)


@settings(max_examples=60, deadline=None)
@given(lattices)
def test_modular_lattices_stuck_iff_cube(lat):
    if lattice_laws(lat).modular:
        stuck = not isinstance(dismantle(lat), DismantlingWitness)
        assert stuck == (find_boolean_cube(lat) is not None) == (find_crown(lat, 6) is not None)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_small_lattices_always_dismantlable(seed):
    lat = random_lattice(np.random.default_rng(seed), 7)
    assert isinstance(dismantle(lat), DismantlingWitness)
