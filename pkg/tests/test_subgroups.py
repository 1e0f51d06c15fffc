import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dismantlable import group
from dismantlable.groups import GroupError, validate_group
from dismantlable.subgroups import (SubgroupLimitExceeded, SubgroupSet, all_subgroups, brute_force_subgroups,
                                    build_lattice, conjugate_subgroup, cyclic_subgroups, frattini_subgroup,
                                    generated_subgroup, is_normal, is_subgroup, subgroup_as_group,
                                    subgroup_conjugacy_classes, to_dot)

SMALL = ["Z:1", "Z:8", "Ab:2,2", "Ab:2,2,2", "Ab:4,2", "Ab:4,4", "D:8", "Q:8", "D:12", "D:16", "Q:16", "QD:16",
         "M:2,4", "A:4", "S:3", "Z:15", "S:4", "D:24", "Q:32", "SDP:7,3,1,2", "Ham:1", "Ab:3,3"]


@pytest.mark.parametrize("spec", SMALL)
def test_enumeration_matches_oracle(spec):
    g = group(spec)
    assert [s.bits for s in all_subgroups(g)] == [s.bits for s in brute_force_subgroups(g)]


@pytest.mark.parametrize("spec, count", [("S:3", 6), ("A:4", 10), ("S:4", 30), ("Q:8", 6), ("D:8", 10),
                                         ("Ab:2,2,2", 16), ("A:5", 59), ("Z:12", 6)])
def test_known_counts(spec, count):
    assert len(all_subgroups(group(spec))) == count


def test_s4_has_eleven_conjugacy_classes():
    g = group("S:4")
    lat = build_lattice(g)
    classes = subgroup_conjugacy_classes(g, lat)
    assert len(classes) == 11
    assert sorted(len(c) for c in classes) == [1, 1, 1, 1, 3, 3, 3, 3, 4, 4, 6]


def test_subgroup_limit():
    with pytest.raises(SubgroupLimitExceeded):
        all_subgroups(group("Ab:2,2,2,2"), limit=20)


def test_every_node_is_a_subgroup_and_order_is_inclusion():
    g = group("D:12")
    lat = build_lattice(g)
    assert len(lat) == 16
    for i, h in enumerate(lat.nodes):
        assert is_subgroup(g, h)
        for j, k in enumerate(lat.nodes):
            assert lat.leq[i, j] == (h.bits & k.bits == h.bits)
    assert lat.nodes[lat.bottom].size == 1 and lat.nodes[lat.top].size == 12


def normal_by_orbit(g, h):
    """Independent normality test: h equals each of its conjugates as a set."""
    members = set(h.members().tolist())
    for x in range(g.order):
        xi = int(g.inverse[x])
        if {g.mul(x, m, xi) for m in members} != members:
            return False
    return True


@pytest.mark.parametrize("spec", ["S:4", "D:12", "Q:8", "A:4", "SDP:7,3,1,2", "M:2,4"])
def test_is_normal_against_orbit_oracle(spec):
    g = group(spec)
    for h in all_subgroups(g):
        assert is_normal(g, h) == normal_by_orbit(g, h)


def test_is_normal_rejects_non_subgroups():
    g = group("S:3")
    x = g.find("(1 2 3)")
    with pytest.raises(GroupError):
        is_normal(g, SubgroupSet(1 | 1 << x, g.order))


@pytest.mark.parametrize("spec, index", [("D:8", 4), ("Q:8", 4), ("Z:8", 2), ("Ab:2,2,2", 8), ("M:2,4", 4)])
def test_frattini_index(spec, index):
    g = group(spec)
    lat = build_lattice(g)
    assert g.order // frattini_subgroup(g, lat).size == index


def test_conjugate_subgroup_is_a_subgroup_of_same_size():
    g = group("S:4")
    h = generated_subgroup(g, [g.find("(1 2)")])
    for x in range(g.order):
        k = conjugate_subgroup(g, h, x)
        assert k.size == h.size and is_subgroup(g, k)


def test_subgroup_as_group_validates():
    g = group("S:4")
    for h in all_subgroups(g):
        sub = subgroup_as_group(g, h)
        assert sub.order == h.size and validate_group(sub).ok


def test_labels_use_generators():
    g = group("S:4")
    h = generated_subgroup(g, [g.find("(1 2 3 4)")])
    assert h.label(g) == "4:<(1 2 3 4)>"


def test_dot_export_is_stable_and_complete():
    g = group("D:12")
    lat = build_lattice(g)
    text = to_dot(lat, g, name="D:12")
    assert text == to_dot(build_lattice(group("D:12")), group("D:12"), name="D:12")
    assert text.startswith('digraph "D:12" {') and "rankdir=BT" in text
    assert text.count("[label=") == 16
    assert text.count("->") == sum(len(c) for c in lat.covers)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["S:4", "D:16", "A:4", "Ab:4,2", "Q:16", "SDP:7,3,1,2"]), st.data())
def test_generated_subgroup_properties(spec, data):
    g = group(spec)
    seed = data.draw(st.lists(st.integers(0, g.order - 1), max_size=3))
    h = generated_subgroup(g, seed)
    assert is_subgroup(g, h)
    assert g.order % h.size == 0                     # Lagrange
    assert all(h.bits >> s & 1 for s in seed)
    # smallest: contained in every subgroup holding the seed
    for k in all_subgroups(g):
        if all(k.bits >> s & 1 for s in seed):
            assert h.bits & k.bits == h.bits


def test_cyclic_subgroups_are_cyclic():
    g = group("D:12")
    for c in cyclic_subgroups(g):
        assert int(g.element_order[c.members()].max()) == c.size
