"""
Subgroup lattices from group specs
==================================

Build a few small groups, enumerate their subgroups and look at the
Hasse diagram.
"""

from dismantlable import build_lattice, group, to_dot

# a spec string names a group; D:12 is the dihedral group of order 12
g = group("D:12")
lat = build_lattice(g)
print(g, "has", len(lat), "subgroups")

# nodes are sorted by size, so the trivial group comes first
for i, h in enumerate(lat.nodes):
    above = ", ".join(lat.nodes[j].label(g) for j in lat.covers[i])
    print(f"{h.label(g):<16} covered by {above or '-'}")

# the same diagram as DOT, ready for graphviz
print(to_dot(lat, g, name="D:12"))

# counts for a few more groups
for spec in ("Z:16", "Q:8", "A:4", "S:4", "A:5"):
    print(f"{spec:>5}: {len(build_lattice(group(spec))):3d} subgroups")
