"""
Dismantling and crowns
======================

Peel doubly irreducible subgroups off a lattice one at a time.  When the
process gets stuck, a crown explains why.
"""

from dismantlable import build_lattice, dismantle, find_crown, group
from dismantlable.algorithms import DismantlingWitness, node_label

for spec in ("Q:16", "S:4"):
    g = group(spec)
    lat = build_lattice(g)
    result = dismantle(lat)
    if isinstance(result, DismantlingWitness):
        # any prefix of this order can be removed and a sublattice is left
        print(spec, "dismantles:", ", ".join(node_label(lat, i) for i in result.elimination))
    else:
        print(spec, "gets stuck with", len(result.stuck), "subgroups left")
        crown = find_crown(lat)
        for x, y in zip(crown.xs, crown.ys):
            print("   ", node_label(lat, x), "<=", node_label(lat, y))

# the boolean lattice 2^3 is the smallest stuck modular lattice
from dismantlable.algorithms import find_boolean_cube, lattice_laws

g = group("Ab:2,2,2")
lat = build_lattice(g)
print("Z2^3 modular:", lattice_laws(lat).modular, " cube:", find_boolean_cube(lat))
