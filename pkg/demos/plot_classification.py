"""
Predicted against computed membership
=====================================

The structural rules predict whether L(G) is dismantlable; the lattice
computation decides it.  The two are compared on a handful of groups and
then every subgroup class of S4 is surveyed.
"""

from dismantlable import analyze, group
from dismantlable.cli import cmd_survey, format_survey

specs = ["Z:12", "Ab:2,2,2", "Q:8", "Q:8xZ:3", "D:18", "D:20", "M:3,3", "A:4", "S:4", "SDP:7,3,1,2"]
for spec in specs:
    v = analyze(group(spec)).verdict
    rule = v.predicted.rule or "-"
    print(f"{spec:>12}  predicted {v.predicted.verdict:<8} ({rule:<24}) computed {v.computed.verdict}")

# A4 sits inside S4: dismantlable, yet not metacyclic
print(format_survey(cmd_survey("S:4")))
