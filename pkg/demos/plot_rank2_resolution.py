"""
Resolving over the two torus
============================

Over a rank two torus the resolution is built component by component:
at the trivial subgroup, at each circle and at the whole group.  Every stage
carries a certificate, and the whole thing has length at most four.
"""

from cousinet import ext_at, inj_res_general
from cousinet.parse import parse_object

X = parse_object("f(1,(koszul(2)))", rank=2)
R = inj_res_general(X)
for s, stage in enumerate(R.I):
    print(f"I{s}:", ", ".join(f"{K}: {d}" for K, d in stage.items()))
for c in R.certificates:
    print("stage", c.stage, "phase", c.phase, "ok" if c.ok else "FAILED", c.note)
print("certified:", R.certified)

###############################################################################
# Ext from the residue field into a_1 of a Koszul dual reads off the Betti
# numbers 1, 2, 1 of the regular sequence x^2, y^2.

E = ext_at(parse_object("f(1,(k))", rank=2), parse_object("a(1,(koszul(2)))", rank=2), (-10, 10))
print(E.nonzero())
