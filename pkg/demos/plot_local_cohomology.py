"""
Local cohomology of the plane
=============================

The stable Koszul complex on x, y computes H^i_m(Q[x,y]).  Only H^2 is
nonzero and it is spanned by the monomials x^-a y^-b.
"""

from cousinet import stable_koszul_lcoh
from cousinet.atcat import P2
from cousinet.polymod import FGModule

P = FGModule.free(P2, [0])
lc = stable_koszul_lcoh(P, (0, 12))

for i in sorted(lc.modules):
    print(f"H^{i}:", [lc.modules[i].dim(d) for d in range(0, 13, 2)])

# the count of pairs a, b >= 1 with 2(a + b) = d
print("monomials:", [max(0, d // 2 - 1) for d in range(0, 13, 2)])

###############################################################################
# A finite length module is its own torsion, so only H^0 survives.

k = FGModule.residue_field(P2)
print({i: [M.dim(d) for d in range(-4, 5)] for i, M in stable_koszul_lcoh(k, (-4, 4)).modules.items()})
