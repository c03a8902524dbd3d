"""
Objects over the circle group
=============================

Build a few objects (V, T, q), compare Hom computed two ways and resolve
a representation sphere.
"""

from cousinet import catalogue, hom_at, inj_res_sf_rank1, mk_a, mk_f
from cousinet.atcat import hom_by_adjunction
from cousinet.kcmod import Cyc, Dual, KcModule
from cousinet.rings import TRIVIAL1

# torsion part: a cyclic module Q[c]/c^2 on top of degree 0, plus a shifted dual
T = KcModule.of(Cyc(0, 2), Dual(3))
X = mk_f(TRIVIAL1, T)
print("X =", X)
print("T in degrees -4..6:", [T.dim(d) for d in range(-4, 7)])

###############################################################################
# Maps into a_1(I) are the same as Q[c]-maps into I.  The linear system for
# compatible pairs (theta, phi) and the adjunction agree degree by degree.

I = mk_a(TRIVIAL1, KcModule.of(Dual(0), Dual(1)))
for t in range(-4, 5):
    print(t, hom_at(X, I, t).dim, hom_by_adjunction(X, I, t))

###############################################################################
# The sphere S^{-2z} has a resolution of length at most two; the dump lists
# the stages and the matrices of the differentials.

S = catalogue("S", -2).obj
R = inj_res_sf_rank1(S)
print(R.dumps())
print("exact on [-10, 10]:", R.verify((-10, 10)))
