"""
Adams E2 pages
==============

E2 = Ext(pi X, pi Y) for standard spaces.  Over the circle the page is
zero above s = 2, so d2 is the only differential that can act.
"""

from cousinet import adams_e2

for X, Y in [("S0", "S0"), ("S0", "EG+"), ("G+", "G+"), ("DS+(2)", "S(-1)")]:
    page = adams_e2(X, Y, (-6, 6))
    print(page.pretty())

###############################################################################
# The page does not depend on which injective resolution was used: a shuffled
# resolution with a contractible summand gives the same table.

a = adams_e2("DS+(3)", "EG+", (-6, 6))
b = adams_e2("DS+(3)", "EG+", (-6, 6), shuffle_seed=4)
print("same page:", a.tsv() == b.tsv())
