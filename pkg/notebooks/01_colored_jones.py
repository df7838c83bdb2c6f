"""
Colored Jones polynomials by cabling
====================================

Cable a diagram, evaluate the framed Jones polynomial of each cable and
combine them with signed binomial weights.
"""

from khcable import CORPUS, cable_diagram, colored_jones, jones_framed
from khcable.laurent import quantum_integer

# the 0-framed unknot colored by n is the quantum integer [n+1]
for n in range(5):
    print(n, colored_jones(CORPUS["unknot"], (n,)), quantum_integer(n + 1))

# cables grow fast: a crossing between widths a and b becomes a*b crossings
trefoil = CORPUS["trefoil"]
for m in range(1, 4):
    print(f"trefoil {m}-cable:", cable_diagram(trefoil, (m,)).n_crossings, "crossings")

print("J_1(trefoil) =", jones_framed(trefoil))
print("J_2(trefoil) =", colored_jones(trefoil, (2,)))

# each component of a link gets its own color
print("J_(2,1)(hopf) =", colored_jones(CORPUS["hopf"], (2, 1)))
