"""
The cabling bicomplex
=====================

Columns are indexed by k-pairings of the cable strands; each column holds the
Khovanov complexes of the contracted cables.  Its Euler characteristic is the
colored Jones polynomial.
"""

from khcable import CORPUS
from khcable.bicomplex import (
    build_bicomplex,
    check_laws,
    euler_identity,
    iterated_homology,
)
from khcable.moves import apply_framed_r1, r1_sites

trefoil = CORPUS["trefoil"]
b = build_bicomplex(trefoil, (2,))
for k, col in sorted(b.columns.items()):
    print(f"k={k}: pairings {col}, crossings {[b.contractions[s].diagram.n_crossings for s in col]}")

for name, rep in check_laws(b).items():
    print(f"{name:12s} ok={rep.ok} checked={rep.checked}")

e = euler_identity(trefoil, (2,), bicomplex=b)
print("chain    ", e.chain)
print("homology ", e.homology)
print("colored  ", e.colored_jones)

# contraction maps are homogeneous; they survive only in degree zero
print("degrees:", sorted(set(b.degrees.values())))

# a writhe-zero diagram of the unknot has degree-zero contractions
unknot = CORPUS["unknot"]
r1pair = apply_framed_r1(unknot, r1_sites(unknot)[0])
b = build_bicomplex(r1pair, (2,))
print("r1pair degrees:", sorted(set(b.degrees.values())), "nonzero blocks:", len(b.dprime))
for (k, i, j), (free, tors) in sorted(iterated_homology(b).items()):
    if free:
        print(f"  k={k} i={i} j={j} rank {free}")
