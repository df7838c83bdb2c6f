"""
Khovanov homology tables
========================

Integer homology of the enhanced-state complex, and its graded Euler
characteristic.
"""

from khcable import CORPUS, build_complex, graded_euler, homology, jones_framed


def show(table):
    for (i, j), (free, tors) in sorted(table.items()):
        extra = f" + torsion {list(tors)}" if tors else ""
        print(f"  i={i:3d} j={j:3d}  rank {free}{extra}")


for name in ("unknot", "kink+", "hopf", "trefoil", "figure8"):
    d = CORPUS[name]
    cx = build_complex(d)
    print(f"{name}: {d.n_crossings} crossings")
    show(homology(cx))
    assert graded_euler(cx) == jones_framed(d)
