"""Standard small diagrams used by tests, scripts and the command line."""

from __future__ import annotations

from typing import Sequence

from .diagram import LinkDiagram, from_pd, mirror, parse_pd


def braid_closure(word: Sequence[int], strands: int) -> LinkDiagram:
    """Closure of a braid word; ``+i`` is a positive crossing of strands i, i+1.

    Strands run upward and are numbered 1..strands from left to right.
    """
    cur = list(range(1, strands + 1))
    nxt = strands
    crossings = []
    for g in word:
        i = abs(g) - 1
        if not 0 <= i < strands - 1:
            raise ValueError(f"generator {g} out of range for {strands} strands")
        left_in, right_in = cur[i], cur[i + 1]
        nw, ne = nxt + 1, nxt + 2
        nxt += 2
        if g > 0:
            # the strand from the right (SE to NW) passes under
            crossings.append([right_in, ne, nw, left_in])
        else:
            crossings.append([left_in, right_in, ne, nw])
        cur[i], cur[i + 1] = nw, ne
    untouched = sum(1 for k in range(strands) if cur[k] == k + 1)
    rename = {cur[k]: k + 1 for k in range(strands)}
    crossings = [[rename.get(a, a) for a in x] for x in crossings]
    return from_pd(crossings, untouched)


UNKNOT = parse_pd("U(1)")
POSITIVE_KINK = parse_pd("X(1,1,2,2)")
NEGATIVE_KINK = parse_pd("X(2,1,1,2)")
LEFT_TREFOIL = parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)")
RIGHT_TREFOIL = mirror(LEFT_TREFOIL)
NEGATIVE_HOPF = parse_pd("X(4,1,3,2) X(2,3,1,4)")
POSITIVE_HOPF = mirror(NEGATIVE_HOPF)
FIGURE_EIGHT = parse_pd("X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)")
# closure of the braid s1 s2 s1: a kinked positive Hopf link with an R3 triangle
R3_TRIANGLE = braid_closure((1, 2, 1), 3)

CORPUS: dict[str, LinkDiagram] = {
    "unknot": UNKNOT,
    "kink+": POSITIVE_KINK,
    "kink-": NEGATIVE_KINK,
    "hopf": POSITIVE_HOPF,
    "hopf-": NEGATIVE_HOPF,
    "trefoil": RIGHT_TREFOIL,
    "trefoil-": LEFT_TREFOIL,
    "figure8": FIGURE_EIGHT,
    "triangle": R3_TRIANGLE,
}
