"""Colored Jones polynomials by cabling.

``J_n(D) = sum_k (-1)^|k| prod_i C(n_i - k_i, k_i) J(D^(n - 2k))`` where the
sum runs over multi-indices ``0 <= k_i <= n_i // 2`` and ``D^m`` is the
blackboard ``m``-cable.  A component with ``m_i = 0`` is deleted, and the
empty diagram has ``J = 1``.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from math import comb, prod
from typing import Sequence

from .diagram import LinkDiagram, cable_diagram
from .kauffman import jones_framed, thread_count
from .laurent import LaurentPoly

MultiIndex = tuple[int, ...]


def as_multi_index(n: Sequence[int] | int) -> MultiIndex:
    """Normalize an int or sequence to a tuple of nonnegative ints."""
    if isinstance(n, int):
        n = (n,)
    n = tuple(int(v) for v in n)
    if any(v < 0 for v in n):
        raise ValueError(f"multi-index entries must be nonnegative: {n}")
    return n


def parse_multi_index(text: str) -> MultiIndex:
    """Parse ``"2,1,3"`` into ``(2, 1, 3)``."""
    text = text.strip()
    if not text:
        return ()
    try:
        return as_multi_index([int(t) for t in text.split(",")])
    except ValueError as exc:
        raise ValueError(f"bad multi-index {text!r}: {exc}") from None


def multi_binomial(n: Sequence[int], k: Sequence[int]) -> int:
    """``prod_i C(n_i - k_i, k_i)`` for ``0 <= k_i <= n_i // 2``."""
    n, k = as_multi_index(n), as_multi_index(k)
    if len(n) != len(k):
        raise ValueError(f"length mismatch: n={n}, k={k}")
    for ni, ki in zip(n, k):
        if not 0 <= ki <= ni // 2:
            raise ValueError(f"k entry {ki} out of range for n entry {ni}")
    return prod(comb(ni - ki, ki) for ni, ki in zip(n, k))


def k_range(n: Sequence[int]):
    """All multi-indices ``k`` with ``0 <= k_i <= n_i // 2``, lexicographic."""
    return itertools.product(*(range(v // 2 + 1) for v in n))


def colored_jones(
    d: LinkDiagram,
    n: Sequence[int] | int,
    cap: int | None = None,
    threads: int | None = None,
) -> LaurentPoly:
    """Colored Jones polynomial of ``d`` with cable widths ``n``.

    Parameters
    ----------
    d : LinkDiagram
        Framed diagram; framing is the blackboard framing.
    n : sequence of int
        One cable width per component (free loops included).
    cap : int, optional
        Enumeration cap passed to :func:`jones_framed` for every cable.
    threads : int, optional
        Worker threads for the independent ``k`` terms.

    Returns
    -------
    LaurentPoly
    """
    n = as_multi_index(n)
    if len(n) != d.n_components:
        raise ValueError(f"diagram has {d.n_components} components, got {len(n)} colors")
    ks = list(k_range(n))

    def term(k):
        m = tuple(ni - 2 * ki for ni, ki in zip(n, k))
        sign = -1 if sum(k) % 2 else 1
        return jones_framed(cable_diagram(d, m), cap) * (sign * multi_binomial(n, k))

    threads = thread_count() if threads is None else threads
    if threads > 1 and len(ks) > 1:
        with ThreadPoolExecutor(threads) as pool:
            terms = list(pool.map(term, ks))
    else:
        terms = [term(k) for k in ks]
    total = LaurentPoly()
    for t in terms:
        total = total + t
    return total
