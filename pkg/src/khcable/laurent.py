"""Exact integer Laurent polynomials in one variable ``q``."""

from __future__ import annotations

import json
import operator
from typing import Iterable, Mapping


class LaurentPoly:
    """An immutable Laurent polynomial with integer coefficients.

    Coefficients are stored as a map ``exponent -> coefficient``; zero
    coefficients are never stored, so two polynomials are equal exactly when
    their maps are equal.

    >>> q = LaurentPoly.q()
    >>> (q + q**-1) * (q + q**-1)
    q^2 + 2 + q^-2
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        acc: dict[int, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exp, coef in items:
            try:
                exp, coef = operator.index(exp), operator.index(coef)
            except TypeError as exc:
                raise TypeError("exponents and coefficients must be integers") from exc
            acc[exp] = acc.get(exp, 0) + coef
        self._terms = {e: c for e, c in acc.items() if c}
        self._hash = None

    @classmethod
    def _from_clean(cls, terms: dict[int, int]) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def q(cls) -> "LaurentPoly":
        return cls._from_clean({1: 1})

    @classmethod
    def monomial(cls, exp: int, coef: int = 1) -> "LaurentPoly":
        return cls._from_clean({exp: coef} if coef else {})

    @classmethod
    def constant(cls, c: int) -> "LaurentPoly":
        return cls.monomial(0, c)

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def coefficient(self, exp: int) -> int:
        return self._terms.get(exp, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def min_degree(self) -> int | None:
        return min(self._terms) if self._terms else None

    def max_degree(self) -> int | None:
        return max(self._terms) if self._terms else None

    def __iter__(self):
        return iter(sorted(self._terms.items()))

    def __len__(self) -> int:
        return len(self._terms)

    def at_one(self) -> int:
        """Value at ``q = 1``."""
        return sum(self._terms.values())

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly._from_clean(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._from_clean({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly._from_clean({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials can be raised to negative powers")
            (e, c), = self._terms.items()
            if c not in (1, -1):
                raise ValueError("monomial coefficient must be a unit")
            return LaurentPoly._from_clean({e * n: c ** (-n)})
        result = LaurentPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``q**k``."""
        return LaurentPoly._from_clean({e + k: c for e, c in self._terms.items()})

    def substitute_power(self, k: int) -> "LaurentPoly":
        """Return ``p(q**k)``."""
        if k == 0:
            return LaurentPoly.constant(self.at_one())
        return LaurentPoly._from_clean({e * k: c for e, c in self._terms.items()})

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- serialization ----------------------------------------------------

    def to_pairs(self) -> list[list[int]]:
        """Sorted ``[exponent, coefficient]`` pairs, e.g. ``q + q^-1 -> [[-1, 1], [1, 1]]``."""
        return [[e, c] for e, c in sorted(self._terms.items())]

    @classmethod
    def from_pairs(cls, pairs: Iterable[Iterable[int]]) -> "LaurentPoly":
        seen = set()
        terms = []
        for pair in pairs:
            e, c = pair
            if e in seen:
                raise ValueError(f"duplicate exponent {e}")
            seen.add(e)
            terms.append((int(e), int(c)))
        return cls(terms)

    def to_json(self) -> str:
        return json.dumps(self.to_pairs(), separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "LaurentPoly":
        return cls.from_pairs(json.loads(text))

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            if e == 0:
                mono = str(abs(c))
            else:
                var = "q" if e == 1 else f"q^{e}"
                mono = var if abs(c) == 1 else f"{abs(c)}*{var}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, mono))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, mono in parts[1:]:
            out += f" {sign} {mono}"
        return out


ZERO = LaurentPoly()
ONE = LaurentPoly.constant(1)
Q = LaurentPoly.q()
LOOP = Q + Q ** -1  # value of a crossing-free circle


def quantum_integer(n: int) -> LaurentPoly:
    """``[n] = q^(n-1) + q^(n-3) + ... + q^(1-n)``, with ``[0] = 0``."""
    if n < 0:
        raise ValueError("quantum_integer expects n >= 0")
    return LaurentPoly._from_clean({n - 1 - 2 * t: 1 for t in range(n)})
