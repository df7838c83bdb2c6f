"""Nanophrases over the alphabets ``alpha1`` and ``alphaStar`` and their cables.

A nanophrase is a tuple of words; every letter occurs exactly twice in the
whole phrase and carries a value.  Over ``alpha1`` values are ``+1``/``-1``;
over ``alphaStar`` they are ``"a+"``, ``"a-"``, ``"b+"``, ``"b-"``.  Reading
order is word by word, left to right.

Text format::

    phrase   := words [ "|" ] bindings
    words    := word ( "|" word )*
    word     := letter* | "()"            (``()`` is the empty word)
    letter   := [A-Za-z][0-9]*
    bindings := ( letter "=" value )*
    value    := +1 | -1 | a+ | a- | b+ | b-

for example ``ABAB | A=+1 B=-1`` or ``AB | AB | A=a+ B=b-``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Mapping, Sequence

from .errors import ParseError

ALPHA1 = "alpha1"
ALPHA_STAR = "alphaStar"
STAR_VALUES = ("a+", "a-", "b+", "b-")

Letter = Hashable


def project_value(v) -> int:
    if v in (1, -1):
        return v
    if v in STAR_VALUES:
        return 1 if v.endswith("+") else -1
    raise ValueError(f"not an alphabet value: {v!r}")


def _kind_of(values) -> str | None:
    kinds = set()
    for v in values:
        if v in (1, -1) and not isinstance(v, bool):
            kinds.add(ALPHA1)
        elif v in STAR_VALUES:
            kinds.add(ALPHA_STAR)
        else:
            raise ParseError(f"not an alphabet value: {v!r}")
    if len(kinds) > 1:
        raise ParseError("values mix the alpha1 and alphaStar alphabets")
    return kinds.pop() if kinds else None


@dataclass(frozen=True)
class Nanophrase:
    """Words of letters plus a value per letter.

    ``alphabet`` is ``"alpha1"`` or ``"alphaStar"``; for a phrase with no
    letters it may be either.
    """

    words: tuple[tuple[Letter, ...], ...]
    values: Mapping[Letter, object]
    alphabet: str = ALPHA1

    def __post_init__(self):
        object.__setattr__(self, "words", tuple(tuple(w) for w in self.words))
        object.__setattr__(self, "values", dict(self.values))
        kind = _kind_of(self.values.values())
        if kind is not None and kind != self.alphabet:
            raise ParseError(f"values belong to {kind}, phrase declared {self.alphabet}")
        if self.alphabet not in (ALPHA1, ALPHA_STAR):
            raise ParseError(f"unknown alphabet {self.alphabet!r}")

    def __hash__(self):
        return hash((self.words, tuple(sorted(self.values.items(), key=repr)), self.alphabet))

    @property
    def r(self) -> int:
        return len(self.words)

    @cached_property
    def occurrences(self) -> dict[Letter, list[tuple[int, int]]]:
        """(word, position) of each occurrence, in reading order."""
        occ: dict[Letter, list[tuple[int, int]]] = {}
        for k, w in enumerate(self.words):
            for p, a in enumerate(w):
                occ.setdefault(a, []).append((k, p))
        return occ

    def letter_kind(self, a: Letter) -> str:
        (k1, _), (k2, _) = self.occurrences[a]
        return "single" if k1 == k2 else "two"

    def __str__(self) -> str:
        return format_phrase(self)


def validate(p: Nanophrase) -> Nanophrase:
    """Check every letter occurs twice and has a value."""
    occ = p.occurrences
    bad = sorted((repr(a) for a, o in occ.items() if len(o) != 2))
    if bad:
        raise ParseError(f"letters {', '.join(bad)} do not occur exactly twice")
    missing = sorted(repr(a) for a in occ if a not in p.values)
    if missing:
        raise ParseError(f"letters {', '.join(missing)} have no value")
    extra = sorted(repr(a) for a in p.values if a not in occ)
    if extra:
        raise ParseError(f"values given for absent letters {', '.join(extra)}")
    return p


def letter_kinds(p: Nanophrase) -> dict[Letter, str]:
    validate(p)
    return {a: p.letter_kind(a) for a in p.occurrences}


# -- projections -------------------------------------------------------------------

def project_to_alpha1(p: Nanophrase) -> Nanophrase:
    """``a+, b+ -> +1`` and ``a-, b- -> -1``."""
    if p.alphabet != ALPHA_STAR:
        raise ValueError("projection expects a phrase over alphaStar")
    return Nanophrase(p.words, {a: project_value(v) for a, v in p.values.items()}, ALPHA1)


def lift_alpha1_to_alphaStar(p: Nanophrase) -> Nanophrase:
    """``+1 -> a+`` and ``-1 -> a-``."""
    if p.alphabet != ALPHA1:
        raise ValueError("lift expects a phrase over alpha1")
    return Nanophrase(p.words, {a: ("a+" if v == 1 else "a-") for a, v in p.values.items()}, ALPHA_STAR)


# -- cabling --------------------------------------------------------------------------

def runs_ascend_first(value: str) -> bool:
    """Whether the run at a letter's first passage lists partner copies upward.

    Copies are pushed off to the right of each strand.  When the strand
    making the first passage crosses from the right of the other strand to
    its left (values ``a+`` and ``b-``) it meets the partner copies in
    increasing order, and the second passage meets them in decreasing order;
    for ``a-`` and ``b+`` both orders reverse.
    """
    return value in ("a+", "b-")


def _flip_type(value: str) -> str:
    return ("b" if value[0] == "a" else "a") + value[1]


def cable_word(p: Nanophrase, m: Sequence[int]) -> Nanophrase:
    """The ``m``-cable of a nanophrase.

    Word ``k`` becomes ``m[k]`` words.  A letter ``A`` whose first passage is
    in word ``k`` and second in word ``l`` becomes the letters ``(A, i, i')``
    with ``i < m[k]``, ``i' < m[l]``: copy ``i`` of word ``k`` passes
    ``(A, i, 0..m[l]-1)`` at the first position and copy ``i'`` of word ``l``
    passes ``(A, 0..m[k]-1, i')`` at the second, in the orders given by
    :func:`runs_ascend_first`.  Over ``alpha1`` letters are cabled as their
    lifts ``+1 -> a+``, ``-1 -> a-`` and the result is projected back.
    """
    validate(p)
    m = tuple(int(v) for v in m)
    if len(m) != p.r:
        raise ValueError(f"cable needs {p.r} multiplicities, got {len(m)}")
    if any(v < 0 for v in m):
        raise ValueError("cable multiplicities must be nonnegative")
    if p.alphabet == ALPHA1:
        return project_to_alpha1(cable_word(lift_alpha1_to_alphaStar(p), m))
    occ = p.occurrences
    words = []
    values: dict[Letter, str] = {}
    for k, w in enumerate(p.words):
        for t in range(m[k]):
            out = []
            for pos, a in enumerate(w):
                (k1, p1), (k2, p2) = occ[a]
                up = runs_ascend_first(p.values[a])
                if (k, pos) == (k1, p1):
                    partners = range(m[k2]) if up else range(m[k2] - 1, -1, -1)
                    out.extend((a, t, s) for s in partners)
                else:
                    partners = range(m[k1] - 1, -1, -1) if up else range(m[k1])
                    out.extend((a, s, t) for s in partners)
            words.append(tuple(out))
    # the first occurrence of (A, i, i') comes from the second passage of A
    # exactly when A is single-component and i > i'
    for a, ((k1, _), (k2, _)) in occ.items():
        v = p.values[a]
        for i in range(m[k1]):
            for s in range(m[k2]):
                values[(a, i, s)] = _flip_type(v) if (k1 == k2 and i > s) else v
    return Nanophrase(tuple(words), values, ALPHA_STAR)


def commute_cable_project(p: Nanophrase, m: Sequence[int]) -> bool:
    """``cable_word(p, m)`` agrees with ``project(cable_word(lift(p), m))``."""
    lhs = cable_word(p, m)
    rhs = project_to_alpha1(cable_word(lift_alpha1_to_alphaStar(p), m))
    return canonical(lhs) == canonical(rhs)


# -- canonical renaming -----------------------------------------------------------------

def canonical(p: Nanophrase) -> tuple:
    """Rename letters 0, 1, ... in order of first occurrence."""
    names: dict[Letter, int] = {}
    words = []
    for w in p.words:
        out = []
        for a in w:
            if a not in names:
                names[a] = len(names)
            out.append(names[a])
        words.append(tuple(out))
    values = tuple(p.values[a] for a in sorted(names, key=names.get))
    return tuple(words), values, p.alphabet if names else None


def renamed(p: Nanophrase) -> Nanophrase:
    """The canonical representative with printable letter names."""
    words, vals, _ = canonical(p)
    name = [_letter_name(k) for k in range(len(vals))]
    return Nanophrase(
        tuple(tuple(name[a] for a in w) for w in words),
        {name[k]: v for k, v in enumerate(vals)},
        p.alphabet,
    )


def equivalent(p1: Nanophrase, p2: Nanophrase) -> bool:
    return canonical(p1) == canonical(p2)


def _letter_name(k: int) -> str:
    base = chr(ord("A") + k % 26)
    return base if k < 26 else f"{base}{k // 26}"


# -- text format --------------------------------------------------------------------------

_LETTER = re.compile(r"[A-Za-z][0-9]*")
_BINDING = re.compile(r"([A-Za-z][0-9]*)\s*=\s*(\S+)")
_VALUE = {"+1": 1, "1": 1, "-1": -1, "+": 1, "-": -1}


def parse_nanophrase(text: str) -> Nanophrase:
    text = text.strip()
    m = re.search(r"[A-Za-z][0-9]*\s*=", text)
    if m is None:
        phrase_part, binding_part = text, ""
    else:
        phrase_part, binding_part = text[: m.start()], text[m.start():]
    phrase_part = phrase_part.strip()
    if phrase_part.endswith("|") and binding_part:
        phrase_part = phrase_part[:-1]
    words = []
    if phrase_part.strip():
        for raw in phrase_part.split("|"):
            raw = raw.strip()
            if raw == "()":
                words.append(())
                continue
            compact = re.sub(r"\s+", "", raw)
            letters = _LETTER.findall(compact)
            if "".join(letters) != compact:
                raise ParseError(f"bad word {raw!r}")
            if not letters:
                raise ParseError("empty word must be written as ()")
            words.append(tuple(letters))
    values: dict[str, object] = {}
    consumed = _BINDING.sub("", binding_part)
    if consumed.strip():
        raise ParseError(f"unrecognized bindings: {consumed.strip()!r}")
    for name, raw in _BINDING.findall(binding_part):
        if name in values:
            raise ParseError(f"letter {name} bound twice")
        if raw in _VALUE:
            values[name] = _VALUE[raw]
        elif raw in STAR_VALUES:
            values[name] = raw
        else:
            raise ParseError(f"bad value {raw!r} for letter {name}")
    kind = _kind_of(values.values()) or ALPHA1
    return validate(Nanophrase(tuple(words), values, kind))


def format_phrase(p: Nanophrase) -> str:
    q = p if all(isinstance(a, str) and _LETTER.fullmatch(a) for a in p.values) else renamed(p)
    words = " | ".join("".join(w) if w else "()" for w in q.words)
    order = []
    for w in q.words:
        for a in w:
            if a not in order:
                order.append(a)
    fmt = (lambda v: "+1" if v == 1 else "-1") if q.alphabet == ALPHA1 else str
    binds = " ".join(f"{a}={fmt(q.values[a])}" for a in order)
    return f"{words} | {binds}" if binds else words


# -- bridge from Gauss codes ------------------------------------------------------------------

def from_gauss_code(code, alphabet: str = ALPHA1) -> Nanophrase:
    """Nanophrase of a Gauss code: one letter per crossing.

    Over ``alphaStar`` a letter is of type ``a`` when its first passage in
    reading order is the over-passage.
    """
    words = tuple(tuple(cid for cid, _, _ in w) for w in code.words)
    values: dict[Letter, object] = {}
    for w in code.words:
        for cid, ou, sign in w:
            if cid in values:
                continue
            if alphabet == ALPHA1:
                values[cid] = sign
            else:
                values[cid] = ("a" if ou == "O" else "b") + ("+" if sign > 0 else "-")
    return validate(Nanophrase(words, values, alphabet))


# -- realization -----------------------------------------------------------------------

def to_diagram(p: Nanophrase):
    """The planar diagram whose signed Gauss code is the phrase over ``alphaStar``.

    Type ``a`` means the first passage is the over-passage.  Components keep
    word order except that empty words become free loops, listed last.

    Raises
    ------
    ParseError
        For phrases over ``alpha1`` (no over/under data) and for phrases that
        only a virtual diagram realizes.
    """
    from .diagram import LinkDiagram
    from .moves import is_planar

    validate(p)
    if p.alphabet != ALPHA_STAR and p.values:
        raise ParseError("an alpha1 phrase records no over/under data; use alphaStar values")
    # the arc entering passage (k, pos) is labeled in reading order
    label: dict[tuple[int, int], int] = {}
    for k, w in enumerate(p.words):
        for pos in range(len(w)):
            label[(k, pos)] = len(label) + 1

    def arcs_at(k, pos):
        w = p.words[k]
        return label[(k, pos)], label[(k, (pos + 1) % len(w))]

    crossings = []
    for a, (first, second) in sorted(p.occurrences.items(), key=lambda kv: kv[1][0]):
        v = p.values[a]
        over, under = (first, second) if v[0] == "a" else (second, first)
        u_in, u_out = arcs_at(*under)
        o_in, o_out = arcs_at(*over)
        if v[1] == "+":
            crossings.append((u_in, o_out, u_out, o_in))
        else:
            crossings.append((u_in, o_in, u_out, o_out))
    comps = tuple(
        tuple(label[(k, pos)] for pos in range(len(w))) for k, w in enumerate(p.words) if w
    )
    free = sum(1 for w in p.words if not w)
    d = LinkDiagram(tuple(crossings), comps, free)
    if not is_planar(d):
        raise ParseError("the phrase is not realized by a planar diagram")
    return d
