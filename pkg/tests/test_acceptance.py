"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -s`` or ``python tests/test_acceptance.py``.
"""

import itertools
import json
import os
from contextlib import contextmanager
from math import comb, prod

import pytest

from khcable import cli
from khcable.bicomplex import build_bicomplex, check_laws, enumerate_k_pairings, euler_identity
from khcable.colored import colored_jones
from khcable.corpus import CORPUS, POSITIVE_KINK, UNKNOT
from khcable.diagram import cable_diagram, gauss_code
from khcable.kauffman import jones_framed
from khcable.khovanov import build_complex, euler_from_table, graded_euler, homology, khovanov_homology
from khcable.laurent import quantum_integer
from khcable.moves import all_moves, apply_framed_r1, r1_sites
from khcable.nanoword import ALPHA1, ALPHA_STAR, cable_word, equivalent, from_gauss_code, project_to_alpha1

CABLE_LIMIT = 16


def report(number, title, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}" + (f" ({detail})" if detail else "")
    print(line)
    return ok


def widths(d, top):
    return itertools.product(range(top + 1), repeat=d.n_components)


# -- criteria ----------------------------------------------------------------------------------

def criterion_1():
    bad, checked = [], 0
    for name, d in CORPUS.items():
        word = from_gauss_code(gauss_code(d), ALPHA_STAR)
        for m in widths(d, 3):
            c = cable_diagram(d, m)
            checked += 1
            expected = sum(m[a] * m[b] for a, b in map(d.crossing_components, range(d.n_crossings)))
            ok = (equivalent(from_gauss_code(gauss_code(c), ALPHA_STAR), cable_word(word, m))
                  and equivalent(from_gauss_code(gauss_code(c), ALPHA1), project_to_alpha1(cable_word(word, m)))
                  and c.n_crossings == expected)
            if not ok:
                bad.append((name, m))
    return report(1, "cabling consistency", not bad, f"{checked} cables, failures {bad[:3]}")


def cable_instances():
    for name, d in CORPUS.items():
        for m in widths(d, 3):
            c = cable_diagram(d, m)
            if any(m) and c.n_crossings <= CABLE_LIMIT:
                yield f"{name}{m}", c


def criterion_2():
    bad, checked = [], 0
    for label, d in [(n, d) for n, d in CORPUS.items()] + list(cable_instances()):
        cx = build_complex(d)
        j = jones_framed(d)
        checked += 1
        if not (graded_euler(cx) == j and euler_from_table(homology(cx)) == j):
            bad.append(label)
    return report(2, "Khovanov Euler characteristic equals framed Jones", not bad, f"{checked} diagrams, failures {bad}")


def criterion_3():
    bad = [n for n in range(7) if colored_jones(UNKNOT, (n,)) != quantum_integer(n + 1)]
    return report(3, "unknot colored Jones equals [n+1]", not bad, f"failures at n={bad}")


CHAIN_INSTANCES = [
    ("unknot", UNKNOT, (1,)), ("unknot", UNKNOT, (2,)), ("unknot", UNKNOT, (3,)),
    ("kink+", POSITIVE_KINK, (1,)), ("kink+", POSITIVE_KINK, (2,)),
    ("hopf", CORPUS["hopf"], (2, 1)), ("hopf", CORPUS["hopf"], (2, 2)),
    ("trefoil", CORPUS["trefoil"], (2,)),
]

# writhe-zero framings where the contraction differential is nonzero
LAW_INSTANCES = CHAIN_INSTANCES + [
    ("r1pair", apply_framed_r1(UNKNOT, r1_sites(UNKNOT)[0]), (2,)), ("unknot", UNKNOT, (4,)),
]

_bicomplexes = {}


def bicomplex_of(name, d, n):
    key = (name, n)
    if key not in _bicomplexes:
        _bicomplexes[key] = build_bicomplex(d, n)
    return _bicomplexes[key]


def criterion_4():
    bad = []
    for name, d, n in CHAIN_INSTANCES:
        b = bicomplex_of(name, d, n)
        if b.euler_chain() != colored_jones(d, n):
            bad.append((name, n))
    return report(4, "bicomplex chain-level Euler identity", not bad, f"{len(CHAIN_INSTANCES)} instances, failures {bad}")


def law_status():
    out = {}
    for name, d, n in LAW_INSTANCES:
        reps = check_laws(bicomplex_of(name, d, n))
        out[(name, n)] = {k: r.ok for k, r in reps.items()}
    return out


def criterion_5():
    status = law_status()
    bad = {k: [law for law, ok in v.items() if not ok] for k, v in status.items() if not all(v.values())}
    return report(5, "differential laws", not bad, f"{len(status)} instances, failures {bad}")


def criterion_6():
    status = law_status()
    bad, checked = [], 0
    for name, d, n in LAW_INSTANCES:
        if not all(status[(name, n)].values()):
            continue
        checked += 1
        e = euler_identity(d, n, bicomplex=bicomplex_of(name, d, n))
        if not (e.homology == e.chain == e.colored_jones):
            bad.append((name, n))
    return report(6, "iterated homology Euler identity", checked and not bad, f"{checked} instances, failures {bad}")


def criterion_7():
    bad, moves = [], 0
    for name, d in CORPUS.items():
        if d.n_crossings > 3:
            continue
        ns = list(widths(d, 2))
        base = (jones_framed(d), [colored_jones(d, n) for n in ns], khovanov_homology(d))
        for desc, e in all_moves(d):
            moves += 1
            if (jones_framed(e), [colored_jones(e, n) for n in ns], khovanov_homology(e)) != base:
                bad.append((name, desc))
    return report(7, "invariance under R2, R3 and framed R1", not bad, f"{moves} moves, failures {bad[:3]}")


def criterion_8():
    bad = []
    for n in range(9):
        for k in range(5):
            want = comb(n - k, k) if 2 * k <= n else 0
            if len(enumerate_k_pairings((n,), k)) != want:
                bad.append(((n,), k))
    for n in ((2, 2), (3, 2)):
        for k in range(sum(v // 2 for v in n) + 1):
            want = sum(prod(comb(v - kv, kv) for v, kv in zip(n, ks))
                       for ks in itertools.product(*(range(v // 2 + 1) for v in n)) if sum(ks) == k)
            if len(enumerate_k_pairings(n, k)) != want:
                bad.append((n, k))
    return report(8, "pairing counts", not bad, f"failures {bad}")


@contextmanager
def threads(count):
    old = os.environ.get("KHCABLE_THREADS")
    os.environ["KHCABLE_THREADS"] = str(count)
    try:
        yield
    finally:
        if old is None:
            del os.environ["KHCABLE_THREADS"]
        else:
            os.environ["KHCABLE_THREADS"] = old


DETERMINISM_JOBS = (
    [[cmd, f"corpus:{name}"] for name in CORPUS for cmd in ("bracket", "jones", "khovanov", "cable", "colored-jones")]
    + [["colored-jones", "corpus:hopf", "--n", "2,3"], ["cable", "corpus:trefoil", "--n", "2"]]
    + [["bicomplex", f"corpus:{name}", "--n", ",".join(map(str, n)), "--check-laws", "--emit-table"]
       for name, _, n in CHAIN_INSTANCES]
    + [["verify", "corpus:kink+", "--n", "2"], ["verify", "corpus:hopf", "--n", "2,1"]]
)


def criterion_9():
    bad = []
    for argv in DETERMINISM_JOBS:
        with threads(1):
            one = cli.run(argv)
        with threads(4):
            many = cli.run(argv)
        json.loads(one[1])
        if one != many:
            bad.append(" ".join(argv))
    return report(9, "JSON output identical across thread counts", not bad, f"{len(DETERMINISM_JOBS)} jobs, failures {bad}")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 10)])
def test_criterion(criterion, capsys):
    with capsys.disabled():
        print()
        ok = criterion()
    assert ok


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    raise SystemExit(0 if all(results) else 1)
