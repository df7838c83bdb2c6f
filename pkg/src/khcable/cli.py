"""Command-line front end.

Usage::

    khcable COMMAND INPUT [--format pd|nanoword] [--n 2,1] [--cap N]
                          [--out FILE] [--output-format json|csv]

``INPUT`` is a file path, ``-`` for standard input, or ``corpus:NAME`` for a
built-in diagram.  Exit status: 0 success, 2 bad input or color arity,
3 enumeration cap exceeded, 4 a law or identity failed.  The thread count is
read from ``KHCABLE_THREADS``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from .bicomplex import build_bicomplex, check_laws, euler_identity, iterated_homology
from .colored import colored_jones, parse_multi_index
from .corpus import CORPUS
from .diagram import LinkDiagram, cable, gauss_code, parse_pd, parse_pd_json
from .errors import EnumerationCapError, ParseError
from .kauffman import bracket_states, jones_framed
from .khovanov import build_complex, euler_from_table, graded_euler, homology
from .laurent import LaurentPoly
from .moves import all_moves
from .nanoword import ALPHA_STAR, cable_word, equivalent, from_gauss_code, parse_nanophrase, to_diagram

EXIT_OK, EXIT_INPUT, EXIT_CAP, EXIT_LAW = 0, 2, 3, 4
COMMANDS = ("bracket", "jones", "khovanov", "colored-jones", "cable", "bicomplex", "verify")


# -- input ------------------------------------------------------------------------------------

def read_diagram(source: str, fmt: str) -> LinkDiagram:
    if source.startswith("corpus:"):
        name = source[len("corpus:"):]
        if name not in CORPUS:
            raise ParseError(f"unknown corpus diagram {name!r}; known: {', '.join(CORPUS)}")
        return CORPUS[name]
    if source == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ParseError(f"cannot read {source}: {exc.strerror}") from None
    if fmt == "nanoword":
        return to_diagram(parse_nanophrase(text))
    if text.lstrip().startswith("{"):
        return parse_pd_json(text)
    return parse_pd(text)


def colors(args, d: LinkDiagram) -> tuple[int, ...]:
    n = parse_multi_index(args.n) if args.n is not None else (1,) * d.n_components
    if len(n) != d.n_components:
        raise ParseError(f"--n has {len(n)} entries but the diagram has {d.n_components} components")
    return n


# -- commands -------------------------------------------------------------------------------

def poly_doc(p: LaurentPoly) -> list[list[int]]:
    return p.to_pairs()


def table_rows(table) -> list[list]:
    return [[i, j, free, list(tors)] for (i, j), (free, tors) in sorted(table.items())]


def cmd_bracket(args, d):
    return {"bracket": poly_doc(bracket_states(d, args.cap))}


def cmd_jones(args, d):
    return {"jones_framed": poly_doc(jones_framed(d, args.cap)), "writhe": d.n_plus - d.n_minus}


def cmd_khovanov(args, d):
    cx = build_complex(d, args.cap)
    return {"table": table_rows(homology(cx)), "euler": poly_doc(graded_euler(cx))}


def cmd_colored(args, d):
    n = colors(args, d)
    return {"n": list(n), "colored_jones": poly_doc(colored_jones(d, n, args.cap))}


def cmd_cable(args, d):
    n = colors(args, d)
    c = cable(d, n)
    return {"n": list(n), "pd": c.diagram.to_pd_text(), "crossings": c.diagram.n_crossings,
            "strands": [list(s) for s in c.strands]}


def cmd_bicomplex(args, d):
    n = colors(args, d)
    b = build_bicomplex(d, n, args.cap)
    doc = {"n": list(n), "columns": {str(k): len(v) for k, v in sorted(b.columns.items())}}
    failed = False
    if args.check_laws:
        reps = check_laws(b)
        doc["laws"] = {name: rep.ok for name, rep in reps.items()}
        doc["law_details"] = {name: rep.to_json() for name, rep in reps.items()}
        failed = not all(rep.ok for rep in reps.values())
    if args.emit_table:
        table = iterated_homology(b)
        doc["table"] = [[k, i, j, free, None if tors is None else list(tors)]
                        for (k, i, j), (free, tors) in sorted(table.items())]
    e = euler_identity(d, n, args.cap, bicomplex=b)
    doc["euler"] = e.to_json()
    if not e.equal:
        failed = True
    return doc, failed


def _check(name, ok, **detail):
    return {"name": name, "ok": bool(ok), **detail}


def cmd_verify(args, d):
    n = colors(args, d)
    checks = []
    # Khovanov Euler characteristic of the diagram and of its n-cable
    for label, e in (("diagram", d), ("cable", cable(d, n).diagram)):
        cx = build_complex(e, args.cap)
        j = jones_framed(e, args.cap)
        chain, hom = graded_euler(cx), euler_from_table(homology(cx))
        checks.append(_check(f"khovanov_euler[{label}]", chain == j and hom == j,
                             jones=poly_doc(j), chain=poly_doc(chain), homology=poly_doc(hom)))
    # cabling commutes with Gauss codes
    word = from_gauss_code(gauss_code(d), ALPHA_STAR)
    cabled = from_gauss_code(gauss_code(cable(d, n).diagram), ALPHA_STAR)
    checks.append(_check("cabling", equivalent(cabled, cable_word(word, n))))
    # bicomplex laws and the Euler identities
    b = build_bicomplex(d, n, args.cap)
    for name, rep in check_laws(b).items():
        checks.append(_check(f"law[{name}]", rep.ok, failures=rep.failures))
    e = euler_identity(d, n, args.cap, bicomplex=b)
    checks.append(_check("euler_identity", e.equal, **e.to_json()))
    # invariance under every legal move
    small = tuple(min(v, 2) for v in n)
    base = (jones_framed(d), colored_jones(d, small), homology(build_complex(d)))
    first_bad = None
    count = 0
    for desc, e2 in all_moves(d):
        count += 1
        got = (jones_framed(e2), colored_jones(e2, small), homology(build_complex(e2, args.cap)))
        if got != base and first_bad is None:
            names = ("jones_framed", "colored_jones", "khovanov")
            first_bad = {"move": desc, "differs": [nm for nm, x, y in zip(names, got, base) if x != y]}
    checks.append(_check("invariance", first_bad is None, moves=count, first_failure=first_bad))
    ok = all(c["ok"] for c in checks)
    return {"n": list(n), "checks": checks, "ok": ok}, not ok


HANDLERS = {
    "bracket": cmd_bracket,
    "jones": cmd_jones,
    "khovanov": cmd_khovanov,
    "colored-jones": cmd_colored,
    "cable": cmd_cable,
    "bicomplex": cmd_bicomplex,
    "verify": cmd_verify,
}


# -- output ---------------------------------------------------------------------------------

def to_csv(command: str, doc: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if command in ("bracket", "jones", "colored-jones"):
        key = {"bracket": "bracket", "jones": "jones_framed", "colored-jones": "colored_jones"}[command]
        w.writerow(["exponent", "coefficient"])
        w.writerows(doc[key])
    elif command == "khovanov":
        w.writerow(["i", "j", "rank", "torsion"])
        for i, j, free, tors in doc["table"]:
            w.writerow([i, j, free, ";".join(map(str, tors))])
    elif command == "bicomplex":
        w.writerow(["k", "i", "j", "rank", "torsion"])
        for k, i, j, free, tors in doc.get("table", []):
            w.writerow([k, i, j, free, "?" if tors is None else ";".join(map(str, tors))])
    elif command == "cable":
        w.writerow(["pd"])
        w.writerow([doc["pd"]])
    else:
        w.writerow(["check", "ok"])
        for c in doc["checks"]:
            w.writerow([c["name"], str(c["ok"]).lower()])
    return buf.getvalue()


def render(command: str, doc: dict, fmt: str) -> str:
    if fmt == "csv":
        return to_csv(command, doc)
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


# -- entry point ----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="khcable", description="Jones, colored Jones and Khovanov-type invariants of link diagrams.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("input", help="file path, '-' for stdin, or corpus:NAME")
    p.add_argument("--format", choices=("pd", "nanoword"), default="pd", help="input format")
    p.add_argument("--n", help="colors, one per component, e.g. 2,1")
    p.add_argument("--cap", type=int, help="maximum number of resolutions to enumerate")
    p.add_argument("--out", help="write the output here instead of stdout")
    p.add_argument("--output-format", choices=("json", "csv"), default="json")
    p.add_argument("--check-laws", action="store_true", help="bicomplex: check the differential laws")
    p.add_argument("--emit-table", action="store_true", help="bicomplex: include the iterated homology table")
    return p


def run(argv: Sequence[str] | None = None) -> tuple[int, str, str | None]:
    """Run one job; returns the exit status, the rendered output and ``--out``."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (EXIT_INPUT if exc.code else EXIT_OK), "", None
    try:
        d = read_diagram(args.input, args.format)
        result = HANDLERS[args.command](args, d)
    except EnumerationCapError as exc:
        return EXIT_CAP, json.dumps({"error": "cap", "message": str(exc)}, sort_keys=True) + "\n", None
    except ValueError as exc:
        return EXIT_INPUT, json.dumps({"error": "input", "message": str(exc)}, sort_keys=True) + "\n", None
    doc, failed = result if isinstance(result, tuple) else (result, False)
    doc = {"command": args.command, "input": args.input, **doc}
    return (EXIT_LAW if failed else EXIT_OK), render(args.command, doc, args.output_format), args.out


def main(argv: Sequence[str] | None = None) -> int:
    status, text, out_path = run(argv)
    if status in (EXIT_INPUT, EXIT_CAP):
        sys.stderr.write(text)
    elif out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
