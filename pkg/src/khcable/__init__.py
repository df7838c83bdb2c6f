"""Exact Jones, colored Jones and Khovanov-type invariants of framed link diagrams.

The main entry points are re-exported here; see the submodules for details.
"""

from .bicomplex import build_bicomplex, check_laws, contracted_diagram, enumerate_k_pairings, euler_identity, iterated_homology
from .colored import colored_jones, multi_binomial
from .corpus import CORPUS
from .diagram import LinkDiagram, cable, cable_diagram, gauss_code, parse_pd
from .errors import DifferentialLawError, EnumerationCapError, IllegalMoveError, KhCableError, ParseError
from .kauffman import bracket, jones_framed
from .khovanov import build_complex, graded_euler, homology, khovanov_homology
from .laurent import LaurentPoly, quantum_integer
from .nanoword import Nanophrase, cable_word, parse_nanophrase

__all__ = [
    "CORPUS",
    "DifferentialLawError",
    "EnumerationCapError",
    "IllegalMoveError",
    "KhCableError",
    "LaurentPoly",
    "LinkDiagram",
    "Nanophrase",
    "ParseError",
    "bracket",
    "build_bicomplex",
    "build_complex",
    "cable",
    "cable_diagram",
    "cable_word",
    "check_laws",
    "colored_jones",
    "contracted_diagram",
    "enumerate_k_pairings",
    "euler_identity",
    "gauss_code",
    "graded_euler",
    "homology",
    "iterated_homology",
    "jones_framed",
    "khovanov_homology",
    "multi_binomial",
    "parse_nanophrase",
    "parse_pd",
    "quantum_integer",
]

__version__ = "0.1.0"
