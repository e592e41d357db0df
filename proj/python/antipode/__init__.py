"""Distance bounds and antipodality for homogeneous metric spaces.

Every function returns the same report dictionaries the ``antipode`` command
line tool prints as JSON. Exact quantities are {"exact": "p/q", "decimal": ...}.
"""

import json
from fractions import Fraction

from . import _core
from ._core import AntipodeError, set_threads, threads

__version__ = _core.version()

__all__ = [
    "AntipodeError",
    "analyze_family",
    "analyze_edges",
    "analyze_text",
    "sample_sphere",
    "sample_torus",
    "padic_average",
    "exact",
    "set_threads",
    "threads",
]


def analyze_family(family, *, d=0, n=0, p=0, k=0, moduli=(), connection=(), fast_path=False, no_aut=False, budget=0):
    """Analyse a generated family: hypercube, cycle, complete, petersen, cayley-abelian or padic."""
    return json.loads(
        _core.analyze_family(
            family, d, n, p, k, list(moduli), [list(c) for c in connection], fast_path, no_aut, budget
        )
    )


def analyze_edges(n, edges, *, fast_path=False, no_aut=False, budget=0):
    """Analyse the graph on vertices 0..n-1 with the given edges."""
    return json.loads(_core.analyze_edges(n, [tuple(e) for e in edges], fast_path, no_aut, budget))


def analyze_text(text, *, fast_path=False, no_aut=False, budget=0):
    """Analyse a matrix or edge-list file body."""
    return json.loads(_core.analyze_text(text, fast_path, no_aut, budget))


def sample_sphere(d, n, seed, bins=20):
    return json.loads(_core.sample_sphere(d, n, seed, bins))


def sample_torus(n, seed, bins=20):
    return json.loads(_core.sample_torus(n, seed, bins))


def padic_average(p, k):
    return json.loads(_core.padic_average(p, k))


def exact(value):
    """Fraction from a serialized rational."""
    return Fraction(value["exact"])
