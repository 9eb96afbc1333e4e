"""Shared fixtures: small systems and graphs with known structure."""

from fractions import Fraction

import pytest

from wr1 import EGraph, decompose, parse_system

# realizes as a directed 3-cycle with unit rates, deficiency 0
CYCLE3_TEXT = "species x, y; x' = x - x^2*y; y' = x^2 - x^2*y;"

# admits no single-linkage weakly reversible realization (first vertex infeasible)
UNREALIZABLE_TEXT = "species x, y; x' = -x + x^2; y' = 0;"

# realizes as a directed 4-cycle, deficiency 1
CYCLE4_TEXT = "species x, y; x' = x - x^2*y; y' = x^2 - x*y;"

# realizes as the complete digraph on three collinear vertices, deficiency 1
COMPLETE3_TEXT = "species x; x' = x + x^2 - x^3;"


@pytest.fixture
def cycle3_dec():
    return decompose(parse_system(CYCLE3_TEXT))


@pytest.fixture
def unrealizable_dec():
    return decompose(parse_system(UNREALIZABLE_TEXT))


@pytest.fixture
def cycle4_dec():
    return decompose(parse_system(CYCLE4_TEXT))


@pytest.fixture
def complete3_dec():
    return decompose(parse_system(COMPLETE3_TEXT))


def two_terminal_graph(rates=None):
    """Six lattice vertices in two linkage classes with two terminal components.

    Vertices 0..5 are (1,0), (2,0), (3,0), (4,1), (5,1), (5,2); the first
    class is the reversible pair {0,1}, the second chains {2,3} into the
    reversible pair {4,5}, so the terminal components are {0,1} and {4,5}.
    """
    vertices = ((1, 0), (2, 0), (3, 0), (4, 1), (5, 1), (5, 2))
    edges = ((0, 1), (1, 0), (2, 3), (3, 2), (3, 4), (4, 5), (5, 4))
    if rates is None:
        rates = {edge: Fraction(1) for edge in edges}
    return EGraph(vertices=vertices, edges=edges, rates=rates)


def unit_cycle3_graph():
    """Weakly reversible single-class 3-cycle; stoichiometric dimension 2, deficiency 0."""
    vertices = ((1, 0), (2, 0), (2, 1))
    edges = ((0, 1), (1, 2), (2, 0))
    return EGraph(vertices=vertices, edges=edges, rates={e: Fraction(1) for e in edges})


def autocatalytic_closure_graph():
    """Reversible closure of a three-species autocatalytic motif.

    Seven vertices, one linkage class, stoichiometric dimension 3, hence
    deficiency 7 - 1 - 3 = 3; weakly reversible because every edge has its
    reverse.
    """
    vertices = (
        (1, 1, 0),
        (2, 1, 0),
        (0, 1, 1),
        (0, 2, 1),
        (1, 0, 1),
        (1, 0, 2),
        (1, 1, 1),
    )
    pairs = [(0, 1), (2, 3), (4, 5), (0, 6), (2, 6), (4, 6)]
    edges = tuple(sorted([(a, b) for a, b in pairs] + [(b, a) for a, b in pairs]))
    return EGraph(vertices=vertices, edges=edges, rates={e: Fraction(1) for e in edges})
