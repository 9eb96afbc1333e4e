"""Construction of weakly reversible single-linkage-class realizations.

Given source vertices y_1..y_m with net reaction vectors w_1..w_m (so the
dynamics is ``xdot = sum_i x^{y_i} w_i``), the engine decides whether some
weakly reversible network on exactly these vertices, connected as a single
linkage class, generates the dynamics, and builds the maximal one when it
does:

1. per vertex i, find a nonnegative solution v of ``D_i v = w_i`` where
   column k of ``D_i`` is ``y_k - y_i`` (infeasibility here already rules
   out every realization);
2. grow the support set of vertex i by maximizing each excluded coordinate
   in turn, collecting the witnesses; the union of their supports is the
   largest support any solution can have;
3. form the unit Kirchhoff matrix of the support pattern and accept exactly
   when its kernel is one-dimensional with full support, which makes the
   support graph strongly connected as a single component;
4. average the witnesses per vertex to obtain strictly positive rate
   constants that reproduce each net vector exactly.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InternalInvariantViolation
from .graphs import EGraph
from .ingest import SourceDecomposition
from .linalg import ONE, ZERO, RationalMatrix, RationalVector, kernel_basis
from .simplex import lp_feasible, lp_maximize_component


@dataclass(frozen=True)
class SupportProfile:
    """Maximal support of one vertex, with the witnesses that produced it.

    Every witness v satisfies ``D_i v = w_i`` with ``v >= 0``; the support is
    the union of the witness supports and always contains the vertex itself
    (the first witness has its own coordinate forced to 1, which is harmless
    because column i of ``D_i`` is zero).
    """

    vertex: int
    support: tuple[int, ...]
    witnesses: tuple[RationalVector, ...]


class FailureKind(enum.Enum):
    INFEASIBLE_VERTEX = "infeasible-vertex"
    KERNEL_DIMENSION = "kernel-dimension"
    KERNEL_SUPPORT = "kernel-support"
    SINGLE_VERTEX = "single-vertex"


@dataclass(frozen=True)
class Failure:
    """Structured reason why no realization exists."""

    kind: FailureKind
    vertex: int | None = None
    kernel_dimension: int | None = None
    missing: tuple[int, ...] = ()

    def describe(self) -> str:
        if self.kind is FailureKind.INFEASIBLE_VERTEX:
            return f"net vector of vertex {self.vertex} is not a nonnegative combination of its displacement columns"
        if self.kind is FailureKind.KERNEL_DIMENSION:
            return f"support Kirchhoff kernel has dimension {self.kernel_dimension}, not 1"
        if self.kind is FailureKind.KERNEL_SUPPORT:
            return f"support Kirchhoff kernel vanishes on vertices {list(self.missing)}"
        return "a single vertex with zero net vector admits no edges"


@dataclass(frozen=True)
class Realization:
    """A weakly reversible single-linkage-class network generating the input."""

    graph: EGraph
    profiles: tuple[SupportProfile, ...]
    averaged: tuple[RationalVector, ...]


@dataclass(frozen=True)
class RealizationReport:
    """Either a realization or a structured failure, never both."""

    realization: Realization | None = None
    failure: Failure | None = None

    def __post_init__(self):
        if (self.realization is None) == (self.failure is None):
            raise ValueError("report must carry exactly one outcome")

    @property
    def realized(self) -> bool:
        return self.realization is not None


def displacement_matrix(decomposition: SourceDecomposition, i: int) -> RationalMatrix:
    """n-by-m matrix whose column k is vertex k minus vertex i (column i is zero)."""
    if not 0 <= i < decomposition.m:
        raise IndexError(f"vertex {i} out of range")
    base = decomposition.vertices[i]
    columns = [
        [Fraction(vk - vi) for vk, vi in zip(vertex, base)]
        for vertex in decomposition.vertices
    ]
    return RationalMatrix.from_columns(columns, rows=decomposition.n)


def saturate_support(
    decomposition: SourceDecomposition, i: int, order: Sequence[int] | None = None
) -> SupportProfile | None:
    """Maximal support of vertex i, or None when its net vector is infeasible.

    ``order`` overrides the scan order of the growth loop; the resulting
    support set is order-independent (it is the unique maximal support), only
    the stored witnesses differ.
    """
    matrix = displacement_matrix(decomposition, i)
    target = decomposition.net_vector(i)
    base = lp_feasible(matrix, target)
    if base is None:
        return None
    base = base.with_entry(i, ONE)
    support = set(base.support())
    witnesses = [base]
    scan = range(decomposition.m) if order is None else order
    for j in scan:
        if j in support:
            continue
        candidate = lp_maximize_component(matrix, target, j)
        # the capped program contains the already-known solution, so it is
        # never infeasible here
        assert candidate is not None
        if candidate[j] > 0:
            witnesses.append(candidate)
            support.update(candidate.support())
    return SupportProfile(vertex=i, support=tuple(sorted(support)), witnesses=tuple(witnesses))


def build_kirchhoff(profiles: Sequence[SupportProfile]) -> RationalMatrix:
    """Unit Kirchhoff matrix of the support pattern.

    Column i has a 1 in row j for every j in the support of vertex i other
    than i itself, and minus their count on the diagonal; a vertex supported
    only by itself contributes a zero column.
    """
    m = len(profiles)
    ordered = sorted(profiles, key=lambda p: p.vertex)
    if [p.vertex for p in ordered] != list(range(m)):
        raise ValueError("need exactly one profile per vertex")
    columns = []
    for profile in ordered:
        column = [ZERO] * m
        degree = 0
        for j in profile.support:
            if j != profile.vertex:
                column[j] = ONE
                degree += 1
        column[profile.vertex] = Fraction(-degree)
        columns.append(column)
    return RationalMatrix.from_columns(columns, rows=m)


def decide_wr1(kirchhoff: RationalMatrix) -> Failure | None:
    """None when the kernel is one-dimensional with full support, else the obstruction.

    Full-support one-dimensional kernel means every vertex lies in one
    common terminal strong component, i.e. the support graph is weakly
    reversible with a single linkage class.
    """
    basis = kernel_basis(kirchhoff)
    if len(basis) != 1:
        return Failure(kind=FailureKind.KERNEL_DIMENSION, kernel_dimension=len(basis))
    support = basis[0].support()
    if len(support) != kirchhoff.cols:
        missing = tuple(sorted(set(range(kirchhoff.cols)) - set(support)))
        return Failure(kind=FailureKind.KERNEL_SUPPORT, missing=missing)
    return None


def average_witnesses(profile: SupportProfile) -> RationalVector:
    """Equal-weight average of the stored witnesses; feasible and positive on the support."""
    total = profile.witnesses[0]
    for witness in profile.witnesses[1:]:
        total = total + witness
    return total.scaled(Fraction(1, len(profile.witnesses)))


def extract_rates(
    decomposition: SourceDecomposition, profiles: Sequence[SupportProfile]
) -> tuple[dict[tuple[int, int], Fraction], tuple[RationalVector, ...]]:
    """Edge rates from the averaged witnesses, checked to reproduce every net vector.

    The average of the witnesses solves the same linear system and is
    strictly positive on the whole support, so every emitted rate is
    positive; a zero rate or an inexact reconstruction is a bug, not an
    input condition.
    """
    rates: dict[tuple[int, int], Fraction] = {}
    averaged = []
    for profile in sorted(profiles, key=lambda p: p.vertex):
        i = profile.vertex
        mean = average_witnesses(profile)
        averaged.append(mean)
        base = decomposition.vertices[i]
        residual = list(decomposition.net_vector(i).entries)
        for j in profile.support:
            if j == i:
                continue
            value = mean[j]
            if value <= 0:
                raise InternalInvariantViolation(
                    f"averaged witness of vertex {i} vanishes on supported column {j}"
                )
            rates[(i, j)] = value
            other = decomposition.vertices[j]
            for axis in range(decomposition.n):
                residual[axis] -= value * (other[axis] - base[axis])
        if any(entry != 0 for entry in residual):
            raise InternalInvariantViolation(
                f"rates at vertex {i} do not reproduce its net vector"
            )
    return rates, tuple(averaged)


def realize_wr1(decomposition: SourceDecomposition) -> RealizationReport:
    """Decide realizability on the given vertex set and build the maximal realization.

    Failures are structured: an infeasible vertex (no realization can match
    its net vector), a kernel obstruction of the saturated support pattern
    (the pattern is not strongly connected as one component), or the
    degenerate single-vertex case whose graph would have no edges.
    """
    profiles = []
    for i in range(decomposition.m):
        profile = saturate_support(decomposition, i)
        if profile is None:
            return RealizationReport(
                failure=Failure(kind=FailureKind.INFEASIBLE_VERTEX, vertex=i)
            )
        profiles.append(profile)
    if decomposition.m == 1:
        # feasible single vertex forces w = 0; a one-vertex graph cannot
        # carry edges, and edgeless graphs are excluded outright
        return RealizationReport(failure=Failure(kind=FailureKind.SINGLE_VERTEX, vertex=0))
    kirchhoff = build_kirchhoff(profiles)
    obstruction = decide_wr1(kirchhoff)
    if obstruction is not None:
        return RealizationReport(failure=obstruction)
    rates, averaged = extract_rates(decomposition, profiles)
    graph = EGraph(
        vertices=decomposition.vertices,
        edges=tuple(sorted(rates)),
        rates=rates,
    )
    return RealizationReport(
        realization=Realization(graph=graph, profiles=tuple(profiles), averaged=averaged)
    )


def assert_maximal_supports(
    decomposition: SourceDecomposition, profiles: Sequence[SupportProfile]
) -> None:
    """Check that no excluded coordinate admits mass; raises on violation.

    For every vertex i and every j outside its support, the maximum of x_j
    over the vertex's feasible set must be exactly zero.
    """
    for profile in profiles:
        matrix = displacement_matrix(decomposition, profile.vertex)
        target = decomposition.net_vector(profile.vertex)
        excluded = set(range(decomposition.m)) - set(profile.support)
        for j in sorted(excluded):
            best = lp_maximize_component(matrix, target, j)
            if best is None or best[j] != 0:
                raise InternalInvariantViolation(
                    f"support of vertex {profile.vertex} misses attainable column {j}"
                )
