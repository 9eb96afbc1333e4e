"""Independent oracles and random generators used by the tests.

Nothing here goes through the simplex or the realization engine: linear
programs are answered by exact enumeration of basic solutions, and
realizability questions by exhaustive search over out-edge patterns with a
hand-rolled strong-connectivity check.  That keeps both sides of every
comparison on separate code paths.
"""

from fractions import Fraction
from itertools import combinations, product
from random import Random

from wr1.graphs import EGraph
from wr1.ingest import PolynomialSystem, SourceDecomposition, Term, decompose
from wr1.linalg import RationalMatrix, RationalVector, rank, solve

ZERO = Fraction(0)
ONE = Fraction(1)


# ---------------------------------------------------------------------------
# linear-program oracles by basic-solution enumeration


def basic_feasible_points(matrix: RationalMatrix, rhs: RationalVector) -> list[RationalVector]:
    """All vertices of {x : matrix x = rhs, x >= 0}, by exact enumeration.

    The feasible set contains no line (x >= 0), so it is nonempty exactly
    when it has a vertex, and every vertex is a basic solution over some
    independent column subset of size rank(matrix).
    """
    r = rank(matrix)
    all_rows = range(matrix.rows)
    points = set()
    for subset in combinations(range(matrix.cols), r):
        sub = matrix.submatrix(all_rows, subset)
        if rank(sub) != len(subset):
            continue
        partial = solve(sub, rhs)
        if partial is None or any(v < 0 for v in partial):
            continue
        full = [ZERO] * matrix.cols
        for k, col in enumerate(subset):
            full[col] = partial[k]
        points.add(tuple(full))
    return [RationalVector(p) for p in sorted(points)]


def oracle_feasible(matrix: RationalMatrix, rhs: RationalVector) -> RationalVector | None:
    points = basic_feasible_points(matrix, rhs)
    return points[0] if points else None


def _with_bound_row(matrix: RationalMatrix, rhs: RationalVector, j: int):
    rows = [list(row) + [ZERO] for row in matrix.entries]
    bound = [ZERO] * (matrix.cols + 1)
    bound[j] = ONE
    bound[matrix.cols] = ONE
    rows.append(bound)
    extended = RationalMatrix.from_rows(rows)
    return extended, RationalVector(tuple(rhs.entries) + (ONE,))


def oracle_max_component(matrix: RationalMatrix, rhs: RationalVector, j: int) -> Fraction | None:
    """Max of x_j over {matrix x = rhs, x >= 0, x_j <= 1}; None when empty."""
    extended, extended_rhs = _with_bound_row(matrix, rhs, j)
    points = basic_feasible_points(extended, extended_rhs)
    if not points:
        return None
    return max(p[j] for p in points)


def oracle_positive_component(matrix: RationalMatrix, rhs: RationalVector, j: int) -> bool | None:
    """Is there x >= 0 with matrix x = rhs and x_j > 0?  None when infeasible.

    When the unit-capped polytope is empty but the uncapped one is not,
    every feasible point has x_j > 1, so the answer is yes; when the capped
    maximum is zero, a feasible point with x_j > 0 would yield a capped
    point with 0 < x_j <= 1 by a convex combination, so the answer is no.
    """
    if oracle_feasible(matrix, rhs) is None:
        return None
    best = oracle_max_component(matrix, rhs, j)
    if best is None:
        return True
    return best > 0


# ---------------------------------------------------------------------------
# realizability by exhaustive search


def _strongly_connected(m: int, edges: set[tuple[int, int]]) -> bool:
    def reachable(forward: bool) -> set[int]:
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for s, t in edges:
                a, b = (s, t) if forward else (t, s)
                if a == v and b not in seen:
                    seen.add(b)
                    stack.append(b)
        return seen

    full = set(range(m))
    return reachable(True) == full and reachable(False) == full


def wr1_realizable_bruteforce(dec: SourceDecomposition) -> bool:
    """Does any strongly connected network on the vertex set generate the dynamics?

    Per vertex, every candidate out-target set is tested for strictly
    positive rates by one enumeration LP per target (positivity on all
    targets at once then follows by averaging the per-target witnesses);
    the surviving patterns are combined exhaustively and the union graph is
    tested for strong connectivity, which for a graph on all m vertices is
    the same as weak reversibility with a single linkage class.
    """
    m = dec.m
    if m == 1:
        return False

    def feasible_patterns(i: int) -> list[tuple[int, ...]]:
        base = dec.vertices[i]
        w = dec.net_vector(i)
        others = [j for j in range(m) if j != i]
        good = []
        for size in range(1, m):
            for targets in combinations(others, size):
                columns = [
                    [Fraction(dec.vertices[j][axis] - base[axis]) for axis in range(dec.n)]
                    for j in targets
                ]
                sub = RationalMatrix.from_columns(columns, rows=dec.n)
                if all(
                    oracle_positive_component(sub, w, pos)
                    for pos in range(len(targets))
                ):
                    good.append(targets)
        return good

    options = [feasible_patterns(i) for i in range(m)]
    if any(not opts for opts in options):
        return False
    for combo in product(*options):
        edges = {(i, j) for i, targets in enumerate(combo) for j in targets}
        if _strongly_connected(m, edges):
            return True
    return False


# ---------------------------------------------------------------------------
# direct-summation oracle for net vectors and graph-to-decomposition bridge


def net_vectors_direct(graph: EGraph) -> list[RationalVector]:
    """Net vector per vertex by direct summation over its out-edges."""
    totals = [[ZERO] * graph.n for _ in range(graph.m)]
    for (source, target), value in graph.rates.items():
        src = graph.vertices[source]
        dst = graph.vertices[target]
        for axis in range(graph.n):
            totals[source][axis] += value * (dst[axis] - src[axis])
    return [RationalVector(tuple(row)) for row in totals]


def decomposition_of_dynamics(graph: EGraph) -> SourceDecomposition:
    """Decompose the mass-action dynamics of a rated graph on lattice vertices.

    Vertices whose net vector sums to zero disappear from the dynamics and
    therefore from the decomposition.
    """
    nets = net_vectors_direct(graph)
    species = tuple(f"s{i + 1}" for i in range(graph.n))
    terms = tuple(
        Term(vertex, tuple(net.entries))
        for vertex, net in zip(graph.vertices, nets)
        if not net.is_zero()
    )
    return decompose(PolynomialSystem(species, terms))


# ---------------------------------------------------------------------------
# random generators


def _random_fraction(rng: Random, max_value: int = 10) -> Fraction:
    return Fraction(rng.randint(1, max_value), rng.randint(1, max_value))


def _distinct_vertices(rng: Random, n: int, m: int, top: int = 3) -> tuple[tuple[int, ...], ...]:
    while (top + 1) ** n < m:
        top += 1
    pool = set()
    while len(pool) < m:
        pool.add(tuple(rng.randint(0, top) for _ in range(n)))
    return tuple(sorted(pool))


def random_wr1_graph(rng: Random, max_n: int = 4, max_m: int = 6) -> EGraph:
    """Random strongly connected single-class rated graph, every net vector nonzero.

    A shuffled Hamiltonian cycle guarantees strong connectivity and a single
    linkage class; extra edges and the rates are random.  Samples with some
    perfectly balanced vertex are rejected so the dynamics keeps all m
    monomials visible.
    """
    while True:
        n = rng.randint(1, max_n)
        m = rng.randint(2, max_m)
        vertices = _distinct_vertices(rng, n, m)
        order = list(range(m))
        rng.shuffle(order)
        edges = {(order[k], order[(k + 1) % m]) for k in range(m)}
        for s in range(m):
            for t in range(m):
                if s != t and rng.random() < 0.2:
                    edges.add((s, t))
        rates = {edge: _random_fraction(rng) for edge in edges}
        graph = EGraph(vertices=vertices, edges=tuple(sorted(edges)), rates=rates)
        if all(not net.is_zero() for net in net_vectors_direct(graph)):
            return graph


def random_rated_digraph(rng: Random, max_m: int = 8) -> EGraph:
    """Random rated digraph of any shape: no self-loops, no isolated vertices."""
    n = rng.randint(1, 3)
    m = rng.randint(2, max_m)
    vertices = _distinct_vertices(rng, n, m, top=4)
    edges = set()
    for s in range(m):
        for t in range(m):
            if s != t and rng.random() < 0.3:
                edges.add((s, t))
    for v in range(m):
        if not any(v in edge for edge in edges):
            other = rng.choice([u for u in range(m) if u != v])
            edges.add((v, other) if rng.random() < 0.5 else (other, v))
    rates = {edge: _random_fraction(rng) for edge in edges}
    return EGraph(vertices=vertices, edges=tuple(sorted(edges)), rates=rates)


def random_wr_graph(rng: Random) -> EGraph:
    """Random weakly reversible rated graph with one to three linkage classes."""
    n = rng.randint(1, 3)
    classes = rng.randint(1, 3)
    sizes = [rng.randint(2, 4) for _ in range(classes)]
    vertices = list(_distinct_vertices(rng, n, sum(sizes), top=4))
    rng.shuffle(vertices)
    edges = set()
    start = 0
    for size in sizes:
        block = list(range(start, start + size))
        rng.shuffle(block)
        for k in range(size):
            edges.add((block[k], block[(k + 1) % size]))
        for s in block:
            for t in block:
                if s != t and rng.random() < 0.3:
                    edges.add((s, t))
        start += size
    rates = {edge: _random_fraction(rng) for edge in edges}
    return EGraph(vertices=tuple(vertices), edges=tuple(sorted(edges)), rates=rates)


def random_decomposition(rng: Random, max_n: int = 3, max_m: int = 4) -> SourceDecomposition:
    """Random decomposition with small rational net vectors (zero columns excluded)."""
    n = rng.randint(1, max_n)
    m = rng.randint(1, max_m)
    vertices = _distinct_vertices(rng, n, m)
    columns = []
    for _ in range(m):
        while True:
            column = [
                Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(n)
            ]
            if any(c != 0 for c in column):
                break
        columns.append(column)
    net = RationalMatrix.from_columns(columns, rows=n)
    species = tuple(f"s{i + 1}" for i in range(n))
    return SourceDecomposition(species, vertices, net)
