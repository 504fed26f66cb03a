"""Simple undirected graphs: representation, I/O, powers, subdivisions,
and the generator families used as fixtures (including the Sylvester
bipartite graphs that exhibit sqrt(n) neighborhood discrepancy).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import IO, Iterable, Optional

import numpy as np

from .errors import ParseError, ResourceLimitError
from .rng import SplitMix64

HADAMARD_MAX_P = 13  # 2^26 matrix entries is the desk-scale cap
CLIQUE_MAX_N = 40

FAMILIES = (
    "path",
    "cycle",
    "grid",
    "complete",
    "complete_bipartite",
    "gnp",
    "all_d_subsets",
)


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices 0..n-1.

    adjacency[v] is the sorted tuple of neighbors of v; the structure is
    symmetric, loop-free and duplicate-free by construction.
    """

    n: int
    adjacency: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 0 or len(self.adjacency) != self.n:
            raise ValueError("adjacency length must equal n")
        for v, nbrs in enumerate(self.adjacency):
            if list(nbrs) != sorted(set(nbrs)):
                raise ValueError(f"neighbor list of {v} not sorted/deduplicated")
            for u in nbrs:
                if not 0 <= u < self.n:
                    raise ValueError(f"neighbor {u} of {v} out of range")
                if u == v:
                    raise ValueError(f"self-loop at vertex {v}")
                if v not in self.adjacency[u]:
                    raise ValueError(f"edge {{{v},{u}}} not symmetric")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs))

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])


def read_edge_list(stream: IO[str]) -> Graph:
    """Parse the textual edge-list format.

    Lines starting with '#' are comments; the first non-comment line must
    be "n <count>"; every following line is one edge "u v".
    """
    n: Optional[int] = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n":
                raise ParseError(f"expected header 'n <count>' at line {lineno}")
            try:
                n = int(parts[1])
            except ValueError:
                raise ParseError(f"bad vertex count at line {lineno}") from None
            if n < 0:
                raise ParseError(f"negative vertex count at line {lineno}")
            continue
        if len(parts) != 2:
            raise ParseError(f"malformed edge at line {lineno}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"malformed edge at line {lineno}") from None
        if u == v:
            raise ParseError(f"self-loop at line {lineno}")
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"vertex index out of range at line {lineno}")
        edges.append((u, v))
    if n is None:
        raise ParseError("missing 'n <count>' header")
    return Graph.from_edges(n, edges)


def write_edge_list(g: Graph, stream: IO[str]) -> None:
    stream.write(f"n {g.n}\n")
    for u, v in g.edges():
        stream.write(f"{u} {v}\n")


def _bfs_within(g: Graph, source: int, depth: int) -> list[int]:
    """Vertices at distance 1..depth from source."""
    dist = {source: 0}
    frontier = [source]
    out = []
    for d in range(1, depth + 1):
        nxt = []
        for u in frontier:
            for w in g.adjacency[u]:
                if w not in dist:
                    dist[w] = d
                    nxt.append(w)
                    out.append(w)
        frontier = nxt
        if not frontier:
            break
    return out


def graph_power(g: Graph, d: int) -> Graph:
    """G^d: edges between distinct vertices at graph distance <= d."""
    if d < 1:
        raise ValueError("graph power needs d >= 1")
    if d == 1:
        return g
    nbrs = [tuple(sorted(_bfs_within(g, v, d))) for v in range(g.n)]
    return Graph(g.n, tuple(nbrs))


def subdivide(g: Graph, r: int) -> Graph:
    """Replace each edge by a path through r fresh vertices.

    Fresh vertices are appended in edge-sorted order, path vertices
    consecutive, so fixtures are reproducible.
    """
    if r < 0:
        raise ValueError("subdivision count must be non-negative")
    if r == 0:
        return g
    edges = g.edges()
    total = g.n + r * len(edges)
    out: list[tuple[int, int]] = []
    nxt = g.n
    for u, v in edges:
        chain = [u] + list(range(nxt, nxt + r)) + [v]
        nxt += r
        out.extend(zip(chain, chain[1:]))
    return Graph.from_edges(total, out)


@dataclass(frozen=True)
class HadamardMatrix:
    """2^p x 2^p matrix with +-1 entries and orthogonal rows."""

    p: int
    entries: np.ndarray

    def __post_init__(self):
        m = 1 << self.p
        if self.entries.shape != (m, m):
            raise ValueError("entry matrix has wrong shape")


def hadamard(p: int) -> HadamardMatrix:
    """Kronecker-product recursion H_{p+1} = H_1 (x) H_p, H_0 = (1)."""
    if p < 0:
        raise ValueError("order exponent must be non-negative")
    if p > HADAMARD_MAX_P:
        raise ResourceLimitError(f"hadamard order exponent {p} exceeds cap {HADAMARD_MAX_P}")
    h1 = np.array([[1, 1], [1, -1]], dtype=np.int8)
    h = np.array([[1]], dtype=np.int8)
    for _ in range(p):
        h = np.kron(h1, h)
    return HadamardMatrix(p, h)


def sylvester_graph(p: int) -> Graph:
    """Bipartite graph whose bi-adjacency is hadamard(p) with -1 -> 0.

    Vertex convention: rows are 0..2^p-1, columns are 2^p..2^{p+1}-1.
    """
    h = hadamard(p).entries
    m = 1 << p
    edges = [(int(i), int(m + j)) for i, j in zip(*np.nonzero(h == 1))]
    return Graph.from_edges(2 * m, edges)


def _family_arity_error(name: str, params: list[int]) -> ValueError:
    return ValueError(f"bad parameters {params} for family {name!r}")


def generate_family(name: str, params: list[int], seed: int = 0) -> Graph:
    """Deterministic generator for the named graph family."""
    if name == "path":
        if len(params) != 1 or params[0] < 0:
            raise _family_arity_error(name, params)
        n = params[0]
        return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])
    if name == "cycle":
        if len(params) != 1 or params[0] < 3:
            raise _family_arity_error(name, params)
        n = params[0]
        return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])
    if name == "grid":
        if len(params) != 2 or min(params) < 1:
            raise _family_arity_error(name, params)
        rows, cols = params
        edges = []
        for r in range(rows):
            for c in range(cols):
                if r + 1 < rows:
                    edges.append((r * cols + c, (r + 1) * cols + c))
                if c + 1 < cols:
                    edges.append((r * cols + c, r * cols + c + 1))
        return Graph.from_edges(rows * cols, edges)
    if name == "complete":
        if len(params) != 1 or params[0] < 0:
            raise _family_arity_error(name, params)
        n = params[0]
        return Graph.from_edges(n, list(combinations(range(n), 2)))
    if name == "complete_bipartite":
        if len(params) != 2 or min(params) < 0:
            raise _family_arity_error(name, params)
        a, b = params
        return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])
    if name == "gnp":
        if len(params) != 3 or params[0] < 0 or params[2] <= 0 or params[1] < 0:
            raise _family_arity_error(name, params)
        n, num, den = params
        rng = SplitMix64(seed)
        edges = [(u, v) for u, v in combinations(range(n), 2) if rng.bernoulli(num, den)]
        return Graph.from_edges(n, edges)
    if name == "all_d_subsets":
        if len(params) != 2 or params[0] < 0 or not 0 <= params[1] <= params[0]:
            raise _family_arity_error(name, params)
        n, d = params
        subsets = list(combinations(range(n), d))
        edges = [(u, n + i) for i, sub in enumerate(subsets) for u in sub]
        return Graph.from_edges(n + len(subsets), edges)
    raise ValueError(f"unknown family {name!r}")


def _clique_number(g: Graph) -> int:
    """Exact maximum clique by branch and bound with a greedy color bound."""
    if g.n == 0:
        return 0
    order = sorted(range(g.n), key=g.degree, reverse=True)
    adj = [set(g.adjacency[v]) for v in range(g.n)]
    best = 1

    def color_bound(cands: list[int]) -> int:
        classes: list[set[int]] = []
        for v in cands:
            for cls in classes:
                if not (adj[v] & cls):
                    cls.add(v)
                    break
            else:
                classes.append({v})
        return len(classes)

    def expand(clique_size: int, cands: list[int]) -> None:
        nonlocal best
        if not cands:
            best = max(best, clique_size)
            return
        if clique_size + color_bound(cands) <= best:
            return
        for i, v in enumerate(cands):
            if clique_size + len(cands) - i <= best:
                return
            expand(clique_size + 1, [u for u in cands[i + 1 :] if u in adj[v]])

    expand(0, order)
    return best


def graph_stats(g: Graph) -> dict:
    """Degree summary plus the exact clique number on small graphs."""
    degs = [g.degree(v) for v in range(g.n)]
    avg = Fraction(2 * g.edge_count(), g.n) if g.n else Fraction(0)
    stats = {
        "min_degree": min(degs) if degs else 0,
        "max_degree": max(degs) if degs else 0,
        "average_degree": avg,
        "clique_number": _clique_number(g) if g.n <= CLIQUE_MAX_N else None,
    }
    return stats


def random_degenerate_graph(n: int, d: int, seed: int = 0) -> Graph:
    """Random d-degenerate graph: vertex i attaches to up to d earlier vertices."""
    rng = SplitMix64(seed)
    edges = []
    for v in range(1, n):
        k = min(v, rng.randrange(d + 1))
        for u in rng.sample(list(range(v)), k):
            edges.append((u, v))
    return Graph.from_edges(n, edges)


def is_bipartite(g: Graph) -> bool:
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] != -1:
            continue
        color[s] = 0
        frontier = [s]
        while frontier:
            nxt = []
            for u in frontier:
                for w in g.adjacency[u]:
                    if color[w] == -1:
                        color[w] = 1 - color[u]
                        nxt.append(w)
                    elif color[w] == color[u]:
                        return False
            frontier = nxt
    return True


def all_pairs_distances(g: Graph) -> list[dict[int, int]]:
    """Plain BFS from every vertex; used as an oracle for graph powers."""
    out = []
    for s in range(g.n):
        dist = {s: 0}
        frontier = [s]
        while frontier:
            nxt = []
            for u in frontier:
                for w in g.adjacency[u]:
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        nxt.append(w)
            frontier = nxt
        out.append(dist)
    return out
