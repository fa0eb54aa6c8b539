"""Graph values and structural operations.

Three immutable host types share one convention: vertices are ``0..n-1`` and
edges are identified by their position in the edge list.  Every subset or
certificate elsewhere in the package is a set of these positional indices.

* :class:`Graph` - simple undirected graph (no loops, no parallel edges).
* :class:`Multigraph` - undirected, loops and parallel edges allowed.
* :class:`MixedGraph` - undirected edges plus arcs with a fixed direction.

For a :class:`MixedGraph` the traversable objects are indexed together:
undirected edges first (in file/list order), then arcs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Collection, Iterable, Optional, Union

from .errors import CapacityError, InputError

# ---------------------------------------------------------------------------
# Host types
# ---------------------------------------------------------------------------


def _as_pairs(edges: Iterable) -> tuple[tuple[int, int], ...]:
    return tuple((int(u), int(v)) for u, v in edges)


def _check_range(pairs: tuple[tuple[int, int], ...], n: int, what: str) -> None:
    for i, (u, v) in enumerate(pairs):
        if not (0 <= u < n and 0 <= v < n):
            raise InputError(f"{what} {i} = ({u}, {v}) out of range for {n} vertices")


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..vertex_count-1``."""

    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", _as_pairs(self.edges))
        if self.vertex_count < 0:
            raise InputError("vertex_count must be non-negative")
        _check_range(self.edges, self.vertex_count, "edge")
        seen = set()
        for i, (u, v) in enumerate(self.edges):
            if u == v:
                raise InputError(f"edge {i} is a loop; use Multigraph")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise InputError(f"edge {i} duplicates pair {key}; use Multigraph")
            seen.add(key)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def endpoints(self, i: int) -> tuple[int, int]:
        return self.edges[i]

    def is_arc(self, i: int) -> bool:
        return False

    def incident(self, v: int) -> tuple[int, ...]:
        return tuple(i for i, (a, b) in enumerate(self.edges) if v in (a, b))

    def degree(self, v: int) -> int:
        return sum(1 for a, b in self.edges if v in (a, b))

    def neighbors(self, v: int) -> tuple[int, ...]:
        out = []
        for a, b in self.edges:
            if a == v:
                out.append(b)
            elif b == v:
                out.append(a)
        return tuple(sorted(out))

    def min_degree(self) -> int:
        return min((self.degree(v) for v in range(self.vertex_count)), default=0)

    def max_degree(self) -> int:
        return max((self.degree(v) for v in range(self.vertex_count)), default=0)


@dataclass(frozen=True)
class Multigraph:
    """Undirected multigraph: loops and parallel edges allowed.

    A loop contributes 2 to the degree of its vertex but appears once in
    ``incident``.
    """

    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", _as_pairs(self.edges))
        if self.vertex_count < 0:
            raise InputError("vertex_count must be non-negative")
        _check_range(self.edges, self.vertex_count, "edge")

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def endpoints(self, i: int) -> tuple[int, int]:
        return self.edges[i]

    def is_arc(self, i: int) -> bool:
        return False

    def is_loop(self, i: int) -> bool:
        a, b = self.edges[i]
        return a == b

    def incident(self, v: int) -> tuple[int, ...]:
        return tuple(i for i, (a, b) in enumerate(self.edges) if v in (a, b))

    def degree(self, v: int) -> int:
        d = 0
        for a, b in self.edges:
            if a == v:
                d += 1
            if b == v:
                d += 1
        return d

    def min_degree(self) -> int:
        return min((self.degree(v) for v in range(self.vertex_count)), default=0)

    def max_degree(self) -> int:
        return max((self.degree(v) for v in range(self.vertex_count)), default=0)


@dataclass(frozen=True)
class MixedGraph:
    """Graph with undirected edges and direction-fixed arcs.

    Traversable objects are indexed together: undirected edges get
    ``0..len(edges)-1``, arcs continue from ``len(edges)``.  Loops are not
    allowed.  Duplicate undirected pairs and duplicate identical arcs are
    rejected; an opposite arc pair (u,v)/(v,u) and an arc alongside an
    undirected edge on the same pair are both fine.
    """

    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    arcs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", _as_pairs(self.edges))
        object.__setattr__(self, "arcs", _as_pairs(self.arcs))
        if self.vertex_count < 0:
            raise InputError("vertex_count must be non-negative")
        _check_range(self.edges, self.vertex_count, "edge")
        _check_range(self.arcs, self.vertex_count, "arc")
        seen = set()
        for i, (u, v) in enumerate(self.edges):
            if u == v:
                raise InputError(f"edge {i} is a loop")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise InputError(f"edge {i} duplicates pair {key}")
            seen.add(key)
        seen_arcs = set()
        for i, (u, v) in enumerate(self.arcs):
            if u == v:
                raise InputError(f"arc {i} is a loop")
            if (u, v) in seen_arcs:
                raise InputError(f"arc {i} duplicates arc ({u}, {v})")
            seen_arcs.add((u, v))

    @property
    def edge_count(self) -> int:
        return len(self.edges) + len(self.arcs)

    def endpoints(self, i: int) -> tuple[int, int]:
        if i < len(self.edges):
            return self.edges[i]
        return self.arcs[i - len(self.edges)]

    def is_arc(self, i: int) -> bool:
        return i >= len(self.edges)

    def incident(self, v: int) -> tuple[int, ...]:
        out = [i for i, (a, b) in enumerate(self.edges) if v in (a, b)]
        base = len(self.edges)
        out += [base + i for i, (a, b) in enumerate(self.arcs) if v in (a, b)]
        return tuple(out)

    def degree(self, v: int) -> int:
        """Total degree: undirected degree plus in- plus out-degree."""
        d = sum(1 for a, b in self.edges if v in (a, b))
        d += sum(1 for a, b in self.arcs if v in (a, b))
        return d

    def out_degree(self, v: int) -> int:
        return sum(1 for a, _ in self.arcs if a == v)

    def in_degree(self, v: int) -> int:
        return sum(1 for _, b in self.arcs if b == v)

    def min_degree(self) -> int:
        return min((self.degree(v) for v in range(self.vertex_count)), default=0)


Host = Union[Graph, Multigraph, MixedGraph]


def is_connected(host: Host) -> bool:
    """True iff the host is connected (weakly, for mixed graphs).

    Isolated vertices count: a 2-vertex graph with no edges is disconnected,
    a 1-vertex graph is connected.
    """
    n = host.vertex_count
    if n == 0:
        return True
    adj: list[list[int]] = [[] for _ in range(n)]
    for i in range(host.edge_count):
        a, b = host.endpoints(i)
        adj[a].append(b)
        adj[b].append(a)
    seen = [False] * n
    stack = [0]
    seen[0] = True
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if not seen[w]:
                seen[w] = True
                stack.append(w)
    return all(seen)


# ---------------------------------------------------------------------------
# Edge fragments and parity components
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EdgeFragment:
    """Subgraph induced by a set of edge indices: those edges plus every
    vertex they touch (no isolated vertices)."""

    host: Host
    edges: tuple[int, ...]
    vertices: frozenset[int]

    def degree(self, v: int) -> int:
        d = 0
        for i in self.edges:
            a, b = self.host.endpoints(i)
            if a == v:
                d += 1
            if b == v:
                d += 1
        return d


def induced_edge_subgraph(host: Host, edge_set: Collection[int]) -> EdgeFragment:
    """Fragment of ``host`` induced by ``edge_set`` (positional indices)."""
    edges = tuple(sorted(set(int(i) for i in edge_set)))
    for i in edges:
        if not (0 <= i < host.edge_count):
            raise InputError(f"edge index {i} out of range")
    verts = set()
    for i in edges:
        a, b = host.endpoints(i)
        verts.add(a)
        verts.add(b)
    return EdgeFragment(host, edges, frozenset(verts))


def is_even_subgraph(fragment: EdgeFragment) -> bool:
    """True iff every vertex of the fragment has even degree within it.

    Vertices outside the fragment have degree 0 there, so this is equivalent
    to "removing the complementary edges from the host leaves an even graph".
    """
    return all(fragment.degree(v) % 2 == 0 for v in fragment.vertices)


@dataclass(frozen=True)
class Component:
    """One connected component of an edge fragment."""

    vertices: frozenset[int]
    edges: frozenset[int]
    edge_count: int
    odd: bool
    has_witness: bool


@dataclass(frozen=True)
class ComponentReport:
    components: tuple[Component, ...]

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return len(self.components)


def components_with_parity(
    fragment: EdgeFragment,
    witness: Optional[Collection[int] | Callable[[int], bool]] = None,
) -> ComponentReport:
    """Connected components of a fragment with edge-count parity and witness
    flags.

    ``witness`` marks distinguished vertices, given as a vertex collection or
    a predicate; a component's flag is true iff it contains one.
    """
    if witness is None:
        pred: Callable[[int], bool] = lambda v: False
    elif callable(witness):
        pred = witness
    else:
        wset = frozenset(witness)
        pred = lambda v: v in wset

    parent: dict[int, int] = {v: v for v in fragment.vertices}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in fragment.edges:
        a, b = fragment.host.endpoints(i)
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    groups: dict[int, list[int]] = {}
    for i in fragment.edges:
        a, _ = fragment.host.endpoints(i)
        groups.setdefault(find(a), []).append(i)

    comps = []
    for root in sorted(groups, key=lambda r: min(groups[r])):
        edge_ids = frozenset(groups[root])
        verts = set()
        for i in edge_ids:
            a, b = fragment.host.endpoints(i)
            verts.add(a)
            verts.add(b)
        comps.append(
            Component(
                vertices=frozenset(verts),
                edges=edge_ids,
                edge_count=len(edge_ids),
                odd=len(edge_ids) % 2 == 1,
                has_witness=any(pred(v) for v in sorted(verts)),
            )
        )
    return ComponentReport(tuple(comps))


# ---------------------------------------------------------------------------
# Contraction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ContractionMap:
    """Result of contracting the components of an edge subset.

    ``quotient`` keeps one edge per surviving host edge, endpoints listed in
    the same order as the host edge's, so a traversal direction lifts by edge
    index alone.  ``eprime_vertices`` are the quotient vertices that stand for
    contracted components.
    """

    host: Host
    quotient: Multigraph
    vertex_image: tuple[int, ...]
    eprime_vertices: frozenset[int]
    edge_origin: tuple[int, ...]

    def component_vertices(self, q: int) -> tuple[int, ...]:
        """Host vertices mapped onto quotient vertex ``q``."""
        return tuple(v for v, img in enumerate(self.vertex_image) if img == q)


def _contract_over(host: Host, merged_edges: Collection[int],
                   surviving_edges: Collection[int]) -> ContractionMap:
    n = host.vertex_count
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    touched = set()
    for i in merged_edges:
        a, b = host.endpoints(i)
        touched.add(a)
        touched.add(b)
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    image = [-1] * n
    root_image: dict[int, int] = {}
    next_id = 0
    for v in range(n):
        r = find(v)
        if v in touched:
            if r not in root_image:
                root_image[r] = next_id
                next_id += 1
            image[v] = root_image[r]
        else:
            image[v] = next_id
            next_id += 1

    eprime = frozenset(root_image.values())
    qedges = []
    origin = []
    for i in sorted(surviving_edges):
        a, b = host.endpoints(i)
        qedges.append((image[a], image[b]))
        origin.append(i)
    quotient = Multigraph(next_id, tuple(qedges))
    return ContractionMap(host, quotient, tuple(image), eprime, tuple(origin))


def contract(g: Graph, eprime: Collection[int]) -> ContractionMap:
    """Contract each connected component of the ``eprime`` fragment of ``g``
    to a single vertex; the remaining edges survive and may become loops or
    parallel edges."""
    eprime = set(int(i) for i in eprime)
    for i in eprime:
        if not (0 <= i < g.edge_count):
            raise InputError(f"edge index {i} out of range")
    survivors = [i for i in range(g.edge_count) if i not in eprime]
    return _contract_over(g, eprime, survivors)


def contract_mixed(b: MixedGraph, eprime: Collection[int]) -> ContractionMap:
    """Contract the fragment induced by the ``eprime`` undirected edges plus
    every arc.  Survivors are the remaining undirected edges; ``edge_origin``
    refers to undirected edge indices of ``b``."""
    eprime = set(int(i) for i in eprime)
    for i in eprime:
        if not (0 <= i < len(b.edges)):
            raise InputError(f"undirected edge index {i} out of range")
    merged = sorted(eprime) + [len(b.edges) + k for k in range(len(b.arcs))]
    survivors = [i for i in range(len(b.edges)) if i not in eprime]
    return _contract_over(b, merged, survivors)


# ---------------------------------------------------------------------------
# Simplification of multigraphs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SimplifiedGraph:
    """A multigraph rewritten as a simple graph by subdividing edges.

    Every loop becomes a path of length 3 (two new vertices) and every member
    of a parallel class becomes a path of length 2 (one new vertex); plain
    edges are kept.  Original vertices keep their indices; new vertices are
    appended in edge order.

    ``edge_paths[i]`` lists the simple-graph edge indices replacing
    multigraph edge ``i``, ordered from the edge's first stored endpoint to
    its second; traversing the whole path "forwards" (each simple edge in
    stored orientation) corresponds to traversing edge ``i`` from its first
    endpoint to its second.  ``vertex_origin[w]`` is -1 for an original
    vertex and the subdivided multigraph edge index for a new one.
    """

    source: Multigraph
    graph: Graph
    edge_paths: tuple[tuple[int, ...], ...]
    vertex_origin: tuple[int, ...]

    @property
    def is_identity(self) -> bool:
        return all(len(p) == 1 for p in self.edge_paths)


def simplify_multigraph(m: Multigraph) -> SimplifiedGraph:
    """Subdivide loops and parallel edges so the result is simple."""
    class_size: dict[tuple[int, int], int] = {}
    for a, b in m.edges:
        key = (min(a, b), max(a, b))
        class_size[key] = class_size.get(key, 0) + 1

    next_vertex = m.vertex_count
    origin = [-1] * m.vertex_count
    new_edges: list[tuple[int, int]] = []
    paths: list[tuple[int, ...]] = []

    for i, (a, b) in enumerate(m.edges):
        key = (min(a, b), max(a, b))
        if a == b:
            # loop: a - p - q - a
            p, q = next_vertex, next_vertex + 1
            next_vertex += 2
            origin += [i, i]
            base = len(new_edges)
            new_edges += [(a, p), (p, q), (q, a)]
            paths.append((base, base + 1, base + 2))
        elif class_size[key] > 1:
            # parallel class member: a - mid - b
            mid = next_vertex
            next_vertex += 1
            origin.append(i)
            base = len(new_edges)
            new_edges += [(a, mid), (mid, b)]
            paths.append((base, base + 1))
        else:
            paths.append((len(new_edges),))
            new_edges.append((a, b))

    graph = Graph(next_vertex, tuple(new_edges))
    return SimplifiedGraph(m, graph, tuple(paths), tuple(origin))


# ---------------------------------------------------------------------------
# Automorphisms
# ---------------------------------------------------------------------------


def automorphisms(g: Graph, max_vertices: int = 10) -> tuple[tuple[int, ...], ...]:
    """All vertex permutations preserving adjacency, identity included.

    Intended for small graphs; inputs above ``max_vertices`` raise
    :class:`CapacityError`.
    """
    n = g.vertex_count
    if n > max_vertices:
        raise CapacityError(f"{n} vertices exceeds automorphism limit {max_vertices}")
    if n == 0:
        return ((),)

    adj = [[False] * n for _ in range(n)]
    for a, b in g.edges:
        adj[a][b] = adj[b][a] = True
    deg = [g.degree(v) for v in range(n)]

    result: list[tuple[int, ...]] = []
    image = [-1] * n
    used = [False] * n

    def extend(v: int) -> None:
        if v == n:
            result.append(tuple(image))
            return
        for w in range(n):
            if used[w] or deg[w] != deg[v]:
                continue
            if any(adj[v][u] != adj[w][image[u]] for u in range(v)):
                continue
            image[v] = w
            used[w] = True
            extend(v + 1)
            used[w] = False
        image[v] = -1

    extend(0)
    return tuple(result)


# ---------------------------------------------------------------------------
# Small generators used by tests and the CLI
# ---------------------------------------------------------------------------


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple(itertools.combinations(range(n), 2)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InputError("cycle needs at least 3 vertices")
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))
