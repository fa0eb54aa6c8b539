"""Certified decision procedures for double-trace existence.

Each ``has_*`` operation decides one variant and returns a FeasibilityAnswer
whose certificate can be revalidated independently of the search that found
it.  The admissible-spanning-tree search is exact and complete below hard
size thresholds; above them it raises CapacityError rather than guessing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Collection, Optional, Union

from .errors import CapacityError, InputError, PreconditionError
from .graphs import (
    ComponentReport,
    ContractionMap,
    EdgeFragment,
    Graph,
    Host,
    MixedGraph,
    Multigraph,
    SimplifiedGraph,
    components_with_parity,
    contract,
    contract_mixed,
    induced_edge_subgraph,
    is_connected,
    is_even_subgraph,
    simplify_multigraph,
)
from .traces import RestrictionSet

TREE_SEARCH_MAX_VERTICES = 12
TREE_SEARCH_MAX_CORANK = 16

WitnessSpec = Optional[Union[Collection[int], Callable[[int], bool]]]


def _as_predicate(witness: WitnessSpec) -> Callable[[int], bool]:
    if witness is None:
        return lambda v: False
    if callable(witness):
        return witness
    wset = frozenset(witness)
    return lambda v: v in wset


@dataclass(frozen=True)
class SpanningTreeCertificate:
    """A spanning tree together with the parity/witness analysis of its
    co-tree, the evidence behind a positive tree-search verdict."""

    host: Union[Graph, Multigraph]
    tree_edges: frozenset[int]
    co_tree_report: ComponentReport

    @property
    def deficiency(self) -> int:
        """Number of odd co-tree components."""
        return sum(1 for c in self.co_tree_report if c.odd)

    @property
    def admissible(self) -> bool:
        return all(not c.odd or c.has_witness for c in self.co_tree_report)

    def revalidate(self, witness: WitnessSpec = None) -> bool:
        """Recheck the invariants from scratch: spanning tree shape, co-tree
        coverage, and per-component admissibility under ``witness``."""
        host = self.host
        n = host.vertex_count
        if len(self.tree_edges) != max(n - 1, 0):
            return False
        parent = list(range(n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i in self.tree_edges:
            a, b = host.endpoints(i)
            ra, rb = find(a), find(b)
            if ra == rb:
                return False  # cycle
            parent[ra] = rb
        if n > 0 and len({find(v) for v in range(n)}) != 1:
            return False
        co_tree = [i for i in range(host.edge_count) if i not in self.tree_edges]
        reported = sorted(i for c in self.co_tree_report for i in c.edges)
        if reported != co_tree:
            return False
        fresh = components_with_parity(
            induced_edge_subgraph(host, co_tree), _as_predicate(witness)
        )
        if len(fresh) != len(self.co_tree_report):
            return False
        for a, b in zip(fresh, self.co_tree_report):
            if a.edges != b.edges or a.odd != b.odd:
                return False
        return all(not c.odd or c.has_witness for c in fresh)


@dataclass(frozen=True)
class FeasibilityAnswer:
    """Verdict plus the evidence for it.

    True verdicts carry the certificates their characterization requires (a spanning
    tree analysis and/or an even fragment); false verdicts name at least one
    violated condition.
    """

    verdict: bool
    certificate: Optional[SpanningTreeCertificate] = None
    even_fragment: Optional[EdgeFragment] = None
    violated: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.verdict


def _reject_disconnected(host: Host) -> None:
    if not is_connected(host):
        raise PreconditionError("input graph must be connected")


def find_admissible_tree(
    h: Union[Graph, Multigraph],
    witness: WitnessSpec = None,
    *,
    max_vertices: int = TREE_SEARCH_MAX_VERTICES,
    max_corank: int = TREE_SEARCH_MAX_CORANK,
) -> Optional[SpanningTreeCertificate]:
    """First spanning tree whose co-tree components are all even or contain
    a witness vertex; None when the complete enumeration finds none.

    Trees are generated in lexicographic edge-index order, so the result is
    deterministic.  Inputs above the size thresholds raise CapacityError.
    """
    _reject_disconnected(h)
    pred = _as_predicate(witness)
    n, m = h.vertex_count, h.edge_count
    if n > max_vertices:
        raise CapacityError(
            f"tree search over {n} vertices exceeds the limit of {max_vertices}"
        )
    corank = m - n + 1
    if corank > max_corank:
        raise CapacityError(
            f"tree search with co-tree rank {corank} exceeds the limit of {max_corank}"
        )

    target = max(n - 1, 0)
    parent = list(range(n))

    # no path compression: unions must be undoable by a single assignment
    def find(x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    chosen: list[int] = []
    best: list[SpanningTreeCertificate] = []

    def attempt(tree: list[int]) -> bool:
        tree_set = set(tree)
        co_tree = [i for i in range(m) if i not in tree_set]
        report = components_with_parity(induced_edge_subgraph(h, co_tree), pred)
        if all(not c.odd or c.has_witness for c in report):
            best.append(SpanningTreeCertificate(h, frozenset(tree), report))
            return True
        return False

    def search(i: int) -> bool:
        if len(chosen) == target:
            return attempt(chosen)
        if i == m or len(chosen) + (m - i) < target:
            return False
        a, b = h.endpoints(i)
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            chosen.append(i)
            if search(i + 1):
                return True
            chosen.pop()
            parent[ra] = ra
        return search(i + 1)

    if search(0):
        return best[0]
    return None


# ---------------------------------------------------------------------------
# Unrestricted and single-direction variants
# ---------------------------------------------------------------------------


def has_strong_trace(g: Graph) -> FeasibilityAnswer:
    """Every connected graph admits a strong trace."""
    _reject_disconnected(g)
    return FeasibilityAnswer(True)


def _degree_gate(host: Host, d: int) -> Optional[str]:
    """Shared minimum-degree condition of the d-stable variants.

    A vertex of degree between 1 and d forces a repetition of order at most
    d (its whole edge set) in every double trace; an isolated vertex forces
    nothing, so the edgeless one-vertex graph passes vacuously.
    """
    low = [
        v
        for v in range(host.vertex_count)
        if 0 < host.degree(v) <= d
    ]
    if low:
        return f"vertices {low} have positive degree at most {d}"
    return None


def has_d_stable_trace(g: Graph, d: int) -> FeasibilityAnswer:
    """d-stable traces exist exactly when the minimum degree exceeds d."""
    _reject_disconnected(g)
    _check_order(d)
    bad = _degree_gate(g, d)
    if bad is None:
        return FeasibilityAnswer(True)
    return FeasibilityAnswer(False, violated=(bad,))


def has_antiparallel_strong_trace(g: Graph) -> FeasibilityAnswer:
    """Needs a spanning tree whose co-tree components all have an even
    number of edges."""
    _reject_disconnected(g)
    cert = find_admissible_tree(g, None)
    if cert is not None:
        return FeasibilityAnswer(True, certificate=cert)
    return FeasibilityAnswer(
        False, violated=("every spanning tree leaves an odd co-tree component",)
    )


def has_antiparallel_d_stable_trace(g: Graph, d: int) -> FeasibilityAnswer:
    _reject_disconnected(g)
    _check_order(d)
    bad = _degree_gate(g, d)
    if bad is not None:
        return FeasibilityAnswer(False, violated=(bad,))
    bar = 2 * d + 2
    cert = find_admissible_tree(g, lambda v: g.degree(v) >= bar)
    if cert is not None:
        return FeasibilityAnswer(True, certificate=cert)
    return FeasibilityAnswer(
        False,
        violated=(
            "every spanning tree leaves an odd co-tree component "
            f"without a vertex of degree at least {bar}",
        ),
    )


def has_parallel_strong_trace(g: Graph) -> FeasibilityAnswer:
    """Parallel strong traces exist exactly on Eulerian graphs."""
    _reject_disconnected(g)
    odd = [v for v in range(g.vertex_count) if g.degree(v) % 2 == 1]
    if not odd:
        return FeasibilityAnswer(True)
    return FeasibilityAnswer(False, violated=(f"odd-degree vertices {odd}",))


def has_parallel_d_stable_trace(g: Graph, d: int) -> FeasibilityAnswer:
    _reject_disconnected(g)
    _check_order(d)
    base = has_parallel_strong_trace(g)
    if not base.verdict:
        return base
    bad = _degree_gate(g, d)
    if bad is None:
        return FeasibilityAnswer(True)
    return FeasibilityAnswer(False, violated=(bad,))


def _check_order(d: int) -> None:
    if d < 1:
        raise InputError("repetition order bound must be at least 1")


# ---------------------------------------------------------------------------
# E-restricted variants
# ---------------------------------------------------------------------------


def _complement_fragment(g: Graph, r: RestrictionSet) -> EdgeFragment:
    for i in r.antiparallel_edges:
        if not (0 <= i < g.edge_count):
            raise InputError(f"restriction edge {i} out of range")
    eprime = [i for i in range(g.edge_count) if i not in r.antiparallel_edges]
    return induced_edge_subgraph(g, eprime)


def has_E_restricted_double_trace(g: Graph, r: RestrictionSet) -> FeasibilityAnswer:
    """Exists iff removing the restricted edges leaves an even graph."""
    _reject_disconnected(g)
    frag = _complement_fragment(g, r)
    if is_even_subgraph(frag):
        return FeasibilityAnswer(True, even_fragment=frag)
    bad = sorted(v for v in frag.vertices if frag.degree(v) % 2 == 1)
    return FeasibilityAnswer(
        False, violated=(f"vertices {bad} have odd degree outside the restriction",)
    )


@dataclass(frozen=True)
class RestrictedStrongAnalysis:
    """Intermediate artifacts of the restricted strong-trace decision,
    shared between the decision procedure and the construction pipeline."""

    contraction: ContractionMap
    simplified: SimplifiedGraph

    def witness_set(self, degree_bar: int | None = None) -> frozenset[int]:
        """Quotient vertices that excuse an odd co-tree component: the
        contracted ones, plus high-degree ones when a bar is given."""
        wit = set(self.contraction.eprime_vertices)
        if degree_bar is not None:
            q = self.contraction.quotient
            wit.update(v for v in range(q.vertex_count) if q.degree(v) >= degree_bar)
        return frozenset(wit)

    def witness_on_simplified(self, degree_bar: int | None = None) -> Callable[[int], bool]:
        limit = self.contraction.quotient.vertex_count
        wit = self.witness_set(degree_bar)
        return lambda v: v < limit and v in wit


def _restricted_analysis(g: Graph, r: RestrictionSet) -> RestrictedStrongAnalysis:
    eprime = [i for i in range(g.edge_count) if i not in r.antiparallel_edges]
    cmap = contract(g, eprime)
    simp = simplify_multigraph(cmap.quotient)
    return RestrictedStrongAnalysis(cmap, simp)


def _gate_quotient(q: Multigraph) -> None:
    if q.vertex_count > TREE_SEARCH_MAX_VERTICES:
        raise CapacityError(
            f"quotient with {q.vertex_count} vertices exceeds the tree-search "
            f"limit of {TREE_SEARCH_MAX_VERTICES}"
        )
    corank = q.edge_count - q.vertex_count + 1
    if corank > TREE_SEARCH_MAX_CORANK:
        raise CapacityError(
            f"quotient co-tree rank {corank} exceeds the tree-search "
            f"limit of {TREE_SEARCH_MAX_CORANK}"
        )


def has_E_restricted_strong_trace(g: Graph, r: RestrictionSet) -> FeasibilityAnswer:
    """Both conditions: the unrestricted fragment is even at every vertex,
    and the quotient by it has an admissible spanning tree (witnesses are
    the contracted vertices, tracked through simplification)."""
    _reject_disconnected(g)
    frag = _complement_fragment(g, r)
    if not is_even_subgraph(frag):
        bad = sorted(v for v in frag.vertices if frag.degree(v) % 2 == 1)
        return FeasibilityAnswer(
            False, violated=(f"vertices {bad} have odd degree outside the restriction",)
        )
    analysis = _restricted_analysis(g, r)
    _gate_quotient(analysis.contraction.quotient)
    cert = find_admissible_tree(
        analysis.simplified.graph,
        analysis.witness_on_simplified(),
        max_vertices=analysis.simplified.graph.vertex_count,
    )
    if cert is not None:
        return FeasibilityAnswer(True, certificate=cert, even_fragment=frag)
    return FeasibilityAnswer(
        False,
        violated=(
            "every spanning tree of the quotient leaves an odd co-tree "
            "component without a contracted vertex",
        ),
    )


def has_E_restricted_d_stable_trace(
    g: Graph, r: RestrictionSet, d: int
) -> FeasibilityAnswer:
    _reject_disconnected(g)
    _check_order(d)
    bad_deg = _degree_gate(g, d)
    if bad_deg is not None:
        return FeasibilityAnswer(False, violated=(bad_deg,))
    frag = _complement_fragment(g, r)
    if not is_even_subgraph(frag):
        bad = sorted(v for v in frag.vertices if frag.degree(v) % 2 == 1)
        return FeasibilityAnswer(
            False, violated=(f"vertices {bad} have odd degree outside the restriction",)
        )
    bar = 2 * d + 2
    analysis = _restricted_analysis(g, r)
    _gate_quotient(analysis.contraction.quotient)
    cert = find_admissible_tree(
        analysis.simplified.graph,
        analysis.witness_on_simplified(bar),
        max_vertices=analysis.simplified.graph.vertex_count,
    )
    if cert is not None:
        return FeasibilityAnswer(True, certificate=cert, even_fragment=frag)
    return FeasibilityAnswer(
        False,
        violated=(
            "every spanning tree of the quotient leaves an odd co-tree component "
            f"without a contracted vertex or a vertex of quotient degree >= {bar}",
        ),
    )


# ---------------------------------------------------------------------------
# Mixed-graph variants
# ---------------------------------------------------------------------------


def _has_balanced_orientation(
    nverts: list[int],
    und: list[tuple[int, int]],
    arcs: list[tuple[int, int]],
    degree: dict[int, int],
) -> bool:
    return _balanced_orientation(nverts, und, arcs, degree) is not None


def _balanced_orientation(
    nverts: list[int],
    und: list[tuple[int, int]],
    arcs: list[tuple[int, int]],
    degree: dict[int, int],
) -> Optional[list[int]]:
    """Orient the undirected edges so every vertex has equal in- and
    out-degree, or report that none exists.  Max-flow matching tails to
    edges; the k-th result entry is 0 when und[k] keeps its stored order
    and 1 when it is reversed."""
    out_a: dict[int, int] = {v: 0 for v in nverts}
    in_a: dict[int, int] = {v: 0 for v in nverts}
    for t, h in arcs:
        out_a[t] += 1
        in_a[h] += 1
    for v in nverts:
        if degree[v] % 2 != 0:
            return None
        half = degree[v] // 2
        if out_a[v] > half or in_a[v] > half:
            return None
    if not und:
        return [] if all(out_a[v] == in_a[v] for v in nverts) else None

    # nodes: 0 = source, 1 = sink, vertices, then one node per undirected edge
    vid = {v: 2 + k for k, v in enumerate(nverts)}
    eid0 = 2 + len(nverts)
    size = eid0 + len(und)
    cap: list[dict[int, int]] = [dict() for _ in range(size)]

    def add(u: int, w: int, c: int) -> None:
        cap[u][w] = cap[u].get(w, 0) + c
        cap[w].setdefault(u, 0)

    for v in nverts:
        quota = degree[v] // 2 - out_a[v]
        if quota > 0:
            add(0, vid[v], quota)
    for k, (a, b) in enumerate(und):
        add(vid[a], eid0 + k, 1)
        add(vid[b], eid0 + k, 1)
        add(eid0 + k, 1, 1)

    # Ford-Fulkerson with BFS augmenting paths; tiny networks only
    flow = 0
    while True:
        prev = [-1] * size
        prev[0] = 0
        queue = [0]
        while queue and prev[1] == -1:
            u = queue.pop(0)
            for w, c in cap[u].items():
                if c > 0 and prev[w] == -1:
                    prev[w] = u
                    queue.append(w)
        if prev[1] == -1:
            break
        # bottleneck is always 1 on these unit-ish networks
        path = []
        node = 1
        while node != 0:
            path.append((prev[node], node))
            node = prev[node]
        bottleneck = min(cap[u][w] for u, w in path)
        for u, w in path:
            cap[u][w] -= bottleneck
            cap[w][u] = cap[w].get(u, 0) + bottleneck
        flow += bottleneck
    if flow != len(und):
        return None
    # a saturated vertex->edge unit marks that vertex as the edge's tail
    tails = []
    for k, (a, b) in enumerate(und):
        tails.append(0 if cap[vid[a]][eid0 + k] == 0 else 1)
    return tails


def _piece_degrees(
    verts: Collection[int],
    und: Collection[tuple[int, int]],
    arcs: Collection[tuple[int, int]],
) -> dict[int, int]:
    degree = {v: 0 for v in verts}
    for a, c in und:
        degree[a] += 1
        degree[c] += 1
    for t, h in arcs:
        degree[t] += 1
        degree[h] += 1
    return degree


def mixed_euler_feasible(b: MixedGraph) -> bool:
    """Whether a closed walk can traverse every undirected edge and arc
    exactly once, respecting arc directions."""
    _reject_disconnected(b)
    verts = list(range(b.vertex_count))
    degree = _piece_degrees(verts, b.edges, b.arcs)
    return _has_balanced_orientation(verts, list(b.edges), list(b.arcs), degree)


def mixed_cut_condition(b: MixedGraph, *, max_vertices: int = 8) -> bool:
    """All-subsets formulation: for every vertex set X the crossing count
    e(X) minus the arc imbalance across X must be non-negative and even.
    Exponential; verification use only."""
    _reject_disconnected(b)
    n = b.vertex_count
    if n > max_vertices:
        raise CapacityError(f"{n} vertices exceeds the subset-check limit {max_vertices}")
    for mask in range(1 << n):
        inside = [v for v in range(n) if mask >> v & 1]
        inset = set(inside)
        e_cross = sum(1 for a, c in b.edges if (a in inset) != (c in inset))
        a_out = sum(1 for t, h in b.arcs if t in inset and h not in inset)
        a_in = sum(1 for t, h in b.arcs if h in inset and t not in inset)
        f = e_cross - abs(a_out - a_in)
        if f < 0 or f % 2 != 0:
            return False
    return True


def _mixed_fragment_components(
    b: MixedGraph, eprime: Collection[int]
) -> list[tuple[list[int], list[tuple[int, int]], list[tuple[int, int]]]]:
    """Components of the subgraph made of the eprime undirected edges plus
    every arc: (vertices, undirected endpoint pairs, arc pairs) per part."""
    parent = list(range(b.vertex_count))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    pieces = [b.edges[i] for i in sorted(eprime)] + list(b.arcs)
    for a, c in pieces:
        ra, rc = find(a), find(c)
        if ra != rc:
            parent[ra] = rc
    groups: dict[int, list[int]] = {}
    touched = set()
    for a, c in pieces:
        touched.add(a)
        touched.add(c)
    for v in sorted(touched):
        groups.setdefault(find(v), []).append(v)
    out = []
    for root in sorted(groups, key=lambda r: min(groups[r])):
        verts = groups[root]
        vset = set(verts)
        und = [b.edges[i] for i in sorted(eprime) if b.edges[i][0] in vset]
        arcs = [(t, h) for t, h in b.arcs if t in vset]
        out.append((verts, und, arcs))
    return out


def _mixed_restricted_core(
    b: MixedGraph, r: RestrictionSet, degree_bar: int | None
) -> FeasibilityAnswer:
    und_count = len(b.edges)
    for i in r.antiparallel_edges:
        if not (0 <= i < und_count):
            raise InputError(f"restriction edge {i} out of range")
    eprime = [i for i in range(und_count) if i not in r.antiparallel_edges]

    for verts, und, arcs in _mixed_fragment_components(b, eprime):
        degree = _piece_degrees(verts, und, arcs)
        if not _has_balanced_orientation(verts, und, arcs, degree):
            return FeasibilityAnswer(
                False,
                violated=(
                    f"fragment component on vertices {verts} admits no "
                    "direction-respecting Euler tour",
                ),
            )

    cmap = contract_mixed(b, eprime)
    _gate_quotient(cmap.quotient)
    simp = simplify_multigraph(cmap.quotient)
    limit = cmap.quotient.vertex_count
    wit = set(cmap.eprime_vertices)
    if degree_bar is not None:
        wit.update(
            v for v in range(limit) if cmap.quotient.degree(v) >= degree_bar
        )
    cert = find_admissible_tree(
        simp.graph,
        lambda v: v < limit and v in wit,
        max_vertices=simp.graph.vertex_count,
    )
    if cert is not None:
        return FeasibilityAnswer(True, certificate=cert)
    reason = "every spanning tree of the quotient leaves an odd co-tree component without a contracted vertex"
    if degree_bar is not None:
        reason += f" or a vertex of quotient degree >= {degree_bar}"
    return FeasibilityAnswer(False, violated=(reason,))


def has_E_restricted_strong_trace_mixed(
    b: MixedGraph, r: RestrictionSet
) -> FeasibilityAnswer:
    """Mixed analogue: every component of the fragment made of unrestricted
    edges plus all arcs must admit a direction-respecting Euler tour, and
    the quotient by that fragment needs an admissible tree."""
    _reject_disconnected(b)
    return _mixed_restricted_core(b, r, None)


def has_E_restricted_d_stable_trace_mixed(
    b: MixedGraph, r: RestrictionSet, d: int
) -> FeasibilityAnswer:
    _reject_disconnected(b)
    _check_order(d)
    bad = _degree_gate(b, d)
    if bad is not None:
        return FeasibilityAnswer(False, violated=(bad,))
    return _mixed_restricted_core(b, r, 2 * d + 2)
