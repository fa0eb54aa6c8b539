"""Synthesis of traces behind positive feasibility verdicts.

The builders here turn certificates into actual walks: Euler tours and
doubled tours for the all-parallel cases, a split-and-project construction
for antiparallel traces with confined repetitions, and the full
contract/cut/lift/merge/repair pipeline for restricted strong traces.
Every operation is a deterministic function of its inputs, so repeated runs
reproduce the same step sequences byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

from . import search_backend
from .errors import (
    InputError,
    InternalConsistencyError,
    PreconditionError,
    SurgeryInapplicableError,
)
from .feasibility import (
    SpanningTreeCertificate,
    _balanced_orientation,
    _restricted_analysis,
    has_E_restricted_d_stable_trace,
    has_E_restricted_d_stable_trace_mixed,
    has_E_restricted_strong_trace,
    has_E_restricted_strong_trace_mixed,
)
from .graphs import (
    ComponentReport,
    ContractionMap,
    EdgeFragment,
    Graph,
    Host,
    MixedGraph,
    SimplifiedGraph,
    components_with_parity,
    contract_mixed,
    induced_edge_subgraph,
    is_connected,
    simplify_multigraph,
)
from .traces import (
    ClosedWalk,
    DoubleTrace,
    RestrictionSet,
    Step,
    step_head,
    step_tail,
    transition_system,
)

Walkable = Union[Host, EdgeFragment]


def _as_fragment(fragment: Walkable) -> EdgeFragment:
    if isinstance(fragment, EdgeFragment):
        return fragment
    return induced_edge_subgraph(fragment, range(fragment.edge_count))


# ---------------------------------------------------------------------------
# Euler tours and doubled tours
# ---------------------------------------------------------------------------


def _fragment_connected(frag: EdgeFragment) -> bool:
    return len(components_with_parity(frag)) <= 1


def euler_tour(fragment: Walkable) -> ClosedWalk:
    """Closed walk over the fragment using every edge exactly once.

    Arcs are traversed tail to head; when the fragment mixes arcs and
    undirected edges, the undirected ones are first oriented so that every
    vertex has matching in- and out-degree.  The walk starts at the lowest
    fragment vertex and always leaves along the lowest available edge.
    """
    frag = _as_fragment(fragment)
    host = frag.host
    if not frag.edges:
        if not isinstance(fragment, EdgeFragment) and not is_connected(host):
            raise PreconditionError("graph is disconnected")
        return ClosedWalk(host, ())
    if not _fragment_connected(frag):
        raise PreconditionError("fragment is disconnected")

    arcs = [i for i in frag.edges if host.is_arc(i)]
    verts = sorted(frag.vertices)
    # out[v] holds the steps allowed to leave v, lowest edge first
    out: dict[int, list[Step]] = {v: [] for v in verts}

    if arcs:
        und = [i for i in frag.edges if not host.is_arc(i)]
        degree = {v: frag.degree(v) for v in verts}
        tails = _balanced_orientation(
            verts,
            [host.endpoints(i) for i in und],
            [host.endpoints(i) for i in arcs],
            degree,
        )
        if tails is None:
            raise PreconditionError(
                "fragment admits no direction-respecting Euler tour"
            )
        for i in arcs:
            out[host.endpoints(i)[0]].append((i, 0))
        for k, i in enumerate(und):
            a, b = host.endpoints(i)
            out[a if tails[k] == 0 else b].append((i, tails[k]))
        for v in verts:
            out[v].sort()
        used: set[int] = set()  # every slot is unique already
    else:
        odd = [v for v in verts if frag.degree(v) % 2 == 1]
        if odd:
            raise PreconditionError(f"vertices {odd} have odd degree")
        for i in frag.edges:
            a, b = host.endpoints(i)
            out[a].append((i, 0))
            if b != a:
                out[b].append((i, 1))
        for v in verts:
            out[v].sort()
        used = set()

    directed = bool(arcs)
    ptr = {v: 0 for v in verts}
    start = verts[0]
    path: list[tuple[int, Optional[Step]]] = [(start, None)]
    circuit: list[tuple[int, Optional[Step]]] = []
    while path:
        v, _ = path[-1]
        moved = False
        while ptr[v] < len(out[v]):
            step = out[v][ptr[v]]
            ptr[v] += 1
            if directed or step[0] not in used:
                used.add(step[0])
                path.append((step_head(host, step), step))
                moved = True
                break
        if not moved:
            circuit.append(path.pop())
    steps = tuple(s for _, s in reversed(circuit) if s is not None)
    if len(steps) != len(frag.edges):
        raise InternalConsistencyError(
            "tour construction missed edges on a connected balanced fragment"
        )
    return ClosedWalk(host, steps)


def parallel_strong_trace(fragment: Walkable) -> DoubleTrace:
    """All-parallel double trace of the fragment without nontrivial
    repetitions.

    The tour doubled back to back already uses every edge twice in one
    direction; at vertices of degree four or more its visits pair up into
    separate transition classes, so those are joined by repetition surgery
    until a single class remains everywhere.
    """
    frag = _as_fragment(fragment)
    tour = euler_tour(frag)
    walk = DoubleTrace(frag.host, tour.steps + tour.steps)
    return _repair_to_strong(walk, sorted(frag.vertices), "doubled tour")


# ---------------------------------------------------------------------------
# Walk surgery
# ---------------------------------------------------------------------------


def merge_closed_walks(w1: ClosedWalk, w2: ClosedWalk, v: int) -> ClosedWalk:
    """Splice two closed walks sharing ``v`` into one.

    The result follows w1 until it first arrives at v, runs all of w2 from
    its first departure out of v, then resumes w1.  An empty operand is
    returned unchanged alongside the other.
    """
    if w1.host is not w2.host and w1.host != w2.host:
        raise InputError("walks live on different graphs")
    if not w2.steps:
        return w1
    if not w1.steps:
        return w2
    arrivals = [t for t in range(len(w1.steps)) if w1.head(t) == v]
    departures = [t for t in range(len(w2.steps)) if w2.tail(t) == v]
    if not arrivals or not departures:
        raise PreconditionError(f"vertex {v} does not occur in both walks")
    i = arrivals[0]
    j = departures[0]
    steps = (
        w1.steps[: i + 1] + w2.steps[j:] + w2.steps[:j] + w1.steps[i + 1 :]
    )
    return ClosedWalk(w1.host, steps)


def reduce_repetition(w: DoubleTrace, v: int) -> DoubleTrace:
    """Join two transition classes at ``v`` by reordering subwalks.

    Needs an edge at v that the walk uses twice in the same direction and at
    least three occurrences of v.  The walk is cut at the departures tied to
    that edge's two traversals and at the departure of a visit from another
    class; swapping the first two segments relinks the classes while every
    step keeps its own direction and all other vertices keep their exact
    adjacencies.
    """
    host = w.host
    L = len(w.steps)
    ts = transition_system(w, v)
    comps = ts.components
    if len(comps) < 2:
        raise SurgeryInapplicableError(
            f"walk has a single transition class at vertex {v}"
        )
    if len(ts.links) < 3:
        raise SurgeryInapplicableError(
            f"vertex {v} occurs only {len(ts.links)} times"
        )

    uses: dict[int, list[int]] = {}
    for e, f in w.steps:
        uses.setdefault(e, []).append(f)

    def qualifies(e: int) -> bool:
        a, b = host.endpoints(e)
        if a == b:
            return False
        fs = uses.get(e, ())
        return len(fs) == 2 and fs[0] == fs[1]

    chosen = None
    first_comp = None
    for comp in comps:  # ordered by lowest member
        cands = sorted(e for e in comp if qualifies(e))
        if cands:
            chosen = cands[0]
            first_comp = comp
            break
    if chosen is None:
        raise SurgeryInapplicableError(
            f"no edge at vertex {v} is traversed twice in one direction"
        )
    second_comp = next(c for c in comps if c is not first_comp)

    t1, t2 = (t for t in range(L) if w.steps[t][0] == chosen)
    toward = w.head(t1) == v
    dA = (t1 + 1) % L if toward else t1
    dB = (t2 + 1) % L if toward else t2
    second_deps = [
        t
        for t in range(L)
        if w.tail(t) == v and w.steps[(t - 1) % L][0] in second_comp
    ]

    def pick(d1: int, d2: int) -> Optional[tuple[int, int, int]]:
        span = (d1 - d2) % L
        after = [t for t in second_deps if 0 < (t - d2) % L < span]
        if not after:
            return None
        return d1, d2, min(after, key=lambda t: (t - d2) % L)

    cut = pick(dA, dB) or pick(dB, dA)
    if cut is None:
        raise InternalConsistencyError(
            f"no visit of the second class follows either traversal at {v}"
        )
    d1, d2, d3 = cut

    def seg(a: int, b: int) -> tuple[Step, ...]:
        return w.steps[a:b] if a < b else w.steps[a:] + w.steps[:b]

    reordered = seg(d2, d3) + seg(d1, d2) + seg(d3, d1)
    return type(w)(host, reordered)


def _repair_to_strong(
    walk: DoubleTrace, vertices: Sequence[int], what: str
) -> DoubleTrace:
    """Apply repetition surgery until every listed vertex has one class.

    Surgery at one vertex never disturbs the others, so a single ascending
    pass settles the whole walk.  The callers only reach this point with
    walks whose repetition vertices all carry a same-direction edge; running
    out of moves therefore indicates a defect, not bad input.
    """
    w = walk
    for v in vertices:
        while len(transition_system(w, v).components) > 1:
            try:
                w = reduce_repetition(w, v)
            except SurgeryInapplicableError as exc:
                raise InternalConsistencyError(
                    f"{what}: stuck repetition at vertex {v} in walk {w.steps!r}"
                ) from exc
    return w


# ---------------------------------------------------------------------------
# Antiparallel traces from spanning-tree certificates
# ---------------------------------------------------------------------------


def _tree_boundary_walk(g: Graph, tree_edges: frozenset[int]) -> tuple[Step, ...]:
    # walk around the tree: each edge down then back up, children by index
    down: dict[int, list[Step]] = {v: [] for v in range(g.vertex_count)}
    for i in sorted(tree_edges):
        a, b = g.endpoints(i)
        down[a].append((i, 0))
        down[b].append((i, 1))
    steps: list[Step] = []
    seen = [False] * g.vertex_count
    seen[0] = True
    # stack entries: vertex, step that entered it, next branch to try
    stack: list[tuple[int, Optional[Step], int]] = [(0, None, 0)]
    while stack:
        v, entry, k = stack.pop()
        if k < len(down[v]):
            stack.append((v, entry, k + 1))
            step = down[v][k]
            u = step_head(g, step)
            if not seen[u]:
                seen[u] = True
                steps.append(step)
                stack.append((u, step, 0))
        elif entry is not None:
            steps.append((entry[0], 1 - entry[1]))
    return tuple(steps)


def _search_restricted_trace(
    host: Host,
    order: Sequence[int],
    labels: Sequence[int],
    require_strong: bool,
    d_max: int,
) -> Optional[tuple[Step, ...]]:
    ea = []
    eb = []
    for i in order:
        a, b = host.endpoints(i)
        ea.append(a)
        eb.append(b)
    found = search_backend.run(
        host.vertex_count,
        ea,
        eb,
        list(labels),
        require_strong=require_strong,
        d_max=d_max,
        mode=search_backend.MODE_EXISTS,
    )
    if found is None:
        return None
    return tuple((order[k], f) for k, f in found)


def antiparallel_strong_trace(
    g: Graph, cert: SpanningTreeCertificate
) -> DoubleTrace:
    """Antiparallel strong trace of ``g`` from an all-even co-tree
    certificate.

    Trees are walked around directly.  Otherwise an exhaustive
    direction-constrained search runs with the certificate's tree edges
    ordered first; the certificate guarantees a trace exists, so exhaustion
    is reported as an internal failure rather than a verdict.
    """
    _require_connected(g)
    if (
        not isinstance(cert, SpanningTreeCertificate)
        or cert.host != g
        or not cert.revalidate()
    ):
        raise PreconditionError(
            "certificate does not fit this graph or leaves an odd co-tree component"
        )
    if g.edge_count == g.vertex_count - 1:
        return DoubleTrace(g, _tree_boundary_walk(g, cert.tree_edges))
    order = sorted(cert.tree_edges) + [
        i for i in range(g.edge_count) if i not in cert.tree_edges
    ]
    steps = _search_restricted_trace(
        g, order, [search_backend.ANTI] * g.edge_count, True, 0
    )
    if steps is None:
        raise InternalConsistencyError(
            f"certified graph admitted no antiparallel strong trace: "
            f"edges {g.edges!r}, tree {sorted(cert.tree_edges)!r}"
        )
    return DoubleTrace(g, steps)


def _splittable_edge(h: Graph, comp, v: int, attach: Sequence[int]) -> int:
    # an attachment edge whose removal leaves only even pieces; one always
    # exists because an all-bridges vertex in an odd component would force
    # an even edge count
    for e in attach:
        rest = sorted(comp.edges - {e})
        if not rest:
            return e
        parts = components_with_parity(induced_edge_subgraph(h, rest))
        if all(not p.odd for p in parts):
            return e
    raise InternalConsistencyError(
        f"odd component {sorted(comp.edges)!r} has no splittable edge at {v}"
    )


def antiparallel_double_trace_with_repetitions_in(
    g: Graph, witness_set, cert: SpanningTreeCertificate
) -> DoubleTrace:
    """Antiparallel double trace whose nontrivial repetitions all sit in
    ``witness_set``.

    Each odd co-tree component donates one witness vertex, which is split in
    two: the component's edges at that vertex move to the copy and one of
    them joins the tree, leaving only even components.  The split graph's
    antiparallel strong trace then projects back by renaming the copies,
    which concentrates any repetitions at the split vertices.
    """
    _require_connected(g)
    witness = frozenset(int(v) for v in witness_set)
    for v in witness:
        if not (0 <= v < g.vertex_count):
            raise InputError(f"witness vertex {v} out of range")
    if (
        not isinstance(cert, SpanningTreeCertificate)
        or cert.host != g
        or not cert.revalidate(witness)
    ):
        raise PreconditionError(
            "certificate does not certify this graph and witness set"
        )

    edges = list(g.edges)
    n = g.vertex_count
    tree = set(cert.tree_edges)
    while True:
        h = Graph(n, tuple(edges))
        co = [i for i in range(len(edges)) if i not in tree]
        report = components_with_parity(induced_edge_subgraph(h, co), witness)
        odd = [c for c in report if c.odd]
        if not odd:
            break
        comp = odd[0]
        v = min(u for u in comp.vertices if u in witness)
        attach = sorted(i for i in comp.edges if v in h.endpoints(i))
        e = _splittable_edge(h, comp, v, attach)
        copy = n
        n += 1
        for i in attach:
            a, b = edges[i]
            edges[i] = (copy if a == v else a, copy if b == v else b)
        tree.add(e)

    final = Graph(n, tuple(edges))
    co = [i for i in range(len(edges)) if i not in tree]
    cert2 = SpanningTreeCertificate(
        final, frozenset(tree), components_with_parity(induced_edge_subgraph(final, co))
    )
    split_walk = antiparallel_strong_trace(final, cert2)
    # indices and flags carry over verbatim; only vertex names differ
    return DoubleTrace(g, split_walk.steps)


# ---------------------------------------------------------------------------
# Walk families: the cut-up quotient trace
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OpenWalk:
    """A run of chained steps with both endpoints inside contracted
    components, remembered by component ordinal."""

    host: Host
    steps: tuple[Step, ...]
    start_component: int
    end_component: int

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def start_vertex(self) -> int:
        return step_tail(self.host, self.steps[0])

    @property
    def end_vertex(self) -> int:
        return step_head(self.host, self.steps[-1])


@dataclass(frozen=True)
class WalkFamily:
    """The pieces of a quotient trace after cutting at contracted
    vertices: closed members and open members with endpoint bookkeeping."""

    closed: tuple[ClosedWalk, ...]
    open: tuple[OpenWalk, ...]

    def direction_counts(self) -> dict[Step, int]:
        counts: dict[Step, int] = {}
        for w in self.closed:
            for s in w.steps:
                counts[s] = counts.get(s, 0) + 1
        for w in self.open:
            for s in w.steps:
                counts[s] = counts.get(s, 0) + 1
        return counts

    def problems(self) -> tuple[str, ...]:
        out = []
        for k, w in enumerate(self.open):
            for t in range(len(w.steps) - 1):
                if step_head(w.host, w.steps[t]) != step_tail(w.host, w.steps[t + 1]):
                    out.append(f"open walk {k} breaks after step {t}")
                    break
        for k, w in enumerate(self.closed):
            if w.steps and w.head(len(w.steps) - 1) != w.tail(0):
                out.append(f"closed walk {k} does not close")
        return tuple(out)


def _project_simplified(
    simp: SimplifiedGraph, steps: tuple[Step, ...]
) -> tuple[Step, ...]:
    """Collapse subdivision paths of a simplified-graph walk back to
    multigraph steps."""
    if simp.is_identity:
        return steps
    owner: dict[int, int] = {}
    for qe, path in enumerate(simp.edge_paths):
        for se in path:
            owner[se] = qe
    original = simp.source.vertex_count
    L = len(steps)
    start = next(
        t for t in range(L) if step_tail(simp.graph, steps[t]) < original
    )
    rot = steps[start:] + steps[:start]
    out: list[Step] = []
    i = 0
    while i < L:
        se, f = rot[i]
        qe = owner[se]
        path = simp.edge_paths[qe]
        if len(path) == 1:
            out.append((qe, f))
            i += 1
            continue
        if se == path[0] and f == 0:
            expected = [(p, 0) for p in path]
            flag = 0
        elif se == path[-1] and f == 1:
            expected = [(p, 1) for p in reversed(path)]
            flag = 1
        else:
            raise InternalConsistencyError(
                f"subdivided edge {qe} entered mid-path at position {i}"
            )
        if i + len(path) > L or list(rot[i : i + len(path)]) != expected:
            raise InternalConsistencyError(
                f"subdivided edge {qe} traversed incoherently at position {i}"
            )
        out.append((qe, flag))
        i += len(path)
    return tuple(out)


def _cut_quotient_walk(
    host: Host,
    cmap: ContractionMap,
    q_steps: tuple[Step, ...],
    comp_of: dict[int, int],
) -> WalkFamily:
    """Lift the quotient trace to host steps, cutting at every arrival in a
    contracted vertex; the cut starts at the lowest contracted vertex's
    lowest outgoing step."""
    q = cmap.quotient
    marked = cmap.eprime_vertices
    anchors = [
        (step_tail(q, s), s[0], s[1], t)
        for t, s in enumerate(q_steps)
        if step_tail(q, s) in marked
    ]
    if not anchors:
        raise InternalConsistencyError("quotient walk never meets a contracted vertex")
    t0 = min(anchors)[3]
    rot = q_steps[t0:] + q_steps[:t0]

    closed: list[ClosedWalk] = []
    opened: list[OpenWalk] = []
    cur: list[Step] = []
    for qe, f in rot:
        cur.append((cmap.edge_origin[qe], f))
        if step_head(q, (qe, f)) in marked:
            z0 = step_tail(host, cur[0])
            z1 = step_head(host, cur[-1])
            if z0 == z1:
                closed.append(ClosedWalk(host, tuple(cur)))
            else:
                opened.append(
                    OpenWalk(host, tuple(cur), comp_of[z0], comp_of[z1])
                )
            cur = []
    if cur:
        raise InternalConsistencyError("quotient walk did not close at a cut point")
    return WalkFamily(tuple(closed), tuple(opened))


def _close_open_walks(family: WalkFamily) -> list[ClosedWalk]:
    """Chain open walks end to start until each chain closes.

    Within the family every vertex is entered as often as it is left, so a
    continuation always exists while a chain is open.
    """
    walks = family.open
    used = [False] * len(walks)
    chains: list[ClosedWalk] = []
    for seed in range(len(walks)):
        if used[seed]:
            continue
        used[seed] = True
        first = walks[seed]
        steps = list(first.steps)
        origin = first.start_vertex
        cur = first.end_vertex
        while cur != origin:
            nxt = next(
                (
                    k
                    for k in range(len(walks))
                    if not used[k] and walks[k].start_vertex == cur
                ),
                None,
            )
            if nxt is None:
                raise InternalConsistencyError(
                    f"open walks are unbalanced at vertex {cur}"
                )
            used[nxt] = True
            steps.extend(walks[nxt].steps)
            cur = walks[nxt].end_vertex
        chains.append(ClosedWalk(first.host, tuple(steps)))
    return chains


def _merge_family(
    walks: Sequence[ClosedWalk], allowed: frozenset[int]
) -> ClosedWalk:
    """Merge the family into one closed walk, splicing only at ``allowed``
    vertices.

    Splicing rewires two transition links at the splice vertex and can
    split a class there, so only vertices where surgery stays applicable
    (the contracted-fragment ones, which carry same-direction edges) are
    safe.  Each member has such a vertex and consecutive quotient pieces
    share theirs, so the family always connects through allowed vertices.
    """
    pool = [w for w in walks if w.steps]
    if not pool:
        raise InternalConsistencyError("nothing to merge")
    verts = [frozenset(w.vertices()) & allowed for w in pool]
    while len(pool) > 1:
        found = None
        for i in range(len(pool)):
            for j in range(i + 1, len(pool)):
                shared = verts[i] & verts[j]
                if shared:
                    found = (i, j, min(shared))
                    break
            if found:
                break
        if found is None:
            raise InternalConsistencyError("walk family is not connected")
        i, j, v = found
        pool[i] = merge_closed_walks(pool[i], pool[j], v)
        verts[i] = verts[i] | verts[j]
        del pool[j]
        del verts[j]
    return pool[0]


# ---------------------------------------------------------------------------
# Restricted-trace pipelines
# ---------------------------------------------------------------------------


def _require_connected(host: Host) -> None:
    if not is_connected(host):
        raise PreconditionError("graph is disconnected")


def _component_traces(
    host: Host, report: ComponentReport
) -> list[DoubleTrace]:
    out = []
    for comp in report:
        frag = induced_edge_subgraph(host, sorted(comp.edges))
        out.append(parallel_strong_trace(frag))
    return out


def _family_counts_ok(family: WalkFamily, cmap: ContractionMap) -> None:
    expect: dict[Step, int] = {}
    for e in cmap.edge_origin:
        expect[(e, 0)] = 1
        expect[(e, 1)] = 1
    if family.direction_counts() != expect or family.problems():
        raise InternalConsistencyError("cut walk family violates its contract")


def _assemble_restricted(
    host: Host,
    fragment_edges: Sequence[int],
    cmap: ContractionMap,
    simp: SimplifiedGraph,
    cert: SpanningTreeCertificate,
) -> DoubleTrace:
    """Shared pipeline: fragment traces, quotient trace, cut, lift, chain,
    merge, repair."""
    frag = induced_edge_subgraph(host, fragment_edges)
    report = components_with_parity(frag)
    comp_of: dict[int, int] = {}
    for idx, comp in enumerate(report):
        for v in comp.vertices:
            comp_of[v] = idx

    traces = _component_traces(host, report)
    witness = frozenset(cmap.eprime_vertices)
    quotient_walk = antiparallel_double_trace_with_repetitions_in(
        simp.graph, witness, cert
    )
    q_steps = _project_simplified(simp, quotient_walk.steps)
    family = _cut_quotient_walk(host, cmap, q_steps, comp_of)
    _family_counts_ok(family, cmap)
    chains = _close_open_walks(family)
    merged = _merge_family(
        list(traces) + list(family.closed) + chains, frozenset(comp_of)
    )
    if len(merged.steps) != 2 * host.edge_count:
        raise InternalConsistencyError(
            f"assembled walk has {len(merged.steps)} steps, "
            f"expected {2 * host.edge_count}"
        )
    walk = DoubleTrace(host, merged.steps)
    return _repair_to_strong(walk, range(host.vertex_count), "assembled trace")


def _lift_pure_quotient(
    host: Host, cmap: ContractionMap, simp: SimplifiedGraph,
    cert: SpanningTreeCertificate,
) -> DoubleTrace:
    # nothing was contracted: the quotient trace is the whole answer
    quotient_walk = antiparallel_double_trace_with_repetitions_in(
        simp.graph, frozenset(), cert
    )
    q_steps = _project_simplified(simp, quotient_walk.steps)
    steps = tuple((cmap.edge_origin[qe], f) for qe, f in q_steps)
    return DoubleTrace(host, steps)


def build_E_restricted_strong_trace(g: Graph, r: RestrictionSet) -> DoubleTrace:
    """Strong trace traversing the restricted edges once each way and all
    others twice the same way.

    Degenerate restriction sets short-circuit: an empty one yields the
    all-parallel construction, a full one the all-antiparallel one.  The
    general case runs the contraction pipeline and finishes with repetition
    surgery, which always applies because every leftover repetition sits at
    a vertex carrying a same-direction edge.
    """
    answer = has_E_restricted_strong_trace(g, r)
    if not answer:
        raise PreconditionError(
            "; ".join(answer.violated) or "no such trace exists"
        )
    restricted = frozenset(r.antiparallel_edges)
    if not restricted:
        return parallel_strong_trace(g)
    if len(restricted) == g.edge_count:
        return antiparallel_strong_trace(g, answer.certificate)
    analysis = _restricted_analysis(g, r)
    eprime = [i for i in range(g.edge_count) if i not in restricted]
    return _assemble_restricted(
        g, eprime, analysis.contraction, analysis.simplified, answer.certificate
    )


def build_E_restricted_d_stable_trace(
    g: Graph, r: RestrictionSet, d: int
) -> DoubleTrace:
    """Restricted trace avoiding repetitions of order up to ``d``.

    When every odd co-tree component of the certificate holds a contracted
    vertex, the strong pipeline applies and its output is automatically
    d-stable thanks to the minimum-degree gate.  Components certified only
    by a high-degree vertex fall back to exhaustive search.
    """
    answer = has_E_restricted_d_stable_trace(g, r, d)
    if not answer:
        raise PreconditionError(
            "; ".join(answer.violated) or "no such trace exists"
        )
    analysis = _restricted_analysis(g, r)
    if answer.certificate.revalidate(analysis.witness_on_simplified()):
        return build_E_restricted_strong_trace(g, r)
    restricted = frozenset(r.antiparallel_edges)
    labels = [
        search_backend.ANTI if i in restricted else search_backend.PAR
        for i in range(g.edge_count)
    ]
    steps = _search_restricted_trace(
        g, range(g.edge_count), labels, False, d
    )
    if steps is None:
        raise InternalConsistencyError(
            f"certified graph admitted no {d}-stable restricted trace: "
            f"edges {g.edges!r}, restriction {sorted(restricted)!r}"
        )
    return DoubleTrace(g, steps)


def build_mixed_trace(
    b: MixedGraph, r: RestrictionSet, d: Optional[int] = None
) -> DoubleTrace:
    """Restricted strong (or d-stable) trace of a mixed graph; every arc is
    traversed twice tail to head.

    Same pipeline as the undirected builder, with direction-respecting
    tours on the components formed by the unrestricted edges and all arcs.
    """
    if d is None:
        answer = has_E_restricted_strong_trace_mixed(b, r)
    else:
        answer = has_E_restricted_d_stable_trace_mixed(b, r, d)
    if not answer:
        raise PreconditionError(
            "; ".join(answer.violated) or "no such trace exists"
        )
    und = len(b.edges)
    restricted = frozenset(r.antiparallel_edges)
    if not restricted:
        return parallel_strong_trace(b)

    eprime = [i for i in range(und) if i not in restricted]
    fragment = eprime + [und + k for k in range(len(b.arcs))]
    cmap = contract_mixed(b, eprime)
    simp = simplify_multigraph(cmap.quotient)
    cert = answer.certificate

    if d is not None:
        limit = cmap.quotient.vertex_count
        wit = frozenset(cmap.eprime_vertices)
        if not cert.revalidate(lambda v: v < limit and v in wit):
            labels = [
                search_backend.ANTI if i in restricted else search_backend.PAR
                for i in range(und)
            ] + [search_backend.ARC] * len(b.arcs)
            steps = _search_restricted_trace(
                b, range(b.edge_count), labels, False, d
            )
            if steps is None:
                raise InternalConsistencyError(
                    f"certified mixed graph admitted no {d}-stable trace: "
                    f"edges {b.edges!r}, arcs {b.arcs!r}, "
                    f"restriction {sorted(restricted)!r}"
                )
            return DoubleTrace(b, steps)

    if not fragment:
        return _lift_pure_quotient(b, cmap, simp, cert)
    return _assemble_restricted(b, fragment, cmap, simp, cert)
