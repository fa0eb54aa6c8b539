"""Oracle search and equivalence-class enumeration for double traces.

The oracle answers queries by exhaustive search over step sequences and is
deliberately independent of the structural decision procedures, so the two
routes can be compared on the same inputs.  Capacity limits keep the
exponential search honest: beyond them a CapacityError is raised instead of
an answer.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import search_backend
from .errors import CapacityError, InputError
from .graphs import Graph, Host, automorphisms, is_connected
from .traces import ClosedWalk, DoubleTrace, RestrictionSet, Step

ORACLE_EXISTS_MAX_EDGES = 10
ORACLE_ENUM_MAX_EDGES = 9


@dataclass(frozen=True, eq=False)
class TraceQuery:
    """What to search for: variant flags plus an optional direction restriction.

    ``restriction`` lists the edges that must be traversed once in each
    direction; all other undirected edges must then be traversed twice in
    the same direction.  With no restriction every edge is free.  Arcs are
    always traversed twice in their stored direction.
    """

    host: Host
    require_strong: bool = False
    d: int = 0
    restriction: RestrictionSet | None = None

    def __post_init__(self):
        if self.d < 0:
            raise InputError("repetition order bound must be non-negative")
        if self.restriction is not None:
            for i in self.restriction.antiparallel_edges:
                if not (0 <= i < self.host.edge_count):
                    raise InputError(f"restriction edge {i} out of range")
                if self.host.is_arc(i):
                    raise InputError(f"restriction edge {i} is an arc")


def lower_query(query: TraceQuery) -> tuple[int, list[int], list[int], list[int]]:
    """Flatten a query into the kernel's array form."""
    host = query.host
    ea, eb, labels = [], [], []
    anti = query.restriction.antiparallel_edges if query.restriction is not None else None
    for i in range(host.edge_count):
        a, b = host.endpoints(i)
        ea.append(a)
        eb.append(b)
        if host.is_arc(i):
            labels.append(search_backend.ARC)
        elif anti is None:
            labels.append(search_backend.FREE)
        elif i in anti:
            labels.append(search_backend.ANTI)
        else:
            labels.append(search_backend.PAR)
    return host.vertex_count, ea, eb, labels


def _gate(query: TraceQuery, limit: int, override: int | None) -> None:
    cap = limit if override is None else override
    if query.host.edge_count > cap:
        raise CapacityError(
            f"oracle search over {query.host.edge_count} edges exceeds the "
            f"limit of {cap}; the structural procedures have no such bound"
        )


def oracle_find(query: TraceQuery, *, max_edges: int | None = None) -> DoubleTrace | None:
    """First satisfying double trace in search order, or None."""
    _gate(query, ORACLE_EXISTS_MAX_EDGES, max_edges)
    host = query.host
    if host.edge_count == 0:
        return DoubleTrace(host, ()) if is_connected(host) else None
    if not is_connected(host):
        return None
    n, ea, eb, labels = lower_query(query)
    steps = search_backend.run(
        n, ea, eb, labels, query.require_strong, query.d, search_backend.MODE_EXISTS
    )
    if steps is None:
        return None
    return DoubleTrace(host, tuple(steps))


def oracle_exists(query: TraceQuery, *, max_edges: int | None = None) -> bool:
    return oracle_find(query, max_edges=max_edges) is not None


def count_raw_traces(query: TraceQuery, *, max_edges: int | None = None) -> int:
    """Number of satisfying step sequences, with no symmetry folded out."""
    _gate(query, ORACLE_ENUM_MAX_EDGES, max_edges)
    host = query.host
    if host.edge_count == 0:
        return 1 if is_connected(host) else 0
    if not is_connected(host):
        return 0
    n, ea, eb, labels = lower_query(query)
    return search_backend.run(
        n, ea, eb, labels, query.require_strong, query.d, search_backend.MODE_COUNT_RAW
    )


def enumerate_fixed_start(
    query: TraceQuery, *, max_edges: int | None = None
) -> list[DoubleTrace]:
    """All satisfying traces whose first step is normalized to edge 0.

    Every equivalence class is represented at least once; raw sequences
    with other first steps are recovered by symmetry.
    """
    _gate(query, ORACLE_ENUM_MAX_EDGES, max_edges)
    host = query.host
    if host.edge_count == 0:
        return [DoubleTrace(host, ())] if is_connected(host) else []
    if not is_connected(host):
        return []
    n, ea, eb, labels = lower_query(query)
    seqs = search_backend.run(
        n, ea, eb, labels, query.require_strong, query.d, search_backend.MODE_ENUM_FIXED
    )
    return [DoubleTrace(host, tuple(s)) for s in seqs]


def _map_sequence(
    host: Host,
    steps: tuple[Step, ...],
    perm: tuple[int, ...],
    edge_lookup: dict[frozenset[int], int],
) -> tuple[Step, ...]:
    """Relabel a step sequence along a vertex permutation.

    Identity permutations short-circuit, so hosts with parallel edges can
    still be folded over rotations and reversal alone.
    """
    if all(perm[v] == v for v in range(len(perm))):
        return steps
    out = []
    for e, f in steps:
        a, b = host.endpoints(e)
        if a == b:
            out.append((edge_lookup[frozenset((perm[a],))], f))
            continue
        ia, ib = perm[a], perm[b]
        e2 = edge_lookup[frozenset((ia, ib))]
        tail = ia if f == 0 else ib
        a2, b2 = host.endpoints(e2)
        out.append((e2, 0 if tail == a2 else 1))
    return tuple(out)


def _symmetry_orbit(
    host: Host,
    steps: tuple[Step, ...],
    auts: tuple[tuple[int, ...], ...],
    use_reversal: bool,
) -> set[tuple[Step, ...]]:
    edge_lookup = {
        frozenset(host.endpoints(i)): i for i in range(host.edge_count)
    }
    length = len(steps)
    base = [steps]
    if use_reversal:
        rev = tuple((e, 1 - f) for e, f in reversed(steps))
        base.append(rev)
    orbit: set[tuple[Step, ...]] = set()
    for seq in base:
        for perm in auts:
            mapped = _map_sequence(host, seq, perm, edge_lookup)
            for k in range(length):
                orbit.add(mapped[k:] + mapped[:k])
    return orbit


def canonical_form(
    walk: ClosedWalk, auts: tuple[tuple[int, ...], ...] | None = None
) -> tuple[Step, ...]:
    """Lexicographically least sequence over rotations, reversal and relabelings.

    Reversal is only a symmetry when the host has no arcs.  Relabelings
    require the automorphism group, which is computed for simple hosts when
    not supplied; pass ``auts=((identity),)`` to fold rotations alone.
    """
    steps = tuple(walk.steps)
    if not steps:
        return steps
    host = walk.host
    if auts is None:
        if isinstance(host, Graph):
            auts = automorphisms(host)
        else:
            auts = (tuple(range(host.vertex_count)),)
    use_reversal = not any(host.is_arc(i) for i in range(host.edge_count))
    return min(_symmetry_orbit(host, steps, auts, use_reversal))


def orbit_size(
    walk: ClosedWalk, auts: tuple[tuple[int, ...], ...] | None = None
) -> int:
    """Number of raw step sequences in the walk's symmetry class.

    Defaults match canonical_form: rotations always, reversal on arc-free
    hosts, relabelings over the supplied (or computed) automorphisms.
    """
    steps = tuple(walk.steps)
    if not steps:
        return 1
    host = walk.host
    if auts is None:
        if isinstance(host, Graph):
            auts = automorphisms(host)
        else:
            auts = (tuple(range(host.vertex_count)),)
    use_reversal = not any(host.is_arc(i) for i in range(host.edge_count))
    return len(_symmetry_orbit(host, steps, auts, use_reversal))


def _restriction_preserving(
    host: Host,
    auts: tuple[tuple[int, ...], ...],
    anti: frozenset[int],
) -> tuple[tuple[int, ...], ...]:
    lookup = {frozenset(host.endpoints(i)): i for i in range(host.edge_count)}
    kept = []
    for perm in auts:
        image = {
            lookup[frozenset(perm[v] for v in host.endpoints(i))] for i in anti
        }
        if image == set(anti):
            kept.append(perm)
    return tuple(kept)


@dataclass(frozen=True)
class EquivalenceClass:
    """One symmetry class of satisfying traces."""

    canonical: tuple[Step, ...]
    size: int
    representative: DoubleTrace = field(compare=False)


def enumerate_classes(
    query: TraceQuery, *, max_edges: int | None = None
) -> list[EquivalenceClass]:
    """Group all satisfying traces by rotation, reversal and relabeling.

    Simple hosts only: the relabeling group is the automorphism group of
    the underlying graph.  Class sizes count raw sequences, so they sum to
    the raw count.
    """
    host = query.host
    if not isinstance(host, Graph):
        raise InputError("class enumeration expects a simple undirected host")
    traces = enumerate_fixed_start(query, max_edges=max_edges)
    auts = automorphisms(host)
    if query.restriction is not None:
        # only relabelings that fix the restricted edge set are symmetries
        auts = _restriction_preserving(host, auts, query.restriction.antiparallel_edges)
    seen: dict[tuple[Step, ...], EquivalenceClass] = {}
    for tr in traces:
        steps = tuple(tr.steps)
        if not steps:
            seen[steps] = EquivalenceClass(steps, 1, tr)
            continue
        canon = canonical_form(tr, auts)
        if canon in seen:
            continue
        orbit = _symmetry_orbit(host, steps, auts, use_reversal=True)
        seen[canon] = EquivalenceClass(canon, len(orbit), DoubleTrace(host, canon))
    return [seen[c] for c in sorted(seen)]
