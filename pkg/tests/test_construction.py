"""Builders: tours, surgery, and the restricted-trace pipelines."""

import itertools

import pytest

from doubletrace.construction import (
    OpenWalk,
    WalkFamily,
    antiparallel_double_trace_with_repetitions_in,
    antiparallel_strong_trace,
    build_E_restricted_d_stable_trace,
    build_E_restricted_strong_trace,
    build_mixed_trace,
    euler_tour,
    merge_closed_walks,
    parallel_strong_trace,
    reduce_repetition,
)
from doubletrace.errors import (
    InputError,
    PreconditionError,
    SurgeryInapplicableError,
)
from doubletrace.feasibility import (
    find_admissible_tree,
    has_antiparallel_strong_trace,
    has_E_restricted_d_stable_trace,
    has_E_restricted_strong_trace,
    has_E_restricted_strong_trace_mixed,
)
from doubletrace.graphs import (
    Graph,
    MixedGraph,
    Multigraph,
    complete_graph,
    cycle_graph,
    induced_edge_subgraph,
    is_connected,
    path_graph,
)
from doubletrace.traces import (
    ANTIPARALLEL,
    PARALLEL,
    ClosedWalk,
    DoubleTrace,
    RestrictionSet,
    check_restriction,
    classify_directions,
    is_d_stable,
    is_strong,
    transition_system,
    validate_double_trace,
)

C3 = cycle_graph(3)
C5 = cycle_graph(5)
K4 = complete_graph(4)
K5 = complete_graph(5)
FIG8 = Graph(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)])
DIAMOND = Graph(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
EMPTY = RestrictionSet.of([])
K4_STAR = RestrictionSet.of([0, 1, 2])  # the edges at vertex 0


def direction_multiset(w):
    counts = {}
    for s in w.steps:
        counts[s] = counts.get(s, 0) + 1
    return counts


def repetition_count(w):
    total = 0
    for v in set(w.vertices()):
        total += len(transition_system(w, v).components) - 1
    return total


def connected_even_graphs(n):
    """All connected labeled graphs on n vertices with every degree even."""
    pairs = list(itertools.combinations(range(n), 2))
    out = []
    for bits in range(1, 1 << len(pairs)):
        edges = tuple(pairs[k] for k in range(len(pairs)) if bits >> k & 1)
        g = Graph(n, edges)
        if all(g.degree(v) % 2 == 0 for v in range(n)) and is_connected(g):
            out.append(g)
    return out


def connected_graphs(n):
    pairs = list(itertools.combinations(range(n), 2))
    out = []
    for bits in range(1 << len(pairs)):
        edges = tuple(pairs[k] for k in range(len(pairs)) if bits >> k & 1)
        g = Graph(n, edges)
        if is_connected(g):
            out.append(g)
    return out


class TestEulerTour:
    def test_triangle(self):
        t = euler_tour(C3)
        assert t.steps == ((0, 0), (1, 0), (2, 0))

    def test_single_vertex(self):
        assert euler_tour(Graph(1, [])).steps == ()

    def test_two_loops(self):
        hub = Multigraph(1, [(0, 0), (0, 0)])
        t = euler_tour(hub)
        assert t.steps == ((0, 0), (1, 0))

    def test_figure_eight_graph(self):
        t = euler_tour(FIG8)
        assert len(t.steps) == 6
        assert sorted(e for e, _ in t.steps) == list(range(6))
        # chained and closed
        for k in range(6):
            assert t.head(k) == t.tail((k + 1) % 6)

    def test_odd_degree_rejected(self):
        with pytest.raises(PreconditionError):
            euler_tour(path_graph(3))

    def test_disconnected_rejected(self):
        two = Graph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
        with pytest.raises(PreconditionError):
            euler_tour(two)

    def test_fragment_of_larger_host(self):
        frag = induced_edge_subgraph(FIG8, [0, 1, 2])
        t = euler_tour(frag)
        assert sorted(e for e, _ in t.steps) == [0, 1, 2]

    def test_arc_directions_respected(self):
        b = MixedGraph(3, (), ((0, 1), (1, 2), (2, 0)))
        t = euler_tour(b)
        assert t.steps == ((0, 0), (1, 0), (2, 0))

    def test_mixed_orients_undirected_edges(self):
        # path 0-1-2 closed by a return arc
        b = MixedGraph(3, [(0, 1), (1, 2)], [(2, 0)])
        t = euler_tour(b)
        assert len(t.steps) == 3
        for k in range(3):
            assert t.head(k) == t.tail((k + 1) % 3)

    def test_mixed_unbalanced_rejected(self):
        b = MixedGraph(3, [(0, 1), (1, 2)], [(0, 2), (2, 0)])
        with pytest.raises(PreconditionError):
            euler_tour(b)

    def test_deterministic(self):
        assert euler_tour(K5).steps == euler_tour(K5).steps


class TestParallelStrongTrace:
    def test_triangle_is_doubled_tour(self):
        w = parallel_strong_trace(C3)
        assert w.steps == ((0, 0), (1, 0), (2, 0), (0, 0), (1, 0), (2, 0))

    @pytest.mark.parametrize("g", [C3, C5, FIG8, K5])
    def test_valid_strong_all_parallel(self, g):
        w = parallel_strong_trace(g)
        assert validate_double_trace(w).ok
        assert is_strong(w)
        assert set(classify_directions(w)) == {PARALLEL}

    def test_every_small_eulerian_graph(self):
        graphs = connected_even_graphs(4) + connected_even_graphs(5)
        assert graphs
        for g in graphs:
            w = parallel_strong_trace(g)
            assert validate_double_trace(w).ok
            assert is_strong(w)
            assert set(classify_directions(w)) == {PARALLEL}

    def test_loops(self):
        hub = Multigraph(1, [(0, 0), (0, 0)])
        w = parallel_strong_trace(hub)
        assert validate_double_trace(w).ok
        assert is_strong(w)

    def test_non_eulerian_rejected(self):
        with pytest.raises(PreconditionError):
            parallel_strong_trace(K4)


class TestMergeClosedWalks:
    def test_two_triangles_at_shared_vertex(self):
        t1 = ClosedWalk(FIG8, ((0, 0), (1, 0), (2, 0)))
        t2 = ClosedWalk(FIG8, ((3, 0), (4, 0), (5, 0)))
        m = merge_closed_walks(t1, t2, 0)
        assert m.steps == ((0, 0), (1, 0), (2, 0), (3, 0), (4, 0), (5, 0))

    def test_splice_point_mid_walk(self):
        t1 = ClosedWalk(FIG8, ((1, 0), (2, 0), (0, 0)))  # arrives at 0 mid-way
        t2 = ClosedWalk(FIG8, ((4, 0), (5, 0), (3, 0)))
        m = merge_closed_walks(t1, t2, 0)
        assert direction_multiset(m) == {s: 1 for s in t1.steps + t2.steps}
        for k in range(len(m.steps)):
            assert m.head(k) == m.tail((k + 1) % len(m.steps))

    def test_empty_operand_returned_unchanged(self):
        t1 = ClosedWalk(FIG8, ((0, 0), (1, 0), (2, 0)))
        empty = ClosedWalk(FIG8, ())
        assert merge_closed_walks(t1, empty, 0) is t1
        assert merge_closed_walks(empty, t1, 0) is t1

    def test_vertex_must_occur_in_both(self):
        t1 = ClosedWalk(FIG8, ((0, 0), (1, 0), (2, 0)))
        t2 = ClosedWalk(FIG8, ((3, 0), (4, 0), (5, 0)))
        with pytest.raises(PreconditionError):
            merge_closed_walks(t1, t2, 2)

    def test_host_mismatch(self):
        t1 = ClosedWalk(C3, ((0, 0), (1, 0), (2, 0)))
        t2 = ClosedWalk(C5, ((0, 0), (1, 0), (2, 0), (3, 0), (4, 0)))
        with pytest.raises(InputError):
            merge_closed_walks(t1, t2, 0)

    def test_multiset_preserved_many_instances(self):
        count = 0
        for g in connected_even_graphs(5):
            tour = euler_tour(g)
            L = len(tour.steps)
            for cut in range(1, L):
                w1 = ClosedWalk(g, tour.steps)
                w2 = ClosedWalk(g, tour.steps[cut:] + tour.steps[:cut])
                v = w2.tail(0)
                m = merge_closed_walks(w1, w2, v)
                want = direction_multiset(w1)
                for s, c in direction_multiset(w2).items():
                    want[s] = want.get(s, 0) + c
                assert direction_multiset(m) == want
                count += 1
                if count >= 60:
                    return
        assert count >= 60


class TestReduceRepetition:
    def doubled(self, g):
        t = euler_tour(g)
        return DoubleTrace(g, t.steps + t.steps)

    def test_figure_eight_hub(self):
        w = self.doubled(FIG8)
        assert len(transition_system(w, 0).components) == 2
        w2 = reduce_repetition(w, 0)
        assert len(transition_system(w2, 0).components) == 1
        assert direction_multiset(w2) == direction_multiset(w)

    def test_other_vertices_untouched(self):
        w = self.doubled(FIG8)
        w2 = reduce_repetition(w, 0)
        for v in range(1, 5):
            before = sorted(map(sorted, transition_system(w, v).links))
            after = sorted(map(sorted, transition_system(w2, v).links))
            assert before == after

    def test_strictly_decreasing_until_strong(self):
        for g in connected_even_graphs(5):
            w = self.doubled(g)
            total = repetition_count(w)
            for v in range(g.vertex_count):
                while len(transition_system(w, v).components) > 1:
                    w = reduce_repetition(w, v)
                    now = repetition_count(w)
                    assert now < total
                    total = now
            assert is_strong(w)

    def test_already_strong_rejected(self):
        w = parallel_strong_trace(C3)
        with pytest.raises(SurgeryInapplicableError):
            reduce_repetition(w, 0)

    def test_two_occurrences_rejected(self):
        # there-and-back over each parallel edge: two one-edge classes at
        # vertex 1 but only two visits
        m = Multigraph(2, [(0, 1), (0, 1)])
        w = DoubleTrace(m, ((0, 0), (0, 1), (1, 0), (1, 1)))
        assert len(transition_system(w, 1).components) == 2
        with pytest.raises(SurgeryInapplicableError):
            reduce_repetition(w, 1)

    def test_no_same_direction_edge_rejected(self):
        cert = find_admissible_tree(K4, {0})
        w = antiparallel_double_trace_with_repetitions_in(K4, {0}, cert)
        assert len(transition_system(w, 0).components) == 2
        with pytest.raises(SurgeryInapplicableError):
            reduce_repetition(w, 0)


class TestAntiparallelStrongTrace:
    def test_path_boundary_walk(self):
        ans = has_antiparallel_strong_trace(path_graph(4))
        w = antiparallel_strong_trace(path_graph(4), ans.certificate)
        assert w.steps == ((0, 0), (1, 0), (2, 0), (2, 1), (1, 1), (0, 1))

    def test_star_boundary_walk(self):
        star = Graph(4, [(0, 1), (0, 2), (0, 3)])
        ans = has_antiparallel_strong_trace(star)
        w = antiparallel_strong_trace(star, ans.certificate)
        assert w.steps == ((0, 0), (0, 1), (1, 0), (1, 1), (2, 0), (2, 1))

    def test_single_vertex(self):
        g = Graph(1, [])
        ans = has_antiparallel_strong_trace(g)
        assert antiparallel_strong_trace(g, ans.certificate).steps == ()

    def test_diamond(self):
        ans = has_antiparallel_strong_trace(DIAMOND)
        w = antiparallel_strong_trace(DIAMOND, ans.certificate)
        assert validate_double_trace(w).ok
        assert is_strong(w)
        assert set(classify_directions(w)) == {ANTIPARALLEL}

    def test_every_positive_small_graph(self):
        for g in connected_graphs(4) + connected_graphs(5):
            ans = has_antiparallel_strong_trace(g)
            if not ans:
                continue
            w = antiparallel_strong_trace(g, ans.certificate)
            assert validate_double_trace(w).ok
            assert is_strong(w)
            assert set(classify_directions(w)) <= {ANTIPARALLEL}

    def test_foreign_certificate_rejected(self):
        ans = has_antiparallel_strong_trace(path_graph(4))
        with pytest.raises(PreconditionError):
            antiparallel_strong_trace(path_graph(5), ans.certificate)

    def test_odd_component_certificate_rejected(self):
        # K4 has no all-even spanning tree; a witness cert is not enough here
        cert = find_admissible_tree(K4, {0})
        with pytest.raises(PreconditionError):
            antiparallel_strong_trace(K4, cert)

    def test_deterministic(self):
        ans = has_antiparallel_strong_trace(DIAMOND)
        w1 = antiparallel_strong_trace(DIAMOND, ans.certificate)
        w2 = antiparallel_strong_trace(DIAMOND, ans.certificate)
        assert w1.steps == w2.steps


class TestRepetitionsConfined:
    def check(self, g, witness):
        cert = find_admissible_tree(g, witness)
        assert cert is not None
        w = antiparallel_double_trace_with_repetitions_in(g, witness, cert)
        assert validate_double_trace(w).ok
        assert set(classify_directions(w)) <= {ANTIPARALLEL}
        for v in range(g.vertex_count):
            if v not in witness:
                assert len(transition_system(w, v).components) == 1
        return w

    def test_triangle_witness(self):
        self.check(C3, {0})

    def test_k4_witness(self):
        self.check(K4, {0})

    def test_k5_witness_pair(self):
        self.check(K5, {0, 1})

    def test_full_witness_small_sweep(self):
        for g in connected_graphs(4):
            self.check(g, set(range(4)))

    def test_wrong_witness_rejected(self):
        cert = find_admissible_tree(K4, {0})
        with pytest.raises(PreconditionError):
            antiparallel_double_trace_with_repetitions_in(K4, set(), cert)


class TestRestrictedStrongPipeline:
    def test_k4_star_golden(self):
        w = build_E_restricted_strong_trace(K4, K4_STAR)
        assert w.steps == (
            (4, 1), (3, 0), (1, 1), (2, 0), (4, 1), (0, 1),
            (1, 0), (5, 0), (2, 1), (0, 0), (3, 0), (5, 0),
        )
        assert validate_double_trace(w).ok
        assert is_strong(w)
        assert check_restriction(w, K4_STAR)

    def test_empty_restriction_branch(self):
        w = build_E_restricted_strong_trace(C3, EMPTY)
        assert w.steps == parallel_strong_trace(C3).steps

    def test_full_restriction_branch(self):
        tree = Graph(4, [(0, 1), (0, 2), (0, 3)])
        w = build_E_restricted_strong_trace(tree, RestrictionSet.of(range(3)))
        assert set(classify_directions(w)) == {ANTIPARALLEL}
        assert is_strong(w)

    def test_infeasible_rejected(self):
        # restricting one triangle edge leaves odd degrees outside it
        with pytest.raises(PreconditionError):
            build_E_restricted_strong_trace(C3, RestrictionSet.of([0]))

    def test_all_small_graphs_all_restrictions(self):
        for g in connected_graphs(4):
            for bits in range(1 << g.edge_count):
                r = RestrictionSet.of(
                    i for i in range(g.edge_count) if bits >> i & 1
                )
                ans = has_E_restricted_strong_trace(g, r)
                if not ans:
                    continue
                w = build_E_restricted_strong_trace(g, r)
                assert validate_double_trace(w).ok
                assert is_strong(w)
                assert check_restriction(w, r)

    def test_deterministic(self):
        w1 = build_E_restricted_strong_trace(K4, K4_STAR)
        w2 = build_E_restricted_strong_trace(K4, K4_STAR)
        assert w1.steps == w2.steps


class TestRestrictedDStable:
    def test_k4_star_order_two(self):
        w = build_E_restricted_d_stable_trace(K4, K4_STAR, 2)
        assert validate_double_trace(w).ok
        assert is_d_stable(w, 2)
        assert check_restriction(w, K4_STAR)

    def test_k5_unrestricted_order_three(self):
        w = build_E_restricted_d_stable_trace(K5, EMPTY, 3)
        assert validate_double_trace(w).ok
        assert is_d_stable(w, 3)

    def test_min_degree_gate(self):
        with pytest.raises(PreconditionError):
            build_E_restricted_d_stable_trace(C3, EMPTY, 2)

    def test_high_degree_witness_fallback(self):
        # wheel: no all-even tree exists, but the hub has degree 5, so the
        # order-1 verdict rests on the hub and the trace comes from search
        rim = [(i, i % 5 + 1) for i in range(1, 6)]
        spokes = [(0, i) for i in range(1, 6)]
        wheel = Graph(6, rim + spokes)
        r = RestrictionSet.of(range(wheel.edge_count))
        assert not has_antiparallel_strong_trace(wheel)
        w = build_E_restricted_d_stable_trace(wheel, r, 1)
        assert validate_double_trace(w).ok
        assert is_d_stable(w, 1)
        assert set(classify_directions(w)) == {ANTIPARALLEL}


class TestMixedBuilder:
    def test_no_arcs_matches_plain_builder(self):
        b = MixedGraph(4, K4.edges, ())
        wm = build_mixed_trace(b, K4_STAR)
        wp = build_E_restricted_strong_trace(K4, K4_STAR)
        assert wm.steps == wp.steps

    def test_directed_triangle_doubled_tour(self):
        b = MixedGraph(3, (), ((0, 1), (1, 2), (2, 0)))
        w = build_mixed_trace(b, EMPTY)
        assert w.steps == ((0, 0), (1, 0), (2, 0), (0, 0), (1, 0), (2, 0))

    def test_loop_quotient(self):
        # contract the arc pair between 0 and 1: edge (0,1) becomes a loop
        b = MixedGraph(3, [(0, 1), (1, 2), (2, 0)], [(0, 1), (1, 0)])
        r = RestrictionSet.of([0, 1, 2])
        w = build_mixed_trace(b, r)
        assert validate_double_trace(w).ok
        assert is_strong(w)
        assert check_restriction(w, r)

    def test_no_fragment_lift(self):
        b = MixedGraph(4, DIAMOND.edges, ())
        r = RestrictionSet.of(range(5))
        w = build_mixed_trace(b, r)
        assert validate_double_trace(w).ok
        assert is_strong(w)
        assert check_restriction(w, r)

    def test_mixed_d_stable(self):
        b = MixedGraph(3, [(0, 1), (1, 2), (2, 0)], [(0, 1), (1, 0)])
        r = RestrictionSet.of([0, 1, 2])
        w = build_mixed_trace(b, r, 1)
        assert validate_double_trace(w).ok
        assert is_d_stable(w, 1)
        assert check_restriction(w, r)

    def test_infeasible_rejected(self):
        b = MixedGraph(3, [(0, 1), (1, 2)], [(0, 2), (2, 0)])
        with pytest.raises(PreconditionError):
            build_mixed_trace(b, EMPTY)

    def test_small_positive_sweep(self):
        # every weakly connected mixed graph on 3 vertices with at most
        # 5 traversables, every restriction of its undirected edges
        pairs = list(itertools.combinations(range(3), 2))
        arcpairs = [(a, b) for a, b in itertools.permutations(range(3), 2)]
        built = 0
        for ebits in range(1 << len(pairs)):
            edges = tuple(pairs[k] for k in range(len(pairs)) if ebits >> k & 1)
            for abits in range(1 << len(arcpairs)):
                arcs = tuple(
                    arcpairs[k] for k in range(len(arcpairs)) if abits >> k & 1
                )
                if not (0 < len(edges) + len(arcs) <= 5):
                    continue
                b = MixedGraph(3, edges, arcs)
                if not is_connected(b):
                    continue
                for rbits in range(1 << len(edges)):
                    r = RestrictionSet.of(
                        i for i in range(len(edges)) if rbits >> i & 1
                    )
                    if not has_E_restricted_strong_trace_mixed(b, r):
                        continue
                    w = build_mixed_trace(b, r)
                    assert validate_double_trace(w).ok
                    assert is_strong(w)
                    assert check_restriction(w, r)
                    built += 1
        assert built > 50


class TestWalkFamily:
    def test_counts_and_problems(self):
        w1 = ClosedWalk(FIG8, ((0, 0), (1, 0), (2, 0)))
        ow = OpenWalk(FIG8, ((3, 0), (4, 0)), 0, 1)
        fam = WalkFamily((w1,), (ow,))
        counts = fam.direction_counts()
        assert counts[(0, 0)] == 1 and counts[(4, 0)] == 1
        assert fam.problems() == ()
        assert ow.start_vertex == 0 and ow.end_vertex == 4

    def test_broken_chain_reported(self):
        bad = OpenWalk(FIG8, ((0, 0), (4, 0)), 0, 1)
        fam = WalkFamily((), (bad,))
        assert fam.problems()
