"""Decision procedures and their certificates."""

import itertools

import pytest

from doubletrace.errors import CapacityError, InputError, PreconditionError
from doubletrace.feasibility import (
    SpanningTreeCertificate,
    find_admissible_tree,
    has_antiparallel_d_stable_trace,
    has_antiparallel_strong_trace,
    has_d_stable_trace,
    has_E_restricted_d_stable_trace,
    has_E_restricted_d_stable_trace_mixed,
    has_E_restricted_double_trace,
    has_E_restricted_strong_trace,
    has_E_restricted_strong_trace_mixed,
    has_parallel_d_stable_trace,
    has_parallel_strong_trace,
    has_strong_trace,
    mixed_cut_condition,
    mixed_euler_feasible,
)
from doubletrace.graphs import (
    Graph,
    MixedGraph,
    complete_graph,
    cycle_graph,
    is_connected,
    path_graph,
)
from doubletrace.traces import RestrictionSet

from test_graphs import brute_spanning_trees

K1 = Graph(1, [])
C3 = cycle_graph(3)
K4 = complete_graph(4)
K5 = complete_graph(5)
DIAMOND = Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])


def tree_is_admissible_by_hand(g, tree, witness=None):
    # reference check: components of the co-tree by brute union-find
    witness = witness or (lambda v: False)
    co = [e for e in range(g.edge_count) if e not in tree]
    parent = {}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    verts = set()
    for e in co:
        verts.update(g.endpoints(e))
    for v in verts:
        parent[v] = v
    for e in co:
        a, b = g.endpoints(e)
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    comps = {}
    for e in co:
        r = find(g.endpoints(e)[0])
        comps.setdefault(r, []).append(e)
    for r, es in comps.items():
        cverts = set()
        for e in es:
            cverts.update(g.endpoints(e))
        if len(es) % 2 == 1 and not any(witness(v) for v in cverts):
            return False
    return True


class TestUnrestricted:
    def test_strong_always(self):
        for g in (K1, C3, K4, path_graph(4)):
            assert has_strong_trace(g)

    def test_disconnected_rejected(self):
        with pytest.raises(PreconditionError):
            has_strong_trace(Graph(3, [(0, 1)]))

    def test_d_stable_is_min_degree(self):
        assert has_d_stable_trace(K4, 2)
        assert not has_d_stable_trace(K4, 3)
        assert has_d_stable_trace(C3, 1)
        assert not has_d_stable_trace(C3, 2)
        assert not has_d_stable_trace(path_graph(3), 1)

    def test_isolated_vertex_forces_nothing(self):
        # a lone vertex carries the empty trace, which repeats nothing
        assert has_d_stable_trace(K1, 1)
        assert has_d_stable_trace(K1, 7)

    def test_d_must_be_positive(self):
        with pytest.raises(InputError):
            has_d_stable_trace(C3, 0)


class TestAntiparallel:
    def test_trees_always_admit(self):
        for g in (path_graph(2), path_graph(5), Graph(4, [(0, 1), (0, 2), (0, 3)])):
            ans = has_antiparallel_strong_trace(g)
            assert ans
            assert ans.certificate is not None

    def test_cycles_never(self):
        # the single co-tree edge is its own odd component
        for n in (3, 4, 5):
            assert not has_antiparallel_strong_trace(cycle_graph(n))

    def test_k4_fails(self):
        # every spanning tree leaves three co-tree edges, never all even
        ans = has_antiparallel_strong_trace(K4)
        assert not ans
        assert ans.violated

    def test_diamond_succeeds(self):
        # tree {02,01,03} leaves the two edges at vertex 1 as one even piece
        ans = has_antiparallel_strong_trace(DIAMOND)
        assert ans
        cert = ans.certificate
        assert cert.admissible
        assert cert.deficiency == 0

    def test_certificate_matches_some_spanning_tree(self):
        ans = has_antiparallel_strong_trace(DIAMOND)
        assert ans.certificate.tree_edges in brute_spanning_trees(DIAMOND)

    def test_exhaustive_against_brute_trees(self):
        # decision == "some spanning tree has all co-tree components even"
        for g in (C3, K4, DIAMOND, cycle_graph(4), path_graph(4)):
            expected = any(
                tree_is_admissible_by_hand(g, t) for t in brute_spanning_trees(g)
            )
            assert bool(has_antiparallel_strong_trace(g)) == expected

    def test_d_stable_needs_high_degree_witness(self):
        # K4 degrees stop at 3 < 2d+2, so d-stable antiparallel fails
        assert not has_antiparallel_d_stable_trace(K4, 1)
        # K5: star tree leaves the other K4 as a single 6-edge component
        ans = has_antiparallel_d_stable_trace(K5, 1)
        assert ans

    def test_k1_vacuous(self):
        assert has_antiparallel_strong_trace(K1)
        assert has_antiparallel_d_stable_trace(K1, 3)


class TestParallel:
    def test_needs_eulerian(self):
        assert has_parallel_strong_trace(C3)
        assert has_parallel_strong_trace(K5)
        assert not has_parallel_strong_trace(K4)
        assert not has_parallel_strong_trace(path_graph(3))

    def test_d_stable_adds_degree_gate(self):
        assert has_parallel_d_stable_trace(C3, 1)
        assert not has_parallel_d_stable_trace(C3, 2)
        assert has_parallel_d_stable_trace(K5, 3)
        assert not has_parallel_d_stable_trace(K5, 4)


class TestRestrictedDouble:
    def test_complement_must_be_even(self):
        star = RestrictionSet.of((0, 1, 2))  # edges at vertex 0 in K4
        ans = has_E_restricted_double_trace(K4, star)
        assert ans
        assert ans.even_fragment is not None
        one = RestrictionSet.of((0,))
        assert not has_E_restricted_double_trace(K4, one)

    def test_extremes_match_simple_variants(self):
        # no antiparallel edges: complement is everything, needs even graph
        assert bool(has_E_restricted_double_trace(K4, RestrictionSet.of(()))) \
            == bool(has_parallel_strong_trace(K4).verdict or
                    all(K4.degree(v) % 2 == 0 for v in range(4)))
        # all antiparallel: complement empty, always even
        assert has_E_restricted_double_trace(K4, RestrictionSet.of(range(6)))


class TestRestrictedStrong:
    def test_k4_star(self):
        star = RestrictionSet.of((0, 1, 2))
        ans = has_E_restricted_strong_trace(K4, star)
        assert ans
        assert ans.certificate is not None

    def test_k4_single_edge_fails_on_fragment(self):
        ans = has_E_restricted_strong_trace(K4, RestrictionSet.of((0,)))
        assert not ans

    def test_full_restriction_reduces_to_antiparallel(self):
        for g in (C3, K4, DIAMOND):
            r = RestrictionSet.of(range(g.edge_count))
            assert bool(has_E_restricted_strong_trace(g, r)) == bool(
                has_antiparallel_strong_trace(g)
            )

    def test_empty_restriction_reduces_to_parallel(self):
        for g in (C3, K4, K5):
            r = RestrictionSet.of(())
            assert bool(has_E_restricted_strong_trace(g, r)) == bool(
                has_parallel_strong_trace(g)
            )

    def test_d_stable_variant(self):
        star = RestrictionSet.of((0, 1, 2))
        assert has_E_restricted_d_stable_trace(K4, star, 1)
        assert not has_E_restricted_d_stable_trace(K4, star, 3)


class TestTreeSearch:
    def test_deterministic_lex_first(self):
        c1 = find_admissible_tree(DIAMOND)
        c2 = find_admissible_tree(DIAMOND)
        assert c1.tree_edges == c2.tree_edges

    def test_witness_widens(self):
        # C3 has no admissible tree, but any witness vertex saves it
        assert find_admissible_tree(C3) is None
        assert find_admissible_tree(C3, witness={0}) is not None

    def test_vertex_gate(self):
        with pytest.raises(CapacityError):
            find_admissible_tree(path_graph(14))
        assert find_admissible_tree(path_graph(14), max_vertices=20) is not None

    def test_corank_gate(self):
        from doubletrace.graphs import Multigraph

        fat = Multigraph(2, [(0, 1)] * 19)  # corank 18
        with pytest.raises(CapacityError):
            find_admissible_tree(fat)
        # lifted: the 18 co-tree edges form a single even component
        assert find_admissible_tree(fat, max_corank=18) is not None

    def test_disconnected_rejected(self):
        with pytest.raises(PreconditionError):
            find_admissible_tree(Graph(2, []))


class TestCertificateRevalidation:
    def test_good_certificate_survives(self):
        cert = has_antiparallel_strong_trace(DIAMOND).certificate
        assert cert.revalidate()

    def test_tampered_tree_detected(self):
        cert = has_antiparallel_strong_trace(DIAMOND).certificate
        swapped_in = next(e for e in range(DIAMOND.edge_count)
                          if e not in cert.tree_edges)
        kept = sorted(cert.tree_edges)[:2]
        bad = SpanningTreeCertificate(
            host=cert.host,
            tree_edges=frozenset(kept) | {swapped_in},
            co_tree_report=cert.co_tree_report,
        )
        assert not bad.revalidate()

    def test_stale_report_detected(self):
        good = has_antiparallel_strong_trace(DIAMOND).certificate
        other = find_admissible_tree(C3, witness={0})
        forged = SpanningTreeCertificate(
            host=good.host,
            tree_edges=good.tree_edges,
            co_tree_report=other.co_tree_report,
        )
        assert not forged.revalidate()


class TestMixed:
    def euler_by_hand(self, b):
        # all-subsets formulation on the vertex set
        if not is_connected(b):
            return False
        return mixed_cut_condition(b)

    def test_two_opposite_arcs(self):
        b = MixedGraph(2, edges=[], arcs=[(0, 1), (1, 0)])
        assert mixed_euler_feasible(b)

    def test_one_arc_fails(self):
        b = MixedGraph(2, edges=[], arcs=[(0, 1)])
        assert not mixed_euler_feasible(b)

    def test_arc_plus_edge(self):
        b = MixedGraph(2, edges=[(0, 1)], arcs=[(0, 1)])
        # orient the edge backwards and both vertices balance
        assert mixed_euler_feasible(b)

    def test_orientation_matches_cut_condition(self):
        # every mixed graph on 3 vertices with up to 4 members
        pairs = list(itertools.combinations(range(3), 2))
        arcs_pool = [(a, b) for a, b in pairs] + [(b, a) for a, b in pairs]
        count = 0
        for ne in range(3):
            for es in itertools.combinations(pairs, ne):
                for na in range(3):
                    for ars in itertools.combinations(arcs_pool, na):
                        b = MixedGraph(3, edges=list(es), arcs=list(ars))
                        if not is_connected(b):
                            continue
                        count += 1
                        assert mixed_euler_feasible(b) == mixed_cut_condition(b)
        assert count > 50

    def test_restricted_variants(self):
        # square with one side restricted and one diagonal pair of arcs
        b = MixedGraph(4, edges=[(0, 1), (1, 2), (2, 3), (3, 0)],
                       arcs=[(0, 2), (2, 0)])
        r = RestrictionSet.of((0,))
        ans = has_E_restricted_strong_trace_mixed(b, r)
        assert isinstance(ans.verdict, bool)
        d_ans = has_E_restricted_d_stable_trace_mixed(b, r, 1)
        assert isinstance(d_ans.verdict, bool)

    def test_mixed_without_arcs_matches_plain(self):
        b = MixedGraph(4, edges=list(K4.edges), arcs=[])
        star = RestrictionSet.of((0, 1, 2))
        assert bool(has_E_restricted_strong_trace_mixed(b, star)) == bool(
            has_E_restricted_strong_trace(K4, star)
        )
