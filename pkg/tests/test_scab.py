import networkx as nx
import pytest

from tripres.incidence import difference_set_plane
from tripres.presentation import TrianglePresentation, rotations
from tripres.scab import (
    NotFullError,
    build_scab,
    incidence_graph,
    residue,
    residue_plane_iso,
    verify_generalized_triangle,
)
from tripres.search import SearchConfig, random_correspondence, run_search


def assert_witness(g, iso, plane):
    assert len(set(iso.values())) == g.number_of_nodes()
    for u, v in g.edges():
        (ku, iu), (kv, iv) = iso[u], iso[v]
        assert ku != kv
        p, l = (iu, iv) if ku == "p" else (iv, iu)
        assert p in plane.lines_of[l]


class TestBuild:
    def test_table_four(self, hughes_tp):
        cx = build_scab(hughes_tp)
        assert len(cx.vertices) == 3 and len(cx.edges) == 273 and len(cx.chambers) == 910

    def test_cyclic_example(self, cyclic_tp):
        cx = build_scab(cyclic_tp)
        assert len(cx.edges) == 21 and len(cx.chambers) == 21

    def test_partial_rejected(self, hughes_tp):
        partial = TrianglePresentation(
            hughes_tp.plane, hughes_tp.lam, hughes_tp.triples - set(rotations((0, 3, 41)))
        )
        with pytest.raises(NotFullError):
            build_scab(partial)

    def test_rotation_permutes_chambers(self, cyclic_tp):
        cx = build_scab(cyclic_tp)
        assert {cx.rotate(c) for c in cx.chambers} == cx.chambers


class TestResidues:
    def test_hughes_first_residue(self, hughes_tp):
        g = residue(build_scab(hughes_tp), 1)
        assert g.number_of_nodes() == 182 and g.number_of_edges() == 910
        assert {d for _, d in g.degree()} == {10}
        assert nx.is_bipartite(g)

    def test_cyclic_residues(self, cyclic_tp):
        cx = build_scab(cyclic_tp)
        for v in cx.vertices:
            g = residue(cx, v)
            assert g.number_of_nodes() == 14 and g.number_of_edges() == 21
            assert {d for _, d in g.degree()} == {3}
            assert verify_generalized_triangle(g, 2)
            assert_witness(g, residue_plane_iso(g, cyclic_tp.plane), cyclic_tp.plane)

    def test_rotation_conjugates_residues(self, hughes_tp):
        cx = build_scab(hughes_tp)
        g1, g2 = residue(cx, 1), residue(cx, 2)
        moved = {frozenset(map(cx.rotate_edge, e)) for e in g1.edges()}
        assert moved == {frozenset(e) for e in g2.edges()}

    @pytest.mark.parametrize("q, seed", [(2, 0), (2, 3), (3, 0), (3, 1), (3, 2)])
    def test_found_presentations_have_plane_residues(self, q, seed):
        plane = difference_set_plane(q)
        target = (q + 1) * plane.n
        out = run_search(plane, random_correspondence(plane, seed),
                         SearchConfig(target=target, max_steps=500))
        assert out.found
        cx = build_scab(out.presentation)
        for v in cx.vertices:
            g = residue(cx, v)
            assert verify_generalized_triangle(g, q)
            assert_witness(g, residue_plane_iso(g, plane), plane)


class TestGeneralizedTriangle:
    def test_heawood(self, pg2):
        assert verify_generalized_triangle(incidence_graph(pg2), 2)
        assert verify_generalized_triangle(nx.heawood_graph(), 2)

    def test_cube(self):
        assert not verify_generalized_triangle(nx.hypercube_graph(3), 2)

    def test_wrong_order(self, pg3):
        assert not verify_generalized_triangle(incidence_graph(pg3), 2)

    def test_disconnected(self, pg2):
        g = nx.disjoint_union(incidence_graph(pg2), incidence_graph(pg2))
        assert not verify_generalized_triangle(g, 2)

    def test_short_cycles_are_rejected(self):
        # point i on lines i, i+1, i+2 mod 7: right sizes and degrees, but 4-cycles
        g = nx.Graph()
        g.add_edges_from((("p", i), ("l", (i + d) % 7)) for i in range(7) for d in (0, 1, 2))
        assert nx.is_connected(g) and nx.girth(g) == 4
        assert not verify_generalized_triangle(g, 2)

    def test_heawood_vs_order_three(self, pg3):
        assert residue_plane_iso(nx.heawood_graph(), pg3) is None

    def test_hughes_incidence_graph_maps_to_itself(self, hughes):
        g = incidence_graph(hughes)
        assert_witness(g, residue_plane_iso(g, hughes), hughes)
