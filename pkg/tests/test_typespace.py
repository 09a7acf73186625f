import random
from collections import Counter

import pytest

from cge.cover import VertexCover, connect_cover, vertex_cover_2approx
from cge.errors import NotIndependent, PreconditionViolated, TypeSpaceTooLarge
from cge.exact import exact_optimum
from cge.fptilp import (
    FptContext,
    ValidPair,
    decompose_valid_pair,
    derive_cycle_type,
    derive_robot_type,
    derive_vertex_type,
    enumerate_type_space,
    robot_bud,
)
from cge.graphs import ExplorationInstance, Multigraph

from conftest import random_connected_graph


def make_ctx(g, v_init, k, budget, cover=None, max_cover=6):
    inst = ExplorationInstance(g, v_init, k, budget)
    vcp = connect_cover(g, cover or vertex_cover_2approx(g), v_init)
    return FptContext.build(inst, vcp, max_cover=max_cover)


def path3_ctx(k=1, budget=4):
    g = Multigraph.from_pairs(3, [(0, 1), (1, 2)])
    return make_ctx(g, 1, k, budget, cover=VertexCover((1,)))


class TestDeriveVertexType:
    def test_skeleton_only_occurrence(self):
        ctx = path3_ctx()
        pair = ValidPair(cc=((0, 1), (0, 1), (1, 2), (1, 2)), cycles=())
        vt = derive_vertex_type(ctx, 0, [pair])
        assert vt.class_id == 0
        assert vt.nei_subsets == ((1, 1),)

    def test_cycle_only_occurrence(self):
        ctx = path3_ctx()
        pair = ValidPair(cc=((0, 1), (0, 1)), cycles=((1, 2, 1),))
        vt = derive_vertex_type(ctx, 2, [pair])
        assert vt.nei_subsets == ((1, 1),)

    def test_rejects_cover_vertex(self):
        ctx = path3_ctx()
        with pytest.raises(NotIndependent):
            derive_vertex_type(ctx, 1, [])

    def test_three_robot_scenario_around_one_vertex(self):
        """Independent vertex 0 adjacent to cover path 1..8; one robot covers
        it with neighborhood {1,6,8,8}, one with two cycles through {3,4} and
        {7,8}, one with {2,2,5,6}: four neighbor multisets, verbatim.
        """
        pairs = [(0, w) for w in range(1, 9)]
        pairs += [(i, i + 1) for i in range(1, 8)]
        g = Multigraph.from_pairs(9, pairs)
        ctx = make_ctx(
            g, 1, 3, 40, cover=VertexCover(tuple(range(1, 9))), max_cover=8
        )
        red = ValidPair(
            cc=(
                (0, 1), (0, 6), (0, 8), (0, 8),
                (1, 2), (2, 3), (3, 4), (4, 5), (5, 6),
            ),
            cycles=(),
        )
        blue = ValidPair(
            cc=((1, 2), (1, 2)),
            cycles=((3, 0, 4, 3), (7, 0, 8, 7)),
        )
        green = ValidPair(
            cc=((0, 2), (0, 2), (0, 5), (0, 6), (5, 6), (1, 2), (1, 2)),
            cycles=(),
        )
        vt = derive_vertex_type(ctx, 0, [red, blue, green])
        assert vt.nei_subsets == (
            (1, 6, 8, 8),
            (2, 2, 5, 6),
            (3, 4),
            (7, 8),
        )


class TestDeriveRobotType:
    def test_double_edge_at_start(self):
        g = Multigraph.from_pairs(2, [(0, 1)])
        ctx = make_ctx(g, 0, 1, 2, cover=VertexCover((0, 1)))
        pair = ValidPair(cc=((0, 1), (0, 1)), cycles=())
        rt = derive_robot_type(ctx, 0, [pair])
        assert rt.cc == ((0, 1), (0, 1))
        assert rt.alloc == ()
        assert all(n == 0 for n in rt.num_of_cyc)

    def test_triangle_cycle_counts(self):
        g = Multigraph.from_pairs(3, [(0, 1), (0, 2), (1, 2)])
        ctx = make_ctx(g, 0, 1, 8, cover=VertexCover((0, 1, 2)))
        pair = ValidPair(
            cc=((0, 1), (0, 1)), cycles=((0, 1, 2, 0),)
        )
        rt = derive_robot_type(ctx, 0, [pair])
        # slots are lengths 2..6 without 4; the triangle sits in slot for 3
        slots = ctx.cycle_length_slots
        assert rt.num_of_cyc[slots.index(3)] == 1
        assert sum(rt.num_of_cyc) == 1

    def test_allocation_domain_has_doubled_pair(self):
        """A skeleton whose class copy is doubled toward one cover vertex
        must allocate the pair (copy, {1, 1}).
        """
        g = Multigraph.from_pairs(3, [(1, 0), (1, 2)])  # center 1
        ctx = make_ctx(g, 1, 1, 6, cover=VertexCover((1,)))
        pair = ValidPair(cc=((0, 1), (0, 1)), cycles=())
        rt = derive_robot_type(ctx, 0, [pair])
        assert len(rt.alloc) == 1
        copy, vt = rt.alloc[0]
        assert copy in ctx.gbar.copies[0]
        assert vt.class_id == 0

    def test_relabel_into_expansion_ids(self):
        ctx = path3_ctx(budget=8)
        pair = ValidPair(
            cc=((0, 1), (0, 1), (1, 2), (1, 2)), cycles=()
        )
        rt = derive_robot_type(ctx, 0, [pair])
        copies = ctx.gbar.copies[0]
        assert rt.cc == (
            (1, copies[0]), (1, copies[0]), (1, copies[1]), (1, copies[1])
        )


class TestDeriveCycleType:
    def test_two_cycle_through_independent(self):
        ctx = path3_ctx()
        pair = ValidPair(cc=((0, 1), (0, 1)), cycles=((1, 2, 1),))
        ct = derive_cycle_type(ctx, 0, (1, 2, 1), [pair])
        star_vertex = ctx.gstar.class_vertex[0]
        assert ct.cycle == (1, star_vertex, 1)
        assert len(ct.pa_alloc) == 1
        assert ct.pa_alloc[0][0] == (1, 1)

    def test_cover_only_cycle_has_empty_alloc(self):
        g = Multigraph.from_pairs(4, [(0, 1), (0, 2), (1, 2), (0, 3)])
        ctx = make_ctx(g, 0, 1, 10, cover=VertexCover((0, 1, 2)))
        pair = ValidPair(
            cc=((0, 3), (0, 3)), cycles=((0, 1, 2, 0),)
        )
        ct = derive_cycle_type(ctx, 0, (0, 1, 2, 0), [pair])
        assert ct.pa_alloc == ()
        assert ct.cycle == (0, 1, 2, 0)


class TestEnumerate:
    def test_path_single_vertex_type(self):
        ctx = path3_ctx()
        space = enumerate_type_space(ctx)
        assert len(space.vertex_types) == 1
        assert space.vertex_types[0].nei_subsets == ((1, 1),)

    def test_no_independents_no_vertex_types(self):
        g = Multigraph.from_pairs(2, [(0, 1)])
        ctx = make_ctx(g, 0, 1, 2, cover=VertexCover((0, 1)))
        space = enumerate_type_space(ctx)
        assert space.vertex_types == ()
        assert all(ct.pa_alloc == () for ct in space.cycle_types)

    def test_doubled_edge_robot_type_present(self):
        g = Multigraph.from_pairs(2, [(0, 1)])
        ctx = make_ctx(g, 0, 1, 2, cover=VertexCover((0, 1)))
        space = enumerate_type_space(ctx)
        ccs = {rt.cc for rt in space.robot_types}
        assert ((0, 1), (0, 1)) in ccs
        assert all(robot_bud(ctx, rt) <= ctx.budget for rt in space.robot_types)

    def test_guard_rejects_large_cover(self):
        g = Multigraph.from_pairs(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
        ctx = make_ctx(g, 0, 1, 8)  # connected cover of a 4-cycle has size 3
        with pytest.raises(TypeSpaceTooLarge):
            enumerate_type_space(ctx)

    def test_rejects_edgeless(self):
        g = Multigraph(1)
        inst = ExplorationInstance(g, 0, 1, 0)
        ctx = FptContext.build(inst, VertexCover((0,), connected=True))
        with pytest.raises(PreconditionViolated):
            enumerate_type_space(ctx)


class TestTypeClosure:
    """Every type derived from a decomposed oracle solution is enumerated."""

    def test_collapsed_square_on_single_cover_vertex(self):
        """With a size-1 cover, the square through two equivalent leaves maps
        to a quotient walk bouncing twice on one edge; it must be enumerated.
        """
        g = Multigraph.from_pairs(4, [(0, 1), (0, 2), (0, 3)])
        inst = ExplorationInstance(g, 0, 1)
        opt, sol = exact_optimum(inst)
        vcp = connect_cover(g, VertexCover((0,)), 0)
        ctx = FptContext.build(inst.with_budget(opt), vcp)
        pair = decompose_valid_pair(ctx, Counter(sol.multisets[0]))
        assert (0, 2, 0, 3, 0) in pair.cycles
        space = enumerate_type_space(ctx)
        ct = derive_cycle_type(ctx, 0, (0, 2, 0, 3, 0), [pair])
        star_vertex = ctx.gstar.class_vertex[0]
        assert ct.cycle == (0, star_vertex, 0, star_vertex, 0)
        assert ct in set(space.cycle_types)

    @pytest.mark.parametrize("seed", range(10))
    def test_derived_types_are_members(self, seed):
        rng = random.Random(4000 + seed)
        while True:
            g = random_connected_graph(rng, n_max=5, m_max=6)
            v_init = rng.randrange(g.n)
            vcp = connect_cover(g, vertex_cover_2approx(g), v_init)
            eq_count = len({tuple(g.neighbors(u)) for u in range(g.n) if u not in vcp.as_set()})
            if len(vcp) <= 2 and eq_count <= 3:
                break
        k = rng.randint(1, 2)
        inst = ExplorationInstance(g, v_init, k)
        opt, sol = exact_optimum(inst)
        ctx = FptContext.build(inst.with_budget(opt), vcp)
        space = enumerate_type_space(ctx)
        ver_set = set(space.vertex_types)
        rob_set = set(space.robot_types)
        cyc_set = set(space.cycle_types)
        pairs = []
        for ms in sol.multisets:
            source = Counter(ms)
            if not source:
                e0 = min(e for e in g.distinct_edges() if v_init in e)
                source = Counter({e0: 2})
            pairs.append(decompose_valid_pair(ctx, source))
        for u in range(g.n):
            if u not in ctx.cover_set:
                assert derive_vertex_type(ctx, u, pairs) in ver_set
        for i in range(k):
            assert derive_robot_type(ctx, i, pairs) in rob_set
            for cyc in pairs[i].cycles:
                assert derive_cycle_type(ctx, i, cyc, pairs) in cyc_set
