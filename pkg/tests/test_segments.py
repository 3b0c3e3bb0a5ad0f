"""Segment solver: closed forms, the DAG, path queries, and the oracle."""

from __future__ import annotations

import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kcof import (
    GameInstance,
    best_pne,
    brute_force_pne_oracle,
    build_segment,
    build_segment_graph,
    enumerate_pne,
    exists_pne,
    is_pure_nash,
    social_cost,
    to_dot,
    worst_pne,
)
from kcof.catalog import catalog_entry
from tests.conftest import random_instance


@pytest.fixture(scope="module")
def quad() -> GameInstance:
    return GameInstance(k=1, beliefs=(0, 9, 12, 21))


@pytest.fixture(scope="module")
def gadget() -> GameInstance:
    return GameInstance(k=1, beliefs=(0, F(7, 8), 2))


class TestBuildSegment:
    def test_closed_forms_left_pair(self, quad):
        seg = build_segment(quad, 0, 0, 1)
        assert seg.opinions == (3, 6)
        assert seg.legit

    def test_closed_forms_right_pair(self, quad):
        seg = build_segment(quad, 2, 2, 3)
        assert seg.opinions == (15, 18)
        assert seg.legit

    def test_full_block(self, quad):
        seg = build_segment(quad, 0, 1, 3)
        assert seg.opinions == (5, 10, 11, 16)
        assert seg.legit

    def test_inconsistent_block_rejected(self, quad):
        # pivot at the first player: player 1's designated neighbor is player 0,
        # but player 2's opinion lands exactly on player 1's belief
        seg = build_segment(quad, 0, 0, 3)
        assert seg.opinions == (3, 6, 9, 15)
        assert not seg.legit
        assert not seg.pairwise_consistent

    def test_boundary_fields(self, quad):
        assert not build_segment(quad, 1, 1, 3).legit  # a == 1
        assert not build_segment(quad, 0, 0, 2).legit  # c == n-2

    def test_two_player_thirds(self):
        inst = GameInstance(k=1, beliefs=(0, 3))
        seg = build_segment(inst, 0, 0, 1)
        assert seg.opinions == (1, 2)
        assert seg.weight == 2

    def test_parameter_validation(self, quad):
        with pytest.raises(ValueError):
            build_segment(quad, 2, 1, 3)
        with pytest.raises(ValueError):
            build_segment(GameInstance(k=2, beliefs=(0, 1, 2)), 0, 0, 1)


class TestSegmentGraph:
    def test_exactly_three_legit_segments(self, quad):
        graph = build_segment_graph(quad)
        assert {s.triple for s in graph.segments} == {(0, 0, 1), (2, 2, 3), (0, 1, 3)}

    def test_wiring_matches_the_two_decompositions(self, quad):
        graph = build_segment_graph(quad)
        ids = {s.triple: u for u, s in enumerate(graph.segments)}
        assert set(graph.start_ids) == {ids[(0, 0, 1)], ids[(0, 1, 3)]}
        assert set(graph.end_ids) == {ids[(2, 2, 3)], ids[(0, 1, 3)]}
        assert graph.successors[ids[(0, 0, 1)]] == (ids[(2, 2, 3)],)
        assert graph.successors[ids[(0, 1, 3)]] == ()

    def test_edges_advance_topologically(self, rng):
        for _ in range(20):
            graph = build_segment_graph(random_instance(rng))
            for u, outs in enumerate(graph.successors):
                for v in outs:
                    assert graph.segments[v].a == graph.segments[u].c + 1

    def test_dot_output(self, quad):
        dot = to_dot(build_segment_graph(quad))
        assert "digraph" in dot
        assert 'C(0,0,1) w=6' in dot
        assert "source ->" in dot and "-> sink" in dot

    def test_k_must_be_one(self):
        with pytest.raises(ValueError):
            build_segment_graph(GameInstance(k=2, beliefs=(0, 1, 2)))


class TestExistence:
    def test_quad_has_equilibria(self, quad):
        assert exists_pne(quad)

    def test_gadget_has_none(self, gadget):
        assert not exists_pne(gadget)

    @settings(max_examples=60, deadline=None)
    @given(a=st.integers(-50, 50), gap=st.integers(0, 100))
    def test_two_players_always_solvable(self, a, gap):
        inst = GameInstance(k=1, beliefs=(F(a), F(a + gap)))
        assert exists_pne(inst)
        found = enumerate_pne(inst, 5)
        assert [z for z, _ in found] == [(F(a) + F(gap, 3), F(a) + F(2 * gap, 3))]


class TestPathQueries:
    def test_quad_best_and_worst(self, quad):
        # both equilibria cost 12; the lexicographically smaller path wins ties
        bz, bc = best_pne(quad)
        wz, wc = worst_pne(quad)
        assert (bz, bc) == ((3, 6, 15, 18), 12)
        assert (wz, wc) == ((3, 6, 15, 18), 12)

    def test_quad_enumeration(self, quad):
        found = enumerate_pne(quad, 10)
        assert {z for z, _ in found} == {(3, 6, 15, 18), (5, 10, 11, 16)}
        for z, cost in found:
            assert is_pure_nash(quad, z).is_pne
            assert social_cost(quad, z) == cost  # path weight equals social cost

    def test_unique_equilibrium_chain(self):
        entry = catalog_entry("pos_chain", k=1, lam=F(1, 10))
        found = enumerate_pne(entry.instance, 50)
        assert len(found) == 1
        assert found[0][1] == F(34, 3) - F(2, 5)
        assert best_pne(entry.instance) == worst_pne(entry.instance) == found[0]

    def test_gadget_queries_empty(self, gadget):
        assert best_pne(gadget) is None
        assert worst_pne(gadget) is None
        assert enumerate_pne(gadget, 10) == []

    def test_enumerate_limit(self, quad):
        assert len(enumerate_pne(quad, 1)) == 1
        with pytest.raises(ValueError):
            enumerate_pne(quad, 0)

    def test_degenerate_duplicates_collapse(self):
        inst = GameInstance(k=1, beliefs=(5, 5, 5, 5))
        found = enumerate_pne(inst, 50)
        assert found == [((5, 5, 5, 5), 0)]


class TestOracle:
    def test_quad_matches_enumeration(self, quad):
        assert set(brute_force_pne_oracle(quad)) == {
            (3, 6, 15, 18),
            (5, 10, 11, 16),
        }

    def test_two_player_thirds(self):
        inst = GameInstance(k=1, beliefs=(0, 3))
        assert brute_force_pne_oracle(inst) == [(1, 2)]

    def test_size_guard(self):
        inst = GameInstance(k=1, beliefs=tuple(range(17)))
        with pytest.raises(ValueError):
            brute_force_pne_oracle(inst)

    def test_oracle_equivalence_random(self, rng):
        # 50 random instances here; the acceptance suite runs the full 200
        for _ in range(50):
            inst = random_instance(rng)
            expected = set(brute_force_pne_oracle(inst))
            got = {z for z, _ in enumerate_pne(inst, 1 << inst.n)}
            assert got == expected

    def test_found_equilibria_are_monotone(self, rng):
        for _ in range(20):
            inst = random_instance(rng)
            for z in brute_force_pne_oracle(inst):
                assert all(z[i] <= z[i + 1] for i in range(inst.n - 1))
