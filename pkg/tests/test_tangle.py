from __future__ import annotations

import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_word
from walled_tangles.tangle import (
    DOWN,
    UP,
    Connector,
    Cross,
    DslError,
    Hand,
    Max,
    Min,
    SliceError,
    Sweep,
    TangleType,
    TangleWord,
    algebra_type,
    all_down_type,
    canonical_basis_word,
    connector_of,
    enumerate_connectors,
    parse_type,
    parse_word,
    render_type,
    render_word,
    shifted_slices,
    stack,
    start_vertices,
    strand_graph,
    vertex_name,
)

FO = Hand.FIRST_OVER
FU = Hand.FIRST_UNDER
L2R = Sweep.LEFT_TO_RIGHT
R2L = Sweep.RIGHT_TO_LEFT


def edges_by_name(connector: Connector) -> set[tuple[str, str]]:
    return {(vertex_name(a), vertex_name(b)) for a, b in connector.edges}


class TestWordValidation:
    def test_identity_words(self):
        for ty in (algebra_type(2, 1), all_down_type(0), TangleType((UP,), (UP,))):
            w = TangleWord(ty, [])
            assert w.levels == (ty.top,)

    def test_level_tracking(self):
        ty = TangleType((DOWN, UP), (UP, DOWN))
        w = TangleWord(ty, [Cross(1, FO)])
        assert w.levels == ((DOWN, UP), (UP, DOWN))

    def test_bad_positions(self):
        with pytest.raises(SliceError):
            TangleWord(all_down_type(2), [Cross(2, FO)])
        with pytest.raises(SliceError):
            TangleWord(all_down_type(2), [Min(5)])
        with pytest.raises(SliceError):
            TangleWord(all_down_type(2), [Max(4, L2R)])

    def test_valley_needs_opposite_orientations(self):
        with pytest.raises(SliceError):
            TangleWord(all_down_type(2), [Min(1)])

    def test_bottom_mismatch(self):
        with pytest.raises(SliceError):
            TangleWord(TangleType((DOWN, UP), ()), [])
        # a crossing swaps equal orientations invisibly, so this one is fine
        TangleWord(all_down_type(2), [Cross(1, FO)])
        with pytest.raises(SliceError):
            TangleWord(TangleType((DOWN, UP), (DOWN, UP)), [Cross(1, FO)])

    def test_stack_and_shift(self):
        w = TangleWord(all_down_type(2), [Cross(1, FO)])
        ww = stack(w, w)
        assert ww.slices == (Cross(1, FO), Cross(1, FO))
        assert shifted_slices(ww.slices, 2) == (Cross(3, FO), Cross(3, FO))
        with pytest.raises(ValueError):
            stack(w, TangleWord(algebra_type(1, 1), []))


class TestStrandGraph:
    def test_three_strand_example(self):
        ty = TangleType((DOWN, UP, UP), (UP, DOWN, UP))
        w = TangleWord(ty, [Cross(2, FO), Cross(1, FO)])
        g = strand_graph(w)
        assert g.starts == (("T", 1), ("B", 1), ("B", 3))
        assert g.ends == (("B", 2), ("T", 3), ("T", 2))
        assert g.strand_writhes == (0, 0, 0)
        assert g.loops == ()
        by_slice = {c.slice_index: c for c in g.crossings}
        assert by_slice[0].entry == (UP, UP)
        assert by_slice[0].sign == -1
        assert (by_slice[0].component_a, by_slice[0].component_b) == (2, 1)
        assert by_slice[1].entry == (DOWN, UP)
        assert by_slice[1].sign == 1
        assert (by_slice[1].component_a, by_slice[1].component_b) == (0, 1)

    def test_kinked_loop(self):
        w = TangleWord(TangleType((), ()), [Max(1, R2L), Cross(1, FO), Min(1)])
        g = strand_graph(w)
        assert g.starts == ()
        (loop,) = g.loops
        assert loop.creating_slice == 0
        assert loop.orientation is DOWN
        assert loop.writhe == 1
        (c,) = g.crossings
        assert c.is_self_crossing()

    def test_opposite_hands_cancel_writhe(self):
        w = TangleWord(all_down_type(2), [Cross(1, FO), Cross(1, FU)])
        g = strand_graph(w)
        signs = sorted(c.sign for c in g.crossings)
        assert signs == [-1, 1]
        assert g.ends == (("B", 1), ("B", 2))

    def test_nested_loops(self):
        slices = [Max(1, R2L), Max(2, L2R), Min(2), Min(1)]
        g = strand_graph(TangleWord(TangleType((), ()), slices))
        assert len(g.loops) == 2
        assert [l.creating_slice for l in g.loops] == [0, 1]

    @given(st.integers(0, 10**6))
    @settings(max_examples=60, deadline=None)
    def test_each_crossing_has_two_distinct_passes(self, seed):
        w = random_word(random.Random(seed))
        g = strand_graph(w)
        for c in g.crossings:
            if c.component_a == c.component_b:
                assert c.time_a != c.time_b

    @given(st.integers(0, 10**6))
    @settings(max_examples=60, deadline=None)
    def test_connector_is_a_matching(self, seed):
        w = random_word(random.Random(seed))
        c = connector_of(w)
        assert len(c.edges) == len(start_vertices(w.ty))


class TestConnectors:
    def test_enumerate_counts(self):
        assert len(enumerate_connectors(algebra_type(2, 1))) == 6
        assert len(enumerate_connectors(all_down_type(4))) == 24
        assert len(enumerate_connectors(TangleType((), ()))) == 1

    def test_unbalanced_type_rejected(self):
        with pytest.raises(ValueError):
            enumerate_connectors(TangleType((DOWN, DOWN), (UP, UP)))

    def test_edges_sorted_by_start(self):
        for c in enumerate_connectors(algebra_type(1, 2)):
            keys = [(0 if v[0] == "T" else 1, v[1]) for v, _ in c.edges]
            assert keys == sorted(keys)

    def test_totally_propagating(self):
        ident = Connector(all_down_type(2), [(("T", 1), ("B", 1)), (("T", 2), ("B", 2))])
        assert ident.is_totally_propagating()
        turn = Connector(algebra_type(1, 1), [(("T", 1), ("T", 2)), (("B", 2), ("B", 1))])
        assert not turn.is_totally_propagating()


def boundary_circle_positions(ty: TangleType) -> dict:
    """Walk the rectangle boundary clockwise from the top-left corner: top
    left to right, then bottom right to left."""
    order = [("T", k) for k in range(1, len(ty.top) + 1)]
    order += [("B", k) for k in range(len(ty.bottom), 0, -1)]
    return {v: i for i, v in enumerate(order)}


def forced_crossing_pairs(connector: Connector) -> int:
    pos = boundary_circle_positions(connector.ty)
    total = len(pos)
    count = 0
    for (s1, e1), (s2, e2) in combinations(connector.edges, 2):
        a, b = sorted((pos[s1], pos[e1]))
        inside = sum(1 for v in (s2, e2) if a < pos[v] < b)
        if inside == 1:
            count += 1
    assert total == 2 * len(connector.edges)
    return count


class TestCanonicalBasisWord:
    def all_small_connectors(self):
        types = []
        for m in range(0, 4):
            for r in range(m + 1):
                types.append(algebra_type(r, m - r))
        types.append(TangleType((DOWN, UP, UP), (UP, DOWN, UP)))
        types.append(TangleType((UP, DOWN), (DOWN, UP)))
        for ty in types:
            yield from enumerate_connectors(ty)

    def test_round_trip_and_shape(self):
        for c in self.all_small_connectors():
            w = canonical_basis_word(c)
            assert connector_of(w) == c
            g = strand_graph(w)
            assert g.loops == ()
            assert g.strand_writhes == (0,) * len(g.starts)
            seen_pairs = {}
            for x in g.crossings:
                assert not x.is_self_crossing()
                pair = frozenset((x.component_a, x.component_b))
                seen_pairs[pair] = seen_pairs.get(pair, 0) + 1
            assert all(v == 1 for v in seen_pairs.values())

    def test_descending_hands(self):
        for c in self.all_small_connectors():
            for x in strand_graph(canonical_basis_word(c)).crossings:
                earlier_is_a = (x.component_a, x.time_a) < (x.component_b, x.time_b)
                assert (x.hand is Hand.FIRST_OVER) == earlier_is_a

    def test_crossing_count_is_minimal(self):
        for c in self.all_small_connectors():
            w = canonical_basis_word(c)
            crossings = sum(1 for s in w.slices if isinstance(s, Cross))
            assert crossings == forced_crossing_pairs(c)

    def test_permutation_words_are_positive(self):
        # All-down connectors must come out as positive braid words.
        for c in enumerate_connectors(all_down_type(4)):
            w = canonical_basis_word(c)
            assert all(isinstance(s, Cross) and s.hand is FO for s in w.slices)

    def test_spot_check_m4(self):
        ty = algebra_type(2, 2)
        for c in random.Random(7).sample(enumerate_connectors(ty), 8):
            w = canonical_basis_word(c)
            assert connector_of(w) == c


class TestDsl:
    def test_type_round_trip(self):
        for text in ("vv|vv", "v^|^v", "|", "v2^3|v^4^"):
            ty = parse_type(text)
            assert parse_type(render_type(ty)) == ty

    def test_type_errors(self):
        with pytest.raises(DslError):
            parse_type("vv")
        with pytest.raises(DslError):
            parse_type("v|v|v")
        with pytest.raises(DslError):
            parse_type("vx|v")
        with pytest.raises(DslError):
            parse_type("v0|")

    def test_word_round_trip_random(self):
        rng = random.Random(11)
        for _ in range(50):
            w = random_word(rng)
            again = parse_word(render_word(w), w.ty)
            assert again == w

    def test_macros(self):
        ty = algebra_type(1, 1)
        assert parse_word("E(1)", ty).slices == (Min(1), Max(1, R2L))
        ty2 = TangleType((UP, DOWN), (UP, DOWN))
        assert parse_word("E(1)", ty2).slices == (Min(1), Max(1, L2R))
        assert parse_word("S+(1) S-(1)", all_down_type(2)).slices == (Cross(1, FO), Cross(1, FU))

    def test_position_out_of_range_reports_offset(self):
        with pytest.raises(DslError) as err:
            parse_word("X+(9)", all_down_type(2))
        assert err.value.position == 0
        with pytest.raises(DslError) as err:
            parse_word("X+(1) U(4)", all_down_type(2))
        assert err.value.position == 6

    def test_unknown_token(self):
        with pytest.raises(DslError) as err:
            parse_word("Y(1)", all_down_type(2))
        assert err.value.position == 0

    def test_macro_orientation_error(self):
        with pytest.raises(DslError):
            parse_word("E(1)", all_down_type(2))

    def test_incomplete_word(self):
        with pytest.raises(DslError) as err:
            parse_word("U(1)", algebra_type(1, 1))
        assert err.value.position == len("U(1)")
