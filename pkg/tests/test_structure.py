import pytest
from hypothesis import given

from obspart import (
    MalformedInputError,
    StructuredSystem,
    build_bipartite,
    build_digraph,
    reverse_reachable,
)
from conftest import S
from strategies import systems


class TestStructuredSystem:
    def test_pattern_entry_out_of_range(self):
        with pytest.raises(MalformedInputError, match=r"\(4, 1\) out of range"):
            S(3, 0, [(4, 1)])

    def test_h_rows_bounded_by_p(self):
        with pytest.raises(MalformedInputError, match=r"\(2, 1\) out of range"):
            S(3, 1, [], [(2, 1)])

    def test_non_integer_entry_rejected(self):
        with pytest.raises(MalformedInputError, match="not a pair of integers"):
            StructuredSystem(n=2, p=0, a_pattern=frozenset({(1.0, 2)}))

    def test_bool_entry_rejected(self):
        with pytest.raises(MalformedInputError, match="not a pair of integers"):
            StructuredSystem(n=2, p=0, a_pattern=frozenset({(True, 2)}))

    def test_bad_n(self):
        with pytest.raises(MalformedInputError, match="n must be"):
            S(0, 0, [])

    def test_negative_p(self):
        with pytest.raises(MalformedInputError, match="p must be"):
            S(2, -1, [])

    def test_duplicate_entries_rejected(self):
        with pytest.raises(MalformedInputError, match=r"duplicate a pattern entry \(1, 2\)"):
            S(3, 0, [(1, 2), (1, 2)])
        with pytest.raises(MalformedInputError, match="duplicate h"):
            S(3, 2, [], [(1, 1), (1, 1)])

    def test_row_states(self):
        sys = S(4, 2, [], [(1, 2), (1, 4), (2, 1)])
        assert sys.row_states(1) == (2, 4)
        assert sys.row_states(2) == (1,)
        with pytest.raises(MalformedInputError):
            sys.row_states(3)

    def test_with_sensor_rows_appends(self):
        sys = S(3, 1, [(2, 1)], [(1, 3)])
        grown = sys.with_sensor_rows([2, 1])
        assert grown.p == 3
        assert grown.row_states(2) == (2,)
        assert grown.row_states(3) == (1,)
        with pytest.raises(MalformedInputError):
            sys.with_sensor_rows([7])

    def test_without_row_renumbers(self):
        sys = S(3, 3, [], [(1, 1), (2, 2), (3, 3)])
        smaller = sys.without_row(2)
        assert smaller.p == 2
        assert smaller.row_states(1) == (1,)
        assert smaller.row_states(2) == (3,)


class TestDigraph:
    def test_a_entry_direction(self):
        # entry (i, j) means state j drives state i
        dg = build_digraph(S(2, 0, [(2, 1)]))
        assert dg.edges == (("x1", "x2"),)

    def test_h_entry_direction(self):
        dg = build_digraph(S(2, 1, [], [(1, 2)]))
        assert dg.edges == (("x2", "y1"),)

    def test_self_loop(self):
        dg = build_digraph(S(1, 0, [(1, 1)]))
        assert dg.edges == (("x1", "x1"),)

    def test_edge_count_matches_pattern(self, fix15):
        dg = build_digraph(fix15)
        assert len(dg.edges) == len(fix15.a_pattern) + len(fix15.h_pattern)

    def test_node_index_unknown(self):
        dg = build_digraph(S(2, 1, [], [(1, 1)]))
        for bad in ("x3", "y2", "z1", "x0", "x", 5):
            with pytest.raises(MalformedInputError, match="unknown node id"):
                dg.node_index(bad)

    @given(systems())
    def test_round_trip_patterns(self, sys):
        dg = build_digraph(sys)
        a_back = set()
        h_back = set()
        for src, dst in dg.edges:
            j = int(src[1:])
            if dst.startswith("x"):
                a_back.add((int(dst[1:]), j))
            else:
                h_back.add((int(dst[1:]), j))
        assert a_back == set(sys.a_pattern)
        assert h_back == set(sys.h_pattern)

    @given(systems())
    def test_edge_count_invariant(self, sys):
        dg = build_digraph(sys)
        assert len(dg.edges) == len(sys.a_pattern) + len(sys.h_pattern)


class TestBipartite:
    def test_self_loop_pair(self):
        bg = build_bipartite(build_digraph(S(1, 0, [(1, 1)])))
        assert bg.edges == ((1, 1),)

    def test_chain_pairs(self):
        bg = build_bipartite(build_digraph(S(3, 0, [(2, 1), (3, 2)])))
        assert bg.edges == ((1, 2), (2, 3))

    def test_empty_patterns(self):
        bg = build_bipartite(build_digraph(S(2, 0, [])))
        assert bg.edges == ()
        assert bg.n_begin == 2 and bg.n_end == 2

    def test_measurement_ends_offset(self):
        bg = build_bipartite(build_digraph(S(2, 1, [], [(1, 2)])))
        assert bg.edges == ((2, 3),)  # end 3 = n + 1 = y1
        assert bg.n_end == 3


class TestReverseReachable:
    def test_chain_to_sensor(self, chain3):
        dg = build_digraph(chain3)
        assert reverse_reachable(dg, ["y1"]) == frozenset({"x1", "x2", "x3", "y1"})

    def test_isolated(self):
        dg = build_digraph(S(2, 0, []))
        assert reverse_reachable(dg, ["x1"]) == frozenset({"x1"})

    def test_unknown_target(self):
        dg = build_digraph(S(2, 0, []))
        with pytest.raises(MalformedInputError):
            reverse_reachable(dg, ["y1"])

    @given(systems(n_max=6))
    def test_monotone_in_targets(self, sys):
        dg = build_digraph(sys)
        small = reverse_reachable(dg, ["x1"])
        big = reverse_reachable(dg, ["x1", f"x{sys.n}"])
        assert small <= big
