import pytest

from symfam import (
    BlochPoint,
    Constellation,
    DomainError,
    classify_pure,
    descends,
    dicke,
    diversity,
    enumerate_partitions,
    format_partition,
    from_constellation,
    ghz,
    hasse_graph,
    parse_partition,
    to_dot,
)

from oracles import brute_transitive_reduction, partition_count

KNOWN_COUNTS = (1, 2, 3, 5, 7, 11, 15, 22, 30, 42)


class TestEnumeration:
    def test_n4_exact_reverse_lex(self):
        assert enumerate_partitions(4) == [
            (4,),
            (3, 1),
            (2, 2),
            (2, 1, 1),
            (1, 1, 1, 1),
        ]

    def test_small_counts(self):
        assert len(enumerate_partitions(3)) == 3
        assert partition_count(8) == 22
        assert len(enumerate_partitions(8)) == 22

    def test_counts_match_oracle(self):
        for n in range(1, 11):
            assert len(enumerate_partitions(n)) == partition_count(n) == KNOWN_COUNTS[n - 1]

    def test_rejects_zero(self):
        with pytest.raises(DomainError):
            enumerate_partitions(0)


class TestDiversity:
    def test_examples(self):
        assert diversity((2, 1, 1)) == 3
        assert diversity((7,)) == 1
        assert diversity((1, 1, 1, 1)) == 4


class TestDescends:
    def test_four_qubit_boundary_relations(self):
        assert descends((2, 1, 1), (2, 2))
        assert not descends((3, 1), (2, 2))
        assert not descends((2, 2), (3, 1))
        assert descends((1, 1, 1, 1), (4,))

    def test_strict_partial_order(self):
        for n in range(2, 9):
            parts = enumerate_partitions(n)
            for a in parts:
                assert not descends(a, a)
            for a in parts:
                for b in parts:
                    if descends(a, b):
                        assert not descends(b, a)
            for a in parts:
                for b in parts:
                    for c in parts:
                        if descends(a, b) and descends(b, c):
                            assert descends(a, c)

    def test_mismatched_totals(self):
        with pytest.raises(DomainError):
            descends((3, 1), (3,))

    def test_accepts_uncanonical_input(self):
        assert descends((1, 1, 2), (2, 2))


class TestHasseGraph:
    def test_n4_exact_edges(self):
        g = hasse_graph(4)
        assert set(g.edges) == {
            ((1, 1, 1, 1), (2, 1, 1)),
            ((2, 1, 1), (2, 2)),
            ((2, 1, 1), (3, 1)),
            ((2, 2), (4,)),
            ((3, 1), (4,)),
        }

    def test_n3_chain(self):
        g = hasse_graph(3)
        assert set(g.edges) == {((1, 1, 1), (2, 1)), ((2, 1), (3,))}

    def test_n2_single_edge(self):
        assert hasse_graph(2).edges == (((1, 1), (2,)),)

    def test_node_counts(self):
        for n in range(1, 11):
            assert len(hasse_graph(n).nodes) == KNOWN_COUNTS[n - 1]

    def test_edges_drop_diversity_by_one(self):
        for n in range(2, 9):
            for src, dst in hasse_graph(n).edges:
                assert len(src) - len(dst) == 1

    def test_unique_source_and_sink(self):
        for n in range(2, 9):
            g = hasse_graph(n)
            targets = {dst for _, dst in g.edges}
            sources = {src for src, _ in g.edges}
            assert [p for p in g.nodes if p not in targets] == [(1,) * n]
            assert [p for p in g.nodes if p not in sources] == [(n,)]

    def test_matches_brute_force_reduction(self):
        for n in range(2, 9):
            g = hasse_graph(n)
            expected = brute_transitive_reduction(g.nodes, descends)
            assert set(g.edges) == expected

    def test_no_same_diversity_descent_and_coverage(self):
        for n in range(2, 9):
            parts = enumerate_partitions(n)
            for a in parts:
                for b in parts:
                    if descends(a, b):
                        assert diversity(b) < diversity(a)
            covered = {dst for _, dst in hasse_graph(n).edges}
            for p in parts:
                if diversity(p) < n:
                    assert p in covered

    def test_extreme_layers_hold_one_family(self):
        for n in range(2, 11):
            parts = enumerate_partitions(n)
            for d in (n, n - 1, 1):
                layer = [p for p in parts if diversity(p) == d]
                assert len(layer) == 1


class TestDot:
    def test_n2(self):
        text = to_dot(hasse_graph(2))
        assert text.count("rank=same") == 2
        assert '"D_{1,1}" -> "D_{2}";' in text

    def test_n4_layers_and_edges(self):
        text = to_dot(hasse_graph(4))
        assert text.count("->") == 5
        assert text.count("rank=same") == 4
        for label in ("D_{4}", "D_{3,1}", "D_{2,2}", "D_{2,1,1}", "D_{1,1,1,1}"):
            assert label in text

    def test_n1_single_node(self):
        text = to_dot(hasse_graph(1))
        assert "->" not in text
        assert "D_{1}" in text

    def test_deterministic(self):
        assert to_dot(hasse_graph(5)) == to_dot(hasse_graph(5))


class TestClassifyPure:
    def test_ghz(self):
        assert classify_pure(ghz(4)) == (1, 1, 1, 1)

    def test_dicke(self):
        assert classify_pure(dicke(5, 2)) == (3, 2)

    def test_separable(self):
        con = Constellation(6, ((BlochPoint(0.8, 0.3), 6),))
        assert classify_pure(from_constellation(con)) == (6,)


class TestPartitionText:
    def test_parse_any_order(self):
        assert parse_partition("1,2,1") == (2, 1, 1)

    def test_format(self):
        assert format_partition((2, 1, 1)) == "2,1,1"

    def test_parse_garbage(self):
        with pytest.raises(DomainError):
            parse_partition("2,x")
        with pytest.raises(DomainError):
            parse_partition("0,4")
