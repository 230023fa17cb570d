import json
import random

import pytest

from conftest import random_graph
from powerlap.graphs import (
    Graph,
    complement,
    components,
    induced_subgraph,
    is_complete,
    power_graph,
    proper_power_graph,
    reduced_cyclic_graph,
    twin_partition,
    vertex_connectivity,
    vertex_connectivity_exhaustive,
)
from powerlap.groups import cyclic_group, dicyclic_group, direct_product


def test_graph_validation():
    with pytest.raises(ValueError, match="symmetric"):
        Graph(2, (0b10, 0b00))
    with pytest.raises(ValueError, match="self-loop"):
        Graph(1, (0b1,))
    with pytest.raises(ValueError, match="outside"):
        Graph(1, (0b10,))
    g = Graph.from_edges(3, [(0, 1)])
    assert g.adjacent(0, 1) and not g.adjacent(0, 2)
    assert g.degree(2) == 0


def test_power_graph_examples():
    assert is_complete(power_graph(cyclic_group(4)))
    z6 = power_graph(cyclic_group(6))
    for universal in (0, 1, 5):
        assert z6.degree(universal) == 5
    assert not z6.adjacent(2, 3)
    trivial = power_graph(cyclic_group(1))
    assert trivial.n == 1 and trivial.edge_count() == 0


def test_power_graph_connected(small_groups):
    for g in small_groups:
        assert len(components(power_graph(g))) == 1


def test_power_graph_complete_iff_prime_power_cyclic(small_groups):
    from powerlap.groups import factorize

    for n in range(1, 61):
        expected = n == 1 or factorize(n).is_prime_power
        assert is_complete(power_graph(cyclic_group(n))) == expected
    assert not is_complete(power_graph(dicyclic_group(2)))
    assert not is_complete(power_graph(direct_product(cyclic_group(2), cyclic_group(2))))


def test_proper_power_graph():
    assert is_complete(proper_power_graph(cyclic_group(7)))
    z33 = direct_product(cyclic_group(3), cyclic_group(3))
    comps = components(proper_power_graph(z33))
    assert len(comps) == 4
    assert all(len(c) == 2 for c in comps)
    assert len(components(proper_power_graph(dicyclic_group(2)))) == 1
    with pytest.raises(ValueError):
        proper_power_graph(cyclic_group(1))


def test_reduced_cyclic_graph():
    r6 = reduced_cyclic_graph(6)
    assert r6.labels == ("2", "3", "4")
    assert components(r6) == [[0, 2], [1]]
    r4 = reduced_cyclic_graph(4)
    assert r4.n == 1 and r4.labels == ("2",)
    r12 = reduced_cyclic_graph(12)
    assert r12.n == 12 - 4 - 1
    assert len(components(r12)) == 1
    assert reduced_cyclic_graph(7).n == 0  # prime: everything removed
    with pytest.raises(ValueError):
        reduced_cyclic_graph(1)


def test_reduced_disconnected_iff_two_distinct_primes():
    from powerlap.groups import factorize

    for n in range(4, 101):
        f = factorize(n)
        if f.is_prime:
            continue
        disconnected = len(components(reduced_cyclic_graph(n))) > 1
        assert disconnected == f.is_product_of_two_distinct_primes, n


def test_components_edge_cases():
    assert components(Graph(0, ())) == []
    assert components(Graph.complete(4)) == [[0, 1, 2, 3]]
    g = Graph.from_edges(5, [(0, 1), (2, 3)])
    assert components(g) == [[0, 1], [2, 3], [4]]


def test_complement():
    k4 = Graph.complete(4)
    assert complement(k4).edge_count() == 0
    rng = random.Random(7)
    for _ in range(20):
        g = random_graph(rng, rng.randint(0, 12), rng.random())
        assert complement(complement(g)) == g
    q2 = power_graph(dicyclic_group(2))
    assert len(components(complement(q2))) == 3


def test_induced_subgraph():
    z6 = power_graph(cyclic_group(6))
    assert induced_subgraph(z6, range(6)) == z6
    sub = induced_subgraph(z6, [2, 3, 4])
    assert sub == reduced_cyclic_graph(6)
    with pytest.raises(ValueError, match="unknown vertex"):
        induced_subgraph(z6, [7])


def test_twin_partition_equitable():
    rng = random.Random(21)
    for _ in range(30):
        g = random_graph(rng, rng.randint(1, 14), rng.random())
        tp = twin_partition(g)
        assert sorted(v for cls in tp.classes for v in cls) == list(range(g.n))
        for i, cls in enumerate(tp.classes):
            for u in cls:
                row = g.rows[u]
                for j, other in enumerate(tp.classes):
                    expected = tp.counts[i][j]
                    actual = sum(1 for v in other if (row >> v) & 1)
                    assert actual == expected


def test_vertex_connectivity_examples():
    assert vertex_connectivity(Graph.complete(4)).size == 3
    assert vertex_connectivity(power_graph(cyclic_group(4))).size == 3
    assert vertex_connectivity(Graph(0, ())).size == 0
    assert vertex_connectivity(Graph(1, (0,))).size == 0
    assert vertex_connectivity(Graph.from_edges(4, [(0, 1), (2, 3)])).size == 0

    z33 = power_graph(direct_product(cyclic_group(3), cyclic_group(3)))
    cut = vertex_connectivity(z33)
    assert cut.size == 1
    assert cut.separating_set == (0,)  # the identity is the only cut vertex

    for n in range(2, 9):
        g = power_graph(dicyclic_group(n))
        cut = vertex_connectivity(g)
        assert cut.size == 2
        # the canonical witness {e, a^n} separates too
        rest = induced_subgraph(g, [v for v in range(4 * n) if v not in (0, n)])
        assert len(components(rest)) > 1


def test_witness_is_separating(small_groups):
    for g in small_groups:
        pg = power_graph(g)
        cut = vertex_connectivity(pg)
        assert len(cut.separating_set) == cut.size
        if cut.size and cut.size < pg.n - 1:
            rest = induced_subgraph(
                pg, [v for v in range(pg.n) if v not in cut.separating_set]
            )
            assert len(components(rest)) > 1


def test_vertex_connectivity_matches_exhaustive():
    rng = random.Random(12345)
    cases = [Graph.complete(5), Graph(3, (0, 0, 0)), Graph.from_edges(1, [])]
    for _ in range(60):
        n = rng.randint(2, 10)
        cases.append(random_graph(rng, n, rng.choice([0.15, 0.3, 0.5, 0.8])))
    cases += [
        power_graph(cyclic_group(n)) for n in range(2, 13)
    ]
    cases.append(power_graph(dicyclic_group(2)))
    cases.append(power_graph(direct_product(cyclic_group(3), cyclic_group(3))))
    for g in cases:
        flow = vertex_connectivity(g)
        brute = vertex_connectivity_exhaustive(g)
        assert flow.size == brute.size, g


def test_proper_connected_iff_cyclic_or_quaternion(small_pgroups):
    from powerlap.verify import is_cyclic, is_generalized_quaternion

    for g in small_pgroups:
        connected = len(components(proper_power_graph(g))) == 1
        assert connected == (is_cyclic(g) or is_generalized_quaternion(g)), g.label


def test_dicyclic_outside_vertex_pattern():
    # vertices outside <a> are adjacent to exactly the identity, the
    # involution a^n and their partner a^(n+i) b
    for n in (2, 3, 4, 6):
        g = power_graph(dicyclic_group(n))
        universal = g.degree(n) == 4 * n - 1
        assert universal == (n & (n - 1) == 0)
        for i in range(2 * n):
            v = 2 * n + i
            partner = 2 * n + (i + n) % (2 * n)
            assert sorted(g.neighbors(v)) == sorted([0, n, partner])


def test_exports():
    g = Graph.from_edges(3, [(0, 1), (1, 2)], labels=["a", "b", "c"])
    text = g.to_edge_list_text()
    assert text.splitlines()[0] == "3 2"
    assert "0 1" in text and "1 2" in text
    doc = json.loads(g.to_json())
    assert doc == {"n": 3, "edges": [[0, 1], [1, 2]], "labels": ["a", "b", "c"]}
