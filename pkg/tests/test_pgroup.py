import pytest

from powerlap.graphs import components, power_graph, proper_power_graph
from powerlap.groups import (
    cyclic_group,
    direct_product,
    euler_phi,
    generalized_quaternion,
    up_set,
)
from powerlap.pgroup import (
    CliqueLeaf,
    JoinNode,
    check_multiple_property,
    classify_eigenvalues,
    decompose,
    tree_charpoly,
    tree_graph,
    tree_json_dict,
    tree_string,
    tree_vertex_count,
)
from powerlap.spectra import FactoredCharPoly, spectrum


def poly(counts):
    return FactoredCharPoly.from_counts(counts)


def z9z3():
    return direct_product(cyclic_group(9), cyclic_group(3))


def test_decompose_strings():
    assert tree_string(decompose(z9z3())) == "K1 v ((K2 v 3*K6) + 3*K2)"
    z33 = direct_product(cyclic_group(3), cyclic_group(3))
    assert tree_string(decompose(z33)) == "K1 v 4*K2"
    assert tree_string(decompose(cyclic_group(9))) == "K1 v (K2 v K6)"
    assert tree_string(decompose(cyclic_group(8))) == "K1 v (K1 v (K2 v K4))"


def test_decompose_rejects_non_pgroups():
    with pytest.raises(ValueError, match="not a p-group"):
        decompose(cyclic_group(6))


def test_tree_annotations(small_pgroups):
    def walk(g, t):
        assert t.apex_size if isinstance(t, JoinNode) else t.size
        assert tree_vertex_count(t) == t.upset_size == len(up_set(g, t.element))
        apex = t.apex_size if isinstance(t, JoinNode) else t.size
        assert apex == euler_phi(t.element_order)
        if isinstance(t, JoinNode):
            for c in t.children:
                walk(g, c)

    for g in small_pgroups:
        t = decompose(g)
        assert tree_vertex_count(t) == g.order
        walk(g, t)


def test_tree_graph():
    k4 = tree_graph(CliqueLeaf(4, 0, 1, 4))
    assert k4.n == 4 and k4.edge_count() == 6
    star = tree_graph(
        JoinNode(1, (CliqueLeaf(2, 0, 1, 2), CliqueLeaf(2, 0, 1, 2)), 0, 1, 5)
    )
    assert star.n == 5
    assert star.degree(0) == 4
    assert sorted(star.degree(v) for v in range(5)) == [2, 2, 2, 2, 4]


def test_tree_graph_matches_power_graph(small_pgroups):
    for g in small_pgroups:
        if g.order > 81:
            continue
        pg = power_graph(g)
        tg = tree_graph(decompose(g))
        assert tg.n == pg.n
        assert sorted(tg.degree(v) for v in range(tg.n)) == sorted(
            pg.degree(v) for v in range(pg.n)
        )
        assert spectrum(tg).exact == spectrum(pg).exact


def test_tree_charpoly_examples():
    g = z9z3()
    t = decompose(g)
    assert tree_charpoly(t) == poly({0: 1, 1: 3, 3: 5, 9: 15, 21: 2, 27: 1})
    # the large child is the induced subgraph over U((3, 0))
    big = t.children[0]
    assert tree_vertex_count(big) == 20
    assert tree_charpoly(big) == poly({0: 1, 2: 2, 8: 15, 20: 2})
    z33 = direct_product(cyclic_group(3), cyclic_group(3))
    assert tree_charpoly(decompose(z33)) == poly({0: 1, 1: 3, 3: 4, 9: 1})


def test_tree_charpoly_matches_direct_spectrum(small_pgroups):
    for g in small_pgroups:
        s = spectrum(power_graph(g))
        assert s.is_exact
        assert tree_charpoly(decompose(g)) == s.exact, g.label


def test_tree_json_shape():
    doc = tree_json_dict(decompose(cyclic_group(4)))
    assert doc["join"]["apex"] == 1
    assert doc["order"] == 1 and doc["u_size"] == 4
    child = doc["join"]["children"][0]
    assert child == {"clique": 1, "element": 2, "order": 2, "u_size": 4} or "join" in child


def test_classify_eigenvalues():
    g = z9z3()
    s = spectrum(power_graph(g))
    forms = {f.value: f for f in classify_eigenvalues(g, s)}
    assert forms[0].form == "zero"
    assert forms[9].form == "order_of"
    assert g.order_of(forms[9].witness) == 9
    f21 = forms[21]
    assert f21.form == "uhat_plus_order"
    w = f21.witness
    from powerlap.groups import hat_up_set

    assert len(hat_up_set(g, w)) + g.order_of(w) == 21
    with pytest.raises(ValueError):
        classify_eigenvalues(cyclic_group(6), spectrum(power_graph(cyclic_group(6))))


def test_classification_covers_catalog(small_pgroups):
    for g in small_pgroups:
        s = spectrum(power_graph(g))
        forms = classify_eigenvalues(g, s)
        assert len(forms) == len(s.exact.factors)
        for f in forms:
            if f.form == "zero":
                assert f.value == 0
            elif f.form == "order_of":
                assert g.order_of(f.witness) == f.value


def test_multiple_property(small_pgroups):
    for g in small_pgroups:
        s = spectrum(power_graph(g))
        report = check_multiple_property(g, s)
        assert report.ok, (g.label, report.violations)
        p = report.prime
        for value, _ in s.exact.factors:
            assert value in (0, 1) or value % p == 0


def test_multiple_property_hand_example():
    g = z9z3()
    from powerlap.groups import hat_up_set

    combined = len(hat_up_set(g, 9)) + g.order_of(9)
    assert combined == 21 and combined % 3 == 0


def test_component_of_prime_order_element_is_upset(small_pgroups):
    # identity is always index 0, so proper-graph vertex i is element i+1
    for g in small_pgroups:
        if g.order > 81:
            continue
        p = None
        from powerlap.groups import is_p_group

        p = is_p_group(g)
        proper = proper_power_graph(g)
        comps = components(proper)
        by_vertex = {}
        for comp in comps:
            for v in comp:
                by_vertex[v] = comp
        for x in range(g.order):
            if g.order_of(x) != p:
                continue
            comp_elements = {v + 1 for v in by_vertex[x - 1]}
            assert comp_elements == set(up_set(g, x)), (g.label, x)


def test_primitive_subtrees_disjoint_and_nonadjacent(small_pgroups):
    from powerlap.groups import primitive_classes

    for g in small_pgroups:
        if g.order > 81:
            continue
        pg = power_graph(g)
        for x in range(g.order):
            reps = primitive_classes(g, x)
            sets = [up_set(g, h) for h in reps]
            for i in range(len(sets)):
                for j in range(i + 1, len(sets)):
                    assert not (sets[i] & sets[j])
                    for u in sets[i]:
                        for v in sets[j]:
                            assert not pg.adjacent(u, v)


def test_mixed_quaternion_cyclic_product():
    # the recursion has no special casing for non-abelian 2-groups
    g = direct_product(generalized_quaternion(2), cyclic_group(2))
    s = spectrum(power_graph(g))
    assert s.is_exact
    assert tree_charpoly(decompose(g)) == s.exact
