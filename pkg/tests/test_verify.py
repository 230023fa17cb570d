import json

import pytest

from powerlap.groups import (
    cyclic_group,
    dicyclic_group,
    direct_product,
    generalized_quaternion,
)
from powerlap.spectra import FactoredCharPoly
from powerlap.verify import (
    check_cyclic_algcon,
    check_cyclic_kappa_eq_mu,
    check_cyclic_radius_mult,
    check_dicyclic_bundle,
    check_pgroup_bundle,
    is_generalized_quaternion,
    pgroup_catalog,
    quaternion_closed_form,
    run_cyclic_suite,
    scan_conjecture,
)


def test_cyclic_algcon_examples():
    r = check_cyclic_algcon(15)
    assert r.passed and r.evidence["algebraic_connectivity"] == 9
    r = check_cyclic_algcon(12)
    assert r.passed and r.evidence["attains_bound"] is False
    r = check_cyclic_algcon(7)
    assert r.passed and r.evidence["algebraic_connectivity"] == 7


def test_cyclic_radius_examples():
    r = check_cyclic_radius_mult(4)
    assert r.passed and r.evidence["radius_multiplicity"] == 3
    r = check_cyclic_radius_mult(8)
    assert r.passed and r.evidence["radius_multiplicity"] == 7
    r = check_cyclic_radius_mult(12)
    assert r.passed and r.evidence["radius_multiplicity"] == 5
    assert r.evidence["block_structure"] is True


def test_cyclic_kappa_examples():
    r = check_cyclic_kappa_eq_mu(6)
    assert r.passed and r.evidence["kappa"] == 3 and r.evidence["equal"]
    r = check_cyclic_kappa_eq_mu(9)
    assert r.passed and r.evidence["kappa"] == 8
    assert r.evidence["algebraic_connectivity"] == 9
    r = check_cyclic_kappa_eq_mu(12)
    assert r.passed and not r.evidence["equal"]


def test_cyclic_suite_small_range():
    reports = run_cyclic_suite(40)
    assert all(r.passed for r in reports)
    assert len(reports) == 3 * 39


def test_dicyclic_bundle():
    for n, expect_true in ((2, True), (3, False), (4, True), (6, False)):
        r = check_dicyclic_bundle(n)
        assert r.passed, r.witness
        statements = r.evidence["statements"]
        assert all(v == expect_true for v in statements.values())
        assert r.evidence["kappa"] == 2
    r = check_dicyclic_bundle(4)
    assert r.evidence["radius_multiplicity"] == 2
    r = check_dicyclic_bundle(3)
    assert r.evidence["radius_multiplicity"] == 1


def test_quaternion_closed_form_merges_alpha_two():
    assert quaternion_closed_form(2) == FactoredCharPoly.from_counts(
        {0: 1, 2: 2, 4: 3, 8: 2}
    )
    assert quaternion_closed_form(4) == FactoredCharPoly.from_counts(
        {0: 1, 2: 8, 4: 8, 16: 13, 32: 2}
    )


def test_pgroup_bundle():
    for g in (
        cyclic_group(8),
        direct_product(cyclic_group(3), cyclic_group(3)),
        generalized_quaternion(2),
        direct_product(cyclic_group(4), cyclic_group(2)),
    ):
        r = check_pgroup_bundle(g)
        assert r.passed, r.witness
    r = check_pgroup_bundle(cyclic_group(8))
    assert r.evidence["kappa"] == 7 and r.evidence["algebraic_connectivity"] == 8
    r = check_pgroup_bundle(generalized_quaternion(2))
    assert r.evidence["kappa"] == 2 == r.evidence["algebraic_connectivity"]
    assert r.evidence["laplacian_integral"]
    r = check_pgroup_bundle(cyclic_group(6))
    assert r.verdict == "inapplicable"


def test_is_generalized_quaternion():
    assert is_generalized_quaternion(generalized_quaternion(2))
    assert is_generalized_quaternion(generalized_quaternion(3))
    assert is_generalized_quaternion(dicyclic_group(4))  # Q_4 has order 16
    assert not is_generalized_quaternion(cyclic_group(8))
    assert not is_generalized_quaternion(direct_product(cyclic_group(4), cyclic_group(2)))
    assert not is_generalized_quaternion(dicyclic_group(3))
    assert not is_generalized_quaternion(cyclic_group(6))


def test_scan_conjecture():
    rows, summary = scan_conjecture(40)
    assert summary["holds_strict"] and summary["holds_loose"]
    assert len(rows) == 39
    by_n = {r.n: r for r in rows}
    assert by_n[6].algcon_integer and by_n[6].laplacian_integral and by_n[6].predicate_strict
    assert by_n[8].predicate_strict
    r12 = by_n[12]
    assert not r12.predicate_strict
    assert not r12.algcon_integer and not r12.laplacian_integral
    for r in rows:
        if r.laplacian_integral:
            assert r.algcon_integer
        # the two readings coincide: p*p is already a prime power
        assert r.predicate_strict == r.predicate_loose
    with pytest.raises(ValueError):
        scan_conjecture(1)


def test_pgroup_catalog():
    cat = pgroup_catalog(16)
    labels = {g.label for g in cat}
    assert "Z16" in labels and "GQ8" in labels and "GQ16" in labels
    assert "Z2xZ2xZ2xZ2" in labels and "Z4xZ4" in labels
    assert all(g.order <= 16 for g in cat)
    # deterministic ordering
    again = pgroup_catalog(16)
    assert [g.label for g in again] == [g.label for g in cat]


def test_report_json_deterministic():
    a = check_cyclic_algcon(10).to_json()
    b = check_cyclic_algcon(10).to_json()
    assert a == b
    doc = json.loads(a)
    assert set(doc) == {"claim", "params", "verdict", "witness", "evidence"}


def test_conjecture_row_serialization():
    rows, _ = scan_conjecture(6)
    assert rows[0].to_tsv() == "2\ttrue\ttrue\ttrue\ttrue"
    doc = rows[0].to_json_dict()
    assert doc["n"] == 2 and doc["algcon_integer"] is True
