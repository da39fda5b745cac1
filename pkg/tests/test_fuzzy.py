"""Fuzzy sets, preorders, powersets and closure spaces over divisible
quantales.

The closed quantale formulas are cross-checked (inside the library, by
assertion) against the generic enriched constructions; the tests here
freeze small hand-computed values and exercise both passing and
failing instances.
"""

import itertools

import pytest

from qcls.algebra import build_dq, builtin_quantale
from qcls.category import TypedSet, discrete_category
from qcls.closure import from_closed_system
from qcls.fuzzy import (builtin_suite, check_powerset_formulas, eq_hom,
                        fuzzy_closure_report, fuzzy_powerset, fuzzy_set,
                        fuzzy_specialization, potential_subsets,
                        validate_pofs)
from qcls.presheaf import Presheaf, presheaf_category, presheaf_hom

L3 = builtin_quantale("lukasiewicz3")
DQ3 = build_dq(L3)


def test_fuzzy_set_types_are_memberships():
    ts = fuzzy_set(DQ3, {"x": "1", "y": "1/2"})
    assert ts.t("x") == "1" and ts.t("y") == "1/2"


def test_fuzzy_set_rejects_unknown_degree():
    from qcls.algebra import ConstructionError
    with pytest.raises(ConstructionError):
        fuzzy_set(DQ3, {"x": "2/3"})


def test_preordered_fuzzy_set_validation():
    membership = {"x": "1", "y": "1/2"}
    alpha = {("x", "x"): "1", ("y", "y"): "1/2",
             ("x", "y"): "1/2", ("y", "x"): "0"}
    chk = validate_pofs(L3, DQ3, membership, alpha)
    assert chk.report.ok
    assert not chk.is_global  # y has membership below the top
    # breaking reflexivity is caught
    bad = dict(alpha)
    bad["y", "y"] = "0"
    assert not validate_pofs(L3, DQ3, membership, bad).report.ok
    # exceeding the membership bound is caught
    bad = dict(alpha)
    bad["y", "x"] = "1"
    assert not validate_pofs(L3, DQ3, membership, bad).report.ok


def test_global_fuzzy_preorder():
    membership = {"x": "1", "y": "1"}
    alpha = {("x", "x"): "1", ("y", "y"): "1",
             ("x", "y"): "1/2", ("y", "x"): "0"}
    chk = validate_pofs(L3, DQ3, membership, alpha)
    assert chk.report.ok and chk.is_global


def test_potential_subsets_of_half_singleton():
    # one point of membership 1/2: five potential subsets
    subs = potential_subsets(L3, {"h": "1/2"})
    assert len(subs) == 5
    assert set(subs) == {Presheaf("0", ("0",)),
                         Presheaf("1/2", ("0",)), Presheaf("1/2", ("1/2",)),
                         Presheaf("1", ("0",)), Presheaf("1", ("1/2",))}


def test_potential_subset_bound():
    # n x <= m x meet q for every point
    for membership in [{"x": "1", "y": "1/2"}, {"x": "0"}]:
        for mu in potential_subsets(L3, membership):
            for i, x in enumerate(membership):
                lat = L3.lattice
                assert lat.leq(mu.values[i],
                               lat.meet((membership[x], mu.ptype)))


def test_hom_formula_matches_generic():
    membership = {"x": "1", "y": "1/2"}
    assert check_powerset_formulas(L3, DQ3, membership).ok
    # spot value: the generic hom equals the closed formula
    ts = fuzzy_set(DQ3, membership)
    X0 = discrete_category(DQ3, ts)
    mu = Presheaf("1", ("1/2", "0"))
    nu = Presheaf("1/2", ("1/2", "1/2"))
    assert presheaf_hom(X0, mu, nu) == eq_hom(L3, membership, mu, nu)


def test_fuzzy_powerset_is_presheaf_category():
    ts = fuzzy_set(DQ3, {"h": "1/2"})
    P = fuzzy_powerset(DQ3, ts)
    assert len(P.elements) == 5


def test_fuzzy_closure_and_specialization():
    ts = fuzzy_set(DQ3, {"h": "1/2"})
    X0 = discrete_category(DQ3, ts)
    PX = presheaf_category(X0)
    for gen in PX.elements:
        S = from_closed_system(X0, [gen], PX=PX)
        assert fuzzy_closure_report(L3, S).ok
        spec = fuzzy_specialization(L3, S)
        assert spec.h("h", "h") == "1/2"


def test_builtin_suite_green():
    reports = builtin_suite(builtin_quantale("godel3"), "godel3",
                            max_points=1)
    assert reports and all(r.ok for r in reports)


def test_builtin_suite_rejects_nondivisible():
    reports = builtin_suite(builtin_quantale("drastic4"), "drastic4")
    assert len(reports) == 1 and not reports[0].ok
