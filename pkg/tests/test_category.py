"""Typed sets, relations, categories, functors and distributors.

Relation composition over the two-element quantale is checked against
plain boolean matrix multiplication, and the implication operations
against their adjointness property by brute force.
"""

import itertools

import pytest

from qcls.algebra import ConstructionError, builtin_quantale
from qcls.category import (QCategory, QFunctor, QRelation, TypedSet,
                           bimodule_closure, check_adjunction, check_functor,
                           compose_functors, discrete_category, graph_cograph,
                           is_distributor, rel_compose, rel_identity,
                           rel_join, rel_limpl, rel_meet, rel_rimpl,
                           transitive_reflexive_hom, typed_over_quantale,
                           underlying_preorder, validate_category)

TWO = builtin_quantale("2")


def _bool_rel(dom, cod, pairs):
    return QRelation.from_partial(
        TWO, dom, cod, {(x, y): "1" for x, y in pairs})


def test_relation_composition_is_boolean_matrix_product():
    A = typed_over_quantale(["a1", "a2"])
    B = typed_over_quantale(["b1", "b2", "b3"])
    C = typed_over_quantale(["c1", "c2"])
    phi = _bool_rel(A, B, [("a1", "b1"), ("a1", "b2"), ("a2", "b3")])
    psi = _bool_rel(B, C, [("b2", "c1"), ("b3", "c2")])
    got = rel_compose(psi, phi)
    for x in A:
        for z in C:
            want = any(phi.value(x, y) == "1" and psi.value(y, z) == "1"
                       for y in B)
            assert (got.value(x, z) == "1") == want


def test_identity_is_neutral():
    A = typed_over_quantale(["a1", "a2"])
    B = typed_over_quantale(["b1", "b2"])
    phi = _bool_rel(A, B, [("a1", "b2"), ("a2", "b1")])
    assert rel_compose(phi, rel_identity(TWO, A)) == phi
    assert rel_compose(rel_identity(TWO, B), phi) == phi


def _all_relations(Q, dom, cod):
    lats = [Q.homset(dom.t(x), cod.t(y)).elements
            for x in dom for y in cod]
    keys = [(x, y) for x in dom for y in cod]
    for values in itertools.product(*lats):
        yield QRelation(Q, dom, cod, dict(zip(keys, values)))


def test_implications_are_adjoint_to_composition():
    G3 = builtin_quantale("godel3")
    A = typed_over_quantale(["a"])
    B = typed_over_quantale(["b1", "b2"])
    C = typed_over_quantale(["c"])
    for phi in _all_relations(G3, A, B):
        for psi in _all_relations(G3, B, C):
            for xi in _all_relations(G3, A, C):
                lhs = rel_compose(psi, phi).leq(xi)
                assert lhs == psi.leq(rel_limpl(xi, phi))
                assert lhs == phi.leq(rel_rimpl(psi, xi))


def test_join_meet_are_pointwise():
    A = typed_over_quantale(["a"])
    B = typed_over_quantale(["b"])
    L3 = builtin_quantale("lukasiewicz3")
    r1 = QRelation(L3, A, B, {("a", "b"): "1/2"})
    r2 = QRelation(L3, A, B, {("a", "b"): "1"})
    assert rel_join([r1, r2]).value("a", "b") == "1"
    assert rel_meet([r1, r2]).value("a", "b") == "1/2"
    assert rel_meet([], Q=L3, dom=A, cod=B).value("a", "b") == "1"


def test_total_relation_required():
    A = typed_over_quantale(["a"])
    B = typed_over_quantale(["b"])
    with pytest.raises(ConstructionError):
        QRelation(TWO, A, B, {})


def test_category_validation_and_preorder():
    carrier = typed_over_quantale(["x", "y"])
    hom = QRelation.from_partial(
        TWO, carrier, carrier,
        {("x", "x"): "1", ("y", "y"): "1", ("x", "y"): "1"})
    X = QCategory(TWO, carrier, hom)
    assert validate_category(X).ok
    pairs, separated = underlying_preorder(X)
    assert set(pairs) == {("x", "x"), ("y", "y"), ("x", "y")}
    assert separated
    # making it symmetric breaks separatedness but not the laws
    sym = QCategory(TWO, carrier, QRelation.from_partial(
        TWO, carrier, carrier,
        {("x", "x"): "1", ("y", "y"): "1",
         ("x", "y"): "1", ("y", "x"): "1"}))
    assert validate_category(sym).ok
    assert not underlying_preorder(sym)[1]


def test_nonreflexive_hom_rejected():
    carrier = typed_over_quantale(["x"])
    hom = QRelation.from_partial(TWO, carrier, carrier, {})
    X = QCategory(TWO, carrier, hom)
    rep = validate_category(X)
    assert not rep.ok
    assert any("reflex" in v.lower() or "identity" in v.lower()
               for v in rep.violations)


def test_transitive_reflexive_hom_saturates():
    carrier = typed_over_quantale(["x", "y", "z"])
    X = transitive_reflexive_hom(
        TWO, carrier, {("x", "y"): "1", ("y", "z"): "1"})
    assert validate_category(X).ok
    assert X.h("x", "z") == "1"  # transitivity fills the composite


def test_discrete_category():
    DQ = __import__("qcls.algebra", fromlist=["build_dq"]).build_dq(
        builtin_quantale("lukasiewicz3"))
    ts = TypedSet(["h"], {"h": "1/2"})
    X = discrete_category(DQ, ts)
    assert validate_category(X).ok
    assert X.h("h", "h") == "1/2"


def _chain_cat(names):
    carrier = typed_over_quantale(list(names))
    entries = {(x, y): "1"
               for i, x in enumerate(names) for y in names[i:]}
    return QCategory(TWO, carrier, QRelation.from_partial(
        TWO, carrier, carrier, entries))


def test_functor_checks():
    X = _chain_cat("xy")
    Y = _chain_cat("abc")
    f = QFunctor(X, Y, {"x": "a", "y": "c"})
    chk = check_functor(f)
    assert chk.is_functor and chk.fully_faithful
    # collapsing both points onto one is a functor but not fully faithful
    const = QFunctor(X, Y, {"x": "a", "y": "a"})
    chk = check_functor(const)
    assert chk.is_functor and not chk.fully_faithful
    ident = QFunctor(X, X, {"x": "x", "y": "y"})
    assert check_functor(ident).fully_faithful
    g = QFunctor(Y, X, {"a": "x", "b": "y", "c": "y"})
    assert check_functor(compose_functors(g, f)).is_functor
    # order-reversing map is not a functor
    bad = QFunctor(X, Y, {"x": "c", "y": "a"})
    assert not check_functor(bad).is_functor


def test_adjunction_between_chains():
    X = _chain_cat("xy")
    Y = _chain_cat("ab")
    f = QFunctor(X, Y, {"x": "a", "y": "b"})
    g = QFunctor(Y, X, {"a": "x", "b": "y"})
    assert check_adjunction(f, g)
    # a non-adjoint pair: both constant at opposite ends
    h = QFunctor(X, Y, {"x": "b", "y": "b"})
    k = QFunctor(Y, X, {"a": "x", "b": "x"})
    assert not check_adjunction(h, k)


def test_graph_cograph_are_distributors():
    X = _chain_cat("xy")
    Y = _chain_cat("abc")
    f = QFunctor(X, Y, {"x": "a", "y": "b"})
    graph, cograph = graph_cograph(f)
    assert is_distributor(X, Y, graph)
    assert is_distributor(Y, X, cograph)
    assert graph.value("x", "b") == "1"   # Y(fx, b) with fx = a <= b
    assert cograph.value("b", "x") == "0"  # Y(b, fx) with a < b


def test_bimodule_closure_fixes_distributors():
    X = _chain_cat("xy")
    Y = _chain_cat("ab")
    raw = _bool_rel(X.carrier, Y.carrier, [("y", "a")])
    phi = bimodule_closure(X, Y, raw)
    assert is_distributor(X, Y, phi)
    assert phi.value("x", "b") == "1"  # x <= y, phi(y,a), a <= b
    assert bimodule_closure(X, Y, phi) == phi
