"""Presheaf categories, Yoneda, Kan adjoints and completeness.

Over the two-element quantale a presheaf is a lower set: the presheaf
enumeration is checked against a direct lower-set oracle, the Yoneda
embedding against hand-computed representables, and the Kan adjoints
against their unit/counit inequalities.
"""

import itertools

from qcls.algebra import Arrow, build_dq, builtin_quantale
from qcls.category import (QCategory, QFunctor, QRelation, TypedSet,
                           bimodule_closure, check_adjunction,
                           discrete_category, typed_over_quantale)
from qcls.presheaf import (Presheaf, completeness_tools, copresheaf_category,
                           dist_to_functor, enumerate_presheaves,
                           functor_to_dist, image_functors, kan_adjoints,
                           presheaf_category, presheaf_count, psh_leq,
                           copsh_leq, yoneda, yoneda_pair)

TWO = builtin_quantale("2")


def _poset_cat(names, pairs):
    carrier = typed_over_quantale(list(names))
    from qcls.algebra import reflexive_transitive_closure
    closed = reflexive_transitive_closure(list(names), pairs)
    return QCategory(TWO, carrier, QRelation.from_partial(
        TWO, carrier, carrier, {p: "1" for p in closed}))


def _lower_sets(names, pairs):
    """Oracle: lower sets of the preorder generated by pairs."""
    from qcls.algebra import reflexive_transitive_closure
    closed = reflexive_transitive_closure(list(names), pairs)
    out = set()
    for bits in itertools.product("01", repeat=len(names)):
        sel = {x for x, b in zip(names, bits) if b == "1"}
        if all(a in sel for (a, b) in closed if b in sel):
            out.add(frozenset(sel))
    return out


def test_presheaves_over_two_are_lower_sets():
    for names, pairs in [("xy", [("x", "y")]),
                         ("xy", []),
                         ("xyz", [("x", "y"), ("y", "z")]),
                         ("xyz", [("x", "z"), ("y", "z")])]:
        X = _poset_cat(names, pairs)
        mus = enumerate_presheaves(X)
        got = {frozenset(x for x, v in zip(names, mu.values) if v == "1")
               for mu in mus}
        assert got == _lower_sets(names, pairs)
        assert len(mus) == len(got)


def test_presheaf_count_bound():
    X = _poset_cat("xyz", [])
    assert presheaf_count(X) == 8


def test_singleton_presheaves_over_dl3():
    # one element of membership degree 1/2: exactly five presheaves
    DQ = build_dq(builtin_quantale("lukasiewicz3"))
    X = discrete_category(DQ, TypedSet(["h"], {"h": "1/2"}))
    mus = enumerate_presheaves(X)
    assert len(mus) == 5
    assert set(mus) == {Presheaf("0", ("0",)),
                        Presheaf("1/2", ("0",)), Presheaf("1/2", ("1/2",)),
                        Presheaf("1", ("0",)), Presheaf("1", ("1/2",))}


def test_presheaf_order_is_pointwise_and_copresheaf_reversed():
    X = _poset_cat("xy", [("x", "y")])
    lo = Presheaf("*", ("0", "0"))
    hi = Presheaf("*", ("1", "1"))
    assert psh_leq(X, lo, hi) and not psh_leq(X, hi, lo)
    assert copsh_leq(X, lo, hi) and not copsh_leq(X, hi, lo)
    # the categorical order on copresheaves reverses the pointwise one
    PdX = copresheaf_category(X)
    assert PdX.h(hi, lo) == "1" and PdX.h(lo, hi) == "0"


def test_yoneda_embedding():
    X = _poset_cat("xyz", [("x", "y"), ("y", "z")])
    assert yoneda(X, "y") == Presheaf("*", ("1", "1", "0"))
    PX = presheaf_category(X)
    PdX = copresheaf_category(X)
    pair = yoneda_pair(X, PX, PdX)
    assert pair.report.ok
    # the embedding picks out the principal lower sets
    assert pair.to_presheaves("z") == Presheaf("*", ("1", "1", "1"))


def test_kan_adjunction_units_and_counits():
    X = _poset_cat("xy", [("x", "y")])
    Y = _poset_cat("ab", [])
    raw = QRelation.from_partial(TWO, X.carrier, Y.carrier, {("y", "a"): "1"})
    phi = bimodule_closure(X, Y, raw)
    kan = kan_adjoints(phi)
    # star (composition with phi) is left adjoint to lower (implication
    # by phi): unit lam <= lower(star lam), counit star(lower mu) <= mu
    for lam in enumerate_presheaves(Y):
        assert psh_leq(Y, lam, kan.lower(kan.star(lam)))
    for mu in enumerate_presheaves(X):
        assert psh_leq(X, kan.star(kan.lower(mu)), mu)


def test_kan_dual_adjunction():
    X = _poset_cat("xy", [("x", "y")])
    Y = _poset_cat("ab", [("a", "b")])
    raw = QRelation.from_partial(TWO, X.carrier, Y.carrier, {("x", "b"): "1"})
    phi = bimodule_closure(X, Y, raw)
    kan = kan_adjoints(phi)
    from qcls.presheaf import enumerate_copresheaves
    # dag_lower -| dag; in the reversed categorical order of
    # copresheaves the pointwise unit/counit inequalities flip
    for mu in enumerate_copresheaves(X):
        assert copsh_leq(X, mu, kan.dag_lower(kan.dag(mu)))
    for lam in enumerate_copresheaves(Y):
        assert copsh_leq(Y, kan.dag(kan.dag_lower(lam)), lam)


def test_image_functors_adjunctions():
    X = _poset_cat("xy", [("x", "y")])
    Y = _poset_cat("abc", [("a", "b"), ("b", "c")])
    f = QFunctor(X, Y, {"x": "a", "y": "b"})
    im = image_functors(f)
    PX, PY = presheaf_category(X), presheaf_category(Y)
    fwd = QFunctor(PX, PY, {mu: im.fwd(mu) for mu in PX.elements})
    bwd = QFunctor(PY, PX, {lam: im.bwd(lam) for lam in PY.elements})
    assert check_adjunction(fwd, bwd)
    # direct image of the principal lower set of y is that of f y
    assert im.fwd(yoneda(X, "y")) == yoneda(Y, "b")


def test_completeness_of_presheaf_category():
    X = _poset_cat("xy", [("x", "y")])
    PX = presheaf_category(X)
    tools = completeness_tools(PX)
    assert tools.is_complete()
    # sup of a representable-shaped presheaf of presheaves: the join
    top = Presheaf("*", ("1", "1"))
    Phi = Presheaf("*", tuple("1" if psh_leq(X, mu, top) else "0"
                              for mu in PX.elements))
    assert tools.sup(Phi) == top


def test_incomplete_category_detected():
    # two incomparable points with no top: not order-complete
    X = _poset_cat("xy", [])
    tools = completeness_tools(X)
    assert not tools.is_complete()
    assert not tools.is_order_complete()


def test_tensor_cotensor_in_chain():
    X = _poset_cat("xyz", [("x", "y"), ("y", "z")])
    tools = completeness_tools(X)
    assert tools.tensor(Arrow("*", "*", "1"), "y") == "y"
    assert tools.tensor(Arrow("*", "*", "0"), "y") == "x"  # bottom tensor
    assert tools.cotensor(Arrow("*", "*", "0"), "y") == "z"  # top cotensor
    assert tools.is_complete()


def test_distributor_functor_transposes_are_inverse():
    X = _poset_cat("xy", [("x", "y")])
    Y = _poset_cat("ab", [("a", "b")])
    raw = QRelation.from_partial(TWO, X.carrier, Y.carrier, {("x", "a"): "1"})
    phi = bimodule_closure(X, Y, raw)
    PX = presheaf_category(X)
    f = dist_to_functor(phi, X, Y, PX)
    assert functor_to_dist(f) == phi
