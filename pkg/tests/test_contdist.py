"""Continuous and closed distributors, the quotient by closure, and
the correspondence with sup-preserving maps between closed-set
lattices.

Over the two-element quantale the objects are classical closure
spaces, so counts and correspondences are checked against small frozen
values computed from the set-theoretic picture.
"""

import itertools

from qcls.algebra import builtin_quantale
from qcls.category import (QCategory, QFunctor, QRelation, bimodule_closure,
                           rel_compose, typed_over_quantale)
from qcls.closure import (closed_category, discrete_space, from_closed_system,
                          functor_D)
from qcls.contdist import (check_continuous_dist, closure_of_columns, column,
                           dist_adjoints, dist_closure,
                           enumerate_closed_continuous,
                           enumerate_distributors, enumerate_sup_maps,
                           equivalence_check_pair, final_structure, icl_embed,
                           is_sup_preserving, lattice_duality_check,
                           quotient_compose, quotient_identity, quotient_join,
                           realize_sup_map)
from qcls.presheaf import (Presheaf, completeness_tools, presheaf_category,
                           psh_leq)

TWO = builtin_quantale("2")


def _disc(names):
    from qcls.category import discrete_category
    return discrete_category(TWO, typed_over_quantale(list(names)))


def _as_psh(names, subset):
    return Presheaf("*", tuple("1" if x in subset else "0" for x in names))


def _sier():
    """Two points with closed sets {y} and {x, y}."""
    X = _disc("xy")
    return from_closed_system(X, [_as_psh("xy", {"y"})])


def test_distributor_enumeration_on_discrete_bases():
    X = _disc("xy")
    # on discrete one-object-type bases every relation is a distributor
    assert len(enumerate_distributors(X, X)) == 16


def test_continuity_of_distributors():
    S = _sier()
    T = discrete_space(S.base)
    X = S.base
    # the hom distributor of the base is continuous from S to itself
    assert check_continuous_dist(X.hom, S, S)
    into_disc = [z for z in enumerate_distributors(X, X)
                 if check_continuous_dist(z, S, T)]
    into_self = [z for z in enumerate_distributors(X, X)
                 if check_continuous_dist(z, S, S)]
    # a discrete target closure makes the continuity condition trivial
    assert len(into_disc) == len(enumerate_distributors(X, X))
    assert len(into_self) <= len(into_disc)


def test_dist_closure_and_columns():
    S = _sier()
    X = S.base
    zeta = QRelation.from_partial(TWO, X.carrier, X.carrier,
                                  {("x", "x"): "1"})
    zeta = bimodule_closure(X, X, zeta)
    closed, was_closed = closure_of_columns(zeta, S)
    # closing the column {x} at each output adds y (c{x} = {x,y})
    assert not was_closed
    assert column(closed, "x") == _as_psh("xy", {"x", "y"})
    # closing twice is idempotent
    again, stable = closure_of_columns(closed, S)
    assert stable and again == closed


def test_quotient_operations():
    S = _sier()
    e = quotient_identity(S)
    # the quotient identity is the closed hom: columns are closures of
    # the representables
    assert column(e, "x") == S.c(_as_psh("xy", {"x"}))
    assert quotient_compose(e, e, S, S, S) == e
    assert quotient_join([e, e], S, S) == e


def test_nucleus_laws_on_instance():
    S = _sier()
    T = discrete_space(S.base)
    X = S.base
    conts = [z for z in enumerate_distributors(X, X)
             if check_continuous_dist(z, S, T)]
    for zeta in conts:
        cz, _ = closure_of_columns(zeta, S)
        assert zeta.leq(cz)                      # extensive
        assert closure_of_columns(cz, S)[0] == cz  # idempotent
    for zeta, eta in itertools.product(conts, repeat=2):
        if zeta.leq(eta):
            assert closure_of_columns(zeta, S)[0].leq(
                closure_of_columns(eta, S)[0])   # monotone


def test_sup_preserving_maps_on_two_chain():
    # closed sets of the Sierpinski-like space form the 2-chain
    # {y} < {x,y}; sup-maps of the 2-chain to itself: the identity and
    # the constant at bottom (monotone maps also include constant top,
    # which does not preserve the empty sup)
    S = _sier()
    C = closed_category(S)
    tools = completeness_tools(C)
    maps = enumerate_sup_maps(C, C, tools, tools)
    assert len(maps) == 2
    bot = min(C.elements, key=lambda mu: sum(v == "1" for v in mu.values))
    ident = QFunctor(C, C, {mu: mu for mu in C.elements})
    const = QFunctor(C, C, {mu: bot for mu in C.elements})
    got = {tuple(sorted(f.mapping.items(), key=repr)) for f in maps}
    want = {tuple(sorted(f.mapping.items(), key=repr))
            for f in (ident, const)}
    assert got == want
    for f in maps:
        assert is_sup_preserving(f, tools, tools)


def test_equivalence_bijection_counts():
    S = _sier()
    T = discrete_space(S.base)
    res = equivalence_check_pair(S, S, ("S", "S"))
    assert res.ok and res.n_dists == res.n_maps == 2
    res2 = equivalence_check_pair(S, T, ("S", "T"))
    assert res2.ok and res2.n_dists == res2.n_maps == 4


def test_realize_sup_map_roundtrip():
    S = _sier()
    for zeta in enumerate_closed_continuous(S, S):
        fwd, bwd = dist_adjoints(zeta, S, S)
        assert realize_sup_map(fwd, S, S) == zeta


def test_final_structure_makes_sources_continuous():
    S = _sier()
    X = S.base
    T = final_structure(X, [(S, X.hom)])
    assert check_continuous_dist(X.hom, S, T)


def test_icl_embedding_of_identity():
    X = _chain_cat("ab")
    f = QFunctor(X, X, {"a": "a", "b": "b"})
    cograph, SY, SX = icl_embed(f)
    assert check_continuous_dist(cograph, SY, SX)


def _chain_cat(names):
    carrier = typed_over_quantale(list(names))
    entries = {(x, y): "1"
               for i, x in enumerate(names) for y in names[i:]}
    return QCategory(TWO, carrier, QRelation.from_partial(
        TWO, carrier, carrier, entries))


def test_lattice_duality_on_chain():
    X = _chain_cat("abc")
    rep = lattice_duality_check(X, "3-chain")
    assert rep.ok
