"""Lattices, quantales, quantaloids, residuation and divisibility.

Residuation is checked against brute-force joins computed inline, and
the builtin quantale tables against hand-computed values.
"""

import itertools

import pytest

from qcls.algebra import (Arrow, ConstructionError, FiniteLattice,
                          LatticeError, build_dq, build_opposite,
                          builtin_names, builtin_quantale,
                          dq_implication_closed, is_divisible,
                          reflexive_transitive_closure, validate_quantaloid)


def test_chain_lattice_bounds():
    lat = FiniteLattice.chain(["0", "1", "2"])
    assert lat.top == "2" and lat.bottom == "0"
    assert lat.join(["0", "2"]) == "2"
    assert lat.meet(["1", "2"]) == "1"
    assert lat.join([]) == "0" and lat.meet([]) == "2"
    assert lat.validate().ok


def test_diamond_lattice():
    pairs = reflexive_transitive_closure(
        "obtw", [("b", "o"), ("b", "t"), ("o", "w"), ("t", "w")])
    lat = FiniteLattice("obtw", sorted(pairs))
    assert lat.join(["o", "t"]) == "w"
    assert lat.meet(["o", "t"]) == "b"
    assert lat.validate().ok


def test_poset_without_joins_is_rejected():
    # two maximal elements: no top, no binary join
    pairs = reflexive_transitive_closure("bot", [("b", "o"), ("b", "t")])
    lat = FiniteLattice("bot", sorted(pairs))
    assert not lat.validate().ok
    with pytest.raises(LatticeError):
        lat.top


def test_builtin_tables():
    L3 = builtin_quantale("lukasiewicz3")
    assert L3.mul("1/2", "1/2") == "0"
    assert L3.mul("1/2", "1") == "1/2"
    G3 = builtin_quantale("godel3")
    assert G3.mul("1/2", "1/2") == "1/2"
    D4 = builtin_quantale("drastic4")
    assert D4.mul("1/3", "2/3") == "0"
    assert D4.mul("1/3", "1") == "1/3"
    B = builtin_quantale("boolean")
    assert B.lattice.elements == ("0", "1")
    assert {"2", "godel3", "lukasiewicz5", "drastic8"} <= set(
        builtin_names())


@pytest.mark.parametrize("name", ["boolean", "godel4", "lukasiewicz4",
                                  "drastic3"])
def test_quantale_laws(name):
    K = builtin_quantale(name)
    assert validate_quantaloid(K).ok


@pytest.mark.parametrize("name", ["godel3", "lukasiewicz4", "drastic3"])
def test_residuation_against_brute_force(name):
    K = builtin_quantale(name)
    lat = K.lattice
    for x, z in itertools.product(lat.elements, repeat=2):
        # x \ z is the largest a with x & a <= z; z / x the largest a
        # with a & x <= z
        ldiv = lat.join([a for a in lat.elements
                         if lat.leq(K.mul(x, a), z)])
        rdiv = lat.join([a for a in lat.elements
                         if lat.leq(K.mul(a, x), z)])
        assert K.ldiv(x, z) == ldiv
        assert K.rdiv(z, x) == rdiv


def test_residuation_adjointness():
    K = builtin_quantale("lukasiewicz4")
    lat = K.lattice
    for x, y, z in itertools.product(lat.elements, repeat=3):
        assert lat.leq(K.mul(x, y), z) == lat.leq(y, K.ldiv(x, z))
        assert lat.leq(K.mul(x, y), z) == lat.leq(x, K.rdiv(z, y))


def test_divisibility_verdicts():
    for name in ["boolean", "godel3", "godel5", "lukasiewicz3",
                 "lukasiewicz5"]:
        assert is_divisible(builtin_quantale(name)).divisible, name
    res = is_divisible(builtin_quantale("drastic4"))
    assert not res.divisible
    assert res.witness == "x=1/3 <= y=2/3: no a with y&a = x = a&y"
    # the two-element drastic quantale is boolean, hence divisible
    assert is_divisible(builtin_quantale("drastic2")).divisible


def test_dq_construction():
    DQ = build_dq(builtin_quantale("lukasiewicz3"))
    assert validate_quantaloid(DQ).ok
    assert DQ.objects == ("0", "1/2", "1")
    # hom(p, q) consists of the elements below both p and q
    assert DQ.homset("1/2", "1").elements == ("0", "1/2")
    assert DQ.homset("1", "1").elements == ("0", "1/2", "1")
    assert DQ.identity("1/2").elem == "1/2"
    # identities are the types themselves, so units are typically not top
    assert DQ.identity("1").elem == "1"


def test_dq_rejects_nondivisible():
    with pytest.raises(ConstructionError):
        build_dq(builtin_quantale("drastic4"))


def test_dq_closed_form_implications():
    K = builtin_quantale("godel4")
    DQ = build_dq(K)
    wlat = {(p, r): DQ.homset(p, r) for p in DQ.objects for r in DQ.objects}
    for p, q, r in itertools.product(DQ.objects, repeat=3):
        for u in DQ.homset(p, q).elements:      # u: p -> q
            for w in DQ.homset(p, r).elements:  # w: p -> r
                got = dq_implication_closed(K, "left", Arrow(p, r, w),
                                            Arrow(p, q, u))
                # brute force over hom(q, r)
                lat = DQ.homset(q, r)
                want = lat.join(
                    [v for v in lat.elements
                     if wlat[p, r].leq(DQ.compose_elems(p, q, r, v, u), w)])
                assert got.elem == want, (p, q, r, u, w)
        for v in DQ.homset(q, r).elements:
            for w in DQ.homset(p, r).elements:
                got = dq_implication_closed(K, "right", Arrow(q, r, v),
                                            Arrow(p, r, w))
                lat = DQ.homset(p, q)
                want = lat.join(
                    [u for u in lat.elements
                     if wlat[p, r].leq(DQ.compose_elems(p, q, r, v, u), w)])
                assert got.elem == want, (p, q, r, v, w)


def test_opposite_is_involutive():
    DQ = build_dq(builtin_quantale("lukasiewicz3"))
    op = build_opposite(DQ)
    assert validate_quantaloid(op).ok
    assert build_opposite(op) == DQ


def test_quantaloid_implication_adjointness():
    DQ = build_dq(builtin_quantale("lukasiewicz3"))
    for p, q, r in itertools.product(DQ.objects, repeat=3):
        for v in DQ.homset(q, r).elements:
            for u in DQ.homset(p, q).elements:
                for w in DQ.homset(p, r).elements:
                    vu = DQ.compose_elems(p, q, r, v, u)
                    lhs = DQ.homset(p, r).leq(vu, w)
                    wl = DQ.limpl(Arrow(p, r, w), Arrow(p, q, u))
                    wr = DQ.rimpl(Arrow(q, r, v), Arrow(p, r, w))
                    assert lhs == DQ.homset(q, r).leq(v, wl.elem)
                    assert lhs == DQ.homset(p, q).leq(u, wr.elem)


def test_reflexive_transitive_closure():
    got = reflexive_transitive_closure("abc", [("a", "b"), ("b", "c")])
    assert ("a", "c") in got
    assert {("a", "a"), ("b", "b"), ("c", "c")} <= got
