"""Continuous and closed distributors between closure spaces.

A distributor between the bases of two closure spaces is continuous
when restriction along it interacts laxly with the closures; each
continuous distributor has a closure (computed columnwise), the closed
ones form canonical representatives, and mapping a closed continuous
distributor to the induced map on closed presheaves is a bijection onto
the sup-preserving functors in the opposite direction.  This module
implements those constructions together with exhaustive enumeration and
the bijection check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .algebra import Arrow, CapExceeded, ConstructionError, DEFAULT_CAP, Report
from .category import (QCategory, QFunctor, QRelation, check_functor,
                       graph_cograph, is_distributor, rel_compose, rel_join,
                       underlying_preorder)
from .closure import (ClosureSpace, closed_category, psh_join, psh_meet,
                      psh_tensor, validate_closure_space)
from .presheaf import (CompletenessTools, Presheaf, completeness_tools,
                       enumerate_presheaves, kan_adjoints, presheaf_category,
                       psh_leq, yoneda)


def check_continuous_dist(zeta, S, T):
    """Decide continuity of a distributor zeta: (X, c) -/-> (Y, d) by
    four equivalent characterizations, asserting they agree:

    (i)   restriction of a d-closure is below the c-closure of the
          restriction;
    (ii)  the same after closing once more on the outside;
    (iii) the extension of a c-closed presheaf is d-closed as soon as
          it is closed under d once more;
    (iv)  extensions of closed presheaves are closed.
    """
    X, Y = S.base, T.base
    if not is_distributor(X, Y, zeta):
        raise ConstructionError("relation is not a distributor")
    kan = kan_adjoints(zeta)
    c, d = S.c, T.c
    c1 = all(psh_leq(X, kan.star(d(lam)), c(kan.star(lam)))
             for lam in T.PX.elements)
    c2 = all(psh_leq(X, c(kan.star(d(lam))), c(kan.star(lam)))
             for lam in T.PX.elements)
    c3 = all(psh_leq(Y, d(kan.lower(c(mu))), kan.lower(c(mu)))
             for mu in S.PX.elements)
    c4 = all(T.is_closed(kan.lower(mu)) for mu in S.closed())
    assert c1 == c2 == c3 == c4, "distributor continuity characterizations disagree"
    return c1


def final_structure(Y, sources, cap=DEFAULT_CAP, PY=None):
    """The finest closure operator on Y making every distributor in
    ``sources`` (pairs of a source space and a distributor into Y)
    continuous: the typewise meet of extension-after-closure-after-
    restriction along each distributor.  The empty family yields the
    indiscrete space."""
    if PY is None:
        PY = presheaf_category(Y, cap)
    kans = []
    for S, zeta in sources:
        if zeta.dom != S.base.carrier or zeta.cod != Y.carrier:
            raise ConstructionError("source does not match the codomain")
        if not is_distributor(S.base, Y, zeta):
            raise ConstructionError("source relation is not a distributor")
        kans.append((S, kan_adjoints(zeta)))
    table = {}
    for lam in PY.elements:
        parts = [kan.lower(S.c(kan.star(lam))) for S, kan in kans]
        table[lam] = psh_meet(Y, lam.ptype, parts)
    T = ClosureSpace(Y, PY, table)
    assert validate_closure_space(T).ok, "final table is not a closure operator"
    for S, zeta in sources:
        assert check_continuous_dist(zeta, S, T), \
            "final structure does not make its sources continuous"
    return T


def dist_adjoints(zeta, S, T):
    """The adjoint pair between closed-presheaf categories induced by a
    continuous distributor zeta: (X, c) -/-> (Y, d): the right adjoint
    closes the restriction of a d-closed presheaf, the left adjoint is
    the extension of a c-closed presheaf."""
    if not check_continuous_dist(zeta, S, T):
        raise ConstructionError("distributor is not continuous")
    CS, CT = closed_category(S), closed_category(T)
    kan = kan_adjoints(zeta)
    fwd = QFunctor(CT, CS, {lam: S.c(kan.star(lam)) for lam in CT.elements})
    bwd = QFunctor(CS, CT, {mu: kan.lower(mu) for mu in CS.elements})
    return fwd, bwd


def column(zeta, y):
    X, Y = zeta.dom, zeta.cod
    return Presheaf(Y.t(y), tuple(zeta.entries[x, y] for x in X.elements))


def closure_of_columns(zeta, S):
    """Close every column of a relation in the source space, without
    the continuity checks of :func:`dist_closure`.  Returns the closed
    relation and whether the input was already closed."""
    X = S.base
    entries = {}
    was_closed = True
    for y in zeta.cod.elements:
        col = column(zeta, y)
        ccol = S.c(col)
        if ccol != col:
            was_closed = False
        for i, x in enumerate(X.elements):
            entries[x, y] = ccol.values[i]
    return QRelation(zeta.Q, zeta.dom, zeta.cod, entries), was_closed


def dist_closure(zeta, S, T):
    """The closure of a continuous distributor: close every column in
    the source space.  Returns the closed distributor and whether the
    input was already closed."""
    if not check_continuous_dist(zeta, S, T):
        raise ConstructionError("distributor is not continuous")
    X, Y = S.base, T.base
    out, was_closed = closure_of_columns(zeta, S)
    assert is_distributor(X, Y, out), "closure of a distributor is not one"
    assert check_continuous_dist(out, S, T), \
        "closure of a continuous distributor is not continuous"
    return out, was_closed


def quotient_compose(eta, zeta, S, T, U):
    """Composition in the quotient by closure: close eta . zeta."""
    out, _ = dist_closure(rel_compose(eta, zeta), S, U)
    return out


def quotient_join(zetas, S, T):
    """Join in the quotient by closure: close the entrywise join."""
    out, _ = dist_closure(rel_join(list(zetas)), S, T)
    return out


def quotient_identity(S):
    """Identity in the quotient by closure: the closed hom distributor."""
    out, _ = dist_closure(S.base.hom, S, S)
    return out


def enumerate_distributors(X, Y, cap=DEFAULT_CAP):
    """All distributors X -/-> Y, by filtering every total relation."""
    Q = X.Q
    pairs = [(x, y) for x in X.elements for y in Y.elements]
    cands = [Q.homset(X.t(x), Y.t(y)).elements for x, y in pairs]
    count = 1
    for c in cands:
        count *= len(c)
    if count > cap:
        raise CapExceeded(
            f"distributor enumeration needs {count} candidates (cap {cap})",
            count)
    out = []
    for values in itertools.product(*cands):
        rel = QRelation(Q, X.carrier, Y.carrier, dict(zip(pairs, values)))
        if is_distributor(X, Y, rel):
            out.append(rel)
    return out


def enumerate_closed_continuous(S, T, cap=DEFAULT_CAP):
    """All closed continuous distributors between two spaces."""
    out = []
    for zeta in enumerate_distributors(S.base, T.base, cap):
        if check_continuous_dist(zeta, S, T):
            closed, was_closed = dist_closure(zeta, S, T)
            if was_closed:
                out.append(zeta)
    return out


def is_sup_preserving(f, atools, btools):
    """Whether a functor between complete categories preserves all
    suprema, decided directly on every presheaf of the domain and
    cross-checked against the criterion "preserves tensors and is a
    left adjoint between the underlying preorders"."""
    A, B = f.dom, f.cod
    if not check_functor(f).is_functor:
        return False
    direct = True
    for mu in atools.PX.elements:
        s = atools.sup(mu)
        assert s is not None, "domain category is not complete"
        pushed = Presheaf(mu.ptype, tuple(
            A.Q.homset(B.t(b), mu.ptype).join(
                [A.Q.compose_elems(B.t(b), A.t(a), mu.ptype, mu.values[i],
                                   B.h(b, f(a)))
                 for i, a in enumerate(A.elements)])
            for b in B.elements))
        t = btools.sup(pushed)
        if t != f(s):
            direct = False
            break
    tensors = True
    for a in A.elements:
        for q in A.Q.objects:
            for u in A.Q.homset(A.t(a), q).elements:
                ta = atools.tensor(Arrow(A.t(a), q, u), a)
                assert ta is not None
                tb = btools.tensor(Arrow(A.t(a), q, u), f(a))
                if tb != f(ta):
                    tensors = False
    apairs = set(underlying_preorder(A)[0])
    bpairs = set(underlying_preorder(B)[0])
    adjoint = True
    for q in A.Q.objects:
        for b in B.carrier.fiber(q):
            best = None
            for cand in A.carrier.fiber(q):
                if (f(cand), b) in bpairs and all(
                        ((a, cand) in apairs) == ((f(a), b) in bpairs)
                        for a in A.carrier.fiber(q)):
                    best = cand
                    break
            if best is None:
                adjoint = False
    criterion = tensors and adjoint
    assert direct == criterion, "sup-preservation criteria disagree"
    return direct


def enumerate_sup_maps(A, B, atools, btools, cap=DEFAULT_CAP):
    """All sup-preserving functors between two complete separated
    categories, by filtering every type-preserving map."""
    cands = [B.carrier.fiber(A.t(a)) for a in A.elements]
    count = 1
    for c in cands:
        count *= len(c)
    if count > cap:
        raise CapExceeded(
            f"sup-map enumeration needs {count} candidates (cap {cap})", count)
    out = []
    for values in itertools.product(*cands):
        f = QFunctor(A, B, dict(zip(A.elements, values)))
        if check_functor(f).is_functor and is_sup_preserving(f, atools, btools):
            out.append(f)
    return out


def realize_sup_map(g, S, T):
    """The continuous distributor (X, c) -/-> (Y, d) realizing a
    sup-preserving functor g from the closed presheaves of (Y, d) to
    those of (X, c): its column at y is g applied to the closure of the
    representable at y.  The result is closed, continuous, and induces
    g back."""
    X, Y = S.base, T.base
    CT = g.dom
    entries = {}
    for y in Y.elements:
        col = g(T.c(yoneda(Y, y)))
        for i, x in enumerate(X.elements):
            entries[x, y] = col.values[i]
    zeta = QRelation(X.Q, X.carrier, Y.carrier, entries)
    assert is_distributor(X, Y, zeta), "realized relation is not a distributor"
    assert check_continuous_dist(zeta, S, T), \
        "realized distributor is not continuous"
    closed, was_closed = dist_closure(zeta, S, T)
    assert was_closed, "realized distributor is not closed"
    fwd, _ = dist_adjoints(zeta, S, T)
    assert fwd == g, "realized distributor does not induce the given map"
    return zeta


def icl_embed(f, cap=DEFAULT_CAP):
    """Embed a sup-preserving functor f: X -> Y between complete
    separated categories as the closed continuous distributor
    (Y, c_Y) -/-> (X, c_X) with entries Y(y, f x)."""
    from .closure import functor_I
    X, Y = f.dom, f.cod
    SX = functor_I(X, cap)
    SY = functor_I(Y, cap)
    _, cograph = graph_cograph(f)
    closed, was_closed = dist_closure(cograph, SY, SX)
    assert was_closed, "the cograph of a functor is not closed"
    return cograph, SY, SX


@dataclass
class EquivalencePairResult:
    instance: str
    n_dists: int
    n_maps: int
    ok: bool
    witness: str | None = None


def equivalence_check_pair(S, T, names=("S", "T"), cap=DEFAULT_CAP):
    """Exhaustively verify, for one ordered pair of spaces, that
    closed continuous distributors S -/-> T biject with sup-preserving
    maps from the closed presheaves of T to those of S, with
    :func:`dist_adjoints` and :func:`realize_sup_map` mutually
    inverse."""
    CS, CT = closed_category(S), closed_category(T)
    stools = completeness_tools(CS, cap)
    ttools = completeness_tools(CT, cap)
    assert stools.is_complete() and ttools.is_complete(), \
        "closed-presheaf categories must be complete"
    dists = enumerate_closed_continuous(S, T, cap)
    maps = enumerate_sup_maps(CT, CS, ttools, stools, cap)
    label = f"{names[0]} -/-> {names[1]}"
    witness = None
    induced = []
    for zeta in dists:
        fwd, _ = dist_adjoints(zeta, S, T)
        induced.append(fwd)
        if realize_sup_map(fwd, S, T) != zeta:
            witness = f"{label}: realization does not invert the induced map"
    seen = {tuple(sorted(f.mapping.items(), key=repr)) for f in induced}
    if len(seen) != len(dists):
        witness = witness or f"{label}: induced maps are not distinct"
    for g in maps:
        zeta = realize_sup_map(g, S, T)
        fwd, _ = dist_adjoints(zeta, S, T)
        if fwd != g:
            witness = witness or f"{label}: induced map of a realization differs"
    if len(dists) != len(maps):
        witness = witness or (f"{label}: {len(dists)} closed continuous "
                              f"distributors but {len(maps)} sup-maps")
    return EquivalencePairResult(label, len(dists), len(maps),
                                 witness is None, witness)


def lattice_duality_check(X, name="L", cap=DEFAULT_CAP):
    """For a complete separated category, verify that taking suprema is
    a bijective fully faithful functor from the closed presheaves of
    its representable space back to the category."""
    from .closure import functor_I
    PX = presheaf_category(X, cap)
    tools = completeness_tools(X, cap, PX=PX)
    S = functor_I(X, cap, PX=PX, tools=tools)
    C = closed_category(S)
    mapping = {}
    for mu in C.elements:
        s = tools.sup(mu)
        assert s is not None
        mapping[mu] = s
    f = QFunctor(C, X, mapping)
    chk = check_functor(f)
    image = set(mapping.values())
    bijective = (len(image) == len(C.elements)
                 and image == set(X.elements))
    ok = chk.is_functor and chk.fully_faithful and bijective
    witness = None if ok else (chk.witness or f"{name}: sup is not bijective")
    return Report(f"lattice duality {name}",
                  [] if ok else [witness])
