"""Closure operators on presheaf categories and closure spaces.

A closure space is a category X together with a closure operator c on
its presheaf category: a hom-preserving, extensive and idempotent map.
This module builds such spaces from families of closed presheaves,
validates them, computes initial structures, discrete restrictions,
specialization categories, the Alexandrov condition, and the functors
relating spaces to their categories of closed presheaves.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .algebra import Arrow, ConstructionError, DEFAULT_CAP, Report
from .category import (QCategory, QFunctor, QRelation, TypedSet,
                       discrete_category, full_subcategory, rel_compose,
                       validate_category)
from .presheaf import (CompletenessTools, Presheaf, PresheafCategory,
                       completeness_tools, copresheaf_category,
                       image_functors, mu_after_hom, presheaf_category,
                       psh_leq, yoneda)


class ClosureSpace:
    """A category with a closure operator, stored as a total table on
    the enumerated presheaf category."""

    def __init__(self, base, PX, table):
        if set(table) != set(PX.elements):
            raise ConstructionError("closure table is not total on presheaves")
        for mu, nu in table.items():
            if nu not in PX.carrier:
                raise ConstructionError(
                    f"closure of {mu!r} is not a presheaf on the base")
        self.base = base
        self.PX = PX
        self.table = dict(table)

    def c(self, mu):
        return self.table[mu]

    def is_closed(self, mu):
        return self.table[mu] == mu

    def closed(self):
        """The closed presheaves, in presheaf-category order."""
        return [mu for mu in self.PX.elements if self.table[mu] == mu]

    def __eq__(self, other):
        if not isinstance(other, ClosureSpace):
            return NotImplemented
        return (self.base == other.base and self.PX == other.PX
                and self.table == other.table)

    def __repr__(self):
        return f"ClosureSpace({list(self.base.elements)}, {len(self.closed())} closed)"


def discrete_space(X, cap=DEFAULT_CAP, PX=None):
    """The space in which every presheaf is closed."""
    if PX is None:
        PX = presheaf_category(X, cap)
    return ClosureSpace(X, PX, {mu: mu for mu in PX.elements})


def top_presheaf(X, q):
    return Presheaf(q, tuple(X.Q.homset(X.t(x), q).top for x in X.elements))


def indiscrete_space(X, cap=DEFAULT_CAP, PX=None):
    """The space whose only closed presheaves are the top presheaf of
    each type."""
    if PX is None:
        PX = presheaf_category(X, cap)
    return ClosureSpace(X, PX,
                        {mu: top_presheaf(X, mu.ptype) for mu in PX.elements})


def validate_closure_space(S):
    """Check that the table is a closure operator: type-preserving,
    hom-preserving (a functor on the presheaf category), extensive and
    idempotent."""
    rep = Report("closure space")
    PX, Q = S.PX, S.PX.Q
    X = S.base
    for mu in PX.elements:
        if S.table[mu].ptype != mu.ptype:
            rep.add("type preservation",
                    f"c{mu!r} has type {S.table[mu].ptype}")
    if not rep.ok:
        return rep
    for mu, nu in itertools.product(PX.elements, repeat=2):
        lat = Q.homset(mu.ptype, nu.ptype)
        if not lat.leq(PX.h(mu, nu), PX.h(S.table[mu], S.table[nu])):
            rep.add("hom preservation",
                    f"PX({mu!r},{nu!r}) not below PX(c{mu!r},c{nu!r})")
    for mu in PX.elements:
        if not psh_leq(X, mu, S.table[mu]):
            rep.add("extensivity", f"{mu!r} not below c{mu!r}")
        if S.table[S.table[mu]] != S.table[mu]:
            rep.add("idempotence", f"cc{mu!r} = {S.table[S.table[mu]]!r} "
                                   f"differs from c{mu!r}")
    return rep


def psh_meet(X, q, mus):
    """Pointwise meet of a family of presheaves of type q (the top
    presheaf for the empty family)."""
    values = []
    for i, x in enumerate(X.elements):
        values.append(X.Q.homset(X.t(x), q).meet([mu.values[i] for mu in mus]))
    return Presheaf(q, tuple(values))


def psh_join(X, q, mus):
    values = []
    for i, x in enumerate(X.elements):
        values.append(X.Q.homset(X.t(x), q).join([mu.values[i] for mu in mus]))
    return Presheaf(q, tuple(values))


def psh_tensor(X, u, mu):
    """The tensor u . mu for u: |mu| -> q, a presheaf of type q."""
    values = [X.Q.compose_elems(X.t(x), mu.ptype, u.tgt, u.elem, mu.values[i])
              for i, x in enumerate(X.elements)]
    return Presheaf(u.tgt, tuple(values))


def psh_cotensor(X, v, mu):
    """The cotensor v -> mu for v: q -> |mu|, a presheaf of type q."""
    values = [X.Q.rimpl(v, Arrow(X.t(x), mu.ptype, mu.values[i])).elem
              for i, x in enumerate(X.elements)]
    return Presheaf(v.src, tuple(values))


def _cotensor_saturate(X, found):
    """Close a set of presheaves under cotensors and typewise meets
    (including empty meets, the top presheaves)."""
    Q = X.Q
    queue = list(found)
    out = dict.fromkeys(found)
    for q in Q.objects:
        t = top_presheaf(X, q)
        if t not in out:
            out[t] = None
            queue.append(t)
    while queue:
        mu = queue.pop()
        for q in Q.objects:
            for v in Q.homset(q, mu.ptype).elements:
                cot = psh_cotensor(X, Arrow(q, mu.ptype, v), mu)
                if cot not in out:
                    out[cot] = None
                    queue.append(cot)
        for nu in list(out):
            if nu.ptype == mu.ptype:
                m = psh_meet(X, mu.ptype, [mu, nu])
                if m not in out:
                    out[m] = None
                    queue.append(m)
    return out


def from_closed_system(X, closed, mode="generate", cap=DEFAULT_CAP, PX=None):
    """Build the closure space whose closed presheaves are generated by
    the given family.

    The family is saturated under cotensors and typewise meets; in mode
    "exact" any element this adds is an error.  The operator sends mu to
    the meet over closed nu of the cotensor PX(mu, nu) -> nu.  The
    resulting table is asserted to be a valid closure operator whose
    fixed points are exactly the saturated family and which is left
    adjoint to the inclusion of the closed presheaves.
    """
    if PX is None:
        PX = presheaf_category(X, cap)
    for mu in closed:
        if mu not in PX.carrier:
            raise ConstructionError(f"{mu!r} is not a presheaf on the base")
    saturated = _cotensor_saturate(X, closed)
    if mode == "exact":
        extra = [mu for mu in saturated if mu not in set(closed)]
        if extra:
            raise ConstructionError(
                f"family is not a closure system; missing {extra[0]!r}")
    elif mode != "generate":
        raise ConstructionError(f"unknown closure mode {mode!r}")
    ordered = [mu for mu in PX.elements if mu in saturated]
    Q = X.Q
    table = {}
    for mu in PX.elements:
        parts = [psh_cotensor(X, Arrow(mu.ptype, nu.ptype, PX.h(mu, nu)), nu)
                 for nu in ordered]
        table[mu] = psh_meet(X, mu.ptype, parts)
    S = ClosureSpace(X, PX, table)
    assert validate_closure_space(S).ok, "generated table is not a closure operator"
    assert S.closed() == ordered, "fixed points differ from the saturated family"
    for mu in PX.elements:
        for nu in ordered:
            assert PX.h(table[mu], nu) == PX.h(mu, nu), \
                "closure is not left adjoint to the inclusion of closed presheaves"
    return S


def closed_category(S):
    """The full subcategory of the presheaf category on the closed
    presheaves."""
    return full_subcategory(S.PX, S.closed())


def closed_sup(S, CX, Phi, PC=None):
    """The supremum in the closed-presheaf category of a presheaf Phi
    on it: close the supremum taken in the ambient presheaf category.
    Cross-checked against direct search."""
    X = S.base
    # sup in PX of the extension of Phi along the inclusion: pointwise
    # join of Phi(mu) . mu over closed mu.
    parts = [psh_tensor(X, Arrow(mu.ptype, Phi.ptype, Phi.values[i]), mu)
             for i, mu in enumerate(CX.elements)]
    ambient = psh_join(X, Phi.ptype, parts)
    result = S.c(ambient)
    if PC is not None:
        from .presheaf import copresheaf_category as _cc
        tools = CompletenessTools(CX, PC, None)
        direct = tools.sup(Phi)
        assert direct == result, "closed supremum differs from direct search"
    return result


def check_continuous_functor(f, S, T):
    """Decide continuity of a functor f: (X, c) -> (Y, d) by four
    equivalent characterizations, asserting they agree:

    (i)   direct image of a closure is below the closure of the direct
          image;
    (ii)  the same after closing once more on the outside;
    (iii) the inverse image of a closed presheaf closure is closed
          under c;
    (iv)  inverse images of closed presheaves are closed.
    """
    if f.dom != S.base or f.cod != T.base:
        raise ConstructionError("functor does not match the spaces")
    X, Y = S.base, T.base
    imgs = image_functors(f)
    c, d = S.c, T.c
    c1 = all(psh_leq(Y, imgs.fwd(c(mu)), d(imgs.fwd(mu)))
             for mu in S.PX.elements)
    c2 = all(psh_leq(Y, d(imgs.fwd(c(mu))), d(imgs.fwd(mu)))
             for mu in S.PX.elements)
    c3 = all(psh_leq(X, c(imgs.bwd(d(lam))), imgs.bwd(d(lam)))
             for lam in T.PX.elements)
    c4 = all(S.is_closed(imgs.bwd(lam)) for lam in T.closed())
    assert c1 == c2 == c3 == c4, "continuity characterizations disagree"
    return c1


def initial_structure(X, lifts, cap=DEFAULT_CAP, PX=None):
    """The coarsest closure operator on X making every functor in
    ``lifts`` (pairs of a functor from X and its codomain space)
    continuous: the typewise meet of the operators pulled back along
    each functor.  The empty family yields the indiscrete space."""
    if PX is None:
        PX = presheaf_category(X, cap)
    pulled = []
    for f, T in lifts:
        if f.dom != X or f.cod != T.base:
            raise ConstructionError("lift does not match the domain")
        imgs = image_functors(f)
        pulled.append((imgs, T))
    table = {}
    for mu in PX.elements:
        parts = [imgs.bwd(T.c(imgs.fwd(mu))) for imgs, T in pulled]
        table[mu] = psh_meet(X, mu.ptype, parts)
    S = ClosureSpace(X, PX, table)
    assert validate_closure_space(S).ok, "initial table is not a closure operator"
    for f, T in lifts:
        assert check_continuous_functor(f, S, T), \
            "initial structure does not make its cone continuous"
    return S


def is_initial_lift(S, lifts, g, E):
    """Whether g: (Z, e) -> (X, c) is continuous exactly when every
    composite with the defining cone is; returns True when the initial
    structure's universal property holds for this test functor."""
    from .category import compose_functors
    direct = check_continuous_functor(g, E, S)
    through = all(check_continuous_functor(compose_functors(f, g), E, T)
                  for f, T in lifts)
    return direct == through


def underlying_discrete(S, cap=DEFAULT_CAP):
    """The same closure operator transported to the discrete category
    on the carrier: close mu . X instead of mu."""
    X = S.base
    X0 = discrete_category(X.Q, X.carrier)
    PX0 = presheaf_category(X0, cap)
    table = {mu: S.c(mu_after_hom(X, mu)) for mu in PX0.elements}
    return ClosureSpace(X0, PX0, table)


def specialization_of_dist(X, phi):
    """The specialization category of a distributor phi out of X: the
    carrier of X made discrete, with hom(x, x') the meet over y of
    phi(x', y) -> phi(x, y)."""
    Q = X.Q
    ts = X.carrier
    Y = phi.cod
    entries = {}
    for x, x2 in itertools.product(ts.elements, repeat=2):
        elems = [Q.rimpl(phi.arrow(x2, y), phi.arrow(x, y)).elem
                 for y in Y.elements]
        entries[x, x2] = Q.homset(ts.t(x), ts.t(x2)).meet(elems)
    cat = QCategory(Q, ts, QRelation(Q, ts, ts, entries))
    assert validate_category(cat).ok, "specialization is not a category"
    return cat


def _spec_from_closed(X, closed_list):
    Q = X.Q
    ts = X.carrier
    entries = {}
    for x, x2 in itertools.product(ts.elements, repeat=2):
        ix, ix2 = X.index(x), X.index(x2)
        elems = [Q.rimpl(Arrow(ts.t(x2), mu.ptype, mu.values[ix2]),
                         Arrow(ts.t(x), mu.ptype, mu.values[ix])).elem
                 for mu in closed_list]
        entries[x, x2] = Q.homset(ts.t(x), ts.t(x2)).meet(elems)
    return QCategory(Q, ts, QRelation(Q, ts, ts, entries))


def specialization(S, cap=DEFAULT_CAP):
    """The specialization category of a closure space: elements of the
    carrier, hom(x, y) the meet over closed mu of mu(y) -> mu(x).

    For a non-discrete base the computation routed through the discrete
    restriction is asserted to give the same result.
    """
    X = S.base
    cat = _spec_from_closed(X, S.closed())
    if X.hom != rel_identity_of(X):
        S0 = underlying_discrete(S, cap)
        alt = _spec_from_closed(S0.base, S0.closed())
        assert alt == cat, "specialization differs through the discrete restriction"
    assert validate_category(cat).ok, "specialization is not a category"
    return cat


def rel_identity_of(X):
    from .category import rel_identity
    return rel_identity(X.Q, X.carrier)


def functor_D(X, cap=DEFAULT_CAP):
    """The space on the discrete carrier of X whose closure is the
    action of X: mu maps to mu . X.  Every presheaf on X is closed."""
    X0 = discrete_category(X.Q, X.carrier)
    PX0 = presheaf_category(X0, cap)
    table = {mu: mu_after_hom(X, mu) for mu in PX0.elements}
    S = ClosureSpace(X0, PX0, table)
    assert validate_closure_space(S).ok, "action table is not a closure operator"
    return S


def specialization_of_category(X, cap=DEFAULT_CAP):
    """The specialization of the space :func:`functor_D` builds from X,
    computed directly: all presheaves on X are closed, so the hom is
    the meet over presheaves mu of mu(y) -> mu(x)."""
    from .presheaf import enumerate_presheaves
    return _spec_from_closed(X, enumerate_presheaves(X, cap))


def is_alexandrov(S):
    """Whether the closed presheaves are closed under tensors,
    cotensors, typewise joins and meets; asserted to agree with the
    roundtrip criterion that the space equals the one its
    specialization generates.  Requires a discrete base."""
    X = S.base
    if X.hom != rel_identity_of(X):
        raise ConstructionError("the Alexandrov condition needs a discrete base")
    Q = X.Q
    closed = S.closed()
    closed_set = set(closed)
    by_ops = True
    for mu in closed:
        for q in Q.objects:
            for u in Q.homset(mu.ptype, q).elements:
                if psh_tensor(X, Arrow(mu.ptype, q, u), mu) not in closed_set:
                    by_ops = False
            for v in Q.homset(q, mu.ptype).elements:
                if psh_cotensor(X, Arrow(q, mu.ptype, v), mu) not in closed_set:
                    by_ops = False
    for q in Q.objects:
        fam = [mu for mu in closed if mu.ptype == q]
        for k in range(len(fam) + 1):
            if not by_ops:
                break
            for sub in itertools.combinations(fam, k):
                if psh_join(X, q, sub) not in closed_set \
                        or psh_meet(X, q, sub) not in closed_set:
                    by_ops = False
                    break
    roundtrip = functor_D(specialization(S)) == S
    assert by_ops == roundtrip, "Alexandrov characterizations disagree"
    return by_ops


def functor_C_on_functor(f, S, T):
    """The adjoint pair of functors between closed-presheaf categories
    induced by a continuous functor f: the left adjoint closes the
    direct image, the right adjoint is the inverse image."""
    if not check_continuous_functor(f, S, T):
        raise ConstructionError("functor is not continuous")
    CS, CT = closed_category(S), closed_category(T)
    imgs = image_functors(f)
    fwd = QFunctor(CS, CT, {mu: T.c(imgs.fwd(mu)) for mu in CS.elements})
    bwd = QFunctor(CT, CS, {lam: imgs.bwd(lam) for lam in CT.elements})
    return fwd, bwd


def functor_I(X, cap=DEFAULT_CAP, PX=None, tools=None):
    """The space on a separated complete category X whose closure sends
    a presheaf to the representable of its supremum.  The closed
    presheaves are exactly the representables."""
    from .category import underlying_preorder
    if PX is None:
        PX = presheaf_category(X, cap)
    _, separated = underlying_preorder(X)
    if not separated:
        raise ConstructionError("the base category is not separated")
    if tools is None:
        tools = completeness_tools(X, cap, PX=PX)
    table = {}
    for mu in PX.elements:
        s = tools.sup(mu)
        if s is None:
            raise ConstructionError(f"the base category is not complete "
                                    f"(no supremum of {mu!r})")
        table[mu] = yoneda(X, s)
    S = ClosureSpace(X, PX, table)
    assert validate_closure_space(S).ok, \
        "the representable-of-supremum table is not a closure operator"
    assert set(S.closed()) == {yoneda(X, x) for x in X.elements}, \
        "closed presheaves are not exactly the representables"
    return S
