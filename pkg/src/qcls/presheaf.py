"""Presheaves and copresheaves on enriched categories.

A presheaf on X of type q is a distributor X -/-> {q}, stored as a
tuple of hom elements aligned with the carrier order.  A copresheaf is
a distributor {q} -/-> X stored the same way.  This module enumerates
them, builds the (co)presheaf categories, and provides Kan adjunctions,
image functors, the Yoneda embedding, completeness witnesses and the
transposition between distributors and functors into presheaves.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .algebra import Arrow, CapExceeded, ConstructionError, DEFAULT_CAP, Report
from .category import (QCategory, QFunctor, QRelation, TypedSet,
                       check_functor, rel_compose, underlying_preorder)


@dataclass(frozen=True, order=True)
class Presheaf:
    """A (co)presheaf: its type and the tuple of values in carrier order."""

    ptype: str
    values: tuple

    def __repr__(self):
        return f"[{self.ptype}|{','.join(self.values)}]"


def psh_value(X, mu, x):
    return mu.values[X.index(x)]


def psh_leq(X, mu, nu):
    """Pointwise comparison of parallel presheaves of equal type; this
    is the underlying order of the presheaf category."""
    if mu.ptype != nu.ptype:
        raise ConstructionError("cannot compare presheaves of different type")
    Q = X.Q
    return all(Q.homset(X.t(x), mu.ptype).leq(mu.values[i], nu.values[i])
               for i, x in enumerate(X.elements))


def copsh_leq(X, lam, rho):
    """Pointwise comparison of parallel copresheaves.  Note that the
    underlying order of the copresheaf category is the reverse of this."""
    if lam.ptype != rho.ptype:
        raise ConstructionError("cannot compare copresheaves of different type")
    Q = X.Q
    return all(Q.homset(lam.ptype, X.t(x)).leq(lam.values[i], rho.values[i])
               for i, x in enumerate(X.elements))


def presheaf_count(X):
    """Number of candidate presheaf tuples before the distributor filter."""
    total = 0
    for q in X.Q.objects:
        n = 1
        for x in X.elements:
            n *= len(X.Q.homset(X.t(x), q).elements)
        total += n
    return total


def mu_after_hom(X, mu):
    """The composite mu . X, with values the join over x' of
    mu(x') . X(x, x').  For a presheaf on X this equals mu."""
    Q = X.Q
    values = []
    for x in X.elements:
        p = X.t(x)
        elems = [Q.compose_elems(p, X.t(x2), mu.ptype,
                                 mu.values[i2], X.h(x, x2))
                 for i2, x2 in enumerate(X.elements)]
        values.append(Q.homset(p, mu.ptype).join(elems))
    return Presheaf(mu.ptype, tuple(values))


def hom_after_lam(X, lam):
    """The composite X . lam, with values the join over x' of
    X(x', x) . lam(x').  For a copresheaf on X this equals lam."""
    Q = X.Q
    values = []
    for x in X.elements:
        p = X.t(x)
        elems = [Q.compose_elems(lam.ptype, X.t(x2), p,
                                 X.h(x2, x), lam.values[i2])
                 for i2, x2 in enumerate(X.elements)]
        values.append(Q.homset(lam.ptype, p).join(elems))
    return Presheaf(lam.ptype, tuple(values))


def enumerate_presheaves(X, cap=DEFAULT_CAP):
    """All presheaves on X in deterministic order: types in quantaloid
    object order, value tuples in lexicographic hom-element order.
    Every candidate passing the action inequality is asserted to
    satisfy it with equality."""
    count = presheaf_count(X)
    if count > cap:
        raise CapExceeded(
            f"presheaf enumeration needs {count} candidates (cap {cap})",
            count)
    Q = X.Q
    out = []
    for q in Q.objects:
        cands = [Q.homset(X.t(x), q).elements for x in X.elements]
        for values in itertools.product(*cands):
            mu = Presheaf(q, values)
            acted = mu_after_hom(X, mu)
            ok = all(Q.homset(X.t(x), q).leq(acted.values[i], mu.values[i])
                     for i, x in enumerate(X.elements))
            if ok:
                assert acted == mu, "presheaf action inequality not an equality"
                out.append(mu)
    return out


def enumerate_copresheaves(X, cap=DEFAULT_CAP):
    """All copresheaves on X, ordered like :func:`enumerate_presheaves`."""
    count = 0
    for q in X.Q.objects:
        n = 1
        for x in X.elements:
            n *= len(X.Q.homset(q, X.t(x)).elements)
        count += n
    if count > cap:
        raise CapExceeded(
            f"copresheaf enumeration needs {count} candidates (cap {cap})",
            count)
    Q = X.Q
    out = []
    for q in Q.objects:
        cands = [Q.homset(q, X.t(x)).elements for x in X.elements]
        for values in itertools.product(*cands):
            lam = Presheaf(q, values)
            acted = hom_after_lam(X, lam)
            ok = all(Q.homset(q, X.t(x)).leq(acted.values[i], lam.values[i])
                     for i, x in enumerate(X.elements))
            if ok:
                assert acted == lam, "copresheaf action inequality not an equality"
                out.append(lam)
    return out


class PresheafCategory(QCategory):
    """The category of (co)presheaves on a base category, with the
    base and the orientation recorded."""

    def __init__(self, Q, carrier, hom, base, co):
        super().__init__(Q, carrier, hom)
        self.base = base
        self.co = co

    def val(self, mu, x):
        return mu.values[self.base.index(x)]


def presheaf_hom(X, mu, nu):
    """The hom element of the presheaf category: the meet over x of
    nu(x) <- mu(x), in hom(|mu|, |nu|)."""
    Q = X.Q
    elems = [Q.limpl(Arrow(X.t(x), nu.ptype, nu.values[i]),
                     Arrow(X.t(x), mu.ptype, mu.values[i])).elem
             for i, x in enumerate(X.elements)]
    return Q.homset(mu.ptype, nu.ptype).meet(elems)


def copresheaf_hom(X, lam, rho):
    """The hom element of the copresheaf category: the meet over x of
    rho(x) -> lam(x), in hom(|lam|, |rho|)."""
    Q = X.Q
    elems = [Q.rimpl(Arrow(rho.ptype, X.t(x), rho.values[i]),
                     Arrow(lam.ptype, X.t(x), lam.values[i])).elem
             for i, x in enumerate(X.elements)]
    return Q.homset(lam.ptype, rho.ptype).meet(elems)


def presheaf_category(X, cap=DEFAULT_CAP):
    """The category of presheaves on X."""
    elems = enumerate_presheaves(X, cap)
    tset = TypedSet(elems, {mu: mu.ptype for mu in elems})
    entries = {(mu, nu): presheaf_hom(X, mu, nu)
               for mu, nu in itertools.product(elems, repeat=2)}
    hom = QRelation(X.Q, tset, tset, entries)
    return PresheafCategory(X.Q, tset, hom, X, co=False)


def copresheaf_category(X, cap=DEFAULT_CAP):
    """The category of copresheaves on X."""
    elems = enumerate_copresheaves(X, cap)
    tset = TypedSet(elems, {lam: lam.ptype for lam in elems})
    entries = {(lam, rho): copresheaf_hom(X, lam, rho)
               for lam, rho in itertools.product(elems, repeat=2)}
    hom = QRelation(X.Q, tset, tset, entries)
    return PresheafCategory(X.Q, tset, hom, X, co=True)


class KanAdjoints:
    """The four Kan constructions of a distributor phi: X -/-> Y.

    ``star`` (restriction along phi) sends a presheaf on Y to one on X;
    ``lower`` (its right adjoint) sends a presheaf on X to one on Y;
    ``dag`` sends a copresheaf on X to one on Y; ``dag_lower`` (its
    left adjoint's partner: dag_lower is left adjoint to dag) sends a
    copresheaf on Y to one on X.
    """

    def __init__(self, phi):
        self.phi = phi
        self.Q = phi.Q

    def star(self, lam):
        """lam . phi: presheaf on the codomain pulled back to the domain."""
        Q, X, Y = self.Q, self.phi.dom, self.phi.cod
        values = []
        for x in X.elements:
            p = X.t(x)
            elems = [Q.compose_elems(p, Y.t(y), lam.ptype,
                                     lam.values[i], self.phi.entries[x, y])
                     for i, y in enumerate(Y.elements)]
            values.append(Q.homset(p, lam.ptype).join(elems))
        return Presheaf(lam.ptype, tuple(values))

    def lower(self, mu):
        """mu <- phi: presheaf on the domain pushed to the codomain."""
        Q, X, Y = self.Q, self.phi.dom, self.phi.cod
        values = []
        for y in Y.elements:
            elems = [Q.limpl(Arrow(X.t(x), mu.ptype, mu.values[i]),
                             self.phi.arrow(x, y)).elem
                     for i, x in enumerate(X.elements)]
            values.append(Q.homset(Y.t(y), mu.ptype).meet(elems))
        return Presheaf(mu.ptype, tuple(values))

    def dag(self, mu):
        """phi . mu: copresheaf on the domain pushed to the codomain."""
        Q, X, Y = self.Q, self.phi.dom, self.phi.cod
        values = []
        for y in Y.elements:
            elems = [Q.compose_elems(mu.ptype, X.t(x), Y.t(y),
                                     self.phi.entries[x, y], mu.values[i])
                     for i, x in enumerate(X.elements)]
            values.append(Q.homset(mu.ptype, Y.t(y)).join(elems))
        return Presheaf(mu.ptype, tuple(values))

    def dag_lower(self, lam):
        """phi -> lam: copresheaf on the codomain pulled to the domain."""
        Q, X, Y = self.Q, self.phi.dom, self.phi.cod
        values = []
        for x in X.elements:
            elems = [Q.rimpl(self.phi.arrow(x, y),
                             Arrow(lam.ptype, Y.t(y), lam.values[i])).elem
                     for i, y in enumerate(Y.elements)]
            values.append(Q.homset(lam.ptype, X.t(x)).meet(elems))
        return Presheaf(lam.ptype, tuple(values))


def kan_adjoints(phi):
    return KanAdjoints(phi)


@dataclass
class ImageFunctors:
    """The four image maps of a functor f: X -> Y on (co)presheaves:
    ``fwd`` (direct image, left adjoint to ``bwd``) and ``co_bwd``
    (inverse image on copresheaves, left adjoint to ``co_fwd``)."""

    fwd: object   # presheaf on X  -> presheaf on Y
    bwd: object   # presheaf on Y  -> presheaf on X
    co_fwd: object  # copresheaf on X -> copresheaf on Y
    co_bwd: object  # copresheaf on Y -> copresheaf on X


def image_functors(f):
    from .category import graph_cograph
    graph, cograph = graph_cograph(f)
    kg, kc = KanAdjoints(graph), KanAdjoints(cograph)
    return ImageFunctors(fwd=kc.star, bwd=kg.star,
                         co_fwd=kg.dag, co_bwd=kc.dag)


def yoneda(X, x):
    """The representable presheaf X(-, x)."""
    return Presheaf(X.t(x), tuple(X.h(x2, x) for x2 in X.elements))


def co_yoneda(X, x):
    """The corepresentable copresheaf X(x, -)."""
    return Presheaf(X.t(x), tuple(X.h(x, x2) for x2 in X.elements))


@dataclass
class YonedaPair:
    to_presheaves: QFunctor
    to_copresheaves: QFunctor
    report: Report


def yoneda_pair(X, PX, PdX):
    """The Yoneda embeddings into the (co)presheaf categories, with a
    report validating full faithfulness and the pointwise Yoneda
    identity PX(y x, mu) = mu(x)."""
    rep = Report("yoneda")
    yf = QFunctor(X, PX, {x: yoneda(X, x) for x in X.elements})
    cyf = QFunctor(X, PdX, {x: co_yoneda(X, x) for x in X.elements})
    for f, name in ((yf, "presheaf"), (cyf, "copresheaf")):
        chk = check_functor(f)
        if not chk.is_functor:
            rep.add(f"{name} embedding functor", chk.witness)
        elif not chk.fully_faithful:
            rep.add(f"{name} embedding", "not fully faithful")
    for mu in PX.elements:
        for x in X.elements:
            if PX.h(yf(x), mu) != PX.val(mu, x):
                rep.add("yoneda identity",
                        f"PX(y {x!r}, {mu!r}) != {mu!r}({x!r})")
    for lam in PdX.elements:
        for x in X.elements:
            if PdX.h(lam, cyf(x)) != PdX.val(lam, x):
                rep.add("co-yoneda identity",
                        f"PdX({lam!r}, y' {x!r}) != {lam!r}({x!r})")
    return YonedaPair(yf, cyf, rep)


class CompletenessTools:
    """Suprema, infima, tensors and cotensors in a category, found by
    brute-force search against their defining hom equations."""

    def __init__(self, X, PX, PdX):
        self.X = X
        self.PX = PX
        self.PdX = PdX

    def sup(self, mu):
        """An element s with X(s, -) = X <- mu, or None."""
        X, Q = self.X, self.X.Q
        for s in X.elements:
            if X.t(s) != mu.ptype:
                continue
            ok = True
            for y in X.elements:
                want = Q.homset(mu.ptype, X.t(y)).meet(
                    [Q.limpl(Arrow(X.t(x), X.t(y), X.h(x, y)),
                             Arrow(X.t(x), mu.ptype, mu.values[i])).elem
                     for i, x in enumerate(X.elements)])
                if X.h(s, y) != want:
                    ok = False
                    break
            if ok:
                return s
        return None

    def inf(self, lam):
        """An element s with X(-, s) = lam -> X, or None."""
        X, Q = self.X, self.X.Q
        for s in X.elements:
            if X.t(s) != lam.ptype:
                continue
            ok = True
            for y in X.elements:
                want = Q.homset(X.t(y), lam.ptype).meet(
                    [Q.rimpl(Arrow(lam.ptype, X.t(x), lam.values[i]),
                             Arrow(X.t(y), X.t(x), X.h(y, x))).elem
                     for i, x in enumerate(X.elements)])
                if X.h(y, s) != want:
                    ok = False
                    break
            if ok:
                return s
        return None

    def tensor(self, u, x):
        """An element t with X(t, -) = X(x, -) <- u for u: |x| -> q,
        or None."""
        X, Q = self.X, self.X.Q
        if u.src != X.t(x):
            raise ConstructionError("tensor weight has the wrong source")
        for t in X.elements:
            if X.t(t) != u.tgt:
                continue
            if all(X.h(t, y) == Q.limpl(X.arrow(x, y), u).elem
                   for y in X.elements):
                return t
        return None

    def cotensor(self, v, x):
        """An element t with X(-, t) = v -> X(-, x) for v: q -> |x|,
        or None."""
        X, Q = self.X, self.X.Q
        if v.tgt != X.t(x):
            raise ConstructionError("cotensor weight has the wrong target")
        for t in X.elements:
            if X.t(t) != v.src:
                continue
            if all(X.h(y, t) == Q.rimpl(v, X.arrow(y, x)).elem
                   for y in X.elements):
                return t
        return None

    def is_tensored(self):
        X, Q = self.X, self.X.Q
        return all(self.tensor(Arrow(X.t(x), q, u), x) is not None
                   for x in X.elements for q in Q.objects
                   for u in Q.homset(X.t(x), q).elements)

    def is_cotensored(self):
        X, Q = self.X, self.X.Q
        return all(self.cotensor(Arrow(q, X.t(x), v), x) is not None
                   for x in X.elements for q in Q.objects
                   for v in Q.homset(q, X.t(x)).elements)

    def is_order_complete(self):
        """Every subset of every same-type fiber has a join in the
        underlying preorder."""
        X = self.X
        pairs, _ = underlying_preorder(X)
        pairset = set(pairs)
        for q in X.Q.objects:
            fiber = X.carrier.fiber(q)
            for k in range(len(fiber) + 1):
                for subset in itertools.combinations(fiber, k):
                    ub = [c for c in fiber
                          if all((s, c) in pairset for s in subset)]
                    if not any(all((u, v) in pairset for v in ub) for u in ub):
                        return False
        return True

    def is_complete(self):
        """Whether every presheaf has a supremum; asserted to agree
        with the criterion tensored + cotensored + order-complete."""
        direct = all(self.sup(mu) is not None for mu in self.PX.elements)
        by_parts = (self.is_tensored() and self.is_cotensored()
                    and self.is_order_complete())
        assert direct == by_parts, "completeness criteria disagree"
        codirect = all(self.inf(lam) is not None for lam in self.PdX.elements)
        assert direct == codirect, \
            "completeness and cocompleteness disagree"
        return direct


def completeness_tools(X, cap=DEFAULT_CAP, PX=None, PdX=None):
    if PX is None:
        PX = presheaf_category(X, cap)
    if PdX is None:
        PdX = copresheaf_category(X, cap)
    return CompletenessTools(X, PX, PdX)


def dist_to_functor(phi, X, Y, PX):
    """Transpose a distributor phi: X -/-> Y into the functor
    Y -> PX sending y to the column phi(-, y)."""
    mapping = {}
    for y in Y.elements:
        col = Presheaf(Y.t(y), tuple(phi.entries[x, y] for x in X.elements))
        if col not in PX.carrier:
            raise ConstructionError(
                f"column at {y!r} is not a presheaf on the domain")
        mapping[y] = col
    return QFunctor(Y, PX, mapping)


def functor_to_dist(f):
    """Transpose a functor f: Y -> PX back into the distributor with
    entries (f y)(x)."""
    Y, PX = f.dom, f.cod
    X = PX.base
    entries = {(x, y): PX.val(f(y), x)
               for x in X.elements for y in Y.elements}
    return QRelation(PX.Q, X.carrier, Y.carrier, entries)
