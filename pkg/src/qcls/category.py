"""Typed sets, relations, categories and functors enriched in a quantaloid.

A typed set assigns to each element an object of the base quantaloid.
A relation between typed sets is a total matrix of hom elements, with
composition and both implications computed by the usual matrix formulas
(joins of composites, meets of implications).  A category is a typed set
with a reflexive and transitive hom relation on itself.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .algebra import Arrow, ConstructionError, Quantaloid, Report


class TypedSet:
    """A finite set whose elements carry types (quantaloid objects)."""

    def __init__(self, elements, typeof):
        self.elements = tuple(elements)
        if len(set(self.elements)) != len(self.elements):
            raise ConstructionError("duplicate typed-set elements")
        for x in self.elements:
            if x not in typeof:
                raise ConstructionError(f"untyped element {x!r}")
        self.typeof = {x: typeof[x] for x in self.elements}
        self._elemset = frozenset(self.elements)

    def t(self, x):
        return self.typeof[x]

    def fiber(self, q):
        return tuple(x for x in self.elements if self.typeof[x] == q)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self._elemset

    def __eq__(self, other):
        if not isinstance(other, TypedSet):
            return NotImplemented
        return self.elements == other.elements and self.typeof == other.typeof

    def __repr__(self):
        return f"TypedSet({list(self.elements)})"


def typed_over_quantale(elements):
    """A typed set over a one-object quantaloid (everything typed "*")."""
    return TypedSet(elements, {x: "*" for x in elements})


class QRelation:
    """A relation between typed sets: a total matrix of hom elements,
    ``entries[x, y]`` living in hom(|x|, |y|)."""

    def __init__(self, Q, dom, cod, entries):
        self.Q = Q
        self.dom = dom
        self.cod = cod
        self.entries = {}
        for x in dom.elements:
            for y in cod.elements:
                e = entries.get((x, y))
                if e is None:
                    raise ConstructionError(f"missing relation entry ({x},{y})")
                if e not in Q.homset(dom.t(x), cod.t(y)):
                    raise ConstructionError(
                        f"entry ({x},{y})={e} is not in "
                        f"hom({dom.t(x)},{cod.t(y)})")
                self.entries[x, y] = e

    @classmethod
    def from_partial(cls, Q, dom, cod, entries):
        """Build a relation, filling unspecified entries with bottom."""
        full = {}
        for x in dom.elements:
            for y in cod.elements:
                e = entries.get((x, y))
                if e is None:
                    e = Q.homset(dom.t(x), cod.t(y)).bottom
                full[x, y] = e
        return cls(Q, dom, cod, full)

    def value(self, x, y):
        return self.entries[x, y]

    def arrow(self, x, y):
        return Arrow(self.dom.t(x), self.cod.t(y), self.entries[x, y])

    def leq(self, other):
        if self.dom != other.dom or self.cod != other.cod:
            raise ConstructionError("cannot compare relations of different shape")
        return all(
            self.Q.homset(self.dom.t(x), self.cod.t(y)).leq(
                self.entries[x, y], other.entries[x, y])
            for x in self.dom.elements for y in self.cod.elements)

    def __eq__(self, other):
        if not isinstance(other, QRelation):
            return NotImplemented
        return (self.Q == other.Q and self.dom == other.dom
                and self.cod == other.cod and self.entries == other.entries)

    def __repr__(self):
        return f"QRelation({len(self.dom)}x{len(self.cod)})"


def rel_identity(Q, X):
    """The identity relation on a typed set: the identity arrow on the
    diagonal and bottom elsewhere."""
    entries = {}
    for x, y in itertools.product(X.elements, repeat=2):
        if x == y:
            entries[x, y] = Q.unit[X.t(x)]
        else:
            entries[x, y] = Q.homset(X.t(x), X.t(y)).bottom
    return QRelation(Q, X, X, entries)


def rel_compose(psi, phi):
    """Composite psi . phi of phi: X -/-> Y followed by psi: Y -/-> Z:
    entrywise the join over y of psi(y, z) . phi(x, y)."""
    if phi.cod != psi.dom:
        raise ConstructionError("non-composable relations")
    Q = phi.Q
    X, Y, Z = phi.dom, phi.cod, psi.cod
    entries = {}
    for x in X.elements:
        for z in Z.elements:
            p, r = X.t(x), Z.t(z)
            elems = [Q.compose_elems(p, Y.t(y), r, psi.entries[y, z],
                                     phi.entries[x, y])
                     for y in Y.elements]
            entries[x, z] = Q.homset(p, r).join(elems)
    return QRelation(Q, X, Z, entries)


def rel_limpl(xi, phi):
    """Left implication xi <- phi for xi: X -/-> Z and phi: X -/-> Y:
    the largest psi: Y -/-> Z with psi . phi <= xi, entrywise the meet
    over x of xi(x, z) <- phi(x, y)."""
    if xi.dom != phi.dom:
        raise ConstructionError("left implication shape mismatch")
    Q = xi.Q
    X, Y, Z = phi.dom, phi.cod, xi.cod
    entries = {}
    for y in Y.elements:
        for z in Z.elements:
            elems = [Q.limpl(xi.arrow(x, z), phi.arrow(x, y)).elem
                     for x in X.elements]
            entries[y, z] = Q.homset(Y.t(y), Z.t(z)).meet(elems)
    return QRelation(Q, Y, Z, entries)


def rel_rimpl(psi, xi):
    """Right implication psi -> xi for psi: Y -/-> Z and xi: X -/-> Z:
    the largest phi: X -/-> Y with psi . phi <= xi, entrywise the meet
    over z of psi(y, z) -> xi(x, z)."""
    if psi.cod != xi.cod:
        raise ConstructionError("right implication shape mismatch")
    Q = psi.Q
    X, Y, Z = xi.dom, psi.dom, psi.cod
    entries = {}
    for x in X.elements:
        for y in Y.elements:
            elems = [Q.rimpl(psi.arrow(y, z), xi.arrow(x, z)).elem
                     for z in Z.elements]
            entries[x, y] = Q.homset(X.t(x), Y.t(y)).meet(elems)
    return QRelation(Q, X, Y, entries)


def rel_join(rels):
    rels = list(rels)
    if not rels:
        raise ConstructionError("empty join of relations needs a shape")
    Q, X, Y = rels[0].Q, rels[0].dom, rels[0].cod
    entries = {}
    for x in X.elements:
        for y in Y.elements:
            entries[x, y] = Q.homset(X.t(x), Y.t(y)).join(
                [r.entries[x, y] for r in rels])
    return QRelation(Q, X, Y, entries)


def rel_meet(rels, Q=None, dom=None, cod=None):
    rels = list(rels)
    if not rels:
        if Q is None or dom is None or cod is None:
            raise ConstructionError("empty meet of relations needs a shape")
    else:
        Q, dom, cod = rels[0].Q, rels[0].dom, rels[0].cod
    entries = {}
    for x in dom.elements:
        for y in cod.elements:
            entries[x, y] = Q.homset(dom.t(x), cod.t(y)).meet(
                [r.entries[x, y] for r in rels])
    return QRelation(Q, dom, cod, entries)


@dataclass
class QRelOps:
    """Quantaloid-style operations on relations over a fixed base."""

    Q: Quantaloid

    def identity(self, X):
        return rel_identity(self.Q, X)

    compose = staticmethod(rel_compose)
    limpl = staticmethod(rel_limpl)
    rimpl = staticmethod(rel_rimpl)
    join = staticmethod(rel_join)
    meet = staticmethod(rel_meet)


def qrel_view(Q):
    return QRelOps(Q)


class QCategory:
    """A category enriched in a quantaloid: a typed set with a hom
    relation that is reflexive (identities below the diagonal) and
    transitive (composition below the hom)."""

    def __init__(self, Q, carrier, hom):
        if hom.dom != carrier or hom.cod != carrier:
            raise ConstructionError("hom relation does not match the carrier")
        self.Q = Q
        self.carrier = carrier
        self.hom = hom
        self._index = {x: i for i, x in enumerate(carrier.elements)}

    @property
    def elements(self):
        return self.carrier.elements

    def t(self, x):
        return self.carrier.t(x)

    def index(self, x):
        return self._index[x]

    def h(self, x, y):
        return self.hom.entries[x, y]

    def arrow(self, x, y):
        return self.hom.arrow(x, y)

    def __eq__(self, other):
        if not isinstance(other, QCategory):
            return NotImplemented
        return (self.Q == other.Q and self.carrier == other.carrier
                and self.hom == other.hom)

    def __repr__(self):
        return f"QCategory({list(self.elements)})"


def discrete_category(Q, tset):
    """The discrete category on a typed set: hom is the identity relation."""
    return QCategory(Q, tset, rel_identity(Q, tset))


def validate_category(X):
    """Check reflexivity and transitivity of the hom relation."""
    rep = Report("category")
    Q = X.Q
    for x in X.elements:
        q = X.t(x)
        if not Q.homset(q, q).leq(Q.unit[q], X.h(x, x)):
            rep.add("reflexivity", f"identity on {x!r} not below hom({x!r},{x!r})")
    for x, y, z in itertools.product(X.elements, repeat=3):
        comp = Q.compose(X.arrow(y, z), X.arrow(x, y))
        if not Q.leq(comp, X.arrow(x, z)):
            rep.add("transitivity",
                    f"hom({y!r},{z!r}).hom({x!r},{y!r}) = {comp.elem} not "
                    f"below hom({x!r},{z!r}) = {X.h(x, z)}")
    return rep


def underlying_preorder(X):
    """The underlying preorder: x <= y iff x and y have the same type q
    and the identity on q is below hom(x, y).  Returns the pairs in
    carrier order together with a separatedness flag (no two distinct
    elements isomorphic)."""
    Q = X.Q
    pairs = []
    for x, y in itertools.product(X.elements, repeat=2):
        if X.t(x) == X.t(y):
            q = X.t(x)
            if Q.homset(q, q).leq(Q.unit[q], X.h(x, y)):
                pairs.append((x, y))
    pairset = set(pairs)
    separated = all(not (x != y and (x, y) in pairset and (y, x) in pairset)
                    for x, y in pairset)
    return pairs, separated


def full_subcategory(X, elems):
    """The full subcategory of X on the given elements (kept in the
    order supplied)."""
    sub = TypedSet(elems, {x: X.t(x) for x in elems})
    entries = {(x, y): X.h(x, y)
               for x, y in itertools.product(sub.elements, repeat=2)}
    return QCategory(X.Q, sub, QRelation(X.Q, sub, sub, entries))


@dataclass
class QFunctor:
    """A type-preserving map between categories (functoriality is
    checked by :func:`check_functor`)."""

    dom: QCategory
    cod: QCategory
    mapping: dict

    def __call__(self, x):
        return self.mapping[x]

    def __eq__(self, other):
        if not isinstance(other, QFunctor):
            return NotImplemented
        return (self.dom == other.dom and self.cod == other.cod
                and self.mapping == other.mapping)


def compose_functors(g, f):
    return QFunctor(f.dom, g.cod, {x: g(f(x)) for x in f.dom.elements})


@dataclass
class FunctorCheck:
    is_functor: bool
    fully_faithful: bool
    witness: str | None = None


def check_functor(f):
    """Check type preservation, the functor inequality
    hom(x, y) <= hom(fx, fy), and full faithfulness (equality)."""
    X, Y = f.dom, f.cod
    Q = X.Q
    for x in X.elements:
        fx = f(x)
        if fx not in Y.carrier:
            return FunctorCheck(False, False, f"{x!r} maps outside the codomain")
        if X.t(x) != Y.t(fx):
            return FunctorCheck(False, False,
                                f"type of {x!r} changes from {X.t(x)} to "
                                f"{Y.t(fx)}")
    is_functor = True
    witness = None
    for x, y in itertools.product(X.elements, repeat=2):
        lat = Q.homset(X.t(x), X.t(y))
        if not lat.leq(X.h(x, y), Y.h(f(x), f(y))):
            is_functor = False
            witness = f"hom({x!r},{y!r}) not below hom(f{x!r},f{y!r})"
            break
    fully_faithful = is_functor and all(
        X.h(x, y) == Y.h(f(x), f(y))
        for x, y in itertools.product(X.elements, repeat=2))
    return FunctorCheck(is_functor, fully_faithful, witness)


def check_adjunction(f, g):
    """Decide whether f: X -> Y is left adjoint to g: Y -> X, via the
    hom formula Y(fx, y) = X(x, gy) and independently via the
    unit/counit inequalities in the underlying preorders; asserts the
    two verdicts agree."""
    X, Y = f.dom, f.cod
    if g.dom != Y or g.cod != X:
        raise ConstructionError("adjunction candidates are not opposed")
    if not check_functor(f).is_functor or not check_functor(g).is_functor:
        raise ConstructionError("adjunction candidates must be functors")
    by_hom = all(Y.h(f(x), y) == X.h(x, g(y))
                 for x in X.elements for y in Y.elements)
    xpairs, _ = underlying_preorder(X)
    ypairs, _ = underlying_preorder(Y)
    xpairs, ypairs = set(xpairs), set(ypairs)
    unit = all((x, g(f(x))) in xpairs for x in X.elements)
    counit = all((f(g(y)), y) in ypairs for y in Y.elements)
    by_unit = unit and counit
    assert by_hom == by_unit, "adjunction criteria disagree"
    return by_hom


def graph_cograph(f):
    """The graph f_nat: X -/-> Y with entries Y(fx, y), and the cograph
    f^nat: Y -/-> X with entries Y(y, fx)."""
    X, Y = f.dom, f.cod
    graph = QRelation(X.Q, X.carrier, Y.carrier,
                      {(x, y): Y.h(f(x), y)
                       for x in X.elements for y in Y.elements})
    cograph = QRelation(X.Q, Y.carrier, X.carrier,
                        {(y, x): Y.h(y, f(x))
                         for y in Y.elements for x in X.elements})
    return graph, cograph


def is_distributor(X, Y, phi):
    """Whether phi: X -/-> Y is a bimodule: Y . phi . X = phi."""
    if phi.dom != X.carrier or phi.cod != Y.carrier:
        raise ConstructionError("relation does not match the categories")
    return rel_compose(Y.hom, rel_compose(phi, X.hom)) == phi


def bimodule_closure(X, Y, phi):
    """Y . phi . X, the least distributor above a relation phi."""
    return rel_compose(Y.hom, rel_compose(phi, X.hom))


def transitive_reflexive_hom(Q, tset, entries):
    """The least reflexive transitive hom relation above the given
    entries: join with the identity, then iterate r := r v r.r to a
    fixed point."""
    rel = rel_join([QRelation.from_partial(Q, tset, tset, entries),
                    rel_identity(Q, tset)])
    while True:
        nxt = rel_join([rel, rel_compose(rel, rel)])
        if nxt == rel:
            return QCategory(Q, tset, rel)
        rel = nxt
