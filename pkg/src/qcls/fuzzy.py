"""Fuzzy sets, preorders and closure spaces over a divisible quantale.

A fuzzy set over a divisible quantale K is a typed set over the
back-diagonal quantaloid of K: each element carries its membership
degree as its type.  Preordered fuzzy sets are exactly the enriched
categories, potential fuzzy subsets are exactly the presheaves on the
discrete fuzzy set, and fuzzy closure spaces are exactly closure spaces
over the back-diagonal quantaloid.  Every closed-form formula used here
is checked against the generic enriched construction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .algebra import (Arrow, ConstructionError, DEFAULT_CAP, Report, build_dq,
                      is_divisible)
from .category import (QCategory, QRelation, TypedSet, discrete_category,
                       validate_category)
from .closure import (ClosureSpace, from_closed_system, specialization,
                      validate_closure_space)
from .presheaf import (Presheaf, enumerate_presheaves, presheaf_category,
                       presheaf_hom)
from .reports import LawReport


def fuzzy_set(DQ, membership):
    """A fuzzy set: elements typed by their membership degree."""
    for x, m in membership.items():
        if m not in DQ.objects:
            raise ConstructionError(f"membership {m!r} of {x!r} is not a "
                                    f"quantale element")
    return TypedSet(list(membership), membership)


@dataclass
class FuzzyPreorderCheck:
    report: Report
    is_global: bool
    category: QCategory | None


def validate_pofs(K, DQ, membership, alpha):
    """Validate a preordered fuzzy set (X, alpha) given by a membership
    map and a table alpha of degrees.

    Checks, via closed quantale formulas: alpha(x, y) is below the
    memberships of both arguments, alpha(x, x) equals the membership,
    and (alpha(y, z) / m y) & alpha(x, y) <= alpha(x, z).  The verdict
    is asserted to agree with validating the corresponding enriched
    category over the back-diagonal quantaloid.
    """
    lat = K.lattice
    rep = Report("preordered fuzzy set")
    elems = list(membership)
    for x, y in itertools.product(elems, repeat=2):
        a = alpha[x, y]
        if not lat.leq(a, lat.meet((membership[x], membership[y]))):
            rep.add("boundedness",
                    f"alpha({x!r},{y!r}) = {a} exceeds the memberships")
    bounded = rep.ok
    for x in elems:
        if alpha[x, x] != membership[x]:
            rep.add("reflexivity",
                    f"alpha({x!r},{x!r}) = {alpha[x, x]} differs from the "
                    f"membership {membership[x]}")
    for x, y, z in itertools.product(elems, repeat=3):
        lhs = K.mul(K.rdiv(alpha[y, z], membership[y]), alpha[x, y])
        if not lat.leq(lhs, alpha[x, z]):
            rep.add("transitivity",
                    f"(alpha({y!r},{z!r})/m) & alpha({x!r},{y!r}) = {lhs} "
                    f"not below alpha({x!r},{z!r})")
    cat = None
    if bounded:
        ts = fuzzy_set(DQ, membership)
        hom = QRelation(DQ, ts, ts,
                        {(x, y): alpha[x, y]
                         for x, y in itertools.product(elems, repeat=2)})
        cat = QCategory(DQ, ts, hom)
        assert validate_category(cat).ok == rep.ok, \
            "fuzzy preorder laws disagree with the enriched category laws"
    is_global = all(membership[x] == lat.top for x in elems)
    return FuzzyPreorderCheck(rep, is_global, cat)


def fuzzy_powerset(DQ, tset, cap=DEFAULT_CAP):
    """The fuzzy powerset: the presheaf category of the discrete
    category on a fuzzy set."""
    return presheaf_category(discrete_category(DQ, tset), cap)


def potential_subsets(K, membership):
    """All potential fuzzy subsets by the closed-form bound: pairs of a
    potential degree q and a table n with n x <= m x meet q, listed in
    the presheaf enumeration order."""
    lat = K.lattice
    elems = list(membership)
    out = []
    for q in lat.elements:
        cands = [[u for u in lat.elements
                  if lat.leq(u, lat.meet((membership[x], q)))]
                 for x in elems]
        for values in itertools.product(*cands):
            out.append(Presheaf(q, tuple(values)))
    return out


def eq_hom(K, membership, mu, nu):
    """The closed-form hom between potential fuzzy subsets (l, q) and
    (l', q'): q meet q' meet the meet over x of l'x / (q \\ l x)."""
    lat = K.lattice
    elems = list(membership)
    parts = [lat.meet((mu.ptype, nu.ptype))]
    for i, _ in enumerate(elems):
        parts.append(K.rdiv(nu.values[i], K.ldiv(mu.ptype, mu.values[i])))
    return lat.meet(parts)


def check_powerset_formulas(K, DQ, membership, cap=DEFAULT_CAP):
    """Verify that the closed-form potential-subset bound and hom
    formula agree with the generic presheaf enumeration and hom."""
    rep = Report("fuzzy powerset")
    ts = fuzzy_set(DQ, membership)
    X0 = discrete_category(DQ, ts)
    generic = enumerate_presheaves(X0, cap)
    closed_form = potential_subsets(K, membership)
    if generic != closed_form:
        rep.add("potential subsets",
                f"{len(generic)} presheaves vs {len(closed_form)} closed-form "
                f"subsets")
        return rep
    for mu, nu in itertools.product(generic, repeat=2):
        got = presheaf_hom(X0, mu, nu)
        want = eq_hom(K, membership, mu, nu)
        if got != want:
            rep.add("hom formula",
                    f"S({mu!r},{nu!r}) = {got} but the closed form gives {want}")
    return rep


def fuzzy_closure_report(K, S):
    """Check the fuzzy description of a closure operator on a fuzzy
    powerset: degree preservation, hom preservation in the closed-form
    hom, extensivity and idempotence.  The verdict is asserted to agree
    with the generic closure-space validation."""
    rep = Report("fuzzy closure space")
    lat = K.lattice
    X = S.base
    membership = {x: X.t(x) for x in X.elements}
    for mu in S.PX.elements:
        cmu = S.c(mu)
        if cmu.ptype != mu.ptype:
            rep.add("degree preservation",
                    f"c{mu!r} has degree {cmu.ptype}")
    if rep.ok:
        for mu, nu in itertools.product(S.PX.elements, repeat=2):
            before = eq_hom(K, membership, mu, nu)
            after = eq_hom(K, membership, S.c(mu), S.c(nu))
            if not lat.leq(before, after):
                rep.add("hom preservation",
                        f"S({mu!r},{nu!r}) = {before} not below {after}")
        for mu in S.PX.elements:
            cmu = S.c(mu)
            if not all(lat.leq(mu.values[i], cmu.values[i])
                       for i in range(len(mu.values))):
                rep.add("extensivity", f"{mu!r} not below c{mu!r}")
            if S.c(cmu) != cmu:
                rep.add("idempotence", f"cc{mu!r} differs from c{mu!r}")
    assert rep.ok == validate_closure_space(S).ok, \
        "fuzzy closure laws disagree with the generic closure-space laws"
    return rep


def fuzzy_specialization(K, S):
    """The specialization preorder of a fuzzy closure space by the
    closed formula alpha(x, y) = m x meet m y meet the meet over closed
    (n, q) of (n y / m y) \\ n x; asserted to equal the generic
    specialization category."""
    lat = K.lattice
    X = S.base
    elems = X.elements
    alpha = {}
    for x, y in itertools.product(elems, repeat=2):
        mx, my = X.t(x), X.t(y)
        parts = [lat.meet((mx, my))]
        for mu in S.closed():
            ny = mu.values[X.index(y)]
            nx = mu.values[X.index(x)]
            parts.append(K.ldiv(K.rdiv(ny, my), nx))
        alpha[x, y] = lat.meet(parts)
    generic = specialization(S)
    assert {k: v for k, v in generic.hom.entries.items()} == alpha, \
        "fuzzy specialization formula disagrees with the generic one"
    return generic


def builtin_suite(K, name, cap=DEFAULT_CAP, max_points=2):
    """Run the fuzzy law checks over one divisible builtin quantale:
    divisibility, back-diagonal quantaloid laws, powerset formulas on
    all fuzzy sets with up to ``max_points`` elements, and closure /
    specialization formulas on generated spaces."""
    from .algebra import validate_quantaloid
    out = []
    res = is_divisible(K)
    out.append(LawReport("fuzzy", f"{name} divisible", res.divisible,
                         res.witness))
    if not res.divisible:
        return out
    DQ = build_dq(K)
    rep = validate_quantaloid(DQ)
    out.append(LawReport("fuzzy", f"dq({name}) quantaloid laws", rep.ok,
                         rep.violations[0] if rep.violations else None))
    carrier = K.lattice.elements
    names = "xyz"
    memberships = []
    for n in range(min(max_points, len(names)) + 1):
        for ms in itertools.product(carrier, repeat=n):
            memberships.append(dict(zip(names[:n], ms)))
    for membership in memberships:
        label = ",".join(f"{x}:{m}" for x, m in membership.items()) or "empty"
        rep = check_powerset_formulas(K, DQ, membership, cap)
        out.append(LawReport("fuzzy", f"{name} powerset [{label}]", rep.ok,
                             rep.violations[0] if rep.violations else None))
    # closure and specialization formulas on singleton-generated spaces
    for membership in memberships:
        if len(membership) != 1:
            continue
        label = ",".join(f"{x}:{m}" for x, m in membership.items())
        ts = fuzzy_set(DQ, membership)
        X0 = discrete_category(DQ, ts)
        PX = presheaf_category(X0, cap)
        for gen in PX.elements:
            S = from_closed_system(X0, [gen], cap=cap, PX=PX)
            rep = fuzzy_closure_report(K, S)
            fuzzy_specialization(K, S)
            out.append(LawReport(
                "fuzzy", f"{name} closure [{label}] gen {gen!r}", rep.ok,
                rep.violations[0] if rep.violations else None))
    return out
