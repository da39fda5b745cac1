"""The QDF definition-file format: parsing and canonical serialization.

QDF is line-oriented and case-sensitive; ``#`` starts a comment.  A file
is a sequence of named blocks, each terminated by END:

    QUANTALE name
      ELEMENTS e1 e2 ...
      ORDER e1<=e2 ...        # reflexive-transitive closure is taken
      MUL a*b=c ...           # must be total
      UNIT e
    END
    QUANTALOID name
      OBJECTS p q ...
      HOM p q: e1 e2 ...
      ORDER p q: a<=b ...
      COMP (q r)(p q): v.u=w ...
      ID q=e
    END
    TYPEDSET name OVER qname: x:p y:q ... END
    CATEGORY name ON setname: HOM x y=e ... END
      # omitted entries default to bottom, the diagonal to the identity
    RELATION name FROM a TO b: x y=e ... END
    CLOSURE name ON catname:
      MODE exact|generate
      CLOSED [q| x=e, ...] ...
      TABLE [q| x=e, ...] => [q| x=e, ...]
    END

Quantale and quantaloid references (in TYPEDSET's OVER) resolve to
blocks of the document, to builtin quantale names, or to ``dq(name)``
for the back-diagonal quantaloid of a divisible quantale.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field

from .algebra import (ConstructionError, FiniteLattice, Quantale, Quantaloid,
                      build_dq, builtin_quantale,
                      reflexive_transitive_closure)
from .category import QCategory, QRelation, TypedSet
from .presheaf import Presheaf


class QdfError(Exception):
    """A parse or resolution error, carrying the offending line number."""

    def __init__(self, message, line=None):
        self.message = message
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message}")


@dataclass
class ClosureBlock:
    name: str
    on: str
    mode: str
    closed: list
    table: list


@dataclass
class QdfDocument:
    quantales: dict = field(default_factory=dict)
    quantaloids: dict = field(default_factory=dict)
    typedsets: dict = field(default_factory=dict)
    typedset_over: dict = field(default_factory=dict)
    categories: dict = field(default_factory=dict)
    category_on: dict = field(default_factory=dict)
    relations: dict = field(default_factory=dict)
    relation_between: dict = field(default_factory=dict)
    closures: dict = field(default_factory=dict)
    order: list = field(default_factory=list)

    def resolve_quantaloid(self, name, line=None):
        """Resolve a quantaloid/quantale reference: document blocks,
        builtins, or dq(name)."""
        if name in self.quantaloids:
            return self.quantaloids[name]
        if name in self.quantales:
            return self.quantales[name]
        m = re.fullmatch(r"dq\((\w+)\)", name)
        if m:
            inner = self.resolve_quantaloid(m.group(1), line)
            if not isinstance(inner, Quantale):
                raise QdfError(f"dq of a non-quantale {m.group(1)!r}", line)
            try:
                return build_dq(inner)
            except ConstructionError as e:
                raise QdfError(str(e), line) from None
        try:
            return builtin_quantale(name)
        except KeyError:
            raise QdfError(f"unknown quantaloid or quantale {name!r}",
                           line) from None

    def resolve_quantale(self, name, line=None):
        got = self.resolve_quantaloid(name, line)
        if not isinstance(got, Quantale):
            raise QdfError(f"{name!r} is not a quantale", line)
        return got

    def __eq__(self, other):
        if not isinstance(other, QdfDocument):
            return NotImplemented
        return (self.quantales == other.quantales
                and self.quantaloids == other.quantaloids
                and self.typedsets == other.typedsets
                and self.typedset_over == other.typedset_over
                and self.categories == other.categories
                and self.category_on == other.category_on
                and self.relations == other.relations
                and self.relation_between == other.relation_between
                and {k: (v.on, v.mode, v.closed, v.table)
                     for k, v in self.closures.items()}
                == {k: (v.on, v.mode, v.closed, v.table)
                    for k, v in other.closures.items()}
                and self.order == other.order)


def _strip(line):
    if "#" in line:
        line = line[:line.index("#")]
    return line.strip()


def _parse_presheaf_literal(text, line):
    """Parse ``[q| x=e, y=e]``; omitted entries default to bottom when
    the literal is instantiated against a category."""
    m = re.fullmatch(r"\[\s*([^|\]\s]+)\s*\|([^\]]*)\]", text.strip())
    if not m:
        raise QdfError(f"malformed presheaf literal {text!r}", line)
    ptype = m.group(1)
    entries = []
    body = m.group(2).strip()
    if body:
        for item in body.split(","):
            item = item.strip()
            em = re.fullmatch(r"(\S+)\s*=\s*(\S+)", item)
            if not em:
                raise QdfError(f"malformed presheaf entry {item!r}", line)
            entries.append((em.group(1), em.group(2)))
    return ptype, tuple(entries)


def _split_presheaf_literals(text, line):
    out = []
    depth = 0
    cur = ""
    for ch in text:
        if ch == "[":
            depth += 1
        if depth > 0:
            cur += ch
        if ch == "]":
            depth -= 1
            if depth == 0:
                out.append(cur)
                cur = ""
        elif depth == 0 and ch not in " \t":
            raise QdfError(f"unexpected text {ch!r} outside a literal", line)
    if depth != 0:
        raise QdfError("unterminated presheaf literal", line)
    return out


def presheaf_from_literal(X, lit, line=None):
    """Instantiate a parsed literal against a category, filling omitted
    entries with bottom."""
    ptype, entries = lit
    if ptype not in X.Q.objects:
        raise QdfError(f"unknown type {ptype!r} in presheaf literal", line)
    table = dict(entries)
    for x, _ in entries:
        if x not in X.carrier:
            raise QdfError(f"unknown element {x!r} in presheaf literal", line)
    values = []
    for x in X.elements:
        lat = X.Q.homset(X.t(x), ptype)
        e = table.get(x, lat.bottom)
        if e not in lat:
            raise QdfError(f"value {e!r} at {x!r} is not in "
                           f"hom({X.t(x)},{ptype})", line)
        values.append(e)
    return Presheaf(ptype, tuple(values))


def presheaf_to_literal(X, mu):
    parts = []
    for i, x in enumerate(X.elements):
        lat = X.Q.homset(X.t(x), mu.ptype)
        if mu.values[i] != lat.bottom:
            parts.append(f"{x}={mu.values[i]}")
    return f"[{mu.ptype}| {', '.join(parts)}]"


class _Lines:
    def __init__(self, text):
        self.items = []
        for i, raw in enumerate(text.splitlines(), start=1):
            line = _strip(raw)
            if line:
                self.items.append((i, line))
        self.pos = 0

    def peek(self):
        return self.items[self.pos] if self.pos < len(self.items) else None

    def next(self):
        item = self.peek()
        if item is None:
            raise QdfError("unexpected end of file")
        self.pos += 1
        return item


def _block_body(lines, header_lineno):
    body = []
    while True:
        item = lines.peek()
        if item is None:
            raise QdfError("block is missing END", header_lineno)
        lineno, line = lines.next()
        if line == "END":
            return body
        body.append((lineno, line))


def _parse_quantale(name, body, header_lineno):
    elements = []
    order_pairs = []
    mul = {}
    unit = None
    for lineno, line in body:
        key, _, rest = line.partition(" ")
        if key == "ELEMENTS":
            elements.extend(rest.split())
        elif key == "ORDER":
            for tok in rest.split():
                m = re.fullmatch(r"(\S+?)<=(\S+)", tok)
                if not m:
                    raise QdfError(f"malformed order item {tok!r}", lineno)
                order_pairs.append((m.group(1), m.group(2)))
        elif key == "MUL":
            for tok in rest.split():
                m = re.fullmatch(r"(\S+?)\*(\S+?)=(\S+)", tok)
                if not m:
                    raise QdfError(f"malformed product item {tok!r}", lineno)
                mul[m.group(1), m.group(2)] = m.group(3)
        elif key == "UNIT":
            unit = rest.strip()
        else:
            raise QdfError(f"unknown quantale directive {key!r}", lineno)
    if not elements:
        raise QdfError(f"quantale {name!r} has no elements", header_lineno)
    if unit is None:
        raise QdfError(f"quantale {name!r} has no unit", header_lineno)
    known = set(elements)
    for a, b in order_pairs:
        if a not in known or b not in known:
            raise QdfError(f"order pair {a}<={b} mentions an unknown element",
                           header_lineno)
    closed = reflexive_transitive_closure(elements, order_pairs)
    for a, b in itertools.product(elements, repeat=2):
        if a != b and (a, b) in closed and (b, a) in closed:
            raise QdfError(f"order closure of {name!r} is not antisymmetric "
                           f"({a} and {b})", header_lineno)
    try:
        return Quantale(elements, sorted(closed), mul, unit)
    except ConstructionError as e:
        raise QdfError(str(e), header_lineno) from None


def _parse_quantaloid(name, body, header_lineno):
    objects = []
    hom_elems = {}
    hom_order = {}
    comp = {}
    unit = {}
    for lineno, line in body:
        key, _, rest = line.partition(" ")
        if key == "OBJECTS":
            objects.extend(rest.split())
        elif key in ("HOM", "ORDER"):
            m = re.fullmatch(r"(\S+)\s+(\S+)\s*:\s*(.*)", rest)
            if not m:
                raise QdfError(f"malformed {key} header", lineno)
            p, q, items = m.group(1), m.group(2), m.group(3)
            if key == "HOM":
                hom_elems.setdefault((p, q), []).extend(items.split())
            else:
                pairs = hom_order.setdefault((p, q), [])
                for tok in items.split():
                    om = re.fullmatch(r"(\S+?)<=(\S+)", tok)
                    if not om:
                        raise QdfError(f"malformed order item {tok!r}", lineno)
                    pairs.append((om.group(1), om.group(2)))
        elif key == "COMP":
            m = re.fullmatch(
                r"\(\s*(\S+)\s+(\S+)\s*\)\s*\(\s*(\S+)\s+(\S+)\s*\)\s*:\s*(.*)",
                rest)
            if not m:
                raise QdfError("malformed COMP header", lineno)
            q1, r1, p2, q2 = m.group(1), m.group(2), m.group(3), m.group(4)
            if q1 != q2:
                raise QdfError(f"COMP hom pairs ({q1} {r1})({p2} {q2}) do "
                               f"not compose", lineno)
            table = comp.setdefault((p2, q1, r1), {})
            for tok in m.group(5).split():
                cm = re.fullmatch(r"(\S+?)\.(\S+?)=(\S+)", tok)
                if not cm:
                    raise QdfError(f"malformed composition item {tok!r}",
                                   lineno)
                table[cm.group(1), cm.group(2)] = cm.group(3)
        elif key == "ID":
            for tok in rest.split():
                im = re.fullmatch(r"(\S+?)=(\S+)", tok)
                if not im:
                    raise QdfError(f"malformed identity item {tok!r}", lineno)
                unit[im.group(1)] = im.group(2)
        else:
            raise QdfError(f"unknown quantaloid directive {key!r}", lineno)
    hom = {}
    for p, q in itertools.product(objects, repeat=2):
        elems = hom_elems.get((p, q), [])
        pairs = reflexive_transitive_closure(elems, hom_order.get((p, q), []))
        try:
            hom[p, q] = FiniteLattice(elems, sorted(pairs))
        except ConstructionError as e:
            raise QdfError(f"hom({p},{q}): {e}", header_lineno) from None
    try:
        return Quantaloid(objects, hom, comp, unit)
    except ConstructionError as e:
        raise QdfError(str(e), header_lineno) from None


def parse_qdf(text):
    """Parse QDF text into a document of constructed objects.

    Shape problems (grammar, unknown names, non-total tables) raise
    :class:`QdfError`; algebraic laws are checked by the ``validate``
    command, not here.
    """
    doc = QdfDocument()
    lines = _Lines(text)
    while lines.peek() is not None:
        lineno, line = lines.next()
        kind, _, rest = line.partition(" ")
        if kind == "QUANTALE":
            name = rest.strip()
            if not name:
                raise QdfError("QUANTALE needs a name", lineno)
            if name in doc.quantales:
                raise QdfError(f"duplicate quantale {name!r}", lineno)
            body = _block_body(lines, lineno)
            doc.quantales[name] = _parse_quantale(name, body, lineno)
            doc.order.append(("QUANTALE", name))
        elif kind == "QUANTALOID":
            name = rest.strip()
            if not name:
                raise QdfError("QUANTALOID needs a name", lineno)
            if name in doc.quantaloids:
                raise QdfError(f"duplicate quantaloid {name!r}", lineno)
            body = _block_body(lines, lineno)
            doc.quantaloids[name] = _parse_quantaloid(name, body, lineno)
            doc.order.append(("QUANTALOID", name))
        elif kind == "TYPEDSET":
            m = re.fullmatch(r"(\S+)\s+OVER\s+(\S+)\s*:\s*(.*)", rest)
            if not m:
                raise QdfError("malformed TYPEDSET header", lineno)
            name, over, items = m.group(1), m.group(2), m.group(3)
            if name in doc.typedsets:
                raise QdfError(f"duplicate typed set {name!r}", lineno)
            Q = doc.resolve_quantaloid(over, lineno)
            toks = items.split()
            for ln, body_line in _block_body(lines, lineno):
                toks.extend(body_line.split())
            elements, typeof = [], {}
            for tok in toks:
                tm = re.fullmatch(r"([^:\s]+):(\S+)", tok)
                if not tm:
                    raise QdfError(f"malformed typed element {tok!r}", lineno)
                x, p = tm.group(1), tm.group(2)
                if p not in Q.objects:
                    raise QdfError(f"unknown type {p!r} for element {x!r}",
                                   lineno)
                elements.append(x)
                typeof[x] = p
            try:
                doc.typedsets[name] = TypedSet(elements, typeof)
            except ConstructionError as e:
                raise QdfError(str(e), lineno) from None
            doc.typedset_over[name] = over
            doc.order.append(("TYPEDSET", name))
        elif kind == "CATEGORY":
            m = re.fullmatch(r"(\S+)\s+ON\s+(\S+)\s*:\s*(.*)", rest)
            if not m:
                raise QdfError("malformed CATEGORY header", lineno)
            name, on, items = m.group(1), m.group(2), m.group(3)
            if name in doc.categories:
                raise QdfError(f"duplicate category {name!r}", lineno)
            if on not in doc.typedsets:
                raise QdfError(f"unknown typed set {on!r}", lineno)
            tset = doc.typedsets[on]
            Q = doc.resolve_quantaloid(doc.typedset_over[on], lineno)
            entries = {}
            hom_lines = []
            if items:
                hom_lines.append((lineno, items))
            for ln, body_line in _block_body(lines, lineno):
                key, _, body_rest = body_line.partition(" ")
                if key != "HOM":
                    raise QdfError(f"unknown category directive {key!r}", ln)
                hom_lines.append((ln, body_rest))
            for ln, text_items in hom_lines:
                toks = text_items.split()
                i = 0
                while i < len(toks):
                    if i + 1 >= len(toks):
                        raise QdfError(f"dangling hom item {toks[i]!r}", ln)
                    x, yv = toks[i], toks[i + 1]
                    hm = re.fullmatch(r"(\S+?)=(\S+)", yv)
                    if not hm:
                        raise QdfError(f"malformed hom item {yv!r}", ln)
                    y, e = hm.group(1), hm.group(2)
                    for z in (x, y):
                        if z not in tset:
                            raise QdfError(f"unknown element {z!r}", ln)
                    entries[x, y] = e
                    i += 2
            for x in tset.elements:
                entries.setdefault((x, x), Q.unit[tset.t(x)])
            try:
                hom = QRelation.from_partial(Q, tset, tset, entries)
                doc.categories[name] = QCategory(Q, tset, hom)
            except ConstructionError as e:
                raise QdfError(str(e), lineno) from None
            doc.category_on[name] = on
            doc.order.append(("CATEGORY", name))
        elif kind == "RELATION":
            m = re.fullmatch(r"(\S+)\s+FROM\s+(\S+)\s+TO\s+(\S+)\s*:\s*(.*)",
                             rest)
            if not m:
                raise QdfError("malformed RELATION header", lineno)
            name, src, dst, items = m.groups()
            if name in doc.relations:
                raise QdfError(f"duplicate relation {name!r}", lineno)
            for ref in (src, dst):
                if ref not in doc.categories:
                    raise QdfError(f"unknown category {ref!r}", lineno)
            A, B = doc.categories[src], doc.categories[dst]
            if A.Q != B.Q:
                raise QdfError("relation endpoints live over different "
                               "quantaloids", lineno)
            toks = items.split()
            for ln, body_line in _block_body(lines, lineno):
                toks.extend(body_line.split())
            entries = {}
            i = 0
            while i < len(toks):
                if i + 1 >= len(toks):
                    raise QdfError(f"dangling relation item {toks[i]!r}",
                                   lineno)
                x, yv = toks[i], toks[i + 1]
                rm = re.fullmatch(r"(\S+?)=(\S+)", yv)
                if not rm:
                    raise QdfError(f"malformed relation item {yv!r}", lineno)
                y, e = rm.group(1), rm.group(2)
                if x not in A.carrier:
                    raise QdfError(f"unknown element {x!r}", lineno)
                if y not in B.carrier:
                    raise QdfError(f"unknown element {y!r}", lineno)
                entries[x, y] = e
                i += 2
            try:
                doc.relations[name] = QRelation.from_partial(
                    A.Q, A.carrier, B.carrier, entries)
            except ConstructionError as e:
                raise QdfError(str(e), lineno) from None
            doc.relation_between[name] = (src, dst)
            doc.order.append(("RELATION", name))
        elif kind == "CLOSURE":
            m = re.fullmatch(r"(\S+)\s+ON\s+([^\s:]+)\s*:?\s*", rest)
            if not m:
                raise QdfError("malformed CLOSURE header", lineno)
            name, on = m.group(1), m.group(2)
            if name in doc.closures:
                raise QdfError(f"duplicate closure {name!r}", lineno)
            if on not in doc.categories:
                raise QdfError(f"unknown category {on!r}", lineno)
            mode = "generate"
            closed, table = [], []
            for ln, body_line in _block_body(lines, lineno):
                key, _, body_rest = body_line.partition(" ")
                if key == "MODE":
                    mode = body_rest.strip()
                    if mode not in ("exact", "generate"):
                        raise QdfError(f"unknown closure mode {mode!r}", ln)
                elif key == "CLOSED":
                    for lit in _split_presheaf_literals(body_rest, ln):
                        closed.append(_parse_presheaf_literal(lit, ln))
                elif key == "TABLE":
                    tm = re.fullmatch(r"(\[[^\]]*\])\s*=>\s*(\[[^\]]*\])",
                                      body_rest.strip())
                    if not tm:
                        raise QdfError("malformed TABLE row", ln)
                    table.append((_parse_presheaf_literal(tm.group(1), ln),
                                  _parse_presheaf_literal(tm.group(2), ln)))
                else:
                    raise QdfError(f"unknown closure directive {key!r}", ln)
            if closed and table:
                raise QdfError(f"closure {name!r} mixes CLOSED and TABLE",
                               lineno)
            doc.closures[name] = ClosureBlock(name, on, mode, closed, table)
            doc.order.append(("CLOSURE", name))
        else:
            raise QdfError(f"unknown block kind {kind!r}", lineno)
    return doc


def build_closure_space(doc, name, cap=None):
    """Construct the closure space of a CLOSURE block.  Law failures
    (for example a TABLE that is not a closure operator, or an exact
    CLOSED family that is not a closure system) raise
    :class:`ConstructionError`."""
    from .algebra import DEFAULT_CAP
    from .closure import ClosureSpace, from_closed_system, validate_closure_space
    from .presheaf import presheaf_category
    if cap is None:
        cap = DEFAULT_CAP
    block = doc.closures[name]
    X = doc.categories[block.on]
    PX = presheaf_category(X, cap)
    if block.table:
        table = {}
        for left, right in block.table:
            mu = presheaf_from_literal(X, left)
            nu = presheaf_from_literal(X, right)
            table[mu] = nu
        S = ClosureSpace(X, PX, table)
        rep = validate_closure_space(S)
        if not rep.ok:
            raise ConstructionError(
                f"closure {name!r} is not a closure operator: "
                f"{rep.violations[0]}")
        return S
    closed = [presheaf_from_literal(X, lit) for lit in block.closed]
    return from_closed_system(X, closed, mode=block.mode, cap=cap, PX=PX)


def serialize(doc):
    """Canonical text for a document; parsing it back yields an equal
    document."""
    out = []
    for kind, name in doc.order:
        if kind == "QUANTALE":
            K = doc.quantales[name]
            lat = K.lattice
            out.append(f"QUANTALE {name}")
            out.append(f"ELEMENTS {' '.join(lat.elements)}")
            pairs = [f"{a}<={b}" for a in lat.elements for b in lat.elements
                     if a != b and lat.leq(a, b)]
            out.append(f"ORDER {' '.join(pairs)}" if pairs else "ORDER")
            for x in lat.elements:
                row = " ".join(f"{x}*{y}={K.mul(x, y)}" for y in lat.elements)
                out.append(f"MUL {row}")
            out.append(f"UNIT {K.unit[K.OBJ]}")
            out.append("END")
        elif kind == "QUANTALOID":
            Q = doc.quantaloids[name]
            out.append(f"QUANTALOID {name}")
            out.append(f"OBJECTS {' '.join(Q.objects)}")
            for p, q in itertools.product(Q.objects, repeat=2):
                lat = Q.hom[p, q]
                out.append(f"HOM {p} {q}: {' '.join(lat.elements)}".rstrip())
                pairs = [f"{a}<={b}" for a in lat.elements
                         for b in lat.elements if a != b and lat.leq(a, b)]
                if pairs:
                    out.append(f"ORDER {p} {q}: {' '.join(pairs)}")
            for p, q, r in itertools.product(Q.objects, repeat=3):
                items = [f"{v}.{u}={Q.comp[p, q, r][v, u]}"
                         for v in Q.hom[q, r].elements
                         for u in Q.hom[p, q].elements]
                if items:
                    out.append(f"COMP ({q} {r})({p} {q}): {' '.join(items)}")
            out.append("ID " + " ".join(f"{q}={Q.unit[q]}"
                                        for q in Q.objects))
            out.append("END")
        elif kind == "TYPEDSET":
            ts = doc.typedsets[name]
            items = " ".join(f"{x}:{ts.t(x)}" for x in ts.elements)
            out.append(f"TYPEDSET {name} OVER {doc.typedset_over[name]}: "
                       f"{items}".rstrip())
            out.append("END")
        elif kind == "CATEGORY":
            X = doc.categories[name]
            out.append(f"CATEGORY {name} ON {doc.category_on[name]}:")
            for x, y in itertools.product(X.elements, repeat=2):
                e = X.h(x, y)
                lat = X.Q.homset(X.t(x), X.t(y))
                default = X.Q.unit[X.t(x)] if x == y else lat.bottom
                if e != default:
                    out.append(f"HOM {x} {y}={e}")
            out.append("END")
        elif kind == "RELATION":
            rel = doc.relations[name]
            src, dst = doc.relation_between[name]
            out.append(f"RELATION {name} FROM {src} TO {dst}:")
            for x in rel.dom.elements:
                for y in rel.cod.elements:
                    e = rel.entries[x, y]
                    if e != rel.Q.homset(rel.dom.t(x), rel.cod.t(y)).bottom:
                        out.append(f"{x} {y}={e}")
            out.append("END")
        elif kind == "CLOSURE":
            block = doc.closures[name]
            out.append(f"CLOSURE {name} ON {block.on}:")
            out.append(f"MODE {block.mode}")
            for ptype, entries in block.closed:
                body = ", ".join(f"{x}={e}" for x, e in entries)
                out.append(f"CLOSED [{ptype}| {body}]")
            for left, right in block.table:
                lb = ", ".join(f"{x}={e}" for x, e in left[1])
                rb = ", ".join(f"{x}={e}" for x, e in right[1])
                out.append(f"TABLE [{left[0]}| {lb}] => [{right[0]}| {rb}]")
            out.append("END")
    return "\n".join(out) + "\n"
