"""Line-oriented textual fixture format: parser and serializer.

A document is a sequence of sections.  Each section starts with a header
``[kind name]`` and contains ``key args...: value...`` lines; ``#`` starts
a comment.  Labels are atoms (no whitespace or ``()#:,"``) or parenthesized
tuples like ``(x,b)``; every label is a single token.  All referenced
entities are declared by name; hom-objects, tensor domains and elements are
emitted as plain named objects, so every construction round-trips through
the parser losslessly.

Section kinds: base, object, category, morphism, vcategory, vfunctor,
vnat, pseudofunctor, transformation, modification, opfibration.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .enriched import (
    Element,
    VCategory,
    VFunctor,
    VNatTrans,
    compose_vfunctor,
)
from .errors import FixtureError, ShapeError, VcatError
from .freeunder import free_vcategory
from .labels import label_key, render_label
from .opfib import Opfibration
from .ordcat import CatFunctor, FiniteCategory
from .pseudo import Modification, Pseudofunctor, PseudonaturalTransformation
from .vbase import FINCAT, FINSET
from .vbase.fincat import FinCatBase
from .vbase.finset import FinSetBase

ATOM_FORBIDDEN = set(" \t()#:,\"")


def parse_label(token: str, line=None):
    label, rest = _parse_label_inner(token, 0, line)
    if rest != len(token):
        raise FixtureError(f"trailing characters in label {token!r}", line)
    return label


def _parse_label_inner(text: str, pos: int, line):
    if pos >= len(text):
        raise FixtureError("empty label", line)
    if text[pos] == "(":
        parts = []
        pos += 1
        while True:
            part, pos = _parse_label_inner(text, pos, line)
            parts.append(part)
            if pos >= len(text):
                raise FixtureError("unterminated tuple label", line)
            if text[pos] == ",":
                pos += 1
                continue
            if text[pos] == ")":
                return tuple(parts), pos + 1
            raise FixtureError(f"bad character {text[pos]!r} in tuple label", line)
    start = pos
    while pos < len(text) and text[pos] not in ATOM_FORBIDDEN:
        pos += 1
    if pos == start:
        raise FixtureError(f"bad label at {text[pos:]!r}", line)
    return text[start:pos], pos


@dataclass
class Section:
    kind: str
    name: str
    line: int
    entries: list = field(default_factory=list)  # (key_tokens, value_tokens, line)


def tokenize_document(text: str):
    sections = []
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.strip()
        if stripped.startswith("["):
            if not stripped.endswith("]"):
                raise FixtureError("unterminated section header", lineno)
            parts = stripped[1:-1].split()
            if len(parts) != 2:
                raise FixtureError("section header needs a kind and a name", lineno)
            current = Section(parts[0], parts[1], lineno)
            sections.append(current)
            continue
        if current is None:
            raise FixtureError("content before the first section header", lineno)
        if ":" not in line:
            raise FixtureError("expected 'key: value'", lineno)
        left, right = line.split(":", 1)
        key_tokens = left.split()
        value_tokens = right.split()
        if not key_tokens:
            raise FixtureError("missing key", lineno)
        current.entries.append((key_tokens, value_tokens, lineno))
    return sections


@dataclass
class FixtureDocument:
    base: object = None
    objects: dict = field(default_factory=dict)
    categories: dict = field(default_factory=dict)
    morphisms: dict = field(default_factory=dict)
    vcategories: dict = field(default_factory=dict)
    vfunctors: dict = field(default_factory=dict)
    vnats: dict = field(default_factory=dict)
    pseudofunctors: dict = field(default_factory=dict)
    transformations: dict = field(default_factory=dict)
    modifications: dict = field(default_factory=dict)
    opfibrations: dict = field(default_factory=dict)
    free_bases: dict = field(default_factory=dict)
    cell_shape: dict = field(default_factory=dict)  # name -> (src_name, tgt_name)


class _Parser:
    def __init__(self):
        self.doc = FixtureDocument()

    def parse(self, text: str) -> FixtureDocument:
        for section in tokenize_document(text):
            handler = getattr(self, f"_on_{section.kind.replace('-', '_')}", None)
            if handler is None:
                raise FixtureError(f"unknown section kind {section.kind!r}", section.line)
            try:
                handler(section)
            except (ShapeError, VcatError) as exc:
                if isinstance(exc, FixtureError):
                    raise
                raise FixtureError(str(exc), section.line) from exc
            except KeyError as exc:
                raise FixtureError(f"unresolved reference {exc.args[0]!r}", section.line) from exc
        if self.doc.base is None:
            raise FixtureError("document declares no base", 1)
        return self.doc

    # -- helpers ------------------------------------------------------------

    def _entries(self, section, key):
        return [(k[1:], v, ln) for k, v, ln in section.entries if k[0] == key]

    def _single(self, section, key, default=None):
        hits = self._entries(section, key)
        if not hits:
            if default is not None:
                return default
            raise FixtureError(f"missing '{key}:' entry", section.line)
        if len(hits) > 1:
            raise FixtureError(f"duplicate '{key}:' entry", hits[1][2])
        return hits[0]

    def _labels(self, tokens, line):
        return [parse_label(t, line) for t in tokens]

    def _resolve_obj(self, token, line):
        if token == "unit":
            return self.doc.base.unit()
        if token not in self.doc.objects:
            raise FixtureError(f"unknown object {token!r}", line)
        return self.doc.objects[token]

    def _mor(self, token, line):
        if token not in self.doc.morphisms:
            raise FixtureError(f"unknown morphism {token!r}", line)
        return self.doc.morphisms[token]

    def _element(self, token, vcat, dom, cod, line) -> Element:
        mor = self._mor(token, line)
        if mor.dom != self.doc.base.unit():
            raise FixtureError(f"morphism {token!r} is not an element (domain is not the unit)", line)
        if mor.cod != vcat.homobj(dom, cod):
            raise FixtureError(f"element {token!r} lands in the wrong hom-object", line)
        return Element(dom, cod, mor)

    # -- section handlers ----------------------------------------------------

    def _on_base(self, section):
        if self.doc.base is not None:
            raise FixtureError("duplicate base declaration", section.line)
        if section.name == "finset":
            self.doc.base = FinSetBase()
        elif section.name == "fincat":
            self.doc.base = FinCatBase()
        else:
            raise FixtureError(f"unknown base instance {section.name!r}", section.line)

    def _on_category(self, section):
        _key, tokens, line = self._single(section, "objects", default=((), (), section.line))
        objects = self._labels(tokens, line)
        morphisms = {}
        for args, value, ln in self._entries(section, "morphism"):
            if len(args) != 1 or len(value) != 2:
                raise FixtureError("expected 'morphism m: dom cod'", ln)
            morphisms[parse_label(args[0], ln)] = (parse_label(value[0], ln),
                                                   parse_label(value[1], ln))
        identity = {}
        for args, value, ln in self._entries(section, "identity"):
            if len(args) != 1 or len(value) != 1:
                raise FixtureError("expected 'identity b: m'", ln)
            identity[parse_label(args[0], ln)] = parse_label(value[0], ln)
        table = {}
        for args, value, ln in self._entries(section, "compose"):
            if len(args) != 2 or len(value) != 1:
                raise FixtureError("expected 'compose g f: h'", ln)
            table[(parse_label(args[0], ln), parse_label(args[1], ln))] = parse_label(value[0], ln)
        self.doc.categories[section.name] = FiniteCategory(objects, morphisms, identity, table)

    def _on_object(self, section):
        base = self._require_base(section)
        if isinstance(base, FinSetBase):
            _key, tokens, line = self._single(section, "elements", default=((), (), section.line))
            self.doc.objects[section.name] = base.obj(self._labels(tokens, line))
        else:
            _key, tokens, line = self._single(section, "category")
            if len(tokens) != 1:
                raise FixtureError("expected 'category: NAME'", line)
            self.doc.objects[section.name] = self.doc.categories[tokens[0]]

    def _require_base(self, section):
        if self.doc.base is None:
            raise FixtureError("declare the base before other sections", section.line)
        return self.doc.base

    def _on_morphism(self, section):
        base = self._require_base(section)
        _k, dom_tokens, ln1 = self._single(section, "from")
        _k, cod_tokens, ln2 = self._single(section, "to")
        if len(dom_tokens) != 1 or len(cod_tokens) != 1:
            raise FixtureError("expected single object references in from/to", section.line)
        dom = self._resolve_obj(dom_tokens[0], ln1)
        cod = self._resolve_obj(cod_tokens[0], ln2)
        if isinstance(base, FinSetBase):
            mapping = {}
            for args, value, ln in self._entries(section, "map"):
                if len(args) != 1 or len(value) != 1:
                    raise FixtureError("expected 'map x: y'", ln)
                mapping[parse_label(args[0], ln)] = parse_label(value[0], ln)
            self.doc.morphisms[section.name] = base.mor(dom, cod, mapping)
        else:
            ob = {}
            for args, value, ln in self._entries(section, "ob"):
                ob[parse_label(args[0], ln)] = parse_label(value[0], ln)
            mor = {}
            for args, value, ln in self._entries(section, "mor"):
                mor[parse_label(args[0], ln)] = parse_label(value[0], ln)
            self.doc.morphisms[section.name] = CatFunctor(dom, cod, ob, mor)

    def _on_vcategory(self, section):
        base = self._require_base(section)
        _k, tokens, line = self._single(section, "objects", default=((), (), section.line))
        objects = self._labels(tokens, line)
        hom = {}
        for args, value, ln in self._entries(section, "hom"):
            if len(args) != 2 or len(value) != 1:
                raise FixtureError("expected 'hom x y: OBJ'", ln)
            hom[(parse_label(args[0], ln), parse_label(args[1], ln))] = \
                self._resolve_obj(value[0], ln)
        identities = {}
        for args, value, ln in self._entries(section, "id"):
            if len(args) != 1 or len(value) != 1:
                raise FixtureError("expected 'id x: MOR'", ln)
            identities[parse_label(args[0], ln)] = self._mor(value[0], ln)
        composition = {}
        for args, value, ln in self._entries(section, "compose"):
            if len(args) != 3 or len(value) != 1:
                raise FixtureError("expected 'compose x y z: MOR'", ln)
            key = tuple(parse_label(a, ln) for a in args)
            composition[key] = self._mor(value[0], ln)
        self.doc.vcategories[section.name] = VCategory(base, objects, hom,
                                                       identities, composition)

    def _on_vfunctor(self, section):
        _k, src, ln1 = self._single(section, "source")
        _k, tgt, ln2 = self._single(section, "target")
        source = self.doc.vcategories[src[0]]
        target = self.doc.vcategories[tgt[0]]
        obj_map = {}
        for args, value, ln in self._entries(section, "ob"):
            obj_map[parse_label(args[0], ln)] = parse_label(value[0], ln)
        hom_map = {}
        for args, value, ln in self._entries(section, "hom"):
            if len(args) != 2 or len(value) != 1:
                raise FixtureError("expected 'hom x y: MOR'", ln)
            hom_map[(parse_label(args[0], ln), parse_label(args[1], ln))] = \
                self._mor(value[0], ln)
        self.doc.vfunctors[section.name] = VFunctor(source, target, obj_map, hom_map)
        self.doc.cell_shape[section.name] = (src[0], tgt[0])

    def _on_vnat(self, section):
        _k, src, _ = self._single(section, "source")
        _k, tgt, _ = self._single(section, "target")
        source = self.doc.vfunctors[src[0]]
        target = self.doc.vfunctors[tgt[0]]
        components = {}
        for args, value, ln in self._entries(section, "at"):
            x = parse_label(args[0], ln)
            components[x] = self._element(value[0], source.target,
                                          source.on_obj(x), target.on_obj(x), ln)
        self.doc.vnats[section.name] = VNatTrans(source, target, components)
        self.doc.cell_shape[section.name] = (src[0], tgt[0])

    def _on_pseudofunctor(self, section):
        _k, bname, ln = self._single(section, "base")
        b_cat = self.doc.categories[bname[0]]
        fiber_at = {}
        for args, value, ln in self._entries(section, "fiber"):
            fiber_at[parse_label(args[0], ln)] = self.doc.vcategories[value[0]]
        functor_at = {}
        for args, value, ln in self._entries(section, "functor"):
            functor_at[parse_label(args[0], ln)] = self.doc.vfunctors[value[0]]
        xi = {}
        for args, value, ln in self._entries(section, "xi"):
            if len(args) != 2:
                raise FixtureError("expected 'xi b x: MOR'", ln)
            b = parse_label(args[0], ln)
            x = parse_label(args[1], ln)
            fb = fiber_at[b]
            ident_f = functor_at[b_cat.id_of(b)]
            xi[(b, x)] = self._element(value[0], fb, ident_f.on_obj(x), x, ln)
        theta = {}
        for args, value, ln in self._entries(section, "theta"):
            if len(args) != 3:
                raise FixtureError("expected 'theta f g x: MOR'", ln)
            f = parse_label(args[0], ln)
            g = parse_label(args[1], ln)
            x = parse_label(args[2], ln)
            d = b_cat.cod(g)
            gf = b_cat.compose(g, f)
            dom = functor_at[gf].on_obj(x)
            cod = functor_at[g].on_obj(functor_at[f].on_obj(x))
            theta[(f, g, x)] = self._element(value[0], fiber_at[d], dom, cod, ln)
        self.doc.pseudofunctors[section.name] = Pseudofunctor(
            b_cat, fiber_at, functor_at, xi, theta)

    def _on_transformation(self, section):
        _k, src, _ = self._single(section, "source")
        _k, tgt, _ = self._single(section, "target")
        source = self.doc.pseudofunctors[src[0]]
        target = self.doc.pseudofunctors[tgt[0]]
        components = {}
        for args, value, ln in self._entries(section, "component"):
            components[parse_label(args[0], ln)] = self.doc.vfunctors[value[0]]
        squares = {}
        for args, value, ln in self._entries(section, "square"):
            if len(args) != 2:
                raise FixtureError("expected 'square f x: MOR'", ln)
            f = parse_label(args[0], ln)
            x = parse_label(args[1], ln)
            squares.setdefault(f, {})[x] = (value[0], ln)
        built = {}
        for f, (b, c) in source.base.morphisms.items():
            comps = {}
            sq_src = compose_vfunctor(target.functor_at[f], components[b])
            sq_tgt = compose_vfunctor(components[c], source.functor_at[f])
            for x in source.fiber_at[b].objects:
                if f not in squares or x not in squares[f]:
                    raise FixtureError(
                        f"missing square entry for ({render_label(f)},{render_label(x)})",
                        section.line)
                token, ln = squares[f][x]
                comps[x] = self._element(token, target.fiber_at[c],
                                         sq_src.on_obj(x), sq_tgt.on_obj(x), ln)
            built[f] = VNatTrans(sq_src, sq_tgt, comps)
        self.doc.transformations[section.name] = PseudonaturalTransformation(
            source, target, components, built)
        self.doc.cell_shape[section.name] = (src[0], tgt[0])

    def _on_modification(self, section):
        _k, src, _ = self._single(section, "source")
        _k, tgt, _ = self._single(section, "target")
        source = self.doc.transformations[src[0]]
        target = self.doc.transformations[tgt[0]]
        per_b = {}
        for args, value, ln in self._entries(section, "component"):
            if len(args) != 2:
                raise FixtureError("expected 'component b x: MOR'", ln)
            b = parse_label(args[0], ln)
            x = parse_label(args[1], ln)
            per_b.setdefault(b, {})[x] = (value[0], ln)
        components = {}
        for b in source.source.base.objects:
            comps = {}
            tgt_cat = source.target.fiber_at[b]
            for x in source.source.fiber_at[b].objects:
                if b not in per_b or x not in per_b[b]:
                    raise FixtureError(
                        f"missing component for ({render_label(b)},{render_label(x)})",
                        section.line)
                token, ln = per_b[b][x]
                comps[x] = self._element(token, tgt_cat,
                                         source.components[b].on_obj(x),
                                         target.components[b].on_obj(x), ln)
            components[b] = VNatTrans(source.components[b], target.components[b], comps)
        self.doc.modifications[section.name] = Modification(source, target, components)
        self.doc.cell_shape[section.name] = (src[0], tgt[0])

    def _on_opfibration(self, section):
        _k, pname, ln = self._single(section, "projection")
        p = self.doc.vfunctors[pname[0]]
        free_base = None
        hits = self._entries(section, "indexed-by")
        if hits:
            _args, value, ln2 = hits[0]
            b_cat = self.doc.categories[value[0]]
            free_base = free_vcategory(b_cat, self.doc.base)
            if free_base.category != p.target:
                raise FixtureError(
                    "the projection target is not the free category on the index", ln2)
        lifts = {}
        for args, value, ln2 in self._entries(section, "lift"):
            if len(args) != 2 or len(value) != 2:
                raise FixtureError("expected 'lift e f: e2 CHI'", ln2)
            e = parse_label(args[0], ln2)
            f_label = parse_label(args[1], ln2)
            lift_obj = parse_label(value[0], ln2)
            if free_base is None:
                raise FixtureError("lift entries require an 'indexed-by:' category", ln2)
            f_elem = free_base.element_of(f_label)
            chi = self._element(value[1], p.source, e, lift_obj, ln2)
            lifts[(e, f_elem)] = (lift_obj, chi)
        self.doc.opfibrations[section.name] = Opfibration(p, lifts, free_base=free_base)


def parse_fixture(text: str) -> FixtureDocument:
    return _Parser().parse(text)


# ---------------------------------------------------------------------------
# serialization


class Emitter:
    """Accumulates sections, assigning names to anonymous base objects and
    morphisms on demand and deduplicating by value."""

    def __init__(self, base):
        self.base = base
        self.lines = ["[base " + ("finset" if isinstance(base, FinSetBase) else "fincat") + "]", ""]
        self.obj_names = {}
        self.mor_names = {}
        self.cat_names = {}
        self.counter = 0

    def fresh(self, prefix):
        self.counter += 1
        return f"{prefix}{self.counter}"

    def text(self) -> str:
        return "\n".join(self.lines) + "\n"

    def name_category(self, cat: FiniteCategory, hint):
        if cat in self.cat_names:
            return self.cat_names[cat]
        name = hint or self.fresh("cat")
        self.cat_names[cat] = name
        body = [f"[category {name}]",
                "objects: " + " ".join(render_label(b) for b in cat.objects)]
        for m in cat.all_morphisms():
            body.append(f"morphism {render_label(m)}: {render_label(cat.dom(m))} "
                        f"{render_label(cat.cod(m))}")
        for b in cat.objects:
            body.append(f"identity {render_label(b)}: {render_label(cat.id_of(b))}")
        for (g, f), h in sorted(cat.table.items(),
                                key=lambda kv: (label_key(kv[0][0]), label_key(kv[0][1]))):
            body.append(f"compose {render_label(g)} {render_label(f)}: {render_label(h)}")
        self.lines.extend(body + [""])
        return name

    def name_object(self, obj, hint=None):
        if obj == self.base.unit():
            return "unit"
        if obj in self.obj_names:
            return self.obj_names[obj]
        name = hint or self.fresh("ob")
        self.obj_names[obj] = name
        if isinstance(self.base, FinSetBase):
            self.lines.extend([
                f"[object {name}]",
                "elements: " + " ".join(render_label(x) for x in obj.labels),
                ""])
        else:
            cat_name = self.name_category(obj, None)
            self.lines.extend([f"[object {name}]", f"category: {cat_name}", ""])
        return name

    def name_morphism(self, mor, hint=None):
        if mor in self.mor_names:
            return self.mor_names[mor]
        dom_name = self.name_object(mor.dom)
        cod_name = self.name_object(mor.cod)
        name = hint or self.fresh("mor")
        self.mor_names[mor] = name
        body = [f"[morphism {name}]", f"from: {dom_name}", f"to: {cod_name}"]
        if isinstance(self.base, FinSetBase):
            for x, y in mor.items():
                body.append(f"map {render_label(x)}: {render_label(y)}")
        else:
            for a in mor.dom.objects:
                body.append(f"ob {render_label(a)}: {render_label(mor.on_ob(a))}")
            for m in mor.dom.all_morphisms():
                body.append(f"mor {render_label(m)}: {render_label(mor.on_mor(m))}")
        self.lines.extend(body + [""])
        return name

    def emit_vcategory(self, name, cat: VCategory):
        body = [f"[vcategory {name}]",
                "objects: " + " ".join(render_label(x) for x in cat.objects)]
        for (c, d) in sorted(cat.hom, key=lambda p: (label_key(p[0]), label_key(p[1]))):
            body.append(f"hom {render_label(c)} {render_label(d)}: "
                        f"{self.name_object(cat.hom[(c, d)])}")
        for c in cat.objects:
            body.append(f"id {render_label(c)}: {self.name_morphism(cat.identities[c])}")
        for key in sorted(cat.composition, key=lambda k: tuple(label_key(x) for x in k)):
            c, d, e = key
            body.append(f"compose {render_label(c)} {render_label(d)} {render_label(e)}: "
                        f"{self.name_morphism(cat.composition[key])}")
        self.lines.extend(body + [""])
        return name

    def emit_vfunctor(self, name, functor: VFunctor, src_name, tgt_name):
        body = [f"[vfunctor {name}]", f"source: {src_name}", f"target: {tgt_name}"]
        for c in functor.source.objects:
            body.append(f"ob {render_label(c)}: {render_label(functor.on_obj(c))}")
        for (c, d) in sorted(functor.hom_map,
                             key=lambda p: (label_key(p[0]), label_key(p[1]))):
            body.append(f"hom {render_label(c)} {render_label(d)}: "
                        f"{self.name_morphism(functor.hom_map[(c, d)])}")
        self.lines.extend(body + [""])
        return name

    def emit_vnat(self, name, nat: VNatTrans, src_name, tgt_name):
        body = [f"[vnat {name}]", f"source: {src_name}", f"target: {tgt_name}"]
        for c in nat.source.source.objects:
            body.append(f"at {render_label(c)}: {self.name_morphism(nat.at(c).mor)}")
        self.lines.extend(body + [""])
        return name

    def emit_pseudofunctor(self, name, pf: Pseudofunctor, base_hint=None):
        base_name = self.name_category(pf.base, base_hint)
        vcat_names = {}
        for b in pf.base.objects:
            vcat_names[b] = self.emit_vcategory(self.fresh(f"{name}.fiber"), pf.fiber_at[b])
        functor_names = {}
        for f in pf.base.all_morphisms():
            b, c = pf.base.morphisms[f]
            functor_names[f] = self.emit_vfunctor(
                self.fresh(f"{name}.map"), pf.functor_at[f], vcat_names[b], vcat_names[c])
        body = [f"[pseudofunctor {name}]", f"base: {base_name}"]
        for b in pf.base.objects:
            body.append(f"fiber {render_label(b)}: {vcat_names[b]}")
        for f in pf.base.all_morphisms():
            body.append(f"functor {render_label(f)}: {functor_names[f]}")
        for (b, x) in sorted(pf.xi, key=lambda k: (label_key(k[0]), label_key(k[1]))):
            body.append(f"xi {render_label(b)} {render_label(x)}: "
                        f"{self.name_morphism(pf.xi[(b, x)].mor)}")
        for (f, g, x) in sorted(pf.theta,
                                key=lambda k: tuple(label_key(p) for p in k)):
            body.append(f"theta {render_label(f)} {render_label(g)} {render_label(x)}: "
                        f"{self.name_morphism(pf.theta[(f, g, x)].mor)}")
        self.lines.extend(body + [""])
        return name

    def emit_opfibration(self, name, of: Opfibration, total_name=None):
        if of.free_base is None:
            raise ShapeError("only opfibrations over free bases can be emitted")
        index_name = self.name_category(of.free_base.source, None)
        total = total_name or self.emit_vcategory(self.fresh(f"{name}.total"), of.total)
        base_cat = self.emit_vcategory(self.fresh(f"{name}.base"), of.base_category)
        pname = self.emit_vfunctor(self.fresh(f"{name}.proj"), of.p, total, base_cat)
        body = [f"[opfibration {name}]", f"projection: {pname}",
                f"indexed-by: {index_name}"]
        for (e, f_elem), (lift_obj, chi) in sorted(of.lifts.items(), key=lambda kv: repr(kv[0])):
            f_label = of.free_base.label_of(f_elem)
            if f_label is None:
                raise ShapeError("a lift is indexed by a non-injection element")
            body.append(f"lift {render_label(e)} {render_label(f_label)}: "
                        f"{render_label(lift_obj)} {self.name_morphism(chi.mor)}")
        self.lines.extend(body + [""])
        return name
