"""Finite enriched categories, functors and natural transformations over a
pluggable base, together with executable law checkers.

Hom data lives in the base: hom(c, d) is a base object, identities are base
morphisms out of the unit, and composition is a base morphism out of a
tensor.  The tensor unit is not strict here (unit ⊗ x is a genuine pair
object), so the unitor and associator isomorphisms of the base are inserted
exactly where the defining diagrams place them.  Iterated tensors are
left-nested; equalities involving rebracketing go through the associator.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ShapeError
from .labels import render_label, sorted_labels
from .report import VerificationReport
from .vbase.core import BaseCategory


@dataclass(eq=True)
class VCategory:
    """Objects, hom-objects, identity elements and composition morphisms.

    ``hom[(c, d)]`` is a base object; ``identities[c]``: unit -> hom(c, c);
    ``composition[(c, d, e)]``: hom(d, e) ⊗ hom(c, d) -> hom(c, e)."""

    base: BaseCategory
    objects: tuple
    hom: dict
    identities: dict
    composition: dict
    _elements: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        self.objects = sorted_labels(self.objects)
        unit = self.base.unit()
        for (c, d), h in self.hom.items():
            if c not in self.objects or d not in self.objects:
                raise ShapeError(f"hom declared for unknown pair ({c!r},{d!r})")
            if not self.base.is_object(h):
                raise ShapeError(f"hom({c!r},{d!r}) is not a base object")
        for pair in ((c, d) for c in self.objects for d in self.objects):
            if pair not in self.hom:
                raise ShapeError(f"missing hom for {pair!r}")
        for c in self.objects:
            i = self.identities.get(c)
            if i is None or i.dom != unit or i.cod != self.hom[(c, c)]:
                raise ShapeError(f"identity element of {c!r} has the wrong shape")
        for c in self.objects:
            for d in self.objects:
                for e in self.objects:
                    m = self.composition.get((c, d, e))
                    want_dom = self.base.tensor(self.hom[(d, e)], self.hom[(c, d)])
                    if m is None or m.dom != want_dom or m.cod != self.hom[(c, e)]:
                        raise ShapeError(f"composition for {(c, d, e)!r} has the wrong shape")

    def require_object(self, c):
        if c not in self.hom or (c, c) not in self.hom:
            if c not in self.objects:
                raise ShapeError(f"object {c!r} not in category")

    def homobj(self, c, d):
        try:
            return self.hom[(c, d)]
        except KeyError:
            raise ShapeError(f"no hom-object for ({c!r},{d!r})") from None

    def comp(self, c, d, e):
        return self.composition[(c, d, e)]

    def elements(self, c, d):
        """All elements of hom(c, d), i.e. maps from the unit, cached."""
        key = (c, d)
        cached = self._elements.get(key)
        if cached is None:
            cached = tuple(Element(c, d, m) for m in self.base.elements(self.homobj(c, d)))
            self._elements[key] = cached
        return cached


@dataclass(frozen=True)
class Element:
    """A morphism of the underlying category: a base map unit -> hom(dom, cod)."""

    dom: object
    cod: object
    mor: object

    def __repr__(self):
        return f"Element({render_label(self.dom)}->{render_label(self.cod)}: {self.mor!r})"


def identity_element(cat: VCategory, c) -> Element:
    cat.require_object(c)
    return Element(c, c, cat.identities[c])


def element_compose(cat: VCategory, g: Element, f: Element) -> Element:
    """Underlying-category composite g∘f via unit ≅ unit ⊗ unit."""
    if f.cod != g.dom:
        raise ShapeError(f"elements not composable: {f.cod!r} vs {g.dom!r}")
    base = cat.base
    pair = base.tensor_mor(g.mor, f.mor)
    comp = cat.comp(f.dom, f.cod, g.cod)
    return Element(f.dom, g.cod, base.compose(comp, base.compose(pair, base.unit_pairing())))


def precompose(cat: VCategory, f: Element, d):
    """The base morphism (- ∘ f): hom(f.cod, d) -> hom(f.dom, d)."""
    cat.require_object(d)
    base = cat.base
    h = cat.homobj(f.cod, d)
    step = base.tensor_mor(base.identity(h), f.mor)
    comp = cat.comp(f.dom, f.cod, d)
    return base.compose(comp, base.compose(step, base.inverse(base.right_unitor(h))))


def postcompose(cat: VCategory, f: Element, a):
    """The base morphism (f ∘ -): hom(a, f.dom) -> hom(a, f.cod)."""
    cat.require_object(a)
    base = cat.base
    h = cat.homobj(a, f.dom)
    step = base.tensor_mor(f.mor, base.identity(h))
    comp = cat.comp(a, f.dom, f.cod)
    return base.compose(comp, base.compose(step, base.inverse(base.left_unitor(h))))


def is_iso_underlying(cat: VCategory, f: Element):
    """True iff pre- and post-composition with f are base isomorphisms at
    every object.  Returns (ok, inverse element or None, witness)."""
    base = cat.base
    for d in cat.objects:
        m = precompose(cat, f, d)
        if not base.is_iso(m):
            return False, None, f"precomposition at {render_label(d)}: {base.iso_witness(m)}"
        m = postcompose(cat, f, d)
        if not base.is_iso(m):
            return False, None, f"postcomposition at {render_label(d)}: {base.iso_witness(m)}"
    want_left = identity_element(cat, f.dom)
    want_right = identity_element(cat, f.cod)
    for g in cat.elements(f.cod, f.dom):
        if element_compose(cat, g, f) == want_left and element_compose(cat, f, g) == want_right:
            return True, g, ""
    return False, None, "pre/post-composition invertible but no two-sided inverse element found"


@dataclass(eq=True)
class VFunctor:
    source: VCategory
    target: VCategory
    obj_map: dict
    hom_map: dict

    def __post_init__(self):
        if set(self.obj_map) != set(self.source.objects):
            raise ShapeError("object map must cover exactly the source objects")
        for c, fc in self.obj_map.items():
            if fc not in self.target.objects:
                raise ShapeError(f"object image {fc!r} not in target")
        for c in self.source.objects:
            for d in self.source.objects:
                m = self.hom_map.get((c, d))
                if m is None:
                    raise ShapeError(f"missing hom map for ({c!r},{d!r})")
                if m.dom != self.source.homobj(c, d):
                    raise ShapeError(f"hom map for ({c!r},{d!r}) has wrong domain")
                if m.cod != self.target.homobj(self.obj_map[c], self.obj_map[d]):
                    raise ShapeError(f"hom map for ({c!r},{d!r}) has wrong codomain")

    def on_obj(self, c):
        return self.obj_map[c]

    def on_hom(self, c, d):
        return self.hom_map[(c, d)]


def functor_element(functor: VFunctor, f: Element) -> Element:
    """Apply a functor to an underlying morphism."""
    return Element(functor.on_obj(f.dom), functor.on_obj(f.cod),
                   functor.source.base.compose(functor.on_hom(f.dom, f.cod), f.mor))


def identity_vfunctor(cat: VCategory) -> VFunctor:
    return VFunctor(cat, cat,
                    {c: c for c in cat.objects},
                    {(c, d): cat.base.identity(cat.homobj(c, d))
                     for c in cat.objects for d in cat.objects})


def compose_vfunctor(g: VFunctor, f: VFunctor) -> VFunctor:
    if f.target is not g.source and f.target != g.source:
        raise ShapeError("functors not composable")
    base = f.source.base
    return VFunctor(f.source, g.target,
                    {c: g.on_obj(f.on_obj(c)) for c in f.source.objects},
                    {(c, d): base.compose(g.on_hom(f.on_obj(c), f.on_obj(d)), f.on_hom(c, d))
                     for c in f.source.objects for d in f.source.objects})


@dataclass(eq=True)
class VNatTrans:
    source: VFunctor
    target: VFunctor
    components: dict

    def __post_init__(self):
        f, g = self.source, self.target
        if f.source != g.source or f.target != g.target:
            raise ShapeError("transformation requires parallel functors")
        unit = f.source.base.unit()
        for c in f.source.objects:
            comp = self.components.get(c)
            if comp is None:
                raise ShapeError(f"missing component at {c!r}")
            if not isinstance(comp, Element):
                raise ShapeError("components must be underlying morphisms")
            if comp.dom != f.on_obj(c) or comp.cod != g.on_obj(c):
                raise ShapeError(f"component at {c!r} has wrong endpoints")
            if comp.mor.dom != unit:
                raise ShapeError(f"component at {c!r} is not an element")

    def at(self, c) -> Element:
        return self.components[c]


def identity_vnat(functor: VFunctor) -> VNatTrans:
    return VNatTrans(functor, functor,
                     {c: identity_element(functor.target, functor.on_obj(c))
                      for c in functor.source.objects})


def whisker(k: VFunctor, alpha: VNatTrans, h: VFunctor) -> VNatTrans:
    """The whiskered composite k ∘ alpha ∘ h with components k(alpha_{h(b)})."""
    if h.target != alpha.source.source or alpha.source.target != k.source:
        raise ShapeError("whiskering shapes do not match")
    return VNatTrans(
        compose_vfunctor(k, compose_vfunctor(alpha.source, h)),
        compose_vfunctor(k, compose_vfunctor(alpha.target, h)),
        {b: functor_element(k, alpha.at(h.on_obj(b))) for b in h.source.objects})


def vcomp(beta: VNatTrans, alpha: VNatTrans) -> VNatTrans:
    """Vertical composite beta · alpha."""
    if alpha.target != beta.source:
        raise ShapeError("vertical composite requires matching middle functor")
    cat = alpha.source.target
    return VNatTrans(alpha.source, beta.target,
                     {c: element_compose(cat, beta.at(c), alpha.at(c))
                      for c in alpha.source.source.objects})


def hcomp(beta: VNatTrans, alpha: VNatTrans) -> VNatTrans:
    """Horizontal composite beta ∘ alpha = (beta G) · (J alpha)."""
    j, k = beta.source, beta.target
    f, g = alpha.source, alpha.target
    if f.target != j.source:
        raise ShapeError("horizontal composite shapes do not match")
    return vcomp(whisker(identity_vfunctor(k.target), beta, g),
                 whisker(j, alpha, identity_vfunctor(f.source)))


# ---------------------------------------------------------------------------
# law checkers


def check_vcategory(cat: VCategory) -> VerificationReport:
    """Unit and associativity diagrams for the enriched composition."""
    base = cat.base
    report = VerificationReport("vcategory")
    for c in cat.objects:
        for d in cat.objects:
            h = cat.homobj(c, d)
            left = base.compose(cat.comp(c, d, d),
                                base.tensor_mor(cat.identities[d], base.identity(h)))
            diff = base.morphism_diff(left, base.left_unitor(h))
            report.record("vcategory.unit-left", f"({render_label(c)},{render_label(d)})",
                          not diff, diff)
            right = base.compose(cat.comp(c, c, d),
                                 base.tensor_mor(base.identity(h), cat.identities[c]))
            diff = base.morphism_diff(right, base.right_unitor(h))
            report.record("vcategory.unit-right", f"({render_label(c)},{render_label(d)})",
                          not diff, diff)
    for b in cat.objects:
        for c in cat.objects:
            for d in cat.objects:
                for e in cat.objects:
                    hde = cat.homobj(d, e)
                    hcd = cat.homobj(c, d)
                    hbc = cat.homobj(b, c)
                    one = base.compose(
                        cat.comp(b, c, e),
                        base.tensor_mor(cat.comp(c, d, e), base.identity(hbc)))
                    two = base.compose(
                        cat.comp(b, d, e),
                        base.compose(base.tensor_mor(base.identity(hde), cat.comp(b, c, d)),
                                     base.associator(hde, hcd, hbc)))
                    diff = base.morphism_diff(one, two)
                    subject = ",".join(render_label(x) for x in (b, c, d, e))
                    report.record("vcategory.associativity", f"({subject})", not diff, diff)
    return report


def check_vfunctor(functor: VFunctor) -> VerificationReport:
    """Identity and composition preservation diagrams."""
    base = functor.source.base
    src, tgt = functor.source, functor.target
    report = VerificationReport("vfunctor")
    for c in src.objects:
        img = base.compose(functor.on_hom(c, c), src.identities[c])
        diff = base.morphism_diff(img, tgt.identities[functor.on_obj(c)])
        report.record("vfunctor.identity", render_label(c), not diff, diff)
    for c in src.objects:
        for d in src.objects:
            for e in src.objects:
                lhs = base.compose(functor.on_hom(c, e), src.comp(c, d, e))
                rhs = base.compose(
                    tgt.comp(functor.on_obj(c), functor.on_obj(d), functor.on_obj(e)),
                    base.tensor_mor(functor.on_hom(d, e), functor.on_hom(c, d)))
                diff = base.morphism_diff(lhs, rhs)
                subject = ",".join(render_label(x) for x in (c, d, e))
                report.record("vfunctor.composition", f"({subject})", not diff, diff)
    return report


def check_vnat(alpha: VNatTrans) -> VerificationReport:
    """The enriched naturality square for each pair of objects."""
    f, g = alpha.source, alpha.target
    base = f.source.base
    tgt = f.target
    report = VerificationReport("vnat")
    for c in f.source.objects:
        for d in f.source.objects:
            lhs = base.compose(postcompose(tgt, alpha.at(d), f.on_obj(c)), f.on_hom(c, d))
            rhs = base.compose(precompose(tgt, alpha.at(c), g.on_obj(d)), g.on_hom(c, d))
            diff = base.morphism_diff(lhs, rhs)
            subject = f"({render_label(c)},{render_label(d)})"
            report.record("vnat.naturality", subject, not diff, diff)
    return report
