"""The free enriched category on an ordinary category, the underlying
ordinary category of an enriched one, and the unit/counit relating them.

The free category on B has hom-objects given by coproducts of units indexed
by the hom-sets of B; summands are kept in sorted label order and the cones
are retained so that elements can be indexed by genuine morphisms of B.
Downstream constructions rely on that indexing to identify B with the
underlying category of its free enriched category.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .enriched import (
    Element,
    VCategory,
    VFunctor,
    element_compose,
    functor_element,
    identity_element,
)
from .errors import ShapeError
from .labels import label_key, render_label
from .ordcat import (
    CatFunctor,
    FiniteCategory,
    check_functor,
    compose_functors,
    functor_laws,
    identity_functor,
)
from .report import VerificationReport
from .vbase.core import BaseCategory, distribute

OrdinaryCategory = FiniteCategory


@dataclass
class FreeVCategory:
    source: FiniteCategory
    category: VCategory
    cones: dict
    order: dict
    _by_element: dict = field(default_factory=dict, repr=False)

    def element_of(self, f_label) -> Element:
        """The element of hom(b, c) indexed by the morphism f of the source."""
        b, c = self.source.morphisms[f_label]
        idx = self.order[(b, c)].index(f_label)
        return Element(b, c, self.cones[(b, c)].injections[idx])

    def label_of(self, elem: Element):
        """The source morphism indexing an element; None for non-injections."""
        if not self._by_element:
            for f_label in self.source.morphisms:
                self._by_element[self.element_of(f_label)] = f_label
        return self._by_element.get(elem)

    def identity_elements(self):
        return {b: self.element_of(self.source.id_of(b)) for b in self.source.objects}


def free_vcategory(b_cat: FiniteCategory, base: BaseCategory) -> FreeVCategory:
    """Hom-objects are coproducts of units over hom-sets; composition is the
    reindexing along composition in the source, via distributivity."""
    unit = base.unit()
    cones = {}
    order = {}
    for b in b_cat.objects:
        for c in b_cat.objects:
            fs = tuple(sorted(b_cat.hom(b, c), key=label_key))
            order[(b, c)] = fs
            cones[(b, c)] = base.coproduct(tuple(unit for _ in fs))
    hom = {pair: cone.apex for pair, cone in cones.items()}
    identities = {}
    for b in b_cat.objects:
        idx = order[(b, b)].index(b_cat.id_of(b))
        identities[b] = cones[(b, b)].injections[idx]
    composition = {}
    lam_unit = base.left_unitor(unit)
    for b in b_cat.objects:
        for c in b_cat.objects:
            for d in b_cat.objects:
                cone_cd = cones[(c, d)]
                cone_bc = cones[(b, c)]
                pairs, pair_cone, dist = distribute(base, cone_cd, cone_bc)
                maps = []
                for i, j in pairs:
                    g = order[(c, d)][i]
                    f = order[(b, c)][j]
                    k = order[(b, d)].index(b_cat.compose(g, f))
                    maps.append(base.compose(cones[(b, d)].injections[k], lam_unit))
                glued = base.copair(pair_cone, maps, cod=hom[(b, d)])
                composition[(b, c, d)] = base.compose(glued, dist)
    category = VCategory(base, b_cat.objects, hom, identities, composition)
    return FreeVCategory(b_cat, category, cones, order)


@dataclass
class UnderlyingResult:
    category: FiniteCategory
    to_element: dict
    from_element: dict


def underlying_category(cat: VCategory) -> UnderlyingResult:
    """Same objects; hom-sets are all elements of the hom-objects,
    enumerated exhaustively; composition is element composition."""
    to_element = {}
    from_element = {}
    morphisms = {}
    for b in cat.objects:
        for c in cat.objects:
            for i, elem in enumerate(cat.elements(b, c)):
                label = (b, c, str(i))
                to_element[label] = elem
                from_element[elem] = label
                morphisms[label] = (b, c)
    identity = {}
    for b in cat.objects:
        ident = identity_element(cat, b)
        label = from_element.get(ident)
        if label is None:
            raise ShapeError(f"identity element of {b!r} missing from enumeration")
        identity[b] = label
    table = {}
    for f_label, (fb, fc) in morphisms.items():
        for g_label, (gb, gc) in morphisms.items():
            if fc != gb:
                continue
            comp = element_compose(cat, to_element[g_label], to_element[f_label])
            comp_label = from_element.get(comp)
            if comp_label is None:
                raise ShapeError("composite element missing from enumeration")
            table[(g_label, f_label)] = comp_label
    category = FiniteCategory(cat.objects, morphisms, identity, table)
    return UnderlyingResult(category, to_element, from_element)


@dataclass
class IotaResult:
    free: FreeVCategory
    underlying: UnderlyingResult
    functor: CatFunctor
    is_isomorphism: bool
    witness: str


def unit_iota(b_cat: FiniteCategory, base: BaseCategory) -> IotaResult:
    """Sends f in B(b, c) to the injection indexed by f, as an element of
    the free category; the verdict records whether this is bijective on
    objects and hom-sets (it is when the unit is connected)."""
    free = free_vcategory(b_cat, base)
    try:
        und = underlying_category(free.category)
    except ShapeError as exc:
        return IotaResult(free, None, None, False, str(exc))
    mor_map = {}
    witness = ""
    ok = True
    for f_label in b_cat.morphisms:
        elem = free.element_of(f_label)
        label = und.from_element.get(elem)
        if label is None:
            return IotaResult(free, und, None, False,
                              f"injection at {render_label(f_label)} missing (enumeration disagrees)")
        mor_map[f_label] = label
    functor = CatFunctor(b_cat, und.category, {b: b for b in b_cat.objects}, mor_map)
    if not check_functor(functor):
        bad = [w for _, _, lawok, w in functor_laws(functor) if not lawok]
        return IotaResult(free, und, functor, False, f"not functorial: {bad[0] if bad else ''}")
    for b in b_cat.objects:
        for c in b_cat.objects:
            n_free = len(b_cat.hom(b, c))
            n_und = len(und.category.hom(b, c))
            if n_free != n_und:
                ok = False
                witness = (f"hom({render_label(b)},{render_label(c)}): "
                           f"{n_free} source morphisms vs {n_und} elements")
                break
        if not ok:
            break
    if ok and len(set(mor_map.values())) != len(mor_map):
        ok = False
        witness = "two source morphisms map to the same element"
    return IotaResult(free, und, functor, ok, witness)


@dataclass
class SigmaResult:
    free: FreeVCategory
    underlying: UnderlyingResult
    functor: VFunctor


def counit_sigma(cat: VCategory) -> SigmaResult:
    """Identity on objects; on each hom the coproduct of the element maps."""
    base = cat.base
    und = underlying_category(cat)
    free = free_vcategory(und.category, base)
    hom_map = {}
    for b in cat.objects:
        for c in cat.objects:
            labels = free.order[(b, c)]
            maps = [und.to_element[lab].mor for lab in labels]
            hom_map[(b, c)] = base.copair(free.cones[(b, c)], maps, cod=cat.homobj(b, c))
    functor = VFunctor(free.category, cat, {b: b for b in cat.objects}, hom_map)
    return SigmaResult(free, und, functor)


def free_on_functor(h: CatFunctor, free_src: FreeVCategory, free_tgt: FreeVCategory) -> VFunctor:
    """The free construction applied to an ordinary functor."""
    base = free_src.category.base
    hom_map = {}
    for b in free_src.source.objects:
        for c in free_src.source.objects:
            maps = [free_tgt.element_of(h.on_mor(f)).mor for f in free_src.order[(b, c)]]
            hb, hc = h.on_ob(b), h.on_ob(c)
            hom_map[(b, c)] = base.copair(free_src.cones[(b, c)], maps,
                                          cod=free_tgt.category.homobj(hb, hc))
    return VFunctor(free_src.category, free_tgt.category, dict(h.ob), hom_map)


def underlying_on_functor(functor: VFunctor, und_src: UnderlyingResult,
                          und_tgt: UnderlyingResult) -> CatFunctor:
    """The underlying ordinary functor of an enriched functor."""
    mor_map = {}
    for label, elem in und_src.to_element.items():
        image = functor_element(functor, elem)
        image_label = und_tgt.from_element.get(image)
        if image_label is None:
            raise ShapeError("image element missing from target enumeration")
        mor_map[label] = image_label
    return CatFunctor(und_src.category, und_tgt.category, dict(functor.obj_map), mor_map)


def check_triangle_identities(b_cat: FiniteCategory, base: BaseCategory) -> VerificationReport:
    """Both triangle identities of the free/underlying adjunction, checked
    on the free category over b_cat after normalizing through the unit."""
    report = VerificationReport("adjunction-triangles")
    iota = unit_iota(b_cat, base)
    report.record("iota.is-isomorphism", "unit", iota.is_isomorphism, iota.witness)
    if not iota.is_isomorphism:
        return report
    from .enriched import compose_vfunctor, identity_vfunctor

    sigma = counit_sigma(iota.free.category)
    iota_v = free_on_functor(iota.functor, iota.free, sigma.free)
    try:
        composite = compose_vfunctor(sigma.functor, iota_v)
        ident = identity_vfunctor(iota.free.category)
        same = composite.obj_map == ident.obj_map and composite.hom_map == ident.hom_map
        report.record("triangle.sigma-after-free-iota", "free category", same,
                      "" if same else "composite differs from the identity functor")
    except ShapeError as exc:
        report.record("triangle.sigma-after-free-iota", "free category", False, str(exc))
    # second triangle, on C = free(B): underlying(sigma) after iota of C_0
    und_free_c0 = underlying_category(sigma.free.category)
    und_sigma = underlying_on_functor(sigma.functor, und_free_c0, sigma.underlying)
    iota2 = unit_iota(sigma.underlying.category, base)
    try:
        comp2 = compose_functors(und_sigma, iota2.functor)
        ident2 = identity_functor(sigma.underlying.category)
        same2 = comp2 == ident2
        report.record("triangle.underlying-sigma-after-iota", "underlying category", same2,
                      "" if same2 else "composite differs from the identity functor")
    except ShapeError as exc:
        report.record("triangle.underlying-sigma-after-iota", "underlying category", False, str(exc))
    return report
