"""Opcartesian morphisms, opfibrations with chosen lifts, opfibered
functors, fibers and transport.

A map chi: unit -> E(e, e') is opcartesian for p: E -> B when, for every
object d of E, the square formed by precomposition with chi, precomposition
with p(chi), and the hom-components of p is a pullback in the base.  All
"unique morphism" claims below are realized as exhaustive searches over the
finite element sets of the relevant hom-objects, with uniqueness asserted.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .enriched import (
    Element,
    VCategory,
    VFunctor,
    VNatTrans,
    element_compose,
    functor_element,
    identity_element,
    is_iso_underlying,
    postcompose,
    precompose,
)
from .errors import ShapeError, UniversalPropertyError, UnverifiedError
from .labels import render_label
from .report import VerificationReport
from .vbase.core import CommutingSquare, PullbackCone, is_pullback_square, universal_into_pullback


def project_element(p: VFunctor, f: Element) -> Element:
    """The image of an underlying morphism of the total category in the base."""
    return functor_element(p, f)


def is_opcartesian(p: VFunctor, chi: Element):
    """Checks the pullback condition at every object d of the total
    category; returns (ok, witness)."""
    total, base_cat = p.source, p.target
    pchi = project_element(p, chi)
    for d in total.objects:
        pd = p.on_obj(d)
        sq = CommutingSquare(
            p=precompose(total, chi, d),
            q=p.on_hom(chi.cod, d),
            f=p.on_hom(chi.dom, d),
            g=precompose(base_cat, pchi, pd),
        )
        ok, witness = is_pullback_square(total.base, sq)
        if not ok:
            return False, f"not a pullback at d={render_label(d)}: {witness}"
    return True, ""


class Opfibration:
    """A functor p: E -> B together with a chosen opcartesian lift for every
    object e of E and every element f of B out of p(e).

    The lifts table maps (e, f) to (lift_object, chi) where chi is an
    element of E(e, lift_object) over f.  Verification status is a
    tri-state: unchecked, verified, or refuted (with a witness)."""

    def __init__(self, p: VFunctor, lifts, free_base=None):
        self.p = p
        self.lifts = dict(lifts)
        self.free_base = free_base
        self.verified = "unchecked"
        self.witness = ""
        for (e, f), (lift_obj, chi) in self.lifts.items():
            if e not in p.source.objects:
                raise ShapeError(f"lift table mentions unknown object {e!r}")
            if not isinstance(f, Element) or not isinstance(chi, Element):
                raise ShapeError("lift table requires underlying morphisms")
            if f.dom != p.on_obj(e):
                raise ShapeError(f"lift for ({e!r}, {f!r}) does not start at p(e)")
            if chi.dom != e or chi.cod != lift_obj:
                raise ShapeError(f"chosen lift for ({e!r}, {f!r}) has wrong endpoints")
            if p.on_obj(lift_obj) != f.cod:
                raise ShapeError(f"lift object for ({e!r}, {f!r}) does not sit over cod f")
            if project_element(p, chi) != f:
                raise ShapeError(f"chosen lift for ({e!r}, {f!r}) does not lie over f")

    @property
    def total(self) -> VCategory:
        return self.p.source

    @property
    def base_category(self) -> VCategory:
        return self.p.target

    def lift(self, e, f: Element):
        key = (e, f)
        if key not in self.lifts:
            raise ShapeError(f"no chosen lift for object {e!r} along {f!r}")
        return self.lifts[key]

    def chosen(self, e, f: Element) -> Element:
        return self.lift(e, f)[1]

    def lift_object(self, e, f: Element):
        return self.lift(e, f)[0]


def verify_opfibration(of: Opfibration) -> VerificationReport:
    """Totality of the lifts table plus the opcartesian condition for every
    chosen lift; sets the tri-state on the opfibration."""
    report = VerificationReport("opfibration")
    p = of.p
    bcat = of.base_category
    total_ok = True
    for e in of.total.objects:
        pe = p.on_obj(e)
        for b in bcat.objects:
            for f in bcat.elements(pe, b):
                if (e, f) not in of.lifts:
                    total_ok = False
                    report.record("opfibration.lifts-total",
                                  f"({render_label(e)}, {f!r})", False,
                                  "missing chosen lift")
    if total_ok:
        report.record("opfibration.lifts-total", "table", True)
    else:
        raise ShapeError("incomplete lifts table: " + report.failures()[0].subject)
    for (e, f), (_lift_obj, chi) in sorted(of.lifts.items(), key=lambda kv: repr(kv[0])):
        ok, witness = is_opcartesian(p, chi)
        report.record("opfibration.opcartesian-lift",
                      f"(e={render_label(e)}, f={f!r})", ok, witness)
    if report.passed:
        of.verified = "verified"
        of.witness = ""
    else:
        of.verified = "refuted"
        of.witness = report.failures()[0].to_line()
    return report


def ensure_verified(of: Opfibration):
    if of.verified == "unchecked":
        verify_opfibration(of)
    if of.verified != "verified":
        raise UnverifiedError(f"opfibration refuted: {of.witness}")


def epsilon_chi(of: Opfibration, chi: Element) -> Element:
    """The unique isomorphism over the identity comparing chi with the
    chosen lift of its projection: eps ∘ chosen = chi, p(eps) = identity.

    Found by exhaustive search over the elements of E(lift_object, cod chi);
    zero or multiple candidates signal a non-opcartesian input or a broken
    lifts table."""
    p = of.p
    total = of.total
    f = project_element(p, chi)
    lift_obj, chosen = of.lift(chi.dom, f)
    ident = identity_element(of.base_category, p.on_obj(chi.cod))
    hits = []
    for eps in total.elements(lift_obj, chi.cod):
        if project_element(p, eps) != ident:
            continue
        if element_compose(total, eps, chosen) == chi:
            hits.append(eps)
    if len(hits) != 1:
        raise UniversalPropertyError(
            f"expected exactly one comparison isomorphism, found {len(hits)} "
            f"for chi={chi!r}")
    eps = hits[0]
    ok, _inv, witness = is_iso_underlying(total, eps)
    if not ok:
        raise UniversalPropertyError(f"comparison element is not invertible: {witness}")
    return eps


def induced_map(of: Opfibration, e, f: Element, phi: Element, g: Element) -> Element:
    """Given the chosen lift of f at e, phi: e -> d over g∘f, the unique
    g~: lift -> d over g with g~ ∘ chosen = phi."""
    p = of.p
    total = of.total
    bcat = of.base_category
    if phi.dom != e:
        raise ShapeError("phi must start at e")
    if g.dom != f.cod or g.cod != p.on_obj(phi.cod):
        raise ShapeError("g has the wrong endpoints")
    if project_element(p, phi) != element_compose(bcat, g, f):
        raise ShapeError("p(phi) differs from g∘f")
    lift_obj, chosen = of.lift(e, f)
    hits = []
    for cand in total.elements(lift_obj, phi.cod):
        if project_element(p, cand) != g:
            continue
        if element_compose(total, cand, chosen) == phi:
            hits.append(cand)
    if len(hits) != 1:
        raise UniversalPropertyError(
            f"expected exactly one induced map, found {len(hits)}")
    return hits[0]


@dataclass
class FiberCategory:
    over: object
    category: VCategory
    inclusion: VFunctor
    cones: dict = field(repr=False, default_factory=dict)

    def factor(self, e, e2, elem: Element) -> Element:
        """Factor an element of E(e, e2) lying over the identity through the
        fiber hom pullback."""
        total = self.inclusion.target
        base = total.base
        cone = self.cones[(e, e2)]
        u = elem.mor
        v = base.identity(base.unit())
        return Element(e, e2, universal_into_pullback(base, cone, u, v))

    def include(self, elem: Element) -> Element:
        return functor_element(self.inclusion, elem)


def fiber(of_or_p, b) -> FiberCategory:
    """The fiber over b: objects of E sitting over b, homs the pullbacks of
    the hom-components of p along the identity element of b."""
    p = of_or_p.p if isinstance(of_or_p, Opfibration) else of_or_p
    total = p.source
    bcat = p.target
    base = total.base
    if b not in bcat.objects:
        raise ShapeError(f"{b!r} is not an object of the base")
    objects = tuple(e for e in total.objects if p.on_obj(e) == b)
    ident_b = identity_element(bcat, b)
    cones = {}
    hom = {}
    for e in objects:
        for e2 in objects:
            cone = base.pullback(p.on_hom(e, e2), ident_b.mor)
            cones[(e, e2)] = cone
            hom[(e, e2)] = cone.apex
    identities = {}
    for e in objects:
        ident_e = identity_element(total, e)
        identities[e] = universal_into_pullback(
            base, cones[(e, e)], ident_e.mor, base.identity(base.unit()))
    composition = {}
    for c in objects:
        for d in objects:
            for e in objects:
                incl = base.tensor_mor(cones[(d, e)].proj_left, cones[(c, d)].proj_left)
                u = base.compose(total.comp(c, d, e), incl)
                src = base.tensor(hom[(d, e)], hom[(c, d)])
                v = base.terminal_map(src)
                composition[(c, d, e)] = universal_into_pullback(base, cones[(c, e)], u, v)
    category = VCategory(base, objects, hom, identities, composition)
    inclusion = VFunctor(category, total,
                         {e: e for e in objects},
                         {(e, e2): cones[(e, e2)].proj_left for e in objects for e2 in objects})
    return FiberCategory(b, category, inclusion, cones)


def transport(of: Opfibration, f: Element, source_fiber: FiberCategory = None,
              target_fiber: FiberCategory = None) -> VFunctor:
    """The functor between fibers induced by f: on objects the chosen lift
    target, on homs the unique map through the composite pullback."""
    ensure_verified(of)
    p = of.p
    total = of.total
    base = total.base
    bcat = of.base_category
    fib_b = source_fiber if source_fiber is not None else fiber(of, f.dom)
    fib_b2 = target_fiber if target_fiber is not None else fiber(of, f.cod)
    obj_map = {e: of.lift_object(e, f) for e in fib_b.category.objects}
    hom_map = {}
    for e in fib_b.category.objects:
        for e2 in fib_b.category.objects:
            le, le2 = obj_map[e], obj_map[e2]
            chi_e2 = of.chosen(e2, f)
            # candidate leg into E(e, lift e2)
            u = base.compose(postcompose(total, chi_e2, e), fib_b.cones[(e, e2)].proj_left)
            v = base.terminal_map(fib_b.category.homobj(e, e2))
            # outer pullback square with apex the target fiber hom
            chi_e = of.chosen(e, f)
            outer = PullbackCone(
                f=p.on_hom(e, le2),
                g=f.mor,
                apex=fib_b2.category.homobj(le, le2),
                proj_left=base.compose(precompose(total, chi_e, le2),
                                       fib_b2.cones[(le, le2)].proj_left),
                proj_right=base.terminal_map(fib_b2.category.homobj(le, le2)),
                canonical=False,
            )
            hom_map[(e, e2)] = universal_into_pullback(base, outer, u, v)
    return VFunctor(fib_b.category, fib_b2.category, obj_map, hom_map)


@dataclass
class OpfiberedFunctor:
    source: Opfibration
    target: Opfibration
    k: VFunctor

    def __post_init__(self):
        if self.k.source != self.source.total or self.k.target != self.target.total:
            raise ShapeError("functor endpoints do not match the opfibrations")


def is_opfibered(k: VFunctor, source: Opfibration, target: Opfibration):
    """Sufficiency per the chosen-lift criterion: a functor over the base is
    opfibered iff it sends every chosen lift to an opcartesian map."""
    if source.base_category != target.base_category:
        raise ShapeError("opfibrations must share a base")
    from .enriched import compose_vfunctor

    qk = compose_vfunctor(target.p, k)
    if qk.obj_map != source.p.obj_map or qk.hom_map != source.p.hom_map:
        return False, "the functor does not commute with the projections"
    for (e, f), (_lift_obj, chi) in sorted(source.lifts.items(), key=lambda kv: repr(kv[0])):
        image = functor_element(k, chi)
        ok, witness = is_opcartesian(target.p, image)
        if not ok:
            return False, f"image of chosen lift at (e={render_label(e)}, f={f!r}): {witness}"
    return True, ""


def check_2cell_over_base(gamma: VNatTrans, p: VFunctor):
    """True iff every component of gamma projects to an identity element."""
    bcat = p.target
    for e in gamma.source.source.objects:
        comp = gamma.at(e)
        pe = p.on_obj(comp.dom)
        projected = project_element(p, comp)
        if projected != identity_element(bcat, pe):
            return False, f"component at {render_label(e)} lies over a non-identity"
    return True, ""


def identity_opfibration(free) -> Opfibration:
    """The identity functor on a free category, with each element lifting
    itself."""
    from .enriched import identity_vfunctor

    cat = free.category
    p = identity_vfunctor(cat)
    lifts = {}
    for e in cat.objects:
        for b in cat.objects:
            for f in cat.elements(e, b):
                lifts[(e, f)] = (b, f)
    return Opfibration(p, lifts, free_base=free)
