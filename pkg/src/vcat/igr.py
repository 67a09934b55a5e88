"""The inverse Grothendieck construction: from an opfibration to the
pseudofunctor of fibers and transports on the underlying category of the
base, with comparison 2-cells extracted from the uniqueness property of
chosen lifts; plus its action on opfibered functors and on natural
transformations over the base.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .enriched import (
    Element,
    VFunctor,
    VNatTrans,
    compose_vfunctor,
    element_compose,
    functor_element,
    identity_element,
)
from .errors import ShapeError
from .freeunder import underlying_category
from .opfib import (
    FiberCategory,
    Opfibration,
    OpfiberedFunctor,
    ensure_verified,
    epsilon_chi,
    fiber,
    is_opfibered,
    check_2cell_over_base,
    transport,
)
from .pseudo import Modification, Pseudofunctor, PseudonaturalTransformation
from .vbase.core import universal_into_pullback


@dataclass
class IgrResult:
    pseudofunctor: Pseudofunctor
    fibers: dict
    elements: dict = field(repr=False, default_factory=dict)
    opfibration: Opfibration = None

    def element_for(self, f_label) -> Element:
        return self.elements[f_label]


def _base_presentation(of: Opfibration):
    """The ordinary category of elements of the base, with the free-base
    indexing reused when available so labels match the original category."""
    if of.free_base is not None:
        b_cat = of.free_base.source
        elements = {f: of.free_base.element_of(f) for f in b_cat.morphisms}
        return b_cat, elements
    und = underlying_category(of.base_category)
    return und.category, dict(und.to_element)


def inverse_grothendieck(of: Opfibration) -> IgrResult:
    """Fibers on objects, transports on morphisms; xi from the comparison of
    the identity with the chosen lift of the identity, theta from the
    comparison of the composite of chosen lifts with the chosen lift of the
    composite."""
    ensure_verified(of)
    total = of.total
    b_cat, elements = _base_presentation(of)
    fibers = {b: fiber(of, b) for b in b_cat.objects}
    functor_at = {}
    for f_label, (b, c) in b_cat.morphisms.items():
        functor_at[f_label] = transport(of, elements[f_label],
                                        source_fiber=fibers[b],
                                        target_fiber=fibers[c])
    xi = {}
    for b in b_cat.objects:
        fib = fibers[b]
        for e in fib.category.objects:
            eps = epsilon_chi(of, identity_element(total, e))
            xi[(b, e)] = fib.factor(eps.dom, e, eps)
    theta = {}
    for f_label, g_label in b_cat.composable_pairs():
        b = b_cat.dom(f_label)
        d = b_cat.cod(g_label)
        f_elem = elements[f_label]
        g_elem = elements[g_label]
        for e in fibers[b].category.objects:
            chi_f = of.chosen(e, f_elem)
            chi_g = of.chosen(of.lift_object(e, f_elem), g_elem)
            composite = element_compose(total, chi_g, chi_f)
            eps = epsilon_chi(of, composite)
            theta[(f_label, g_label, e)] = fibers[d].factor(eps.dom, eps.cod, eps)
    pf = Pseudofunctor(b_cat, {b: fibers[b].category for b in b_cat.objects},
                       functor_at, xi, theta)
    return IgrResult(pf, fibers, elements, of)


def fiber_restriction(k: VFunctor, src_fib: FiberCategory, tgt_fib: FiberCategory) -> VFunctor:
    """Restrict a functor over the base to a functor between fibers."""
    base = k.source.base
    obj_map = {e: k.on_obj(e) for e in src_fib.category.objects}
    hom_map = {}
    for e in src_fib.category.objects:
        for e2 in src_fib.category.objects:
            u = base.compose(k.on_hom(e, e2), src_fib.cones[(e, e2)].proj_left)
            v = base.terminal_map(src_fib.category.homobj(e, e2))
            cone = tgt_fib.cones[(obj_map[e], obj_map[e2])]
            hom_map[(e, e2)] = universal_into_pullback(base, cone, u, v)
    return VFunctor(src_fib.category, tgt_fib.category, obj_map, hom_map)


def i_on_opfibered(k: OpfiberedFunctor, src: IgrResult, tgt: IgrResult) -> PseudonaturalTransformation:
    """Fiberwise restrictions as components; the naturality squares compare
    the chosen lift of f at k(e) with the image of the chosen lift at e."""
    ok, witness = is_opfibered(k.k, k.source, k.target)
    if not ok:
        raise ShapeError(f"functor is not opfibered: {witness}")
    b_cat = src.pseudofunctor.base
    components = {b: fiber_restriction(k.k, src.fibers[b], tgt.fibers[b])
                  for b in b_cat.objects}
    squares = {}
    for f_label, (b, c) in b_cat.morphisms.items():
        f_elem = src.elements[f_label]
        comps = {}
        for e in src.fibers[b].category.objects:
            image_chi = functor_element(k.k, k.source.chosen(e, f_elem))
            eps = epsilon_chi(k.target, image_chi)
            comps[e] = tgt.fibers[c].factor(eps.dom, eps.cod, eps)
        squares[f_label] = VNatTrans(
            compose_vfunctor(tgt.pseudofunctor.functor_at[f_label], components[b]),
            compose_vfunctor(components[c], src.pseudofunctor.functor_at[f_label]),
            comps)
    return PseudonaturalTransformation(src.pseudofunctor, tgt.pseudofunctor,
                                       components, squares)


def i_on_2cell(gamma: VNatTrans, k_trans: PseudonaturalTransformation,
               k2_trans: PseudonaturalTransformation,
               src: IgrResult, tgt: IgrResult) -> Modification:
    """Fiberwise restriction of a transformation over the base."""
    ok, witness = check_2cell_over_base(gamma, tgt.opfibration.p)
    if not ok:
        raise ShapeError(f"transformation does not lie over the base: {witness}")
    b_cat = src.pseudofunctor.base
    components = {}
    for b in b_cat.objects:
        fib = tgt.fibers[b]
        comps = {}
        for e in src.fibers[b].category.objects:
            elem = gamma.at(e)
            comps[e] = fib.factor(elem.dom, elem.cod, elem)
        components[b] = VNatTrans(k_trans.components[b], k2_trans.components[b], comps)
    return Modification(k_trans, k2_trans, components)
