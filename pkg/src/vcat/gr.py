"""The Grothendieck construction: from a pseudofunctor on B to an enriched
category opfibered over the free enriched category on B.

Objects of the total category are pairs (x, b); the hom-object from (x, b)
to (y, c) is the coproduct over f: b -> c of the fiber homs F_c(F_f x, y),
with the indexing morphism of every summand retained as provenance.
Identities inject the unit comparison xi_x at the identity summand, and
composition applies F_g, precomposes with theta, composes in the fiber, and
reindexes along composition in B, extended over coproducts through the
distributivity isomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .enriched import (
    Element,
    VCategory,
    VFunctor,
    VNatTrans,
    functor_element,
    identity_element,
    precompose,
)
from .errors import ShapeError
from .freeunder import FreeVCategory, free_vcategory
from .labels import label_key
from .opfib import Opfibration, OpfiberedFunctor
from .pseudo import Modification, Pseudofunctor, PseudonaturalTransformation
from .vbase.core import distribute


@dataclass
class GrTotalCategory:
    pseudofunctor: Pseudofunctor
    category: VCategory
    hom_cones: dict = field(repr=False, default_factory=dict)
    hom_order: dict = field(repr=False, default_factory=dict)

    def summand_index(self, pair, f):
        return self.hom_order[pair].index(f)

    def injection(self, pair, f):
        """The injection of the f-indexed summand into the hom-object."""
        return self.hom_cones[pair].injections[self.summand_index(pair, f)]

    def summand(self, pair, f):
        return self.hom_cones[pair].summands[self.summand_index(pair, f)]


def grothendieck(pf: Pseudofunctor) -> GrTotalCategory:
    base_cat = pf.base
    first_fiber = pf.fiber_at[base_cat.objects[0]] if base_cat.objects else None
    if first_fiber is None:
        raise ShapeError("the base category must have at least one object")
    base = first_fiber.base
    objects = tuple((x, b) for b in base_cat.objects for x in pf.fiber_at[b].objects)
    hom_cones = {}
    hom_order = {}
    hom = {}
    for (x, b) in objects:
        for (y, c) in objects:
            fs = tuple(sorted(base_cat.hom(b, c), key=label_key))
            summands = tuple(
                pf.fiber_at[c].homobj(pf.functor_at[f].on_obj(x), y) for f in fs)
            cone = base.coproduct(summands)
            pair = ((x, b), (y, c))
            hom_cones[pair] = cone
            hom_order[pair] = fs
            hom[pair] = cone.apex
    identities = {}
    for (x, b) in objects:
        pair = ((x, b), (x, b))
        ident = base_cat.id_of(b)
        idx = hom_order[pair].index(ident)
        identities[(x, b)] = base.compose(hom_cones[pair].injections[idx],
                                          pf.xi[(b, x)].mor)
    composition = {}
    for (x, b) in objects:
        for (y, c) in objects:
            for (z, d) in objects:
                second = ((y, c), (z, d))
                first = ((x, b), (y, c))
                out = ((x, b), (z, d))
                fd = pf.fiber_at[d]
                pairs, pair_cone, dist = distribute(
                    base, hom_cones[second], hom_cones[first])
                maps = []
                for i, j in pairs:
                    g = hom_order[second][i]
                    f = hom_order[first][j]
                    ffx = pf.functor_at[f].on_obj(x)
                    fg = pf.functor_at[g]
                    gfx = pf.functor_at[base_cat.compose(g, f)].on_obj(x)
                    gy = fg.on_obj(y)
                    # F_d(F_g y, z) ⊗ F_c(F_f x, y) -> F_d(F_gf x, z)
                    step = base.tensor_mor(
                        base.identity(fd.homobj(gy, z)),
                        base.compose(
                            precompose(fd, pf.theta[(f, g, x)], gy),
                            fg.on_hom(ffx, y)))
                    composed = base.compose(fd.comp(gfx, gy, z), step)
                    k = hom_order[out].index(base_cat.compose(g, f))
                    maps.append(base.compose(hom_cones[out].injections[k], composed))
                glued = base.copair(pair_cone, maps, cod=hom[out])
                composition[((x, b), (y, c), (z, d))] = base.compose(glued, dist)
    category = VCategory(base, objects, hom, identities, composition)
    return GrTotalCategory(pf, category, hom_cones, hom_order)


def gr_projection(pf: Pseudofunctor, total: GrTotalCategory = None,
                  free_base: FreeVCategory = None) -> Opfibration:
    """The projection onto the free category on B, with the chosen lift of f
    at (x, b) given by the identity of F_f x injected at the f-summand."""
    if total is None:
        total = grothendieck(pf)
    base_cat = pf.base
    base = total.category.base
    if free_base is None:
        free_base = free_vcategory(base_cat, base)
    obj_map = {(x, b): b for (x, b) in total.category.objects}
    hom_map = {}
    for pair, cone in total.hom_cones.items():
        (_x, b), (_y, c) = pair
        maps = []
        for idx, f in enumerate(total.hom_order[pair]):
            unit_inj = free_base.element_of(f).mor
            maps.append(base.compose(unit_inj, base.terminal_map(cone.summands[idx])))
        hom_map[pair] = base.copair(cone, maps, cod=free_base.category.homobj(b, c))
    p = VFunctor(total.category, free_base.category, obj_map, hom_map)
    lifts = {}
    for (x, b) in total.category.objects:
        for c in base_cat.objects:
            for f in base_cat.hom(b, c):
                ffx = pf.functor_at[f].on_obj(x)
                lift_obj = (ffx, c)
                pair = ((x, b), lift_obj)
                chi_mor = base.compose(total.injection(pair, f),
                                       pf.fiber_at[c].identities[ffx])
                lifts[((x, b), free_base.element_of(f))] = (
                    lift_obj, Element((x, b), lift_obj, chi_mor))
    return Opfibration(p, lifts, free_base=free_base)


@dataclass
class GrResult:
    total: GrTotalCategory
    opfibration: Opfibration


def gr(pf: Pseudofunctor, free_base: FreeVCategory = None) -> GrResult:
    total = grothendieck(pf)
    return GrResult(total, gr_projection(pf, total, free_base))


def gr_on_transformation(alpha: PseudonaturalTransformation,
                         source_gr: GrResult, target_gr: GrResult) -> OpfiberedFunctor:
    """On objects (x, b) -> (alpha_b x, b); on morphisms, apply alpha_c
    summandwise and precompose with the naturality square component."""
    pf, qf = alpha.source, alpha.target
    if source_gr.total.pseudofunctor is not pf and source_gr.total.pseudofunctor != pf:
        raise ShapeError("source total category does not match the transformation")
    base = source_gr.total.category.base
    obj_map = {(x, b): (alpha.components[b].on_obj(x), b)
               for (x, b) in source_gr.total.category.objects}
    hom_map = {}
    for pair, cone in source_gr.total.hom_cones.items():
        (x, b), (y, c) = pair
        target_pair = (obj_map[(x, b)], obj_map[(y, c)])
        maps = []
        for idx, f in enumerate(source_gr.total.hom_order[pair]):
            ffx = pf.functor_at[f].on_obj(x)
            ac = alpha.components[c]
            gc = qf.fiber_at[c]
            acy = ac.on_obj(y)
            # F_c(F_f x, y) -> G_c(a_c F_f x, a_c y) -> G_c(G_f a_b x, a_c y)
            step = base.compose(
                precompose(gc, alpha.squares[f].at(x), acy),
                ac.on_hom(ffx, y))
            maps.append(base.compose(
                target_gr.total.injection(target_pair, f), step))
        hom_map[pair] = base.copair(cone, maps,
                                    cod=target_gr.total.category.homobj(*target_pair))
    k = VFunctor(source_gr.total.category, target_gr.total.category, obj_map, hom_map)
    return OpfiberedFunctor(source_gr.opfibration, target_gr.opfibration, k)


def gr_on_modification(mod: Modification, source_functor: OpfiberedFunctor,
                       target_functor: OpfiberedFunctor,
                       target_gr: GrResult) -> VNatTrans:
    """Components are the modification components composed into the identity
    summand through the unit comparison of the target."""
    alpha, beta = mod.source, mod.target
    qf = alpha.target
    base = target_gr.total.category.base
    components = {}
    for (x, b) in source_functor.k.source.objects:
        abx = alpha.components[b].on_obj(x)
        bbx = beta.components[b].on_obj(x)
        gb = qf.fiber_at[b]
        elem = mod.components[b].at(x)
        lifted = base.compose(precompose(gb, qf.xi[(b, abx)], bbx), elem.mor)
        pair = ((abx, b), (bbx, b))
        mor = base.compose(target_gr.total.injection(pair, qf.base.id_of(b)), lifted)
        components[(x, b)] = Element((abx, b), (bbx, b), mor)
    return VNatTrans(source_functor.k, target_functor.k, components)
