"""Fixture builders and randomized generators: small enriched categories,
strict pseudofunctors from set-valued diagrams, coherent non-strict
pseudofunctors obtained by twisting, transformations, modifications, and
lift perturbations.

Twisting conjugates every functor of a strict pseudofunctor by chosen
isomorphisms and installs the induced comparison 2-cells; the result is
coherent by construction and is re-checked after building.  Perturbing
lifts replaces chosen opcartesian lifts by isomorphic ones, which yields
opfibrations whose fiber pseudofunctor has non-identity comparisons.
"""

from __future__ import annotations

import random

from .enriched import (
    Element,
    VCategory,
    VFunctor,
    element_compose,
    functor_element,
    identity_element,
    identity_vfunctor,
    is_iso_underlying,
)
from .errors import ShapeError
from .labels import label_key
from .opfib import Opfibration, project_element
from .ordcat import (
    FiniteCategory,
    chain_category,
    cyclic_monoid,
    discrete_category,
    monoid_category,
    terminal_category,
    walking_arrow,
)
from .pseudo import (
    Pseudofunctor,
    PseudonaturalTransformation,
    Modification,
    check_pseudofunctor,
    check_pseudonatural,
    strict_pseudofunctor,
)
from .vbase.core import BaseCategory


# ---------------------------------------------------------------------------
# small enriched categories


def discrete_vcategory(base: BaseCategory, labels) -> VCategory:
    """Homs are the unit on the diagonal and initial off it."""
    labels = tuple(labels)
    unit = base.unit()
    empty = base.coproduct(()).apex
    hom = {(x, y): (unit if x == y else empty) for x in labels for y in labels}
    identities = {x: base.identity(unit) for x in labels}
    comp = {}
    for c in labels:
        for d in labels:
            for e in labels:
                dom = base.tensor(hom[(d, e)], hom[(c, d)])
                if c == d == e:
                    comp[(c, d, e)] = base.left_unitor(unit)
                else:
                    options = base.hom_elements(dom, hom[(c, e)])
                    if len(options) != 1:
                        raise ShapeError("discrete composition is not forced")
                    comp[(c, d, e)] = options[0]
    return VCategory(base, labels, hom, identities, comp)


def chaotic_vcategory(base: BaseCategory, labels) -> VCategory:
    """Every hom is the unit; all objects are canonically isomorphic."""
    labels = tuple(labels)
    unit = base.unit()
    hom = {(x, y): unit for x in labels for y in labels}
    identities = {x: base.identity(unit) for x in labels}
    lam = base.left_unitor(unit)
    comp = {(c, d, e): lam for c in labels for d in labels for e in labels}
    return VCategory(base, labels, hom, identities, comp)


def finset_monoid_vcategory(base, elems, mult, unit_elem, obj="m") -> VCategory:
    """One object whose endo-hom is the given monoid as a finite set."""
    hom_obj = base.obj(tuple(elems))
    hom = {(obj, obj): hom_obj}
    star = base.unit().labels[0]
    identities = {obj: base.mor(base.unit(), hom_obj, {star: unit_elem})}
    dom = base.tensor(hom_obj, hom_obj)
    table = {(g, f): mult[(g, f)] for g in elems for f in elems}
    comp = {(obj, obj, obj): base.mor(dom, hom_obj, {(g, f): table[(g, f)]
                                                     for g in elems for f in elems})}
    return VCategory(base, (obj,), hom, identities, comp)


def fincat_poset_monoid_vcategory(base, obj="m") -> VCategory:
    """One object whose endo-hom is the poset 0 < 1 under meet; a genuinely
    category-enriched example with a non-discrete hom."""
    from .ordcat import CatFunctor, product_category

    chain = chain_category(2)
    hom = {(obj, obj): chain}
    unit_cat = base.unit()
    star = unit_cat.objects[0]
    ident = unit_cat.id_of(star)
    identities = {obj: CatFunctor(unit_cat, chain, {star: "o1"}, {ident: "a11"})}
    dom = product_category(chain, chain)

    def meet(a, b):
        return "o0" if "o0" in (a, b) else "o1"

    ob = {(a, b): meet(a, b) for a, b in dom.objects}
    mor = {}
    for (m, n), ((a, b), (c, d)) in dom.morphisms.items():
        lo, hi = meet(a, b), meet(c, d)
        mor[(m, n)] = f"a{lo[1]}{hi[1]}"
    comp = {(obj, obj, obj): CatFunctor(dom, chain, ob, mor)}
    return VCategory(base, (obj,), hom, identities, comp)


def thin_vfunctor(src: VCategory, tgt: VCategory, obj_map) -> VFunctor:
    """The functor determined by an object map when every hom map is forced
    (source homs empty or unit-sized)."""
    base = src.base
    hom_map = {}
    for c in src.objects:
        for d in src.objects:
            options = base.hom_elements(src.homobj(c, d),
                                        tgt.homobj(obj_map[c], obj_map[d]))
            if len(options) != 1:
                raise ShapeError(f"hom map for ({c!r},{d!r}) is not forced")
            hom_map[(c, d)] = options[0]
    return VFunctor(src, tgt, obj_map, hom_map)


# ---------------------------------------------------------------------------
# base shapes and set-valued diagrams


def parallel_pair() -> FiniteCategory:
    morphisms = {"ida": ("a", "a"), "idb": ("b", "b"), "f": ("a", "b"), "g": ("a", "b")}
    identity = {"a": "ida", "b": "idb"}
    table = {("ida", "ida"): "ida", ("idb", "idb"): "idb",
             ("f", "ida"): "f", ("idb", "f"): "f",
             ("g", "ida"): "g", ("idb", "g"): "g"}
    return FiniteCategory(("a", "b"), morphisms, identity, table)


def idempotent_monoid() -> FiniteCategory:
    elems = ["e", "s"]
    mult = {("e", "e"): "e", ("e", "s"): "s", ("s", "e"): "s", ("s", "s"): "s"}
    return monoid_category(elems, mult, "e")


BASE_SHAPES = (
    terminal_category,
    walking_arrow,
    parallel_pair,
    lambda: chain_category(3),
    lambda: cyclic_monoid(2),
    lambda: cyclic_monoid(3),
    idempotent_monoid,
    lambda: discrete_category(("a", "b")),
)


def random_base_category(rng: random.Random) -> FiniteCategory:
    return rng.choice(BASE_SHAPES)()


def representable_diagram(b_cat: FiniteCategory, origin):
    """The set-valued diagram b -> hom(origin, b) with postcomposition."""
    sets = {b: tuple(sorted(b_cat.hom(origin, b), key=label_key)) for b in b_cat.objects}
    maps = {}
    for f, (b, c) in b_cat.morphisms.items():
        maps[f] = {g: b_cat.compose(f, g) for g in sets[b]}
    return sets, maps


def sum_of_representables(b_cat: FiniteCategory, origins):
    sets = {b: () for b in b_cat.objects}
    maps = {f: {} for f in b_cat.morphisms}
    for i, origin in enumerate(origins):
        ss, mm = representable_diagram(b_cat, origin)
        tag = str(i)
        for b in b_cat.objects:
            sets[b] = sets[b] + tuple((tag, x) for x in ss[b])
        for f in b_cat.morphisms:
            for x, y in mm[f].items():
                maps[f][(tag, x)] = (tag, y)
    return sets, maps, tuple(origins)


def random_diagram(b_cat: FiniteCategory, rng: random.Random, max_summands=2):
    n = rng.randint(1, max_summands)
    origins = [rng.choice(b_cat.objects) for _ in range(n)]
    return sum_of_representables(b_cat, origins)


def diagram_pseudofunctor(base: BaseCategory, b_cat: FiniteCategory,
                          sets, maps, style="discrete") -> Pseudofunctor:
    """A strict pseudofunctor with discrete or chaotic fibers on a
    set-valued diagram."""
    make = discrete_vcategory if style == "discrete" else chaotic_vcategory
    fiber_at = {b: make(base, sets[b]) for b in b_cat.objects}
    functor_at = {}
    for f, (b, c) in b_cat.morphisms.items():
        if b_cat.is_identity(f):
            functor_at[f] = identity_vfunctor(fiber_at[b])
        else:
            functor_at[f] = thin_vfunctor(fiber_at[b], fiber_at[c], dict(maps[f]))
    # strictness requires composites on the nose; identities are identity
    # functors by construction, composites hold because the diagram does
    return strict_pseudofunctor(b_cat, fiber_at, functor_at)


def constant_pseudofunctor(b_cat: FiniteCategory, fiber: VCategory) -> Pseudofunctor:
    functor_at = {f: identity_vfunctor(fiber) for f in b_cat.morphisms}
    return strict_pseudofunctor(b_cat, {b: fiber for b in b_cat.objects}, functor_at)


# ---------------------------------------------------------------------------
# twisting


def iso_elements_into(cat: VCategory, y):
    """All (x, t) with t an isomorphism element x -> y."""
    out = []
    for x in cat.objects:
        for t in cat.elements(x, y):
            ok, _inv, _w = is_iso_underlying(cat, t)
            if ok:
                out.append((x, t))
    return out


def conjugated_functor(functor: VFunctor, picks) -> VFunctor:
    """Replace F by x -> n(x) along isomorphisms t_x: n(x) -> F(x)."""
    from .enriched import postcompose, precompose

    tgt = functor.target
    base = tgt.base
    obj_map = {x: picks[x][0] for x in functor.source.objects}
    hom_map = {}
    for x in functor.source.objects:
        for y in functor.source.objects:
            t_x = picks[x][1]
            t_y = picks[y][1]
            _ok, t_y_inv, _w = is_iso_underlying(tgt, t_y)
            mor = functor.on_hom(x, y)
            mor = base.compose(postcompose(tgt, t_y_inv, functor.on_obj(x)), mor)
            mor = base.compose(precompose(tgt, t_x, obj_map[y]), mor)
            hom_map[(x, y)] = mor
    return VFunctor(functor.source, tgt, obj_map, hom_map)


def twist_pseudofunctor(pf: Pseudofunctor, rng: random.Random,
                        check: bool = True) -> Pseudofunctor:
    """Conjugate a strict pseudofunctor by randomly chosen isomorphisms,
    producing coherent non-identity comparison cells."""
    b_cat = pf.base
    twists = {}
    new_functor_at = {}
    for f, (b, c) in b_cat.morphisms.items():
        functor = pf.functor_at[f]
        fc = pf.fiber_at[c]
        picks = {}
        for x in pf.fiber_at[b].objects:
            options = iso_elements_into(fc, functor.on_obj(x))
            picks[x] = rng.choice(options)
        twists[f] = picks
        new_functor_at[f] = conjugated_functor(functor, picks)
    xi = {}
    for b in b_cat.objects:
        ident = b_cat.id_of(b)
        for x in pf.fiber_at[b].objects:
            # tau_{1_b, x}: n(x) -> x composed with the strict xi (identity)
            xi[(b, x)] = Element(twists[ident][x][0], x, twists[ident][x][1].mor)
    theta = {}
    for f, g in b_cat.composable_pairs():
        b, c = b_cat.dom(f), b_cat.cod(f)
        d = b_cat.cod(g)
        gf = b_cat.compose(g, f)
        fd = pf.fiber_at[d]
        for x in pf.fiber_at[b].objects:
            n_gf, t_gf = twists[gf][x]
            n_f, t_f = twists[f][x]
            _ok, t_f_inv, _w = is_iso_underlying(pf.fiber_at[c], t_f)
            n_g, t_g = twists[g][new_functor_at[f].on_obj(x)]
            _ok, t_g_inv, _w = is_iso_underlying(fd, t_g)
            t_gf_elem = Element(n_gf, pf.functor_at[gf].on_obj(x), t_gf.mor)
            step = element_compose(fd, functor_element(pf.functor_at[g], t_f_inv),
                                   t_gf_elem)
            theta[(f, g, x)] = element_compose(fd, t_g_inv, step)
    twisted = Pseudofunctor(b_cat, dict(pf.fiber_at), new_functor_at, xi, theta)
    if check:
        report = check_pseudofunctor(twisted)
        if not report.passed:
            raise ShapeError("twist produced an incoherent pseudofunctor: "
                             + report.failures()[0].to_line())
    return twisted


# ---------------------------------------------------------------------------
# transformations and modifications


def diagram_map_transformation(src_pf: Pseudofunctor, tgt_pf: Pseudofunctor,
                               obj_maps, check: bool = True) -> PseudonaturalTransformation:
    """The strict transformation induced by a map of set-valued diagrams,
    between thin-fibered strict pseudofunctors."""
    b_cat = src_pf.base
    components = {b: thin_vfunctor(src_pf.fiber_at[b], tgt_pf.fiber_at[b], obj_maps[b])
                  for b in b_cat.objects}
    squares = {}
    for f, (b, c) in b_cat.morphisms.items():
        gf = tgt_pf.functor_at[f]
        comps = {x: identity_element(tgt_pf.fiber_at[c],
                                     gf.on_obj(components[b].on_obj(x)))
                 for x in src_pf.fiber_at[b].objects}
        from .enriched import VNatTrans, compose_vfunctor

        squares[f] = VNatTrans(compose_vfunctor(gf, components[b]),
                               compose_vfunctor(components[c], src_pf.functor_at[f]),
                               comps)
    alpha = PseudonaturalTransformation(src_pf, tgt_pf, components, squares)
    if check:
        report = check_pseudonatural(alpha)
        if not report.passed:
            raise ShapeError("diagram map is not a valid transformation: "
                             + report.failures()[0].to_line())
    return alpha


def random_diagram_map(b_cat: FiniteCategory, src, tgt, rng: random.Random):
    """A natural map between sums of representables: each summand of the
    source picks an element of the target set at its origin."""
    src_sets, _src_maps, src_origins = src
    tgt_sets, tgt_maps, _tgt_origins = tgt
    picks = {}
    for i, origin in enumerate(src_origins):
        if not tgt_sets[origin]:
            raise ShapeError("no target element at the summand origin")
        picks[str(i)] = rng.choice(tgt_sets[origin])
    obj_maps = {}
    for b in b_cat.objects:
        table = {}
        for (tag, g) in src_sets[b]:
            y = picks[tag]
            # push the chosen element along g: Y(g)(y)
            table[(tag, g)] = tgt_maps[g][y]
        obj_maps[b] = table
    return obj_maps


def unique_modification(alpha: PseudonaturalTransformation,
                        beta: PseudonaturalTransformation) -> Modification:
    """The modification with the unique possible components; valid between
    transformations into chaotic (singleton-hom) fibers."""
    from .enriched import VNatTrans

    b_cat = alpha.source.base
    components = {}
    for b in b_cat.objects:
        tgt_cat = alpha.target.fiber_at[b]
        comps = {}
        for x in alpha.source.fiber_at[b].objects:
            elems = tgt_cat.elements(alpha.components[b].on_obj(x),
                                     beta.components[b].on_obj(x))
            if len(elems) != 1:
                raise ShapeError("modification components are not forced")
            comps[x] = elems[0]
        components[b] = VNatTrans(alpha.components[b], beta.components[b], comps)
    return Modification(alpha, beta, components)


# ---------------------------------------------------------------------------
# randomized corpus


def random_pseudofunctor(base: BaseCategory, rng: random.Random,
                         b_cat: FiniteCategory = None, allow_twist: bool = True,
                         max_fiber: int = 3) -> Pseudofunctor:
    """A random coherent pseudofunctor with fibers of at most max_fiber
    objects over a small base category."""
    if b_cat is None:
        b_cat = random_base_category(rng)
    style = rng.choice(("discrete", "chaotic", "constant"))
    if style == "constant":
        if base.name == "fincat":
            fib = fincat_poset_monoid_vcategory(base)
        else:
            mult = {("e", "e"): "e", ("e", "s"): "s", ("s", "e"): "s", ("s", "s"): "e"}
            fib = finset_monoid_vcategory(base, ("e", "s"), mult, "e")
        pf = constant_pseudofunctor(b_cat, fib)
    else:
        for attempt in range(8):
            n = 1 if attempt >= 4 else rng.randint(1, 2)
            origins = [rng.choice(b_cat.objects) for _ in range(n)]
            sets, maps, _origins = sum_of_representables(b_cat, origins)
            if max(len(sets[b]) for b in b_cat.objects) <= max_fiber:
                break
        else:
            sets, maps, _origins = sum_of_representables(b_cat, (b_cat.objects[0],))
        pf = diagram_pseudofunctor(base, b_cat, sets, maps, style)
    if allow_twist and rng.random() < 0.5:
        pf = twist_pseudofunctor(pf, rng, check=False)
    return pf


# ---------------------------------------------------------------------------
# lift perturbation


def perturb_lifts(of: Opfibration, rng: random.Random, tries: int = None) -> Opfibration:
    """Replace chosen lifts by isomorphic ones: chi' = u ∘ chi for a
    vertical isomorphism u out of the lift object.  The result is still an
    opfibration, generally with non-functorial choices."""
    total = of.total
    p = of.p
    new_lifts = {}
    keys = sorted(of.lifts, key=repr)
    for e, f in keys:
        lift_obj, chi = of.lifts[(e, f)]
        candidates = []
        for e2 in total.objects:
            if p.on_obj(e2) != p.on_obj(lift_obj):
                continue
            for u in total.elements(lift_obj, e2):
                if project_element(p, u) != identity_element(of.base_category,
                                                             p.on_obj(lift_obj)):
                    continue
                ok, _inv, _w = is_iso_underlying(total, u)
                if ok:
                    candidates.append(u)
        u = rng.choice(candidates)
        new_lifts[(e, f)] = (u.cod, element_compose(total, u, chi))
    return Opfibration(p, new_lifts, free_base=of.free_base)
