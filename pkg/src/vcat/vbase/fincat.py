"""Finite categories with the cartesian monoidal structure.

Objects of this base are finite categories given by tables
(:class:`~vcat.ordcat.FiniteCategory`), morphisms are functors between
them.  Products, coproducts and pullbacks are computed strictly, objectwise
and morphismwise, with the same canonical pair/tag representatives as the
finite-set instance.
"""

from __future__ import annotations

import random

from ..errors import ShapeError
from ..labels import render_label
from ..ordcat import (
    CatFunctor,
    FiniteCategory,
    check_category,
    check_functor,
    chain_category,
    coproduct_category,
    cyclic_monoid,
    discrete_category,
    enumerate_functors,
    full_subcategory_on_pairs,
    identity_functor,
    compose_functors,
    product_category,
    terminal_category,
    walking_arrow,
)
from .core import BaseCategory, CoproductCone, PullbackCone


class FinCatBase(BaseCategory):
    name = "fincat"

    def __init__(self):
        self._unit = terminal_category()
        self._hom_cache = {}

    def unit(self):
        return self._unit

    def is_object(self, x):
        return isinstance(x, FiniteCategory)

    def is_morphism(self, f):
        return isinstance(f, CatFunctor)

    def obj(self, cat: FiniteCategory):
        if not check_category(cat):
            raise ShapeError("category tables violate the unit or associativity laws")
        return cat

    def mor(self, functor: CatFunctor):
        if not check_functor(functor):
            raise ShapeError("functor tables violate functoriality")
        return functor

    def identity(self, x):
        return identity_functor(x)

    def compose(self, g, f):
        self.require_composable(g, f)
        return compose_functors(g, f)

    def tensor(self, x, y):
        return product_category(x, y)

    def tensor_mor(self, f, g):
        dom = product_category(f.dom, g.dom)
        cod = product_category(f.cod, g.cod)
        ob = {(a, b): (f.on_ob(a), g.on_ob(b)) for a, b in dom.objects}
        mor = {(m, n): (f.on_mor(m), g.on_mor(n)) for m, n in dom.morphisms}
        return CatFunctor(dom, cod, ob, mor)

    def coproduct(self, summands):
        summands = tuple(summands)
        apex = coproduct_category(summands)
        injections = []
        for i, s in enumerate(summands):
            tag = str(i)
            injections.append(CatFunctor(
                s, apex,
                {b: (tag, b) for b in s.objects},
                {m: (tag, m) for m in s.morphisms}))
        return CoproductCone(summands, apex, tuple(injections))

    def copair(self, cone, maps, cod=None):
        maps = list(maps)
        if len(maps) != len(cone.summands):
            raise ShapeError("copair needs one map per summand")
        for m in maps:
            if cod is None:
                cod = m.cod
            elif m.cod != cod:
                raise ShapeError("copair maps must share a codomain")
        if cod is None:
            raise ShapeError("copair out of the empty coproduct needs an explicit codomain")
        ob = {}
        mor = {}
        for i, (s, m) in enumerate(zip(cone.summands, maps)):
            if m.dom != s:
                raise ShapeError(f"map {i} does not start at summand {i}")
            tag = str(i)
            for b in s.objects:
                ob[(tag, b)] = m.on_ob(b)
            for x in s.morphisms:
                mor[(tag, x)] = m.on_mor(x)
        return CatFunctor(cone.apex, cod, ob, mor)

    def pullback(self, f, g):
        if f.cod != g.cod:
            raise ShapeError("pullback needs a cospan with common codomain")
        obj_pairs = [(a, b) for a in f.dom.objects for b in g.dom.objects
                     if f.on_ob(a) == g.on_ob(b)]
        mor_pairs = [(m, n) for m in f.dom.morphisms for n in g.dom.morphisms
                     if f.on_mor(m) == g.on_mor(n)]
        apex = full_subcategory_on_pairs(f.dom, g.dom, obj_pairs, mor_pairs)
        proj_left = CatFunctor(apex, f.dom,
                               {p: p[0] for p in apex.objects},
                               {p: p[0] for p in apex.morphisms})
        proj_right = CatFunctor(apex, g.dom,
                                {p: p[1] for p in apex.objects},
                                {p: p[1] for p in apex.morphisms})
        return PullbackCone(f, g, apex, proj_left, proj_right)

    def pairing_into_pullback(self, cone, u, v):
        return CatFunctor(u.dom, cone.apex,
                          {w: (u.on_ob(w), v.on_ob(w)) for w in u.dom.objects},
                          {m: (u.on_mor(m), v.on_mor(m)) for m in u.dom.morphisms})

    def terminal_map(self, x):
        star = self._unit.objects[0]
        ident = self._unit.id_of(star)
        return CatFunctor(x, self._unit,
                          {b: star for b in x.objects},
                          {m: ident for m in x.morphisms})

    def hom_elements(self, x, y):
        key = (x, y)
        cached = self._hom_cache.get(key)
        if cached is None:
            cached = enumerate_functors(x, y)
            self._hom_cache[key] = cached
        return cached

    def is_iso(self, f):
        return (len(f.dom.objects) == len(f.cod.objects)
                and len(set(f.ob.values())) == len(f.ob)
                and len(f.dom.morphisms) == len(f.cod.morphisms)
                and len(set(f.mor.values())) == len(f.mor))

    def inverse(self, f):
        if not self.is_iso(f):
            raise ShapeError(f"not invertible: {self.iso_witness(f)}")
        return CatFunctor(f.cod, f.dom,
                          {fa: a for a, fa in f.ob.items()},
                          {fm: m for m, fm in f.mor.items()})

    def iso_witness(self, f):
        seen = {}
        for a, fa in sorted(f.ob.items(), key=lambda kv: repr(kv)):
            if fa in seen:
                return (f"merged objects: {render_label(seen[fa])} and "
                        f"{render_label(a)} both map to {render_label(fa)}")
            seen[fa] = a
        for b in f.cod.objects:
            if b not in seen:
                return f"missed object: {render_label(b)} has no preimage"
        seen = {}
        for m, fm in sorted(f.mor.items(), key=lambda kv: repr(kv)):
            if fm in seen:
                return (f"merged morphisms: {render_label(seen[fm])} and "
                        f"{render_label(m)} both map to {render_label(fm)}")
            seen[fm] = m
        for n in f.cod.morphisms:
            if n not in seen:
                return f"missed morphism: {render_label(n)} has no preimage"
        return ""

    def morphism_diff(self, f, g):
        if f.dom != g.dom or f.cod != g.cod:
            return "different shape"
        for a in f.dom.objects:
            if f.on_ob(a) != g.on_ob(a):
                return (f"at object {render_label(a)}: {render_label(f.on_ob(a))} "
                        f"vs {render_label(g.on_ob(a))}")
        for m in f.dom.all_morphisms():
            if f.on_mor(m) != g.on_mor(m):
                return (f"at morphism {render_label(m)}: {render_label(f.on_mor(m))} "
                        f"vs {render_label(g.on_mor(m))}")
        return ""

    def left_unitor(self, x):
        dom = product_category(self._unit, x)
        return CatFunctor(dom, x,
                          {p: p[1] for p in dom.objects},
                          {m: m[1] for m in dom.morphisms})

    def right_unitor(self, x):
        dom = product_category(x, self._unit)
        return CatFunctor(dom, x,
                          {p: p[0] for p in dom.objects},
                          {m: m[0] for m in dom.morphisms})

    def associator(self, x, y, z):
        src = product_category(product_category(x, y), z)
        tgt = product_category(x, product_category(y, z))
        ob = {((a, b), c): (a, (b, c)) for (a, b), c in src.objects}
        mor = {((m, n), o): (m, (n, o)) for (m, n), o in src.morphisms}
        return CatFunctor(src, tgt, ob, mor)

    def sample_object(self, rng: random.Random, max_size: int):
        # max_size caps the number of morphisms, so enumeration stays cheap
        choices = [
            discrete_category(()),
            discrete_category(("x",)),
            discrete_category(("x", "y")),
            chain_category(2),
            chain_category(3),
            walking_arrow(),
            cyclic_monoid(2),
            cyclic_monoid(3),
            self._unit,
        ]
        candidates = [c for c in choices if len(c.morphisms) <= max_size]
        return rng.choice(candidates or [self._unit])

    def sample_morphism(self, rng: random.Random, dom, cod):
        options = self.hom_elements(dom, cod)
        if not options:
            raise ShapeError("no functors between the sampled categories")
        return rng.choice(options)


FINCAT = FinCatBase()
