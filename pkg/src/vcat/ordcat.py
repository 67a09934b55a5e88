"""Finite ordinary categories presented by explicit tables, and their functors.

These serve two roles: they are the objects of the finite-category
enrichment base, and they are the shape categories that pseudofunctors are
defined on.  Construction performs shape checks only (totality and typing
of the tables); the associativity and unit laws are checked separately by
:func:`category_laws` so that deliberately broken fixtures can be built and
fed to the law checkers.
"""

from __future__ import annotations

import itertools

from .errors import ShapeError
from .labels import label_key, render_label, sorted_labels


class FiniteCategory:
    """A finite category: objects, a global morphism table, identities,
    and a total composition table keyed ``(g, f) -> g after f``."""

    __slots__ = ("objects", "morphisms", "identity", "table", "_hom", "_hash")

    def __init__(self, objects, morphisms, identity, table):
        self.objects = sorted_labels(objects)
        if len(set(self.objects)) != len(self.objects):
            raise ShapeError("duplicate object labels")
        self.morphisms = dict(morphisms)
        obj_set = set(self.objects)
        for m, (d, c) in self.morphisms.items():
            if d not in obj_set or c not in obj_set:
                raise ShapeError(f"morphism {render_label(m)} has unknown endpoint")
        self.identity = dict(identity)
        if set(self.identity) != obj_set:
            raise ShapeError("identity table must cover exactly the objects")
        for b, i in self.identity.items():
            if self.morphisms.get(i) != (b, b):
                raise ShapeError(f"identity of {render_label(b)} is not an endomorphism")
        self.table = dict(table)
        composable = {
            (g, f)
            for f, (fd, fc) in self.morphisms.items()
            for g, (gd, gc) in self.morphisms.items()
            if fc == gd
        }
        if set(self.table) != composable:
            missing = composable - set(self.table)
            extra = set(self.table) - composable
            raise ShapeError(f"composition table mismatch: missing {len(missing)}, extra {len(extra)}")
        for (g, f), h in self.table.items():
            fd = self.morphisms[f][0]
            gc = self.morphisms[g][1]
            if self.morphisms.get(h) != (fd, gc):
                raise ShapeError(f"composite of ({render_label(g)},{render_label(f)}) has wrong endpoints")
        self._hom = {}
        for (a, b) in itertools.product(self.objects, repeat=2):
            self._hom[(a, b)] = tuple(
                sorted((m for m, dc in self.morphisms.items() if dc == (a, b)), key=label_key)
            )
        self._hash = None

    def hom(self, a, b):
        return self._hom.get((a, b), ())

    def all_morphisms(self):
        return sorted(self.morphisms, key=label_key)

    def dom(self, m):
        return self.morphisms[m][0]

    def cod(self, m):
        return self.morphisms[m][1]

    def id_of(self, b):
        return self.identity[b]

    def is_identity(self, m) -> bool:
        d, c = self.morphisms[m]
        return d == c and self.identity[d] == m

    def compose(self, g, f):
        """Composite g after f."""
        if self.morphisms[f][1] != self.morphisms[g][0]:
            raise ShapeError("non-composable pair")
        return self.table[(g, f)]

    def composable_pairs(self):
        """All (f, g) with cod f = dom g, in deterministic order."""
        out = []
        for f in self.all_morphisms():
            for g in self.all_morphisms():
                if self.cod(f) == self.dom(g):
                    out.append((f, g))
        return out

    def _key(self):
        return (
            self.objects,
            tuple(sorted(self.morphisms.items(), key=lambda kv: label_key(kv[0]))),
            tuple(sorted(self.identity.items(), key=lambda kv: label_key(kv[0]))),
            tuple(sorted(self.table.items(), key=lambda kv: (label_key(kv[0][0]), label_key(kv[0][1])))),
        )

    def __eq__(self, other):
        return isinstance(other, FiniteCategory) and self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self):
        return f"FiniteCategory({len(self.objects)} objects, {len(self.morphisms)} morphisms)"


def category_laws(cat: FiniteCategory):
    """Unit and associativity checks; yields (check, subject, ok, witness)."""
    for f in cat.all_morphisms():
        d, c = cat.dom(f), cat.cod(f)
        left = cat.compose(cat.id_of(c), f)
        yield ("category.unit-left", render_label(f), left == f,
               "" if left == f else f"1∘{render_label(f)} = {render_label(left)}")
        right = cat.compose(f, cat.id_of(d))
        yield ("category.unit-right", render_label(f), right == f,
               "" if right == f else f"{render_label(f)}∘1 = {render_label(right)}")
    for f in cat.all_morphisms():
        for g in cat.all_morphisms():
            if cat.cod(f) != cat.dom(g):
                continue
            for h in cat.all_morphisms():
                if cat.cod(g) != cat.dom(h):
                    continue
                lhs = cat.compose(h, cat.compose(g, f))
                rhs = cat.compose(cat.compose(h, g), f)
                subject = f"({render_label(h)},{render_label(g)},{render_label(f)})"
                yield ("category.associativity", subject, lhs == rhs,
                       "" if lhs == rhs else f"{render_label(lhs)} != {render_label(rhs)}")


def check_category(cat: FiniteCategory) -> bool:
    return all(ok for _, _, ok, _ in category_laws(cat))


class CatFunctor:
    """A functor between finite categories, as explicit object/morphism maps."""

    __slots__ = ("dom", "cod", "ob", "mor", "_hash")

    def __init__(self, dom: FiniteCategory, cod: FiniteCategory, ob, mor):
        self.dom = dom
        self.cod = cod
        self.ob = dict(ob)
        self.mor = dict(mor)
        if set(self.ob) != set(dom.objects):
            raise ShapeError("object map must cover exactly the domain objects")
        for a, fa in self.ob.items():
            if fa not in cod.objects:
                raise ShapeError(f"object image {render_label(fa)} not in codomain")
        if set(self.mor) != set(dom.morphisms):
            raise ShapeError("morphism map must cover exactly the domain morphisms")
        for m, fm in self.mor.items():
            d, c = dom.morphisms[m]
            if cod.morphisms.get(fm) != (self.ob[d], self.ob[c]):
                raise ShapeError(f"image of {render_label(m)} has wrong endpoints")
        self._hash = None

    def on_ob(self, a):
        return self.ob[a]

    def on_mor(self, m):
        return self.mor[m]

    def _key(self):
        return (
            self.dom,
            self.cod,
            tuple(sorted(self.ob.items(), key=lambda kv: label_key(kv[0]))),
            tuple(sorted(self.mor.items(), key=lambda kv: label_key(kv[0]))),
        )

    def __eq__(self, other):
        return isinstance(other, CatFunctor) and self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self):
        return f"CatFunctor({self.dom!r} -> {self.cod!r})"


def functor_laws(F: CatFunctor):
    for b in F.dom.objects:
        img = F.on_mor(F.dom.id_of(b))
        ok = img == F.cod.id_of(F.on_ob(b))
        yield ("functor.identity", render_label(b), ok,
               "" if ok else f"F(1_{render_label(b)}) = {render_label(img)}")
    for f, g in F.dom.composable_pairs():
        lhs = F.on_mor(F.dom.compose(g, f))
        rhs = F.cod.compose(F.on_mor(g), F.on_mor(f))
        ok = lhs == rhs
        yield ("functor.composition", f"({render_label(g)},{render_label(f)})", ok,
               "" if ok else f"{render_label(lhs)} != {render_label(rhs)}")


def check_functor(F: CatFunctor) -> bool:
    return all(ok for _, _, ok, _ in functor_laws(F))


def identity_functor(cat: FiniteCategory) -> CatFunctor:
    return CatFunctor(cat, cat, {b: b for b in cat.objects}, {m: m for m in cat.morphisms})


def compose_functors(G: CatFunctor, F: CatFunctor) -> CatFunctor:
    if F.cod != G.dom:
        raise ShapeError("functors not composable")
    return CatFunctor(
        F.dom,
        G.cod,
        {a: G.on_ob(fa) for a, fa in F.ob.items()},
        {m: G.on_mor(fm) for m, fm in F.mor.items()},
    )


# ---------------------------------------------------------------------------
# builders


def terminal_category(obj="*", ident="1") -> FiniteCategory:
    return FiniteCategory((obj,), {ident: (obj, obj)}, {obj: ident}, {(ident, ident): ident})


def discrete_category(objects) -> FiniteCategory:
    objects = tuple(objects)
    morphisms = {("1", b): (b, b) for b in objects}
    identity = {b: ("1", b) for b in objects}
    table = {(i, i): i for i in morphisms}
    return FiniteCategory(objects, morphisms, identity, table)


def chain_category(n: int) -> FiniteCategory:
    """The poset 0 < 1 < ... < n-1 as a category."""
    objects = tuple(f"o{i}" for i in range(n))
    morphisms = {}
    for i in range(n):
        for j in range(i, n):
            morphisms[f"a{i}{j}"] = (f"o{i}", f"o{j}")
    identity = {f"o{i}": f"a{i}{i}" for i in range(n)}
    table = {}
    for f, (fd, fc) in morphisms.items():
        for g, (gd, gc) in morphisms.items():
            if fc == gd:
                i = fd[1:]
                k = gc[1:]
                table[(g, f)] = f"a{i}{k}"
    return FiniteCategory(objects, morphisms, identity, table)


def walking_arrow() -> FiniteCategory:
    """Two objects a, b and a single non-identity arrow f: a -> b."""
    morphisms = {"ida": ("a", "a"), "idb": ("b", "b"), "f": ("a", "b")}
    identity = {"a": "ida", "b": "idb"}
    table = {
        ("ida", "ida"): "ida",
        ("idb", "idb"): "idb",
        ("f", "ida"): "f",
        ("idb", "f"): "f",
    }
    return FiniteCategory(("a", "b"), morphisms, identity, table)


def monoid_category(elements, mult, unit, obj="m") -> FiniteCategory:
    """One-object category from a monoid given as a multiplication dict."""
    elements = tuple(elements)
    morphisms = {e: (obj, obj) for e in elements}
    table = {(g, f): mult[(g, f)] for g in elements for f in elements}
    return FiniteCategory((obj,), morphisms, {obj: unit}, table)


def cyclic_monoid(n: int) -> FiniteCategory:
    elements = [f"g{i}" for i in range(n)]
    mult = {(f"g{i}", f"g{j}"): f"g{(i + j) % n}" for i in range(n) for j in range(n)}
    return monoid_category(elements, mult, "g0")


def product_category(c: FiniteCategory, d: FiniteCategory) -> FiniteCategory:
    objects = [(a, b) for a in c.objects for b in d.objects]
    morphisms = {(m, n): ((c.dom(m), d.dom(n)), (c.cod(m), d.cod(n)))
                 for m in c.morphisms for n in d.morphisms}
    identity = {(a, b): (c.id_of(a), d.id_of(b)) for a, b in objects}
    table = {}
    for (m1, n1), (d1, c1) in morphisms.items():
        for (m2, n2), (d2, c2) in morphisms.items():
            if c1 == d2:
                table[((m2, n2), (m1, n1))] = (c.compose(m2, m1), d.compose(n2, n1))
    return FiniteCategory(objects, morphisms, identity, table)


def coproduct_category(summands) -> FiniteCategory:
    objects = []
    morphisms = {}
    identity = {}
    table = {}
    for i, c in enumerate(summands):
        tag = str(i)
        for b in c.objects:
            objects.append((tag, b))
            identity[(tag, b)] = (tag, c.id_of(b))
        for m, (d0, c0) in c.morphisms.items():
            morphisms[(tag, m)] = ((tag, d0), (tag, c0))
        for (g, f), h in c.table.items():
            table[((tag, g), (tag, f))] = (tag, h)
    return FiniteCategory(objects, morphisms, identity, table)


def full_subcategory_on_pairs(c: FiniteCategory, d: FiniteCategory, obj_pairs, mor_pairs) -> FiniteCategory:
    """Subcategory of c x d spanned by given object and morphism pairs.

    The caller guarantees closure under identities and composition."""
    objects = list(obj_pairs)
    morphisms = {(m, n): ((c.dom(m), d.dom(n)), (c.cod(m), d.cod(n))) for m, n in mor_pairs}
    identity = {(a, b): (c.id_of(a), d.id_of(b)) for a, b in objects}
    table = {}
    for (m1, n1) in morphisms:
        for (m2, n2) in morphisms:
            if morphisms[(m1, n1)][1] == morphisms[(m2, n2)][0]:
                table[((m2, n2), (m1, n1))] = (c.compose(m2, m1), d.compose(n2, n1))
    return FiniteCategory(objects, morphisms, identity, table)


def is_unit_like(cat: FiniteCategory) -> bool:
    return len(cat.objects) == 1 and len(cat.morphisms) == 1


def enumerate_functors(c: FiniteCategory, d: FiniteCategory):
    """All functors c -> d, by backtracking over morphism assignments.

    Intended for small categories only; the unit-domain case (the hot path
    for hom elements) short-circuits to a scan over objects of d."""
    if is_unit_like(c):
        obj = c.objects[0]
        ident = c.id_of(obj)
        return [CatFunctor(c, d, {obj: b}, {ident: d.id_of(b)}) for b in d.objects]
    if not c.objects:
        return [CatFunctor(c, d, {}, {})]
    results = []
    mor_order = c.all_morphisms()
    for ob_images in itertools.product(d.objects, repeat=len(c.objects)):
        ob_map = dict(zip(c.objects, ob_images))
        mor_map = {}
        feasible = True
        for b in c.objects:
            mor_map[c.id_of(b)] = d.id_of(ob_map[b])
        todo = [m for m in mor_order if m not in mor_map]

        def consistent(m):
            for f in mor_order:
                if f not in mor_map:
                    continue
                if c.cod(f) == c.dom(m):
                    comp = c.table[(m, f)]
                    if comp in mor_map and d.compose(mor_map[m], mor_map[f]) != mor_map[comp]:
                        return False
                if c.cod(m) == c.dom(f):
                    comp = c.table[(f, m)]
                    if comp in mor_map and d.compose(mor_map[f], mor_map[m]) != mor_map[comp]:
                        return False
            return True

        for b in c.objects:
            if not consistent(c.id_of(b)):
                feasible = False
                break
        if not feasible:
            continue

        def backtrack(idx):
            if idx == len(todo):
                results.append(CatFunctor(c, d, dict(ob_map), dict(mor_map)))
                return
            m = todo[idx]
            dm, cm = c.dom(m), c.cod(m)
            for img in d.hom(ob_map[dm], ob_map[cm]):
                mor_map[m] = img
                if consistent(m):
                    backtrack(idx + 1)
                del mor_map[m]

        backtrack(0)
    return results
