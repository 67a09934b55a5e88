"""Finite sets with the cartesian monoidal structure.

Objects are finite sets of labels, morphisms are total function tables.
Canonical representatives: product elements are pairs, coproduct elements
are pairs tagged with the summand index (as a string), pullback elements
are the agreeing pairs in lexicographic order.
"""

from __future__ import annotations

import itertools
import random
import string

from ..errors import ShapeError
from ..labels import is_label, label_key, render_label, sorted_labels
from .core import BaseCategory, CoproductCone, PullbackCone


class FinSetObj:
    __slots__ = ("labels", "_set", "_hash")

    def __init__(self, labels):
        labels = tuple(labels)
        for lab in labels:
            if not is_label(lab):
                raise ShapeError(f"invalid element label {lab!r}")
        self.labels = sorted_labels(labels)
        self._set = frozenset(self.labels)
        if len(self._set) != len(self.labels):
            raise ShapeError("duplicate element labels")
        self._hash = hash(self.labels)

    def __contains__(self, lab):
        return lab in self._set

    def __iter__(self):
        return iter(self.labels)

    def __len__(self):
        return len(self.labels)

    def __eq__(self, other):
        return isinstance(other, FinSetObj) and self.labels == other.labels

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "{" + ",".join(render_label(x) for x in self.labels) + "}"


class FinSetMor:
    __slots__ = ("dom", "cod", "table", "_map", "_hash")

    def __init__(self, dom: FinSetObj, cod: FinSetObj, mapping):
        self.dom = dom
        self.cod = cod
        mapping = dict(mapping)
        if set(mapping) != dom._set:
            raise ShapeError("mapping must be total on the domain")
        for x, y in mapping.items():
            if y not in cod:
                raise ShapeError(f"image {render_label(y)} of {render_label(x)} not in codomain")
        self._map = mapping
        self.table = tuple(mapping[x] for x in dom.labels)
        self._hash = hash((self.dom, self.cod, self.table))

    def __call__(self, x):
        try:
            return self._map[x]
        except KeyError:
            raise ShapeError(f"{render_label(x)} not in domain") from None

    def items(self):
        return zip(self.dom.labels, self.table)

    def __eq__(self, other):
        return (isinstance(other, FinSetMor) and self.dom == other.dom
                and self.cod == other.cod and self.table == other.table)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        body = ", ".join(f"{render_label(x)}->{render_label(y)}" for x, y in self.items())
        return "{" + body + "}"


class FinSetBase(BaseCategory):
    name = "finset"

    def __init__(self, unit_labels=("*",)):
        self._unit = FinSetObj(unit_labels)

    def unit(self):
        return self._unit

    def is_object(self, x):
        return isinstance(x, FinSetObj)

    def is_morphism(self, f):
        return isinstance(f, FinSetMor)

    def obj(self, labels):
        return FinSetObj(labels)

    def mor(self, dom, cod, mapping):
        return FinSetMor(dom, cod, mapping)

    def identity(self, x):
        return FinSetMor(x, x, {a: a for a in x})

    def compose(self, g, f):
        self.require_composable(g, f)
        return FinSetMor(f.dom, g.cod, {a: g(f(a)) for a in f.dom})

    def tensor(self, x, y):
        return FinSetObj((a, b) for a in x for b in y)

    def tensor_mor(self, f, g):
        return FinSetMor(self.tensor(f.dom, g.dom), self.tensor(f.cod, g.cod),
                         {(a, b): (f(a), g(b)) for a in f.dom for b in g.dom})

    def coproduct(self, summands):
        summands = tuple(summands)
        apex = FinSetObj((str(i), a) for i, s in enumerate(summands) for a in s)
        injections = tuple(
            FinSetMor(s, apex, {a: (str(i), a) for a in s}) for i, s in enumerate(summands))
        return CoproductCone(summands, apex, injections)

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
        table = {}
        for i, (s, m) in enumerate(zip(cone.summands, maps)):
            if m.dom != s:
                raise ShapeError(f"map {i} does not start at summand {i}")
            for a in s:
                table[(str(i), a)] = m(a)
        return FinSetMor(cone.apex, cod, table)

    def pullback(self, f, g):
        if f.cod != g.cod:
            raise ShapeError("pullback needs a cospan with common codomain")
        pairs = [(a, b) for a in f.dom for b in g.dom if f(a) == g(b)]
        apex = FinSetObj(pairs)
        proj_left = FinSetMor(apex, f.dom, {p: p[0] for p in pairs})
        proj_right = FinSetMor(apex, g.dom, {p: p[1] for p in pairs})
        return PullbackCone(f, g, apex, proj_left, proj_right)

    def pairing_into_pullback(self, cone, u, v):
        return FinSetMor(u.dom, cone.apex, {w: (u(w), v(w)) for w in u.dom})

    def terminal_map(self, x):
        if len(self._unit) != 1:
            raise ShapeError("the unit of this instance is not a singleton")
        star = self._unit.labels[0]
        return FinSetMor(x, self._unit, {a: star for a in x})

    def hom_elements(self, x, y):
        if len(x) == 0:
            return [FinSetMor(x, y, {})]
        out = []
        for images in itertools.product(y.labels, repeat=len(x)):
            out.append(FinSetMor(x, y, dict(zip(x.labels, images))))
        return out

    def is_iso(self, f):
        return len(f.dom) == len(f.cod) and len(set(f.table)) == len(f.table)

    def inverse(self, f):
        if not self.is_iso(f):
            raise ShapeError(f"not invertible: {self.iso_witness(f)}")
        return FinSetMor(f.cod, f.dom, {y: x for x, y in f.items()})

    def iso_witness(self, f):
        seen = {}
        for x, y in f.items():
            if y in seen:
                return f"merged: {render_label(seen[y])} and {render_label(x)} both map to {render_label(y)}"
            seen[y] = x
        for y in f.cod:
            if y not in seen:
                return f"missed: {render_label(y)} has no preimage"
        return ""

    def morphism_diff(self, f, g):
        if f.dom != g.dom or f.cod != g.cod:
            return f"different shape: {f.dom!r}->{f.cod!r} vs {g.dom!r}->{g.cod!r}"
        for x in f.dom:
            if f(x) != g(x):
                return f"at {render_label(x)}: {render_label(f(x))} vs {render_label(g(x))}"
        return ""

    def left_unitor(self, x):
        star = self._unit.labels[0]
        if len(self._unit) != 1:
            raise ShapeError("unitors require a singleton unit")
        return FinSetMor(self.tensor(self._unit, x), x, {(star, a): a for a in x})

    def right_unitor(self, x):
        star = self._unit.labels[0]
        if len(self._unit) != 1:
            raise ShapeError("unitors require a singleton unit")
        return FinSetMor(self.tensor(x, self._unit), x, {(a, star): a for a in x})

    def associator(self, x, y, z):
        src = self.tensor(self.tensor(x, y), z)
        tgt = self.tensor(x, self.tensor(y, z))
        return FinSetMor(src, tgt, {((a, b), c): (a, (b, c)) for a in x for b in y for c in z})

    def sample_object(self, rng: random.Random, max_size: int):
        size = rng.randint(0, max_size)
        pool = list(string.ascii_lowercase)
        rng.shuffle(pool)
        return FinSetObj(pool[:size])

    def sample_morphism(self, rng: random.Random, dom, cod):
        if len(cod) == 0 and len(dom) > 0:
            raise ShapeError("no morphisms into the empty set from a nonempty one")
        return FinSetMor(dom, cod, {a: rng.choice(cod.labels) for a in dom})


FINSET = FinSetBase()
