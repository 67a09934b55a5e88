"""Deliberately broken enrichment bases, used to prove that the structural
property verifier actually rejects bad instances.

Three failure modes are shipped:

* ``FatUnitBase``: finite sets whose designated unit has two elements, so
  the unit is not terminal.
* ``PairBase``: pairs of finite sets with componentwise structure.  The
  unit (1, 1) is terminal, but Hom(1, k·1) has k^2 elements, so the unit is
  not connected.
* ``MergingCoproductBase``: finite sets whose "coproduct" takes the plain
  union without tagging, so injections can collide and extensivity fails.
"""

from __future__ import annotations

import random

from ..errors import ShapeError
from .core import BaseCategory, CoproductCone, PullbackCone
from .finset import FinSetBase, FinSetMor, FinSetObj


class FatUnitBase(FinSetBase):
    name = "hostile-fat-unit"

    def __init__(self):
        super().__init__(unit_labels=("u0", "u1"))


class MergingCoproductBase(FinSetBase):
    name = "hostile-merging-coproduct"

    def coproduct(self, summands):
        summands = tuple(summands)
        labels = set()
        for s in summands:
            labels.update(s.labels)
        apex = FinSetObj(labels)
        injections = tuple(FinSetMor(s, apex, {a: a for a in s}) for s in summands)
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
        for s, m in zip(cone.summands, maps):
            for a in s:
                table[a] = m(a)  # collisions silently overwrite
        return FinSetMor(cone.apex, cod, table)

    def sample_object(self, rng: random.Random, max_size: int):
        # a small fixed pool guarantees overlapping summands show up
        pool = ["p", "q", "r"]
        size = rng.randint(0, min(max_size, 3))
        rng.shuffle(pool)
        return FinSetObj(pool[:size])


class PairObj:
    __slots__ = ("left", "right", "_hash")

    def __init__(self, left: FinSetObj, right: FinSetObj):
        self.left = left
        self.right = right
        self._hash = hash((left, right))

    def __eq__(self, other):
        return isinstance(other, PairObj) and self.left == other.left and self.right == other.right

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"<{self.left!r},{self.right!r}>"


class PairMor:
    __slots__ = ("dom", "cod", "left", "right", "_hash")

    def __init__(self, left: FinSetMor, right: FinSetMor):
        self.left = left
        self.right = right
        self.dom = PairObj(left.dom, right.dom)
        self.cod = PairObj(left.cod, right.cod)
        self._hash = hash((left, right))

    def __eq__(self, other):
        return isinstance(other, PairMor) and self.left == other.left and self.right == other.right

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"<{self.left!r},{self.right!r}>"


class PairBase(BaseCategory):
    """Componentwise product of two copies of finite sets."""

    name = "hostile-disconnected-unit"

    def __init__(self):
        self._fs = FinSetBase()

    def unit(self):
        return PairObj(self._fs.unit(), self._fs.unit())

    def is_object(self, x):
        return isinstance(x, PairObj)

    def is_morphism(self, f):
        return isinstance(f, PairMor)

    def identity(self, x):
        return PairMor(self._fs.identity(x.left), self._fs.identity(x.right))

    def compose(self, g, f):
        self.require_composable(g, f)
        return PairMor(self._fs.compose(g.left, f.left), self._fs.compose(g.right, f.right))

    def tensor(self, x, y):
        return PairObj(self._fs.tensor(x.left, y.left), self._fs.tensor(x.right, y.right))

    def tensor_mor(self, f, g):
        return PairMor(self._fs.tensor_mor(f.left, g.left), self._fs.tensor_mor(f.right, g.right))

    def coproduct(self, summands):
        summands = tuple(summands)
        cl = self._fs.coproduct(tuple(s.left for s in summands))
        cr = self._fs.coproduct(tuple(s.right for s in summands))
        apex = PairObj(cl.apex, cr.apex)
        injections = tuple(PairMor(cl.injections[i], cr.injections[i])
                           for i in range(len(summands)))
        return CoproductCone(summands, apex, injections)

    def copair(self, cone, maps, cod=None):
        maps = list(maps)
        cl = self._fs.coproduct(tuple(s.left for s in cone.summands))
        cr = self._fs.coproduct(tuple(s.right for s in cone.summands))
        left = self._fs.copair(cl, [m.left for m in maps],
                               cod=None if cod is None else cod.left)
        right = self._fs.copair(cr, [m.right for m in maps],
                                cod=None if cod is None else cod.right)
        return PairMor(left, right)

    def pullback(self, f, g):
        pl = self._fs.pullback(f.left, g.left)
        pr = self._fs.pullback(f.right, g.right)
        return PullbackCone(f, g, PairObj(pl.apex, pr.apex),
                            PairMor(pl.proj_left, pr.proj_left),
                            PairMor(pl.proj_right, pr.proj_right))

    def pairing_into_pullback(self, cone, u, v):
        pl = self._fs.pullback(cone.f.left, cone.g.left)
        pr = self._fs.pullback(cone.f.right, cone.g.right)
        return PairMor(self._fs.pairing_into_pullback(pl, u.left, v.left),
                       self._fs.pairing_into_pullback(pr, u.right, v.right))

    def terminal_map(self, x):
        return PairMor(self._fs.terminal_map(x.left), self._fs.terminal_map(x.right))

    def hom_elements(self, x, y):
        return [PairMor(l, r)
                for l in self._fs.hom_elements(x.left, y.left)
                for r in self._fs.hom_elements(x.right, y.right)]

    def is_iso(self, f):
        return self._fs.is_iso(f.left) and self._fs.is_iso(f.right)

    def inverse(self, f):
        return PairMor(self._fs.inverse(f.left), self._fs.inverse(f.right))

    def iso_witness(self, f):
        return self._fs.iso_witness(f.left) or self._fs.iso_witness(f.right)

    def morphism_diff(self, f, g):
        return self._fs.morphism_diff(f.left, g.left) or self._fs.morphism_diff(f.right, g.right)

    def left_unitor(self, x):
        return PairMor(self._fs.left_unitor(x.left), self._fs.left_unitor(x.right))

    def right_unitor(self, x):
        return PairMor(self._fs.right_unitor(x.left), self._fs.right_unitor(x.right))

    def associator(self, x, y, z):
        return PairMor(self._fs.associator(x.left, y.left, z.left),
                       self._fs.associator(x.right, y.right, z.right))

    def sample_object(self, rng: random.Random, max_size: int):
        return PairObj(self._fs.sample_object(rng, max_size),
                       self._fs.sample_object(rng, max_size))

    def sample_morphism(self, rng: random.Random, dom, cod):
        return PairMor(self._fs.sample_morphism(rng, dom.left, cod.left),
                       self._fs.sample_morphism(rng, dom.right, cod.right))
