import random

import pytest

from vcat.vbase.fincat import FinCatBase
from vcat.vbase.finset import FinSetBase


@pytest.fixture
def finset():
    return FinSetBase()


@pytest.fixture
def fincat():
    return FinCatBase()


@pytest.fixture
def rng():
    return random.Random(20240)


def classical_grothendieck(pf):
    """Independent Set-level oracle for the Grothendieck construction over
    the finite-set base: objects are pairs, hom-sets are pairs (f, m) of an
    indexing morphism and an element of the corresponding fiber hom-set.

    Reads fiber hom-objects as raw label sets, without going through any of
    the enriched machinery."""
    objects = {(x, b) for b in pf.base.objects for x in pf.fiber_at[b].objects}
    homs = {}
    for (x, b) in objects:
        for (y, c) in objects:
            pairs = []
            for f in pf.base.hom(b, c):
                ffx = pf.functor_at[f].obj_map[x]
                pairs.extend((f, m) for m in pf.fiber_at[c].hom[(ffx, y)].labels)
            homs[((x, b), (y, c))] = tuple(pairs)
    return objects, homs
