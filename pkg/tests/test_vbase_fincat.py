import pytest

from vcat.errors import ShapeError
from vcat.ordcat import (
    CatFunctor,
    chain_category,
    check_category,
    cyclic_monoid,
    discrete_category,
    enumerate_functors,
    terminal_category,
    walking_arrow,
)
from vcat.vbase.core import CommutingSquare, distribute, is_pullback_square
from vcat.vbase.fincat import FinCatBase


@pytest.fixture
def base():
    return FinCatBase()


def test_builders_satisfy_laws():
    for cat in (terminal_category(), walking_arrow(), chain_category(3),
                cyclic_monoid(3), discrete_category(("a", "b"))):
        assert check_category(cat)


def test_enumerate_functors_from_unit(base):
    arrows = walking_arrow()
    functors = enumerate_functors(base.unit(), arrows)
    assert len(functors) == 2


def test_enumerate_functors_counts():
    # functors from the walking arrow into the chain 0 < 1 pick a pair i <= j
    arrows = walking_arrow()
    chain = chain_category(2)
    assert len(enumerate_functors(arrows, chain)) == 3
    # functors between cyclic groups are group homomorphisms
    assert len(enumerate_functors(cyclic_monoid(2), cyclic_monoid(2))) == 2


def test_tensor_and_unitors(base):
    arrows = walking_arrow()
    prod = base.tensor(arrows, arrows)
    assert len(prod.objects) == 4
    assert len(prod.morphisms) == 9
    lam = base.left_unitor(arrows)
    assert base.is_iso(lam)
    assoc = base.associator(arrows, arrows, arrows)
    assert base.is_iso(assoc)


def test_coproduct_and_elements(base):
    cone = base.coproduct((base.unit(), base.unit(), base.unit()))
    assert len(base.hom_elements(base.unit(), cone.apex)) == 3


def test_terminal_map_unique(base):
    arrows = walking_arrow()
    maps = base.hom_elements(arrows, base.unit())
    assert len(maps) == 1
    assert maps[0] == base.terminal_map(arrows)


def test_pullback_of_functors(base):
    chain = chain_category(2)
    pick_bottom = base.hom_elements(base.unit(), chain)[0]
    ident = base.identity(chain)
    cone = base.pullback(ident, pick_bottom)
    # apex: objects (x, *) with x the chosen object
    assert len(cone.apex.objects) == 1
    sq = CommutingSquare(p=cone.proj_left, q=cone.proj_right, f=ident, g=pick_bottom)
    ok, _ = is_pullback_square(base, sq)
    assert ok


def test_distributivity(base):
    cone_a = base.coproduct((walking_arrow(), base.unit()))
    cone_b = base.coproduct((chain_category(2),))
    _pairs, pair_cone, iso = distribute(base, cone_a, cone_b)
    assert base.is_iso(iso)
    assert len(pair_cone.apex.objects) == len(base.tensor(cone_a.apex, cone_b.apex).objects)


def test_is_iso_witnesses(base):
    arrows = walking_arrow()
    collapse = base.terminal_map(arrows)
    assert not base.is_iso(collapse)
    assert "merged" in base.iso_witness(collapse) or "missed" in base.iso_witness(collapse)
    with pytest.raises(ShapeError):
        base.inverse(collapse)


def test_object_construction_checks_laws(base):
    # a parallel pair with one unit-law entry redirected: shape-valid but
    # law-breaking, so obj() must refuse it
    from vcat.ordcat import FiniteCategory

    table = {("ida", "ida"): "ida", ("idb", "idb"): "idb",
             ("f", "ida"): "f", ("idb", "f"): "g",
             ("g", "ida"): "g", ("idb", "g"): "g"}
    broken = FiniteCategory(("a", "b"),
                            {"ida": ("a", "a"), "idb": ("b", "b"),
                             "f": ("a", "b"), "g": ("a", "b")},
                            {"a": "ida", "b": "idb"}, table)
    with pytest.raises(ShapeError):
        base.obj(broken)
