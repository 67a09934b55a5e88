import pytest

from vcat.enriched import check_vcategory, check_vfunctor
from vcat.freeunder import (
    check_triangle_identities,
    counit_sigma,
    free_on_functor,
    free_vcategory,
    underlying_category,
    unit_iota,
)
from vcat.gen import chaotic_vcategory, finset_monoid_vcategory
from vcat.ordcat import (
    CatFunctor,
    check_category,
    coproduct_category,
    cyclic_monoid,
    discrete_category,
    terminal_category,
    walking_arrow,
)
from vcat.vbase.fincat import FinCatBase
from vcat.vbase.finset import FinSetBase
from vcat.vbase.hostile import PairBase

BASE = FinSetBase()


def test_free_on_terminal_is_unit_category():
    fv = free_vcategory(terminal_category(), BASE)
    assert fv.category.objects == ("*",)
    assert fv.category.homobj("*", "*") == BASE.coproduct((BASE.unit(),)).apex
    assert check_vcategory(fv.category).passed


def test_free_on_monoid_hom_size():
    fv = free_vcategory(cyclic_monoid(3), BASE)
    assert len(fv.category.homobj("m", "m")) == 3
    assert check_vcategory(fv.category).passed


def test_free_on_walking_arrow_empty_hom():
    fv = free_vcategory(walking_arrow(), BASE)
    assert len(fv.category.homobj("a", "b")) == 1
    assert len(fv.category.homobj("b", "a")) == 0
    assert len(fv.category.homobj("a", "a")) == 1
    assert check_vcategory(fv.category).passed


def test_underlying_of_unit_category_is_terminal():
    point = chaotic_vcategory(BASE, ("*",))
    und = underlying_category(point)
    assert len(und.category.objects) == 1
    assert len(und.category.morphisms) == 1
    assert check_category(und.category)


def test_underlying_of_free_walking_arrow_is_walking_arrow():
    iota = unit_iota(walking_arrow(), BASE)
    assert iota.is_isomorphism
    und = iota.underlying.category
    assert und.objects == ("a", "b")
    assert len(und.morphisms) == 3
    assert len(und.hom("b", "a")) == 0


def test_underlying_of_monoid_object():
    mult = {("e", "e"): "e", ("e", "s"): "s", ("s", "e"): "s", ("s", "s"): "e"}
    cat = finset_monoid_vcategory(BASE, ("e", "s"), mult, "e")
    und = underlying_category(cat)
    assert len(und.category.morphisms) == 2
    assert check_category(und.category)


def test_underlying_over_fincat_counts_subobjects():
    # one object with hom the arrow category: elements are its two objects
    from vcat.gen import fincat_poset_monoid_vcategory

    fincat = FinCatBase()
    cat = fincat_poset_monoid_vcategory(fincat)
    und = underlying_category(cat)
    assert len(und.category.morphisms) == 2
    assert check_category(und.category)


def test_iota_iso_over_both_instances():
    for base in (FinSetBase(), FinCatBase()):
        iota = unit_iota(cyclic_monoid(2), base)
        assert iota.is_isomorphism, iota.witness


def test_iota_on_empty_category():
    empty = discrete_category(())
    iota = unit_iota(empty, BASE)
    assert iota.is_isomorphism


def test_iota_fails_over_disconnected_unit():
    iota = unit_iota(cyclic_monoid(2), PairBase())
    assert not iota.is_isomorphism
    assert iota.witness


def test_sigma_on_free_category_is_isomorphism():
    fv = free_vcategory(walking_arrow(), BASE)
    sigma = counit_sigma(fv.category)
    assert check_vfunctor(sigma.functor).passed
    for pair, mor in sigma.functor.hom_map.items():
        assert BASE.is_iso(mor)


def test_sigma_hom_component_bijective_on_two_element_hom():
    mult = {("e", "e"): "e", ("e", "s"): "s", ("s", "e"): "s", ("s", "s"): "e"}
    cat = finset_monoid_vcategory(BASE, ("e", "s"), mult, "e")
    sigma = counit_sigma(cat)
    assert check_vfunctor(sigma.functor).passed
    assert BASE.is_iso(sigma.functor.hom_map[("m", "m")])


def test_triangle_identities_on_fixtures():
    for b_cat in (terminal_category(), walking_arrow(), cyclic_monoid(2)):
        report = check_triangle_identities(b_cat, BASE)
        assert report.passed, report.failures()[0].to_line()


def test_triangle_identities_over_fincat():
    report = check_triangle_identities(walking_arrow(), FinCatBase())
    assert report.passed, report.failures()[0].to_line()


def test_free_preserves_coproducts_of_categories():
    b1 = walking_arrow()
    b2 = cyclic_monoid(2)
    combined = coproduct_category((b1, b2))
    fv_combined = free_vcategory(combined, BASE)
    fv1 = free_vcategory(b1, BASE)
    fv2 = free_vcategory(b2, BASE)
    assert len(fv_combined.category.objects) == len(fv1.category.objects) + \
        len(fv2.category.objects)
    for b in b1.objects:
        for c in b1.objects:
            assert len(fv_combined.category.homobj(("0", b), ("0", c))) == \
                len(fv1.category.homobj(b, c))
    for b in b1.objects:
        for c in b2.objects:
            assert len(fv_combined.category.homobj(("0", b), ("1", c))) == 0


def test_free_on_functor_functorial():
    b1 = walking_arrow()
    fv1 = free_vcategory(b1, BASE)
    swap = CatFunctor(b1, b1, {"a": "a", "b": "b"},
                      {"ida": "ida", "idb": "idb", "f": "f"})
    functor = free_on_functor(swap, fv1, fv1)
    assert check_vfunctor(functor).passed
