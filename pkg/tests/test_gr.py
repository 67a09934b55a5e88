import random

import pytest

from conftest import classical_grothendieck

from vcat.enriched import check_vcategory, check_vnat, compose_vfunctor
from vcat.gen import (
    constant_pseudofunctor,
    diagram_map_transformation,
    diagram_pseudofunctor,
    finset_monoid_vcategory,
    random_diagram_map,
    random_pseudofunctor,
    sum_of_representables,
    twist_pseudofunctor,
    unique_modification,
)
from vcat.gr import gr, gr_on_modification, gr_on_transformation, grothendieck
from vcat.opfib import check_2cell_over_base, is_opfibered, verify_opfibration
from vcat.ordcat import cyclic_monoid, terminal_category, walking_arrow
from vcat.pseudo import compose_pseudonatural, compose_modification
from vcat.vbase.finset import FinSetBase

BASE = FinSetBase()


def test_single_object_single_morphism_base_recovers_fiber():
    mult = {("e", "e"): "e", ("e", "s"): "s", ("s", "e"): "s", ("s", "s"): "e"}
    fib = finset_monoid_vcategory(BASE, ("e", "s"), mult, "e")
    pf = constant_pseudofunctor(terminal_category(), fib)
    total = grothendieck(pf)
    assert total.category.objects == (("m", "*"),)
    # the single hom is the single coproduct summand, same size as the fiber hom
    assert len(total.category.homobj(("m", "*"), ("m", "*"))) == 2
    assert check_vcategory(total.category).passed


def test_discrete_two_three_fixture_matches_classical_shape():
    b_cat = walking_arrow()
    sets = {"a": ("x1", "x2"), "b": ("y1", "y2", "y3")}
    maps = {"ida": {"x1": "x1", "x2": "x2"},
            "idb": {"y1": "y1", "y2": "y2", "y3": "y3"},
            "f": {"x1": "y1", "x2": "y1"}}
    pf = diagram_pseudofunctor(BASE, b_cat, sets, maps, "discrete")
    total = grothendieck(pf)
    assert len(total.category.objects) == 5
    for (x, b) in total.category.objects:
        for (y, c) in total.category.objects:
            size = len(total.category.homobj((x, b), (y, c)))
            if b == "a" and c == "b":
                assert size == (1 if maps["f"][x] == y else 0)


def test_matches_classical_oracle_on_random_corpus():
    rng = random.Random(99)
    for _ in range(15):
        pf = random_pseudofunctor(BASE, rng)
        total = grothendieck(pf)
        objects, homs = classical_grothendieck(pf)
        assert set(total.category.objects) == objects
        for pair, mors in homs.items():
            assert len(total.category.homobj(*pair)) == len(mors)


def test_object_count_is_sum_of_fiber_sizes():
    rng = random.Random(5)
    pf = random_pseudofunctor(BASE, rng)
    total = grothendieck(pf)
    assert len(total.category.objects) == sum(
        len(pf.fiber_at[b].objects) for b in pf.base.objects)


def test_projection_is_verified_opfibration():
    rng = random.Random(17)
    for _ in range(5):
        pf = random_pseudofunctor(BASE, rng)
        result = gr(pf)
        report = verify_opfibration(result.opfibration)
        assert report.passed, report.failures()[0].to_line()


def test_gr_identity_transformation_is_identity_functor():
    from vcat.pseudo import identity_pseudonatural

    mult = {("e", "e"): "e", ("e", "s"): "s", ("s", "e"): "s", ("s", "s"): "e"}
    fib = finset_monoid_vcategory(BASE, ("e", "s"), mult, "e")
    pf = constant_pseudofunctor(cyclic_monoid(2), fib)
    result = gr(pf)
    k = gr_on_transformation(identity_pseudonatural(pf), result, result)
    from vcat.enriched import identity_vfunctor

    ident = identity_vfunctor(result.total.category)
    assert k.k.obj_map == ident.obj_map
    assert k.k.hom_map == ident.hom_map


@pytest.fixture
def transformation_setup():
    rng = random.Random(23)
    b_cat = walking_arrow()
    d1 = sum_of_representables(b_cat, ("a",))
    d2 = sum_of_representables(b_cat, ("a", "b"))
    d3 = sum_of_representables(b_cat, ("a", "a"))
    pf1 = diagram_pseudofunctor(BASE, b_cat, d1[0], d1[1], "chaotic")
    pf2 = diagram_pseudofunctor(BASE, b_cat, d2[0], d2[1], "chaotic")
    pf3 = diagram_pseudofunctor(BASE, b_cat, d3[0], d3[1], "chaotic")
    alpha = diagram_map_transformation(pf1, pf2, random_diagram_map(b_cat, d1, d2, rng))
    beta = diagram_map_transformation(pf2, pf3, random_diagram_map(b_cat, d2, d3, rng))
    return pf1, pf2, pf3, alpha, beta


def test_gr_on_transformation_is_opfibered(transformation_setup):
    pf1, pf2, _pf3, alpha, _beta = transformation_setup
    gr1, gr2 = gr(pf1), gr(pf2)
    k = gr_on_transformation(alpha, gr1, gr2)
    ok, witness = is_opfibered(k.k, gr1.opfibration, gr2.opfibration)
    assert ok, witness


def test_gr_preserves_composition_of_transformations(transformation_setup):
    pf1, pf2, pf3, alpha, beta = transformation_setup
    gr1, gr2, gr3 = gr(pf1), gr(pf2), gr(pf3)
    k_alpha = gr_on_transformation(alpha, gr1, gr2)
    k_beta = gr_on_transformation(beta, gr2, gr3)
    k_composite = gr_on_transformation(compose_pseudonatural(beta, alpha), gr1, gr3)
    composed = compose_vfunctor(k_beta.k, k_alpha.k)
    assert composed.obj_map == k_composite.k.obj_map
    assert composed.hom_map == k_composite.k.hom_map


def test_gr_on_modification_lands_over_identities():
    rng = random.Random(31)
    b_cat = walking_arrow()
    d1 = sum_of_representables(b_cat, ("a",))
    d2 = sum_of_representables(b_cat, ("a", "b"))
    pf1 = diagram_pseudofunctor(BASE, b_cat, d1[0], d1[1], "chaotic")
    pf2 = diagram_pseudofunctor(BASE, b_cat, d2[0], d2[1], "chaotic")
    alpha = diagram_map_transformation(pf1, pf2, random_diagram_map(b_cat, d1, d2, rng))
    beta = diagram_map_transformation(pf1, pf2, random_diagram_map(b_cat, d1, d2, rng))
    mod = unique_modification(alpha, beta)
    gr1, gr2 = gr(pf1), gr(pf2)
    k1 = gr_on_transformation(alpha, gr1, gr2)
    k2 = gr_on_transformation(beta, gr1, gr2)
    gamma = gr_on_modification(mod, k1, k2, gr2)
    assert check_vnat(gamma).passed
    ok, witness = check_2cell_over_base(gamma, gr2.opfibration.p)
    assert ok, witness
    # vertical composites are preserved
    mod_id = unique_modification(alpha, alpha)
    double = compose_modification(mod, mod_id)
    gamma2 = gr_on_modification(double, k1, k2, gr2)
    from vcat.enriched import vcomp

    gamma_id = gr_on_modification(mod_id, k1, k1, gr2)
    assert vcomp(gamma, gamma_id).components == gamma2.components


def test_identities_injected_at_identity_summand():
    rng = random.Random(40)
    pf = random_pseudofunctor(BASE, rng, b_cat=walking_arrow())
    total = grothendieck(pf)
    for (x, b) in total.category.objects:
        pair = ((x, b), (x, b))
        ident_label = pf.base.id_of(b)
        inj = total.injection(pair, ident_label)
        expected = total.category.base.compose(inj, pf.xi[(b, x)].mor)
        assert total.category.identities[(x, b)] == expected
