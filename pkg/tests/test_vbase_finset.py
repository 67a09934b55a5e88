import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vcat.errors import ShapeError
from vcat.vbase.core import (
    CommutingSquare,
    compose_base,
    count_factorizations,
    distribute,
    is_pullback_square,
    universal_into_pullback,
)
from vcat.vbase.finset import FinSetBase, FinSetMor, FinSetObj


@pytest.fixture
def base():
    return FinSetBase()


def test_compose_identity(base):
    x = base.obj(("a", "b"))
    assert base.compose(base.identity(x), base.identity(x)) == base.identity(x)


def test_compose_constant_through_terminal(base):
    a = base.obj(("a",))
    two = base.obj(("0", "1"))
    u = base.obj(("u",))
    f = base.mor(a, two, {"a": "0"})
    g = base.mor(two, u, {"0": "u", "1": "u"})
    assert compose_base(base, g, f) == base.mor(a, u, {"a": "u"})


def test_compose_mismatch_raises(base):
    a = base.obj(("a",))
    b = base.obj(("b",))
    with pytest.raises(ShapeError):
        compose_base(base, base.identity(a), base.identity(b))


@given(st.data())
@settings(max_examples=50, deadline=None)
def test_compose_matches_substitution_oracle(data):
    base = FinSetBase()
    labels = ("p", "q", "r")
    x = base.obj(labels)
    f_table = {a: data.draw(st.sampled_from(labels)) for a in labels}
    g_table = {a: data.draw(st.sampled_from(labels)) for a in labels}
    f = base.mor(x, x, f_table)
    g = base.mor(x, x, g_table)
    composite = base.compose(g, f)
    for a in labels:
        assert composite(a) == g_table[f_table[a]]


def test_tensor_cardinality_and_unit(base):
    x = base.obj(("a", "b"))
    y = base.obj(("0", "1", "2"))
    assert len(base.tensor(x, y)) == 6
    rho = base.right_unitor(x)
    assert base.is_iso(rho)
    assert rho.dom == base.tensor(x, base.unit())
    assert rho.cod == x


def test_tensor_bifunctorial(base):
    x = base.obj(("a", "b"))
    y = base.obj(("0", "1"))
    f = base.mor(x, x, {"a": "b", "b": "b"})
    g = base.mor(y, y, {"0": "1", "1": "0"})
    f2 = base.mor(x, x, {"a": "a", "b": "a"})
    g2 = base.mor(y, y, {"0": "0", "1": "0"})
    lhs = base.tensor_mor(base.compose(f2, f), base.compose(g2, g))
    rhs = base.compose(base.tensor_mor(f2, g2), base.tensor_mor(f, g))
    assert lhs == rhs


def test_coproduct_disjoint_union(base):
    cone = base.coproduct((base.obj(("1", "2")), base.obj(("3",))))
    assert len(cone.apex) == 3
    images = set()
    for inj, summand in zip(cone.injections, cone.summands):
        for a in summand:
            img = inj(a)
            assert img not in images
            images.add(img)
    assert images == set(cone.apex.labels)


def test_coproduct_of_units_has_matching_elements(base):
    cone = base.coproduct((base.unit(), base.unit()))
    assert len(cone.apex) == 2
    assert len(base.hom_elements(base.unit(), cone.apex)) == 2


def test_coproduct_sizes_sum(base):
    sizes = (2, 0, 3, 1)
    cone = base.coproduct(tuple(base.obj(tuple(f"x{i}{j}" for j in range(n)))
                                for i, n in enumerate(sizes)))
    assert len(cone.apex) == sum(sizes)


def test_pullback_of_identities(base):
    z = base.obj(("u", "v"))
    cone = base.pullback(base.identity(z), base.identity(z))
    assert len(cone.apex) == len(z)
    assert base.is_iso(cone.proj_left)


def test_pullback_agreeing_pairs(base):
    ab = base.obj(("a", "b"))
    c = base.obj(("c",))
    two = base.obj(("0", "1"))
    f = base.mor(ab, two, {"a": "0", "b": "1"})
    g = base.mor(c, two, {"c": "0"})
    cone = base.pullback(f, g)
    assert cone.apex.labels == (("a", "c"),)


def test_pullback_codomain_mismatch(base):
    a = base.obj(("a",))
    with pytest.raises(ShapeError):
        base.pullback(base.identity(a), base.identity(base.obj(("b",))))


def test_distributivity_isomorphism_exhaustive(base):
    cone_a = base.coproduct((base.obj(("a", "b")), base.obj(("c",))))
    cone_b = base.coproduct((base.obj(("0",)), base.obj(("1", "2"))))
    pairs, pair_cone, iso = distribute(base, cone_a, cone_b)
    assert base.is_iso(iso)
    assert len(pair_cone.apex) == len(cone_a.apex) * len(cone_b.apex)
    # the iso respects the tagging: each tensor pair of injected elements
    # lands in the summand with the matching pair of indices
    for (i, j), inj in zip(pairs, pair_cone.injections):
        for a in cone_a.summands[i]:
            for b in cone_b.summands[j]:
                src = (cone_a.injections[i](a), cone_b.injections[j](b))
                assert iso(src) == inj((a, b))


def test_pullback_of_coproduct_decomposes(base):
    z = base.obj(("z0", "z1"))
    xs = [base.obj(("a", "b")), base.obj(("c",))]
    fs = [base.mor(xs[0], z, {"a": "z0", "b": "z1"}), base.mor(xs[1], z, {"c": "z0"})]
    y = base.obj(("p", "q"))
    g = base.mor(y, z, {"p": "z0", "q": "z0"})
    cone = base.coproduct(tuple(xs))
    total = base.copair(cone, fs, cod=z)
    big = base.pullback(total, g)
    smalls = [base.pullback(f, g) for f in fs]
    assert len(big.apex) == sum(len(s.apex) for s in smalls)


def test_is_pullback_square_on_computed_pullback(base):
    x = base.obj(("a", "b"))
    y = base.obj(("c", "d"))
    z = base.obj(("0",))
    f = base.terminal_map(x)
    f = base.mor(x, z, {"a": "0", "b": "0"})
    g = base.mor(y, z, {"c": "0", "d": "0"})
    cone = base.pullback(f, g)
    sq = CommutingSquare(p=cone.proj_left, q=cone.proj_right, f=f, g=g)
    ok, witness = is_pullback_square(base, sq)
    assert ok and witness == ""


def test_is_pullback_square_identity_square(base):
    x = base.obj(("a", "b"))
    sq = CommutingSquare(p=base.identity(x), q=base.identity(x),
                         f=base.identity(x), g=base.identity(x))
    ok, _ = is_pullback_square(base, sq)
    assert ok


def test_is_pullback_square_false_merged_witness(base):
    # corner = apex ⊔ unit with the extra point re-hitting an existing pair:
    # the comparison merges two corner elements
    x = base.obj(("a", "b"))
    z = base.obj(("0",))
    f = base.mor(x, z, {"a": "0", "b": "0"})
    cone = base.pullback(f, f)
    fat = base.coproduct((cone.apex, base.unit()))
    point_a = base.mor(base.unit(), x, {"*": "a"})
    u = base.copair(fat, [cone.proj_left, point_a])
    v = base.copair(fat, [cone.proj_right, point_a])
    sq = CommutingSquare(p=u, q=v, f=f, g=f)
    ok, witness = is_pullback_square(base, sq)
    assert not ok
    assert "merged" in witness


def test_is_pullback_square_false_missed_witness(base):
    # a proper subobject of the pullback misses agreeing pairs
    x = base.obj(("a", "b"))
    z = base.obj(("0",))
    f = base.mor(x, z, {"a": "0", "b": "0"})
    corner = base.obj((("a", "a"),))
    incl_l = base.mor(corner, x, {("a", "a"): "a"})
    sq = CommutingSquare(p=incl_l, q=incl_l, f=f, g=f)
    ok, witness = is_pullback_square(base, sq)
    assert not ok
    assert "missed" in witness


def test_is_pullback_square_rejects_noncommuting(base):
    x = base.obj(("a", "b"))
    z = base.obj(("0", "1"))
    f = base.mor(x, z, {"a": "0", "b": "1"})
    g = base.mor(x, z, {"a": "1", "b": "0"})
    sq = CommutingSquare(p=base.identity(x), q=base.identity(x), f=f, g=g)
    with pytest.raises(ShapeError):
        is_pullback_square(base, sq)


def test_universal_into_pullback_projections_give_identity(base):
    x = base.obj(("a", "b"))
    z = base.obj(("0",))
    f = base.mor(x, z, {"a": "0", "b": "0"})
    cone = base.pullback(f, f)
    h = universal_into_pullback(base, cone, cone.proj_left, cone.proj_right)
    assert h == base.identity(cone.apex)


def test_universal_into_pullback_point_selection_matches_search(base):
    x = base.obj(("a", "b"))
    z = base.obj(("0",))
    f = base.mor(x, z, {"a": "0", "b": "0"})
    cone = base.pullback(f, f)
    pt = base.unit()
    u = base.mor(pt, x, {"*": "a"})
    v = base.mor(pt, x, {"*": "b"})
    h = universal_into_pullback(base, cone, u, v)
    assert h(("*")) == ("a", "b")
    hits = count_factorizations(base, cone, u, v)
    assert hits == [h]


def test_universal_into_pullback_rejects_noncommuting_candidate(base):
    x = base.obj(("a", "b"))
    z = base.obj(("0", "1"))
    f = base.mor(x, z, {"a": "0", "b": "1"})
    cone = base.pullback(f, f)
    pt = base.unit()
    u = base.mor(pt, x, {"*": "a"})
    v = base.mor(pt, x, {"*": "b"})
    with pytest.raises(ShapeError):
        universal_into_pullback(base, cone, u, v)


def test_pullback_pasting(base):
    # two composable squares whose composite is again a pullback square
    x = base.obj(("a", "b", "c"))
    y = base.obj(("0", "1"))
    z = base.obj(("z",))
    f = base.mor(x, y, {"a": "0", "b": "0", "c": "1"})
    g = base.mor(y, z, {"0": "z", "1": "z"})
    right = base.pullback(g, g)
    mid = base.pullback(base.compose(g, f), g)
    left = base.pullback(f, base.identity(y))
    sq_outer = CommutingSquare(p=mid.proj_left, q=mid.proj_right,
                               f=base.compose(g, f), g=g)
    ok, _ = is_pullback_square(base, sq_outer)
    assert ok


def test_hom_elements_counts(base):
    x = base.obj(("a", "b"))
    y = base.obj(("0", "1", "2"))
    assert len(base.hom_elements(x, y)) == 9
    assert len(base.hom_elements(base.obj(()), y)) == 1
    assert len(base.hom_elements(x, base.obj(()))) == 0
    assert len(base.hom_elements(x, base.unit())) == 1
