"""Abstract contract for the finite enrichment base, plus generic machinery
built on top of it: coproduct/pullback cones, commuting squares, the
pullback-square test with witnesses, factorization through pullbacks, the
distributivity isomorphism, and the runtime verifier for the structural
properties every usable base must satisfy (tensor distributes over
coproducts, extensivity, terminal unit, connected unit).
"""

from __future__ import annotations

import random
from abc import ABC, abstractmethod
from dataclasses import dataclass

from ..errors import ShapeError, UniversalPropertyError
from ..report import VerificationReport


@dataclass(frozen=True)
class CoproductCone:
    summands: tuple
    apex: object
    injections: tuple


@dataclass(frozen=True)
class PullbackCone:
    """Chosen pullback of the cospan f: X -> Z <- Y :g."""
    f: object
    g: object
    apex: object
    proj_left: object   # apex -> dom f
    proj_right: object  # apex -> dom g
    canonical: bool = True


@dataclass(frozen=True)
class CommutingSquare:
    """A square over the cospan (f, g): corner W with p: W -> dom f and
    q: W -> dom g such that f∘p = g∘q."""
    p: object
    q: object
    f: object
    g: object


class BaseCategory(ABC):
    """Finite monoidal category with computable coproducts and pullbacks.

    Morphism equality is extensional table equality; every construction
    returns canonical representatives so that repeated calls agree.
    Instances of the same class with the same unit are interchangeable and
    compare equal."""

    name = "abstract"

    def __eq__(self, other):
        return type(self) is type(other) and self.unit() == other.unit()

    def __hash__(self):
        return hash((type(self).__name__, self.unit()))

    @abstractmethod
    def unit(self): ...

    @abstractmethod
    def is_object(self, x) -> bool: ...

    @abstractmethod
    def is_morphism(self, f) -> bool: ...

    @abstractmethod
    def identity(self, x): ...

    @abstractmethod
    def compose(self, g, f): ...

    @abstractmethod
    def tensor(self, x, y): ...

    @abstractmethod
    def tensor_mor(self, f, g): ...

    @abstractmethod
    def coproduct(self, summands) -> CoproductCone: ...

    @abstractmethod
    def copair(self, cone: CoproductCone, maps, cod=None): ...

    @abstractmethod
    def pullback(self, f, g) -> PullbackCone: ...

    @abstractmethod
    def pairing_into_pullback(self, cone: PullbackCone, u, v): ...

    @abstractmethod
    def terminal_map(self, x): ...

    @abstractmethod
    def hom_elements(self, x, y): ...

    @abstractmethod
    def is_iso(self, f) -> bool: ...

    @abstractmethod
    def inverse(self, f): ...

    @abstractmethod
    def left_unitor(self, x): ...

    @abstractmethod
    def right_unitor(self, x): ...

    @abstractmethod
    def associator(self, x, y, z): ...

    @abstractmethod
    def iso_witness(self, f): ...

    @abstractmethod
    def morphism_diff(self, f, g): ...

    @abstractmethod
    def sample_object(self, rng: random.Random, max_size: int): ...

    @abstractmethod
    def sample_morphism(self, rng: random.Random, dom, cod): ...

    # -- derived helpers ----------------------------------------------------

    def elements(self, x):
        """All maps out of the unit, i.e. the elements of x."""
        return self.hom_elements(self.unit(), x)

    def unit_pairing(self):
        """The canonical map 1 -> 1 ⊗ 1."""
        return self.inverse(self.left_unitor(self.unit()))

    def require_composable(self, g, f):
        if f.cod != g.dom:
            raise ShapeError(f"codomain of first factor {f.cod!r} != domain of second {g.dom!r}")


def compose_base(base: BaseCategory, g, f):
    """Composite g∘f with explicit precondition checking."""
    base.require_composable(g, f)
    return base.compose(g, f)


def square_commutes(base: BaseCategory, sq: CommutingSquare) -> bool:
    if sq.f.cod != sq.g.cod:
        raise ShapeError("cospan legs have different codomains")
    if sq.p.dom != sq.q.dom:
        raise ShapeError("square corner maps have different domains")
    return base.compose(sq.f, sq.p) == base.compose(sq.g, sq.q)


def comparison_morphism(base: BaseCategory, sq: CommutingSquare):
    """Canonical map from the square's corner into the chosen pullback of
    its cospan."""
    cone = base.pullback(sq.f, sq.g)
    return base.pairing_into_pullback(cone, sq.p, sq.q), cone


def is_pullback_square(base: BaseCategory, sq: CommutingSquare):
    """True iff the comparison into the chosen pullback is an isomorphism.

    Returns (ok, witness): the witness names an element merged or missed by
    the comparison map when the answer is False.  Raises on a square that
    does not commute."""
    if not square_commutes(base, sq):
        raise ShapeError("square does not commute")
    cmp_mor, _cone = comparison_morphism(base, sq)
    if base.is_iso(cmp_mor):
        return True, ""
    return False, base.iso_witness(cmp_mor)


def universal_into_pullback(base: BaseCategory, cone: PullbackCone, u, v):
    """The unique morphism into cone.apex whose projections are (u, v).

    For canonical cones this is the direct pairing.  For other cones the
    factorization goes through the canonical pullback and the comparison
    isomorphism; a non-invertible comparison signals a broken cone."""
    if u.dom != v.dom:
        raise ShapeError("candidate legs have different domains")
    if base.compose(cone.f, u) != base.compose(cone.g, v):
        raise ShapeError("candidate does not commute with the cospan")
    if cone.canonical:
        return base.pairing_into_pullback(cone, u, v)
    canon = base.pullback(cone.f, cone.g)
    through = base.pairing_into_pullback(canon, u, v)
    cmp_mor = base.pairing_into_pullback(canon, cone.proj_left, cone.proj_right)
    if not base.is_iso(cmp_mor):
        raise UniversalPropertyError(
            f"cone apex is not a pullback: {base.iso_witness(cmp_mor)}")
    return base.compose(base.inverse(cmp_mor), through)


def count_factorizations(base: BaseCategory, cone: PullbackCone, u, v):
    """Exhaustive count of morphisms into the apex commuting with both
    projections.  Used as an independent oracle for the universal property."""
    hits = []
    for h in base.hom_elements(u.dom, cone.apex):
        if base.compose(cone.proj_left, h) == u and base.compose(cone.proj_right, h) == v:
            hits.append(h)
    return hits


def distribute(base: BaseCategory, cone_a: CoproductCone, cone_b: CoproductCone):
    """Distributivity isomorphism (∐Ai) ⊗ (∐Bj) ≅ ∐(Ai ⊗ Bj).

    Returns (pairs, pair_cone, iso) where pairs lists the (i, j) summand
    indices in the order of pair_cone, and iso maps the tensor of apexes
    onto pair_cone.apex."""
    pairs = [(i, j) for i in range(len(cone_a.summands)) for j in range(len(cone_b.summands))]
    pair_cone = base.coproduct(tuple(
        base.tensor(cone_a.summands[i], cone_b.summands[j]) for i, j in pairs))
    backward = base.copair(
        pair_cone,
        [base.tensor_mor(cone_a.injections[i], cone_b.injections[j]) for i, j in pairs],
        cod=base.tensor(cone_a.apex, cone_b.apex))
    return pairs, pair_cone, base.inverse(backward)


# ---------------------------------------------------------------------------
# structural property verification


def verify_base_properties(base: BaseCategory, sample_budget: int, seed: int = 0) -> VerificationReport:
    """Sample-based verification of the structural assumptions on the base:
    tensor distributes over coproducts, pullbacks preserve coproduct
    injections and decompositions, the unit is terminal, and the unit is
    connected.  Degenerate cases (empty object, empty index set) always run."""
    if sample_budget <= 0:
        raise ShapeError("sample budget must be positive")
    rng = random.Random(seed)
    report = VerificationReport(f"base-properties[{base.name}]")

    empty_obj = base.coproduct(()).apex

    def sample(max_size=6):
        return base.sample_object(rng, max_size)

    def sample_family(n_max=4, max_size=4):
        return [sample(max_size) for _ in range(rng.randint(0, n_max))]

    def sample_map_into(cod, max_size=4):
        """A morphism into cod from some sampled domain; falls back to the
        empty domain when cod admits no maps from nonempty samples."""
        for _ in range(8):
            dom = sample(max_size)
            try:
                return base.sample_morphism(rng, dom, cod)
            except ShapeError:
                continue
        return base.sample_morphism(rng, empty_obj, cod)

    def sample_map_from(dom, max_size=4):
        for _ in range(8):
            cod = sample(max_size)
            try:
                return base.sample_morphism(rng, dom, cod)
            except ShapeError:
                continue
        return base.identity(dom)

    # connectedness of the unit, all index sizes up to 6 (includes empty)
    for k in range(0, 7):
        cone = base.coproduct(tuple(base.unit() for _ in range(k)))
        n = len(base.hom_elements(base.unit(), cone.apex))
        report.record("unit-connected", f"index-size-{k}", n == k,
                      f"|Hom(1, {k}·1)| = {n}, expected {k}")

    rounds = max(1, sample_budget)
    for i in range(rounds):
        kind = i % 4
        if kind == 0:
            # tensor preserves coproducts in both variables
            fam_a = sample_family()
            fam_b = sample_family()
            cone_a = base.coproduct(tuple(fam_a))
            cone_b = base.coproduct(tuple(fam_b))
            try:
                distribute(base, cone_a, cone_b)
                report.record("tensor-coproduct-distributivity", f"sample-{i}", True)
            except Exception as exc:  # noqa: BLE001 - recorded as witness
                report.record("tensor-coproduct-distributivity", f"sample-{i}", False, str(exc))
        elif kind == 1:
            # pullbacks preserve coproduct injections
            ys = sample_family(3)
            fs = [sample_map_from(y) for y in ys]
            xs = [f.cod for f in fs]
            cone_y = base.coproduct(tuple(ys))
            cone_x = base.coproduct(tuple(xs))
            ok_all = True
            witness = ""
            try:
                total = base.copair(cone_y, [base.compose(cone_x.injections[j], fs[j])
                                             for j in range(len(fs))],
                                    cod=cone_x.apex)
                for j in range(len(fs)):
                    sq = CommutingSquare(p=cone_y.injections[j], q=fs[j],
                                         f=total, g=cone_x.injections[j])
                    ok, w = is_pullback_square(base, sq)
                    if not ok:
                        ok_all = False
                        witness = f"summand {j}: {w}"
                        break
            except Exception as exc:  # noqa: BLE001 - recorded as witness
                ok_all = False
                witness = str(exc)
            report.record("pullback-preserves-injections", f"sample-{i}", ok_all, witness)
        elif kind == 2:
            # pullbacks preserve coproduct decompositions
            z = sample(4)
            fs = [sample_map_into(z) for _ in range(rng.randint(0, 3))]
            xs = [f.dom for f in fs]
            g = sample_map_into(z)
            cone_x = base.coproduct(tuple(xs))
            try:
                total = base.copair(cone_x, fs, cod=z)
                big = base.pullback(total, g)
                small = [base.pullback(f, g) for f in fs]
                small_cone = base.coproduct(tuple(pc.apex for pc in small))
                legs = []
                for j, pc in enumerate(small):
                    u = base.compose(cone_x.injections[j], pc.proj_left)
                    legs.append(universal_into_pullback(base, big, u, pc.proj_right))
                canonical = base.copair(small_cone, legs, cod=big.apex)
                ok = base.is_iso(canonical)
                witness = "" if ok else base.iso_witness(canonical)
            except Exception as exc:  # noqa: BLE001 - recorded as witness
                ok = False
                witness = str(exc)
            report.record("pullback-preserves-decompositions", f"sample-{i}", ok, witness)
        else:
            # the unit is terminal
            x = sample()
            maps = base.hom_elements(x, base.unit())
            report.record("unit-terminal", f"sample-{i}", len(maps) == 1,
                          f"|Hom(X, 1)| = {len(maps)} for X = {x!r}")
    return report
