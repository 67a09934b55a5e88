"""Pseudofunctors from a finite ordinary category into enriched categories,
pseudonatural transformations between them, and modifications.

A pseudofunctor preserves identities and composition only up to the
invertible 2-cells xi (comparing the image of an identity with the identity
functor) and theta (comparing the image of a composite with the composite
of images), subject to the two unit coherence laws and the associativity
coherence law.  The two coherence axioms for pseudonatural transformations
are implemented in the componentwise form in which they are consumed by the
round-trip verification: see ``check_pseudonatural``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .enriched import (
    Element,
    VCategory,
    VFunctor,
    VNatTrans,
    check_vfunctor,
    check_vnat,
    compose_vfunctor,
    element_compose,
    identity_vfunctor,
    identity_vnat,
    is_iso_underlying,
    vcomp,
    whisker,
)
from .errors import ShapeError
from .labels import render_label
from .ordcat import FiniteCategory
from .report import VerificationReport


@dataclass
class Pseudofunctor:
    """Data: a category per base object, a functor per base morphism, and
    the comparison elements xi[(b, x)]: unit -> F_b(F_1 x, x) and
    theta[(f, g, x)]: unit -> F_d(F_gf x, F_g F_f x)."""

    base: FiniteCategory
    fiber_at: dict
    functor_at: dict
    xi: dict
    theta: dict

    def __post_init__(self):
        for b in self.base.objects:
            if b not in self.fiber_at:
                raise ShapeError(f"missing fiber category at {b!r}")
        for m, (b, c) in self.base.morphisms.items():
            functor = self.functor_at.get(m)
            if functor is None:
                raise ShapeError(f"missing functor at {render_label(m)}")
            if functor.source != self.fiber_at[b] or functor.target != self.fiber_at[c]:
                raise ShapeError(f"functor at {render_label(m)} has wrong endpoints")

    def fiber(self, b) -> VCategory:
        return self.fiber_at[b]

    def functor(self, f) -> VFunctor:
        return self.functor_at[f]

    def xi_at(self, b, x) -> Element:
        return self.xi[(b, x)]

    def theta_at(self, f, g, x) -> Element:
        return self.theta[(f, g, x)]

    def xi_nat(self, b) -> VNatTrans:
        """xi as a transformation F_{1_b} => Id."""
        fb = self.fiber_at[b]
        return VNatTrans(self.functor_at[self.base.id_of(b)], identity_vfunctor(fb),
                         {x: self.xi[(b, x)] for x in fb.objects})

    def theta_nat(self, f, g) -> VNatTrans:
        """theta as a transformation F_{gf} => F_g ∘ F_f."""
        gf = self.base.compose(g, f)
        b = self.base.dom(f)
        return VNatTrans(self.functor_at[gf],
                         compose_vfunctor(self.functor_at[g], self.functor_at[f]),
                         {x: self.theta[(f, g, x)] for x in self.fiber_at[b].objects})


def strict_pseudofunctor(base: FiniteCategory, fiber_at, functor_at) -> Pseudofunctor:
    """Promote a strict assignment (identities to identity functors,
    composites on the nose) to a pseudofunctor with identity comparisons."""
    xi = {}
    theta = {}
    from .enriched import identity_element

    for b in base.objects:
        for x in fiber_at[b].objects:
            xi[(b, x)] = identity_element(fiber_at[b], x)
    for f in base.morphisms:
        for g in base.morphisms:
            if base.cod(f) != base.dom(g):
                continue
            d = base.cod(g)
            for x in fiber_at[base.dom(f)].objects:
                fx = functor_at[base.compose(g, f)].on_obj(x)
                theta[(f, g, x)] = identity_element(fiber_at[d], fx)
    return Pseudofunctor(base, fiber_at, functor_at, xi, theta)


def check_pseudofunctor(pf: Pseudofunctor) -> VerificationReport:
    """Functor laws fiberwise, invertibility and naturality of xi and theta,
    and the three coherence equations."""
    report = VerificationReport("pseudofunctor")
    base_cat = pf.base
    for f in base_cat.all_morphisms():
        sub = check_vfunctor(pf.functor_at[f])
        report.record("pseudofunctor.functor-laws", render_label(f), sub.passed,
                      "" if sub.passed else sub.failures()[0].to_line())
    for b in base_cat.objects:
        fb = pf.fiber_at[b]
        for x in fb.objects:
            ok, _inv, witness = is_iso_underlying(fb, pf.xi[(b, x)])
            report.record("pseudofunctor.xi-invertible",
                          f"({render_label(b)},{render_label(x)})", ok, witness)
        nat = check_vnat(pf.xi_nat(b))
        report.record("pseudofunctor.xi-natural", render_label(b), nat.passed,
                      "" if nat.passed else nat.failures()[0].to_line())
    for f, g in base_cat.composable_pairs():
        d = base_cat.cod(g)
        fd = pf.fiber_at[d]
        for x in pf.fiber_at[base_cat.dom(f)].objects:
            ok, _inv, witness = is_iso_underlying(fd, pf.theta[(f, g, x)])
            report.record("pseudofunctor.theta-invertible",
                          f"({render_label(f)},{render_label(g)},{render_label(x)})",
                          ok, witness)
        nat = check_vnat(pf.theta_nat(f, g))
        report.record("pseudofunctor.theta-natural",
                      f"({render_label(f)},{render_label(g)})", nat.passed,
                      "" if nat.passed else nat.failures()[0].to_line())
    # unit coherence: for f: b -> c,
    #   (F_f xi) · theta(1_b, f) = id  and  (xi F_f) · theta(f, 1_c) = id
    for f in base_cat.all_morphisms():
        b, c = base_cat.dom(f), base_cat.cod(f)
        fb, fc = pf.fiber_at[b], pf.fiber_at[c]
        ff = pf.functor_at[f]
        for x in fb.objects:
            lhs = element_compose(fc, functor_element_of(ff, pf.xi[(b, x)]),
                                  pf.theta[(base_cat.id_of(b), f, x)])
            want = identity_element_of(fc, ff.on_obj(x))
            ok = lhs == want
            report.record("pseudofunctor.unit-left",
                          f"({render_label(f)},{render_label(x)})", ok,
                          "" if ok else f"composite {lhs!r} is not the identity")
            rhs = element_compose(fc, pf.xi[(c, ff.on_obj(x))],
                                  pf.theta[(f, base_cat.id_of(c), x)])
            ok = rhs == want
            report.record("pseudofunctor.unit-right",
                          f"({render_label(f)},{render_label(x)})", ok,
                          "" if ok else f"composite {rhs!r} is not the identity")
    # associativity coherence: for b -f-> c -g-> d -h-> e,
    #   (F_h theta(f,g)) · theta(gf, h) = (theta(g,h) F_f) · theta(f, hg)
    for f in base_cat.all_morphisms():
        for g in base_cat.all_morphisms():
            if base_cat.cod(f) != base_cat.dom(g):
                continue
            for h in base_cat.all_morphisms():
                if base_cat.cod(g) != base_cat.dom(h):
                    continue
                e = base_cat.cod(h)
                fe = pf.fiber_at[e]
                gf = base_cat.compose(g, f)
                hg = base_cat.compose(h, g)
                for x in pf.fiber_at[base_cat.dom(f)].objects:
                    lhs = element_compose(
                        fe,
                        functor_element_of(pf.functor_at[h], pf.theta[(f, g, x)]),
                        pf.theta[(gf, h, x)])
                    ffx = pf.functor_at[f].on_obj(x)
                    rhs = element_compose(
                        fe,
                        pf.theta[(g, h, ffx)],
                        pf.theta[(f, hg, x)])
                    ok = lhs == rhs
                    subject = (f"({render_label(f)},{render_label(g)},"
                               f"{render_label(h)},{render_label(x)})")
                    report.record("pseudofunctor.associativity", subject, ok,
                                  "" if ok else f"{lhs!r} != {rhs!r}")
    return report


def functor_element_of(functor: VFunctor, elem: Element) -> Element:
    from .enriched import functor_element

    return functor_element(functor, elem)


def identity_element_of(cat: VCategory, x) -> Element:
    from .enriched import identity_element

    return identity_element(cat, x)


@dataclass
class PseudonaturalTransformation:
    source: Pseudofunctor
    target: Pseudofunctor
    components: dict
    squares: dict

    def __post_init__(self):
        if self.source.base != self.target.base:
            raise ShapeError("transformation requires pseudofunctors on the same base")
        for b in self.source.base.objects:
            comp = self.components.get(b)
            if comp is None:
                raise ShapeError(f"missing component at {b!r}")
            if comp.source != self.source.fiber_at[b] or comp.target != self.target.fiber_at[b]:
                raise ShapeError(f"component at {b!r} has wrong endpoints")
        for f in self.source.base.morphisms:
            if f not in self.squares:
                raise ShapeError(f"missing naturality square at {render_label(f)}")

    def at(self, b) -> VFunctor:
        return self.components[b]

    def square(self, f) -> VNatTrans:
        return self.squares[f]


def identity_pseudonatural(pf: Pseudofunctor) -> PseudonaturalTransformation:
    components = {b: identity_vfunctor(pf.fiber_at[b]) for b in pf.base.objects}
    squares = {}
    for f, (b, c) in pf.base.morphisms.items():
        ff = pf.functor_at[f]
        squares[f] = VNatTrans(compose_vfunctor(ff, components[b]),
                               compose_vfunctor(components[c], ff),
                               {x: identity_element_of(pf.fiber_at[c], ff.on_obj(x))
                                for x in pf.fiber_at[b].objects})
    return PseudonaturalTransformation(pf, pf, components, squares)


def check_pseudonatural(alpha: PseudonaturalTransformation) -> VerificationReport:
    """Componentwise functor laws, square shape/naturality/invertibility,
    and the two coherence axioms in componentwise form:

    * unit:  alpha_b(xi_x) ∘ (alpha_{1_b})_x = xi'_{alpha_b x}
    * composition:  (alpha_g)_{F_f x} ∘ G_g((alpha_f)_x) ∘ theta'_{alpha_b x}
                    = alpha_d(theta_x) ∘ (alpha_{gf})_x
    """
    report = VerificationReport("pseudonatural")
    src, tgt = alpha.source, alpha.target
    base_cat = src.base
    for b in base_cat.objects:
        sub = check_vfunctor(alpha.components[b])
        report.record("pseudonatural.component-functor", render_label(b), sub.passed,
                      "" if sub.passed else sub.failures()[0].to_line())
    for f, (b, c) in sorted(base_cat.morphisms.items(), key=lambda kv: repr(kv[0])):
        square = alpha.squares[f]
        want_src = compose_vfunctor(tgt.functor_at[f], alpha.components[b])
        want_tgt = compose_vfunctor(alpha.components[c], src.functor_at[f])
        shape_ok = square.source == want_src and square.target == want_tgt
        report.record("pseudonatural.square-shape", render_label(f), shape_ok,
                      "" if shape_ok else "square endpoints differ from G_f∘a_b => a_c∘F_f")
        if not shape_ok:
            continue
        nat = check_vnat(square)
        report.record("pseudonatural.square-natural", render_label(f), nat.passed,
                      "" if nat.passed else nat.failures()[0].to_line())
        fc = tgt.fiber_at[c]
        for x in src.fiber_at[b].objects:
            ok, _inv, witness = is_iso_underlying(fc, square.at(x))
            report.record("pseudonatural.square-invertible",
                          f"({render_label(f)},{render_label(x)})", ok, witness)
    for b in base_cat.objects:
        ident = base_cat.id_of(b)
        square = alpha.squares[ident]
        fb_tgt = tgt.fiber_at[b]
        for x in src.fiber_at[b].objects:
            lhs = element_compose(fb_tgt,
                                  functor_element_of(alpha.components[b], src.xi[(b, x)]),
                                  square.at(x))
            rhs = tgt.xi[(b, alpha.components[b].on_obj(x))]
            ok = lhs == rhs
            report.record("pseudonatural.unit-coherence",
                          f"({render_label(b)},{render_label(x)})", ok,
                          "" if ok else f"{lhs!r} != {rhs!r}")
    for f, g in base_cat.composable_pairs():
        b = base_cat.dom(f)
        d = base_cat.cod(g)
        gf = base_cat.compose(g, f)
        fd = tgt.fiber_at[d]
        for x in src.fiber_at[b].objects:
            ffx = src.functor_at[f].on_obj(x)
            abx = alpha.components[b].on_obj(x)
            lhs = element_compose(
                fd,
                alpha.squares[g].at(ffx),
                element_compose(
                    fd,
                    functor_element_of(tgt.functor_at[g], alpha.squares[f].at(x)),
                    tgt.theta[(f, g, abx)]))
            rhs = element_compose(
                fd,
                functor_element_of(alpha.components[d], src.theta[(f, g, x)]),
                alpha.squares[gf].at(x))
            ok = lhs == rhs
            report.record("pseudonatural.composition-coherence",
                          f"({render_label(f)},{render_label(g)},{render_label(x)})",
                          ok, "" if ok else f"{lhs!r} != {rhs!r}")
    return report


def compose_pseudonatural(beta: PseudonaturalTransformation,
                          alpha: PseudonaturalTransformation) -> PseudonaturalTransformation:
    """Vertical composite, with pasted squares."""
    if alpha.target is not beta.source and alpha.target != beta.source:
        raise ShapeError("transformations not composable")
    base_cat = alpha.source.base
    components = {b: compose_vfunctor(beta.components[b], alpha.components[b])
                  for b in base_cat.objects}
    squares = {}
    for f, (b, c) in base_cat.morphisms.items():
        left = whisker(identity_vfunctor(beta.components[c].target),
                       beta.squares[f], alpha.components[b])
        right = whisker(beta.components[c], alpha.squares[f],
                        identity_vfunctor(alpha.components[b].source))
        squares[f] = VNatTrans(
            compose_vfunctor(beta.target.functor_at[f], components[b]),
            compose_vfunctor(components[c], alpha.source.functor_at[f]),
            vcomp(right, left).components)
    return PseudonaturalTransformation(alpha.source, beta.target, components, squares)


@dataclass
class Modification:
    source: PseudonaturalTransformation
    target: PseudonaturalTransformation
    components: dict

    def __post_init__(self):
        if (self.source.source != self.target.source
                or self.source.target != self.target.target):
            raise ShapeError("modification requires parallel transformations")
        for b in self.source.source.base.objects:
            gamma = self.components.get(b)
            if gamma is None:
                raise ShapeError(f"missing component at {b!r}")
            if gamma.source != self.source.components[b] or gamma.target != self.target.components[b]:
                raise ShapeError(f"component at {b!r} has wrong endpoints")

    def at(self, b) -> VNatTrans:
        return self.components[b]


def identity_modification(alpha: PseudonaturalTransformation) -> Modification:
    return Modification(alpha, alpha,
                        {b: identity_vnat(alpha.components[b])
                         for b in alpha.source.base.objects})


def check_modification(mod: Modification) -> VerificationReport:
    """Naturality of each component plus the compatibility equation
    (Gamma_c F_f) · alpha_f = beta_f · (G_f Gamma_b) for every f."""
    report = VerificationReport("modification")
    alpha, beta = mod.source, mod.target
    src, tgt = alpha.source, alpha.target
    base_cat = src.base
    for b in base_cat.objects:
        nat = check_vnat(mod.components[b])
        report.record("modification.component-natural", render_label(b), nat.passed,
                      "" if nat.passed else nat.failures()[0].to_line())
    for f, (b, c) in sorted(base_cat.morphisms.items(), key=lambda kv: repr(kv[0])):
        fd = tgt.fiber_at[c]
        for x in src.fiber_at[b].objects:
            ffx = src.functor_at[f].on_obj(x)
            lhs = element_compose(fd, mod.components[c].at(ffx), alpha.squares[f].at(x))
            rhs = element_compose(
                fd, beta.squares[f].at(x),
                functor_element_of(tgt.functor_at[f], mod.components[b].at(x)))
            ok = lhs == rhs
            report.record("modification.compatibility",
                          f"({render_label(f)},{render_label(x)})", ok,
                          "" if ok else f"{lhs!r} != {rhs!r}")
    return report


def compose_modification(second: Modification, first: Modification) -> Modification:
    """Vertical composite of modifications."""
    if first.target is not second.source and first.target != second.source:
        raise ShapeError("modifications not composable")
    return Modification(first.source, second.target,
                        {b: vcomp(second.components[b], first.components[b])
                         for b in first.source.source.base.objects})
