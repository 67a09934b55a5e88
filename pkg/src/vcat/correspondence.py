"""The unit and counit of the 2-equivalence between opfibrations over a
free enriched base and pseudofunctors on the indexing category, plus the
end-to-end round-trip verification.

epsilon compares the Grothendieck construction of the fiber pseudofunctor
of an opfibration with the opfibration itself; eta compares a pseudofunctor
with the fiber pseudofunctor of its Grothendieck construction.  Both are
constructed together with explicit two-sided inverses, and naturality is
checked on every 1- and 2-cell supplied by the caller.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .enriched import (
    Element,
    VFunctor,
    VNatTrans,
    check_vfunctor,
    compose_vfunctor,
    functor_element,
    identity_element,
    identity_vfunctor,
    vcomp,
    whisker,
)
from .errors import ShapeError, UniversalPropertyError
from .gr import GrResult, gr, gr_on_modification, gr_on_transformation
from .igr import IgrResult, i_on_2cell, i_on_opfibered, inverse_grothendieck
from .labels import render_label
from .opfib import Opfibration, OpfiberedFunctor, ensure_verified, is_opfibered
from .pseudo import (
    Modification,
    Pseudofunctor,
    PseudonaturalTransformation,
    check_pseudofunctor,
    check_pseudonatural,
    compose_pseudonatural,
    identity_modification,
    identity_pseudonatural,
)
from .report import VerificationReport
from .vbase.core import universal_into_pullback


@dataclass
class RoundTrip:
    """Cache of I and Gr∘I applied to one opfibration."""
    opfibration: Opfibration
    igr: IgrResult
    gr: GrResult


def round_trip(of: Opfibration) -> RoundTrip:
    if of.free_base is None:
        raise ShapeError("the counit requires an opfibration over a free base")
    ensure_verified(of)
    ig = inverse_grothendieck(of)
    return RoundTrip(of, ig, gr(ig.pseudofunctor, free_base=of.free_base))


@dataclass
class EpsilonResult:
    forward: OpfiberedFunctor
    inverse: OpfiberedFunctor


def epsilon_p(rt: RoundTrip) -> EpsilonResult:
    """(e, pe) -> e; on homs, summandwise precomposition with the chosen
    lift, out of the fiber hom.  The two-sided inverse is obtained by
    inverting each hom component, which the free-base decomposition
    guarantees to be invertible."""
    of = rt.opfibration
    total = of.total
    base = total.base
    grt = rt.gr.total
    obj_map = {}
    for (e, b) in grt.category.objects:
        if of.p.on_obj(e) != b:
            raise ShapeError("round-trip object does not sit over its tag")
        obj_map[(e, b)] = e
    hom_map = {}
    for pair, cone in grt.hom_cones.items():
        (e, _b), (e2, _b2) = pair
        maps = []
        for idx, f_label in enumerate(grt.hom_order[pair]):
            f_elem = rt.igr.element_for(f_label)
            chi = of.chosen(e, f_elem)
            fib = rt.igr.fibers[of.p.on_obj(e2)]
            lift_obj = of.lift_object(e, f_elem)
            incl = fib.cones[(lift_obj, e2)].proj_left
            from .enriched import precompose

            maps.append(base.compose(precompose(total, chi, e2), incl))
        hom_map[pair] = base.copair(cone, maps, cod=total.homobj(e, e2))
    forward = VFunctor(grt.category, total, obj_map, hom_map)
    inv_obj = {e: (e, of.p.on_obj(e)) for e in total.objects}
    inv_hom = {}
    for pair, mor in hom_map.items():
        (e, _b), (e2, _b2) = pair
        if not base.is_iso(mor):
            raise UniversalPropertyError(
                "counit hom component is not invertible: " + base.iso_witness(mor))
        inv_hom[(e, e2)] = base.inverse(mor)
    inverse = VFunctor(total, grt.category, inv_obj, inv_hom)
    return EpsilonResult(
        OpfiberedFunctor(rt.gr.opfibration, of, forward),
        OpfiberedFunctor(of, rt.gr.opfibration, inverse))


def check_epsilon(rt: RoundTrip) -> VerificationReport:
    report = VerificationReport("epsilon")
    try:
        eps = epsilon_p(rt)
    except (ShapeError, UniversalPropertyError) as exc:
        report.record("epsilon.exists", "counit", False, str(exc))
        return report
    report.record("epsilon.exists", "counit", True)
    fwd = check_vfunctor(eps.forward.k)
    report.record("epsilon.functor-laws", "forward", fwd.passed,
                  "" if fwd.passed else fwd.failures()[0].to_line())
    ok, witness = is_opfibered(eps.forward.k, rt.gr.opfibration, rt.opfibration)
    report.record("epsilon.opfibered", "forward", ok, witness)
    ok, witness = is_opfibered(eps.inverse.k, rt.opfibration, rt.gr.opfibration)
    report.record("epsilon.opfibered", "inverse", ok, witness)
    left = compose_vfunctor(eps.inverse.k, eps.forward.k)
    ident = identity_vfunctor(rt.gr.total.category)
    ok = left.obj_map == ident.obj_map and left.hom_map == ident.hom_map
    report.record("epsilon.two-sided-inverse", "inverse∘forward", ok,
                  "" if ok else "composite differs from the identity")
    right = compose_vfunctor(eps.forward.k, eps.inverse.k)
    ident = identity_vfunctor(rt.opfibration.total)
    ok = right.obj_map == ident.obj_map and right.hom_map == ident.hom_map
    report.record("epsilon.two-sided-inverse", "forward∘inverse", ok,
                  "" if ok else "composite differs from the identity")
    return report


@dataclass
class EtaResult:
    forward: PseudonaturalTransformation
    inverse: PseudonaturalTransformation
    target: IgrResult


def eta_F(pf: Pseudofunctor, grres: GrResult = None,
          igrres: IgrResult = None) -> EtaResult:
    """x -> (x, b); on homs, precompose with xi and inject at the identity
    summand, landing in the fiber hom.  Squares are identities."""
    if grres is None:
        grres = gr(pf)
    if igrres is None:
        igrres = inverse_grothendieck(grres.opfibration)
    gf = igrres.pseudofunctor
    base = grres.total.category.base
    base_cat = pf.base
    components = {}
    inverse_components = {}
    for b in base_cat.objects:
        fb = pf.fiber_at[b]
        fib = igrres.fibers[b]
        obj_map = {x: (x, b) for x in fb.objects}
        hom_map = {}
        for x in fb.objects:
            for y in fb.objects:
                from .enriched import precompose

                pair = ((x, b), (y, b))
                u = base.compose(grres.total.injection(pair, base_cat.id_of(b)),
                                 precompose(fb, pf.xi[(b, x)], y))
                v = base.terminal_map(fb.homobj(x, y))
                hom_map[(x, y)] = universal_into_pullback(
                    base, fib.cones[pair], u, v)
        components[b] = VFunctor(fb, fib.category, obj_map, hom_map)
        inv_obj = {(x, b2): x for (x, b2) in fib.category.objects}
        inv_hom = {}
        for x in fb.objects:
            for y in fb.objects:
                mor = hom_map[(x, y)]
                if not base.is_iso(mor):
                    raise UniversalPropertyError(
                        "unit hom component is not invertible: " + base.iso_witness(mor))
                inv_hom[((x, b), (y, b))] = base.inverse(mor)
        inverse_components[b] = VFunctor(fib.category, fb, inv_obj, inv_hom)
    squares = {}
    inv_squares = {}
    for f_label, (b, c) in base_cat.morphisms.items():
        ff = pf.functor_at[f_label]
        gff = gf.functor_at[f_label]
        comps = {}
        for x in pf.fiber_at[b].objects:
            comps[x] = identity_element(gf.fiber_at[c], (ff.on_obj(x), c))
        squares[f_label] = VNatTrans(
            compose_vfunctor(gff, components[b]),
            compose_vfunctor(components[c], ff), comps)
        inv_comps = {}
        for (x, _b) in gf.fiber_at[b].objects:
            inv_comps[(x, b)] = identity_element(pf.fiber_at[c], ff.on_obj(x))
        inv_squares[f_label] = VNatTrans(
            compose_vfunctor(ff, inverse_components[b]),
            compose_vfunctor(inverse_components[c], gff), inv_comps)
    forward = PseudonaturalTransformation(pf, gf, components, squares)
    inverse = PseudonaturalTransformation(gf, pf, inverse_components, inv_squares)
    return EtaResult(forward, inverse, igrres)


def check_eta(pf: Pseudofunctor, grres: GrResult = None,
              igrres: IgrResult = None) -> VerificationReport:
    report = VerificationReport("eta")
    try:
        eta = eta_F(pf, grres, igrres)
    except (ShapeError, UniversalPropertyError) as exc:
        report.record("eta.exists", "unit", False, str(exc))
        return report
    report.record("eta.exists", "unit", True)
    sub = check_pseudonatural(eta.forward)
    report.record("eta.pseudonatural", "forward", sub.passed,
                  "" if sub.passed else sub.failures()[0].to_line())
    sub = check_pseudonatural(eta.inverse)
    report.record("eta.pseudonatural", "inverse", sub.passed,
                  "" if sub.passed else sub.failures()[0].to_line())
    base_cat = pf.base
    for b in base_cat.objects:
        comp = eta.forward.components[b]
        n_src = len(pf.fiber_at[b].objects)
        n_tgt = len(eta.target.pseudofunctor.fiber_at[b].objects)
        bij = n_src == n_tgt and len(set(comp.obj_map.values())) == n_src
        report.record("eta.component-object-bijection", render_label(b), bij,
                      "" if bij else f"{n_src} objects vs {n_tgt}")
        base = pf.fiber_at[b].base
        iso_ok = all(base.is_iso(m) for m in comp.hom_map.values())
        report.record("eta.component-hom-isomorphism", render_label(b), iso_ok,
                      "" if iso_ok else "a hom component is not invertible")
    for f_label in base_cat.morphisms:
        sq = eta.forward.squares[f_label]
        gf = eta.target.pseudofunctor
        c = base_cat.cod(f_label)
        ok = all(sq.at(x) == identity_element(gf.fiber_at[c], sq.at(x).dom)
                 for x in pf.fiber_at[base_cat.dom(f_label)].objects)
        report.record("eta.square-identity", render_label(f_label), ok,
                      "" if ok else "a square component is not an identity")
    return report


def naturality_epsilon(k: OpfiberedFunctor, gamma: VNatTrans,
                       rt_src: RoundTrip, rt_tgt: RoundTrip,
                       k2: OpfiberedFunctor = None) -> VerificationReport:
    """Both counit naturality equations: with the opfibered functor k and
    with a 2-cell gamma: k => k2 over the base."""
    report = VerificationReport("naturality-epsilon")
    eps_src = epsilon_p(rt_src)
    eps_tgt = epsilon_p(rt_tgt)
    if k2 is None:
        k2 = k
    alpha = i_on_opfibered(k, rt_src.igr, rt_tgt.igr)
    gik = gr_on_transformation(alpha, rt_src.gr, rt_tgt.gr)
    lhs = compose_vfunctor(eps_tgt.forward.k, gik.k)
    rhs = compose_vfunctor(k.k, eps_src.forward.k)
    ok = lhs.obj_map == rhs.obj_map and lhs.hom_map == rhs.hom_map
    report.record("naturality-epsilon.functor", "eps∘GrI(k) = k∘eps", ok,
                  "" if ok else "composites differ")
    alpha2 = i_on_opfibered(k2, rt_src.igr, rt_tgt.igr)
    gik2 = gr_on_transformation(alpha2, rt_src.gr, rt_tgt.gr)
    mod = i_on_2cell(gamma, alpha, alpha2, rt_src.igr, rt_tgt.igr)
    gigamma = gr_on_modification(mod, gik, gik2, rt_tgt.gr)
    lhs_t = vcomp_whisker_left(eps_tgt.forward.k, gigamma)
    rhs_t = whisker_right(gamma, eps_src.forward.k)
    ok = lhs_t.components == rhs_t.components
    report.record("naturality-epsilon.2cell", "eps∘GrI(gamma) = gamma∘eps", ok,
                  "" if ok else "whiskered transformations differ")
    return report


def vcomp_whisker_left(functor: VFunctor, nat: VNatTrans) -> VNatTrans:
    return whisker(functor, nat, identity_vfunctor(nat.source.source))


def whisker_right(nat: VNatTrans, functor: VFunctor) -> VNatTrans:
    return whisker(identity_vfunctor(nat.source.target), nat, functor)


def naturality_eta(alpha: PseudonaturalTransformation, mod: Modification,
                   eta_src: EtaResult, eta_tgt: EtaResult,
                   gr_src: GrResult, gr_tgt: GrResult,
                   alpha2: PseudonaturalTransformation = None) -> VerificationReport:
    """Both unit naturality equations: eta_{F'} · alpha = IGr(alpha) · eta_F
    componentwise, and the same with a modification."""
    report = VerificationReport("naturality-eta")
    igr_src, igr_tgt = eta_src.target, eta_tgt.target
    gr_alpha = gr_on_transformation(alpha, gr_src, gr_tgt)
    igr_alpha = i_on_opfibered(gr_alpha, igr_src, igr_tgt)
    lhs = compose_pseudonatural(eta_tgt.forward, alpha)
    rhs = compose_pseudonatural(igr_alpha, eta_src.forward)
    ok = True
    witness = ""
    for b in alpha.source.base.objects:
        l, r = lhs.components[b], rhs.components[b]
        if l.obj_map != r.obj_map or l.hom_map != r.hom_map:
            ok = False
            witness = f"components at {render_label(b)} differ"
            break
    if ok:
        for f_label in alpha.source.base.morphisms:
            if lhs.squares[f_label].components != rhs.squares[f_label].components:
                ok = False
                witness = f"squares at {render_label(f_label)} differ"
                break
    report.record("naturality-eta.transformation", "eta·alpha = IGr(alpha)·eta", ok, witness)
    if alpha2 is None:
        alpha2 = alpha
    gr_alpha2 = gr_on_transformation(alpha2, gr_src, gr_tgt)
    igr_alpha2 = i_on_opfibered(gr_alpha2, igr_src, igr_tgt)
    gr_mod = gr_on_modification(mod, gr_alpha, gr_alpha2, gr_tgt)
    igr_mod = i_on_2cell(gr_mod, igr_alpha, igr_alpha2, igr_src, igr_tgt)
    ok = True
    witness = ""
    for b in alpha.source.base.objects:
        for x in alpha.source.fiber_at[b].objects:
            # (eta_{F'} · Gamma)_{b,x} against IGr(Gamma)_{b,(x,b)}
            lhs_el = functor_element(eta_tgt.forward.components[b], mod.at(b).at(x))
            rhs_el = igr_mod.at(b).at((x, b))
            if lhs_el != rhs_el:
                ok = False
                witness = f"components at ({render_label(b)},{render_label(x)}) differ"
                break
        if not ok:
            break
    report.record("naturality-eta.modification", "eta·Gamma = IGr(Gamma)·eta", ok, witness)
    return report


@dataclass
class Corpus:
    """Named cells over one base category, used by the round-trip verifier."""
    pseudofunctors: dict = field(default_factory=dict)
    opfibrations: dict = field(default_factory=dict)
    transformations: dict = field(default_factory=dict)   # name -> PseudonaturalTransformation
    modifications: dict = field(default_factory=dict)     # name -> Modification
    opfibered: dict = field(default_factory=dict)         # name -> OpfiberedFunctor
    two_cells: dict = field(default_factory=dict)         # name -> (VNatTrans, k_name, k2_name)


def verify_equivalence(corpus: Corpus) -> VerificationReport:
    """The aggregate round-trip suite: eta for every pseudofunctor, epsilon
    for every opfibration, and both naturality suites over all supplied 1-
    and 2-cells (identity cells are always included)."""
    report = VerificationReport("equivalence")
    round_trips = {}
    grs = {}
    etas = {}
    for name, pf in sorted(corpus.pseudofunctors.items()):
        sub = check_pseudofunctor(pf)
        report.record("equivalence.pseudofunctor-wellformed", name, sub.passed,
                      "" if sub.passed else sub.failures()[0].to_line())
        if not sub.passed:
            continue
        grres = gr(pf)
        igrres = inverse_grothendieck(grres.opfibration)
        sub = check_eta(pf, grres, igrres)
        report.record("equivalence.eta", name, sub.passed,
                      "" if sub.passed else sub.failures()[0].to_line())
        grs[name] = grres
        etas[name] = eta_F(pf, grres, igrres)
    for name, of in sorted(corpus.opfibrations.items()):
        try:
            rt = round_trip(of)
        except Exception as exc:  # noqa: BLE001 - recorded as witness
            report.record("equivalence.epsilon", name, False, str(exc))
            continue
        sub = check_epsilon(rt)
        report.record("equivalence.epsilon", name, sub.passed,
                      "" if sub.passed else sub.failures()[0].to_line())
        round_trips[("of", name)] = rt
    for name, (alpha, src_name, tgt_name) in sorted(corpus.transformations.items()):
        eta_src, eta_tgt = etas.get(src_name), etas.get(tgt_name)
        gr_src, gr_tgt = grs.get(src_name), grs.get(tgt_name)
        if None in (eta_src, eta_tgt, gr_src, gr_tgt):
            report.record("equivalence.naturality-eta", name, False,
                          "transformation endpoints missing from the corpus")
            continue
        mod = identity_modification(alpha)
        sub = naturality_eta(alpha, mod, eta_src, eta_tgt, gr_src, gr_tgt)
        report.record("equivalence.naturality-eta", name, sub.passed,
                      "" if sub.passed else sub.failures()[0].to_line())
    for name, (mod, trans_name, trans2_name) in sorted(corpus.modifications.items()):
        alpha, src_name, tgt_name = corpus.transformations[trans_name]
        alpha2 = corpus.transformations[trans2_name][0]
        eta_src, eta_tgt = etas.get(src_name), etas.get(tgt_name)
        gr_src, gr_tgt = grs.get(src_name), grs.get(tgt_name)
        if None in (eta_src, eta_tgt, gr_src, gr_tgt):
            report.record("equivalence.naturality-eta-mod", name, False,
                          "modification endpoints missing from the corpus")
            continue
        sub = naturality_eta(alpha, mod, eta_src, eta_tgt, gr_src, gr_tgt, alpha2=alpha2)
        report.record("equivalence.naturality-eta-mod", name, sub.passed,
                      "" if sub.passed else sub.failures()[0].to_line())
    for name, (k, src_name, tgt_name) in sorted(corpus.opfibered.items()):
        rt_src, rt_tgt = round_trips.get(("of", src_name)), round_trips.get(("of", tgt_name))
        if None in (rt_src, rt_tgt):
            report.record("equivalence.naturality-epsilon", name, False,
                          "opfibered functor endpoints missing from the corpus")
            continue
        gamma = VNatTrans(k.k, k.k, {e: identity_element(k.k.target, k.k.on_obj(e))
                                     for e in k.k.source.objects})
        sub = naturality_epsilon(k, gamma, rt_src, rt_tgt)
        report.record("equivalence.naturality-epsilon", name, sub.passed,
                      "" if sub.passed else sub.failures()[0].to_line())
    for name, (gamma, k_name, k2_name) in sorted(corpus.two_cells.items()):
        k, src_name, tgt_name = corpus.opfibered[k_name]
        k2 = corpus.opfibered[k2_name][0]
        rt_src, rt_tgt = round_trips.get(("of", src_name)), round_trips.get(("of", tgt_name))
        if None in (rt_src, rt_tgt):
            report.record("equivalence.naturality-epsilon-2cell", name, False,
                          "2-cell endpoints missing from the corpus")
            continue
        sub = naturality_epsilon(k, gamma, rt_src, rt_tgt, k2=k2)
        report.record("equivalence.naturality-epsilon-2cell", name, sub.passed,
                      "" if sub.passed else sub.failures()[0].to_line())
    return report
