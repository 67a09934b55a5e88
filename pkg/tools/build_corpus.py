#!/usr/bin/env python3
"""Regenerate the shipped fixture corpus under fixtures/.

Every file is produced through the canonical emitter, so the corpus is by
construction in the format the parser reads back losslessly.
"""

from __future__ import annotations

import pathlib
import random
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from vcat.fixtures import Emitter  # noqa: E402
from vcat.gen import (  # noqa: E402
    chaotic_vcategory,
    constant_pseudofunctor,
    diagram_map_transformation,
    diagram_pseudofunctor,
    fincat_poset_monoid_vcategory,
    finset_monoid_vcategory,
    random_diagram,
    random_diagram_map,
    sum_of_representables,
    twist_pseudofunctor,
    unique_modification,
)
from vcat.gr import gr, gr_on_modification, gr_on_transformation  # noqa: E402
from vcat.ordcat import cyclic_monoid, terminal_category, walking_arrow  # noqa: E402
from vcat.vbase import FINCAT, FINSET  # noqa: E402
from vcat.vbase.fincat import FinCatBase  # noqa: E402
from vcat.vbase.finset import FinSetBase  # noqa: E402

OUT = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def write(name, text):
    path = OUT / name
    path.write_text(text, encoding="utf-8")
    print("wrote", path)


def one_object():
    em = Emitter(FinSetBase())
    unit_vcat = chaotic_vcategory(FINSET, ("*",))
    em.emit_vcategory("point", unit_vcat)
    em.emit_pseudofunctor("triv", constant_pseudofunctor(terminal_category(), unit_vcat),
                          base_hint="one")
    write("one_object.fix", em.text())


def emit_transformation(em, name, alpha, src_pf_name, tgt_pf_name, vcat_names):
    lines = [f"[transformation {name}]", f"source: {src_pf_name}", f"target: {tgt_pf_name}"]
    for b in alpha.source.base.objects:
        src_vcat, tgt_vcat = vcat_names[(src_pf_name, b)], vcat_names[(tgt_pf_name, b)]
        fname = em.emit_vfunctor(em.fresh(f"{name}.comp"), alpha.components[b],
                                 src_vcat, tgt_vcat)
        from vcat.labels import render_label

        lines.append(f"component {render_label(b)}: {fname}")
    from vcat.labels import render_label

    for f in alpha.source.base.all_morphisms():
        b = alpha.source.base.dom(f)
        for x in alpha.source.fiber_at[b].objects:
            mor_name = em.name_morphism(alpha.squares[f].at(x).mor)
            lines.append(f"square {render_label(f)} {render_label(x)}: {mor_name}")
    em.lines.extend(lines + [""])


def emit_modification(em, name, mod, src_name, tgt_name):
    from vcat.labels import render_label

    lines = [f"[modification {name}]", f"source: {src_name}", f"target: {tgt_name}"]
    for b in mod.source.source.base.objects:
        for x in mod.source.source.fiber_at[b].objects:
            mor_name = em.name_morphism(mod.components[b].at(x).mor)
            lines.append(f"component {render_label(b)} {render_label(x)}: {mor_name}")
    em.lines.extend(lines + [""])


def main():
    OUT.mkdir(exist_ok=True)
    one_object()

    # walking arrow: two pseudofunctors, a twisted one, 1- and 2-cells, and
    # the induced opfibrations with an opfibered functor and 2-cell
    rng = random.Random(2024)
    b_cat = walking_arrow()
    d1 = sum_of_representables(b_cat, ("a",))
    d2 = sum_of_representables(b_cat, ("a", "b"))
    pf1 = diagram_pseudofunctor(FINSET, b_cat, d1[0], d1[1], "chaotic")
    pf2 = diagram_pseudofunctor(FINSET, b_cat, d2[0], d2[1], "chaotic")
    tw = twist_pseudofunctor(pf1, rng)
    alpha = diagram_map_transformation(pf1, pf2, random_diagram_map(b_cat, d1, d2, rng))
    beta = diagram_map_transformation(pf1, pf2, random_diagram_map(b_cat, d1, d2, rng))
    mod = unique_modification(alpha, beta)

    em = Emitter(FinSetBase())
    vcat_names = {}
    for pf_name, pf in (("F", pf1), ("G", pf2), ("Ftw", tw)):
        base_name = em.name_category(pf.base, "B" if pf_name == "F" else None)
        for b in pf.base.objects:
            vcat_names[(pf_name, b)] = em.emit_vcategory(
                em.fresh(f"{pf_name}.fiber"), pf.fiber_at[b])
        functor_names = {}
        for f in pf.base.all_morphisms():
            bb, cc = pf.base.morphisms[f]
            functor_names[f] = em.emit_vfunctor(
                em.fresh(f"{pf_name}.map"), pf.functor_at[f],
                vcat_names[(pf_name, bb)], vcat_names[(pf_name, cc)])
        from vcat.labels import render_label

        body = [f"[pseudofunctor {pf_name}]", f"base: {base_name}"]
        for b in pf.base.objects:
            body.append(f"fiber {render_label(b)}: {vcat_names[(pf_name, b)]}")
        for f in pf.base.all_morphisms():
            body.append(f"functor {render_label(f)}: {functor_names[f]}")
        for (b, x) in sorted(pf.xi):
            body.append(f"xi {render_label(b)} {render_label(x)}: "
                        f"{em.name_morphism(pf.xi[(b, x)].mor)}")
        for (f, g, x) in sorted(pf.theta):
            body.append(f"theta {render_label(f)} {render_label(g)} {render_label(x)}: "
                        f"{em.name_morphism(pf.theta[(f, g, x)].mor)}")
        em.lines.extend(body + [""])

    emit_transformation(em, "alpha", alpha, "F", "G", vcat_names)
    emit_transformation(em, "beta", beta, "F", "G", vcat_names)
    emit_modification(em, "gamma", mod, "alpha", "beta")

    gr1, gr2 = gr(pf1), gr(pf2)
    t1 = em.emit_vcategory("grF.total", gr1.total.category)
    em.emit_opfibration("grF", gr1.opfibration, total_name=t1)
    t2 = em.emit_vcategory("grG.total", gr2.total.category)
    em.emit_opfibration("grG", gr2.opfibration, total_name=t2)
    k = gr_on_transformation(alpha, gr1, gr2)
    k2 = gr_on_transformation(beta, gr1, gr2)
    em.emit_vfunctor("grAlpha", k.k, "grF.total", "grG.total")
    em.emit_vfunctor("grBeta", k2.k, "grF.total", "grG.total")
    gmod = gr_on_modification(mod, k, k2, gr2)
    em.emit_vnat("grGamma", gmod, "grAlpha", "grBeta")
    write("walking_arrow.fix", em.text())

    # one-object monoid base with a monoid-object fiber over finite sets
    mult = {("e", "e"): "e", ("e", "s"): "s", ("s", "e"): "s", ("s", "s"): "e"}
    mon = finset_monoid_vcategory(FINSET, ("e", "s"), mult, "e")
    em = Emitter(FinSetBase())
    em.emit_pseudofunctor("M", constant_pseudofunctor(cyclic_monoid(2), mon),
                          base_hint="C2")
    write("monoid_c2.fix", em.text())

    # category-enriched fixture
    em = Emitter(FinCatBase())
    em.emit_pseudofunctor("P", constant_pseudofunctor(
        cyclic_monoid(2), fincat_poset_monoid_vcategory(FINCAT)), base_hint="C2")
    write("fincat_poset.fix", em.text())


if __name__ == "__main__":
    main()
