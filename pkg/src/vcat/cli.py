"""Command-line driver: validate fixtures, run the constructions, and emit
results in the fixture format.

Exit codes: 0 when every check passes, 1 when a verification fails, 2 on
parse errors or bad usage.
"""

from __future__ import annotations

import argparse
import sys

from .correspondence import Corpus, verify_equivalence
from .enriched import check_vcategory, check_vfunctor, check_vnat
from .errors import FixtureError, VcatError
from .fixtures import Emitter, parse_fixture
from .freeunder import free_vcategory, underlying_category
from .gr import gr
from .igr import inverse_grothendieck
from .labels import render_label
from .opfib import fiber, transport, verify_opfibration
from .ordcat import category_laws
from .pseudo import check_modification, check_pseudofunctor, check_pseudonatural
from .report import VerificationReport
from .vbase import verify_base_properties
from .vbase.fincat import FinCatBase

COMMANDS = ("validate", "free", "underlying", "fibers", "transport",
            "gr", "igr", "roundtrip", "base-check")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vcat",
        description="constructions and law checkers for enriched categories "
                    "opfibered over free bases")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("fixture", help="path to a fixture document")
    parser.add_argument("--budget", type=int, default=50,
                        help="sampling budget for base-check")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for randomized sampling")
    parser.add_argument("--emit", default=None,
                        help="write construction output to this path instead of stdout")
    parser.add_argument("--name", default=None,
                        help="restrict a construction command to one named entity")
    parser.add_argument("--along", default=None,
                        help="base morphism label for the transport command")
    return parser


def _selected(mapping, name, what):
    if name is None:
        return sorted(mapping.items())
    if name not in mapping:
        raise FixtureError(f"no {what} named {name!r} in the document")
    return [(name, mapping[name])]


def cmd_validate(doc, args, out) -> VerificationReport:
    report = VerificationReport("validate")
    for name, cat in sorted(doc.categories.items()):
        ok = True
        witness = ""
        for check, subject, law_ok, w in category_laws(cat):
            if not law_ok:
                ok = False
                witness = f"{check} at {subject}: {w}"
                break
        report.record("validate.category", name, ok, witness)
    for name, vcat in sorted(doc.vcategories.items()):
        sub = check_vcategory(vcat)
        report.record("validate.vcategory", name, sub.passed,
                      "" if sub.passed else sub.failures()[0].to_line())
    for name, functor in sorted(doc.vfunctors.items()):
        sub = check_vfunctor(functor)
        report.record("validate.vfunctor", name, sub.passed,
                      "" if sub.passed else sub.failures()[0].to_line())
    for name, nat in sorted(doc.vnats.items()):
        sub = check_vnat(nat)
        report.record("validate.vnat", name, sub.passed,
                      "" if sub.passed else sub.failures()[0].to_line())
    for name, pf in sorted(doc.pseudofunctors.items()):
        sub = check_pseudofunctor(pf)
        report.record("validate.pseudofunctor", name, sub.passed,
                      "" if sub.passed else sub.failures()[0].to_line())
    for name, alpha in sorted(doc.transformations.items()):
        sub = check_pseudonatural(alpha)
        report.record("validate.transformation", name, sub.passed,
                      "" if sub.passed else sub.failures()[0].to_line())
    for name, mod in sorted(doc.modifications.items()):
        sub = check_modification(mod)
        report.record("validate.modification", name, sub.passed,
                      "" if sub.passed else sub.failures()[0].to_line())
    for name, of in sorted(doc.opfibrations.items()):
        try:
            sub = verify_opfibration(of)
            report.record("validate.opfibration", name, sub.passed,
                          "" if sub.passed else sub.failures()[0].to_line())
        except VcatError as exc:
            report.record("validate.opfibration", name, False, str(exc))
    return report


def cmd_free(doc, args, out) -> VerificationReport:
    report = VerificationReport("free")
    emitter = Emitter(doc.base)
    for name, cat in _selected(doc.categories, args.name, "category"):
        fv = free_vcategory(cat, doc.base)
        emitter.emit_vcategory(f"free.{name}", fv.category)
        report.record("free.built", name, True)
    out.write(emitter.text())
    return report


def cmd_underlying(doc, args, out) -> VerificationReport:
    report = VerificationReport("underlying")
    emitter = Emitter(doc.base)
    for name, vcat in _selected(doc.vcategories, args.name, "vcategory"):
        und = underlying_category(vcat)
        emitter.name_category(und.category, f"underlying.{name}")
        report.record("underlying.built", name, True)
    out.write(emitter.text())
    return report


def cmd_fibers(doc, args, out) -> VerificationReport:
    report = VerificationReport("fibers")
    emitter = Emitter(doc.base)
    for name, of in _selected(doc.opfibrations, args.name, "opfibration"):
        for b in of.base_category.objects:
            fib = fiber(of, b)
            emitter.emit_vcategory(f"fiber.{name}.{render_label(b)}", fib.category)
            sub = check_vcategory(fib.category)
            report.record("fibers.laws", f"{name}@{render_label(b)}", sub.passed,
                          "" if sub.passed else sub.failures()[0].to_line())
    out.write(emitter.text())
    return report


def cmd_transport(doc, args, out) -> VerificationReport:
    report = VerificationReport("transport")
    if args.along is None:
        raise FixtureError("transport requires --along with a base morphism label")
    emitter = Emitter(doc.base)
    for name, of in _selected(doc.opfibrations, args.name, "opfibration"):
        if of.free_base is None:
            report.record("transport.built", name, False,
                          "opfibration is not indexed by an ordinary category")
            continue
        f_label = args.along
        if f_label not in of.free_base.source.morphisms:
            raise FixtureError(f"no morphism {f_label!r} in the indexing category")
        functor = transport(of, of.free_base.element_of(f_label))
        src_name = emitter.emit_vcategory(f"transport.{name}.source", functor.source)
        tgt_name = emitter.emit_vcategory(f"transport.{name}.target", functor.target)
        emitter.emit_vfunctor(f"transport.{name}.{f_label}", functor, src_name, tgt_name)
        sub = check_vfunctor(functor)
        report.record("transport.laws", f"{name} along {f_label}", sub.passed,
                      "" if sub.passed else sub.failures()[0].to_line())
    out.write(emitter.text())
    return report


def cmd_gr(doc, args, out) -> VerificationReport:
    report = VerificationReport("gr")
    emitter = Emitter(doc.base)
    for name, pf in _selected(doc.pseudofunctors, args.name, "pseudofunctor"):
        result = gr(pf)
        total_name = emitter.emit_vcategory(f"gr.{name}.total", result.total.category)
        emitter.emit_opfibration(f"gr.{name}", result.opfibration, total_name=total_name)
        sub = verify_opfibration(result.opfibration)
        report.record("gr.opfibration", name, sub.passed,
                      "" if sub.passed else sub.failures()[0].to_line())
    out.write(emitter.text())
    return report


def cmd_igr(doc, args, out) -> VerificationReport:
    report = VerificationReport("igr")
    emitter = Emitter(doc.base)
    for name, of in _selected(doc.opfibrations, args.name, "opfibration"):
        result = inverse_grothendieck(of)
        emitter.emit_pseudofunctor(f"igr.{name}", result.pseudofunctor)
        sub = check_pseudofunctor(result.pseudofunctor)
        report.record("igr.coherent", name, sub.passed,
                      "" if sub.passed else sub.failures()[0].to_line())
    out.write(emitter.text())
    return report


def cmd_roundtrip(doc, args, out) -> VerificationReport:
    corpus = Corpus()
    corpus.pseudofunctors = dict(doc.pseudofunctors)
    corpus.opfibrations = dict(doc.opfibrations)
    for name, alpha in doc.transformations.items():
        src, tgt = doc.cell_shape[name]
        corpus.transformations[name] = (alpha, src, tgt)
    for name, mod in doc.modifications.items():
        src, tgt = doc.cell_shape[name]
        corpus.modifications[name] = (mod, src, tgt)
    from .opfib import OpfiberedFunctor, is_opfibered

    for name, functor in doc.vfunctors.items():
        src_of = tgt_of = None
        for of_name, of in doc.opfibrations.items():
            if functor.source == of.total:
                src_of = of_name
            if functor.target == of.total:
                tgt_of = of_name
        if src_of is None or tgt_of is None:
            continue
        src = doc.opfibrations[src_of]
        tgt = doc.opfibrations[tgt_of]
        ok, _w = is_opfibered(functor, src, tgt)
        if ok:
            corpus.opfibered[name] = (OpfiberedFunctor(src, tgt, functor), src_of, tgt_of)
    for name, nat in doc.vnats.items():
        k_name = k2_name = None
        for fname, entry in corpus.opfibered.items():
            if nat.source == entry[0].k:
                k_name = fname
            if nat.target == entry[0].k:
                k2_name = fname
        if k_name and k2_name:
            corpus.two_cells[name] = (nat, k_name, k2_name)
    return verify_equivalence(corpus)


def cmd_base_check(doc, args, out) -> VerificationReport:
    return verify_base_properties(doc.base, args.budget, seed=args.seed)


HANDLERS = {
    "validate": cmd_validate,
    "free": cmd_free,
    "underlying": cmd_underlying,
    "fibers": cmd_fibers,
    "transport": cmd_transport,
    "gr": cmd_gr,
    "igr": cmd_igr,
    "roundtrip": cmd_roundtrip,
    "base-check": cmd_base_check,
}


def run_command(command, fixture_path, args, stdout) -> int:
    try:
        with open(fixture_path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        doc = parse_fixture(text)
    except FixtureError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    emit_target = None
    out = stdout
    if args.emit:
        emit_target = open(args.emit, "w", encoding="utf-8")
        out = emit_target
    try:
        report = HANDLERS[command](doc, args, out)
    except FixtureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except VcatError as exc:
        print(f"verification error: {exc}", file=sys.stderr)
        return 1
    finally:
        if emit_target is not None:
            emit_target.close()
    construction = command in ("free", "underlying", "fibers", "transport", "gr", "igr")
    report_stream = stdout if (args.emit or not construction) else sys.stderr
    for line in report.to_lines():
        print(line, file=report_stream)
    return 0 if report.passed else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return run_command(args.command, args.fixture, args, sys.stdout)


if __name__ == "__main__":
    sys.exit(main())
