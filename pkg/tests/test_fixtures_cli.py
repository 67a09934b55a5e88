import io
import pathlib

import pytest

from vcat import cli
from vcat.errors import FixtureError
from vcat.fixtures import Emitter, parse_fixture, parse_label
from vcat.vbase.finset import FinSetBase

FIXDIR = pathlib.Path(__file__).resolve().parent.parent / "fixtures"
CORPUS = sorted(FIXDIR.glob("*.fix"))

MINIMAL = """
[base finset]

[morphism i]
from: unit
to: unit
map *: *

[object sq]
elements: (*,*)

[morphism c]
from: sq
to: unit
map (*,*): *

[vcategory point]
objects: *
hom * *: unit
id *: i
compose * * *: c
"""


def run_cli(argv):
    return cli.main(argv)


def test_parse_label_atoms_and_tuples():
    assert parse_label("abc") == "abc"
    assert parse_label("(a,b)") == ("a", "b")
    assert parse_label("((a,b),c)") == (("a", "b"), "c")
    with pytest.raises(FixtureError):
        parse_label("(a,b")
    with pytest.raises(FixtureError):
        parse_label("a)b")


def test_minimal_document_parses():
    doc = parse_fixture(MINIMAL)
    assert "point" in doc.vcategories
    assert doc.vcategories["point"].objects == ("*",)


def test_dangling_reference_is_positioned_error():
    text = MINIMAL.replace("id *: i", "id *: missing")
    with pytest.raises(FixtureError) as err:
        parse_fixture(text)
    assert "missing" in str(err.value)
    assert "line" in str(err.value)


def test_syntax_error_is_positioned():
    with pytest.raises(FixtureError) as err:
        parse_fixture("[base finset]\nnonsense without colon\n")
    assert "line 2" in str(err.value)


def test_ill_typed_table_rejected():
    text = MINIMAL.replace("map *: *", "map *: nope")
    with pytest.raises(FixtureError):
        parse_fixture(text)


def test_corpus_files_exist():
    assert len(CORPUS) >= 4


@pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.name)
def test_corpus_parses_and_validates(path):
    assert run_cli(["validate", str(path)]) == 0


@pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.name)
def test_corpus_roundtrip_lossless(path, tmp_path):
    doc = parse_fixture(path.read_text(encoding="utf-8"))
    em = Emitter(doc.base)
    for name, vcat in sorted(doc.vcategories.items()):
        em.emit_vcategory(name, vcat)
    for name, pf in sorted(doc.pseudofunctors.items()):
        em.emit_pseudofunctor(name, pf)
    for name, of in sorted(doc.opfibrations.items()):
        em.emit_opfibration(name, of)
    text = em.text()
    doc2 = parse_fixture(text)
    for name, vcat in doc.vcategories.items():
        assert doc2.vcategories[name] == vcat
    for name, pf in doc.pseudofunctors.items():
        other = doc2.pseudofunctors[name]
        assert other.base == pf.base
        assert other.fiber_at == pf.fiber_at
        assert other.functor_at == pf.functor_at
        assert other.xi == pf.xi and other.theta == pf.theta
    for name, of in doc.opfibrations.items():
        other = doc2.opfibrations[name]
        assert other.p == of.p
        assert other.lifts == of.lifts


def test_cli_emit_then_revalidate(tmp_path):
    out = tmp_path / "gr.fix"
    code = run_cli(["gr", str(FIXDIR / "monoid_c2.fix"), "--emit", str(out)])
    assert code == 0
    assert run_cli(["validate", str(out)]) == 0
    out2 = tmp_path / "igr.fix"
    assert run_cli(["igr", str(out), "--emit", str(out2)]) == 0
    assert run_cli(["validate", str(out2)]) == 0
    assert run_cli(["roundtrip", str(out)]) == 0


def test_cli_free_underlying_fibers_transport(tmp_path):
    wa = FIXDIR / "walking_arrow.fix"
    free_out = tmp_path / "free.fix"
    assert run_cli(["free", str(wa), "--name", "B", "--emit", str(free_out)]) == 0
    assert run_cli(["validate", str(free_out)]) == 0
    und_out = tmp_path / "und.fix"
    assert run_cli(["underlying", str(FIXDIR / "monoid_c2.fix"),
                    "--emit", str(und_out)]) == 0
    assert run_cli(["validate", str(und_out)]) == 0
    fib_out = tmp_path / "fib.fix"
    assert run_cli(["fibers", str(wa), "--name", "grF", "--emit", str(fib_out)]) == 0
    assert run_cli(["validate", str(fib_out)]) == 0
    tr_out = tmp_path / "tr.fix"
    assert run_cli(["transport", str(wa), "--name", "grF", "--along", "f",
                    "--emit", str(tr_out)]) == 0
    assert run_cli(["validate", str(tr_out)]) == 0


def test_cli_roundtrip_on_walking_arrow():
    assert run_cli(["roundtrip", str(FIXDIR / "walking_arrow.fix")]) == 0


def test_cli_base_check():
    assert run_cli(["base-check", str(FIXDIR / "one_object.fix"),
                    "--budget", "50", "--seed", "7"]) == 0


def test_cli_exit_code_2_on_parse_error(tmp_path):
    bad = tmp_path / "bad.fix"
    bad.write_text("[base finset]\n[vcategory broken]\nid x: nowhere\n",
                   encoding="utf-8")
    assert run_cli(["validate", str(bad)]) == 2


def test_cli_exit_code_2_on_missing_file():
    assert run_cli(["validate", "/nonexistent/nope.fix"]) == 2


def test_cli_exit_code_1_on_verification_failure(tmp_path):
    # textually mutate the monoid fixture's composition so a law breaks
    text = (FIXDIR / "monoid_c2.fix").read_text(encoding="utf-8")
    mutated = text.replace("map (e,s): s", "map (e,s): e")
    assert mutated != text
    bad = tmp_path / "mutated.fix"
    bad.write_text(mutated, encoding="utf-8")
    assert run_cli(["validate", str(bad)]) == 1


def test_cli_unknown_command_exits_2():
    with pytest.raises(SystemExit) as err:
        cli.main(["frobnicate", "x.fix"])
    assert err.value.code == 2
