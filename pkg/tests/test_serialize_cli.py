import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from hopfcat.cli import run
from hopfcat.coalg import matrix_coalgebra
from hopfcat.fixtures import hopf_fixtures, kz2, sweedler
from hopfcat.groupoid import FinGraph, groupoid_from_groups, monoid_category
from hopfcat.hopf import solve_antipode
from hopfcat.kernel import GF, ExactMatrix, IntMatrix, Q
from hopfcat.modflat import FgModule, ModMap, cyclic_module, free_module
from hopfcat.serialize import HopfDocument, LinearMap, ParseError, dumps, load, loads, to_json, write_atomic

DATA = Path(__file__).resolve().parent.parent / "tutorials" / "data"
DATA_FILES = sorted(DATA.glob("*.json"))


def cli(capsys, *argv):
    code = run([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def report(out):
    return json.loads(out)


def save(tmp_path, name, kind, value, field=None):
    p = tmp_path / name
    p.write_text(dumps(to_json(kind, value, field)), encoding="utf-8")
    return p


# -- serialization --------------------------------------------------------------------


@pytest.mark.parametrize("path", DATA_FILES, ids=lambda p: p.name)
def test_data_files_round_trip_bytes(path):
    text = path.read_text(encoding="utf-8")
    doc = loads(text)
    assert dumps(to_json(doc.kind, doc.value, doc.field)) == text


@pytest.mark.parametrize("field", [Q, GF(2), GF(7)], ids=str)
def test_fixture_round_trip(field):
    for name, A in hopf_fixtures(field).items():
        for kind, value in (("semihopf", A), ("hopf", HopfDocument(A, solve_antipode(A).antipode))):
            text = dumps(to_json(kind, value))
            doc = loads(text)
            assert doc.kind == kind and doc.field == field
            assert dumps(to_json(kind, doc.value)) == text, name


def test_other_kinds_round_trip():
    values = [
        ("coalgebra", matrix_coalgebra(GF(3), 2)),
        ("graph", FinGraph(("x", "y"), (("a", "x", "y"),))),
        ("fincategory", groupoid_from_groups([(["p", "q"], 2)])),
        ("fgmodule", FgModule(6, IntMatrix.from_rows([[2, 0], [0, 3]]))),
        ("morphism", ModMap(free_module(1), cyclic_module(4), IntMatrix.from_rows([[1]]))),
        ("morphism", LinearMap(ExactMatrix.from_rows(Q, [["1/2", -3]]))),
        ("vcategory", kz2().cat),
        ("vgraph", kz2().graph),
    ]
    for kind, v in values:
        text = dumps(to_json(kind, v))
        doc = loads(text)
        assert dumps(to_json(kind, doc.value)) == text, kind
    assert loads(dumps(to_json("morphism", values[5][1]))).value.matrix[0, 0] == Q(1) / 2


def test_parse_errors_carry_positions():
    with pytest.raises(ParseError) as e:
        loads('{"kind": "graph",\n "schema_version": 1,,}')
    assert e.value.where.startswith("line 2")
    with pytest.raises(ParseError) as e:
        loads('{"kind": "graph", "schema_version": 2}')
    assert e.value.where == "$.schema_version"
    with pytest.raises(ParseError) as e:
        loads('{"kind": "nonsense", "schema_version": 1}')
    assert e.value.where == "$.kind"
    with pytest.raises(ParseError):
        loads('{"kind": "coalgebra", "schema_version": 1}')
    bad = to_json("semihopf", kz2())
    bad["coalgebras"][0]["delta"][3] = ["1", "x"]
    with pytest.raises(ParseError) as e:
        loads(json.dumps(bad))
    assert e.value.where.startswith("$.coalgebras[0].delta[3]")
    bad = to_json("semihopf", kz2())
    bad["coalgebras"][0]["delta"][0][0] = 1.5
    with pytest.raises(ParseError):
        loads(json.dumps(bad))


def test_load_missing_file(tmp_path):
    with pytest.raises(ParseError):
        load(str(tmp_path / "nope.json"))


def test_write_atomic(tmp_path):
    p = tmp_path / "out.json"
    p.write_text("old")
    write_atomic(str(p), "new")
    assert p.read_text() == "new"
    assert [q.name for q in tmp_path.iterdir()] == ["out.json"]


def test_write_atomic_leaves_target_on_failure(tmp_path):
    p = tmp_path / "out.json"
    p.write_text("old")
    with pytest.raises(TypeError):
        write_atomic(str(p), 42)
    assert p.read_text() == "old"
    assert [q.name for q in tmp_path.iterdir()] == ["out.json"]


# -- CLI -----------------------------------------------------------------------------


def test_check_examples(capsys):
    code, out, _ = cli(capsys, "check", DATA / "pair_groupoid.json")
    assert code == 0 and report(out)["violations"] == []
    code, out, _ = cli(capsys, "check", DATA / "monoid_t_table.json")
    assert code == 0


def test_check_reports_axiom_failures(capsys, tmp_path):
    A = kz2()
    bad = to_json("semihopf", A)
    bad["units"]["*"] = ["0", "1"]
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(bad))
    code, out, _ = cli(capsys, "check", p)
    assert code == 1 and report(out)["violations"]


def test_antipode_examples(capsys, tmp_path):
    code, out, _ = cli(capsys, "antipode", DATA / "monoid_t.json")
    r = report(out)
    assert code == 1 and not r["exists"] and r["certificates"]
    o = tmp_path / "S.json"
    code, out, _ = cli(capsys, "antipode", DATA / "sweedler.json", "-o", o)
    assert code == 0 and report(out)["unique"]
    code, out, _ = cli(capsys, "check", o)
    assert code == 0 and loads(o.read_text()).kind == "hopf"


def test_variant_twice_is_identity(capsys, tmp_path):
    src = save(tmp_path, "a.json", "semihopf", sweedler())
    a, b = tmp_path / "b.json", tmp_path / "c.json"
    for which in ("op", "cop", "opcop"):
        assert cli(capsys, "variant", src, "--which", which, "-o", a)[0] == 0
        assert cli(capsys, "check", a)[0] == 0
        assert cli(capsys, "variant", a, "--which", which, "-o", b)[0] == 0
        assert b.read_bytes() == src.read_bytes()


def test_free_constructions(capsys):
    code, out, _ = cli(capsys, "free-cat", DATA / "loop.json", "-L", 3)
    assert code == 0 and [row["dim"] for row in report(out)["buckets"]] == [1, 1, 1, 1]
    code, out, _ = cli(capsys, "free-shopf", DATA / "theta.json", "-L", 2)
    assert code == 0 and report(out)["valid"]
    code, out, _ = cli(capsys, "free-hopf", DATA / "loop.json", "-L", 2, "-I", 1)
    r = report(out)
    assert code == 0 and [row["dim"] for row in r["buckets"]] == [1, 2, 2]
    assert r["label"] == "truncated upper bounds"


def test_cofree_factor(capsys, tmp_path):
    o = tmp_path / "image.json"
    code, out, _ = cli(capsys, "cofree-factor", DATA / "grouplike2.json", DATA / "gamma_sum.json", "-o", o)
    r = report(out)
    assert code == 0 and r["image_dim"] == 1 and r["kernel_dim"] == 1
    assert cli(capsys, "check", o)[0] == 0


def test_flatten(capsys):
    code, out, _ = cli(capsys, "flatten", DATA / "pair_groupoid.json")
    r = report(out)
    assert code == 0 and r["dim"] == 4 and not r["delta_one_trivial"]


def test_groupoid_commands(capsys, tmp_path):
    code, out, _ = cli(capsys, "groupoid", "words", DATA / "loop.json", "-L", 2)
    words = [w for row in report(out)["buckets"] for w in row["words"]]
    assert code == 0 and words == ["id_x", "a", "a^-1", "a a", "a^-1 a^-1"]
    code, out, _ = cli(capsys, "groupoid", "free", DATA / "loop.json", "-L", 2)
    assert [row["reduced_words"] for row in report(out)["buckets"]] == [1, 2, 2]
    o = tmp_path / "core.json"
    code, out, _ = cli(capsys, "groupoid", "core", DATA / "monoid_t_table.json", "-o", o)
    assert code == 0 and len(report(out)["arrows"]) == 1
    assert cli(capsys, "check", o)[0] == 0
    code, _, err = cli(capsys, "groupoid", "words", DATA / "loop.json")
    assert code == 2 and "-L" in err


def test_module_commands(capsys):
    assert cli(capsys, "flat-test", DATA / "z2_over_z6.json")[0] == 0
    code, out, _ = cli(capsys, "flat-test", DATA / "z2_over_z4.json")
    assert code == 1 and report(out)["witness_ideal"] == "(2)"
    code, out, _ = cli(capsys, "jointly-monic", DATA / "pi2.json", DATA / "pi3.json")
    assert code == 1 and report(out)["witness"] == [6]
    code, out, _ = cli(capsys, "jointly-monic", DATA / "times2_z2_z4.json", "--tensor", DATA / "z2_over_z4.json")
    assert code == 1
    assert cli(capsys, "jointly-monic", DATA / "times2_z2_z4.json")[0] == 0
    code, out, _ = cli(capsys, "jointly-monic", DATA / "gamma_sum.json")
    assert code == 1 and report(out)["witness"] == ["-1", "1"]


def test_oracle_compare(capsys, monkeypatch):
    code, out, _ = cli(capsys, "oracle-compare", DATA / "loop.json", DATA / "theta.json", "-L", 2)
    assert code == 0 and report(out)["equal"]
    monkeypatch.setenv("HOPFCAT_THREADS", "2")
    code2, out2, _ = cli(capsys, "oracle-compare", DATA / "loop.json", DATA / "theta.json", "-L", 2)
    assert (code2, out2) == (code, out)
    monkeypatch.setenv("HOPFCAT_THREADS", "zero")
    assert cli(capsys, "oracle-compare", DATA / "loop.json", "-L", 2)[0] == 2


def test_input_errors_exit_2(capsys, tmp_path):
    p = tmp_path / "broken.json"
    p.write_text('{"kind": "graph", "schema_version": 1, "vertices": ["x"], "edges": [["a", "x"]]')
    code, _, err = cli(capsys, "check", p)
    assert code == 2 and "parse error at" in err and "line 1" in err
    code, _, err = cli(capsys, "antipode", DATA / "loop.json")
    assert code == 2 and "expected a document of kind" in err
    assert cli(capsys, "check", tmp_path / "missing.json")[0] == 2
    assert cli(capsys, "flat-test", DATA / "pi2.json")[0] == 2
    code, _, err = cli(capsys, "free-hopf", DATA / "loop.json", "-L", 0)
    assert code == 2 and "at least 1" in err
    assert cli(capsys, "frobnicate")[0] == 2


def test_outputs_revalidate(capsys, tmp_path):
    """Every file-writing subcommand produces a document that passes check."""
    outs = []
    for A, name in ((kz2(), "kz2"), (sweedler(), "sw")):
        src = save(tmp_path, f"{name}.json", "semihopf", A)
        o = tmp_path / f"{name}_S.json"
        cli(capsys, "antipode", src, "-o", o)
        outs.append(o)
        o = tmp_path / f"{name}_op.json"
        cli(capsys, "variant", src, "--which", "op", "-o", o)
        outs.append(o)
    o = tmp_path / "core.json"
    M = monoid_category(["1", "t"], {("1", "1"): "1", ("1", "t"): "t", ("t", "1"): "t", ("t", "t"): "t"}, "1")
    cli(capsys, "groupoid", "core", save(tmp_path, "m.json", "fincategory", M), "-o", o)
    outs.append(o)
    for o in outs:
        assert cli(capsys, "check", o)[0] == 0, o.name


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "hopfcat.cli", "check", str(DATA / "kz2_hopf.json")],
        capture_output=True,
        text=True,
        env={**os.environ, "PYTHONPATH": str(Path(__file__).resolve().parent.parent / "src")},
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["valid"]
