"""The command line: instance files, exit codes, deterministic output."""

import json
import subprocess
import sys

import pytest

from anacat.ambient import FINSET, Arrow, FinSetObj, compose, identity
from anacat.ana import from_functor, identity_transformation
from anacat.cli import main
from anacat.internal import InternalFunctor, cech_groupoid, codisc, disc

fs = FinSetObj


def cat_json(doc, cat, obj_name, arr_name):
    doc.setdefault("objects", {})[obj_name] = {"size": cat.obj.size}
    doc["objects"][arr_name] = {"size": cat.arr.size}
    node = {"obj": obj_name, "arr": arr_name,
            "s": {"dom": arr_name, "cod": obj_name, "table": list(cat.src.table)},
            "t": {"dom": arr_name, "cod": obj_name, "table": list(cat.tgt.table)},
            "e": {"dom": obj_name, "cod": arr_name, "table": list(cat.unit.table)},
            "m": {"pairs": [[g, f, r] for (g, f), r in
                            zip(cat.comp.pairs(), cat.mul.table)]}}
    if cat.inv is not None:
        node["i"] = {"dom": arr_name, "cod": arr_name, "table": list(cat.inv.table)}
    return node


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


@pytest.fixture
def point_file(tmp_path):
    # the point functor disc(1) -> codisc(2), a weak equivalence
    one = disc(FINSET, fs(1))
    c2 = codisc(FINSET, fs(2))
    doc = {"ambient": "finset"}
    doc["categories"] = {"X": cat_json(doc, one, "X0", "X1"),
                         "Y": cat_json(doc, c2, "Y0", "Y1")}
    doc["functors"] = {"j": {"dom": "X", "cod": "Y", "f0": [0], "f1": [0]}}
    return write(tmp_path, "j.json", doc)


@pytest.fixture
def inclusion_file(tmp_path):
    # disc(1) -> disc(2): fully faithful but not essentially surjective
    one = disc(FINSET, fs(1))
    two = disc(FINSET, fs(2))
    doc = {"ambient": "finset"}
    doc["categories"] = {"X": cat_json(doc, one, "X0", "X1"),
                         "Y": cat_json(doc, two, "Y0", "Y1")}
    doc["functors"] = {"incl": {"dom": "X", "cod": "Y", "f0": [0], "f1": [0]}}
    return write(tmp_path, "incl.json", doc)


@pytest.fixture
def collapse_file(tmp_path):
    # disc(2) -> disc(1): not fully faithful
    one = disc(FINSET, fs(1))
    two = disc(FINSET, fs(2))
    doc = {"ambient": "finset"}
    doc["categories"] = {"X": cat_json(doc, two, "X0", "X1"),
                         "Y": cat_json(doc, one, "Y0", "Y1")}
    doc["functors"] = {"c": {"dom": "X", "cod": "Y", "f0": [0, 0], "f1": [0, 0]}}
    return write(tmp_path, "collapse.json", doc)


@pytest.fixture
def cech_file(tmp_path):
    # the cech functor of the fold (0, 0, 1) into disc(2)
    u = Arrow(fs(3), fs(2), (0, 0, 1))
    g = cech_groupoid(FINSET, u)
    d2 = disc(FINSET, fs(2))
    doc = {"ambient": "finset"}
    doc["categories"] = {"C": cat_json(doc, g, "C0", "C1"),
                         "D": cat_json(doc, d2, "D0", "D1")}
    doc["functors"] = {"q": {"dom": "C", "cod": "D", "f0": list(u.table),
                             "f1": list(compose(u, g.src).table)}}
    return write(tmp_path, "cech.json", doc)


@pytest.fixture
def idt_file(tmp_path):
    # the identity 2-arrow on the embedded identity of codisc(2)
    c2 = codisc(FINSET, fs(2))
    ida = from_functor(InternalFunctor(c2, c2, identity(c2.obj), identity(c2.arr)))
    t = identity_transformation(ida)
    doc = {"ambient": "finset"}
    doc["categories"] = {"Y": cat_json(doc, c2, "Y0", "Y1")}
    doc["functors"] = {"idY": {"dom": "Y", "cod": "Y",
                               "f0": [0, 1], "f1": [0, 1, 2, 3]}}
    doc["anafunctors"] = {"ida": {"functor": "idY"}}
    doc["anatransformations"] = {"idt": {"src": "ida", "tgt": "ida",
                                         "comp": list(t.comp.table)}}
    return write(tmp_path, "idt.json", doc)


class TestValidate:
    def test_valid_file_exits_zero(self, point_file, capsys):
        assert main(["validate", point_file]) == 0
        out = capsys.readouterr().out
        assert "PASS functors.j" in out
        assert "0 failures" in out

    def test_law_failure_exits_one(self, point_file, tmp_path, capsys):
        doc = json.load(open(point_file))
        doc["categories"]["Y"]["e"]["table"] = [1, 2]
        bad = write(tmp_path, "bad_unit.json", doc)
        assert main(["validate", bad]) == 1
        assert "FAIL" in capsys.readouterr().out

    def test_missing_composable_pair_exits_two(self, point_file, tmp_path, capsys):
        doc = json.load(open(point_file))
        doc["categories"]["Y"]["m"]["pairs"].pop()
        bad = write(tmp_path, "bad_m.json", doc)
        assert main(["validate", bad]) == 2
        assert "missing composable pair" in capsys.readouterr().err

    def test_noncomposable_pair_exits_two(self, point_file, tmp_path, capsys):
        doc = json.load(open(point_file))
        doc["categories"]["Y"]["m"]["pairs"].append([0, 1, 0])
        bad = write(tmp_path, "extra.json", doc)
        assert main(["validate", bad]) == 2
        assert "not composable" in capsys.readouterr().err

    def test_unresolved_name_exits_two(self, tmp_path, capsys):
        bad = write(tmp_path, "dangling.json",
                    {"ambient": "finset",
                     "maps": {"f": {"dom": "A", "cod": "B", "table": []}}})
        assert main(["validate", bad]) == 2
        assert "maps.f" in capsys.readouterr().err

    def test_invalid_json_exits_two(self, tmp_path, capsys):
        path = tmp_path / "broken.json"
        path.write_text("{nope")
        assert main(["validate", str(path)]) == 2
        assert "invalid JSON" in capsys.readouterr().err

    def test_structured_format_is_json(self, point_file, capsys):
        assert main(["validate", point_file, "--format", "structured"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert {row["law"] for row in doc["rows"]} >= {"functors.j"}


class TestIsFF:
    def test_true_exits_zero(self, cech_file, capsys):
        assert main(["is-ff", cech_file]) == 0
        assert capsys.readouterr().out.splitlines()[0] == "true"

    def test_false_exits_one(self, collapse_file, capsys):
        assert main(["is-ff", collapse_file]) == 1
        out = capsys.readouterr().out
        assert out.splitlines()[0] == "false"
        assert '"comparison"' in out


class TestIsWeq:
    def test_point_into_codisc_is_weq(self, point_file, capsys):
        assert main(["is-weq", point_file, "--pretopology", "surj"]) == 0
        out = capsys.readouterr().out
        assert out.splitlines()[0] == "true"
        assert '"splitting"' in out and '"cover"' in out

    def test_inclusion_is_not_weq(self, inclusion_file, capsys):
        assert main(["is-weq", inclusion_file, "--pretopology", "surj"]) == 1
        out = capsys.readouterr().out
        assert out.splitlines()[0] == "false"
        assert '"fully-faithful": true' in out

    def test_trivial_pretopology(self, cech_file, inclusion_file, capsys):
        # the fold's cech functor is locally split already over isos
        assert main(["is-weq", cech_file, "--pretopology", "triv"]) == 0
        assert main(["is-weq", inclusion_file, "--pretopology", "triv"]) == 1

    def test_custom_pretopology(self, cech_file, tmp_path, capsys):
        cov = write(tmp_path, "cov.json",
                    {"kind": "singleton",
                     "covers": [{"dom": {"size": 3}, "cod": {"size": 2},
                                 "table": [0, 0, 1]}]})
        code = main(["is-weq", cech_file, "--pretopology", f"custom:{cov}"])
        assert code == 0

    def test_unknown_pretopology_exits_two(self, cech_file, capsys):
        assert main(["is-weq", cech_file, "--pretopology", "nope"]) == 2

    def test_epi_grp_needs_fingrp(self, cech_file, capsys):
        assert main(["is-weq", cech_file, "--pretopology", "epi-grp"]) == 2

    def test_size_bound_env(self, point_file, capsys, monkeypatch):
        monkeypatch.setenv("ANACAT_SIZE_BOUND", "2")
        assert main(["is-weq", point_file, "--pretopology", "surj"]) == 0
        assert '"bound": 2' in capsys.readouterr().out

    def test_bad_size_bound_env(self, point_file, capsys, monkeypatch):
        monkeypatch.setenv("ANACAT_SIZE_BOUND", "many")
        assert main(["is-weq", point_file, "--pretopology", "surj"]) == 2


class TestComposeAna:
    def test_output_revalidates(self, idt_file, tmp_path, capsys):
        out = str(tmp_path / "comp.json")
        code = main(["compose-ana", idt_file, idt_file,
                     "--name-f", "ida", "--name-g", "ida", "--out", out])
        assert code == 0
        assert main(["validate", out]) == 0

    def test_mismatched_endpoints_exit_two(self, idt_file, inclusion_file, capsys):
        code = main(["compose-ana", idt_file, inclusion_file,
                     "--name-f", "ida", "--name-g", "incl"])
        assert code == 2


class TestVcomp:
    def test_output_revalidates(self, idt_file, tmp_path, capsys):
        out = str(tmp_path / "vc.json")
        assert main(["vcomp", idt_file, idt_file, "--out", out]) == 0
        assert main(["validate", out]) == 0
        doc = json.load(open(out))
        assert "composite" in doc["anatransformations"]

    def test_mismatched_middle_exits_two(self, idt_file, tmp_path, capsys):
        # an identity 2-arrow on a different anafunctor
        two = disc(FINSET, fs(2))
        t = identity_transformation(from_functor(InternalFunctor(
            two, two, identity(two.obj), identity(two.arr))))
        doc = {"ambient": "finset"}
        doc["categories"] = {"Z": cat_json(doc, two, "Z0", "Z1")}
        doc["functors"] = {"idZ": {"dom": "Z", "cod": "Z",
                                   "f0": [0, 1], "f1": [0, 1]}}
        doc["anafunctors"] = {"anaz": {"functor": "idZ"}}
        doc["anatransformations"] = {"t2": {"src": "anaz", "tgt": "anaz",
                                            "comp": list(t.comp.table)}}
        other = write(tmp_path, "other.json", doc)
        assert main(["vcomp", idt_file, other]) == 2
        assert "middle" in capsys.readouterr().err


class TestPseudoinverse:
    def test_output_revalidates(self, cech_file, tmp_path, capsys):
        out = str(tmp_path / "pinv.json")
        code = main(["pseudoinverse", cech_file,
                     "--pretopology", "surj", "--out", out])
        assert code == 0
        assert main(["validate", out]) == 0
        doc = json.load(open(out))
        assert set(doc["anatransformations"]) == {"unit", "counit"}
        assert "inverse" in doc["anafunctors"]

    def test_not_a_weq_exits_one(self, inclusion_file, capsys):
        code = main(["pseudoinverse", inclusion_file, "--pretopology", "surj"])
        assert code == 1
        assert "splitting" in capsys.readouterr().err


class TestLaws:
    def test_fractions_suite_passes(self, capsys):
        assert main(["laws", "--suite", "fractions", "--seed", "1"]) == 0
        assert "0 failures" in capsys.readouterr().out

    def test_structured_output_byte_identical(self, tmp_path):
        a = str(tmp_path / "a.json")
        b = str(tmp_path / "b.json")
        args = ["laws", "--suite", "bicategory", "--seed", "1",
                "--format", "structured"]
        assert main(args + ["--out", a]) == 0
        assert main(args + ["--out", b]) == 0
        assert open(a, "rb").read() == open(b, "rb").read()

    def test_fault_injection_flag(self, capsys):
        assert main(["laws", "--suite", "bicategory", "--seed", "1",
                     "--fault-inject"]) == 0
        out = capsys.readouterr().out
        assert "fault.bicategory.pentagon" in out

    def test_no_fault_rows_without_flag(self, capsys):
        assert main(["laws", "--suite", "bicategory", "--seed", "1"]) == 0
        assert "fault." not in capsys.readouterr().out


class TestReport:
    def test_rerenders_structured_report(self, tmp_path, capsys):
        path = str(tmp_path / "rep.json")
        assert main(["laws", "--suite", "sites", "--seed", "1", "--bound", "3",
                     "--format", "structured", "--out", path]) == 0
        assert main(["report", path]) == 0
        assert "PASS sites.axioms.surj" in capsys.readouterr().out

    def test_failure_report_exits_one(self, tmp_path, capsys):
        path = write(tmp_path, "failed.json",
                     {"title": "t", "rows": [
                         {"law": "x", "status": "fail", "witness": "w"}]})
        assert main(["report", path]) == 1

    def test_malformed_report_exits_two(self, tmp_path, capsys):
        path = write(tmp_path, "norows.json", {"title": "t"})
        assert main(["report", path]) == 2


class TestGroupAmbient:
    def test_fingrp_file_with_builtin_group(self, tmp_path, capsys):
        doc = {"ambient": "fingrp",
               "objects": {"Z2": "z2"},
               "categories": {"D": {
                   "obj": "Z2", "arr": "Z2",
                   "s": {"dom": "Z2", "cod": "Z2", "table": [0, 1]},
                   "t": {"dom": "Z2", "cod": "Z2", "table": [0, 1]},
                   "e": {"dom": "Z2", "cod": "Z2", "table": [0, 1]},
                   "m": {"pairs": [[0, 0, 0], [1, 1, 1]]}}}}
        path = write(tmp_path, "grp.json", doc)
        assert main(["validate", path]) == 0

    def test_nonhomomorphism_rejected(self, tmp_path, capsys):
        doc = {"ambient": "fingrp",
               "objects": {"Z2": "z2"},
               "maps": {"f": {"dom": "Z2", "cod": "Z2", "table": [1, 0]}}}
        path = write(tmp_path, "badhom.json", doc)
        assert main(["validate", path]) == 2
        assert "maps.f" in capsys.readouterr().err

    def test_fingset_ambient(self, tmp_path, capsys):
        doc = {"ambient": "fingset:z2",
               "objects": {"R": {"size": 2, "action": [[0, 1], [1, 0]]}},
               "maps": {"id": {"dom": "R", "cod": "R", "table": [0, 1]}}}
        path = write(tmp_path, "gset.json", doc)
        assert main(["validate", path]) == 0

    def test_declared_group_for_ambient(self, tmp_path, capsys):
        doc = {"ambient": "fingset:G",
               "groups": {"G": {"order": 2, "mul": [[0, 1], [1, 0]]}},
               "objects": {"R": {"size": 2, "action": [[0, 1], [1, 0]]}}}
        path = write(tmp_path, "gset2.json", doc)
        assert main(["validate", path]) == 0


def test_console_entry_point_usage_error():
    proc = subprocess.run([sys.executable, "-m", "anacat.cli", "frobnicate"],
                          capture_output=True, text=True)
    assert proc.returncode == 2


def test_console_entry_point_help():
    proc = subprocess.run([sys.executable, "-m", "anacat.cli", "--help"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    for command in ("validate", "is-ff", "is-weq", "compose-ana", "vcomp",
                    "pseudoinverse", "laws", "report"):
        assert command in proc.stdout
