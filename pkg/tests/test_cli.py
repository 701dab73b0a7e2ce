import json
import shutil
import subprocess
import sys
from importlib import resources

import pytest

from sextic_groups.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main, run_group
from sextic_groups.monodromy import MonodromyData


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_family_text_and_json(capsys):
    code, out, _ = run(capsys, "family", "3e6+a1")
    assert code == EXIT_OK
    assert "singularities: (3E6)+A1" in out
    code, out, _ = run(capsys, "family", "2e6+2a2+a3", "--json")
    data = json.loads(out)
    assert data["singularities"] == "(2E6+2A2)+A3"
    assert data["section"] == {"a": "-16/243", "b": "-88/243", "c": "1/486"}


def test_family_other_r(capsys):
    code, out, _ = run(capsys, "family", "3e6+a1", "--r", "2", "--json")
    assert code == EXIT_OK and json.loads(out)["r"] == "2"


@pytest.mark.parametrize(
    "argv",
    [
        ("family", "bogus"),
        ("family", "3e6+a1", "--r", "0"),
        ("family", "3e6+a1", "--r", "abc"),
        ("group", "bogus"),
        ("monodromy", "bogus"),
        ("perturb", "G3", "A2"),
        ("perturb", "G9", "A2", "A1"),
        ("perturb", "G3", "A2", "A3"),
        ("perturb", "--rule", "no-such-rule"),
        ("perturb", "--set", "(X9)"),
        ("verify-paper", "--criterion", "99"),
        ("no-such-command",),
    ],
)
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == EXIT_USAGE


def test_group_corpus_only(capsys):
    code, out, _ = run(capsys, "group", "3e6+a1", "--corpus-only")
    assert code == EXIT_OK
    assert "expected: G0" in out and "PASS" in out


def test_group_report_stage_on_failure(tmp_path):
    src = resources.files("sextic_groups.fpgroups").joinpath("data")
    shutil.copytree(src, tmp_path / "data")
    (tmp_path / "data" / "pi_bar_3e6_a1.txt").write_text("gens: alpha, beta; rels: alpha;")
    from sextic_groups.fpgroups import corpus

    corpus.use_data_dir(tmp_path / "data")
    try:
        rep = run_group("3e6+a1", corpus_only=True)
    finally:
        corpus.use_data_dir(None)
    assert rep.passed is False and rep.stage == "double_cover"


def test_monodromy_out_and_infinity(capsys, tmp_path):
    target = tmp_path / "md.json"
    code, out, _ = run(capsys, "monodromy", "3e6+a1", "--out", str(target), "--check-infinity")
    assert code == EXIT_OK
    assert "product equals the big-circle braid: True" in out
    assert "conjugation by rho^2: False" in out
    md = MonodromyData.from_json(target.read_text())
    assert md.names == ("alpha", "delta", "beta", "gamma")
    assert [str(b) for x, b in md.braids if x == 2.0] == ["B4: s2 s2 s2 s2"]


@pytest.mark.parametrize(
    "argv, expected",
    [
        (("G2.1", "A5", "A3+A1"), "Z6"),
        (("G3", "A2", "empty"), "Z6"),
        (("G0", "E6", "2A2"), "B3"),
        (("--rule", "2e6+2a2+a3:A3->A1"), "B3"),
    ],
)
def test_perturb_scenarios(capsys, argv, expected):
    code, out, _ = run(capsys, "perturb", *argv, "--json")
    data = json.loads(out)
    assert code == EXIT_OK and data["passed"] is True
    assert data["inputs"]["result_class"] == expected


def test_perturb_set(capsys):
    code, out, _ = run(capsys, "perturb", "--set", "(E6)+A1", "--json")
    assert code == EXIT_OK
    found = json.loads(out)["perturbations"]
    assert "(E6)" in found and "(A5)+A1" in found and len(found) == 17


def test_verify_section_filter(capsys):
    code, out, _ = run(capsys, "verify-paper", "--section", "5")
    assert code == EXIT_OK
    assert out.startswith("[PASS] 14.")


def test_verify_json_and_failing_exit(capsys):
    code, out, _ = run(capsys, "verify-paper", "--criterion", "5", "--criterion", "9", "--json")
    rows = {c["criterion"]: c for c in json.loads(out)["criteria"]}
    assert code == EXIT_FAIL
    assert rows[9]["status"] == "PASS" and rows[5]["status"] == "FAIL"
    assert rows[5]["provenance"] == "paper"


def test_corrupted_corpus_names_the_failing_criterion(capsys, tmp_path):
    src = resources.files("sextic_groups.fpgroups").joinpath("data")
    shutil.copytree(src, tmp_path / "data")
    (tmp_path / "data" / "g0.txt").write_text("gens: a, b; rels: a b = b a;")
    code, out, _ = run(capsys, "verify-paper", "--criterion", "9", "--corpus-dir", str(tmp_path / "data"))
    assert code == EXIT_FAIL
    assert "[FAIL]  9. abelianization" in out
    # the override does not leak into later runs
    assert run(capsys, "verify-paper", "--criterion", "9")[0] == EXIT_OK


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "sextic_groups.cli", "family", "3e6+a1"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and "(3E6)+A1" in res.stdout
