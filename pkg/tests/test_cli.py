"""Command line contract: JSON reports, digests, exit codes."""
import json
import subprocess
import sys

import pytest

from localaut.cli import main, parse_group
from localaut.matrices import GroupTag


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_parse_group_forms():
    assert parse_group("gl-r-3") == GroupTag("GL", "R", 3)
    assert parse_group("sl-c-4") == GroupTag("SL", "C", 4)
    assert parse_group("un-3") == GroupTag("Un", "C", 3)
    assert parse_group("su-5") == GroupTag("SUn", "C", 5)


def test_gen_verify_recover_round_trip(tmp_path, capsys):
    auto_file = str(tmp_path / "auto.json")
    code, rep = run_cli(
        capsys, "gen-auto", "--group", "sl-r-3", "--kind", "contragredient",
        "--seed", "5", "-o", auto_file,
    )
    assert code == 0 and rep["auto"]["kind"] == "contragredient"

    code, rep = run_cli(capsys, "verify-auto", auto_file, "--pairs", "40")
    assert code == 0 and rep["verdict"] == "Verified"

    code, rep = run_cli(capsys, "recover", "--group", "sl-r-3", "--auto", auto_file, "--seed", "1")
    assert code == 0
    assert rep["status"] == "Recovered"
    assert rep["auto"]["kind"] == "contragredient"


def test_gallery_feeds_local_check(tmp_path, capsys):
    code, rep = run_cli(capsys, "gallery", "gl-local-not-global", "--n", "3")
    assert code == 0
    assert rep["certificate"]["claim"] == "IsLocalNotGlobal"
    assert rep["verification"]["ok"] is True

    samples_file = tmp_path / "samples.json"
    samples_file.write_text(json.dumps({"group": rep["group"], "samples": rep["samples"]}))
    code, rep2 = run_cli(capsys, "local-check", str(samples_file), "--seed", "7")
    assert code == 0
    assert rep2["status"] == "LocallyConsistent"
    assert rep2["counts"]["Interpolable"] == 3


def test_reports_are_deterministic_modulo_timing(capsys):
    code1, rep1 = run_cli(capsys, "gallery", "additive-r")
    code2, rep2 = run_cli(capsys, "gallery", "additive-r")
    assert code1 == code2 == 0
    rep1.pop("elapsed_s")
    rep2.pop("elapsed_s")
    assert rep1 == rep2


def test_bad_group_is_bad_args(capsys):
    code, rep = run_cli(capsys, "gen-auto", "--group", "sp-r-3")
    assert code == 2 and rep["error"] == "BadArgs"


def test_missing_file_is_bad_args(capsys):
    code, rep = run_cli(capsys, "local-check", "no-such-file.json")
    assert code == 2 and rep["error"] == "BadArgs"


def test_broken_json_is_file_format(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("not json {")
    code, rep = run_cli(capsys, "local-check", str(bad))
    assert code == 3 and rep["error"] == "FileFormat"


def test_domain_errors_surface_with_their_names(capsys):
    code, rep = run_cli(capsys, "gallery", "sign-twist", "--n", "3")
    assert code == 4 and rep["error"] == "OddN"


def test_selftest_subset(capsys):
    code, rep = run_cli(capsys, "selftest", "--only", "8")
    assert code == 0
    assert rep["all_passed"] is True
    assert [c["number"] for c in rep["criteria"]] == [8]


def test_subprocess_oracle(tmp_path, capsys):
    phi = tmp_path / "phi.py"
    phi.write_text(
        "import json, sys\n"
        "from localaut.autos import apply, make_automorphism\n"
        "from localaut.matrices import GroupTag, QR, mat\n"
        "from localaut.serialize import mat_from_json, mat_to_json\n"
        "T = mat([[1, 2, 0], [0, 1, 0], [3, 0, 1]], QR)\n"
        "AUTO = make_automorphism(GroupTag('SL', 'R', 3), 'standard', 'id', T)\n"
        "for line in sys.stdin:\n"
        "    a = mat_from_json(json.loads(line))\n"
        "    print(json.dumps(mat_to_json(apply(AUTO, a))), flush=True)\n"
    )
    code, rep = run_cli(
        capsys, "recover", "--group", "sl-r-3",
        "--oracle-cmd", f"{sys.executable} {phi}", "--seed", "1",
    )
    assert code == 0 and rep["status"] == "Recovered"
    assert rep["auto"]["t"]["entries"] == [["1", "2", "0"], ["0", "1", "0"], ["3", "0", "1"]]


def test_console_script_smoke(tmp_path):
    import shutil

    exe = shutil.which("localaut")
    if exe is None:
        pytest.skip("console script not on PATH")
    proc = subprocess.run(
        [exe, "gallery", "additive-r"], capture_output=True, text=True, timeout=120
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["certificate"]["claim"] == "IsLocalNotGlobal"
