"""End-to-end command-line behavior, including exit codes."""

import json
import os
import subprocess
import sys

import pytest

from abr import parse_sequence

CLI = [sys.executable, "-m", "abr.cli"]

VIOLATING_TABLE = "i0,i1,color\n0,1,+\n0,2,-\n1,2,+\n"


def run(*args, stdin=None, env_extra=None):
    env = dict(os.environ)
    env.pop("ABR_THREADS", None)
    if env_extra:
        env.update(env_extra)
    proc = subprocess.run(
        CLI + list(args), input=stdin, capture_output=True, env=env
    )
    return proc.returncode, proc.stdout, proc.stderr


def test_no_arguments_is_usage_error():
    code, _, _ = run()
    assert code == 2


def test_generate_moment_roundtrip(tmp_path):
    out = tmp_path / "m.json"
    code, stdout, stderr = run("generate", "moment", "--d", "3", "--n", "6",
                               "-o", str(out))
    assert code == 0
    assert b"cyclic=valid" in stdout and b"general_position=valid" in stdout
    seq = parse_sequence(out.read_bytes())
    assert seq.dimension == 3 and len(seq) == 6


def test_generate_to_stdout_summary_on_stderr():
    code, stdout, stderr = run("generate", "moment", "--n", "5")
    assert code == 0
    seq = parse_sequence(stdout)
    assert len(seq) == 5
    assert b"kind=lifted" in stderr


def test_generate_random_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run("generate", "random", "--d", "2", "--n", "6", "--seed", "5", "-o", str(a))
    run("generate", "random", "--d", "2", "--n", "6", "--seed", "5", "-o", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_generate_em_report(tmp_path):
    out = tmp_path / "em.json"
    code, stdout, _ = run("generate", "em", "--m", "2", "-o", str(out))
    assert code == 0
    report = json.loads(stdout)
    assert report["m"] == 2 and report["n"] == 4
    assert report["exhaustive"] is True
    assert report["max_monotone"] == 4
    assert report["params"]["base"] == 2
    seq = parse_sequence(out.read_bytes())
    assert len(seq) == 4


def test_generate_em_no_verify():
    code, stdout, stderr = run("generate", "em", "--m", "2", "--base", "4",
                               "--no-verify", "-o", "/dev/null")
    assert code == 0
    report = json.loads(stdout)
    assert report["max_monotone"] is None and report["exhaustive"] is False
    assert report["params"]["base"] == 4


def test_generate_cupcap_and_search_pipeline(tmp_path):
    out = tmp_path / "cc.json"
    run("generate", "cupcap", "--k", "4", "-o", str(out))
    code, stdout, _ = run("search", str(out), "--d", "2", "--k", "4")
    assert code == 0
    result = json.loads(stdout)
    assert result["size"] == 3 and result["exhaustive"] is True
    assert result["reached"] is False


def test_color_csv_and_json(tmp_path):
    src = tmp_path / "m.json"
    run("generate", "moment", "--n", "5", "-o", str(src))
    code, stdout, _ = run("color", str(src))
    assert code == 0
    assert stdout.startswith(b"i0,i1,i2,i3,color")
    code, stdout, _ = run("color", str(src), "--format", "json")
    obj = json.loads(stdout)
    assert obj["n"] == 5 and obj["r"] == 4 and len(obj["colors"]) == 5


def test_color_cross_check_reports_zero_mismatches(tmp_path):
    src = tmp_path / "m.json"
    run("generate", "random", "--d", "3", "--n", "6", "--seed", "3", "-o", str(src))
    code, stdout, stderr = run("color", str(src), "--cross-check", "-o",
                               str(tmp_path / "t.csv"))
    assert code == 0
    assert b"mismatches: 0" in stdout


def test_color_rejects_table_input():
    code, _, stderr = run("color", "-", stdin=VIOLATING_TABLE.encode())
    assert code == 2
    assert b"sequence" in stderr


def test_color_degenerate_is_exit_4(tmp_path):
    src = tmp_path / "z.json"
    run("generate", "moment", "--n", "6", "--heights", "zero", "-o", str(src))
    code, _, stderr = run("color", str(src))
    assert code == 4
    assert b"degenerate" in stderr.lower()


def test_color_reverse_orientation_repair(tmp_path):
    src = tmp_path / "m.json"
    run("generate", "moment", "--n", "5", "-o", str(src))
    seq = parse_sequence(src.read_bytes())
    rev = seq.reversed()
    from abr import serialize_sequence

    rev_file = tmp_path / "rev.json"
    rev_file.write_bytes(serialize_sequence(rev))
    code, _, _ = run("color", str(rev_file))
    assert code == 4
    code, stdout, _ = run("color", str(rev_file), "--reverse-orientation")
    assert code == 0
    _, fwd_table, _ = run("color", str(src))
    assert stdout == fwd_table


def test_check_monotone_ok_and_violation(tmp_path):
    src = tmp_path / "m.json"
    run("generate", "random", "--d", "2", "--n", "7", "--seed", "11", "-o", str(src))
    code, stdout, _ = run("check", "monotone", str(src))
    assert code == 0 and b"ok" in stdout
    code, stdout, _ = run("check", "monotone", "-", stdin=VIOLATING_TABLE.encode())
    assert code == 5
    assert b"witness=(0, 1, 2)" in stdout
    code, stdout, _ = run("check", "transitive", "-", "--format", "json",
                          stdin=VIOLATING_TABLE.encode())
    assert code == 5
    obj = json.loads(stdout)
    assert obj["ok"] is False and obj["witness"] == [0, 1, 2]


def test_check_one_switch(tmp_path):
    src = tmp_path / "m.json"
    run("generate", "random", "--d", "3", "--n", "7", "--seed", "8", "-o", str(src))
    code, stdout, _ = run("check", "one-switch", str(src), "--format", "json")
    assert code == 0
    obj = json.loads(stdout)
    assert obj["ok"] is True and obj["subtuples"] == 21
    assert obj["max_switch_count"] <= 1
    # too few points for any (d+2)-subtuple
    tiny = tmp_path / "tiny.json"
    run("generate", "moment", "--n", "4", "-o", str(tiny))
    code, _, _ = run("check", "one-switch", str(tiny))
    assert code == 2


def test_check_identities(tmp_path):
    lifted = tmp_path / "m.json"
    run("generate", "random", "--d", "2", "--n", "6", "--seed", "2", "-o", str(lifted))
    code, stdout, _ = run("check", "identities", str(lifted))
    assert code == 0 and b"ok" in stdout

    planar = tmp_path / "p.json"
    run("generate", "cupcap", "--k", "4", "-o", str(planar))
    code, stdout, _ = run("check", "identities", str(planar), "--d", "2")
    assert code == 0 and b"ok" in stdout


def test_search_budget_exit_codes(tmp_path):
    src = tmp_path / "m.json"
    run("generate", "moment", "--n", "7", "-o", str(src))
    table = tmp_path / "t.csv"
    run("color", str(src), "-o", str(table))
    code, stdout, _ = run("search", str(table))
    assert code == 0
    assert json.loads(stdout)["size"] == 7  # every tuple positive on this lift
    code, _, _ = run("search", str(table), "--budget", "1")
    assert code == 6
    code, _, _ = run("search", str(table), "--budget", "1", "--best-effort")
    assert code == 0


def test_search_reads_table_json(tmp_path):
    src = tmp_path / "m.json"
    run("generate", "moment", "--n", "5", "-o", str(src))
    table = tmp_path / "t.json"
    run("color", str(src), "--format", "json", "-o", str(table))
    code, stdout, _ = run("search", str(table))
    assert code == 0
    assert json.loads(stdout)["exhaustive"] is True


def test_parse_errors_are_exit_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "planar", "points": [["1/1", "oops"]]}')
    code, _, stderr = run("color", str(bad))
    assert code == 2
    code, _, _ = run("color", str(tmp_path / "missing.json"))
    assert code == 2
    code, _, _ = run("check", "monotone", "-", stdin=b"i0,i1,color\n0,1,+\n1,2,-\n")
    assert code == 2  # indices reach 2 but the (0,2) pair is missing


def test_abr_threads_validation(tmp_path):
    src = tmp_path / "m.json"
    run("generate", "moment", "--n", "5", "-o", str(src))
    code, _, stderr = run("color", str(src), env_extra={"ABR_THREADS": "soup"})
    assert code == 2 and b"ABR_THREADS" in stderr
    code, _, stderr = run("color", str(src), env_extra={"ABR_THREADS": "-1"})
    assert code == 2
    code, _, _ = run("color", str(src), env_extra={"ABR_THREADS": "0"})
    assert code == 0
    code, _, _ = run("color", str(src), env_extra={"ABR_THREADS": "8"})
    assert code == 0


def test_stdin_sequence_roundtrip():
    code, stdout, _ = run("generate", "moment", "--n", "5")
    assert code == 0
    code, table_csv, _ = run("color", "-", stdin=stdout)
    assert code == 0
    code, result, _ = run("search", "-", stdin=table_csv)
    assert code == 0
    assert json.loads(result)["size"] == 5
