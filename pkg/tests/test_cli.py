import json
import subprocess
import sys

import pytest

from cpident.cli import lemma1_pairs, main, parse_int_list


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_int_list():
    assert parse_int_list("2..4") == [2, 3, 4]
    assert parse_int_list("3,2,5..6") == [2, 3, 5, 6]


@pytest.mark.parametrize("argv", [
    ["verify", "--N", "1", "--L", "2"],
    ["verify", "--N", "3", "--L", "2", "--Q", "3"],
    ["verify", "--N", "3", "--L", "2", "--suite", "nope"],
    ["verify", "--N", "3", "--L", "2", "--prec", "64"],
    ["verify", "--N", "x", "--L", "2"],
    ["roots", "--N", "3", "--L", "5..2"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "error" in err


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--L", "2"])
    assert exc.value.code == 2


def test_verify_theorem_json(capsys):
    code, out, _ = run(capsys, "verify", "--N", "3", "--L", "3", "--Q", "all",
                       "--suite", "theorem", "--prec", "128", "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert rep["schema"] == "cpident/1"
    assert rep["summary"] == {"pass": "3", "fail": "0", "error": "0", "total": "3"}
    q1 = rep["records"][1]
    assert q1["params"] == {"N": "3", "L": "3", "Q": "1"}
    assert q1["certificates"]["diagonal"] == ["18.0"]


def test_oracle_single_composition(capsys):
    code, out, _ = run(capsys, "verify", "--N", "2", "--L", "2", "--Q", "0",
                       "--suite", "oracle", "--format", "json")
    assert code == 0
    rec = json.loads(out)["records"][0]
    assert rec["params"]["Q"] is None
    assert rec["residuals"]["compositions"] == "1"


def test_every_cell_once_per_suite(capsys):
    code, out, _ = run(capsys, "verify", "--N", "2,3", "--L", "3..4", "--suite",
                       "qseries,lemma2,roots", "--format", "json")
    assert code == 0
    recs = json.loads(out)["records"]
    keys = [(r["params"]["N"], r["params"]["L"], r["params"]["Q"], r["suite"]) for r in recs]
    assert len(keys) == len(set(keys))
    # qseries once per (N, L), lemma2 and roots once per Q
    assert len(keys) == 2 * (1 + 2 * 2) + 2 * (1 + 2 * 3)


def _strip_timings(obj):
    if isinstance(obj, dict):
        return {k: _strip_timings(v) for k, v in obj.items() if k not in ("timings", "threads")}
    if isinstance(obj, list):
        return [_strip_timings(v) for v in obj]
    return obj


def test_report_is_deterministic(tmp_path, capsys):
    args = ["verify", "--N", "3", "--L", "4", "--suite", "lemma1,corollary", "--seed", "7",
            "--format", "json"]
    main(args + ["--out", str(tmp_path / "a.json")])
    main(args + ["--out", str(tmp_path / "b.json"), "--threads", "2"])
    a = json.loads((tmp_path / "a.json").read_text())
    b = json.loads((tmp_path / "b.json").read_text())
    assert _strip_timings(a) == _strip_timings(b)


def test_sampling_policy():
    policy, total, pairs = lemma1_pairs(2, 3, 0, 0)
    assert policy == "exhaustive" and total == 16 and len(pairs) == 16
    policy, total, pairs = lemma1_pairs(3, 6, 1, 5)
    assert policy == "sampled" and total == 243 ** 2 and len(pairs) == 1000
    assert pairs == lemma1_pairs(3, 6, 1, 5)[2]
    assert all(sum(mu) % 3 == 1 and sum(lam) % 3 == 1 for mu, lam in pairs)


def test_roots_command(capsys):
    code, out, _ = run(capsys, "roots", "--N", "3", "--L", "3", "--format", "text")
    assert code == 0
    assert "-0.5 (exact -1/2)" in out
    assert "B = -18.0" in out
    assert "-6.8541019662" in out and "-0.1458980337" in out


def test_roots_csv(capsys):
    code, out, _ = run(capsys, "roots", "--N", "2", "--L", "2", "--Q", "0", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 2 and "-1" in lines[1]


def test_bench_agrees(capsys):
    code, out, _ = run(capsys, "bench", "--N", "2", "--L", "4", "--format", "json")
    assert code == 0
    rec = json.loads(out)["records"][0]
    assert rec["agree"] is True
    assert rec["compositions"] == "6"


def test_failure_exit_1_with_report(tmp_path, monkeypatch, capsys):
    from cpident import cli

    def broken(*a):
        return {"checks": {"forced": False}, "exact": True}

    monkeypatch.setitem(cli.SUITE_FUNCS, "roots", broken)
    out = tmp_path / "r.json"
    code = main(["verify", "--N", "2", "--L", "2", "--suite", "roots,lemma2", "--format", "json",
                 "--out", str(out)])
    assert code == 1
    rep = json.loads(out.read_text())
    assert rep["summary"]["fail"] == "2"
    assert rep["summary"]["pass"] == "2"


def test_console_script_module():
    res = subprocess.run([sys.executable, "-m", "cpident.cli", "verify", "--N", "2", "--L", "2",
                          "--suite", "qseries"], capture_output=True, text=True)
    assert res.returncode == 0
    assert "1/1 passed" in res.stdout


def test_threads_env_default(monkeypatch):
    from cpident.cli import build_parser
    monkeypatch.setenv("CPIDENT_THREADS", "3")
    args = build_parser().parse_args(["verify", "--N", "2", "--L", "2"])
    assert args.threads == 3
