import os
import re
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from grilab import (
    ConfigError,
    Report,
    SCENARIOS,
    ScenarioConfig,
    cmd_eval,
    cmd_fuzz,
    environment_for,
    quat_algebra,
)
from grilab.harness import load_expression_file, ring_from_name

FAST = ScenarioConfig(trials=20)

CHECK_LINE = re.compile(r'^check=[\w.+-]+ status=(pass|fail|skip) detail="[^"]*"$')
RESULT_LINE = re.compile(r"^result=(pass|fail) checks=\d+ failures=\d+ seed=-?\d+$")


def _run_cli(*args, env_extra=None):
    env = dict(os.environ)
    env.setdefault("PYTHONHASHSEED", "0")
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [sys.executable, "-m", "grilab", *args],
        capture_output=True, text=True, env=env,
    )


@pytest.mark.parametrize("name", sorted(SCENARIOS))
def test_scenarios_pass_with_small_trials(name):
    report = SCENARIOS[name](FAST)
    failing = [c for c in report.checks if c.status == "fail"]
    assert report.passed, failing


def test_report_line_format():
    report = SCENARIOS["theorem"](FAST)
    lines = report.render().splitlines()
    for line in lines[:-1]:
        assert CHECK_LINE.match(line), line
    assert RESULT_LINE.match(lines[-1]), lines[-1]


def test_report_pass_fail_logic():
    r = Report(seed=0)
    r.check("a", True, "fine")
    r.skip("b", "not applicable")
    assert r.passed
    r.check("c", False, 'broken "quotes" here')
    assert not r.passed
    rendered = r.render()
    assert "status=skip" in rendered
    assert '"' not in rendered.splitlines()[2].split("detail=")[1][1:-1]
    assert rendered.endswith("result=fail checks=3 failures=1 seed=0\n")


def test_scenario_reports_are_deterministic():
    for name in ("lemma11", "theorem"):
        r1 = SCENARIOS[name](FAST)
        r2 = SCENARIOS[name](FAST)
        assert r1.render() == r2.render()


def test_config_validation():
    with pytest.raises(ConfigError):
        ScenarioConfig(trials=0).validate()
    with pytest.raises(ConfigError):
        ScenarioConfig(prec=-1).validate()
    with pytest.raises(ConfigError):
        ScenarioConfig(algebra=(Fraction(0), Fraction(-1))).validate()
    with pytest.raises(ConfigError):
        SCENARIOS["lemma11"](ScenarioConfig(prec=4))  # needs prec >= 6


def test_fuzz_commutative_vs_quaternions():
    cfg = ScenarioConfig(trials=25)
    exprs = ["x*y - y*x"]
    env_q = environment_for(ring_from_name("rationals", cfg))
    report = cmd_fuzz(exprs, env_q, cfg)
    assert report.passed
    assert "no counterexample" in report.checks[0].detail

    env_h = environment_for(ring_from_name("quat", cfg))
    report = cmd_fuzz(exprs, env_h, cfg)
    assert report.passed
    assert "counterexample at" in report.checks[0].detail


def test_fuzz_resample_cap_is_a_failure():
    cfg = ScenarioConfig(trials=5)
    env = environment_for(quat_algebra())
    report = cmd_fuzz(["(x-x)^-1"], env, cfg)
    assert not report.passed
    assert "resample-cap-exhausted" in report.checks[0].detail


def test_eval_report():
    cfg = ScenarioConfig()
    env = environment_for(quat_algebra())
    report = cmd_eval("i*j - j*i", env, cfg)
    assert report.passed
    assert "(0,0,0,2)" in report.checks[0].detail
    report = cmd_eval("(j - j)^-1", env, cfg)
    assert not report.passed
    assert "non-permissible" in report.checks[0].detail


def test_expression_file_loader():
    text = "x*y - y*x  # a commutator\n\n# full-line comment\n(b+x)^-1\n"
    assert load_expression_file(text) == ["x*y - y*x", "(b+x)^-1"]


def test_cli_verify_exit_codes_and_determinism():
    out1 = _run_cli("verify", "lemma11", "--seed", "7", "--trials", "10")
    out2 = _run_cli("verify", "lemma11", "--seed", "7", "--trials", "10")
    assert out1.returncode == 0, out1.stderr
    assert out1.stdout == out2.stdout
    assert out1.stdout.endswith("seed=7\n")


def test_cli_usage_errors():
    out = _run_cli("verify", "nonsense")
    assert out.returncode == 2
    out = _run_cli("verify", "lemma21", "--trials", "0")
    assert out.returncode == 2
    out = _run_cli("fuzz", "--file", "/nonexistent/exprs.txt")
    assert out.returncode == 2
    out = _run_cli("eval", "--expr", "x +")
    assert out.returncode == 2
    assert "error" in out.stderr


def test_cli_eval_and_lets(tmp_path: Path):
    out = _run_cli("eval", "--expr", "a*x*a^-1*x^-1",
                   "--let", "a=(0,1,0,0)", "--let", "x=(0,0,1,0)")
    assert out.returncode == 0
    assert "(-1,0,0,0)" in out.stdout

    exprs = tmp_path / "exprs.txt"
    exprs.write_text("(b+x)^-1\n")
    out = _run_cli("fuzz", "--file", str(exprs), "--let", "b=(0,0,1,0)",
                   "--trials", "30")
    assert out.returncode == 0
    # not an identity: generic draws are permissible and nonzero
    assert "counterexample at" in out.stdout


def test_cli_seed_env_override():
    out = _run_cli("verify", "theorem", "--trials", "30",
                   env_extra={"GRILAB_SEED": "123"})
    assert out.returncode == 0
    assert out.stdout.strip().endswith("seed=123")
    # explicit flag wins over the environment
    out = _run_cli("verify", "theorem", "--trials", "30", "--seed", "5",
                   env_extra={"GRILAB_SEED": "123"})
    assert out.stdout.strip().endswith("seed=5")


def test_cli_fuzz_nonpermissible_failure_exit_code(tmp_path: Path):
    exprs = tmp_path / "bad.txt"
    exprs.write_text("(x-x)^-1\n")
    out = _run_cli("fuzz", "--file", str(exprs), "--trials", "5")
    assert out.returncode == 1
    assert "resample-cap-exhausted" in out.stdout


def test_cli_ring_flag(tmp_path: Path):
    exprs = tmp_path / "comm.txt"
    exprs.write_text("x*y - y*x\n")
    out = _run_cli("fuzz", "--file", str(exprs), "--ring", "rationals",
                   "--trials", "20")
    assert out.returncode == 0
    assert "no counterexample" in out.stdout
    out = _run_cli("fuzz", "--file", str(exprs), "--ring", "quad",
                   "--trials", "20")
    assert out.returncode == 0
    assert "no counterexample" in out.stdout
    out = _run_cli("fuzz", "--file", str(exprs), "--ring", "series",
                   "--trials", "15")
    assert out.returncode == 0
    assert "counterexample at" in out.stdout


def test_cli_jobs_flag_deterministic():
    a = _run_cli("verify", "theorem", "--trials", "25")
    b = _run_cli("verify", "theorem", "--trials", "25", "--jobs", "3")
    assert a.stdout == b.stdout


def test_cli_series_literal_let():
    out = _run_cli(
        "eval", "--ring", "series",
        "--expr", "u*u^-1",
        "--let", "u=1 - 1*t^1 + O(t^12)",
    )
    assert out.returncode == 0, out.stderr
    assert "(1,0,0,0) + O(t^" in out.stdout

    out = _run_cli(
        "eval", "--ring", "series",
        "--expr", "v*t - t*v",
        "--let", "v=(0,0,1,0)*t^2 + O(t^8)",
    )
    assert out.returncode == 0, out.stderr
    assert "-> 0 + O(t^" in out.stdout  # t is central here

    # under the conjugation twist t is not central
    out = _run_cli("eval", "--ring", "quad-series", "--expr", "s*t - t*s")
    assert out.returncode == 0, out.stderr
    assert "2*i" in out.stdout or "(2)*i" in out.stdout or "2*i*t" in out.stdout.replace(" ", "")
