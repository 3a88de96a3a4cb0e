"""Acceptance criteria, one test each, at the stated trial counts and tolerances.

Every test records a PASS/FAIL line that is printed at the end of the run.
"""

import json
import subprocess
import sys
import time

import pytest

from conftest import ACCEPTANCE_LINES
from stochlattice import FunctionalSpec, build_distribution, check_maxitivity, es, sup_order
from stochlattice.cli import run
from stochlattice.harness import get_check, run_check

SEED = 20240611


def report(label, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} {label}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def run_named(name, trials):
    return run_check(get_check(name), trials, SEED)


def test_c01_maxitivity_identities():
    start = time.perf_counter()
    results = [
        run_named(n, 500)
        for n in (
            "maxitive_penalty_st",
            "maxitive_penalty_icx",
            "maxitive_penalty_icv",
            "maxitive_g_st",
            "maxitive_g_icx",
            "maxitive_g_icv",
        )
    ]
    elapsed = time.perf_counter() - start
    worst = max(r.max_deviation for r in results)
    ok = all(r.passed for r in results) and worst <= 1e-9 and elapsed < 30
    report("criterion 1 maxitivity identities", ok, f"max deviation {worst:.3g} over 6x500 trials in {elapsed:.1f}s")
    assert ok, [r.to_json() for r in results if not r.passed]


def test_c02_var_maxitive_under_st():
    r = run_named("maxitive_var", 500)
    ok = r.passed and r.max_deviation <= 1e-12
    report("criterion 2 VaR maxitivity", ok, f"max deviation {r.max_deviation:.3g} over 500 trials")
    assert ok, r.counterexample


def test_c03_es_not_maxitive_search():
    rep = check_maxitivity("icx", FunctionalSpec("es", u=0.5), trials=1000, family_size=5, seed=SEED)
    ok = rep.max_deviation >= 0.01 and rep.counterexample is not None
    report("criterion 3 ES non-maxitivity search", ok, f"max deviation {rep.max_deviation:.4g} in 1000 trials")
    assert ok


WITNESS_REASON = (
    "ES at 0.5 of the pair {-0.5, 1.2} is itself 1.2, "
    "so the member maximum is 1.2 and the stated bound of 1.0 cannot hold"
)


@pytest.mark.xfail(strict=True, reason=WITNESS_REASON)
def test_c03_es_fixed_witness_as_stated():
    d01 = build_distribution([0, 1], [0.5, 0.5])
    w = build_distribution([-0.5, 1.2], [0.5, 0.5])
    top = es(sup_order("icx", [d01, w]), 0.5)
    members = max(es(d01, 0.5), es(w, 0.5))
    ok = abs(top - 1.2) <= 1e-9 and members <= 1.0 + 1e-9
    report("criterion 3 fixed witness at u=0.5", ok, f"ES of sup {top:.6g}, member max {members:.6g}")
    assert ok


def test_c03_same_pair_separates_at_quarter():
    # the same pair does separate the two sides, just not at u = 0.5
    d01 = build_distribution([0, 1], [0.5, 0.5])
    w = build_distribution([-0.5, 1.2], [0.5, 0.5])
    top = es(sup_order("icx", [d01, w]), 0.25)
    members = max(es(d01, 0.25), es(w, 0.25))
    assert top == pytest.approx(0.22 / 0.3, abs=1e-12)
    assert top - members >= 0.01 - 1e-12


def test_c04_envelope_oracle():
    r = run_named("envelope_oracle", 200)
    ok = r.passed and r.max_deviation <= 1e-9
    report("criterion 4 envelope oracle", ok, f"max abs diff {r.max_deviation:.3g} over 200 pairs")
    assert ok, r.counterexample


def test_c05_disp_sup_and_total_variation():
    parts = [run_named("disp_sup_partitions", 200)] + [
        run_named(n, 500) for n in ("tv_additivity", "tv_left_continuity", "tv_lower_sums")
    ]
    worst = max(r.max_deviation for r in parts)
    ok = all(r.passed for r in parts) and worst <= 1e-12
    report("criterion 5 dispersive sup and TV", ok, f"max deviation {worst:.3g}")
    assert ok, [r.to_json() for r in parts if not r.passed]


def test_c06_quantile_identities():
    r = run_named("quantile_identities", 1000)
    report("criterion 6 quantile identity suite", r.passed, f"{r.violations} violations in 1000 laws")
    assert r.passed, r.counterexample


def test_c07_disp_characterisations():
    r = run_named("disp_characterisations", 1000)
    report("criterion 7 dispersive characterisations", r.passed, f"{r.violations} disagreements in 1000 pairs")
    assert r.passed, r.counterexample


def test_c08_roundtrips():
    parts = [run_named("integrated_roundtrip", 1000), run_named("json_roundtrip", 1000)]
    ok = all(r.passed for r in parts)
    report("criterion 8 roundtrips", ok, f"{sum(r.violations for r in parts)} failures in 2x1000 trials")
    assert ok


def test_c09_translation():
    r = run_named("translation", 500)
    ok = r.passed and r.max_deviation <= 1e-12
    report("criterion 9 translation property", ok, f"max deviation {r.max_deviation:.3g} over 500 trials")
    assert ok, r.counterexample


def test_c10_alpha_min_level_set():
    r = run_named("alpha_min_level_set", 200)
    ok = r.passed and r.max_deviation <= 1e-12
    report("criterion 10 alpha_min level set", ok, f"max deviation {r.max_deviation:.3g} over 200 families")
    assert ok, r.counterexample


def _cli(*argv):
    return subprocess.run([sys.executable, "-m", "stochlattice", *argv], capture_output=True, text=True)


def test_c11_cli_end_to_end(tmp_path):
    d01 = tmp_path / "D01.json"
    d01.write_text(json.dumps({"kind": "samples", "values": [0, 1], "weights": [0.5, 0.5]}))
    dm12 = tmp_path / "Dm12.json"
    dm12.write_text(json.dumps({"kind": "samples", "values": [-1, 2], "weights": [0.5, 0.5]}))
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")

    check = _cli("check", "--relation", "icx", str(d01), str(dm12))
    ev = _cli("eval", "--spec", '{"tag":"var","u":0.75}', str(d01))
    parse_err = _cli("check", "--relation", "icx", str(bad), str(dm12))
    tol_err = _cli("check", "--relation", "icx", "--tol", "-1", str(d01), str(dm12))
    first = _cli("verify", "--suite", "all", "--trials", "100", "--seed", "7")
    second = _cli("verify", "--suite", "all", "--trials", "100", "--seed", "7")
    rc_violation = _violation_exit_code()

    verdict = json.loads(check.stdout)
    ok = (
        check.returncode == 0
        and verdict["relation"] == "icx"
        and verdict["holds"] is True
        and ev.returncode == 0
        and ev.stdout.strip() == '{"value":1.0}'
        and parse_err.returncode == 2
        and tol_err.returncode == 2
        and first.returncode == 0
        and first.stdout == second.stdout
        and rc_violation == 3
    )
    report("criterion 11 CLI end to end", ok, f"check={check.stdout.strip()} eval={ev.stdout.strip()} "
           f"exits={parse_err.returncode},{tol_err.returncode},{rc_violation} verify identical={first.stdout == second.stdout}")
    assert ok


def _violation_exit_code():
    from stochlattice import harness

    saved = harness.CHECKS
    harness.CHECKS = (harness.Check("planted_violation", "quantile", lambda rng, tol: (1.0, None)),)
    try:
        return run(["verify", "--suite", "quantile", "--trials", "1"])
    finally:
        harness.CHECKS = saved
