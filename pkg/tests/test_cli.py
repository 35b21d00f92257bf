import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from ultrameasure import Measure, ScalarFunction, TowerElement, convolve_measures
from ultrameasure.cli import main
from ultrameasure.oracles import convolve_measures_bruteforce


def run_cli(*argv: str) -> int:
    return main(list(argv))


def read_json(path: Path) -> dict:
    return json.loads(path.read_text())


def test_gen_group_descriptor(tmp_path, capsys):
    out = tmp_path / "g.json"
    assert run_cli("gen", "--group", "heisenberg:3:1", "--out", str(out), "--format", "json") == 0
    payload = read_json(out)
    assert payload == {"kind": "heisenberg", "p": 3, "n": 1}


def test_gen_measure_haar(tmp_path):
    out = tmp_path / "m.json"
    assert run_cli("gen", "--group", "cyclic:3:2", "--measure", "haar", "--out", str(out)) == 0
    mu = Measure.from_json(read_json(out))
    assert mu.probability and mu.atom(0) == Fraction(1, 9)


def test_gen_measure_random_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run_cli("gen", "--measure", "random", "--seed", "42", "--out", str(a)) == 0
    assert run_cli("gen", "--measure", "random", "--seed", "42", "--out", str(b)) == 0
    assert a.read_bytes() == b.read_bytes()
    c = tmp_path / "c.json"
    assert run_cli("gen", "--measure", "random", "--seed", "43", "--out", str(c)) == 0
    assert a.read_bytes() != c.read_bytes()


def test_gen_seed_env_default(tmp_path, monkeypatch):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    monkeypatch.setenv("ULTRAMEASURE_SEED", "99")
    assert run_cli("gen", "--measure", "random", "--out", str(a)) == 0
    assert run_cli("gen", "--measure", "random", "--seed", "99", "--out", str(b)) == 0
    assert a.read_bytes() == b.read_bytes()


def test_gen_roundtrip_all_artifacts(tmp_path):
    files = {
        "measure": ("--measure", "random"),
        "function": ("--function", "random"),
        "tower": ("--tower", "random"),
        "chain": ("--chain",),
    }
    for name, flags in files.items():
        out = tmp_path / f"{name}.json"
        assert run_cli("gen", "--group", "cyclic:3:2", *flags, "--seed", "7", "--out", str(out)) == 0
        payload = read_json(out)
        if name == "measure":
            assert Measure.from_json(payload).to_json() == payload
        elif name == "function":
            assert ScalarFunction.from_json(payload).to_json() == payload
        elif name == "tower":
            assert TowerElement.from_json(payload).to_json() == payload
        else:
            assert payload["levels"][0] == list(range(9))


def test_gen_rejects_bad_spec(capsys):
    assert run_cli("gen", "--group", "dihedral:4") == 2
    assert "error" in capsys.readouterr().err


def test_gen_rejects_conflicting_artifacts(capsys):
    assert run_cli("gen", "--measure", "haar", "--function", "random") == 2


def test_convolve_measures_cli(tmp_path):
    nu_path, mu_path, out = tmp_path / "nu.json", tmp_path / "mu.json", tmp_path / "out.json"
    assert run_cli("gen", "--group", "cyclic:3:1", "--measure", "random", "--seed", "5", "--out", str(nu_path)) == 0
    assert run_cli("gen", "--group", "cyclic:3:1", "--measure", "random", "--seed", "6", "--out", str(mu_path)) == 0
    assert run_cli("convolve", "--nu", str(nu_path), "--mu", str(mu_path), "--out", str(out)) == 0
    nu, mu = Measure.from_json(read_json(nu_path)), Measure.from_json(read_json(mu_path))
    result = Measure.from_json(read_json(out))
    assert result == convolve_measures(nu, mu)
    assert result == convolve_measures_bruteforce(nu, mu)


def test_convolve_functions_cli(tmp_path):
    left, right = tmp_path / "l.json", tmp_path / "r.json"
    nu_path, out = tmp_path / "nu.json", tmp_path / "o.json"
    assert run_cli("gen", "--group", "cyclic:3:2", "--function", "random", "--seed", "1", "--out", str(left)) == 0
    assert run_cli("gen", "--group", "cyclic:3:2", "--function", "random", "--seed", "2", "--out", str(right)) == 0
    assert run_cli("gen", "--group", "cyclic:3:2", "--measure", "random", "--seed", "3", "--out", str(nu_path)) == 0
    assert run_cli("convolve", "--left", str(left), "--right", str(right), "--nu", str(nu_path), "--out", str(out)) == 0
    assert ScalarFunction.from_json(read_json(out)) is not None


def test_convolve_missing_inputs(tmp_path, capsys):
    assert run_cli("convolve", "--nu", str(tmp_path / "nope.json")) == 2


def test_star_cli_indicator_tower_unchanged(tmp_path):
    tow, out = tmp_path / "t.json", tmp_path / "s.json"
    assert run_cli("gen", "--group", "cyclic:3:2", "--tower", "indicators", "--out", str(tow)) == 0
    assert run_cli("star", "--f", str(tow), "--g", str(tow), "--out", str(out)) == 0
    element = TowerElement.from_json(read_json(tow))
    result = TowerElement.from_json(read_json(out))
    assert result == element.truncated(len(element.components) - 1)


def test_rho_haar_constant_table(tmp_path, capsys):
    mu_path = tmp_path / "m.json"
    assert run_cli("gen", "--group", "cyclic:3:1", "--measure", "haar", "--out", str(mu_path)) == 0
    capsys.readouterr()
    assert run_cli("rho", "--mu", str(mu_path), "--phi", "1") == 0
    table = capsys.readouterr().out
    assert table.count("1/1") == 3


def test_rho_zero_atom_exit_code(tmp_path, capsys):
    mu_path = tmp_path / "m.json"
    mu_path.write_text(json.dumps({
        "group": {"kind": "cyclic", "p": 3, "n": 1},
        "q": 5,
        "atoms": {"0": "1/2", "1": "1/2"},
    }))
    assert run_cli("rho", "--mu", str(mu_path), "--phi", "1") == 3
    assert "precondition" in capsys.readouterr().err


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run_cli("rho", "--mu", str(bad), "--phi", "0") == 2


def test_norms_cli(tmp_path, capsys):
    f_path, mu_path = tmp_path / "f.json", tmp_path / "m.json"
    assert run_cli("gen", "--group", "cyclic:3:2", "--function", "random", "--seed", "4", "--out", str(f_path)) == 0
    assert run_cli("gen", "--group", "cyclic:3:2", "--measure", "haar", "--out", str(mu_path)) == 0
    out = tmp_path / "n.json"
    assert run_cli(
        "norms", "--f", str(f_path), "--mu", str(mu_path), "--subgroup", "0,3,6", "--out", str(out)
    ) == 0
    payload = read_json(out)
    assert {"set_norm_domain", "weighted_sup_norm", "translated_sup_norm"} <= payload.keys()


def test_verify_report_deterministic(tmp_path):
    r1, r2 = tmp_path / "r1.json", tmp_path / "r2.json"
    assert run_cli("verify", "lemma16", "--seed", "11", "--trials", "8", "--out", str(r1)) == 0
    assert run_cli("verify", "lemma16", "--seed", "11", "--trials", "8", "--out", str(r2)) == 0
    assert r1.read_bytes() == r2.read_bytes()


def test_verify_zero_trials_vacuous(tmp_path):
    out = tmp_path / "r.json"
    assert run_cli("verify", "lemma2", "--trials", "0", "--out", str(out)) == 0
    payload = read_json(out)
    assert payload["properties"] == [] and payload["passed"] is True


def test_verify_failure_exit_code(monkeypatch, tmp_path):
    from ultrameasure import verify as verify_mod
    from ultrameasure.verify import PropertyOutcome

    def broken_family(seed, trials, q):
        return [PropertyOutcome("lemma2/synthetic", "fail", 1, {"reason": "forced"})]

    monkeypatch.setitem(verify_mod.FAMILIES, "lemma2", broken_family)
    out = tmp_path / "r.json"
    assert run_cli("verify", "lemma2", "--trials", "3", "--out", str(out)) == 1
    payload = read_json(out)
    assert payload["passed"] is False
    assert payload["properties"][0]["witness"] == {"reason": "forced"}


def test_verify_unknown_suite_usage_error(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["verify", "lemma99"])
    assert excinfo.value.code == 2


def test_console_entrypoint_subprocess(tmp_path):
    out = tmp_path / "m.json"
    proc = subprocess.run(
        [sys.executable, "-m", "ultrameasure", "gen", "--measure", "haar", "--out", str(out), "--format", "json"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert read_json(out)["probability"] is True
