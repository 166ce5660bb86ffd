import json
import math
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from bornrule.cli import main
from bornrule.report import Report, dumps, format_float, render_machine
from bornrule.specfile import MAX_OUTCOMES, SpecError, UnknownName, parse_spec

from conftest import SPACES

ROOT = SPACES.parent
GOLDEN = Path(__file__).resolve().parent / "golden"

GOLDEN_RUNS = {
    "density_card_B1_superposition": ["density", "spaces/card.json", "--event", "B1", "--mode", "superposition"],
    "density_coin_U_discrete": ["density", "spaces/coin.json", "--event", "U"],
    "prob_skewed_S_T": ["prob", "spaces/skewed.json", "--event", "S", "--mode", "superposition", "--query", "T"],
    "spectrum_card_pi": ["spectrum", "spaces/card.json", "--partition", "pi"],
    "sample_coin_superposition": ["sample", "spaces/coin.json", "--event", "U", "--mode", "superposition",
                                  "--seed", "1", "--trials", "1000"],
    "density_card_pi_table": ["density", "spaces/card.json", "--partition", "pi", "--format", "table"],
}


def run(capsys, monkeypatch, argv):
    monkeypatch.chdir(ROOT)
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, monkeypatch, argv):
    code, out, err = run(capsys, monkeypatch, argv)
    assert code == 0, err
    return json.loads(out)


@pytest.mark.parametrize("name", sorted(GOLDEN_RUNS))
def test_golden_output(capsys, monkeypatch, name):
    code, out, _ = run(capsys, monkeypatch, GOLDEN_RUNS[name])
    assert code == 0
    assert out == (GOLDEN / f"{name}.txt").read_text(encoding="utf-8")


def test_density_card_superposition(capsys, monkeypatch):
    res = run_json(capsys, monkeypatch, ["density", "spaces/card.json", "--event", "B1", "--mode", "superposition"])["result"]
    m = np.array(res["matrix"])
    expected = np.zeros((4, 4))
    expected[1:3, 1:3] = 0.5
    assert np.max(np.abs(m - expected)) <= 1e-15
    assert res["pure"] is True
    assert res["eigenvalues"] == pytest.approx([1, 0, 0, 0], abs=1e-15)


def test_density_coin_discrete(capsys, monkeypatch):
    res = run_json(capsys, monkeypatch, ["density", "spaces/coin.json", "--event", "U"])["result"]
    assert res["matrix"] == [[0.5, 0.0], [0.0, 0.5]]
    assert res["pure"] is False
    assert res["trace"] == 1.0


def test_density_partition(capsys, monkeypatch):
    res = run_json(capsys, monkeypatch, ["density", "spaces/card.json", "--partition", "pi"])["result"]
    assert np.array(res["matrix"]) == pytest.approx(
        np.array([[0.25, 0, 0, 0.25], [0, 0.25, 0.25, 0], [0, 0.25, 0.25, 0], [0.25, 0, 0, 0.25]]), abs=1e-15
    )
    assert res["eigenvalues"] == pytest.approx([0.5, 0.5, 0, 0], abs=1e-15)


def test_prob(capsys, monkeypatch):
    res = run_json(capsys, monkeypatch, ["prob", "spaces/coin.json", "--event", "U", "--mode", "superposition",
                                         "--query", "H"])["result"]
    assert res["probability"] == pytest.approx(0.5, abs=1e-15)
    assert res["classical"] == 0.5
    assert res["abs_difference"] <= 1e-15

    res = run_json(capsys, monkeypatch, ["prob", "spaces/coin.json", "--event", "U", "--query", "U"])["result"]
    assert res["probability"] == 1.0

    res = run_json(capsys, monkeypatch, ["prob", "spaces/skewed.json", "--event", "S", "--mode", "superposition",
                                         "--query", "u2"])["result"]
    assert res["probability"] == pytest.approx(1 / 3, abs=1e-15)
    assert res["classical"] == pytest.approx(1 / 3, abs=1e-15)


def test_prob_partition_oracle_is_unconditional(capsys, monkeypatch):
    res = run_json(capsys, monkeypatch, ["prob", "spaces/skewed.json", "--partition", "halves",
                                         "--query", "S"])["result"]
    assert res["probability"] == pytest.approx(0.6, abs=1e-15)
    assert res["classical"] == pytest.approx(0.6, abs=1e-15)


def test_spectrum(capsys, monkeypatch):
    res = run_json(capsys, monkeypatch, ["spectrum", "spaces/skewed.json", "--event", "S",
                                         "--mode", "superposition"])["result"]
    assert res["predicted"] == [1.0, 0.0, 0.0, 0.0]
    assert res["max_deviation"] <= 1e-9
    res = run_json(capsys, monkeypatch, ["spectrum", "spaces/skewed.json", "--event", "S"])["result"]
    assert res["predicted"] == pytest.approx([2 / 3, 1 / 3, 0, 0], abs=1e-15)
    assert res["eigenvalues"] == pytest.approx([2 / 3, 1 / 3, 0, 0], abs=1e-15)
    res = run_json(capsys, monkeypatch, ["spectrum", "spaces/card.json", "--partition", "pi"])["result"]
    assert res["eigenvalues"] == pytest.approx([0.5, 0.5, 0, 0], abs=1e-15)


def test_sample(capsys, monkeypatch):
    res = run_json(capsys, monkeypatch, ["sample", "spaces/coin.json", "--event", "U", "--mode", "superposition",
                                         "--seed", "1", "--trials", "1000000"])["result"]
    assert 0.498 <= res["empirical"]["frequencies"][0] <= 0.502
    res = run_json(capsys, monkeypatch, ["sample", "spaces/coin.json", "--event", "U", "--trials", "1"])["result"]
    assert sum(res["empirical"]["counts"]) == 1


def test_sample_compare(capsys, monkeypatch):
    res = run_json(capsys, monkeypatch, ["sample", "spaces/card.json", "--event", "B1", "--compare-superposition",
                                         "--seed", "3", "--trials", "100000"])["result"]
    assert res["verdict"] == "indistinguishable"
    assert res["discrete"]["counts"][0] == res["superposition"]["counts"][0] == 0


def test_sample_shards_deterministic(capsys, monkeypatch):
    argv = ["sample", "spaces/card.json", "--partition", "pi", "--seed", "9", "--trials", "40000", "--shards", "3"]
    first = run_json(capsys, monkeypatch, argv)["result"]["empirical"]
    second = run_json(capsys, monkeypatch, argv)["result"]["empirical"]
    assert first == second
    assert sum(first["counts"]) == 40000


@pytest.mark.parametrize("space", ["card", "coin", "skewed"])
def test_verify_passes(capsys, monkeypatch, space):
    code, out, _ = run(capsys, monkeypatch, ["verify", f"spaces/{space}.json", "--trials-per-property", "50"])
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["passed"] is True
    names = {p["name"] for p in doc["result"]["properties"]}
    assert {"born_identity", "probability_agreement", "sharpening", "purity_dichotomy",
            "incidence_identity", "spectrum_claims", "trace_vs_summation",
            "partition_endpoints", "monotone_refinement"} <= names


def test_verify_coin_born_deviation(capsys, monkeypatch):
    doc = run_json(capsys, monkeypatch, ["verify", "spaces/coin.json"])
    born = next(p for p in doc["result"]["properties"] if p["name"] == "born_identity")
    assert born["worst_deviation"] < 1e-15


def test_verify_reports_failures(capsys, monkeypatch):
    # a negative purity tolerance makes every purity check fail
    code, out, _ = run(capsys, monkeypatch, ["verify", "spaces/coin.json", "--trials-per-property", "5",
                                            "--tolerance", "-1"])
    assert code == 1
    doc = json.loads(out)
    assert doc["result"]["passed"] is False
    failed = [p["name"] for p in doc["result"]["properties"] if not p["passed"]]
    assert "purity_dichotomy" in failed


def write(tmp_path, doc, name="space.json"):
    path = tmp_path / name
    path.write_text(doc if isinstance(doc, str) else json.dumps(doc, indent=2), encoding="utf-8")
    return str(path)


def test_exit_2_on_bad_probabilities(tmp_path, capsys):
    path = write(tmp_path, {"outcomes": ["a", "b"], "probs": [0.5, 0.6]})
    assert main(["verify", path]) == 2
    err = capsys.readouterr().err
    assert "NotNormalized" in err and "line 6" in err


def test_exit_2_on_malformed_json(tmp_path, capsys):
    path = write(tmp_path, '{\n  "outcomes": ["a"],\n  "probs": [1.0,]\n}\n')
    assert main(["density", path, "--event", "U"]) == 2
    err = capsys.readouterr().err
    assert "line 3" in err


def test_exit_2_on_missing_file(tmp_path, capsys):
    assert main(["density", str(tmp_path / "nope.json"), "--event", "U"]) == 2


def test_exit_2_on_empty_event(tmp_path, capsys):
    path = write(tmp_path, {"outcomes": ["a", "b"], "probs": ["1/2", "1/2"], "events": {"none": []}})
    assert main(["density", path, "--event", "none"]) == 2


def test_exit_3_on_unknown_name(capsys, monkeypatch):
    code, _, err = run(capsys, monkeypatch, ["density", "spaces/card.json", "--event", "nope"])
    assert code == 3 and "nope" in err
    code, _, _ = run(capsys, monkeypatch, ["spectrum", "spaces/card.json", "--partition", "nope"])
    assert code == 3
    code, _, _ = run(capsys, monkeypatch, ["prob", "spaces/card.json", "--event", "B1", "--query", "nope"])
    assert code == 3


def test_exit_2_on_bad_arguments(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["density", "spaces/card.json"])
    assert exc.value.code == 2


def test_normalize_flag(tmp_path, capsys):
    path = write(tmp_path, {"outcomes": ["a", "b", "c"], "probs": [1, 2, "3"]})
    assert main(["density", path, "--event", "U"]) == 2
    capsys.readouterr()
    assert main(["density", path, "--event", "U", "--normalize"]) == 0
    res = json.loads(capsys.readouterr().out)["result"]
    assert np.diag(res["matrix"]) == pytest.approx([1 / 6, 2 / 6, 3 / 6], abs=1e-15)


def test_normalize_still_rejects_zero_weight(tmp_path):
    path = write(tmp_path, {"outcomes": ["a", "b"], "probs": [0, 2]})
    assert main(["density", path, "--event", "U", "--normalize"]) == 2


def test_outcome_cap(tmp_path, capsys):
    n = MAX_OUTCOMES + 1
    path = write(tmp_path, {"outcomes": [f"x{i}" for i in range(n)], "probs": [f"1/{n}"] * n})
    assert main(["density", path, "--event", "U"]) == 2
    assert "limit" in capsys.readouterr().err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "bornrule", "prob", "spaces/coin.json", "--event", "U", "--query", "H"],
        cwd=ROOT, capture_output=True, text=True, encoding="utf-8",
    )
    assert proc.returncode == 0, proc.stderr
    assert json.loads(proc.stdout)["result"]["probability"] == 0.5


# spec files


def test_fractions_are_exact():
    spec = parse_spec('{"outcomes": ["a", "b", "c"], "probs": ["1/3", "1/3", "1/3"]}')
    assert spec.space.probs == (1 / 3, 1 / 3, 1 / 3)


def test_builtin_names():
    spec = parse_spec((SPACES / "card.json").read_text(encoding="utf-8"))
    assert len(spec.event("U")) == 4
    assert len(spec.partition("1_U")) == 4
    assert len(spec.partition("0_U")) == 1
    assert spec.event("♠").labels() == ["♠"]
    with pytest.raises(UnknownName):
        spec.partition("B1")


@pytest.mark.parametrize(
    "text, fragment",
    [
        ('[1, 2]', "JSON object"),
        ('{"outcomes": ["a"]}', "probs"),
        ('{"outcomes": ["a", "a"], "probs": [0.5, 0.5]}', "DuplicateLabel"),
        ('{"outcomes": ["a"], "probs": ["x"]}', "bad probability"),
        ('{"outcomes": ["a"], "probs": [1], "events": {"e": ["z"]}}', "event 'e'"),
        ('{"outcomes": ["a", "b"], "probs": [0.5, 0.5], "partitions": {"p": [["a"]]}}', "IncompleteCover"),
        ('{"outcomes": ["a", "b"], "probs": [0.5, 0.5], "partitions": {"p": [["a", "b"], ["b"]]}}',
         "OverlappingBlocks"),
    ],
)
def test_spec_errors(text, fragment):
    with pytest.raises(SpecError, match=fragment):
        parse_spec(text)


# reports


@pytest.mark.parametrize("x", [0.1, 1 / 3, math.pi, 1e-300, 2.0**-1074, 0.0, -0.0, 1.0, 123456789.123456789])
def test_float_round_trip(x):
    text = format_float(x)
    assert float(text) == x
    assert json.loads(text) == x and isinstance(json.loads(text), float)


def test_report_round_trip(rng):
    payload = {"matrix": rng.normal(size=(5, 5)), "values": rng.random(7).tolist(), "flag": True, "n": 3}
    rep = Report("density", ["x"], {"path": "p"}, {"tol": 1e-10}, payload)
    back = json.loads(render_machine(rep))
    assert np.array_equal(np.array(back["result"]["matrix"]), payload["matrix"])
    assert back["result"]["values"] == payload["values"]
    assert back["tolerances"]["tol"] == 1e-10


@pytest.mark.parametrize("name", sorted(GOLDEN_RUNS))
def test_machine_reports_reparse_identically(capsys, monkeypatch, name):
    argv = [a for a in GOLDEN_RUNS[name] if a not in ("--format", "table")]
    code, out, _ = run(capsys, monkeypatch, argv)
    doc = json.loads(out)
    assert dumps(doc) + "\n" == out


def test_dumps_rejects_nan():
    with pytest.raises(ValueError):
        dumps({"x": float("nan")})
