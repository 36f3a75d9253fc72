"""Report determinism, witness serialization, and the command line."""

import json
import pathlib
from fractions import Fraction

import pytest

from orbitkit import cli, harness, models, sampling, serialize


@pytest.fixture(scope="module")
def small_report():
    return harness.run(harness.RunConfig(ns=(2,), samples=4, seed=11))


def test_small_run_passes_every_suite(small_report):
    assert small_report.passed
    summary = small_report.summary()
    assert summary["failed"] == 0
    assert summary["checks"] == len(small_report.results)
    assert {r.suite for r in small_report.results} == set(harness.SUITES)
    assert all(r.samples_run > 0 for r in small_report.results)


def test_checks_below_min_n_are_skipped(small_report):
    names = {(r.suite, r.name) for r in small_report.results}
    assert ("slices", "order-two-dim") not in names
    wide = harness.run(harness.RunConfig(suites=("slices",), ns=(2, 4),
                                         samples=1, seed=3))
    ran = {(r.name, r.n) for r in wide.results}
    assert ("order-two-dim", 4) in ran
    assert ("order-two-dim", 2) not in ran


def test_reports_are_byte_identical_across_runs(small_report):
    again = harness.run(harness.RunConfig(ns=(2,), samples=4, seed=11))
    assert again.to_json() == small_report.to_json()


def test_timings_are_rendering_only(small_report):
    canonical = small_report.to_obj()
    timed = small_report.to_obj(include_timings=True)
    assert "total_seconds" in timed
    assert any("elapsed_seconds" in r for r in timed["results"])
    assert harness._strip_timings(timed) == canonical


def test_replay_reproduces_and_detects_tampering(small_report):
    stored = json.loads(small_report.to_json(include_timings=True))
    fresh, identical = harness.replay(stored)
    assert identical and fresh.passed

    tampered = json.loads(small_report.to_json())
    tampered["results"][0]["detail"] = "edited by hand"
    _, identical = harness.replay(tampered)
    assert not identical


def test_text_rendering(small_report):
    text = small_report.to_text()
    assert text.startswith("PASS ")
    assert text.rstrip().endswith("(seed 11)")
    assert "[" not in text
    assert "s]" in small_report.to_text(include_timings=True)


def test_claim_and_check_registries():
    claims = harness.claim_ids()
    assert claims == sorted(set(claims))
    assert {"eta-df-beta", "form-rank", "shell-dimension", "order-two-closure",
            "cotangent-descent", "semistable-closure"} <= set(claims)
    slices = harness.check_names("slices")
    assert all(name.startswith("slices/") for name in slices)
    assert set(slices) <= set(harness.check_names())


def test_every_claim_is_indexed_in_docs():
    doc = pathlib.Path(__file__).resolve().parents[1] / "docs" / "claims.md"
    text = doc.read_text(encoding="utf-8")
    orphans = [claim for claim in harness.claim_ids() if f"`{claim}`" not in text]
    assert orphans == []


def test_both_backend_runs_every_check_twice_on_same_samples():
    report = harness.run(harness.RunConfig(suites=("shell",), ns=(2,),
                                           samples=2, seed=9, backend="both"))
    assert report.passed
    seen = {}
    for r in report.results:
        seen.setdefault((r.suite, r.name, r.n), []).append((r.backend, r.samples_run))
    for pair in seen.values():
        assert [b for b, _ in pair] == ["exact", "float"]
        assert pair[0][1] == pair[1][1]


def test_config_field_validation():
    for kwargs in (dict(ns=(1, 3)), dict(ns=()), dict(samples=0),
                   dict(tolerance=0.0), dict(step=-1e-5), dict(backend="fast")):
        with pytest.raises(ValueError):
            harness.RunConfig(**kwargs)


def test_suite_resolution_order_and_validation():
    config = harness.RunConfig(suites=("vgit", "symplectic", "vgit", "all"))
    assert config.resolved_suites() == harness.SUITES
    config = harness.RunConfig(suites=("vgit", "symplectic"))
    assert config.resolved_suites() == ("symplectic", "vgit")
    with pytest.raises(ValueError):
        harness.RunConfig(suites=("bogus",)).resolved_suites()


def test_config_round_trip():
    config = harness.RunConfig(suites=("shell",), ns=(3, 5), samples=7, seed=42,
                               tolerance=1e-7, rank_tolerance=1e-9,
                               step=1e-4, backend="float")
    assert harness.RunConfig.from_obj(config.to_obj()) == config


def test_recorder_caps_witnesses():
    rec = harness._Recorder()
    for k in range(7):
        rec.fail(sample=k)
    assert rec.failed and len(rec.failures) == 3


def test_scalar_encoding_round_trips():
    assert serialize.encode_scalar(Fraction(3, 7)) == "3/7"
    assert serialize.decode_scalar("3/7") == Fraction(3, 7)
    assert serialize.encode_scalar(5) == "5/1"
    assert serialize.decode_scalar("5/1") == Fraction(5)
    assert serialize.encode_scalar(True) is True
    assert serialize.decode_scalar(True) is True
    assert serialize.encode_scalar(0.25) == 0.25
    with pytest.raises(TypeError):
        serialize.encode_scalar(1 + 2j)


def test_element_and_witness_round_trips():
    rng = sampling.rng_stream(99, "serialize-test")
    e = sampling.block_element(rng, 3)
    assert serialize.element_from_obj(serialize.element_to_obj(e)) == e

    witness = {"sample": 4, "point": e, "gap": 0.5, "label": "a/b",
               "values": [Fraction(-2, 3), True, None]}
    decoded = serialize.decode_value(serialize.encode_value(witness))
    assert decoded["point"] == e
    assert decoded["sample"] == Fraction(4)
    assert decoded["gap"] == 0.5
    assert decoded["label"] == "a/b"
    assert decoded["values"] == [Fraction(-2, 3), True, None]


def test_cli_verify_and_replay(tmp_path):
    path = tmp_path / "report.json"
    code = cli.main(["verify", "--n", "2", "--samples", "2", "--seed", "5",
                     "--suite", "shell,slices", "--format", "json",
                     "--output", str(path)])
    assert code == 0
    stored = json.loads(path.read_text())
    assert stored["summary"]["failed"] == 0
    assert stored["config"]["suites"] == ["shell", "slices"]

    assert cli.main(["replay", "--file", str(path)]) == 0

    stored["results"][0]["samples_run"] += 1
    path.write_text(json.dumps(stored))
    assert cli.main(["replay", "--file", str(path)]) == 1


def test_cli_text_output(capsys):
    code = cli.main(["verify", "--n", "2", "--samples", "1",
                     "--suite", "shell", "--seed", "1"])
    assert code == 0
    out = capsys.readouterr().out
    assert "checks passed" in out and "PASS shell/" in out


def test_cli_seed_fallback(tmp_path, monkeypatch):
    monkeypatch.setenv("ORBITKIT_SEED", "314")
    path = tmp_path / "seeded.json"
    code = cli.main(["verify", "--n", "2", "--samples", "1", "--suite", "shell",
                     "--format", "json", "--output", str(path)])
    assert code == 0
    assert json.loads(path.read_text())["config"]["seed"] == 314


def test_cli_error_paths(tmp_path):
    assert cli.main(["verify", "--suite", "bogus", "--n", "2",
                     "--samples", "1"]) == 2
    assert cli.main(["replay", "--file", str(tmp_path / "missing.json")]) == 2
    with pytest.raises(SystemExit):
        cli.main(["verify", "--n", "1"])


def test_cli_reports_failures_with_exit_one(tmp_path):
    @harness._check("shell", "forced-failure", "forced-failure")
    def _run_forced(config, n, rec):
        rec.sample()
        rec.fail(sample=0, reason="forced")
        return "always fails"

    try:
        path = tmp_path / "failing.json"
        code = cli.main(["verify", "--n", "2", "--samples", "1",
                         "--suite", "shell", "--format", "json",
                         "--output", str(path)])
        assert code == 1
        stored = json.loads(path.read_text())
        failing = [r for r in stored["results"] if not r["passed"]]
        assert len(failing) == 1
        assert failing[0]["failures"][0]["reason"] == "forced"
    finally:
        harness._REGISTRY[:] = [s for s in harness._REGISTRY
                                if s.name != "forced-failure"]
