import json

import pytest

from boolample import cli
from boolample import fixtures as fx
from boolample.errors import TheoremViolation
from boolample.suite import EXIT_IO, EXIT_PASS, EXIT_VIOLATION, SuiteConfig, SuiteInputError, run_suite

SMALL = dict(instances=12, condc_instances=12, fork_every=4, twelve_pairs=3, embed_instances=3)


def run(capsys, *argv):
    code = cli.main(["--format", "json", *argv])
    out, err = capsys.readouterr()
    body = json.loads(out) if out.strip() else None
    if body is not None:
        assert body["command"] in argv and "version" in body
    return code, body and body["result"], err


def path(name):
    return str(fx.data_path(name))


def test_check_monoid_and_category(capsys):
    code, out, _ = run(capsys, "check", "--monoid", path("S5"))
    assert code == 0 and out["class"] == "boolean ample monoid"
    code, out, _ = run(capsys, "check", "--category", path("FORK"))
    assert code == 0 and out["right_reversible"] is False and out["right_reversible_witness"] == ["x", "y"]


def test_filters_category_kb(capsys):
    code, out, _ = run(capsys, "filters", "--monoid", path("I2"))
    assert code == 0 and len(out["prime_filters"]) == 4 and out["stone_points"] == ["e1", "e2"]
    code, out, _ = run(capsys, "category", "--monoid", path("S5"))
    assert code == 0 and len(out["arrows"]) == 3
    code, out, _ = run(capsys, "kb", "--category", path("ARROW"))
    assert code == 0 and out == fx.S5().to_dict()


def test_duality_and_condc(capsys):
    code, out, _ = run(capsys, "duality", "--hom", path("S5_TO_I2"))
    assert code == 0 and out["round_trip"] is True
    code, out, _ = run(capsys, "duality", "--category", path("PAIR2"))
    assert code == 0 and set(out["forward"]) == set(fx.PAIR2().arrows)
    code, out, _ = run(capsys, "condc", "--monoid", path("S5"))
    assert code == 0 and out == {"holds": True, "right_reversible": True}


def test_fractions_embed_generate(capsys):
    code, out, _ = run(capsys, "fractions", "--category", path("ARROW"))
    assert code == 0 and out["iota"] == {"id_e": "id_e", "id_f": "id_f", "a": "a"}
    assert "a^-1" in out["groupoid"]["arrows"]
    code, out, _ = run(capsys, "embed", "--monoid", path("S5"))
    assert code == 0 and out["target_size"] == 7 and out["max_fractions_per_join"] == 2
    code, out, _ = run(capsys, "--seed", "4", "generate", "--density", "1", "--max-objects", "2")
    assert code == 0 and out["params"]["seed"] == 4


def test_human_format(capsys):
    assert cli.main(["condc", "--monoid", path("I2")]) == 0
    assert "holds: True" in capsys.readouterr().out


def test_io_and_validation_errors_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "check", "--monoid", str(bad))[0] == EXIT_IO
    assert run(capsys, "check", "--monoid", str(tmp_path / "missing.json"))[0] == EXIT_IO
    assert run(capsys, "fractions", "--category", path("FORK"))[0] == EXIT_IO
    code, _, err = run(capsys, "embed", "--monoid", path("CHAIN3"))
    assert code == EXIT_IO and "NOT_BOOLEAN_AMPLE" in err


def test_theorem_violation_exits_1_with_bundle(capsys, monkeypatch):
    def boom(M):
        raise TheoremViolation("clause", "tag", {"a": 1})
    monkeypatch.setattr(cli, "check_condition_C", boom)
    code, _, err = run(capsys, "condc", "--monoid", path("S5"))
    assert code == EXIT_VIOLATION
    assert json.loads(err)["error"]["clause"] == "clause"


def test_small_suite_passes_and_is_deterministic(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps(dict(SMALL, name="small")))
    out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
    assert cli.main(["suite", "--config", str(cfg), "--output", str(out1)]) == EXIT_PASS
    assert cli.main(["suite", "--config", str(cfg), "--output", str(out2)]) == EXIT_PASS
    capsys.readouterr()
    assert out1.read_bytes() == out2.read_bytes()
    report = json.loads(out1.read_text())
    assert report["suite"] == "small" and "version" in report
    assert all(c["status"] in ("pass", "expected-negative") for c in report["checks"])


def test_fork_in_embed_is_expected_negative():
    res = run_suite(SuiteConfig(embed=["kb:FORK"], **SMALL))
    check = next(c for c in res.checks if c.name == "embed:kb:FORK")
    assert check.status == "expected-negative"
    assert check.witness["code"] == "CONDITION_C_FAILS"
    assert check.witness["witness"] == {"F": "^{id_1}", "a": "{x}", "b": "{y}"}
    assert res.exit_code == EXIT_PASS


def test_corrupted_fixture_exits_2(tmp_path, capsys):
    (tmp_path / "broken.json").write_text('{"elements": ["0", "1"], "mult": [["0"]]}')
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps(dict(SMALL, monoids=["broken.json"])))
    assert cli.main(["suite", "--config", str(cfg)]) == EXIT_IO
    with pytest.raises(SuiteInputError):
        SuiteConfig.from_file(tmp_path / "nope.json")
    (tmp_path / "extra.json").write_text('{"colour": 1}')
    with pytest.raises(SuiteInputError):
        SuiteConfig.from_file(tmp_path / "extra.json")
