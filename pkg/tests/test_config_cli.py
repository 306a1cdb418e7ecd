import json

import pytest

from gaugenet import cli
from gaugenet.config import ConfigError, SuiteConfig, parse_config_text
from gaugenet.suites import Check, SuiteReport, emit_report, parse_records, parse_table_values, run_suite


def test_defaults_match_acceptance_scale():
    cfg = SuiteConfig()
    assert cfg.manifold().dim_H == 96
    assert cfg.torus().shape == (8, 8)
    assert (cfg.n_triples, cfg.n_pairs, cfg.n_dexp, cfg.mc_samples) == (100, 100, 50, 100_000)
    assert (cfg.epsilon, cfg.factor_m, cfg.max_orbit, cfg.modular_pairs) == (0.2, 32, 64, 20)
    assert (cfg.ergodic_min, cfg.ergodic_max, cfg.totality_max) == (8, 512, 8)


def test_parse_config_text():
    cfg = parse_config_text("# comment\nseed = 9\nsites = 8x8\ngroup = su3\nplant = spade\ntol.typeS.inverse = 1e-6\n")
    assert cfg.seed == 9 and cfg.topology == "torus" and cfg.sites == (8, 8)
    assert cfg.group == 3 and cfg.plant == "A"
    assert cfg.tol("typeS.inverse", 1.0) == 1e-6


@pytest.mark.parametrize(
    "text,key,line",
    [
        ("seed = 1\nfoo = 2\n", "foo", 2),
        ("seed = x\n", "seed", 1),
        ("\n\nepsilon = 3\n", "epsilon", 3),
        ("group = su5\n", "group", 1),
        ("seed = 1\nseed = 2\n", "seed", 2),
        ("region = all\n", "region", 1),
    ],
)
def test_config_errors_carry_diagnostics(text, key, line):
    with pytest.raises(ConfigError) as info:
        parse_config_text(text)
    assert info.value.key == key and info.value.line == line


def test_config_syntax_error_line():
    with pytest.raises(ConfigError) as info:
        parse_config_text("seed = 1\njust words\n")
    assert info.value.line == 2


def test_config_dict_round_trip():
    cfg = parse_config_text("sites = 16\nseed = 4\ntol.modular.x = 2\n")
    assert SuiteConfig.from_dict(json.loads(json.dumps(cfg.as_dict()))) == cfg


def test_tolerance_key_must_name_a_suite():
    with pytest.raises(ConfigError) as info:
        parse_config_text("seed = 1\ntol.homomorphism = 1e-9\n")
    assert info.value.line == 2 and info.value.key == "tol.homomorphism"


def test_tolerance_override_is_applied():
    rep = run_suite("typeS", SuiteConfig(n_triples=3, tolerances={"typeS.inverse": 1e-30}))
    assert rep.by_name("typeS.inverse").threshold == 1e-30
    assert not rep.passed and rep.exit_code == 1


def test_empty_report_is_header_only():
    rep = SuiteReport("typeS", {"seed": 1}, [])
    rec = emit_report(rep, "records")
    assert len(rec.splitlines()) == 1 and json.loads(rec)["n_checks"] == 0
    assert len(emit_report(rep, "table").splitlines()) == 2
    assert rep.passed


def test_single_check_round_trip():
    rep = SuiteReport("x", {"seed": 1}, [Check("x", "x.one", 3, 1.25e-13, 1e-12, "<=", wall=0.5)])
    back = parse_records(emit_report(rep, "records"))
    assert back.checks[0].record() == rep.checks[0].record()
    assert back.config == rep.config


def test_formats_carry_identical_values():
    rep = run_suite("modular", SuiteConfig(modular_pairs=3))
    table = parse_table_values(emit_report(rep, "table"))
    records = {c.name: c.value for c in parse_records(emit_report(rep, "records")).checks}
    assert table == records


def test_unknown_suite_and_format():
    with pytest.raises(ValueError):
        run_suite("nope")
    with pytest.raises(ValueError):
        emit_report(SuiteReport("x"), "xml")


def test_cli_exit_codes(tmp_path, capsys):
    assert cli.main(["--suite", "modular", "--format", "records", "--seed", "3"]) == 0
    out = capsys.readouterr().out
    assert json.loads(out.splitlines()[0])["config"]["seed"] == 3
    bad = tmp_path / "bad.cfg"
    bad.write_text("seed = 1\nwhat = 2\n")
    assert cli.main(["--config", str(bad)]) == 2
    assert "line 2" in capsys.readouterr().err
    assert cli.main(["--config", str(tmp_path / "missing.cfg")]) == 2
    assert cli.main(["--sites", "3", "--suite", "typeS"]) == 2
    planted = tmp_path / "plant.cfg"
    planted.write_text("plant = A\n")
    assert cli.main(["--suite", "localnet", "--config", str(planted)]) == 1
    out = capsys.readouterr().out
    spade = [ln for ln in out.splitlines() if ln.startswith("localnet.commutant.spade")]
    assert spade and "FAIL" in spade[0]


def test_cli_flag_overrides(capsys):
    assert cli.main(["--suite", "modular", "--format", "records", "--group", "su3", "--region", "0,2", "--epsilon", "0.1", "--mc-samples", "500", "--sites", "16"]) == 0
    cfg = json.loads(capsys.readouterr().out.splitlines()[0])["config"]
    assert (cfg["group"], cfg["region"], cfg["epsilon"], cfg["mc_samples"], cfg["sites"]) == (3, "0,2", 0.1, 500, [16])


def test_aborted_suite_becomes_failed_check(monkeypatch):
    from gaugenet import suites

    def boom(cfg):
        raise ArithmeticError("overflow in test")

    monkeypatch.setitem(suites.SUITE_FUNCS, "typeS", boom)
    rep = run_suite("typeS")
    assert rep.exit_code == 1 and rep.checks[0].name == "typeS.error"
    assert "overflow in test" in emit_report(rep, "table")
    assert parse_records(emit_report(rep, "records")).errors == rep.errors
