import json

import numpy as np
import pytest

from cqms import cli, corep, groups, hopf, io

import oracles


@pytest.fixture(scope="module")
def z4_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("inputs") / "z4.json"
    io.dump_group_file(path, groups.cyclic_table(4), metric=groups.arc_metric(4))
    return str(path)


@pytest.fixture(scope="module")
def z8_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("inputs") / "z8.json"
    io.dump_group_file(path, groups.cyclic_table(8), metric=groups.arc_metric(8))
    return str(path)


@pytest.fixture(scope="module")
def s3c_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("inputs") / "s3c.json"
    table = groups.s3_table()
    length = groups.symmetric_word_length(table, groups.s3_word_generators())
    io.dump_group_file(path, table, length=length)
    return str(path)


def test_load_group_file_roundtrip(z4_file):
    loaded = io.load_input(z4_file)
    assert loaded.algebra.kind == "function"
    assert loaded.algebra.dim == 4
    assert hopf.check_axioms(loaded.algebra).passed
    assert len(loaded.irreps_or_default()) == 4


def test_load_group_file_with_irreps(tmp_path, f_s3):
    irreps = corep.default_irreps(f_s3)
    path = tmp_path / "s3.json"
    io.dump_group_file(path, groups.s3_table(), metric=groups.s3_transposition_metric(),
                       irreps=irreps)
    loaded = io.load_input(str(path))
    assert loaded.irreps is not None
    assert [p.dim for p in loaded.irreps] == [1, 1, 2]
    dec = corep.pw_decompose(loaded.algebra, loaded.irreps)
    assert dec.complete


def test_load_quantum_group_file(tmp_path, f_z4):
    payload = {
        "dim": 4,
        "mult": io._encode_complex(f_z4.mult),
        "comult": io._encode_complex(f_z4.comult),
        "unit": io._encode_complex(f_z4.unit),
        "star": io._encode_complex(f_z4.star),
        "counit": io._encode_complex(f_z4.counit),
        "antipode": io._encode_complex(f_z4.antipode),
        "rep": io._encode_complex(f_z4.rep),
    }
    path = tmp_path / "custom.json"
    path.write_text(json.dumps(payload))
    loaded = io.load_input(str(path))
    assert loaded.source == "quantum_group"
    assert hopf.check_axioms(loaded.algebra).passed
    assert np.allclose(loaded.algebra.haar, f_z4.haar)


def test_parse_error_carries_location(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"order": 2,\n "mult_table": [[0, 1], [1, 0]')
    with pytest.raises(io.ParseError, match="line 2"):
        io.load_input(str(path))


def test_cli_check_passes(z4_file, capsys):
    code = cli.main(["check", "--input", z4_file, "--format", "text"])
    out = capsys.readouterr().out
    assert code == cli.EXIT_OK
    assert "all axioms pass" in out
    assert "max residual" in out


def test_cli_check_parse_error(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{nope}")
    code = cli.main(["check", "--input", str(path)])
    err = capsys.readouterr().err
    assert code == cli.EXIT_VALIDATION
    assert "parse error" in err
    assert "line" in err and "column" in err


def test_cli_check_pw_incomplete(tmp_path, f_z4, capsys):
    irreps = corep.default_irreps(f_z4)[:2]
    path = tmp_path / "partial.json"
    io.dump_group_file(path, groups.cyclic_table(4), metric=groups.arc_metric(4),
                       irreps=irreps)
    code = cli.main(["check", "--input", str(path), "--pw"])
    err = capsys.readouterr().err
    assert code == cli.EXIT_VALIDATION
    assert "2" in err and "4" in err


def test_cli_truncate(z4_file, capsys):
    code = cli.main(["truncate", "--input", z4_file, "--lambda", "0,1", "--format", "text"])
    out = capsys.readouterr().out
    assert code == cli.EXIT_OK
    assert "dim_sys 3" in out


def test_cli_bound_closed_form(z4_file, capsys):
    code = cli.main(["bound", "--input", z4_file, "--lambda", "0,1", "--format", "text",
                     "--samples", "20"])
    out = capsys.readouterr().out
    assert code == cli.EXIT_OK
    expected = oracles.fejer_truncation_bound(4, (0, 1))
    value = float(out.split("bound_B=")[1].split()[0])
    assert value == pytest.approx(expected, abs=1e-8)


def test_cli_bound_lambda_all_is_zero(z4_file, capsys):
    code = cli.main(["bound", "--input", z4_file, "--lambda", "all", "--format", "text",
                     "--samples", "10"])
    out = capsys.readouterr().out
    assert code == cli.EXIT_OK
    value = float(out.split("bound_B=")[1].split()[0])
    assert abs(value) < 1e-9


def test_cli_bound_explicit_vector_normalized(z4_file, capsys):
    code = cli.main(["bound", "--input", z4_file, "--lambda", "0,1", "--state", "explicit",
                     "--vector", "2,0", "--format", "text", "--samples", "10"])
    out = capsys.readouterr().out
    assert code == cli.EXIT_OK
    assert "normalized" in out


def test_cli_sweep_csv(z8_file, tmp_path, capsys):
    out_path = tmp_path / "sweep.csv"
    code = cli.main(["sweep", "--input", z8_file, "--samples", "30",
                     "--output", str(out_path)])
    assert code == cli.EXIT_OK
    lines = out_path.read_text().strip().splitlines()
    assert lines[0] == ",".join(cli.CSV_COLUMNS)
    assert len(lines) == 6                      # header + 5 chain levels
    bounds = [float(line.split(",")[2]) for line in lines[1:]]
    assert all(bounds[k + 1] <= bounds[k] + 1e-9 for k in range(len(bounds) - 1))
    assert bounds[-1] == pytest.approx(0.0, abs=1e-8)
    residuals = [float(line.split(",")[6]) for line in lines[1:]]
    assert all(r <= 1e-8 for r in residuals)


def test_cli_sweep_deterministic(z8_file, tmp_path):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for path in paths:
        code = cli.main(["sweep", "--input", z8_file, "--samples", "10", "--seed", "7",
                         "--output", str(path)])
        assert code == cli.EXIT_OK

    def strip_runtime(text):
        return ["," .join(line.split(",")[:-1]) for line in text.strip().splitlines()]

    assert strip_runtime(paths[0].read_text()) == strip_runtime(paths[1].read_text())


def test_cli_sweep_c_s3(s3c_file, capsys):
    code = cli.main(["sweep", "--input", s3c_file, "--samples", "25", "--format", "csv"])
    out = capsys.readouterr().out
    assert code == cli.EXIT_OK
    lines = out.strip().splitlines()
    residuals = [float(line.split(",")[6]) for line in lines[1:]]
    assert all(r <= 1e-8 for r in residuals)
    bounds = [float(line.split(",")[2]) for line in lines[1:]]
    assert bounds[-1] == pytest.approx(0.0, abs=1e-8)


def test_cli_sweep_bad_chain(z8_file, capsys):
    code = cli.main(["sweep", "--input", z8_file, "--chain", "0,1;0"])
    err = capsys.readouterr().err
    assert code == cli.EXIT_CONFIG
    assert "chain" in err


def test_cli_pw(s3c_file, capsys):
    code = cli.main(["pw", "--input", s3c_file, "--format", "text"])
    out = capsys.readouterr().out
    assert code == cli.EXIT_OK
    assert "complete" in out


def test_cli_custom_seminorm_file(z4_file, tmp_path, capsys):
    # custom polyhedral family equal to the metric family on F(Z_4)
    import cqms.lipnorm as lipnorm_mod
    from cqms import hopf
    g = hopf.function_algebra(groups.cyclic_table(4), metric=groups.arc_metric(4))
    lip = lipnorm_mod.lip_from_metric(g)
    payload = {"functionals": io._encode_complex(lip.functionals),
               "weights": np.asarray(lip.weights).tolist()}
    path = tmp_path / "family.json"
    path.write_text(json.dumps(payload))
    code = cli.main(["bound", "--input", z4_file, "--lambda", "0,1",
                     "--seminorm", f"file:{path}", "--format", "text", "--samples", "10"])
    out = capsys.readouterr().out
    assert code == cli.EXIT_OK
    value = float(out.split("bound_B=")[1].split()[0])
    assert value == pytest.approx(oracles.fejer_truncation_bound(4, (0, 1)), abs=1e-8)


def test_cli_bound_optimized_not_worse(z8_file, capsys):
    code = cli.main(["bound", "--input", z8_file, "--lambda", "0,1,7", "--format", "text",
                     "--samples", "10"])
    canonical = float(capsys.readouterr().out.split("bound_B=")[1].split()[0])
    code2 = cli.main(["bound", "--input", z8_file, "--lambda", "0,1,7", "--state", "optimized",
                      "--format", "text", "--samples", "10"])
    optimized = float(capsys.readouterr().out.split("bound_B=")[1].split()[0])
    assert code == cli.EXIT_OK and code2 == cli.EXIT_OK
    assert optimized <= canonical + 1e-9


def test_run_sweep_config_roundtrip(z8_file):
    loaded = io.load_input(z8_file)
    irreps = loaded.irreps_or_default()
    from cqms import lipnorm as lipnorm_mod
    config = cli.SweepConfig(
        loaded=loaded, irreps=irreps, seminorm=lipnorm_mod.lip_from_metric(loaded.algebra),
        chain=[(0,), (0, 1, 7)], state_mode="canonical", explicit_vector=None,
        tol=1e-9, seed=3, samples=8)
    rows = cli.run_sweep(config)
    assert len(rows) == 2
    assert rows[0]["dim_sys"] == 1
