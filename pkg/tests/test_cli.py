"""Command-line front end: grammar, config precedence, exit statuses,
deterministic emission.

Exit statuses: 0 success, 1 computation failure, 2 usage/parse/config
problems.  Observable syntax errors carry 1-based columns into the
original text, including through --json-errors.
"""

import hashlib
import json

import pytest

from affinequant import cli
from affinequant.errors import ConfigurationError, ObservableSyntaxError


# --- grammar ------------------------------------------------------------

def test_parse_momentum_power():
    obs = cli.parse_observable("p^2")
    assert obs.kind == "momentum_power"
    assert obs.n == 2


def test_parse_bare_momentum():
    obs = cli.parse_observable("p")
    assert obs.kind == "momentum_power"
    assert obs.n == 1


def test_parse_dilation_alias():
    for text in ("qp", "q p", "q*p", "q^1*p^1"):
        obs = cli.parse_observable(text)
        assert obs.kind == "dilation", text


def test_parse_monomial_sum():
    obs = cli.parse_observable("0.5*q^2.5*p + 3")
    assert obs.kind == "monomial_sum"
    assert obs.terms == ((0.5, 2.5, 1), (3.0, 0.0, 0))


def test_parse_leading_sign_and_scientific_coefficients():
    obs = cli.parse_observable("-1.5e-1*q^2 + .5*p^3")
    assert obs.kind == "monomial_sum"
    assert obs.terms == ((-0.15, 2.0, 0), (0.5, 0.0, 3))


def test_parse_negative_exponent_on_q():
    obs = cli.parse_observable("q^-2")
    assert obs.terms == ((1.0, -2.0, 0),)


def test_parse_coefficient_only():
    obs = cli.parse_observable("2.5")
    assert obs.kind == "monomial_sum"
    assert obs.terms == ((2.5, 0.0, 0),)


def test_parse_whitespace_insensitive():
    a = cli.parse_observable(" 0.5 * p ^ 2 ")
    b = cli.parse_observable("0.5*p^2")
    assert a.kind == b.kind == "monomial_sum"
    assert a.terms == b.terms


def test_scaled_momentum_is_not_the_bare_generator():
    obs = cli.parse_observable("0.5*p^2")
    assert obs.kind == "monomial_sum"


ERROR_COLUMNS = [
    ("q^^2", 3),
    ("q+", 3),
    ("q*q", 3),
    ("p*p", 3),
    ("p^-1", 3),
    ("p^9", 3),
    ("p^1.5", 3),
    ("q&p", 2),
    ("*q", 1),
]


@pytest.mark.parametrize("text, column", ERROR_COLUMNS)
def test_parse_error_columns(text, column):
    with pytest.raises(ObservableSyntaxError) as info:
        cli.parse_observable(text)
    assert info.value.position == column
    assert f"column {column}" in str(info.value)


def test_parse_empty_expression():
    with pytest.raises(ObservableSyntaxError) as info:
        cli.parse_observable("")
    assert info.value.position == 1


def test_momentum_power_cap():
    assert cli.parse_observable("p^8").n == 8
    with pytest.raises(ObservableSyntaxError):
        cli.parse_observable("p^9")


# --- config -------------------------------------------------------------

def test_defaults_into_run_config():
    cfg = cli._build_config(cli._build_parser().parse_args(["constants"]))
    assert cfg.alpha == 2.0
    assert cfg.n_max == 40
    assert cfg.weight == "aw"


def test_config_file_then_flag_precedence(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"alpha": 3.0, "n_max": 12}))
    args = cli._build_parser().parse_args(
        ["constants", "--config", str(path)])
    cfg = cli._build_config(args)
    assert cfg.alpha == 3.0 and cfg.n_max == 12
    args = cli._build_parser().parse_args(
        ["constants", "--config", str(path), "--alpha", "4.0"])
    cfg = cli._build_config(args)
    assert cfg.alpha == 4.0 and cfg.n_max == 12


def test_unknown_config_key_rejected(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"alpha": 3.0, "bogus": 1}))
    args = cli._build_parser().parse_args(
        ["constants", "--config", str(path)])
    with pytest.raises(ConfigurationError):
        cli._build_config(args)


def test_unknown_weight_rejected(tmp_path):
    # the flag is vetted by argparse; a config file reaches make_weight
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"weight": "bogus"}))
    args = cli._build_parser().parse_args(
        ["constants", "--config", str(path)])
    cfg = cli._build_config(args)
    with pytest.raises(ConfigurationError):
        cfg.make_weight()


# --- exit statuses ------------------------------------------------------

def test_exit_zero_trace_u(capsys):
    code = cli.main(["trace-u", "--q", "2.0", "--p", "0.3",
                     "--alpha", "1e-4", "--n-max", "1"])
    assert code == 0
    out = capsys.readouterr().out
    assert "closed form" in out
    closed = float(out.strip().splitlines()[-1].split()[-1])
    assert closed == pytest.approx(2.0 ** 0.5, rel=1e-12)


def test_exit_two_on_bad_observable(capsys):
    code = cli.main(["quantize", "--f", "q^^2"])
    assert code == 2
    assert "column 3" in capsys.readouterr().err


def test_exit_two_json_errors(capsys):
    code = cli.main(["quantize", "--f", "q^^2", "--json-errors"])
    assert code == 2
    payload = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert payload["exit_code"] == 2
    assert payload["position"] == 3
    assert payload["error"] == "ObservableSyntaxError"


def test_exit_one_on_trace_pole(capsys):
    code = cli.main(["trace-u", "--q", "1.0", "--p", "0.5"])
    assert code == 1
    code = cli.main(["trace-u", "--q", "1.0", "--p", "0.5",
                     "--json-errors"])
    payload = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert payload["exit_code"] == 1


def test_exit_two_on_unknown_config_key(tmp_path, capsys):
    path = tmp_path / "cfg.json"
    path.write_text('{"nope": 1}')
    code = cli.main(["constants", "--config", str(path)])
    assert code == 2
    assert "nope" in capsys.readouterr().err


def test_exit_two_without_command(capsys):
    assert cli.main([]) == 2


def test_exit_two_on_missing_observable(capsys):
    assert cli.main(["quantize"]) == 2


# --- emission -----------------------------------------------------------

def run_wigner(out_dir):
    return cli.main([
        "wigner", "--n", "1", "--qmin", "0.4", "--qmax", "2.5",
        "--nq", "5", "--pmin", "-2", "--pmax", "2", "--np", "5",
        "--out", str(out_dir)])


def test_wigner_emission_deterministic(tmp_path, capsys):
    assert run_wigner(tmp_path / "a") == 0
    assert run_wigner(tmp_path / "b") == 0
    for name in ("wigner_phi1.csv", "wigner_phi1.json"):
        da = open(tmp_path / "a" / name, "rb").read()
        db = open(tmp_path / "b" / name, "rb").read()
        assert da == db
    manifest = json.loads(
        open(tmp_path / "a" / "wigner_phi1_manifest.json").read())
    for name, digest in manifest["files"].items():
        payload = open(tmp_path / "a" / name, "rb").read()
        assert hashlib.sha256(payload).hexdigest() == digest


def test_constants_json_stdout(capsys):
    code = cli.main(["constants", "--weight", "thermal", "--alpha", "2.0",
                     "--t", "0.4"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["c_M"] == pytest.approx(3.141592653589793, rel=1e-6)
    assert payload["trace"]["fourier_route"]["re"] == \
        pytest.approx(1.0, abs=1e-6)


def test_quantize_emits_operator_files(tmp_path, capsys):
    code = cli.main(["quantize", "--f", "p^2", "--n-max", "10",
                     "--out", str(tmp_path)])
    assert code == 0
    manifest = json.loads(
        open(tmp_path / "operator_manifest.json").read())
    assert manifest["observable"] == "p^2"
    csv_lines = open(tmp_path / "operator_matrix.csv").read().splitlines()
    assert csv_lines[0] == "m,n,re,im"
    assert len(csv_lines) == 1 + 11 * 11


def test_lower_symbol_point_value(capsys):
    code = cli.main(["lower-symbol", "--f", "p^2", "--q", "1.5",
                     "--p", "0.7"])
    assert code == 0
    val = float(capsys.readouterr().out.strip())
    assert val == pytest.approx(0.7 ** 2 + 0.25 / 1.5 ** 2, rel=1e-10)


def test_verify_subcommand_single_check(capsys):
    code = cli.main(["verify", "--only", "5"])
    assert code == 0
    out = capsys.readouterr().out
    assert "PASS" in out
    assert "verify: 1/1 checks passed" in out


def test_verify_rejects_unknown_check(capsys):
    assert cli.main(["verify", "--only", "99"]) == 2
