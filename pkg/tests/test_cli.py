import io

import pytest

import contactbir.cli as cli
from contactbir.algebra import canonical_string
from contactbir.catalog import format_catalog, registry
from contactbir.errors import InternalCheckError
from contactbir.parsing import parse_expression


def run(*argv):
    return cli.run(list(argv))


def test_v_on_catalog_name():
    code, text = run("v", "nfamily:1")
    assert code == 0
    want = canonical_string(parse_expression("z0/(2*z0*z1 + z2 + 2*z0)"))
    assert f"multiplier = {want}" in text
    assert "provenance = nfamily:1" in text


def test_analyze_human_layout():
    code, text = run("analyze", "(z1, z0, -z2 - z0*z1)")
    assert code == 0
    lines = text.splitlines()
    assert lines[0].startswith("analyze ")
    assert "  is_contact = true" in lines
    assert "  multiplier = -1" in lines
    # successful human reports carry no status line
    assert not any("status" in line for line in lines)


def test_analyze_machine_layout():
    code, text = run("analyze", "(z1, z0, -z2 - z0*z1)", "--format", "machine")
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == "verb: analyze"
    assert lines[1].startswith("input: ")
    assert lines[-1] == "status: ok"


def test_analyze_non_contact_exits_one():
    code, text = run("analyze", "(z1, z0, z2)")
    assert code == 1
    assert "is_contact = false" in text
    assert "status = math-false" in text


def test_exactness_verdicts():
    code, text = run("exactness", "z1*dz0 + z0*dz1")
    assert code == 0
    assert "exact = true" in text
    assert "potential = z0*z1" in text

    code, text = run("exactness", "1/(z1^2 - 1)*dz1")
    assert code == 1
    assert "exact = false" in text
    assert "witness" in text

    code, text = run("exactness", "z1*dz0")
    assert code == 1
    assert "error = NotClosed" in text


def test_regular_verdicts():
    code, text = run("regular", "autcont:a")
    assert code == 0
    assert "regular = true" in text
    code, text = run("regular", "legendre")
    assert code == 1
    assert "regular = false" in text
    assert "hinfty = contracted_to_point (0 : 0 : 1 : 0)" in text


def test_regular_echoes_seed():
    code, text = run("regular", "legendre", "--seed", "11")
    assert code == 1
    assert "seed = 11" in text


def test_multiplicity_verb():
    code, text = run("multiplicity", "contraction:2", "z2")
    assert code == 0
    assert "multiplicity = 2" in text


def test_multiplicity_rejects_rational_divisor():
    code, text = run("multiplicity", "legendre", "1/z2")
    assert code == 2
    assert "error = InvalidDivisor" in text


def test_iterate_verb():
    code, text = run("iterate", "(z1, z0, -z2 - z0*z1)", "2")
    assert code == 0
    assert "result = (z0, z1, z2)" in text


def test_degrees_verb():
    code, text = run("degrees", "(z1 + z0^2, -z0)", "--window", "5")
    assert code == 0
    assert "degrees = 2, 4, 8, 16, 32" in text
    assert "growth = exponential_like" in text


def test_finite_order_lift_verb():
    code, text = run("finite-order-lift", "(z1, -z0)", "4")
    assert code == 0
    assert "order = 4" in text


def test_finite_order_lift_wrong_order():
    code, text = run("finite-order-lift", "(z1, -z0)", "3")
    assert code == 1
    assert "error = NotPeriodic" in text


def test_cocycle_verb():
    code, text = run("cocycle", "legendre", "nfamily:1")
    assert code == 0
    assert "cocycle_holds = true" in text


def test_inverse_check_verb():
    code, text = run("inverse-check", "legendre", "legendre")
    assert code == 0
    code, text = run("inverse-check", "legendre", "nfamily:1")
    assert code == 1


def test_lift_not_exact_exits_one():
    code, text = run("lift", "(-z0 + 1/(z1^2 - 1), -z1)")
    assert code == 1
    assert "error = NotExact" in text
    assert "witness_stage = z1" in text


def test_parse_failure_exits_two():
    code, text = run("v", "(z0 + , z1)")
    assert code == 2
    assert "error = ParseError" in text
    assert "position" in text


def test_unknown_catalog_name_falls_through_to_parser():
    code, text = run("v", "no-such-entry")
    assert code == 2


def test_argparse_usage_error_exits_two():
    with pytest.raises(SystemExit) as err:
        run("no-such-verb", "x")
    assert err.value.code == 2
    with pytest.raises(SystemExit) as err:
        run("iterate", "legendre", "not-a-number")
    assert err.value.code == 2


def test_internal_error_exits_three(monkeypatch):
    def boom(phi):
        raise InternalCheckError("redundant check failed")

    monkeypatch.setattr(cli, "analyze", boom)
    code, text = run("analyze", "(z1, z0, -z2 - z0*z1)")
    assert code == 3
    assert "error = InternalCheckError" in text


def test_stdin_map(monkeypatch):
    monkeypatch.setattr(cli.sys, "stdin", io.StringIO("(z1, z0, -z2 - z0*z1)\n"))
    code, text = run("v", "-")
    assert code == 0
    assert "multiplier = -1" in text


def test_stdin_form(monkeypatch):
    monkeypatch.setattr(cli.sys, "stdin", io.StringIO("z0*dz1 + z1*dz0\n"))
    code, text = run("exactness", "-")
    assert code == 0
    assert "potential = z0*z1" in text


def test_only_one_stdin_argument(monkeypatch):
    monkeypatch.setattr(cli.sys, "stdin", io.StringIO("(z1, z0, -z2 - z0*z1)"))
    code, text = run("cocycle", "-", "-")
    assert code == 2
    assert "stdin" in text


def test_catalog_dump_round_trips():
    code, text = run("catalog")
    assert code == 0
    assert text == format_catalog(registry())
    assert text.count("NAME:") == len(registry())


def test_catalog_single_entry():
    code, text = run("catalog", "legendre")
    assert code == 0
    assert text.startswith("NAME: legendre\n")
    assert text.count("NAME:") == 1


def test_catalog_unknown_entry():
    code, text = run("catalog", "nope")
    assert code == 2
    assert "error = InputError" in text


def test_catalog_file_replaces_registry(tmp_path):
    path = tmp_path / "two.catalog"
    entries = [e for e in registry() if e.name in ("legendre", "nfamily:1")]
    path.write_text(format_catalog(entries), encoding="utf-8")
    code, text = run("v", "legendre", "--catalog", str(path))
    assert code == 0
    assert "provenance = legendre" in text
    # names outside the provided file no longer resolve
    code, text = run("v", "autcont:a", "--catalog", str(path))
    assert code == 2


def test_missing_catalog_file():
    code, text = run("v", "legendre", "--catalog", "/no/such/file")
    assert code == 2


def test_selftest_passes():
    code, text = run("selftest", "--format", "machine")
    assert code == 0
    assert "failures: 0" in text
    assert f"checked: {len(registry())}" in text


def test_reports_are_byte_deterministic():
    for argv in (
        ["analyze", "nfamily:2"],
        ["regular", "legendre", "--seed", "3"],
        ["selftest", "--format", "machine"],
        ["catalog"],
    ):
        first = cli.run(list(argv))
        second = cli.run(list(argv))
        assert first == second


def test_main_writes_report(capsys, monkeypatch):
    code = cli.main(["v", "legendre"])
    assert code == 0
    out = capsys.readouterr().out
    assert "multiplier = -1" in out
