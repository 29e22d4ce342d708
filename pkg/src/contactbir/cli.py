"""Command-line interface: one verb per analysis, deterministic reports.

Every verb prints a report in either the human layout (headline plus
indented key = value lines) or the machine layout (flat key: value lines
ending in a status line).  Exit codes: 0 for a true verdict or successful
construction, 1 for an honest mathematical "no", 2 for bad input, 3 for an
internal consistency failure.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .algebra import Poly, Rat, canonical_string
from .catalog import (
    format_catalog,
    klein_embed,
    legendre_family,
    lookup,
    parse_catalog,
    registry,
    transported_infinity_form,
)
from .contact import (
    INFINITY,
    analyze,
    alpha_of,
    cocycle_check,
    contraction_multiplicity,
    multiplier_of,
    regular_at_infinity,
)
from .errors import (
    InputError,
    InternalCheckError,
    InvalidDivisor,
    MathFalse,
    NotExact,
    WorkbenchError,
)
from .forms import form_string, pullback
from .growth import classify_growth, degree_sequence
from .lifts import exactness_test, finite_order_lift, sigma_lift, sigma_lift_contact
from .maps import compose, iterate, jacobian_det, map_string, verify_inverse
from .parsing import parse_expression, parse_form, parse_map

_EXIT = {"ok": 0, "math-false": 1, "input-error": 2, "internal-error": 3}


class Report:
    """Ordered key/value report with two renderings."""

    def __init__(self, verb):
        self.verb = verb
        self.inputs = []
        self.provenance = []
        self.fields = []

    def add_input(self, text):
        self.inputs.append(text)

    def add_provenance(self, name):
        self.provenance.append(name)

    def add(self, key, value):
        self.fields.append((key, _format_value(value)))

    def render(self, layout, status):
        prov = [("provenance", ", ".join(self.provenance))] if self.provenance else []
        if layout == "machine":
            lines = [f"verb: {self.verb}"]
            lines += [f"input: {text}" for text in self.inputs]
            lines += [f"{key}: {value}" for key, value in prov + self.fields]
            lines.append(f"status: {status}")
        else:
            lines = [" ".join([self.verb] + self.inputs)]
            lines += [f"  {key} = {value}" for key, value in prov + self.fields]
            if status != "ok":
                lines.append(f"  status = {status}")
        return "\n".join(lines) + "\n"


def _format_value(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, Fraction, str)):
        return str(value)
    if isinstance(value, Rat):
        return canonical_string(value)
    if isinstance(value, (tuple, list)):
        return ", ".join(_format_value(v) for v in value)
    if value is None:
        return "none"
    if hasattr(value, "kind") and hasattr(value, "components"):
        return map_string(value)
    if hasattr(value, "degree") and hasattr(value, "coeffs"):
        return form_string(value)
    return canonical_string(value)


def _load_entries(args):
    if args.catalog is None:
        return registry()
    with open(args.catalog, "r", encoding="utf-8") as handle:
        return parse_catalog(handle.read())


def _resolve_map(text, entries, report):
    """Catalog name first, map grammar second."""
    for entry in entries:
        if entry.name == text:
            report.add_input(map_string(entry.map))
            report.add_provenance(entry.name)
            return entry.map
    parsed = parse_map(text)
    report.add_input(map_string(parsed))
    return parsed


def _read_stdin_args(args, names):
    used = False
    for name in names:
        if getattr(args, name, None) == "-":
            if used:
                raise InputError("only one argument may come from stdin")
            setattr(args, name, sys.stdin.read().strip())
            used = True


# -- verb handlers; each returns "ok" or "math-false" -------------------------


def _cmd_analyze(args, report, entries):
    phi = _resolve_map(args.map, entries, report)
    result = analyze(phi)
    report.add("is_contact", result.is_contact)
    if result.is_contact:
        report.add("multiplier", result.multiplier)
        report.add("alpha", result.alpha)
        report.add("preserves_form", result.preserves_form)
        report.add("det_is_square", result.det_is_square)
    report.add("jacobian", result.jacobian)
    return "ok" if result.is_contact else "math-false"


def _cmd_alpha(args, report, entries):
    phi = _resolve_map(args.map, entries, report)
    report.add("alpha", alpha_of(phi))
    return "ok"


def _cmd_v(args, report, entries):
    phi = _resolve_map(args.map, entries, report)
    report.add("multiplier", multiplier_of(phi))
    return "ok"


def _cmd_klein(args, report, entries):
    phi = _resolve_map(args.map, entries, report)
    report.add("result", klein_embed(phi))
    return "ok"


def _cmd_legendre(args, report, entries):
    phi = _resolve_map(args.map, entries, report)
    report.add("result", legendre_family(phi))
    return "ok"


def _cmd_lift(args, report, entries):
    phi = _resolve_map(args.map, entries, report)
    lifted = sigma_lift(phi)
    report.add("result", lifted)
    return "ok"


def _cmd_lift_contact(args, report, entries):
    phi = _resolve_map(args.map, entries, report)
    lifted = sigma_lift_contact(phi)
    report.add("result", lifted)
    report.add("multiplier", jacobian_det(phi))
    return "ok"


def _cmd_finite_order_lift(args, report, entries):
    phi = _resolve_map(args.map, entries, report)
    report.add("order", args.order)
    report.add("result", finite_order_lift(phi, args.order))
    return "ok"


def _cmd_exactness(args, report, entries):
    if args.form == "-":
        args.form = sys.stdin.read().strip()
    theta = parse_form(args.form)
    report.add_input(form_string(theta))
    result = exactness_test(theta)
    report.add("exact", result.exact)
    if result.exact:
        report.add("potential", result.potential)
        return "ok"
    report.add("witness", result.witness)
    report.add("witness_stage", f"z{result.witness_stage}")
    return "math-false"


def _cmd_regular(args, report, entries):
    phi = _resolve_map(args.map, entries, report)
    verdict = regular_at_infinity(phi, seed=args.seed)
    report.add("regular", verdict.regular)
    report.add("hinfty", _hinfty_string(verdict.hinfty))
    report.add("multiplier_at_infinity", verdict.multiplier_at_infinity)
    report.add("vanishes_at_infinity", verdict.vanishes_at_infinity)
    report.add("seed", args.seed)
    return "ok" if verdict.regular else "math-false"


def _cmd_multiplicity(args, report, entries):
    phi = _resolve_map(args.map, entries, report)
    divisor = parse_expression(args.divisor)
    report.add_input(canonical_string(divisor))
    if not divisor.is_polynomial():
        raise InvalidDivisor("the divisor must be polynomial")
    report.add("multiplicity", contraction_multiplicity(phi, divisor.num))
    return "ok"


def _cmd_iterate(args, report, entries):
    phi = _resolve_map(args.map, entries, report)
    report.add("n", args.n)
    report.add("result", iterate(phi, args.n))
    return "ok"


def _cmd_degrees(args, report, entries):
    phi = _resolve_map(args.map, entries, report)
    seq = degree_sequence(phi, args.window)
    report.add("window", args.window)
    report.add("degrees", ", ".join(str(d) for d in seq.degrees))
    growth = classify_growth(seq)
    report.add("growth", growth.verdict)
    report.add("ratio_evidence",
               ", ".join("indeterminate" if r is None else str(r)
                         for r in growth.ratio_evidence))
    return "ok"


def _cmd_cocycle(args, report, entries):
    phi = _resolve_map(args.map, entries, report)
    psi = _resolve_map(args.map2, entries, report)
    holds = cocycle_check(phi, psi)
    report.add("cocycle_holds", holds)
    return "ok" if holds else "math-false"


def _cmd_inverse_check(args, report, entries):
    phi = _resolve_map(args.map, entries, report)
    psi = _resolve_map(args.map2, entries, report)
    holds = verify_inverse(phi, psi)
    report.add("inverse", holds)
    return "ok" if holds else "math-false"


def _cmd_catalog(args, report, entries):
    if args.name is not None:
        entries = [lookup(args.name, entries)]
    report.raw = format_catalog(entries)
    return "ok"


def _cmd_selftest(args, report, entries):
    failures = 0
    checked = 0
    for entry in entries:
        problems = _check_entry(entry, args.seed)
        checked += 1
        if problems:
            failures += 1
            report.add(entry.name, "FAIL " + "; ".join(problems))
        else:
            report.add(entry.name, "ok")
    report.add("checked", checked)
    report.add("failures", failures)
    report.add("seed", args.seed)
    return "ok" if failures == 0 else "math-false"


def _hinfty_string(action):
    if action.point is not None:
        coords = " : ".join(str(c) for c in action.point)
        return f"{action.kind} ({coords})"
    return action.kind


def _check_entry(entry, seed):
    """Replay an entry's frozen expectations; returns a list of mismatches."""
    expected = entry.expected
    problems = []
    if expected.infinity_form_scale is not None:
        scale = parse_expression(expected.infinity_form_scale)
        w = transported_infinity_form()
        if pullback(entry.map, w) != w * scale:
            problems.append("transported-form scale mismatch")
        return problems

    report = analyze(entry.map)
    if not report.is_contact:
        problems.append("not a contact map")
        return problems
    if report.multiplier * report.multiplier != report.jacobian:
        problems.append("jacobian is not the multiplier squared")
    if expected.multiplier is not None:
        if report.multiplier != parse_expression(expected.multiplier):
            problems.append(f"multiplier expected {expected.multiplier}, "
                            f"got {canonical_string(report.multiplier)}")
    if expected.alpha is not None:
        want = INFINITY if expected.alpha == INFINITY else parse_expression(expected.alpha)
        if report.alpha != want:
            problems.append(f"alpha expected {expected.alpha}")
    if expected.order is not None:
        ident = iterate(entry.map, 0)
        power = entry.map
        minimal = True
        for _ in range(1, expected.order):
            if power == ident:
                problems.append(f"order below {expected.order}")
                minimal = False
                break
            power = compose(entry.map, power)
        if minimal and power != ident:
            problems.append(f"order {expected.order} not reached")
    if expected.contraction_z2 is not None:
        got = contraction_multiplicity(entry.map, Poly.var(2))
        if got != expected.contraction_z2:
            problems.append(f"contraction along z2 expected {expected.contraction_z2}, got {got}")
    if expected.regular is not None or expected.hinfty is not None:
        verdict = regular_at_infinity(entry.map, seed=seed)
        if expected.regular is not None and verdict.regular != expected.regular:
            problems.append(f"regular expected {expected.regular}")
        if expected.hinfty is not None:
            got = _hinfty_string(verdict.hinfty)
            if got != expected.hinfty:
                problems.append(f"hinfty expected {expected.hinfty!r}, got {got!r}")
    return problems


# -- argument plumbing ---------------------------------------------------------


def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "machine"), default="human",
                        help="report layout")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for sampled rank evidence")
    common.add_argument("--window", type=int, default=6,
                        help="iterate window for degree sequences")
    common.add_argument("--catalog", default=None, metavar="PATH",
                        help="catalog file replacing the built-in registry")

    parser = argparse.ArgumentParser(
        prog="contactbir",
        description="exact workbench for birational maps preserving z0*dz1 + dz2")
    sub = parser.add_subparsers(dest="verb", required=True)

    def verb(name, handler, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(handler=handler)
        return p

    p = verb("analyze", _cmd_analyze, "full contact report for an affine map")
    p.add_argument("map")
    p = verb("alpha", _cmd_alpha, "directional invariant of a contact map")
    p.add_argument("map")
    p = verb("v", _cmd_v, "contact multiplier of a map")
    p.add_argument("map")
    p = verb("klein", _cmd_klein, "contact extension of a plane map")
    p.add_argument("map")
    p = verb("legendre", _cmd_legendre, "contact extension through the exchanging involution")
    p.add_argument("map")
    p = verb("lift", _cmd_lift, "lift an area-preserving plane map")
    p.add_argument("map")
    p = verb("lift-contact", _cmd_lift_contact, "lift a polynomial plane automorphism")
    p.add_argument("map")
    p = verb("finite-order-lift", _cmd_finite_order_lift, "periodic lift of a periodic plane map")
    p.add_argument("map")
    p.add_argument("order", type=int)
    p = verb("exactness", _cmd_exactness, "decide rational exactness of a plane 1-form")
    p.add_argument("form")
    p = verb("regular", _cmd_regular, "regularity along the plane at infinity")
    p.add_argument("map")
    p = verb("multiplicity", _cmd_multiplicity, "vanishing order of the multiplier on a divisor")
    p.add_argument("map")
    p.add_argument("divisor")
    p = verb("iterate", _cmd_iterate, "n-fold composition")
    p.add_argument("map")
    p.add_argument("n", type=int)
    p = verb("degrees", _cmd_degrees, "degree sequence and growth verdict")
    p.add_argument("map")
    p = verb("cocycle", _cmd_cocycle, "multiplier cocycle identity for a pair")
    p.add_argument("map")
    p.add_argument("map2")
    p = verb("inverse-check", _cmd_inverse_check, "two-sided inverse verification")
    p.add_argument("map")
    p.add_argument("map2")
    p = verb("catalog", _cmd_catalog, "print the registry, or one entry")
    p.add_argument("name", nargs="?", default=None)
    p = verb("selftest", _cmd_selftest, "replay every catalog expectation")
    return parser


def run(argv):
    """Execute one invocation; returns (exit_code, report_text)."""
    args = _build_parser().parse_args(argv)
    report = Report(args.verb)
    try:
        _read_stdin_args(args, ("map", "map2"))
        entries = _load_entries(args)
        status = args.handler(args, report, entries)
    except NotExact as exc:
        report.add("error", type(exc).__name__)
        report.add("message", str(exc))
        report.add("witness", exc.result.witness)
        report.add("witness_stage", f"z{exc.result.witness_stage}")
        status = "math-false"
    except MathFalse as exc:
        report.add("error", type(exc).__name__)
        report.add("message", str(exc))
        status = "math-false"
    except InputError as exc:
        report.add("error", type(exc).__name__)
        report.add("message", str(exc))
        status = "input-error"
    except (InternalCheckError, WorkbenchError) as exc:
        report.add("error", type(exc).__name__)
        report.add("message", str(exc))
        status = "internal-error"
    except OSError as exc:
        report.add("error", type(exc).__name__)
        report.add("message", str(exc))
        status = "input-error"
    if getattr(report, "raw", None) is not None:
        return _EXIT[status], report.raw
    return _EXIT[status], report.render(args.format, status)


def main(argv=None):
    code, text = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
