from fractions import Fraction

import pytest

from contactbir.algebra import Rat
from contactbir.catalog import klein_embed
from contactbir.errors import ArityError, WindowTooSmall
from contactbir.growth import (
    classify_growth,
    degree_sequence,
    embedding_degree_report,
    same_order_check,
)
from contactbir.maps import CONTACT_PLANE, KLEIN_PLANE, affine_map, plane_map

z0 = Rat.var(0)
z1 = Rat.var(1)
z2 = Rat.var(2)


def test_degree_sequence_henon():
    f = plane_map(z1 + z0 ** 2, -z0, CONTACT_PLANE)
    seq = degree_sequence(f, 5)
    assert list(seq.degrees) == [2, 4, 8, 16, 32]
    assert seq.window == 5


def test_degree_sequence_periodic():
    f = plane_map(z2, (z2 + 1) / z1, KLEIN_PLANE)
    seq = degree_sequence(f, 6)
    # degree drops to 1 at the period
    assert seq.degrees[4] == 1


def test_degree_sequence_affine3():
    f = affine_map(z1, z0, -z2 - z0 * z1)
    seq = degree_sequence(f, 4)
    assert list(seq.degrees) == [2, 1, 2, 1]


def test_degree_sequence_window_validation():
    f = plane_map(z1, z0, CONTACT_PLANE)
    with pytest.raises(ArityError):
        degree_sequence(f, 0)


def test_classify_bounded():
    f = affine_map(z0 + 1, z1, z2)
    verdict = classify_growth(degree_sequence(f, 6))
    assert verdict.verdict == "bounded"


def test_classify_exponential():
    f = plane_map(z1 + z0 ** 2, -z0, CONTACT_PLANE)
    verdict = classify_growth(degree_sequence(f, 5))
    assert verdict.verdict == "exponential_like"
    assert all(r == Fraction(2) for r in verdict.ratio_evidence)


def test_classify_window_too_small():
    f = plane_map(z1, z0, CONTACT_PLANE)
    with pytest.raises(WindowTooSmall):
        classify_growth(degree_sequence(f, 3))


def test_classification_rule_documented_cases():
    # the three shapes of the decision rule, checked on synthetic sequences
    from contactbir.growth import DegreeSequence

    assert classify_growth(DegreeSequence((1, 1, 1, 1, 1), 5)).verdict == "bounded"
    assert classify_growth(DegreeSequence((2, 4, 8, 16, 32), 5)).verdict == "exponential_like"
    assert classify_growth(DegreeSequence((1, 2, 3, 4, 5), 5)).verdict == "polynomial_like"


def test_same_order_check_henon():
    f = plane_map(z2, z2 ** 2 - z1, KLEIN_PLANE)
    assert same_order_check(f, 5)


def test_same_order_check_lyness():
    f = plane_map(z2, (z2 + 1) / z1, KLEIN_PLANE)
    assert same_order_check(f, 6)


def test_embedding_degree_report_inequalities():
    f = plane_map(z2, z2 ** 2 - z1, KLEIN_PLANE)
    report = embedding_degree_report(f, 5)
    assert report.plane_below_embedded
    assert report.embedded_below_bound
    assert len(report.plane_degrees) == 5
    assert all(p <= e for p, e in zip(report.plane_degrees, report.embedded_degrees))
    assert all(e <= b for e, b in zip(report.embedded_degrees, report.bounds))


def test_embedded_lyness_stays_bounded():
    f = plane_map(z2, (z2 + 1) / z1, KLEIN_PLANE)
    emb = klein_embed(f)
    verdict = classify_growth(degree_sequence(emb, 6))
    assert verdict.verdict == "bounded"
