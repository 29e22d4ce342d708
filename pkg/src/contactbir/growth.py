"""Degree growth of iterates and its coarse classification.

Degrees are those of the reduced projective representative, computed for a
window of iterates.  The classifier is deliberately blunt: it compares the
two halves of the window and, failing boundedness, checks whether the
degrees keep multiplying by at least 3/2 across the second half.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ArityError, WindowTooSmall
from .maps import PLANE, compose, map_degree
from .catalog import klein_embed


@dataclass(frozen=True)
class DegreeSequence:
    degrees: tuple
    window: int


def degree_sequence(phi, window):
    """Degrees of phi, phi^2, ..., phi^window."""
    if window < 1:
        raise ArityError("the window must cover at least one iterate")
    degrees = []
    current = phi
    for step in range(window):
        degrees.append(map_degree(current))
        if step + 1 < window:
            current = compose(phi, current)
    return DegreeSequence(tuple(degrees), window)


@dataclass(frozen=True)
class GrowthClass:
    verdict: str  # bounded | polynomial_like | exponential_like
    ratio_evidence: tuple


def classify_growth(seq):
    """Coarse growth verdict from a degree window.

    bounded: the second half of the window never exceeds the first half.
    exponential_like: every successive ratio across the second half is at
    least 3/2.  Anything else is polynomial_like.
    """
    degrees = seq.degrees
    n = len(degrees)
    if n < 4:
        raise WindowTooSmall("need at least four iterates to classify growth")
    half = n // 2
    ratios = tuple(
        Fraction(degrees[i + 1], degrees[i]) if degrees[i] else None
        for i in range(half - 1, n - 1)
    )
    if max(degrees[half:]) <= max(degrees[:half]):
        return GrowthClass("bounded", ratios)
    if all(r is not None and r >= Fraction(3, 2) for r in ratios):
        return GrowthClass("exponential_like", ratios)
    return GrowthClass("polynomial_like", ratios)


def same_order_check(phi, window):
    """True when a plane map and its contact extension get the same growth
    verdict over the window."""
    if phi.kind != PLANE:
        raise ArityError("the comparison starts from a plane map")
    plane_growth = classify_growth(degree_sequence(phi, window))
    embedded_growth = classify_growth(degree_sequence(klein_embed(phi), window))
    return plane_growth.verdict == embedded_growth.verdict


@dataclass(frozen=True)
class EmbeddingDegreeReport:
    """Degrees of plane iterates against their contact extensions.

    bounds[k] caps the extension degree using the numerator and denominator
    degrees of the k-th plane iterate; the two flags state the chain
    plane <= embedded <= bound termwise over the window."""

    plane_degrees: tuple
    embedded_degrees: tuple
    bounds: tuple
    plane_below_embedded: bool
    embedded_below_bound: bool
    window: int


def embedding_degree_report(phi, window):
    """Term-by-term degree comparison of a plane map, its contact
    extension, and the bidegree bound on the extension."""
    if phi.kind != PLANE:
        raise ArityError("the comparison starts from a plane map")
    if window < 1:
        raise ArityError("the window must cover at least one iterate")
    embedded = klein_embed(phi)
    plane_degrees = []
    embedded_degrees = []
    bounds = []
    current_plane = phi
    current_embedded = embedded
    for step in range(window):
        plane_degrees.append(map_degree(current_plane))
        embedded_degrees.append(map_degree(current_embedded))
        (p1, q1), (p2, q2) = (
            (c.num.total_degree(), c.den.total_degree())
            for c in current_plane.components
        )
        bounds.append(max(4 * q2 + p2 + 1,
                          2 * p1 + 2 * q1 + q2 + 1,
                          p2 + 3 * q1 + p1 + 1))
        if step + 1 < window:
            current_plane = compose(phi, current_plane)
            current_embedded = compose(embedded, current_embedded)
    return EmbeddingDegreeReport(
        tuple(plane_degrees),
        tuple(embedded_degrees),
        tuple(bounds),
        all(p <= e for p, e in zip(plane_degrees, embedded_degrees)),
        all(e <= b for e, b in zip(embedded_degrees, bounds)),
        window,
    )
