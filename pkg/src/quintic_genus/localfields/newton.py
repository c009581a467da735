"""Newton polygons of integer polynomials at a prime."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..errors import InvalidInput
from ..polycore.arith import valuation
from ..polycore.intpoly import IntPoly, as_poly


@dataclass(frozen=True)
class Segment:
    """One edge of a lower hull: ``start`` index, ``length``, root valuation ``slope``.

    ``slope`` is minus the geometric slope, i.e. the common valuation of the
    roots the edge accounts for.
    """

    start: int
    length: int
    slope: Fraction
    height: Fraction

    @property
    def end(self) -> int:
        return self.start + self.length

    @property
    def ramification(self) -> int:
        """Denominator e of the slope h/e in lowest terms."""
        return self.slope.denominator

    def on_segment(self, i: int, v) -> bool:
        return Fraction(v) == self.height - self.slope * (i - self.start)


def lower_hull(points: Sequence[tuple[int, Fraction | int]]) -> list[Segment]:
    """Lower convex hull of (i, v) points, left to right.

    Segments come out with strictly decreasing root valuation.
    """
    pts = sorted((i, Fraction(v)) for i, v in points)
    if len(pts) < 2:
        return []
    hull: list[tuple[int, Fraction]] = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop hull[-1] if it is on or above the chord hull[-2] -> pt
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    segs = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        segs.append(Segment(start=x1, length=x2 - x1, slope=(y1 - y2) / (x2 - x1), height=y1))
    return segs


@dataclass(frozen=True)
class NewtonPolygon:
    """Segments sorted by increasing root valuation."""

    prime: int
    segments: tuple[Segment, ...]
    zero_roots: int = 0

    @property
    def slopes(self) -> list[Fraction]:
        return [s.slope for s in self.segments]

    @property
    def pairs(self) -> list[tuple[Fraction, int]]:
        """(root valuation, horizontal length) for each segment."""
        return [(s.slope, s.length) for s in self.segments]

    def is_single_segment(self) -> bool:
        return len(self.segments) == 1


def newton_polygon(f, p: int) -> NewtonPolygon:
    """Lower hull of {(i, v_p(a_i))}; factors of x are removed first and counted."""
    f = as_poly(f)
    if f.is_zero():
        raise InvalidInput("Newton polygon of the zero polynomial")
    z = 0
    while f.coeffs[z] == 0:
        z += 1
    g = IntPoly(f.coeffs[z:])
    pts = [(i, valuation(c, p)) for i, c in enumerate(g.coeffs) if c]
    segs = lower_hull(pts)
    shifted = tuple(
        sorted(
            (Segment(s.start + z, s.length, s.slope, s.height) for s in segs),
            key=lambda s: s.slope,
        )
    )
    return NewtonPolygon(prime=p, segments=shifted, zero_roots=z)
