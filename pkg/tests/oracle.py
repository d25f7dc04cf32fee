"""Independent slice oracles for moment polytopes.

Everything here works on raw integer vertex lists with Fractions and never
touches the package's DH reconstruction: slices are computed by
intersecting the level line/plane with all chords of the polytope and
taking the hull.  Lengths and areas are lattice-normalised (a primitive
lattice step has length 1; a fundamental cell of the induced hyperplane
lattice has area 1).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import List, Sequence, Tuple


def _dot(a, b):
    return sum(Fraction(x) * Fraction(y) for x, y in zip(a, b))


def _chord_hits(vertices, xi, t: Fraction) -> List[Tuple[Fraction, ...]]:
    """All intersection points of the level set with segments between vertices."""
    t = Fraction(t)
    pts = []
    n = len(vertices)
    for i in range(n):
        for j in range(i, n):
            a, b = vertices[i], vertices[j]
            fa, fb = _dot(xi, a) - t, _dot(xi, b) - t
            if fa == 0:
                pts.append(tuple(Fraction(x) for x in a))
            if fb == 0 and j != i:
                pts.append(tuple(Fraction(x) for x in b))
            if fa * fb < 0:
                lam = fa / (fa - fb)
                pts.append(
                    tuple(Fraction(x) + lam * (Fraction(y) - Fraction(x)) for x, y in zip(a, b))
                )
    return sorted(set(pts))


def slice_length_2d(vertices: Sequence[Sequence[int]], xi: Sequence[int], t) -> Fraction:
    """Lattice-normalised length of P cap {<xi, x> = t} for a polygon P."""
    pts = _chord_hits(vertices, xi, Fraction(t))
    if len(pts) < 2:
        return Fraction(0)
    d = (-xi[1], xi[0])  # primitive: xi is primitive
    k = 0 if d[0] != 0 else 1
    lams = [p[k] / d[k] for p in pts]
    return max(lams) - min(lams)


def _kernel_basis_3d(xi: Sequence[int]) -> Tuple[Tuple[int, int, int], Tuple[int, int, int]]:
    """Basis of the rank-2 lattice {v in Z^3 : <xi, v> = 0} for primitive xi."""
    a, b, c = xi
    if b == 0 and c == 0:
        return (0, 1, 0), (0, 0, 1)
    g = gcd(abs(b), abs(c))
    # xb*b + xc*c = g by extended Euclid
    xb, xc = _bezout(b, c, g)
    e1 = (0, c // g, -b // g)
    e2 = (g, -a * xb, -a * xc)
    assert a * e2[0] + b * e2[1] + c * e2[2] == 0
    return e1, e2


def _bezout(b: int, c: int, g: int) -> Tuple[int, int]:
    old_r, r = b, c
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r == g:
        return old_s, old_t
    assert old_r == -g
    return -old_s, -old_t


def _hull_2d(points: List[Tuple[Fraction, Fraction]]) -> List[Tuple[Fraction, Fraction]]:
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, p, q):
        return (p[0] - o[0]) * (q[1] - o[1]) - (p[1] - o[1]) * (q[0] - o[0])

    lower: List[Tuple[Fraction, Fraction]] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: List[Tuple[Fraction, Fraction]] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def slice_area_3d(vertices: Sequence[Sequence[int]], xi: Sequence[int], t) -> Fraction:
    """Area of P cap {<xi, x> = t} in the quotient lattice of the hyperplane."""
    pts = _chord_hits(vertices, xi, Fraction(t))
    if len(pts) < 3:
        return Fraction(0)
    e1, e2 = _kernel_basis_3d(tuple(xi))
    base = pts[0]
    # write p - base = lam*e1 + mu*e2: pick two coordinate rows with det != 0
    rows = None
    for i in range(3):
        for j in range(i + 1, 3):
            det = e1[i] * e2[j] - e1[j] * e2[i]
            if det != 0:
                rows = (i, j, det)
                break
        if rows:
            break
    assert rows is not None
    i, j, det = rows
    planar = []
    for p in pts:
        di, dj = p[i] - base[i], p[j] - base[j]
        lam = Fraction(di * e2[j] - dj * e2[i], det)
        mu = Fraction(e1[i] * dj - e1[j] * di, det)
        planar.append((lam, mu))
    hull = _hull_2d(planar)
    if len(hull) < 3:
        return Fraction(0)
    area2 = Fraction(0)
    for k in range(len(hull)):
        x0, y0 = hull[k]
        x1, y1 = hull[(k + 1) % len(hull)]
        area2 += x0 * y1 - x1 * y0
    return abs(area2) / 2
