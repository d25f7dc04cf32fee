"""Fixed-point data of a Hamiltonian circle action, as an exact value type.

A dataset records, for a closed symplectic 2n-manifold (n = 2 or 3) with an
effective Hamiltonian S^1-action, the components of the fixed set together
with the combinatorics that the rest of the package consumes:

* isolated points, fixed surfaces and (for n = 3) a fixed fourfold, each
  with its Hamiltonian value, nonzero isotropy weights and, where relevant,
  genus, normal-bundle degrees, symplectic area and second Betti number;
* gradient spheres / isotropy submanifolds as directed edges between
  components, labelled by the order of the generic stabiliser.

Zero weights of tangential directions are never stored: a point carries n
weights, a surface n-1, a fourfold n-2.  All Hamiltonian values are
:class:`fractions.Fraction`; every identity checked downstream is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Tuple, Union

from .reports import (
    NonUniqueExtremumError,
    Report,
    StructuralError,
)

Rational = Fraction

POINT = "point"
SURFACE = "surface"
FOURFOLD = "fourfold"
KINDS = (POINT, SURFACE, FOURFOLD)

# Real dimension of a component of each kind.
_KIND_DIM = {POINT: 0, SURFACE: 2, FOURFOLD: 4}


def as_rational(x: Union[int, str, Fraction]) -> Fraction:
    """Coerce an int, Fraction or 'p/q' string to an exact rational."""
    if isinstance(x, bool):
        raise StructuralError(f"not a rational value: {x!r}")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise StructuralError(f"not a rational value: {x!r}") from exc
    raise StructuralError(f"not a rational value: {x!r}")


def format_rational(x: Fraction) -> Union[int, str]:
    """Canonical rendering: bare int when integral, else 'p/q' with q > 0."""
    if x.denominator == 1:
        return int(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class FixedComponent:
    """One connected component of the fixed set."""

    id: str
    kind: str
    H: Fraction
    weights: Tuple[int, ...]
    genus: Optional[int] = None
    normal_degrees: Optional[Tuple[int, ...]] = None
    area: Optional[Fraction] = None
    b2: Optional[int] = None
    fibre_intersection: Optional[int] = None
    fibre_class: bool = False

    def __post_init__(self):
        if not isinstance(self.id, str) or not self.id:
            raise StructuralError("component id must be a non-empty string")
        if self.kind not in KINDS:
            raise StructuralError(f"{self.id}: unknown kind {self.kind!r}")
        object.__setattr__(self, "H", as_rational(self.H))
        ws = tuple(self.weights)
        for w in ws:
            if not isinstance(w, int) or isinstance(w, bool) or w == 0:
                raise StructuralError(f"{self.id}: weights must be nonzero integers, got {w!r}")
        object.__setattr__(self, "weights", ws)
        if (self.genus is not None) != (self.kind == SURFACE):
            raise StructuralError(f"{self.id}: genus present iff kind is surface")
        if self.genus is not None and (not isinstance(self.genus, int) or self.genus < 0):
            raise StructuralError(f"{self.id}: genus must be a nonnegative integer")
        if self.normal_degrees is not None:
            if self.kind == POINT:
                raise StructuralError(f"{self.id}: points carry no normal degrees")
            nd = tuple(self.normal_degrees)
            for n in nd:
                if not isinstance(n, int) or isinstance(n, bool):
                    raise StructuralError(f"{self.id}: normal degrees must be integers")
            if len(nd) != len(ws):
                raise StructuralError(
                    f"{self.id}: normal_degrees length {len(nd)} != weights length {len(ws)}"
                )
            object.__setattr__(self, "normal_degrees", nd)
        if self.area is not None:
            if self.kind != SURFACE:
                raise StructuralError(f"{self.id}: area is stored for surfaces only")
            object.__setattr__(self, "area", as_rational(self.area))
        if self.b2 is not None:
            if self.kind != FOURFOLD:
                raise StructuralError(f"{self.id}: b2 is stored for the fourfold extremum only")
            if not isinstance(self.b2, int) or self.b2 < 0:
                raise StructuralError(f"{self.id}: b2 must be a nonnegative integer")
        if self.fibre_intersection is not None:
            if self.kind != SURFACE:
                raise StructuralError(f"{self.id}: fibre_intersection applies to surfaces only")
            if self.fibre_intersection not in (0, 1, 2):
                raise StructuralError(f"{self.id}: fibre_intersection must be 0, 1 or 2")

    @property
    def dim(self) -> int:
        return _KIND_DIM[self.kind]

    def weight_sum(self) -> int:
        return sum(self.weights)

    def sorted_weights(self) -> Tuple[int, ...]:
        return tuple(sorted(self.weights))


def index(c: FixedComponent) -> int:
    """Number of strictly negative weights (half the Morse-Bott index)."""
    return sum(1 for w in c.weights if w < 0)


@dataclass(frozen=True)
class GradientEdge:
    """A gradient sphere or isotropy submanifold joining two components.

    ``weight`` is the order of the generic stabiliser.  ``interior_points``
    optionally lists the weight pairs of the induced action at the isolated
    fixed points lying in the interior of an isotropy 4-manifold; the cycle
    inequality consumes them.
    """

    bottom: str
    top: str
    weight: int
    interior_points: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        for end in (self.bottom, self.top):
            if not isinstance(end, str) or not end:
                raise StructuralError("edge endpoints must be component ids")
        if not isinstance(self.weight, int) or isinstance(self.weight, bool) or self.weight < 1:
            raise StructuralError(
                f"edge {self.bottom}->{self.top}: weight must be a positive integer"
            )
        pts = tuple(tuple(p) for p in self.interior_points)
        for p in pts:
            if len(p) != 2 or any(not isinstance(a, int) or a == 0 for a in p):
                raise StructuralError(
                    f"edge {self.bottom}->{self.top}: interior point weights must be "
                    f"pairs of nonzero integers"
                )
        object.__setattr__(self, "interior_points", pts)

    @property
    def key(self) -> str:
        return f"{self.bottom}->{self.top}"


@dataclass(frozen=True)
class FixedPointData:
    """Full fixed-point dataset of a Hamiltonian S^1-action on a 2n-manifold."""

    half_dim: int
    components: Tuple[FixedComponent, ...]
    edges: Tuple[GradientEdge, ...] = ()
    relative_fano: bool = False
    fano: bool = False

    def __post_init__(self):
        if self.half_dim not in (2, 3):
            raise StructuralError(f"half_dim must be 2 or 3, got {self.half_dim!r}")
        comps = tuple(self.components)
        if not comps:
            raise StructuralError("dataset has no fixed components")
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "edges", tuple(self.edges))
        seen = set()
        for c in comps:
            if c.id in seen:
                raise StructuralError(f"duplicate component id {c.id!r}")
            seen.add(c.id)
        n = self.half_dim
        for c in comps:
            if c.kind == FOURFOLD and n != 3:
                raise StructuralError(f"{c.id}: fourfold components need half_dim 3")
            expected = n - _KIND_DIM[c.kind] // 2
            if len(c.weights) != expected:
                raise StructuralError(
                    f"{c.id}: a {c.kind} in a {2 * n}-manifold carries {expected} "
                    f"nonzero weights, got {len(c.weights)}"
                )
        for e in self.edges:
            for end in (e.bottom, e.top):
                if end not in seen:
                    raise StructuralError(f"edge endpoint {end!r} does not resolve")

    def component(self, cid: str) -> FixedComponent:
        for c in self.components:
            if c.id == cid:
                return c
        raise StructuralError(f"no component with id {cid!r}")

    def ordered(self) -> Tuple[FixedComponent, ...]:
        """Components in the canonical order: by Hamiltonian value, then id."""
        return tuple(sorted(self.components, key=lambda c: (c.H, c.id)))

    def points(self) -> Tuple[FixedComponent, ...]:
        return tuple(c for c in self.components if c.kind == POINT)

    def surfaces(self) -> Tuple[FixedComponent, ...]:
        return tuple(c for c in self.components if c.kind == SURFACE)

    def h_min(self) -> Fraction:
        return min(c.H for c in self.components)

    def h_max(self) -> Fraction:
        return max(c.H for c in self.components)

    def replace_components(self, comps: Iterable[FixedComponent]) -> "FixedPointData":
        return FixedPointData(
            half_dim=self.half_dim,
            components=tuple(comps),
            edges=self.edges,
            relative_fano=self.relative_fano,
            fano=self.fano,
        )


def extremal(data: FixedPointData) -> Tuple[str, str]:
    """Ids of the unique components attaining H_min and H_max.

    Raises :class:`NonUniqueExtremumError` on a tie (including the trivial
    one-component dataset, where the same component attains both).
    """
    lo, hi = data.h_min(), data.h_max()
    mins = sorted(c.id for c in data.components if c.H == lo)
    maxs = sorted(c.id for c in data.components if c.H == hi)
    if len(mins) != 1:
        raise NonUniqueExtremumError(f"minimum attained by {mins}")
    if len(maxs) != 1:
        raise NonUniqueExtremumError(f"maximum attained by {maxs}")
    if mins[0] == maxs[0]:
        raise NonUniqueExtremumError("single component attains both extrema (trivial action)")
    return mins[0], maxs[0]


def _check_resweight(data: FixedPointData, min_comp: FixedComponent, report: Report) -> None:
    """Edge restrictions for gradient spheres emanating from the minimum.

    codim 2 minima force weight 1; codim 4 minima with weights {1, m} allow
    only weights 1 and m.
    """
    codim = 2 * data.half_dim - min_comp.dim
    out_edges = [e for e in data.edges if e.bottom == min_comp.id]
    if codim == 2:
        for e in out_edges:
            if e.weight != 1:
                report.flag(
                    "resweight",
                    f"edge {e.key} has weight {e.weight}, but every gradient sphere "
                    f"from a codimension-2 minimum has weight 1",
                    subject=e.key,
                )
    elif codim == 4 and 1 in min_comp.weights:
        ws = sorted(min_comp.weights)
        m = ws[-1] if ws[0] == 1 else ws[0]
        allowed = {1, m}
        for e in out_edges:
            if e.weight not in allowed:
                report.flag(
                    "resweight",
                    f"edge {e.key} has weight {e.weight}; a codimension-4 minimum with "
                    f"weights {{1,{m}}} only admits gradient spheres of weight 1 or {m}",
                    subject=e.key,
                )


def _check_missinglemma(data: FixedPointData, report: Report) -> None:
    """Weight bounds from sphere areas, valid once the weight sum formula holds."""
    lo, hi = data.h_min(), data.h_max()
    for c in data.ordered():
        for w in c.weights:
            if w < 0 and -w > c.H - lo:
                report.flag(
                    "missinglemma",
                    f"{c.id}: negative weight {w} needs {-w} <= H - H_min = "
                    f"{format_rational(c.H - lo)}",
                    subject=c.id,
                )
            elif w > 0 and w > hi - c.H:
                report.flag(
                    "missinglemma",
                    f"{c.id}: positive weight {w} needs {w} <= H_max - H = "
                    f"{format_rational(hi - c.H)}",
                    subject=c.id,
                )


def validate(data: FixedPointData) -> Report:
    """Check every dataset invariant; the report is empty iff the data passes.

    Pure and idempotent.  Structural defects raise before this point (the
    constructors refuse them); everything reported here is semantic.
    """
    report = Report()
    comps = data.ordered()

    lo, hi = data.h_min(), data.h_max()
    mins = [c.id for c in comps if c.H == lo]
    maxs = [c.id for c in comps if c.H == hi]
    if len(mins) > 1:
        report.flag("extremum", f"minimum level attained by {mins}; M_min is connected")
    if len(maxs) > 1:
        report.flag("extremum", f"maximum level attained by {maxs}; M_max is connected")
    if len(comps) == 1:
        report.flag("extremum", "one component attains both extrema: the action is trivial")

    g = 0
    for c in comps:
        for w in c.weights:
            g = math.gcd(g, abs(w))
    if g != 1:
        report.flag(
            "effectiveness",
            f"gcd of all weight moduli is {g}; an effective action needs gcd 1",
        )

    by_id = {c.id: c for c in data.components}
    for e in data.edges:
        b, t = by_id[e.bottom], by_id[e.top]
        if not b.H < t.H:
            report.flag(
                "edge-order",
                f"edge {e.key} must increase the Hamiltonian: "
                f"H({e.bottom}) = {format_rational(b.H)} !< H({e.top}) = {format_rational(t.H)}",
                subject=e.key,
            )
        if (
            data.half_dim == 3
            and b.kind == SURFACE
            and t.kind == SURFACE
            and e.weight < 2
        ):
            report.flag(
                "edge-weight",
                f"edge {e.key} joins two fixed surfaces in dimension 6, so it is an "
                f"isotropy 4-manifold and needs weight >= 2",
                subject=e.key,
            )

    if data.relative_fano:
        _check_missinglemma(data, report)
        if len(mins) == 1:
            _check_resweight(data, by_id[mins[0]], report)

    return report
