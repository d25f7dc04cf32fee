"""Lattice moment polytopes as generators of fixed-point data.

A Delzant polytope in dimension 2 or 3 together with a primitive integer
direction xi determines a Hamiltonian circle action on the corresponding
toric manifold: H = <xi, mu>.  Vertices become fixed points with weights
given by pairing xi against the primitive edge directions; in dimension 2
an edge orthogonal to xi is a fixed sphere of area equal to its lattice
length; every other edge is a gradient sphere of weight |<xi, d>|.

The module also carries the five anticanonical toric del Pezzo polygons
and executable forms of the elementary facts about circle actions on
them (boundary-divisor areas, weight restrictions, level gaps).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple, Union

from .fixed_data import (
    POINT,
    SURFACE,
    FixedComponent,
    FixedPointData,
    GradientEdge,
    format_rational,
    validate,
)
from .graphs import GraphEdge, GraphVertex, LabelledGraph
from .localization import gradient_sphere_area
from .reports import PreconditionError, Report, StructuralError

IntVec = Tuple[int, ...]


class UnsupportedDirectionError(PreconditionError):
    """The direction fixes positive-dimensional loci we do not model in dim 3."""


def _ivec(v: Sequence[int]) -> IntVec:
    out = tuple(int(x) for x in v)
    if any(not isinstance(x, int) or isinstance(x, bool) for x in v):
        raise StructuralError(f"integer vector expected, got {v!r}")
    return out


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def _sub(a: IntVec, b: IntVec) -> IntVec:
    return tuple(x - y for x, y in zip(a, b))


def _gcd_vec(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = math.gcd(g, abs(x))
    return g


def _primitive(v: IntVec) -> Tuple[IntVec, int]:
    g = _gcd_vec(v)
    if g == 0:
        raise StructuralError("zero vector has no primitive form")
    return tuple(x // g for x in v), g


def _cross2(a: Sequence[int], b: Sequence[int]) -> int:
    return a[0] * b[1] - a[1] * b[0]


def _cross3(a: Sequence[int], b: Sequence[int]) -> IntVec:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


@dataclass(frozen=True)
class CircleDirection:
    """A primitive integer vector selecting S^1 inside the torus."""

    xi: IntVec

    def __post_init__(self):
        v = _ivec(self.xi)
        if _gcd_vec(v) != 1:
            raise StructuralError(f"direction {v} is not primitive")
        object.__setattr__(self, "xi", v)

    def __len__(self) -> int:
        return len(self.xi)


def as_direction(xi: Union[CircleDirection, Sequence[int]]) -> CircleDirection:
    if isinstance(xi, CircleDirection):
        return xi
    return CircleDirection(tuple(xi))


@dataclass(frozen=True)
class Edge:
    """Polytope edge between canonical vertex indices i < j."""

    i: int
    j: int
    direction: IntVec  # primitive, pointing from vertex i to vertex j
    length: int  # lattice length


@dataclass(frozen=True)
class Facet:
    normal: IntVec  # primitive inward normal u
    c: int  # the facet is <u, x> >= -c
    vertex_ids: Tuple[int, ...]


class LatticePolytope:
    """Full-dimensional lattice polytope in dimension 2 or 3.

    Vertices are stored lexicographically sorted; every supplied point must
    be a genuine vertex of the hull.  Edges and facets are derived once at
    construction with exact integer arithmetic.
    """

    def __init__(self, vertices: Sequence[Sequence[int]]):
        verts = sorted({_ivec(v) for v in vertices})
        if not verts:
            raise StructuralError("no vertices given")
        dims = {len(v) for v in verts}
        if len(dims) != 1 or dims.pop() not in (2, 3):
            raise StructuralError("vertices must all lie in dimension 2 or 3")
        self.dim: int = len(verts[0])
        self.vertices: Tuple[IntVec, ...] = tuple(verts)
        if self.dim == 2:
            self._build_2d()
        else:
            self._build_3d()
        for idx in range(len(self.vertices)):
            on = sum(1 for f in self.facets if idx in f.vertex_ids)
            if on < self.dim:
                raise StructuralError(
                    f"point {self.vertices[idx]} is not a vertex of the hull"
                )

    # -- construction ---------------------------------------------------

    def _build_2d(self) -> None:
        pts = list(self.vertices)
        if len(pts) < 3:
            raise StructuralError("a polygon needs at least 3 vertices")
        lower: List[IntVec] = []
        for p in pts:
            while len(lower) >= 2 and _cross2(_sub(lower[-1], lower[-2]), _sub(p, lower[-2])) <= 0:
                lower.pop()
            lower.append(p)
        upper: List[IntVec] = []
        for p in reversed(pts):
            while len(upper) >= 2 and _cross2(_sub(upper[-1], upper[-2]), _sub(p, upper[-2])) <= 0:
                upper.pop()
            upper.append(p)
        hull = lower[:-1] + upper[:-1]  # counterclockwise, starting at lex-min
        if len(hull) < 3:
            raise StructuralError("polygon is not full-dimensional")
        index = {v: i for i, v in enumerate(self.vertices)}
        try:
            self.cycle: Tuple[int, ...] = tuple(index[v] for v in hull)
        except KeyError:
            raise StructuralError("hull does not use all supplied vertices")
        edges: List[Edge] = []
        facets: List[Facet] = []
        k = len(hull)
        for pos in range(k):
            a, b = hull[pos], hull[(pos + 1) % k]
            d, length = _primitive(_sub(b, a))
            i, j = index[a], index[b]
            if i > j:
                i, j = j, i
                d = tuple(-x for x in d)
            edges.append(Edge(i=i, j=j, direction=d, length=length))
            # counterclockwise boundary: inward normal is the left rotation
            dd = _sub(b, a)
            u = (-dd[1], dd[0])
            u, _ = _primitive(u)
            c = -_dot(u, a)
            facets.append(Facet(normal=u, c=c, vertex_ids=tuple(sorted((index[a], index[b])))))
        order = sorted(range(k), key=lambda p: (edges[p].i, edges[p].j))
        self.edges: Tuple[Edge, ...] = tuple(edges[p] for p in order)
        self.facets: Tuple[Facet, ...] = tuple(facets[p] for p in order)
        # cyclic boundary position of each stored edge, and its inverse
        self._cycle_pos = {s: order[s] for s in range(k)}
        self._stored_at_cycle = {order[s]: s for s in range(k)}

    def _build_3d(self) -> None:
        pts = list(self.vertices)
        if len(pts) < 4:
            raise StructuralError("a 3-polytope needs at least 4 vertices")
        full = False
        base = pts[0]
        for q, r, s in itertools.combinations(pts[1:], 3):
            if _dot(_cross3(_sub(q, base), _sub(r, base)), _sub(s, base)) != 0:
                full = True
                break
        if not full:
            raise StructuralError("polytope is not full-dimensional")
        facet_map = {}
        for a, b, c in itertools.combinations(range(len(pts)), 3):
            n = _cross3(_sub(pts[b], pts[a]), _sub(pts[c], pts[a]))
            if n == (0, 0, 0):
                continue
            sides = [_dot(n, _sub(p, pts[a])) for p in pts]
            if all(s >= 0 for s in sides):
                u = n
            elif all(s <= 0 for s in sides):
                u = tuple(-x for x in n)
            else:
                continue
            u, _ = _primitive(u)
            cval = -_dot(u, pts[a])
            key = (u, cval)
            if key not in facet_map:
                on = tuple(i for i, p in enumerate(pts) if _dot(u, p) == -cval)
                facet_map[key] = Facet(normal=u, c=cval, vertex_ids=on)
        self.facets = tuple(sorted(facet_map.values(), key=lambda f: (f.normal, f.c)))
        edges: List[Edge] = []
        for i, j in itertools.combinations(range(len(pts)), 2):
            shared = [f for f in self.facets if i in f.vertex_ids and j in f.vertex_ids]
            if len(shared) >= 2:
                d, length = _primitive(_sub(pts[j], pts[i]))
                edges.append(Edge(i=i, j=j, direction=d, length=length))
        self.edges = tuple(sorted(edges, key=lambda e: (e.i, e.j)))
        self.cycle = ()

    # -- queries ----------------------------------------------------------

    def vertex_edges(self, i: int) -> List[Tuple[Edge, IntVec]]:
        """Incident edges with their primitive direction pointing away from i."""
        out = []
        for e in self.edges:
            if e.i == i:
                out.append((e, e.direction))
            elif e.j == i:
                out.append((e, tuple(-x for x in e.direction)))
        return out

    def edge_between(self, i: int, j: int) -> Edge:
        a, b = min(i, j), max(i, j)
        for e in self.edges:
            if (e.i, e.j) == (a, b):
                return e
        raise StructuralError(f"no edge between vertices {i} and {j}")

    def cyclic_neighbours(self, e: Edge) -> Tuple[Edge, Edge]:
        """Previous and next boundary edge of a polygon, in cyclic order."""
        if self.dim != 2:
            raise PreconditionError("cyclic edge order exists for polygons only")
        pos = self._cycle_pos[self.edges.index(e)]
        k = len(self.edges)
        prev = self.edges[self._stored_at_cycle[(pos - 1) % k]]
        nxt = self.edges[self._stored_at_cycle[(pos + 1) % k]]
        return prev, nxt

    def origin_interior(self) -> bool:
        return all(f.c >= 1 for f in self.facets)

    def is_reflexive(self) -> bool:
        return self.origin_interior() and all(f.c == 1 for f in self.facets)

    def as_dict(self) -> dict:
        return {"dim": self.dim, "vertices": [list(v) for v in self.vertices]}


# -- checks ----------------------------------------------------------------


def delzant_check(p: LatticePolytope) -> bool:
    """True iff the primitive edge directions at every vertex form a lattice basis."""
    for i in range(len(p.vertices)):
        dirs = [d for _e, d in p.vertex_edges(i)]
        if len(dirs) != p.dim:
            return False
        if p.dim == 2:
            det = _cross2(dirs[0], dirs[1])
        else:
            det = _dot(_cross3(dirs[0], dirs[1]), dirs[2])
        if det not in (1, -1):
            return False
    return True


def reflexive_check(p: LatticePolytope) -> bool:
    """True iff every facet has lattice distance one from the interior origin."""
    if not p.origin_interior():
        raise PreconditionError("reflexive_check needs the origin in the interior")
    return all(f.c == 1 for f in p.facets)


def boundary_selfint_2d(p: LatticePolytope, edge: Edge) -> int:
    """Self-intersection of a boundary divisor from the normal-fan relation.

    With u_{i-1}, u_i, u_{i+1} the primitive inward normals of consecutive
    boundary edges, smoothness forces u_{i-1} + u_{i+1} = -D^2 u_i.
    """
    if p.dim != 2:
        raise PreconditionError("boundary_selfint_2d applies to polygons")
    prev_e, next_e = p.cyclic_neighbours(edge)
    normal = {(_e.i, _e.j): f.normal for _e, f in zip(p.edges, p.facets)}
    u = normal[(edge.i, edge.j)]
    s = tuple(
        a + b
        for a, b in zip(normal[(prev_e.i, prev_e.j)], normal[(next_e.i, next_e.j)])
    )
    ks = set()
    for si, ui in zip(s, u):
        if ui != 0:
            if si % ui != 0:
                raise StructuralError("normal fan is not smooth along this edge")
            ks.add(-(si // ui))
        elif si != 0:
            raise StructuralError("normal fan is not smooth along this edge")
    if len(ks) != 1:
        raise StructuralError("normal fan relation is inconsistent")
    return ks.pop()


# -- data generation ---------------------------------------------------------


def _vertex_id(v: IntVec) -> str:
    return "v" + "_".join(str(x) for x in v)


def _surface_id(a: IntVec, b: IntVec) -> str:
    lo, hi = sorted((a, b))
    return "s" + "_".join(str(x) for x in lo) + "__" + "_".join(str(x) for x in hi)


def fixed_data_from_polytope(
    p: LatticePolytope, xi: Union[CircleDirection, Sequence[int]]
) -> FixedPointData:
    """Fixed-point data of the circle action cut out by xi on the toric manifold.

    Vertices give points with H = <xi, v> and weights <xi, e> over the
    primitive edge directions leaving v.  In dimension 2 an edge with
    <xi, d> = 0 gives a genus-0 fixed surface of area equal to its lattice
    length and normal degree its self-intersection, absorbing its endpoint
    vertices; any other edge gives a gradient edge of weight |<xi, d>|.
    The relative Fano flag is set iff the polytope is reflexive.
    """
    direction = as_direction(xi)
    x = direction.xi
    if len(x) != p.dim:
        raise PreconditionError(f"direction has length {len(x)}, polytope dim {p.dim}")
    if not delzant_check(p):
        raise PreconditionError("fixed_data_from_polytope needs a Delzant polytope")
    if p.dim == 3:
        for e in p.edges:
            if _dot(x, e.direction) == 0:
                raise UnsupportedDirectionError(
                    f"direction {x} fixes the edge through vertices "
                    f"{p.vertices[e.i]}, {p.vertices[e.j]}; positive-dimensional "
                    f"fixed loci of 6-manifolds are not generated"
                )

    absorbed = {}
    components: List[FixedComponent] = []
    if p.dim == 2:
        for e in p.edges:
            if _dot(x, e.direction) != 0:
                continue
            va, vb = p.vertices[e.i], p.vertices[e.j]
            h = _dot(x, va)
            normal_weights = set()
            for idx in (e.i, e.j):
                for other, d in p.vertex_edges(idx):
                    if other is not e:
                        normal_weights.add(_dot(x, d))
            if len(normal_weights) != 1:
                raise StructuralError(
                    f"fixed edge {va}-{vb} has ambiguous normal weight {normal_weights}"
                )
            w = normal_weights.pop()
            sid = _surface_id(va, vb)
            components.append(
                FixedComponent(
                    id=sid,
                    kind=SURFACE,
                    H=Fraction(h),
                    weights=(w,),
                    genus=0,
                    normal_degrees=(boundary_selfint_2d(p, e),),
                    area=Fraction(e.length),
                )
            )
            absorbed[e.i] = sid
            absorbed[e.j] = sid

    for i, v in enumerate(p.vertices):
        if i in absorbed:
            continue
        weights = tuple(sorted(_dot(x, d) for _e, d in p.vertex_edges(i)))
        components.append(
            FixedComponent(
                id=_vertex_id(v), kind=POINT, H=Fraction(_dot(x, v)), weights=weights
            )
        )

    comp_of_vertex = {
        i: absorbed.get(i, _vertex_id(p.vertices[i])) for i in range(len(p.vertices))
    }
    edges: List[GradientEdge] = []
    for e in p.edges:
        pairing = _dot(x, e.direction)
        if pairing == 0:
            continue
        lo, hi = (e.i, e.j) if pairing > 0 else (e.j, e.i)
        edges.append(
            GradientEdge(
                bottom=comp_of_vertex[lo], top=comp_of_vertex[hi], weight=abs(pairing)
            )
        )
    edges.sort(key=lambda e: (e.bottom, e.top, e.weight))

    reflexive = p.is_reflexive()
    return FixedPointData(
        half_dim=p.dim,
        components=tuple(sorted(components, key=lambda c: (c.H, c.id))),
        edges=tuple(edges),
        relative_fano=reflexive,
        fano=reflexive,
    )


# -- the five toric del Pezzo polygons ---------------------------------------


@dataclass(frozen=True)
class DelPezzoEntry:
    name: str
    polytope: LatticePolytope
    b2: int
    degree: int


def delpezzo_catalog() -> Tuple[DelPezzoEntry, ...]:
    """The five anticanonical reflexive Delzant polygons with metadata.

    Coordinates are fixed here once and guarded by oracle checks in the
    test suite (Delzant, reflexive, degree = 12 - V, edge lengths) rather
    than trusted.  The hexagon is stored in a sheared lattice basis; all
    invariants are GL(2,Z)-independent.
    """
    return (
        DelPezzoEntry("CP2", LatticePolytope([(-1, -1), (2, -1), (-1, 2)]), 1, 9),
        DelPezzoEntry(
            "CP1xCP1", LatticePolytope([(-1, -1), (1, -1), (1, 1), (-1, 1)]), 2, 8
        ),
        DelPezzoEntry(
            "Bl1CP2", LatticePolytope([(-1, 0), (0, -1), (2, -1), (-1, 2)]), 2, 8
        ),
        DelPezzoEntry(
            "Bl2CP2",
            LatticePolytope([(-1, 0), (0, -1), (1, -1), (1, 0), (-1, 2)]),
            3,
            7,
        ),
        DelPezzoEntry(
            "Bl3CP2",
            LatticePolytope(
                [(-1, -4), (0, -1), (1, 3), (1, 4), (0, 1), (-1, -3)]
            ),
            4,
            6,
        ),
    )


def catalog_entry(name: str) -> DelPezzoEntry:
    for entry in delpezzo_catalog():
        if entry.name == name:
            return entry
    raise StructuralError(f"no del Pezzo catalog entry named {name!r}")


# -- Karshon graphs -----------------------------------------------------------


def karshon_graph(
    p: LatticePolytope, xi: Union[CircleDirection, Sequence[int]]
) -> LabelledGraph:
    """Graph of the isolated fixed points of (P, xi), edges labelled by weight.

    Weight-1 gradient spheres are retained with label 1.  For non-generic
    directions the fixed spheres absorb their endpoint vertices and are
    reported separately in the generated dataset, not in this graph.
    """
    if p.dim != 2:
        raise PreconditionError("karshon_graph applies to polygons")
    data = fixed_data_from_polytope(p, xi)
    return graph_of_points(data)


def graph_of_points(data: FixedPointData) -> LabelledGraph:
    """Karshon graph of a dataset whose relevant fixed components are points."""
    points = data.points()
    ids = {c.id for c in points}
    vertices = tuple(GraphVertex(id=c.id, H=c.H, weights=c.weights) for c in points)
    edges = tuple(
        GraphEdge(tail=e.bottom, head=e.top, weight=e.weight)
        for e in data.edges
        if e.bottom in ids and e.top in ids
    )
    v_min = v_max = None
    if points:
        lo = min(c.H for c in points)
        hi = max(c.H for c in points)
        lows = sorted(c.id for c in points if c.H == lo)
        highs = sorted(c.id for c in points if c.H == hi)
        if len(lows) == 1 and lo == data.h_min():
            v_min = lows[0]
        if len(highs) == 1 and hi == data.h_max():
            v_max = highs[0]
    return LabelledGraph(vertices=vertices, edges=edges, v_min=v_min, v_max=v_max)


# -- the del Pezzo lemma suite -----------------------------------------------


def _is_generic(p: LatticePolytope, xi: CircleDirection) -> bool:
    return all(_dot(xi.xi, e.direction) != 0 for e in p.edges)


def delpezzo_lemma_suite(
    p: LatticePolytope, xi: Union[CircleDirection, Sequence[int]]
) -> Report:
    """Check the toric del Pezzo facts on the data generated from (P, xi).

    Covered conclusions, one note per check: gradient spheres through
    non-extremal points are boundary divisors (dum); the weight-1
    multiplicity balance at the extrema (equallemma); the level gap below
    twin {-1,n} points (neededcor); weight-1 spheres touch an extremum
    (fourbound); boundary areas at most 3 (4small); the {-1,n} point
    restrictions (us); and the consequences of a {+-1,+-1} fixed point
    (calc).  Violations carry the lemma name as code.
    """
    direction = as_direction(xi)
    if not (delzant_check(p) and p.dim == 2 and p.is_reflexive()):
        raise PreconditionError("the lemma suite runs on toric del Pezzo polygons")
    report = Report()
    if not _is_generic(p, direction):
        report.note("skipped: direction is not generic (fixed boundary spheres)")
        return report
    data = fixed_data_from_polytope(p, direction)
    points = data.ordered()
    min_id, max_id = points[0].id, points[-1].id
    h_min, h_max = points[0].H, points[-1].H
    by_id = {c.id: c for c in points}

    # dum: every weight at a non-extremal point is realised by a boundary edge
    ok = True
    for c in points:
        if c.id in (min_id, max_id):
            continue
        up = sorted(e.weight for e in data.edges if e.bottom == c.id)
        down = sorted(-e.weight for e in data.edges if e.top == c.id)
        if sorted(c.weights) != sorted(up + down):
            ok = False
            report.flag(
                "dum",
                f"{c.id}: weights {sorted(c.weights)} are not matched by incident "
                f"boundary edges (up {up}, down {down})",
                subject=c.id,
            )
    report.note(f"dum: {'pass' if ok else 'fail'}")

    # equallemma: weight-1 multiplicities at the extrema
    mult_min = sum(1 for w in by_id[min_id].weights if w == 1)
    count_min = sum(
        1
        for c in points
        if c.id not in (min_id, max_id) and -1 in c.weights
    )
    mult_max = sum(1 for w in by_id[max_id].weights if w == -1)
    count_max = sum(
        1 for c in points if c.id not in (min_id, max_id) and 1 in c.weights
    )
    ok = mult_min == count_min and mult_max == count_max
    if mult_min != count_min:
        report.flag(
            "equallemma",
            f"multiplicity of weight 1 at {min_id} is {mult_min}, but "
            f"{count_min} index-2 points carry a weight -1",
        )
    if mult_max != count_max:
        report.flag(
            "equallemma",
            f"multiplicity of weight -1 at {max_id} is {mult_max}, but "
            f"{count_max} index-2 points carry a weight 1",
        )
    report.note(f"equallemma: {'pass' if ok else 'fail'}")

    # neededcor: twin {-1,n} points on one level force an empty gap below
    ok = True
    twins = [
        c
        for c in points
        if c.sorted_weights()[0] == -1 and c.sorted_weights()[1] > 1
    ]
    for a, b in itertools.combinations(twins, 2):
        if a.H == b.H:
            offenders = [
                c.id for c in points if c.id != min_id and h_min <= c.H < a.H
            ]
            if offenders:
                ok = False
                report.flag(
                    "neededcor",
                    f"twin {{-1,n}} points {a.id}, {b.id} at level "
                    f"{format_rational(a.H)} admit other points {offenders} below",
                )
    report.note(f"neededcor: {'pass' if ok else 'fail'}")

    # fourbound: weight-1 gradient spheres contain an extremal point
    ok = True
    for e in data.edges:
        if e.weight == 1 and min_id not in (e.bottom, e.top) and max_id not in (
            e.bottom,
            e.top,
        ):
            ok = False
            report.flag(
                "fourbound",
                f"weight-1 edge {e.key} avoids both extremal points",
                subject=e.key,
            )
    report.note(f"fourbound: {'pass' if ok else 'fail'}")

    # 4small: boundary divisor areas are at most 3
    ok = True
    for e in data.edges:
        area = gradient_sphere_area(e, data)
        if area > 3:
            ok = False
            report.flag(
                "4small",
                f"boundary divisor {e.key} has area {format_rational(area)} > 3",
                subject=e.key,
            )
    report.note(f"4small: {'pass' if ok else 'fail'}")

    # us: restrictions at points with weights {-1, n}, n >= 2
    ok = True
    min_ws = by_id[min_id].sorted_weights()
    for c in points:
        ws = c.sorted_weights()
        if ws[0] == -1 and ws[1] >= 2:
            gap = c.H - h_min
            if gap > 3:
                ok = False
                report.flag(
                    "us", f"{c.id}: H - H_min = {format_rational(gap)} > 3", subject=c.id
                )
            if 1 not in min_ws:
                ok = False
                report.flag(
                    "us",
                    f"minimum weights {list(min_ws)} are not of the form {{1,m}}",
                    subject=min_id,
                )
            else:
                m = min_ws[1] if min_ws[0] == 1 else min_ws[0]
                if m < gap:
                    ok = False
                    report.flag(
                        "us",
                        f"minimum weight m = {m} is below H({c.id}) - H_min = "
                        f"{format_rational(gap)}",
                        subject=min_id,
                    )
            strictly_between = [
                o.id for o in points if h_min < o.H < c.H
            ]
            if strictly_between:
                ok = False
                report.flag(
                    "us",
                    f"points {strictly_between} lie strictly between the minimum "
                    f"and {c.id}",
                    subject=c.id,
                )
    report.note(f"us: {'pass' if ok else 'fail'}")

    # calc: consequences of a fixed point with weights {1,1}, {-1,-1} or {1,-1}
    ok = True
    special = any(
        c.sorted_weights() in ((1, 1), (-1, -1), (-1, 1)) for c in points
    )
    if special:
        for e in data.edges:
            if e.weight > 2:
                ok = False
                report.flag(
                    "calc",
                    f"boundary divisor {e.key} has weight {e.weight} > 2",
                    subject=e.key,
                )
        if h_min < -3 or h_max > 3:
            ok = False
            report.flag(
                "calc",
                f"H range [{format_rational(h_min)}, {format_rational(h_max)}] "
                f"is not contained in [-3, 3]",
            )
        report.note(f"calc: {'pass' if ok else 'fail'}")
    else:
        report.note("calc: vacuous (no fixed point with weights {1,1}, {-1,-1} or {1,-1})")

    return report


# -- direction scans -----------------------------------------------------------


def primitive_directions(dim: int, bound: int) -> List[IntVec]:
    """Primitive vectors of max-norm <= bound, one per +-pair, in lex order."""
    if bound < 1:
        raise PreconditionError("bound must be at least 1")
    out = []
    for v in itertools.product(range(-bound, bound + 1), repeat=dim):
        if _gcd_vec(v) != 1:
            continue
        first = next(x for x in v if x != 0)
        if first < 0:
            continue
        out.append(tuple(v))
    return sorted(out)


@dataclass(frozen=True)
class ScanItem:
    xi: IntVec
    data: Optional[FixedPointData]
    report: Report
    error: Optional[str] = None


def scan_directions(p: LatticePolytope, bound: int) -> Iterator[ScanItem]:
    """Generate data for every primitive direction of max-norm <= bound.

    Directions are taken up to sign and enumerated lexicographically; for
    polygons in the del Pezzo class the lemma suite runs on each generic
    direction, otherwise only structural validation is reported.
    """
    is_delpezzo = p.dim == 2 and delzant_check(p) and p.is_reflexive()
    for xi in primitive_directions(p.dim, bound):
        try:
            data = fixed_data_from_polytope(p, xi)
        except UnsupportedDirectionError as exc:
            yield ScanItem(xi=xi, data=None, report=Report(), error=str(exc))
            continue
        report = validate(data)
        if is_delpezzo:
            report.extend(delpezzo_lemma_suite(p, xi))
        yield ScanItem(xi=xi, data=data, report=report)
