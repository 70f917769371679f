"""Subchamber decomposition of walls and crossing graphs.

The regular set of a wall is the wall minus all smaller walls contained
in it.  Its connected components (subchambers) are found by refining the
wall along the affine spans of its codimension-1 subwalls, then merging
cells across any shared facet that no actual subwall covers.  The
crossing graph records which subchambers are adjacent (plus an exterior
node), and for every adjacency the separating subchambers of the
codimension-1 strata together with forward/backward weight counts.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import MalformedXray, SingularLevel, XrayError
from .exactgeom import (
    Polytope,
    clip_halfspace,
    clip_to_polytope,
    facet_polytopes,
    hull,
    side_functional,
    span_hyperplane,
)
from .ratmath import RatVector, format_rational, vneg
from .xray import WeightedXray, stratum_weights_in

EXTERIOR = -1


@dataclass(frozen=True)
class Subchamber:
    host: str
    index: int
    cell: Polytope
    rep: RatVector


@dataclass(frozen=True)
class Separator:
    """One separating subchamber: stratum g, its subchamber index r, and
    the counts of g's weights pointing forward (f) / backward (b) across
    the edge, forward meaning toward the edge's destination node."""

    g: str
    r: int
    f: int
    b: int


@dataclass(frozen=True)
class CrossingEdge:
    source: int
    dest: int
    facet_rep: RatVector
    separators: tuple[Separator, ...]

    def reversed(self) -> "CrossingEdge":
        return CrossingEdge(
            self.dest,
            self.source,
            self.facet_rep,
            tuple(Separator(s.g, s.r, s.b, s.f) for s in self.separators),
        )


@dataclass(frozen=True)
class CrossingGraph:
    host: str
    nodes: tuple[int, ...]
    edges: tuple[CrossingEdge, ...]


def _centroid(points: Sequence[RatVector]) -> RatVector:
    m = len(points)
    return tuple(sum(col, Fraction(0)) / m for col in zip(*points))


def _fmt_point(p: RatVector) -> str:
    return "(" + ",".join(format_rational(c) for c in p) + ")"


def subchambers(x: WeightedXray, f: str) -> tuple[Subchamber, ...]:
    """Closed subchambers of the wall of f, sorted by representative.

    A 0-dimensional wall is its own (trivial) subchamber.  Results are
    cached on the X-ray, keyed by stratum id.
    """
    key = ("subchambers", f)
    if key in x._cache:
        return x._cache[key]
    s = x.stratum(f)
    wall = s.wall
    k = wall.dim
    if k == 0:
        out = (Subchamber(f, 0, wall, wall.vertices[0]),)
        x._cache[key] = out
        return out
    lower = sorted(x.below(f))
    hyperplanes: dict[tuple[RatVector, Fraction], None] = {}
    for g in lower:
        if x.dim(g) == k - 1:
            hyperplanes[span_hyperplane(wall.span, x.stratum(g).wall.span)] = None

    cells = [wall]
    for normal, offset in hyperplanes:
        split = []
        for cell in cells:
            for piece in (
                clip_halfspace(cell, normal, offset),
                clip_halfspace(cell, vneg(normal), -offset),
            ):
                if piece is not None and piece.dim == k:
                    split.append(piece)
        cells = split

    root = list(range(len(cells)))

    def find(i: int) -> int:
        while root[i] != i:
            root[i] = root[root[i]]
            i = root[i]
        return i

    subwalls = [x.stratum(g).wall for g in lower]
    owners: dict[tuple[RatVector, ...], list[int]] = {}
    for i, cell in enumerate(cells):
        for facet in facet_polytopes(cell):
            owners.setdefault(facet.vertices, []).append(i)
    for verts, idxs in owners.items():
        if len(idxs) == 2:
            mid = _centroid(verts)
            if not any(w.contains(mid) for w in subwalls):
                root[find(idxs[0])] = find(idxs[1])

    groups: dict[int, list[Polytope]] = {}
    for i, cell in enumerate(cells):
        groups.setdefault(find(i), []).append(cell)
    merged = []
    for members in groups.values():
        points = sorted({v for cell in members for v in cell.vertices})
        chamber = hull(points)
        merged.append((_centroid(chamber.vertices), chamber))
    merged.sort(key=lambda pair: pair[0])
    out = tuple(Subchamber(f, i, cell, rep) for i, (rep, cell) in enumerate(merged))
    x._cache[key] = out
    return out


def locate(x: WeightedXray, f: str, q: RatVector) -> Subchamber:
    """The subchamber of f's wall containing q.

    q must be a regular point of the wall: inside it but on no smaller
    wall.  Singular points are rejected with a pointer to the smaller
    stratum, since the reduction there belongs to a different stratum's
    table.
    """
    wall = x.stratum(f).wall
    if not wall.contains(q):
        raise XrayError(f"point {_fmt_point(q)} not in wall '{f}'")
    for g in sorted(x.below(f)):
        if x.stratum(g).wall.contains(q):
            raise SingularLevel(
                f"point {_fmt_point(q)} lies on subwall '{g}': "
                "singular point of this wall; query a smaller stratum"
            )
    for chamber in subchambers(x, f):
        if chamber.cell.contains(q):
            return chamber
    raise XrayError(f"point {_fmt_point(q)} is in no subchamber of '{f}'")


def crossing_graph(x: WeightedXray, f: str) -> CrossingGraph:
    """Adjacency graph of the subchambers of f's wall, plus EXTERIOR.

    One edge per adjacent chamber pair, oriented low index to high; one
    edge per boundary facet piece, oriented EXTERIOR to chamber.  Every
    edge carries all separating subchambers with their (f, b) counts.
    Cached on the X-ray.
    """
    key = ("crossing_graph", f)
    if key in x._cache:
        return x._cache[key]
    chambers = subchambers(x, f)
    wall = x.stratum(f).wall
    k = wall.dim
    nodes = (EXTERIOR,) + tuple(range(len(chambers)))
    if k == 0:
        graph = CrossingGraph(f, nodes, ())
        x._cache[key] = graph
        return graph
    principal = [g for g in sorted(x.below(f)) if x.dim(g) == k - 1]
    edges = []
    for i in range(len(chambers)):
        for j in range(i + 1, len(chambers)):
            shared = clip_to_polytope(chambers[i].cell, chambers[j].cell)
            if shared is not None and shared.dim == k - 1:
                rep = _centroid(shared.vertices)
                edges.append(_build_edge(x, f, principal, chambers, i, j, rep))
    for chamber in chambers:
        for facet in facet_polytopes(chamber.cell):
            mid = _centroid(facet.vertices)
            if any(sum(n * c for n, c in zip(normal, mid)) == offset for normal, offset in wall.facets):
                edges.append(_build_edge(x, f, principal, chambers, EXTERIOR, chamber.index, mid))
    edges.sort(key=lambda e: (e.source, e.dest, e.facet_rep))
    graph = CrossingGraph(f, nodes, tuple(edges))
    x._cache[key] = graph
    return graph


def _build_edge(
    x: WeightedXray,
    f: str,
    principal: Iterable[str],
    chambers: Sequence[Subchamber],
    source: int,
    dest: int,
    facet_rep: RatVector,
) -> CrossingEdge:
    toward = chambers[dest].rep
    ambient = x.stratum(f).wall.span
    separators = []
    for g in principal:
        gwall = x.stratum(g).wall
        if not gwall.contains(facet_rep):
            continue
        if any(x.stratum(h).wall.contains(facet_rep) for h in x.below(g)):
            continue  # on a subwall of g, not in an open subchamber
        r = locate(x, g, facet_rep)
        ell = side_functional(ambient, gwall.span, toward)
        forward = backward = 0
        for w in stratum_weights_in(x, g, f):
            v = ell.on_vector(w)
            if v > 0:
                forward += 1
            elif v < 0:
                backward += 1
        separators.append(Separator(g, r.index, forward, backward))
    if not separators:
        raise MalformedXray(
            f"wall '{f}': facet at {_fmt_point(facet_rep)} not covered by any subwall"
        )
    if source == EXTERIOR and len(separators) > 1:
        warnings.warn(
            f"wall '{f}': exterior facet at {_fmt_point(facet_rep)} has "
            f"{len(separators)} overlapping separators; summing all contributions",
            stacklevel=2,
        )
    return CrossingEdge(source, dest, facet_rep, tuple(separators))
