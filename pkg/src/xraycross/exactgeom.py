"""Exact convex geometry over the rationals.

Polytopes here are small (a handful of vertices, ambient dimension a few)
but the predicates must be exact: chamber decompositions hinge on points
that lie exactly on walls.  Everything is computed over Fraction with no
epsilon anywhere.

A polytope carries both descriptions: its vertex list and a facet system
of linear inequalities.  The inequalities use ambient coordinates and are
valid for points inside the polytope's affine span; membership always
checks the span first.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .ratmath import (
    RatVector,
    ZERO,
    as_vec,
    in_span,
    is_zero_vector,
    nullspace,
    primitive_functional,
    rank,
    rat,
    reduce_mod,
    rref,
    solve_square,
    vdot,
    vneg,
    vsub,
)


@dataclass(frozen=True)
class AffineSpan:
    """Affine subspace: base point plus a canonical (RREF) linear basis.

    The basis rows are in reduced row echelon form, so two spans with the
    same linear part always store the same basis tuple; `pivots` are the
    pivot columns, which make coordinates a plain read-off.
    """

    base: RatVector
    basis: tuple[RatVector, ...]
    pivots: tuple[int, ...]

    @staticmethod
    def from_points(points: Sequence[RatVector]) -> "AffineSpan":
        if not points:
            raise ValueError("empty point set")
        base = min(points)
        basis, pivots = rref([vsub(p, base) for p in points])
        return AffineSpan(base, basis, pivots)

    @staticmethod
    def from_base_and_vectors(base: RatVector, vectors: Iterable[RatVector]) -> "AffineSpan":
        basis, pivots = rref(list(vectors))
        return AffineSpan(tuple(base), basis, pivots)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def ambient_dim(self) -> int:
        return len(self.base)

    def lin_contains(self, v: RatVector) -> bool:
        return in_span(self.basis, self.pivots, v)

    def contains(self, point: RatVector) -> bool:
        return self.lin_contains(vsub(point, self.base))

    def coords(self, point: RatVector) -> RatVector:
        """Coordinates of a point of the span in the canonical basis.

        With an RREF basis the coordinates are the pivot entries of the
        displacement, so this map extends to a linear functional tuple on
        the ambient space.  Only meaningful for points in the span.
        """
        disp = vsub(point, self.base)
        return tuple(disp[p] for p in self.pivots)

    def lift(self, coords: RatVector) -> RatVector:
        out = list(self.base)
        for c, row in zip(coords, self.basis, strict=True):
            out = [x + c * y for x, y in zip(out, row)]
        return tuple(out)

    def same_lin(self, other: "AffineSpan") -> bool:
        return self.basis == other.basis


Facet = tuple[RatVector, Fraction]  # (normal, offset): normal . x <= offset


@dataclass(frozen=True)
class Polytope:
    """Convex hull with exact dual description.

    vertices: the extreme points, lexicographically sorted.
    span:     affine hull, based at the lex-smallest vertex.
    facets:   irredundant inequalities cutting the polytope out of its span.
    """

    vertices: tuple[RatVector, ...]
    span: AffineSpan
    facets: tuple[Facet, ...]

    @property
    def dim(self) -> int:
        return self.span.dim

    @property
    def ambient_dim(self) -> int:
        return self.span.ambient_dim

    def contains(self, point: RatVector) -> bool:
        if len(point) != self.ambient_dim:
            raise ValueError("dimension mismatch")
        if not self.span.contains(point):
            return False
        return all(vdot(n, point) <= c for n, c in self.facets)

    def relative_interior_contains(self, point: RatVector) -> bool:
        if len(point) != self.ambient_dim:
            raise ValueError("dimension mismatch")
        if self.dim == 0:
            return point == self.vertices[0]
        if not self.span.contains(point):
            return False
        return all(vdot(n, point) < c for n, c in self.facets)


def hull(points: Iterable[RatVector]) -> Polytope:
    """Convex hull of finitely many rational points.

    Facets are found by exhaustive supporting-hyperplane search over
    point subsets, which is robust to any degeneracy (collinear input,
    repeated points) at the small scales this package works at.
    Degenerate input collapses to a lower-dimensional polytope rather
    than an error; a single repeated point gives a 0-polytope.
    """
    pts = sorted({as_vec(p) for p in points})
    if not pts:
        raise ValueError("empty point set")
    if len({len(p) for p in pts}) != 1:
        raise ValueError("points of mixed dimension")
    span = AffineSpan.from_points(pts)
    k = span.dim
    if k == 0:
        return Polytope((pts[0],), span, ())

    ys = [span.coords(p) for p in pts]
    found: dict[tuple[RatVector, Fraction], None] = {}
    for comb in combinations(range(len(pts)), k):
        base_y = ys[comb[0]]
        diffs = [vsub(ys[i], base_y) for i in comb[1:]]
        ns = nullspace(diffs, k)
        if len(ns) != 1:
            continue  # affinely dependent subset: spans no unique hyperplane
        u = ns[0]
        c = vdot(u, base_y)
        has_pos = has_neg = False
        for y in ys:
            s = vdot(u, y) - c
            if s > 0:
                has_pos = True
            elif s < 0:
                has_neg = True
            if has_pos and has_neg:
                break
        if has_pos and has_neg:
            continue
        if has_pos:
            u, c = vneg(u), -c
        found[primitive_functional(u, c)] = None

    span_facets = sorted(found)
    verts = []
    for i, y in enumerate(ys):
        active = [u for u, c in span_facets if vdot(u, y) == c]
        if rank(active) == k:
            verts.append(pts[i])

    amb_facets = []
    d = span.ambient_dim
    for u, c in span_facets:
        n = [ZERO] * d
        for coef, p in zip(u, span.pivots):
            n[p] = coef
        offset = c + vdot(tuple(n), span.base)
        amb_facets.append(primitive_functional(tuple(n), offset))
    return Polytope(tuple(verts), span, tuple(sorted(amb_facets)))


@lru_cache(maxsize=None)
def facet_polytopes(p: Polytope) -> tuple[Polytope, ...]:
    """The (dim-1)-dimensional faces of p, one polytope per facet."""
    out = []
    for n, c in p.facets:
        on = [v for v in p.vertices if vdot(n, v) == c]
        out.append(hull(on))
    return tuple(out)


def faces(p: Polytope, k: int) -> list[Polytope]:
    """All k-dimensional faces of p, deduplicated, in vertex-lex order."""
    if not 0 <= k <= p.dim:
        raise ValueError(f"face dimension {k} out of range for a {p.dim}-polytope")
    level = {p.vertices: p}
    for _ in range(p.dim - k):
        nxt: dict[tuple[RatVector, ...], Polytope] = {}
        for q in level.values():
            for f in facet_polytopes(q):
                nxt[f.vertices] = f
        level = nxt
    return [level[key] for key in sorted(level)]


def relative_interior_point(p: Polytope) -> RatVector:
    """Vertex centroid: always in the relative interior, stays rational."""
    n = Fraction(len(p.vertices))
    acc = [ZERO] * p.ambient_dim
    for v in p.vertices:
        acc = [a + x for a, x in zip(acc, v)]
    return tuple(a / n for a in acc)


@dataclass(frozen=True)
class SideFunctional:
    """Oriented affine functional vanishing on a separating hyperplane.

    value(x) = normal . x - offset is zero exactly on the separator,
    positive on the side it was oriented toward.  on_vector classifies
    displacement vectors (weights) by the same linear part.
    """

    normal: RatVector
    offset: Fraction

    def value(self, point: RatVector) -> Fraction:
        return vdot(self.normal, point) - self.offset

    def on_vector(self, v: RatVector) -> Fraction:
        return vdot(self.normal, v)


def _complete_to_ambient(rows: list[RatVector], d: int) -> list[RatVector]:
    """Extend independent rows to a basis of Q^d with standard basis vectors."""
    out = list(rows)
    basis, pivots = rref(out)
    for i in range(d):
        if len(out) == d:
            break
        e = tuple(Fraction(1) if j == i else ZERO for j in range(d))
        if not in_span(basis, pivots, e):
            out.append(e)
            basis, pivots = rref(out)
    return out


def side_functional(ambient: AffineSpan, separator: AffineSpan, toward: RatVector) -> SideFunctional:
    """Functional vanishing on `separator`, positive at `toward`.

    `separator`'s linear part must be a codimension-1 subspace of
    `ambient`'s linear part.  The functional is chosen to vanish on the
    orthogonal completion of the ambient space as well, so it classifies
    weight vectors of the ambient wall unambiguously; it is normalized
    to a primitive integer normal.
    """
    if not all(ambient.lin_contains(b) for b in separator.basis):
        raise ValueError("separator is not contained in the ambient span")
    if separator.dim != ambient.dim - 1:
        raise ValueError("separator is not codimension 1 in the ambient span")
    d = ambient.ambient_dim
    rows = list(separator.basis)
    pick = next(
        (b for b in ambient.basis if not in_span(separator.basis, separator.pivots, b)),
        None,
    )
    if pick is None:
        raise ValueError("degenerate ambient/separator pair")
    rows.append(pick)
    rows = _complete_to_ambient(rows, d)
    rhs = tuple(Fraction(1) if i == separator.dim else ZERO for i in range(d))
    normal = solve_square(rows, rhs)
    offset = vdot(normal, separator.base)
    normal, offset = primitive_functional(normal, offset)
    side = vdot(normal, toward) - offset
    if side == 0:
        raise ValueError("toward point lies on the separator")
    if side < 0:
        normal, offset = vneg(normal), -offset
    return SideFunctional(normal, offset)


def span_hyperplane(ambient: AffineSpan, sub: AffineSpan) -> Facet:
    """Unoriented hyperplane (normal, offset) through `sub` within `ambient`.

    Canonical up to the sign convention (first nonzero normal entry
    positive), so two sub-flats spanning the same hyperplane produce
    equal keys.
    """
    if not all(ambient.lin_contains(b) for b in sub.basis):
        raise ValueError("sub-flat is not contained in the ambient span")
    if sub.dim != ambient.dim - 1:
        raise ValueError("sub-flat is not codimension 1 in the ambient span")
    d = ambient.ambient_dim
    rows = list(sub.basis)
    pick = next(
        (b for b in ambient.basis if not in_span(sub.basis, sub.pivots, b)),
        None,
    )
    if pick is None:
        raise ValueError("degenerate ambient/sub flat pair")
    rows.append(pick)
    rows = _complete_to_ambient(rows, d)
    rhs = tuple(Fraction(1) if i == sub.dim else ZERO for i in range(d))
    normal = solve_square(rows, rhs)
    offset = vdot(normal, sub.base)
    normal, offset = primitive_functional(normal, offset)
    lead = next(x for x in normal if x != 0)
    if lead < 0:
        normal, offset = vneg(normal), -offset
    return normal, offset


def clip_halfspace(p: Polytope, normal: RatVector, offset: Fraction) -> Polytope | None:
    """Exact intersection of p with {x : normal . x <= offset}.

    May drop dimension (the cut can graze a face); returns None when the
    intersection is empty.
    """
    vals = {v: vdot(normal, v) - offset for v in p.vertices}
    if all(s <= 0 for s in vals.values()):
        return p
    keep = [v for v, s in vals.items() if s <= 0]
    cross: list[RatVector] = []
    if p.dim >= 1:
        for edge in faces(p, 1):
            a, b = edge.vertices
            sa, sb = vals[a], vals[b]
            if (sa < 0 < sb) or (sb < 0 < sa):
                t = sa / (sa - sb)
                cross.append(tuple(x + t * (y - x) for x, y in zip(a, b)))
    if not keep and not cross:
        return None
    return hull(keep + cross)


def clip_to_polytope(p: Polytope, q: Polytope) -> Polytope | None:
    """Intersection p with q's facet system: exact p cap q when p's span
    is contained in q's span (the only way this is used)."""
    cur: Polytope | None = p
    for n, c in q.facets:
        if cur is None:
            return None
        cur = clip_halfspace(cur, n, c)
    return cur
