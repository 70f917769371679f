"""Weighted X-rays: the combinatorial shadow of a Hamiltonian torus action.

An X-ray is a finite poset of strata, each carrying a rational polytope
(its wall).  Vertex strata (0-dimensional walls) additionally carry the
isotropy weights of the fixed component and seed values for the invariants
(signature, Poincare polynomial, Euler characteristic).  The validators
check the three structural axioms that make the wall-crossing recursion
sound: the face condition and span-uniqueness on the poset, weight
consistency along strata, and the local Darboux model at every vertex.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import MalformedXray
from .exactgeom import Polytope, faces, hull
from .intpoly import IntPolynomial
from .ratmath import (
    RatVector,
    as_vec,
    format_rational,
    in_span,
    is_zero_vector,
    primitive_vector,
    rank,
    rat,
    reduce_mod,
    rref,
    solve_square,
    vdot,
    vsub,
)


@dataclass(frozen=True)
class VertexData:
    """Weights and invariant seeds attached to a vertex stratum.

    weights is the full multiset of isotropy weights (half_dim many,
    zero vectors included when the fixed component is not isolated).
    Seeds are the invariant values of the fixed component itself; for an
    isolated fixed point they are all 1, but callers may supply anything
    (e.g. orientation-adjusted signs for non-Hamiltonian circle data).
    """

    weights: tuple[RatVector, ...]
    seed_signature: int
    seed_poincare: IntPolynomial
    seed_euler: int

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(sorted(as_vec(w) for w in self.weights)))


@dataclass(frozen=True)
class Stratum:
    id: str
    wall: Polytope
    parents: tuple[str, ...] = ()
    children: tuple[str, ...] = ()
    vertex_data: VertexData | None = None


@dataclass(frozen=True, order=True)
class Violation:
    stratum: str
    kind: str
    detail: str

    def __str__(self) -> str:
        return f"[{self.kind}] {self.stratum}: {self.detail}"


@dataclass(frozen=True)
class WeightedXray:
    """Immutable X-ray: torus rank d, half-dimension n, strata poset.

    Construction normalizes the poset (parents may be given as any
    relation whose transitive closure is the intended order; they are
    reduced to covering relations) and enforces the structural rules
    that make the object well-formed: unique ids, acyclic order, walls
    nested along the order, vertex data exactly on 0-dimensional walls,
    and n weights of rank-d ambient dimension per vertex.  The deeper
    geometric axioms live in the validate_* functions so that broken
    examples can still be built and diagnosed.
    """

    torus_rank: int
    half_dim: int
    strata: tuple[Stratum, ...]
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if self.torus_rank < 1:
            raise MalformedXray("torus_rank must be at least 1")
        if self.half_dim < 1:
            raise MalformedXray("half_dim must be at least 1")
        strata = tuple(self.strata)
        ids = [s.id for s in strata]
        if len(set(ids)) != len(ids):
            dup = sorted({i for i in ids if ids.count(i) > 1})
            raise MalformedXray(f"duplicate stratum ids: {dup}")
        known = set(ids)
        declared: dict[str, set[str]] = {}
        for s in strata:
            for p in s.parents:
                if p not in known:
                    raise MalformedXray(f"stratum '{s.id}' names unknown parent '{p}'")
                if p == s.id:
                    raise MalformedXray(f"stratum '{s.id}' is its own parent")
            declared[s.id] = set(s.parents)

        above: dict[str, set[str]] = {}

        def climb(sid: str, trail: tuple[str, ...]) -> set[str]:
            if sid in above:
                return above[sid]
            if sid in trail:
                raise MalformedXray(f"cycle in stratum order through '{sid}'")
            acc: set[str] = set()
            for p in declared[sid]:
                acc.add(p)
                acc |= climb(p, trail + (sid,))
            above[sid] = acc
            return acc

        for sid in ids:
            climb(sid, ())

        below: dict[str, set[str]] = {sid: set() for sid in ids}
        for sid, ups in above.items():
            for u in ups:
                below[u].add(sid)

        covers: dict[str, set[str]] = {}
        for sid in ids:
            ups = above[sid]
            covers[sid] = {a for a in ups if not any(a in above[b] for b in ups if b != a)}

        by_id = {s.id: s for s in strata}
        for s in strata:
            if len(s.wall.span.base) != self.torus_rank:
                raise MalformedXray(f"wall of '{s.id}' lives in dimension {len(s.wall.span.base)}, expected {self.torus_rank}")
            if s.wall.dim == 0:
                if s.vertex_data is None:
                    raise MalformedXray(f"vertex stratum '{s.id}' is missing vertex data")
                vd = s.vertex_data
                if len(vd.weights) != self.half_dim:
                    raise MalformedXray(f"vertex '{s.id}': expected {self.half_dim} weights, got {len(vd.weights)}")
                for w in vd.weights:
                    if len(w) != self.torus_rank:
                        raise MalformedXray(f"vertex '{s.id}': weight of dimension {len(w)}, expected {self.torus_rank}")
            elif s.vertex_data is not None:
                raise MalformedXray(f"positive-dimensional stratum '{s.id}' must not carry vertex data")
        for sid, cs in covers.items():
            for p in cs:
                pw = by_id[p].wall
                if not all(pw.contains(v) for v in by_id[sid].wall.vertices):
                    raise MalformedXray(f"wall of '{sid}' is not contained in wall of its parent '{p}'")

        normalized = tuple(
            replace(
                by_id[sid],
                parents=tuple(sorted(covers[sid])),
                children=tuple(sorted(c for c in ids if sid in covers[c])),
            )
            for sid in sorted(ids)
        )
        object.__setattr__(self, "strata", normalized)
        self._cache["by_id"] = {s.id: s for s in normalized}
        self._cache["above"] = {sid: frozenset(above[sid]) for sid in ids}
        self._cache["below"] = {sid: frozenset(below[sid]) for sid in ids}
        self._cache["vertex_ids"] = tuple(s.id for s in normalized if s.wall.dim == 0)

    # -- basic queries ----------------------------------------------------

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(s.id for s in self.strata)

    def stratum(self, sid: str) -> Stratum:
        try:
            return self._cache["by_id"][sid]
        except KeyError:
            raise KeyError(f"no stratum '{sid}'") from None

    def dim(self, sid: str) -> int:
        return self.stratum(sid).wall.dim

    def above(self, sid: str) -> frozenset[str]:
        """Strict ancestors."""
        self.stratum(sid)
        return self._cache["above"][sid]

    def below(self, sid: str) -> frozenset[str]:
        """Strict descendants."""
        self.stratum(sid)
        return self._cache["below"][sid]

    def leq(self, a: str, b: str) -> bool:
        return a == b or b in self.above(a)

    @property
    def vertex_ids(self) -> tuple[str, ...]:
        return self._cache["vertex_ids"]

    def vertices_below(self, sid: str) -> tuple[str, ...]:
        return tuple(v for v in self.vertex_ids if self.leq(v, sid))

    @property
    def top_id(self) -> str:
        tops = [s.id for s in self.strata if not s.parents]
        if len(tops) != 1:
            raise MalformedXray(f"expected a unique maximal stratum, found {sorted(tops)}")
        return tops[0]

    def fingerprint(self) -> str:
        return hashlib.sha256(canonical_json(self).encode()).hexdigest()[:16]


# -- weight bookkeeping ---------------------------------------------------


def stratum_weights_in(x: WeightedXray, g: str, f: str) -> tuple[RatVector, ...]:
    """Weights of stratum g that lie in the linear span of f's wall.

    g must sit below f.  The weights are read off at one vertex stratum
    below g (the lexicographically smallest id); the consistency axiom
    makes the choice immaterial for anything downstream.  Zero weights
    of a non-isolated vertex count as lying in every span.
    """
    if not x.leq(g, f):
        raise ValueError(f"stratum '{g}' is not below '{f}'")
    vs = x.vertices_below(g)
    if not vs:
        raise MalformedXray(f"stratum '{g}' has no vertex stratum below it")
    vd = x.stratum(vs[0]).vertex_data
    span = x.stratum(f).wall.span
    return tuple(w for w in vd.weights if span.lin_contains(w))


def complex_dim_of_stratum(x: WeightedXray, f: str) -> int:
    """Complex dimension of the stratum manifold: weights tangent to its wall."""
    return len(stratum_weights_in(x, f, f))


def is_toric_structure_free(x: WeightedXray, f: str) -> bool:
    """True when f's wall has no internal structure and full toric dimension.

    Two conditions: every stratum below f images onto an actual face of
    f's wall (nothing cuts through the interior), and the stratum's
    complex dimension equals the wall dimension.  On such walls every
    reduced space is a toric variety and the invariants are forced.
    """
    s = x.stratum(f)
    for g in x.below(f):
        gw = x.stratum(g).wall
        if gw not in faces(s.wall, gw.dim):
            return False
    return complex_dim_of_stratum(x, f) == s.wall.dim


# -- validators -----------------------------------------------------------


def validate_poset(x: WeightedXray) -> list[Violation]:
    """Order axioms: dimension decrease, face coverage, span uniqueness."""
    vio: set[Violation] = set()
    for a in x.ids:
        for b in x.above(a):
            if x.dim(a) >= x.dim(b):
                vio.add(Violation(a, "dimension", f"dim {x.dim(a)} wall below dim {x.dim(b)} wall '{b}'"))
    for s in x.strata:
        for k in range(0, s.wall.dim + 1):
            for face in faces(s.wall, k):
                matches = [t for t in x.ids if x.leq(t, s.id) and x.stratum(t).wall == face]
                if len(matches) != 1:
                    where = _fmt_points(face.vertices)
                    vio.add(Violation(s.id, "face", f"face {where} is the wall of {len(matches)} chain members {matches}"))
    seen_pairs: set[tuple[str, str]] = set()
    for j in x.ids:
        ups = sorted({j} | set(x.above(j)))
        for a, b in combinations(ups, 2):
            if (a, b) in seen_pairs:
                continue
            if x.stratum(a).wall.span.same_lin(x.stratum(b).wall.span):
                seen_pairs.add((a, b))
                vio.add(Violation(a, "span-uniqueness", f"strata '{a}' and '{b}' above a common stratum share a wall span"))
    return sorted(vio)


def validate_consistency(x: WeightedXray) -> list[Violation]:
    """All vertices below a stratum must agree on weights modulo its wall span."""
    vio: set[Violation] = set()
    for g in x.strata:
        vs = x.vertices_below(g.id)
        if len(vs) < 2:
            continue
        span = g.wall.span

        def classes(vid: str) -> tuple[RatVector, ...]:
            ws = x.stratum(vid).vertex_data.weights
            return tuple(sorted(reduce_mod(span.basis, span.pivots, w) for w in ws))

        ref = classes(vs[0])
        for v in vs[1:]:
            if classes(v) != ref:
                vio.add(Violation(g.id, "consistency", f"weight classes at '{v}' differ from '{vs[0]}' modulo the wall span"))
    return sorted(vio)


def validate_darboux(x: WeightedXray) -> list[Violation]:
    """Local model at each vertex: walls through it match its weight cones.

    (a) for every stratum above the vertex, the tangent cone of its wall
    at the vertex point equals the cone on the weights lying in the
    wall's span; (b) every linear subset of the weights (intersection
    with a subspace spanned by weight directions) is the tangent cone of
    exactly one stratum through the vertex.
    """
    d = x.torus_rank
    vio: set[Violation] = set()
    for pid in x.vertex_ids:
        p = x.stratum(pid)
        point = p.wall.vertices[0]
        alpha = p.vertex_data.weights
        ups = [pid] + sorted(x.above(pid))
        tangent: dict[str, list[RatVector]] = {
            fid: [vsub(u, point) for u in x.stratum(fid).wall.vertices] for fid in ups
        }
        for fid in ups:
            span = x.stratum(fid).wall.span
            inspan = [w for w in alpha if span.lin_contains(w)]
            if not _cones_equal(tangent[fid], inspan, d):
                vio.add(Violation(pid, "darboux-cone", f"tangent cone of '{fid}' differs from the cone of its weights"))
        dirs = sorted({primitive_vector(w) for w in alpha if not is_zero_vector(w)})
        subsets: dict[tuple[RatVector, ...], None] = {}
        for size in range(len(dirs) + 1):
            for B in combinations(dirs, size):
                basis, pivots = rref(B)
                S = tuple(w for w in alpha if in_span(basis, pivots, w))
                subsets[S] = None
        for S in sorted(subsets):
            matches = [fid for fid in ups if _cones_equal(tangent[fid], list(S), d)]
            if len(matches) != 1:
                vio.add(
                    Violation(
                        pid,
                        "darboux-subset",
                        f"weight subset {_fmt_points(S)} is the tangent cone of {len(matches)} strata {matches}",
                    )
                )
    return sorted(vio)


def validate_all(x: WeightedXray) -> list[Violation]:
    return sorted(validate_poset(x) + validate_consistency(x) + validate_darboux(x))


def _cone_contains(gens: Sequence[RatVector], w: RatVector, dim: int) -> bool:
    """Is w a nonnegative combination of gens?  Exact, by conic Caratheodory:
    any member is a nonnegative combination of a linearly independent subset."""
    if is_zero_vector(w):
        return True
    gs = sorted({g for g in gens if not is_zero_vector(g)})
    for size in range(1, min(len(gs), dim) + 1):
        for sub in combinations(gs, size):
            gram = [tuple(vdot(a, b) for b in sub) for a in sub]
            rhs = tuple(vdot(a, w) for a in sub)
            try:
                lam = solve_square(gram, rhs)
            except ValueError:
                continue  # dependent subset
            if any(c < 0 for c in lam):
                continue
            recon = [Fraction(0)] * len(w)
            for c, g in zip(lam, sub):
                recon = [r + c * gi for r, gi in zip(recon, g)]
            if tuple(recon) == w:
                return True
    return False


def _cones_equal(a: Sequence[RatVector], b: Sequence[RatVector], dim: int) -> bool:
    return all(_cone_contains(b, v, dim) for v in a) and all(_cone_contains(a, v, dim) for v in b)


def _fmt_points(points: Iterable[RatVector]) -> str:
    return "{" + ", ".join("(" + ",".join(format_rational(c) for c in p) + ")" for p in points) + "}"


# -- affine maps ----------------------------------------------------------


def transform(x: WeightedXray, matrix: Sequence[Sequence[Fraction | int | str]], shift: Sequence[Fraction | int | str]) -> WeightedXray:
    """Apply an invertible affine map v -> A v + t to the whole X-ray.

    Walls map through the affine map, weights through the linear part.
    """
    rows = tuple(as_vec(r) for r in matrix)
    t = as_vec(shift)
    d = x.torus_rank
    if len(rows) != d or any(len(r) != d for r in rows) or len(t) != d:
        raise ValueError("affine map has wrong shape")
    if rank(rows) != d:
        raise ValueError("affine map is singular")

    def apply_pt(v: RatVector) -> RatVector:
        return tuple(vdot(r, v) + ti for r, ti in zip(rows, t))

    def apply_vec(v: RatVector) -> RatVector:
        return tuple(vdot(r, v) for r in rows)

    strata = []
    for s in x.strata:
        vd = s.vertex_data
        if vd is not None:
            vd = replace(vd, weights=tuple(sorted(apply_vec(w) for w in vd.weights)))
        strata.append(
            Stratum(
                id=s.id,
                wall=hull([apply_pt(v) for v in s.wall.vertices]),
                parents=s.parents,
                vertex_data=vd,
            )
        )
    return WeightedXray(x.torus_rank, x.half_dim, tuple(strata))


# -- interchange representation -------------------------------------------


def to_interchange(x: WeightedXray) -> dict:
    """Plain-JSON dict: rationals as "num/den" strings, strata sorted by id."""
    doc = {
        "torus_rank": x.torus_rank,
        "half_dim": x.half_dim,
        "strata": [
            {
                "id": s.id,
                "vertices": [[format_rational(c) for c in v] for v in s.wall.vertices],
                "parents": list(s.parents),
            }
            for s in x.strata
        ],
        "vertex_data": {
            s.id: {
                "weights": [[format_rational(c) for c in w] for w in s.vertex_data.weights],
                "signature": s.vertex_data.seed_signature,
                "poincare": list(s.vertex_data.seed_poincare.coeffs),
                "euler": s.vertex_data.seed_euler,
            }
            for s in x.strata
            if s.vertex_data is not None
        },
    }
    return doc


def from_interchange(doc: Mapping) -> WeightedXray:
    """Rebuild an X-ray from its interchange dict, with field-level diagnostics."""
    if not isinstance(doc, Mapping):
        raise MalformedXray("document root must be an object")
    for key in ("torus_rank", "half_dim", "strata", "vertex_data"):
        if key not in doc:
            raise MalformedXray(f"missing field '{key}'")
    d, n = doc["torus_rank"], doc["half_dim"]
    if not isinstance(d, int) or not isinstance(n, int):
        raise MalformedXray("torus_rank and half_dim must be integers")
    raw_vd = doc["vertex_data"]
    if not isinstance(raw_vd, Mapping):
        raise MalformedXray("vertex_data must be an object")

    def parse_vector(v, where: str) -> RatVector:
        if not isinstance(v, (list, tuple)):
            raise MalformedXray(f"{where}: expected a vector, got {v!r}")
        try:
            return tuple(rat(c) for c in v)
        except (ValueError, TypeError) as e:
            raise MalformedXray(f"{where}: {e}") from None

    strata = []
    seen_ids = set()
    for i, raw in enumerate(doc["strata"]):
        where = f"strata[{i}]"
        if not isinstance(raw, Mapping) or "id" not in raw or "vertices" not in raw:
            raise MalformedXray(f"{where}: needs 'id' and 'vertices'")
        sid = raw["id"]
        if not isinstance(sid, str) or not sid:
            raise MalformedXray(f"{where}: id must be a nonempty string")
        verts = [parse_vector(v, f"{where}.vertices[{j}]") for j, v in enumerate(raw["vertices"])]
        if not verts:
            raise MalformedXray(f"{where}: stratum '{sid}' has no vertices")
        parents = raw.get("parents", [])
        if not (isinstance(parents, list) and all(isinstance(p, str) for p in parents)):
            raise MalformedXray(f"{where}: parents must be a list of ids")
        wall = hull(verts)
        vertex_data = None
        if wall.dim == 0:
            if sid not in raw_vd:
                raise MalformedXray(f"vertex stratum '{sid}' has no vertex_data entry")
            entry = raw_vd[sid]
            for key in ("weights", "signature", "poincare", "euler"):
                if key not in entry:
                    raise MalformedXray(f"vertex_data['{sid}'] is missing '{key}'")
            weights = [parse_vector(w, f"vertex_data['{sid}'].weights[{j}]") for j, w in enumerate(entry["weights"])]
            sig, poin, eul = entry["signature"], entry["poincare"], entry["euler"]
            if not isinstance(sig, int) or not isinstance(eul, int):
                raise MalformedXray(f"vertex_data['{sid}']: signature and euler must be integers")
            if not (isinstance(poin, list) and all(isinstance(c, int) for c in poin)):
                raise MalformedXray(f"vertex_data['{sid}']: poincare must be a list of integer coefficients")
            vertex_data = VertexData(tuple(weights), sig, IntPolynomial(tuple(poin)), eul)
        strata.append(Stratum(id=sid, wall=wall, parents=tuple(parents), vertex_data=vertex_data))
        seen_ids.add(sid)
    stray = sorted(set(raw_vd) - {s.id for s in strata if s.vertex_data is not None})
    if stray:
        raise MalformedXray(f"vertex_data supplied for non-vertex strata: {stray}")
    return WeightedXray(d, n, tuple(strata))


def canonical_json(x: WeightedXray) -> str:
    return json.dumps(to_interchange(x), sort_keys=True, indent=2) + "\n"
