"""Exact rational plane geometry and drawing importers.

Coordinates are Fractions, so every predicate (orientation, segment
intersection, angular order) is exact.  Three importers are provided:

* ``drawing_from_polylines`` -- vertices at points, edges as polylines;
  crossings, their order along each edge, signs and rotations are computed
  from the geometry.  Degenerate inputs (overlaps, touchings, triple points,
  repeated crossings of a pair) are rejected.
* ``drawing_from_faces`` -- build a crossing-free drawing from its face walks
  (each walk counterclockwise, interior on the left).
* ``fill_faces`` -- add chords inside faces of a crossing-free drawing,
  laying each face out as a convex polygon and splicing the resulting
  crossings and rotations back into the host.
"""

from __future__ import annotations

import functools
import math
from fractions import Fraction

from .drawing import CrossingRecord, Edge, TopologicalDrawing, make_drawing
from .errors import DegenerateGeometryError
from .planarization import build_planarization

Point = tuple[Fraction, Fraction]


def pt(x, y) -> Point:
    return (Fraction(x), Fraction(y))


def orient(a: Point, b: Point, c: Point) -> int:
    d = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (d > 0) - (d < 0)


def cross(u, v) -> Fraction:
    return u[0] * v[1] - u[1] * v[0]


def dot(u, v) -> Fraction:
    return u[0] * v[0] + u[1] * v[1]


def sub(a: Point, b: Point):
    return (a[0] - b[0], a[1] - b[1])


def segment_intersection(p1: Point, p2: Point, q1: Point, q2: Point):
    """Classify the intersection of two closed segments.

    Returns None (disjoint), ("proper", t, u) with both parameters strictly
    inside (0,1), or ("touch", ...) for any other contact.
    """
    r = sub(p2, p1)
    s = sub(q2, q1)
    denom = cross(r, s)
    qp = sub(q1, p1)
    if denom == 0:
        if cross(qp, r) != 0:
            return None
        # collinear: overlap iff parameter intervals intersect
        rr = dot(r, r)
        if rr == 0:
            return ("touch",)
        t0 = Fraction(dot(qp, r), rr)
        t1 = t0 + Fraction(dot(s, r), rr)
        lo, hi = min(t0, t1), max(t0, t1)
        if hi < 0 or lo > 1:
            return None
        return ("touch",)
    t = Fraction(cross(qp, s), denom)
    u = Fraction(cross(qp, r), denom)
    if t < 0 or t > 1 or u < 0 or u > 1:
        return None
    if 0 < t < 1 and 0 < u < 1:
        return ("proper", t, u)
    return ("touch", t, u)


def ccw_cmp(ref):
    """Comparator ordering direction vectors counterclockwise starting at ref."""

    def stage(w):
        c = cross(ref, w)
        d = dot(ref, w)
        if c == 0:
            if d > 0:
                return 0
            return 2
        return 1 if c > 0 else 3

    def cmp(a, b):
        sa, sb = stage(a), stage(b)
        if sa != sb:
            return -1 if sa < sb else 1
        c = cross(a, b)
        if c > 0:
            return -1
        if c < 0:
            return 1
        return 0

    return functools.cmp_to_key(cmp)


def _sort_clockwise(vectors):
    """Clockwise angular order (arbitrary starting direction)."""
    ccw = sorted(vectors, key=ccw_cmp((Fraction(1), Fraction(0))))
    ccw.reverse()
    return ccw


def drawing_from_polylines(points: dict[str, Point], edges) -> TopologicalDrawing:
    """Build a drawing from vertex points and polyline edges.

    ``edges`` is a sequence of (eid, u, v) or (eid, u, v, bends) where bends
    is a list of interior points.  Raises DegenerateGeometryError when the
    input is not a simple drawing in general position.
    """
    polys: dict[str, list[Point]] = {}
    ends: dict[str, tuple[str, str]] = {}
    order = []
    for spec in edges:
        eid, u, v = spec[0], spec[1], spec[2]
        bends = list(spec[3]) if len(spec) > 3 else []
        if u == v:
            raise DegenerateGeometryError(f"self-loop edge {eid}")
        polys[eid] = [points[u]] + bends + [points[v]]
        ends[eid] = (u, v)
        order.append(eid)

    coords = set()
    for name, p in points.items():
        if p in coords:
            raise DegenerateGeometryError("coincident vertices")
        coords.add(p)
    for eid in order:
        for b in polys[eid][1:-1]:
            if b in coords:
                raise DegenerateGeometryError(f"bend of {eid} hits a vertex")

    # crossings[(e, f)] -> (pos_e, pos_f, sign on e for f); pos = (seg idx, t)
    found: dict[tuple[str, str], tuple] = {}
    for i, e in enumerate(order):
        for f in order[i + 1 :]:
            shared = set(ends[e]) & set(ends[f])
            pe, pf = polys[e], polys[f]
            hits = []
            for a in range(len(pe) - 1):
                for b in range(len(pf) - 1):
                    res = segment_intersection(pe[a], pe[a + 1], pf[b], pf[b + 1])
                    if res is None:
                        continue
                    if res[0] == "proper":
                        hits.append(((a, res[1]), (b, res[2])))
                        continue
                    # a touch is fine only where adjacent edges meet at a
                    # shared vertex point
                    at_shared = False
                    for s in shared:
                        w = points[s]
                        if (pe[a] == w or pe[a + 1] == w) and (
                            pf[b] == w or pf[b + 1] == w
                        ):
                            at_shared = True
                            break
                    if at_shared:
                        continue
                    raise DegenerateGeometryError(
                        f"edges {e} and {f} touch non-transversally"
                    )
            if not hits:
                continue
            if shared:
                raise DegenerateGeometryError(f"adjacent edges {e},{f} cross")
            if len(hits) > 1:
                raise DegenerateGeometryError(f"edges {e},{f} cross more than once")
            (pos_e, pos_f) = hits[0]
            de = sub(pe[pos_e[0] + 1], pe[pos_e[0]])
            df = sub(pf[pos_f[0] + 1], pf[pos_f[0]])
            sign = 1 if cross(de, df) > 0 else -1
            found[(e, f)] = (pos_e, pos_f, sign)

    per_edge: dict[str, list[tuple]] = {eid: [] for eid in order}
    for (e, f), (pos_e, pos_f, sign) in found.items():
        per_edge[e].append((pos_e, f, sign))
        per_edge[f].append((pos_f, e, -sign))
    crossings = {}
    for eid in order:
        recs = sorted(per_edge[eid])
        positions = [p for p, _, _ in recs]
        if len(set(positions)) != len(positions):
            raise DegenerateGeometryError(f"triple point on edge {eid}")
        crossings[eid] = [(other, sign) for _, other, sign in recs]

    rotation = {}
    for v, p in points.items():
        dirs = []
        for eid in order:
            u0, v0 = ends[eid]
            if v == u0:
                dirs.append((sub(polys[eid][1], p), eid))
            elif v == v0:
                dirs.append((sub(polys[eid][-2], p), eid))
        vecs = [d for d, _ in dirs]
        for i, a in enumerate(vecs):
            for b in vecs[i + 1 :]:
                if cross(a, b) == 0 and dot(a, b) > 0:
                    raise DegenerateGeometryError(f"edges leave {v} in the same direction")
        ordered = _sort_clockwise(vecs)
        rotation[v] = tuple(dirs[vecs.index(w)][1] for w in ordered)

    d = make_drawing(
        list(points.keys()),
        [(eid, ends[eid][0], ends[eid][1]) for eid in order],
        rotation,
        crossings,
    )
    build_planarization(d)  # straight-line input is always spherical; asserts it
    return d


def faces_from_vertex_cycles(cycles, edges):
    """Turn vertex cycles into dart walks, resolving edge ids by endpoints.

    Only usable when no two parallel edges share an endpoint pair.
    """
    lookup = {}
    for eid, u, v in edges:
        key = frozenset((u, v))
        if key in lookup:
            raise ValueError("ambiguous parallel edge; pass dart walks instead")
        lookup[key] = eid
    walks = []
    for cyc in cycles:
        walk = []
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            walk.append((lookup[frozenset((a, b))], a))
        walks.append(walk)
    return walks


def drawing_from_faces(vertices, edges, walks) -> TopologicalDrawing:
    """Build a crossing-free drawing from counterclockwise face walks.

    ``walks``: each face as a list of darts (eid, origin vertex), in face
    order, every dart of the doubled edge set used exactly once.
    """
    edge_list = [Edge(*e) for e in edges]
    by_id = {e.eid: e for e in edge_list}
    used = set()
    next_at: dict[tuple[str, str], str] = {}
    for walk in walks:
        k = len(walk)
        for i, (eid, origin) in enumerate(walk):
            if (eid, origin) in used:
                raise ValueError(f"dart ({eid},{origin}) used twice in face walks")
            used.add((eid, origin))
            head = by_id[eid].other(origin)
            nxt_eid, nxt_origin = walk[(i + 1) % k]
            if nxt_origin != head:
                raise ValueError("face walk is not edge-connected")
            next_at[(head, eid)] = nxt_eid
    if len(used) != 2 * len(edge_list):
        raise ValueError("face walks must cover every dart exactly once")

    rotation = {}
    for v in vertices:
        incident = [e.eid for e in edge_list if v in (e.u, e.v)]
        if not incident:
            rotation[v] = ()
            continue
        rot = [incident[0]]
        while True:
            nxt = next_at[(v, rot[-1])]
            if nxt == rot[0]:
                break
            rot.append(nxt)
        if sorted(rot) != sorted(incident):
            raise ValueError(f"face walks do not close the rotation at {v}")
        rotation[v] = tuple(rot)

    d = make_drawing(vertices, edges, rotation, {})
    build_planarization(d)
    return d


def _convex_points(k: int) -> list[Point]:
    """k exact rational points in strictly convex position, counterclockwise."""
    pts = []
    scale = 1 << 20
    for i in range(k):
        ang = 2 * math.pi * i / k
        pts.append(
            (
                Fraction(round(math.cos(ang) * scale), scale),
                Fraction(round(math.sin(ang) * scale), scale),
            )
        )
    for i in range(k):
        if orient(pts[i], pts[(i + 1) % k], pts[(i + 2) % k]) <= 0:
            raise DegenerateGeometryError("convex layout failed")
    return pts


def fill_faces(base: TopologicalDrawing, fills) -> TopologicalDrawing:
    """Insert chords into faces of a crossing-free drawing.

    ``fills``: sequence of (corners, chords) where corners is the face's
    vertex cycle (counterclockwise, as walked) and chords is a list of
    (eid, i, j) corner-index pairs with non-adjacent corners.  Chords are
    drawn as straight segments in a convex layout of the face, which fixes
    their mutual crossings, the crossing order along each chord, all signs,
    and the rotation slots at the corners.
    """
    assert all(not recs for recs in base.crossings.values()), "base must be crossing-free"
    p = build_planarization(base)

    new_edges = []
    new_crossings: dict[str, list[tuple[str, int]]] = {}
    rot_insert: dict[str, list[tuple[str, list]]] = {v: [] for v in base.graph.vertices}

    for corners, chords in fills:
        k = len(corners)
        face = None
        for f in p.faces:
            if f.deg != k or f.deg_r != k:
                continue
            walk_verts = [p.vert_name[p.origin[d]] for d in f.darts]
            for shift in range(k):
                if walk_verts[shift:] + walk_verts[:shift] == list(corners):
                    face = (f, shift)
                    break
            if face:
                break
        if face is None:
            raise ValueError(f"no face with corner cycle {corners}")
        f, shift = face
        darts = list(f.darts[shift:]) + list(f.darts[:shift])
        pts = _convex_points(k)

        local_edges = []
        for eid, i, j in chords:
            if (j - i) % k in (0, 1, k - 1):
                raise ValueError(f"chord {eid} joins adjacent corners")
            local_edges.append((eid, i, j))

        # chord-vs-chord crossings in the convex layout
        hits: dict[tuple[str, str], tuple] = {}
        for a in range(len(local_edges)):
            for b in range(a + 1, len(local_edges)):
                e1, i1, j1 = local_edges[a]
                e2, i2, j2 = local_edges[b]
                if {i1, j1} & {i2, j2}:
                    continue
                res = segment_intersection(pts[i1], pts[j1], pts[i2], pts[j2])
                if res is None:
                    continue
                if res[0] != "proper":
                    raise DegenerateGeometryError("chord layout degenerate")
                d1 = sub(pts[j1], pts[i1])
                d2 = sub(pts[j2], pts[i2])
                sign = 1 if cross(d1, d2) > 0 else -1
                hits[(e1, e2)] = (res[1], res[2], sign)

        per_chord: dict[str, list[tuple]] = {eid: [] for eid, _, _ in local_edges}
        for (e1, e2), (t, u, sign) in hits.items():
            per_chord[e1].append((t, e2, sign))
            per_chord[e2].append((u, e1, -sign))
        for eid, i, j in local_edges:
            recs = sorted(per_chord[eid])
            ts = [t for t, _, _ in recs]
            if len(set(ts)) != len(ts):
                raise DegenerateGeometryError("triple point among chords")
            new_edges.append((eid, corners[i], corners[j]))
            new_crossings[eid] = [(o, s) for _, o, s in recs]

        # rotation slots: at corner i the chords go between the incoming and
        # outgoing boundary edges, clockwise = by decreasing ccw angle from
        # the outgoing boundary direction
        for i in range(k):
            here = [(eid, j) for eid, a, j in ((e, a, b) for e, a, b in local_edges) if a == i]
            here += [(eid, a) for eid, a, j in local_edges if j == i]
            if not here:
                continue
            b_in_edge = p.seg_parent[p.seg_of_dart(darts[(i - 1) % k])]
            out_dir = sub(pts[(i + 1) % k], pts[i])
            keyed = sorted(
                here,
                key=lambda it: ccw_cmp(out_dir)(sub(pts[it[1]], pts[i])),
                reverse=True,
            )
            rot_insert[corners[i]].append((b_in_edge, [eid for eid, _ in keyed]))

    rotation = {}
    for v in base.graph.vertices:
        rot = list(base.rotation[v])
        for after_edge, eids in rot_insert[v]:
            idx = rot.index(after_edge)
            rot[idx + 1 : idx + 1] = eids
        rotation[v] = tuple(rot)

    edges_all = [(e.eid, e.u, e.v) for e in base.graph.edges] + new_edges
    crossings_all = {e.eid: [] for e in base.graph.edges}
    crossings_all.update(new_crossings)
    d = make_drawing(base.graph.vertices, edges_all, rotation, crossings_all)
    build_planarization(d)
    return d
