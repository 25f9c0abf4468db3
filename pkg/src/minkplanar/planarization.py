"""Planarization: the plane half-edge structure of a topological drawing.

Each drawing edge with t crossings is split into t+1 segments; each crossing
becomes a degree-4 vertex whose rotation is fixed by the sign convention.
Darts are integers: segment i yields darts 2i (from end0 to end1) and 2i+1.
Rotations are clockwise; the face walk is next(d) = sigma[twin(d)], which
traverses every face of the sphere embedding.
"""

from __future__ import annotations

from dataclasses import dataclass

from .drawing import TopologicalDrawing
from .errors import NonSphericalError


@dataclass(frozen=True)
class FaceRecord:
    fid: str
    darts: tuple[int, ...]
    deg: int
    deg_r: int
    deg_c: int

    @property
    def label(self) -> str:
        return f"{self.deg_r}-real {self.deg}-gon"


class Planarization:
    """Immutable half-edge structure over real and crossing vertices."""

    def __init__(self, drawing: TopologicalDrawing):
        self.drawing = drawing
        g = drawing.graph
        self.real_names = list(g.vertices)
        self.vert_kind: list[str] = ["real"] * len(g.vertices)
        self.vert_name: list[str] = list(g.vertices)
        self._vid = {name: i for i, name in enumerate(g.vertices)}

        # crossing vertices, keyed by the unordered edge pair
        self.crossing_vertex: dict[frozenset, int] = {}
        for e in g.edges:
            for rec in drawing.crossings[e.eid]:
                key = frozenset((e.eid, rec.other))
                if key not in self.crossing_vertex:
                    idx = len(self.vert_kind)
                    self.crossing_vertex[key] = idx
                    self.vert_kind.append("cross")
                    a, b = sorted(key)
                    self.vert_name.append(f"x({a},{b})")

        # segments, contiguous per edge in declaration order
        self.seg_parent: list[str] = []
        self.seg_ends: list[tuple[int, int]] = []
        self.seg_start: dict[str, int] = {}
        for e in g.edges:
            recs = drawing.crossings[e.eid]
            self.seg_start[e.eid] = len(self.seg_parent)
            chain = [self._vid[e.u]]
            for rec in recs:
                chain.append(self.crossing_vertex[frozenset((e.eid, rec.other))])
            chain.append(self._vid[e.v])
            for a, b in zip(chain, chain[1:]):
                self.seg_parent.append(e.eid)
                self.seg_ends.append((a, b))

        n_darts = 2 * len(self.seg_parent)
        self.rotation: list[list[int]] = [[] for _ in self.vert_kind]

        for v in g.vertices:
            vi = self._vid[v]
            for eid in drawing.rotation[v]:
                e = g.edge(eid)
                s0 = self.seg_start[eid]
                last = s0 + len(drawing.crossings[eid])
                if v == e.u:
                    self.rotation[vi].append(2 * s0)
                else:
                    self.rotation[vi].append(2 * last + 1)

        # crossing rotations from the sign convention: with sign + recorded on
        # e for f, clockwise order is (e-out, f-in, e-in, f-out)
        pos_in_list: dict[tuple[str, str], int] = {}
        for e in g.edges:
            for i, rec in enumerate(drawing.crossings[e.eid]):
                pos_in_list[(e.eid, rec.other)] = i
        for key, xi in self.crossing_vertex.items():
            a, b = sorted(key)
            # use the sign recorded on a for b
            i_a = pos_in_list[(a, b)]
            i_b = pos_in_list[(b, a)]
            sign = drawing.crossings[a][i_a].sign
            a_out = 2 * (self.seg_start[a] + i_a + 1)
            a_in = 2 * (self.seg_start[a] + i_a) + 1
            b_out = 2 * (self.seg_start[b] + i_b + 1)
            b_in = 2 * (self.seg_start[b] + i_b) + 1
            if sign > 0:
                self.rotation[xi] = [a_out, b_in, a_in, b_out]
            else:
                self.rotation[xi] = [a_out, b_out, a_in, b_in]

        self.origin = [0] * n_darts
        for s, (a, b) in enumerate(self.seg_ends):
            self.origin[2 * s] = a
            self.origin[2 * s + 1] = b

        self.sigma = [0] * n_darts
        for vi, rot in enumerate(self.rotation):
            for i, dart in enumerate(rot):
                self.sigma[dart] = rot[(i + 1) % len(rot)]

        # face orbits of d -> sigma[twin(d)]
        self.face_of_dart = [-1] * n_darts
        faces: list[FaceRecord] = []
        for d0 in range(n_darts):
            if self.face_of_dart[d0] != -1:
                continue
            orbit = []
            d = d0
            while True:
                orbit.append(d)
                self.face_of_dart[d] = len(faces)
                d = self.sigma[d ^ 1]
                if d == d0:
                    break
            deg_r = sum(1 for d in orbit if self.vert_kind[self.origin[d]] == "real")
            faces.append(
                FaceRecord(
                    fid=f"f{len(faces)}",
                    darts=tuple(orbit),
                    deg=len(orbit),
                    deg_r=deg_r,
                    deg_c=len(orbit) - deg_r,
                )
            )
        self.faces = faces

        chi = len(self.vert_kind) - len(self.seg_parent) + len(faces)
        if chi != 2:
            raise NonSphericalError(chi)

        total_real = sum(f.deg_r for f in faces)
        assert total_real == 2 * drawing.m, "sum of real face degrees must be 2m"

    # -- basic queries ----------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.vert_kind)

    @property
    def n_segments(self) -> int:
        return len(self.seg_parent)

    @property
    def n_real(self) -> int:
        return len(self.real_names)

    def twin(self, dart: int) -> int:
        return dart ^ 1

    def seg_of_dart(self, dart: int) -> int:
        return dart >> 1

    def head(self, dart: int) -> int:
        return self.origin[dart ^ 1]

    def seg_real_count(self, seg: int) -> int:
        """How many endpoints of this segment are real vertices (0, 1 or 2)."""
        a, b = self.seg_ends[seg]
        return (self.vert_kind[a] == "real") + (self.vert_kind[b] == "real")

    def face_of_seg(self, seg: int) -> tuple[int, int]:
        """Face indices on the two sides of a segment."""
        return self.face_of_dart[2 * seg], self.face_of_dart[2 * seg + 1]

    def segments_of_edge(self, eid: str) -> range:
        s0 = self.seg_start[eid]
        return range(s0, s0 + len(self.drawing.crossings[eid]) + 1)

    def vertex_index(self, name: str) -> int:
        return self._vid[name]

    def corner_opposite(self, face_idx: int, dart: int) -> int:
        """Face at the corner opposite the given face corner.

        ``dart`` must lie on the face's boundary; the corner sits at the
        dart's origin.  At a degree-4 crossing vertex this is the classic
        vertex-neighbor (shares the vertex, no edge).
        """
        v = self.origin[dart]
        rot = self.rotation[v]
        i = rot.index(dart)
        opp = rot[(i + 2) % len(rot)]
        return self.face_of_dart[opp]

    def face_index(self, fid: str) -> int:
        return int(fid[1:])


def build_planarization(d: TopologicalDrawing) -> Planarization:
    """Planarize a drawing; raises NonSphericalError if the Euler check fails."""
    return Planarization(d)


def face_census(p: Planarization) -> list[FaceRecord]:
    """All faces with their degree statistics; validates the counting identities."""
    total = sum(f.deg for f in p.faces)
    assert total == 2 * p.n_segments
    assert sum(f.deg_r for f in p.faces) == 2 * p.drawing.m
    return list(p.faces)


def census_multiset(p: Planarization) -> dict[tuple[int, int], int]:
    """Multiset of (deg, deg_r) pairs, independent of dart numbering."""
    out: dict[tuple[int, int], int] = {}
    for f in p.faces:
        key = (f.deg, f.deg_r)
        out[key] = out.get(key, 0) + 1
    return out
