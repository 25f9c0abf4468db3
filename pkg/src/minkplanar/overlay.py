"""Red-subgraph overlay: faces of the plane red subgraph inside a full drawing.

Given a min-1-planar drawing and its red/green coloring, the sphere minus the
red curves decomposes into regions.  Each region is a union of planarization
faces glued across green segments; its boundary consists of one or more
closed walks along red darts (several walks when the red subgraph is
disconnected around the region).
"""

from __future__ import annotations

from dataclasses import dataclass

from .analysis import Coloring
from .drawing import TopologicalDrawing
from .planarization import Planarization, build_planarization


@dataclass
class RedWalk:
    darts: tuple[int, ...]
    real_sequence: tuple[str, ...]  # real vertices in traversal order
    region: int

    @property
    def real_degree(self) -> int:
        return len(self.real_sequence)


class RedOverlay:
    def __init__(self, d: TopologicalDrawing, coloring: Coloring):
        self.drawing = d
        self.coloring = coloring
        self.p: Planarization = build_planarization(d)
        p = self.p

        self.is_red_seg = [
            coloring.color[p.seg_parent[s]] == "red" for s in range(p.n_segments)
        ]

        # regions: union-find over faces, glued across green segments
        parent = list(range(len(p.faces)))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for s in range(p.n_segments):
            if not self.is_red_seg[s]:
                a, b = p.face_of_seg(s)
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[ra] = rb
        roots: dict[int, int] = {}
        self.region_of_face = []
        for fi in range(len(p.faces)):
            r = find(fi)
            if r not in roots:
                roots[r] = len(roots)
            self.region_of_face.append(roots[r])
        self.n_regions = len(roots)

        # red boundary walks: orbits of "next red dart around the region"
        def red_next(dart: int) -> int:
            w = p.sigma[dart ^ 1]
            while not self.is_red_seg[w >> 1]:
                w = p.sigma[w]
            return w

        self.walks: list[RedWalk] = []
        self.walk_pos_of_dart: dict[int, tuple[int, int]] = {}
        seen = set()
        for s in range(p.n_segments):
            if not self.is_red_seg[s]:
                continue
            for d0 in (2 * s, 2 * s + 1):
                if d0 in seen:
                    continue
                orbit = []
                d = d0
                while True:
                    orbit.append(d)
                    seen.add(d)
                    d = red_next(d)
                    if d == d0:
                        break
                reals = []
                for i, dd in enumerate(orbit):
                    self.walk_pos_of_dart[dd] = (len(self.walks), i)
                    if p.vert_kind[p.origin[dd]] == "real":
                        reals.append(p.vert_name[p.origin[dd]])
                region = self.region_of_face[p.face_of_dart[orbit[0]]]
                self.walks.append(RedWalk(tuple(orbit), tuple(reals), region))

        self.region_walks: list[list[int]] = [[] for _ in range(self.n_regions)]
        for wi, w in enumerate(self.walks):
            self.region_walks[w.region].append(wi)

    def region_degree(self, region: int) -> int:
        """Real-vertex traversals over all boundary walks of the region."""
        return sum(self.walks[wi].real_degree for wi in self.region_walks[region])

    def has_red_dart(self, vid: str) -> bool:
        vi = self.p.vertex_index(vid)
        return any(self.is_red_seg[d >> 1] for d in self.p.rotation[vi])

    def red_dart_after(self, gamma_dart: int) -> int:
        """First red dart at-or-clockwise-after a dart at the same vertex."""
        w = gamma_dart
        while not self.is_red_seg[w >> 1]:
            w = self.p.sigma[w]
        return w

    def green_segments_in_region(self, region: int) -> list[int]:
        p = self.p
        return [
            s
            for s in range(p.n_segments)
            if not self.is_red_seg[s]
            and self.region_of_face[p.face_of_dart[2 * s]] == region
        ]

    def triangulated(self) -> bool:
        """Every region a disk bounded by a single 3-real walk."""
        for region in range(self.n_regions):
            wids = self.region_walks[region]
            if len(wids) != 1 or self.walks[wids[0]].real_degree != 3:
                return False
        return True
