"""Extremal drawing families and bundled assets.

Every generator returns a validated TopologicalDrawing; the exact counts
(n, m, crossings, heavy edges at the family's budget) are fixed identities
that the test suite re-verifies through the analysis module.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .drawing import TopologicalDrawing, delete_edge, make_drawing, parse_drawing
from .errors import DegenerateGeometryError, UnknownAssetError
from .geometry import (
    drawing_from_faces,
    drawing_from_polylines,
    faces_from_vertex_cycles,
    fill_faces,
    pt,
)
from .planarization import build_planarization

ASSET_NAMES = ("pentagon-pentagram", "fig1-a", "fig1-b", "k55-min2", "min3-cell")


@dataclass(frozen=True)
class Manifest:
    n: int
    m: int
    crossings: int
    k: int
    heavy: int

    def line(self) -> str:
        return (
            f"EXPECT n={self.n} m={self.m} crossings={self.crossings}"
            f" heavy@{self.k}={self.heavy}"
        )


def measure(d: TopologicalDrawing, k: int) -> Manifest:
    heavy = sum(1 for e in d.graph.edges if d.cr(e.eid) > k)
    return Manifest(d.n, d.m, d.crossing_count(), k, heavy)


# ---------------------------------------------------------------------------
# optimal 1-planar family: pseudo double wheel quadrangulation + diagonals
# ---------------------------------------------------------------------------


def gen_optimal_1planar(t: int) -> TopologicalDrawing:
    """Two hubs plus a 2t-cycle, every quadrangle filled with a crossing pair.

    n = 2t + 2 and m = 8t = 4n - 8; every crossing edge crosses exactly once.
    """
    if t < 3:
        raise ValueError("t must be at least 3")
    c = [f"c{i}" for i in range(2 * t)]
    verts = ["p", "q"] + c
    edges = []
    for i in range(2 * t):
        edges.append((f"r{i}", c[i], c[(i + 1) % (2 * t)]))
    for i in range(t):
        edges.append((f"sp{i}", "p", c[2 * i]))
        edges.append((f"sq{i}", "q", c[(2 * i + 1) % (2 * t)]))

    cycles = []
    for i in range(t):
        a, b, cc = c[2 * i], c[(2 * i + 1) % (2 * t)], c[(2 * i + 2) % (2 * t)]
        cycles.append(["p", a, b, cc])
    for i in range(t):
        a, b, cc = c[(2 * i + 1) % (2 * t)], c[(2 * i + 2) % (2 * t)], c[(2 * i + 3) % (2 * t)]
        cycles.append(["q", cc, b, a])
    walks = faces_from_vertex_cycles(cycles, edges)
    base = drawing_from_faces(verts, edges, walks)

    fills = []
    for i, cyc in enumerate(cycles):
        fills.append((tuple(cyc), [(f"d{i}a", 0, 2), (f"d{i}b", 1, 3)]))
    return fill_faces(base, fills)


# ---------------------------------------------------------------------------
# pentagon barrels (dodecahedron chain) and the optimal 2-planar filling
# ---------------------------------------------------------------------------


def pentagon_barrel_base(sections: int):
    """Chain of `sections` dodecahedral cells glued along pentagon faces.

    Returns (drawing, face_cycles): a planar pentagonalization with
    n = 15*sections + 5 vertices and 10*sections + 2 pentagon faces.
    """
    if sections < 1:
        raise ValueError("sections must be at least 1")
    c = sections

    def T(j, i):
        return f"t{j}_{i % 5}"

    def U(j, i):
        return f"u{j}_{i % 5}"

    def L(j, i):
        return f"l{j}_{i % 5}"

    verts = []
    for j in range(1, c + 2):
        verts += [T(j, i) for i in range(5)]
    for j in range(1, c + 1):
        verts += [U(j, i) for i in range(5)]
        verts += [L(j, i) for i in range(5)]

    edges = []
    for j in range(1, c + 2):
        for i in range(5):
            edges.append((f"R{j}_{i}", T(j, i), T(j, i + 1)))
    for j in range(1, c + 1):
        for i in range(5):
            edges.append((f"A{j}_{i}", T(j, i), U(j, i)))
            edges.append((f"Za{j}_{i}", U(j, i), L(j, i)))
            edges.append((f"Zb{j}_{i}", L(j, i), U(j, i + 1)))
            edges.append((f"B{j}_{i}", L(j, i), T(j + 1, i)))

    cycles = [[T(1, 4 - i) for i in range(5)]]  # top cap, reversed
    for j in range(1, c + 1):
        for i in range(5):
            cycles.append([T(j, i), T(j, i + 1), U(j, i + 1), L(j, i), U(j, i)])
        for i in range(5):
            cycles.append([L(j, i), U(j, i + 1), L(j, i + 1), T(j + 1, i + 1), T(j + 1, i)])
    cycles.append([T(c + 1, i) for i in range(5)])  # bottom cap

    walks = faces_from_vertex_cycles(cycles, edges)
    return drawing_from_faces(verts, edges, walks), cycles


def _fill_pentagons(base, cycles, chords):
    fills = []
    for fi, cyc in enumerate(cycles):
        fills.append((tuple(cyc), [(f"F{fi}_{i}", a, b) for i, (a, b) in enumerate(chords)]))
    return fill_faces(base, fills)


def gen_optimal_2planar_barrel(sections: int) -> TopologicalDrawing:
    """Pentagon barrel with a pentagram in every face: m = 5n - 10, all cr = 2."""
    base, cycles = pentagon_barrel_base(sections)
    return _fill_pentagons(base, cycles, [(i, (i + 2) % 5) for i in range(5)])


def gen_optimal_2planar_dodeca() -> TopologicalDrawing:
    """The dodecahedron case: n = 20, m = 90, 60 crossings."""
    return gen_optimal_2planar_barrel(1)


# ---------------------------------------------------------------------------
# truncated icosahedron, filled per the optimal min-2 construction
# ---------------------------------------------------------------------------


def _icosahedron():
    verts = ["a"] + [f"u{i}" for i in range(5)] + [f"w{i}" for i in range(5)] + ["z"]
    U = lambda i: f"u{i % 5}"
    W = lambda i: f"w{i % 5}"
    edges = []
    for i in range(5):
        edges.append((f"au{i}", "a", U(i)))
        edges.append((f"uu{i}", U(i), U(i + 1)))
        edges.append((f"uw{i}", U(i), W(i)))
        edges.append((f"wu{i}", W(i), U(i + 1)))
        edges.append((f"ww{i}", W(i), W(i + 1)))
        edges.append((f"zw{i}", "z", W(i)))
    cycles = []
    for i in range(5):
        cycles.append(["a", U(i), U(i + 1)])
        cycles.append([U(i + 1), U(i), W(i)])
        cycles.append([W(i), W(i + 1), U(i + 1)])
        cycles.append(["z", W(i + 1), W(i)])
    walks = faces_from_vertex_cycles(cycles, edges)
    return drawing_from_faces(verts, edges, walks)


def _truncate(d: TopologicalDrawing):
    """Cut every corner: vertices become polygons, faces become 2k-gons.

    Returns (drawing, vertex_polygons, face_polygons) where the polygons are
    the corner cycles of the truncated drawing's faces.
    """
    p = build_planarization(d)

    def vname(dart: int) -> str:
        origin = p.vert_name[p.origin[dart]]
        eid = p.seg_parent[dart >> 1]
        return f"{origin}.{eid}"

    verts = []
    edges = []
    for v in range(p.n_vertices):
        for dart in p.rotation[v]:
            verts.append(vname(dart))
    for s in range(p.n_segments):
        eid = p.seg_parent[s]
        edges.append((f"m_{eid}", vname(2 * s), vname(2 * s + 1)))
    for v in range(p.n_vertices):
        rot = p.rotation[v]
        name = p.vert_name[v]
        for i in range(len(rot)):
            edges.append(
                (f"c_{name}_{i}", vname(rot[i]), vname(rot[(i + 1) % len(rot)]))
            )

    cut_cycles = []
    for v in range(p.n_vertices):
        rot = p.rotation[v]
        cut_cycles.append([vname(dd) for dd in reversed(rot)])
    hex_cycles = []
    for f in p.faces:
        cyc = []
        for dart in f.darts:
            cyc.append(vname(dart))
            cyc.append(vname(dart ^ 1))
        hex_cycles.append(cyc)
    walks = faces_from_vertex_cycles(cut_cycles + hex_cycles, edges)
    return drawing_from_faces(verts, edges, walks), cut_cycles, hex_cycles


def gen_trunc_icosa_filled() -> TopologicalDrawing:
    """Truncated icosahedron (n=60, m=90) plus 5 edges per pentagon and 7 per hexagon.

    m = 290 = 5n - 10; the two edges crossing each hexagon diagonal have three
    crossings and no two of those meet, so the drawing is min-2 but not 2-planar.
    """
    icosa = _icosahedron()
    trunc, pentagons, hexagons = _truncate(icosa)
    fills = []
    for fi, cyc in enumerate(pentagons):
        fills.append((tuple(cyc), [(f"P{fi}_{i}", i, (i + 2) % 5) for i in range(5)]))
    for fi, cyc in enumerate(hexagons):
        chords = [(f"H{fi}_{i}", i, (i + 2) % 6) for i in range(6)]
        # the long diagonal: deterministic choice of a maximum-distance pair
        best = min(range(3), key=lambda i: tuple(sorted((cyc[i], cyc[i + 3]))))
        chords.append((f"H{fi}_d", best, best + 3))
        fills.append((tuple(cyc), chords))
    return fill_faces(trunc, fills)


# ---------------------------------------------------------------------------
# heavy-edge lower bound families
# ---------------------------------------------------------------------------

# pentagon gadget: chords 1-3, 1-4, 2-5 (0-indexed (0,2), (0,3), (1,4)); the
# (1,4) chord crosses the other two and is the pentagon's single heavy edge
_HEAVY1_CHORDS = [(0, 2), (0, 3), (1, 4)]

# hexagon gadget: heavy (0,2) and (3,5) with three light crossers each
_HEAVY2_CHORDS = [(0, 2), (3, 5), (1, 3), (1, 5), (0, 4), (2, 4), (1, 4)]


def gen_heavy_lb_k1(reps: int = 0) -> TopologicalDrawing:
    """Pentagonalization with one heavy edge (cr = 2) per pentagon at k = 1."""
    base, cycles = pentagon_barrel_base(reps + 1)
    return _fill_pentagons(base, cycles, _HEAVY1_CHORDS)


def gen_heavy_lb_k2(reps: int = 6) -> TopologicalDrawing:
    """Hexagon drum with two independent heavy edges (cr = 3) per hexagon at k = 2."""
    r = reps
    if r < 3:
        raise ValueError("reps must be at least 3")
    a = [f"a{i}" for i in range(2 * r)]
    b = [f"b{i}" for i in range(2 * r)]
    edges = []
    for i in range(2 * r):
        edges.append((f"oa{i}", a[i], a[(i + 1) % (2 * r)]))
        edges.append((f"ob{i}", b[i], b[(i + 1) % (2 * r)]))
    for i in range(r):
        edges.append((f"s{i}", a[2 * i], b[2 * i]))
    cycles = []
    for i in range(r):
        cycles.append(
            [
                a[2 * i],
                a[2 * i + 1],
                a[(2 * i + 2) % (2 * r)],
                b[(2 * i + 2) % (2 * r)],
                b[2 * i + 1],
                b[2 * i],
            ]
        )
    cycles.append([a[2 * r - 1 - i] for i in range(2 * r)])  # outer cap
    cycles.append(list(b))  # inner cap
    walks = faces_from_vertex_cycles(cycles, edges)
    base = drawing_from_faces(a + b, edges, walks)
    fills = []
    for fi in range(r):
        fills.append(
            (tuple(cycles[fi]), [(f"G{fi}_{i}", x, y) for i, (x, y) in enumerate(_HEAVY2_CHORDS)])
        )
    return fill_faces(base, fills)


def gen_heavy_lb_k3(reps: int = 1) -> TopologicalDrawing:
    """Pole blocks repeated between two shared poles (the chain construction)."""
    return gen_min3_chain(reps)


def gen_heavy_lower_bound(k: int, reps: int | None = None) -> TopologicalDrawing:
    if k == 1:
        return gen_heavy_lb_k1(0 if reps is None else reps)
    if k == 2:
        return gen_heavy_lb_k2(6 if reps is None else reps)
    if k == 3:
        return gen_heavy_lb_k3(1 if reps is None else reps)
    raise ValueError("k must be 1, 2 or 3")


# ---------------------------------------------------------------------------
# min-3 chain (dense multigraph family beating the 3-planar bound)
# ---------------------------------------------------------------------------


def gen_min3_chain(h: int) -> TopologicalDrawing:
    """h copies of the 8-vertex 33-edge cell around shared poles u, v,
    interleaved with h parallel u-v edges: n = 6h + 2, m = 34h."""
    if h < 1:
        raise ValueError("h must be at least 1")
    cell = load_asset("min3-cell")
    return _chain_of_cells(cell, h)


def _chain_of_cells(cell: TopologicalDrawing, h: int) -> TopologicalDrawing:
    """Compose h copies of a (gadget + pole edge) cell around shared poles.

    The cell must contain vertices "u" and "v" and a crossing-free edge "uv".
    Copy i renames every other vertex x to x_i and edge e to e_i.
    """
    pole_u, pole_v = "u", "v"
    uv = "uv"

    def vmap(name: str, i: int) -> str:
        return name if name in (pole_u, pole_v) else f"{name}_{i}"

    def emap(eid: str, i: int) -> str:
        return f"{eid}_{i}"

    verts = [pole_u, pole_v]
    for i in range(h):
        verts += [vmap(v, i) for v in cell.graph.vertices if v not in (pole_u, pole_v)]
    edges = []
    for i in range(h):
        for e in cell.graph.edges:
            edges.append((emap(e.eid, i), vmap(e.u, i), vmap(e.v, i)))
    crossings = {}
    for i in range(h):
        for e in cell.graph.edges:
            crossings[emap(e.eid, i)] = [
                (emap(r.other, i), r.sign) for r in cell.crossings[e.eid]
            ]

    rotation = {}
    for i in range(h):
        for v in cell.graph.vertices:
            if v in (pole_u, pole_v):
                continue
            rotation[vmap(v, i)] = tuple(emap(x, i) for x in cell.rotation[v])

    # at the poles: cut each cell's cyclic rotation at its uv entry and chain
    # the blocks; seen from the other pole the lenses appear in reversed order
    def block(pole: str) -> list[str]:
        rot = list(cell.rotation[pole])
        k = rot.index(uv)
        return rot[k + 1 :] + rot[:k]

    ru, rv = [], []
    for i in range(h):
        ru += [emap(x, i) for x in block(pole_u)] + [emap(uv, i)]
    order_v = [0] + list(range(h - 1, 0, -1))
    for i in order_v:
        rv += [emap(x, i) for x in block(pole_v)] + [emap(uv, (i - 1) % h)]
    rotation[pole_u] = tuple(ru)
    rotation[pole_v] = tuple(rv)

    d = make_drawing(verts, edges, rotation, crossings)
    build_planarization(d)
    return d


# ---------------------------------------------------------------------------
# randomized corpora (exploratory; used heavily by the test suite)
# ---------------------------------------------------------------------------


def random_drawing(
    seed: int, n_min: int = 5, n_max: int = 11, extra_max: int = 7, max_crossings: int = 40
) -> TopologicalDrawing:
    """Random straight-line drawing in general position, drawing-connected.

    Vertices at distinct integer points, a random spanning tree plus random
    extra edges; degenerate placements are resampled.
    """
    rng = random.Random(seed)
    for _ in range(400):
        n = rng.randint(n_min, n_max)
        pts = set()
        while len(pts) < n:
            pts.add((rng.randint(0, 50), rng.randint(0, 50)))
        pts = sorted(pts)
        rng.shuffle(pts)
        points = {f"v{i}": pt(*pts[i]) for i in range(n)}
        names = list(points)
        edges = []
        pairs = set()
        for i in range(1, n):
            j = rng.randrange(i)
            edges.append((f"e{len(edges)}", names[i], names[j]))
            pairs.add(frozenset((names[i], names[j])))
        for _ in range(rng.randint(0, extra_max)):
            a, b = rng.sample(names, 2)
            if frozenset((a, b)) in pairs:
                continue
            pairs.add(frozenset((a, b)))
            edges.append((f"e{len(edges)}", a, b))
        try:
            d = drawing_from_polylines(points, edges)
        except DegenerateGeometryError:
            continue
        if d.crossing_count() <= max_crossings:
            return d
    raise RuntimeError("could not sample a random drawing")


def random_min1_drawing(seed: int, t_min: int = 3, t_max: int = 6) -> TopologicalDrawing:
    """Random min-1-planar drawing: an optimal 1-planar wheel with random deletions.

    Deletions keep the drawing connected and leave every vertex at least one
    crossing-free edge, so the red subgraph stays spanning.
    """
    from .drawing import _drawing_connected

    rng = random.Random(seed)
    t = rng.randint(t_min, t_max)
    d = gen_optimal_1planar(t)
    eids = [e.eid for e in d.graph.edges]
    rng.shuffle(eids)
    n_del = rng.randint(0, len(eids) // 2)
    for eid in eids[:n_del]:
        if eid not in {e.eid for e in d.graph.edges}:
            continue
        trial = delete_edge(d, eid)
        if not _drawing_connected(trial):
            continue
        ok = True
        for v in trial.graph.vertices:
            if not any(
                trial.cr(x) == 0 for x in trial.rotation[v]
            ):
                ok = False
                break
        if ok:
            d = trial
    return d


# ---------------------------------------------------------------------------
# bundled assets
# ---------------------------------------------------------------------------


def _asset_dir() -> Path:
    import os

    override = os.environ.get("MKP_ASSET_DIR")
    if override:
        return Path(override)
    return Path(resources.files("minkplanar") / "assets")


def asset_text(name: str) -> str:
    if name not in ASSET_NAMES:
        raise UnknownAssetError(f"unknown asset {name!r}; known: {', '.join(ASSET_NAMES)}")
    path = _asset_dir() / f"{name}.mkpd"
    return path.read_text()


def load_asset(name: str):
    """Load a bundled drawing; fig1-pair loads both drawings of the figure."""
    if name == "fig1-pair":
        return (parse_drawing(asset_text("fig1-a")), parse_drawing(asset_text("fig1-b")))
    return parse_drawing(asset_text(name))


GENERATOR_FAMILIES = {
    "opt1planar": lambda size: gen_optimal_1planar(size if size else 3),
    "opt2planar-dodeca": lambda size: gen_optimal_2planar_dodeca(),
    "opt2planar-barrel": lambda size: gen_optimal_2planar_barrel(size if size else 1),
    "trunc-icosa-filled": lambda size: gen_trunc_icosa_filled(),
    "min3-chain": lambda size: gen_min3_chain(size if size else 1),
    "heavy-lb-k1": lambda size: gen_heavy_lb_k1(size if size else 0),
    "heavy-lb-k2": lambda size: gen_heavy_lb_k2(size if size else 6),
    "heavy-lb-k3": lambda size: gen_heavy_lb_k3(size if size else 1),
}

FAMILY_BUDGET = {
    "opt1planar": 1,
    "opt2planar-dodeca": 2,
    "opt2planar-barrel": 2,
    "trunc-icosa-filled": 2,
    "min3-chain": 3,
    "heavy-lb-k1": 1,
    "heavy-lb-k2": 2,
    "heavy-lb-k3": 3,
}


def generate(family: str, size: int | None = None) -> TopologicalDrawing:
    if family not in GENERATOR_FAMILIES:
        raise ValueError(f"unknown family {family!r}; known: {', '.join(GENERATOR_FAMILIES)}")
    return GENERATOR_FAMILIES[family](size)
