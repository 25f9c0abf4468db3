"""Dev script: construct the bundled assets and verify their invariants.

Run from the repo root; writes .mkpd files into src/minkplanar/assets/.
"""

from fractions import Fraction

from minkplanar.drawing import serialize_drawing, validate_simplicity
from minkplanar.geometry import drawing_from_polylines, pt
from minkplanar.analysis import (
    classify_edges,
    is_min_k_planar,
    is_k_planar,
    bundle_proper_check,
)
from minkplanar.generators import measure


def F(x):
    return Fraction(x).limit_denominator(10**6)


def P(x, y):
    return (F(x), F(y))


def arc_points(a: float, b: float, height: float):
    """Trapezoid arc between spine positions a < b at signed height."""
    return [P(a + 0.4, height), P(b - 0.4, height)]


# ---------------------------------------------------------------------------
# min3-cell: 8 vertices on a spine, 4 heavy edges, 33 edges + the pole edge
# ---------------------------------------------------------------------------

def build_min3_cell():
    names = ["u", "x1", "x2", "x3", "x4", "x5", "x6", "v"]
    points = {}
    for i, nm in enumerate(names):
        points[nm] = P(4 * i, 0)

    edges = []

    def spine():
        for i in range(7):
            edges.append((f"s{i}", names[i], names[i + 1]))

    def arc(eid, i, j, h):
        edges.append((eid, names[i], names[j], arc_points(4 * i, 4 * j, h)))

    spine()
    # top page: heavy fan at u
    arc("h03", 0, 3, 6.0)
    arc("h04", 0, 4, 7.0)
    arc("h05", 0, 5, 8.0)
    # top lights: copies crossing all three (or two) heavies
    for c in range(5):
        arc(f"t16_{c}", 1, 6, 9.5 + 0.4 * c)
    for c in range(5):
        arc(f"t17_{c}", 1, 7, 12.0 + 0.4 * c)
    for c in range(5):
        arc(f"t26_{c}", 2, 6, 2.0 + 0.4 * c)
    for c in range(3):
        arc(f"t25_{c}", 2, 5, 0.5 + 0.4 * c)
    # bottom page: heavy x2-v plus its four light crossers
    arc("h27", 2, 7, -6.0)
    arc("b13", 1, 3, -1.0)
    arc("b14", 1, 4, -2.0)
    arc("b15", 1, 5, -3.0)
    arc("b06", 0, 6, -8.0)
    # the pole edge, crossing-free below everything
    arc("uv", 0, 7, -11.0)

    d = drawing_from_polylines(points, edges)
    return d


def check_min3_cell(d):
    rep = validate_simplicity(d)
    assert rep.ok, rep.violations
    m = measure(d, 3)
    print("min3-cell:", m)
    assert d.n == 8 and d.m == 34, (d.n, d.m)
    ok, wit = is_min_k_planar(d, 3)
    assert ok, wit
    cls = classify_edges(d, 3)
    heavies = cls.heavy_edges()
    print("heavy:", [(h, cls.cr[h]) for h in heavies])
    assert len(heavies) == 4
    hset = set(heavies)
    for p in d.crossing_pairs():
        assert not (p <= hset), f"heavy pair crosses: {p}"
    assert d.cr("uv") == 0
    return m


# ---------------------------------------------------------------------------
# fig1: two drawings of one graph (walls + X gadgets), apex vertex "6"
# ---------------------------------------------------------------------------

def build_fig1(variant: str):
    pts = {}
    edges = []

    def add(eid, u, v, bends=()):
        edges.append((eid, u, v, [P(*b) for b in bends]))

    # wall 1 (left of the apex): 2x3 grid ladder
    #   top row 1,2,3 ; bottom row 11,12,13
    for i, x in enumerate((-26, -20, -14)):
        pts[str(1 + i)] = P(x, 6)
        pts[str(11 + i)] = P(x, 0)
    # wall 2 (right): top 21,22,23 bottom 31,32,33
    for i, x in enumerate((14, 20, 26)):
        pts[str(21 + i)] = P(x, 6)
        pts[str(31 + i)] = P(x, 0)
    pts["6"] = P(0, 14)
    pts["7"] = P(-34, 3)
    pts["8"] = P(34, 3)

    for base in (1, 21):
        a, b, c = str(base), str(base + 1), str(base + 2)
        d_, e_, f_ = str(base + 10), str(base + 11), str(base + 12)
        add(f"top{base}a", a, b)
        add(f"top{base}b", b, c)
        add(f"bot{base}a", d_, e_)
        add(f"bot{base}b", e_, f_)
        add(f"rung{base}a", a, d_)
        add(f"rung{base}b", b, e_)
        add(f"rung{base}c", c, f_)

    # connectors: apex to the inner top corners, anchors to outer bottom corners
    add("c6w1", "6", "3", [(-8, 10)])
    add("c6w2", "6", "21", [(8, 10)])
    add("c7", "7", "11", [(-31, 0.5)])
    add("c8", "8", "33", [(31, 0.5)])

    # three double-X gadgets at the bottom (two crossings each)
    for g, x0 in enumerate((-10, -2, 6)):
        s, t = f"g{g}s", f"g{g}t"
        pts[s] = P(x0, -4)
        pts[t] = P(x0 + 6, -4)
        add(f"x{g}L", s, t)
        for r in (1, 2):
            p_, q_ = f"g{g}p{r}", f"g{g}q{r}"
            pts[p_] = P(x0 + 2 * r, -2)
            pts[q_] = P(x0 + 2 * r, -7)
            add(f"x{g}v{r}", p_, q_)
    add("cg0", "g0s", "13", [(-12, -2.5)])
    add("cg1", "g1s", "g0t")
    add("cg2", "g2s", "g1t")

    # the two heavy edges from the apex
    if variant == "b":
        # through the rungs: three crossings each
        add("h1", "6", "7", [(-12, 3), (-28, 3)])
        add("h2", "6", "8", [(12, 3), (28, 3)])
    else:
        # around the walls: one rung plus one bottom edge each
        add("h1", "6", "7", [(-28, 10), (-28, 4), (-23, 3), (-23, -2), (-30, -2)])
        add("h2", "6", "8", [(28, 10), (28, 4), (23, 3), (23, -2), (30, -2)])

    return drawing_from_polylines(pts, edges)


def check_fig1():
    a = build_fig1("a")
    b = build_fig1("b")
    assert validate_simplicity(a).ok
    assert validate_simplicity(b).ok
    assert {e.eid for e in a.graph.edges} == {e.eid for e in b.graph.edges}
    print("fig1-a:", measure(a, 2), "2planar:", is_k_planar(a, 2)[0])
    print("fig1-b:", measure(b, 2), "min2:", is_min_k_planar(b, 2)[0], "2planar:", is_k_planar(b, 2)[0])
    clsb = classify_edges(b, 2)
    print("fig1-b heavies:", [(h, clsb.cr[h]) for h in clsb.heavy_edges()])
    assert a.crossing_count() == 10, a.crossing_count()
    assert b.crossing_count() == 12, b.crossing_count()
    assert is_k_planar(a, 2)[0]
    assert is_min_k_planar(b, 2)[0] and not is_k_planar(b, 2)[0]
    heav = clsb.heavy_edges()
    assert sorted(heav) == ["h1", "h2"]
    return a, b


# ---------------------------------------------------------------------------
# k55: bipartite wheel quadrangulation + 9 routed edges
# ---------------------------------------------------------------------------

def build_k55():
    import math

    pts = {"a0": P(0, 0), "b0": P(0, -25)}
    cyc = ["b1", "a2", "b2", "a3", "b3", "a4", "b4", "a1"]
    for i, nm in enumerate(cyc):
        ang = math.radians(90 - 45 * i)
        pts[nm] = P(round(10 * math.cos(ang), 3), round(10 * math.sin(ang), 3))

    edges = []

    def add(eid, u, v, bends=()):
        edges.append((eid, u, v, [P(*b) for b in bends]))

    # cycle (a planar quadrangulation skeleton: cycle + inner/outer spokes)
    for i in range(8):
        add(f"c{i}", cyc[i], cyc[(i + 1) % 8])
    for j in (1, 2, 3, 4):
        add(f"p{j}", "a0", f"b{j}")
    add("q3", "b0", "a3", [(5, -14)])
    add("q4", "b0", "a4", [(-5, -14)])
    add("q2", "b0", "a2", [(15, -9), (13.5, 4)])
    add("q1", "b0", "a1", [(-15, -9), (-13.5, 4)])

    # the nine remaining K55 edges, routed through the skeleton's faces
    add("e_a1b2", "a1", "b2", [(0, 12.5), (12, 9), (11.8, 4)])
    add("e_a2b3", "a2", "b3", [(5.2, 1.5), (3.4, -3)])
    add("e_a4b1", "a4", "b1", [(-11, -1), (-11.8, 4), (-12, 9), (0, 12.2)])
    add("e_a0b0", "a0", "b0", [(3.5, -5), (2, -9.3)])
    add("e_a1b3", "a1", "b3", [(-3, 1.5), (-3, -6)])
    add("e_a2b4", "a2", "b4", [(1.5, 5.2), (-5, 2.5)])
    add("e_a3b1", "a3", "b1", [(13, 0), (12, 8)])
    add("e_a4b2", "a4", "b2", [(-2, -12), (4.5, -9.8), (3, -6.5)])
    add(
        "e_a3b4",
        "a3",
        "b4",
        [(14, -3), (17, 6), (0, 17), (-17, 6), (-12.2, 1), (-11.05, -0.8)],
    )

    return drawing_from_polylines(pts, edges)


def check_k55(d):
    assert validate_simplicity(d).ok
    print("k55:", measure(d, 2), "min2:", is_min_k_planar(d, 2)[0])
    cls = classify_edges(d, 2)
    hist = {}
    for e, c in cls.cr.items():
        hist[c] = hist.get(c, 0) + 1
    print("k55 cr histogram:", dict(sorted(hist.items())))
    assert is_min_k_planar(d, 2)[0]


if __name__ == "__main__":
    cell = build_min3_cell()
    check_min3_cell(cell)
    check_fig1()


# ---------------------------------------------------------------------------
# k55 via 2-page book layout (searched offline; min-2 by construction)
# ---------------------------------------------------------------------------

K55_ORDER = ["b0", "b4", "a1", "a3", "b2", "b3", "a0", "b1", "a4", "a2"]
K55_PAGES = {
    "a0-b0": 0, "a0-b1": 0, "a0-b2": 0, "a0-b3": 0, "a0-b4": 0,
    "a1-b0": 0, "a1-b1": 1, "a1-b2": 0, "a1-b3": 0, "a1-b4": 0,
    "a2-b0": 1, "a2-b1": 0, "a2-b2": 1, "a2-b3": 1, "a2-b4": 1,
    "a3-b0": 1, "a3-b1": 0, "a3-b2": 0, "a3-b3": 0, "a3-b4": 1,
    "a4-b0": 0, "a4-b1": 0, "a4-b2": 1, "a4-b3": 1, "a4-b4": 0,
}


def build_k55_book():
    pos = {v: 5 * i for i, v in enumerate(K55_ORDER)}
    pts = {v: P(pos[v], 0) for v in K55_ORDER}
    edges = []
    for idx, (name, page) in enumerate(sorted(K55_PAGES.items())):
        u, v = name.split("-")
        a, b = sorted((pos[u], pos[v]))
        # nesting-compatible heights: longer spans arc higher
        h = (1.0 + (b - a) * 0.25 + idx * 0.07) * (1 if page == 0 else -1)
        bends = arc_points(a, b, h)
        if pos[u] > pos[v]:
            bends = bends[::-1]
        edges.append((name.replace("-", "_"), u, v, bends))
    return drawing_from_polylines(pts, edges)


def check_k55_book(d):
    from minkplanar.drawing import validate_simplicity as vs
    assert vs(d).ok
    ok, wit = is_min_k_planar(d, 2)
    print("k55:", measure(d, 2), "min2:", ok)
    assert ok, wit
    assert d.n == 10 and d.m == 25
    return d


def build_pentagon_pentagram():
    from minkplanar.geometry import drawing_from_faces, fill_faces

    base = drawing_from_faces(
        [f"p{i}" for i in range(5)],
        [(f"r{i}", f"p{i}", f"p{(i+1)%5}") for i in range(5)],
        [[(f"r{i}", f"p{i}") for i in range(5)],
         [(f"r{(4-i)%5}", f"p{(5-i)%5}") for i in range(5)]],
    )
    return fill_faces(
        base,
        [(tuple(f"p{i}" for i in range(5)), [(f"c{i}", i, (i + 2) % 5) for i in range(5)])],
    )


def emit_assets():
    import pathlib

    out = pathlib.Path("src/minkplanar/assets")
    out.mkdir(parents=True, exist_ok=True)

    def write(name, d, k):
        m = measure(d, k)
        text = serialize_drawing(d, comments=[m.line()])
        (out / f"{name}.mkpd").write_text(text)
        print("wrote", name, m)

    write("pentagon-pentagram", build_pentagon_pentagram(), 2)
    a = build_fig1("a")
    b = build_fig1("b")
    write("fig1-a", a, 2)
    write("fig1-b", b, 2)
    write("k55-min2", build_k55_book(), 2)
    write("min3-cell", build_min3_cell(), 3)


if __name__ == "__main__" and True:
    emit_assets()
