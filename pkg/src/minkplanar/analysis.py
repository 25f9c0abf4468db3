"""Edge classification and membership tests for beyond-planar drawing classes."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .drawing import TopologicalDrawing, ViolationReport
from .errors import MkpError, PreconditionError
from .planarization import build_planarization


@dataclass
class EdgeClassification:
    k: int
    cr: dict[str, int]
    label: dict[str, str]  # free / light / heavy

    @property
    def free(self) -> int:
        return sum(1 for l in self.label.values() if l == "free")

    @property
    def light(self) -> int:
        return sum(1 for l in self.label.values() if l == "light")

    @property
    def heavy(self) -> int:
        return sum(1 for l in self.label.values() if l == "heavy")

    def heavy_edges(self) -> list[str]:
        return sorted(e for e, l in self.label.items() if l == "heavy")


def classify_edges(d: TopologicalDrawing, k: int) -> EdgeClassification:
    """Free (no crossings), light (1..k crossings) or heavy (> k crossings)."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    cr = {e.eid: d.cr(e.eid) for e in d.graph.edges}
    label = {
        eid: "free" if c == 0 else ("light" if c <= k else "heavy")
        for eid, c in cr.items()
    }
    return EdgeClassification(k, cr, label)


def is_min_k_planar(d: TopologicalDrawing, k: int):
    """True iff min(cr(e), cr(f)) <= k for every crossing pair; else a witness pair."""
    for pair in d.crossing_pairs():
        e, f = sorted(pair)
        if min(d.cr(e), d.cr(f)) > k:
            return False, (e, f)
    return True, None


def is_k_planar(d: TopologicalDrawing, k: int):
    """True iff every edge has at most k crossings; else a maximal-crossing edge."""
    worst = None
    for e in d.graph.edges:
        if worst is None or d.cr(e.eid) > d.cr(worst):
            worst = e.eid
    if worst is not None and d.cr(worst) > k:
        return False, worst
    return True, None


@dataclass
class Coloring:
    color: dict[str, str]  # red / green

    def red_edges(self) -> list[str]:
        return [e for e, c in self.color.items() if c == "red"]

    def green_edges(self) -> list[str]:
        return [e for e, c in self.color.items() if c == "green"]


def red_green_coloring(d: TopologicalDrawing) -> Coloring:
    """Two-color a min-1-planar drawing so the red subgraph is plane.

    Crossing-free edges are red; in each crossing pair the edge with more
    crossings is green; on a 1-1 tie the smaller edge id is red.
    """
    ok, _ = is_min_k_planar(d, 1)
    if not ok:
        raise PreconditionError("not-min-1-planar")
    color = {}
    for e in d.graph.edges:
        c = d.cr(e.eid)
        if c == 0:
            color[e.eid] = "red"
        elif c >= 2:
            color[e.eid] = "green"
        else:
            f = d.crossings[e.eid][0].other
            cf = d.cr(f)
            if cf >= 2 or (cf == 1 and e.eid < f):
                color[e.eid] = "red"
            else:
                color[e.eid] = "green"
    return Coloring(color)


@dataclass
class GapAssignment:
    k: int
    owner: dict[frozenset, str]  # crossing pair -> owning edge
    strategy: str

    def load(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for pair, eid in self.owner.items():
            out[eid] = out.get(eid, 0) + 1
        return out


@dataclass
class GapViolation:
    k: int
    crossings: list[frozenset]  # Hall-type violating crossing set
    strategy: str


def gap_assignment(d: TopologicalDrawing, k: int, strategy: str = "exact"):
    """Assign each crossing to one of its two edges, at most k per edge.

    The exact strategy decides feasibility by bipartite matching with edge
    capacity k and returns a Hall-type violating crossing set on failure.
    The greedy strategy follows the light-edges-first sweep and fails on any
    crossing between two heavy edges.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    pairs = d.crossing_pairs()
    if strategy == "greedy":
        owner: dict[frozenset, str] = {}
        for e in d.graph.edges:
            c = d.cr(e.eid)
            if 1 <= c <= k:
                for rec in d.crossings[e.eid]:
                    pair = frozenset((e.eid, rec.other))
                    owner.setdefault(pair, e.eid)
        missing = [p for p in pairs if p not in owner]
        if missing:
            return GapViolation(k, missing, strategy)
        return GapAssignment(k, owner, strategy)
    if strategy != "exact":
        raise ValueError(f"unknown strategy {strategy!r}")

    load: dict[str, list[frozenset]] = {e.eid: [] for e in d.graph.edges}
    owner = {}

    def try_place(pair, banned: set[str]) -> bool:
        for eid in sorted(pair):
            if eid in banned:
                continue
            banned.add(eid)
            if len(load[eid]) < k:
                load[eid].append(pair)
                owner[pair] = eid
                return True
            for moved in list(load[eid]):
                if try_place(moved, banned):
                    load[eid].remove(moved)
                    load[eid].append(pair)
                    owner[pair] = eid
                    return True
        return False

    unplaced = []
    for pair in pairs:
        if not try_place(pair, set()):
            unplaced.append(pair)
    if not unplaced:
        return GapAssignment(k, owner, strategy)

    # Hall violator: crossings reachable from unplaced ones by alternating paths
    reach = set(unplaced)
    frontier = list(unplaced)
    while frontier:
        pair = frontier.pop()
        for eid in pair:
            for assigned in load[eid]:
                if assigned not in reach:
                    reach.add(assigned)
                    frontier.append(assigned)
    return GapViolation(k, sorted(reach, key=lambda p: tuple(sorted(p))), "exact")


def gap_assignment_brute(d: TopologicalDrawing, k: int):
    """Exhaustive feasibility test over all owner maps (oracle for small inputs)."""
    pairs = d.crossing_pairs()
    if len(pairs) > 20:
        raise MkpError("brute-force gap search limited to 20 crossings")

    load: dict[str, int] = {}

    def rec(i: int) -> bool:
        if i == len(pairs):
            return True
        for eid in sorted(pairs[i]):
            if load.get(eid, 0) < k:
                load[eid] = load.get(eid, 0) + 1
                if rec(i + 1):
                    return True
                load[eid] -= 1
        return False

    return rec(0)


def quasiplanar_witness(d: TopologicalDrawing, q: int, max_nodes: int = 2_000_000):
    """q pairwise-crossing edges if they exist, else None.

    Clique search on the crossing graph (vertices: edges, adjacency: crosses);
    max_nodes guards against pathological inputs.
    """
    adj: dict[str, set[str]] = {}
    for pair in d.crossing_pairs():
        a, b = sorted(pair)
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    nodes = sorted(adj)
    budget = [max_nodes]

    def extend(clique, candidates):
        budget[0] -= 1
        if budget[0] < 0:
            raise MkpError("quasiplanar clique search exceeded its node budget")
        if len(clique) == q:
            return tuple(clique)
        if len(clique) + len(candidates) < q:
            return None
        for i, v in enumerate(candidates):
            got = extend(clique + [v], [w for w in candidates[i + 1 :] if w in adj[v]])
            if got:
                return got
        return None

    return extend([], nodes)


def bundle_proper_check(d: TopologicalDrawing):
    """(i) at most one crossed edge per parallel bundle; (ii) no 2-real bigon face."""
    report = ViolationReport()
    bundles: dict[frozenset, list[str]] = {}
    for e in d.graph.edges:
        bundles.setdefault(frozenset((e.u, e.v)), []).append(e.eid)
    for key, members in sorted(bundles.items(), key=lambda kv: sorted(kv[1])):
        if len(members) < 2:
            continue
        crossed = [eid for eid in members if d.cr(eid) > 0]
        if len(crossed) > 1:
            report.add("bundle-crossing", *sorted(members))
    p = build_planarization(d)
    for f in p.faces:
        if f.deg == 2 and f.deg_r == 2:
            e1 = p.seg_parent[p.seg_of_dart(f.darts[0])]
            e2 = p.seg_parent[p.seg_of_dart(f.darts[1])]
            report.add("homotopic-bigon", *sorted((e1, e2)))
    return report.ok, report


@dataclass
class BoundReport:
    n: int
    m: int
    k: int
    crossings: int
    free: int
    light: int
    heavy: int
    min_k_planar: bool
    formulas: list[tuple[str, Fraction, Fraction, bool]] = field(default_factory=list)

    def passed(self, name: str) -> bool:
        for fname, _, _, ok in self.formulas:
            if fname == name:
                return ok
        raise KeyError(name)

    def all_pass(self) -> bool:
        return self.min_k_planar and all(ok for _, _, _, ok in self.formulas)

    def lines(self) -> list[str]:
        def fmt(x: Fraction) -> str:
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

        out = [
            f"STATS n={self.n} m={self.m} k={self.k} crossings={self.crossings}"
            f" free={self.free} light={self.light} heavy={self.heavy}"
            f" min_k_planar={'yes' if self.min_k_planar else 'no'}"
        ]
        for name, lhs, rhs, ok in self.formulas:
            out.append(
                f"FORMULA {name} lhs={fmt(lhs)} rhs={fmt(rhs)} {'PASS' if ok else 'FAIL'}"
            )
        return out


def audit_bounds(d: TopologicalDrawing, k: int) -> BoundReport:
    """Evaluate the density and heavy-edge bound formulas, exactly.

    The report records pass/fail per formula and never raises on failures;
    when the drawing is not min-k-planar at this k the bounds are
    inapplicable and the report is flagged.
    """
    cls = classify_edges(d, k)
    n = Fraction(d.n)
    m = Fraction(d.m)
    c = Fraction(d.crossing_count())
    h = Fraction(cls.heavy)
    light = Fraction(cls.light)
    ok_min, _ = is_min_k_planar(d, k)

    formulas: list[tuple[str, Fraction, Fraction, bool]] = []

    def check(name, lhs: Fraction, rhs: Fraction):
        formulas.append((name, lhs, rhs, lhs <= rhs))

    check("crossings_vs_k_light", c, k * light)
    check("heavy_vs_m_fraction", h, Fraction(k, 2 * k + 1) * m)
    if k >= 2:
        # m <= 5.39*sqrt(k)*n and m <= (3.81*sqrt(k)+3)*n, squared to stay exact
        check("density_general_539sqrtk_sq", 10_000 * m * m, 290_521 * k * n * n)
        excess = m - 3 * n
        lhs = 10_000 * excess * excess if excess > 0 else Fraction(0)
        check("density_general_381sqrtk_plus3_sq", lhs, 145_161 * k * n * n)
    if k == 1:
        check("density_min1", m, 4 * n - 8)
        check("heavy_min1", h, Fraction(2, 3) * n - 1)
    elif k == 2:
        check("density_min2", m, 5 * n - 10)
        check("heavy_min2", h, Fraction(6, 5) * (n - 2))
    elif k == 3:
        check("density_min3", m, 6 * n - 12)
        check("heavy_min3", h, 2 * (n - 2))

    return BoundReport(
        n=d.n,
        m=d.m,
        k=k,
        crossings=int(c),
        free=cls.free,
        light=cls.light,
        heavy=cls.heavy,
        min_k_planar=ok_min,
        formulas=formulas,
    )
