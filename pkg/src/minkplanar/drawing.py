"""Abstract multigraphs and simple topological drawings.

A drawing is stored purely combinatorially: a clockwise rotation of edge ends
around every vertex, plus an ordered, signed crossing sequence along every
edge.  Sign semantics: the record ``(f, +)`` on edge ``e`` means that ``f``,
traversed from its own first endpoint, crosses ``e`` from right to left
relative to ``e``'s traversal direction.  Antisymmetry is mandatory: the
matching record on ``f`` carries the opposite sign.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DrawingFormatError

FORMAT_HEADER = "mkpd 1"


@dataclass(frozen=True)
class Edge:
    eid: str
    u: str
    v: str

    def other(self, vid: str) -> str:
        return self.v if vid == self.u else self.u


@dataclass(frozen=True)
class CrossingRecord:
    other: str
    sign: int  # +1 or -1


@dataclass
class MultiGraph:
    """Connected multigraph without self-loops; parallel edges allowed."""

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        self._edge_index = {e.eid: e for e in self.edges}

    def edge(self, eid: str) -> Edge:
        return self._edge_index[eid]

    def degree(self, vid: str) -> int:
        return sum(1 for e in self.edges if vid in (e.u, e.v))


@dataclass
class TopologicalDrawing:
    """A simple topological drawing of a multigraph.

    ``rotation[v]`` is the clockwise cyclic sequence of incident edge ids
    (a parallel edge appears once per incidence).  ``crossings[e]`` is the
    ordered sequence of crossing records along ``e`` from its first endpoint.
    Instances are treated as immutable; mutating operations return new ones.
    """

    graph: MultiGraph
    rotation: dict[str, tuple[str, ...]]
    crossings: dict[str, tuple[CrossingRecord, ...]]

    @property
    def n(self) -> int:
        return len(self.graph.vertices)

    @property
    def m(self) -> int:
        return len(self.graph.edges)

    def cr(self, eid: str) -> int:
        return len(self.crossings[eid])

    def crossing_count(self) -> int:
        return sum(len(c) for c in self.crossings.values()) // 2

    def crossing_pairs(self) -> list[frozenset[str]]:
        """All unordered edge pairs that cross, each once."""
        seen = set()
        for eid, recs in self.crossings.items():
            for rec in recs:
                seen.add(frozenset((eid, rec.other)))
        return sorted(seen, key=lambda p: tuple(sorted(p)))


@dataclass(frozen=True)
class Violation:
    rule: str
    ids: tuple[str, ...]


@dataclass
class ViolationReport:
    violations: list[Violation] = field(default_factory=list)

    def add(self, rule: str, *ids: str) -> None:
        self.violations.append(Violation(rule, tuple(ids)))

    @property
    def ok(self) -> bool:
        return not self.violations

    def rules(self) -> set[str]:
        return {v.rule for v in self.violations}

    def lines(self) -> list[str]:
        return [f"VIOLATION {v.rule} {' '.join(v.ids)}".rstrip() for v in self.violations]


def make_drawing(vertices, edges, rotation, crossings) -> TopologicalDrawing:
    """Raw constructor: builds a drawing without any validation.

    Intended for tests and generators that need to assemble (possibly broken)
    drawings directly.  ``edges`` is a sequence of (eid, u, v) triples,
    ``crossings[e]`` a sequence of (other_eid, sign) pairs.
    """
    g = MultiGraph(tuple(vertices), tuple(Edge(*e) for e in edges))
    rot = {v: tuple(rotation[v]) for v in vertices}
    crs = {
        e.eid: tuple(CrossingRecord(o, s) for o, s in crossings.get(e.eid, ()))
        for e in g.edges
    }
    return TopologicalDrawing(g, rot, crs)


def _structural_problems(d: TopologicalDrawing) -> list[tuple[None, str]]:
    """Problems that make the drawing unrepresentable (bad ids, bad rotations)."""
    problems = []
    vset = set(d.graph.vertices)
    eids = {e.eid for e in d.graph.edges}
    for e in d.graph.edges:
        if e.u not in vset or e.v not in vset:
            problems.append((None, f"unknown id: edge {e.eid} endpoint"))
        if e.u == e.v:
            problems.append((None, f"self-loop: edge {e.eid} at vertex {e.u}"))
    for eid, recs in d.crossings.items():
        for rec in recs:
            if rec.other not in eids:
                problems.append((None, f"unknown id: crossing partner {rec.other} on {eid}"))
    # rotation must list exactly the incident edges, once per incidence
    incident: dict[str, list[str]] = {v: [] for v in d.graph.vertices}
    for e in d.graph.edges:
        if e.u in incident:
            incident[e.u].append(e.eid)
        if e.v in incident and e.v != e.u:
            incident[e.v].append(e.eid)
    for v in d.graph.vertices:
        want = sorted(incident[v])
        got = sorted(d.rotation.get(v, ()))
        if want != got:
            problems.append((None, f"rotation mismatch at vertex {v}"))
    return problems


def _pair_problems(d: TopologicalDrawing, report: ViolationReport) -> None:
    """Simplicity rules on the crossing lists (conditions (i)-(iii))."""
    for e in d.graph.edges:
        for rec in d.crossings[e.eid]:
            if rec.other == e.eid:
                report.add("self-crossing", e.eid)
    counted = set()
    for e in d.graph.edges:
        for rec in d.crossings[e.eid]:
            if rec.other == e.eid or rec.other not in {x.eid for x in d.graph.edges}:
                continue
            pair = frozenset((e.eid, rec.other))
            if pair in counted:
                continue
            counted.add(pair)
            f = d.graph.edge(rec.other)
            if {e.u, e.v} & {f.u, f.v}:
                report.add("adjacent-crossing", e.eid, f.eid)
            k_ef = sum(1 for r in d.crossings[e.eid] if r.other == f.eid)
            k_fe = sum(1 for r in d.crossings[f.eid] if r.other == e.eid)
            if k_ef > 1 or k_fe > 1:
                report.add("double-crossing", e.eid, f.eid)
            elif k_ef != k_fe:
                report.add("unmatched-crossing", e.eid, f.eid)
            else:
                s_ef = next(r.sign for r in d.crossings[e.eid] if r.other == f.eid)
                s_fe = next(r.sign for r in d.crossings[f.eid] if r.other == e.eid)
                if s_ef != -s_fe:
                    report.add("sign-mismatch", e.eid, f.eid)


def _drawing_connected(d: TopologicalDrawing) -> bool:
    """Connectivity of the drawing: edges linked by shared endpoints or crossings.

    A drawing whose curves all touch (as in two independent crossing edges) is
    connected on the sphere even if the abstract graph is not.
    """
    if not d.graph.vertices:
        return True
    parent: dict[str, str] = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        parent[find(a)] = find(b)

    for e in d.graph.edges:
        union(("v", e.u), ("v", e.v))
        union(("v", e.u), ("e", e.eid))
    for eid, recs in d.crossings.items():
        for rec in recs:
            union(("e", eid), ("e", rec.other))
    roots = {find(("v", v)) for v in d.graph.vertices}
    return len(roots) <= 1


def validate_simplicity(d: TopologicalDrawing) -> ViolationReport:
    """Check every drawing invariant; violations are data, not failures."""
    report = ViolationReport()
    for _, msg in _structural_problems(d):
        rule = msg.split(":")[0].replace(" ", "-")
        report.add(rule, msg)
    if not report.ok:
        return report
    _pair_problems(d, report)
    if not _drawing_connected(d):
        report.add("disconnected")
    if report.ok:
        from .planarization import build_planarization
        from .errors import NonSphericalError

        try:
            build_planarization(d)
        except NonSphericalError as exc:
            report.add("non-spherical", str(exc.euler_characteristic))
    return report


def parse_drawing(text: str, allow_disconnected: bool = False) -> TopologicalDrawing:
    """Parse the drawing file format, validating everything except the Euler check.

    Raises DrawingFormatError with line numbers for syntax or validation
    problems.  The sphere (Euler) check happens in build_planarization so that
    structurally sound but non-realizable inputs can still be examined.
    """
    problems: list[tuple[int | None, str]] = []
    vertices: list[str] = []
    edges: list[tuple[str, str, str]] = []
    rot_lines: dict[str, tuple[int, tuple[str, ...]]] = {}
    cross_lines: dict[str, tuple[int, tuple[tuple[str, int], ...]]] = {}
    header_seen = False

    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if not header_seen:
            if toks != FORMAT_HEADER.split():
                problems.append((ln, f"expected header '{FORMAT_HEADER}'"))
                break
            header_seen = True
            continue
        kind = toks[0]
        if kind == "vertex":
            if len(toks) != 2:
                problems.append((ln, "syntax error: vertex <vid>"))
            elif toks[1] in vertices:
                problems.append((ln, f"duplicate vertex id {toks[1]}"))
            else:
                vertices.append(toks[1])
        elif kind == "edge":
            if len(toks) != 4:
                problems.append((ln, "syntax error: edge <eid> <vid> <vid>"))
                continue
            eid, u, v = toks[1:]
            if any(e[0] == eid for e in edges):
                problems.append((ln, f"duplicate edge id {eid}"))
            elif u not in vertices or v not in vertices:
                problems.append((ln, f"unknown id in edge {eid}"))
            elif u == v:
                problems.append((ln, f"self-loop: edge {eid} at vertex {u}"))
            else:
                edges.append((eid, u, v))
        elif kind == "rot":
            if len(toks) < 2:
                problems.append((ln, "syntax error: rot <vid> <eid> ..."))
                continue
            vid = toks[1]
            if vid not in vertices:
                problems.append((ln, f"unknown id: rot for vertex {vid}"))
            elif vid in rot_lines:
                problems.append((ln, f"duplicate rot line for vertex {vid}"))
            else:
                rot_lines[vid] = (ln, tuple(toks[2:]))
        elif kind == "cross":
            if len(toks) < 2:
                problems.append((ln, "syntax error: cross <eid> [<eid>:<+|-> ...]"))
                continue
            eid = toks[1]
            if not any(e[0] == eid for e in edges):
                problems.append((ln, f"unknown id: cross for edge {eid}"))
                continue
            if eid in cross_lines:
                problems.append((ln, f"duplicate cross line for edge {eid}"))
                continue
            recs = []
            ok = True
            for tok in toks[2:]:
                if ":" not in tok:
                    problems.append((ln, f"syntax error in crossing record '{tok}'"))
                    ok = False
                    break
                other, sign = tok.rsplit(":", 1)
                if sign not in ("+", "-"):
                    problems.append((ln, f"bad sign in crossing record '{tok}'"))
                    ok = False
                    break
                recs.append((other, 1 if sign == "+" else -1))
            if ok:
                cross_lines[eid] = (ln, tuple(recs))
        else:
            problems.append((ln, f"syntax error: unknown directive '{kind}'"))

    if not header_seen and not problems:
        problems.append((None, f"empty input, expected '{FORMAT_HEADER}'"))
    if problems:
        raise DrawingFormatError(problems)

    for v in vertices:
        if v not in rot_lines:
            problems.append((None, f"missing rot line for vertex {v}"))
    for eid, _, _ in edges:
        if eid not in cross_lines:
            problems.append((None, f"missing cross line for edge {eid}"))
    if problems:
        raise DrawingFormatError(problems)

    d = make_drawing(
        vertices,
        edges,
        {v: rot_lines[v][1] for v in vertices},
        {eid: cross_lines[eid][1] for eid, _, _ in edges},
    )

    for _, msg in _structural_problems(d):
        ln = None
        if msg.startswith("rotation mismatch"):
            vid = msg.rsplit(" ", 1)[1]
            ln = rot_lines.get(vid, (None,))[0]
        problems.append((ln, msg))
    if problems:
        raise DrawingFormatError(problems)

    report = ViolationReport()
    _pair_problems(d, report)
    for v in report.violations:
        eid = v.ids[0] if v.ids else None
        ln = cross_lines.get(eid, (None,))[0] if eid else None
        problems.append((ln, f"{v.rule.replace('-', ' ')}: {' '.join(v.ids)}"))
    if not allow_disconnected and not _drawing_connected(d):
        problems.append((None, "disconnected graph"))
    if problems:
        raise DrawingFormatError(problems)
    return d


def serialize_drawing(d: TopologicalDrawing, comments: list[str] | None = None) -> str:
    """Canonical text form; parse(serialize(d)) reproduces d exactly."""
    out = [FORMAT_HEADER]
    for c in comments or ():
        out.append(f"# {c}")
    for v in d.graph.vertices:
        out.append(f"vertex {v}")
    for e in d.graph.edges:
        out.append(f"edge {e.eid} {e.u} {e.v}")
    for v in d.graph.vertices:
        out.append("rot " + " ".join((v,) + d.rotation[v]))
    for e in d.graph.edges:
        recs = " ".join(
            f"{r.other}:{'+' if r.sign > 0 else '-'}" for r in d.crossings[e.eid]
        )
        out.append(("cross " + e.eid + " " + recs).rstrip())
    return "\n".join(out) + "\n"


def delete_edge(d: TopologicalDrawing, eid: str) -> TopologicalDrawing:
    """Remove an edge and all its crossings; other edges keep their order."""
    edge = d.graph.edge(eid)
    vertices = d.graph.vertices
    edges = [(e.eid, e.u, e.v) for e in d.graph.edges if e.eid != eid]
    rotation = {
        v: tuple(x for x in d.rotation[v] if x != eid) if v in (edge.u, edge.v) else d.rotation[v]
        for v in vertices
    }
    crossings = {
        e: tuple((r.other, r.sign) for r in recs if r.other != eid)
        for e, recs in d.crossings.items()
        if e != eid
    }
    return make_drawing(vertices, edges, rotation, crossings)


def components(d: TopologicalDrawing) -> list[TopologicalDrawing]:
    """Split a (possibly disconnected) drawing into drawing-connected parts."""
    parent: dict = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        parent[find(a)] = find(b)

    for e in d.graph.edges:
        union(("v", e.u), ("v", e.v))
        union(("v", e.u), ("e", e.eid))
    for eid, recs in d.crossings.items():
        for rec in recs:
            union(("e", eid), ("e", rec.other))
    for v in d.graph.vertices:
        find(("v", v))
    groups: dict = {}
    for v in d.graph.vertices:
        groups.setdefault(find(("v", v)), []).append(v)
    out = []
    for root, verts in groups.items():
        vset = set(verts)
        edges = [(e.eid, e.u, e.v) for e in d.graph.edges if e.u in vset]
        eset = {e[0] for e in edges}
        rotation = {v: d.rotation[v] for v in verts}
        crossings = {e: [(r.other, r.sign) for r in d.crossings[e]] for e in eset}
        out.append(make_drawing(verts, edges, rotation, crossings))
    return out
