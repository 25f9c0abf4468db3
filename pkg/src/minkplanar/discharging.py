"""Exact charge/discharging computations over planarization faces.

Initial charge per face is 2*deg_r + deg_c - 4; the total is always 4n - 8.
The min-2 and min-3 pipelines move charge by the local rules of the density
proofs; every amount is an exact Fraction, and conservation is asserted after
every step.  Faces whose surroundings lack the structure the maximal-density
arguments guarantee are recorded as precondition violations and left alone.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .analysis import bundle_proper_check, is_min_k_planar, red_green_coloring
from .drawing import TopologicalDrawing
from .errors import (
    CertificateError,
    ChargeIdentityError,
    CyclicChannelError,
    PreconditionError,
)
from .overlay import RedOverlay
from .planarization import Planarization, build_planarization


@dataclass
class ChargeLedger:
    charges: dict[str, Fraction]
    n: int
    phase: str

    def total(self) -> Fraction:
        return sum(self.charges.values(), Fraction(0))

    def conserved(self) -> bool:
        return self.total() == 4 * self.n - 8


def initial_charges(p: Planarization) -> ChargeLedger:
    """Per-face charges 2*deg_r + deg_c - 4; verifies the 4n-8 identity."""
    charges = {f.fid: Fraction(2 * f.deg_r + f.deg_c - 4) for f in p.faces}
    ledger = ChargeLedger(charges, p.n_real, "initial")
    if not ledger.conserved():
        raise ChargeIdentityError(
            f"total initial charge {ledger.total()} != {4 * p.n_real - 8}"
        )
    return ledger


@dataclass
class DemandPath:
    faces: tuple[str, ...]  # f_0 .. f_p
    segments: tuple[int, ...]  # e_0 .. e_{p-1} (planarization segment indices)
    terminal: str
    entry_dart: int  # dart of e_{p-1} on the terminal face's boundary


def demand_path(p: Planarization, fid: str, seg: int) -> DemandPath:
    """Walk through 0-real quadrilaterals from (face, 0-real boundary edge).

    Raises CyclicChannelError if a (face, entering-edge) pair repeats; the
    terminal face is never a 0-real quadrilateral.
    """
    fi = p.face_index(fid)
    if p.seg_real_count(seg) != 0:
        raise ValueError(f"segment {seg} is not 0-real")
    start = None
    for dart in (2 * seg, 2 * seg + 1):
        if p.face_of_dart[dart] == fi:
            start = dart
            break
    if start is None:
        raise ValueError(f"segment {seg} is not on the boundary of {fid}")

    faces = [fid]
    segs = [seg]
    seen = set()
    cur = start ^ 1  # dart on the next face's boundary
    while True:
        g = p.face_of_dart[cur]
        rec = p.faces[g]
        faces.append(rec.fid)
        if not (rec.deg == 4 and rec.deg_r == 0):
            return DemandPath(tuple(faces), tuple(segs), rec.fid, cur)
        if (g, cur) in seen:
            raise CyclicChannelError(f"demand path cycles at {rec.fid}")
        seen.add((g, cur))
        pos = rec.darts.index(cur)
        opposite = rec.darts[(pos + 2) % 4]
        segs.append(opposite >> 1)
        cur = opposite ^ 1


@dataclass
class TransferRecord:
    rule: str
    src: str
    dst: str
    amount: Fraction
    via_kind: str  # "segment" or "vertex"
    via: int

    def line(self) -> str:
        a = self.amount
        return f"XFER {self.rule} {self.src} {self.dst} {a.numerator}/{a.denominator}"


@dataclass
class DischargeOutcome:
    alpha: Fraction
    m: int
    initial: ChargeLedger
    final: ChargeLedger
    log: list[TransferRecord]
    c1: list[tuple[str, Fraction, Fraction, bool]]  # (face, ch', alpha*deg_r, ok)
    violations: list[tuple[str, str]] = field(default_factory=list)

    def conserved(self) -> bool:
        return self.final.total() == self.initial.total() and self.final.conserved()

    def c1_ok(self) -> bool:
        return all(ok for _, _, _, ok in self.c1)

    def lines(self) -> list[str]:
        out = [r.line() for r in self.log]
        for fid, ch, bound, ok in self.c1:
            out.append(
                f"FORMULA c1_{fid} lhs={bound.numerator}/{bound.denominator}"
                f" rhs={ch.numerator}/{ch.denominator} {'PASS' if ok else 'FAIL'}"
            )
        for fid, reason in self.violations:
            out.append(f"VIOLATION discharge-precondition {fid} {reason}")
        return out


def _apply(charges, log, rule, src, dst, amount, via_kind, via):
    charges[src] -= amount
    charges[dst] += amount
    log.append(TransferRecord(rule, src, dst, amount, via_kind, via))


def _kind(rec) -> tuple[int, int]:
    return rec.deg, rec.deg_r


def _c1_report(p, charges, alpha):
    out = []
    for f in p.faces:
        bound = alpha * f.deg_r
        out.append((f.fid, charges[f.fid], bound, charges[f.fid] >= bound))
    return out


def run_min2_discharging(p: Planarization) -> DischargeOutcome:
    """The three transfer rules of the 5n-10 density argument, at alpha = 2/5.

    (1) each 0-real triangle takes 4/5 from the 2-real quadrilateral across
    its 0-real side and 1/5 from the 2-real triangle at the opposite crossing;
    (2) each 1-real triangle demands 2/5 from its demand-path terminal;
    (3) for every pair of demands through consecutive boundary edges, 1/5
    leaks in from the supporting face found by tracing through the shared
    crossing and the fan of 1-real triangles at the second demander's real
    vertex.
    """
    d = p.drawing
    ok, _ = is_min_k_planar(d, 2)
    if not ok:
        raise PreconditionError("not-min-2-planar")
    ok, _ = bundle_proper_check(d)
    if not ok:
        raise PreconditionError("not-bundle-proper")

    initial = initial_charges(p)
    charges = dict(initial.charges)
    log: list[TransferRecord] = []
    violations: list[tuple[str, str]] = []
    alpha = Fraction(2, 5)

    # step 1: 0-real triangles
    for fi, t in enumerate(p.faces):
        if _kind(t) != (3, 0):
            continue
        choice = None
        for pos, dart in enumerate(t.darts):
            quad = p.faces[p.face_of_dart[dart ^ 1]]
            if _kind(quad) != (4, 2) or quad.fid == t.fid:
                continue
            x_dart = t.darts[(pos + 2) % 3]
            tri = p.faces[p.corner_opposite(fi, x_dart)]
            if _kind(tri) != (3, 2) or tri.fid == t.fid:
                continue
            choice = (dart, quad, tri, x_dart)
            break
        if choice is None:
            violations.append((t.fid, "no-2real-quad-and-triangle-neighbors"))
            continue
        dart, quad, tri, x_dart = choice
        _apply(charges, log, "min2-fix0-quad", quad.fid, t.fid, Fraction(4, 5), "segment", dart >> 1)
        _apply(charges, log, "min2-fix0-tri", tri.fid, t.fid, Fraction(1, 5), "vertex", p.origin[x_dart])

    # step 2: 1-real triangle demands
    demands: dict[int, dict[int, str]] = {}  # face index -> {boundary pos: triangle fid}
    for fi, t in enumerate(p.faces):
        if _kind(t) != (3, 1):
            continue
        zero_side = next(
            dart for dart in t.darts if p.seg_real_count(dart >> 1) == 0
        )
        path = demand_path(p, t.fid, zero_side >> 1)
        term = p.face_index(path.terminal)
        if path.terminal == t.fid:
            violations.append((t.fid, "demand-path-returns"))
            continue
        _apply(charges, log, "min2-demand", path.terminal, t.fid, Fraction(2, 5), "segment", path.segments[-1])
        pos = p.faces[term].darts.index(path.entry_dart)
        demands.setdefault(term, {})[pos] = t.fid

    # step 3: supporting-face leaks for consecutive demand pairs
    for fi in sorted(demands):
        f = p.faces[fi]
        by_pos = demands[fi]
        if len(by_pos) < 2:
            continue
        for pos in sorted(by_pos):
            nxt = (pos + 1) % f.deg
            if nxt not in by_pos:
                continue
            second = by_pos[nxt]
            t2 = p.faces[p.face_index(second)]
            v2 = next(
                p.origin[dd] for dd in t2.darts if p.vert_kind[p.origin[dd]] == "real"
            )
            z = p.origin[f.darts[nxt]]
            g = p.corner_opposite(fi, f.darts[nxt])
            entered_seg = None
            guard = set()
            while True:
                rec = p.faces[g]
                if _kind(rec) == (3, 1) and any(
                    p.origin[dd] == v2 for dd in rec.darts
                ):
                    exits = [
                        dd
                        for dd in rec.darts
                        if p.seg_real_count(dd >> 1) == 1
                        and v2 in p.seg_ends[dd >> 1]
                        and (dd >> 1) != entered_seg
                        and (entered_seg is not None or z not in p.seg_ends[dd >> 1])
                    ]
                    if len(exits) != 1 or (g, exits[0]) in guard:
                        rec = None
                        break
                    guard.add((g, exits[0]))
                    entered_seg = exits[0] >> 1
                    g = p.face_of_dart[exits[0] ^ 1]
                    continue
                break
            if rec is None or _kind(rec) not in ((3, 2), (4, 2)) or not any(
                p.origin[dd] == v2 for dd in rec.darts
            ):
                violations.append((f.fid, f"no-supporting-face-at-{p.vert_name[z]}"))
                continue
            _apply(charges, log, "min2-support", rec.fid, f.fid, Fraction(1, 5), "vertex", z)

    final = ChargeLedger(charges, p.n_real, "min2-final")
    outcome = DischargeOutcome(
        alpha, d.m, initial, final, log, _c1_report(p, charges, alpha), violations
    )
    assert outcome.conserved(), "min-2 discharging must conserve total charge"
    return outcome


def _vertex_neighbor_pentagons(p: Planarization, fi: int) -> list[int]:
    f = p.faces[fi]
    out = []
    for dart in f.darts:
        if p.vert_kind[p.origin[dart]] != "cross":
            continue
        g = p.corner_opposite(fi, dart)
        if g != fi and _kind(p.faces[g]) == (5, 0) and g not in out:
            out.append(g)
    return out


def run_min3_discharging(p: Planarization) -> DischargeOutcome:
    """Steps 1-4 of the 6n-12 density argument with snapshot semantics.

    Within one step all transfers are computed from the previous step's
    ledger and applied together; conservation is asserted after every step.
    """
    d = p.drawing
    ok, _ = is_min_k_planar(d, 3)
    if not ok:
        raise PreconditionError("not-min-3-planar")
    ok, _ = bundle_proper_check(d)
    if not ok:
        raise PreconditionError("not-bundle-proper")

    initial = initial_charges(p)
    charges = dict(initial.charges)
    log: list[TransferRecord] = []
    violations: list[tuple[str, str]] = []
    alpha = Fraction(1, 3)
    third = Fraction(1, 3)
    sixth = Fraction(1, 6)

    def checkpoint():
        total = sum(charges.values(), Fraction(0))
        assert total == 4 * p.n_real - 8, "conservation broken"

    # step 1: 0-real triangles pull 1/3 along each of their demand paths
    for fi, t in enumerate(p.faces):
        if _kind(t) != (3, 0):
            continue
        for dart in t.darts:
            path = demand_path(p, t.fid, dart >> 1)
            if path.terminal == t.fid:
                violations.append((t.fid, "demand-path-returns"))
                continue
            _apply(charges, log, "min3-step1", path.terminal, t.fid, third, "segment", path.segments[-1])
    checkpoint()

    # step 2: positive faces feed 1-real triangles through shared 1-real edges
    snapshot = dict(charges)
    for fi, f in enumerate(p.faces):
        if snapshot[f.fid] <= 0 or _kind(f) == (4, 1):
            continue
        shares = []
        for dart in f.darts:
            if p.seg_real_count(dart >> 1) != 1:
                continue
            g = p.face_of_dart[dart ^ 1]
            if g != fi and _kind(p.faces[g]) == (3, 1):
                shares.append((dart, g))
        if not shares:
            continue
        amount = sixth
        if _kind(f) == (3, 2) and len(shares) == 1:
            amount = third
        for dart, g in shares:
            _apply(charges, log, "min3-step2", f.fid, p.faces[g].fid, amount, "segment", dart >> 1)
    checkpoint()

    # step 3: top 1-real triangles up to 1/3 from their demand-path-neighbor
    snapshot = dict(charges)
    for fi, t in enumerate(p.faces):
        if _kind(t) != (3, 1) or snapshot[t.fid] >= third:
            continue
        zero_side = next(dart for dart in t.darts if p.seg_real_count(dart >> 1) == 0)
        path = demand_path(p, t.fid, zero_side >> 1)
        if path.terminal == t.fid:
            violations.append((t.fid, "demand-path-returns"))
            continue
        _apply(
            charges, log, "min3-step3", path.terminal, t.fid,
            third - snapshot[t.fid], "segment", path.segments[-1],
        )
    checkpoint()

    # step 4: distribute positive excess over 0-real-pentagon vertex-neighbors
    snapshot = dict(charges)
    for fi, f in enumerate(p.faces):
        excess = snapshot[f.fid] - alpha * f.deg_r
        if excess <= 0:
            continue
        pentagons = _vertex_neighbor_pentagons(p, fi)
        if not pentagons:
            continue
        share = excess / len(pentagons)
        for g in pentagons:
            gf = p.faces[g]
            shared = next(
                p.origin[dd]
                for dd in f.darts
                if p.vert_kind[p.origin[dd]] == "cross"
                and p.corner_opposite(fi, dd) == g
            )
            _apply(charges, log, "min3-step4", f.fid, gf.fid, share, "vertex", shared)
    checkpoint()

    final = ChargeLedger(charges, p.n_real, "min3-final")
    outcome = DischargeOutcome(
        alpha, d.m, initial, final, log, _c1_report(p, charges, alpha), violations
    )
    assert outcome.conserved()
    return outcome


def proposition1_checks(p: Planarization, outcome: DischargeOutcome) -> dict[str, bool]:
    """Transfer-log predicates of the min-3 proposition.

    (a) steps 1 and 3 move charge only through 0-real edges; (b) step 2 only
    through 1-real edges; (c) nothing ever moves through a 2-real edge;
    (d) no 1-real triangle receives more than 1/3 in step 3.
    """
    a = all(
        r.via_kind == "segment" and p.seg_real_count(r.via) == 0
        for r in outcome.log
        if r.rule in ("min3-step1", "min3-step3")
    )
    b = all(
        r.via_kind == "segment" and p.seg_real_count(r.via) == 1
        for r in outcome.log
        if r.rule == "min3-step2"
    )
    c = all(
        not (r.via_kind == "segment" and p.seg_real_count(r.via) == 2)
        for r in outcome.log
    )
    received: dict[str, Fraction] = {}
    for r in outcome.log:
        if r.rule == "min3-step3":
            received[r.dst] = received.get(r.dst, Fraction(0)) + r.amount
    d_ok = all(v <= Fraction(1, 3) for v in received.values())
    return {"a": a, "b": b, "c": c, "d": d_ok}


def density_bound_from_ledger(outcome: DischargeOutcome, alpha: Fraction):
    """Edge bound (2/alpha)(n-2) implied by a valid C1 certificate.

    Returns (bound, holds) with holds = (m <= bound); raises CertificateError
    when the outcome does not actually certify the bound.
    """
    if alpha != outcome.alpha:
        raise ValueError("alpha mismatch with the outcome")
    if not outcome.c1_ok():
        raise CertificateError("certificate-invalid: C1 fails on some face")
    if not outcome.conserved():
        raise CertificateError("certificate-invalid: conservation fails")
    bound = Fraction(2, 1) / alpha * (outcome.final.n - 2)
    return bound, Fraction(outcome.m) <= bound


@dataclass
class Min1AuditReport:
    n: int
    red_faces: int
    expected_faces: int
    max_green_per_face: int
    green_count: int
    green_bound: int
    heavy_count: int
    heavy_bound: int

    @property
    def ok(self) -> bool:
        return (
            self.red_faces == self.expected_faces
            and self.max_green_per_face <= 1
            and self.green_count <= self.green_bound
            and self.heavy_count <= self.heavy_bound
        )


def min1_face_audits(d: TopologicalDrawing) -> Min1AuditReport:
    """Face counting of the 4n-8 and heavy-edge arguments on a triangulated red subgraph."""
    coloring = red_green_coloring(d)
    overlay = RedOverlay(d, coloring)
    if not overlay.triangulated():
        raise PreconditionError("red-not-triangulated")
    n = d.n
    p = overlay.p
    greens_in_region: dict[int, set[str]] = {}
    for eid in coloring.green_edges():
        for seg in p.segments_of_edge(eid):
            region = overlay.region_of_face[p.face_of_dart[2 * seg]]
            greens_in_region.setdefault(region, set()).add(eid)
    max_green = max((len(s) for s in greens_in_region.values()), default=0)
    heavy = sum(1 for e in d.graph.edges if d.cr(e.eid) >= 2)
    return Min1AuditReport(
        n=n,
        red_faces=len(overlay.walks),
        expected_faces=2 * n - 4,
        max_green_per_face=max_green,
        green_count=len(coloring.green_edges()),
        green_bound=n - 2,
        heavy_count=heavy,
        heavy_bound=(2 * n - 4) // 3,
    )
