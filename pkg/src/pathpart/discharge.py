"""Exact-rational discharging: point transfers, per-component floors, block audit.

Every vertex starts with one point; five local transfer rules move exact
fractions along free edges. A partition certifies when every component holds
at least the variant's floor (7 for degree 6, 19/3 for the K6-free degree-5
variant), which pigeonholes the component count below n/7 resp. 3n/19.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .classify import (V1, V2A, V2B, V3, V4, V5, EdgeClassification,
                       VertexClassification)
from .graphs import Graph
from .partition import CYCLE, PATH, PathPartition


class DischargeError(ValueError):
    pass


@dataclass(frozen=True)
class RuleSet:
    """Transfer amounts for one variant.

    D6: cycles of size i <= 6 draw 1/i per balanced edge, path ends 2/3,
    dangerous V3 vertices draw 1/6 from V2a and 1/12 from single-V2-neighbor
    V2b/V4, V5 pays 1/4 per free edge. D5 scales the cycle amount by 4/3 and
    drops the two dangerous-vertex rules.
    """

    variant: str
    threshold: Fraction
    path_amount: Fraction = Fraction(2, 3)
    v5_amount: Fraction = Fraction(1, 4)

    def cycle_amount(self, size: int) -> Fraction | None:
        if size > 6:
            return None
        base = Fraction(1, size)
        return base * Fraction(4, 3) if self.variant == "D5" else base

    @property
    def v2a_dangerous(self) -> Fraction | None:
        return Fraction(1, 6) if self.variant == "D6" else None

    @property
    def v4_dangerous(self) -> Fraction | None:
        return Fraction(1, 12) if self.variant == "D6" else None

    def count_bound(self, n: int) -> int:
        frac = Fraction(n) / self.threshold
        return frac.numerator // frac.denominator


RULES_D6 = RuleSet("D6", Fraction(7))
RULES_D5 = RuleSet("D5", Fraction(19, 3))


def ruleset_for_degree(d: int) -> RuleSet:
    if d == 6:
        return RULES_D6
    if d == 5:
        return RULES_D5
    raise DischargeError(f"no ruleset for degree {d}")


@dataclass
class PointLedger:
    balance: list[Fraction]
    transfers: list[tuple[int, int, Fraction, int]]
    rule_counts: dict[int, int]

    def total(self) -> Fraction:
        return sum(self.balance, Fraction(0))


def apply_rules(g: Graph, p: PathPartition, ec: EdgeClassification,
                vc: VertexClassification, rs: RuleSet) -> PointLedger:
    """Run every transfer once; at most one rule fires per edge, all exact."""
    if p.singleton_count():
        raise DischargeError("transfer rules are undefined on partitions with singletons")
    balance = [Fraction(1) for _ in range(g.n)]
    transfers: list[tuple[int, int, Fraction, int]] = []
    counts = {1: 0, 2: 0, 3: 0, 4: 0, 5: 0}

    def one_v2_path_neighbor(v: int) -> bool:
        return sum(1 for w in p.path_neighbors(v) if vc.is_v2(w)) == 1

    def directed(v: int, u: int) -> tuple[Fraction, int] | None:
        cv = vc.cls[v]
        if cv in (V2A, V2B) and vc.cls[u] == V1:
            comp = p.components[p.owner[u]]
            if comp.kind == CYCLE:
                amt = rs.cycle_amount(len(comp.vertices))
                return (amt, 1) if amt is not None else None
            if comp.kind == PATH:
                return (rs.path_amount, 2)
            return None
        if u in vc.dangerous:
            if cv == V2A and rs.v2a_dangerous is not None:
                return (rs.v2a_dangerous, 3)
            if rs.v4_dangerous is not None and (
                    cv == V4 or (cv == V2B and one_v2_path_neighbor(v))):
                return (rs.v4_dangerous, 4)
            return None
        if cv == V5 and vc.cls[u] != V5:
            return (rs.v5_amount, 5)
        return None

    for a, b in ec.free_edges:
        hit = directed(a, b)
        if hit is None:
            hit = directed(b, a)
            a, b = b, a
        if hit is None:
            continue
        amount, rule = hit
        balance[a] -= amount
        balance[b] += amount
        transfers.append((a, b, amount, rule))
        counts[rule] += 1
    return PointLedger(balance=balance, transfers=transfers, rule_counts=counts)


@dataclass
class Certificate:
    variant: str
    threshold: Fraction
    n: int
    component_count: int
    totals: list[tuple[list[int], str, Fraction]]  # (vertices, kind, total), sorted
    verdict: bool
    violations: list[dict]
    rule_counts: dict[int, int]

    def to_json(self) -> str:
        payload = {
            "variant": self.variant,
            "threshold": _frac(self.threshold),
            "n": self.n,
            "component_count": self.component_count,
            "verdict": self.verdict,
            "rule_counts": {f"rule{k}": v for k, v in sorted(self.rule_counts.items())},
            "components": [
                {"vertices": verts, "kind": kind, "total": _frac(t)}
                for verts, kind, t in self.totals
            ],
            "violations": self.violations,
        }
        return json.dumps(payload) + "\n"


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def certify(g: Graph, p: PathPartition, ledger: PointLedger, rs: RuleSet) -> Certificate:
    """Sum balances per component and compare against the floor."""
    totals = []
    violations = []
    for cid in p.sorted_ids():
        comp = p.components[cid]
        total = sum((ledger.balance[v] for v in comp.vertices), Fraction(0))
        totals.append((list(comp.vertices), comp.kind, total))
        if total < rs.threshold:
            slice_ = sorted(
                (t for t in ledger.transfers if t[0] in set(comp.vertices)
                 or t[1] in set(comp.vertices)),
            )
            violations.append({
                "component": list(comp.vertices),
                "kind": comp.kind,
                "total": _frac(total),
                "transfers": [[a, b, _frac(amt), r] for a, b, amt, r in slice_],
            })
    totals.sort(key=lambda t: min(t[0]) if t[0] else -1)
    verdict = not violations
    count = p.component_count()
    if verdict and g.n and count > rs.count_bound(g.n):
        raise DischargeError("floor verdict inconsistent with component count")
    return Certificate(variant=rs.variant, threshold=rs.threshold, n=g.n,
                       component_count=count, totals=totals, verdict=verdict,
                       violations=violations, rule_counts=ledger.rule_counts)


# -- blocks ------------------------------------------------------------------

@dataclass
class Block:
    x_positions: list[int]
    p_positions: list[int]
    kind: int
    last: bool


V2_LABELS = (V2A, V2B)


def decompose_blocks(classes: list[str]) -> list[Block]:
    """Scan a class-annotated path left to right into blocks.

    A block is a maximal V2 run plus the non-V5 vertices that follow it, up to
    the next V2 vertex or the final end-vertex (excluded). In any non-last
    block the tail must be a single V3 or a pair of V4s; the last block's tail
    must be empty or one V4 (Kind 4), otherwise kinds follow shape: 1 for
    lone-V2 + V3, 2 for lone-V2 + V4 pair, 3 for a longer run with a tail.
    """
    if classes and (classes[0] != V1 or classes[-1] != V1):
        raise DischargeError("path annotation must start and end with V1")
    blocks: list[Block] = []
    i = 0
    limit = len(classes) - 1
    while i < limit:
        if classes[i] not in V2_LABELS:
            i += 1
            continue
        xs = []
        while i < limit and classes[i] in V2_LABELS:
            xs.append(i)
            i += 1
        ps = []
        while i < limit and classes[i] not in V2_LABELS:
            if classes[i] != V5:
                ps.append(i)
            i += 1
        last = i >= limit
        tail = [classes[j] for j in ps]
        if not last and tail != [V3] and tail != [V4, V4]:
            raise DischargeError(
                f"non-last block tail at positions {ps} is {tail}, "
                "expected one V3 or two V4s")
        if last and (tail == [] or tail == [V4]):
            kind = 4
        elif len(xs) == 1 and tail == [V3]:
            kind = 1
        elif len(xs) == 1 and tail == [V4, V4]:
            kind = 2
        elif len(xs) > 1 and tail:
            kind = 3
        else:
            raise DischargeError(
                f"block at positions {xs}+{ps} matches no kind (tail {tail})")
        blocks.append(Block(xs, ps, kind, last))
    return blocks


@dataclass
class AuditReport:
    checks: int = 0
    violations: list[dict] = field(default_factory=list)

    def ok(self) -> bool:
        return not self.violations

    def _fail(self, kind: str, **info):
        self.violations.append({"kind": kind, **info})


def audit_block_bounds(g: Graph, p: PathPartition, vc: VertexClassification,
                       ledger: PointLedger, rs: RuleSet) -> AuditReport:
    """Check the per-class floors, block floors, block-pair trichotomy, and
    V2-run bounds that the component floor argument relies on."""
    rep = AuditReport()
    floors_d6 = {V2A: Fraction(-5, 3), V2B: Fraction(-5, 3), V3: Fraction(1),
                 V4: Fraction(2, 3), V5: Fraction(0)}
    floors_d5 = {V2A: Fraction(-1), V2B: Fraction(-1), V3: Fraction(1),
                 V4: Fraction(1), V5: Fraction(0)}
    floors = floors_d6 if rs.variant == "D6" else floors_d5
    for v in range(g.n):
        floor = floors.get(vc.cls[v])
        if floor is None:
            continue
        rep.checks += 1
        if ledger.balance[v] < floor:
            rep._fail("class-floor", vertex=v, cls=vc.cls[v],
                      balance=_frac(ledger.balance[v]), floor=_frac(floor))
    for cid in p.sorted_ids():
        comp = p.components[cid]
        if comp.kind != PATH:
            continue
        verts = comp.vertices
        classes = [vc.cls[v] for v in verts]
        blocks = decompose_blocks(classes)
        pts = []
        for blk in blocks:
            members = blk.x_positions + blk.p_positions
            pts.append(sum((ledger.balance[verts[j]] for j in members), Fraction(0)))
        for blk, total in zip(blocks, pts):
            rep.checks += 1
            if total < Fraction(-5, 3):
                rep._fail("block-floor", path=verts, block=blk.x_positions,
                          total=_frac(total))
            if blk.kind == 2 and total < 0:
                rep._fail("kind2-floor", path=verts, block=blk.x_positions,
                          total=_frac(total))
            if blk.kind == 3 and total < Fraction(1, 3):
                rep._fail("kind3-floor", path=verts, block=blk.x_positions,
                          total=_frac(total))
            if len(blk.x_positions) > 1:
                k = len(blk.x_positions)
                run = sum((ledger.balance[verts[j]] for j in blk.x_positions),
                          Fraction(0))
                if run < Fraction(k, 3) - Fraction(4, 3):
                    rep._fail("run-bound", path=verts,
                              run=[verts[j] for j in blk.x_positions],
                              total=_frac(run))
        for (b1, t1), (b2, t2) in zip(zip(blocks, pts), zip(blocks[1:], pts[1:])):
            rep.checks += 1
            if t1 >= 0 or t1 + t2 >= 0:
                continue
            if not (b2.kind == 4 and t1 + t2 >= Fraction(-1)):
                rep._fail("pair-trichotomy", path=verts,
                          blocks=[b1.x_positions, b2.x_positions],
                          totals=[_frac(t1), _frac(t2)])
    return rep
