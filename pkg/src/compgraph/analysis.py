"""Necessary conditions for a complete competition graph.

Each check takes a multipartite tournament and reports which vertices (or
pairs, or counts) violate the condition. Every condition holds in any
multipartite tournament whose competition graph is complete, so a failure
certifies incompleteness; a pass proves nothing. The same condition ids name
the pruning rules of :mod:`compgraph.search`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Sequence

from .core import MultipartiteTournament, PartiteStructure, bits, validate_sizes

SPREAD2 = "SPREAD2"
TWO_PART_2_2 = "TWO_PART_2_2"
OUTDEG3 = "OUTDEG3"
COUNT_BOUND = "COUNT_BOUND"
CYCLE3 = "CYCLE3"
SIZE1_PARTS = "SIZE1_PARTS"
THREE_PART_SUM = "THREE_PART_SUM"
N_LOWER_BOUND = "N_LOWER_BOUND"
BALANCE_444 = "BALANCE_444"
DTILDE = "DTILDE"
# Search-only rule: every pair keeps a candidate common out-neighbour.
PAIR = "PAIR"

CONDITION_IDS = (
    SPREAD2, TWO_PART_2_2, OUTDEG3, COUNT_BOUND, CYCLE3,
    SIZE1_PARTS, THREE_PART_SUM, N_LOWER_BOUND, BALANCE_444, DTILDE,
)


@dataclass
class CheckResult:
    condition: str
    passed: bool
    failures: list[Any] = field(default_factory=list)
    applicable: bool = True
    detail: str = ""

    def as_dict(self) -> dict:
        return {
            "condition": self.condition,
            "status": ("pass" if self.passed else "fail") if self.applicable else "n/a",
            "failures": [list(f) if isinstance(f, tuple) else f for f in self.failures],
            "detail": self.detail,
        }


def _not_applicable(condition: str, why: str) -> CheckResult:
    return CheckResult(condition, True, applicable=False, detail=why)


def _parts_hit(t: MultipartiteTournament, mask: int) -> list[int]:
    """Sizes of the intersections of ``mask`` with each part (zeros included)."""
    return [(mask & pm).bit_count() for pm in t.parts.part_masks]


def _single_vertex(condition: str) -> CheckResult:
    return _not_applicable(condition, "a single vertex competes with nobody")


def check_spread2(t: MultipartiteTournament) -> CheckResult:
    if t.n < 2:
        return _single_vertex(SPREAD2)
    bad = [v for v in range(t.n) if sum(1 for c in _parts_hit(t, t.d.out[v]) if c) < 2]
    return CheckResult(SPREAD2, not bad, bad, detail="out-neighbours meet at least two parts")


def check_two_part_2_2(t: MultipartiteTournament) -> CheckResult:
    if t.n < 2:
        return _single_vertex(TWO_PART_2_2)
    bad = []
    for v in range(t.n):
        hit = [c for c in _parts_hit(t, t.d.out[v]) if c]
        if len(hit) == 2 and min(hit) < 2:
            bad.append(v)
    return CheckResult(TWO_PART_2_2, not bad, bad,
                       detail="out-neighbours in exactly two parts take at least two from each")


def check_outdeg3(t: MultipartiteTournament) -> CheckResult:
    if t.n < 2:
        return _single_vertex(OUTDEG3)
    bad = [v for v in range(t.n) if t.d.out[v].bit_count() < 3]
    return CheckResult(OUTDEG3, not bad, bad, detail="every outdegree is at least 3")


def is_directed_triangle(t: MultipartiteTournament, triple: int) -> bool:
    a, b, c = bits(triple)
    has = t.d.has_arc
    return (has(a, b) and has(b, c) and has(c, a)) or (has(a, c) and has(c, b) and has(b, a))


def outdeg3_vertices(t: MultipartiteTournament) -> list[int]:
    return [v for v in range(t.n) if t.d.out[v].bit_count() == 3]


def check_cycle3(t: MultipartiteTournament) -> CheckResult:
    if t.n < 2:
        return _single_vertex(CYCLE3)
    bad = [u for u in outdeg3_vertices(t) if not is_directed_triangle(t, t.d.out[u])]
    return CheckResult(CYCLE3, not bad, bad,
                       detail="out-neighbours of an outdegree-3 vertex form a directed 3-cycle")


def count_bound(sizes: Sequence[int]) -> tuple[int, int]:
    """``(|A|, max(4n - |A|, 0))``: arc count and forced number of outdegree-3 vertices."""
    parts = PartiteStructure(tuple(sizes))
    arcs = parts.arc_count
    return arcs, max(4 * parts.n - arcs, 0)


def check_count_bound(t: MultipartiteTournament) -> CheckResult:
    if t.n < 2:
        return _single_vertex(COUNT_BOUND)
    arcs = t.d.arc_count
    need = max(4 * t.n - arcs, 0)
    have = len(outdeg3_vertices(t))
    ok = have >= need
    return CheckResult(COUNT_BOUND, ok, [] if ok else [have],
                       detail=f"{have} vertices of outdegree 3, at least {need} required (|A|={arcs})")


def check_size1_parts(t: MultipartiteTournament) -> CheckResult:
    k = t.k
    if k not in (4, 5):
        return _not_applicable(SIZE1_PARTS, "only for k in {4,5}")
    ones = [i for i, s in enumerate(t.sizes) if s == 1]
    ok = len(ones) <= k - 3
    return CheckResult(SIZE1_PARTS, ok, [] if ok else [len(ones)],
                       detail=f"{len(ones)} parts of size 1, at most {k - 3} allowed")


def check_three_part_sum(t: MultipartiteTournament) -> CheckResult:
    if t.k not in (4, 5):
        return _not_applicable(THREE_PART_SUM, "only for k in {4,5}")
    bad = []
    for u in outdeg3_vertices(t):
        ps = {t.parts.part_index[x] for x in bits(t.d.out[u])}
        if len(ps) == 3 and sum(t.sizes[p] for p in ps) > t.n - 4:
            bad.append(u)
    return CheckResult(THREE_PART_SUM, not bad, bad,
                       detail="parts meeting N+(u) of an outdegree-3 vertex u hold at most n-4 vertices")


def _n_lower(k: int) -> int:
    return 10 if k == 4 else 9


def check_n_lower_bound(t: MultipartiteTournament) -> CheckResult:
    if t.k not in (4, 5, 6):
        return _not_applicable(N_LOWER_BOUND, "only for k in {4,5,6}")
    low = _n_lower(t.k)
    deg3 = outdeg3_vertices(t)
    ok = not deg3 or t.n >= low
    return CheckResult(N_LOWER_BOUND, ok, [] if ok else deg3[:1],
                       detail=f"an outdegree-3 vertex requires n >= {low} (n={t.n})")


def check_balance_444(t: MultipartiteTournament) -> CheckResult:
    if t.sizes != (4, 4, 4):
        return _not_applicable(BALANCE_444, "only for K_{4,4,4}")
    bad = []
    for v in range(t.n):
        own = t.parts.part_index[v]
        for j, pm in enumerate(t.parts.part_masks):
            if j != own and (t.d.out[v] & pm).bit_count() != 2:
                bad.append((v, j))
    pairs = equal_out_pairs(t)
    info = "; equal out-neighbourhood pairs: " + (
        ", ".join(f"{x},{y} toward part {j}" for x, y, j in pairs) if pairs else "none")
    return CheckResult(BALANCE_444, not bad, bad,
                       detail="exactly 2 out- and 2 in-neighbours in each other part" + info)


def equal_out_pairs(t: MultipartiteTournament) -> list[tuple[int, int, int]]:
    """Triples ``(x, y, j)`` with ``x, y`` in one part and ``N+(x) ∩ V_j == N+(y) ∩ V_j``."""
    found = []
    pm = t.parts.part_masks
    for i in range(t.k):
        for x, y in itertools.combinations(t.parts.part(i), 2):
            for j in range(t.k):
                if j != i and t.d.out[x] & pm[j] == t.d.out[y] & pm[j]:
                    found.append((x, y, j))
    return found


@dataclass(frozen=True)
class DTildeEmbedding:
    """``u -> v1,v2,v3``; ``v1->v2->v3->v1``; ``w_i`` a common out-neighbour of ``v_i, v_{i+1}``."""

    u: int
    v: tuple[int, int, int]
    w: tuple[int, int, int]

    def arcs(self) -> list[tuple[int, int]]:
        u, (v1, v2, v3), (w1, w2, w3) = self.u, self.v, self.w
        return [
            (u, v1), (u, v2), (u, v3),
            (v1, v2), (v2, v3), (v3, v1),
            (v1, w1), (v2, w1), (v2, w2), (v3, w2), (v3, w3), (v1, w3),
            (w1, v3), (w2, v1), (w3, v2),
        ]


def dtilde_embedding(t: MultipartiteTournament, u: int) -> DTildeEmbedding | None:
    """Lexicographically least embedding of the seven-vertex configuration at ``u``.

    Requires ``outdeg(u) == 3``. Returns ``None`` when no embedding exists,
    which for a complete competition graph with ``k in {4,5,6}`` cannot happen.
    """
    d = t.d
    if not 0 <= u < t.n:
        raise IndexError(f"vertex {u} out of range for n={t.n}")
    if d.out[u].bit_count() != 3:
        raise ValueError(f"vertex {u} has outdegree {d.out[u].bit_count()}, expected 3")
    a, b, c = bits(d.out[u])
    if d.has_arc(a, b) and d.has_arc(b, c) and d.has_arc(c, a):
        cycle = (a, b, c)
    elif d.has_arc(a, c) and d.has_arc(c, b) and d.has_arc(b, a):
        cycle = (a, c, b)
    else:
        return None
    best = None
    for r in range(3):
        v = cycle[r:] + cycle[:r]
        choices = []
        for i in range(3):
            common = d.out[v[i]] & d.out[v[(i + 1) % 3]] & d.inn[v[(i + 2) % 3]]
            choices.append(list(bits(common)))
        for w in itertools.product(*choices):
            if len(set(w)) == 3:
                cand = (v, w)
                if best is None or cand < best:
                    best = cand
                break
    if best is None:
        return None
    return DTildeEmbedding(u, best[0], best[1])


def check_dtilde(t: MultipartiteTournament) -> CheckResult:
    if t.k not in (4, 5, 6):
        return _not_applicable(DTILDE, "only for k in {4,5,6}")
    bad = [u for u in outdeg3_vertices(t) if dtilde_embedding(t, u) is None]
    return CheckResult(DTILDE, not bad, bad,
                       detail="every outdegree-3 vertex carries the seven-vertex configuration")


CHECKS = (
    check_spread2, check_two_part_2_2, check_outdeg3, check_count_bound, check_cycle3,
    check_size1_parts, check_three_part_sum, check_n_lower_bound, check_balance_444, check_dtilde,
)


@dataclass
class ConditionReport:
    results: list[CheckResult]
    complete: bool

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def __getitem__(self, condition: str) -> CheckResult:
        for r in self.results:
            if r.condition == condition:
                return r
        raise KeyError(condition)

    def as_dict(self) -> dict:
        return {
            "competition_graph": "complete" if self.complete else "incomplete",
            "all_pass": self.passed,
            "conditions": [r.as_dict() for r in self.results],
        }

    def table(self) -> str:
        lines = [f"{'condition':<15} {'status':<6} failures"]
        for r in self.results:
            d = r.as_dict()
            fails = ", ".join(map(str, r.failures)) if r.failures else "-"
            lines.append(f"{r.condition:<15} {d['status']:<6} {fails}")
        lines.append("competition graph: " + ("complete" if self.complete else "incomplete"))
        return "\n".join(lines)


def check_all(t: MultipartiteTournament) -> ConditionReport:
    return ConditionReport([check(t) for check in CHECKS], t.is_complete_competition())


@dataclass
class Refutation:
    sizes: tuple[int, ...]
    refuted: bool
    reasons: list[tuple[str, str]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.refuted

    def summary(self) -> str:
        label = "K_{" + ",".join(map(str, self.sizes)) + "}"
        if not self.refuted:
            return f"{label}: inconclusive"
        return f"{label}: refuted\n" + "\n".join(f"  {cid}: {text}" for cid, text in self.reasons)


def refute_by_counting(sizes: Sequence[int]) -> Refutation:
    """Try to rule out ``K_{sizes}`` from size data alone."""
    validate_sizes(sizes)
    sizes = tuple(sizes)
    k, n = len(sizes), sum(sizes)
    if k == 1:
        if n >= 2:
            return Refutation(sizes, True, [(OUTDEG3, "a single part has no arcs, every outdegree is 0")])
        return Refutation(sizes, False)
    if k == 2:
        return Refutation(sizes, True, [(SPREAD2, "bipartite: every out-set lies in the one other part")])
    if k in (4, 5):
        ones = sum(1 for s in sizes if s == 1)
        if ones > k - 3:
            return Refutation(sizes, True, [(SIZE1_PARTS, f"{ones} parts of size 1 > k-3 = {k - 3}")])
    if k in (4, 5, 6):
        arcs, forced = count_bound(sizes)
        if forced > 0:
            first = (COUNT_BOUND, f"|A| = {arcs} < 4n = {4 * n}: at least {forced} vertices of outdegree 3")
            low = _n_lower(k)
            if n < low:
                return Refutation(sizes, True, [first, (N_LOWER_BOUND, f"n = {n} < {low}")])
            if k in (4, 5):
                smallest = sum(sorted(sizes)[:3])
                if smallest > n - 4:
                    return Refutation(sizes, True, [
                        first,
                        (THREE_PART_SUM, f"smallest three-part sum {smallest} > n-4 = {n - 4}"),
                    ])
    return Refutation(sizes, False)
