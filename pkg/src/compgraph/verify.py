"""Re-check every machine-checkable claim the library encodes.

``quick`` covers the embedded constructions, the oracle table, counting
refutations, a search-vs-oracle crosscheck up to 8 vertices and the
``K_{4,4,4}`` refutation. ``full`` adds the exhaustive refutations and a
synthesis sweep over all admissible tuples with at most 14 vertices.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable

from .analysis import check_all, refute_by_counting
from .construct import add_clone_vertex, lift, split_part
from .core import is_complete_competition, validate
from .oracle import all_size_tuples, exists_complete_orientation, minimal_total, synthesize_witness
from .search import SearchConfig, exhaustive_search, oracle_crosscheck, refute_444
from .witnesses import WitnessId, all_witnesses

LEVELS = ("quick", "full")

# (sizes, exists, clause): the boundary of every clause plus the tuples just outside it.
ORACLE_CASES = (
    ((1,), True, "K1_TRIVIAL"),
    ((2,), False, "K1_NO"),
    ((3, 3), False, "K2_NONE"),
    ((5, 4, 4), True, "K3_MAIN"),
    ((4, 4, 4), False, "K3_NO"),
    ((6, 4, 3), False, "K3_NO"),
    ((4, 3, 3, 1), True, "K4_A"),
    ((4, 2, 2, 2), True, "K4_B"),
    ((3, 3, 3, 2), True, "K4_C"),
    ((3, 3, 2, 2), False, "K4_NO"),
    ((3, 3, 3, 1), False, "K4_NO"),
    ((4, 2, 2, 1), False, "K4_NO"),
    ((3, 3, 2, 1, 1), True, "K5_A"),
    ((4, 2, 2, 1, 1), True, "K5_B"),
    ((2, 2, 2, 2, 1), True, "K5_C"),
    ((2, 2, 2, 1, 1), False, "K5_NO"),
    ((3, 2, 2, 1, 1), False, "K5_NO"),
    ((4, 3, 1, 1, 1), False, "K5_NO"),
    ((5, 1, 1, 1, 1, 1), True, "K6_A"),
    ((3, 2, 1, 1, 1, 1), True, "K6_B"),
    ((2, 2, 2, 1, 1, 1), True, "K6_C"),
    ((4, 1, 1, 1, 1, 1), False, "K6_NO"),
    ((2, 2, 1, 1, 1, 1), False, "K6_NO"),
    ((1,) * 7, True, "K7PLUS"),
)
MINIMAL_TOTALS = {3: 13, 4: 10, 5: 9, 6: 9, 7: 7, 8: 8}
COUNTING_REFUTED = ((3, 3, 2, 2), (3, 3, 3, 1), (2, 2, 2, 1, 1), (2, 2, 1, 1, 1, 1), (3, 1, 1, 1, 1, 1))
SEARCH_REFUTED = ((4, 1, 1, 1, 1, 1), (2, 2, 1, 1, 1, 1), (2, 2, 2, 1, 1), (3, 1, 1, 1, 1, 1), (3, 2, 2, 1, 1))
CROSSCHECK_YES_8 = [(1,) * 7, (1,) * 8, (2, 1, 1, 1, 1, 1, 1)]


@dataclass
class VerifyItem:
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.name} ({self.seconds:.2f}s): {self.detail}"


@dataclass
class VerifyReport:
    level: str
    seed: int
    items: list[VerifyItem] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(i.passed for i in self.items)

    def text(self) -> str:
        lines = [f"verify-paper level={self.level} seed={self.seed}"]
        lines += [i.line() for i in self.items]
        lines.append("all green" if self.passed else "FAILED")
        return "\n".join(lines)

    def as_dict(self) -> dict:
        return {
            "level": self.level,
            "seed": self.seed,
            "passed": self.passed,
            "items": [vars(i) for i in self.items],
        }


def _witnesses() -> tuple[bool, str]:
    bad = []
    for wid, t in all_witnesses().items():
        if validate(t) or not is_complete_competition(t.d) or not check_all(t).passed:
            bad.append(wid.value)
            continue
        out = t.d.out
        if any(not out[i] & out[j] for i in range(t.n) for j in range(i + 1, t.n)):
            bad.append(wid.value)
    if bad:
        return False, f"failed: {', '.join(bad)}"
    return True, f"{len(WitnessId)} constructions valid, all row pairs share a 1"


def _oracle_table() -> tuple[bool, str]:
    wrong = []
    for sizes, exists, clause in ORACLE_CASES:
        v = exists_complete_orientation(sizes)
        if (v.exists, v.clause) != (exists, clause):
            wrong.append(f"{sizes}: got {v}")
    got = {k: minimal_total(k) for k in MINIMAL_TOTALS}
    if got != MINIMAL_TOTALS:
        wrong.append(f"minimal totals {got}")
    if wrong:
        return False, "; ".join(wrong)
    return True, f"{len(ORACLE_CASES)} clause cases, minimal totals {got}"


def _counting() -> tuple[bool, str]:
    missed = [s for s in COUNTING_REFUTED if not refute_by_counting(s).refuted]
    unsound = [s for s in all_size_tuples(16)
               if exists_complete_orientation(s).exists and refute_by_counting(s).refuted]
    if missed or unsound:
        return False, f"not refuted: {missed}; refuted but admissible: {unsound}"
    return True, f"{len(COUNTING_REFUTED)} tuples refuted, no admissible tuple with n <= 16 refuted"


def _crosscheck() -> tuple[bool, str]:
    rep = oracle_crosscheck(8)
    yes = sorted(rep.yes_set)
    ok = not rep.disagreements and yes == sorted(CROSSCHECK_YES_8)
    return ok, f"{len(rep.rows)} tuples, {len(rep.disagreements)} disagreements, yes-set {yes}"


def _k444() -> tuple[bool, str]:
    out = refute_444()
    d = out.details
    ok = out.exhausted and d["balanced_matrices"] == 90 and d["candidates"] == 729000 and d["complete"] == 0
    return ok, f"B={d['balanced_matrices']}, candidates={d['candidates']}, complete={d['complete']}"


def _constructions(seed: int) -> tuple[bool, str]:
    """A seeded sample of lifts, clones and splits applied to the embedded constructions."""
    rng = random.Random(seed)
    bases = list(all_witnesses().values())
    for _ in range(20):
        t = rng.choice(bases)
        op = rng.randrange(3)
        if op == 0:
            grow = [s + rng.randrange(2) for s in t.sizes] + [1] * rng.randrange(2)
            # Sorting a coordinatewise-larger vector keeps it above the sorted source.
            t = lift(t, sorted(grow, reverse=True))
        elif op == 1:
            t = add_clone_vertex(t, rng.randrange(t.n))
        else:
            big = [i for i, s in enumerate(t.sizes) if s >= 2]
            if big:
                p = rng.choice(big)
                a = rng.randrange(1, t.sizes[p])
                t = split_part(t, p, (a, t.sizes[p] - a))
        if validate(t) or not is_complete_competition(t.d):
            return False, f"completeness lost on {t.sizes}"
    return True, "20 random constructions stay complete"


def _exhaustive(sizes: tuple[int, ...]) -> Callable[[], tuple[bool, str]]:
    def run() -> tuple[bool, str]:
        out = exhaustive_search(sizes, SearchConfig())
        return out.exhausted, out.summary()
    return run


def _synthesis_sweep() -> tuple[bool, str]:
    count = 0
    for s in all_size_tuples(14):
        t = synthesize_witness(s)
        if t is None:
            continue
        count += 1
        if t.sizes != s or validate(t) or not is_complete_competition(t.d):
            return False, f"bad witness for {s}"
    return True, f"{count} admissible tuples synthesised and certified"


def verify_paper(level: str = "quick", seed: int = 0,
                 progress: Callable[[VerifyItem], None] | None = None) -> VerifyReport:
    if level not in LEVELS:
        raise ValueError(f"level must be one of {LEVELS}, got {level!r}")
    steps: list[tuple[str, Callable[[], tuple[bool, str]]]] = [
        ("witnesses", _witnesses),
        ("oracle table", _oracle_table),
        ("counting refutations", _counting),
        ("constructions", lambda: _constructions(seed)),
        ("crosscheck n<=8", _crosscheck),
        ("K_{4,4,4} refutation", _k444),
    ]
    if level == "full":
        for s in SEARCH_REFUTED:
            steps.append(("search K_{" + ",".join(map(str, s)) + "}", _exhaustive(s)))
        steps.append(("synthesis sweep n<=14", _synthesis_sweep))
    report = VerifyReport(level, seed)
    for name, fn in steps:
        start = time.perf_counter()
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failed check, not an aborted run
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        item = VerifyItem(name, ok, detail, time.perf_counter() - start)
        report.items.append(item)
        if progress is not None:
            progress(item)
    return report
