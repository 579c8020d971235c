"""Exhaustive search over orientations of complete multipartite graphs.

The depth-first search visits vertices in index order. At vertex ``v`` all
still-undecided arcs between ``v`` and higher-indexed vertices are decided
together as one block, so after the block ``N+(v)`` is final. Pruning rules
fire on finalised out-sets and on an optimistic closure of the undecided arcs;
every rule is a necessary condition for a complete competition graph, so
pruning never discards a witness.
"""

from __future__ import annotations

import itertools
import multiprocessing as mp
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

from .analysis import CYCLE3, OUTDEG3, PAIR, SPREAD2, TWO_PART_2_2
from .core import Digraph, MultipartiteTournament, PartiteStructure, bits, is_complete_competition

SEARCH_RULES = frozenset({SPREAD2, TWO_PART_2_2, OUTDEG3, CYCLE3, PAIR})
DEFAULT_MAX_SUM = 13
ENUMERATE_MAX_ARCS = 28

WITNESS = "witness"
EXHAUSTED = "exhausted"
INCONCLUSIVE = "inconclusive"


class BudgetExceeded(Exception):
    pass


@dataclass(frozen=True)
class SearchConfig:
    prune: frozenset[str] = SEARCH_RULES
    max_nodes: int | None = None
    workers: int = 1
    symmetry_fix: bool = False
    max_sum: int = DEFAULT_MAX_SUM

    def __post_init__(self) -> None:
        prune = frozenset(self.prune)
        object.__setattr__(self, "prune", prune)
        unknown = prune - SEARCH_RULES
        if unknown:
            raise ValueError(f"unknown pruning rules {sorted(unknown)}; known: {sorted(SEARCH_RULES)}")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.max_nodes is not None and self.max_nodes < 0:
            raise ValueError("max_nodes must be nonnegative")


@dataclass
class SearchOutcome:
    sizes: tuple[int, ...]
    status: str
    witness: MultipartiteTournament | None = None
    nodes_explored: int = 0
    prunes_by_rule: dict[str, int] = field(default_factory=dict)
    wall_time: float = 0.0
    symmetry_reduced: bool = False
    details: dict = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.status == WITNESS

    @property
    def exhausted(self) -> bool:
        return self.status == EXHAUSTED

    def summary(self) -> str:
        label = "K_{" + ",".join(map(str, self.sizes)) + "}"
        prunes = ", ".join(f"{k}={v}" for k, v in sorted(self.prunes_by_rule.items()) if v)
        note = " [symmetry-reduced]" if self.symmetry_reduced else ""
        return (
            f"{label}: {self.status}{note}; nodes={self.nodes_explored}; "
            f"prunes: {prunes or 'none'}; {self.wall_time:.2f}s"
        )


def parse_prune(text: str) -> frozenset[str]:
    """``all`` | ``none`` | comma-separated rule ids."""
    text = text.strip()
    if text == "all":
        return SEARCH_RULES
    if text in ("none", ""):
        return frozenset()
    return frozenset(s.strip().upper() for s in text.split(",") if s.strip())


def _block_patterns(targets: int, symmetry_groups: list[list[int]] | None = None) -> list[int]:
    """Out-masks over ``targets``, all-out first, lowest target most significant."""
    tl = list(bits(targets))
    m = len(tl)
    pats = []
    for idx in range((1 << m) - 1, -1, -1):
        s = 0
        for j in range(m):
            if idx >> (m - 1 - j) & 1:
                s |= 1 << tl[j]
        pats.append(s)
    return pats


def _canonical_root_patterns(parts: PartiteStructure) -> list[int]:
    """Vertex-0 blocks up to automorphisms of ``K_{sizes}`` fixing vertex 0.

    Within each other part only the number of out-arcs matters (taken as a
    prefix of the part); among other parts of equal size the counts are
    taken nonincreasing.
    """
    others = list(range(1, parts.k))
    allowed = []
    for counts in itertools.product(*(range(parts.sizes[p], -1, -1) for p in others)):
        ok = True
        for a, b in zip(range(len(others)), range(1, len(others))):
            if parts.sizes[others[a]] == parts.sizes[others[b]] and counts[a] < counts[b]:
                ok = False
                break
        if not ok:
            continue
        s = 0
        for p, c in zip(others, counts):
            s |= ((1 << c) - 1) << parts.offsets[p]
        allowed.append(s)
    order = {s: i for i, s in enumerate(_block_patterns(_cross_mask(parts, 0) & ~1))}
    return sorted(allowed, key=order.__getitem__)


def _cross_mask(parts: PartiteStructure, v: int) -> int:
    return ((1 << parts.n) - 1) & ~parts.part_mask_of(v)


class _Search:
    def __init__(self, parts: PartiteStructure, config: SearchConfig,
                 stop: Callable[[], bool] | None = None):
        self.parts = parts
        self.config = config
        # The rules presume another vertex to compete with.
        self.prune = config.prune if parts.n >= 2 else frozenset()
        self.stop = stop
        n = parts.n
        self.n = n
        self.part_masks = parts.part_masks
        self.part_index = parts.part_index
        self.targets = [_cross_mask(parts, v) & ~((1 << (v + 1)) - 1) for v in range(n)]
        self.patterns = [_block_patterns(t) for t in self.targets]
        if config.symmetry_fix and n:
            self.patterns[0] = _canonical_root_patterns(parts)
        self.nodes = 0
        self.prunes: Counter[str] = Counter()
        self.budget = config.max_nodes

    def _fresh_state(self) -> tuple[list[int], list[int]]:
        out = [0] * self.n
        und = [_cross_mask(self.parts, v) for v in range(self.n)]
        return out, und

    def root_patterns(self) -> list[int]:
        return list(self.patterns[0]) if self.n else []

    def run(self, root_subset: Sequence[int] | None = None) -> list[int] | None:
        """Return out-masks of the first witness, or ``None`` when exhausted."""
        if self.n == 0:
            return None
        out, und = self._fresh_state()
        self.out, self.und = out, und
        self.deg3: list[int] = []
        if root_subset is not None:
            self.patterns = list(self.patterns)
            self.patterns[0] = list(root_subset)
        if self._dfs(0):
            return list(self.out)
        return None

    # Pruning checks return the id of the violated rule, or None.

    def _check_final(self, v: int, fin: int) -> str | None:
        prune = self.prune
        deg = fin.bit_count()
        if OUTDEG3 in prune and deg < 3:
            return OUTDEG3
        if fin == 0:
            return SPREAD2 if SPREAD2 in prune else None
        pm, pi = self.part_masks, self.part_index
        p0 = pi[(fin & -fin).bit_length() - 1]
        rest = fin & ~pm[p0]
        if not rest:
            return SPREAD2 if SPREAD2 in prune else None
        if TWO_PART_2_2 in prune:
            p1 = pi[(rest & -rest).bit_length() - 1]
            if not rest & ~pm[p1] and ((fin & pm[p0]).bit_count() < 2 or rest.bit_count() < 2):
                return TWO_PART_2_2
        return None

    def _cycle_possible(self, triple: int) -> bool:
        a, b, c = bits(triple)
        pi = self.part_index
        if pi[a] == pi[b] or pi[b] == pi[c] or pi[a] == pi[c]:
            return False
        out = self.out
        ab, ba = out[a] >> b & 1, out[b] >> a & 1
        bc, cb = out[b] >> c & 1, out[c] >> b & 1
        ac, ca = out[a] >> c & 1, out[c] >> a & 1
        return not (ba or cb or ac) or not (ca or bc or ab)

    def _dfs(self, v: int) -> bool:
        n = self.n
        if v == n:
            return self._leaf()
        out, und = self.out, self.und
        prune = self.prune
        use_pair = PAIR in prune
        use_deg = OUTDEG3 in prune
        use_cyc = CYCLE3 in prune
        targets = self.targets[v]
        tlist = list(bits(targets))
        bit_v = 1 << v
        base_v = out[v]
        saved = [out[w] for w in tlist]
        und_v = und[v]
        for w in tlist:
            und[w] &= ~bit_v
        und[v] = 0
        deg3_len = len(self.deg3)
        found = False
        for s in self.patterns[v]:
            self.nodes += 1
            if self.budget is not None and self.nodes > self.budget:
                raise BudgetExceeded
            if self.stop is not None and (self.nodes & 1023) == 0 and self.stop():
                raise BudgetExceeded
            fin = base_v | s
            rule = self._check_final(v, fin)
            if rule is not None:
                self.prunes[rule] += 1
                continue
            out[v] = fin
            lost = targets & ~s
            for w in bits(lost):
                out[w] |= bit_v
            rule = None
            if use_deg:
                for w in bits(s):
                    if (out[w] | und[w]).bit_count() < 3:
                        rule = OUTDEG3
                        break
            if rule is None and use_cyc:
                if fin.bit_count() == 3 and not self._cycle_possible(fin):
                    rule = CYCLE3
                else:
                    for u in self.deg3:
                        if out[u] >> v & 1 and not self._cycle_possible(out[u]):
                            rule = CYCLE3
                            break
            if rule is None and use_pair:
                changed = s | bit_v
                pots = [out[x] | und[x] for x in range(n)]
                for a in bits(changed):
                    pa = pots[a]
                    for b in range(n):
                        if b != a and not pa & pots[b]:
                            rule = PAIR
                            break
                    if rule is not None:
                        break
            if rule is not None:
                self.prunes[rule] += 1
            else:
                if fin.bit_count() == 3:
                    self.deg3.append(v)
                if self._dfs(v + 1):
                    found = True
                    break
                del self.deg3[deg3_len:]
            for w, o in zip(tlist, saved):
                out[w] = o
        if found:
            return True
        out[v] = base_v
        und[v] = und_v
        for w in tlist:
            und[w] |= bit_v
        return False

    def _leaf(self) -> bool:
        for u in range(self.n):
            ou = self.out[u]
            for w in range(u + 1, self.n):
                if not ou & self.out[w]:
                    return False
        return True


def _check_cap(sizes: Sequence[int], config: SearchConfig) -> PartiteStructure:
    parts = PartiteStructure(tuple(sizes))
    if parts.n > config.max_sum:
        raise ValueError(f"{parts.n} vertices exceeds the search cap of {config.max_sum}")
    return parts


def _to_tournament(parts: PartiteStructure, out: Sequence[int]) -> MultipartiteTournament:
    t = MultipartiteTournament(Digraph(parts.n, tuple(out)), parts)
    t.require_valid()
    if not is_complete_competition(t.d):
        raise AssertionError("search returned a non-witness")
    return t


def exhaustive_search(sizes: Sequence[int], config: SearchConfig | None = None) -> SearchOutcome:
    """Find an orientation of ``K_{sizes}`` with complete competition graph or exhaust."""
    config = config or SearchConfig()
    parts = _check_cap(sizes, config)
    if config.workers > 1:
        return _parallel_search(parts, config)
    start = time.perf_counter()
    srch = _Search(parts, config)
    status = EXHAUSTED
    witness = None
    try:
        res = srch.run()
    except BudgetExceeded:
        status = INCONCLUSIVE
    else:
        if res is not None:
            status = WITNESS
            witness = _to_tournament(parts, res)
    return SearchOutcome(
        sizes=parts.sizes,
        status=status,
        witness=witness,
        nodes_explored=srch.nodes,
        prunes_by_rule={r: srch.prunes.get(r, 0) for r in sorted(config.prune)},
        wall_time=time.perf_counter() - start,
        symmetry_reduced=config.symmetry_fix,
    )


# Parallel search: the root block patterns are dealt out as one task each.
# A worker that finds a witness in task i lowers the shared stop index to i;
# tasks with a higher index abort, lower ones run to completion, so the
# reported witness is the one the single-worker search would return.

_shared: dict = {}


def _init_worker(stop_index, parts_sizes, config) -> None:
    _shared["stop"] = stop_index
    _shared["parts"] = PartiteStructure(parts_sizes)
    _shared["config"] = config


def _run_task(args: tuple[int, int]) -> tuple[int, list[int] | None, int, dict[str, int], bool]:
    idx, pattern = args
    stop_index = _shared["stop"]
    if idx > stop_index.value:
        return idx, None, 0, {}, True
    srch = _Search(_shared["parts"], _shared["config"], stop=lambda: idx > stop_index.value)
    aborted = False
    res = None
    try:
        res = srch.run(root_subset=[pattern])
    except BudgetExceeded:
        aborted = True
    if res is not None:
        with stop_index.get_lock():
            if idx < stop_index.value:
                stop_index.value = idx
    return idx, res, srch.nodes, dict(srch.prunes), aborted


def _parallel_search(parts: PartiteStructure, config: SearchConfig) -> SearchOutcome:
    start = time.perf_counter()
    roots = _Search(parts, config).root_patterns()
    ctx = mp.get_context("fork")
    stop_index = ctx.Value("q", len(roots))
    # Per-worker budgets would not add up to a global one; run the
    # parallel search unbudgeted and apply the budget to the merged count.
    worker_config = SearchConfig(config.prune, None, 1, config.symmetry_fix, config.max_sum)
    nodes = 0
    prunes: Counter[str] = Counter()
    results: dict[int, list[int]] = {}
    with ctx.Pool(config.workers, initializer=_init_worker,
                  initargs=(stop_index, parts.sizes, worker_config)) as pool:
        for idx, res, cnt, pr, _aborted in pool.imap_unordered(_run_task, enumerate(roots)):
            nodes += cnt
            prunes.update(pr)
            if res is not None:
                results[idx] = res
    status, witness = EXHAUSTED, None
    if results:
        status = WITNESS
        witness = _to_tournament(parts, results[min(results)])
    elif config.max_nodes is not None and nodes > config.max_nodes:
        status = INCONCLUSIVE
    return SearchOutcome(
        sizes=parts.sizes,
        status=status,
        witness=witness,
        nodes_explored=nodes + len(roots),
        prunes_by_rule={r: prunes.get(r, 0) for r in sorted(config.prune)},
        wall_time=time.perf_counter() - start,
        symmetry_reduced=config.symmetry_fix,
    )


def enumerate_all(sizes: Sequence[int], visitor: Callable[[MultipartiteTournament], object] | None = None) -> int:
    """Visit every orientation of ``K_{sizes}`` once; return how many there are."""
    parts = PartiteStructure(tuple(sizes))
    pairs = [(u, w) for u in range(parts.n) for w in range(u + 1, parts.n)
             if parts.part_index[u] != parts.part_index[w]]
    if len(pairs) > ENUMERATE_MAX_ARCS:
        raise ValueError(f"{len(pairs)} arcs exceeds the enumeration cap of {ENUMERATE_MAX_ARCS}")
    count = 0
    for out in iter_orientations(parts):
        count += 1
        if visitor is not None:
            visitor(MultipartiteTournament(Digraph(parts.n, out), parts))
    return count


def iter_orientations(parts: PartiteStructure) -> Iterator[tuple[int, ...]]:
    """Out-mask tuples of all ``2**|A|`` orientations (Gray-code order)."""
    n = parts.n
    pairs = [(u, w) for u in range(n) for w in range(u + 1, n)
             if parts.part_index[u] != parts.part_index[w]]
    out = [0] * n
    for u, w in pairs:
        out[u] |= 1 << w
    yield tuple(out)
    for i in range(1, 1 << len(pairs)):
        j = (i & -i).bit_length() - 1
        u, w = pairs[j]
        out[u] ^= 1 << w
        out[w] ^= 1 << u
        yield tuple(out)


def balanced_matrices(size: int = 4, line_sum: int = 2) -> list[tuple[int, ...]]:
    """All ``size x size`` 0/1 matrices with every row and column summing to ``line_sum``.

    Each matrix is a tuple of row bitmasks.
    """
    rows = [r for r in range(1 << size) if r.bit_count() == line_sum]
    found = []
    for combo in itertools.product(rows, repeat=size):
        if all(sum(r >> j & 1 for r in combo) == line_sum for j in range(size)):
            found.append(combo)
    return found


def refute_444() -> SearchOutcome:
    """Test every degree-balanced orientation of ``K_{4,4,4}``.

    In a complete competition graph on ``K_{4,4,4}`` each vertex has exactly
    two out- and two in-neighbours in each other part, so the arcs between
    any two parts form a 4x4 matrix with all line sums 2. Exhausting the
    ``B**3`` combinations therefore refutes ``K_{4,4,4}`` outright.
    """
    start = time.perf_counter()
    mats = balanced_matrices()
    # Per matrix: row masks (i beats j) and column masks of the complement (j beats i).
    rows = [m for m in mats]
    cols = [tuple(sum((~m[i] >> j & 1) << i for i in range(4)) for j in range(4)) for m in mats]
    candidates = 0
    complete = 0
    witness = None
    for a, (ra, ca) in enumerate(zip(rows, cols)):          # V1 -> V2
        for b, (rb, cb) in enumerate(zip(rows, cols)):      # V1 -> V3
            out1 = [ra[i] << 4 | rb[i] << 8 for i in range(4)]
            for rc, cc in zip(rows, cols):                  # V2 -> V3
                candidates += 1
                out = out1 + [ca[j] | rc[j] << 8 for j in range(4)] + [cb[l] | cc[l] << 4 for l in range(4)]
                ok = True
                for u in range(11):
                    ou = out[u]
                    for w in range(u + 1, 12):
                        if not ou & out[w]:
                            ok = False
                            break
                    if not ok:
                        break
                if ok:
                    complete += 1
                    if witness is None:
                        witness = out
    parts = PartiteStructure((4, 4, 4))
    status = EXHAUSTED
    wt = None
    if witness is not None:
        status = WITNESS
        wt = _to_tournament(parts, witness)
    outcome = SearchOutcome(
        sizes=(4, 4, 4),
        status=status,
        witness=wt,
        nodes_explored=candidates,
        prunes_by_rule={"BALANCE_444": 0},
        wall_time=time.perf_counter() - start,
        details={"balanced_matrices": len(mats), "candidates": candidates, "complete": complete},
    )
    return outcome


@dataclass
class CrosscheckRow:
    sizes: tuple[int, ...]
    oracle_exists: bool
    clause: str
    search_status: str
    nodes: int

    @property
    def agrees(self) -> bool:
        return self.search_status != INCONCLUSIVE and (self.search_status == WITNESS) == self.oracle_exists


@dataclass
class CrosscheckReport:
    max_sum: int
    rows: list[CrosscheckRow]
    wall_time: float = 0.0

    @property
    def disagreements(self) -> list[CrosscheckRow]:
        return [r for r in self.rows if not r.agrees]

    @property
    def yes_set(self) -> list[tuple[int, ...]]:
        return [r.sizes for r in self.rows if r.search_status == WITNESS]


def oracle_crosscheck(max_sum: int, config: SearchConfig | None = None) -> CrosscheckReport:
    """Compare search against the oracle for every size tuple with ``k >= 2`` and total ``<= max_sum``."""
    from .oracle import all_size_tuples, exists_complete_orientation

    config = config or SearchConfig(max_sum=max(max_sum, DEFAULT_MAX_SUM))
    start = time.perf_counter()
    rows = []
    for sizes in all_size_tuples(max_sum, min_parts=2):
        verdict = exists_complete_orientation(sizes)
        res = exhaustive_search(sizes, config)
        rows.append(CrosscheckRow(sizes, verdict.exists, verdict.clause, res.status, res.nodes_explored))
    return CrosscheckReport(max_sum, rows, time.perf_counter() - start)
