"""Which ``K_{n_1,...,n_k}`` admit an orientation with complete competition graph.

:func:`exists_complete_orientation` evaluates the full characterisation and
names the clause that decides it; :func:`synthesize_witness` builds a
certified orientation for every positive answer from the embedded
constructions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .construct import lift, split_part
from .core import Digraph, MultipartiteTournament, PartiteStructure, is_complete_competition, validate_sizes
from .witnesses import WitnessId, load_witness

POSITIVE = ("K1_TRIVIAL", "K3_MAIN", "K4_A", "K4_B", "K4_C", "K5_A", "K5_B", "K5_C",
            "K6_A", "K6_B", "K6_C", "K7PLUS")
NEGATIVE = ("K1_NO", "K2_NONE", "K3_NO", "K4_NO", "K5_NO", "K6_NO")


@dataclass(frozen=True)
class OracleVerdict:
    exists: bool
    clause: str

    def __post_init__(self) -> None:
        if self.exists != (self.clause in POSITIVE):
            raise ValueError(f"clause {self.clause} inconsistent with exists={self.exists}")

    def __str__(self) -> str:
        return f"{'yes' if self.exists else 'no'} clause={self.clause}"


def _clause(sizes: tuple[int, ...]) -> str:
    k = len(sizes)
    n = (0,) + sizes  # 1-based access: n[1] is the largest part
    if k == 1:
        return "K1_TRIVIAL" if n[1] == 1 else "K1_NO"
    if k == 2:
        return "K2_NONE"
    if k == 3:
        return "K3_MAIN" if n[1] >= 5 and n[3] >= 4 else "K3_NO"
    if k == 4:
        if n[1] >= 4 and n[3] >= 3 and n[4] == 1:
            return "K4_A"
        if n[1] >= 4 and n[3] == 2 and n[4] == 2:
            return "K4_B"
        if n[3] >= 3 and n[4] >= 2:
            return "K4_C"
        return "K4_NO"
    if k == 5:
        if n[1] == 3 and n[2] == 3 and n[3] >= 2 and n[4] == 1 and n[5] == 1:
            return "K5_A"
        # n_2 >= n_3 holds by sortedness.
        if n[1] >= 4 and n[3] >= 2 and n[4] == 1 and n[5] == 1:
            return "K5_B"
        if n[4] >= 2:
            return "K5_C"
        return "K5_NO"
    if k == 6:
        if n[1] >= 5 and n[2] == 1:
            return "K6_A"
        if n[1] >= 3 and n[2] >= 2 and n[3] == 1:
            return "K6_B"
        if n[3] >= 2:
            return "K6_C"
        return "K6_NO"
    return "K7PLUS"


def exists_complete_orientation(sizes: Sequence[int]) -> OracleVerdict:
    validate_sizes(sizes)
    clause = _clause(tuple(sizes))
    return OracleVerdict(clause in POSITIVE, clause)


def size_tuples(total: int, k: int | None = None, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """Nonincreasing positive tuples summing to ``total``, in lexicographic order.

    ``k`` fixes the number of parts.
    """
    if max_part is None:
        max_part = total
    if total == 0:
        if k in (None, 0):
            yield ()
        return
    if k == 0:
        return
    for first in range(1, min(total, max_part) + 1):
        rest_k = None if k is None else k - 1
        for rest in size_tuples(total - first, rest_k, first):
            yield (first,) + rest


def all_size_tuples(max_sum: int, min_parts: int = 1) -> Iterator[tuple[int, ...]]:
    """Every size tuple with total at most ``max_sum``, by total then lexicographically."""
    for total in range(1, max_sum + 1):
        for s in size_tuples(total):
            if len(s) >= min_parts:
                yield s


def minimal_total(k: int, search_limit: int | None = None) -> int | None:
    """Smallest ``n`` such that some ``k``-part size tuple with total ``n`` is admissible.

    Scans totals upward from ``k`` (``search_limit`` defaults to ``k + 16``);
    ``None`` if nothing admissible is found.
    """
    if k < 1:
        raise ValueError("k must be positive")
    limit = k + 16 if search_limit is None else search_limit
    for total in range(k, limit + 1):
        for s in size_tuples(total, k):
            if exists_complete_orientation(s).exists:
                return total
    return None


# Base construction behind each positive clause.
_ROUTES = {
    "K3_MAIN": WitnessId.A4,
    "K4_A": WitnessId.A5,
    "K4_B": WitnessId.A6,
    "K4_C": WitnessId.A7,
    "K5_A": WitnessId.A8,
    "K5_C": WitnessId.A9,
    "K6_A": WitnessId.A1,
    "K6_B": WitnessId.A2,
    "K6_C": WitnessId.A3,
    "K7PLUS": WitnessId.QR7,
}


def base_witness(clause: str) -> MultipartiteTournament:
    """The smallest construction from which every tuple under ``clause`` is lifted."""
    if clause == "K5_B":
        a6 = load_witness(WitnessId.A6)
        return split_part(a6, a6.k - 1, (1, 1))
    if clause == "K1_TRIVIAL":
        return MultipartiteTournament(Digraph(1, (0,)), PartiteStructure((1,)))
    return load_witness(_ROUTES[clause])


def synthesize_witness(sizes: Sequence[int]) -> MultipartiteTournament | None:
    """An orientation of ``K_{sizes}`` with complete competition graph, or ``None`` if none exists."""
    verdict = exists_complete_orientation(sizes)
    if not verdict.exists:
        return None
    base = base_witness(verdict.clause)
    t = lift(base, tuple(sizes)) if base.sizes != tuple(sizes) else base
    t.require_valid()
    if t.sizes != tuple(sizes) or not is_complete_competition(t.d):
        raise AssertionError(f"synthesised witness for {list(sizes)} failed its check")
    return t
