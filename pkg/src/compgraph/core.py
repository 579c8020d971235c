"""Digraphs, partite structures and competition graphs.

Vertex sets are stored as integer bitmasks: bit ``j`` of ``out[i]`` is set
iff there is an arc ``i -> j``. Two vertices compete iff the bitwise AND of
their out-masks is nonzero.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

DEFAULT_MAX_N = 64


def max_vertices() -> int:
    """Vertex cap, overridable through ``COMPGRAPH_MAX_N``."""
    raw = os.environ.get("COMPGRAPH_MAX_N")
    if raw is None:
        return DEFAULT_MAX_N
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"COMPGRAPH_MAX_N must be an integer, got {raw!r}") from None
    if cap < 1:
        raise ValueError("COMPGRAPH_MAX_N must be positive")
    return cap


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def popcount(mask: int) -> int:
    return mask.bit_count()


@dataclass(frozen=True)
class PartiteStructure:
    """Part sizes ``n_1 >= ... >= n_k``; part ``i`` occupies consecutive indices."""

    sizes: tuple[int, ...]

    def __post_init__(self) -> None:
        sizes = tuple(self.sizes)
        object.__setattr__(self, "sizes", sizes)
        validate_sizes(sizes)
        if sum(sizes) > max_vertices():
            raise ValueError(f"{sum(sizes)} vertices exceeds the cap of {max_vertices()}")

    @property
    def k(self) -> int:
        return len(self.sizes)

    @property
    def n(self) -> int:
        return sum(self.sizes)

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        out = [0]
        for s in self.sizes:
            out.append(out[-1] + s)
        return tuple(out)

    @cached_property
    def part_index(self) -> tuple[int, ...]:
        return tuple(i for i, s in enumerate(self.sizes) for _ in range(s))

    @cached_property
    def part_masks(self) -> tuple[int, ...]:
        return tuple(((1 << s) - 1) << self.offsets[i] for i, s in enumerate(self.sizes))

    def part_of(self, v: int) -> int:
        if not 0 <= v < self.n:
            raise IndexError(f"vertex {v} out of range for n={self.n}")
        return self.part_index[v]

    def part(self, i: int) -> range:
        return range(self.offsets[i], self.offsets[i + 1])

    def part_mask_of(self, v: int) -> int:
        return self.part_masks[self.part_of(v)]

    @property
    def arc_count(self) -> int:
        """Number of arcs of any orientation of the complete multipartite graph."""
        n = self.n
        return (n * n - sum(s * s for s in self.sizes)) // 2


def validate_sizes(sizes: Sequence[int]) -> None:
    """Raise ``ValueError`` unless ``sizes`` is a nonempty nonincreasing tuple of positive ints."""
    if len(sizes) == 0:
        raise ValueError("sizes must be nonempty")
    for s in sizes:
        if not isinstance(s, int) or isinstance(s, bool) or s < 1:
            raise ValueError(f"part sizes must be positive integers, got {list(sizes)}")
    if any(a < b for a, b in zip(sizes, sizes[1:])):
        raise ValueError(f"part sizes must be nonincreasing, got {list(sizes)}")


@dataclass(frozen=True)
class Digraph:
    """Loopless digraph on vertices ``0..n-1`` with out-neighbourhoods as bitmasks.

    Two-cycles are representable so that malformed input can be diagnosed by
    :func:`validate`; every constructor in this package produces digraphs
    without them.
    """

    n: int
    out: tuple[int, ...]

    def __post_init__(self) -> None:
        out = tuple(self.out)
        object.__setattr__(self, "out", out)
        if self.n < 0 or len(out) != self.n:
            raise ValueError(f"expected {self.n} out-masks, got {len(out)}")
        if self.n > max_vertices():
            raise ValueError(f"{self.n} vertices exceeds the cap of {max_vertices()}")
        full = (1 << self.n) - 1
        for v, m in enumerate(out):
            if m < 0 or m & ~full:
                raise ValueError(f"out-mask of vertex {v} refers to vertices outside 0..{self.n - 1}")
            if m >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> Digraph:
        out = [0] * n
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc ({u},{v}) out of range for n={n}")
            out[u] |= 1 << v
        return cls(n, tuple(out))

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence[int]]) -> Digraph:
        n = len(rows)
        out = []
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ValueError(f"row {i} has length {len(row)}, expected {n}")
            out.append(mask_of(j for j, a in enumerate(row) if a))
        return cls(n, tuple(out))

    @cached_property
    def inn(self) -> tuple[int, ...]:
        inn = [0] * self.n
        for u, m in enumerate(self.out):
            for v in bits(m):
                inn[v] |= 1 << u
        return tuple(inn)

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.out[u])]

    @property
    def arc_count(self) -> int:
        return sum(popcount(m) for m in self.out)

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.out[u] >> v & 1)

    def outdegree(self, v: int) -> int:
        return popcount(self.out[v])

    def indegree(self, v: int) -> int:
        return popcount(self.inn[v])

    def matrix(self) -> list[list[int]]:
        return [[self.out[i] >> j & 1 for j in range(self.n)] for i in range(self.n)]


def _check_vertex(d: Digraph, v: int) -> None:
    if not 0 <= v < d.n:
        raise IndexError(f"vertex {v} out of range for n={d.n}")


def out_neighbors(d: Digraph, v: int) -> frozenset[int]:
    _check_vertex(d, v)
    return frozenset(bits(d.out[v]))


def in_neighbors(d: Digraph, v: int) -> frozenset[int]:
    _check_vertex(d, v)
    return frozenset(bits(d.inn[v]))


@dataclass(frozen=True)
class CompetitionGraph:
    """Simple undirected graph; ``adj[u]`` is the neighbour mask of ``u``."""

    n: int
    adj: tuple[int, ...]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u]) if u < v]

    @property
    def edge_count(self) -> int:
        return sum(popcount(m) for m in self.adj) // 2

    def is_complete(self) -> bool:
        return self.edge_count == self.n * (self.n - 1) // 2


def competition_graph(d: Digraph) -> CompetitionGraph:
    out = d.out
    adj = [0] * d.n
    for u in range(d.n):
        ou = out[u]
        if not ou:
            continue
        for v in range(u + 1, d.n):
            if ou & out[v]:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
    return CompetitionGraph(d.n, tuple(adj))


def first_noncompeting_pair(d: Digraph) -> tuple[int, int] | None:
    """Lexicographically first pair ``(u, v)`` without a common out-neighbour."""
    out = d.out
    for u in range(d.n):
        ou = out[u]
        for v in range(u + 1, d.n):
            if not ou & out[v]:
                return (u, v)
    return None


def is_complete_competition(d: Digraph) -> bool:
    return first_noncompeting_pair(d) is None


@dataclass(frozen=True)
class Violation:
    kind: str
    pair: tuple[int, int] = (-1, -1)
    detail: str = ""

    def __str__(self) -> str:
        u, v = self.pair
        if self.kind == "intra-part arc":
            return f"intra-part arc ({u},{v})"
        if self.kind == "2-cycle":
            return f"2-cycle {{{u},{v}}}"
        if self.kind == "missing cross-part arc":
            return f"missing cross-part arc {{{u},{v}}}"
        return f"{self.kind}: {self.detail}"


@dataclass(frozen=True)
class MultipartiteTournament:
    """An orientation of the complete multipartite graph ``K_{sizes}``.

    Construction does not check the orientation invariants; call
    :func:`validate` or :meth:`require_valid`.
    """

    d: Digraph
    parts: PartiteStructure

    @classmethod
    def from_matrix(cls, sizes: Sequence[int], rows: Sequence[Sequence[int]]) -> MultipartiteTournament:
        return cls(Digraph.from_matrix(rows), PartiteStructure(tuple(sizes)))

    @classmethod
    def from_arcs(cls, sizes: Sequence[int], arcs: Iterable[tuple[int, int]]) -> MultipartiteTournament:
        parts = PartiteStructure(tuple(sizes))
        return cls(Digraph.from_arcs(parts.n, arcs), parts)

    @property
    def n(self) -> int:
        return self.d.n

    @property
    def sizes(self) -> tuple[int, ...]:
        return self.parts.sizes

    @property
    def k(self) -> int:
        return self.parts.k

    def out_neighbors(self, v: int) -> frozenset[int]:
        return out_neighbors(self.d, v)

    def in_neighbors(self, v: int) -> frozenset[int]:
        return in_neighbors(self.d, v)

    def require_valid(self) -> MultipartiteTournament:
        problems = validate(self)
        if problems:
            shown = "; ".join(str(p) for p in problems[:5])
            more = f" (+{len(problems) - 5} more)" if len(problems) > 5 else ""
            raise InvalidTournament(f"invalid multipartite tournament: {shown}{more}", problems)
        return self

    def is_complete_competition(self) -> bool:
        return is_complete_competition(self.d)


class InvalidTournament(ValueError):
    def __init__(self, message: str, violations: Sequence[Violation] = ()):
        super().__init__(message)
        self.violations = list(violations)


def validate(t: MultipartiteTournament) -> list[Violation]:
    """Every violated orientation invariant of ``t``; empty means valid."""
    d, parts = t.d, t.parts
    problems: list[Violation] = []
    if d.n != parts.n:
        problems.append(Violation("size mismatch", detail=f"digraph has {d.n} vertices, sizes sum to {parts.n}"))
        return problems
    out = d.out
    for u in range(d.n):
        pu = parts.part_index[u]
        for v in range(u + 1, d.n):
            uv = out[u] >> v & 1
            vu = out[v] >> u & 1
            if parts.part_index[v] == pu:
                if uv:
                    problems.append(Violation("intra-part arc", (u, v)))
                if vu:
                    problems.append(Violation("intra-part arc", (v, u)))
            elif uv and vu:
                problems.append(Violation("2-cycle", (u, v)))
            elif not uv and not vu:
                problems.append(Violation("missing cross-part arc", (u, v)))
    if d.arc_count != parts.arc_count and not problems:
        problems.append(
            Violation("size mismatch", detail=f"{d.arc_count} arcs, expected {parts.arc_count}")
        )
    return problems
