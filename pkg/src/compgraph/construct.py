"""Transformations that preserve a complete competition graph.

All functions take and return :class:`MultipartiteTournament` values and never
mutate their input. Outputs keep the global convention (parts sorted by
nonincreasing size, consecutive vertex indices); pass ``return_map=True`` to
also get the list mapping each input vertex to its output index.

Arcs the constructions leave unconstrained are fixed deterministically: a
newly added vertex points at every vertex it is not told to copy, and a
split part is oriented from its first fragment to its second.
"""

from __future__ import annotations

from typing import Sequence

from .core import (
    Digraph,
    MultipartiteTournament,
    PartiteStructure,
    bits,
    first_noncompeting_pair,
    mask_of,
    validate_sizes,
)


class ConstructionError(RuntimeError):
    """A construction produced an invalid tournament or an incomplete competition graph."""


def _require_complete(t: MultipartiteTournament, what: str) -> None:
    pair = first_noncompeting_pair(t.d)
    if pair is not None:
        raise ValueError(f"{what}: competition graph is not complete (pair {pair} has no common prey)")


def _assemble(out: dict[int, int], groups: list[list[int]]) -> tuple[MultipartiteTournament, dict[int, int]]:
    """Lay out labelled vertices part by part, parts sorted by size (stable).

    ``out`` maps a label to the bitmask of its out-neighbour labels.
    """
    groups = sorted((g for g in groups if g), key=len, reverse=True)
    index: dict[int, int] = {}
    for g in groups:
        for lab in g:
            index[lab] = len(index)
    masks = [0] * len(index)
    for lab, i in index.items():
        m = 0
        for w in bits(out[lab]):
            if w in index:
                m |= 1 << index[w]
        masks[i] = m
    parts = PartiteStructure(tuple(len(g) for g in groups))
    return MultipartiteTournament(Digraph(len(index), tuple(masks)), parts), index


def _labelled(t: MultipartiteTournament) -> tuple[dict[int, int], list[list[int]]]:
    return dict(enumerate(t.d.out)), [list(t.parts.part(i)) for i in range(t.k)]


def _finish(t: MultipartiteTournament, what: str) -> MultipartiteTournament:
    try:
        t.require_valid()
    except ValueError as exc:
        raise ConstructionError(f"{what}: {exc}") from None
    pair = first_noncompeting_pair(t.d)
    if pair is not None:
        raise ConstructionError(f"{what}: result has non-competing pair {pair}")
    return t


def _clone_into(out: dict[int, int], group_of: dict[int, int], new: int, model: int, group: int) -> None:
    """Add label ``new`` to ``group`` with ``N+(model) ⊆ N+(new)``.

    Same group as the model: copy its in- and out-arcs. Otherwise copy the
    model's orientation toward every other group and point ``new`` at each
    member of the model's group, the model included.
    """
    mg = group_of[model]
    out[new] = 0
    group_of[new] = group
    for x in list(out):
        if x == new or group_of[x] == group:
            continue
        if group != mg and group_of[x] == mg:
            new_beats_x = True
        else:
            new_beats_x = bool(out[model] >> x & 1)
        if new_beats_x:
            out[new] |= 1 << x
        else:
            out[x] |= 1 << new


def add_clone_vertex(t: MultipartiteTournament, model: int, target_part: int | None = None,
                     *, return_map: bool = False):
    """Add one vertex whose out-set contains ``N+(model)``.

    ``target_part=None`` puts the vertex in a new singleton part; otherwise it
    joins the existing part with that index, which must either be the model's
    own part or contain none of the model's out-neighbours.
    """
    if t.n < 2:
        raise ValueError("add_clone_vertex needs at least two vertices")
    if not 0 <= model < t.n:
        raise IndexError(f"model vertex {model} out of range for n={t.n}")
    if target_part is not None and not 0 <= target_part < t.k:
        raise ValueError(f"part index {target_part} out of range for k={t.k}")
    _require_complete(t, "add_clone_vertex")
    out, groups = _labelled(t)
    group_of = {v: i for i, g in enumerate(groups) for v in g}
    if target_part is None:
        target = len(groups)
        groups.append([])
    else:
        target = target_part
        if target != group_of[model] and out[model] & t.parts.part_masks[target]:
            raise ValueError(
                f"model {model} has out-neighbours in part {target}; the new vertex could not dominate them")
    new = t.n
    _clone_into(out, group_of, new, model, target)
    groups[target].append(new)
    result, index = _assemble(out, groups)
    _finish(result, "add_clone_vertex")
    if return_map:
        return result, [index[v] for v in range(t.n + 1)]
    return result


def lift(t: MultipartiteTournament, target_sizes: Sequence[int], *, return_map: bool = False):
    """Grow ``t`` into an orientation of ``K_{target_sizes}`` by repeated cloning.

    Existing parts grow largest first by cloning one of their own members;
    extra parts start as a clone of vertex 0 in a new singleton part and then
    grow the same way.
    """
    target = tuple(target_sizes)
    validate_sizes(target)
    if len(target) < t.k:
        raise ValueError(f"target {list(target)} has fewer parts than the source {list(t.sizes)}")
    short = [i for i in range(t.k) if target[i] < t.sizes[i]]
    if short:
        raise ValueError(f"target {list(target)} is below the source {list(t.sizes)} in coordinate {short[0]}")
    _require_complete(t, "lift")
    out, groups = _labelled(t)
    group_of = {v: i for i, g in enumerate(groups) for v in g}
    next_label = t.n
    for i in range(len(target)):
        if i >= len(groups):
            groups.append([])
            _clone_into(out, group_of, next_label, groups[0][0], i)
            groups[i].append(next_label)
            next_label += 1
        while len(groups[i]) < target[i]:
            _clone_into(out, group_of, next_label, groups[i][0], i)
            groups[i].append(next_label)
            next_label += 1
    result, index = _assemble(out, groups)
    _finish(result, "lift")
    if return_map:
        return result, [index[v] for v in range(t.n)]
    return result


def split_part(t: MultipartiteTournament, part: int, sub_sizes: tuple[int, int], *, return_map: bool = False):
    """Split part ``part`` into its first ``a`` and last ``b`` vertices.

    No arc is removed; the new arcs between the fragments point from the
    first fragment to the second.
    """
    if not 0 <= part < t.k:
        raise ValueError(f"part index {part} out of range for k={t.k}")
    a, b = sub_sizes
    if a < 1 or b < 1:
        raise ValueError(f"fragment sizes must be positive, got {(a, b)}")
    if a + b != t.sizes[part]:
        raise ValueError(f"fragments {(a, b)} do not add up to part size {t.sizes[part]}")
    _require_complete(t, "split_part")
    out, groups = _labelled(t)
    first, second = groups[part][:a], groups[part][a:]
    for x in first:
        for y in second:
            out[x] |= 1 << y
    groups[part:part + 1] = [first, second]
    result, index = _assemble(out, groups)
    _finish(result, "split_part")
    if return_map:
        return result, [index[v] for v in range(t.n)]
    return result


def _peel_order(t: MultipartiteTournament) -> list[int]:
    """Vertices removed, in order, by repeatedly deleting the lowest-index vertex of indegree <= 1."""
    out = list(t.d.out)
    present = (1 << t.n) - 1
    removed = []
    while present.bit_count() >= 2:
        inn = [0] * t.n
        for u in bits(present):
            for w in bits(out[u] & present):
                inn[w] += 1
        low = next((v for v in bits(present) if inn[v] <= 1), None)
        if low is None:
            break
        present &= ~(1 << low)
        removed.append(low)
        live = [out[u] & present for u in bits(present)]
        for i, ou in enumerate(live):
            for ow in live[i + 1:]:
                if not ou & ow:
                    raise ConstructionError(
                        f"removing vertex {low} of indegree <= 1 broke completeness")
    return removed


def peel_low_indegree(t: MultipartiteTournament, *, return_map: bool = False):
    """Delete vertices of indegree at most 1 until none is left.

    The returned tournament may have fewer vertices and parts; with
    ``return_map`` the map sends removed vertices to ``None``.
    """
    if t.n < 2:
        raise ValueError("peel_low_indegree needs at least two vertices")
    _require_complete(t, "peel_low_indegree")
    removed = set(_peel_order(t))
    out, groups = _labelled(t)
    for v in removed:
        del out[v]
    groups = [[v for v in g if v not in removed] for g in groups]
    result, index = _assemble(out, groups)
    _finish(result, "peel_low_indegree")
    if return_map:
        return result, [index.get(v) for v in range(t.n)]
    return result


def normalize_min_indegree(t: MultipartiteTournament) -> MultipartiteTournament:
    """Same parts and vertex numbering, complete competition graph, every indegree >= 2.

    Peels low-indegree vertices, then puts them back in reverse order, each as
    a clone of a surviving member of its own part or, if none survives, of the
    lowest-index surviving vertex.
    """
    if t.k < 3:
        raise ValueError(f"normalize_min_indegree needs at least 3 parts, got k={t.k}")
    _require_complete(t, "normalize_min_indegree")
    order = _peel_order(t)
    if not order:
        return t
    removed = set(order)
    pi = t.parts.part_index
    out = {v: t.d.out[v] & ~mask_of(removed) for v in range(t.n) if v not in removed}
    group_of = {v: pi[v] for v in out}
    for v in reversed(order):
        mates = sorted(x for x in out if pi[x] == pi[v])
        model = mates[0] if mates else min(out)
        # _clone_into keys groups by part index, so Case 1 (no surviving mate)
        # lands in v's own, currently empty, part.
        _clone_into(out, group_of, v, model, pi[v])
    masks = tuple(out[v] for v in range(t.n))
    result = MultipartiteTournament(Digraph(t.n, masks), t.parts)
    _finish(result, "normalize_min_indegree")
    low = [v for v in range(t.n) if result.d.indegree(v) < 2]
    if low:
        raise ConstructionError(f"normalize_min_indegree left vertices {low} with indegree < 2")
    return result
