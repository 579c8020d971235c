import random

import pytest
from hypothesis import given, seed
from hypothesis import strategies as st

from _helpers import brute_complete, brute_valid, random_orientation, test_seed
from compgraph.construct import (
    ConstructionError,
    add_clone_vertex,
    lift,
    normalize_min_indegree,
    peel_low_indegree,
    split_part,
)
from compgraph.search import exhaustive_search
from compgraph.witnesses import WitnessId, all_witnesses, load_witness

BASES = list(all_witnesses().values())


@st.composite
def complete_instances(draw):
    """A construction, optionally grown by a few random clones."""
    t = draw(st.sampled_from(BASES))
    for _ in range(draw(st.integers(0, 2))):
        model = draw(st.integers(0, t.n - 1))
        t = add_clone_vertex(t, model)
    return t


def _induced_equal(small, big, mapping, cross_only=False):
    pi = small.parts.part_index
    for u in range(small.n):
        for v in range(small.n):
            if cross_only and pi[u] == pi[v]:
                continue
            if mapping[u] is not None and mapping[v] is not None:
                assert small.d.has_arc(u, v) == big.d.has_arc(mapping[u], mapping[v])


def _low_indegree_instances():
    out = [exhaustive_search((2, 1, 1, 1, 1, 1, 1)).witness, exhaustive_search((1,) * 8).witness]
    a3 = load_witness(WitnessId.A3)
    out.append(add_clone_vertex(a3, 4, 1))
    return out


@seed(test_seed())
@given(complete_instances(), st.data())
def test_add_clone_vertex_preserves_completeness(t, data):
    model = data.draw(st.integers(0, t.n - 1))
    choices = [None] + [p for p in range(t.k)
                        if p == t.parts.part_of(model) or not t.d.out[model] & t.parts.part_masks[p]]
    target = data.draw(st.sampled_from(choices))
    new, mapping = add_clone_vertex(t, model, target, return_map=True)
    assert brute_valid(new) and brute_complete(new)
    assert new.n == t.n + 1
    _induced_equal(t, new, mapping[:t.n])
    added = mapping[t.n]
    assert {mapping[x] for x in t.out_neighbors(model)} <= new.out_neighbors(added)
    if target is None:
        assert new.k == t.k + 1
    else:
        assert new.k == t.k


def test_add_clone_rejects_conflicting_part():
    t = load_witness(WitnessId.A7)
    model = 0
    bad = next(p for p in range(t.k) if p != 0 and t.d.out[model] & t.parts.part_masks[p])
    with pytest.raises(ValueError):
        add_clone_vertex(t, model, bad)
    with pytest.raises(IndexError):
        add_clone_vertex(t, t.n)


def test_add_clone_requires_complete_input():
    t = random_orientation((3, 3), random.Random(0))
    with pytest.raises(ValueError):
        add_clone_vertex(t, 0)


@seed(test_seed())
@given(complete_instances(), st.data())
def test_lift_preserves_completeness(t, data):
    grown = [s + data.draw(st.integers(0, 2)) for s in t.sizes]
    grown += [data.draw(st.integers(1, 2)) for _ in range(data.draw(st.integers(0, 2)))]
    target = tuple(sorted(grown, reverse=True))
    new, mapping = lift(t, target, return_map=True)
    assert new.sizes == target
    assert brute_valid(new) and brute_complete(new)
    _induced_equal(t, new, mapping)


def test_lift_rejects_smaller_targets():
    t = load_witness(WitnessId.A5)
    with pytest.raises(ValueError):
        lift(t, (4, 3, 3))
    with pytest.raises(ValueError):
        lift(t, (4, 2, 2, 2))


def test_lift_identity():
    t = load_witness(WitnessId.A8)
    assert lift(t, t.sizes).d == t.d


@seed(test_seed())
@given(complete_instances(), st.data())
def test_split_part_preserves_completeness(t, data):
    big = [p for p, s in enumerate(t.sizes) if s >= 2]
    if not big:
        return
    p = data.draw(st.sampled_from(big))
    a = data.draw(st.integers(1, t.sizes[p] - 1))
    new, mapping = split_part(t, p, (a, t.sizes[p] - a), return_map=True)
    assert new.k == t.k + 1 and new.n == t.n
    assert sorted(new.sizes) == sorted([s for i, s in enumerate(t.sizes) if i != p] + [a, t.sizes[p] - a])
    assert brute_valid(new) and brute_complete(new)
    # the split adds arcs inside the old part, everything else is kept
    _induced_equal(t, new, mapping, cross_only=True)
    members = list(t.parts.part(p))
    for x in members[:a]:
        for y in members[a:]:
            assert new.d.has_arc(mapping[x], mapping[y])


def test_split_part_errors():
    t = load_witness(WitnessId.A4)
    with pytest.raises(ValueError):
        split_part(t, 0, (2, 2))
    with pytest.raises(ValueError):
        split_part(t, 0, (0, 5))
    with pytest.raises(ValueError):
        split_part(t, 3, (1, 1))


@pytest.mark.parametrize("idx", range(3))
def test_peel_low_indegree(idx):
    t = _low_indegree_instances()[idx]
    assert min(t.d.indegree(v) for v in range(t.n)) <= 1
    p, mapping = peel_low_indegree(t, return_map=True)
    assert brute_complete(p)
    assert p.n < t.n
    assert p.n < 2 or min(p.d.indegree(v) for v in range(p.n)) >= 2
    _induced_equal(t, p, mapping)


@pytest.mark.parametrize("idx", range(3))
def test_normalize_on_low_indegree_inputs(idx):
    t = _low_indegree_instances()[idx]
    r = normalize_min_indegree(t)
    assert r.sizes == t.sizes and r.parts == t.parts
    assert brute_valid(r) and brute_complete(r)
    assert min(r.d.indegree(v) for v in range(r.n)) >= 2


@seed(test_seed())
@given(complete_instances())
def test_normalize_properties(t):
    if t.k < 3:
        return
    r = normalize_min_indegree(t)
    assert r.sizes == t.sizes
    assert brute_valid(r) and brute_complete(r)
    assert min(r.d.indegree(v) for v in range(r.n)) >= 2
    assert normalize_min_indegree(r) == r


def test_normalize_preconditions():
    with pytest.raises(ValueError):
        normalize_min_indegree(random_orientation((2, 2, 2), random.Random(3)))
    assert ConstructionError  # raised only on internal defects
