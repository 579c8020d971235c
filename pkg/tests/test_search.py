import itertools

import pytest

from _helpers import brute_complete, brute_valid
from compgraph.analysis import CYCLE3, OUTDEG3, PAIR, SPREAD2, TWO_PART_2_2
from compgraph.core import PartiteStructure
from compgraph.oracle import all_size_tuples, exists_complete_orientation
from compgraph.search import (
    EXHAUSTED,
    INCONCLUSIVE,
    SEARCH_RULES,
    WITNESS,
    SearchConfig,
    balanced_matrices,
    enumerate_all,
    exhaustive_search,
    iter_orientations,
    oracle_crosscheck,
    parse_prune,
    refute_444,
)

UNPRUNED = SearchConfig(prune=frozenset())


def _brute_balanced_count() -> int:
    """4x4 0/1 matrices with all line sums 2, by scanning all 2^16 matrices."""
    count = 0
    for m in range(1 << 16):
        rows = [(m >> (4 * i)) & 0xF for i in range(4)]
        if all(bin(r).count("1") == 2 for r in rows) and \
                all(sum(r >> j & 1 for r in rows) == 2 for j in range(4)):
            count += 1
    return count


def test_balanced_matrix_count_frozen():
    assert _brute_balanced_count() == 90
    mats = balanced_matrices()
    assert len(mats) == 90 and len(set(mats)) == 90


def test_refute_444_frozen():
    out = refute_444()
    assert out.status == EXHAUSTED and out.witness is None
    assert out.details == {"balanced_matrices": 90, "candidates": 729000, "complete": 0}
    assert out.nodes_explored == 90 ** 3


@pytest.mark.parametrize("sizes,count", [((1, 1), 2), ((2, 1), 4), ((2, 2, 1), 256)])
def test_enumerate_counts(sizes, count):
    seen = set()

    def visit(t):
        assert brute_valid(t)
        seen.add(t.d.out)

    assert enumerate_all(sizes, visit) == count
    assert len(seen) == count


def test_enumerate_cap():
    with pytest.raises(ValueError):
        enumerate_all((3, 3, 3, 1))  # 36 arcs


def test_iter_orientations_matches_arc_count():
    parts = PartiteStructure((2, 1, 1))
    assert sum(1 for _ in iter_orientations(parts)) == 2 ** parts.arc_count


def _complete_count(sizes) -> int:
    hits = []
    enumerate_all(sizes, lambda t: hits.append(brute_complete(t)))
    return sum(hits)


def test_k111_exhausted_and_enumeration_agrees():
    assert _complete_count((1, 1, 1)) == 0
    out = exhaustive_search((1, 1, 1))
    assert out.status == EXHAUSTED and not out.found


def test_22211_exhausted():
    out = exhaustive_search((2, 2, 2, 1, 1))
    assert out.exhausted
    assert sum(out.prunes_by_rule.values()) > 0


@pytest.mark.parametrize("sizes", [(2, 2, 2, 2, 1), (1,) * 7, (2, 1, 1, 1, 1, 1, 1)])
def test_witness_found_and_valid(sizes):
    out = exhaustive_search(sizes)
    assert out.status == WITNESS
    assert out.witness.sizes == sizes
    assert brute_valid(out.witness) and brute_complete(out.witness)


def test_determinism():
    a = exhaustive_search((2, 2, 1, 1, 1))
    b = exhaustive_search((2, 2, 1, 1, 1))
    assert (a.status, a.nodes_explored, a.prunes_by_rule) == (b.status, b.nodes_explored, b.prunes_by_rule)
    c = exhaustive_search((1,) * 7)
    d = exhaustive_search((1,) * 7)
    assert c.witness == d.witness and c.nodes_explored == d.nodes_explored


@pytest.mark.parametrize("sizes", [(1,) * 7, (2, 2, 2, 1, 1), (2, 1, 1, 1, 1, 1, 1), (3, 1, 1, 1, 1)])
def test_parallel_consistency(sizes):
    single = exhaustive_search(sizes)
    multi = exhaustive_search(sizes, SearchConfig(workers=3))
    assert multi.status == single.status
    assert multi.witness == single.witness


def test_parallel_witness_fixed_under_symmetry():
    cfg1 = SearchConfig(symmetry_fix=True, workers=1)
    cfg3 = SearchConfig(symmetry_fix=True, workers=3)
    a = exhaustive_search((1,) * 8, cfg1)
    b = exhaustive_search((1,) * 8, cfg3)
    assert a.witness == b.witness
    assert a.symmetry_reduced and b.symmetry_reduced
    assert "symmetry-reduced" in a.summary()


@pytest.mark.parametrize("sizes", [(1,) * 7, (2, 2, 1, 1, 1), (3, 2, 1, 1), (2, 1, 1, 1, 1, 1, 1)])
def test_symmetry_fix_keeps_existence(sizes):
    assert exhaustive_search(sizes, SearchConfig(symmetry_fix=True)).found == exhaustive_search(sizes).found


def test_budget_gives_inconclusive():
    out = exhaustive_search((2, 2, 2, 2, 1), SearchConfig(max_nodes=500))
    assert out.status == INCONCLUSIVE and out.witness is None
    par = exhaustive_search((2, 2, 2, 1, 1), SearchConfig(max_nodes=10, workers=2))
    assert par.status == INCONCLUSIVE


def test_size_cap():
    with pytest.raises(ValueError):
        exhaustive_search((5, 5, 4))
    assert exhaustive_search((1,) * 14, SearchConfig(max_sum=14)).found


def test_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(prune=frozenset({"BOGUS"}))
    with pytest.raises(ValueError):
        SearchConfig(workers=0)
    assert parse_prune("all") == SEARCH_RULES
    assert parse_prune("none") == frozenset()
    assert parse_prune("spread2, cycle3") == {SPREAD2, CYCLE3}


def _small_tuples(max_arcs):
    for s in all_size_tuples(9, min_parts=2):
        if PartiteStructure(s).arc_count <= max_arcs:
            yield s


def test_unpruned_search_matches_enumeration():
    for s in _small_tuples(12):
        assert exhaustive_search(s, UNPRUNED).found == (_complete_count(s) > 0), s


@pytest.mark.parametrize("rule", [SPREAD2, TWO_PART_2_2, OUTDEG3, CYCLE3, PAIR])
def test_each_rule_alone_is_sound(rule):
    cfg = SearchConfig(prune=frozenset({rule}))
    for s in _small_tuples(15):
        assert exhaustive_search(s, cfg).found == exhaustive_search(s, UNPRUNED).found, s


def test_pruning_reduces_nodes():
    s = (2, 2, 1, 1, 1)
    assert exhaustive_search(s).nodes_explored < exhaustive_search(s, UNPRUNED).nodes_explored


def test_crosscheck_small():
    rep = oracle_crosscheck(4)
    assert rep.yes_set == [] and not rep.disagreements
    rep7 = oracle_crosscheck(7)
    assert rep7.yes_set == [(1,) * 7] and not rep7.disagreements
    assert all(r.oracle_exists == exists_complete_orientation(r.sizes).exists for r in rep7.rows)
    assert all(len(r.sizes) >= 2 for r in rep7.rows)


def test_outcome_summary():
    out = exhaustive_search((2, 2, 2, 1, 1))
    text = out.summary()
    assert text.startswith("K_{2,2,2,1,1}: exhausted; nodes=")
    assert set(out.prunes_by_rule) == SEARCH_RULES
    assert list(itertools.islice(out.prunes_by_rule, 1))


def test_single_vertex_is_a_witness_with_pruning_on():
    assert exhaustive_search((1,)).found
    assert exhaustive_search((2,)).exhausted
