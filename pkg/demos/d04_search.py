"""
Exhaustive search
=================

The pruned depth-first search finds witnesses for small tuples and
exhausts the ones that have none. K_{4,4,4} goes through the balanced
enumeration instead.
"""

from compgraph import SearchConfig, exhaustive_search, oracle_crosscheck, refute_444

print(exhaustive_search((1,) * 7).summary())
print(exhaustive_search((2, 2, 2, 1, 1)).summary())

# Without pruning the same answer takes many more nodes.
print(exhaustive_search((2, 2, 1, 1), SearchConfig(prune=frozenset())).summary())

# Two workers, same answer.
print(exhaustive_search((2, 2, 2, 1, 1), SearchConfig(workers=2)).summary())

out = refute_444()
print(out.summary(), out.details)

rep = oracle_crosscheck(7)
print(len(rep.rows), "tuples,", len(rep.disagreements), "disagreements, yes:", rep.yes_set)
