"""
Growing and reshaping witnesses
===============================

Cloning a vertex, lifting to larger parts and splitting a part all keep the
competition graph complete.
"""

from compgraph import WitnessId, add_clone_vertex, lift, load_witness, normalize_min_indegree, split_part

a7 = load_witness(WitnessId.A7)
print("A7:", a7.sizes)

bigger = lift(a7, (5, 4, 3, 3, 1))
print("lifted:", bigger.sizes, bigger.is_complete_competition())

# split the part of size 3 at index 2 into 2 + 1
parts5 = split_part(a7, 2, (2, 1))
print("split:", parts5.sizes, parts5.is_complete_competition())

# A clone placed in a fresh part tends to have small indegree.
a3 = load_witness(WitnessId.A3)
cloned = add_clone_vertex(a3, 4, 1)
print("clone indegrees:", [cloned.d.indegree(v) for v in range(cloned.n)])

fixed = normalize_min_indegree(cloned)
print("normalised indegrees:", [fixed.d.indegree(v) for v in range(fixed.n)])
