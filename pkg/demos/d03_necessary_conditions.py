"""
Necessary conditions and counting refutations
=============================================

Check a witness against every condition, then rule out tuples from their
sizes alone.
"""

from compgraph import WitnessId, check_all, count_bound, dtilde_embedding, load_witness, refute_by_counting
from compgraph.analysis import outdeg3_vertices

a9 = load_witness(WitnessId.A9)
print(check_all(a9).table())

# The seven-vertex configuration around each outdegree-3 vertex.
for u in outdeg3_vertices(a9)[:3]:
    print(u, dtilde_embedding(a9, u))

# Arc count against the outdegree-3 bound.
print(count_bound((2, 2, 1, 1, 1, 1)))

for sizes in [(3, 3, 2, 2), (3, 3, 3, 1), (2, 2, 2, 1, 1), (5, 4, 4)]:
    print(refute_by_counting(sizes).summary())
