"""
Which complete multipartite graphs can be oriented competitively
=================================================================

Ask the oracle about a few part-size tuples, then build and check a witness.
"""

from compgraph import exists_complete_orientation, minimal_total, synthesize_witness
from compgraph.formats import to_dmt

# The oracle names the clause that decides each tuple.
for sizes in [(5, 4, 4), (4, 4, 4), (3, 3, 3, 2), (3, 3, 2, 2), (2, 2, 2, 2, 1), (1,) * 7]:
    print(sizes, exists_complete_orientation(sizes))

# Smallest number of vertices that works for each number of parts.
print({k: minimal_total(k) for k in range(3, 9)})

# Every yes comes with a certified orientation.
t = synthesize_witness((6, 4, 4))
print(t.sizes, "complete:", t.is_complete_competition())
print(to_dmt(t, comment="an orientation of K_{6,4,4}"))
