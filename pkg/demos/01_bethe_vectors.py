"""Build a small gl(2|1) Bethe vector both ways and compare.

Run with ``python demos/01_bethe_vectors.py``.
"""

from fractions import Fraction as F

from superbethe import BetheParams, Profile, SpinChain, build, build_hat
from superbethe.partitions import enumerate_tables

prof = Profile(2, 1)
chain = SpinChain(prof, [F(1, 3), F(2), F(-5, 7)], twist=[2, -3, F(5, 2)])
params = BetheParams(prof, [[F(1, 2), F(9, 4)], [F(7)]])

# the partition tables the forward sum runs over
for tab in enumerate_tables(params):
    print(tab.diagram())
    print()

B = build(chain, params)
Bh = build_hat(chain, params)
print("basis vectors:", len(B))
for key in sorted(B):
    print(" ", key, B[key])
print("forward == mirror:", B == Bh)
