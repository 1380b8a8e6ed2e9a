"""Act with upper triangular monodromy entries two ways.

The closed action formula expands T_ij(z) B(t) over windows (p, q); the
oracle applies the R-matrix product directly.  Both are exact rationals.
"""

import time
from fractions import Fraction as F

from superbethe import BetheParams, Profile, SpinChain
from superbethe.action import action_formula, action_terms, direct_action

prof = Profile(2, 1)
chain = SpinChain(prof, [F(1, 3), F(2), F(-5, 7)], twist=[2, -3, F(5, 2)])
params = BetheParams(prof, [[F(1, 2), F(9, 4)], [F(7)]])
z = F(-11, 6)

for i in range(1, 4):
    for j in range(i, 4):
        t0 = time.time()
        n = sum(1 for _ in action_terms(chain, i, j, z, params))
        same = action_formula(chain, i, j, z, params) == direct_action(chain, i, j, z, params)
        print("T_%d%d: %2d terms, agree=%s (%.2fs)" % (i, j, n, same, time.time() - t0))
