"""Solve the Bethe equations numerically and check the eigenvector property."""

from fractions import Fraction as F

import mpmath

from superbethe import Profile, SolverConfig, SpinChain, solve_bethe
from superbethe.action import check_onshell
from superbethe.solver import numeric_chain

prof = Profile(2, 1)
chain = SpinChain(prof, [F(1, 3), F(1, 2)], twist=[2, -3, F(5, 2)])
cfg = SolverConfig(dps=90, tol="1e-42")

res = solve_bethe(chain, (1, 1), cfg)
print(res.report())

with mpmath.workdps(cfg.dps):
    nc = numeric_chain(chain)
    zs = [mpmath.mpc("0.3", "0.7"), mpmath.mpc("-1.1", "0.2")]
    rep = check_onshell(nc, res.params, zs)
    print("on shell  :", mpmath.nstr(rep["max_relative_residual"], 5))

    # move one root a little: the state stops being an eigenvector
    off = res.params.replace(1, [res.params.level(1)[0] + mpmath.mpf("1e-3")])
    print("perturbed :", mpmath.nstr(check_onshell(nc, off, zs)["max_relative_residual"], 5))
