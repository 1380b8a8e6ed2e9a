"""Multiprecision Newton solver for the Bethe equations.

The unknowns are all Bethe roots at once, as complex mpmath numbers.  Each
equation is written as log(R^2) = 0 with R = lhs/rhs, which is free of the
sign ambiguity of the odd level; candidates with R = -1 are discarded after
convergence.  Seeds are drawn from a seeded generator so runs are
reproducible.
"""

import random
from fractions import Fraction

import mpmath

from .action import bethe_sides
from .chain import SpinChain
from .partitions import BetheParams
from .scalars import PoleError


# random: uniform box around the mean inhomogeneity
# sites: each root starts next to a randomly chosen inhomogeneity
STRATEGIES = ("random", "sites")


class SolverConfig:
    def __init__(self, dps=60, max_iter=200, tol=None, damping=1.0, guesses=40,
                 strategy="random", seed=0, separation=None, scale=2, polish=3):
        if tol is None:
            tol = mpmath.mpf(10) ** (-(dps // 2))
        tol = mpmath.mpf(tol)
        if tol <= 0:
            raise ValueError("tolerance must be positive")
        digits = int(-mpmath.log10(tol)) if tol < 1 else 0
        if dps < 2 * digits:
            raise ValueError("precision %d too low for tolerance 1e-%d" % (dps, digits))
        self.dps = dps
        self.max_iter = max_iter
        self.tol = tol
        self.damping = damping
        self.guesses = guesses
        if strategy not in STRATEGIES:
            raise ValueError("unknown guess strategy %r (choose from %s)"
                             % (strategy, ", ".join(STRATEGIES)))
        self.strategy = strategy
        self.seed = seed
        self.separation = mpmath.mpf(separation) if separation is not None else mpmath.mpf(10) ** -8
        self.scale = scale
        self.polish = polish

    @classmethod
    def from_dict(cls, block):
        block = dict(block or {})
        return cls(**block)

    def to_dict(self):
        return {"dps": self.dps, "max_iter": self.max_iter,
                "tol": mpmath.nstr(self.tol, 5), "damping": self.damping,
                "guesses": self.guesses, "strategy": self.strategy, "seed": self.seed,
                "separation": mpmath.nstr(self.separation, 5), "scale": self.scale,
                "polish": self.polish}


def to_complex(x):
    if isinstance(x, Fraction):
        return mpmath.mpc(mpmath.mpf(x.numerator) / x.denominator)
    return mpmath.mpc(x)


def numeric_chain(chain):
    """Same chain with every parameter promoted to a complex mpmath number."""
    return SpinChain(chain.prof, [to_complex(x) for x in chain.z],
                     [to_complex(k) for k in chain.twist])


class SolveResult:
    def __init__(self, params, residual, converged, iterations, guess_index, message=""):
        self.params = params
        self.residual = residual
        self.converged = converged
        self.iterations = iterations
        self.guess_index = guess_index
        self.message = message

    def report(self):
        return {"converged": self.converged, "iterations": self.iterations,
                "guess_index": self.guess_index,
                "max_residual": mpmath.nstr(self.residual, 5) if self.residual is not None else None,
                "message": self.message}


def _unpack(prof, r, xs):
    levels, k = [], 0
    for n in r:
        levels.append(list(xs[k:k + n]))
        k += n
    return levels


def _ratios(chain, r, xs):
    params = _Loose(chain.prof, _unpack(chain.prof, r, xs))
    out = []
    for l in range(1, len(r) + 1):
        for k in range(r[l - 1]):
            lhs, rhs = bethe_sides(chain, params, l, k)
            out.append(lhs / rhs)
    return out


class _Loose(BetheParams):
    """Parameter table without the distinctness check (used mid-iteration)."""

    def __init__(self, prof, levels):
        self.prof = prof
        self.levels = tuple(tuple(lv) for lv in levels)


def _system(chain, r, xs):
    return [mpmath.log(q * q) for q in _ratios(chain, r, xs)]


def _jacobian(chain, r, xs, F0, step):
    n = len(xs)
    J = mpmath.matrix(n, n)
    for b in range(n):
        shifted = list(xs)
        shifted[b] = shifted[b] + step
        F1 = _system(chain, r, shifted)
        for a in range(n):
            d = F1[a] - F0[a]
            # keep the difference on the branch of the unshifted value
            d = d - 2j * mpmath.pi * mpmath.nint(mpmath.im(d) / (2 * mpmath.pi))
            J[a, b] = d / step
    return J


def _norm(vec):
    return max((abs(x) for x in vec), default=mpmath.mpf(0))


def _separated(chain, r, xs, sep):
    levels = _unpack(chain.prof, r, xs)
    for lv in levels:
        for a in range(len(lv)):
            for b in range(a + 1, len(lv)):
                if abs(lv[a] - lv[b]) < sep:
                    return False
    flat = [x for lv in levels for x in lv]
    return all(abs(x - zk) >= sep for x in flat for zk in chain.z)


def newton(chain, r, xs, cfg):
    """Damped Newton from one starting point.  Returns (xs, residual, iterations)."""
    step = mpmath.mpf(10) ** (-(cfg.dps // 3))
    F = _system(chain, r, xs)
    res = _norm(F)
    for it in range(1, cfg.max_iter + 1):
        if res < cfg.tol:
            xs, res = _polish(chain, r, xs, F, res, step, cfg.polish)
            return xs, res, it - 1
        J = _jacobian(chain, r, xs, F, step)
        try:
            delta = mpmath.lu_solve(J, mpmath.matrix([-v for v in F]))
        except ZeroDivisionError:
            raise ArithmeticError("singular Jacobian")
        lam = mpmath.mpf(cfg.damping)
        while lam > mpmath.mpf(2) ** -30:
            trial = [xs[k] + lam * delta[k] for k in range(len(xs))]
            try:
                Ft = _system(chain, r, trial)
            except (PoleError, ZeroDivisionError, ValueError):
                lam /= 2
                continue
            rt = _norm(Ft)
            if rt < res:
                xs, F, res = trial, Ft, rt
                break
            lam /= 2
        else:
            return xs, res, it
    return xs, res, cfg.max_iter


def _polish(chain, r, xs, F, res, step, rounds):
    """Plain Newton steps past the tolerance, kept while the residual shrinks."""
    for _ in range(rounds):
        try:
            J = _jacobian(chain, r, xs, F, step)
            delta = mpmath.lu_solve(J, mpmath.matrix([-v for v in F]))
            trial = [xs[k] + delta[k] for k in range(len(xs))]
            Ft = _system(chain, r, trial)
        except (ZeroDivisionError, ValueError):
            break
        rt = _norm(Ft)
        if not rt < res:
            break
        xs, F, res = trial, Ft, rt
    return xs, res


def _seed_points(chain, r, cfg, rng):
    total = sum(r)
    centre = sum(chain.z, mpmath.mpc(0)) / len(chain.z) if chain.z else mpmath.mpc(0)
    for _ in range(cfg.guesses):
        if cfg.strategy == "sites" and chain.z:
            yield [rng.choice(chain.z) + mpmath.mpc(rng.uniform(-1, 1), rng.uniform(-1, 1))
                   for _ in range(total)]
        else:
            yield [centre + mpmath.mpc(rng.uniform(-cfg.scale, cfg.scale),
                                       rng.uniform(-cfg.scale, cfg.scale))
                   for _ in range(total)]


def solve_bethe(chain, r, cfg=None, guesses=None):
    """Find one solution of the Bethe equations with cardinalities r.

    ``guesses`` may supply explicit starting points (flat lists); otherwise
    seeds come from the configured generator.  The first converged
    candidate with R = +1 on every equation and separated roots wins.
    """
    cfg = cfg or SolverConfig()
    r = tuple(r)
    prof = chain.prof
    if len(r) != prof.N:
        raise ValueError("need %d cardinalities, got %d" % (prof.N, len(r)))
    with mpmath.workdps(cfg.dps):
        nchain = numeric_chain(chain)
        if sum(r) == 0:
            return SolveResult(BetheParams(prof, [[] for _ in r]), mpmath.mpf(0), True, 0, None)
        rng = random.Random(cfg.seed)
        starts = list(guesses) if guesses is not None else _seed_points(nchain, r, cfg, rng)
        last = "no starting points"
        for idx, x0 in enumerate(starts):
            xs = [to_complex(x) for x in x0]
            try:
                xs, res, its = newton(nchain, r, xs, cfg)
            except (ArithmeticError, PoleError, ValueError) as exc:
                last = "guess %d: %s" % (idx, exc)
                continue
            if res >= cfg.tol:
                last = "guess %d: stalled at %s" % (idx, mpmath.nstr(res, 5))
                continue
            if not _separated(nchain, r, xs, cfg.separation):
                last = "guess %d: roots collide" % idx
                continue
            ratios = _ratios(nchain, r, xs)
            worst = max(abs(q - 1) for q in ratios)
            if worst > cfg.tol:
                last = "guess %d: converged to the wrong sign" % idx
                continue
            params = BetheParams(prof, _unpack(prof, r, xs))
            return SolveResult(params, worst, True, its, idx)
        return SolveResult(None, None, False, 0, None, last)


__all__ = ["SolverConfig", "SolveResult", "solve_bethe", "newton", "numeric_chain",
           "to_complex"]
