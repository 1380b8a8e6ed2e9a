"""Verification suites.  Each returns a list of report records.

A record is a plain dict: check name, instance configuration, pass flag,
optional residual, runtime in seconds and the seed it was drawn from.
Randomized suites draw their instances from ``random.Random(seed)``.
"""

import itertools
import random
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

import mpmath

from . import action, builder, kernel, worked
from .chain import SpinChain
from .graded import Bra, Ket, psi_on_blocks, psi_on_word
from .kernel import F_norm, f, inv, set_product
from .partitions import BetheParams
from .scalars import PoleError, Profile
from .solver import SolverConfig, numeric_chain, solve_bethe


def record(check, config, passed, residual=None, runtime=0.0, seed=None, **extra):
    out = {"check": check, "config": config, "passed": bool(passed),
           "residual": residual, "runtime": round(runtime, 4), "seed": seed}
    out.update(extra)
    return out


def rational(rng, span=60, den=12):
    return Fraction(rng.randint(-span * den, span * den), rng.randint(1, den))


def distinct(rng, n, avoid=()):
    seen = set(avoid)
    out = []
    while len(out) < n:
        x = rational(rng)
        if x not in seen:
            seen.add(x)
            out.append(x)
    return out


def random_chain(rng, prof, L, twist=True):
    z = distinct(rng, L)
    tw = None
    if twist:
        tw = [Fraction(rng.randint(1, 9), rng.randint(1, 5)) * rng.choice((1, -1))
              for _ in range(prof.dim)]
    return SpinChain(prof, z, tw)


def random_params(rng, prof, r, avoid=()):
    vals = distinct(rng, sum(r), avoid)
    levels, k = [], 0
    for n in r:
        levels.append(vals[k:k + n])
        k += n
    return BetheParams(prof, levels)


def _retry(fn, rng, tries=20):
    """Redraw an instance that happens to sit on a pole."""
    for _ in range(tries):
        try:
            return fn(rng)
        except PoleError:
            continue
    raise PoleError("no generic instance found in %d draws" % tries)


def _prof_cfg(prof):
    return {"m": prof.m, "n": prof.n}


def boxes(bound):
    """All cardinality vectors componentwise below ``bound``."""
    return list(itertools.product(*[range(b + 1) for b in bound]))


def _pmap(fn, items, workers):
    if workers and workers > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(fn, items))
    return [fn(x) for x in items]


# graded RTT -----------------------------------------------------------------

def _entry_table(chain, u):
    d = chain.prof.dim
    states = [tuple(s) for s in itertools.product(range(1, d + 1), repeat=chain.L)]
    return {(i, j, s): chain.apply(i, j, u, Ket({s: 1}))
            for i in range(1, d + 1) for j in range(1, d + 1) for s in states}, states


def _op(table, i, j, psi):
    out = Ket()
    for s, c in psi.items():
        out = out + table[(i, j, s)] * c
    return out


def rtt_instance(chain, u, v):
    """Count entry quadruples (i, j, k, l) violating the exchange relation."""
    prof = chain.prof
    p = prof.parity
    Tu, states = _entry_table(chain, u)
    Tv, _ = _entry_table(chain, v)
    d = prof.dim
    guv = kernel.g(u, v, prof.c)
    bad = 0
    for s in states:
        psi = Ket({s: 1})
        for i, j, k, l in itertools.product(range(1, d + 1), repeat=4):
            lhs = _op(Tu, i, j, _op(Tv, k, l, psi))
            rhs = _op(Tv, k, l, _op(Tu, i, j, psi))
            if ((p(i) + p(j)) * (p(k) + p(l))) % 2:
                lhs = lhs + rhs
            else:
                lhs = lhs - rhs
            right = _op(Tv, k, j, _op(Tu, i, l, psi)) - _op(Tu, k, j, _op(Tv, i, l, psi))
            sgn = -1 if (p(i) * (p(k) + p(l)) + p(k) * p(l)) % 2 else 1
            if lhs != right * (sgn * guv):
                bad += 1
    return bad


def check_rtt(cases=((1, 1, 1), (1, 1, 2), (2, 1, 1), (2, 1, 2)), pairs=10, seed=0):
    rng = random.Random(seed)
    out = []
    for m, n, L in cases:
        prof = Profile(m, n)
        t0 = time.time()
        bad = 0
        for _ in range(pairs):
            chain = random_chain(rng, prof, L)
            u, v = distinct(rng, 2, chain.z)
            bad += rtt_instance(chain, u, v)
        out.append(record("rtt", dict(_prof_cfg(prof), L=L, pairs=pairs), bad == 0,
                          bad, time.time() - t0, seed))
    return out


# Izergin ----------------------------------------------------------------------

def check_izergin(count=100, sizes=(1, 2, 3, 4), seed=0):
    rng = random.Random(seed)
    out = []
    t0 = time.time()
    bad = skipped = 0
    done = 0
    while done < count:
        p = sizes[done % len(sizes)]
        vals = distinct(rng, 2 * p)
        ys, xs = vals[:p], vals[p:]
        try:
            pairs = [(kernel.izergin(ys, xs, c), kernel.izergin_sym(ys, xs, c))
                     for c in (1, -1)]
        except PoleError:
            skipped += 1
            continue
        bad += sum(a != b for a, b in pairs)
        done += 1
    out.append(record("izergin", {"instances": count, "sizes": list(sizes)}, bad == 0,
                      bad, time.time() - t0, seed, skipped=skipped))
    return out


# equivalence ----------------------------------------------------------------

def _equiv_one(job):
    m, n, L, r, seed = job
    rng = random.Random(seed)
    prof = Profile(m, n)

    def draw(rng):
        chain = random_chain(rng, prof, L)
        params = random_params(rng, prof, r, chain.z)
        B = builder.build(chain, params)
        return B, builder.build(chain, params, "mirror")
    t0 = time.time()
    B, Bh = _retry(draw, rng)
    return record("equivalence", dict(_prof_cfg(prof), L=L, r=list(r)), B == Bh,
                  None, time.time() - t0, seed, nonzero=len(B))


EQUIV_MATRIX = [((1, 1), 3, (2,)), ((2, 1), 4, (2, 2)), ((1, 2), 3, (2, 1)),
                ((2, 2), 3, (1, 1, 1))]


def equivalence_jobs(matrix=EQUIV_MATRIX, draws=10, seed=0, exact=False):
    """Every (L, r) under the bounds once, then ``draws`` draws of the largest one.

    With ``exact`` the bounds are the only configuration used.
    """
    jobs = []
    rng = random.Random(seed)
    for (m, n), Lmax, rmax in matrix:
        top = (Lmax, tuple(rmax))
        configs = [] if exact else [(L, r) for L in range(1, Lmax + 1) for r in boxes(rmax)
                                    if (L, r) != top]
        for L, r in configs + [top] * draws:
            jobs.append((m, n, L, tuple(r), rng.randrange(2 ** 31)))
    return jobs


def check_equivalence(matrix=EQUIV_MATRIX, draws=10, seed=0, workers=1, exact=False):
    return _pmap(_equiv_one, equivalence_jobs(matrix, draws, seed, exact), workers)


# action formula ---------------------------------------------------------------

def _action_one(job):
    m, n, L, r, seed = job
    rng = random.Random(seed)
    prof = Profile(m, n)

    def draw(rng):
        chain = random_chain(rng, prof, L)
        params = random_params(rng, prof, r, chain.z)
        z = distinct(rng, 1, list(chain.z) + [x for lv in params.levels for x in lv])[0]
        bad = []
        size = len(builder.build(chain, params))
        for i in range(1, prof.dim + 1):
            for j in range(i, prof.dim + 1):
                if action.action_formula(chain, i, j, z, params) != \
                        action.direct_action(chain, i, j, z, params):
                    bad.append([i, j])
        return bad, size
    t0 = time.time()
    bad, size = _retry(draw, rng)
    return record("action", dict(_prof_cfg(prof), L=L, r=list(r)), not bad, len(bad),
                  time.time() - t0, seed, failing=bad, nonzero=size)


ACTION_MATRIX = [((2, 1), 3, (2, 1)), ((2, 2), 2, (1, 1, 1))]


def action_jobs(matrix=ACTION_MATRIX, draws=20, seed=0, exact=False):
    return equivalence_jobs(matrix, draws, seed, exact)


def check_action(matrix=ACTION_MATRIX, draws=20, seed=0, workers=1, exact=False):
    return _pmap(_action_one, action_jobs(matrix, draws, seed, exact), workers)


# sign tables and normalizations -----------------------------------------------

def check_signs(max_dim=5, seed=0, samples=3):
    t0 = time.time()
    bad = 0
    total = 0
    for dim in range(2, max_dim + 1):
        for m in range(1, dim):
            prof = Profile(m, dim - m)
            for p, i, j, q in itertools.combinations_with_replacement(range(1, dim + 1), 4):
                total += 1
                try:
                    action.upf(prof, p, i, j, q)
                except ArithmeticError:
                    bad += 1
    out = [record("signs", {"max_dim": max_dim, "quadruples": total}, bad == 0, bad,
                  time.time() - t0, seed)]
    rng = random.Random(seed)
    t0 = time.time()
    bad = 0
    total = 0
    for dim in range(2, max_dim + 1):
        for m in range(1, dim):
            prof = Profile(m, dim - m)
            N = prof.N
            for p, i, j, q in itertools.combinations_with_replacement(range(1, N + 2), 4):
                if not p <= i <= j <= q:
                    continue
                for _ in range(samples):
                    r = [rng.randint(1, 3) for _ in range(N)]
                    params = random_params(rng, prof, r)
                    choice = {s: rng.randrange(r[s - 1])
                              for s in list(range(p, i)) + list(range(j, q))}
                    picked, rest = action._split_levels(params, p, i, j, q, choice)
                    total += 1
                    try:
                        a = action.D(prof, params, p, i, j, q, picked, rest)
                        b = action.D(prof, params, p, i, j, q, picked, rest, hat=True)
                    except PoleError:
                        continue
                    if a != b:
                        bad += 1
    out.append(record("normalization", {"max_dim": max_dim, "instances": total},
                      bad == 0, bad, time.time() - t0, seed))
    return out


# on-shell ---------------------------------------------------------------------

GENERIC_TWIST = ("2", "-3", "5/2")
ONSHELL_CASES = [(1, (1, 0), ("1", "2", "1")), (2, (1, 1), GENERIC_TWIST),
                 (3, (1, 1), GENERIC_TWIST)]


def onshell_instance(chain, params, zs, dps, rel_tol, bethe_tol):
    with mpmath.workdps(dps):
        nchain = numeric_chain(chain)
        rep = action.check_onshell(nchain, params, zs)
        ok = rep["max_relative_residual"] <= rel_tol and rep["max_bethe_residual"] <= bethe_tol
        return ok, rep


def check_onshell(cases=ONSHELL_CASES, prof=None, dps=90, samples=5, seed=0,
                  rel_tol="1e-30", bethe_tol="1e-40", control_tol="1e-6", solver=None):
    prof = prof or Profile(2, 1)
    rng = random.Random(seed)
    out = []
    with mpmath.workdps(dps):
        rel_tol, bethe_tol, control_tol = (mpmath.mpf(x) for x in (rel_tol, bethe_tol, control_tol))
        cfg = SolverConfig(**(solver or {"dps": dps, "tol": "1e-42", "seed": seed}))
        for L, r, twist in cases:
            t0 = time.time()
            chain = SpinChain(prof, [Fraction(k + 1, k + 3) for k in range(L)],
                              [Fraction(k) for k in twist])
            res = solve_bethe(chain, r, cfg)
            conf = dict(_prof_cfg(prof), L=L, r=list(r), twist=list(twist), dps=dps)
            if not res.converged:
                out.append(record("onshell", conf, False, None, time.time() - t0, seed,
                                  message=res.message))
                continue
            zs = [mpmath.mpc(rng.uniform(-2, 2), rng.uniform(-2, 2)) for _ in range(samples)]
            ok, rep = onshell_instance(chain, res.params, zs, dps, rel_tol, bethe_tol)
            out.append(record("onshell", conf, ok,
                              mpmath.nstr(rep["max_relative_residual"], 5), time.time() - t0,
                              seed, bethe_residual=mpmath.nstr(rep["max_bethe_residual"], 5)))
            t0 = time.time()
            shift = mpmath.mpf("1e-3")
            bad = res.params.replace(1, [x + shift for x in res.params.level(1)])
            _, crep = onshell_instance(chain, bad, zs, dps, rel_tol, bethe_tol)
            out.append(record("onshell-control", conf,
                              crep["max_relative_residual"] > control_tol,
                              mpmath.nstr(crep["max_relative_residual"], 5),
                              time.time() - t0, seed))
    return out


# coproduct --------------------------------------------------------------------

def tensor(a, b):
    out = Ket()
    for ka, va in a.items():
        for kb, vb in b.items():
            out.add_term(ka + kb, va * vb)
    return out


def _subsets(xs):
    for k in range(len(xs) + 1):
        for pick in itertools.combinations(range(len(xs)), k):
            yield (tuple(xs[i] for i in pick),
                   tuple(x for i, x in enumerate(xs) if i not in pick))


def coproduct_sum(chain, params, L1):
    """Right side of the split identity, with part (1) the first L1 sites."""
    prof = chain.prof
    N = prof.N
    one, two = chain.split(L1)
    out = Ket()
    for parts in itertools.product(*[list(_subsets(lv)) for lv in params.levels]):
        tI = [p[0] for p in parts]
        tII = [p[1] for p in parts]
        coeff = 1
        for s in range(1, N + 1):
            coeff = coeff * F_norm(prof, s, tII[s - 1], tI[s - 1])
        for s in range(1, N):
            coeff = coeff * inv(set_product(f, tII[s], tI[s - 1], prof.cg(s + 1)))
        for s in range(1, N + 1):
            for x in tII[s - 1]:
                coeff = coeff * one.lam(s + 1, x)
            for x in tI[s - 1]:
                coeff = coeff * two.lam(s, x)
        if coeff == 0:
            continue
        left = builder.build(one, BetheParams(prof, tI))
        right = builder.build(two, BetheParams(prof, tII))
        out = out + tensor(left, right) * coeff
    return out


def check_coproduct(splits=((1, 1), (2, 1)), rmax=(1, 1), seed=0):
    prof = Profile(2, 1)
    rng = random.Random(seed)
    out = []
    for L1, L2 in splits:
        for r in boxes(rmax):
            t0 = time.time()

            def draw(rng):
                chain = random_chain(rng, prof, L1 + L2)
                params = random_params(rng, prof, r, chain.z)
                return builder.build(chain, params) == coproduct_sum(chain, params, L1)
            ok = _retry(draw, rng)
            out.append(record("coproduct", dict(_prof_cfg(prof), L1=L1, L2=L2, r=list(r)),
                              ok, None, time.time() - t0, seed))
    return out


# duality ----------------------------------------------------------------------

def psi_letters_bra(chain, blocks):
    """Dual of a block word computed letter by letter (second route)."""
    prof = chain.prof
    letters, scale = builder.block_letters(prof, blocks)
    word, sign = psi_on_word(prof, letters)
    return chain.bra_word(chain.covacuum(), word) * (scale * sign)


def check_dual(amax=2, bmax=2, L=3, seed=0):
    prof = Profile(2, 1)
    rng = random.Random(seed)
    out = []
    for a in range(amax + 1):
        for b in range(bmax + 1):
            t0 = time.time()

            def draw(rng):
                chain = random_chain(rng, prof, L)
                params = random_params(rng, prof, (a, b), chain.z)
                u, v = params.levels
                C = builder.build_dual(chain, params)
                Ch = builder.build_dual(chain, params, "mirror")
                ok = (C == builder.fast_path_gl21(chain, u, v, "C")
                      and Ch == builder.fast_path_gl21(chain, u, v, "Chat"))
                letters = Bra()
                for term in builder.pre_bethe_terms(params):
                    s = term.coeff * builder.lambda_product(chain, term.diag)
                    if s != 0:
                        letters = letters + psi_letters_bra(chain, term.blocks) * s
                return ok and letters == C
            ok = _retry(draw, rng)
            out.append(record("dual", dict(_prof_cfg(prof), a=a, b=b, L=L), ok, None,
                              time.time() - t0, seed))
    t0 = time.time()
    bad = 0
    for m, n in ((2, 1), (1, 2), (2, 2)):
        pr = Profile(m, n)
        for i in range(1, pr.dim + 1):
            for j in range(1, pr.dim + 1):
                if (pr.parity(i) + pr.parity(j)) % 2 == 0:
                    continue
                for size in range(1, 5):
                    blk = [(i, j, tuple(range(size)))]
                    once, s1 = psi_on_blocks(pr, blk)
                    twice, s2 = psi_on_blocks(pr, once)
                    if twice != blk or s1 * s2 != (-1) ** size:
                        bad += 1
    out.append(record("psi-square", {"profiles": ["2|1", "1|2", "2|2"], "sizes": 4},
                      bad == 0, bad, time.time() - t0, seed))
    return out


# morphism ---------------------------------------------------------------------

def morphism_sum(chain_mirror, params):
    prof = params.prof
    out = Ket()
    for term in builder.pre_bethe_terms(params):
        out = out + builder.morphism_image(chain_mirror, prof, term)
    return out


def mirror_params(params):
    prof = params.prof
    N = prof.N
    return BetheParams(prof.mirror(), [params.level(N + 1 - l) for l in range(1, N + 1)])


def check_morphism(cases=(((2, 1), (1, 1)), ((1, 2), (1, 1)), ((2, 2), (1, 1, 1))),
                   L=2, seed=0):
    rng = random.Random(seed)
    out = []
    for (m, n), rmax in cases:
        prof = Profile(m, n)
        for r in boxes(rmax):
            t0 = time.time()

            def draw(rng):
                chain = random_chain(rng, prof.mirror(), L)
                params = random_params(rng, prof, r, chain.z)
                lhs = morphism_sum(chain, params)
                sign = -1 if (sum(r) - r[prof.m - 1]) % 2 else 1
                rhs = builder.build(chain, mirror_params(params), "mirror") * sign
                terms_ok = all(
                    _term_match(chain, prof, term) for term in builder.pre_bethe_terms(params))
                return lhs == rhs and terms_ok
            ok = _retry(draw, rng)
            out.append(record("morphism", dict(_prof_cfg(prof), r=list(r), L=L), ok, None,
                              time.time() - t0, seed))
    return out


def _term_match(chain, prof, term):
    """One partition: image of its word against the relabeled mirror term."""
    tab = builder.mirror_relabel(prof, term.table)
    mirror = builder.mirror_term(prof.mirror(), tab)
    r = [sum(len(x) for x in row.values()) for _, row in sorted(term.table.cells.items())]
    total = sum(len(x) for row in term.table.cells.values() for x in row.values())
    odd = sum(len(x) for x in term.table.cells.get(prof.m, {}).values())
    sign = -1 if (total - odd) % 2 else 1
    lhs = builder.morphism_image(chain, prof, term)
    vac = chain.vacuum()
    rhs = builder.apply_blocks(chain, mirror.blocks, vac) * (
        mirror.coeff * builder.lambda_product(chain, mirror.diag) * sign)
    del r
    return lhs == rhs


# worked examples --------------------------------------------------------------

def check_examples(L=3, draws=3, seed=0):
    rng = random.Random(seed)
    out = []
    cases = [((2, 1), (2, 2), worked.gl21_forward, "forward"),
             ((2, 1), (2, 2), worked.gl21_mirror, "mirror"),
             ((2, 2), (1, 1, 1), worked.gl22_forward, "forward"),
             ((2, 2), (1, 1, 1), worked.gl22_mirror, "mirror")]
    for (m, n), rmax, fn, flavor in cases:
        prof = Profile(m, n)
        for r in boxes(rmax):
            t0 = time.time()
            ok = True
            for _ in range(draws):
                def draw(rng):
                    chain = random_chain(rng, prof, L)
                    params = random_params(rng, prof, r, chain.z)
                    return fn(chain, params) == builder.build(chain, params, flavor)
                ok = ok and _retry(draw, rng)
            out.append(record("example", dict(_prof_cfg(prof), r=list(r), L=L,
                                              formula=fn.__name__), ok, None,
                              time.time() - t0, seed))
    return out


SUITES = {
    "rtt": check_rtt,
    "izergin": check_izergin,
    "equivalence": check_equivalence,
    "action": check_action,
    "signs": check_signs,
    "onshell": check_onshell,
    "coproduct": check_coproduct,
    "dual": check_dual,
    "morphism": check_morphism,
    "examples": check_examples,
}


def pairing(bra, ket):
    return pair(bra, ket)


def scalar_str(x):
    try:
        return format_scalar(x)
    except TypeError:
        return str(x)


def check_roots(chain, params, dps=60, samples=5, seed=0, rel_tol="1e-30",
                bethe_tol="1e-40"):
    """On-shell check of one given root set (for example a solver output file)."""
    rng = random.Random(seed)
    t0 = time.time()
    with mpmath.workdps(dps):
        zs = [mpmath.mpc(rng.uniform(-2, 2), rng.uniform(-2, 2)) for _ in range(samples)]
        ok, rep = onshell_instance(chain, params, zs, dps, mpmath.mpf(rel_tol),
                                   mpmath.mpf(bethe_tol))
        conf = dict(_prof_cfg(chain.prof), L=chain.L, r=list(params.r), dps=dps)
        return [record("onshell", conf, ok, mpmath.nstr(rep["max_relative_residual"], 5),
                       time.time() - t0, seed,
                       bethe_residual=mpmath.nstr(rep["max_bethe_residual"], 5))]
