"""Acceptance criteria, one test each.  Every test prints a PASS/FAIL line."""

import time

import pytest

from superbethe import checks


@pytest.fixture
def report(capsys):
    def emit(number, title, records, elapsed, limit):
        failed = [r for r in records if not r["passed"]]
        ok = not failed and elapsed < limit
        with capsys.disabled():
            print("\n%s criterion %d: %s (%d records, %d failed, %.2fs, limit %ds)"
                  % ("PASS" if ok else "FAIL", number, title, len(records), len(failed),
                     elapsed, limit))
        assert not failed, failed[:3]
        assert elapsed < limit
    return emit


def top_nonzero(recs, matrix):
    """The largest configuration of every profile must give a nonzero vector."""
    for (m, n), L, r in matrix:
        top = [x for x in recs if (x["config"]["m"], x["config"]["n"], x["config"]["L"],
                                   tuple(x["config"]["r"])) == (m, n, L, tuple(r))]
        assert top and all(x["nonzero"] > 0 for x in top)
    return len(top)


def timed(fn, *args, **kw):
    t0 = time.time()
    out = fn(*args, **kw)
    return out, time.time() - t0


def test_c01_graded_rtt(report):
    recs, dt = timed(checks.check_rtt, cases=((1, 1, 1), (1, 1, 2), (2, 1, 1), (2, 1, 2)),
                     pairs=10)
    assert all(r["config"]["pairs"] == 10 for r in recs)
    report(1, "graded RTT on gl(1|1), gl(2|1), L<=2, 10 (u,v) pairs", recs, dt, 10)


def test_c02_izergin(report):
    recs, dt = timed(checks.check_izergin, count=100, sizes=(1, 2, 3, 4))
    report(2, "Izergin determinant = symmetrization, 100 instances, sizes 1-4", recs, dt, 5)


def test_c03_equivalence(report):
    recs, dt = timed(checks.check_equivalence, draws=10)
    groups = {(r["config"]["m"], r["config"]["n"]) for r in recs}
    assert groups == {(1, 1), (2, 1), (1, 2), (2, 2)}
    assert top_nonzero(recs, checks.EQUIV_MATRIX) >= 10
    report(3, "forward and mirror Bethe vectors coincide on the matrix", recs, dt, 300)


def test_c04_action(report):
    recs, dt = timed(checks.check_action, draws=20)
    assert top_nonzero(recs, checks.ACTION_MATRIX) == 20
    report(4, "action formula = direct action for all i <= j", recs, dt, 300)


def test_c05_signs(report):
    recs, dt = timed(checks.check_signs, max_dim=5)
    report(5, "phase identity over m+n <= 5 and D = D-hat", recs, dt, 1)


def test_c06_onshell(report):
    recs, dt = timed(checks.check_onshell, dps=90, samples=5)
    main = [r for r in recs if r["check"] == "onshell"]
    assert sorted(r["config"]["L"] for r in main) == [1, 2, 3]
    assert all(r["config"]["dps"] >= 60 for r in main)
    report(6, "on-shell eigenvector, twisted gl(2|1), L=1,2,3, with negative control",
           recs, dt, 120)


def test_c07_coproduct(report):
    recs, dt = timed(checks.check_coproduct, splits=((1, 1), (2, 1)), rmax=(1, 1))
    report(7, "chain-split factorization, L = 1+1 and 2+1, r <= (1,1)", recs, dt, 30)


def test_c08_duality(report):
    recs, dt = timed(checks.check_dual, amax=2, bmax=2)
    report(8, "generic dual = printed gl(2|1) duals, Psi^2 = (-1)^a", recs, dt, 30)


def test_c09_morphism(report):
    recs, dt = timed(checks.check_morphism, cases=(((2, 1), (1, 1)),))
    report(9, "morphism gl(2|1) -> gl(1|2) maps B to signed B-hat, r <= (1,1)", recs, dt, 30)


def test_c10_worked_examples(report):
    recs, dt = timed(checks.check_examples)
    report(10, "general builder reproduces the printed small-rank sums", recs, dt, 30)
