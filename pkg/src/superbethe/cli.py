"""Command line front end: build, solve and check from one JSON config.

    python -m superbethe build --config job.json --out state.json
    python -m superbethe solve --config job.json --out roots.json
    python -m superbethe check --config job.json --out report.jsonl --workers 4

Config layout::

    {"model": {"m": 2, "n": 1, "c": "1", "inhomogeneities": ["1/3", "2"],
               "twist": ["2", "-3", "5/2"]},
     "bethe": {"levels": [["1/2"], ["7"]]}
              or {"cardinalities": [1, 1], "solve": {"dps": 90, "tol": "1e-42"}}
              or {"roots_file": "roots.json"},
     "options": {"flavor": "forward", "which": ["rtt", "equivalence"], "seed": 0,
                 "equivalence": {"draws": 10}}}
"""

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import mpmath

from . import builder, checks
from .chain import SpinChain
from .graded import Ket
from .partitions import BetheParams, enumerate_tables
from .scalars import format_scalar, parse_scalar
from .solver import SolverConfig, solve_bethe


class ConfigError(ValueError):
    pass


def _fail(path, msg):
    raise ConfigError("%s: %s" % (path, msg))


def load_config(path):
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except json.JSONDecodeError as exc:
        _fail(str(path), "not valid JSON (%s)" % exc)
    if not isinstance(cfg, dict):
        _fail("<root>", "expected an object")
    cfg["_dir"] = str(Path(path).resolve().parent)
    return cfg


def parse_model(cfg):
    block = cfg.get("model")
    if block is None:
        _fail("model", "missing")
    for key in ("m", "n"):
        if not isinstance(block.get(key), int) or block[key] < 1:
            _fail("model.%s" % key, "must be a positive integer")
    for key in ("inhomogeneities", "twist"):
        for k, x in enumerate(block.get(key) or []):
            if not isinstance(x, str):
                _fail("model.%s[%d]" % (key, k), "scalars are written as strings")
    try:
        return SpinChain.from_config(block)
    except (ValueError, ZeroDivisionError) as exc:
        _fail("model", str(exc))


def _parse_levels(prof, levels, path):
    if not isinstance(levels, list) or len(levels) != prof.N:
        _fail(path, "need a list of %d levels" % prof.N)
    out = []
    for l, lv in enumerate(levels):
        row = []
        for k, x in enumerate(lv):
            if not isinstance(x, str):
                _fail("%s[%d][%d]" % (path, l, k), "scalars are written as strings")
            try:
                row.append(parse_scalar(x))
            except (ValueError, ZeroDivisionError):
                _fail("%s[%d][%d]" % (path, l, k), "cannot parse %r" % x)
        out.append(row)
    return out


def parse_bethe(cfg, prof):
    """Returns (levels or None, cardinalities, solve block or None)."""
    block = cfg.get("bethe") or {}
    if "roots_file" in block:
        path = Path(cfg.get("_dir", ".")) / block["roots_file"]
        with open(path) as fh:
            roots = json.load(fh)
        if not roots.get("converged", True):
            _fail("bethe.roots_file", "roots file records a failed solve")
        block = {"levels": roots["levels"]}
    levels = block.get("levels")
    card = block.get("cardinalities")
    if levels is not None:
        levels = _parse_levels(prof, levels, "bethe.levels")
        if card is not None and list(card) != [len(lv) for lv in levels]:
            _fail("bethe.cardinalities", "does not match the listed parameters")
        return levels, [len(lv) for lv in levels], None
    if card is None:
        return [[] for _ in range(prof.N)], [0] * prof.N, None
    if len(card) != prof.N or any(not isinstance(x, int) or x < 0 for x in card):
        _fail("bethe.cardinalities", "need %d non-negative integers" % prof.N)
    return None, list(card), block.get("solve", {})


def options(cfg):
    return cfg.get("options") or {}


# build ------------------------------------------------------------------------

def _build_part(job):
    model, levels, flavor, k, nparts = job
    chain = SpinChain.from_config(model)
    params = BetheParams(chain.prof, [[parse_scalar(x) for x in lv] for lv in levels])
    vac = chain.vacuum()
    out = Ket()
    tables = 0
    terms = 0
    make = builder.forward_term if flavor == "forward" else builder.mirror_term
    for idx, tab in enumerate(enumerate_tables(params, flavor)):
        if idx % nparts != k:
            continue
        tables += 1
        term = make(chain.prof, tab)
        s = term.coeff * builder.lambda_product(chain, term.diag)
        if s == 0:
            continue
        terms += 1
        out = out + builder.apply_blocks(chain, term.blocks, vac) * s
    return out.to_records(), tables, terms


def build_state(chain, params, flavor="forward", workers=1):
    """Bethe vector plus (table count, nonzero term count); workers split the tables."""
    if flavor not in ("forward", "mirror"):
        raise ConfigError("options.flavor: expected 'forward' or 'mirror', got %r" % flavor)
    nparts = max(1, workers)
    model = chain.config()
    levels = [[format_scalar(x) for x in lv] for lv in params.levels]
    jobs = [(model, levels, flavor, k, nparts) for k in range(nparts)]
    if nparts > 1:
        with ProcessPoolExecutor(max_workers=nparts) as ex:
            parts = list(ex.map(_build_part, jobs))
    else:
        parts = [_build_part(jobs[0])]
    out = Ket()
    tables = terms = 0
    for recs, nt, nz in parts:
        out = out + Ket.from_records(recs)
        tables += nt
        terms += nz
    return out, tables, terms


def dump_state(chain, vec):
    doc = {"profile": {"m": chain.prof.m, "n": chain.prof.n},
           "L": chain.L, "terms": vec.to_records()}
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def load_state(text):
    doc = json.loads(text)
    return doc, Ket.from_records(doc["terms"])


def reserialize(text):
    doc, vec = load_state(text)
    doc["terms"] = vec.to_records()
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def manifest_path(out):
    out = Path(out)
    return out.with_name(out.stem + ".manifest.json")


def cmd_build(cfg, workers=1, out=None):
    chain = parse_model(cfg)
    levels, card, solve = parse_bethe(cfg, chain.prof)
    if levels is None:
        _fail("bethe.levels", "build needs explicit parameters")
    try:
        params = BetheParams(chain.prof, levels)
    except ValueError as exc:
        _fail("bethe.levels", str(exc))
    flavor = options(cfg).get("flavor", "forward")
    t0 = time.time()
    vec, tables, terms = build_state(chain, params, flavor, workers)
    wall = time.time() - t0
    text = dump_state(chain, vec)
    manifest = {"profile": {"m": chain.prof.m, "n": chain.prof.n,
                            "c": format_scalar(chain.prof.c)},
                "r": card, "flavor": flavor, "tables": tables, "terms": terms,
                "basis_vectors": len(vec), "wall_time": round(wall, 4)}
    if out:
        Path(out).write_text(text)
        manifest_path(out).write_text(json.dumps(manifest, indent=1, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text)
    print(json.dumps(manifest, sort_keys=True), file=sys.stderr)
    return 0


# solve ------------------------------------------------------------------------

def cmd_solve(cfg, workers=1, out=None):
    chain = parse_model(cfg)
    levels, card, block = parse_bethe(cfg, chain.prof)
    if block is None:
        _fail("bethe.cardinalities", "solve needs cardinalities and a solve block")
    block = dict(block)
    guesses = block.pop("guesses", None)
    try:
        scfg = SolverConfig.from_dict(block)
    except (TypeError, ValueError) as exc:
        _fail("bethe.solve", str(exc))
    if guesses is not None:
        guesses = [[parse_scalar(x) for x in g] for g in guesses]
    res = solve_bethe(chain, card, scfg, guesses)
    doc = {"model": chain.config(), "r": card, "precision": scfg.dps,
           "solver": scfg.to_dict(), "converged": res.converged, "report": res.report()}
    with mpmath.workdps(scfg.dps):
        doc["levels"] = ([[format_scalar(x) for x in lv] for lv in res.params.levels]
                         if res.converged else None)
    text = json.dumps(doc, indent=1, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0 if res.converged else 1


# check ------------------------------------------------------------------------

ALL_CHECKS = ["rtt", "izergin", "equivalence", "action", "signs", "onshell",
              "coproduct", "dual", "morphism", "examples"]


def _suite_kwargs(name, cfg, workers, seed):
    kw = dict(options(cfg).get(name) or {})
    kw.setdefault("seed", seed)
    if name in ("equivalence", "action"):
        kw.setdefault("workers", workers)
    if "model" in cfg and name in ("rtt", "equivalence", "action"):
        chain = parse_model(cfg)
        prof = chain.prof
        if name == "rtt":
            kw.setdefault("cases", [(prof.m, prof.n, chain.L)])
        else:
            _, card, _ = parse_bethe(cfg, prof)
            kw.setdefault("matrix", [((prof.m, prof.n), chain.L, tuple(card))])
            kw.setdefault("exact", True)
    return kw


def run_check(name, cfg, workers=1, seed=0):
    if name not in ALL_CHECKS:
        _fail("options.which", "unknown check %r (choose from %s)" % (name, ", ".join(ALL_CHECKS)))
    if name == "onshell" and "model" in cfg:
        chain = parse_model(cfg)
        levels, card, block = parse_bethe(cfg, chain.prof)
        kw = dict(options(cfg).get("onshell") or {})
        kw.setdefault("seed", seed)
        if levels is None:
            scfg = SolverConfig.from_dict(block)
            res = solve_bethe(chain, card, scfg)
            if not res.converged:
                return [checks.record("onshell", {"r": card}, False, None, 0.0, seed,
                                      message=res.message)]
            kw.setdefault("dps", scfg.dps)
            params = res.params
        else:
            kw.setdefault("dps", max([mpmath.mp.dps] + [_annotated(x) for x in
                                                          _flat(cfg)]))
            with mpmath.workdps(kw["dps"]):
                params = BetheParams(chain.prof, _parse_levels(
                    chain.prof, _raw_levels(cfg), "bethe.levels"))
        return checks.check_roots(chain, params, **kw)
    return checks.SUITES[name](**_suite_kwargs(name, cfg, workers, seed))


def _raw_levels(cfg):
    block = cfg.get("bethe") or {}
    if "roots_file" in block:
        with open(Path(cfg.get("_dir", ".")) / block["roots_file"]) as fh:
            return json.load(fh)["levels"]
    return block["levels"]


def _flat(cfg):
    return [x for lv in _raw_levels(cfg) for x in lv]


def _annotated(s):
    return int(s.rsplit("@", 1)[1]) if "@" in s else 0


def cmd_check(cfg, workers=1, out=None):
    opts = options(cfg)
    which = opts.get("which", ALL_CHECKS)
    if isinstance(which, str):
        which = [which]
    seed = opts.get("seed", 0)
    records = []
    for name in which:
        records.extend(run_check(name, cfg, workers, seed))
    lines = "".join(json.dumps(r, sort_keys=True, default=str) + "\n" for r in records)
    if out:
        Path(out).write_text(lines)
    else:
        sys.stdout.write(lines)
    failed = [r for r in records if not r["passed"]]
    print("%d checks, %d failed" % (len(records), len(failed)), file=sys.stderr)
    return 0 if not failed else 1


COMMANDS = {"build": cmd_build, "solve": cmd_solve, "check": cmd_check}


def main(argv=None):
    ap = argparse.ArgumentParser(prog="superbethe",
                                 description="Bethe vectors for gl(m|n) spin chains")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--config", required=True, help="JSON job description")
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out", help="output path (default: stdout)")
    args = ap.parse_args(argv)
    if args.workers < 1:
        ap.error("--workers must be at least 1")
    try:
        cfg = load_config(args.config)
        return COMMANDS[args.command](cfg, args.workers, args.out)
    except ConfigError as exc:
        print("config error: %s" % exc, file=sys.stderr)
        return 2
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
