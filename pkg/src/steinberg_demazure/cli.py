"""Command-line front end.

Exit codes: 0 success, 1 a verified identity failed, 2 usage error,
3 budget exceeded.
"""
from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import charring
from .charring import Character, TermBudgetExceeded
from .demazure import decompose, demazure_dim, irr_character, tensor_mult
from .qsystem import (
    InconclusiveByBudget,
    PreconditionError,
    classical_qsystem,
    prime_certificate,
    qsystem_identity,
    schur_compare,
)
from .rootdata import RootDataError, build
from .steinberg import (
    KeyConstructionUnavailable,
    key_construct,
    key_search_brute,
    key_valid,
    load_fixture,
    steinberg_split,
    verify_factorization,
    verify_table,
)
from .store import CharacterCache, cached_character, character_to_dict, load_config

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(ValueError):
    pass


def _weight(text, rank, what="--lambda"):
    try:
        w = tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError:
        raise UsageError(f"{what}: expected comma-separated integers, got {text!r}") from None
    if len(w) != rank:
        raise UsageError(f"{what}: expected {rank} coordinates, got {len(w)}")
    return w


def _fmt(w):
    return "(" + ",".join(str(x) for x in w) + ")"


def _build_parser():
    # global options are accepted before or after the subcommand
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--config", help="key = value config file")
    common.add_argument("--format", dest="output", choices=["json", "csv", "plain"])
    common.add_argument("--cache-dir")
    common.add_argument("--no-cache", action="store_true")
    common.add_argument("--term-budget", type=int)
    common.add_argument("--threads", type=int)
    common.add_argument("--convention", choices=["bourbaki", "reversed"])
    p = argparse.ArgumentParser(prog="steinberg-demazure", parents=[common],
                                description="Demazure characters, key weights and Q-systems.")
    sub = p.add_subparsers(dest="cmd", required=True)
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[common], **kw)

    sub.add_parser = add_parser

    def algebra(sp, level=True, lam=True):
        sp.add_argument("--type", required=True)
        sp.add_argument("--rank", type=int, required=True)
        if level:
            sp.add_argument("--level", type=int, required=True)
        if lam:
            sp.add_argument("--lambda", dest="lam", required=True)
        return sp

    sp = algebra(sub.add_parser("char", help="character of D(l, lambda)"))
    sp.add_argument("--graded", action="store_true")
    sp.add_argument("--figure", help="write a weight diagram (rank 2)")
    algebra(sub.add_parser("dim", help="dimension of D(l, lambda)"))
    sp = algebra(sub.add_parser("decompose", help="irreducible decomposition of D(l, lambda)"))
    sp.add_argument("--irreducible", action="store_true", help="decompose V(lambda) instead")
    sp = algebra(sub.add_parser("tensor", help="[V(nu) : V(mu1) x V(mu2)]"), level=False, lam=False)
    sp.add_argument("--nu", required=True)
    sp.add_argument("--mu1", required=True)
    sp.add_argument("--mu2", required=True)
    sp = algebra(sub.add_parser("key-search", help="brute-force key weight mu"))
    sp.add_argument("--bound", type=int)
    algebra(sub.add_parser("key-construct", help="key weight from the explicit constructions"))
    sp = algebra(sub.add_parser("verify-steinberg", help="check ch D(l, l mu + lam0) factorizes"),
                 lam=False)
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--lambda", dest="lam")
    g.add_argument("--grid", type=int, help="all lambda with coordinates <= GRID")
    sp = sub.add_parser("verify-table", help="check a key-weight table fixture")
    sp.add_argument("--fixture", required=True, help="CSV path or shipped name (f4_l2.csv, e8_l2.csv)")
    sp.add_argument("--figure")
    sp = algebra(sub.add_parser("qsystem", help="generalized or classical Q-system identity"),
                 lam=False)
    sp.add_argument("--node", type=int, required=True)
    sp.add_argument("--lambda", dest="lam")
    sp.add_argument("--classical", action="store_true")
    sp = algebra(sub.add_parser("schur", help="Schur-positivity comparison"), lam=False)
    sp.add_argument("--node", type=int, required=True)
    sp.add_argument("--mu", required=True)
    sp = algebra(sub.add_parser("prime", help="prime certificate for D(l, lambda)"))
    sp.add_argument("--budget", type=int, default=1 << 16)
    sp = sub.add_parser("cache", help="cache maintenance")
    sp.add_argument("action", choices=["gc"])
    return p


def _factorization_row(args):
    rs, level, lam = args
    return lam, verify_factorization(rs, level, lam)


# each handler returns (result for JSON, plain lines, csv rows, ok flag, cache flag)

def _do_char(a, rs, cfg, cache):
    lam = _weight(a.lam, rs.rank)
    chi, hit = cached_character(cache, rs, a.level, lam, graded=a.graded)
    if a.figure:
        from .plotting import weight_diagram

        flat = chi if isinstance(chi, Character) else Character(
            {w: c for w, c in _sum_grades(chi).items()})
        weight_diagram(rs, flat, a.figure, title=f"D({a.level}, {_fmt(lam)}) for {rs.name}")
    if a.graded:
        plain = [f"{c} e{_fmt(w)} t^{n}" for (w, n), c in chi]
        rows = [list(w) + [n, c] for (w, n), c in chi]
    else:
        plain = [f"{c} e{_fmt(w)}" for w, c in chi]
        rows = [list(w) + [c] for w, c in chi]
    return character_to_dict(chi), plain, rows, True, hit


def _sum_grades(chi):
    out = {}
    for (w, _), c in chi.items():
        out[w] = out.get(w, 0) + c
    return out


def _do_dim(a, rs, cfg, cache):
    lam = _weight(a.lam, rs.rank)
    if cache is not None:
        chi, hit = cached_character(cache, rs, a.level, lam)
        d = chi.dim()
    else:
        d, hit = demazure_dim(rs, a.level, lam), False
    return d, [str(d)], [[d]], True, hit


def _do_decompose(a, rs, cfg, cache):
    lam = _weight(a.lam, rs.rank)
    if a.irreducible:
        chi, hit = irr_character(rs, lam), False
    else:
        chi, hit = cached_character(cache, rs, a.level, lam)
    mults = decompose(rs, chi)
    res = [{"weight": list(w), "multiplicity": c} for w, c in mults.items()]
    return res, [f"{c} V{_fmt(w)}" for w, c in mults.items()], \
        [list(w) + [c] for w, c in mults.items()], True, hit


def _do_tensor(a, rs, cfg, cache):
    nu, m1, m2 = (_weight(x, rs.rank, n) for x, n in
                  ((a.nu, "--nu"), (a.mu1, "--mu1"), (a.mu2, "--mu2")))
    m = tensor_mult(rs, nu, m1, m2)
    return m, [str(m)], [[m]], True, False


def _do_key_search(a, rs, cfg, cache):
    lam = _weight(a.lam, rs.rank)
    bound = a.bound if a.bound is not None else cfg.brute_bound
    mu = key_search_brute(rs, a.level, lam, bound)
    res = {"mu": list(mu) if mu else None, "bound": bound}
    line = _fmt(mu) if mu else f"none within bound {bound}"
    return res, [line], [list(lam) + (list(mu) if mu else [])], True, False


def _do_key_construct(a, rs, cfg, cache):
    lam = _weight(a.lam, rs.rank)
    mu = key_construct(rs, a.level, lam)
    return {"mu": list(mu), "valid": key_valid(rs, a.level, lam, mu)}, [_fmt(mu)], \
        [list(lam) + list(mu)], True, False


def _do_verify_steinberg(a, rs, cfg, cache):
    if a.lam is not None:
        lams = [_weight(a.lam, rs.rank)]
    else:
        lams = list(itertools.product(range(a.grid + 1), repeat=rs.rank))
    jobs = [(rs, a.level, lam) for lam in lams]
    if cfg.threads > 1:
        with ProcessPoolExecutor(cfg.threads) as ex:
            out = list(ex.map(_factorization_row, jobs))
    else:
        out = [_factorization_row(j) for j in jobs]
    res = []
    for lam, ok in out:
        sp = steinberg_split(rs, a.level, lam)
        res.append({"lambda": list(lam), "mu": list(sp.mu), "lambda0": list(sp.lam0), "ok": ok})
    plain = [f"{_fmt(r['lambda'])} = {a.level}*{_fmt(r['mu'])} + {_fmt(r['lambda0'])}: "
             f"{'ok' if r['ok'] else 'FAILED'}" for r in res]
    rows = [r["lambda"] + r["mu"] + r["lambda0"] + [int(r["ok"])] for r in res]
    return res, plain, rows, all(r["ok"] for r in res), False


def _do_verify_table(a, rs, cfg, cache):
    fx = load_fixture(a.fixture)
    rep = verify_table(fx, cfg.convention)
    if a.figure:
        from .plotting import table_report_figure

        table_report_figure(rep, a.figure)
    res = {"type": fx.root_system.name, "level": fx.level, "rows": len(fx.rows),
           "valid": rep.n_valid, "convention": rep.convention,
           "alternatives": rep.alternatives, "validating_convention": rep.validating_convention,
           "failures": [{"row": k, "lambda": list(l), "mu": list(m)}
                        for k, (l, m) in rep.failures]}
    plain = [f"{fx.root_system.name} l={fx.level}: {rep.n_valid}/{len(fx.rows)} rows valid "
             f"({rep.convention})"]
    plain += [f"row {k}: {_fmt(l)} -> {_fmt(m)} fails" for k, (l, m) in rep.failures]
    if not rep.ok:
        plain += [f"{c}: {v}/{len(fx.rows)}" for c, v in rep.alternatives.items()]
    rows = [list(l) + list(m) + [int(ok)] for (l, m), ok in zip(fx.rows, rep.results)]
    return res, plain, rows, rep.ok, False


def _do_qsystem(a, rs, cfg, cache):
    if a.classical:
        ok = classical_qsystem(rs, a.level, a.node)
        lam = None
    else:
        if a.lam is None:
            raise UsageError("--lambda is required unless --classical is given")
        lam = _weight(a.lam, rs.rank)
        ok = qsystem_identity(rs, a.level, a.node, lam)
    res = {"holds": ok, "classical": a.classical, "lambda": list(lam) if lam else None}
    return res, ["holds" if ok else "FAILED"], [[int(ok)]], ok, False


def _do_schur(a, rs, cfg, cache):
    mu = _weight(a.mu, rs.rank, "--mu")
    ok = schur_compare(rs, a.level, a.node, mu)
    return {"holds": ok}, ["holds" if ok else "FAILED"], [[int(ok)]], ok, False


def _do_prime(a, rs, cfg, cache):
    lam = _weight(a.lam, rs.rank)
    chi, hit = cached_character(cache, rs, a.level, lam)
    v = prime_certificate(rs, a.level, lam, budget=a.budget, chi=chi)
    res = {"verdict": v.status, "factorization": v.factorization,
           "groupings_tried": v.groupings_tried, "budget": v.budget}
    plain = [f"{v.status}: {v.factorization}"]
    if v.factors:
        res["factors"] = [[{"weight": list(w), "multiplicity": c} for w, c in d.items()]
                          for d in v.decompositions]
        plain += [" + ".join(f"{c} V{_fmt(w)}" for w, c in d.items()) for d in v.decompositions]
    return res, plain, [[v.status]], True, hit


HANDLERS = {
    "char": _do_char, "dim": _do_dim, "decompose": _do_decompose, "tensor": _do_tensor,
    "key-search": _do_key_search, "key-construct": _do_key_construct,
    "verify-steinberg": _do_verify_steinberg, "verify-table": _do_verify_table,
    "qsystem": _do_qsystem, "schur": _do_schur, "prime": _do_prime,
}


def _query(a):
    skip = {"config", "output", "cache_dir", "no_cache", "term_budget", "threads", "figure"}
    return {k: v for k, v in sorted(vars(a).items()) if k not in skip and v is not None}


def _emit(cfg, query, result, plain, rows, elapsed, hit, out):
    if cfg.output == "json":
        out.write(json.dumps({"query": query, "result": result, "elapsed_ms": elapsed,
                              "cache": "hit" if hit else "miss"}, sort_keys=True) + "\n")
    elif cfg.output == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(rows)
        out.write(buf.getvalue())
    else:
        out.write("\n".join(plain) + "\n")


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = _build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        opt = vars(a)
        cfg = load_config(opt.get("config"), output=opt.get("output"),
                          cache_dir=opt.get("cache_dir"), term_budget=opt.get("term_budget"),
                          threads=opt.get("threads"), convention=opt.get("convention"))
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    cache = None if opt.get("no_cache") else CharacterCache(cfg.resolved_cache_dir())
    if a.cmd == "cache":
        n = (cache or CharacterCache(cfg.resolved_cache_dir())).gc()
        out.write(f"removed {n} entries\n")
        return EXIT_OK
    old_budget = charring.set_term_budget(cfg.term_budget)
    t0 = time.perf_counter()
    try:
        rs = None if a.cmd == "verify-table" else build(a.type.upper(), a.rank)
        result, plain, rows, ok, hit = HANDLERS[a.cmd](a, rs, cfg, cache)
    except (TermBudgetExceeded, InconclusiveByBudget) as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, PreconditionError, RootDataError, KeyConstructionUnavailable,
            ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        charring.set_term_budget(old_budget)
    elapsed = round((time.perf_counter() - t0) * 1000, 3)
    _emit(cfg, _query(a), result, plain, rows, elapsed, hit, out)
    return EXIT_OK if ok else EXIT_FAILED


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
