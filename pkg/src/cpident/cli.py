"""Batch driver: ``cpident verify|roots|bench``.

Grid cells run in a process pool; the report is assembled in the parent in
(N, L, Q, suite) order, so output is deterministic for a given seed. Every
number in a JSON report is written as a decimal string.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import os
import random
import statistics
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Optional, Sequence

from mpmath import iv

from . import __version__
from .balls import contains_zero, to_decimal
from .compositions import enumerate_compositions
from .cyclotomic import cyc_field
from .identities import check_corollary, check_lemma1, check_lemma2, verify_theorem
from .polyform import K_brute_all, K_via_g, drinfeld
from .qseries import check_id1, check_id1a, check_product_identity, pochhammer_omega_power
from .roots import isolate_and_refine

SCHEMA = "cpident/1"
SUITES = ("qseries", "oracle", "lemma1", "lemma2", "theorem", "corollary", "roots")
# suites that do not depend on Q; their records carry Q = null
Q_FREE = ("qseries", "oracle")
EXHAUSTIVE_LIMIT = 10**4
SAMPLE_SIZE = 10**3
BENCH_REPS = 5


class UsageError(Exception):
    pass


# -- argument parsing ------------------------------------------------------------

def parse_int_list(text: str) -> list[int]:
    """'2,3' -> [2, 3]; '2..5' -> [2, 3, 4, 5]; mixtures allowed."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            if ".." in part:
                lo, hi = part.split("..", 1)
                a, b = int(lo), int(hi)
                if b < a:
                    raise UsageError(f"empty range {part!r}")
                out.extend(range(a, b + 1))
            else:
                out.append(int(part))
        except ValueError:
            raise UsageError(f"not an integer list: {text!r}") from None
    if not out:
        raise UsageError(f"empty list: {text!r}")
    return sorted(set(out))


def _default_threads() -> int:
    env = os.environ.get("CPIDENT_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cpident", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, suites: bool):
        sp.add_argument("--N", required=True, help="comma list or range a..b")
        sp.add_argument("--L", required=True, help="comma list or range a..b")
        sp.add_argument("--Q", default="all", help="'all' or comma list")
        if suites:
            sp.add_argument("--suite", default=",".join(SUITES), help="comma list of suites")
        sp.add_argument("--prec", type=int, default=128, help="precision in bits (>= 128)")
        sp.add_argument("--threads", type=int, default=_default_threads())
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--format", choices=("json", "csv", "text"), default="text")
        sp.add_argument("--out", default=None, help="output path (default stdout)")

    common(sub.add_parser("verify", help="run verification suites over a grid"), True)
    common(sub.add_parser("roots", help="certified roots of the Drinfeld polynomials"), False)
    common(sub.add_parser("bench", help="brute force vs generating function timings"), False)
    return p


def resolve_grid(args) -> list[tuple[int, int, Optional[list[int]]]]:
    Ns = parse_int_list(args.N)
    Ls = parse_int_list(args.L)
    if min(Ns) < 2:
        raise UsageError("N must be >= 2")
    if min(Ls) < 1:
        raise UsageError("L must be >= 1")
    if args.prec < 128:
        raise UsageError("--prec must be at least 128")
    if args.threads < 1:
        raise UsageError("--threads must be positive")
    qs = None if args.Q.strip() == "all" else parse_int_list(args.Q)
    grid = []
    for N in Ns:
        if qs is not None and (min(qs) < 0 or max(qs) > N - 1):
            raise UsageError(f"Q values {qs} outside [0, {N - 1}] for N={N}")
        for L in Ls:
            grid.append((N, L, list(range(N)) if qs is None else qs))
    return grid


def resolve_suites(text: str) -> list[str]:
    wanted = [s.strip() for s in text.split(",") if s.strip()]
    bad = [s for s in wanted if s not in SUITES]
    if bad or not wanted:
        raise UsageError(f"unknown suite(s) {bad}; choose from {', '.join(SUITES)}")
    return [s for s in SUITES if s in wanted]


# -- suites -------------------------------------------------------------------------

def suite_qseries(N: int, L: int, Q, prec: int, seed: int) -> dict:
    field = cyc_field(N)
    id1 = all(check_id1(field, n, r) for r in range(N) for n in range(N - r))
    id1a = all(check_id1a(field, s) for s in range(N))
    poch = pochhammer_omega_power(field, 1, N - 1) == N
    return {"checks": {"id1": id1, "id1a": id1a, "poch_N-1=N": poch}, "exact": True}


def suite_oracle(N: int, L: int, Q, prec: int, seed: int) -> dict:
    count = mism = conj = 0
    for c in enumerate_compositions(L, N, N):
        count += 1
        tab = K_via_g(c, N)
        brute = K_brute_all(c, N, "K")
        brute_bar = K_brute_all(c, N, "Kbar")
        if list(tab.K) + [cyc_field(N).zero] * (len(brute) - len(tab.K)) != brute:
            mism += 1
        elif list(tab.Kbar) + [cyc_field(N).zero] * (len(brute_bar) - len(tab.Kbar)) != brute_bar:
            mism += 1
        if any(a.conjugate() != b for a, b in zip(tab.K, tab.Kbar)):
            conj += 1
    return {
        "checks": {"K_brute=K_via_g": mism == 0, "Kbar=conj(K)": conj == 0},
        "exact": True,
        "residuals": {"compositions": count, "mismatches": mism, "conjugation_failures": conj},
    }


def _residue_vectors(N: int, L: int, Q: int) -> int:
    # number of vectors in [0, N-1]^L with sum = Q mod N
    counts = [1] + [0] * (N - 1)
    for _ in range(L):
        counts = [sum(counts[(r - d) % N] for d in range(N)) for r in range(N)]
    return counts[Q]


def _random_vector(rng: random.Random, N: int, L: int, Q: int) -> tuple[int, ...]:
    # the last part fixes the residue, so this is uniform on the residue class
    head = [rng.randrange(N) for _ in range(L - 1)]
    last = (Q - sum(head)) % N
    return tuple(head + [last])


def lemma1_pairs(N: int, L: int, Q: int, seed: int):
    total = _residue_vectors(N, L, Q) ** 2
    if total <= EXHAUSTIVE_LIMIT:
        vecs = [v for v in itertools.product(range(N), repeat=L) if sum(v) % N == Q]
        return "exhaustive", total, [(mu, lam) for mu in vecs for lam in vecs]
    rng = random.Random(f"{seed}:{N}:{L}:{Q}")
    pairs = [(_random_vector(rng, N, L, Q), _random_vector(rng, N, L, Q)) for _ in range(SAMPLE_SIZE)]
    return "sampled", total, pairs


def suite_lemma1(N: int, L: int, Q: int, prec: int, seed: int) -> dict:
    policy, total, pairs = lemma1_pairs(N, L, Q, seed)
    failed: dict[str, int] = {}
    product_checked = product_failed = 0
    for mu, lam in pairs:
        rep = check_lemma1(N, mu, lam)
        for name, ok in rep.checks.items():
            failed.setdefault(name, 0)
            if not ok:
                failed[name] += 1
        if rep.ell >= rep.n:
            product_checked += 1
            if not check_product_identity(cyc_field(N), mu, lam):
                product_failed += 1
    checks = {name: n == 0 for name, n in sorted(failed.items())}
    checks["product_identity"] = product_failed == 0
    return {
        "checks": checks,
        "exact": True,
        "residuals": {"failures": dict(sorted(failed.items())), "product_failures": product_failed},
        "certificates": {"policy": policy, "admissible_pairs": total, "checked_pairs": len(pairs),
                         "product_pairs": product_checked},
    }


def suite_lemma2(N: int, L: int, Q: int, prec: int, seed: int) -> dict:
    rep = check_lemma2(N, L, Q)
    return {
        "checks": {"m0_closed_form": all(r[2] == r[3] for r in rep.m0),
                   "k1_closed_form": all(r[2] == r[3] for r in rep.k1),
                   "symmetric": rep.symmetric},
        "exact": True,
        "residuals": {"entries": len(rep.m0) + len(rep.k1), "failures": [list(r) for r in rep.failures]},
    }


def suite_theorem(N: int, L: int, Q: int, prec: int, seed: int) -> dict:
    rep = verify_theorem(N, L, Q, prec)
    diag = [to_decimal(rep.matrix[i][i]) for i in range(len(rep.matrix))]
    return {
        "checks": {"offdiag_contains_0": rep.offdiag_ok, "diag_contains_-B": rep.diag_ok,
                   "paths_agree": rep.paths_agree, "radius": rep.radius_ok},
        "exact": False,
        "residuals": {"max_offdiag": _num(rep.max_offdiag), "max_diag_relerr": _num(rep.max_diag_relerr),
                      "max_radius_ratio": _num(rep.max_radius_ratio)},
        "certificates": {"m_Q": rep.dd.m_Q, "precision_bits": rep.precision_bits, "diagonal": diag,
                         "B": [to_decimal(b) for b in rep.roots.B], "note": rep.note},
    }


def suite_corollary(N: int, L: int, Q: int, prec: int, seed: int) -> dict:
    dd = drinfeld(N, L, Q)
    if dd.m_Q < 1:
        return {"checks": {"vacuous": True}, "exact": True, "certificates": {"m_Q": dd.m_Q}}
    rs = isolate_and_refine(dd, prec)
    rep = check_corollary(dd, rs, prec)
    return {
        "checks": {"match": all(r["match"] for r in rep.per_root),
                   "consistent": all(r["consistent"] for r in rep.per_root),
                   "real": all(r["real"] for r in rep.per_root)},
        "exact": False,
        "residuals": {"max_rel_diff": [_num(r["max_rel_diff"]) for r in rep.per_root]},
        "certificates": {"m_Q": dd.m_Q, "tolerance": repr(rep.tolerance)},
    }


def roots_record(N: int, L: int, Q: int, prec: int) -> dict:
    dd = drinfeld(N, L, Q)
    entry = {"m_Q": dd.m_Q, "Lambda": list(dd.Lambda), "P(1)": dd.value(1)}
    if dd.m_Q < 1:
        entry.update(roots=[], real_count=0, distinct=True, discriminant=None, B=[])
        return entry
    rs = isolate_and_refine(dd, prec)
    entry.update(
        roots=[{"value": to_decimal(z), "exact": None if e is None else str(e), "multiplicity": m,
                "radius": _num(r)}
               for z, e, m, r in zip(rs.roots, rs.exact, rs.multiplicity, _radii(rs.roots))],
        real_count=rs.real_count,
        distinct=rs.distinct,
        discriminant=rs.discriminant,
        B=[to_decimal(b) for b in rs.B],
        _roots=rs,
    )
    return entry


def suite_roots(N: int, L: int, Q: int, prec: int, seed: int) -> dict:
    entry = roots_record(N, L, Q, prec)
    rs = entry.pop("_roots", None)
    no_zero = rs is None or not any(contains_zero(z) for z in rs.roots)
    return {
        "checks": {"real_count=m_Q": entry["real_count"] == entry["m_Q"],
                   "distinct": entry["distinct"],
                   "no_root_contains_0": no_zero,
                   "P(1)=N^(L-1)": entry["P(1)"] == N ** (L - 1)},
        "exact": rs is None,
        "certificates": entry,
    }


SUITE_FUNCS = {
    "qseries": suite_qseries, "oracle": suite_oracle, "lemma1": suite_lemma1,
    "lemma2": suite_lemma2, "theorem": suite_theorem, "corollary": suite_corollary,
    "roots": suite_roots,
}


def _radii(zs):
    from .balls import radius
    return [radius(z) for z in zs]


def _num(x):
    if x is None:
        return None
    if isinstance(x, (int, Fraction)):
        return str(x)
    if isinstance(x, float):
        return repr(x)
    return to_decimal(x, 10)


def run_cell(task: tuple) -> dict:
    N, L, Q, suite, prec, seed = task
    t0 = time.perf_counter()
    try:
        body = SUITE_FUNCS[suite](N, L, Q, prec, seed)
        verdict = "pass" if all(body["checks"].values()) else "fail"
    except Exception as exc:  # a failing cell must not abort the grid
        body = {"checks": {}, "exact": None, "error": f"{type(exc).__name__}: {exc}"}
        verdict = "error"
    record = {"params": {"N": N, "L": L, "Q": Q}, "suite": suite, "verdict": verdict}
    record.update(body)
    record["timings"] = {"seconds": time.perf_counter() - t0}
    return record


def _tasks(grid, suites, prec, seed) -> list[tuple]:
    tasks = []
    for N, L, qs in grid:
        for suite in suites:
            if suite in Q_FREE:
                tasks.append((N, L, None, suite, prec, seed))
        for Q in qs:
            for suite in suites:
                if suite not in Q_FREE:
                    tasks.append((N, L, Q, suite, prec, seed))
    key = {s: i for i, s in enumerate(SUITES)}
    tasks.sort(key=lambda t: (t[0], t[1], -1 if t[2] is None else t[2], key[t[3]]))
    return tasks


def _run_all(tasks: list[tuple], threads: int, fn=run_cell) -> list:
    if threads <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, tasks))


# -- serialization -----------------------------------------------------------------

def stringify(obj):
    """Recursively turn numbers into decimal strings (booleans and None stay)."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (int, Fraction)):
        return str(obj)
    if isinstance(obj, float):
        return repr(obj)
    if isinstance(obj, dict):
        return {str(k): stringify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [stringify(v) for v in obj]
    if isinstance(obj, (iv.mpf, iv.mpc)):
        return to_decimal(obj)
    return str(obj)


def _flatten(prefix: str, obj, out: dict) -> None:
    if isinstance(obj, dict):
        for k, v in obj.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, out)
    elif isinstance(obj, list):
        out[prefix] = json.dumps(stringify(obj), separators=(",", ":"))
    else:
        out[prefix] = obj


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(stringify(report), indent=2, sort_keys=False) + "\n"
    records = report["records"]
    if fmt == "csv":
        rows = []
        for rec in records:
            flat: dict = {}
            _flatten("", stringify(rec), flat)
            rows.append(flat)
        cols = sorted({c for r in rows for c in r})
        head = [c for c in ("params.N", "params.L", "params.Q", "suite", "verdict") if c in cols]
        cols = head + [c for c in cols if c not in head]
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({c: "" if r.get(c) is None else r.get(c) for c in cols})
        return buf.getvalue()
    return report["text"]


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _config_echo(args, grid, suites=None) -> dict:
    echo = {
        "N": sorted({g[0] for g in grid}),
        "L": sorted({g[1] for g in grid}),
        "Q": args.Q.strip(),
        "precision_bits": args.prec,
        "threads": args.threads,
        "seed": args.seed,
        "format": args.format,
    }
    if suites is not None:
        echo["suites"] = suites
    return echo


# -- commands -------------------------------------------------------------------------

def cmd_verify(args) -> int:
    grid = resolve_grid(args)
    suites = resolve_suites(args.suite)
    records = _run_all(_tasks(grid, suites, args.prec, args.seed), args.threads)
    summary = {v: sum(r["verdict"] == v for r in records) for v in ("pass", "fail", "error")}
    summary["total"] = len(records)
    lines = []
    for r in records:
        p = r["params"]
        q = "-" if p["Q"] is None else p["Q"]
        extra = ""
        if r["suite"] == "theorem" and "certificates" in r:
            extra = "  diag=" + ",".join(d[:14] for d in r["certificates"]["diagonal"])
        if r["verdict"] != "pass":
            bad = [k for k, ok in r["checks"].items() if not ok]
            extra += "  " + (r.get("error") or "failed: " + ",".join(bad))
        lines.append(f"{r['verdict'].upper():5} N={p['N']} L={p['L']} Q={q} {r['suite']}{extra}")
    lines.append(f"{summary['pass']}/{summary['total']} passed")
    report = {
        "schema": SCHEMA,
        "version": __version__,
        "command": "verify",
        "config": _config_echo(args, grid, suites),
        "summary": summary,
        "records": records,
        "text": "\n".join(lines) + "\n",
    }
    text = render({k: v for k, v in report.items() if k != "text"} if args.format == "json" else report,
                  args.format)
    _emit(text, args.out)
    return 0 if summary["pass"] == summary["total"] else 1


def _roots_task(task):
    N, L, Q, prec = task
    entry = roots_record(N, L, Q, prec)
    entry.pop("_roots", None)
    return {"params": {"N": N, "L": L, "Q": Q}, **entry}


def cmd_roots(args) -> int:
    grid = resolve_grid(args)
    tasks = [(N, L, Q, args.prec) for N, L, qs in grid for Q in qs]
    records = _run_all(tasks, args.threads, _roots_task)
    lines = []
    for r in records:
        p = r["params"]
        lines.append(f"N={p['N']} L={p['L']} Q={p['Q']}  m_Q={r['m_Q']}  Lambda={r['Lambda']}  "
                     f"real={r['real_count']}  distinct={r['distinct']}  disc={r['discriminant']}")
        for k, z in enumerate(r["roots"]):
            flag = f" (exact {z['exact']})" if z["exact"] is not None else ""
            lines.append(f"  z_{k} = {z['value'][:32]}{flag}  B = {r['B'][k][:32]}  radius <= {z['radius']}")
    ok = all(r["real_count"] == r["m_Q"] and r["distinct"] for r in records)
    report = {"schema": SCHEMA, "version": __version__, "command": "roots",
              "config": _config_echo(args, grid), "records": records, "text": "\n".join(lines) + "\n"}
    if args.format == "csv":
        flat = []
        for r in records:
            for k, z in enumerate(r["roots"]):
                flat.append({"params": r["params"], "m_Q": r["m_Q"], "k": k, "root": z["value"],
                             "exact": z["exact"], "multiplicity": z["multiplicity"],
                             "radius": z["radius"], "B": r["B"][k], "distinct": r["distinct"],
                             "real_count": r["real_count"]})
        report["records"] = flat
    if args.format == "json":
        report.pop("text")
    _emit(render(report, args.format), args.out)
    return 0 if ok else 1


def _time(fn, reps: int) -> float:
    samples = []
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples)


def bench_cell(N: int, L: int, reps: int = BENCH_REPS) -> dict:
    """Time K and Kbar by enumeration vs by generating function, per composition.

    Both routes are run and compared before any timing; a mismatch raises.
    """
    zero = cyc_field(N).zero
    rows = []
    for c in enumerate_compositions(L, N, N):
        tab = K_via_g(c, N)
        for variant, vals in (("K", tab.K), ("Kbar", tab.Kbar)):
            brute = K_brute_all(c, N, variant)
            if list(vals) + [zero] * (len(brute) - len(vals)) != brute:
                raise AssertionError(f"{variant} mismatch on composition {c}")
        tb = _time(lambda: (K_brute_all(c, N, "K"), K_brute_all(c, N, "Kbar")), reps)
        tg = _time(lambda: K_via_g(c, N), reps)
        rows.append({"composition": list(c), "brute_s": tb, "gen_s": tg})
    total_b = sum(r["brute_s"] for r in rows)
    total_g = sum(r["gen_s"] for r in rows)
    return {"params": {"N": N, "L": L}, "agree": True, "compositions": len(rows), "reps": reps,
            "timings": {"brute_total_s": total_b, "gen_total_s": total_g,
                        "speedup": total_b / total_g if total_g else math.inf, "per_composition": rows}}


def _bench_task(task):
    N, L = task
    try:
        return bench_cell(N, L)
    except AssertionError as exc:
        return {"params": {"N": N, "L": L}, "agree": False, "error": str(exc)}


def cmd_bench(args) -> int:
    grid = resolve_grid(args)
    # timing in parallel would distort the measurements
    records = [_bench_task((N, L)) for N, L, _ in grid]
    lines = []
    for r in records:
        p = r["params"]
        if not r["agree"]:
            lines.append(f"N={p['N']} L={p['L']}  MISMATCH {r['error']}")
            continue
        t = r["timings"]
        lines.append(f"N={p['N']} L={p['L']}  compositions={r['compositions']}  "
                     f"brute={t['brute_total_s']:.4f}s  gen={t['gen_total_s']:.4f}s  "
                     f"speedup={t['speedup']:.1f}x")
    report = {"schema": SCHEMA, "version": __version__, "command": "bench",
              "config": _config_echo(args, grid), "records": records, "text": "\n".join(lines) + "\n"}
    if args.format == "json":
        report.pop("text")
    if args.format == "csv":
        report["records"] = [{"params": r["params"], "composition": row["composition"],
                              "brute_s": row["brute_s"], "gen_s": row["gen_s"]}
                             for r in records if r["agree"] for row in r["timings"]["per_composition"]]
    _emit(render(report, args.format), args.out)
    return 0 if all(r["agree"] for r in records) else 1


COMMANDS = {"verify": cmd_verify, "roots": cmd_roots, "bench": cmd_bench}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"cpident: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
