"""Command-line front end: ``slashhom {table,verify,basis,paths,export}``.

Exit codes: 0 success, 1 a verification suite failed, 2 bad arguments.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import exchange
from .errors import SlashHomError
from .gf_linalg import is_prime
from .pcomplex import HomologyReport, omega_complex
from .subsets import MAX_N, boundary_matrix
from .tableaux import INF, count_paths, enumerate_paths, in_window, parse_bound
from .verify import DEFAULT_INSTANCES, DEFAULT_SEED, SUITES, SuiteConfig, run_suite

FORMATS = ("ascii", "json", "csv")
COMMANDS = ("table", "verify", "basis", "paths", "export")


class UsageError(Exception):
    """Bad arguments detected after parsing; reported with exit code 2."""


@dataclass
class RunConfig:
    command: str
    n: int | None = None
    p: int | None = None
    k: tuple[int, int] | None = None
    format: str = "ascii"
    seed: int = DEFAULT_SEED
    threads: int = 1
    out: str | None = None
    suites: tuple[str, ...] = ()
    n_max: int | None = None
    instances: int = DEFAULT_INSTANCES
    s: object = None
    t: object = None
    count: bool = False


# --- argument handling ----------------------------------------------------------------


def _k_range(text: str) -> tuple[int, int]:
    """'5' or '3:7' (inclusive)."""
    try:
        if ":" in text:
            lo, hi = text.split(":", 1)
            return int(lo), int(hi)
        v = int(text)
        return v, v
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad degree or range {text!r}; use K or LO:HI") from None


def _threads(text: str) -> int:
    if text == "auto":
        return os.cpu_count() or 1
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("threads must be a positive integer or 'auto'") from None
    if v < 1:
        raise argparse.ArgumentTypeError("threads must be positive")
    return v


def _seed(text: str) -> int:
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad seed {text!r}") from None
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return v


def _bound(text: str):
    try:
        return parse_bound(text)
    except (ValueError, TypeError):
        raise argparse.ArgumentTypeError(f"bad bound {text!r}; use a positive integer or 'inf'") from None


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--n", type=int, help="size of the ground set [n]")
    shared.add_argument("--p", type=int, help="prime characteristic")
    shared.add_argument("--k", type=_k_range, help="degree K or inclusive range LO:HI")
    shared.add_argument("--format", choices=FORMATS, default="ascii")
    shared.add_argument("--seed", type=_seed, default=DEFAULT_SEED, help=f"default {DEFAULT_SEED:#x}")
    shared.add_argument("--threads", type=_threads, default=1, help="worker count or 'auto'")
    shared.add_argument("--out", metavar="FILE", help="write output here instead of stdout")

    parser = argparse.ArgumentParser(prog="slashhom", description="Slash homology of subset p-complexes.")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("table", parents=[shared], help="homology dimension table")

    v = sub.add_parser("verify", parents=[shared], help="run verification suites")
    v.add_argument("--suite", action="append", default=None, help="suite name (repeatable, comma lists allowed, or 'all')")
    v.add_argument("--n-max", type=int, default=None, help="override each suite's size bound")
    v.add_argument("--instances", type=int, default=DEFAULT_INSTANCES, help="random instances per lemma suite")

    sub.add_parser("basis", parents=[shared], help="p-standard basis of the degree-0 slash homology")

    pa = sub.add_parser("paths", parents=[shared], help="bounded lattice paths")
    pa.add_argument("--s", type=_bound, required=True, help="upper bound (integer or inf)")
    pa.add_argument("--t", type=_bound, required=True, help="lower bound (integer or inf)")
    pa.add_argument("--count", action="store_true", help="print only the number of paths")

    sub.add_parser("export", parents=[shared], help="boundary matrices in the exchange format")
    return parser


def _config(ns: argparse.Namespace) -> RunConfig:
    suites: list[str] = []
    for item in getattr(ns, "suite", None) or ["all"]:
        suites.extend(x.strip() for x in item.split(",") if x.strip())
    if "all" in suites:
        suites = list(SUITES)
    return RunConfig(
        command=ns.command,
        n=ns.n,
        p=ns.p,
        k=ns.k,
        format=ns.format,
        seed=ns.seed,
        threads=ns.threads,
        out=ns.out,
        suites=tuple(dict.fromkeys(suites)),
        n_max=getattr(ns, "n_max", None),
        instances=getattr(ns, "instances", DEFAULT_INSTANCES),
        s=getattr(ns, "s", None),
        t=getattr(ns, "t", None),
        count=getattr(ns, "count", False),
    )


def _validate(cfg: RunConfig) -> None:
    needs_n = cfg.command in ("table", "basis", "paths", "export")
    needs_p = cfg.command in ("table", "basis", "export")
    if needs_n and cfg.n is None:
        raise UsageError(f"{cfg.command} needs --n")
    if needs_p and cfg.p is None:
        raise UsageError(f"{cfg.command} needs --p")
    if cfg.n is not None and not 0 <= cfg.n <= MAX_N:
        raise UsageError(f"--n must lie in [0, {MAX_N}]")
    if cfg.p is not None and not is_prime(cfg.p):
        raise UsageError(f"--p {cfg.p} is not prime")
    if cfg.k is not None:
        lo, hi = cfg.k
        if lo > hi or lo < 0 or (cfg.n is not None and hi > cfg.n):
            raise UsageError(f"--k range {lo}:{hi} is not inside [0, n]")
    if cfg.command in ("basis", "paths") and cfg.k is None:
        raise UsageError(f"{cfg.command} needs --k")
    if cfg.command in ("basis", "paths") and cfg.k[0] != cfg.k[1]:
        raise UsageError(f"{cfg.command} takes a single degree, not a range")
    if cfg.command == "verify":
        unknown = [s for s in cfg.suites if s not in SUITES]
        if unknown:
            raise UsageError(f"unknown suite(s) {', '.join(unknown)}; choose from {', '.join(SUITES)}")
        if cfg.n_max is not None and cfg.n_max < 1:
            raise UsageError("--n-max must be positive")
        if cfg.instances < 1:
            raise UsageError("--instances must be positive")


# --- commands ---------------------------------------------------------------------------


def _degrees(cfg: RunConfig) -> range:
    lo, hi = cfg.k if cfg.k is not None else (0, cfg.n)
    return range(lo, hi + 1)


def _report(cfg: RunConfig, slash_only: bool) -> HomologyReport:
    """Homology of the subset complex, computed degree by degree and merged in order."""
    n, p = cfg.n, cfg.p
    c = omega_complex(n, p, check=False)

    def one(k):
        slash = {(k, a): c.slash_dim(k, a) for a in range(p - 1)}
        if slash_only:
            return slash, {}, {}
        back = {(k, a): c.backslash_dim(k, a) for a in range(p - 1)}
        ph = {(k, r): c.p_homology_dim(k, r) for r in range(1, p)}
        return slash, back, ph

    degrees = list(_degrees(cfg))
    if cfg.threads > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            parts = list(pool.map(one, degrees))
    else:
        parts = [one(k) for k in degrees]
    slash, back, ph = {}, {}, {}
    for s, b, h in parts:
        slash.update(s)
        back.update(b)
        ph.update(h)
    return HomologyReport(n=n, p=p, degrees=(degrees[0], degrees[-1]), slash=slash, backslash=back, p_homology=ph)


def render_ascii_table(r: HomologyReport, degrees: range) -> str:
    """Dense grid: one row per slash index a (largest on top), one column per degree k."""
    p = r.p
    cells = [[str(r.slash.get((k, a), 0)) for k in degrees] for a in range(p - 1)]
    width = max([len(str(k)) for k in degrees] + [len(x) for row in cells for x in row] + [1])
    lines = [f"dim H_k^/a  (n={r.n}, p={p})"]
    for a in reversed(range(p - 1)):
        lines.append(f"a={a:<3}|" + "".join(f" {x:>{width}}" for x in cells[a]))
    lines.append("-----+" + "-" * ((width + 1) * len(degrees)))
    lines.append("   k |" + "".join(f" {k:>{width}}" for k in degrees))
    return "\n".join(lines) + "\n"


def cmd_table(cfg: RunConfig) -> tuple[int, str]:
    if cfg.format == "ascii":
        r = _report(cfg, slash_only=True)
        return 0, render_ascii_table(r, _degrees(cfg))
    r = _report(cfg, slash_only=False)
    if cfg.format == "json":
        return 0, exchange.dumps(r.to_dict())
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["kind", "k", "index", "dim"])
    for kind, table in (("slash", r.slash), ("backslash", r.backslash), ("p_homology", r.p_homology)):
        for (k, i), d in sorted(table.items()):
            w.writerow([kind, k, i, d])
    return 0, buf.getvalue()


def cmd_verify(cfg: RunConfig) -> tuple[int, str]:
    primes = (cfg.p,) if cfg.p is not None else None
    suite_cfg = SuiteConfig(seed=cfg.seed, instances=cfg.instances, n_max=cfg.n_max, primes=primes)
    results = [run_suite(name, suite_cfg) for name in cfg.suites]
    ok = all(r.passed for r in results)
    if cfg.format == "json":
        doc = {
            "seed": cfg.seed,
            "passed": ok,
            "suites": [
                {"name": r.name, "passed": r.passed, "checked": r.checked, "counterexample": r.counterexample}
                for r in results
            ],
        }
        text = json.dumps(doc, sort_keys=True, default=str) + "\n"
    elif cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["suite", "passed", "checked", "counterexample"])
        for r in results:
            w.writerow([r.name, int(r.passed), r.checked, json.dumps(r.counterexample, default=str) if r.counterexample else ""])
        text = buf.getvalue()
    else:
        lines = [r.line() for r in results]
        for r in results:
            lines.extend(f"  note ({r.name}): {note}" for note in r.notes)
        lines.append(f"{'all passed' if ok else 'FAILURES'} (seed {cfg.seed:#x})")
        text = "\n".join(lines) + "\n"
    return (0 if ok else 1), text


def window_message(n: int, k: int, p: int) -> str:
    if p == 2:
        return f"p = 2: every slash homology group vanishes, so there is no basis for (n, k) = ({n}, {k})"
    return (
        f"window violation: n - 2k = {n - 2 * k} is outside [0, p - 2] = [0, {p - 2}], "
        f"so H_{k}^/0 = 0 for n = {n}, p = {p} and there is no basis to export"
    )


def cmd_basis(cfg: RunConfig) -> tuple[int, str]:
    from .specht import h0_basis

    n, k, p = cfg.n, cfg.k[0], cfg.p
    if not in_window(n, k, p):
        raise UsageError(window_message(n, k, p))
    b = h0_basis(n, k, p)
    doc = exchange.basis_to_doc(b)
    if cfg.format == "json":
        return 0, exchange.dumps(doc)
    if cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index", "row1", "row2"])
        for i, (r1, r2) in enumerate(doc["tableaux"]):
            w.writerow([i, " ".join(map(str, r1)), " ".join(map(str, r2))])
        return 0, buf.getvalue()
    lines = [f"{len(b.tableaux)} p-standard tableaux (n={n}, k={k}, p={p}), rank mod Im(phi^{p - 1}) = {b.rank}"]
    lines.extend(str(t) for t in b.tableaux)
    return 0, "\n".join(lines) + "\n"


def cmd_paths(cfg: RunConfig) -> tuple[int, str]:
    n, k = cfg.n, cfg.k[0]
    if cfg.s is not INF and cfg.s < 1 or cfg.t is not INF and cfg.t < 1:
        raise UsageError("--s and --t must be positive (or inf)")
    if cfg.count:
        c = count_paths(n, k, cfg.s, cfg.t)
        if cfg.format == "json":
            return 0, exchange.dumps({"n": n, "k": k, "s": str(cfg.s), "t": str(cfg.t), "count": c})
        return 0, f"{c}\n"
    paths = enumerate_paths(n, k, cfg.s, cfg.t)
    steps = ["".join(path.steps) for path in paths]
    if cfg.format == "json":
        return 0, exchange.dumps({"n": n, "k": k, "s": str(cfg.s), "t": str(cfg.t), "paths": steps})
    if cfg.format == "csv":
        return 0, "steps\n" + "".join(f"{s}\n" for s in steps)
    return 0, "".join(f"{s}\n" for s in steps) + f"# {len(steps)} paths\n"


def cmd_export(cfg: RunConfig) -> tuple[int, str]:
    n, p = cfg.n, cfg.p
    if cfg.k is not None and cfg.k[0] == cfg.k[1]:
        m = boundary_matrix(n, cfg.k[0], p)
        if cfg.format == "json":
            return 0, exchange.dumps(exchange.matrix_to_doc(m))
        sep = "," if cfg.format == "csv" else " "
        return 0, "".join(sep.join(str(int(v)) for v in row) + "\n" for row in m.array)
    if cfg.format != "json":
        raise UsageError("exporting a whole complex needs --format json (or pick one degree with --k)")
    c = omega_complex(n, p, check=False)
    doc = exchange.complex_to_doc(c, n)
    if cfg.k is not None:
        lo, hi = cfg.k
        doc["maps"] = [m for m in doc["maps"] if lo <= m["k"] <= hi]
    return 0, exchange.dumps(doc)


HANDLERS = {
    "table": cmd_table,
    "verify": cmd_verify,
    "basis": cmd_basis,
    "paths": cmd_paths,
    "export": cmd_export,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)  # exits with 2 on malformed flags
    cfg = _config(ns)
    try:
        _validate(cfg)
        code, text = HANDLERS[cfg.command](cfg)
    except UsageError as exc:
        print(f"slashhom {cfg.command}: {exc}", file=sys.stderr)
        return 2
    except SlashHomError as exc:
        print(f"slashhom {cfg.command}: {exc}", file=sys.stderr)
        return 2
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
