"""Command-line front end: ``holgraph {catalog,graph,verify,lemmas,counts}``.

Exit status: 0 success, 1 verification failure, 2 usage error,
3 feasibility bound exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass

from .catalog import catalog_counts, expected_counts, format_catalog, full_catalog
from .modring import Modulus, is_prime, verify_arith_lemmas
from .normgraph import build_graph, export
from .oracle import HOL_LIMIT, TooLarge, count_by_iso, verification_report

log = logging.getLogger("holgraph")

OK, FAILED, USAGE, TOO_LARGE = 0, 1, 2, 3

CATALOG_LIMIT = 2**10
TABLE_ENGINE_LIMIT = 2**8
LEMMA_LIMIT = 2**22

ENGINE_ALIASES = {"closed": "closed_form", "closed_form": "closed_form", "modular": "modular", "general": "general"}


class Infeasible(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    p: int
    n: int
    engine: str = "modular"
    format: str | None = None
    output: str | None = None
    jobs: int = 1
    n_min: int | None = None
    oracle: bool = False


def _hol_order(p: int, n: int) -> int:
    m = p**n
    return m * (m - m // p)


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise Infeasible(msg)


def cmd_catalog(cfg: RunConfig) -> tuple[int, str]:
    _require(cfg.p**cfg.n <= CATALOG_LIMIT, f"catalog needs p^n <= {CATALOG_LIMIT}")
    entries = full_catalog(cfg.p, cfg.n)
    if cfg.format == "json":
        rows = [
            {"label": str(e.label), "period": e.gamma.period, "iso": str(e.iso), "table": [int(a) for a in e.gamma.table]}
            for e in entries
        ]
        return OK, json.dumps({"p": cfg.p, "n": cfg.n, "vertices": rows}, indent=2) + "\n"
    return OK, format_catalog(entries)


def cmd_graph(cfg: RunConfig) -> tuple[int, str]:
    m = cfg.p**cfg.n
    limit = CATALOG_LIMIT if cfg.engine == "closed_form" else TABLE_ENGINE_LIMIT
    _require(m <= limit, f"engine {cfg.engine} needs p^n <= {limit}")
    graph = build_graph(cfg.p, cfg.n, cfg.engine, jobs=cfg.jobs)
    if cfg.format == "text":
        return OK, "".join(f"{a} {b}\n" for a, b in graph.sorted_edges())
    return OK, export(graph, cfg.format or "dot").decode()


def cmd_verify(cfg: RunConfig) -> tuple[int, str]:
    _require(_hol_order(cfg.p, cfg.n) <= HOL_LIMIT, f"oracle needs |Hol| <= {HOL_LIMIT}")
    ok, report = verification_report(cfg.p, cfg.n)
    counts = catalog_counts(cfg.p, cfg.n)
    oracle = count_by_iso(cfg.p, cfg.n)
    same = dict(counts.by_iso) == oracle
    ok &= same
    report += f"per-class counts: {'agree' if same else f'DIFFER catalog={dict(counts.by_iso)} oracle={oracle}'}\n"
    report += "PASS\n" if ok else "FAIL\n"
    return (OK if ok else FAILED), report


def cmd_lemmas(cfg: RunConfig) -> tuple[int, str]:
    lo = cfg.n_min if cfg.n_min is not None else (4 if cfg.p == 2 else 1)
    _require(cfg.p**cfg.n <= LEMMA_LIMIT, f"lemma sweep needs p^n <= {LEMMA_LIMIT}")
    if cfg.p == 2 and lo < 4:
        raise ValueError("the p = 2 lemmas need n >= 4")
    lines, ok = [], True
    for n in range(lo, cfg.n + 1):
        for check in verify_arith_lemmas(Modulus(cfg.p, n)):
            ok &= check.passed
            lines.append(f"p={cfg.p} n={n} {check}")
    return (OK if ok else FAILED), "\n".join(lines) + "\n"


def cmd_counts(cfg: RunConfig) -> tuple[int, str]:
    exp = expected_counts(cfg.p, cfg.n)
    lines = [f"expected total {exp.total}"] + [f"expected {k} {v}" for k, v in sorted(exp.by_iso.items())]
    if not cfg.oracle:
        return OK, "\n".join(lines) + "\n"
    _require(_hol_order(cfg.p, cfg.n) <= HOL_LIMIT, f"oracle needs |Hol| <= {HOL_LIMIT}")
    got = count_by_iso(cfg.p, cfg.n)
    lines += [f"oracle total {sum(got.values())}"] + [f"oracle {k} {v}" for k, v in sorted(got.items())]
    ok = got == dict(exp.by_iso)
    lines.append("match" if ok else "MISMATCH")
    return (OK if ok else FAILED), "\n".join(lines) + "\n"


COMMANDS = {"catalog": cmd_catalog, "graph": cmd_graph, "verify": cmd_verify, "lemmas": cmd_lemmas, "counts": cmd_counts}


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute one command; returns (exit status, text to emit)."""
    if not is_prime(cfg.p):
        raise ValueError(f"p = {cfg.p} is not prime")
    if cfg.n < 1:
        raise ValueError("n must be positive")
    try:
        Modulus(cfg.p, cfg.n)
    except ValueError as exc:
        raise Infeasible(str(exc)) from exc
    try:
        return COMMANDS[cfg.command](cfg)
    except TooLarge as exc:
        raise Infeasible(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-p", type=int, required=True, help="prime")
    common.add_argument("-n", type=int, required=True, help="exponent (upper end of the range for lemmas)")
    common.add_argument("-o", "--output", help="write the result here instead of stdout")
    common.add_argument("--jobs", type=int, default=1, help="worker threads for pair decisions")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="holgraph", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    c = sub.add_parser("catalog", parents=[common], help="list the gamma-function catalog")
    c.add_argument("--format", choices=("text", "json"), default="text")
    g = sub.add_parser("graph", parents=[common], help="build and export the normalizing graph")
    g.add_argument("--engine", choices=sorted(ENGINE_ALIASES), default="modular")
    g.add_argument("--format", choices=("dot", "json", "text"), default="dot")
    sub.add_parser("verify", parents=[common], help="cross-check catalog and engines against the holomorph")
    lm = sub.add_parser("lemmas", parents=[common], help="sweep the arithmetic lemmas up to -n")
    lm.add_argument("--n-min", type=int, help="first exponent of the sweep")
    ct = sub.add_parser("counts", parents=[common], help="expected counts per isomorphism class")
    ct.add_argument("--oracle", action="store_true", help="also enumerate in the holomorph")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr, format="%(levelname)s %(message)s")
    if args.jobs < 1:
        parser.error("--jobs must be at least 1")
    cfg = RunConfig(
        command=args.command,
        p=args.p,
        n=args.n,
        engine=ENGINE_ALIASES[getattr(args, "engine", "modular")],
        format=getattr(args, "format", None),
        output=args.output,
        jobs=args.jobs,
        n_min=getattr(args, "n_min", None),
        oracle=getattr(args, "oracle", False),
    )
    try:
        status, text = run(cfg)
    except Infeasible as exc:
        print(f"holgraph: infeasible: {exc}", file=sys.stderr)
        return TOO_LARGE
    except ValueError as exc:
        print(f"holgraph: error: {exc}", file=sys.stderr)
        return USAGE
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if status == FAILED:
        print("holgraph: verification failed", file=sys.stderr)
    return status
