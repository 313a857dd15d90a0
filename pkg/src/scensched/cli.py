"""Command line harness: ``scensched gen|solve|eval|compare|reduce``.

Exit codes: 0 success, 2 usage or configuration error, 3 precondition or
cap violation, 4 parse error.
"""
from __future__ import annotations

import argparse
import csv
import glob
import io
import os
import sys
import time
from dataclasses import dataclass, field
from typing import Optional

from . import generators, oracle, reductions, solvers
from .core import (
    MINSUM,
    OBJECTIVES,
    ParseError,
    PreconditionError,
    SchedError,
    check_objective,
    parse_assignment,
    read_instance,
    serialize_assignment,
    serialize_instance,
)
from .estimators import ALGORITHMS, make_scheduler, ratio

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PRECONDITION = 3
EXIT_PARSE = 4

REPORT_COLUMNS = ["instance", "n", "k", "r", "alg", "objective", "value", "opt", "ratio", "seed", "ms"]


class ConfigError(SchedError):
    pass


@dataclass
class RunConfig:
    command: str
    inputs: list = field(default_factory=list)
    out: Optional[str] = None
    objective: str = MINSUM
    algorithms: list = field(default_factory=list)
    seed: int = 0
    trials: int = 1
    cap_brute: int = oracle.BRUTE_FORCE_CAP
    cap_unit_k: int = oracle.UNIT_DP_CAP
    cap_nae_r: int = reductions.NAE_R_CAP
    cap_cut_n: int = solvers.MAXCUT_CAP

    def validate(self) -> None:
        for name in ("cap_brute", "cap_unit_k", "cap_nae_r", "cap_cut_n"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"--{name.replace('_', '-')} must be positive")
        if self.trials < 1:
            raise ConfigError("--trials must be positive")
        try:
            self.objective = check_objective(self.objective)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        for alg in self.algorithms:
            if alg not in ALGORITHMS:
                raise ConfigError(f"unknown algorithm {alg!r}; choose from {', '.join(ALGORITHMS)}")
            if self.objective not in ALGORITHMS[alg][0].supported_objectives:
                raise ConfigError(f"algorithm {alg!r} does not optimize {self.objective}")

    @property
    def caps(self) -> dict:
        return {"brute": self.cap_brute, "unit_k": self.cap_unit_k, "nae_r": self.cap_nae_r, "cut_n": self.cap_cut_n}


@dataclass
class ReportRow:
    instance: str
    n: int
    k: int
    r: int
    alg: str
    objective: str
    value: int
    opt: Optional[int]
    seed: int
    ms: float

    @property
    def ratio(self):
        return None if self.opt is None else ratio(self.value, self.opt)

    def as_list(self) -> list:
        rat = self.ratio
        return [
            self.instance, self.n, self.k, self.r, self.alg, self.objective, self.value,
            "" if self.opt is None else self.opt,
            "" if rat is None else f"{float(rat):.6f}",
            self.seed, f"{self.ms:.3f}",
        ]


def run_one(inst, name: str, alg: str, cfg: RunConfig, opt: Optional[int] = None):
    est = make_scheduler(alg, cfg.objective, cfg.seed, cfg.trials, cfg.caps)
    t0 = time.perf_counter()
    est.fit(inst)
    ms = (time.perf_counter() - t0) * 1000.0
    row = ReportRow(name, inst.n, inst.k, inst.r, alg, cfg.objective, est.value_, opt, cfg.seed, ms)
    return est, row


def _write(text: str, path: Optional[str]) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _csv_text(rows, header=True) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if header:
        w.writerow(REPORT_COLUMNS)
    for row in rows:
        w.writerow(row.as_list())
    return buf.getvalue()


def _read_pairs_file(path: str, width: int) -> list:
    items = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            toks = line.split()
            if not toks or toks[0].startswith("#"):
                continue
            if len(toks) != width:
                raise ParseError(f"expected {width} integers per line", lineno)
            try:
                items.append(tuple(int(t) for t in toks))
            except ValueError:
                raise ParseError("expected integers", lineno) from None
    return items


def cmd_gen(args) -> int:
    source = None
    if args.source:
        width = 2 if args.kind == "maxcut_gadget" else 3
        if args.kind not in ("maxcut_gadget", "setsplit_gadget"):
            raise ConfigError("--source only applies to gadget kinds")
        source = _read_pairs_file(args.source, width)
    inst = generators.generate(args.kind, n=args.n, k=args.k, r=args.r, pmax=args.pmax, seed=args.seed, source=source)
    _write(serialize_instance(inst), args.out)
    return EXIT_OK


def _config(args, algorithms) -> RunConfig:
    cfg = RunConfig(
        command=args.command,
        out=args.out,
        objective=args.objective,
        algorithms=algorithms,
        seed=args.seed,
        trials=args.trials,
        cap_brute=args.cap_brute,
        cap_unit_k=args.cap_unit_k,
        cap_nae_r=args.cap_nae_r,
        cap_cut_n=args.cap_cut_n,
    )
    cfg.validate()
    return cfg


def cmd_solve(args) -> int:
    cfg = _config(args, [args.alg])
    inst = read_instance(args.instance)
    opt = None
    if args.oracle:
        opt = oracle.brute_force(inst, cfg.objective, cfg.cap_brute).value
    est, row = run_one(inst, args.instance, args.alg, cfg, opt)
    if args.format == "csv":
        _write(_csv_text([row]), cfg.out)
    else:
        _write(serialize_assignment(est.assignment_, inst), cfg.out)
    if args.report:
        new = not os.path.exists(args.report) or os.path.getsize(args.report) == 0
        with open(args.report, "a", encoding="utf-8", newline="") as fh:
            fh.write(_csv_text([row], header=new))
    return EXIT_OK


def cmd_eval(args) -> int:
    inst = read_instance(args.instance)
    with open(args.solution, encoding="utf-8") as fh:
        a = parse_assignment(fh.read(), inst.n)
    _write(serialize_assignment(a, inst), args.out)
    return EXIT_OK


def cmd_compare(args) -> int:
    algs = [a for a in args.algs.split(",") if a]
    cfg = _config(args, algs)
    paths = sorted({p for pattern in args.instances for p in glob.glob(pattern)})
    rows, failures = [], []
    for path in paths:
        try:
            inst = read_instance(path)
        except (ParseError, OSError) as exc:
            failures.append((path, str(exc)))
            continue
        opt = None
        if not args.no_oracle and inst.n <= cfg.cap_brute:
            opt = oracle.brute_force(inst, cfg.objective, cfg.cap_brute).value
        for alg in algs:
            try:
                _, row = run_one(inst, path, alg, cfg, opt)
            except PreconditionError as exc:
                failures.append((f"{path} [{alg}]", str(exc)))
                continue
            rows.append(row)
    text = _csv_text(rows)
    for where, msg in failures:
        text += f"# failed {where}: {msg}\n"
    _write(text, cfg.out)
    return EXIT_OK


def cmd_reduce(args) -> int:
    inst = read_instance(args.instance)
    if args.to == "nae":
        text = reductions.serialize_clauses(reductions.to_nae_sat(inst, cap=args.cap_nae_r))
    elif args.to == "cut":
        text = reductions.serialize_cut_graph(reductions.to_maxcut3(inst))
    else:
        vs = reductions.to_vector_scheduling(inst, args.machines)
        text = "".join(" ".join(["v", str(j), *map(str, row)]) + "\n" for j, row in enumerate(vs.vectors.tolist(), 1))
    _write(text, args.out)
    return EXIT_OK


def _default_seed() -> int:
    env = os.environ.get("SCHED_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="scensched", description="Two-machine scheduling over scenario sets.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, solving=True):
        p.add_argument("--out", default=None, help="output path (default: stdout)")
        p.add_argument("--seed", type=int, default=_default_seed(), help="random seed (default: $SCHED_SEED or 0)")
        if solving:
            p.add_argument("--objective", choices=OBJECTIVES, default=MINSUM)
            p.add_argument("--trials", type=int, default=1)
            p.add_argument("--cap-brute", type=int, default=oracle.BRUTE_FORCE_CAP)
            p.add_argument("--cap-unit-k", type=int, default=oracle.UNIT_DP_CAP)
            p.add_argument("--cap-nae-r", type=int, default=reductions.NAE_R_CAP)
            p.add_argument("--cap-cut-n", type=int, default=solvers.MAXCUT_CAP)

    g = sub.add_parser("gen", help="generate an instance")
    g.add_argument("kind", choices=generators.KINDS)
    g.add_argument("--n", type=int, default=8)
    g.add_argument("--k", type=int, default=4, help="scenarios (edges / sets for gadgets)")
    g.add_argument("--r", type=int, default=3, help="largest scenario size")
    g.add_argument("--pmax", type=int, default=9)
    g.add_argument("--source", help="gadget source: edge list (u v) or triple list (a b c)")
    common(g, solving=False)
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("solve", help="solve one instance")
    s.add_argument("instance")
    s.add_argument("--alg", required=True, choices=list(ALGORITHMS))
    s.add_argument("--format", choices=("text", "csv"), default="text")
    s.add_argument("--oracle", action="store_true", help="also run brute force and report the ratio")
    s.add_argument("--report", help="append a CSV report row to this file")
    common(s)
    s.set_defaults(func=cmd_solve)

    e = sub.add_parser("eval", help="evaluate a solution file")
    e.add_argument("instance")
    e.add_argument("solution")
    e.add_argument("--out", default=None)
    e.set_defaults(func=cmd_eval)

    c = sub.add_parser("compare", help="run several algorithms over many instances, CSV out")
    c.add_argument("instances", nargs="*", help="paths or glob patterns")
    c.add_argument("--algs", default="random,derand", help="comma separated algorithm names")
    c.add_argument("--no-oracle", action="store_true")
    c.add_argument("--format", choices=("csv",), default="csv")
    common(c)
    c.set_defaults(func=cmd_compare)

    r = sub.add_parser("reduce", help="write the NAE-SAT, Max Cut or vector form of an instance")
    r.add_argument("instance")
    r.add_argument("--to", choices=("nae", "cut", "vector"), required=True)
    r.add_argument("--machines", type=int, default=2)
    r.add_argument("--cap-nae-r", type=int, default=reductions.NAE_R_CAP)
    r.add_argument("--out", default=None)
    r.set_defaults(func=cmd_reduce)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"scensched: config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"scensched: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PreconditionError as exc:
        print(f"scensched: precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except OSError as exc:
        print(f"scensched: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
