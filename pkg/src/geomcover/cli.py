"""Batch command-line front door: gen / solve / kernelize / bench.

Exit codes: 0 decision computed (yes or no), 2 invalid input, 3 cap
exceeded, 4 verification mismatch (solver bug).

Result records are emitted as canonical JSON. Wall-clock timing is kept out
of the record unless --timing is passed, so records from identical seeds in
single-threaded mode are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .curve_branch import SearchStats, curve_cover
from .geometry import Curve, GeometryError, Plane3, check_cover
from .inclusion_exclusion import (
    DEFAULT_SUBSET_CAP,
    CapExceededError,
    SolverInternalError,
    extract_cover,
    ie_decide,
    ie_min_cover,
)
from .instances import (
    GENERATOR_MODELS,
    Instance,
    InvalidInstanceError,
    generate,
    load_instance,
    save_instance,
)
from .kernel import curve_kernel, plane_kernel_r3
from .oracle import DEFAULT_ORACLE_CAP, oracle_min_cover
from .plane_branch import plane_cover

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_CAP = 3
EXIT_MISMATCH = 4


class VerificationMismatch(RuntimeError):
    pass


def _witness_json(witness) -> list:
    out = []
    for obj in witness:
        if isinstance(obj, Curve):
            out.append({"kind": obj.kind, "coeffs": [str(c) for c in obj.coeffs]})
        elif isinstance(obj, Plane3):
            out.append({"kind": "plane3", "coeffs": [str(c) for c in obj.coeffs]})
        else:
            raise SolverInternalError("unexpected witness object %r" % (obj,))
    return out


@dataclass
class ResultRecord:
    algorithm: str
    decision: bool = False
    opt: Optional[int] = None
    witness: Optional[list] = None
    stats: SearchStats = field(default_factory=SearchStats)
    seed: Optional[int] = None
    config: dict = field(default_factory=dict)
    verified: Optional[bool] = None

    def to_json(self, timing: bool = False) -> str:
        stats = {
            "nodes": self.stats.nodes_expanded,
            "leaves_ie": self.stats.leaves_ie,
            "leaves_rejected": self.stats.leaves_rejected,
            "max_depth": self.stats.max_depth,
            "ie_subsets": self.stats.ie_subsets,
        }
        if timing:
            stats["wall_ms"] = self.stats.wall_ms
        doc = {
            "algorithm": self.algorithm,
            "decision": self.decision,
            "opt": self.opt,
            "witness": _witness_json(self.witness) if self.witness is not None else None,
            "stats": stats,
            "seed": self.seed,
            "config": self.config,
            "verified": self.verified,
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def _pick_auto(inst: Instance, oracle_cap: int, ie_cap: int) -> str:
    if inst.n <= 12:
        return "oracle"
    if inst.n <= ie_cap:
        return "ie"
    return "branch"


def _run_algorithm(inst: Instance, algorithm: str, k: int, args) -> ResultRecord:
    factor = Fraction(args.base_case_factor) if args.base_case_factor else None
    record = ResultRecord(algorithm=algorithm, seed=args.seed, config={
        "k": k,
        "family": inst.family.kind,
        "n": inst.n,
        "threads": args.threads,
        "ie_cap": args.ie_cap,
        "base_case_factor": args.base_case_factor,
    })

    if algorithm == "ie":
        if args.min_cover:
            record.opt = ie_min_cover(inst.points, inst.family, cap=args.ie_cap)
            record.decision = record.opt <= k
            record.stats.ie_subsets += 1 << inst.n
        else:
            res = ie_decide(inst.points, inst.family, k, cap=args.ie_cap)
            record.decision = res.decision
            record.stats.ie_subsets += res.subsets
        if args.witness and record.decision:
            budget = record.opt if args.min_cover else k
            record.witness = extract_cover(inst.points, inst.family, budget, cap=args.ie_cap)
    elif algorithm == "oracle":
        res = oracle_min_cover(inst.points, inst.family, cap=args.oracle_cap)
        record.opt = res.opt
        record.decision = res.opt <= k
        if args.witness and record.decision:
            record.witness = res.witness
    elif algorithm == "branch":
        if args.min_cover:
            raise InvalidInstanceError("--min needs the ie or oracle algorithm")
        if inst.family.kind == "plane3":
            res = plane_cover(inst.points, k, base_case_factor=factor,
                              ie_cap=args.ie_cap, threads=args.threads,
                              rng_seed=args.seed or 0)
        else:
            res = curve_cover(inst.points, inst.family, k, base_case_factor=factor,
                              ie_cap=args.ie_cap, threads=args.threads)
        record.decision = res.decision
        record.stats = res.stats
        if args.witness and res.decision:
            record.witness = res.witness
    else:
        raise InvalidInstanceError("unknown algorithm %r" % algorithm)

    if record.witness is not None:
        budget = record.opt if record.opt is not None else k
        if not check_cover(inst.points, record.witness, budget):
            raise VerificationMismatch("solver produced an invalid witness")
    return record


def _cmd_solve(args) -> int:
    inst = load_instance(args.input, dedup=args.dedup)
    k = args.k if args.k is not None else inst.k
    algorithm = args.algorithm
    if algorithm == "auto":
        algorithm = _pick_auto(inst, args.oracle_cap, args.ie_cap)
    record = _run_algorithm(inst, algorithm, k, args)

    if args.verify:
        if inst.n <= args.oracle_cap:
            truth = oracle_min_cover(inst.points, inst.family, cap=args.oracle_cap)
            expected = truth.opt <= k
            record.verified = record.decision == expected
            if algorithm == "oracle":
                record.verified = True
            if not record.verified:
                print("verification mismatch: %s said %s, oracle says %s"
                      % (algorithm, record.decision, expected), file=sys.stderr)
                print(record.to_json(timing=args.timing))
                return EXIT_MISMATCH
        else:
            record.verified = None  # beyond the oracle cap

    print(record.to_json(timing=args.timing))
    return EXIT_OK


def _cmd_gen(args) -> int:
    params = {}
    for key in ("n", "k", "m", "noise", "dimension", "coord_range", "family"):
        val = getattr(args, key.replace("-", "_"), None)
        if val is not None:
            params[key] = val
    inst = generate(args.model, params, args.seed)
    save_instance(inst, args.out)
    print("wrote %s: %d points, family %s, k=%d" % (args.out, inst.n, inst.family.kind, inst.k))
    return EXIT_OK


def _cmd_kernelize(args) -> int:
    inst = load_instance(args.input, dedup=args.dedup)
    k = args.k if args.k is not None else inst.k
    if inst.family.kind == "plane3":
        res = plane_kernel_r3(inst.points, k, rng_seed=args.seed or 0)
    else:
        res = curve_kernel(inst.points, inst.family, k)
    meta = dict(inst.metadata)
    meta["kernel"] = {
        "verdict": res.verdict,
        "input_k": k,
        "forced": _witness_json(res.forced),
    }
    out = Instance(res.points, inst.family, res.k, meta)
    save_instance(out, args.out)
    print("kernel verdict=%s: %d -> %d points, k %d -> %d, %d forced"
          % (res.verdict, inst.n, out.n, k, res.k, len(res.forced)))
    return EXIT_OK


BENCH_COLUMNS = ("n", "k", "algorithm", "decision", "nodes", "leaves", "wall_ms")


def _cmd_bench(args) -> int:
    with open(args.suite, "r", encoding="utf-8") as fh:
        suite = json.load(fh)
    entries = suite.get("entries", [])
    rows = []
    for entry in entries:
        inst = generate(entry["model"], entry.get("params", {}), entry.get("seed", 0))
        k = entry.get("k", inst.k)
        reps = entry.get("repetitions", 1)
        for algorithm in entry["algorithms"]:
            for _ in range(reps):
                t0 = time.perf_counter()
                ns = argparse.Namespace(
                    base_case_factor=None, seed=entry.get("seed", 0), threads=1,
                    ie_cap=args.ie_cap, oracle_cap=args.oracle_cap,
                    min_cover=False, witness=False)
                record = _run_algorithm(inst, algorithm, k, ns)
                wall = int((time.perf_counter() - t0) * 1000)
                leaves = record.stats.leaves_ie + record.stats.leaves_rejected
                rows.append((inst.n, k, algorithm, "yes" if record.decision else "no",
                             record.stats.nodes_expanded, leaves, wall))
    rows.sort(key=lambda r: (r[0], r[1], r[2], r[4], r[5]))
    print(",".join(BENCH_COLUMNS))
    for row in rows:
        print(",".join(str(x) for x in row))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="geomcover",
                                     description="exact point-cover solvers for curves and planes")
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="decide or minimize a cover for an instance file")
    solve.add_argument("--input", required=True)
    solve.add_argument("--algorithm", default="auto", choices=["ie", "branch", "oracle", "auto"])
    solve.add_argument("--k", type=int, default=None, help="budget (defaults to the instance's k)")
    solve.add_argument("--min", dest="min_cover", action="store_true",
                       help="compute the minimum cover size")
    solve.add_argument("--witness", action="store_true", help="extract a concrete cover")
    solve.add_argument("--verify", action="store_true",
                       help="cross-check against the brute-force oracle when within cap")
    solve.add_argument("--threads", type=int, default=1)
    solve.add_argument("--base-case-factor", default=None,
                       help="fraction multiplying the K_i*log2(k) base-case threshold")
    solve.add_argument("--seed", type=int, default=0)
    solve.add_argument("--ie-cap", type=int, default=DEFAULT_SUBSET_CAP)
    solve.add_argument("--oracle-cap", type=int, default=DEFAULT_ORACLE_CAP)
    solve.add_argument("--dedup", action="store_true", help="drop duplicate points with a warning")
    solve.add_argument("--timing", action="store_true", help="include wall time in the record")
    solve.set_defaults(func=_cmd_solve)

    gen = sub.add_parser("gen", help="generate an instance file")
    gen.add_argument("--model", required=True, choices=list(GENERATOR_MODELS))
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--out", required=True)
    gen.add_argument("--n", type=int, default=None)
    gen.add_argument("--k", type=int, default=None)
    gen.add_argument("--m", type=int, default=None)
    gen.add_argument("--noise", type=int, default=None)
    gen.add_argument("--dimension", type=int, default=None)
    gen.add_argument("--coord-range", dest="coord_range", type=int, default=None)
    gen.add_argument("--family", default=None)
    gen.set_defaults(func=_cmd_gen)

    kern = sub.add_parser("kernelize", help="reduce an instance and save the result")
    kern.add_argument("--input", required=True)
    kern.add_argument("--k", type=int, default=None)
    kern.add_argument("--out", required=True)
    kern.add_argument("--seed", type=int, default=0)
    kern.add_argument("--dedup", action="store_true")
    kern.set_defaults(func=_cmd_kernelize)

    bench = sub.add_parser("bench", help="run a benchmark suite and emit CSV")
    bench.add_argument("--suite", required=True)
    bench.add_argument("--ie-cap", type=int, default=DEFAULT_SUBSET_CAP)
    bench.add_argument("--oracle-cap", type=int, default=DEFAULT_ORACLE_CAP)
    bench.set_defaults(func=_cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InvalidInstanceError, GeometryError, ValueError, OSError) as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_INVALID
    except CapExceededError as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_CAP
    except (VerificationMismatch, SolverInternalError) as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
