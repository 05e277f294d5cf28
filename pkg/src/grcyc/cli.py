"""Command-line entry point: ``grcyc <subcommand> ...``.

Exit codes: 0 success, 1 a verification check failed, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from typing import Optional, Sequence

import numpy as np

from . import jsonio
from .cyclic_shift import (
    enumerate_fixed_points,
    fixed_residual,
    flow,
    roots_and_s0,
    shift_eigenvalue,
)
from .dynamics import birational_rowmotion, promotion, promotion_orbit, promotion_order, rowmotion_fixed_check
from .errors import GrcycError
from .grassmann import TolerancePolicy, plucker_from_matrix, projective_distance
from .moment_curve import v0_matrix, v0_point
from .peterson import Partition, is_nonnegative, partitions_in_box, schur_eval, schur_sine_formula, schur_via_plucker
from .positivity import gk_sample_check, is_tnn, is_tp, random_tnn_matrix
from .superpotential import verify_correspondence, find_critical_points
from .twist import left_twist, right_twist, twist_fixed_candidates
from .verify import RunConfig, flow_horizon, minmax_plucker, run_verify_all

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class Output:
    """A JSON payload plus an optional flat table used for --output csv."""

    def __init__(self, payload, rows: Optional[list[dict]] = None, status: int = EXIT_OK):
        self.payload = payload
        self.rows = rows
        self.status = status


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("GRCYC_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise GrcycError(f"GRCYC_SEED must be an integer, got {env!r}")


def _tol(args) -> TolerancePolicy:
    if args.tol is None:
        return TolerancePolicy()
    return TolerancePolicy(abs_eps=args.tol, rel_eps=args.tol)


def _config(args, t=1.0) -> RunConfig:
    return RunConfig(args.k, args.n, jsonio.parse_complex(t), _seed(args), _tol(args), args.output)


def _pair_str(z: complex) -> str:
    return repr(complex(z))


def cmd_v0(args) -> Output:
    cfg = _config(args)
    A = v0_matrix(cfg.k, cfg.n, args.theta)
    P = plucker_from_matrix(A, cfg.tol)
    dist = projective_distance(P, v0_point(cfg.k, cfg.n))
    payload = {"k": cfg.k, "n": cfg.n, "formula_distance": dist}
    if args.pluckers or not args.matrix:
        payload["plucker"] = P.to_json()
    if args.matrix:
        payload["matrix"] = jsonio.matrix_to_json(A)
    rows = [{"subset": I, "re": v[0], "im": v[1]} for I, v in P.to_json().items()]
    return Output(payload, rows)


def cmd_fixed_points(args) -> Output:
    cfg = _config(args, args.t)
    _, S0 = roots_and_s0(cfg.k, cfg.n, cfg.t)
    points, rows = [], []
    for fp in enumerate_fixed_points(cfg.k, cfg.n, cfg.t):
        entry = {
            "root_indices": list(fp.roots.indices),
            "roots": fp.roots.to_json(),
            "tnn": is_tnn(fp.point, cfg.tol),
            "residual": fixed_residual(fp.point, cfg.t),
            "eigenvalue": jsonio.complex_pair(shift_eigenvalue(fp.point, cfg.t)),
        }
        if args.plucker:
            entry["plucker"] = fp.point.to_json()
        points.append(entry)
        rows.append({"root_indices": " ".join(map(str, fp.roots.indices)), "tnn": entry["tnn"],
                     "residual": entry["residual"]})
    payload = {"k": cfg.k, "n": cfg.n, "t": jsonio.complex_pair(cfg.t), "count": len(points),
               "s0_indices": list(S0.indices) if S0 else None, "points": points}
    return Output(payload, rows)


def cmd_tnn(args) -> Output:
    tol = _tol(args)
    P = jsonio.plucker_from_json(jsonio.load_json(args.input))
    payload = {"k": P.k, "n": P.n, "tnn": is_tnn(P, tol), "tp": is_tp(P, tol), "gk_max_variation": None}
    try:
        rep = gk_sample_check(P, args.samples, _seed(args), tol)
        payload["gk_max_variation"] = rep.max_variation
        payload["gantmakher_krein"] = rep.to_json()
    except GrcycError as exc:  # not realizable over the reals
        payload["gantmakher_krein"] = {"error": str(exc)}
    return Output(payload, [{k: v for k, v in payload.items() if k != "gantmakher_krein"}])


def cmd_schur(args) -> Output:
    cfg = _config(args, args.t)
    fps = enumerate_fixed_points(cfg.k, cfg.n, cfg.t)
    _, S0 = roots_and_s0(cfg.k, cfg.n, cfg.t)
    if args.roots:
        want = tuple(int(i) for i in args.roots.split(","))
        matches = [fp for fp in fps if fp.roots.indices == want]
        if not matches:
            raise GrcycError(f"{args.roots} is not a {cfg.k}-subset of root indices 0..{cfg.n - 1}")
        S = matches[0].roots
    elif S0 is not None:
        S = S0
    else:
        raise GrcycError("t is not positive real, so --roots is required")
    if args.all_root_subsets:
        return _schur_scan(cfg, fps, S0)
    if args.partition:
        lams = [Partition(tuple(int(p) for p in args.partition.split(",")), cfg.k, cfg.n)]
    else:
        lams = partitions_in_box(cfg.k, cfg.n)
    rows = []
    for lam in lams:
        a = schur_eval(lam, S.roots)
        row = {"partition": str(lam), "bialternant": jsonio.complex_pair(a),
               "plucker_ratio": jsonio.complex_pair(schur_via_plucker(lam, S)),
               "nonnegative": is_nonnegative(a)}
        if S is S0:
            row["sine_formula"] = schur_sine_formula(lam, cfg.t.real)
        rows.append(row)
    payload = {"k": cfg.k, "n": cfg.n, "t": jsonio.complex_pair(cfg.t), "root_indices": list(S.indices),
               "values": rows}
    flat = [{**r, "bialternant": _pair_str(complex(*r["bialternant"])),
             "plucker_ratio": _pair_str(complex(*r["plucker_ratio"]))} for r in rows]
    return Output(payload, flat)


def _schur_scan(cfg: RunConfig, fps, S0) -> Output:
    lams = partitions_in_box(cfg.k, cfg.n)
    rows = []
    for fp in fps:
        vals = [schur_eval(lam, fp.roots.roots) for lam in lams]
        rows.append({"root_indices": " ".join(map(str, fp.roots.indices)),
                     "all_nonnegative": all(is_nonnegative(v) for v in vals),
                     "is_s0": S0 is not None and fp.roots.indices == S0.indices})
    payload = {"k": cfg.k, "n": cfg.n, "t": jsonio.complex_pair(cfg.t), "subsets": rows}
    return Output(payload, rows)


def cmd_critical(args) -> Output:
    cfg = _config(args, args.q)
    search = find_critical_points(cfg.k, cfg.n, cfg.t, extra_starts=args.starts, seed=cfg.seed % 2 ** 32,
                                  tol=cfg.tol)
    points = [{"point": p.to_json(), "gradient": r} for p, r in zip(search.points, search.residuals)]
    payload = {"k": cfg.k, "n": cfg.n, "q": jsonio.complex_pair(cfg.t), "count": len(points),
               "starts": search.starts, "dropped": search.dropped, "points": points}
    status = EXIT_OK
    if args.correspondence:
        rep = verify_correspondence(cfg.k, cfg.n, cfg.t, args.starts, cfg.seed % 2 ** 32, cfg.tol)
        payload["correspondence"] = rep.to_json()
        status = EXIT_OK if rep.passed else EXIT_FAIL
    rows = [{"index": i, **{key: _pair_str(complex(*v)) for key, v in p["point"].items()},
             "gradient": p["gradient"]} for i, p in enumerate(points)]
    return Output(payload, rows, status)


def cmd_twist(args) -> Output:
    tol = _tol(args)
    A = jsonio.matrix_from_json(jsonio.load_json(args.input))
    B = left_twist(A, tol) if args.left else right_twist(A, tol)
    rows = [{"row": i + 1, **{f"c{j + 1}": _pair_str(z) for j, z in enumerate(r)}} for i, r in enumerate(B)]
    return Output(jsonio.matrix_to_json(B), rows)


def cmd_twist_fixed(args) -> Output:
    cfg = _config(args, args.t)
    cands = twist_fixed_candidates(cfg.k, cfg.n, cfg.t, cfg.tol)
    pts = [{"root_indices": list(fp.roots.indices), "roots": fp.roots.to_json(), "tnn": is_tnn(fp.point, cfg.tol)}
           for fp in cands]
    payload = {"k": cfg.k, "n": cfg.n, "t": jsonio.complex_pair(cfg.t), "count": len(pts), "candidates": pts}
    return Output(payload, [{"root_indices": " ".join(map(str, p["root_indices"])), "tnn": p["tnn"]} for p in pts])


def cmd_promote(args) -> Output:
    T, file_n = jsonio.tableau_from_json(jsonio.load_json(args.tableau))
    n = args.n if args.n is not None else file_n
    if n is None:
        raise GrcycError("n must be given with --n or in the tableau file")
    if args.orbit:
        orbit = promotion_orbit(T, n)
        payload = {"n": n, "order": len(orbit), "orbit": [S.to_json()["rows"] for S in orbit]}
        rows = [{"step": i, "tableau": str(S)} for i, S in enumerate(orbit)]
    else:
        S = promotion(T, n)
        payload = S.to_json(n)
        rows = [{"step": 1, "tableau": str(S), "order": promotion_order(T, n, check=False)}]
    return Output(payload, rows)


def cmd_rowmotion(args) -> Output:
    cfg = _config(args, args.q)
    if args.fixed_check:
        rep = rowmotion_fixed_check(cfg.k, cfg.n, cfg.t, starts=args.starts, seed=cfg.seed % 2 ** 32)
        return Output(rep.to_json(), [rep.to_json() | {"q": _pair_str(cfg.t)}],
                      EXIT_OK if rep.passed else EXIT_FAIL)
    if not args.input:
        raise GrcycError("rowmotion needs --input labels.json or --fixed-check")
    x = jsonio.labels_from_json(jsonio.load_json(args.input), cfg.k, cfg.n, cfg.t)
    y = birational_rowmotion(x, cfg.tol)
    rows = [{"element": key, "re": v[0], "im": v[1]} for key, v in y.to_json()["labels"].items()]
    return Output(y.to_json(), rows)


def cmd_flow(args) -> Output:
    cfg = _config(args)
    if cfg.k == cfg.n:
        raise GrcycError("flow needs k < n")
    if args.input:
        P = jsonio.plucker_from_json(jsonio.load_json(args.input))
        if (P.k, P.n) != (cfg.k, cfg.n):
            raise GrcycError("point shape does not match --k/--n")
    else:
        P = plucker_from_matrix(random_tnn_matrix(cfg.k, cfg.n, np.random.default_rng(cfg.seed)))
    horizon = args.s if args.s is not None else flow_horizon(cfg.k, cfg.n)
    times = np.linspace(0.0, horizon, args.steps + 1)
    V0 = v0_point(cfg.k, cfg.n)
    rows = [{"s": float(s), "distance": projective_distance(flow(P, s), V0)} for s in times]
    payload = {"k": cfg.k, "n": cfg.n, "trajectory": rows, "final": flow(P, horizon).to_json()}
    return Output(payload, rows)


def cmd_minmax(args) -> Output:
    _config(args)
    rep = minmax_plucker(args.k, args.n)
    rows = [{"value": o["value"], "size": o["size"], "subsets": " ".join(o["subsets"])} for o in rep["orbits"]]
    return Output(rep, rows)


def cmd_verify_all(args) -> Output:
    cfg = _config(args, args.t)
    status, report = run_verify_all(cfg)
    rows = [{"check": c["name"], "passed": c["passed"]} for c in report["checks"]]
    return Output(report, rows, status)


def _positive_int(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS, help="absolute/relative tolerance")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="RNG seed (fallback: GRCYC_SEED)")
    common.add_argument("--output", choices=("json", "csv"), default=argparse.SUPPRESS)
    common.add_argument("--json", dest="output", action="store_const", const="json", default=argparse.SUPPRESS,
                        help="same as --output json")

    parser = argparse.ArgumentParser(prog="grcyc", parents=[common],
                                     description="Cyclic-shift fixed points on Grassmannians and related checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_, kn=True):
        p = sub.add_parser(name, parents=[common], help=help_)
        if kn:
            p.add_argument("--k", type=_positive_int, required=True)
            p.add_argument("--n", type=_positive_int, required=True)
        p.set_defaults(func=func)
        return p

    p = add("v0", cmd_v0, "the totally positive fixed point V_0")
    p.add_argument("--theta", type=float, default=0.0)
    p.add_argument("--matrix", action="store_true", help="include the representing matrix")
    p.add_argument("--pluckers", action="store_true", help="include Plücker coordinates (default)")
    p = add("fixed-points", cmd_fixed_points, "all fixed points of sigma_t")
    p.add_argument("--t", default="1")
    p.add_argument("--plucker", action="store_true", help="include Plücker vectors")
    p = add("tnn", cmd_tnn, "total nonnegativity of a point file", kn=False)
    p.add_argument("--input", required=True)
    p.add_argument("--samples", type=_positive_int, default=1000)
    p = add("schur", cmd_schur, "Schur evaluations at a root set")
    p.add_argument("--t", default="1")
    p.add_argument("--roots", help="0-based root indices, e.g. 0,3")
    p.add_argument("--lambda", "--partition", dest="partition", help="parts, e.g. 2,1")
    p.add_argument("--all-root-subsets", action="store_true", help="positivity of every root subset")
    p = add("critical", cmd_critical, "critical points of L_q")
    p.add_argument("--q", default="1")
    p.add_argument("--starts", type=int, default=20)
    p.add_argument("--correspondence", action="store_true")
    p = add("twist", cmd_twist, "right (or left) twist of a matrix file", kn=False)
    p.add_argument("--input", required=True)
    p.add_argument("--left", action="store_true")
    p = add("twist-fixed", cmd_twist_fixed, "inversion-closed twist-fixed points")
    p.add_argument("--t", default="1")
    p = add("promote", cmd_promote, "promotion of a rectangular tableau", kn=False)
    p.add_argument("--tableau", required=True)
    p.add_argument("--n", type=_positive_int)
    p.add_argument("--orbit", action="store_true")
    p = add("rowmotion", cmd_rowmotion, "birational rowmotion")
    p.add_argument("--q", default="1")
    p.add_argument("--input")
    p.add_argument("--fixed-check", action="store_true")
    p.add_argument("--starts", type=int, default=50)
    p = add("flow", cmd_flow, "distance to V_0 along exp(s sigma)")
    p.add_argument("--input")
    p.add_argument("--time", "--s", dest="s", type=float, help="final flow time")
    p.add_argument("--steps", type=_positive_int, default=8)
    add("minmax", cmd_minmax, "extreme Plücker coordinates of V_0")
    p = add("verify-all", cmd_verify_all, "run every cross-check")
    p.add_argument("--t", default="1")
    return parser


def _emit(out: Output, fmt: str, stream) -> None:
    if fmt == "csv" and out.rows is not None:
        buf = io.StringIO()
        fields: list[str] = []
        for r in out.rows:
            fields.extend(key for key in r if key not in fields)
        writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        for r in out.rows:
            writer.writerow({key: (v if not isinstance(v, (list, dict)) else jsonio.dumps(v)) for key, v in r.items()})
        stream.write(buf.getvalue())
    else:
        stream.write(jsonio.dumps(jsonio.round_floats(out.payload, 15)) + "\n")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_USAGE
    for name, default in (("tol", None), ("seed", None), ("output", "json")):
        if not hasattr(args, name):
            setattr(args, name, default)
    try:
        out = args.func(args)
    except (GrcycError, KeyError) as exc:
        print(f"grcyc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(out, args.output, sys.stdout)
    return out.status


if __name__ == "__main__":
    sys.exit(main())
