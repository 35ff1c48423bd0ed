"""Command line front end.

Exit status is 0 on success, 1 on domain errors (reported as
``error: <Code>: <message>``) and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path

import numpy as np

from . import harness
from .bogoliubov import diagonalize, enumerate_by_quanta, enumerate_levels, quadratic_form, spectrum_to_json
from .errors import BogolabError, ModelFormatError
from .fock.eigen import eig_lowest
from .fock.operators import build_hn
from .hartree import (
    ContinuousFamilySuspected,
    find_minimizers,
    solve_stationary,
    state_to_json,
)
from .model import (
    build_dimer,
    build_random,
    build_ring,
    load_problem,
    problem_from_json,
    symmetry_defects,
)

__all__ = ["main", "run", "parse_model_spec"]


class UsageError(Exception):
    pass


# ------------------------------------------------------------------ parsing


def _floats(text, sep=";"):
    return [float(x) for x in text.split(sep) if x.strip()]


def parse_model_spec(spec: str):
    """Build a problem from ``name:key=val,...`` or load it from a file.

    Builders are ``dimer:t=..,U=..``, ``ring:L=..,t=..,g=..`` (contact
    coupling) or ``ring:L=..,t=..,vhat=v0;v1;...`` and
    ``random:seed=..,d=..,strength=..``.
    """
    name, _, rest = spec.partition(":")
    if name in ("dimer", "ring", "random") and not Path(spec).exists():
        params = {}
        for item in filter(None, rest.split(",")):
            key, eq, val = item.partition("=")
            if not eq:
                raise UsageError(f"malformed model parameter {item!r}")
            params[key.strip()] = val.strip()
        try:
            if name == "dimer":
                _only(params, {"t", "U"})
                return build_dimer(float(params.get("t", 1.0)), float(params.get("U", 1.0)))
            if name == "ring":
                _only(params, {"L", "t", "g", "vhat"})
                L = int(params.get("L", 3))
                if "vhat" in params:
                    vhat = _floats(params["vhat"])
                else:
                    vhat = [float(params.get("g", 1.0))] * L
                return build_ring(L, float(params.get("t", 1.0)), vhat)
            _only(params, {"seed", "d", "strength"})
            return build_random(
                int(params.get("seed", 0)), int(params.get("d", 3)), float(params.get("strength", 0.1))
            )
        except ValueError as exc:
            raise UsageError(f"bad model parameters in {spec!r}: {exc}") from exc
    path = Path(spec)
    if not path.exists():
        raise UsageError(f"model {spec!r} is neither a builder spec nor an existing file")
    return load_problem(path)


def _only(params, allowed):
    extra = set(params) - allowed
    if extra:
        raise UsageError(f"unknown model parameters {sorted(extra)}; allowed {sorted(allowed)}")


def _int_list(text):
    try:
        vals = [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"expected a comma separated integer list, got {text!r}") from exc
    if not vals or any(b <= a for a, b in zip(vals, vals[1:])):
        raise UsageError(f"N list must be non-empty and strictly increasing, got {text!r}")
    return vals


def _vector(text):
    try:
        return np.array([complex(x.replace(" ", "")) for x in text.split(",")])
    except ValueError as exc:
        raise UsageError(f"bad vector {text!r}") from exc


def _probes(text):
    out = []
    for item in text.split(";"):
        try:
            out.append(tuple(int(x) for x in item.split(",")))
        except ValueError as exc:
            raise UsageError(f"bad probe {item!r}") from exc
    return out


# ------------------------------------------------------------------ helpers


def _state(problem, args):
    if getattr(args, "init", None):
        return solve_stationary(problem, _vector(args.init), tol=args.tol)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ContinuousFamilySuspected)
        mins = find_minimizers(problem, n_starts=args.n_starts, seed=args.seed, tol=args.tol)
    idx = getattr(args, "minimizer", 0)
    if not 0 <= idx < len(mins):
        raise UsageError(f"minimizer index {idx} out of range (found {len(mins)})")
    return mins[idx]


def _emit(text: str, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(doc) -> str:
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def _emit_report(report, args):
    fmt = args.format or ("csv" if args.out and args.out.endswith(".csv") else "json")
    if fmt == "csv" and isinstance(report, harness.ComparisonReport):
        _emit(harness.csv_text(report), args.out)
    else:
        _emit(_dump(harness.report_to_json(report)), args.out)
    if getattr(args, "gnuplot", None) and isinstance(report, harness.ComparisonReport):
        harness.write_gnuplot(report, args.gnuplot, ell=args.gnuplot_level)


# ------------------------------------------------------------------ commands


def cmd_validate(args):
    if not Path(args.path).is_file():
        raise UsageError(f"no such model file {args.path!r}")
    try:
        doc = json.loads(Path(args.path).read_text())
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ModelFormatError(f"{args.path}: not valid JSON ({exc})") from exc
    problem = problem_from_json(doc)
    defects = symmetry_defects(problem.W)
    report = {
        "d": problem.d,
        "shift": problem.shift,
        "valid": True,
        "W": {k: {"magnitude": v[0], "index": list(map(int, v[1]))} for k, v in defects.items()},
    }
    if problem.W2 is not None:
        report["W2"] = {
            k: {"magnitude": v[0], "index": list(map(int, v[1]))}
            for k, v in symmetry_defects(problem.W2).items()
        }
    _emit(_dump(report), args.out)


def cmd_hartree(args):
    problem = parse_model_spec(args.model)
    if args.all:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", ContinuousFamilySuspected)
            mins = find_minimizers(problem, n_starts=args.n_starts, seed=args.seed, tol=args.tol)
        doc = {"minimizers": [state_to_json(s) for s in mins], "J": len(mins)}
        if caught:
            doc["diagnostic"] = "ContinuousFamilySuspected"
    else:
        doc = state_to_json(_state(problem, args))
    _emit(_dump(doc), args.out)


def cmd_bog(args):
    problem = parse_model_spec(args.model)
    state = _state(problem, args)
    spec = diagonalize(quadratic_form(problem, state), tol_degenerate=args.tol_degenerate)
    doc = spectrum_to_json(spec)
    if spec.stability == "stable":
        doc["levels"] = enumerate_levels(spec, args.levels)
    elif spec.stability in ("landau", "degenerate"):
        doc["levels"] = [v for v, _ in enumerate_by_quanta(spec, 2)[: args.levels]]
    doc["state"] = state_to_json(state)
    _emit(_dump(doc), args.out)


def cmd_exact(args):
    problem = parse_model_spec(args.model)
    doc = {}
    for N in _int_list(args.N):
        H = build_hn(problem, N)
        vals, _ = eig_lowest(H, min(args.k, H.dim), seed=args.seed)
        doc[str(N)] = [float(v) for v in vals]
    _emit(_dump({"eigenvalues": doc}), args.out)


def cmd_compare(args):
    problem = parse_model_spec(args.model)
    state = _state(problem, args)
    report = harness.compare_spectra(problem, state, _int_list(args.N), args.lmax, targeting=args.targeting)
    _emit_report(report, args)


def cmd_thm1(args):
    problem = parse_model_spec(args.model)
    state = _state(problem, args)
    scan = harness.thm1_scan(
        problem, state, _int_list(args.N), _probes(args.probes), termwise_N=args.termwise_N
    )
    _emit(_dump(harness.report_to_json(scan)), args.out)


def cmd_thm2(args):
    problem = parse_model_spec(args.model)
    state = _state(problem, args)
    check = harness.thm2_check(problem, state, args.level, args.m, args.N, args.C_cal)
    _emit(_dump(harness.report_to_json(check)), args.out)


def cmd_thm3(args):
    problem = parse_model_spec(args.model)
    state = _state(problem, args)
    checks = harness.thm3_check(problem, state, _int_list(args.N), args.level)
    _emit(_dump(harness.report_to_json(checks)), args.out)


def cmd_multi(args):
    problem = parse_model_spec(args.model)
    res = harness.multi_condensate(
        problem, _int_list(args.N), args.lmax, n_starts=args.n_starts, seed=args.seed
    )
    if args.out and args.out.endswith(".csv"):
        _emit(harness.csv_text(res.report), args.out)
    else:
        _emit(_dump(harness.report_to_json(res)), args.out)


# ------------------------------------------------------------------ parser


def _parser():
    p = argparse.ArgumentParser(prog="bogolab", description="Mean-field boson spectra laboratory.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, model=True, state=False):
        if model:
            sp.add_argument("--model", required=True, help="builder spec name:key=val,... or JSON file")
        sp.add_argument("--out", help="output path (default: stdout)")
        sp.add_argument("--seed", type=int, default=0)
        if state:
            sp.add_argument("--init", help="initial vector a,b,... for a stationary state (else minimizer)")
            sp.add_argument("--minimizer", type=int, default=0, help="index among sorted minimizers")
            sp.add_argument("--n-starts", dest="n_starts", type=int, default=32)
            sp.add_argument("--tol", type=float, default=1e-10)
        return sp

    sp = sub.add_parser("validate", help="validate a model file")
    sp.add_argument("path")
    common(sp, model=False)
    sp.set_defaults(func=cmd_validate)

    sp = common(sub.add_parser("hartree", help="Hartree stationary state or all minimizers"), state=True)
    sp.add_argument("--all", action="store_true")
    sp.set_defaults(func=cmd_hartree)

    sp = common(sub.add_parser("bog", help="Bogoliubov spectrum"), state=True)
    sp.add_argument("--levels", type=int, default=6)
    sp.add_argument("--tol-degenerate", dest="tol_degenerate", type=float, default=1e-9)
    sp.set_defaults(func=cmd_bog)

    sp = common(sub.add_parser("exact", help="lowest N-body eigenvalues"))
    sp.add_argument("--N", required=True)
    sp.add_argument("--k", type=int, default=6)
    sp.set_defaults(func=cmd_exact)

    for name, func, extra, text in (
        ("compare", cmd_compare, "compare", "N-body against Bogoliubov levels"),
        ("thm1", cmd_thm1, "thm1", "decay of the residual on fixed probes"),
        ("thm2", cmd_thm2, "thm2", "N-body levels near a Bogoliubov level"),
        ("thm3", cmd_thm3, "thm3", "localized eigenvectors tested against bH"),
    ):
        sp = common(sub.add_parser(name, help=text), state=True)
        sp.add_argument("--format", choices=["csv", "json"])
        if extra == "compare":
            sp.add_argument("--N", required=True)
            sp.add_argument("--lmax", type=int, default=4)
            sp.add_argument("--targeting", choices=["auto", "lowest", "nearest"], default="auto")
            sp.add_argument("--gnuplot", help="two-column |gap| vs N file")
            sp.add_argument("--gnuplot-level", dest="gnuplot_level", type=int, default=1)
        elif extra == "thm1":
            sp.add_argument("--N", required=True)
            sp.add_argument("--probes", default="0;1;2", help="occupation tuples, e.g. '0;1;2' or '1,0;0,1'")
            sp.add_argument("--termwise-N", dest="termwise_N", type=int)
        elif extra == "thm2":
            sp.add_argument("--N", type=int, required=True)
            sp.add_argument("--level", type=int, default=2)
            sp.add_argument("--m", type=int, default=1)
            sp.add_argument("--C-cal", dest="C_cal", type=float, default=10.0)
        else:
            sp.add_argument("--N", required=True)
            sp.add_argument("--level", type=int, default=2)
        sp.set_defaults(func=func)

    sp = common(sub.add_parser("multi", help="multiple-condensate comparison"))
    sp.add_argument("--N", required=True)
    sp.add_argument("--lmax", type=int, default=4)
    sp.add_argument("--n-starts", dest="n_starts", type=int, default=32)
    sp.set_defaults(func=cmd_multi)
    return p


def run(argv=None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    config = {k: v for k, v in sorted(vars(args).items()) if k != "func"}
    config["threads"] = harness.thread_count()
    print("config: " + json.dumps(config, sort_keys=True), file=sys.stderr)
    try:
        args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except BogolabError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: IOError: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
