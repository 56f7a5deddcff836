"""Command-line entry point: ``fejestoth <subcommand> ...``.

Exit codes: 0 success, 1 domain or I/O error (JSON on stderr), 2 usage error.
"""
from __future__ import annotations

import argparse
import math
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__, bounds, constructions, discrepancy, energy, expansions, io
from .core import ACUTE, FejesTothError, PointConfiguration, Potential, RngSpec
from .optimize import AscentParams, ascend


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise UsageError(message)


def _potential(text):
    try:
        return Potential.parse(text)
    except FejesTothError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the primary JSON output here instead of stdout")
    common.add_argument("--threads", type=_positive_int, default=1,
                        help="worker cap; never changes results")

    p = _Parser(prog="fejestoth", description="Acute-angle energies of point sets on spheres.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("energy", parents=[common], help="energy of a configuration or measure file")
    s.add_argument("--input", required=True)
    s.add_argument("--potential", type=_potential, default=ACUTE)

    s = sub.add_parser("construct", help="build named configurations")
    csub = s.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    c = csub.add_parser("onb", parents=[common])
    c.add_argument("--dim", type=int, required=True)
    c.add_argument("--n", type=int, required=True)
    c = csub.add_parser("onb-measure", parents=[common])
    c.add_argument("--dim", type=int, required=True)
    c = csub.add_parser("equispaced", parents=[common])
    c.add_argument("--n", type=int, required=True)
    c = csub.add_parser("compose", parents=[common])
    c.add_argument("--alpha", type=float, required=True)
    c.add_argument("file_a")
    c.add_argument("file_b")

    def ascent_flags(s):
        s.add_argument("--dim", type=int, required=True)
        s.add_argument("--n", type=int, required=True)
        s.add_argument("--restarts", type=_positive_int, default=8)
        s.add_argument("--seed", type=int, default=0)
        s.add_argument("--eps", type=float, default=1e-3)
        s.add_argument("--max-iters", type=int, default=100_000)

    s = sub.add_parser("optimize", parents=[common], help="multi-restart projected ascent")
    ascent_flags(s)
    s.add_argument("--potential", type=_potential, default=ACUTE)

    s = sub.add_parser("expand", parents=[common], help="orthogonal expansion coefficients")
    s.add_argument("--basis", default="chebyshev", help="chebyshev|fourier|gegenbauer:d")
    s.add_argument("--potential", type=_potential, default=ACUTE)
    s.add_argument("--nmax", type=int, default=expansions.DEFAULT_NMAX)
    s.add_argument("--nodes", type=int, default=expansions.DEFAULT_NODES)
    s.add_argument("--emit-csv", help="write n,coefficient rows here")

    s = sub.add_parser("discrepancy", parents=[common], help="quadrant L2 discrepancy on S^1")
    s.add_argument("--input", required=True)
    s.add_argument("--method", choices=["exact", "closed", "mc"], default="exact")
    s.add_argument("--samples", type=int, default=10**6)
    s.add_argument("--seed", type=int, default=0)

    s = sub.add_parser("bounds", parents=[common], help="theorem bound, majorant margin, critical b")
    s.add_argument("--dim", type=int)
    s.add_argument("--b", type=float, default=bounds.B_THEOREM)
    bsub = s.add_subparsers(dest="bounds_cmd", parser_class=_Parser)
    b = bsub.add_parser("critical-b", parents=[common])
    b.add_argument("--tol", type=float, default=1e-10)
    b = bsub.add_parser("margin", parents=[common])
    b.add_argument("--b", type=float, default=bounds.B_THEOREM)
    b.add_argument("--grid", type=int, default=10**6)
    b.add_argument("--emit-csv", help="write t,margin rows here")
    b.add_argument("--csv-points", type=int, default=1001)
    b = bsub.add_parser("reduce", parents=[common])
    b.add_argument("--m", type=float, required=True, help="maximal energy on S^d")

    s = sub.add_parser("report", parents=[common], help="conjecture status for (dim, n)")
    ascent_flags(s)
    return p


def _load_measure(path):
    return io.measure_from_dict(io.read_json(path))


def cmd_energy(a):
    mu = _load_measure(a.input)
    return {
        "energy": energy.measure_energy(mu, a.potential),
        "n": mu.n,
        "dim": mu.dim,
        "potential": str(a.potential),
    }


def cmd_construct(a):
    if a.kind == "onb":
        return io.config_to_dict(constructions.onb_configuration(a.dim, a.n))
    if a.kind == "onb-measure":
        return io.config_to_dict(constructions.onb_measure(a.dim))
    if a.kind == "equispaced":
        return io.config_to_dict(constructions.equispaced_configuration(a.n))
    mu = constructions.compose_measures(_load_measure(a.file_a), _load_measure(a.file_b), a.alpha)
    return io.config_to_dict(mu)


def _params(a):
    return AscentParams(
        max_iters=a.max_iters, smoothing_eps=a.eps, restarts=a.restarts, rng=RngSpec(a.seed)
    )


def cmd_optimize(a):
    res = ascend(a.dim, a.n, a.potential, _params(a), threads=a.threads)
    out = res.to_dict()
    conj = constructions.conjectured_value(a.dim, a.n) if a.potential.kind == "acute" else None
    out["conjectured_value"] = conj
    out["gap"] = None if conj is None else conj - res.best_energy
    return out


def _basis(text):
    name, _, arg = text.partition(":")
    if name in ("chebyshev", "fourier") and not arg:
        return name, None
    if name == "gegenbauer" and arg:
        try:
            return name, int(arg)
        except ValueError:
            pass
    raise UsageError(f"--basis: expected chebyshev|fourier|gegenbauer:d, got {text!r}")


def cmd_expand(a):
    name, d = _basis(a.basis)
    if name == "chebyshev":
        co = expansions.chebyshev_coefficients(a.potential, a.nmax, a.nodes)
    elif name == "fourier":
        co = expansions.fourier_cosine_coefficients(a.potential, a.nmax, a.nodes)
    else:
        co = expansions.gegenbauer_coefficients(a.potential, d, a.nmax, a.nodes)
    if a.emit_csv:
        io.write_text(a.emit_csv, io.csv_rows(["n", "coefficient"], enumerate(co.values)))
    nonpos = bool(np.all(co.values[1:] <= expansions.SIGN_TOL))
    summary = {
        "basis": co.label,
        "potential": str(a.potential),
        "nmax": co.nmax,
        "nodes": co.nodes,
        "coefficients": co.values.tolist(),
        "nonconstant_nonpositive": nonpos,
        "negative_definite_s1": nonpos if name != "gegenbauer" or d == 1 else None,
        "positive_indices": [int(i) for i in np.nonzero(co.values[1:] > expansions.SIGN_TOL)[0] + 1],
    }
    if name == "fourier":
        summary["equispaced_maximizer"] = {
            str(n): expansions.check_equispaced_maximizer(co, n) for n in range(1, 9)
        }
    else:
        summary["equispaced_maximizer"] = None
    return summary


def cmd_discrepancy(a):
    mu = _load_measure(a.input)
    e = energy.measure_energy(mu, ACUTE)
    out = {"method": a.method}
    if a.method == "closed":
        disc = discrepancy.discrepancy_closed_form(mu)
    else:
        if not np.allclose(mu.weights, 1.0 / mu.n, rtol=0, atol=1e-15):
            raise FejesTothError(f"method {a.method!r} needs an unweighted configuration")
        cfg = PointConfiguration(mu.dim, mu.points)
        if a.method == "exact":
            disc = discrepancy.discrepancy_exact_sweep(cfg)
        else:
            disc, err = discrepancy.discrepancy_monte_carlo(cfg, a.samples, RngSpec(a.seed), a.threads)
            out.update(stderr=err, samples=a.samples, seed=a.seed)
    out.update(discrepancy=disc, energy=e, stolarsky_residual=disc - (0.25 - e / math.pi))
    return out


def cmd_bounds(a):
    if a.bounds_cmd == "critical-b":
        b = bounds.critical_b(a.tol)
        return {"critical_b": b, "tolerance": a.tol, "condition_at_b": bounds.condition(b)}
    if a.bounds_cmd == "margin":
        rep = bounds.majorant_margin(a.b, a.grid).to_dict()
        if a.emit_csv:
            t, m = bounds.margin_curve(a.b, a.csv_points)
            io.write_text(a.emit_csv, io.csv_rows(["t", "margin"], zip(t, m)))
        return rep
    if a.bounds_cmd == "reduce":
        return {"m_d": a.m, "bound_lower_dim": bounds.dimension_reduction_bound(a.m)}
    if a.dim is None:
        raise UsageError("bounds: --dim is required without a sub-command")
    d = a.dim
    return {
        "dim": d,
        "b": a.b,
        "theorem_bound": bounds.theorem_bound(d, a.b),
        "theorem_applies": bounds.theorem_applies(d),
        "conjectured_max": math.pi / 2 * d / (d + 1),
        "b_condition": bounds.condition(a.b) if a.b >= 1 else None,
    }


def cmd_report(a):
    res = ascend(a.dim, a.n, ACUTE, _params(a), threads=a.threads)
    rep = bounds.gap_report(a.dim, a.n, res.best_energy)
    rep["theorem_bound"] = bounds.theorem_bound(a.dim)
    rep["theorem_applies"] = bounds.theorem_applies(a.dim)
    rep["bound"] = rep["upper_bound"]
    if a.dim == 1:
        disc = discrepancy.discrepancy_exact_sweep(res.best_config)
        resid = disc - (0.25 - res.best_energy / math.pi)
        rep["stolarsky_residual"] = resid
        rep["stolarsky_ok"] = bool(abs(resid) < 1e-9)
        if not rep["stolarsky_ok"]:
            raise FejesTothError(f"Stolarsky residual {resid!r} exceeds 1e-9")
    rep["optimizer"] = {
        "restarts": a.restarts,
        "seed": a.seed,
        "best_index": res.best_index,
        "converged": [r.converged for r in res.per_restart],
        "final_energies": [r.final_energy for r in res.per_restart],
    }
    rep["best_config"] = io.config_to_dict(res.best_config)
    return rep


COMMANDS = {
    "energy": cmd_energy,
    "construct": cmd_construct,
    "optimize": cmd_optimize,
    "expand": cmd_expand,
    "discrepancy": cmd_discrepancy,
    "bounds": cmd_bounds,
    "report": cmd_report,
}


def _manifest(argv, args, outputs, duration):
    params = {k: (str(v) if isinstance(v, Potential) else v) for k, v in sorted(vars(args).items())}
    rng = None
    if "seed" in params:
        rng = RngSpec(params["seed"]).to_dict()
    return {
        "tool": "fejestoth",
        "version": __version__,
        "subcommand": args.command,
        "argv": list(argv),
        "parameters": params,
        "rng": rng,
        "duration_seconds": duration,
        "outputs": {str(p): io.sha256(p) for p in outputs},
    }


def _fail(kind, message):
    sys.stderr.write(io.dumps({"error": kind, "message": message}))
    return 1


def run(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError:
        return 2
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    start = time.perf_counter()
    try:
        result = COMMANDS[args.command](args)
        text = io.dumps(result)
        outputs = []
        if getattr(args, "out", None):
            io.write_text(args.out, text)
            outputs.append(Path(args.out))
        else:
            sys.stdout.write(text)
        if getattr(args, "emit_csv", None):
            outputs.append(Path(args.emit_csv))
        if outputs:
            man = _manifest(argv, args, outputs, time.perf_counter() - start)
            io.write_text(str(outputs[0]) + ".manifest.json", io.dumps(man))
    except UsageError as exc:
        sys.stderr.write(f"fejestoth: error: {exc}\n")
        return 2
    except OSError as exc:
        return _fail("io", str(exc))
    except FejesTothError as exc:
        return _fail(exc.kind, str(exc))
    except ValueError as exc:
        return _fail("invalid_input", str(exc))
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
