"""Command-line front end.

Every run prints a JSON report with the schema

    {"schema": 1, "command": ..., "config": {...}, "results": [...],
     "timing_ms": ...}

where each result row is {"name", "value", "tolerance", "pass"}.  Reports
are byte-identical for identical argv and seed, except for the timing
field.  Exit codes: 0 all checks passed, 1 a numerical check failed,
2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time
import warnings

import numpy as np

from . import psido, verify
from .entropy import (
    continuity_probe,
    entropy as entropy_functional,
    gaussian_family_scan,
    lambda_family_table,
    lieb_bound_check,
)
from .field import (
    Field,
    Grid,
    l2_norm,
    load_csv,
    load_json,
    make_gaussian,
    make_gaussian_mix,
    make_grid,
    make_hermite,
    make_random_bandlimited,
    phase_grid,
    save_csv,
    save_json,
)
from .modspace import ModulationSpaceSpec, modulation_norm
from .orlicz import MixedNormSpec, luxemburg_norm, mixed_norm
from .tfa import stft, stft_projection, twisted_convolution, wigner
from .weights import Weight
from .young import YoungFunction, check_delta2, check_p_steered


# -- spec parsers ------------------------------------------------------------


def parse_young(spec: str) -> YoungFunction:
    """kind[:param], with a leading "conjugate:" applying conjugation:
    power:2, power_scaled:1.5, cap:1, entropy, tan_example, log_example,
    conjugate:entropy."""
    if spec.startswith("conjugate:"):
        return parse_young(spec[len("conjugate:"):]).conjugate()
    head, _, arg = spec.partition(":")
    if head == "power":
        return YoungFunction.power(float(arg or 2.0))
    if head == "power_scaled":
        return YoungFunction.power_scaled(float(arg or 2.0))
    if head == "cap":
        return YoungFunction.cap(float(arg or 1.0))
    if head == "entropy":
        return YoungFunction.entropy()
    if head == "tan_example":
        return YoungFunction.tan_example()
    if head == "log_example":
        return YoungFunction.log_example()
    raise argparse.ArgumentTypeError(f"unknown Young function spec {spec!r}")


def parse_weight(spec: str) -> Weight:
    head, _, arg = spec.partition(":")
    if head in ("one", "constant_one", ""):
        return Weight.constant_one()
    if head == "polynomial":
        return Weight.polynomial(float(arg or 0.0))
    if head == "exponential":
        return Weight.exponential(float(arg or 0.0))
    raise argparse.ArgumentTypeError(f"unknown weight spec {spec!r}")


def parse_space(spec: str) -> ModulationSpaceSpec:
    """M2 | Mp:p | MPhi | m:PHI[:PSI] | w:PHI[:PSI] with PHI/PSI Young specs
    (use ';' inside a Young spec slot never — slots split on the first ':'
    pairs, e.g. m:power:3:power:1.5)."""
    if spec == "M2":
        p2 = YoungFunction.power(2)
        return ModulationSpaceSpec(p2, p2)
    if spec.startswith("Mp:"):
        p = YoungFunction.power(float(spec.split(":", 1)[1]))
        return ModulationSpaceSpec(p, p)
    if spec == "MPhi":
        e = YoungFunction.entropy()
        return ModulationSpaceSpec(e, e)
    head, _, rest = spec.partition(":")
    if head in ("m", "w") and rest:
        parts = rest.split(":")
        # greedy parse: one or two Young specs, each "kind" or "kind:param"
        specs = []
        i = 0
        while i < len(parts):
            kind = parts[i]
            takes_arg = kind in ("power", "power_scaled", "cap") or kind == "conjugate"
            if kind == "conjugate":
                # conjugate consumes the rest of one slot: conjugate:kind[:param]
                nxt = parts[i + 1]
                inner_takes = nxt in ("power", "power_scaled", "cap")
                width = 3 if (inner_takes and i + 2 < len(parts)) else 2
                specs.append(":".join(parts[i:i + width]))
                i += width
            elif takes_arg and i + 1 < len(parts):
                specs.append(f"{kind}:{parts[i + 1]}")
                i += 2
            else:
                specs.append(kind)
                i += 1
        phi = parse_young(specs[0])
        psi = parse_young(specs[1]) if len(specs) > 1 else phi
        return ModulationSpaceSpec(phi, psi, flavor="M" if head == "m" else "W")
    raise argparse.ArgumentTypeError(f"unknown space spec {spec!r}")


def make_signal(spec: str, grid: Grid, seed: int) -> Field:
    """gaussian[:lam[:x0[:xi0]]] | hermite:n | mix[:seed[:terms]] |
    noise[:seed] | bandlimited[:seed[:band]] | a file path (.csv/.json)."""
    if spec.endswith(".csv") or spec.endswith(".json"):
        return load_field(spec)
    parts = spec.split(":")
    kind = parts[0]
    if kind == "gaussian":
        lam = float(parts[1]) if len(parts) > 1 else 1.0
        x0 = float(parts[2]) if len(parts) > 2 else None
        xi0 = float(parts[3]) if len(parts) > 3 else None
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return make_gaussian(grid, lam, x0=x0, xi0=xi0)
    if kind == "hermite":
        return make_hermite(grid, int(parts[1]) if len(parts) > 1 else 0)
    if kind == "mix":
        s = int(parts[1]) if len(parts) > 1 else seed
        terms = int(parts[2]) if len(parts) > 2 else 3
        return make_gaussian_mix(grid, s, terms=terms)
    if kind == "noise":
        rng = np.random.default_rng(int(parts[1]) if len(parts) > 1 else seed)
        return Field(grid, rng.standard_normal(grid.shape)
                     + 1j * rng.standard_normal(grid.shape))
    if kind == "bandlimited":
        s = int(parts[1]) if len(parts) > 1 else seed
        band = float(parts[2]) if len(parts) > 2 else 5.0
        return make_random_bandlimited(grid, s, band=band)
    raise argparse.ArgumentTypeError(f"unknown signal spec {spec!r}")


def load_field(path: str) -> Field:
    return load_json(path) if path.endswith(".json") else load_csv(path)


def save_field(f: Field, path: str) -> None:
    if path.endswith(".json"):
        save_json(f, path)
    else:
        save_csv(f, path)


# -- report plumbing -----------------------------------------------------------


def _row(name, value, tolerance=None, ok=True) -> dict:
    return {"name": name, "value": value, "tolerance": tolerance, "pass": bool(ok)}


def _jsonable(x):
    if isinstance(x, (np.floating, np.integer)):
        return float(x)
    if isinstance(x, complex):
        return {"re": x.real, "im": x.imag}
    if isinstance(x, float) and math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _emit(report: dict, fmt: str, out: str | None, data_written: bool) -> None:
    text = json.dumps(_jsonable(report), indent=2)
    print(text)
    if out and not data_written:
        if fmt == "csv":
            with open(out, "w", newline="") as fh:
                w = csv.writer(fh)
                w.writerow(["name", "value", "tolerance", "pass"])
                for r in report["results"]:
                    w.writerow([r["name"], json.dumps(_jsonable(r["value"])),
                                json.dumps(_jsonable(r["tolerance"])), r["pass"]])
        else:
            with open(out, "w") as fh:
                fh.write(text + "\n")


# -- subcommand handlers --------------------------------------------------------


def _grid(args) -> Grid:
    return make_grid(args.N, args.L, args.d)


def cmd_young(args) -> list:
    phi = parse_young(args.kind)
    if args.action == "evaluate":
        return [_row("value", phi.evaluate(args.at))]
    if args.action == "conjugate":
        conj = phi.conjugate()
        rows = [_row("conjugate_value", conj.evaluate(args.at))]
        if args.kind == "log_example":
            s = math.sqrt(0.25 + args.at)
            closed = (args.at + 0.5 - s) * math.exp(-(0.5 + s) / args.at)
            num = rows[0]["value"]
            err = abs(num - closed) / closed if closed > 0 else abs(num - closed)
            rows.append(_row("closed_form_rel_error", err, args.tol or 1e-6,
                             err <= (args.tol or 1e-6)))
        return rows
    if args.action == "inverse":
        return [_row("essential_inverse", phi.essential_inverse(args.at))]
    if args.action == "classify":
        d2g = check_delta2(phi, "global")
        d2l = check_delta2(phi, "local", args.radius)
        steer = check_p_steered(phi, args.steer, args.radius)
        return [
            _row("zero_point", phi.zero_point()),
            _row("infinity_point", phi.infinity_point()),
            _row("sup_slope", phi.sup_slope()),
            _row("doubling_global", d2g["holds"]),
            _row("doubling_local", d2l["holds"]),
            _row(f"steered_at_{args.steer}", steer["steered"]),
        ]
    raise argparse.ArgumentTypeError(f"unknown young action {args.action}")


def cmd_norm(args) -> list:
    g = _grid(args)
    if args.action == "luxemburg":
        f = make_signal(args.input, g, args.seed)
        phi = parse_young(args.young)
        w = parse_weight(args.weight)
        return [_row("luxemburg_norm", luxemburg_norm(f, phi, w))]
    if args.action == "mixed":
        F = load_field(args.input)
        phi, psi = parse_young(args.phi), parse_young(args.psi)
        d = F.grid.dimension // 2
        if args.flavor == "M":
            stages = ((tuple(range(d)), phi), (tuple(range(d, 2 * d)), psi))
        else:
            stages = ((tuple(range(d, 2 * d)), psi), (tuple(range(d)), phi))
        spec = MixedNormSpec(stages, parse_weight(args.weight))
        return [_row("mixed_norm", mixed_norm(F, spec))]
    if args.action == "modulation":
        f = make_signal(args.input, g, args.seed)
        spec = parse_space(args.space)
        return [_row("modulation_norm", modulation_norm(f, spec))]
    raise argparse.ArgumentTypeError(f"unknown norm action {args.action}")


def cmd_transform(args) -> tuple:
    g = _grid(args)
    data_written = False
    if args.action == "stft":
        f = make_signal(args.input, g, args.seed)
        phi = make_signal(args.window, g, args.seed)
        V = stft(f, phi)
        rows = [_row("stft_l2_norm", l2_norm(V)),
                _row("moyal_rel_error",
                     abs(l2_norm(V) - l2_norm(f) * l2_norm(phi))
                     / (l2_norm(f) * l2_norm(phi)), args.tol or 1e-8, True)]
        out_field = V
    elif args.action == "wigner":
        f1 = make_signal(args.input, g, args.seed)
        f2 = make_signal(args.input2 or args.input, g, args.seed)
        W = wigner(f1, f2, args.A)
        rows = [_row("wigner_l2_norm", l2_norm(W)),
                _row("l2_product_rel_error",
                     abs(l2_norm(W) - l2_norm(f1) * l2_norm(f2))
                     / (l2_norm(f1) * l2_norm(f2)), args.tol or 1e-7, True)]
        out_field = W
    elif args.action == "twisted":
        F = load_field(args.input)
        G = load_field(args.input2)
        out_field = twisted_convolution(F, G)
        rows = [_row("twisted_l2_norm", l2_norm(out_field))]
    elif args.action == "project":
        F = load_field(args.input)
        base = make_grid(F.grid.axes[0].n, F.grid.axes[0].half_extent,
                         F.grid.dimension // 2)
        phi = make_signal(args.window, base, args.seed)
        P = stft_projection(F, phi)
        PP = stft_projection(P, phi)
        err = l2_norm(Field(P.grid, PP.values - P.values)) / max(l2_norm(F), 1e-300)
        rows = [_row("projection_l2_norm", l2_norm(P)),
                _row("idempotence_rel_error", err, args.tol or 1e-8,
                     err <= (args.tol or 1e-8))]
        out_field = P
    else:
        raise argparse.ArgumentTypeError(f"unknown transform action {args.action}")
    if args.out:
        save_field(out_field, args.out)
        data_written = True
    return rows, data_written


def cmd_psido(args) -> tuple:
    g = _grid(args)
    pg = phase_grid(g)
    data_written = False
    rows: list
    if args.action == "kernel":
        a = make_signal(args.symbol, pg, args.seed)
        K = psido.kernel(a, args.A)
        rows = [_row("kernel_frobenius_norm",
                     float(np.linalg.norm(K.matrix)) * g.weight)]
        if args.out:
            save_field(Field(Grid((g.axes[0], g.axes[0])), K.matrix), args.out)
            data_written = True
    elif args.action == "apply":
        a = make_signal(args.symbol, pg, args.seed)
        f = make_signal(args.input, g, args.seed)
        out_field = psido.apply(a, args.A, f)
        rows = [_row("output_l2_norm", l2_norm(out_field))]
        if args.out:
            save_field(out_field, args.out)
            data_written = True
    elif args.action == "opnorm":
        a = make_signal(args.symbol, pg, args.seed)
        sym_space = parse_space(args.symbol_space) if args.symbol_space else None
        r = psido.estimate_operator_norm(
            a, args.A, parse_space(args.domain), parse_space(args.codomain),
            trials=args.trials, seed=args.seed, symbol_space=sym_space)
        rows = [_row("operator_norm_lower_bound", r["lower_bound"]),
                _row("method", r["method"])]
        if r["ratio_to_symbol_norm"] is not None:
            rows.append(_row("symbol_norm", r["symbol_norm"]))
            rows.append(_row("ratio_to_symbol_norm", r["ratio_to_symbol_norm"]))
    elif args.action == "calculi":
        a = make_signal(args.symbol, pg, args.seed)
        f = make_signal(args.input, g, args.seed)
        r = psido.calculi_consistency(a, args.A1, args.A2, f)
        tol = args.tol or 1e-6
        rows = [_row("calculi_max_error", r["max_error"], tol,
                     r["max_error"] <= tol)]
    else:
        raise argparse.ArgumentTypeError(f"unknown psido action {args.action}")
    return rows, data_written


def cmd_entropy(args) -> tuple:
    g = _grid(args)
    data_written = False
    if args.action == "eval":
        f = make_signal(args.input, g, args.seed)
        w = make_signal(args.window, g, args.seed) if args.window else None
        r = entropy_functional(f, w)
        rows = [_row("entropy", r.value),
                _row("l2_norm_f", r.l2_norm_f),
                _row("l2_norm_window", r.l2_norm_window)]
    elif args.action == "scan":
        lambdas = [float(t) for t in args.lambdas.split(",")]
        scan = gaussian_family_scan(lambdas)
        rows = [_row(f"entropy_lambda_{r['lam']:g}", r["entropy"])
                for r in scan["rows"]]
        rows.append(_row("constant_fit", scan["constant_fit"]))
        rows.append(_row("constant_spread", scan["constant_spread"],
                         args.tol or 1e-4,
                         scan["constant_spread"] <= (args.tol or 1e-4)))
        if args.out:
            table = lambda_family_table(lambdas)
            with open(args.out, "w", newline="") as fh:
                w = csv.writer(fh)
                w.writerow(["lambda", "entropy", "M2_norm", "MPhi_norm"])
                for row in table:
                    w.writerow([row["lam"], repr(row["entropy"]),
                                repr(row["M2_norm"]), repr(row["MPhi_norm"])])
            data_written = True
    elif args.action == "lieb":
        f = make_signal(args.input, g, args.seed)
        w = make_signal(args.window, g, args.seed) if args.window else None
        r = lieb_bound_check(f, w)
        rows = [_row("entropy", r["entropy"]),
                _row("bound", r["bound"], r["bound"], r["satisfied"])]
    elif args.action == "probe":
        f = make_signal(args.input, g, args.seed)
        direction = make_signal(args.direction, g, args.seed)
        amplitudes = [float(t) for t in args.amplitudes.split(",")]
        space, _, p = args.space.partition(":")
        r = continuity_probe(f, direction, amplitudes, space=space,
                                         p=float(p) if p else 2.0)
        rows = [_row(f"delta_entropy_amp_{row['amplitude']:g}",
                     {"space_norm": row["space_norm"],
                      "delta_entropy": row["delta_entropy"]})
                for row in r["rows"]]
        rows.append(_row("fitted_constant", r["fitted_constant"]))
    else:
        raise argparse.ArgumentTypeError(f"unknown entropy action {args.action}")
    return rows, data_written


_VERIFY_MAP = {
    "moyal": "moyal_isometry",
    "reproducing": "twisted_reproducing",
    "projection": "stft_inversion_projection",
    "rank-one": "rank_one_duality",
    "hypotheses": "hypothesis_checkers",
}


def cmd_verify(args) -> list:
    def rows_from(records) -> list:
        return [_row(r["name"], r["value"], r["tolerance"], r["passed"])
                for r in records]

    if args.action == "all":
        return rows_from(verify.run_all()["results"])
    if args.action == "holder":
        return rows_from([verify.holder_inequality(trials=args.trials,
                                                   seed=args.seed)])
    if args.action == "young-conv":
        return rows_from([verify.young_convolution_inequality(
            trials=args.trials, seed=args.seed)])
    if args.action == "moyal":
        return rows_from([verify.moyal_isometry(
            n=args.N, half_extent=args.L, trials=args.trials, seed=args.seed,
            tol=args.tol or 1e-8)])
    if args.action in _VERIFY_MAP:
        fn = dict(verify.CRITERIA)[_VERIFY_MAP[args.action]]
        return rows_from([fn()])
    raise argparse.ArgumentTypeError(f"unknown verify action {args.action}")


# -- argument tree ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="orlicztf",
        description="Numerical laboratory for Orlicz-normed time-frequency "
                    "analysis: Young-function machinery, modulation norms, "
                    "quadratic representations, quantizations, and the "
                    "spectrogram entropy functional.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--N", type=int, default=256, help="samples per axis")
    common.add_argument("--L", type=float, default=12.0, help="half extent")
    common.add_argument("--d", type=int, default=1, help="dimension")
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--trials", type=int, default=100)
    common.add_argument("--tol", type=float, default=None,
                        help="override the default tolerance")
    common.add_argument("--out", type=str, default=None,
                        help="write the command's data or report here")
    common.add_argument("--format", choices=("json", "csv"), default="json")

    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("young", parents=[common], help="Young-function calculus")
    p.add_argument("action", choices=("evaluate", "conjugate", "inverse", "classify"))
    p.add_argument("--kind", required=True, help="e.g. power:2, entropy, log_example")
    p.add_argument("--at", type=float, default=1.0)
    p.add_argument("--radius", type=float, default=0.5)
    p.add_argument("--steer", type=float, default=2.0)
    p.set_defaults(handler=lambda a: (cmd_young(a), False))

    p = sub.add_parser("norm", parents=[common], help="Orlicz and modulation norms")
    p.add_argument("action", choices=("luxemburg", "mixed", "modulation"))
    p.add_argument("--input", required=True, help="signal spec or field file")
    p.add_argument("--young", default="power:2", help="luxemburg: Young spec")
    p.add_argument("--phi", default="power:2")
    p.add_argument("--psi", default="power:2")
    p.add_argument("--flavor", choices=("M", "W"), default="M")
    p.add_argument("--space", default="M2", help="modulation: space spec")
    p.add_argument("--weight", default="one")
    p.set_defaults(handler=lambda a: (cmd_norm(a), False))

    p = sub.add_parser("transform", parents=[common],
                       help="time-frequency transforms")
    p.add_argument("action", choices=("stft", "wigner", "twisted", "project"))
    p.add_argument("--input", required=True)
    p.add_argument("--input2", default=None)
    p.add_argument("--window", default="gaussian:1")
    p.add_argument("--A", type=float, default=0.5,
                   help="quantization parameter t (A = tI)")
    p.set_defaults(handler=cmd_transform)

    p = sub.add_parser("psido", parents=[common],
                       help="pseudo-differential operators")
    p.add_argument("action", choices=("kernel", "apply", "opnorm", "calculi"))
    p.add_argument("--symbol", required=True, help="signal spec on phase space")
    p.add_argument("--input", default="mix")
    p.add_argument("--A", type=float, default=0.0)
    p.add_argument("--A1", type=float, default=0.0)
    p.add_argument("--A2", type=float, default=0.5)
    p.add_argument("--domain", default="M2")
    p.add_argument("--codomain", default="M2")
    p.add_argument("--symbol-space", dest="symbol_space", default=None)
    p.set_defaults(handler=cmd_psido)

    p = sub.add_parser("entropy", parents=[common],
                       help="spectrogram entropy functional")
    p.add_argument("action", choices=("eval", "scan", "lieb", "probe"))
    p.add_argument("--input", default="gaussian:1")
    p.add_argument("--window", default=None)
    p.add_argument("--lambdas", default="0.25,1,4")
    p.add_argument("--direction", default="hermite:2")
    p.add_argument("--amplitudes", default="0.3,0.1,0.03,0.01")
    p.add_argument("--space", default="MPhi", help="M2 | Mp:p | MPhi")
    p.set_defaults(handler=cmd_entropy)

    p = sub.add_parser("verify", parents=[common],
                       help="named verification batteries")
    p.add_argument("action",
                   choices=("holder", "young-conv", "moyal", "reproducing",
                            "projection", "rank-one", "hypotheses", "all"))
    p.set_defaults(handler=lambda a: (cmd_verify(a), False))

    return top


def main(argv=None) -> int:
    t0 = time.time()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        rows, data_written = args.handler(args)
    except (argparse.ArgumentTypeError, ValueError, FileNotFoundError) as exc:
        parser.exit(2, f"error: {exc}\n")
    config = {
        k: v for k, v in sorted(vars(args).items())
        if k not in ("handler",) and not callable(v)
    }
    report = {
        "schema": 1,
        "command": args.command + " " + getattr(args, "action", ""),
        "config": config,
        "results": rows,
        "timing_ms": round((time.time() - t0) * 1000.0, 3),
    }
    _emit(report, args.format, args.out, data_written)
    return 0 if all(r["pass"] for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
