"""Command-line front end: seeded batch runs with structured output.

Subcommands: spin | born | chsh | medical | measure | inference.
JSON is the canonical machine format; CSV is used only for trial logs.
Identical (argv, seed) pairs produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import born, experiments, hilbert, inference, measurement, spin, variables
from .errors import DomainError


def _parse_triple(text):
    parts = [float(x) for x in text.split(",")]
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected three comma-separated numbers")
    return spin.unit(parts)


def _parse_angles(text):
    parts = [float(x) for x in text.split(",")]
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("expected a,a',b,b' in degrees")
    return parts


def _emit(report: dict, fmt: str, out=None):
    if fmt == "json":
        text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    elif fmt == "plain":
        lines = []

        def walk(prefix, obj):
            if isinstance(obj, dict):
                for k in sorted(obj):
                    walk(f"{prefix}{k}.", obj[k])
            elif isinstance(obj, (list, tuple)):
                lines.append(f"{prefix[:-1]}: {' '.join(repr(x) for x in obj)}")
            else:
                lines.append(f"{prefix[:-1]}: {obj!r}")

        walk("", report)
        text = "\n".join(lines) + "\n"
    else:  # csv is reserved for trial logs
        raise DomainError(f"format {fmt!r} not available for this report")
    sys.stdout.write(text)
    if out:
        with open(out, "w") as fh:
            fh.write(text)


def _apply_config(args):
    if getattr(args, "config", None):
        with open(args.config) as fh:
            cfg = json.load(fh)
        for key, value in cfg.items():
            key = key.replace("-", "_")
            if getattr(args, key, None) is None:
                setattr(args, key, value)
    return args


def _require_seed(args, parser):
    if args.seed is None:
        parser.error("--seed is mandatory for stochastic runs")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="avq")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=["json", "csv", "plain"], default="json")
        sp.add_argument("--out", default=None)
        sp.add_argument("--seed", type=int, default=None)
        sp.add_argument("--config", default=None)

    sp = sub.add_parser("spin", help="spin algebra checks and spectra")
    sp.add_argument("--r", required=True, help="spin, e.g. 1, 1/2, 3/2")
    sp.add_argument("--check", action="store_true",
                    help="commutation/Casimir/rotation-sign residuals")
    sp.add_argument("--resolution-order", type=int, default=None,
                    help="sphere quadrature order for the identity resolution")
    sp.add_argument("--component", type=_parse_triple, default=None,
                    help="direction x,y,z for a component spectrum")
    common(sp)

    sp = sub.add_parser("born", help="transition probabilities")
    sp.add_argument("--a", type=_parse_triple, default=None)
    sp.add_argument("--b", type=_parse_triple, default=None)
    sp.add_argument("--sign", type=int, choices=[1, -1], default=1)
    sp.add_argument("--crossval", type=int, default=None,
                    help="closed form vs abstract route on N random direction pairs")
    common(sp)

    sp = sub.add_parser("chsh", help="singlet trial simulation and bounds")
    sp.add_argument("--angles", type=_parse_angles, default=None,
                    help="a,a',b,b' in degrees")
    sp.add_argument("--n", type=int, default=None, help="number of trials")
    sp.add_argument("--classical-max", action="store_true")
    sp.add_argument("--quantum-max", action="store_true")
    sp.add_argument("--resolution", type=float, default=1.0,
                    help="grid resolution in degrees for --quantum-max")
    common(sp)

    sp = sub.add_parser("medical", help="four-treatment comparison")
    sp.add_argument("--n", type=int, default=None, help="Monte Carlo samples")
    common(sp)

    sp = sub.add_parser("measure", help="POVM / Kraus checks")
    sp.add_argument("--model", default=None, help="statistical model JSON file")
    sp.add_argument("--variable", default=None, help="accessible variable JSON file")
    sp.add_argument("--x", default=None, help="observed sample point label")
    sp.add_argument("--state", default=None, help="density operator JSON file")
    sp.add_argument("--random-check", type=int, default=None,
                    help="POVM/Kraus/Bayes consistency on N random cases")
    common(sp)

    sp = sub.add_parser("inference", help="classical inference experiments")
    sp.add_argument("--op", choices=["prop2"], required=True)
    sp.add_argument("--c1", type=float, default=None)
    sp.add_argument("--c2", type=float, default=None)
    sp.add_argument("--n", type=int, default=None)
    common(sp)

    return p


def _cmd_spin(args, parser):
    two_r = spin.parse_spin(args.r)
    report = {"two_r": two_r, "dim": two_r + 1}
    ops = spin.spin_operators(two_r)
    if args.check:
        comm0p = ops.az @ ops.plus - ops.plus @ ops.az - ops.plus
        comm0m = ops.az @ ops.minus - ops.minus @ ops.az + ops.minus
        commpm = (ops.minus @ ops.plus - ops.plus @ ops.minus
                  + 2.0 * ops.az)
        r = ops.r
        casimir = ops.casimir() - r * (r + 1) * hilbert.identity(ops.dim)
        full_turn = spin.rotation(two_r, [0.0, 0.0, 1.0], 2.0 * np.pi)
        expected = -1.0 if two_r % 2 else 1.0
        report["check"] = {
            "commutation_residual": float(max(np.max(np.abs(comm0p)),
                                              np.max(np.abs(comm0m)),
                                              np.max(np.abs(commpm)))),
            "casimir_residual": float(np.max(np.abs(casimir))),
            "full_turn_sign": expected,
            "full_turn_residual": float(np.max(np.abs(
                full_turn - expected * hilbert.identity(ops.dim)))),
        }
    if args.resolution_order is not None:
        report["resolution_deviation"] = spin.resolution_deviation(
            two_r, args.resolution_order)
    if args.component is not None:
        comp = spin.component_operator(two_r, args.component)
        report["component_eigenvalues"] = np.linalg.eigvalsh(comp).tolist()
    _emit(report, args.format, args.out)
    return 0


def _cmd_born(args, parser):
    report = {}
    if args.crossval is not None:
        _require_seed(args, parser)
        rng = np.random.default_rng(args.seed)
        worst = 0.0
        for _ in range(args.crossval):
            a = spin.unit(rng.normal(size=3))
            b = spin.unit(rng.normal(size=3))
            closed = born.spin_half_transition(a, b, +1)
            va = variables.AccessibleVariable.from_operator(
                "a", spin.component_operator(1, a))
            vb = variables.AccessibleVariable.from_operator(
                "b", spin.component_operator(1, b))
            abstract = born.transition_probability(va, 1, vb, 1)
            worst = max(worst, abs(closed - abstract))
        report["crossval"] = {"pairs": args.crossval, "max_deviation": worst}
    if args.a is not None and args.b is not None:
        closed = born.spin_half_transition(args.a, args.b, args.sign)
        report["transition"] = {"sign": args.sign, "closed_form": closed,
                                "dot": float(np.dot(args.a, args.b))}
    if not report:
        parser.error("born needs --a/--b or --crossval")
    _emit(report, args.format, args.out)
    return 0


def _cmd_chsh(args, parser):
    report = {}
    if args.classical_max:
        report["classical_max"] = experiments.chsh_classical_max()
    if args.quantum_max:
        angles, s = experiments.chsh_quantum_max(args.resolution)
        report["quantum_max"] = {"angles_deg": list(angles), "s": s,
                                 "abs_s": abs(s)}
    if args.angles is not None:
        if args.n is None:
            parser.error("--n is required for a simulation run")
        _require_seed(args, parser)
        a, ap, b, bp = (np.deg2rad(x) for x in args.angles)
        cfg = experiments.ChshConfig(a, ap, b, bp, args.n, args.seed)
        run = experiments.chsh_simulate(cfg)
        if args.out and args.format == "csv":
            run.write_csv(args.out)
        corr = {f"{la},{lb}": {"estimate": est, "count": cnt}
                for (la, lb), (est, cnt) in run.correlations.items()}
        report["simulation"] = {
            "angles_deg": args.angles, "n_trials": args.n, "seed": args.seed,
            "correlations": corr, "s": run.s_statistic,
            "exact_s": experiments.chsh_exact_s(cfg),
        }
    if not report:
        parser.error("chsh needs --angles, --classical-max or --quantum-max")
    out = None if args.format == "csv" else args.out
    _emit(report, "json" if args.format == "csv" else args.format, out)
    return 0


def _cmd_medical(args, parser):
    if args.n is None:
        parser.error("--n is required")
    _require_seed(args, parser)
    result = experiments.medical_report(args.n, args.seed)
    _emit(result.to_dict(), args.format, args.out)
    return 0


def _cmd_measure(args, parser):
    report = {}
    if args.random_check is not None:
        _require_seed(args, parser)
        rng = np.random.default_rng(args.seed)
        povm_worst = kraus_worst = bayes_worst = 0.0
        for _ in range(args.random_check):
            d = int(rng.integers(2, 6))
            nx = int(rng.integers(2, 5))
            lik = rng.random((nx, d))
            lik /= lik.sum(axis=0, keepdims=True)
            model = measurement.StatisticalModel(
                np.arange(d, dtype=float), tuple(range(nx)), lik)
            var = variables.AccessibleVariable(
                "v", np.arange(d, dtype=float),
                tuple(np.outer(e, e).astype(complex) for e in np.eye(d)))
            povm = measurement.povm_of_model(model, var)
            total = sum(povm.effects)
            povm_worst = max(povm_worst, float(np.max(np.abs(
                total - hilbert.identity(d)))))
            amp = np.sqrt(lik)
            inst = measurement.KrausInstrument(
                tuple(np.diag(amp[k]).astype(complex) for k in range(nx)))
            prior = rng.random(d)
            prior /= prior.sum()
            sigma = np.diag(prior).astype(complex)
            probs = measurement.branch_probabilities(inst, sigma)
            kraus_worst = max(kraus_worst, abs(float(probs.sum()) - 1.0))
            j = int(np.argmax(probs))
            kp, bp = measurement.diagonal_kraus_vs_bayes(inst, prior, j)
            bayes_worst = max(bayes_worst, float(np.max(np.abs(kp - bp))))
        report["random_check"] = {
            "cases": args.random_check,
            "povm_completeness_residual": povm_worst,
            "kraus_probability_residual": kraus_worst,
            "kraus_vs_bayes_residual": bayes_worst,
        }
    if args.model and args.variable:
        with open(args.model) as fh:
            model = measurement.StatisticalModel.from_dict(json.load(fh))
        with open(args.variable) as fh:
            var = variables.variable_from_dict(json.load(fh))
        povm = measurement.povm_of_model(model, var)
        entry = {"effects": [hilbert.operator_to_dict(e) for e in povm.effects]}
        if args.state:
            with open(args.state) as fh:
                sigma = hilbert.operator_from_dict(json.load(fh))
            entry["data_probabilities"] = {
                str(x): measurement.data_probability(sigma, model, var, x)
                for x in model.sample_points}
        if args.x is not None:
            label = type(model.sample_points[0])(args.x)
            entry["likelihood_effect"] = hilbert.operator_to_dict(
                measurement.likelihood_effect(model, var, label))
        report["povm"] = entry
    if not report:
        parser.error("measure needs --random-check or --model/--variable")
    _emit(report, args.format, args.out)
    return 0


def _cmd_inference(args, parser):
    if args.op == "prop2":
        if args.c1 is None or args.c2 is None or args.n is None:
            parser.error("prop2 needs --c1, --c2 and --n")
        _require_seed(args, parser)
        spec = inference.SimulationSpec(args.n, args.seed, theta=0.0)
        res = inference.prop2_experiment(args.c1, args.c2, spec)
        _emit({"prop2": {"c1": args.c1, "c2": args.c2, "n": args.n,
                         "credibility": res.credibility,
                         "coverage": res.coverage,
                         "analytic": res.analytic,
                         "se_credibility": res.se_credibility,
                         "se_coverage": res.se_coverage}},
              args.format, args.out)
    return 0


_COMMANDS = {"spin": _cmd_spin, "born": _cmd_born, "chsh": _cmd_chsh,
             "medical": _cmd_medical, "measure": _cmd_measure,
             "inference": _cmd_inference}


def main(argv=None) -> int:
    parser = build_parser()
    args = _apply_config(parser.parse_args(argv))
    try:
        return _COMMANDS[args.command](args, parser)
    except (DomainError, ValueError) as exc:
        sys.stderr.write(f"{type(exc).__name__}: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
