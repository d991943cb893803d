"""Batch command line front end.

Subcommands: gen-example1, gen-example2, fit, predict, eval, spectrum.
Results go to stdout, diagnostics to stderr. Exit codes: 0 success,
1 usage error, 2 data or model error. All numeric output uses 17
significant digits, so identical inputs give byte-identical outputs.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import classifier as clf_mod
from . import datasets as ds_mod
from .errors import EmptyClass, EnergydiscError
from .moments import estimate_moments
from .spectral import sym_matrix

_FLOAT_FMT = "%.17g"


class _UsageError(Exception):
    def __init__(self, message: str, parser: argparse.ArgumentParser):
        super().__init__(message)
        self.parser = parser


class _Parser(argparse.ArgumentParser):
    """argparse variant that reports usage problems instead of exiting."""

    def error(self, message):
        raise _UsageError(message, self)


def _vector_arg(text: str) -> np.ndarray:
    try:
        return np.array([float(v) for v in text.split(",")])
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated vector: {text!r}")


def _matrix_arg(text: str) -> np.ndarray:
    try:
        rows = [[float(v) for v in row.split(",")] for row in text.split(";")]
        return np.array(rows)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a ';'-separated matrix: {text!r}")


def _build_parser() -> _Parser:
    parser = _Parser(prog="energydisc", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    g1 = sub.add_parser("gen-example1", help="two Gaussian classes, orthogonal means")
    g1.add_argument("--n", type=int, required=True)
    g1.add_argument("--m1", type=_vector_arg, required=True)
    g1.add_argument("--m2", type=_vector_arg, required=True)
    g1.add_argument("--sigma2", type=float, default=1.0,
                    help="isotropic covariance sigma2*I (default 1.0)")
    g1.add_argument("--cov", type=_matrix_arg, default=None,
                    help="full covariance, rows separated by ';' (overrides --sigma2)")
    g1.add_argument("--per-class", type=int, required=True)
    g1.add_argument("--seed", type=int, required=True)
    g1.add_argument("--out", required=True)

    g2 = sub.add_parser("gen-example2", help="signal in white noise vs white noise")
    g2.add_argument("--n", type=int, required=True)
    g2.add_argument("--a", type=_vector_arg, required=True)
    g2.add_argument("--sigma2", type=float, required=True)
    g2.add_argument("--per-class", type=int, required=True)
    g2.add_argument("--seed", type=int, required=True)
    g2.add_argument("--out", required=True)

    fit_p = sub.add_parser("fit", help="fit a projector-pair model from CSV data")
    fit_p.add_argument("--data", required=True)
    fit_p.add_argument("--mode", choices=[m.value for m in clf_mod.NormalizationMode],
                       default="raw")
    fit_p.add_argument("--p1", type=float, default=0.5,
                       help="prior of class 1 (class 2 gets 1-p1)")
    fit_p.add_argument("--priors-from-data", action="store_true",
                       help="estimate priors from class frequencies instead of --p1")
    fit_p.add_argument("--out", required=True)

    pred = sub.add_parser("predict", help="print one class label per data row")
    pred.add_argument("--model", required=True)
    pred.add_argument("--data", required=True)

    ev = sub.add_parser("eval", help="energy and quality report for a model on data")
    ev.add_argument("--model", required=True)
    ev.add_argument("--data", required=True)

    spectrum_p = sub.add_parser(
        "spectrum", help="print the stored difference-operator spectrum")
    spectrum_p.add_argument("--model", required=True)

    return parser


def _cmd_gen_example1(args) -> int:
    cov = args.cov if args.cov is not None else args.sigma2 * np.eye(args.n)
    data = ds_mod.gen_example1(args.n, args.m1, args.m2, sym_matrix(cov),
                               args.per_class, args.seed)
    ds_mod.save_csv(data, args.out)
    print(f"wrote {len(data)} rows")
    return 0


def _cmd_gen_example2(args) -> int:
    data = ds_mod.gen_example2(args.n, args.a, args.sigma2, args.per_class, args.seed)
    ds_mod.save_csv(data, args.out)
    print(f"wrote {len(data)} rows")
    return 0


def _split_moments(data: ds_mod.LabeledDataset):
    rows1 = data.class_features(1)
    rows2 = data.class_features(2)
    if rows1.shape[0] == 0 or rows2.shape[0] == 0:
        raise EmptyClass("fitting needs samples from both classes")
    return estimate_moments(rows1), estimate_moments(rows2)


def _cmd_fit(args) -> int:
    mode = clf_mod.NormalizationMode(args.mode)
    data = ds_mod.load_csv(args.data)
    if mode is clf_mod.NormalizationMode.UNIT:
        data = ds_mod.unit_normalized(data)
    if args.priors_from_data:
        p1 = float(np.count_nonzero(data.labels == 1)) / len(data)
    else:
        p1 = args.p1
    mom1, mom2 = _split_moments(data)
    model = clf_mod.fit(clf_mod.ClassSpec(p1, mom1), clf_mod.ClassSpec(1.0 - p1, mom2), mode)
    clf_mod.save_model(model, args.out)
    print(f"wrote {args.out}")
    return 0


def _check_unit_rows(model, data: ds_mod.LabeledDataset) -> None:
    """Name the CSV line of any zero row a unit-norm model cannot score."""
    if model.mode is not clf_mod.NormalizationMode.UNIT:
        return
    norms = np.linalg.norm(data.features, axis=1)
    bad = np.nonzero(norms <= 1e-12)[0]
    if bad.size:
        raise EnergydiscError(
            f"zero vector at line {bad[0] + 2} of the data file "
            "cannot be scored by a unit-norm model"
        )


def _cmd_predict(args) -> int:
    model = clf_mod.load_model(args.model)
    data = ds_mod.load_csv(args.data)
    if len(data) == 0:
        return 0
    _check_unit_rows(model, data)
    for label in clf_mod.decide_batch(model, data.features):
        print(int(label))
    return 0


def _cmd_eval(args) -> int:
    model = clf_mod.load_model(args.model)
    data = ds_mod.load_csv(args.data)
    _check_unit_rows(model, data)
    moment_data = data
    if model.mode is clf_mod.NormalizationMode.UNIT:
        moment_data = ds_mod.unit_normalized(data)
    mom1, mom2 = _split_moments(moment_data)
    spec1 = clf_mod.ClassSpec(model.prior1, mom1)
    spec2 = clf_mod.ClassSpec(model.prior2, mom2)
    report = clf_mod.energy_report(model, spec1, spec2)
    region = clf_mod.region_energy(model, data)
    quality = clf_mod.empirical_quality(model, data)
    accuracy = float(np.mean(clf_mod.decide_batch(model, data.features) == data.labels))
    lower_slack = report.enr_correct - region
    upper_slack = report.enr_error - lower_slack
    slack_tol = 1e-9 * max(1.0, abs(report.total))
    ok = lower_slack >= -slack_tol and upper_slack >= -slack_tol
    for key, value in (
        ("n", model.dim),
        ("mode", model.mode.value),
        ("rows", len(data)),
        ("p1", model.prior1),
        ("p2", model.prior2),
        ("enr_correct", report.enr_correct),
        ("enr_error", report.enr_error),
        ("total_energy", report.total),
        ("region_energy", region),
        ("empirical_quality", quality),
        ("accuracy", accuracy),
        ("sandwich_lower_slack", lower_slack),
        ("sandwich_upper_slack", upper_slack),
        ("sandwich_ok", "true" if ok else "false"),
    ):
        if isinstance(value, float):
            value = _FLOAT_FMT % value
        print(f"{key}={value}")
    return 0


def _cmd_spectrum(args) -> int:
    model = clf_mod.load_model(args.model)
    for value in model.spectrum:
        print(_FLOAT_FMT % value)
    return 0


_COMMANDS = {
    "gen-example1": _cmd_gen_example1,
    "gen-example2": _cmd_gen_example2,
    "fit": _cmd_fit,
    "predict": _cmd_predict,
    "eval": _cmd_eval,
    "spectrum": _cmd_spectrum,
}


def run(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(exc.parser.format_usage(), file=sys.stderr, end="")
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except (EnergydiscError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
