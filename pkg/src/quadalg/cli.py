"""Command line: run verification suites and print JSON or CSV reports.

Exit status: 0 when every check passes, 1 when any check fails, 2 on a
usage error.
"""

from __future__ import annotations

import argparse
import sys
import time

from .opcalc import GQ, parse_gq
from .report import Check, Report, rows_to_csv

DEFAULT_SEED = 0


def _rational(text: str) -> GQ:
    try:
        return parse_gq(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational literal: {text!r}") from exc


def _nonneg_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative: {text!r}")
    return v


def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from exc
    if not v > 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return v


class UsageError(Exception):
    pass


def _need(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.command} {getattr(args, 'target', '') or ''}: missing {' '.join(missing)}".replace("  ", " "))


# -- subcommands -------------------------------------------------------------------


def _s3_params(args):
    from .s3rep import S3Params

    if args.m is not None:
        _need(args, "a")
        return S3Params.finite(args.m, args.a)
    _need(args, "mu", "a")
    return S3Params.bounded_below(args.mu, args.a)


def cmd_verify(args) -> Report:
    from . import s3models, s3rep

    target = args.target
    if target == "s3-rep":
        p = _s3_params(args)
        rep = s3rep.build_rep(p, N=None if p.kind == "finite" else (args.N or 8))
        return s3rep.verify_matrix_structure(rep)
    if target == "s3-diff":
        p = _s3_params(args)
        report = s3models.verify_model(s3models.model_differential(p))
        if p.kind == "finite":
            report.extend(s3models.homomorphism_check(p))
        return report
    if target in ("s3-difference-finite", "s3-diff-finite"):
        _need(args, "m", "a")
        model = s3models.model_difference_finite(args.m, args.a)
        report = s3models.verify_model(model)
        report.extend(s3models.grid_consistency(args.m, args.a))
        if args.format == "csv":
            report.extra["_csv"] = s3models.tabulate_basis(model, range(args.m + 1), range(args.m + 1))
        return report
    if target in ("s3-difference-infinite", "s3-diff-infinite"):
        _need(args, "mu", "a")
        model = s3models.model_difference_infinite(args.mu, args.a)
        report = s3models.verify_model(model)
        report.extend(s3models.basis_consistency(model, args.N or 6))
        if args.format == "csv":
            ts = [GQ(k, 0) / 2 for k in range(9)]
            report.extra["_csv"] = s3models.tabulate_basis(model, range(4), ts)
        return report
    if target == "ladder":
        p = _s3_params(args)
        rep = s3rep.build_rep(p, N=None if p.kind == "finite" else (args.N or 8))
        return s3rep.ladder_check(rep, factor=args.factor)
    if target == "weight":
        p = _s3_params(args)
        report = Report("S3", "weight", p.as_dict())
        for branch in ("rho1", "rho2"):
            report.extend(s3models.weight_series_check(p, branch, K=args.order), prefix=f"{branch}: ")
            try:
                report.extend(s3models.gauss_norm_identity(p, branch=branch, tol=args.tol), prefix=f"{branch}: ")
            except s3models.ConvergenceError as exc:
                report.add(Check(f"{branch}: int_0^1 rho = Gauss closed form", "skipped", detail=str(exc)))
        return report
    if target in ("s9", "wilson"):
        from .s9 import S9Params, classical_product_check, s9_verify, wilson_form

        _need(args, "alpha", "beta", "gamma", "E")
        p = S9Params(args.alpha, args.beta, args.gamma, args.E)
        if target == "s9":
            report = s9_verify(p)
            report.add(classical_product_check(p))
            return report
        return wilson_form(p).report
    raise UsageError(f"unknown verify target {target!r}")


def cmd_spectrum(args) -> Report:
    from .s3models import chi, l1_spectrum_check
    from .s3rep import S3Params, build_rep

    _need(args, "m", "a")
    p = S3Params.finite(args.m, args.a)
    report = Report("S3", "spectrum", p.as_dict())
    values = []
    for n in range(p.m + 1):
        try:
            value, _ = l1_spectrum_check(p, n)
            report.add(Check.of(f"L1 v_{n} = chi_{n} v_{n}", True))
        except AssertionError as exc:
            value = chi(n, p.a)
            report.add(Check.of(f"L1 v_{n} = chi_{n} v_{n}", False, detail=str(exc)))
        values.append(value)
    trace = build_rep(p).L1.trace()
    report.add(Check.of("sum chi_n = trace C(n,n)", sum(values, GQ(0)) == trace, detail=str(trace)))
    report.extra["chi"] = [str(v) for v in values]
    if args.format == "csv":
        report.extra["_csv"] = rows_to_csv(["n", "chi"], [[n, str(v)] for n, v in enumerate(values)])
    return report


def cmd_orthogonality(args) -> Report:
    from . import s3models

    if args.family == "dual-hahn":
        _need(args, "m", "a")
        pairs = _pairs(args, args.m)
        report = Report("S3", "dual-hahn-orthogonality", {"m": args.m, "a": args.a})
        rows = []
        for n, n2 in pairs:
            total, closed = s3models.dual_hahn_orthogonality(args.m, args.a, n, n2)
            diff = total - closed
            report.add(Check.of(f"<p_{n},p_{n2}>", not diff, str(diff)))
            rows.append([n, n2, str(total), str(closed)])
        report.extra["_csv"] = rows_to_csv(["n", "np", "sum", "closed_form"], rows)
        return report
    _need(args, "mu", "a")
    pairs = _pairs(args, 3)
    report = Report("S3", "continuous-dual-hahn-orthogonality", {"mu": args.mu, "a": args.a})
    rows = []
    for n, n2 in pairs:
        sub = s3models.cdh_orthogonality_numeric(args.mu, args.a, n, n2, rtol=args.tol if args.tol_given else 1e-6)
        report.extend(sub)
        rows.append([n, n2, sub.extra.get("integral", ""), sub.extra.get("closed_form", "")])
    report.extra["_csv"] = rows_to_csv(["n", "np", "integral", "closed_form"], rows)
    return report


def _pairs(args, top: int):
    ns = [args.n] if args.n is not None else range(top + 1)
    nps = [args.np] if args.np is not None else range(top + 1)
    return [(n, n2) for n in ns for n2 in nps]


def cmd_classical(args) -> Report:
    from .classical import classical_model, verify_poisson_numeric

    system = args.system or "S3-I"
    if system == "S9":
        params = {"a1": args.a1, "a2": args.a2, "a3": args.a3, "E": args.E if args.E is not None else GQ(2)}
    else:
        params = {"E": args.E if args.E is not None else GQ(3), "alpha": args.alpha if args.alpha is not None else GQ(1) / 4}
    model = classical_model(system, params)
    return verify_poisson_numeric(model, n_samples=args.samples, tol=args.tol, seed=args.seed)


def cmd_quantize(args) -> Report:
    from .classical import IncompatiblePrescription, classical_model, quantize, verify_quantum
    from .s3rep import energy_lowest_weight

    system = args.system or "S3-III"
    prescription = args.prescription or {"S3-I": "hodograph", "S3-II": "shift", "S3-III": "direct"}.get(system, "direct")
    mu, a = args.mu, args.a
    if system == "S3-II" and mu is None and a is None and args.E is None and args.alpha is None:
        mu, a = GQ(3) / 2, GQ(1) / 4
    E, alpha = args.E, args.alpha
    if alpha is None:
        alpha = GQ(1) / 4 - a * a if a is not None else GQ(1) / 4
    if E is None:
        E = energy_lowest_weight(mu, a) if (mu is not None and a is not None) else GQ(3)
    model = classical_model(system, {"E": E, "alpha": alpha})
    args.mu, args.a = mu, a
    options = {k: getattr(args, k) for k in ("mu", "a", "gamma") if getattr(args, k) is not None}
    try:
        qm = quantize(model, prescription, args.gauge, **options)
    except IncompatiblePrescription as exc:
        raise UsageError(str(exc)) from exc
    return verify_quantum(qm)


def cmd_pdm(args) -> Report:
    from .pdm import PdmParams, eigen_correspondence, parity_basis

    _need(args, "q", "k", "N")
    p = PdmParams(args.q, args.k, args.N)
    lam_s, lam_q, check = eigen_correspondence(p)
    report = Report("PDM", "pdm", {"q": p.q, "k": p.k, "N": p.N, "m": p.m, "a": p.a})
    report.add(check)
    report.extend(parity_basis(p.m, p.a).report, prefix="parity: ")
    report.extra["lambda_S"] = str(lam_s)
    report.extra["lambda_Q"] = str(lam_q)
    report.extra["splits"] = [list(s) for s in p.splits()]
    return report


def cmd_all(args) -> Report:
    """Fixed suite with default parameters."""
    from .classical import SYSTEMS

    report = Report("ALL", "suite", {"seed": args.seed}, seed=args.seed)
    base = dict(m=None, mu=None, a=None, N=None, alpha=None, beta=None, gamma=None, E=None, q=None, k=None,
                n=None, np=None, gauge=None, prescription=None, system=None, format="json", factor=GQ(2),
                order=30, tol=1e-9, tol_given=False, samples=args.samples, seed=args.seed,
                a1=GQ(3) / 16, a2=GQ(3) / 16, a3=GQ(7) / 16)
    runs = [
        ("verify", dict(target="s3-rep", m=4, a=GQ(2) / 7)),
        ("verify", dict(target="s3-diff", m=4, a=GQ(2) / 7)),
        ("verify", dict(target="s3-diff-finite", m=3, a=GQ(1) / 3)),
        ("verify", dict(target="s3-diff-infinite", mu=GQ(3) / 2, a=GQ(1) / 4)),
        ("verify", dict(target="weight", mu=GQ(1), a=GQ(1) / 2)),
        ("verify", dict(target="s9", alpha=GQ(1) / 2, beta=GQ(1) / 3, gamma=GQ(1) / 5, E=GQ(7) / 4)),
        ("verify", dict(target="wilson", alpha=GQ(1) / 2, beta=GQ(1) / 3, gamma=GQ(1) / 5, E=GQ(7) / 4)),
        ("spectrum", dict(m=4, a=GQ(1) / 3)),
        ("orthogonality", dict(family="dual-hahn", m=2, a=GQ(1) / 3)),
        ("orthogonality", dict(family="continuous-dual-hahn", mu=GQ(3) / 2, a=GQ(1) / 4, tol=1e-6)),
        ("quantize", dict(system="S3-III")),
        ("quantize", dict(system="S3-I", gauge="phase")),
        ("quantize", dict(system="S3-II", gauge="unit")),
        ("pdm", dict(q=GQ(1), k=GQ(3) / 2, N=3)),
    ] + [("classical", dict(system=s)) for s in SYSTEMS]
    for name, extra in runs:
        ns = argparse.Namespace(**{**base, "command": name, **extra})
        sub = COMMANDS[name](ns)
        label = extra.get("target") or extra.get("family") or extra.get("system") or name
        report.extend(sub, prefix=f"{name} {label}: ")
    return report


VERIFY_TARGETS = (
    "s3-rep",
    "s3-diff",
    "s3-difference-finite",
    "s3-difference-infinite",
    "s3-diff-finite",
    "s3-diff-infinite",
    "ladder",
    "weight",
    "s9",
    "wilson",
)

COMMANDS = {
    "verify": cmd_verify,
    "spectrum": cmd_spectrum,
    "orthogonality": cmd_orthogonality,
    "classical": cmd_classical,
    "quantize": cmd_quantize,
    "pdm": cmd_pdm,
    "all": cmd_all,
}


# -- parser --------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser) -> None:
    for flag in ("mu", "a", "alpha", "beta", "gamma", "E", "q", "k"):
        p.add_argument(f"--{flag}", type=_rational, default=None)
    p.add_argument("--m", type=_nonneg_int, default=None)
    p.add_argument("--N", type=_nonneg_int, default=None)
    p.add_argument("--n", type=_nonneg_int, default=None)
    p.add_argument("--np", type=_nonneg_int, default=None)
    p.add_argument("--a1", type=_rational, default=GQ(3) / 16)
    p.add_argument("--a2", type=_rational, default=GQ(3) / 16)
    p.add_argument("--a3", type=_rational, default=GQ(7) / 16)
    p.add_argument("--system", "--model", dest="system", default=None, choices=("S3-I", "S3-II", "S3-III", "S9"))
    p.add_argument("--prescription", default=None, choices=("direct", "hodograph", "shift"))
    p.add_argument("--gauge", default=None)
    p.add_argument("--samples", type=_nonneg_int, default=100)
    p.add_argument("--tol", type=_positive_float, default=None)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--order", type=_nonneg_int, default=30, help="series order for weight checks")
    p.add_argument("--factor", type=_rational, default=GQ(2), help="expected [A,A^dag] multiple of F_(n+1)-F_n")
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    p.add_argument("--format", choices=("json", "csv"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quadalg", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    verify = sub.add_parser("verify", help="exact structure checks")
    verify.add_argument(
        "target",
        choices=VERIFY_TARGETS,
    )
    _common(verify)
    _common(sub.add_parser("spectrum", help="L1 eigenfunctions and eigenvalues"))
    orth = sub.add_parser("orthogonality", help="dual Hahn and continuous dual Hahn orthogonality")
    orth.add_argument("family", choices=("dual-hahn", "continuous-dual-hahn"))
    _common(orth)
    _common(sub.add_parser("classical", help="Poisson relations of the classical models"))
    _common(sub.add_parser("quantize", help="quantum operators from a classical model"))
    _common(sub.add_parser("pdm", help="position-dependent-mass correspondence"))
    _common(sub.add_parser("all", help="every suite at default parameters"))
    return parser


def _render(report: Report, fmt: str) -> str:
    csv_text = report.extra.pop("_csv", None)
    if fmt == "csv":
        if csv_text is not None:
            return csv_text
        return rows_to_csv(
            ["name", "status", "residual_norm", "detail"],
            [[c.name, c.status, c.residual_norm, c.detail] for c in report.checks],
        )
    return report.to_json() + "\n"


def _execute(argv):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return None, None, (2 if exc.code else 0), ""
    args.tol_given = args.tol is not None
    if args.tol is None:
        args.tol = 1e-9
    start = time.perf_counter()
    try:
        report = COMMANDS[args.command](args)
    except UsageError as exc:
        return args, None, 2, f"usage error: {exc}\n"
    except (ValueError, ZeroDivisionError) as exc:
        # parameters outside the domain of the requested object
        return args, None, 2, f"invalid parameters: {exc}\n"
    words = [args.command] + [x for x in (getattr(args, "target", None), getattr(args, "family", None)) if x]
    report.command = " ".join(words)
    if args.command in ("classical", "all"):
        report.seed = args.seed
    report.timing = round(time.perf_counter() - start, 6)
    return args, report, (0 if report.passed else 1), _render(report, args.format)


def run_command(argv) -> tuple[Report | None, int]:
    """Run one invocation without printing; a usage error gives ``(None, 2)``."""
    _, report, code, _ = _execute(list(argv))
    return report, code


def main(argv=None) -> int:
    args, report, code, text = _execute(sys.argv[1:] if argv is None else list(argv))
    if report is None:
        if text:
            sys.stderr.write(text)
        return code
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
