"""Command-line front end: degrade, restore, compare, check-operators.

Images travel as 8-bit portable graymaps (P2/P5). Every command writes a
flat key-value manifest next to its primary output recording the resolved
parameters, inputs, outputs, metrics, and wall-clock duration, so a run can
be replayed exactly from its recorded command line.

Exit codes: 0 success, 1 usage error, 2 numerical failure, 3 I/O error.
"""

import argparse
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__, calculus, degrade, functionals, lagged, pnm, shrinkage, spectral
from .grid import PERIODIC, REPLICATIVE, inner_product, zero_mean_project


class UsageError(ValueError):
    """Command-line level misuse detected after parsing."""


class _Parser(argparse.ArgumentParser):
    """argparse variant that exits with code 1 on usage errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _parse_blur(text, shape):
    """Build a normalized blur from 'gauss:<sigma>', 'box:<radius>', or a PSF file.

    A PSF file is a graymap whose center pixel marks the kernel origin; its
    values are renormalized to unit sum.
    """
    if text.startswith("gauss:"):
        sigma = float(text.split(":", 1)[1])
        return degrade.blur_filter(degrade.BlurSpec(kind=degrade.GAUSSIAN,
                                                    sigma=sigma), shape)
    if text.startswith("box:"):
        radius = int(text.split(":", 1)[1])
        return degrade.blur_filter(degrade.BlurSpec(kind=degrade.MOVING_AVERAGE,
                                                    radius=radius), shape)
    kernel = pnm.read_image(text)
    return degrade.blur_filter(degrade.BlurSpec(kind=degrade.CUSTOM_KERNEL,
                                                kernel=kernel), shape)


def _write_manifest(path, entries):
    with open(path, "w", encoding="utf-8") as fh:
        for key, value in entries.items():
            fh.write(f"{key} = {value}\n")


def _manifest_path(anchor):
    return str(anchor) + ".manifest"


def _relative_l2(a, b):
    scale = float(np.sqrt(np.sum(b * b)))
    if scale == 0.0:
        return float(np.sqrt(np.sum(a * a)))
    return float(np.sqrt(np.sum((a - b) ** 2))) / scale


def _final_energy(trace_path):
    with open(trace_path, "r", encoding="ascii") as fh:
        lines = [line.strip() for line in fh if line.strip()]
    if len(lines) < 2:
        raise UsageError(f"trace {trace_path} has no data rows")
    return float(lines[-1].split(",")[1])


def _run_degrade(args, argv):
    started = time.perf_counter()
    f = pnm.read_image(args.input)
    H = _parse_blur(args.blur, f.shape)
    noise = degrade.NoiseSpec(sigma=args.noise_sigma,
                              target_psnr=args.target_psnr, seed=args.seed)
    g = degrade.degrade(f, H, noise)
    blurred = spectral.convolve_freq(f, H)
    out = args.out or str(Path(args.input).with_suffix("")) + ".degraded.pgm"
    pnm.write_image(out, g, binary=not args.ascii)
    noise_db = degrade.psnr(blurred, g)
    entries = {
        "command": "degrade",
        "version": __version__,
        "argv": " ".join(argv),
        "input": args.input,
        "output": out,
        "blur": args.blur,
        "boundary": PERIODIC,
        "noise_sigma": f"{noise.resolved_sigma():.17g}",
        "target_psnr": "" if args.target_psnr is None else f"{args.target_psnr:g}",
        "seed": "" if args.seed is None else str(args.seed),
        "psnr_blurred_vs_degraded_db": f"{noise_db:.4f}",
        "psnr_input_vs_degraded_db": f"{degrade.psnr(f, g):.4f}",
        "blur_condition_number": f"{spectral.condition_number(H):.6g}",
        "duration_s": f"{time.perf_counter() - started:.3f}",
    }
    _write_manifest(_manifest_path(out), entries)
    print(f"wrote {out} (noise level {noise_db:.2f} dB against the blurred image)")
    return 0


def _resolve_lambda(args, g):
    if args.lam != "auto":
        try:
            value = float(args.lam)
        except ValueError:
            raise UsageError(f"--lambda must be a number or 'auto', got {args.lam!r}")
        if value < 0.0:
            raise UsageError("--lambda must be nonnegative")
        return value, {"lambda_source": "explicit"}
    if args.noise_sigma is None:
        raise UsageError("--lambda auto needs --noise-sigma")
    variance = float(args.noise_sigma) ** 2
    value = lagged.estimate_lambda(g, variance)
    return value, {
        "lambda_source": "auto(observed image)",
        "noise_variance": f"{variance:.17g}",
        "beta": f"{variance / value:.17g}",
    }


def _run_restore(args, argv):
    started = time.perf_counter()
    if args.backtracking and args.solver == "mld":
        raise UsageError("--backtracking applies to the tvis solver only")
    spectral.set_workers(args.threads)
    g = pnm.read_image(args.input)
    H = _parse_blur(args.blur, g.shape)
    lam, lam_entries = _resolve_lambda(args, g)
    out = args.out or str(Path(args.input).with_suffix("")) + ".restored.pgm"

    entries = {
        "command": "restore",
        "version": __version__,
        "argv": " ".join(argv),
        "input": args.input,
        "output": out,
        "blur": args.blur,
        "boundary": PERIODIC,
        "solver": args.solver,
        "directions": str(args.directions),
        "lambda": f"{lam:.17g}",
        **lam_entries,
        "renormalize": str(not args.no_renormalize),
        "threads": str(args.threads),
    }

    if args.solver == "tvis":
        config = shrinkage.SolverConfig(
            lam=lam, directions=args.directions, mu=args.mu,
            max_iters=args.iters, rel_tol=args.rel_tol,
            backtracking=args.backtracking,
            renormalize=not args.no_renormalize)
        runner = (shrinkage.iterate_backtracking if args.backtracking
                  else shrinkage.iterate_fixed)
        restored, trace = runner(g, H, config)
        final = trace.final
        bound = shrinkage.step_constant(*g.shape, args.directions, 0.0)
        entries.update({
            "step_constant_bound": f"{bound:.17g}",
            "epsilon_margin": f"{1e-3 * bound:.17g}",
            "mu": f"{args.mu:g}" if args.backtracking else "",
            "max_iters": str(args.iters),
            "rel_tol": f"{args.rel_tol:g}",
            "iterations_run": str(final.iteration),
            "final_energy": f"{final.energy:.17g}",
            "final_rel_change": f"{final.rel_change:.6g}",
        })
        if args.trace:
            trace.write_csv(args.trace)
            entries["trace"] = args.trace
    else:
        config = lagged.LaggedConfig(lam=lam, outer_max_iters=args.iters,
                                     outer_tol=args.rel_tol)
        stages = shrinkage.IterationTrace()

        def on_stage(stage, eps, image, energy_value):
            previous = stages.records[-1] if stages.records else None
            delta = (float("inf") if previous is None
                     else abs(energy_value - previous.energy)
                     / max(abs(previous.energy), 1.0))
            residual = spectral.convolve_freq(image, H) - g
            data = 0.5 * float(np.sum(residual * residual))
            stages.records.append(shrinkage.IterationRecord(
                stage, energy_value, data, energy_value - data, eps, delta))

        restored = lagged.restore(g, H, config, callback=on_stage)
        if not args.no_renormalize:
            from .grid import stretch_to_range
            restored = stretch_to_range(restored)
        entries.update({
            "epsilon_schedule": "halving " +
                f"{config.epsilon_schedule[0]:g}..{config.epsilon_schedule[-1]:g}",
            "inner_tol": f"{config.inner_tol:g}",
            "inner_max_iters": str(config.inner_max_iters),
            "outer_tol": f"{config.outer_tol:g}",
            "outer_max_iters": str(config.outer_max_iters),
            "stages_run": str(len(stages.records)),
            "final_energy": f"{stages.final.energy:.17g}",
        })
        if args.trace:
            # for mld traces the c column holds the stage eps and delta_rel the
            # stage-to-stage energy change
            stages.write_csv(args.trace)
            entries["trace"] = args.trace

    pnm.write_image(out, restored, binary=not args.ascii)
    entries["duration_s"] = f"{time.perf_counter() - started:.3f}"
    _write_manifest(_manifest_path(out), entries)
    print(f"wrote {out} (lambda {lam:.6g}, solver {args.solver})")
    return 0


def _run_compare(args, argv):
    started = time.perf_counter()
    if len(args.restored) < 2:
        raise UsageError("compare needs at least two restored images")
    truth = pnm.read_image(args.truth)
    images = []
    for path in args.restored:
        img = pnm.read_image(path)
        if img.shape != truth.shape:
            raise UsageError(f"{path} shape {img.shape} does not match "
                             f"the reference {truth.shape}")
        images.append((path, img))
    if args.trace and len(args.trace) != len(images):
        raise UsageError("--trace count must match the restored image count")

    lines = [f"reference: {args.truth}"]
    entries = {
        "command": "compare",
        "version": __version__,
        "argv": " ".join(argv),
        "reference": args.truth,
    }
    for i, (path, img) in enumerate(images):
        value = degrade.psnr(truth, img)
        lines.append(f"psnr[{path}] = {value:.4f} dB")
        entries[f"input_{i}"] = path
        entries[f"psnr_{i}_db"] = f"{value:.4f}"
    for i, (path_a, a) in enumerate(images):
        for j, (path_b, b) in enumerate(images):
            if i >= j:
                continue
            rel = _relative_l2(a, b)
            lines.append(f"rel_l2[{path_a} vs {path_b}] = {100.0 * rel:.4f}%")
            entries[f"rel_l2_{i}_{j}"] = f"{rel:.8g}"
    if args.trace:
        for i, trace_path in enumerate(args.trace):
            value = _final_energy(trace_path)
            lines.append(f"final_energy[{images[i][0]}] = {value:.8g}")
            entries[f"final_energy_{i}"] = f"{value:.17g}"

    report = "\n".join(lines)
    print(report)
    anchor = args.out or "compare"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(report + "\n")
        entries["output"] = args.out
    entries["duration_s"] = f"{time.perf_counter() - started:.3f}"
    _write_manifest(_manifest_path(anchor), entries)
    return 0


def _check(label, worst, tol, lines, failures):
    ok = worst <= tol
    lines.append(f"{'PASS' if ok else 'FAIL'} {label}: worst {worst:.3e} "
                 f"(tolerance {tol:.1e})")
    if not ok:
        failures.append(label)


def _run_check_operators(args, argv):
    started = time.perf_counter()
    sizes = []
    for item in args.sizes.split(","):
        n, _, m = item.strip().partition("x")
        sizes.append((int(n), int(m)))
    l_values = [int(v) for v in args.directions.split(",")]
    rng = np.random.default_rng(args.seed)
    div_sign = -1.0 if args.flip_divergence_sign else 1.0

    adj = left = proj = lem2 = 0.0
    for (n, m) in sizes:
        for L in l_values:
            angles = calculus.AngleSet(L)
            for _ in range(args.trials):
                u = zero_mean_project(rng.normal(size=(n, m)))
                v = rng.normal(size=(2 * L, n, m))
                scale = (np.linalg.norm(u) * np.linalg.norm(v))
                mdgu = calculus.directional_gradient(u, angles)
                mddv = div_sign * calculus.directional_divergence(v, angles)
                adj = max(adj, abs(inner_product(mdgu, v) + inner_product(u, mddv)) / scale)
                rec = calculus.integrate(mdgu, angles)
                left = max(left, np.linalg.norm(rec - u) / np.linalg.norm(u))
                pv = calculus.project_onto_gradients(v, angles)
                ppv = calculus.project_onto_gradients(pv, angles)
                vnorm = np.linalg.norm(v)
                proj = max(proj, np.linalg.norm(ppv - pv) / vnorm,
                           abs(inner_product(v - pv, pv)) / vnorm ** 2)
                lap = calculus.divergence(calculus.gradient(u), PERIODIC)
                composed = calculus.directional_divergence(mdgu, angles)
                lem2 = max(lem2, np.linalg.norm(composed - L * lap)
                           / max(np.linalg.norm(L * lap), 1e-300))

    spec1 = spec2 = 0.0
    for (n, m) in sizes:
        for _ in range(args.trials):
            u = rng.normal(size=(n, m))
            for boundary, kind, acc in ((REPLICATIVE, spectral.COSINE, "1"),
                                        (PERIODIC, spectral.FOURIER, "2")):
                lap = calculus.divergence(calculus.gradient(u, boundary), boundary)
                w = spectral.laplacian_symbol(n, m, boundary).values
                lhs = spectral.forward_transform(lap, kind)
                rhs = spectral.forward_transform(u, kind) * w
                err = np.max(np.abs(lhs - rhs)) / max(np.max(np.abs(rhs)), 1e-300)
                if acc == "1":
                    spec1 = max(spec1, err)
                else:
                    spec2 = max(spec2, err)

    lem1 = eq1 = 0.0
    for L in l_values:
        angles = calculus.AngleSet(L)
        a, b = rng.normal(size=(2, 2500))
        bound = functionals.directional_magnitude(a, b, angles)
        lem1 = max(lem1, float(np.max(np.hypot(a, b) - bound)))
        radius = rng.uniform(0.1, 10.0, size=angles.directions)
        aligned = functionals.directional_magnitude(
            radius * angles.cosines, radius * angles.sines, angles)
        eq1 = max(eq1, float(np.max(np.abs(aligned - radius))))

    lines, failures = [], []
    _check("adjointness <mdg u, v> + <u, mdd v> = 0", adj, 1e-10, lines, failures)
    _check("left inverse integrate(mdg f) = f", left, 1e-10, lines, failures)
    _check("projection idempotence and orthogonality", proj, 1e-10, lines, failures)
    _check("composition mdd(mdg u) = L div(grad u)", lem2, 1e-10, lines, failures)
    _check("cosine transform diagonalizes the replicative laplacian", spec1,
           1e-9, lines, failures)
    _check("fourier transform diagonalizes the periodic laplacian", spec2,
           1e-9, lines, failures)
    _check("directional magnitude bounds the euclidean magnitude", lem1,
           1e-12, lines, failures)
    _check("directional magnitude is tight on aligned rays", eq1, 1e-12,
           lines, failures)

    report = "\n".join(lines)
    print(report)
    anchor = args.out or "check-operators"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(report + "\n")
    entries = {
        "command": "check-operators",
        "version": __version__,
        "argv": " ".join(argv),
        "sizes": args.sizes,
        "directions": args.directions,
        "seed": str(args.seed),
        "trials": str(args.trials),
        "failures": str(len(failures)),
        "duration_s": f"{time.perf_counter() - started:.3f}",
    }
    _write_manifest(_manifest_path(anchor), entries)
    return 2 if failures else 0


def build_parser():
    parser = _Parser(prog="tvdeconv",
                     description="Total-variation image deconvolution tools")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("degrade", help="blur an image and add seeded noise")
    p.add_argument("input", help="source graymap (P2/P5)")
    p.add_argument("--blur", required=True,
                   help="gauss:<sigma>, box:<radius>, or a PSF graymap path")
    noise = p.add_mutually_exclusive_group(required=True)
    noise.add_argument("--target-psnr", type=float,
                       help="noise level as dB below the blurred image")
    noise.add_argument("--noise-sigma", type=float,
                       help="noise standard deviation in intensity units")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--ascii", action="store_true", help="write P2 instead of P5")
    p.set_defaults(func=_run_degrade)

    p = sub.add_parser("restore", help="deconvolve a degraded image")
    p.add_argument("input", help="degraded graymap (P2/P5)")
    p.add_argument("--blur", required=True,
                   help="gauss:<sigma>, box:<radius>, or a PSF graymap path")
    p.add_argument("--lambda", dest="lam", required=True,
                   help="regularization weight, or 'auto' (needs --noise-sigma)")
    p.add_argument("--noise-sigma", type=float, default=None,
                   help="noise std-dev used by --lambda auto")
    p.add_argument("--L", dest="directions", type=int, default=3,
                   help="number of gradient directions (default 3)")
    p.add_argument("--iters", type=int, default=500,
                   help="iteration cap (tvis) or per-stage outer cap (mld)")
    p.add_argument("--rel-tol", type=float, default=1e-5,
                   help="relative-change stopping tolerance")
    p.add_argument("--backtracking", action="store_true",
                   help="adapt the step constant per iteration (tvis only)")
    p.add_argument("--mu", type=float, default=0.8,
                   help="back-tracking reduction factor")
    p.add_argument("--solver", choices=("tvis", "mld"), default="tvis")
    p.add_argument("--trace", default=None, help="write a per-iteration CSV here")
    p.add_argument("--out", default=None)
    p.add_argument("--no-renormalize", action="store_true",
                   help="keep the solver's own output scale")
    p.add_argument("--threads", type=int, default=1,
                   help="FFT worker threads (default 1, reproducible)")
    p.add_argument("--ascii", action="store_true", help="write P2 instead of P5")
    p.set_defaults(func=_run_restore)

    p = sub.add_parser("compare", help="score restored images against a reference")
    p.add_argument("truth", help="reference graymap")
    p.add_argument("restored", nargs="+", help="two or more restored graymaps")
    p.add_argument("--trace", nargs="*", default=None,
                   help="per-method CSV traces, in the same order")
    p.add_argument("--out", default=None, help="also write the report here")
    p.set_defaults(func=_run_compare)

    p = sub.add_parser("check-operators",
                       help="run the operator identity self-checks")
    p.add_argument("--sizes", default="4x4,5x7,32x48",
                   help="comma-separated NxM grid sizes")
    p.add_argument("--L", dest="directions", default="1,2,3,5",
                   help="comma-separated direction counts")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=5,
                   help="random instances per size and direction count")
    p.add_argument("--out", default=None, help="also write the report here")
    p.add_argument("--flip-divergence-sign", action="store_true",
                   help=argparse.SUPPRESS)
    p.set_defaults(func=_run_check_operators)

    return parser


def main(argv=None):
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, ["tvdeconv"] + argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (shrinkage.DivergenceError, lagged.ConvergenceError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    except pnm.PnmError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


def run():
    raise SystemExit(main())
