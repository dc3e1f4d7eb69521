"""Command-line interface for the hybrid continuity loss toolkit."""

import logging
import sys
from dataclasses import replace
from pathlib import Path
from typing import Any, Callable, List, TypeVar

import click

from . import __version__
from .demo.experiment import (
    build_synthetic_scenario,
    run_ab_experiment,
    run_snr_sweep,
    scenario_from_wavs,
)
from .demo.report import (
    write_loss_curves_csv,
    write_markdown,
    write_report_json,
    write_sweep_json,
)
from .gradcheck import run_gradient_checks
from .metrics.scoring import (
    ALL_METRICS,
    parse_score_manifest,
    score_entries,
    write_score_csv,
    write_score_json,
)
from .mixsim.manifest import (
    PROVENANCE_FILE,
    generate_mixtures,
    parse_mix_manifest,
    write_provenance,
)
from .models.demo import AbReport
from .models.loss_config import HybridConfig
from .models.results import RowFailure
from .models.stft_config import ResolutionBank
from .models.waveform import WavEncoding
from .presets.preset_manager import PresetManager

F = TypeVar("F", bound=Callable[..., Any])

TERM_CHOICES = {
    "sc+mag": (True, True),
    "sc": (True, False),
    "mag": (False, True),
}


def _configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )


def _parse_list(value: str | None, cast: type, option: str) -> List[Any] | None:
    """Parse a comma-separated option value; None stays None."""
    if value is None:
        return None
    try:
        return [cast(item) for item in value.split(",") if item.strip()]
    except ValueError:
        raise click.BadParameter(f"'{value}' is not a comma-separated list", param_hint=option)


def _int_list(ctx: click.Context, param: click.Parameter, value: str | None) -> List[int] | None:
    return _parse_list(value, int, f"--{param.name.replace('_', '-')}")


def _float_list(
    ctx: click.Context, param: click.Parameter, value: str | None
) -> List[float] | None:
    return _parse_list(value, float, f"--{param.name.replace('_', '-')}")


def _resolve_hybrid_config(
    presets: PresetManager,
    fft_sizes: List[int] | None,
    hops: List[int] | None,
    wins: List[int] | None,
    gamma: float | None,
    terms: str,
    no_delta: bool,
) -> HybridConfig:
    """Preset hybrid config with command-line overrides applied.

    Raises:
        click.UsageError: If only some of the resolution lists are given
        ValueError: If the overrides break a config invariant
    """
    config = presets.hybrid_config()
    given = [v is not None for v in (fft_sizes, hops, wins)]
    if any(given) and not all(given):
        raise click.UsageError("--fft-sizes, --hops and --wins must be given together")
    if all(given):
        config = replace(config, resolutions=ResolutionBank.from_lists(fft_sizes, hops, wins))
    if gamma is not None:
        config = replace(config, gamma=gamma)

    use_sc, use_mag = TERM_CHOICES[terms]
    return replace(config, use_sc=use_sc, use_mag=use_mag, use_delta=not no_delta)


def _echo_failures(failures: List[RowFailure]) -> None:
    for failure in failures:
        click.echo(f"⚠️  Line {failure.line}: {failure.message}", err=True)


def _loss_options(func: F) -> F:
    """Resolution, weight and ablation options shared by grad-check and demo."""
    options = [
        click.option(
            "--fft-sizes",
            callback=_int_list,
            default=None,
            help="Comma-separated FFT sizes of the loss resolutions (e.g. 512,1024,2048)",
        ),
        click.option(
            "--hops", callback=_int_list, default=None, help="Comma-separated hop sizes"
        ),
        click.option(
            "--wins", callback=_int_list, default=None, help="Comma-separated window lengths"
        ),
        click.option("--gamma", type=float, default=None, help="Weight of the spectral terms"),
        click.option(
            "--terms",
            type=click.Choice(list(TERM_CHOICES), case_sensitive=False),
            default="sc+mag",
            show_default=True,
            help="Delta spectrum terms to keep",
        ),
        click.option(
            "--no-delta", is_flag=True, help="Drop the differential and acceleration terms"
        ),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _common_options(func: F) -> F:
    """--config and --verbose, accepted by every subcommand."""
    func = click.option("-v", "--verbose", is_flag=True, help="Verbose output")(func)
    func = click.option(
        "--config",
        "config_file",
        type=click.Path(exists=True, dir_okay=False, path_type=Path),
        default=None,
        help="YAML file overriding the packaged presets",
    )(func)
    return func


@click.group()
@click.version_option(version=__version__)
def main() -> None:
    """Hybrid Loss Toolkit - SI-SDR plus multi-resolution delta spectrum losses.

    Analytic-gradient losses for target speech extraction, the metrics used to
    evaluate them, a mixture simulator and a mask-optimization demo that
    compares the SI-SDR-only and hybrid objectives.

    Examples:

      # Simulate mixtures listed in a CSV manifest
      hybrid-loss mix --manifest mixtures.csv --out ./mixtures --seed 7

      # Score enhanced files against references
      hybrid-loss score --manifest pairs.tsv --out scores.csv

      # Check every analytic gradient against finite differences
      hybrid-loss grad-check

      # Run the A/B demo on the built-in synthetic scenario
      hybrid-loss demo --out ab_report.json

    For more help on a specific command, use:
      hybrid-loss COMMAND --help
    """
    pass


@main.command()
@click.option(
    "--manifest",
    type=click.Path(path_type=Path),
    required=True,
    help="Mixture manifest CSV (target, interference, noise, SNRs, output)",
)
@click.option(
    "--out",
    type=click.Path(file_okay=False, path_type=Path),
    required=True,
    help="Output directory for mixture WAVs and the provenance CSV",
)
@click.option("--seed", type=int, default=0, show_default=True, help="Batch seed")
@click.option(
    "--encoding",
    type=click.Choice([e.value for e in WavEncoding], case_sensitive=False),
    default=WavEncoding.FLOAT32.value,
    show_default=True,
    help="Sample encoding of the written WAVs",
)
@_common_options
def mix(
    manifest: Path,
    out: Path,
    seed: int,
    encoding: str,
    config_file: Path | None,
    verbose: bool,
) -> None:
    """Simulate target + interference (+ noise) mixtures from a manifest.

    Empty SNR cells are drawn uniformly from the preset ranges and an empty or
    'random' interference is drawn from the other rows' targets, each row from
    its own seeded stream. A row that fails is reported and skipped; the exit
    status is nonzero if any row failed.

    \b
    OUTPUT:
      {out}/mix_NNNNN.wav (or the row's output name)
      {out}/provenance.csv with resolved sources, SNRs and seeds
    """
    _configure_logging(verbose)
    try:
        presets = PresetManager(config_file)
        rows = parse_mix_manifest(manifest)
        click.echo(f"🎛️  Mixing {len(rows)} rows from {manifest} (seed {seed})")

        written, failures = generate_mixtures(
            rows,
            out,
            seed=seed,
            snr_range_db=presets.interference_snr_range(),
            noise_snr_range_db=presets.noise_snr_range(),
            encoding=WavEncoding(encoding.lower()),
        )
        provenance_path = out / PROVENANCE_FILE
        write_provenance(written, provenance_path)
    except Exception as e:
        click.echo(f"❌ Error: {e}", err=True)
        if verbose:
            raise
        sys.exit(1)

    click.echo(f"✅ Wrote {len(written)} mixtures")
    click.echo(f"✅ Provenance: {provenance_path}")
    if failures:
        _echo_failures(failures)
        click.echo(f"❌ {len(failures)} of {len(rows)} rows failed", err=True)
        sys.exit(1)


@main.command()
@click.option(
    "--manifest",
    type=click.Path(path_type=Path),
    required=True,
    help="Tab-separated manifest: reference, estimate[, ref transcript, hyp transcript]",
)
@click.option(
    "--out",
    type=click.Path(dir_okay=False, path_type=Path),
    required=True,
    help="Report file",
)
@click.option(
    "--metrics",
    "metric_names",
    default=",".join(ALL_METRICS),
    show_default=True,
    help="Comma-separated metrics to compute",
)
@click.option(
    "--format",
    "output_format",
    type=click.Choice(["csv", "json"], case_sensitive=False),
    default="csv",
    show_default=True,
    help="Report format",
)
@_common_options
def score(
    manifest: Path,
    out: Path,
    metric_names: str,
    output_format: str,
    config_file: Path | None,
    verbose: bool,
) -> None:
    """Score (reference, estimate) pairs: SI-SDR, SDR, suppression MAE, WER, CER.

    One row per pair plus a mean row. WER and CER are filled only for rows
    with transcripts. Rows that cannot be scored (missing file, length
    mismatch) are reported and skipped; the exit status is then nonzero.
    """
    _configure_logging(verbose)
    metrics = [m.strip().lower() for m in metric_names.split(",") if m.strip()]
    unknown = sorted(set(metrics) - set(ALL_METRICS))
    if unknown:
        raise click.BadParameter(
            f"unknown metrics {unknown}; choose from {', '.join(ALL_METRICS)}",
            param_hint="--metrics",
        )

    try:
        presets = PresetManager(config_file)
        entries = parse_score_manifest(manifest)
        click.echo(f"📊 Scoring {len(entries)} pairs from {manifest}")
        rows, failures = score_entries(entries, metrics, presets.suppression_config())

        if output_format.lower() == "json":
            write_score_json(rows, failures, out)
        else:
            write_score_csv(rows, out)
    except Exception as e:
        click.echo(f"❌ Error: {e}", err=True)
        if verbose:
            raise
        sys.exit(1)

    click.echo(f"✅ Scored {len(rows)} pairs → {out}")
    if failures:
        _echo_failures(failures)
        click.echo(f"❌ {len(failures)} of {len(entries)} rows failed", err=True)
        sys.exit(1)


@main.command(name="grad-check")
@click.option(
    "--seed", type=int, default=0, show_default=True, help="Seed of signals and coordinates"
)
@click.option("--length", type=click.IntRange(min=1), default=None, help="Signal length")
@click.option(
    "--coordinates", type=click.IntRange(min=1), default=None, help="Coordinates per check"
)
@click.option("--step", type=float, default=None, help="Finite-difference step")
@click.option("--tolerance", type=float, default=None, help="Maximum relative error")
@_loss_options
@_common_options
def grad_check(
    seed: int,
    length: int | None,
    coordinates: int | None,
    step: float | None,
    tolerance: float | None,
    fft_sizes: List[int] | None,
    hops: List[int] | None,
    wins: List[int] | None,
    gamma: float | None,
    terms: str,
    no_delta: bool,
    config_file: Path | None,
    verbose: bool,
) -> None:
    """Compare every analytic gradient with central finite differences.

    Checks the SI-SDR loss, the delta spectrum loss at each resolution, the
    hybrid loss and the demo's mask-to-loss chain. Exits 0 only if every check
    is within tolerance.
    """
    _configure_logging(verbose)
    try:
        presets = PresetManager(config_file)
        defaults = presets.grad_check_defaults()
        hybrid_config = _resolve_hybrid_config(
            presets, fft_sizes, hops, wins, gamma, terms.lower(), no_delta
        )
        tolerance = defaults.tolerance if tolerance is None else tolerance
        checks = run_gradient_checks(
            seed=seed,
            length=length or defaults.length,
            coordinates=coordinates or defaults.coordinates,
            step=defaults.step if step is None else step,
            tolerance=tolerance,
            hybrid_config=hybrid_config,
            demo_config=presets.demo_config(),
        )
    except click.UsageError:
        raise
    except Exception as e:
        click.echo(f"❌ Error: {e}", err=True)
        if verbose:
            raise
        sys.exit(1)

    click.echo(f"🔬 Gradient checks (seed {seed}, tolerance {tolerance:g})")
    for check in checks:
        mark = "✅" if check.passed else "❌"
        click.echo(
            f"{mark} {check.name:<32} max rel. error {check.max_relative_error:.3e} "
            f"({len(check.coordinates)} coords)"
        )

    failed = [c for c in checks if not c.passed]
    if failed:
        click.echo(f"❌ {len(failed)} of {len(checks)} checks exceeded the tolerance", err=True)
        sys.exit(1)
    click.echo(f"🎉 All {len(checks)} checks passed")


def _echo_report(report: AbReport) -> None:
    for name, arm in report.arms.items():
        click.echo(
            f"   {name:<12} SI-SDR {arm.final_si_sdr_db:7.2f} dB "
            f"(+{arm.si_sdr_improvement_db:.2f})  "
            f"MAE over {arm.mae_over:.5f}  under {arm.mae_under:.5f}"
        )
    click.echo(f"   Over-suppression reduction: {100 * report.over_suppression_reduction:.1f}%")


@main.command()
@click.option(
    "--target",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    default=None,
    help="Target WAV (use with --interference instead of the synthetic scenario)",
)
@click.option(
    "--interference",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    default=None,
    help="Interference WAV of the same length as --target",
)
@click.option("--snr", type=float, default=None, help="Target-to-interference SNR in dB")
@click.option(
    "--snr-sweep",
    callback=_float_list,
    default=None,
    help="Comma-separated SNRs in dB; runs the A/B experiment at each",
)
@click.option("--steps", type=click.IntRange(min=1), default=None, help="Gradient steps per arm")
@click.option("--lr", type=float, default=None, help="Learning rate on the mask logits")
@click.option("--seed", type=int, default=None, help="Seed shared by both arms")
@click.option(
    "--out",
    type=click.Path(dir_okay=False, path_type=Path),
    required=True,
    help="JSON report path",
)
@click.option(
    "--curves",
    type=click.Path(dir_okay=False, path_type=Path),
    default=None,
    help="Optional CSV of per-step losses",
)
@click.option(
    "--markdown",
    type=click.Path(dir_okay=False, path_type=Path),
    default=None,
    help="Optional Markdown rendering of the report",
)
@_loss_options
@_common_options
def demo(
    target: Path | None,
    interference: Path | None,
    snr: float | None,
    snr_sweep: List[float] | None,
    steps: int | None,
    lr: float | None,
    seed: int | None,
    out: Path,
    curves: Path | None,
    markdown: Path | None,
    fft_sizes: List[int] | None,
    hops: List[int] | None,
    wins: List[int] | None,
    gamma: float | None,
    terms: str,
    no_delta: bool,
    config_file: Path | None,
    verbose: bool,
) -> None:
    """Optimize a time-frequency mask under SI-SDR only and under the hybrid loss.

    Both arms start from the same mask (0.5 everywhere) and run plain gradient
    descent for the same number of steps. The report compares their SI-SDR
    and over-/under-suppression MAE.

    \b
    SCENARIOS:
      default     440 Hz tone + 600 Hz chirp against a 300 Hz tone
      --target/--interference   a user WAV pair of equal length
    """
    _configure_logging(verbose)
    if (target is None) != (interference is None):
        raise click.UsageError("--target and --interference must be given together")

    try:
        presets = PresetManager(config_file)
        defaults = presets.demo_defaults()
        hybrid_config = _resolve_hybrid_config(
            presets, fft_sizes, hops, wins, gamma, terms.lower(), no_delta
        )
        steps = steps or defaults.steps
        lr = defaults.learning_rate if lr is None else lr
        seed = defaults.seed if seed is None else seed
        snr_db = defaults.interference_snr_db if snr is None else snr

        if target is not None and interference is not None:
            scenario = scenario_from_wavs(target, interference, snr_db)
            scenario_name = f"{target.name} vs {interference.name}"
        else:
            scenario = build_synthetic_scenario(
                defaults.duration_s, defaults.sample_rate, snr_db
            )
            scenario_name = "synthetic"

        click.echo(f"🎧 Mask optimization A/B ({scenario_name})")
        click.echo(f"   Steps: {steps}  LR: {lr}  Seed: {seed}")
        click.echo(f"   Mask STFT: {presets.demo_config()}  Gamma: {hybrid_config.gamma}")
        click.echo()

        if snr_sweep:
            if curves or markdown:
                click.echo("⚠️  --curves and --markdown are ignored with --snr-sweep")
            results = run_snr_sweep(
                scenario.target,
                scenario.interferences[0],
                snr_sweep,
                steps,
                lr,
                seed,
                hybrid_config,
                presets.demo_config(),
                presets.suppression_config(),
            )
            for snr_value, report in results:
                click.echo(f"📊 SNR {snr_value:g} dB")
                _echo_report(report)
            write_sweep_json(results, out)
        else:
            report = run_ab_experiment(
                scenario,
                steps,
                lr,
                seed,
                hybrid_config,
                presets.demo_config(),
                presets.suppression_config(),
            )
            click.echo("📊 Results:")
            _echo_report(report)
            write_report_json(report, out)
            if curves:
                write_loss_curves_csv(report, curves)
                click.echo(f"✅ Loss curves: {curves}")
            if markdown:
                write_markdown(report, markdown, scenario_name)
                click.echo(f"✅ Markdown report: {markdown}")
    except click.UsageError:
        raise
    except Exception as e:
        click.echo(f"❌ Error: {e}", err=True)
        if verbose:
            raise
        sys.exit(1)

    click.echo(f"✅ Report: {out}")

