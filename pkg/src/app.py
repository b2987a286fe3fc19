from __future__ import annotations
import functools
import logging
import sys
from typing import Callable, List, Optional

import typer
from pydantic import ValidationError

from . import settings
from .config import CandidateMode, EdgeListFormat, EtaVariant, KappaMode, Metric, RunConfig, ScoringOptions
from .errors import EXIT_INPUT, EXIT_RUNTIME, LinkPredError, UsageError
from .flows.evaluate_flow import run_evaluate
from .flows.horizon_flow import DEFAULT_HORIZONS, run_horizon
from .flows.ingest_flow import run_ingest
from .flows.predict_flow import render_predictions, run_predict
from .flows.rank_flow import run_compare, run_rank
from .predictors.methods import parse_methods
from .statrank.ranks import Adjustment


app = typer.Typer(help="Directed link prediction: similarity-popularity predictors, baselines and evaluation")
logger = logging.getLogger("src")

_STATE = {"progress": True}


def _guarded(fn: Callable) -> Callable:
    """Map errors to exit codes: 2 for usage/input, 3 for runtime/numeric and anything unexpected."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except LinkPredError as exc:
            logger.error("%s", exc)
            raise typer.Exit(code=exc.exit_code)
        except ValidationError as exc:
            logger.error("Invalid configuration: %s", exc)
            raise typer.Exit(code=EXIT_INPUT)
        except typer.Exit:
            raise
        except Exception as exc:
            logger.error("%s: %s", type(exc).__name__, exc)
            raise typer.Exit(code=EXIT_RUNTIME)

    return wrapper


def _parse_metrics(text: Optional[str]) -> Optional[List[Metric]]:
    if text is None or text.strip().lower() == "auto":
        return None
    out: List[Metric] = []
    for token in (t.strip().lower() for t in text.split(",")):
        if not token:
            continue
        try:
            metric = Metric(token)
        except ValueError:
            raise UsageError(f"Unknown metric '{token}' (known: tpr, aupr, auroc)") from None
        if metric not in out:
            out.append(metric)
    return out or None


def _parse_horizons(text: str) -> List[int]:
    try:
        if "-" in text:
            lo, hi = (int(x) for x in text.split("-", 1))
            return list(range(lo, hi + 1))
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"Invalid horizon list '{text}' (use '2-9' or '2,3,5')") from None


@app.callback()
def main(
    quiet: bool = typer.Option(False, "--quiet", "-q", help="Hide progress bars"),
    log_level: str = typer.Option(settings.LOG_LEVEL, "--log-level", help="Logging level"),
):
    logging.basicConfig(
        level=getattr(logging, log_level.upper(), logging.INFO),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    _STATE["progress"] = not quiet


@app.command("ingest")
@_guarded
def ingest(
    path: str = typer.Argument(..., help="Raw edge list"),
    fmt: EdgeListFormat = typer.Option(EdgeListFormat.WHITESPACE, "--format", help="Input format"),
    out: Optional[str] = typer.Option(None, "--out", help="Canonical TSV path (default: <stem>.canonical.tsv)"),
):
    """Clean an edge list into the canonical TSV plus label map and print its statistics."""
    result = run_ingest(path, fmt, out)
    for key, value in result["stats"].items():
        typer.echo(f"{key}\t{value:.6g}" if isinstance(value, float) else f"{key}\t{value}")


@app.command("predict")
@_guarded
def predict(
    graph: str = typer.Argument(..., help="Edge list of the observed network"),
    method: str = typer.Option("ALG2", "--method", "-m", help="One method, e.g. ALG2 or DADA"),
    h: int = typer.Option(settings.DEFAULT_HORIZON, "--horizon", "-h", help="Horizon depth limit"),
    top_n: int = typer.Option(20, "--top", "-n", help="Number of predictions to print"),
    fmt: EdgeListFormat = typer.Option(EdgeListFormat.WHITESPACE, "--format"),
    mode: Optional[CandidateMode] = typer.Option(None, "--mode", help="Candidate enumeration mode"),
    eta_variant: EtaVariant = typer.Option(EtaVariant.EQUATIONS, "--eta-variant"),
    eta_kappa: KappaMode = typer.Option(KappaMode.SUM, "--eta-kappa"),
    baseline_kappa: KappaMode = typer.Option(KappaMode.UNION, "--baseline-kappa"),
):
    """Print the highest-scoring missing links as SRC<TAB>DST<TAB>SCORE."""
    methods = parse_methods(method)
    if len(methods) != 1:
        raise UsageError("predict takes exactly one method")
    if top_n < 0:
        raise UsageError("--top must be >= 0")
    options = ScoringOptions(h=h, eta_variant=eta_variant, eta_kappa=eta_kappa, baseline_kappa=baseline_kappa)
    result = run_predict(graph, methods[0], top_n, options, fmt, mode)
    sys.stdout.write(render_predictions(result["rows"]))


def _run_config(
    methods: str,
    h: int,
    fraction: float,
    trials: Optional[int],
    metrics: Optional[str],
    seed: Optional[int],
    eta_variant: EtaVariant,
    eta_kappa: KappaMode,
    baseline_kappa: KappaMode,
    allow_large_metrics: bool,
    jobs: int,
) -> RunConfig:
    return RunConfig(
        methods=parse_methods(methods),
        h=h,
        fraction=fraction,
        trials=trials,
        metrics=_parse_metrics(metrics),
        seed=settings.DEFAULT_SEED if seed is None else seed,
        eta_variant=eta_variant,
        eta_kappa=eta_kappa,
        baseline_kappa=baseline_kappa,
        allow_large_metrics=allow_large_metrics,
        jobs=jobs,
    )


@app.command("evaluate")
@_guarded
def evaluate(
    graph: str = typer.Argument(..., help="Edge list of the network"),
    methods: str = typer.Option("all", "--methods", help="Comma-separated methods or 'all'"),
    h: int = typer.Option(settings.DEFAULT_HORIZON, "--horizon", "-h"),
    fraction: float = typer.Option(settings.DEFAULT_TEST_FRACTION, "--fraction", help="Share of edges removed per trial"),
    trials: Optional[int] = typer.Option(None, "--trials", "-t", help="Default: 1000 if n < 1000 else 100"),
    metrics: Optional[str] = typer.Option(None, "--metrics", help="tpr,aupr,auroc or 'auto'"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Master seed (env LINKPRED_SEED otherwise)"),
    eta_variant: EtaVariant = typer.Option(EtaVariant.EQUATIONS, "--eta-variant"),
    eta_kappa: KappaMode = typer.Option(KappaMode.SUM, "--eta-kappa"),
    baseline_kappa: KappaMode = typer.Option(KappaMode.UNION, "--baseline-kappa"),
    allow_large_metrics: bool = typer.Option(False, "--allow-large-metrics", help="Lift the AUPR/AUROC size gate"),
    jobs: int = typer.Option(settings.DEFAULT_JOBS, "--jobs", "-j", help="Worker processes"),
    out: Optional[str] = typer.Option(None, "--out", help="Results file (default: results/<stem>.yaml)"),
    dataset: Optional[str] = typer.Option(None, "--name", help="Dataset name recorded in the results"),
    fmt: EdgeListFormat = typer.Option(EdgeListFormat.WHITESPACE, "--format"),
):
    """Run the repeated removal / prediction / measurement protocol on one network."""
    config = _run_config(
        methods, h, fraction, trials, metrics, seed, eta_variant, eta_kappa, baseline_kappa, allow_large_metrics, jobs
    )
    result = run_evaluate(graph, config, out, dataset, fmt, progress=_STATE["progress"])
    typer.echo(result["results"])


@app.command("rank")
@_guarded
def rank(
    result_files: List[str] = typer.Argument(..., help="Results files, one per network"),
    metric: Metric = typer.Option(Metric.TPR, "--metric"),
    alpha: float = typer.Option(settings.DEFAULT_ALPHA, "--alpha", help="Significance level of the paired t-tests"),
    out_dir: Optional[str] = typer.Option(None, "--out-dir", help="Directory for the TSV tables"),
    pretty: bool = typer.Option(False, "--pretty", help="Aligned text instead of TSV on stdout"),
):
    """Average significant rank of every method across networks."""
    result = run_rank(result_files, metric, alpha, out_dir, pretty)
    sys.stdout.write(result["rendered"]["means"])


@app.command("compare")
@_guarded
def compare(
    rank_file: str = typer.Argument(..., help="ranks_<metric>.tsv written by 'rank'"),
    adjust: Adjustment = typer.Option(Adjustment.BHY, "--adjust"),
    alpha: float = typer.Option(settings.DEFAULT_ALPHA, "--alpha"),
    out: Optional[str] = typer.Option(None, "--out", help="Write the pairwise TSV here"),
    pretty: bool = typer.Option(False, "--pretty"),
):
    """Pairwise one-tailed Mann-Whitney-Wilcoxon comparison of per-network ranks."""
    result = run_compare(rank_file, adjust, alpha, out, pretty)
    sys.stdout.write(result["rendered"])


@app.command("horizon")
@_guarded
def horizon(
    graphs: List[str] = typer.Argument(..., help="Edge lists of the networks"),
    methods: str = typer.Option("ALG1,ALG2", "--methods"),
    horizons: str = typer.Option(f"{DEFAULT_HORIZONS[0]}-{DEFAULT_HORIZONS[-1]}", "--horizons"),
    fraction: float = typer.Option(settings.DEFAULT_TEST_FRACTION, "--fraction"),
    trials: Optional[int] = typer.Option(None, "--trials", "-t"),
    metrics: Optional[str] = typer.Option(None, "--metrics"),
    seed: Optional[int] = typer.Option(None, "--seed"),
    eta_variant: EtaVariant = typer.Option(EtaVariant.EQUATIONS, "--eta-variant"),
    alpha: float = typer.Option(settings.DEFAULT_ALPHA, "--alpha"),
    allow_large_metrics: bool = typer.Option(False, "--allow-large-metrics"),
    jobs: int = typer.Option(settings.DEFAULT_JOBS, "--jobs", "-j"),
    out: Optional[str] = typer.Option(None, "--out"),
    fmt: EdgeListFormat = typer.Option(EdgeListFormat.WHITESPACE, "--format"),
):
    """Average rank of each horizon depth, as a data table for plotting."""
    config = _run_config(
        methods,
        settings.DEFAULT_HORIZON,
        fraction,
        trials,
        metrics,
        seed,
        eta_variant,
        KappaMode.SUM,
        KappaMode.UNION,
        allow_large_metrics,
        jobs,
    )
    result = run_horizon(graphs, config, _parse_horizons(horizons), alpha, out, fmt, progress=_STATE["progress"])
    sys.stdout.write(result["rendered"])


if __name__ == "__main__":
    app()
