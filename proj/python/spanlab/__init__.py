"""Context span divergence toolkit."""

from pathlib import Path

from ._core import (
    DomainError,
    Error,
    IoError,
    ParseError,
    ReadingParams,
    __version__,
    bootstrap_ci,
    cagr,
    crossover_year,
    doubling_time_months,
    ecs,
    fit_exponential,
    run_report,
    seconds_to_tokens,
    simulate_loop,
    tokens_per_second,
)


def data_dir() -> Path:
    """Directory holding the bundled datasets and default configuration."""
    return Path(__file__).resolve().parent / "data"


def default_config() -> Path:
    return data_dir() / "default_config.json"


__all__ = [
    "DomainError",
    "Error",
    "IoError",
    "ParseError",
    "ReadingParams",
    "__version__",
    "bootstrap_ci",
    "cagr",
    "crossover_year",
    "data_dir",
    "default_config",
    "doubling_time_months",
    "ecs",
    "fit_exponential",
    "run_report",
    "seconds_to_tokens",
    "simulate_loop",
    "tokens_per_second",
]
