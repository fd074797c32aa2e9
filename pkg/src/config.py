"""Configuration and run-parameter validation.

This module centralizes every tunable default so the library, the CLI, and the
tests read budgets and constants in one consistent way.

How this module is designed:
1. `Settings` holds typed defaults. It is a `pydantic-settings` object whose
   sources are restricted to constructor arguments: the CLI contract is that
   all configuration is explicit, so environment variables and `.env` files
   are not consulted.
2. `RunConfig` is the per-invocation record the CLI builds from its flags.
3. `validate_run_config()` fails fast on values no subcommand can use, and
   `RunConfig.effective_settings()` layers the run's overrides on top of the
   defaults.
"""

from __future__ import annotations

from pathlib import Path
from typing import Literal

from pydantic import BaseModel, Field
from pydantic_settings import BaseSettings, PydanticBaseSettingsSource, SettingsConfigDict

from src.errors import InputValidationError

ExactnessMode = Literal["exact", "float-fallback"]


class Settings(BaseSettings):
    """Library-wide defaults.

    Budgets keep every exhaustive enumeration at desk scale; anything larger
    is refused with a `BudgetExceededError` rather than left to run for hours.
    """

    model_config = SettingsConfigDict(extra="ignore", frozen=True)

    debug: bool = Field(default=False)

    # Full adversary enumeration: 2·n^L labels and r' evaluations.
    budget_labels: int = Field(default=2000)
    budget_rprime: int = Field(default=10_000_000)

    expansion_max_vertices: int = Field(default=20)

    bruteforce_max_vertices: int = Field(default=4)
    bruteforce_paths_per_pair: int = Field(default=8)
    bruteforce_node_budget: int = Field(default=1_000_000)

    random_regular_max_attempts: int = Field(default=1000)
    anneal_iterations: int = Field(default=1000)

    sample_pool: int = Field(default=32)
    sampled_default_samples: int = Field(default=1000)

    # Rational enclosure of Euler's number used by every e-bearing check.
    e_lower: str = Field(default="2.718281828")
    e_upper: str = Field(default="2.718281829")

    inexact_relative_slack: float = Field(default=1e-9)
    decimal_precision: int = Field(default=50)
    csv_significant_digits: int = Field(default=12)
    max_reported_violations: int = Field(default=20)

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        return (init_settings,)


settings = Settings()


class RunConfig(BaseModel):
    """Effective parameters of one CLI invocation.

    The CLI copies parsed flags into this model, so every report can embed the
    exact configuration that produced it.
    """

    subcommand: str
    graph_file: Path | None = None
    family: str | None = None
    family_params: dict[str, int] = Field(default_factory=dict)
    seed: int = 0
    L: int | None = None
    out: Path | None = None
    budget_labels: int = settings.budget_labels
    budget_rprime: int = settings.budget_rprime
    exactness: ExactnessMode = "exact"
    debug: bool = False

    def effective_settings(self) -> Settings:
        """Return `settings` with this run's overrides applied."""

        return settings.model_copy(
            update={
                "budget_labels": self.budget_labels,
                "budget_rprime": self.budget_rprime,
                "debug": self.debug,
            }
        )


def validate_run_config(config: RunConfig) -> None:
    """Fail fast on parameters that no subcommand accepts.

    Raises
    ------
    InputValidationError
        If L is below 1, a budget is not positive, or a graph source is
        specified twice.
    """

    problems: list[str] = []
    if config.L is not None and config.L < 1:
        problems.append(f"L must be >= 1 (got {config.L})")
    if config.budget_labels <= 0:
        problems.append("--budget-labels must be positive")
    if config.budget_rprime <= 0:
        problems.append("--budget-rprime must be positive")
    if config.graph_file is not None and config.family is not None:
        problems.append("use either --graph or --family, not both")

    if problems:
        raise InputValidationError("Invalid run configuration: " + "; ".join(problems) + ".")
