"""Configuration management using Pydantic Settings"""

from typing import Any, Dict, Literal, Optional, Tuple

from pydantic import Field, ValidationError
from pydantic_settings import BaseSettings, SettingsConfigDict


# Keys echoed into emitted table headers so a run can be reproduced from its output
SOLVER_CONFIG_KEYS = {
    "quad_order", "quadrature", "adaptive_tol",
    "solver_tol", "solver_max_iter", "solver_damping", "solver_min_damping",
    "saturation_eps", "second_start", "ambiguity_tol",
}


class Settings(BaseSettings):
    """Application settings, read from ONEBIT_* environment variables"""

    model_config = SettingsConfigDict(
        env_prefix="ONEBIT_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Quadrature
    quad_order: int = Field(200, ge=8, le=2000)
    quadrature: Literal["hermite", "adaptive"] = "hermite"
    adaptive_tol: float = Field(1e-12, gt=0)

    # Saddle-point solver
    solver_tol: float = Field(1e-12, gt=0)
    solver_max_iter: int = Field(10_000, ge=1)
    solver_damping: float = Field(0.5, gt=0, le=1)
    solver_min_damping: float = Field(1.0 / 64.0, gt=0, le=1)
    saturation_eps: float = Field(1e-8, gt=0, lt=1)
    second_start: float = Field(0.99, ge=0, lt=1)
    ambiguity_tol: float = Field(1e-6, gt=0)

    # Finite-size evaluation
    max_enumerated_outputs: int = Field(24, ge=1, le=30)
    max_enumeration_size: int = Field(34, ge=2)
    output_samples: int = Field(4096, ge=16)

    # Execution
    workers: int = Field(1, ge=1)

    # Monitoring
    log_level: str = "WARNING"
    log_file: Optional[str] = None

    def solver_config_dict(self) -> Dict[str, Any]:
        """Export numerics-relevant settings for output headers."""
        return {k: getattr(self, k) for k in sorted(SOLVER_CONFIG_KEYS)}


def load_settings() -> Tuple[Settings, Optional[ValidationError]]:
    """
    Read settings from the environment.

    An invalid override does not fail the import: the defaults are used and the validation error
    is returned alongside, so the CLI can report it as a usage error.
    """
    try:
        return Settings(), None
    except ValidationError as exc:
        return Settings.model_construct(), exc


settings, settings_error = load_settings()
