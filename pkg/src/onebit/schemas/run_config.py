"""Command configuration schemas"""

from enum import Enum
from typing import Any, Dict, List, Literal, Optional, Type

from pydantic import BaseModel, ConfigDict, Field, ValidationInfo, field_validator, model_validator

from onebit.asymptotics.regimes import Regime
from onebit.finite.exact import Conditional, Method


class Command(str, Enum):
    """CLI subcommand"""

    CAPACITY = "capacity"
    SADDLE = "saddle"
    SWEEP = "sweep"
    CONTOUR = "contour"
    EXACT = "exact"
    APPROX = "approx"
    THRESHOLD = "threshold"
    FIT_E = "fit-e"
    FIGURE = "figure"


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


class CommandParams(BaseModel):
    """Base for per-command parameters; unknown keys are rejected"""

    model_config = ConfigDict(extra="forbid", frozen=True)


class PointParams(CommandParams):
    rho: float = Field(..., ge=0, allow_inf_nan=False, description="linear SNR")
    alpha: float = Field(..., gt=0, allow_inf_nan=False, description="N/M")


class CapacityParams(PointParams):
    complex_signals: bool = Field(False, description="also report the I-Q model capacity")


class SaddleParams(PointParams):
    pass


class SweepParams(CommandParams):
    rho: List[float] = Field(..., min_length=1)
    alpha: List[float] = Field(..., min_length=1)

    @field_validator("rho")
    @classmethod
    def _rho_valid(cls, values: List[float]) -> List[float]:
        if any(not (v >= 0 and v < float("inf")) for v in values):
            raise ValueError("every rho must be finite and >= 0")
        return values

    @field_validator("alpha")
    @classmethod
    def _alpha_valid(cls, values: List[float]) -> List[float]:
        if any(not (v > 0 and v < float("inf")) for v in values):
            raise ValueError("every alpha must be finite and > 0")
        return values


class ContourParams(CommandParams):
    target: float = Field(..., gt=0, lt=1, description="capacity level in bits")
    alpha_min: float = Field(..., gt=0, allow_inf_nan=False)
    alpha_max: float = Field(..., gt=0, allow_inf_nan=False)
    steps: int = Field(20, ge=1)
    approx: bool = True

    @model_validator(mode="after")
    def _ordered(self) -> "ContourParams":
        if self.alpha_min > self.alpha_max:
            raise ValueError("alpha_min must not exceed alpha_max")
        return self


class ExactParams(CommandParams):
    m: int = Field(..., ge=1)
    n: int = Field(..., ge=1)
    rho: float = Field(..., ge=0, allow_inf_nan=False)
    channels: int = Field(100, ge=2)
    seed: int = Field(0, ge=0)
    complex_signals: bool = False
    conditional: Conditional = Conditional.CLOSED_FORM
    method: Optional[Method] = None
    samples: Optional[int] = Field(None, ge=16)


class ApproxParams(PointParams):
    regime: Optional[Regime] = None


class ThresholdParams(CommandParams):
    lo: float = Field(1.0, gt=0)
    hi: float = Field(1.5, gt=0)


class FitEParams(CommandParams):
    rho_max: float = Field(1.5, gt=0, allow_inf_nan=False)
    points: int = Field(60, ge=2)


class FigureParams(CommandParams):
    figure: Literal["fig1", "fig2", "fig3", "fig4", "fig5", "fig6"]
    channels: int = Field(100, ge=2, description="channel draws per fig1 cell")
    seed: int = Field(0, ge=0)
    m: int = Field(8, ge=1, description="transmitters for fig1")
    step: float = Field(0.1, gt=0, description="grid spacing for fig2")


PARAMS_BY_COMMAND: Dict[Command, Type[CommandParams]] = {
    Command.CAPACITY: CapacityParams,
    Command.SADDLE: SaddleParams,
    Command.SWEEP: SweepParams,
    Command.CONTOUR: ContourParams,
    Command.EXACT: ExactParams,
    Command.APPROX: ApproxParams,
    Command.THRESHOLD: ThresholdParams,
    Command.FIT_E: FitEParams,
    Command.FIGURE: FigureParams,
}


class RunConfig(BaseModel):
    """A fully validated command invocation"""

    model_config = ConfigDict(extra="forbid")

    command: Command
    parameters: Any = Field(default_factory=dict)
    output: Optional[str] = Field(None, description="file path; stdout when omitted")
    format: OutputFormat = OutputFormat.CSV

    @field_validator("parameters", mode="before")
    @classmethod
    def _typed_parameters(cls, value: Any, info: ValidationInfo) -> CommandParams:
        command = info.data.get("command")
        if command is None:
            raise ValueError("parameters cannot be validated without a valid command")
        model = PARAMS_BY_COMMAND[command]
        if isinstance(value, model):
            return value
        if isinstance(value, BaseModel):
            value = value.model_dump()
        return model.model_validate(value)
