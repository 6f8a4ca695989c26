from typing import List, Literal, Optional

import numpy as np
from ninja import Schema
from pydantic import Field, model_validator

from .branch_core import ProblemKind
from .constants import ORACLE_MAX_K, ORACLE_MIN_N

DEFAULT_TAU_GRID = {
    ProblemKind.PLUS_EXP: (0.1, 10.0, "log"),
    ProblemKind.MINUS_EXP: (0.1, 1.5, "linear"),
}


class HealthResponse(Schema):
    status: str
    message: str


class RunConfig(Schema):
    """Everything one ``gelfand`` run needs; invalid combinations fail validation."""
    command: Literal["branch", "spectrum", "eigenfunction", "verify"] = "branch"
    kind: ProblemKind = ProblemKind.PLUS_EXP
    tau_min: Optional[float] = None
    tau_max: Optional[float] = None
    tau_count: int = 20
    tau_spacing: Optional[Literal["linear", "log"]] = None
    j_min: int = 1
    j_max: int = 5
    oracle_n: int = 4000
    tol: float = 1e-5
    root_abs_tol: float = 1e-13
    quad_tol: float = 1e-10
    format: Literal["csv", "json"] = "csv"
    out: Optional[str] = None
    j: Optional[int] = None
    tau: Optional[float] = None
    samples: int = 201
    # Added to every exact mu before it is compared; verification must then fail.
    inject_mu_offset: float = 0.0

    @model_validator(mode="after")
    def check_consistency(self):
        default_min, default_max, default_spacing = DEFAULT_TAU_GRID[self.kind]
        if self.tau_min is None:
            self.tau_min = default_min
        if self.tau_max is None:
            self.tau_max = default_max
        if self.tau_spacing is None:
            self.tau_spacing = default_spacing

        if self.tau_count < 1:
            raise ValueError(f"tau_count must be >= 1, got {self.tau_count}")
        if not 0.0 < self.tau_min <= self.tau_max:
            raise ValueError(f"need 0 < tau_min <= tau_max, got [{self.tau_min}, {self.tau_max}]")
        if self.tau_max > self.kind.tau_max:
            raise ValueError(
                f"tau_max={self.tau_max} is outside the admissible range for kind={self.kind.value}"
            )
        if not 1 <= self.j_min <= self.j_max:
            raise ValueError(f"need 1 <= j_min <= j_max, got {self.j_min}..{self.j_max}")
        if self.command == "verify" and self.j_max > ORACLE_MAX_K:
            raise ValueError(f"verify compares at most {ORACLE_MAX_K} eigenvalues, got j_max={self.j_max}")
        if self.oracle_n < ORACLE_MIN_N:
            raise ValueError(f"oracle_n must be >= {ORACLE_MIN_N}, got {self.oracle_n}")
        for name in ("tol", "root_abs_tol", "quad_tol"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be positive")

        if self.command == "eigenfunction":
            if self.j is None or self.tau is None:
                raise ValueError("eigenfunction needs both j and tau")
            if self.j < 1:
                raise ValueError(f"j must be >= 1, got {self.j}")
            if not 0.0 < self.tau <= self.kind.tau_max:
                raise ValueError(f"tau={self.tau} is outside the admissible range for kind={self.kind.value}")
            if self.samples < 2:
                raise ValueError(f"samples must be >= 2, got {self.samples}")
        return self

    def tau_grid(self) -> List[float]:
        if self.tau_count == 1:
            return [float(self.tau_min)]
        if self.tau_spacing == "log":
            grid = np.geomspace(self.tau_min, self.tau_max, self.tau_count)
        else:
            grid = np.linspace(self.tau_min, self.tau_max, self.tau_count)
        return [float(t) for t in grid]

    def j_values(self) -> List[int]:
        return list(range(self.j_min, self.j_max + 1))

    def meta(self) -> dict:
        return self.model_dump(mode="json", exclude={"out"})


class BranchRow(Schema):
    tau: float
    lambda_: float = Field(alias="lambda")
    alpha: float
    lambda_prime: float


class SpectrumRow(Schema):
    tau: float
    j: int
    mu: float
    sqrt_abs_mu: float
    bracket_lo: float
    bracket_hi: float
    equation_residual: float


class EigenfunctionRow(Schema):
    x: float
    phi_raw: float
    phi_sup_one: float


class CheckResult(Schema):
    name: str
    status: Literal["pass", "fail", "info"]
    measured: float
    limit: Optional[float] = None


class BranchTable(Schema):
    meta: dict
    rows: List[BranchRow]


class SpectrumTable(Schema):
    meta: dict
    rows: List[SpectrumRow]


class EigenfunctionTable(Schema):
    meta: dict
    rows: List[EigenfunctionRow]


class ErrorResponse(Schema):
    error: str
    detail: Optional[str] = None
