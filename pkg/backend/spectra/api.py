from typing import Optional

from ninja import Router

from .exceptions import GelfandError
from .schemas import (
    BranchTable,
    EigenfunctionTable,
    ErrorResponse,
    HealthResponse,
    SpectrumTable,
)
from .services import BranchService, EigenfunctionService, SpectrumService, run_config

router = Router()


@router.get("/health", response=HealthResponse, tags=["Health"])
def health_check(request):
    return {
        "status": "ok",
        "message": "Gel'fand spectra backend is running"
    }


@router.get("/branch", response={200: BranchTable, 400: ErrorResponse, 422: ErrorResponse}, by_alias=True, tags=["Branch"])
def branch(
    request,
    kind: str = "plus",
    tau_min: Optional[float] = None,
    tau_max: Optional[float] = None,
    tau_count: int = 20,
    tau_spacing: Optional[str] = None,
):
    try:
        cfg = run_config(
            command="branch", kind=kind, tau_min=tau_min, tau_max=tau_max,
            tau_count=tau_count, tau_spacing=tau_spacing,
        )
        return 200, {"meta": cfg.meta(), "rows": BranchService.rows(cfg)}
    except ValueError as e:
        return 400, {"error": "Validation Error", "detail": str(e)}
    except GelfandError as e:
        return 422, {"error": "Computation Error", "detail": str(e)}


@router.get("/spectrum", response={200: SpectrumTable, 400: ErrorResponse, 422: ErrorResponse}, tags=["Spectrum"])
def spectrum(
    request,
    kind: str = "plus",
    tau_min: Optional[float] = None,
    tau_max: Optional[float] = None,
    tau_count: int = 20,
    tau_spacing: Optional[str] = None,
    j_min: int = 1,
    j_max: int = 5,
):
    try:
        cfg = run_config(
            command="spectrum", kind=kind, tau_min=tau_min, tau_max=tau_max,
            tau_count=tau_count, tau_spacing=tau_spacing, j_min=j_min, j_max=j_max,
        )
        return 200, {"meta": cfg.meta(), "rows": SpectrumService.rows(cfg)}
    except ValueError as e:
        return 400, {"error": "Validation Error", "detail": str(e)}
    except GelfandError as e:
        return 422, {"error": "Computation Error", "detail": str(e)}


@router.get("/eigenfunction", response={200: EigenfunctionTable, 400: ErrorResponse, 422: ErrorResponse}, tags=["Eigenfunction"])
def eigenfunction(
    request,
    j: int,
    tau: float,
    kind: str = "plus",
    samples: int = 201,
):
    """Samples of phi_j on a uniform grid of [-1, 1], raw and scaled to sup|phi| = 1."""
    try:
        cfg = run_config(command="eigenfunction", kind=kind, j=j, tau=tau, samples=samples)
        return 200, {"meta": cfg.meta(), "rows": EigenfunctionService.rows(cfg)}
    except ValueError as e:
        return 400, {"error": "Validation Error", "detail": str(e)}
    except GelfandError as e:
        return 422, {"error": "Computation Error", "detail": str(e)}
