"""
Large- and small-tau behaviour of the spectrum and the mass integrals of the
PLUS_EXP solution, each with a quadrature cross-check.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Iterable, List, Sequence, Tuple

import numpy as np

from .branch_core import ProblemKind, check_x, potential_q, solve_tau1
from .constants import HALF_PI, QUAD_TOL
from .exceptions import DomainError, PreconditionError
from .numerics import adaptive_simpson
from .spectrum_exact import eigenfunction, mu_exact, phase_coefficient

logger = logging.getLogger(__name__)

SMALL_TAU = 1e-3
PLUS_LARGE_TAUS = (30.0, 500.0)
MINUS_NEAR_LIMIT_TAU = HALF_PI - 1e-6


@dataclass(frozen=True)
class LimitReport:
    quantity: str
    tau: float
    measured: float
    target: float
    tolerance: float

    @property
    def deviation(self) -> float:
        return abs(self.measured - self.target)

    @property
    def passed(self) -> bool:
        return self.deviation <= self.tolerance


@dataclass(frozen=True)
class TrendReport:
    """A quantity sampled along an increasing tau ladder."""
    quantity: str
    taus: Tuple[float, ...]
    values: Tuple[float, ...]

    @property
    def strictly_decreasing(self) -> bool:
        return all(b < a for a, b in zip(self.values, self.values[1:]))


def _check_positive(tau: float):
    if not tau > 0.0:
        raise DomainError(f"tau must be positive, got {tau!r}")


def mass_integral(tau: float) -> float:
    """
    integral_{-1}^{1} lambda e^u dx = 2 tau (cos(2 arctan e^-tau) - cos(2 arctan e^tau)).

    cos(2 arctan y) = (1 - y^2) / (1 + y^2), so this is 4 tau tanh tau.
    """
    _check_positive(tau)
    return 4.0 * tau * math.tanh(tau)


def sqrt_mass_integral(tau: float) -> float:
    """
    integral_{-1}^{1} sqrt(lambda e^u) dx = 2 sqrt2 (arctan e^tau - arctan e^-tau).

    Written as 2 sqrt2 (pi/2 - 2 arctan e^-tau) so large tau does not overflow.
    """
    _check_positive(tau)
    return 2.0 * math.sqrt(2.0) * (HALF_PI - 2.0 * math.atan(math.exp(-tau)))


def _symmetric_quadrature(func: Callable[[float], float], tol: float) -> float:
    return 2.0 * adaptive_simpson(func, 0.0, 1.0, 0.5 * tol)


def mass_integral_quadrature(tau: float, tol: float = QUAD_TOL) -> float:
    _check_positive(tau)
    return _symmetric_quadrature(
        lambda x: float(potential_q(x, tau, ProblemKind.PLUS_EXP)), tol
    )


def sqrt_mass_integral_quadrature(tau: float, tol: float = QUAD_TOL) -> float:
    _check_positive(tau)
    return _symmetric_quadrature(
        lambda x: math.sqrt(float(potential_q(x, tau, ProblemKind.PLUS_EXP))), tol
    )


def _check_beyond_fold(tau: float):
    if not tau > solve_tau1().value:
        raise PreconditionError(f"tau must exceed tau1 (mu_1 < 0), got {tau!r}")


def scaled_first_eigenfunction(y, tau: float):
    """phi_1(y / tau) / tau; tends to sech y as tau grows."""
    _check_beyond_fold(tau)
    if np.any(np.abs(np.asarray(y, dtype=float)) > tau):
        raise DomainError(f"|y| must not exceed tau={tau!r}, got {y!r}")
    phi = eigenfunction(mu_exact(1, tau, ProblemKind.PLUS_EXP))
    return phi.evaluate_raw(np.asarray(y, dtype=float) / tau) / tau


def limit_profile(j: int, x, kind: ProblemKind):
    """
    Pointwise limit of phi_j: as tau -> inf for PLUS_EXP (j >= 2, x != 0),
    as tau -> pi/2 for MINUS_EXP (j >= 1, |x| < 1).
    """
    check_x(x)
    xa = np.asarray(x, dtype=float)
    if kind is ProblemKind.PLUS_EXP:
        if j < 2:
            raise PreconditionError("the PLUS_EXP limit profile needs j >= 2")
        if np.any(xa == 0.0):
            raise DomainError("the PLUS_EXP limit profile is discontinuous at x = 0")
        shift = np.where(xa > 0.0, HALF_PI * (j + 1), HALF_PI * (j - 1))
        return np.sin(HALF_PI * (j - 1) * xa + shift)

    if j < 1:
        raise PreconditionError("j must be >= 1")
    if np.any(np.abs(xa) >= 1.0):
        raise DomainError("the MINUS_EXP limit profile is defined on the open interval (-1, 1)")
    t = np.tan(HALF_PI * xa)
    return np.sqrt((j + 1) ** 2 + t * t) * np.sin(
        HALF_PI * (j + 1) * xa - np.arctan(t / (j + 1)) + HALF_PI * j
    )


def limit_profile_deviation(j: int, tau: float, kind: ProblemKind, x: Sequence[float]) -> float:
    """sup over x of |phi_j(x; tau) - limit_profile(j, x)| with phi_j in its raw form."""
    xa = np.asarray(x, dtype=float)
    phi = eigenfunction(mu_exact(j, tau, kind))
    return float(np.max(np.abs(phi.evaluate_raw(xa) - limit_profile(j, xa, kind))))


def weak_limit_check(tau: float, test_fn: Callable[[float], float], tol: float = QUAD_TOL) -> float:
    """integral_{-1}^{1} phi_1(x) g(x) dx; tends to pi g(0) as tau grows."""
    _check_beyond_fold(tau)
    phi = eigenfunction(mu_exact(1, tau, ProblemKind.PLUS_EXP))

    def integrand(x):
        return float(phi.evaluate_raw(x)) * float(test_fn(x))

    return adaptive_simpson(integrand, -1.0, 0.0, 0.5 * tol) + adaptive_simpson(
        integrand, 0.0, 1.0, 0.5 * tol
    )


def mu_limit_targets(j: int, kind: ProblemKind) -> Tuple[float, float]:
    """Limits of sqrt(mu_j) at the two ends of the tau range (-inf stands for mu_1 -> -inf)."""
    if j < 1:
        raise PreconditionError("j must be >= 1")
    low = HALF_PI * j
    if kind is ProblemKind.MINUS_EXP:
        return low, HALF_PI * (j + 1)
    if j == 1:
        return low, -math.inf
    return low, HALF_PI * (j - 1)


def _sqrt_mu(j: int, tau: float, kind: ProblemKind) -> float:
    return math.sqrt(mu_exact(j, tau, kind).mu)


def eigenvalue_limit_reports(kind: ProblemKind, j_values: Iterable[int]) -> List[LimitReport]:
    """
    sqrt(mu_j) near both ends of the tau range against ``mu_limit_targets``.

    PLUS_EXP approaches its large-tau limit from above at rate about
    arctan(sqrt(mu_j) / (tau tanh tau)), so the tau = 30 row is held to that
    bound and the tau = 500 row to 0.02.
    """
    reports = []
    for j in j_values:
        low, high = mu_limit_targets(j, kind)
        reports.append(
            LimitReport(f"sqrt_mu_{j}", SMALL_TAU, _sqrt_mu(j, SMALL_TAU, kind), low, 1e-5)
        )
        if kind is ProblemKind.MINUS_EXP:
            reports.append(
                LimitReport(
                    f"sqrt_mu_{j}", MINUS_NEAR_LIMIT_TAU,
                    _sqrt_mu(j, MINUS_NEAR_LIMIT_TAU, kind), high, 1e-3,
                )
            )
            continue
        if j == 1:
            continue
        moderate, large = PLUS_LARGE_TAUS
        c = float(phase_coefficient(moderate, kind))
        reports.append(
            LimitReport(
                f"sqrt_mu_{j}", moderate, _sqrt_mu(j, moderate, kind), high,
                math.atan(HALF_PI * j / c),
            )
        )
        reports.append(LimitReport(f"sqrt_mu_{j}", large, _sqrt_mu(j, large, kind), high, 0.02))
    for report in reports:
        logger.debug("%s at tau=%r: deviation %r", report.quantity, report.tau, report.deviation)
    return reports


def first_eigenvalue_trend(taus: Sequence[float] = (10.0, 15.0, 20.0, 40.0)) -> TrendReport:
    """mu_1 along a ladder beyond the fold; it decreases without bound."""
    values = tuple(mu_exact(1, tau, ProblemKind.PLUS_EXP).mu for tau in taus)
    return TrendReport("mu_1", tuple(float(t) for t in taus), values)


def limit_approach_trend(
    j: int, kind: ProblemKind, taus: Sequence[float] = (10.0, 20.0, 40.0, 80.0)
) -> TrendReport:
    """|sqrt(mu_j) - large-tau target| along a tau ladder."""
    _, high = mu_limit_targets(j, kind)
    if not math.isfinite(high):
        raise PreconditionError("mu_1 has no finite large-tau limit")
    values = tuple(abs(_sqrt_mu(j, tau, kind) - high) for tau in taus)
    return TrendReport(f"sqrt_mu_{j}_deviation", tuple(float(t) for t in taus), values)
