"""
Exact solution curves of the two Gel'fand problems on [-1, 1].

PLUS_EXP  : u'' + lambda e^u  = 0,  u(+-1) = 0,  tau in (0, inf)
MINUS_EXP : u'' + lambda e^-u = 0,  u(+-1) = 0,  tau in (0, pi/2)

Both curves are parametrized by tau:

    PLUS_EXP : alpha = 2 log cosh tau,  lambda = 2 tau^2 / cosh^2 tau,
               u(x) = 2 log(cosh tau / cosh(tau x))
    MINUS_EXP: alpha = -2 log cos tau,  lambda = 2 tau^2 / cos^2 tau,
               u(x) = 2 log(cos(tau x) / cos tau)

with alpha = ||u||_inf = u(0). Functions accept scalars or numpy arrays for
``x`` and ``tau`` unless stated otherwise. PLUS_EXP quantities are evaluated
through ``logcosh`` so nothing overflows for tau up to 1e6, and MINUS_EXP
quantities through ``logcos``; both stay accurate to a few ulps as tau -> 0.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from .constants import MINUS_TAU_MAX, TAU1_BRACKET, TAU1_TOL
from .exceptions import DomainError
from .numerics import bisect_newton, logcos, logcosh

logger = logging.getLogger(__name__)


class ProblemKind(str, Enum):
    PLUS_EXP = "plus"    # f(u) = e^u
    MINUS_EXP = "minus"  # f(u) = e^-u

    @property
    def sign(self) -> int:
        """+1 for e^u, -1 for e^-u (the exponent sign and the sign of f'/f)."""
        return 1 if self is ProblemKind.PLUS_EXP else -1

    @property
    def tau_max(self) -> float:
        return math.inf if self is ProblemKind.PLUS_EXP else MINUS_TAU_MAX


@dataclass(frozen=True)
class BranchPoint:
    kind: ProblemKind
    tau: float
    lambda_: float
    alpha: float


@dataclass(frozen=True)
class Tau1:
    """Turning point of the PLUS_EXP curve: tau tanh tau = 1."""
    value: float
    residual: float


def check_tau(tau, kind: ProblemKind):
    t = np.asarray(tau, dtype=float)
    if np.any(np.isnan(t)) or np.any(t < 0.0):
        raise DomainError(f"tau must be >= 0, got {tau!r}")
    if np.any(t > kind.tau_max):
        raise DomainError(
            f"tau must be below {kind.tau_max!r} for kind={kind.value}, got {tau!r}"
        )


def check_x(x):
    if np.any(np.abs(np.asarray(x, dtype=float)) > 1.0):
        raise DomainError(f"x must lie in [-1, 1], got {x!r}")


def alpha_from_tau(tau, kind: ProblemKind):
    """alpha = ||u||_inf as a function of tau."""
    check_tau(tau, kind)
    if kind is ProblemKind.PLUS_EXP:
        return 2.0 * logcosh(tau)
    return -2.0 * logcos(tau)


def tau_from_alpha(alpha, kind: ProblemKind):
    """Inverse of ``alpha_from_tau``: arcosh(e^{alpha/2}) or arctan(sqrt(e^alpha - 1))."""
    a = np.asarray(alpha, dtype=float)
    if np.any(np.isnan(a)) or np.any(a < 0.0):
        raise DomainError(f"alpha must be >= 0, got {alpha!r}")
    if kind is ProblemKind.PLUS_EXP:
        # sinh tau = sqrt(e^alpha - 1) below alpha = 1; above it
        # arcosh(y) = log(y + sqrt(y^2 - 1)) rewritten around y = e^{alpha/2}
        near = np.arcsinh(np.sqrt(np.expm1(np.minimum(a, 1.0))))
        far = 0.5 * a + np.log1p(np.sqrt(-np.expm1(-a)))
        return np.where(a < 1.0, near, far)[()]
    return np.arctan(np.sqrt(np.expm1(a)))


def lambda_of_tau(tau, kind: ProblemKind):
    check_tau(tau, kind)
    if kind is ProblemKind.PLUS_EXP:
        return 2.0 * np.square(tau) * np.exp(-2.0 * logcosh(tau))
    return 2.0 * np.square(tau) / np.square(np.cos(tau))


def log_lambda_of_tau(tau, kind: ProblemKind):
    """log(lambda(tau)); finite where lambda itself underflows (PLUS_EXP, large tau)."""
    check_tau(tau, kind)
    if np.any(np.asarray(tau) == 0.0):
        raise DomainError("log lambda is undefined at tau = 0")
    if kind is ProblemKind.PLUS_EXP:
        return 2.0 * (np.log(tau) + 0.5 * math.log(2.0) - logcosh(tau))
    return math.log(2.0) + 2.0 * np.log(tau) - 2.0 * logcos(tau)


def lambda_derivative(tau, kind: ProblemKind):
    """d lambda / d tau.

    PLUS_EXP changes sign once, at tau1; MINUS_EXP is always increasing.
    """
    check_tau(tau, kind)
    if kind is ProblemKind.PLUS_EXP:
        sech2 = np.exp(-2.0 * logcosh(tau))
        return 4.0 * tau * sech2 * (1.0 - tau * np.tanh(tau))
    return 4.0 * tau * (1.0 + tau * np.tan(tau)) / np.square(np.cos(tau))


def u_value(x, tau, kind: ProblemKind):
    check_x(x)
    check_tau(tau, kind)
    if kind is ProblemKind.PLUS_EXP:
        return 2.0 * (logcosh(tau) - logcosh(np.multiply(tau, x)))
    return 2.0 * (logcos(np.multiply(tau, x)) - logcos(tau))


def potential_q(x, tau, kind: ProblemKind):
    """q = lambda e^{+-u}: 2 tau^2 / cosh^2(tau x) or 2 tau^2 / cos^2(tau x)."""
    check_x(x)
    check_tau(tau, kind)
    tx = np.multiply(tau, x)
    if kind is ProblemKind.PLUS_EXP:
        return 2.0 * np.square(tau) * np.exp(-2.0 * logcosh(tx))
    return 2.0 * np.square(tau) / np.square(np.cos(tx))


def linearized_potential(x, tau, kind: ProblemKind):
    """lambda f'(u(x)): the coefficient in phi'' + lambda f'(u) phi = -mu phi.

    Equal to +q for e^u and -q for e^-u (f'(u) = -e^-u).
    """
    return kind.sign * potential_q(x, tau, kind)


def u_tau(x, tau):
    """d u / d tau for PLUS_EXP: 2 (tanh tau - x tanh(tau x))."""
    check_x(x)
    check_tau(tau, ProblemKind.PLUS_EXP)
    return 2.0 * (np.tanh(tau) - np.multiply(x, np.tanh(np.multiply(tau, x))))


def branch_point(tau: float, kind: ProblemKind) -> BranchPoint:
    return BranchPoint(
        kind=kind,
        tau=float(tau),
        lambda_=float(lambda_of_tau(tau, kind)),
        alpha=float(alpha_from_tau(tau, kind)),
    )


def alpha_lambda_curve(alpha, kind: ProblemKind):
    """lambda as a function of alpha = ||u||_inf, without going through tau.

    PLUS_EXP : 2 e^{-alpha} arcosh^2(e^{alpha/2})
    MINUS_EXP: 2 e^{alpha} arctan^2(sqrt(e^alpha - 1))
    """
    a = np.asarray(alpha, dtype=float)
    if np.any(a < 0.0):
        raise DomainError(f"alpha must be >= 0, got {alpha!r}")
    if kind is ProblemKind.PLUS_EXP:
        return 2.0 * np.exp(-a) * np.square(np.arccosh(np.exp(0.5 * a)))
    return 2.0 * np.exp(a) * np.square(np.arctan(np.sqrt(np.expm1(a))))


def _turning_point_g(tau: float) -> float:
    return tau * math.tanh(tau) - 1.0


def _turning_point_dg(tau: float) -> float:
    return math.tanh(tau) + tau / math.cosh(tau) ** 2


@lru_cache(maxsize=1)
def solve_tau1() -> Tau1:
    """Unique positive root of tau tanh tau = 1 (the fold of the PLUS_EXP curve)."""
    lo, hi = TAU1_BRACKET
    assert _turning_point_g(lo) < 0.0 < _turning_point_g(hi), "tau1 bracket lost its sign change"
    value, steps = bisect_newton(_turning_point_g, _turning_point_dg, lo, hi, abs_tol=TAU1_TOL)
    residual = _turning_point_g(value)
    logger.debug("tau1=%r residual=%r (%d bisections)", value, residual, steps)
    return Tau1(value=value, residual=residual)
