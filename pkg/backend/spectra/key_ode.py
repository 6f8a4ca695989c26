"""
General-nonlinearity construction of eigenfunctions, used as a structural
check on the closed forms in ``spectrum_exact``.

For u'' + lambda f(u) = 0 with alpha = u(0) and F' = f, F(0) = 0, a solution
h(u) of the third-order key equation

    2 (F(alpha) - F(u)) h''' - 3 f(u) h'' + (3 f'(u) + 4 mu / lambda) h' + 2 f''(u) h = 0

gives eigenfunction candidates sqrt(h(u(x))) W(theta(x)) where
theta = sqrt(lambda |rho| / 2) * integral_0^x dy / h(u(y)) and W is sin/cos
(rho > 0) or cosh (rho < 0). The three exact families used here are

    e^u,  mu > 0:  h = 2 mu / lambda + e^alpha - e^u
    e^u,  mu < 0:  h = -2 mu / lambda - e^alpha + e^u
    e^-u, mu > 0:  h = 2 mu / lambda - e^-alpha + e^-u
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np

from .branch_core import ProblemKind, alpha_from_tau, check_x, lambda_of_tau, u_tau, u_value
from .constants import QUAD_TOL
from .exceptions import DomainError, PreconditionError
from .numerics import adaptive_simpson
from .spectrum_exact import Parity

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Nonlinearity:
    f: Callable[[float], float]
    f_prime: Callable[[float], float]
    f_double_prime: Callable[[float], float]
    F: Callable[[float], float]

    @classmethod
    def exponential(cls) -> "Nonlinearity":
        return cls(
            f=np.exp,
            f_prime=np.exp,
            f_double_prime=np.exp,
            F=np.expm1,
        )

    @classmethod
    def negative_exponential(cls) -> "Nonlinearity":
        return cls(
            f=lambda u: np.exp(-u),
            f_prime=lambda u: -np.exp(-u),
            f_double_prime=lambda u: np.exp(-u),
            F=lambda u: -np.expm1(-u),
        )

    @classmethod
    def for_kind(cls, kind: ProblemKind) -> "Nonlinearity":
        if kind is ProblemKind.PLUS_EXP:
            return cls.exponential()
        return cls.negative_exponential()


@dataclass(frozen=True)
class HSolution:
    """h(u) with its first three u-derivatives, tied to one (alpha, lambda, mu)."""
    h: Callable[[float], float]
    h_prime: Callable[[float], float]
    h2: Callable[[float], float]
    h3: Callable[[float], float]
    alpha: float
    lambda_: float
    mu: float


def exact_h(tau: float, mu: float, kind: ProblemKind) -> HSolution:
    """The exact key-equation solution for the solution at tau and any mu."""
    alpha = float(alpha_from_tau(tau, kind))
    lam = float(lambda_of_tau(tau, kind))
    ratio = 2.0 * mu / lam

    if kind is ProblemKind.MINUS_EXP:
        e_alpha = math.exp(-alpha)
        return HSolution(
            h=lambda u: ratio - e_alpha + np.exp(-u),
            h_prime=lambda u: -np.exp(-u),
            h2=lambda u: np.exp(-u),
            h3=lambda u: -np.exp(-u),
            alpha=alpha, lambda_=lam, mu=mu,
        )

    e_alpha = math.exp(alpha)
    if mu >= 0.0:
        return HSolution(
            h=lambda u: ratio + e_alpha - np.exp(u),
            h_prime=lambda u: -np.exp(u),
            h2=lambda u: -np.exp(u),
            h3=lambda u: -np.exp(u),
            alpha=alpha, lambda_=lam, mu=mu,
        )
    return HSolution(
        h=lambda u: -ratio - e_alpha + np.exp(u),
        h_prime=np.exp,
        h2=np.exp,
        h3=np.exp,
        alpha=alpha, lambda_=lam, mu=mu,
    )


def key_ode_terms(nl: Nonlinearity, hs: HSolution, u) -> Tuple:
    """The four terms of the key equation, in order; their sum is the residual."""
    drop = nl.F(hs.alpha) - nl.F(u)
    return (
        2.0 * drop * hs.h3(u),
        -3.0 * nl.f(u) * hs.h2(u),
        (3.0 * nl.f_prime(u) + 4.0 * hs.mu / hs.lambda_) * hs.h_prime(u),
        2.0 * nl.f_double_prime(u) * hs.h(u),
    )


def key_ode_residual(nl: Nonlinearity, hs: HSolution, u):
    return sum(key_ode_terms(nl, hs, u))


def rho_value(nl: Nonlinearity, hs: HSolution, alpha: float, lambda_: float, mu: float) -> float:
    """rho = -f(alpha) h(alpha) h'(alpha) + 2 (f'(alpha) + mu/lambda) h(alpha)^2."""
    h_a = hs.h(alpha)
    return float(
        -nl.f(alpha) * h_a * hs.h_prime(alpha)
        + 2.0 * (nl.f_prime(alpha) + mu / lambda_) * h_a * h_a
    )


def rho_closed_form(tau: float, mu: float, kind: ProblemKind) -> float:
    if kind is ProblemKind.MINUS_EXP:
        a2 = mu / tau ** 2
        return a2 * (a2 - 1.0) ** 2 * math.cos(tau) ** 6
    if mu >= 0.0:
        a2 = mu / tau ** 2
        return a2 * (a2 + 1.0) ** 2 * math.cosh(tau) ** 6
    abar2 = -mu / tau ** 2
    return -abar2 * (1.0 - abar2) ** 2 * math.cosh(tau) ** 6


def h_profile(x, tau: float, mu: float, kind: ProblemKind):
    """h(u(x)) in closed form: cosh^2 tau (a^2 +- tanh^2) or cos^2 tau (a^2 + tan^2)."""
    check_x(x)
    tx = np.multiply(tau, x)
    if kind is ProblemKind.MINUS_EXP:
        return math.cos(tau) ** 2 * (mu / tau ** 2 + np.tan(tx) ** 2)
    if mu >= 0.0:
        return math.cosh(tau) ** 2 * (mu / tau ** 2 + np.tanh(tx) ** 2)
    return math.cosh(tau) ** 2 * (-mu / tau ** 2 - np.tanh(tx) ** 2)


def first_integral_residual(
    nl: Nonlinearity, hs: HSolution, tau: float, mu: float, kind: ProblemKind, x,
    literal: bool = False,
):
    """
    (F(alpha) - F(u))(2 h'' h - h'^2) - f(u) h h' + 2 (f'(u) + mu/lambda) h^2 - rho
    at u = u(x). ``literal=True`` puts f(u) in the quadratic term instead of
    f'(u); for e^-u that reading does not vanish.
    """
    u = u_value(x, tau, kind)
    h = hs.h(u)
    hp = hs.h_prime(u)
    quadratic = nl.f(u) if literal else nl.f_prime(u)
    rho = rho_value(nl, hs, hs.alpha, hs.lambda_, mu)
    return (
        (nl.F(hs.alpha) - nl.F(u)) * (2.0 * hs.h2(u) * h - hp * hp)
        - nl.f(u) * h * hp
        + 2.0 * (quadratic + mu / hs.lambda_) * h * h
        - rho
    )


def validity_half_width(tau: float, mu: float) -> float:
    """artanh(abar)/tau for mu < 0, clamped to 1 (inf when abar >= 1); h(u(x)) > 0 below it."""
    abar = math.sqrt(-mu) / tau
    if abar >= 1.0:
        return math.inf
    return min(1.0, math.atanh(abar) / tau)


def _check_mu(x, tau: float, mu: float):
    if mu == 0.0:
        raise PreconditionError("the phase construction needs mu != 0")
    if mu < 0.0:
        width = validity_half_width(tau, mu)
        if np.any(np.abs(np.asarray(x)) >= width):
            raise DomainError(
                f"x={x!r} lies outside the interval |x| < {width!r} where h(u(x)) > 0"
            )


def theta_scale(tau: float, mu: float, kind: ProblemKind) -> float:
    """sqrt(lambda |rho| / 2), taking rho from the exact h."""
    nl = Nonlinearity.for_kind(kind)
    hs = exact_h(tau, mu, kind)
    rho = rho_value(nl, hs, hs.alpha, hs.lambda_, mu)
    return math.sqrt(hs.lambda_ * abs(rho) / 2.0)


def theta_numeric(
    x: float, tau: float, mu: float, kind: ProblemKind, quad_tol: float = QUAD_TOL
) -> float:
    """sqrt(lambda |rho| / 2) * integral_0^x dy / h(u(y)) by adaptive Simpson."""
    check_x(x)
    _check_mu(x, tau, mu)
    hs = exact_h(tau, mu, kind)

    def integrand(y):
        return 1.0 / float(hs.h(u_value(y, tau, kind)))

    scale = theta_scale(tau, mu, kind)
    return scale * adaptive_simpson(integrand, 0.0, float(x), quad_tol / max(scale, 1.0))


def assemble_candidate(
    x: float, tau: float, mu: float, kind: ProblemKind, parity: Parity,
    quad_tol: float = QUAD_TOL,
) -> float:
    """sqrt(h(u(x))) W(theta(x)) with W = sin (odd), cos (even) or cosh (mu < 0)."""
    parity = Parity(parity)
    if mu < 0.0 and parity is Parity.ODD:
        raise PreconditionError("mu < 0 only admits the even cosh candidate")
    theta = theta_numeric(x, tau, mu, kind, quad_tol)
    hs = exact_h(tau, mu, kind)
    root_h = math.sqrt(float(hs.h(u_value(x, tau, kind))))
    if mu < 0.0:
        return root_h * math.cosh(theta)
    if parity is Parity.ODD:
        return root_h * math.sin(theta)
    return root_h * math.cos(theta)


def mu_zero_eigenfunction(tau1: float, x):
    """tanh tau1 - x tanh(tau1 x) = (du/dtau)/2 at the fold."""
    return 0.5 * u_tau(x, tau1)
