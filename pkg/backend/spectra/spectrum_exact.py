"""
Exact eigenvalues and eigenfunctions of the linearized problems

    phi'' + lambda f'(u) phi = -mu phi,   phi(+-1) = 0,

at every point of the two solution curves.

Eigenvalues. With s = sqrt(mu) and c = phase_coefficient(tau, kind) the
Dirichlet condition is the phase condition

    PLUS_EXP : s + arctan(c / s) = (pi/2) j,   (pi/2)(j-1) < s < (pi/2) j
    MINUS_EXP: s - arctan(c / s) = (pi/2) j,   (pi/2) j < s < (pi/2)(j+1)

solved here in the equivalent pole-free form (arctan(c/s) = pi/2 - arctan(s/c))

    PLUS_EXP : G(s) = s - arctan(s / c) - (pi/2)(j-1)
    MINUS_EXP: G(s) = s + arctan(s / c) - (pi/2)(j+1)

Both G are strictly increasing on their brackets. For PLUS_EXP and j = 1 the
first eigenvalue is positive below the fold tau1 (c < 1), zero at the fold and
negative beyond it, where s = sqrt(-mu) solves H(s) = tanh s - s / c = 0.

Eigenfunctions are the closed forms; ``Normalization.RAW`` returns them
exactly as written, with no cosh(tau) or cos(tau) prefactor.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, List, Tuple

import numpy as np

from .branch_core import ProblemKind, check_tau, check_x, solve_tau1
from .constants import (
    BRACKET_EPSILON,
    FOLD_WINDOW,
    HALF_PI,
    ROOT_ABS_TOL,
    ROOT_MAX_BISECTIONS,
    SUP_GRID_SIZE,
)
from .exceptions import DomainError, PreconditionError
from .numerics import adaptive_simpson, bisect_newton, count_sign_changes, tanh_difference

logger = logging.getLogger(__name__)


class Parity(str, Enum):
    EVEN = "even"
    ODD = "odd"


class Normalization(str, Enum):
    RAW = "raw"
    SUP_ONE = "sup-one"
    L2_ONE = "l2-one"


@dataclass(frozen=True)
class RootSolveConfig:
    abs_tol: float = ROOT_ABS_TOL
    max_bisections: int = ROOT_MAX_BISECTIONS
    bracket_epsilon: float = BRACKET_EPSILON

    def __post_init__(self):
        if not self.abs_tol > 0.0:
            raise PreconditionError(f"abs_tol must be positive, got {self.abs_tol!r}")
        if not 0.0 < self.bracket_epsilon < 1e-3:
            raise PreconditionError(
                f"bracket_epsilon must lie in (0, 1e-3), got {self.bracket_epsilon!r}"
            )
        if self.max_bisections < 1:
            raise PreconditionError("max_bisections must be >= 1")


DEFAULT_ROOT_CONFIG = RootSolveConfig()


@dataclass(frozen=True)
class EigenPair:
    kind: ProblemKind
    j: int
    tau: float
    mu: float

    @property
    def sqrt_abs_mu(self) -> float:
        return math.sqrt(abs(self.mu))

    @property
    def regime(self) -> str:
        if self.mu > 0.0:
            return "positive"
        if self.mu < 0.0:
            return "negative"
        return "zero"

    @property
    def parity(self) -> Parity:
        return Parity.EVEN if self.j % 2 == 1 else Parity.ODD


def phase_coefficient(tau, kind: ProblemKind):
    """c = tau tanh tau (PLUS_EXP) or tau tan tau (MINUS_EXP)."""
    check_tau(tau, kind)
    if kind is ProblemKind.PLUS_EXP:
        return tau * np.tanh(tau)
    return tau * np.tan(tau)


def phase_bracket(j: int, kind: ProblemKind) -> Tuple[float, float]:
    """Open interval containing sqrt(mu_j) whenever mu_j > 0."""
    if kind is ProblemKind.PLUS_EXP:
        return HALF_PI * (j - 1), HALF_PI * j
    return HALF_PI * j, HALF_PI * (j + 1)


def phase_function(j: int, c: float, kind: ProblemKind) -> Tuple[Callable, Callable]:
    """G(s) and G'(s) for the phase condition of eigenvalue j."""
    if kind is ProblemKind.PLUS_EXP:
        offset = HALF_PI * (j - 1)

        def g(s):
            return s - math.atan(s / c) - offset

        def dg(s):
            return 1.0 - c / (c * c + s * s)
    else:
        offset = HALF_PI * (j + 1)

        def g(s):
            return s + math.atan(s / c) - offset

        def dg(s):
            return 1.0 + c / (c * c + s * s)
    return g, dg


def negative_function(c: float) -> Tuple[Callable, Callable]:
    """H(s) = tanh s - s / c and H'(s)."""

    def h(s):
        return math.tanh(s) - s / c

    def dh(s):
        return 1.0 / math.cosh(s) ** 2 - 1.0 / c if s < 350.0 else -1.0 / c

    return h, dh


def _check_j(j: int):
    if int(j) != j or j < 1:
        raise PreconditionError(f"eigenvalue index j must be an integer >= 1, got {j!r}")


def solve_phase_offset(
    c: float, anchor: float, toward: float, cfg: RootSolveConfig = DEFAULT_ROOT_CONFIG
) -> float:
    """
    Distance delta of the phase root from its small-c limit ``anchor``.

    With s = anchor - toward * delta (toward = +1 for PLUS_EXP, where the
    root approaches the upper end hi; -1 for MINUS_EXP, approaching lo) the
    phase condition reads

        delta = arctan(c / (anchor - toward * delta)),

    which stays resolvable after c / anchor drops below the spacing of s.
    """
    if not c > 0.0 or not anchor > 0.0:
        raise PreconditionError(f"need c > 0 and anchor > 0, got c={c!r}, anchor={anchor!r}")

    def f(delta):
        return delta - math.atan(c / (anchor - toward * delta))

    def df(delta):
        y = anchor - toward * delta
        return 1.0 - toward * c / (y * y + c * c)

    upper = 2.0 * c / anchor
    delta, _ = bisect_newton(f, df, 0.0, upper, abs_tol=cfg.abs_tol * upper, max_bisections=cfg.max_bisections)
    logger.debug("phase offset c=%r anchor=%r: delta=%r", c, anchor, delta)
    return delta


def solve_phase_root(
    j: int, c: float, kind: ProblemKind, cfg: RootSolveConfig = DEFAULT_ROOT_CONFIG
) -> float:
    """
    s = sqrt(mu_j) from the phase condition, for every case with mu_j > 0.

    The open bracket is inset by ``cfg.bracket_epsilon`` of its width. Below
    c = ``cfg.bracket_epsilon`` * width the root sits within the inset of its
    limiting endpoint and is found through ``solve_phase_offset``. When c is
    so large that the root sits inside the inset, the exact endpoint is used
    instead, provided G is strictly signed there.

    Raises:
        BracketError: no sign change, e.g. PLUS_EXP with j = 1 and c >= 1.
    """
    _check_j(j)
    if not c > 0.0:
        raise PreconditionError(f"phase coefficient c must be positive, got {c!r}")
    g, dg = phase_function(j, c, kind)
    lo, hi = phase_bracket(j, kind)
    inset = cfg.bracket_epsilon * (hi - lo)
    if c < inset:
        if kind is ProblemKind.PLUS_EXP:
            return hi - solve_phase_offset(c, hi, 1.0, cfg)
        return lo + solve_phase_offset(c, lo, -1.0, cfg)
    a, b = lo + inset, hi - inset
    if g(a) >= 0.0 and lo > 0.0 and g(lo) < 0.0:
        logger.debug("phase root j=%d c=%r: using closed lower endpoint", j, c)
        a = lo
    if g(b) <= 0.0 and g(hi) > 0.0:
        logger.debug("phase root j=%d c=%r: using closed upper endpoint", j, c)
        b = hi
    s, _ = bisect_newton(g, dg, a, b, abs_tol=cfg.abs_tol, max_bisections=cfg.max_bisections)
    if abs(g(s)) > cfg.abs_tol:
        logger.warning("phase root j=%d c=%r: |G(s)|=%r above abs_tol", j, c, abs(g(s)))
    return s


def solve_negative_root(c: float, cfg: RootSolveConfig = DEFAULT_ROOT_CONFIG) -> float:
    """
    s = sqrt(-mu_1) for PLUS_EXP beyond the fold: tanh s = s / c on (0, c).

    Raises:
        PreconditionError: if c <= 1 (tau <= tau1), where no positive root exists.
    """
    if not c > 1.0:
        raise PreconditionError(f"negative first eigenvalue needs c > 1, got {c!r}")
    h, dh = negative_function(c)
    lo = cfg.bracket_epsilon * c
    hi = c
    if h(hi) == 0.0:
        # tanh c rounds to 1: the root coincides with c in binary64.
        return hi
    s, _ = bisect_newton(h, dh, lo, hi, abs_tol=cfg.abs_tol, max_bisections=cfg.max_bisections)
    return s


def mu_exact(
    j: int, tau: float, kind: ProblemKind, cfg: RootSolveConfig = DEFAULT_ROOT_CONFIG
) -> EigenPair:
    """The j-th eigenvalue at the solution with parameter tau."""
    _check_j(j)
    check_tau(tau, kind)
    if not tau > 0.0:
        raise DomainError("tau must be positive")
    tau = float(tau)
    c = float(phase_coefficient(tau, kind))

    if kind is ProblemKind.PLUS_EXP and j == 1:
        tau1 = solve_tau1().value
        if abs(tau - tau1) <= FOLD_WINDOW:
            return EigenPair(kind=kind, j=1, tau=tau, mu=0.0)
        if tau > tau1:
            s = solve_negative_root(c, cfg)
            return EigenPair(kind=kind, j=1, tau=tau, mu=-s * s)

    s = solve_phase_root(j, c, kind, cfg)
    return EigenPair(kind=kind, j=j, tau=tau, mu=s * s)


def spectrum(
    tau: float, kind: ProblemKind, j_max: int, cfg: RootSolveConfig = DEFAULT_ROOT_CONFIG
) -> List[EigenPair]:
    return [mu_exact(j, tau, kind, cfg) for j in range(1, j_max + 1)]


def eigenvalue_bracket(j: int, tau: float, kind: ProblemKind) -> Tuple[float, float]:
    """Bracket on mu_j itself (not sqrt(mu_j))."""
    _check_j(j)
    if kind is ProblemKind.PLUS_EXP and j == 1:
        tau1 = solve_tau1().value
        if abs(tau - tau1) <= FOLD_WINDOW:
            return 0.0, 0.0
        if tau > tau1:
            c = float(phase_coefficient(tau, kind))
            return -c * c, 0.0
    lo, hi = phase_bracket(j, kind)
    return lo * lo, hi * hi


def equation_residual(pair: EigenPair) -> float:
    """|G(sqrt mu)| or |H(sqrt(-mu))|; zero for the exact fold eigenvalue."""
    if pair.mu == 0.0:
        return 0.0
    c = float(phase_coefficient(pair.tau, pair.kind))
    s = pair.sqrt_abs_mu
    if pair.mu < 0.0:
        h, _ = negative_function(c)
        return abs(h(s))
    g, _ = phase_function(pair.j, c, pair.kind)
    return abs(g(s))


def stability(tau: float, kind: ProblemKind, cfg: RootSolveConfig = DEFAULT_ROOT_CONFIG) -> str:
    """Linear stability of the solution at tau, read off the sign of mu_1."""
    mu1 = mu_exact(1, tau, kind, cfg).mu
    if mu1 > 0.0:
        return "stable"
    if mu1 < 0.0:
        return "unstable"
    return "neutral"


def _raw_positive_plus(x, tau, s, j):
    t = np.tanh(np.multiply(tau, x))
    amplitude = np.sqrt((s / tau) ** 2 + t * t)
    return amplitude * np.sin(s * x + np.arctan(tau * t / s) + HALF_PI * j)


def _raw_positive_minus(x, tau, s, j):
    # Anchored at x = 1, where theta(1) = (pi/2) j: sin(theta(x) + (pi/2) j)
    # = (-1)^j sin(theta(x) - theta(1)) on 0 <= x <= 1, extended by parity.
    x = np.asarray(x, dtype=float)
    ax = np.abs(x)
    tx = tau * ax
    t = np.tan(tx)
    a = tau * t / s
    b = tau * math.tan(tau) / s
    # arctan a - arctan b with tan(tau x) - tan(tau) = sin(tau (x - 1)) / (cos(tau x) cos(tau))
    gap = tau * np.sin(tau * (ax - 1.0)) / (np.cos(tx) * math.cos(tau) * s)
    delta_theta = s * (ax - 1.0) - np.arctan(gap / (1.0 + a * b))
    amplitude = np.sqrt((s / tau) ** 2 + t * t)
    values = (-1.0) ** j * amplitude * np.sin(delta_theta)
    mirror = 1.0 if j % 2 == 1 else -1.0
    return np.where(x < 0.0, mirror * values, values)[()]


def _raw_fold(x, tau1):
    return np.tanh(tau1) - x * np.tanh(np.multiply(tau1, x))


def _raw_negative(x, tau, s):
    # s cosh(s x) - tau sinh(s x) tanh(tau x)
    #   = 1/2 [ (s - tau tanh(tau x)) e^{s|x|} + (s + tau tanh(tau|x|)) e^{-s|x|} ]
    # with s - tau tanh(tau x) = (s - c) + tau (tanh tau - tanh(tau x)) and
    # s - c = -c (1 - tanh s) from tanh s = s / c; every exponent is <= 0.
    ax = np.abs(x)
    c = tau * math.tanh(tau)
    e2s = math.exp(-2.0 * s)
    growing_a = -2.0 * c * np.exp(s * (ax - 2.0)) / (1.0 + e2s)
    growing_b = tau * tanh_difference(tau, tau * ax, log_scale=s * ax)
    decaying = (s + tau * np.tanh(tau * ax)) * np.exp(-s * ax)
    return 0.5 * (growing_a + growing_b + decaying)


def raw_evaluator(pair: EigenPair) -> Callable:
    """phi_j(x) exactly as the closed forms print it."""
    tau = pair.tau
    s = pair.sqrt_abs_mu
    j = pair.j
    if pair.kind is ProblemKind.MINUS_EXP:
        return lambda x: _raw_positive_minus(x, tau, s, j)
    if pair.mu > 0.0:
        return lambda x: _raw_positive_plus(x, tau, s, j)
    if pair.mu == 0.0:
        return lambda x: _raw_fold(x, tau)
    return lambda x: _raw_negative(x, tau, s)


@dataclass(frozen=True)
class EigenfunctionProfile:
    """Callable phi_j on [-1, 1]; ``scale`` turns the raw closed form into the
    requested normalization."""
    pair: EigenPair
    parity: Parity
    normalization: Normalization
    scale: float
    raw: Callable = field(repr=False, compare=False)

    def __call__(self, x):
        check_x(x)
        return self.scale * self.raw(x)

    def evaluate_raw(self, x):
        check_x(x)
        return self.raw(x)

    def sample(self, grid_size: int):
        x = np.linspace(-1.0, 1.0, grid_size)
        return x, self(x)


def sup_norm(raw: Callable, grid_size: int = SUP_GRID_SIZE) -> float:
    return float(np.max(np.abs(raw(np.linspace(-1.0, 1.0, grid_size)))))


def l2_norm(raw: Callable, tol: float = 1e-12) -> float:
    def square(x):
        return float(raw(x)) ** 2

    return math.sqrt(adaptive_simpson(square, -1.0, 0.0, tol) + adaptive_simpson(square, 0.0, 1.0, tol))


def eigenfunction(
    pair: EigenPair, normalization: Normalization = Normalization.RAW
) -> EigenfunctionProfile:
    normalization = Normalization(normalization)
    raw = raw_evaluator(pair)
    if normalization is Normalization.SUP_ONE:
        scale = 1.0 / sup_norm(raw)
    elif normalization is Normalization.L2_ONE:
        scale = 1.0 / l2_norm(raw)
    else:
        scale = 1.0
    return EigenfunctionProfile(
        pair=pair, parity=pair.parity, normalization=normalization, scale=scale, raw=raw
    )


def phase_theta(x, pair: EigenPair):
    """
    The phase theta(x) of the closed-form construction.

    mu > 0: sqrt(mu) x +- arctan(tau T(tau x) / sqrt(mu)), T = tanh or tan.
    mu < 0: the logarithmic form, valid only where |tanh(tau x)| < abar,
    abar = sqrt(-mu) / tau.
    """
    check_x(x)
    if pair.mu == 0.0:
        raise PreconditionError("the phase is undefined for mu = 0")
    tau = pair.tau
    s = pair.sqrt_abs_mu
    tx = np.multiply(tau, x)
    if pair.mu > 0.0:
        if pair.kind is ProblemKind.PLUS_EXP:
            return s * np.asarray(x) + np.arctan(tau * np.tanh(tx) / s)
        return s * np.asarray(x) - np.arctan(tau * np.tan(tx) / s)

    abar = s / tau
    t = np.tanh(tx)
    if np.any(np.abs(t) >= abar):
        raise DomainError(
            f"x={x!r} lies outside the validity interval |x| < artanh({abar!r})/tau "
            "of the logarithmic phase"
        )
    if abar == 1.0:
        raise PreconditionError("abar = 1 gives rho = 0; no phase exists")
    log_term = 0.5 * np.log((abar + t) / (abar - t))
    if abar > 1.0:
        return s * np.asarray(x) - log_term
    return -s * np.asarray(x) + log_term


def crossing_grid(pair: EigenPair, grid_size: int) -> np.ndarray:
    """
    Sample points in the open interval (-1, 1) for counting zeros of phi_j.

    A uniform grid plus geometric clusters on the layer where the phase
    turns fastest: |x| ~ 1/tau around the origin for PLUS_EXP, and
    1 - |x| ~ (pi/2 - tau)/tau at the ends for MINUS_EXP.
    """
    uniform = np.linspace(-1.0, 1.0, grid_size + 2)[1:-1]
    if pair.kind is ProblemKind.PLUS_EXP:
        width = min(1.0, 1.0 / pair.tau)
        offsets = np.geomspace(1e-3 * width, 1.0, grid_size)
        layer = np.concatenate([-offsets, offsets])
    else:
        width = min(1.0, (HALF_PI - pair.tau) / pair.tau)
        offsets = np.geomspace(1e-3 * width, 1.0, grid_size)
        layer = np.concatenate([offsets - 1.0, 1.0 - offsets])
    x = np.unique(np.concatenate([uniform, layer]))
    return x[np.abs(x) < 1.0]


def zero_crossings(profile: EigenfunctionProfile, grid_size: int = 4096) -> int:
    """Strict sign changes of phi_j on ``crossing_grid``."""
    if grid_size < 64 * profile.pair.j:
        raise PreconditionError(f"grid_size must be >= {64 * profile.pair.j}, got {grid_size}")
    return count_sign_changes(profile.raw(crossing_grid(profile.pair, grid_size)))

