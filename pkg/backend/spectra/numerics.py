"""
Small numerical kernels shared by the spectra modules.

Everything here works on plain floats (or numpy arrays where noted) and is
free of Django imports.
"""

import logging
import math
from typing import Callable, Tuple

import numpy as np

from .constants import QUAD_MAX_DEPTH, QUAD_TOL, ROOT_ABS_TOL, ROOT_MAX_BISECTIONS
from .exceptions import BracketError, QuadratureError

logger = logging.getLogger(__name__)

LOG2 = math.log(2.0)


def logcosh(z):
    """log(cosh z) to a few ulps for every z, without overflow.

    |z| < 1 : 0.5 log1p(sinh^2 z)
    |z| >= 1: |z| + log1p(e^{-2|z|}) - log 2

    Accepts scalars or arrays.
    """
    a = np.abs(z)
    small = np.minimum(a, 1.0)
    near = 0.5 * np.log1p(np.square(np.sinh(small)))
    far = a + np.log1p(np.exp(-2.0 * a)) - LOG2
    return np.where(a < 1.0, near, far)[()]


def logcos(z):
    """log(cos z) for |z| < pi/2; 0.5 log1p(-sin^2 z) below |z| = 1."""
    a = np.abs(z)
    small = np.minimum(a, 1.0)
    near = 0.5 * np.log1p(-np.square(np.sin(small)))
    far = np.log(np.cos(np.maximum(a, 1.0)))
    return np.where(a < 1.0, near, far)[()]


def tanh_difference(a, b, log_scale=0.0):
    """e^{log_scale} (tanh(a) - tanh(b)) for a, b >= 0.

    The scale is folded into the exponents, so the result stays finite
    whenever log_scale <= 2 min(a, b).
    """
    ea = np.exp(-2.0 * a)
    eb = np.exp(-2.0 * b)
    return (
        2.0 * (np.exp(log_scale - 2.0 * b) - np.exp(log_scale - 2.0 * a))
        / ((1.0 + ea) * (1.0 + eb))
    )


def bisect_newton(
    func: Callable[[float], float],
    dfunc: Callable[[float], float],
    lo: float,
    hi: float,
    abs_tol: float = ROOT_ABS_TOL,
    max_bisections: int = ROOT_MAX_BISECTIONS,
) -> Tuple[float, int]:
    """
    Root of ``func`` on [lo, hi] by bisection followed by one Newton step.

    The bracket must show a strict sign change. Bisection runs until the
    bracket is narrower than ``abs_tol`` (or floats stop splitting); the
    Newton step is kept only if it stays inside the final bracket and does
    not increase |func|.

    Returns:
        (root, number of bisection steps)
    """
    f_lo = func(lo)
    f_hi = func(hi)
    if f_lo == 0.0:
        return lo, 0
    if f_hi == 0.0:
        return hi, 0
    if f_lo * f_hi > 0.0:
        raise BracketError(
            f"no sign change on [{lo!r}, {hi!r}]: f(lo)={f_lo!r}, f(hi)={f_hi!r}",
            lo=lo, hi=hi, f_lo=f_lo, f_hi=f_hi,
        )
    increasing = f_lo < 0.0

    steps = 0
    while steps < max_bisections and hi - lo > abs_tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        f_mid = func(mid)
        steps += 1
        if f_mid == 0.0:
            return mid, steps
        if (f_mid < 0.0) == increasing:
            lo = mid
        else:
            hi = mid

    root = 0.5 * (lo + hi)
    f_root = func(root)
    slope = dfunc(root)
    if slope != 0.0 and math.isfinite(slope):
        polished = root - f_root / slope
        if lo <= polished <= hi and abs(func(polished)) <= abs(f_root):
            root = polished
    logger.debug("bisect_newton: root=%r after %d bisections", root, steps)
    return root, steps


def adaptive_simpson(
    func: Callable[[float], float],
    a: float,
    b: float,
    tol: float = QUAD_TOL,
    max_depth: int = QUAD_MAX_DEPTH,
) -> float:
    """
    Adaptive Simpson quadrature of ``func`` over [a, b].

    Each panel is split until the two-half estimate agrees with the whole
    within 15*tol (tolerance halves with each split); the Richardson
    correction is added on acceptance.

    Raises:
        QuadratureError: if a panel reaches ``max_depth`` without converging.
    """
    if a == b:
        return 0.0
    if a > b:
        return -adaptive_simpson(func, b, a, tol, max_depth)

    def simpson(fa, fm, fb, width):
        return width / 6.0 * (fa + 4.0 * fm + fb)

    def panel(lo, hi, f_lo, f_mid, f_hi, whole, tol, depth):
        mid = 0.5 * (lo + hi)
        left_mid = 0.5 * (lo + mid)
        right_mid = 0.5 * (mid + hi)
        f_lm = func(left_mid)
        f_rm = func(right_mid)
        left = simpson(f_lo, f_lm, f_mid, mid - lo)
        right = simpson(f_mid, f_rm, f_hi, hi - mid)
        delta = left + right - whole
        if abs(delta) <= 15.0 * tol:
            return left + right + delta / 15.0
        if depth >= max_depth:
            raise QuadratureError(
                f"adaptive Simpson did not converge on [{lo!r}, {hi!r}] "
                f"(estimate change {delta!r}, tol {tol!r})"
            )
        return (
            panel(lo, mid, f_lo, f_lm, f_mid, left, 0.5 * tol, depth + 1)
            + panel(mid, hi, f_mid, f_rm, f_hi, right, 0.5 * tol, depth + 1)
        )

    f_a = func(a)
    f_b = func(b)
    f_m = func(0.5 * (a + b))
    return panel(a, b, f_a, f_m, f_b, simpson(f_a, f_m, f_b, b - a), tol, 0)


def second_derivative_5pt(func: Callable, x, step: float = 1e-3):
    """Fourth-order central five-point approximation of func''(x)."""
    return (
        -func(x + 2.0 * step)
        + 16.0 * func(x + step)
        - 30.0 * func(x)
        + 16.0 * func(x - step)
        - func(x - 2.0 * step)
    ) / (12.0 * step * step)


def count_sign_changes(values) -> int:
    """Strict sign changes of a sampled sequence; exact zeros are skipped."""
    signs = np.sign(np.asarray(values, dtype=float))
    signs = signs[signs != 0.0]
    if signs.size < 2:
        return 0
    return int(np.count_nonzero(signs[1:] != signs[:-1]))
