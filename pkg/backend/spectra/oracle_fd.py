"""
Finite-difference eigensolver for -phi'' - V(x) phi = mu phi, phi(+-1) = 0,
with V = lambda f'(u) taken from ``branch_core``.

Second-order central differences on x_i = -1 + i h (i = 1..n, h = 2/(n+1))
give a symmetric tridiagonal matrix. Its lowest eigenvalues are found by
bisection on the Sturm count (number of negative pivots of T - sI), and
two meshes n, 2n+1 (h halved) are combined by Richardson extrapolation.
Nothing here uses the closed-form spectrum.
"""

import logging
from dataclasses import dataclass
from typing import Callable, List, Optional

import numpy as np
from scipy.linalg import LinAlgError, solve_banded

from .branch_core import ProblemKind, check_tau, linearized_potential
from .constants import ORACLE_BISECTION_TOL, ORACLE_MAX_K, ZERO_PIVOT_SCALE
from .exceptions import PreconditionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TridiagonalOperator:
    n: int
    h: float
    diag: np.ndarray
    offdiag: np.ndarray

    @property
    def x(self) -> np.ndarray:
        return -1.0 + self.h * np.arange(1, self.n + 1)

    def gershgorin_bounds(self):
        radius = np.zeros(self.n)
        radius[:-1] += np.abs(self.offdiag)
        radius[1:] += np.abs(self.offdiag)
        return float(np.min(self.diag - radius)), float(np.max(self.diag + radius))


@dataclass(frozen=True)
class OracleEigenResult:
    mu_values: np.ndarray
    n: int
    extrapolated: bool


def refined_size(n: int) -> int:
    """Interior point count with half the mesh width of n."""
    return 2 * n + 1


def discretize(
    tau: Optional[float],
    kind: Optional[ProblemKind],
    n: int,
    coefficient: Optional[Callable] = None,
) -> TridiagonalOperator:
    """
    Tridiagonal matrix of -d^2/dx^2 - V on n interior points.

    ``coefficient`` replaces V(x) = lambda f'(u(x)) (pass ``lambda x: 0*x``
    for the free Laplacian); tau and kind are then ignored.
    """
    if n < 3:
        raise PreconditionError(f"need at least 3 interior points, got n={n}")
    h = 2.0 / (n + 1)
    x = -1.0 + h * np.arange(1, n + 1)
    if coefficient is None:
        check_tau(tau, kind)
        v = linearized_potential(x, tau, kind)
    else:
        v = np.asarray(coefficient(x), dtype=float) * np.ones(n)
    inv_h2 = 1.0 / (h * h)
    return TridiagonalOperator(
        n=n,
        h=h,
        diag=2.0 * inv_h2 - v,
        offdiag=np.full(n - 1, -inv_h2),
    )


def count_below(T: TridiagonalOperator, s: float) -> int:
    """Number of eigenvalues of T strictly below s (negative pivots of T - sI)."""
    diag = T.diag.tolist()
    off2 = np.square(T.offdiag).tolist()
    tiny = ZERO_PIVOT_SCALE * abs(2.0 / (T.h * T.h))
    d = diag[0] - s
    if d == 0.0:
        d = -tiny
    count = 1 if d < 0.0 else 0
    for i in range(1, T.n):
        d = diag[i] - s - off2[i - 1] / d
        if d == 0.0:
            d = -tiny
        if d < 0.0:
            count += 1
    return count


def lowest_eigenvalues(
    T: TridiagonalOperator, k: int, tol: float = ORACLE_BISECTION_TOL
) -> OracleEigenResult:
    """The k smallest eigenvalues of T, each bisected to a bracket of width <= tol."""
    if not 1 <= k <= min(T.n, ORACLE_MAX_K):
        raise PreconditionError(f"k must lie in [1, {min(T.n, ORACLE_MAX_K)}], got {k}")
    g_lo, g_hi = T.gershgorin_bounds()
    samples = [(g_lo - 1.0, 0), (g_hi + 1.0, T.n)]

    def counted_below(s):
        c = count_below(T, s)
        samples.append((s, c))
        return c

    # Upper bound for the k lowest without bisecting the whole Gershgorin range.
    top = max(1.0, g_lo + 1.0)
    while top < g_hi and counted_below(top) < k:
        top = g_lo + 4.0 * (top - g_lo)

    values: List[float] = []
    for index in range(1, k + 1):
        lo = max(s for s, c in samples if c < index)
        hi = min(s for s, c in samples if c >= index)
        while hi - lo > tol:
            mid = 0.5 * (lo + hi)
            if mid <= lo or mid >= hi:
                break
            if counted_below(mid) < index:
                lo = mid
            else:
                hi = mid
        values.append(0.5 * (lo + hi))
    logger.debug("lowest_eigenvalues: n=%d k=%d, %d Sturm counts", T.n, k, len(samples) - 2)
    return OracleEigenResult(mu_values=np.array(values), n=T.n, extrapolated=False)


def richardson(mu_n, mu_2n):
    """(4 mu_2n - mu_n) / 3: cancels the O(h^2) term when h is halved."""
    return (4.0 * np.asarray(mu_2n) - np.asarray(mu_n)) / 3.0


def oracle_eigenvalues(
    tau: float,
    kind: ProblemKind,
    k: int,
    n: int,
    tol: float = ORACLE_BISECTION_TOL,
    extrapolate: bool = True,
    coefficient: Optional[Callable] = None,
) -> OracleEigenResult:
    """The k lowest eigenvalues at n points, Richardson-extrapolated with 2n+1."""
    coarse = lowest_eigenvalues(discretize(tau, kind, n, coefficient), k, tol)
    if not extrapolate:
        return coarse
    fine = lowest_eigenvalues(discretize(tau, kind, refined_size(n), coefficient), k, tol)
    return OracleEigenResult(
        mu_values=richardson(coarse.mu_values, fine.mu_values),
        n=n,
        extrapolated=True,
    )


def inverse_iteration(T: TridiagonalOperator, mu: float, iters: int = 3) -> np.ndarray:
    """
    Unit-norm eigenvector of T for the eigenvalue nearest ``mu``.

    The sign is fixed so the entry at the smallest positive grid point is
    positive.
    """
    if iters < 2:
        raise PreconditionError("inverse iteration needs iters >= 2")
    banded = np.zeros((3, T.n))
    banded[0, 1:] = T.offdiag
    banded[2, :-1] = T.offdiag
    # Deterministic start with both even and odd components.
    v = np.linspace(1.0, 2.0, T.n)
    v /= np.linalg.norm(v)
    shift = mu
    for _ in range(iters):
        banded[1] = T.diag - shift
        try:
            w = solve_banded((1, 1), banded, v)
        except (LinAlgError, ValueError):
            shift = mu + 1e-10 * max(1.0, abs(mu))
            logger.debug("inverse_iteration: singular shift, retrying at %r", shift)
            banded[1] = T.diag - shift
            w = solve_banded((1, 1), banded, v)
        if not np.all(np.isfinite(w)):
            shift = mu + 1e-10 * max(1.0, abs(mu))
            continue
        v = w / np.linalg.norm(w)
    x = T.x
    anchor = int(np.argmin(np.where(x > 0.0, x, np.inf)))
    if v[anchor] < 0.0:
        v = -v
    return v
