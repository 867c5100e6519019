"""Statistical diagnostics: KS normality check, one-tailed paired t-test,
RMSE, sample covariance and SPD inversion with a ridge fallback.

The KS check standardizes by the sample mean and standard deviation and, by
default, reports the plain asymptotic Kolmogorov p-value.  Because the
parameters are estimated from the same sample, that p-value is conservative;
``lilliefors=True`` switches to the Dallal-Wilkinson/Stephens approximation
of the Lilliefors distribution, which is calibrated (rejects a true-normal
sample at close to the nominal rate).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import kolmogorov, ndtr, stdtr

from .errors import MatrixDomainError, ZeroVarianceError

# Ridge regularization rule for near-singular moment covariances: applied
# when the condition number exceeds COND_LIMIT, with lambda scaled to the
# average diagonal magnitude.
COND_LIMIT = 1.0e12
RIDGE_SCALE = 1.0e-8


@dataclass(frozen=True)
class TestResult:
    """statistic, p-value and sample size of one test."""

    statistic: float
    p_value: float
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"sample size must be >= 2, got {self.n}")
        if not 0.0 <= self.p_value <= 1.0:
            raise ValueError(f"p-value {self.p_value} outside [0, 1]")

    @property
    def stars(self) -> str:
        """Significance coding: *** p<0.01, ** p<0.05, * p<0.10."""
        if self.p_value < 0.01:
            return "***"
        if self.p_value < 0.05:
            return "**"
        if self.p_value < 0.10:
            return "*"
        return ""


def _lilliefors_p(d: float, n: int) -> float:
    """Dallal-Wilkinson (1986) p-value for the Lilliefors statistic, with the
    Stephens polynomial branch for p > 0.1 (the form used by R's nortest)."""
    if n > 100:
        kd = d * (n / 100.0) ** 0.49
        nd = 100.0
    else:
        kd = d
        nd = float(n)
    p = math.exp(-7.01256 * kd * kd * (nd + 2.78019)
                 + 2.99587 * kd * math.sqrt(nd + 2.78019)
                 - 0.122119 + 0.974598 / math.sqrt(nd) + 1.67997 / nd)
    if p <= 0.1:
        return min(1.0, max(0.0, p))
    kk = (math.sqrt(n) - 0.01 + 0.85 / math.sqrt(n)) * d
    if kk <= 0.302:
        return 1.0
    if kk <= 0.5:
        p = (2.76773 - 19.828315 * kk + 80.709644 * kk ** 2
             - 138.55152 * kk ** 3 + 81.218052 * kk ** 4)
    elif kk <= 0.9:
        p = (-4.901232 + 40.662806 * kk - 97.490286 * kk ** 2
             + 94.029866 * kk ** 3 - 32.355711 * kk ** 4)
    elif kk <= 1.31:
        p = (6.198765 - 19.558097 * kk + 23.186922 * kk ** 2
             - 12.234627 * kk ** 3 + 2.423045 * kk ** 4)
    else:
        p = 0.0
    return min(1.0, max(0.0, p))


def ks_normal(sample, lilliefors: bool = False) -> TestResult:
    """Kolmogorov-Smirnov check of a sample against the normal family.

    The sample is standardized by its mean and standard deviation (divisor
    n-1); D is the sup-distance between the empirical CDF and the standard
    normal CDF.  Default p-value: asymptotic Kolmogorov distribution at
    sqrt(n)*D.  ``lilliefors=True`` corrects for the estimated parameters.
    """
    x = np.asarray(sample, dtype=np.float64)
    n = x.shape[0]
    if n < 8:
        raise ValueError(f"ks_normal needs n >= 8, got {n}")
    sd = x.std(ddof=1)
    if sd == 0.0:
        raise ZeroVarianceError("constant sample has no normality statistic")
    z = np.sort((x - x.mean()) / sd)
    cdf = ndtr(z)
    i = np.arange(1, n + 1)
    d = max(np.max(i / n - cdf), np.max(cdf - (i - 1) / n))
    if lilliefors:
        p = _lilliefors_p(float(d), n)
    else:
        p = float(kolmogorov(math.sqrt(n) * d))
    return TestResult(statistic=float(d), p_value=p, n=n)


def paired_t_one_tailed(x, y) -> TestResult:
    """One-tailed paired t-test of H1: mean(x - y) > 0.

    All-zero differences return t = 0, p = 0.5 rather than an error; a
    degenerate nonzero-mean case yields an infinite statistic with p of 0 or
    1 accordingly.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError(f"paired samples must be 1-D of equal length, got "
                         f"{x.shape} and {y.shape}")
    n = x.shape[0]
    if n < 2:
        raise ValueError(f"paired t-test needs n >= 2, got {n}")
    d = x - y
    sd = d.std(ddof=1)
    mean = d.mean()
    if sd == 0.0:
        if mean == 0.0:
            return TestResult(statistic=0.0, p_value=0.5, n=n)
        t = math.inf if mean > 0 else -math.inf
        return TestResult(statistic=t, p_value=0.0 if mean > 0 else 1.0, n=n)
    t = mean / (sd / math.sqrt(n))
    p = float(1.0 - stdtr(n - 1, t))
    return TestResult(statistic=float(t), p_value=p, n=n)


def rmse(estimates, truth: float) -> float:
    """Root-mean squared error of estimates around a known truth."""
    e = np.asarray(estimates, dtype=np.float64)
    if e.shape[0] == 0:
        raise ValueError("rmse of an empty sample")
    d = e - truth
    return float(np.sqrt(np.mean(d * d)))


def sample_cov(rows) -> np.ndarray:
    """Unbiased sample covariance (divisor n-1) of row observations."""
    r = np.asarray(rows, dtype=np.float64)
    if r.ndim != 2 or r.shape[0] < 2:
        raise ValueError(f"need an (n, m) matrix with n >= 2, got {r.shape}")
    d = r - r.mean(axis=0, keepdims=True)
    return d.T @ d / (r.shape[0] - 1)


def spd_inverse(matrix, return_ridge: bool = False):
    """Inverse of a symmetric positive-definite matrix via Cholesky.

    If the condition number exceeds COND_LIMIT, a ridge lambda =
    RIDGE_SCALE * trace / m is added to the diagonal first.  The result is
    explicitly symmetrized.  ``return_ridge=True`` also returns the lambda
    that was applied (0.0 when none was needed).
    """
    a = np.asarray(matrix, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise MatrixDomainError(f"expected a square matrix, got {a.shape}")
    scale = np.abs(a).max()
    if scale > 0 and np.abs(a - a.T).max() > 1.0e-10 * scale:
        raise MatrixDomainError("matrix is not symmetric")
    a = 0.5 * (a + a.T)
    m = a.shape[0]
    eigs = np.linalg.eigvalsh(a)
    ridge = 0.0
    if eigs[0] <= 0.0 or eigs[-1] / eigs[0] > COND_LIMIT:
        ridge = RIDGE_SCALE * np.trace(a) / m
        a = a + ridge * np.eye(m)
    try:
        chol = np.linalg.cholesky(a)
    except np.linalg.LinAlgError:
        raise MatrixDomainError("matrix not positive definite even after ridge")
    identity = np.eye(m)
    half = np.linalg.solve(chol, identity)
    inv = half.T @ half
    inv = 0.5 * (inv + inv.T)
    if return_ridge:
        return inv, ridge
    return inv
