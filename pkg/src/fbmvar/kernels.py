"""Closed-form Gaussian kernels for fractional Brownian motion on the unit grid.

Everything here is a pure function of (H, integer indices): the fBm covariance
R_H(s,t) = (t^{2H} + s^{2H} - |t-s|^{2H})/2, the normalized increment
autocovariance rho_H(p), the two discrete inner products that appear in the
integration-by-parts expansions, standard Gaussian moments, and the
Hermite-series variance constant of the central limit regimes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import RegimeError

DEFAULT_LAG_TRUNCATION = 100_000


@dataclass(frozen=True)
class HurstIndex:
    """Hurst parameter, restricted to the open interval (0, 1)."""

    value: float

    def __post_init__(self):
        v = float(self.value)
        if not math.isfinite(v) or not 0.0 < v < 1.0:
            raise ValueError(f"Hurst index must be finite and in (0, 1), got {self.value!r}")
        object.__setattr__(self, "value", v)


def as_hurst(h) -> HurstIndex:
    """Coerce a float or HurstIndex to a validated HurstIndex."""
    if isinstance(h, HurstIndex):
        return h
    return HurstIndex(float(h))


def _hval(h) -> float:
    return h.value if isinstance(h, HurstIndex) else HurstIndex(float(h)).value


@dataclass(frozen=True)
class GridIndexPair:
    """A pair of increment indices (k, ell) on the grid {0, 1/n, ..., 1}."""

    n: int
    k: int
    ell: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"grid size must be >= 1, got {self.n}")
        if not 0 <= self.k < self.n or not 0 <= self.ell < self.n:
            raise ValueError(f"indices must lie in [0, {self.n - 1}], got k={self.k}, ell={self.ell}")


def _abs_pow(x: float, two_h: float) -> float:
    # |x|^{2H} with an exact zero at x == 0 so the s == t branch never goes
    # through a 0^0-adjacent pow path.
    if x == 0.0:
        return 0.0
    return abs(x) ** two_h


def covariance(H, s: float, t: float) -> float:
    """fBm covariance R_H(s, t) = (t^{2H} + s^{2H} - |t-s|^{2H}) / 2."""
    two_h = 2.0 * _hval(H)
    return 0.5 * (_abs_pow(t, two_h) + _abs_pow(s, two_h) - _abs_pow(t - s, two_h))


def increment_autocov(H, p: int) -> float:
    """Autocovariance rho_H(p) of unit-variance fGn at integer lag p.

    rho_H(p) = (|p+1|^{2H} + |p-1|^{2H} - 2|p|^{2H}) / 2; rho_H(0) = 1 and
    rho vanishes at all nonzero lags when H = 1/2.
    """
    two_h = 2.0 * _hval(H)
    q = abs(int(p))
    return 0.5 * (_abs_pow(q + 1, two_h) + _abs_pow(q - 1, two_h) - 2.0 * _abs_pow(q, two_h))


def increment_autocov_seq(H, max_lag: int) -> np.ndarray:
    """Vector of rho_H(p) for p = 0 .. max_lag."""
    two_h = 2.0 * _hval(H)
    p = np.arange(max_lag + 1, dtype=np.float64)
    return 0.5 * ((p + 1.0) ** two_h + np.abs(p - 1.0) ** two_h - 2.0 * p**two_h)


def eps_delta_inner(H, pair: GridIndexPair) -> float:
    """Inner product of the running-time indicator with one increment slot.

    Equals E[B_{ell/n} (B_{(k+1)/n} - B_{k/n})], i.e.
    n^{-2H} ((k+1)^{2H} - k^{2H} - |ell-k-1|^{2H} + |ell-k|^{2H}) / 2.
    """
    two_h = 2.0 * _hval(H)
    n, k, ell = pair.n, pair.k, pair.ell
    bracket = (
        _abs_pow(k + 1, two_h)
        - _abs_pow(k, two_h)
        - _abs_pow(ell - k - 1, two_h)
        + _abs_pow(ell - k, two_h)
    )
    return 0.5 * float(n) ** (-two_h) * bracket


def delta_delta_inner(H, pair: GridIndexPair) -> float:
    """Covariance of two grid increments: n^{-2H} rho_H(k - ell)."""
    return float(pair.n) ** (-2.0 * _hval(H)) * increment_autocov(H, pair.k - pair.ell)


def covariance_matrix(H, n: int) -> np.ndarray:
    """(n+1) x (n+1) matrix [R_H(j/n, k/n)] over the full grid including 0."""
    t = np.arange(n + 1, dtype=np.float64) / n
    two_h = 2.0 * _hval(H)
    pw = t**two_h
    return 0.5 * (pw[:, None] + pw[None, :] - np.abs(t[:, None] - t[None, :]) ** two_h)


def gram_matrix(H, n: int) -> np.ndarray:
    """n x n Gram matrix of the increments, [n^{-2H} rho_H(k - ell)]."""
    rho = increment_autocov_seq(H, n - 1)
    idx = np.abs(np.arange(n)[:, None] - np.arange(n)[None, :])
    return float(n) ** (-2.0 * _hval(H)) * rho[idx]


def gaussian_moment(kappa: int) -> float:
    """kappa-th moment of a standard Gaussian: 0 for odd, (kappa-1)!! for even."""
    k = int(kappa)
    if k < 0:
        raise ValueError(f"moment order must be >= 0, got {kappa}")
    if k % 2 == 1:
        return 0.0
    return float(math.prod(range(1, k, 2)))


def hermite_coefficients(kappa: int) -> np.ndarray:
    """Coefficients c_q with x^kappa = sum_q c_q He_q(x) (probabilists' basis).

    c_{kappa-2m} = kappa! / (2^m m! (kappa-2m)!); all other entries are zero.
    """
    k = int(kappa)
    if k < 0:
        raise ValueError(f"power must be >= 0, got {kappa}")
    c = np.zeros(k + 1)
    for m in range(k // 2 + 1):
        q = k - 2 * m
        c[q] = math.factorial(k) / (2**m * math.factorial(m) * math.factorial(q))
    return c


@dataclass(frozen=True)
class BreuerMajorSpec:
    """Inputs for the Hermite-series variance constant of the CLT regimes.

    The series for even kappa (with mean removed) starts at Hermite rank 2 and
    converges only for H < 3/4; for odd kappa it starts at rank 1 and the rank-1
    lag series converges only for H <= 1/2.
    """

    hurst: HurstIndex
    kappa: int
    hermite_truncation: int | None = None
    lag_truncation: int = DEFAULT_LAG_TRUNCATION

    def __post_init__(self):
        object.__setattr__(self, "hurst", as_hurst(self.hurst))
        if self.kappa < 2:
            raise ValueError(f"kappa must be >= 2, got {self.kappa}")
        if self.hermite_truncation is None:
            object.__setattr__(self, "hermite_truncation", self.kappa)
        if self.hermite_truncation < self.kappa:
            raise ValueError(
                f"hermite_truncation must be >= kappa, got {self.hermite_truncation} < {self.kappa}"
            )
        if self.lag_truncation < 1:
            raise ValueError(f"lag_truncation must be >= 1, got {self.lag_truncation}")
        h = self.hurst.value
        if self.kappa % 2 == 0 and h >= 0.75:
            raise RegimeError(
                f"even kappa={self.kappa} requires H < 3/4 for a convergent variance series, got H={h}"
            )
        if self.kappa % 2 == 1 and h > 0.5:
            raise RegimeError(
                f"odd kappa={self.kappa} requires H <= 1/2 for a convergent variance series, got H={h}"
            )


def breuer_major_variance(spec: BreuerMajorSpec) -> float:
    """Asymptotic variance sum_{q >= q0} q! c_q^2 sum_{|p| <= P} rho_H(p)^q.

    c_q are the Hermite coefficients of x^kappa, with the constant term dropped
    (mean centering) so the rank is q0 = 2 for even kappa and q0 = 1 for odd.
    Coefficients vanish above q = kappa, so the Hermite truncation is exact at
    its default; the lag truncation P controls the tail of each lag series.
    """
    h = spec.hurst.value
    kappa = spec.kappa
    c = hermite_coefficients(kappa)
    q0 = 2 if kappa % 2 == 0 else 1
    rho = increment_autocov_seq(h, spec.lag_truncation)
    total = 0.0
    for q in range(q0, min(spec.hermite_truncation, kappa) + 1, 2):
        lag_sum = rho[0] ** q + 2.0 * float(np.sum(rho[1:] ** q))
        total += math.factorial(q) * c[q] ** 2 * lag_sum
    return total
