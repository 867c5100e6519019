"""Seed-driven simulators for the two market models plus a Wiener fixture.

Both models are pure functions of (parameters, config): identical inputs give
bit-identical return series, across runs and worker counts.  Per-step noise
draw order is frozen as part of the reproducibility contract:

- sentiment-herding model ("alw"): sentiment shock first, fundamental-news
  shock second;
- discrete-choice model ("fw"): fundamentalist demand shock first, chartist
  second.

Parameters of the sentiment-herding model are reported externally multiplied
by 1000 (display units); all internal computation is in natural units.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from typing import Callable, ClassVar

import numpy as np

from . import _kernels
from .errors import DivergenceError, ParameterError
from .rng import PcgNormals

_EMPTY = np.empty(0)

# Largest autocorrelation lag in the moment registry; shorter series cannot
# support the full moment vector.
MIN_T_LEN = 101

DEFAULT_BURN_IN = 500


# ---------------------------------------------------------------------------
# Parameter and config types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AlwParams:
    """Sentiment-herding model parameters, natural units.

    a: idiosyncratic switching rate, b: herding intensity, sigma_f:
    fundamental-news volatility.  Display convention multiplies all three by
    1000.
    """

    a: float
    b: float
    sigma_f: float

    def __post_init__(self):
        for name in ("a", "b", "sigma_f"):
            if not getattr(self, name) > 0:
                raise ParameterError(f"{name} must be > 0, got {getattr(self, name)}")

    def display(self) -> tuple[float, float, float]:
        """Parameters in display units (natural x 1000)."""
        return (self.a * 1000.0, self.b * 1000.0, self.sigma_f * 1000.0)

    @classmethod
    def from_display(cls, a: float, b: float, sigma_f: float) -> "AlwParams":
        return cls(a / 1000.0, b / 1000.0, sigma_f / 1000.0)


@dataclass(frozen=True)
class FwParams:
    """Discrete-choice chartist/fundamentalist model parameters.

    phi/chi are the fundamentalist/chartist reaction strengths, alpha_0 the
    predisposition (may be negative), alpha_n the herding intensity, alpha_p
    the misalignment weight, sigma_f/sigma_c the demand noise volatilities.
    Intensity of choice, price adjustment speed and the (log) fundamental
    price are fixed constants, not estimated.
    """

    phi: float
    chi: float
    alpha_0: float
    alpha_n: float
    alpha_p: float
    sigma_f: float
    sigma_c: float

    BETA: ClassVar[float] = 1.0
    MU: ClassVar[float] = 0.01
    P_STAR: ClassVar[float] = 0.0

    def __post_init__(self):
        for name in ("phi", "chi", "alpha_n", "alpha_p", "sigma_f", "sigma_c"):
            if not getattr(self, name) > 0:
                raise ParameterError(f"{name} must be > 0, got {getattr(self, name)}")


@dataclass(frozen=True)
class SimConfig:
    """Length, burn-in and replication seed of one simulation."""

    t_len: int
    seed: int
    burn_in: int = DEFAULT_BURN_IN

    def __post_init__(self):
        if self.t_len < MIN_T_LEN:
            raise ParameterError(f"t_len must be >= {MIN_T_LEN}, got {self.t_len}")
        if self.burn_in < 0:
            raise ParameterError(f"burn_in must be >= 0, got {self.burn_in}")


@dataclass(frozen=True)
class ReturnSeries:
    """One simulated realization of returns after burn-in."""

    values: np.ndarray
    seed: int
    model_id: str

    def __post_init__(self):
        if not np.all(np.isfinite(self.values)):
            raise ParameterError(f"{self.model_id} series contains non-finite entries")

    def __len__(self) -> int:
        return self.values.shape[0]


ALW_TRUE = AlwParams.from_display(0.3, 1.4, 30.0)
FW_TRUE = FwParams(phi=0.12, chi=1.5, alpha_0=-0.336, alpha_n=1.839,
                   alpha_p=19.671, sigma_f=0.708, sigma_c=2.147)


# ---------------------------------------------------------------------------
# Simulators
# ---------------------------------------------------------------------------

def _split_noise(noise, n_steps: int) -> tuple[np.ndarray, np.ndarray]:
    # Two channels interleaved in draw order: even positions feed the first
    # per-step draw, odd positions the second.
    u = noise.normals(2 * n_steps)
    return np.ascontiguousarray(u[0::2]), np.ascontiguousarray(u[1::2])


def alw_returns_from_noise(params: AlwParams, eps: np.ndarray, eta: np.ndarray,
                           burn_in: int, out: np.ndarray | None = None,
                           reflect: bool = False) -> np.ndarray:
    """Run the sentiment-herding recurrence on pre-drawn standard normals."""
    t_len = eps.shape[0] - burn_in
    if out is None:
        out = np.empty(t_len)
    _kernels.alw_steps(params.a, params.b, params.sigma_f, eps, eta,
                       burn_in, out, _EMPTY, reflect)
    return out


def fw_returns_from_noise(params: FwParams, eps_f: np.ndarray, eps_c: np.ndarray,
                          burn_in: int, out: np.ndarray | None = None) -> np.ndarray:
    """Run the discrete-choice recurrence on pre-drawn standard normals."""
    t_len = eps_f.shape[0] - burn_in
    if out is None:
        out = np.empty(t_len)
    step = _kernels.fw_steps(params.phi, params.chi, params.alpha_0,
                             params.alpha_n, params.alpha_p,
                             params.sigma_f, params.sigma_c,
                             FwParams.BETA, FwParams.MU, FwParams.P_STAR,
                             eps_f, eps_c, burn_in, out, _EMPTY)
    if step >= 0:
        raise DivergenceError(f"price diverged at step {step}", step=step)
    return out


def simulate_alw(params: AlwParams, cfg: SimConfig, noise=None,
                 reflect: bool = False) -> ReturnSeries:
    """Simulate one return series of the sentiment-herding model.

    Per step t (unit time step): x_{t+1} = clamp(x_t - 2a x_t +
    sqrt(2b(1 - x_t^2)) eps_t) and r_{t+1} = sigma_f eta_t + (x_{t+1} - x_t),
    starting from x_0 = 0.  The first ``cfg.burn_in`` returns are discarded.
    ``reflect=True`` mirrors boundary overshoot instead of clamping.
    """
    noise = noise if noise is not None else PcgNormals(cfg.seed)
    eps, eta = _split_noise(noise, cfg.burn_in + cfg.t_len)
    out = alw_returns_from_noise(params, eps, eta, cfg.burn_in, reflect=reflect)
    return ReturnSeries(out, cfg.seed, "alw")


def simulate_fw(params: FwParams, cfg: SimConfig, noise=None) -> ReturnSeries:
    """Simulate one return series of the discrete-choice model.

    Per step: fractions from last step's attractiveness via the logistic
    choice rule, demands with fundamentalist/chartist noise, price update by
    mu-weighted average demand, then the attractiveness update from herding,
    predisposition and squared misalignment.  Returns are log-price
    differences; the first ``cfg.burn_in`` are discarded.
    """
    noise = noise if noise is not None else PcgNormals(cfg.seed)
    eps_f, eps_c = _split_noise(noise, cfg.burn_in + cfg.t_len)
    out = fw_returns_from_noise(params, eps_f, eps_c, cfg.burn_in)
    return ReturnSeries(out, cfg.seed, "fw")


def simulate_wiener(t_len: int, seed: int, noise=None) -> ReturnSeries:
    """Standard Wiener path at unit steps: W_0 = 0, W_{t+1} = W_t + eps_t.

    Validation fixture only; the series holds W_1..W_{t_len}.
    """
    if t_len < 2:
        raise ParameterError(f"t_len must be >= 2, got {t_len}")
    noise = noise if noise is not None else PcgNormals(seed)
    path = np.cumsum(noise.normals(t_len))
    return ReturnSeries(path, seed, "wiener")


def alw_sentiment_path(params: AlwParams, cfg: SimConfig, noise=None,
                       reflect: bool = False) -> np.ndarray:
    """Diagnostic: post-burn-in sentiment path x_t of the herding model."""
    noise = noise if noise is not None else PcgNormals(cfg.seed)
    eps, eta = _split_noise(noise, cfg.burn_in + cfg.t_len)
    out = np.empty(cfg.t_len)
    state = np.empty(cfg.t_len)
    _kernels.alw_steps(params.a, params.b, params.sigma_f, eps, eta,
                       cfg.burn_in, out, state, reflect)
    return state


def fw_fraction_path(params: FwParams, cfg: SimConfig, noise=None) -> np.ndarray:
    """Diagnostic: post-burn-in fundamentalist fraction n_f of each step."""
    noise = noise if noise is not None else PcgNormals(cfg.seed)
    eps_f, eps_c = _split_noise(noise, cfg.burn_in + cfg.t_len)
    out = np.empty(cfg.t_len)
    state = np.empty(cfg.t_len)
    step = _kernels.fw_steps(params.phi, params.chi, params.alpha_0,
                             params.alpha_n, params.alpha_p,
                             params.sigma_f, params.sigma_c,
                             FwParams.BETA, FwParams.MU, FwParams.P_STAR,
                             eps_f, eps_c, cfg.burn_in, out, state)
    if step >= 0:
        raise DivergenceError(f"price diverged at step {step}", step=step)
    return state


# ---------------------------------------------------------------------------
# Model handles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ModelSpec:
    """Uniform handle used by the estimator and the experiment harness."""

    model_id: str
    param_names: tuple[str, ...]
    theta_true: np.ndarray        # natural units
    display_scale: float          # multiply theta by this for reporting
    make_params: Callable
    returns_from_noise: Callable  # (params, z1, z2, burn_in, out) -> ndarray

    @property
    def n_params(self) -> int:
        return len(self.param_names)

    def simulate(self, theta: np.ndarray, cfg: SimConfig, noise=None) -> ReturnSeries:
        params = self.make_params(theta)
        if self.model_id == "alw":
            return simulate_alw(params, cfg, noise=noise)
        return simulate_fw(params, cfg, noise=noise)


def _make_alw(theta) -> AlwParams:
    return AlwParams(float(theta[0]), float(theta[1]), float(theta[2]))


def _make_fw(theta) -> FwParams:
    return FwParams(*(float(v) for v in theta))


ALW_MODEL = ModelSpec(
    model_id="alw",
    param_names=("a", "b", "sigma_f"),
    theta_true=np.array([ALW_TRUE.a, ALW_TRUE.b, ALW_TRUE.sigma_f]),
    display_scale=1000.0,
    make_params=_make_alw,
    returns_from_noise=lambda p, z1, z2, burn, out=None: alw_returns_from_noise(
        p, z1, z2, burn, out),
)

FW_MODEL = ModelSpec(
    model_id="fw",
    param_names=("phi", "chi", "alpha_0", "alpha_n", "alpha_p", "sigma_f", "sigma_c"),
    theta_true=np.array([FW_TRUE.phi, FW_TRUE.chi, FW_TRUE.alpha_0, FW_TRUE.alpha_n,
                         FW_TRUE.alpha_p, FW_TRUE.sigma_f, FW_TRUE.sigma_c]),
    display_scale=1.0,
    make_params=_make_fw,
    returns_from_noise=lambda p, z1, z2, burn, out=None: fw_returns_from_noise(
        p, z1, z2, burn, out),
)

MODELS = {"alw": ALW_MODEL, "fw": FW_MODEL}


# ---------------------------------------------------------------------------
# Series export
# ---------------------------------------------------------------------------

def format_series_csv(series: ReturnSeries, params, cfg: SimConfig) -> str:
    """One-column CSV of returns with a provenance header comment."""
    if isinstance(params, AlwParams):
        a, b, s = params.display()
        pvec = f"a={a:g} b={b:g} sigma_f={s:g} (display units, x1e-3 natural)"
    elif isinstance(params, FwParams):
        pvec = (f"phi={params.phi:g} chi={params.chi:g} alpha_0={params.alpha_0:g} "
                f"alpha_n={params.alpha_n:g} alpha_p={params.alpha_p:g} "
                f"sigma_f={params.sigma_f:g} sigma_c={params.sigma_c:g}")
    else:
        pvec = "none"
    buf = io.StringIO()
    buf.write(f"# model={series.model_id} params: {pvec} "
              f"t_len={cfg.t_len} burn_in={cfg.burn_in} seed={cfg.seed}\n")
    buf.write("return\n")
    for v in series.values:
        buf.write(repr(float(v)) + "\n")
    return buf.getvalue()
