"""Numba step kernels for the two market models.

Each kernel consumes pre-drawn standard normal arrays (one entry per step and
noise channel) and writes the post-burn-in return series into ``out``.  Noise
scaling by the model's sigma parameters happens inside the kernel so that the
same noise arrays can be reused across candidate parameter vectors (common
random numbers).

State recording (sentiment path, fundamentalist fraction) is optional and
enabled by passing a non-empty ``state_out`` array; the hot estimation path
passes an empty one.
"""

from __future__ import annotations

import numpy as np
from numba import njit

# Sentiment clamp bound: keeps the diffusion term 2b(1 - x^2) positive after
# discretisation overshoot while leaving drift and diffusion untouched
# elsewhere.
SENTIMENT_BOUND = 0.999999

# Price magnitude beyond which a chartist/fundamentalist run is declared
# divergent; far outside any regime the model visits at sane parameters.
PRICE_LIMIT = 1.0e6


@njit(cache=True)
def alw_steps(a, b, sigma_f, eps, eta, burn, out, state_out, reflect):
    """Sentiment-herding model: x' = x - 2a x + sqrt(2b(1-x^2)) eps.

    Returns r_{t+1} = sigma_f * eta_t + (x_{t+1} - x_t); the first ``burn``
    returns are discarded.  ``reflect`` switches the boundary handling from
    clamping to reflection.
    """
    record = state_out.size > 0
    x = 0.0
    n_steps = eps.shape[0]
    for t in range(n_steps):
        xn = x - 2.0 * a * x + np.sqrt(2.0 * b * (1.0 - x * x)) * eps[t]
        if reflect:
            if xn > SENTIMENT_BOUND:
                xn = 2.0 * SENTIMENT_BOUND - xn
            elif xn < -SENTIMENT_BOUND:
                xn = -2.0 * SENTIMENT_BOUND - xn
        if xn > SENTIMENT_BOUND:
            xn = SENTIMENT_BOUND
        elif xn < -SENTIMENT_BOUND:
            xn = -SENTIMENT_BOUND
        if t >= burn:
            out[t - burn] = sigma_f * eta[t] + (xn - x)
            if record:
                state_out[t - burn] = xn
        x = xn
    return -1


@njit(cache=True)
def fw_steps(phi, chi, alpha_0, alpha_n, alpha_p, sigma_f, sigma_c,
             beta, mu, p_star, eps_f, eps_c, burn, out, state_out):
    """Discrete-choice chartist/fundamentalist model, one price per step.

    Returns the step index at which |p| exceeded PRICE_LIMIT (or the price
    became non-finite), or -1 on a clean run.
    """
    record = state_out.size > 0
    p = 0.0
    p_prev = 0.0
    att = 0.0
    n_steps = eps_f.shape[0]
    for t in range(n_steps):
        n_f = 1.0 / (1.0 + np.exp(-beta * att))
        n_c = 1.0 - n_f
        d_f = phi * (p_star - p) + sigma_f * eps_f[t]
        d_c = chi * (p - p_prev) + sigma_c * eps_c[t]
        p_next = p + mu * (n_f * d_f + n_c * d_c)
        att = alpha_n * (n_f - n_c) + alpha_0 + alpha_p * (p - p_star) ** 2
        if not np.isfinite(p_next) or np.abs(p_next) > PRICE_LIMIT:
            return t
        if t >= burn:
            out[t - burn] = p_next - p
            if record:
                state_out[t - burn] = n_f
        p_prev = p
        p = p_next
    return -1
