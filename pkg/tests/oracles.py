"""Independent reference computations used to freeze derived test values.

None of these call into the package; they are deliberately slow and direct.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import integrate, optimize


def msne_grid(a, b, c, d, s, resolution=1e-4):
    """Indifference-grid search.

    The row player's gap E[U] - E[D] depends only on the column player's
    probability of R, and the column player's gap E[L] - E[R] only on the row
    player's probability of D, so each grid is one-dimensional.
    """
    grid = np.linspace(0.0, 1.0, int(round(1.0 / resolution)) + 1)
    row_gap = ((1 - grid) * a + grid * b) - ((1 - grid) * c + grid * d)
    col_gap = ((1 - grid) * (s - a) + grid * (s - c)) - ((1 - grid) * (s - b) + grid * (s - d))
    return float(grid[np.argmin(np.abs(row_gap))]), float(grid[np.argmin(np.abs(col_gap))])


def _t_density(x, dof):
    logc = math.lgamma((dof + 1) / 2) - math.lgamma(dof / 2) - 0.5 * math.log(dof * math.pi)
    return math.exp(logc) * (1 + x * x / dof) ** (-(dof + 1) / 2)


def t_cdf_quad(x, dof):
    body, _ = integrate.quad(_t_density, 0.0, abs(x), args=(dof,), epsabs=1e-13, epsrel=1e-12, limit=200)
    return 0.5 + body if x >= 0 else 0.5 - body


def t_quantile_quad(p, dof):
    lo, hi = -200.0, 200.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if t_cdf_quad(mid, dof) < p:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-13:
            break
    return 0.5 * (lo + hi)


def chi2_sf_quad(x, dof):
    k = dof / 2.0
    logc = -k * math.log(2.0) - math.lgamma(k)

    def density(u):
        return math.exp(logc + (k - 1) * math.log(u) - u / 2) if u > 0 else 0.0

    if x <= 0:
        return 1.0
    tail, _ = integrate.quad(density, x, np.inf, epsabs=1e-15, epsrel=1e-12, limit=400)
    return tail


def maxent_slsqp(p, q):
    """Numerical entropy maximization over the 4-cell simplex under the two mean constraints."""
    def neg_entropy(x):
        x = np.clip(x, 1e-300, None)
        return float(np.sum(x * np.log(x)))

    cons = (
        {"type": "eq", "fun": lambda x: x.sum() - 1.0},
        {"type": "eq", "fun": lambda x: x[2] + x[3] - p},
        {"type": "eq", "fun": lambda x: x[1] + x[3] - q},
    )
    res = optimize.minimize(neg_entropy, np.full(4, 0.25), method="SLSQP", bounds=[(0, 1)] * 4,
                            constraints=cons, options={"ftol": 1e-14, "maxiter": 500})
    return res.x


def regression_closed_form(x, y, level):
    """Textbook simple regression using numpy polyfit and scipy's t distribution."""
    from scipy import stats as sps

    x = np.asarray(x, float)
    y = np.asarray(y, float)
    n = len(x)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    s2 = resid @ resid / (n - 2)
    sxx = ((x - x.mean()) ** 2).sum()
    tq = sps.t.ppf(0.5 + level / 2, n - 2)
    se_b = math.sqrt(s2 / sxx)
    se_a = math.sqrt(s2 * (1 / n + x.mean() ** 2 / sxx))
    return slope, intercept, (slope - tq * se_b, slope + tq * se_b), (intercept - tq * se_a, intercept + tq * se_a)
