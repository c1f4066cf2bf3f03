"""Independent brute-force references shared by the test modules.

Everything here is deliberately written with plain Python loops and
math.fsum, sharing no code with the library paths it checks.
"""

import math

import numpy as np


def oracle_cc(r, d, j):
    """Cross-correlation of r with |r|^d at signed lag j, from scratch."""
    r = [float(v) for v in r]
    n = len(r)
    pw = [abs(v) ** d for v in r]
    mu_r = math.fsum(r) / n
    mu_p = math.fsum(pw) / n
    sig_r = math.sqrt(math.fsum((v - mu_r) ** 2 for v in r) / n)
    sig_p = math.sqrt(math.fsum((v - mu_p) ** 2 for v in pw) / n)
    if j >= 0:
        prods = [(r[t] - mu_r) * (pw[t + j] - mu_p) for t in range(n - j)]
    else:
        prods = [(r[t] - mu_r) * (pw[t + j] - mu_p) for t in range(-j, n)]
    return math.fsum(prods) / len(prods) / (sig_r * sig_p)


def oracle_jackknife_sigma(values, d, lags, n_blocks):
    """Leave-one-block-out recomputation, naively coded end to end."""
    values = [float(v) for v in values]
    n = len(values)
    bounds = [(b * n) // n_blocks for b in range(n_blocks + 1)]
    thetas = []
    for b in range(n_blocks):
        reduced = values[:bounds[b]] + values[bounds[b + 1]:]
        thetas.append([oracle_cc(reduced, d, j) for j in lags])
    thetas = np.asarray(thetas)
    theta_bar = thetas.mean(axis=0)
    var = (n_blocks - 1) / n_blocks * ((thetas - theta_bar) ** 2).sum(axis=0)
    return np.sqrt(var)


def oracle_weighted_quadratic(x, y, sigma):
    """Weighted quadratic fit via lstsq on the whitened system."""
    x = np.asarray(x, float)
    w = 1.0 / np.asarray(sigma, float)
    design = np.column_stack((x * x, x, np.ones_like(x)))
    coef, *_ = np.linalg.lstsq(design * w[:, None], np.asarray(y, float) * w,
                               rcond=None)
    return coef
