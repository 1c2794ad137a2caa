"""Shared numerics: quadrature weights, primes, bump profiles, stencils."""

import numpy as np

__all__ = [
    "simpson_weights", "trapezoid_weights", "primes_upto", "is_prime",
    "bump_profile", "op_norm", "apply_d1", "apply_d2", "gauss_legendre",
]


def simpson_weights(n, du):
    """Composite Simpson weights for n uniformly spaced nodes.

    For even n the last interval is integrated with the 3-point
    Newton-Cotes rule through the last three nodes, so any n >= 3 works.
    """
    if n < 3:
        raise ValueError("need at least 3 nodes")
    w = np.zeros(n)
    m = n if n % 2 == 1 else n - 1
    w[0:m:2] += 1.0
    w[1:m:2] += 4.0
    w[2:m:2] += 1.0
    w[0] = 1.0
    w[m - 1] = 1.0
    idx = np.arange(2, m - 1, 2)
    w[idx] = 2.0
    w *= 1.0 / 3.0
    if n % 2 == 0:
        # trailing cell [x_{n-2}, x_{n-1}]: quadratic through last 3 nodes
        w[n - 3] += -1.0 / 12.0
        w[n - 2] += 8.0 / 12.0
        w[n - 1] += 5.0 / 12.0
    return w * du


def trapezoid_weights(n, du):
    w = np.full(n, du)
    w[0] *= 0.5
    w[-1] *= 0.5
    return w


def primes_upto(n):
    """Primes <= n by sieve, as a python list."""
    if n < 2:
        return []
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(n ** 0.5) + 1):
        if sieve[p]:
            sieve[p * p:: p] = False
    return [int(p) for p in np.nonzero(sieve)[0]]


def is_prime(p):
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def bump_profile(t, alpha=4.0):
    """Smooth compactly supported window exp(-alpha t^2/(1-t^2)) on (-1,1).

    Peak value 1 at t=0, identically 0 for |t| >= 1, all derivatives
    vanish at the endpoints.
    """
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    inside = np.abs(t) < 1.0
    ti = t[inside]
    out[inside] = np.exp(-alpha * ti * ti / (1.0 - ti * ti))
    return out if out.ndim else float(out)


def op_norm(a, tol=1e-8, maxiter=2000, seed=0):
    """Largest singular value of a dense matrix by power iteration on A^H A."""
    a = np.asarray(a)
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(a.shape[1])
    if np.iscomplexobj(a):
        v = v + 1j * rng.standard_normal(a.shape[1])
    v /= np.linalg.norm(v)
    ah = a.conj().T
    sigma = 0.0
    for _ in range(maxiter):
        w = ah @ (a @ v)
        lam = np.linalg.norm(w)
        if lam == 0.0:
            return 0.0
        v = w / lam
        s_new = np.sqrt(lam)
        if abs(s_new - sigma) <= tol * max(s_new, 1e-300):
            return float(s_new)
        sigma = s_new
    return float(sigma)


# 5-point centered first/second derivative stencils; inputs are assumed to
# decay below roundoff at the array ends, so zero padding is used there.

def apply_d1(values, dx):
    v = np.pad(np.asarray(values), 2)
    out = (v[:-4] - 8.0 * v[1:-3] + 8.0 * v[3:-1] - v[4:]) / (12.0 * dx)
    return out


def apply_d2(values, dx):
    v = np.pad(np.asarray(values), 2)
    out = (-v[:-4] + 16.0 * v[1:-3] - 30.0 * v[2:-2]
           + 16.0 * v[3:-1] - v[4:]) / (12.0 * dx * dx)
    return out


def gauss_legendre(npts, a, b):
    """Gauss-Legendre nodes/weights on [a, b]."""
    x, w = np.polynomial.legendre.leggauss(npts)
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    return mid + half * x, half * w
