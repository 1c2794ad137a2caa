"""Test functions on the multiplicative half line.

Functions live on a geometric grid over their support [a, b], are cubically
interpolated in log x, and vanish at (and outside) the endpoints.  The
module provides multiplicative convolution, the adjoint x -> conj(h(1/x)),
the critical-line transform hhat(s) = int h(x) x^{-is} d*x, moment-projected
autocorrelation pairs, and the bookkeeping of which primes can see a given
support.
"""

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.interpolate import CubicSpline

from .util import bump_profile, primes_upto, simpson_weights

__all__ = [
    "LogGridFunction", "bump_grid", "gausslog_grid", "from_callable",
    "mconvolve", "adjoint", "mellin_critical", "make_weil_pair",
    "WeilTestPair", "relevant_places", "parse_testfn_spec",
    "write_testfn_csv", "read_testfn_csv",
]


@dataclass(frozen=True)
class LogGridFunction:
    """Samples of a function of x > 0 on a uniform grid in u = log x.

    values[0] and values[-1] are required to be exactly zero; the function
    is treated as identically zero outside [a, b].
    """
    a: float
    b: float
    values: np.ndarray

    def __post_init__(self):
        if not 0.0 < self.a < self.b:
            raise ValueError("support must satisfy 0 < a < b")
        vals = np.asarray(self.values, dtype=complex)
        if vals.ndim != 1 or vals.size < 8:
            raise ValueError("need a 1-d array of at least 8 samples")
        if vals[0] != 0.0 or vals[-1] != 0.0:
            raise ValueError("endpoint samples must vanish")
        object.__setattr__(self, "values", vals)

    @property
    def n(self):
        return self.values.size

    @cached_property
    def u(self):
        return np.linspace(math.log(self.a), math.log(self.b), self.n)

    @property
    def du(self):
        return (math.log(self.b) - math.log(self.a)) / (self.n - 1)

    @cached_property
    def _spline(self):
        return CubicSpline(self.u, self.values)

    def eval_log(self, u):
        """Interpolated values at log-coordinates u, zero outside support."""
        u = np.asarray(u, dtype=float)
        out = np.zeros(u.shape, dtype=complex)
        lo, hi = math.log(self.a), math.log(self.b)
        inside = (u >= lo) & (u <= hi)
        if np.any(inside):
            out[inside] = self._spline(u[inside])
        return out

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        if np.any(x <= 0.0):
            raise ValueError("arguments must be positive")
        out = self.eval_log(np.log(x))
        return out if out.ndim else complex(out)

    @cached_property
    def quad_weights(self):
        # d*x weights; multiply by e^u for dx integrals
        return simpson_weights(self.n, self.du)

    def integral_dstar(self):
        return complex(np.sum(self.values * self.quad_weights))

    def integral_dx(self):
        return complex(np.sum(self.values * np.exp(self.u) * self.quad_weights))

    def scaled(self, c):
        return LogGridFunction(self.a, self.b, c * self.values)


def from_callable(f, a, b, n=2048):
    """Sample f on the geometric grid over [a, b]; f must vanish there."""
    u = np.linspace(math.log(a), math.log(b), n)
    vals = np.asarray(f(np.exp(u)), dtype=complex)
    vals = vals.copy()
    vals[0] = 0.0
    vals[-1] = 0.0
    return LogGridFunction(a, b, vals)


def bump_grid(a, b, alpha=4.0, n=2048):
    """Smooth bump supported exactly on [a, b], peak 1 at the log-midpoint."""
    la, lb = math.log(a), math.log(b)
    mid, half = 0.5 * (la + lb), 0.5 * (lb - la)
    u = np.linspace(la, lb, n)
    return LogGridFunction(a, b, bump_profile((u - mid) / half, alpha) + 0j)


def gausslog_grid(center=1.0, width=1.0, n=2048, cutoff_sigmas=5.0):
    """Gaussian in log x, truncated at cutoff_sigmas widths."""
    lc = math.log(center)
    half = cutoff_sigmas * width
    u = np.linspace(lc - half, lc + half, n)
    vals = np.exp(-((u - lc) / width) ** 2).astype(complex)
    vals[0] = vals[-1] = 0.0
    return LogGridFunction(math.exp(lc - half), math.exp(lc + half), vals)


def adjoint(h):
    """h*(x) = conj(h(1/x)); support maps to [1/b, 1/a]."""
    return LogGridFunction(1.0 / h.b, 1.0 / h.a, np.conj(h.values[::-1]))


def mconvolve(h1, h2, n_out=None):
    """Multiplicative convolution (h1 * h2)(x) = int h1(x/y) h2(y) d*y.

    The output support is exactly [a1 a2, b1 b2].  Quadrature is Simpson
    over h2's grid with h1 evaluated by interpolation, so the two inputs
    may live on unrelated grids.
    """
    if n_out is None:
        n_out = max(h1.n, h2.n)
    lo = math.log(h1.a) + math.log(h2.a)
    hi = math.log(h1.b) + math.log(h2.b)
    u_out = np.linspace(lo, hi, n_out)
    w = h2.quad_weights * h2.values
    out = np.empty(n_out, dtype=complex)
    chunk = max(1, int(2e6) // h2.n)
    for i0 in range(0, n_out, chunk):
        i1 = min(i0 + chunk, n_out)
        args = u_out[i0:i1, None] - h2.u[None, :]
        out[i0:i1] = h1.eval_log(args.ravel()).reshape(args.shape) @ w
    out[0] = out[-1] = 0.0
    return LogGridFunction(math.exp(lo), math.exp(hi), out)


def mellin_critical(h, s):
    """hhat(s) = int h(x) x^{-is} d*x, entire in s; scalar or array."""
    s_arr = np.atleast_1d(np.asarray(s, dtype=complex))
    w = h.quad_weights * h.values
    out = np.empty(s_arr.size, dtype=complex)
    chunk = max(1, int(4e6) // h.n)
    for i0 in range(0, s_arr.size, chunk):
        i1 = min(i0 + chunk, s_arr.size)
        phases = np.exp(-1j * np.outer(s_arr[i0:i1], h.u))
        out[i0:i1] = phases @ w
    if np.isscalar(s) or np.asarray(s).ndim == 0:
        return complex(out[0])
    return out.reshape(np.asarray(s).shape)


@dataclass(frozen=True)
class WeilTestPair:
    """Window g, its moment-projected half h1 = x^(1/2) g, and h = h1 * h1^adj."""
    g: LogGridFunction
    h1: LogGridFunction
    h: LogGridFunction


def _projection_bumps(g):
    la, lb = math.log(g.a), math.log(g.b)
    span = lb - la
    c1, c2 = la + span / 3.0, la + 2.0 * span / 3.0
    half = span / 3.0
    b1 = LogGridFunction(g.a, g.b,
                         bump_profile((g.u - c1) / half, 1.0) + 0j)
    b2 = LogGridFunction(g.a, g.b,
                         bump_profile((g.u - c2) / half, 1.0) + 0j)
    return b1, b2


def make_weil_pair(g, project=True):
    """Build the autocorrelation pair for the positivity functional.

    With project=True two interior bumps are subtracted from g so that both
    int g dx and int g d*x vanish; the transform of h = h1 * h1^adj then has
    no mass at the poles.  The projection residual is checked to 1e-10.
    """
    if g.n < 64:
        raise ValueError("support grid too small for the projection bumps")
    if project:
        b1, b2 = _projection_bumps(g)
        mat = np.array([[b1.integral_dx(), b2.integral_dx()],
                        [b1.integral_dstar(), b2.integral_dstar()]])
        rhs = np.array([g.integral_dx(), g.integral_dstar()])
        scale = max(abs(mat).max(), 1e-300)
        if abs(np.linalg.det(mat)) < 1e-12 * scale * scale:
            raise ValueError("degenerate support: projection bumps coincide")
        coef = np.linalg.solve(mat, rhs)
        g = LogGridFunction(g.a, g.b,
                            g.values - coef[0] * b1.values - coef[1] * b2.values)
    h1 = LogGridFunction(g.a, g.b, g.values * np.exp(0.5 * g.u))
    if project:
        m_up = np.sum(h1.values * np.exp(0.5 * h1.u) * h1.quad_weights)
        m_dn = np.sum(h1.values * np.exp(-0.5 * h1.u) * h1.quad_weights)
        peak = max(1.0, float(np.max(np.abs(h1.values))))
        if max(abs(m_up), abs(m_dn)) > 1e-10 * peak:
            raise RuntimeError("moment projection failed to converge")
    h = mconvolve(h1, adjoint(h1))
    return WeilTestPair(g, h1, h)


def relevant_places(h, include_arch=True):
    """Places whose prime powers (or their inverses) meet supp h = [a, b]."""
    from .specfun import PLACE_INF, Place
    places = [PLACE_INF] if include_arch else []
    slack = 1.0 + 1e-12
    hi = max(h.b, 1.0 / h.a) * slack
    for p in primes_upto(int(math.floor(hi)) + 1):
        pn = p
        hit = False
        while pn <= hi:
            if (h.a / slack <= pn <= h.b * slack
                    or h.a / slack <= 1.0 / pn <= h.b * slack):
                hit = True
                break
            pn *= p
        if hit:
            places.append(Place.finite(p))
    return places


def _bump_interval(kv):
    if "a" in kv and "b" in kv:
        return kv["a"], kv["b"]
    if "center" in kv and "width" in kv:
        c, w = kv["center"], kv["width"]
        return c * math.exp(-w), c * math.exp(w)
    raise KeyError("need a=..,b=.. or center=..,width=..")


def parse_testfn_spec(spec, n=2048):
    """Build a test function from a compact string spec.

    Formats: "bump:a=0.6,b=1.7[,alpha=4]" (or center=..,width=.. with the
    width in log x), "bump2:a=0.6,b=1.7" for the multiplicative square of
    a bump (its transform decays quadratically faster, which the spectral
    decay check at the cutoff may require), and
    "gausslog:center=1.0,width=0.25[,cutoff=5]".
    """
    try:
        kind, _, rest = spec.partition(":")
        kv = dict(item.split("=") for item in rest.split(",") if item)
        kv = {k.strip(): float(v) for k, v in kv.items()}
        if kind == "bump":
            a, b = _bump_interval(kv)
            return bump_grid(a, b, alpha=kv.get("alpha", 4.0), n=n)
        if kind == "bump2":
            a, b = _bump_interval(kv)
            half = bump_grid(math.sqrt(a), math.sqrt(b),
                             alpha=kv.get("alpha", 4.0), n=n)
            return mconvolve(half, half)
        if kind == "gausslog":
            return gausslog_grid(kv.get("center", 1.0), kv.get("width", 1.0),
                                 n=n, cutoff_sigmas=kv.get("cutoff", 5.0))
    except (KeyError, ValueError) as exc:
        raise ValueError(f"bad test-function spec {spec!r}: {exc}") from None
    raise ValueError(f"unknown test-function kind {kind!r}")


def write_testfn_csv(h, path):
    with open(path, "w") as fh:
        fh.write("log_x,re,im\n")
        for u, v in zip(h.u, h.values):
            fh.write(f"{float(u)!r},{float(v.real)!r},{float(v.imag)!r}\n")


def read_testfn_csv(path):
    us, res, ims = [], [], []
    with open(path) as fh:
        header = fh.readline().strip()
        if header != "log_x,re,im":
            raise ValueError("expected header 'log_x,re,im'")
        for lineno, line in enumerate(fh, start=2):
            line = line.strip()
            if not line:
                continue
            try:
                u, re, im = (float(t) for t in line.split(","))
            except ValueError:
                raise ValueError(f"line {lineno}: bad row {line!r}")
            us.append(u)
            res.append(re)
            ims.append(im)
    u = np.asarray(us)
    if len(u) < 8 or np.max(np.abs(np.diff(u) - (u[1] - u[0]))) > 1e-9:
        raise ValueError("grid must be uniform in log x with >= 8 rows")
    vals = np.asarray(res) + 1j * np.asarray(ims)
    return LogGridFunction(math.exp(u[0]), math.exp(u[-1]), vals)
