"""Special functions on the critical line.

Complex log-gamma and digamma (Lanczos plus asymptotics), Euler-Maclaurin
zeta, the Riemann-Siegel theta phase, the archimedean and p-adic unimodular
symbols u_v, their logarithmic derivatives, the Hardy Z function, and a
validated zero table.
"""

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = [
    "log_gamma", "digamma", "zeta_em", "zeta_hurwitz",
    "theta_rs", "theta_prime", "phi", "u_inf", "u_p", "dlog_u",
    "Place", "PLACE_INF", "hardy_z", "find_zeros", "rvm_count_estimate",
    "ZeroTable", "MissedZeroError", "write_zero_table", "read_zero_table",
]

_LN_PI = math.log(math.pi)
_LN_2PI = math.log(2.0 * math.pi)

# Lanczos approximation, g = 7, 9 coefficients. Relative accuracy of the
# resulting Gamma is a few 1e-15 over the right half plane, which is what
# the 1e-12 contracts downstream rely on.
_LANCZOS_C = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def _lanczos_right(z):
    """log Gamma for Re z >= 0.5, scalar or ndarray."""
    zm1 = z - 1.0
    x = np.full_like(np.asarray(zm1, dtype=complex), _LANCZOS_C[0])
    for k in range(1, 9):
        x = x + _LANCZOS_C[k] / (zm1 + k)
    t = zm1 + 7.5
    return 0.5 * _LN_2PI + (zm1 + 0.5) * np.log(t) - t + np.log(x)


def _log_sin_pi(z):
    """log sin(pi z), overflow safe for large |Im z|."""
    if z.imag >= 0.0:
        q = np.exp(2j * math.pi * z)
        return (-1j * math.pi * z + np.log1p(-q)
                - math.log(2.0) + 0.5j * math.pi)
    return np.conj(_log_sin_pi(np.conj(z)))


def log_gamma(z):
    """Principal-branch log Gamma; exp of the result equals Gamma(z).

    Raises ValueError at the poles (nonpositive integers).
    """
    z = complex(z)
    if abs(z - round(z.real)) < 1e-13 and round(z.real) <= 0 and z.imag == 0.0:
        raise ValueError(f"log_gamma pole at nonpositive integer {z}")
    if z.real >= 0.5:
        return complex(_lanczos_right(z))
    if z.real > 0.0:
        # one recurrence step keeps the argument in the core region
        return complex(_lanczos_right(z + 1.0)) - np.log(complex(z))
    # reflection into the right half plane
    return (_LN_PI - _log_sin_pi(z) - complex(_lanczos_right(1.0 - z)))


# psi(z) ~ log z - 1/(2z) - sum B_{2n}/(2n z^{2n}); coefficients B_{2n}/(2n)
_PSI_ASY = (
    1.0 / 12.0, -1.0 / 120.0, 1.0 / 252.0, -1.0 / 240.0,
    1.0 / 132.0, -691.0 / 32760.0, 1.0 / 12.0,
)


def _digamma_asym(z):
    # requires |z| >= 8 or so
    zi2 = 1.0 / (z * z)
    s = np.log(z) - 0.5 / z
    acc = np.zeros_like(np.asarray(z, dtype=complex))
    pw = zi2
    for c in _PSI_ASY:
        acc = acc + c * pw
        pw = pw * zi2
    return s - acc


def digamma(z):
    """Complex digamma via reflection, recurrence and the Stirling series."""
    z = complex(z)
    if abs(z - round(z.real)) < 1e-13 and round(z.real) <= 0 and z.imag == 0.0:
        raise ValueError(f"digamma pole at nonpositive integer {z}")
    if z.real < 0.0:
        # psi(z) = psi(1-z) - pi*cot(pi z), cot evaluated overflow safe
        if z.imag >= 0.0:
            q = np.exp(2j * math.pi * z)
            cot = 1j * (q + 1.0) / (q - 1.0)
        else:
            qc = np.exp(-2j * math.pi * np.conj(z))
            cot = np.conj(1j * (qc + 1.0) / (qc - 1.0))
        return digamma(1.0 - z) - math.pi * cot
    shift = 0.0
    while z.real < 8.0:
        shift -= 1.0 / z
        z += 1.0
    return complex(shift + _digamma_asym(z))


def _digamma_quarter_line(s):
    """Vectorized psi(1/4 + i s/2) for real array s (uniform shift of 8)."""
    z = 0.25 + 0.5j * np.asarray(s, dtype=float)
    shift = np.zeros_like(z)
    for k in range(8):
        shift -= 1.0 / (z + k)
    return shift + _digamma_asym(z + 8.0)


# Euler-Maclaurin zeta. B_{2j}/(2j)! for j = 1..12, exact rationals.
_B2J = [Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30),
        Fraction(5, 66), Fraction(-691, 2730), Fraction(7, 6),
        Fraction(-3617, 510), Fraction(43867, 798), Fraction(-174611, 330),
        Fraction(854513, 138), Fraction(-236364091, 2730)]
_EM_COEF = [float(b / math.factorial(2 * j + 2)) for j, b in enumerate(_B2J)]


def zeta_hurwitz(w, a=1.0):
    """Hurwitz zeta(w, a) for 0 < a <= 1, |Im w| <= 120, by Euler-Maclaurin.

    Relative accuracy is far below the 1e-10 contract in the supported
    strip; raises outside it and near the pole w = 1.
    """
    w = complex(w)
    if abs(w - 1.0) < 1e-10:
        raise ValueError("zeta pole at w = 1")
    if abs(w.imag) > 120.0:
        raise ValueError("|Im w| > 120 outside the supported strip")
    if not 0.0 < a <= 1.0:
        raise ValueError("shift parameter must lie in (0, 1]")
    n = max(20, int(math.ceil(2.0 * abs(w.imag))))
    k = np.arange(n)
    base = k + a
    s = np.sum(base ** (-w))
    zn = float(n + a)
    s += zn ** (1.0 - w) / (w - 1.0) + 0.5 * zn ** (-w)
    # correction sum: B_{2j}/(2j)! * (w)_{2j-1} * zn^{-w-2j+1}
    poch = w
    zpow = zn ** (-w - 1.0)
    term = _EM_COEF[0] * poch * zpow
    s += term
    for j in range(2, 13):
        poch = poch * (w + (2 * j - 3)) * (w + (2 * j - 2))
        zpow = zpow / (zn * zn)
        s += _EM_COEF[j - 1] * poch * zpow
    return complex(s)


def zeta_em(s):
    """Riemann zeta by Euler-Maclaurin for |Im s| <= 120."""
    return zeta_hurwitz(s, 1.0)


def theta_rs(t):
    """Riemann-Siegel theta: Im log Gamma(1/4 + it/2) - (t/2) log pi.

    Continuous with theta(0) = 0; accepts scalars or arrays.
    """
    t_arr = np.asarray(t, dtype=float)
    z = 0.25 + 0.5j * t_arr
    lg = _lanczos_right(z + 1.0) - np.log(z)
    out = lg.imag - 0.5 * t_arr * _LN_PI
    return out if out.ndim else float(out)


def theta_prime(t):
    """d theta/dt = Re psi(1/4 + it/2)/2 - log(pi)/2."""
    t_arr = np.asarray(t, dtype=float)
    out = 0.5 * _digamma_quarter_line(t_arr).real - 0.5 * _LN_PI
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class Place:
    """A place of Q: the archimedean one or a finite prime."""
    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind not in ("archimedean", "finite"):
            raise ValueError(f"unknown place kind {self.kind!r}")
        if self.kind == "finite":
            if self.p is None or self.p < 2:
                raise ValueError("finite place needs a prime p >= 2")
        elif self.p is not None:
            raise ValueError("archimedean place carries no prime")

    @staticmethod
    def finite(p):
        return Place("finite", int(p))

    def __str__(self):
        return "inf" if self.kind == "archimedean" else f"p={self.p}"


PLACE_INF = Place("archimedean")


def phi(z):
    """Ratio pi^(1/2-z) Gamma(z/2) / Gamma((1-z)/2).

    Exactly zero at odd positive integers (the denominator poles);
    raises at the nonpositive even integers where Gamma(z/2) blows up.
    """
    z = complex(z)
    half = 0.5 * (1.0 - z)
    if z.imag == 0.0:
        r = round(half.real)
        if r <= 0 and abs(half - r) < 1e-12:
            return 0.0 + 0.0j
        rz = round(0.5 * z.real)
        if rz <= 0 and abs(0.5 * z - rz) < 1e-12:
            raise ValueError(f"phi pole at z = {z}")
    return complex(np.exp(_LN_PI * (0.5 - z) + log_gamma(0.5 * z)
                          - log_gamma(half)))


def u_inf(s):
    """Archimedean symbol phi(1/2 + is) = exp(2i theta(s)); unimodular."""
    s_arr = np.asarray(s, dtype=float)
    out = np.exp(2j * theta_rs(s_arr))
    return out if out.ndim else complex(out)


def u_p(s, p):
    """Finite-place symbol (1 - p^(-1/2) e^{isL}) / (1 - p^(-1/2) e^{-isL}),
    L = log p. Unimodular and 2pi/L periodic in s."""
    s_arr = np.asarray(s, dtype=float)
    r = p ** -0.5
    e = np.exp(1j * s_arr * math.log(p))
    out = (1.0 - r * e) / (1.0 - r / e)
    return out if out.ndim else complex(out)


def dlog_u(s, v):
    """d/ds log u_v(s) along the real line; scalar or array s.

    Archimedean: 2i theta'(s). Finite p: the geometric series
    -i log(p) * sum_{n>=1} p^{-n/2} (e^{in s L} + e^{-in s L}),
    truncated when p^{-n/2} drops below 1e-14 relative.
    """
    s_arr = np.asarray(s, dtype=float)
    if v.kind == "archimedean":
        out = np.asarray(2j * theta_prime(s_arr))
        return out if out.ndim else complex(out)
    p = v.p
    lp = math.log(p)
    nmax = int(math.ceil(2.0 * 14.0 * math.log(10.0) / lp)) + 1
    acc = np.zeros_like(s_arr, dtype=complex)
    for n in range(1, nmax + 1):
        acc += p ** (-0.5 * n) * np.cos(n * lp * s_arr)
    out = -2j * lp * acc
    return out if out.ndim else complex(out)


def hardy_z(t):
    """Hardy Z(t) = exp(i theta(t)) zeta(1/2 + it); real for real t."""
    val = np.exp(1j * theta_rs(t)) * zeta_em(0.5 + 1j * t)
    return float(val.real)


def rvm_count_estimate(t):
    """Smooth zero-count estimate theta(t)/pi + 1."""
    return theta_rs(t) / math.pi + 1.0


class MissedZeroError(RuntimeError):
    """Scan found fewer (or more) zeros than the counting estimate allows."""


@dataclass(frozen=True)
class ZeroTable:
    """Ordinates of critical-line zeros, complete up to a stated height."""
    ordinates: np.ndarray
    complete_to: float
    precision: int

    def __post_init__(self):
        arr = np.asarray(self.ordinates, dtype=float)
        object.__setattr__(self, "ordinates", arr)
        if arr.size:
            if np.any(np.diff(arr) <= 0.0):
                raise ValueError("ordinates must be strictly increasing")
            if arr[0] <= 0.0 or arr[-1] > self.complete_to * (1 + 1e-12):
                raise ValueError("ordinates must lie in (0, complete_to]")

    def __len__(self):
        return int(self.ordinates.size)


def find_zeros(t_max, step=0.05, tol=1e-9):
    """Scan Z(t) on (0, t_max] and bisect each sign change.

    The count is cross-checked against theta(t_max)/pi + 1; a defect of
    one or more raises MissedZeroError rather than returning a bad table.
    """
    if t_max <= 0.0:
        raise ValueError("t_max must be positive")
    ts = np.arange(step, t_max + 0.5 * step, step)
    if ts[-1] > t_max:
        ts[-1] = t_max
    zs = np.array([hardy_z(t) for t in ts])
    found = []
    for i in range(len(ts) - 1):
        a, b, za, zb = ts[i], ts[i + 1], zs[i], zs[i + 1]
        if za == 0.0:
            found.append(a)
            continue
        if za * zb < 0.0:
            while b - a > tol:
                m = 0.5 * (a + b)
                zm = hardy_z(m)
                if zm == 0.0:
                    a = b = m
                    break
                if za * zm < 0.0:
                    b = m
                else:
                    a, za = m, zm
            found.append(0.5 * (a + b))
    if zs[-1] == 0.0:
        found.append(ts[-1])
    expected = rvm_count_estimate(t_max)
    if abs(len(found) - expected) >= 1.0:
        raise MissedZeroError(
            f"found {len(found)} zeros below {t_max} but the counting "
            f"estimate gives {expected:.3f}; refine the scan step")
    return ZeroTable(np.array(found), float(t_max), int(round(-math.log10(tol))))


def write_zero_table(table, path):
    digits = table.precision
    with open(path, "w") as fh:
        fh.write(f"# zeros complete_to={table.complete_to} "
                 f"precision={table.precision}\n")
        for g in table.ordinates:
            fh.write(f"{g:.{digits}f}\n")


def read_zero_table(path):
    """Parse a zero-table file; malformed lines raise with their number."""
    complete_to = None
    precision = 9
    vals = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                for tok in line[1:].split():
                    if tok.startswith("complete_to="):
                        complete_to = float(tok.split("=", 1)[1])
                    elif tok.startswith("precision="):
                        precision = int(tok.split("=", 1)[1])
                continue
            try:
                vals.append(float(line))
            except ValueError:
                raise ValueError(f"line {lineno}: not a number: {line!r}")
            if len(vals) >= 2 and vals[-1] <= vals[-2]:
                raise ValueError(f"line {lineno}: ordinates must increase")
    if complete_to is None:
        complete_to = vals[-1] if vals else 0.0
    table = ZeroTable(np.array(vals), complete_to, precision)
    if vals:
        expected = rvm_count_estimate(complete_to)
        if abs(len(vals) - expected) >= 1.0:
            warnings.warn(
                f"zero table holds {len(vals)} entries below {complete_to} "
                f"but the counting estimate gives {expected:.3f}",
                stacklevel=2)
    return table
