"""Special functions: complete elliptic integrals, Legendre functions of
fractional degree, associated Legendre functions, polygamma, generalized
hypergeometric values at unit argument, and the Jacobi elliptic suite.

Conventions
-----------
* ellK uses the modulus-squared argument: ellK(lam) = K(sqrt(lam))
  = integral_0^{pi/2} (1 - lam cos^2 t)^(-1/2) dt, with the value for
  lam > 1 taken on the lam - i0+ side.
* Fractional powers are principal unless stated otherwise.
* Q^mu_nu carries the Hobson phase e^{i mu pi}.
"""

from __future__ import annotations

import cmath
import math
from typing import Iterable, Sequence

import numpy as np
from scipy.special import gamma as _gamma
from scipy.special import digamma as _digamma
from scipy.special import polygamma as _scipy_polygamma

from .numerics import integrate_segment

__all__ = [
    "DEGREE_OF_LEVEL",
    "LEVEL_OF_DEGREE",
    "ellK",
    "ellK_transforms",
    "hyp2f1",
    "legendreP",
    "legendreP_deriv",
    "legendreP_onesided",
    "legendreP_taylor0",
    "legendreQ",
    "legendreQ_int_array",
    "legendreP_assoc",
    "legendreQ_assoc",
    "polygamma",
    "pFq_unit",
    "jacobi_suite",
    "mehler_dirichlet_P",
]

_EPS = 1e-17

# degree <-> Hecke level dictionary, N = 4 sin^2(nu pi)
DEGREE_OF_LEVEL = {1: -1.0 / 6.0, 2: -0.25, 3: -1.0 / 3.0, 4: -0.5}
LEVEL_OF_DEGREE = {v: k for k, v in DEGREE_OF_LEVEL.items()}


# ----------------------------------------------------------------------------
# Complete elliptic integral of the first kind via the arithmetic-geometric
# mean, with principal-branch square roots ("optimal" AGM).
# ----------------------------------------------------------------------------

def _agm(a: complex, g: complex) -> complex:
    for _ in range(64):
        if abs(a - g) <= 1e-17 * abs(a):
            break
        a, g = 0.5 * (a + g), cmath.sqrt(a * g)
        if (g / a).real < 0:
            g = -g
    return 0.5 * (a + g)


def ellK(lam: complex) -> complex:
    """K(sqrt(lam)) in the modulus-squared convention, lam off [1, inf).

    For real lam > 1 the one-sided value at lam - i0+ is returned.  lam = 1
    is a logarithmic pole and raises ZeroDivisionError.
    """
    lam = complex(lam)
    if lam.imag == 0.0 and lam.real >= 1.0:
        if lam.real == 1.0:
            raise ZeroDivisionError("K has a logarithmic pole at lam = 1")
        # K(sqrt(lam - i0+)) = [K(sqrt(1/lam)) - i K(sqrt(1 - 1/lam))] / sqrt(lam)
        il = 1.0 / lam.real
        return (ellK(il) - 1j * ellK(1.0 - il)) / math.sqrt(lam.real)
    return math.pi / (2.0 * _agm(1.0 + 0j, cmath.sqrt(1.0 - lam)))


def ellK_comp(lam: complex) -> complex:
    """K(sqrt(1 - lam)), stable for |lam| far below double resolution.

    For tiny lam the direct form 1 - lam rounds to 1 (a pole of ellK); the
    logarithmic asymptotic takes over there.
    """
    lam = complex(lam)
    if abs(lam) >= 1e-8:
        return ellK(1.0 - lam)
    lg = cmath.log(4.0) - 0.5 * cmath.log(lam) if lam != 0 else complex(math.inf)
    return lg + 0.25 * lam * (lg - 1.0)


def ellK_transforms(lam: complex) -> dict:
    """Right-hand sides of the degree-1 modular transformations of K.

    'imaginary_modulus'      : K(sqrt(lam/(lam-1))) / sqrt(1-lam)   (= ellK(lam))
    'inverse_modulus_upper'  : sqrt(lam) [K(sqrt(lam)) - i K(sqrt(1-lam))]
                               (= ellK(1/lam) for Im lam > 0 or 0 < lam < 1)
    'inverse_modulus_lower'  : sqrt(lam) [K(sqrt(lam)) + i K(sqrt(1-lam))]
                               (= ellK(1/lam) for Im lam < 0 or lam > 1)
    """
    lam = complex(lam)
    if lam.imag == 0.0 and lam.real in (0.0, 1.0):
        raise ValueError("lam on the excluded set of the transformations")
    k = ellK(lam)
    kc = ellK(1.0 - lam)
    rt = cmath.sqrt(lam)
    return {
        "imaginary_modulus": ellK(lam / (lam - 1.0)) / cmath.sqrt(1.0 - lam),
        "inverse_modulus_upper": rt * (k - 1j * kc),
        "inverse_modulus_lower": rt * (k + 1j * kc),
    }


# ----------------------------------------------------------------------------
# Gauss hypergeometric function, double precision, complex argument.
# ----------------------------------------------------------------------------

def _poch_ratio_series(a, b, c, w, max_terms=600):
    term = 1.0 + 0.0j
    total = term
    for n in range(max_terms):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * w
        total += term
        if abs(term) <= _EPS * abs(total) and n > 3:
            return total
    raise ArithmeticError("2F1 series did not converge")


def _hyp2f1_near_one(a, b, c, w):
    s = c - a - b
    omw = 1.0 - w
    if abs(s - round(s.real if isinstance(s, complex) else s)) > 1e-9:
        t1 = (_gamma(c) * _gamma(s) / (_gamma(c - a) * _gamma(c - b))
              * _poch_ratio_series(a, b, a + b - c + 1.0, omw))
        t2 = (omw ** s * _gamma(c) * _gamma(-s) / (_gamma(a) * _gamma(b))
              * _poch_ratio_series(c - a, c - b, s + 1.0, omw))
        return t1 + t2
    m = int(round(s.real if isinstance(s, complex) else s))
    if m != 0:
        import mpmath
        return complex(mpmath.hyp2f1(a, b, c, mpmath.mpc(w)))
    # c = a + b: logarithmic connection
    pref = _gamma(a + b) / (_gamma(a) * _gamma(b))
    lg = cmath.log(omw)
    total = 0.0 + 0.0j
    term = 1.0 + 0.0j
    for n in range(600):
        coef = 2.0 * _digamma(n + 1.0) - _digamma(a + n) - _digamma(b + n)
        inc = term * (coef - lg)
        total += inc
        term *= (a + n) * (b + n) / ((n + 1.0) ** 2) * omw
        if abs(term) * (abs(coef) + abs(lg) + 2.0) <= _EPS * abs(total) and n > 3:
            break
    else:
        raise ArithmeticError("2F1 log-connection did not converge")
    return pref * total


def hyp2f1(a: float, b: float, c: float, w: complex) -> complex:
    """2F1(a, b; c; w) for complex w off the cut [1, inf), real parameters.

    Strategy: direct series for small |w|, Pfaff transform when w/(w-1) is
    small, the w -> 1-w connection near the cut (including the logarithmic
    case c = a + b), and an mpmath fallback for the rare remainder.
    """
    w = complex(w)
    if w == 0:
        return 1.0 + 0.0j
    if w == 1.0:
        s = c - a - b
        if s <= 0:
            raise ZeroDivisionError("2F1 diverges at unit argument")
        return complex(_gamma(c) * _gamma(s) / (_gamma(c - a) * _gamma(c - b)))
    if abs(w) <= 0.65:
        return _poch_ratio_series(a, b, c, w)
    wp = w / (w - 1.0)
    if abs(wp) <= 0.65:
        return (1.0 - w) ** (-a) * _poch_ratio_series(a, c - b, c, wp)
    if abs(1.0 - w) <= 0.75:
        return _hyp2f1_near_one(a, b, c, w)
    import mpmath
    return complex(mpmath.hyp2f1(a, b, c, mpmath.mpc(w)))


# ----------------------------------------------------------------------------
# Legendre functions of the first kind, complex argument, degree nu.
# ----------------------------------------------------------------------------

def legendreP(nu: float, xi: complex) -> complex:
    """P_nu(xi) = 2F1(-nu, nu+1; 1; (1-xi)/2), xi off the cut (-inf, -1]."""
    xi = complex(xi)
    return hyp2f1(-nu, nu + 1.0, 1.0, 0.5 * (1.0 - xi))


def legendreP_deriv(nu: float, xi: complex) -> complex:
    """d/dxi P_nu(xi)."""
    return 0.5 * nu * (nu + 1.0) * hyp2f1(1.0 - nu, nu + 2.0, 2.0, 0.5 * (1.0 - complex(xi)))


def legendreP_onesided(nu: float, xi: float, side: int = +1) -> complex:
    """P_nu(xi +- i0+) for real xi < -1.

    P_nu(xi +- i0+) = [cos(nu pi) +- i sin(nu pi)] P_nu(-xi)
                      - (2/pi) sin(nu pi) Q_nu(-xi).
    """
    if xi >= -1.0:
        raise ValueError("one-sided values only apply on the cut xi < -1")
    sn, cs = math.sin(nu * math.pi), math.cos(nu * math.pi)
    p = legendreP(nu, -xi).real
    q = legendreQ(nu, -xi)
    return (cs + 1j * side * sn) * p - 2.0 * sn * q / math.pi


def legendreP_taylor0(nu: float, n_coeffs: int) -> np.ndarray:
    """Taylor coefficients of P_nu about 0, from the Legendre equation.

    a_{k+2} = a_k [k(k+1) - nu(nu+1)] / [(k+1)(k+2)], seeded with the exact
    hypergeometric values P_nu(0) and P_nu'(0).
    """
    a = np.zeros(n_coeffs, dtype=float)
    a[0] = legendreP(nu, 0.0).real
    if n_coeffs > 1:
        a[1] = legendreP_deriv(nu, 0.0).real
    lam = nu * (nu + 1.0)
    for k in range(n_coeffs - 2):
        a[k + 2] = a[k] * (k * (k + 1.0) - lam) / ((k + 1.0) * (k + 2.0))
    return a


# ----------------------------------------------------------------------------
# Legendre functions of the second kind on (1, inf).
# ----------------------------------------------------------------------------

def legendreQ(nu: float, t: float) -> float:
    """Q_nu(t) for t > 1, nu > -1 (Laplace-integral normalisation).

    Descending hypergeometric form
        Q_nu(t) = sqrt(pi) Gamma(nu+1) / (Gamma(nu+3/2) (2t)^{nu+1})
                  * 2F1((nu+2)/2, (nu+1)/2; nu+3/2; 1/t^2),
    with the logarithmic connection near t = 1 handled inside hyp2f1.
    """
    if t <= 1.0:
        raise ValueError("legendreQ requires t > 1")
    if nu <= -1.0:
        raise ValueError("legendreQ requires nu > -1")
    pref = math.sqrt(math.pi) * _gamma(nu + 1.0) / (_gamma(nu + 1.5) * (2.0 * t) ** (nu + 1.0))
    return float((pref * hyp2f1(0.5 * (nu + 2.0), 0.5 * (nu + 1.0), nu + 1.5, 1.0 / (t * t))).real)


def legendreQ_int_array(n: int, tm1: np.ndarray) -> np.ndarray:
    """Vectorised Q_n(1 + tm1) for integer n in [0, 6], tm1 > 0.

    Small arguments use the exact log form Q_n = P_n L/2 - W_{n-1} with
    L = log((t+1)/(t-1)) computed from tm1 without cancellation; large
    arguments use the descending series in 1/t^2.
    """
    tm1 = np.asarray(tm1, dtype=float)
    t = 1.0 + tm1
    out = np.empty_like(t)
    small = tm1 < 1.0
    if np.any(small):
        ts = t[small]
        L = np.log(2.0 + tm1[small]) - np.log(tm1[small])  # log((t+1)/(t-1))
        p_prev = np.ones_like(ts)
        p_cur = ts.copy()
        ps = [p_prev, p_cur]
        for k in range(2, n + 1):
            p_nxt = ((2 * k - 1) * ts * ps[-1] - (k - 1) * ps[-2]) / k
            ps.append(p_nxt)
        w = np.zeros_like(ts)
        for k in range(1, n + 1):
            w += ps[k - 1] * ps[n - k] / k
        out[small] = 0.5 * ps[n] * L - w
    big = ~small
    if np.any(big):
        tb = t[big]
        x = 1.0 / (tb * tb)
        a = 0.5 * (n + 2.0)
        b = 0.5 * (n + 1.0)
        c = n + 1.5
        term = np.ones_like(tb)
        s = term.copy()
        for m in range(200):
            term = term * ((a + m) * (b + m) / ((c + m) * (m + 1.0))) * x
            s += term
            if np.max(np.abs(term)) <= 1e-17 * np.max(np.abs(s)):
                break
        pref = (math.sqrt(math.pi) * math.factorial(n) / _gamma(n + 1.5)) / (2.0 * tb) ** (n + 1.0)
        out[big] = pref * s
    return out


# ----------------------------------------------------------------------------
# Associated Legendre functions on (1, inf), Hobson phase convention.
# ----------------------------------------------------------------------------

def legendreP_assoc(mu: float, nu: float, x: float) -> float:
    """P^mu_nu(x) for x > 1, mu > -1/2.

    ((x+1)/(x-1))^{mu/2} 2F1(-nu, nu+1; 1-mu; (1-x)/2) / Gamma(1-mu).
    """
    if x <= 1.0:
        raise ValueError("legendreP_assoc requires x > 1")
    if mu <= -0.5:
        raise ValueError("order constraint mu > -1/2 violated")
    pref = ((x + 1.0) / (x - 1.0)) ** (0.5 * mu) / _gamma(1.0 - mu)
    return float((pref * hyp2f1(-nu, nu + 1.0, 1.0 - mu, 0.5 * (1.0 - x))).real)


def legendreQ_assoc(mu: float, nu: float, x: float) -> complex:
    """Q^mu_nu(x) for x > 1, mu > -1/2, mu + nu + 1 > 0, with the e^{i mu pi} phase."""
    if x <= 1.0:
        raise ValueError("legendreQ_assoc requires x > 1")
    if mu <= -0.5 or mu + nu + 1.0 <= 0.0:
        raise ValueError("parameter constraints violated")
    pref = (cmath.exp(1j * mu * math.pi) * math.sqrt(math.pi) * _gamma(nu + mu + 1.0)
            * (x * x - 1.0) ** (0.5 * mu)
            / (2.0 ** (nu + 1.0) * x ** (nu + mu + 1.0) * _gamma(nu + 1.5)))
    return pref * hyp2f1(0.5 * (nu + mu + 2.0), 0.5 * (nu + mu + 1.0), nu + 1.5, 1.0 / (x * x))


# ----------------------------------------------------------------------------
# Polygamma with negative-argument recurrence.
# ----------------------------------------------------------------------------

def polygamma(m: int, x: float) -> float:
    """psi^(m)(x) for x not a non-positive integer."""
    if x <= 0.0 and x == round(x):
        raise ValueError("polygamma pole at non-positive integer")
    shift = 0.0
    sign = (-1.0) ** m * math.factorial(m)
    while x < 1.0:
        shift -= sign * x ** (-(m + 1))
        x += 1.0
    if m == 0:
        return float(_digamma(x)) + shift
    return float(_scipy_polygamma(m, x)) + shift


# ----------------------------------------------------------------------------
# Generalized hypergeometric series at unit argument.
# ----------------------------------------------------------------------------

def pFq_unit(upper: Sequence[float], lower: Sequence[float]) -> float:
    """pFq(upper; lower; 1) with convergence-margin validation.

    The convergence margin is sum(lower) - sum(upper); the series converges
    at unit argument iff it is positive.  Margins below 0.05 are refused
    (near-degenerate parameter sets), everything else is delegated to an
    arbitrary-precision backend with the result rounded to double.
    """
    margin = sum(lower) - sum(upper)
    if margin <= 0.0:
        raise ValueError(f"divergent parameter set (margin {margin:.3g} <= 0)")
    if margin < 0.05:
        raise ValueError(f"refusing near-degenerate unit-argument series (margin {margin:.3g})")
    for b in lower:
        if b <= 0.0 and b == round(b):
            raise ValueError("lower parameter at a non-positive integer")
    import mpmath
    with mpmath.workdps(30):
        val = mpmath.hyper(list(upper), list(lower), 1)
    return float(val)


# ----------------------------------------------------------------------------
# Jacobi theta and elliptic functions, lam in (0, 1).
# ----------------------------------------------------------------------------

def _thetas(v: complex, q: float):
    """theta_1..theta_4 at argument v, nome q, truncated below 1e-17."""
    t1 = 0.0 + 0.0j
    t2 = 0.0 + 0.0j
    t3 = 1.0 + 0.0j
    t4 = 1.0 + 0.0j
    t1p = 0.0 + 0.0j  # d theta_1 / dv, kept for Z
    t4p = 0.0 + 0.0j
    for n in range(0, 60):
        qh = q ** ((n + 0.5) ** 2)
        qs = q ** ((n + 1.0) ** 2)
        s1 = cmath.sin((2 * n + 1) * v)
        c1 = cmath.cos((2 * n + 1) * v)
        t1 += 2.0 * (-1) ** n * qh * s1
        t1p += 2.0 * (-1) ** n * qh * (2 * n + 1) * c1
        t2 += 2.0 * qh * c1
        c2 = cmath.cos(2 * (n + 1) * v)
        s2 = cmath.sin(2 * (n + 1) * v)
        t3 += 2.0 * qs * c2
        t4 += 2.0 * (-1) ** (n + 1) * qs * c2
        t4p += -2.0 * (-1) ** (n + 1) * qs * 2 * (n + 1) * s2
        if qh < 1e-17 and qs < 1e-17 and n > 2:
            break
    return t1, t2, t3, t4, t1p, t4p


def jacobi_suite(u: complex, lam: float) -> dict:
    """Jacobi Theta, Z, sn, cn, dn at (u | lam) for lam in (0, 1).

    Built from theta q-series with nome q = exp(-pi K(sqrt(1-lam))/K(sqrt(lam))).
    """
    if not (0.0 < lam < 1.0):
        raise ValueError("jacobi_suite supports lam in (0, 1) only")
    kk = ellK(lam).real
    kkp = ellK(1.0 - lam).real
    q = math.exp(-math.pi * kkp / kk)
    v = math.pi * u / (2.0 * kk)
    t1, t2, t3, t4, t1p, t4p = _thetas(v, q)
    z10, z20, z30, z40, *_ = _thetas(0.0, q)
    sn = (z30 / z20) * (t1 / t4)
    cn = (z40 / z20) * (t2 / t4)
    dn = (z40 / z30) * (t3 / t4)
    big_theta = t4
    big_z = (math.pi / (2.0 * kk)) * (t4p / t4)
    return {"Theta": big_theta, "Z": big_z, "sn": sn, "cn": cn, "dn": dn,
            "K": kk, "Kprime": kkp, "nome": q}


# ----------------------------------------------------------------------------
# Mehler-Dirichlet quadrature representation (test oracle).
# ----------------------------------------------------------------------------

def mehler_dirichlet_P(nu: float, theta: float, tol: float = 1e-11) -> float:
    """P_nu(cos theta) by quadrature of the Mehler-Dirichlet integral."""
    if not 0.0 < theta < math.pi:
        raise ValueError("theta in (0, pi) required")

    def f(beta):
        b = beta.real
        return math.cos(0.5 * (2.0 * nu + 1.0) * b) / math.sqrt(2.0 * (math.cos(b) - math.cos(theta)))

    r = integrate_segment(f, 0.0, theta, tol, sing_end=("alg", -0.5))
    return 2.0 / math.pi * r.value.real
