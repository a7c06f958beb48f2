"""Automorphic Green's functions by the defining sum over the projective group.

G_{k/2}(z1, z2) = -2 sum_gamma Q_{k/2-1}(1 + |z1 - gamma z2|^2 / (2 y1 Im(gamma z2)))

with gamma enumerated as T^n gamma0(c, d): bottom rows (c, d), c = 0 mod N,
gcd(c, d) = 1 (c = 0 giving pure translations), top row fixed by the least
nonnegative a with a d = 1 mod c.

Summation strategy.  The translation direction is Poisson-resummed through the
exact identity (h = Im(gamma z2) below y1, x0 the horizontal offset)

  sum_n Q_{s-1}(1 + ((x0-n)^2 + (y1-h)^2)/(2 y1 h))
      = 2 pi/(2s-1) h^s y1^(1-s)
        + 4 pi sqrt(y1 h) sum_{m>=1} I_{s-1/2}(2 pi m h) K_{s-1/2}(2 pi m y1)
          cos(2 pi m x0).

The smooth m = 0 layer, summed over d, reduces to S_c = sum_{gcd(d,c)=1}
|c z2 + d|^(-2s), which is evaluated in closed form by a Moebius/Poisson
divisor sum, so entire coset shells cost a handful of exponentials.  The
oscillatory m >= 1 layer carries Bessel decay and sign cancellation in c; it
is summed directly over a window in d while its envelope is alive.  Images
whose height approaches y1 (the near-diagonal part) are summed as explicit
translation windows.

This module is the oracle against which the contour-integral representations
are validated, so it stays deliberately independent of them.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from scipy.special import iv as _besseli
from scipy.special import kv as _besselk

from .modforms import GroupSpec
from .numerics import NumResult
from .specfun import legendreQ, legendreQ_int_array

__all__ = ["DiagonalDivergence", "green_series", "green_series_multi",
           "resolvent_term", "cusp_asymptotic"]

_QS_PREF = {s: math.sqrt(math.pi) * math.gamma(s) / (math.gamma(s + 0.5) * 2.0**s)
            for s in range(2, 8)}  # Q_{s-1}(t) ~ pref * t^(-s)
_SIEVE_N = 1 << 17


class DiagonalDivergence(ArithmeticError):
    """z1 lies on the group orbit of z2 (numerically)."""


def _check_weight(k: int) -> int:
    if k < 4 or k % 2:
        raise ValueError("even weight k >= 4 required")
    s = k // 2
    if s - 1 > 6:
        raise ValueError("weights above 14 not supported")
    return s


@lru_cache(maxsize=512)
def _inv_table(c: int) -> np.ndarray:
    """inv[r] = r^-1 mod c for gcd(r, c) = 1, else 0."""
    t = np.zeros(max(c, 1), dtype=np.int64)
    for r in range(1, c):
        if math.gcd(r, c) == 1:
            t[r] = pow(r, -1, c)
    return t


@lru_cache(maxsize=2)
def _phi_sieve(n: int) -> np.ndarray:
    phi = np.arange(n + 1, dtype=np.int64)
    for p in range(2, n + 1):
        if phi[p] == p:
            phi[p::p] -= phi[p::p] // p
    return phi


@lru_cache(maxsize=2)
def _spf_sieve(n: int) -> np.ndarray:
    spf = np.zeros(n + 1, dtype=np.int64)
    for p in range(2, n + 1):
        if spf[p] == 0:
            spf[p::p] = np.where(spf[p::p] == 0, p, spf[p::p])
    return spf


def _prime_factors(c: int, spf: np.ndarray) -> list[int]:
    ps = []
    while c > 1:
        p = int(spf[c])
        ps.append(p)
        while c % p == 0:
            c //= p
    return ps


def _ft_lorentz_pow(s: int, a: float, w: float) -> float:
    """Fourier transform integral (u^2 + a^2)^(-s) e^(-2 pi i w u) du, w >= 0.

    Uses (u^2+b)^(-s) = (-1)^(s-1)/(s-1)! (d/db)^(s-1) (u^2+b)^(-1) applied to
    the elementary transform (pi/sqrt(b)) exp(-2 pi w sqrt(b)).
    """
    # represent F = exp(-2 pi a w) * sum_p coef[p] a^p, start with pi * a^-1
    coefs = {-1: math.pi}
    tp = 2.0 * math.pi * w
    for _ in range(s - 1):
        nxt = {}
        for p, r in coefs.items():  # d/da then 1/(2a)
            nxt[p - 2] = nxt.get(p - 2, 0.0) + 0.5 * p * r
            nxt[p - 1] = nxt.get(p - 1, 0.0) - 0.5 * tp * r
        coefs = nxt
    val = sum(r * a**p for p, r in coefs.items())
    sign = (-1.0) ** (s - 1) / math.factorial(s - 1)
    return sign * val * math.exp(-tp * a)


def _periodic_lorentz(s: int, theta: float, a: float) -> float:
    """P_s(theta, a) = sum_k ((theta + k)^2 + a^2)^(-s) by Poisson summation."""
    total = _ft_lorentz_pow(s, a, 0.0)
    jmax = int(6.7 * 18 / (2.0 * math.pi * a)) + 1 if a < 20 else 1
    for j in range(1, jmax + 1):
        t = _ft_lorentz_pow(s, a, float(j))
        total += 2.0 * t * math.cos(2.0 * math.pi * j * theta)
        if abs(t) < 1e-20 * abs(total):
            break
    return total


def _row_m0_exact(s: int, c: int, x2: float, y2: float, spf) -> float:
    """S_c = sum_{gcd(d, c) = 1} ((c x2 + d)^2 + (c y2)^2)^(-2s/2), exactly.

    Moebius over squarefree divisors e | c:
    S_c = sum_e mu(e) e^(-2s) P_s(f x2, f y2), f = c / e.
    """
    primes = _prime_factors(c, spf)
    total = 0.0
    for mask in range(1 << len(primes)):
        e = 1
        mu = 1.0
        mm = mask
        i = 0
        while mm:
            if mm & 1:
                e *= primes[i]
                mu = -mu
            mm >>= 1
            i += 1
        f = c // e
        total += mu * e ** (-2 * s) * _periodic_lorentz(s, f * x2, f * y2)
    return total


def green_series_multi(group: GroupSpec, k: int, z1s, z2: complex, tol: float = 1e-8):
    """green_series for several z1 sharing one z2; coset data is built once.

    Returns (values, abs_err, converged).
    """
    s = _check_weight(k)
    nu = s - 0.5
    N, aff, off = group.hecke_form()
    w1s = [aff * complex(z) + off for z in z1s]
    w2 = aff * complex(z2) + off
    x1 = np.array([w.real for w in w1s])
    y1 = np.array([w.imag for w in w1s])
    x2, y2 = w2.real, w2.imag
    if np.any(y1 <= 0) or y2 <= 0:
        raise ValueError("arguments must lie in the upper half-plane")
    y1min = float(np.min(y1))

    pref = _QS_PREF[s]
    tau = tol * 1e-3
    tm1_cut = (pref / tau) ** (1.0 / s)
    min_d2 = [math.inf]
    err = [0.0]
    totals = np.zeros(len(w1s))
    spf = _spf_sieve(_SIEVE_N)
    phi = _phi_sieve(_SIEVE_N)
    close_gap = 0.25

    def direct_window(w_re: np.ndarray, y2p: np.ndarray, i: int) -> float:
        """Explicit translation window for images near the height of z1[i]."""
        dx0 = x1[i] - w_re
        dy2 = (y1[i] - y2p) ** 2
        scale = 2.0 * y2p * y1[i]
        frac = dx0 - np.round(dx0)
        width2 = scale * tm1_cut - dy2
        md = float(np.min(frac**2 + dy2)) if len(frac) else math.inf
        if md < min_d2[0]:
            min_d2[0] = md
        acc = 0.0
        offn = 0
        while True:
            live = False
            for sign in ((1,) if offn == 0 else (1, -1)):
                o = sign * offn
                u2 = (frac - o) ** 2
                m = u2 <= width2
                if np.any(m):
                    live = True
                    tm1 = (u2[m] + dy2[m]) / scale[m]
                    acc += float(np.sum(legendreQ_int_array(s - 1, np.maximum(tm1, 1e-300))))
            if not live and offn > 3:
                break
            offn += 1
        wmax = np.sqrt(np.maximum(width2, 1.0))
        err[0] += float(np.sum(2.0 * pref * scale**s
                               / ((2 * s - 1) * wmax ** (2 * s - 1)))) / len(w1s)
        return acc

    # ---- c = 0 translations ----
    for i in range(len(w1s)):
        totals[i] += direct_window(np.array([x2]), np.array([y2]), i)

    m0_i = (2.0 * math.pi / (2 * s - 1)) * y2**s * y1 ** (1.0 - s)  # per-z1 m0 factor
    i_s = math.sqrt(math.pi) * math.gamma(s - 0.5) / math.gamma(s)

    # heights this close to y1 get the explicit treatment
    c_close_max = 0
    if y1min - close_gap < y2 * 4.0:  # only small c can produce close images
        lim = y2 / max(y1min - close_gap, 1e-9)
        c_close_max = int(math.sqrt(max(lim, 0.0)) / y2) + 1

    osc_hist: list[float] = []
    c = N
    conv = True
    while True:
        s_c = _row_m0_exact(s, c, x2, y2, spf)
        totals += m0_i * s_c

        # oscillatory + close layer while the envelope is alive
        need_osc = (len(osc_hist) < 3 or max(osc_hist[-3:]) > tol / 30.0
                    or c <= max(c_close_max, 8 * N))
        if need_osc:
            cy2 = c * y2
            # window wide enough that the neglected oscillatory tail ~ B (y2/u^2)^s
            # integrates below a small slice of tol
            b_pref = (4.0 * math.pi * math.sqrt(y1min) * math.pi ** nu
                      * float(_besselk(nu, 2.0 * math.pi * y1min)) / math.gamma(nu + 1.0))
            dcap_tol = (2.0 * b_pref * y2**s / ((2 * s - 1) * 0.05 * tol)) ** (1.0 / (2 * s - 1))
            dcap = max(24.0, 8.0 * cy2, dcap_tol)
            ds = np.arange(math.floor(-c * x2 - dcap), math.ceil(-c * x2 + dcap) + 1)
            ds = ds[np.gcd(np.abs(ds), c) == 1]
            q = c * w2 + ds
            y2p = y2 / np.abs(q) ** 2
            inv = _inv_table(c)[np.mod(ds, c)].astype(float)
            w_re = inv / c - (1.0 / (c * q)).real
            osc_row = 0.0
            for i in range(len(w1s)):
                close = y2p > y1[i] - close_gap
                if np.any(close):
                    # replace the smooth Poisson layer by the exact window there
                    totals[i] -= float(np.sum((2.0 * math.pi / (2 * s - 1))
                                              * y2p[close] ** s * y1[i] ** (1 - s)))
                    totals[i] += direct_window(w_re[close], y2p[close], i)
                far = ~close
                if np.any(far):
                    hi = y1[i]
                    root = 4.0 * math.pi * np.sqrt(hi * y2p[far])
                    x0 = x1[i] - w_re[far]
                    mm = 1
                    part = 0.0
                    while True:
                        bess = root * _besseli(nu, 2.0 * math.pi * mm * y2p[far]) \
                               * _besselk(nu, 2.0 * math.pi * mm * hi)
                        part += float(np.sum(bess * np.cos(2.0 * math.pi * mm * x0)))
                        pk = float(np.max(bess))
                        if pk < tau * 1e-2 or mm > 90:
                            err[0] += pk * len(x0) / len(w1s)
                            break
                        mm += 1
                    totals[i] += part
                    osc_row = max(osc_row, abs(part))
            # neglected oscillatory mass beyond the window, ~ exp(-2 pi y1) of m0 there
            j_t = _j_tail(dcap / cy2, s)
            mtail = (2.0 * math.pi / (2 * s - 1)) * y2**s * y1min ** (1 - s) \
                    * (phi[c] / c) * 2.0 * cy2 ** (1 - 2 * s) * j_t
            err[0] += 6.0 * math.exp(-2.0 * math.pi * y1min) * mtail
            osc_hist.append(osc_row)

        row_m0 = float(np.max(m0_i)) * s_c
        osc_done = len(osc_hist) >= 3 and max(osc_hist[-3:]) <= tol / 30.0 \
                   and c > max(c_close_max, 8 * N)
        if osc_done and row_m0 < tol / 30.0 and c >= 16 * N:
            # sieve the remaining smooth layer: S_c ~ (phi(c)/c) (c y2)^(1-2s) I_s
            cs = np.arange(c + N, _SIEVE_N, N, dtype=np.int64)
            rem = float(np.sum(phi[cs] * cs.astype(float) ** (-2.0 * s)))
            rem *= i_s * y2 ** (1.0 - 2.0 * s)
            totals += m0_i * rem
            # density-replacement slop ~ 1/c, plus neglected oscillatory shells
            err[0] += float(np.max(m0_i)) * rem * (1.0 / c) \
                      + 3.0 * max(osc_hist[-3:] or [0.0])
            break
        c += N
        if c > 40000:
            conv = False
            break
    if min_d2[0] < 1e-12:
        raise DiagonalDivergence("z1 is on the group orbit of z2")
    return -2.0 * totals, 2.0 * max(err[0], tol / 20.0), conv


_GL24 = np.polynomial.legendre.leggauss(24)


def _j_tail(w: float, s: int) -> float:
    """integral_w^inf (1 + v^2)^(-s) dv via v = tan(theta)."""
    a = math.atan(w)
    b = 0.5 * math.pi
    x = 0.5 * (b - a) * _GL24[0] + 0.5 * (a + b)
    return 0.5 * (b - a) * float(np.sum(_GL24[1] * np.cos(x) ** (2 * s - 2)))


def green_series(group: GroupSpec, k: int, z1: complex, z2: complex,
                 tol: float = 1e-8, full_result: bool = False):
    """Weight-k automorphic Green's function on `group` at (z1, z2).

    Raises DiagonalDivergence when z1 is numerically on the orbit of z2
    (orbit distance below 1e-6).
    """
    z1, z2 = complex(z1), complex(z2)
    if z2.imag > z1.imag:  # reciprocity; the taller point sharpens the tails
        z1, z2 = z2, z1
    vals, err, ok = green_series_multi(group, k, [z1], z2, tol)
    if full_result:
        return NumResult(complex(vals[0]), err, 0, ok)
    return float(vals[0])


def resolvent_term(z1: complex, z2: complex, s: float) -> float:
    """Free-space resolvent -2 Q_{s-1}(1 + |z1-z2|^2/(2 y1 y2)); SL(2,R)-homogeneous."""
    if s <= 1:
        raise ValueError("s > 1 required")
    z1, z2 = complex(z1), complex(z2)
    if z1 == z2:
        raise DiagonalDivergence("resolvent diverges on the diagonal")
    t = 1.0 + abs(z1 - z2) ** 2 / (2.0 * z1.imag * z2.imag)
    return -2.0 * legendreQ(s - 1.0, t)


def cusp_asymptotic(group: GroupSpec, k: int, z2: complex, y1_grid=(6.0, 9.0, 12.0),
                    tol: float = 1e-8) -> NumResult:
    """lim_{y1 -> inf} y1^(s-1) G_{k/2}(i y1, z2), s = k/2.

    The scaled values plateau with exponentially small corrections, so the
    last grid point is returned with the final increment as error estimate.
    """
    s = _check_weight(k)
    ys = sorted(y1_grid)
    vals = []
    for y in ys:
        vv, _, _ = green_series_multi(group, k, [1j * y], z2, tol=tol / y ** (s - 1))
        vals.append(float(vv[0]) * y ** (s - 1))
    diffs = [abs(b - a) for a, b in zip(vals, vals[1:])]
    err = diffs[-1] if diffs else math.inf
    return NumResult(complex(vals[-1]), err, len(ys), err <= 50 * tol, "plateau")
