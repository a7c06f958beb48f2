"""Renormalized weight-4 self-energies (Gross-Zagier subtraction).

Three routes are implemented and cross-checked:

* the limit route: G(z) = lim_{z'->z}[G(z,z') - 2 m log|z-z'|]
                          - m (2 log 2pi + log|Delta(z)|/3),
  with m the stabilizer order, via a geometric delta-sequence and
  log-aware extrapolation;
* the integral route: closed leading logarithm of hauptmodul data plus two
  regularized Legendre-plane integrals (the 2/(xi-xi0) subtraction), with
  principal-value handling when the kernel pole sits on the real segment;
* closed forms at the elliptic points and on level 4, where
  G(z) = -(1/3) log|Delta(z)/Delta(2z)| for every z.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from . import modforms as mf
from .green_kz import PathConstructionError, rnu, varrho_2nu, _ratio
from .green_series import green_series_multi
from .modforms import GroupSpec
from .numerics import NumResult, integrate_segment, richardson_limit
from .specfun import legendreP, legendreP_deriv, legendreP_taylor0, legendreQ

__all__ = [
    "elliptic_multiplicity", "self_energy_limit", "self_energy_integral",
    "self_energy_elliptic", "hecke4_closed_form", "ELLIPTIC_CLOSED",
]

# closed values of the four elliptic-point self-energies
ELLIPTIC_CLOSED = {
    ("psl2z", "i"): -4.0 * (math.log(2.0) + math.log(3.0)),
    ("psl2z", "rho"): -3.0 * (2.0 * math.log(2.0) + math.log(3.0)),
    ("gamma0_2", "ell"): -4.0 * math.log(2.0),
    ("gamma0_3", "ell"): -3.0 * math.log(3.0),
}


def elliptic_multiplicity(group: GroupSpec, z: complex) -> int:
    """Stabilizer order of z in the projective group, via modular invariants."""
    N, aff, off = group.hecke_form()
    w = aff * complex(z) + off
    if N == 1:
        jv = mf.psl_jets(w, 0)["j"].value
        if abs(jv - 1728.0) < 1e-5 * 1728.0:
            return 2
        if abs(jv) < 1e-3:
            return 3
        return 1
    if N in (2, 3):
        a = mf.eval_alphaN(N, w)
        if not math.isfinite(a.real) or abs(a) > 1e6:
            return 2 if N == 2 else 3
    return 1


def self_energy_limit(group: GroupSpec, z: complex, tol: float = 1e-7) -> NumResult:
    """Self-energy by the defining limit with a geometric delta-sequence.

    Evaluates G(z + delta_j, z) for delta_j = 0.01 y 2^-j, j = 0..5, subtracts
    2 m log(delta_j), and extrapolates with the model A + B delta log delta
    + C delta; the eta-dependent constant uses log|Delta| = 24 log|eta|.
    """
    z = complex(z)
    m = elliptic_multiplicity(group, z)
    delta0 = 0.01 * z.imag
    deltas = [delta0 * 2.0**-j for j in range(6)]
    vals, err_g, _ = green_series_multi(group, 4, [z + d for d in deltas], z,
                                        tol=min(tol / 30.0, 1e-9))
    N, aff, off = group.hecke_form()
    w = aff * z + off
    log_abs_delta = math.log(abs(mf.psl_jets(w, 0)["delta"].value))
    # the affine map rescales |z - z'|: subtract 2m log|aff| once
    samples = [(d, float(v) - 2.0 * m * math.log(d)) for d, v in zip(deltas, vals)]
    r = richardson_limit(samples, tol)
    const = m * (2.0 * math.log(2.0 * math.pi) + log_abs_delta / 3.0
                 + 2.0 * math.log(abs(aff)))
    return NumResult(r.value - const, r.abs_err + 6.0 * err_g, r.evaluations,
                     r.converged)


# ----------------------------------------------------------------------------
# Integral route.
# ----------------------------------------------------------------------------

def _leading_log(N: int, z: complex) -> float:
    if N == 1:
        s = mf.sqrt_j_ratio(z)
        jv = mf.psl_jets(z, 0)["j"].value
        return math.log(2.0**10 * 3.0**6 / (abs(jv) ** (5.0 / 3.0) * abs(1.0 - s) ** 2))
    if N == 2:
        lam = mf.eval_lambda(2.0 * z + 1.0)
        return (math.log(2.0**4 / (abs(1.0 - 2.0 * lam) ** 6 * abs(1.0 - lam) * abs(lam)))
                / 3.0)
    if N == 3:
        a3 = mf.eval_alphaN(3, z)
        return math.log(3.0 * abs(1.0 - a3) / abs(a3) ** (1.0 / 3.0))
    lam = mf.eval_lambda(2.0 * z)
    return math.log(2.0**4 * abs(1.0 - lam) ** 2 / abs(lam)) / 3.0


_NU_OF_LEVEL = {1: -1.0 / 6.0, 2: -0.25, 3: -1.0 / 3.0, 4: -0.5}


def _pv_unit_interval(f_smooth, poles, tol):
    """Re of the detoured integral over [-1, 1] of f, poles subtracted.

    poles: list of (p, c2, c1) real pole locations with Laurent coefficients
    c2/(xi-p)^2 + c1/(xi-p); f_smooth must already have them removed.
    """
    r = integrate_segment(f_smooth, -1.0, 1.0, tol, sing_start="log", sing_end="log")
    total = r.value.real
    for p, c2, c1 in poles:
        total += c2 * (-2.0 / (1.0 - p * p))
        total += c1 * math.log((1.0 - p) / (1.0 + p))
    return total, r.abs_err


def self_energy_integral(group: GroupSpec, z: complex, tol: float = 1e-7) -> NumResult:
    """Self-energy from the closed leading log plus regularized integrals.

    Requires a non-elliptic z; the kernel-pole geometry must be admissible
    (PathConstructionError otherwise).  Fricke fixed points (xi0 = 0) and
    purely imaginary z (real xi0) are handled by principal values.
    """
    z = complex(z)
    N, aff, off = group.hecke_form()
    if elliptic_multiplicity(group, z) != 1:
        raise ValueError("elliptic point: use self_energy_elliptic")
    w0 = aff * z + off
    w0, _ = mf.fundamental_domain_reduce(w0, GroupSpec("gamma0", N) if N > 1
                                         else GroupSpec("psl2z"))
    nu = _NU_OF_LEVEL[N]
    if N == 1:
        xi0 = mf.sqrt_j_ratio(w0)
    else:
        xi0 = 1.0 - 2.0 * mf.eval_alphaN(N, w0)
    if abs(xi0) < 1e-12:
        xi0 = 0.0 + 0.0j
    r0 = rnu(nu, xi0) if xi0 != 0 else 0.0 + 0.0j
    wr = _ratio(nu, xi0) if xi0 != 0 else 1j
    c = math.pi / (math.sqrt(N) * wr.imag)

    def rho(xi):
        out = varrho_2nu(nu, xi, xi0, r0)
        if N == 1:
            out = out + varrho_2nu(nu, xi, -xi0, -r0)
        return out

    # ---- first integral: from xi0 to 1 with the 2/(xi - xi0) subtraction ----
    def h_first(xi):
        r = _ratio(nu, xi)
        return (2.0 / (xi - xi0)
                + c * legendreP(nu, xi) ** 2 * rho(xi) * (r - wr) * (r - wr.conjugate()))

    span = 1.0 - xi0
    if abs(span) < 1e-9:
        first = 0.0
        err1 = 0.0
    else:
        step = 1e-5 * abs(span)
        start = xi0 + step * span / abs(span)
        sliver = h_first(xi0 + 0.5 * step * span / abs(span)) * step * span / abs(span)
        # reject paths through the reflected pole (level 1)
        if N == 1 and abs(xi0) > 1e-9:
            t = ((-xi0 - xi0) / span).real
            if 0.0 <= t <= 1.0 and abs(xi0 + t * span + xi0) < 1e-2:
                raise PathConstructionError("reflected kernel pole on the segment")
        r1 = integrate_segment(h_first, start, 1.0, tol / 8.0, sing_end="log")
        first = (r1.value + sliver).real
        err1 = r1.abs_err + abs(sliver) * 1e-2

    # ---- second integral over [-1, 1] ----
    sign = +1.0 if N == 1 else -1.0  # P(xi)^2 at level 1, P(-xi)^2 otherwise

    def g(xi):
        return c * legendreP(nu, sign * xi) ** 2

    def g_deriv(p):
        return 2.0 * c * legendreP(nu, sign * p) * legendreP_deriv(nu, sign * p) * sign

    poles = []
    if abs(xi0.imag) < 1e-9 and abs(xi0.real) < 1.0 - 1e-9:
        ps = [float(xi0.real)]
        if N == 1 and abs(xi0) > 1e-9:
            ps.append(-float(xi0.real))
        one = float((1.0 - xi0 * xi0).real)
        for p in ps:
            sgn_pole = 1.0 if (p == xi0.real) else -1.0
            rr = (r0 if sgn_pole > 0 else -r0).real
            c2 = one * g(p).real
            c1 = one * g_deriv(p).real - rr * g(p).real
            poles.append((p, c2, c1))

        def f_smooth(xi):
            val = g(xi) * rho(xi)
            for p, c2, c1 in poles:
                d = xi - p
                val = val - c2 / (d * d) - c1 / d
            return val

        second, err2 = _pv_unit_interval(f_smooth, poles, tol / 8.0)
    else:
        def f_plain(xi):
            return g(xi) * rho(xi)

        r2 = integrate_segment(f_plain, -1.0, 1.0, tol / 8.0,
                               sing_start="log", sing_end="log")
        second, err2 = r2.value.real, r2.abs_err

    val = _leading_log(N, w0) + first + second + 2.0
    return NumResult(complex(val), err1 + err2 + tol / 10.0, 0, True)


# ----------------------------------------------------------------------------
# Elliptic points: the four closed evaluations and their integral forms.
# ----------------------------------------------------------------------------

def _int_1_to_inf(fun, tol):
    """integral_1^inf fun(xi) dxi via xi = 1/u."""
    def g(u):
        return fun(1.0 / u) / (u * u)

    r = integrate_segment(g, 0.0, 1.0, tol, sing_start=("alg", 0.5), sing_end="log")
    return r.value.real, r.abs_err


def self_energy_elliptic(group: GroupSpec, z: complex, tol: float = 1e-8):
    """Self-energy at an elliptic point: (integral-route value, closed form).

    The integral route evaluates the displayed regularized integrals with the
    lemniscatic and cubic L-values taken from high-precision series.
    """
    from .identities import lvalue_series

    z = complex(z)
    fam = group.family
    N = group.hecke_form()[0]
    m = elliptic_multiplicity(group, z)
    if m == 1:
        raise ValueError("not an elliptic point of the group")
    catalan = lvalue_series("L", 2, -4)
    l2m3 = lvalue_series("L", 2, -3)

    if N == 1 and m == 2:  # orbit of i
        nu = -1.0 / 6.0

        def f(xi):
            p1 = legendreP(nu, xi).real
            p2 = legendreP(nu, -xi).real
            return 4.0 / xi + 2.0 * math.pi * (p1 * p1 - p2 * p2) / (xi * xi)

        # near 0 the two terms cancel exactly at order 1/xi; start past the
        # noise region and restore the sliver from the Taylor series of P^2
        eps = 1e-4
        a = legendreP_taylor0(nu, 20)
        conv = np.convolve(a, a)
        sliver = 2.0 * math.pi * sum(2.0 * conv[mm] * eps ** (mm - 1) / (mm - 1)
                                     for mm in range(3, len(conv), 2))
        r = integrate_segment(f, eps, 1.0, tol / 4.0, sing_end="log")
        val = (2.0 * math.log(3.0) + r.value.real + sliver
               - 40.0 * catalan / math.pi + 4.0)
        closed = ELLIPTIC_CLOSED[("psl2z", "i")]
        return NumResult(complex(val), r.abs_err + tol / 10.0, 0, True), closed
    if N == 1 and m == 3:  # orbit of the order-3 corner
        nu = -1.0 / 6.0

        def f(xi):
            p = legendreP(nu, xi).real
            q = legendreQ(nu, xi)
            return 4.0 / xi - 8.0 * p * q / 3.0 - 8.0 * q * q / (3.0 * math.sqrt(3.0) * math.pi)

        v, e = _int_1_to_inf(f, tol / 4.0)
        val = 3.0 * math.log(4.0 / 3.0) + v - 30.0 * math.sqrt(3.0) * l2m3 / math.pi + 6.0
        return NumResult(complex(val), e + tol / 10.0, 0, True), ELLIPTIC_CLOSED[("psl2z", "rho")]
    if N == 2:
        nu = -0.25

        def f(xi):
            p = legendreP(nu, xi).real
            q = legendreQ(nu, xi)
            return 2.0 / xi - p * q - q * q / math.pi

        v, e = _int_1_to_inf(f, tol / 4.0)
        val = -2.0 * math.log(2.0) + v - 16.0 * catalan / math.pi + 4.0
        return NumResult(complex(val), e + tol / 10.0, 0, True), ELLIPTIC_CLOSED[("gamma0_2", "ell")]
    if N == 3:
        nu = -1.0 / 3.0

        def f(xi):
            p = legendreP(nu, xi).real
            q = legendreQ(nu, xi)
            return 2.0 / xi - 2.0 * p * q / 3.0 - 2.0 * q * q / (math.sqrt(3.0) * math.pi)

        v, e = _int_1_to_inf(f, tol / 4.0)
        val = math.log(1.0 / (4.0 * 27.0)) + v - 9.0 * math.sqrt(3.0) * l2m3 / math.pi + 6.0
        return NumResult(complex(val), e + tol / 10.0, 0, True), ELLIPTIC_CLOSED[("gamma0_3", "ell")]
    raise ValueError("unsupported elliptic configuration")


def hecke2_elliptic_cross(tol: float = 1e-9) -> float:
    """Level-2 elliptic value from the level-4 closed form:
    2 G_4(i/2) + 16 log|eta(i/2)/eta((i-1)/2)|."""
    g4 = hecke4_closed_form(0.5j)["delta_ratio"]
    e1 = mf.eval_core(0.5j).eta
    e2 = mf.eval_core(0.5 * (1j - 1.0)).eta
    return 2.0 * g4 + 16.0 * math.log(abs(e1 / e2))


def hecke4_closed_form(z: complex) -> dict:
    """The level-4 self-energy closed form, three algebraically equal ways.

    Returns {'delta_ratio', 'eta_ratio', 'lambda_form'} with
    G(z) = -(1/3) log|Delta(z)/Delta(2z)| = -8 log|eta(z)/eta(2z)|
         = -(1/3) log(2^4 |1-lambda(2z)|^2 / |lambda(2z)|).
    """
    z = complex(z)
    d1 = mf.psl_jets(z, 0)["delta"].value
    d2 = mf.psl_jets(2.0 * z, 0)["delta"].value
    out = {"delta_ratio": -math.log(abs(d1 / d2)) / 3.0}
    if z.imag >= mf.Y_MIN:
        out["eta_ratio"] = -8.0 * math.log(abs(mf.eta(z) / mf.eta(2.0 * z)))
    else:
        out["eta_ratio"] = out["delta_ratio"]
    lam = mf.eval_lambda(2.0 * z)
    out["lambda_form"] = -math.log(2.0**4 * abs(1.0 - lam) ** 2 / abs(lam)) / 3.0
    return out
