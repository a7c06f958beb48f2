"""Contour-integral representations of the automorphic Green's functions.

Each weight-k Green's function with no cusp forms at its (level, weight) is
expressed as the real part of two contour integrals: one from z' vertically to
i*infinity, one from the cusp 0 to i*infinity.  The cusp integral is folded at
the fixed point i/sqrt(N) of z -> -1/(N z) using the modular covariance of the
integrand, so q-series are never evaluated at small heights.

The kernels in the second argument z come in two algebraically equal flavors:
an explicit rational expression in the hauptmodul values, and a derivative
stack y^m (d/dy 1/y)^m acting on holomorphic data (used for weights >= 6,
with derivatives taken exactly from truncated Taylor jets).

A parallel family of representations lives in the Legendre plane: with
xi = 1 - 2 alpha_N(zeta) the contour integrals become integrals of squared
Legendre functions P_nu over segments of the xi-plane.  Those are implemented
here as well (`kz_legendre_form`, `kz_cm_highweight`) and serve as a second,
independent route to the same values.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from . import modforms as mf
from .numerics import ContourPath, NumResult, integrate_path, integrate_segment, \
    maass_coefficients
from .specfun import LEVEL_OF_DEGREE, legendreP, legendreP_deriv, legendreQ, \
    hyp2f1

__all__ = [
    "kz_w4_heckeN", "kz_w4_level1", "kz_w6_level2", "kz_highweight_level1",
    "kz_legendre_form", "kz_cm_highweight", "kz_cm_elliptic",
    "kernel_w4_heckeN", "kernel_w4_level1", "kernel_w6_level2",
    "kernel_highweight", "rnu", "varrho_2nu",
    "w6_moment", "w6_closed_moment", "pkn_moment",
    "PathConstructionError",
]

_DETOUR_DEN = 1e-3       # kernel-denominator magnitude triggering a detour
_DETOUR_RADIUS = 0.1


class PathConstructionError(RuntimeError):
    """A kernel singularity could not be avoided on the requested contour."""


# ----------------------------------------------------------------------------
# Kernels in the z variable.
# ----------------------------------------------------------------------------

def kernel_w4_heckeN(N: int, z: complex):
    """Weight-4 level-N kernel as a function of a = alpha_N(zeta).

    K(a) = A(1-A)/(a-A)^2 - c1/(a-A) with A = alpha_N(z); returns the
    removable constant when z sits on the elliptic orbit (alpha infinite).
    """
    a_z = mf.eval_alphaN(N, z)
    if not math.isfinite(a_z.real) or abs(a_z) > 1e8:
        const = {2: -0.5, 3: -1.0 / 3.0, 4: 0.0}[N]
        return lambda a: complex(const)
    y = z.imag
    e2_z = mf.psl_jets(z, 0)["e2star"].value - 3.0 / (math.pi * y)
    e2_nz = mf.psl_jets(N * z, 0)["e2star"].value - 3.0 / (math.pi * N * y)
    e4_z = mf.psl_jets(z, 0)["e4"].value
    e4_nz = mf.psl_jets(N * z, 0)["e4"].value
    dd = N * e2_nz - e2_z
    c2 = a_z * (1.0 - a_z)
    c1 = -(N - 1.0) / 12.0 * (N**2 * e2_nz**2 - N**2 * e4_nz - e2_z**2 + e4_z) / dd**2

    def kern(a: complex) -> complex:
        da = a - a_z
        return c2 / (da * da) + c1 / da

    kern.alpha_z = a_z
    kern.c1 = c1
    return kern


def kernel_w4_level1(z: complex):
    """Weight-4 level-1 kernel as a function of J = j(zeta)."""
    jets = mf.psl_jets(z, 0)
    jz = jets["j"].value
    e4, e6 = jets["e4"].value, jets["e6"].value
    if abs(e4) < 1e-8:  # elliptic corner: removable constant
        return lambda J: complex(-4.0 / 3.0)
    e2 = jets["e2star"].value - 3.0 / (math.pi * z.imag)

    def kern(J: complex) -> complex:
        dj = J - jz
        return (J * J * jz / (432.0 * dj * dj)
                - 2.0 * J * (J + jz) / (dj * dj)
                + J * jz / (2592.0 * dj) * (e6 / e4**2) * (e2 - e6 / e4))

    kern.j_z = jz
    return kern


def kernel_w6_level2(z: complex):
    """Weight-6 level-2 kernel: (1/8 pi) y^2 (d/dy 1/y)^2 applied to
    1/((a - alpha_2(z)) (2 E2*(2z) - E2*(z))^2), as a function of a."""
    hj = mf.hecke_jets(2, z, 2)
    aj, dj = hj["alpha"], hj["D"]
    inv_d2 = 1.0 / (dj * dj)
    y = z.imag
    coeffs = maass_coefficients(2)
    a_z = aj.value

    def kern(a: complex) -> complex:
        h = inv_d2 / (a - aj)
        total = 0.0 + 0.0j
        for jd, cf in enumerate(coeffs):
            total += cf * (1j**jd) * h.deriv(jd) * y ** (jd - 2)
        return total / (8.0 * math.pi)

    kern.alpha_z = a_z
    return kern


_CK = {4: 1.0, 6: -0.25, 8: 1.0 / 24.0, 10: -1.0 / 192.0, 14: -1.0 / 23040.0}


def kernel_highweight(k: int, z: complex):
    """Level-1 weight-k kernel from the derivative stack on
    J j(z) E6/(E4 Ek)(z) / (J - j(z)), smooth form E4^2 E6/(Delta Ek)."""
    m = (k - 2) // 2
    jets = mf.psl_jets(z, m)
    jz = jets["j"]
    e4, e6, delta = jets["e4"], jets["e6"], jets["delta"]
    ek = {4: e4, 6: e6, 8: e4 * e4, 10: e4 * e6, 14: e4 * e4 * e6}[k]
    g1 = e4 * e4 * e6 / (delta * ek)
    y = z.imag
    coeffs = maass_coefficients(m)
    ck = _CK[k]

    def kern(J: complex) -> complex:
        gj = J * g1 / (J - jz)
        total = 0.0 + 0.0j
        for jd, cf in enumerate(coeffs):
            total += cf * (1j**jd) * gj.deriv(jd) * y ** (jd - m)
        return ck * total / (864.0 * math.pi)

    kern.j_z = jz.value
    return kern


# ----------------------------------------------------------------------------
# Contours with singularity detours.
# ----------------------------------------------------------------------------

def _vertical_nodes(z0: complex, bad: list[complex], radius: float) -> list[complex]:
    """Nodes for the ray z0 + it with polyline semicircles around bad points."""
    nodes = [z0]
    for zb in sorted(bad, key=lambda w: w.imag):
        lo = zb - 1j * radius
        hi = zb + 1j * radius
        if lo.imag <= nodes[-1].imag:
            lo = nodes[-1]
        else:
            nodes.append(lo)
        for ang in (-60, -30, 0, 30, 60):
            nodes.append(zb + radius * cmath.exp(1j * math.radians(ang - 90)))
        nodes.append(hi)
    return nodes


def _scan_ray(z0: complex, den, t_max: float = 8.0, n: int = 400):
    """Distances den(z0 + i t) on a scan grid; returns detour centers."""
    ts = np.linspace(0.0, t_max, n)
    vals = np.array([abs(den(z0 + 1j * t)) for t in ts])
    bad = []
    for i in range(1, n - 1):
        if vals[i] < 8.0 * _DETOUR_DEN and vals[i] <= vals[i - 1] and vals[i] <= vals[i + 1]:
            # refine the local minimum
            t_lo, t_hi = ts[max(i - 1, 0)], ts[min(i + 1, n - 1)]
            for _ in range(25):
                tm = 0.5 * (t_lo + t_hi)
                if abs(den(z0 + 1j * (tm - 1e-4))) < abs(den(z0 + 1j * (tm + 1e-4))):
                    t_hi = tm
                else:
                    t_lo = tm
            tm = 0.5 * (t_lo + t_hi)
            if abs(den(z0 + 1j * tm)) < _DETOUR_DEN:
                bad.append(z0 + 1j * tm)
    return bad


def _ray_integral(f, z0: complex, den, tol: float) -> NumResult:
    bad = _scan_ray(z0, den)
    nodes = _vertical_nodes(z0, bad, _DETOUR_RADIUS)
    return integrate_path(f, ContourPath(nodes, tail=True), tol)


# ----------------------------------------------------------------------------
# Weight-4 evaluators.
# ----------------------------------------------------------------------------

def _check_heckeN(N):
    if N not in (2, 3, 4):
        raise ValueError("levels 2, 3, 4 only")


def kz_w4_heckeN(N: int, z: complex, zp: complex, tol: float = 1e-8,
                 full_result: bool = False):
    """Weight-4 Green's function on Gamma0(N), N in {2,3,4}, by contour integrals."""
    _check_heckeN(N)
    z, zp = complex(z), complex(zp)
    yp = zp.imag
    if yp < mf.Y_MIN:
        raise ValueError("Im z' too small for the default contours")
    kern = kernel_w4_heckeN(N, z)
    a_z = getattr(kern, "alpha_z", None)

    def wfun(zeta):
        a, d = mf.hecke_channel(N, zeta)
        return a, a * (1.0 - a) * d * d

    def f1(zeta):
        a, w = wfun(zeta)
        return w * kern(a) * (zeta - zp) * (zeta - zp.conjugate()) / 1j

    def den1(zeta):
        if a_z is None:
            return 1.0
        return mf.hecke_channel(N, zeta)[0] - a_z

    i1 = _ray_integral(f1, zp, den1, tol * yp / 80.0)

    rtn = 1j / math.sqrt(N)

    def f0(xi):
        a, d = mf.hecke_channel(N, xi)
        w = a * (1.0 - a) * d * d
        return w * (kern(a) * xi * xi - kern(1.0 - a) / N) / 1j

    def den0(xi):
        if a_z is None:
            return 1.0
        a = mf.hecke_channel(N, xi)[0]
        return min(abs(a - a_z), abs(1.0 - a - a_z))

    i0 = _ray_integral(f0, rtn, den0, tol * yp / 80.0)
    pref = 4.0 * math.pi**2 / (yp * (N - 1.0) ** 2)
    val = pref * (i1.value.real - i0.value.real)
    err = pref * (i1.abs_err + i0.abs_err)
    ok = i1.converged and i0.converged
    if full_result:
        return NumResult(complex(val), err, i1.evaluations + i0.evaluations, ok)
    return val


def _level1_vals(zeta, k: int):
    jj = mf.psl_jets(zeta, 0)
    e4, e6 = jj["e4"].value, jj["e6"].value
    ek = {4: e4, 6: e6, 8: e4 * e4, 10: e4 * e6, 14: e4 * e4 * e6}[k]
    return jj["j"].value, ek


def kz_w4_level1(z: complex, zp: complex, tol: float = 1e-8,
                 full_result: bool = False):
    """Weight-4 Green's function on the full modular group, by contour integrals."""
    return kz_highweight_level1(4, z, zp, tol, full_result)


def kz_highweight_level1(k: int, z: complex, zp: complex, tol: float = 1e-8,
                         full_result: bool = False):
    """Weight-k Green's function on the full modular group, k in {4,6,8,10,14}."""
    if k not in (4, 6, 8, 10, 14):
        raise ValueError("weights 4, 6, 8, 10, 14 only at level 1")
    z, zp = complex(z), complex(zp)
    yp = zp.imag
    if yp < mf.Y_MIN:
        raise ValueError("Im z' too small for the default contours")
    m = (k - 2) // 2
    kern = kernel_w4_level1(z) if k == 4 else kernel_highweight(k, z)
    j_z = getattr(kern, "j_z", None)

    def f1(zeta):
        J, ek = _level1_vals(zeta, k)
        return (ek / J) * kern(J) * ((zeta - zp) * (zeta - zp.conjugate())) ** m / 1j

    def den1(zeta):
        if j_z is None or abs(j_z) < 1.0:
            return 1.0
        return (mf.psl_jets(zeta, 0)["j"].value - j_z) / j_z

    i1 = _ray_integral(f1, zp, den1, tol * yp**m / (3000.0 * math.pi**2))

    def f0(xi):
        J, ek = _level1_vals(xi, k)
        return (ek / J) * kern(J) * (xi ** (2 * m) - 1.0) / 1j

    i0 = _ray_integral(f0, 1j, den1, tol * yp**m / (3000.0 * math.pi**2))
    pref = 1728.0 * math.pi**2 / yp**m
    val = pref * (i1.value.real - i0.value.real)
    err = pref * (i1.abs_err + i0.abs_err)
    ok = i1.converged and i0.converged
    if full_result:
        return NumResult(complex(val), err, i1.evaluations + i0.evaluations, ok)
    return val


def kz_w6_level2(z: complex, zp: complex, tol: float = 1e-8,
                 full_result: bool = False):
    """Weight-6 Green's function on Gamma0(2), by contour integrals."""
    z, zp = complex(z), complex(zp)
    yp = zp.imag
    if yp < mf.Y_MIN:
        raise ValueError("Im z' too small for the default contours")
    kern = kernel_w6_level2(z)
    zh = -1.0 / (2.0 * z)
    kern_h = kernel_w6_level2(zh)
    a_z = kern.alpha_z
    a_h = kern_h.alpha_z

    def f1(zeta):
        a, d = mf.hecke_channel(2, zeta)
        w = a * (1.0 - a) * d**3
        return w * kern(a) * ((zeta - zp) * (zeta - zp.conjugate())) ** 2 / 1j

    def den1(zeta):
        return mf.hecke_channel(2, zeta)[0] - a_z

    i1 = _ray_integral(f1, zp, den1, tol * yp**2 / 80.0)

    def f0(xi):
        a, d = mf.hecke_channel(2, xi)
        w = a * (1.0 - a) * d**3
        return w * (kern(a) * xi**4 - kern_h(a) / 4.0) / 1j

    def den0(xi):
        a = mf.hecke_channel(2, xi)[0]
        return min(abs(a - a_z), abs(a - a_h))

    i0 = _ray_integral(f0, 1j / math.sqrt(2.0), den0, tol * yp**2 / 80.0)
    pref = 4.0 * math.pi**2 / yp**2
    val = pref * (i1.value.real - i0.value.real)
    err = pref * (i1.abs_err + i0.abs_err)
    ok = i1.converged and i0.converged
    if full_result:
        return NumResult(complex(val), err, i1.evaluations + i0.evaluations, ok)
    return val


# ----------------------------------------------------------------------------
# Moments along the imaginary axis (boundary-wall identities).
# ----------------------------------------------------------------------------

_AXIS_EPS = 0.02  # truncation height at the cusp 0; the remainder is O(exp(-2 pi/eps))


def w6_moment(z: complex, tol: float = 1e-9) -> float:
    """Re integral_0^{i inf} W3(zeta) rho3(zeta, z) zeta^2 dzeta / i.

    Direct quadrature along the imaginary axis (a genuine cancellation test:
    this vanishes for z on the boundary wall Re z = 1/2).
    """
    kern = kernel_w6_level2(z)

    def f(zeta):
        a, d = mf.hecke_channel(2, zeta)
        w = a * (1.0 - a) * d**3
        return w * kern(a) * zeta * zeta / 1j

    r = integrate_path(f, ContourPath([1j * _AXIS_EPS], tail=True), tol)
    return r.value.real


def w6_closed_moment(z: complex, tol: float = 1e-9) -> complex:
    """integral_0^{i inf} alpha(1-alpha) D^3 /(alpha(zeta)-alpha(z)) zeta^2 dzeta/i."""
    a_z = mf.eval_alphaN(2, z)

    def f(zeta):
        a, d = mf.hecke_channel(2, zeta)
        w = a * (1.0 - a) * d**3
        return w * zeta * zeta / ((a - a_z) * 1j)

    r = integrate_path(f, ContourPath([1j * _AXIS_EPS], tail=True), tol)
    return r.value


def pkn_moment(k: int, n: int, z: complex, tol: float = 1e-9) -> complex:
    """integral_0^{i inf} Ek(zeta) j(z) E6(z)/((j(zeta)-j(z)) E4(z) Ek(z)) zeta^n dzeta/i.

    Direct quadrature along the imaginary axis; evaluates to the displayed
    polynomials in Im z on the boundary wall Re z = 1/2.
    """
    jets = mf.psl_jets(z, 0)
    e4, e6, delta = jets["e4"].value, jets["e6"].value, jets["delta"].value
    ekz = {6: e6, 8: e4 * e4, 10: e4 * e6, 14: e4 * e4 * e6}[k]
    jz = jets["j"].value
    czz = e4 * e4 * e6 / (delta * ekz)  # = j(z) E6/(E4 Ek) smoothly

    def f(zeta):
        J, ek = _level1_vals(zeta, k)
        return ek * czz / (J - jz) * zeta**n / 1j

    r = integrate_path(f, ContourPath([1j * _AXIS_EPS], tail=True), tol)
    return r.value


# ----------------------------------------------------------------------------
# Legendre-plane route.
# ----------------------------------------------------------------------------

def rnu(nu: float, xi: complex) -> complex:
    """The odd continuation kernel R_nu(xi), xi off the double cut.

    R_nu(1) = 0 and R_nu(-xi) = -R_nu(xi); at xi = 1 - 2 alpha_N(z) it equals
    an Eisenstein-series expression of level N = 4 sin^2(nu pi).
    """
    xi = complex(xi)
    if xi == 0.0:
        return 0.0 + 0.0j
    sn = math.sin(nu * math.pi)
    p = legendreP(nu, xi)
    pm = legendreP(nu, -xi)
    dp = legendreP_deriv(nu, xi)
    dpm = legendreP_deriv(nu, -xi)
    one = (1.0 - xi * xi)
    t1 = one * dp / p - one * dpm / pm
    r1 = (1j * pm / p).imag
    r2 = (1j * p / pm).imag
    t2 = (sn / math.pi) * (1.0 / (p * p * r1) - 1.0 / (pm * pm * r2))
    return t1 - t2


def varrho_2nu(nu: float, xi: complex, xi0: complex, r0: complex) -> complex:
    """Legendre-plane weight-4 kernel 4A(1-A)/(xi-xi0)^2 - R_nu(xi0)/(xi-xi0),
    with xi0 = 1 - 2A and r0 = R_nu(xi0) precomputed."""
    d = xi - xi0
    one = 1.0 - xi0 * xi0  # = 4 A (1 - A)
    return one / (d * d) - r0 / d


def _ratio(nu: float, xi: complex) -> complex:
    """i P_nu(-xi)/P_nu(xi)."""
    return 1j * legendreP(nu, -xi) / legendreP(nu, xi)


def _segment_admissible(a: complex, b: complex, poles: list[complex],
                        thresh: float = 2e-2) -> None:
    """Reject segments crossing the cuts or passing near a kernel pole."""
    for xs in poles:
        # distance from xs to segment [a, b]
        ab = b - a
        t = ((xs - a) / ab).real if ab != 0 else 0.0
        t = min(max(t, 0.0), 1.0)
        if abs(a + t * ab - xs) < thresh:
            raise PathConstructionError("xi-segment passes near a kernel pole")
    # cut crossing: the segment meets the real axis outside (-1, 1)
    if a.imag * b.imag < 0:
        t = a.imag / (a.imag - b.imag)
        xr = (a + t * (b - a)).real
        if abs(xr) >= 1.0:
            raise PathConstructionError("xi-segment crosses a branch cut")
    for w in (a, b):
        if w.imag == 0 and abs(w.real) > 1.0 + 1e-12:
            raise PathConstructionError("xi-segment endpoint on a branch cut")


def kz_legendre_form(nu: float, z: complex, zp: complex, tol: float = 1e-8) -> float:
    """Weight-4 Green's function in the Legendre plane, nu in {-1/2,-1/3,-1/4,-1/6}.

    Must agree with the Eisenstein-form evaluation wherever both contours are
    admissible; inadmissible geometry raises PathConstructionError.
    """
    if nu not in LEVEL_OF_DEGREE:
        raise ValueError("degree must be one of -1/2, -1/3, -1/4, -1/6")
    N = LEVEL_OF_DEGREE[nu]
    z, zp = complex(z), complex(zp)
    if N == 1:
        s_z = mf.sqrt_j_ratio(z)
        s_zp = mf.sqrt_j_ratio(zp)
        xi0 = s_z
        xi0_h = -s_z  # pole of the reflected kernel piece
        r0 = rnu(nu, xi0)
        wp = _ratio(nu, s_zp)

        def rho(xi):
            return varrho_2nu(nu, xi, xi0, r0) + varrho_2nu(nu, xi, xi0_h, rnu(nu, xi0_h))

        start = s_zp
        poles = [xi0, xi0_h]
        second_sign = +1.0
        pref = math.pi / wp.imag
    else:
        a_z = mf.eval_alphaN(N, z)
        a_zp = mf.eval_alphaN(N, zp)
        xi0 = 1.0 - 2.0 * a_z
        r0 = rnu(nu, xi0)
        wp = _ratio(nu, 1.0 - 2.0 * a_zp)

        def rho(xi):
            return varrho_2nu(nu, xi, xi0, r0)

        start = 1.0 - 2.0 * a_zp
        poles = [xi0]
        second_sign = -1.0  # the constant integral carries P_nu(-xi)^2
        pref = math.pi / (math.sqrt(N) * wp.imag)

    _segment_admissible(start, 1.0, poles)
    _segment_admissible(-1.0, 1.0, poles)

    def f_first(xi):
        p2 = legendreP(nu, xi) ** 2
        r = _ratio(nu, xi)
        return p2 * rho(xi) * (r - wp) * (r - wp.conjugate())

    r1 = integrate_segment(f_first, start, 1.0, tol / (8.0 * abs(pref)), sing_end="log")

    def f_const(xi):
        return legendreP(nu, second_sign * xi) ** 2 * rho(xi)

    # P(xi)^2 is log-singular at xi = -1, P(-xi)^2 at xi = +1
    flags = {"sing_start": "log"} if second_sign > 0 else {"sing_end": "log"}
    r2 = integrate_segment(f_const, -1.0, 1.0, tol / (8.0 * abs(pref)), **flags)
    return pref * (r1.value.real + r2.value.real)


# ----------------------------------------------------------------------------
# CM-point representations for weights 6, 10, 14 (and the elliptic-orbit
# variants at levels 2, 3).
# ----------------------------------------------------------------------------

_CM_WEIGHTS = {
    6: (lambda xi: xi, 4, 2),
    10: (lambda xi: (51.0 - 64.0 * xi**2) * xi, 8, 4),
    14: (lambda xi: (168.0 - 485.0 * xi**2 + 320.0 * xi**4) * xi, 12, 6),
}


def _ratio_onesided(nu: float, xi: float) -> complex:
    """i P_nu(-xi + i0+)/P_nu(xi) for real xi > 1 (path below the cut)."""
    sn, cs = math.sin(nu * math.pi), math.cos(nu * math.pi)
    p = legendreP(nu, xi).real
    q = legendreQ(nu, xi)
    pm = (cs + 1j * sn) * p - 2.0 * sn * q / math.pi
    return 1j * pm / p


def _cm_core(k: int, nu: float, s_val: complex, w: complex, tol: float,
             weight_fun=None, ppow=None, mpow=None):
    """Common core of the CM-point forms: the two xi-plane integrals."""
    if weight_fun is None:
        weight_fun, ppow, mpow = _CM_WEIGHTS[k]

    def f_const(xi):
        return weight_fun(xi) * legendreP(nu, xi) ** ppow

    rc = integrate_segment(f_const, -1.0, 1.0, tol, sing_start="log")

    def f_main(xi):
        r = _ratio(nu, xi)
        return (weight_fun(xi) * legendreP(nu, xi) ** ppow
                * ((r - w) * (r - w.conjugate())) ** mpow)

    def f_main_cut(xi):
        x = xi.real
        r = _ratio_onesided(nu, x)
        return (weight_fun(x) * legendreP(nu, x).real ** ppow
                * ((r - w) * (r - w.conjugate())) ** mpow)

    if abs(s_val.imag) < 1e-14 and s_val.real > 1.0:
        rm = integrate_segment(f_main_cut, 1.0, s_val.real, tol, sing_start="log")
        main = -rm.value.real
        err = rm.abs_err
    else:
        rm = integrate_segment(f_main, s_val, 1.0, tol, sing_end="log")
        main = rm.value.real
        err = rm.abs_err
    return rc.value.real, main, rc.abs_err + err


def kz_cm_highweight(k: int, z: complex, tol: float = 1e-9,
                     full_result: bool = False):
    """G_{k/2} at (corner of order 3, z) for k in {6, 10, 14}, level 1.

    z in the closed standard fundamental domain, z not the corner itself.
    """
    if k not in (6, 10, 14):
        raise ValueError("CM forms exist for weights 6, 10, 14")
    z = complex(z)
    y = z.imag
    s_val = mf.sqrt_j_ratio(z)
    const, main, err = _cm_core(k, -1.0 / 6.0, s_val, z, tol)
    if k == 6:
        pref = 4.0 * math.pi**2 / (9.0 * y**2)
        val = pref * (main + const)
    elif k == 10:
        pref = -(math.pi**4) / (1296.0 * y**4)
        val = pref * (main + const)
    else:
        pref = math.pi**6 / (58320.0 * y**6)
        val = pref * (main + const)
    if full_result:
        return NumResult(complex(val), abs(pref) * err, 0, True)
    return val


_CM_ELLIPTIC = {
    # weight, level -> (nu, prefactor coefficient, weight_fun, P power, (r-w) power)
    (6, 1): (-1.0 / 6.0, 4.0 * math.pi**2 / 9.0, *_CM_WEIGHTS[6]),
    (6, 2): (-0.25, math.pi**2 / 32.0, lambda xi: xi, 4, 2),
    (6, 3): (-1.0 / 3.0, math.pi**2 / 54.0, lambda xi: xi, 4, 2),
    (10, 2): (-0.25, -(math.pi**4) / 6144.0, lambda xi: (5.0 - 6.0 * xi**2) * xi, 8, 4),
}


def kz_cm_elliptic(k: int, level: int, zp: complex, tol: float = 1e-9) -> float:
    """Green's function with the first argument on the elliptic orbit.

    (k, level) in {(6,1), (6,2), (6,3), (10,2)}: weight-k value at
    (elliptic point of Gamma0(level), zp); the level-2 entries return
    G_{k/2}^{Gamma0(2)}((i-1)/2, zp), level 3 the corner (3+i sqrt3)/6,
    level 1 the corner of order 3.
    """
    key = (k, level)
    if key not in _CM_ELLIPTIC:
        raise ValueError("supported: (6,1), (6,2), (6,3), (10,2)")
    nu, coef, wfun, ppow, mpow = _CM_ELLIPTIC[key]
    zp = complex(zp)
    if level == 1:
        s_val = mf.sqrt_j_ratio(zp)
        w = _ratio(nu, s_val)
    else:
        a_zp = mf.eval_alphaN(level, zp)
        s_val = 1.0 - 2.0 * a_zp
        w = _ratio(nu, s_val)
    const, main, err = _cm_core(k, nu, s_val, w, tol, wfun, ppow, mpow)
    val = coef / w.imag ** mpow * (main + const)
    if level == 2:
        val *= 2.0  # the displayed forms give half the Gamma0(2) value
    return val
