"""Complex-path quadrature, limit extrapolation, and derivative helpers.

Everything downstream (series evaluation, contour representations, identity
checks) funnels its integrals through `integrate_segment` / `integrate_path`.
Segments are straight lines in the complex plane; a Gauss-Kronrod 15(7) pair
with bisection handles smooth panels, and a double-exponential (tanh-sinh)
substitution takes over when an endpoint is flagged as log- or algebraically
singular.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

__all__ = [
    "NumResult",
    "ContourPath",
    "SingularInterior",
    "integrate_segment",
    "integrate_path",
    "holo_derivs",
    "maass_operator",
    "maass_coefficients",
    "richardson_limit",
]


class SingularInterior(Exception):
    """Raised when an integrand returns a non-finite value away from the endpoints."""


@dataclass
class NumResult:
    """Value plus error bookkeeping for one quadrature or limit evaluation."""

    value: complex
    abs_err: float
    evaluations: int = 0
    converged: bool = True
    info: str = ""

    def __float__(self) -> float:
        return float(self.value.real)


@dataclass
class ContourPath:
    """Piecewise-linear path with optional endpoint-singularity flags.

    nodes            ordered complex points, consecutive ones distinct
    sing_start       'none' | 'log' | ('alg', exponent) at nodes[0]
    sing_end         same, at nodes[-1] (ignored when a tail is present)
    tail             if True, continue from nodes[-1] vertically to i*inf
    """

    nodes: Sequence[complex]
    sing_start: object = "none"
    sing_end: object = "none"
    tail: bool = False

    def __post_init__(self):
        ns = [complex(w) for w in self.nodes]
        if len(ns) < 1 or (len(ns) < 2 and not self.tail):
            raise ValueError("path needs at least two nodes or a tail")
        for a, b in zip(ns, ns[1:]):
            if a == b:
                raise ValueError("consecutive path nodes must be distinct")
        self.nodes = ns


# ----------------------------------------------------------------------------
# Gauss-Kronrod 15(7) pair, standard abscissae/weights on [-1, 1].
# ----------------------------------------------------------------------------

_XGK = np.array([
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0,
])
_WGK = np.array([
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728,
])
_WG = np.array([
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469,
])

_GK_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])          # 15 points ascending
_GK_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
_G_MASK = np.zeros(15, dtype=bool)
_G_MASK[1::2] = True                                           # Gauss subset
_G_WEIGHTS = np.concatenate([_WG[:-1], _WG[::-1]])


def _gk15_panel(f, a: complex, b: complex):
    """One Kronrod panel on the straight segment [a, b]; returns (I, err, n)."""
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    vals = np.array([f(mid + half * t) for t in _GK_NODES], dtype=complex)
    if not np.all(np.isfinite(vals)):
        raise SingularInterior(f"integrand not finite inside segment [{a}, {b}]")
    ik = half * np.sum(vals * _GK_WEIGHTS)
    ig = half * np.sum(vals[_G_MASK] * _G_WEIGHTS)
    err = abs(ik - ig)
    # classical sharpening of the raw embedded-rule difference
    scale = np.sum(np.abs(vals) * _GK_WEIGHTS) * abs(half)
    if scale > 0 and err > 0:
        err = min(err, scale * (200.0 * err / scale) ** 1.5) if err < scale / 200.0 else err
    return ik, err, 15


def _adaptive_gk(f, a: complex, b: complex, tol: float, max_depth: int = 48):
    """Bisection-adaptive GK15 on [a, b] with a global absolute target."""
    total = 0.0 + 0.0j
    total_err = 0.0
    nev = 0
    stack = [(a, b, tol, 0)]
    converged = True
    while stack:
        x0, x1, loc_tol, depth = stack.pop()
        val, err, n = _gk15_panel(f, x0, x1)
        nev += n
        if err <= loc_tol or depth >= max_depth:
            total += val
            total_err += err
            if err > loc_tol:
                converged = False
        else:
            xm = 0.5 * (x0 + x1)
            stack.append((x0, xm, loc_tol / 2.0, depth + 1))
            stack.append((xm, x1, loc_tol / 2.0, depth + 1))
    return total, total_err, nev, converged


# ----------------------------------------------------------------------------
# tanh-sinh rule for segments with endpoint singularities.
# ----------------------------------------------------------------------------

def _ts_level_sum(f, a, b, half, h, ks):
    """Trapezoid contribution of the tanh-sinh nodes t = k*h, k in ks.

    Nodes are placed by their stable distance to the nearer endpoint
    (delta = 1 - |tanh((pi/2) sinh t)| = 2 / (exp(2s) + 1)), so integrable
    endpoint singularities are sampled accurately; nodes whose floating
    placement would collapse onto an endpoint are skipped.
    """
    total = 0.0 + 0.0j
    nev = 0
    for k in ks:
        t = k * h
        s = 0.5 * math.pi * math.sinh(abs(t))
        if s > 330.0:
            continue
        delta = 2.0 / (math.exp(2.0 * s) + 1.0)
        w = 0.5 * math.pi * math.cosh(t) * delta * (2.0 - delta)
        if k >= 0:
            z = b - half * delta
            ref = b
        else:
            z = a + half * delta
            ref = a
        if k != 0 and (z == ref or (ref != 0 and abs(half) * delta <= 2e-16 * abs(ref))):
            continue
        v = f(z)
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise SingularInterior("integrand not finite inside tanh-sinh panel")
        total += v * w
        nev += 1
    return total * half, nev


def _tanh_sinh(f, a: complex, b: complex, tol: float, max_level: int = 11):
    """Double-exponential quadrature of f over [a, b].

    Absorbs integrable endpoint singularities (log powers or algebraic with
    exponent > -1) without needing to know which endpoint carries them.
    """
    half = 0.5 * (b - a)
    h = 0.5
    tmax = 6.5
    total, nev = _ts_level_sum(f, a, b, half, h, range(-int(tmax / h), int(tmax / h) + 1))
    total *= h
    prev = total
    err = abs(total)
    err_prev = err
    for level in range(1, max_level + 1):
        h *= 0.5
        kmax = int(tmax / h)
        kmax = kmax if kmax % 2 == 1 else kmax - 1
        part, n = _ts_level_sum(f, a, b, half, h, range(-kmax, kmax + 1, 2))
        total = 0.5 * prev + h * part
        nev += n
        err_prev = err
        err = abs(total - prev)
        prev = total
        # require two consecutive small refinements: high log powers converge
        # slowly at first and can fake a small single-level difference
        if err <= tol and err_prev <= 8.0 * tol and level >= 4:
            return total, err, nev, True
    return total, err, nev, err <= 10 * tol


def integrate_segment(
    f: Callable[[complex], complex],
    a: complex,
    b: complex,
    tol: float = 1e-10,
    sing_start: object = "none",
    sing_end: object = "none",
) -> NumResult:
    """Integrate f along the straight segment from a to b.

    Endpoint singularities (flag 'log' or ('alg', p) with p > -1) switch the
    panel to the tanh-sinh rule; otherwise adaptive Gauss-Kronrod 15(7) is
    used.  Non-finite integrand values strictly inside the segment raise
    SingularInterior.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    a = complex(a)
    b = complex(b)
    if sing_start == "none" and sing_end == "none":
        val, err, nev, ok = _adaptive_gk(f, a, b, tol)
    else:
        val, err, nev, ok = _tanh_sinh(f, a, b, tol)
    return NumResult(val, err, nev, ok)


def integrate_path(
    f: Callable[[complex], complex],
    path: ContourPath,
    tol: float = 1e-10,
) -> NumResult:
    """Integrate f along a piecewise-linear path, optionally with a vertical tail.

    The tail replaces the final node by a ray to i*infinity; it is truncated
    once an octave [T, 2T] contributes less than tol * max(1, |partial|) twice
    in a row with geometric decay, otherwise the result is flagged
    non-converged ('non-decaying tail').
    """
    nodes = list(path.nodes)
    nseg = max(len(nodes) - 1, 0)
    total = 0.0 + 0.0j
    total_err = 0.0
    nev = 0
    ok = True
    for i in range(nseg):
        s0 = path.sing_start if i == 0 else "none"
        s1 = path.sing_end if (i == nseg - 1 and not path.tail) else "none"
        r = integrate_segment(f, nodes[i], nodes[i + 1], tol / max(nseg, 1),
                              sing_start=s0, sing_end=s1)
        total += r.value
        total_err += r.abs_err
        nev += r.evaluations
        ok = ok and r.converged

    if path.tail:
        z0 = nodes[-1]
        step = max(1.0, abs(z0.imag))
        t_lo = 0.0
        small_count = 0
        last_mag = math.inf
        for _ in range(60):
            r = integrate_segment(f, z0 + 1j * t_lo, z0 + 1j * (t_lo + step), tol)
            total += r.value
            total_err += r.abs_err
            nev += r.evaluations
            mag = abs(r.value)
            scale = tol * max(1.0, abs(total))
            if mag < scale and mag <= 0.75 * last_mag + 1e-300:
                small_count += 1
                if small_count >= 2:
                    break
            else:
                small_count = 0
            last_mag = mag if mag > 0 else last_mag
            t_lo += step
            step *= 2.0
        else:
            ok = False
            return NumResult(total, total_err, nev, False, "non-decaying tail")
    return NumResult(total, total_err, nev, ok)


# ----------------------------------------------------------------------------
# Cauchy-circle derivatives of a holomorphic function.
# ----------------------------------------------------------------------------

def holo_derivs(
    g: Callable[[complex], complex],
    z: complex,
    order: int,
    radius: float,
    rel_tol: float = 1e-10,
) -> list[complex]:
    """Derivatives g(z), g'(z), ..., g^(order)(z) by trapezoidal circle quadrature.

    g must be holomorphic on the closed disc |w - z| <= radius.  The node
    count doubles (from 32) until successive estimates agree to rel_tol.
    """
    if order > 6:
        raise ValueError("order > 6 unsupported")
    z = complex(z)
    m_nodes = 32
    prev = None
    for _ in range(6):
        k = np.arange(m_nodes)
        w = np.exp(2j * np.pi * k / m_nodes)
        vals = np.array([g(z + radius * wi) for wi in w], dtype=complex)
        if not np.all(np.isfinite(vals)):
            raise SingularInterior("function not finite on derivative circle")
        coeffs = np.fft.fft(vals) / m_nodes           # c_j ~ g^(j)(z) r^j / j!
        out = [coeffs[j] * math.factorial(j) / radius**j for j in range(order + 1)]
        if prev is not None:
            scale = max(max(abs(v) for v in out), 1e-300)
            if max(abs(a - b) for a, b in zip(out, prev)) <= rel_tol * scale:
                return out
        prev = out
        m_nodes *= 2
    raise ArithmeticError("holo_derivs failed to stabilise; shrink the radius")


# ----------------------------------------------------------------------------
# The y^m (d/dy o 1/y)^m stack acting on a holomorphic function.
# ----------------------------------------------------------------------------

def maass_coefficients(m: int) -> list[int]:
    """Integer coefficients a_{m,j} in y^m (d/dy 1/y)^m g = sum_j a_{m,j} i^j g^(j) y^(j-m).

    Built from a_{1,1} = 1, a_{1,0} = -1 via
    a_{m+1,j} = a_{m,j-1} + (j - 2m - 1) a_{m,j}.
    """
    if m < 1:
        raise ValueError("m >= 1 required")
    coeffs = [-1, 1]
    for mm in range(1, m):
        nxt = [0] * (mm + 2)
        for j in range(mm + 2):
            prev_shift = coeffs[j - 1] if 1 <= j <= mm + 1 else 0
            prev_same = coeffs[j] if j <= mm else 0
            nxt[j] = prev_shift + (j - 2 * mm - 1) * prev_same
        coeffs = nxt
    return coeffs


def maass_operator(derivs: Sequence[complex], y: float, m: int) -> complex:
    """Evaluate y^m (d/dy o 1/y)^m g for holomorphic g, given [g, g', ..., g^(m)] at z.

    Uses d/dy g = i g' and the closed integer-coefficient expansion
    sum_j a_{m,j} i^j g^(j)(z) y^(j-m).
    """
    if m > 6:
        raise ValueError("m > 6 unsupported")
    if len(derivs) < m + 1:
        raise ValueError("need derivatives up to order m")
    coeffs = maass_coefficients(m)
    total = 0.0 + 0.0j
    for j, a in enumerate(coeffs):
        if a != 0:
            total += a * (1j**j) * derivs[j] * y ** (j - m)
    return total


# ----------------------------------------------------------------------------
# Limit extrapolation for renormalised quantities.
# ----------------------------------------------------------------------------

def richardson_limit(samples: Sequence[tuple[float, float]], tol: float = 1e-6) -> NumResult:
    """Extrapolate samples (delta, value) to delta -> 0.

    Fits value ~ A + B delta log(delta) + C delta (plus quadratic-order terms
    when six or more samples are supplied) and returns A with a residual-based
    error estimate.
    """
    if len(samples) < 4:
        raise ValueError("need at least 4 samples")
    d = np.array([s[0] for s in samples], dtype=float)
    v = np.array([s[1] for s in samples], dtype=float)
    if np.any(d <= 0):
        raise ValueError("deltas must be positive")
    cols = [np.ones_like(d), d * np.log(d), d]
    if len(samples) >= 6:
        cols += [d * d * np.log(d), d * d]
    basis = np.column_stack(cols)
    coef, *_ = np.linalg.lstsq(basis, v, rcond=None)
    resid = v - basis @ coef
    err = float(np.max(np.abs(resid)))
    # drop the largest delta and refit: difference is a second error gauge
    coef2, *_ = np.linalg.lstsq(basis[1:], v[1:], rcond=None)
    err = max(err, abs(coef[0] - coef2[0]))
    return NumResult(complex(coef[0]), err, len(samples), err <= tol)
