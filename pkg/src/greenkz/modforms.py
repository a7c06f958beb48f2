"""Modular forms and hauptmoduln by q-series, with exact z-derivatives.

Derivatives are carried as truncated Taylor jets generated by the closed
differential system of the weight-2/4/6 Eisenstein series,

    E2*' = (pi i/6) (E2*^2 - E4),
    E4'  = (2 pi i/3)(E2* E4 - E6),
    E6'  = (pi i)    (E2* E6 - E4^2),

so no numerical differentiation enters the production path (the Cauchy-circle
route in `numerics.holo_derivs` serves as the independent cross-check).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Y_MIN",
    "UpperHalfPoint",
    "ModularValuePack",
    "GroupSpec",
    "eta",
    "eisenstein_e2star",
    "eisenstein_e4",
    "eisenstein_e6",
    "eval_core",
    "psl_jets",
    "eval_E2_nonholo",
    "eval_lambda",
    "eval_alphaN",
    "eval_alpha1",
    "sqrt_j_ratio",
    "alpha_derivative",
    "hecke_channel",
    "hecke_jets",
    "fundamental_domain_reduce",
    "Jet",
]

Y_MIN = 0.05          # floor for raw q-series evaluation
_YQ = 0.16            # preferred floor for fast evaluation in contour integrands
_TRUNC = 1e-18


class InvariantInfinite(ArithmeticError):
    """A hauptmodul hit one of its poles (legal input for downstream kernels)."""


@dataclass(frozen=True)
class UpperHalfPoint:
    """A point z = x + i y with y > 0."""

    z: complex

    def __post_init__(self):
        if self.z.imag <= 0:
            raise ValueError("point must lie in the upper half-plane")

    @property
    def x(self) -> float:
        return self.z.real

    @property
    def y(self) -> float:
        return self.z.imag

    @property
    def q(self) -> complex:
        return cmath.exp(2j * math.pi * self.z)


@dataclass(frozen=True)
class GroupSpec:
    """Which symmetry group a Green's function lives on.

    family in {'psl2z', 'gamma0', 'gamma2', 'theta'}; level is the Hecke level
    (1 for psl2z; 2 or 4 are implied for 'theta' and 'gamma2' internally).
    """

    family: str
    level: int = 1

    def __post_init__(self):
        fam = self.family
        if fam not in ("psl2z", "gamma0", "gamma2", "theta"):
            raise ValueError(f"unknown group family {fam!r}")
        if fam == "gamma0" and self.level not in (1, 2, 3, 4):
            raise ValueError("gamma0 levels 1..4 supported")

    def hecke_form(self) -> tuple[int, complex, complex]:
        """(level N, a, b) such that G^self(z, z') = G^{Gamma0(N)}(a z + b, a z' + b)."""
        if self.family == "psl2z" or (self.family == "gamma0" and self.level == 1):
            return 1, 1.0, 0.0
        if self.family == "gamma0":
            return self.level, 1.0, 0.0
        if self.family == "gamma2":
            return 4, 0.5, 0.0
        return 2, 0.5, -0.5  # theta group


# ----------------------------------------------------------------------------
# Truncated Taylor jets.
# ----------------------------------------------------------------------------

class Jet:
    """Truncated Taylor series sum_k c[k] (dz)^k with complex coefficients."""

    __slots__ = ("c",)

    def __init__(self, coeffs):
        self.c = np.asarray(coeffs, dtype=complex)

    @classmethod
    def const(cls, value, order):
        c = np.zeros(order + 1, dtype=complex)
        c[0] = value
        return cls(c)

    @property
    def order(self) -> int:
        return len(self.c) - 1

    def deriv(self, k: int) -> complex:
        """k-th derivative value at the expansion point."""
        return self.c[k] * math.factorial(k)

    def derivs(self, upto: int) -> list[complex]:
        return [self.deriv(k) for k in range(upto + 1)]

    @property
    def value(self) -> complex:
        return complex(self.c[0])

    def _coerce(self, other):
        if isinstance(other, Jet):
            return other
        return Jet.const(other, self.order)

    def __add__(self, other):
        o = self._coerce(other)
        return Jet(self.c + o.c)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return Jet(self.c - o.c)

    def __rsub__(self, other):
        o = self._coerce(other)
        return Jet(o.c - self.c)

    def __neg__(self):
        return Jet(-self.c)

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return Jet(self.c * other)
        m = self.order
        out = np.zeros(m + 1, dtype=complex)
        for k in range(m + 1):
            out[k] = np.dot(self.c[: k + 1], other.c[k::-1])
        return Jet(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Jet):
            return Jet(self.c / other)
        m = self.order
        out = np.zeros(m + 1, dtype=complex)
        out[0] = self.c[0] / other.c[0]
        for k in range(1, m + 1):
            out[k] = (self.c[k] - np.dot(other.c[1 : k + 1], out[k - 1 :: -1][: k])) / other.c[0]
        return Jet(out)

    def __rtruediv__(self, other):
        return Jet.const(other, self.order) / self

    def __pow__(self, n: int):
        if n < 0:
            return 1.0 / (self ** (-n))
        result = Jet.const(1.0, self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def compose(self, inner: "Jet") -> "Jet":
        """self o inner, where inner has zero constant term."""
        if abs(inner.c[0]) != 0.0:
            raise ValueError("composition requires vanishing constant term")
        m = self.order
        out = Jet.const(self.c[m], m)
        for k in range(m - 1, -1, -1):
            out = out * inner + Jet.const(self.c[k], m)
        return out


# ----------------------------------------------------------------------------
# Raw q-series.
# ----------------------------------------------------------------------------

def _nmax(y: float, a: int) -> int:
    n = 18.0 * math.log(10.0) / (2.0 * math.pi * y)
    for _ in range(3):
        n = (18.0 + a * math.log10(max(n, 2.0))) * math.log(10.0) / (2.0 * math.pi * y)
    return int(n) + 4


def _lambert(z: complex, a: int) -> complex:
    """sum_{n>=1} n^a q^n / (1 - q^n), q = exp(2 pi i z)."""
    y = z.imag
    n = np.arange(1, _nmax(y, a) + 1)
    qn = np.exp(2j * math.pi * z * n)
    return complex(np.sum(n**a * qn / (1.0 - qn)))


def eta(z: complex) -> complex:
    """Dedekind eta via the sparse pentagonal-number series; needs Im z >= Y_MIN."""
    y = z.imag
    if y < Y_MIN:
        raise ValueError("eta: Im z below series floor; reduce first")
    kmax = int(math.sqrt(2.0 * _nmax(y, 0) / 3.0)) + 3
    k = np.arange(-kmax, kmax + 1)
    expo = k * (3 * k - 1) // 2
    total = np.sum((-1.0) ** (k % 2) * np.exp(2j * math.pi * z * expo))
    return cmath.exp(1j * math.pi * z / 12.0) * complex(total)


def eisenstein_e2star(z: complex) -> complex:
    return 1.0 - 24.0 * _lambert(z, 1)


def eisenstein_e4(z: complex) -> complex:
    return 1.0 + 240.0 * _lambert(z, 3)


def eisenstein_e6(z: complex) -> complex:
    return 1.0 - 504.0 * _lambert(z, 5)


# ----------------------------------------------------------------------------
# Jets of the core forms via the closed differential system.
# ----------------------------------------------------------------------------

def _eisenstein_jets(e2, e4, e6, order: int):
    a = np.zeros(order + 1, dtype=complex)
    b = np.zeros(order + 1, dtype=complex)
    c = np.zeros(order + 1, dtype=complex)
    a[0], b[0], c[0] = e2, e4, e6
    pi_i = 1j * math.pi
    for k in range(order):
        caa = np.dot(a[: k + 1], a[k::-1])
        cab = np.dot(a[: k + 1], b[k::-1])
        cac = np.dot(a[: k + 1], c[k::-1])
        cbb = np.dot(b[: k + 1], b[k::-1])
        a[k + 1] = (pi_i / 6.0) * (caa - b[k]) / (k + 1)
        b[k + 1] = (2.0 * pi_i / 3.0) * (cab - c[k]) / (k + 1)
        c[k + 1] = pi_i * (cac - cbb) / (k + 1)
    return Jet(a), Jet(b), Jet(c)


def _eta_jet(eta0: complex, e2_jet: Jet) -> Jet:
    order = e2_jet.order
    h = np.zeros(order + 1, dtype=complex)
    h[0] = eta0
    for k in range(order):
        conv = np.dot(e2_jet.c[: k + 1], h[k::-1])
        h[k + 1] = (1j * math.pi / 12.0) * conv / (k + 1)
    return Jet(h)


@dataclass
class ModularValuePack:
    """Values of eta, E2*, E4, E6, Delta, j at z plus jets to the requested order."""

    z: complex
    jets: dict
    delta_selftest: float = 0.0

    def __getattr__(self, name):
        j = self.__dict__["jets"]
        if name in j:
            return j[name].value
        raise AttributeError(name)

    def jet(self, name: str) -> Jet:
        return self.jets[name]

    def deriv(self, name: str, k: int = 1) -> complex:
        return self.jets[name].deriv(k)


def eval_core(z: complex, max_order: int = 0) -> ModularValuePack:
    """Core modular values at z (Im z >= Y_MIN), derivatives to max_order.

    Delta is computed both as eta^24 and as (E4^3 - E6^2)/1728; the relative
    difference is recorded as a built-in truncation self-test.
    """
    z = complex(z)
    if z.imag <= 0:
        raise ValueError("z must be in the upper half-plane")
    if z.imag < Y_MIN:
        raise ValueError("Im z below series floor; reduce into a fundamental domain first")
    if max_order > 6:
        raise ValueError("jets supported to order 6")
    n = round(z.real)
    zs = z - n  # T-shift for conditioning; values T-periodic except eta's phase
    e2 = eisenstein_e2star(zs)
    e4 = eisenstein_e4(zs)
    e6 = eisenstein_e6(zs)
    e2j, e4j, e6j = _eisenstein_jets(e2, e4, e6, max_order)
    eta_val = cmath.exp(1j * math.pi * n / 12.0) * eta(zs)
    etaj = _eta_jet(eta_val, e2j)
    delta_eta = etaj**24
    jinv = e4j**3 / delta_eta
    rel = 0.0
    if abs(jinv.value) < 1e6:  # dual route cancels like |j|/1728 in the Eisenstein form
        delta_eis = (e4j**3 - e6j**2) / 1728.0
        rel = abs(delta_eta.value - delta_eis.value) / max(abs(delta_eis.value), 1e-300)
        if rel > 1e-9:
            raise ArithmeticError(f"Delta dual-route self-test failed (rel {rel:.2e})")
    jets = {"eta": etaj, "e2star": e2j, "e4": e4j, "e6": e6j,
            "delta": delta_eta, "j": jinv}
    return ModularValuePack(z, jets, rel)


# ----------------------------------------------------------------------------
# Level-1 values anywhere in H: reduce, evaluate, pull back with automorphy jets.
# ----------------------------------------------------------------------------

def _psl_reduce(z: complex):
    """Reduce z into the closed PSL(2,Z) fundamental domain.

    Returns (z_red, (a,b,c,d), parity) with z_red = gamma z; parity counts the
    sign character of the word (S and T both odd).
    """
    a, b, c, d = 1, 0, 0, 1
    parity = 0
    w = complex(z)
    for _ in range(10000):
        n = round(w.real)
        if n != 0:
            w -= n
            a, b = a - n * c, b - n * d
            parity ^= n & 1
        if abs(w) < 1.0 - 1e-15:
            w = -1.0 / w
            a, b, c, d = -c, -d, a, b
            parity ^= 1
        else:
            break
    else:
        raise RuntimeError("fundamental-domain reduction did not terminate")
    return w, (a, b, c, d), parity


def psl_jets(z: complex, order: int = 0) -> dict:
    """Jets of {E2*, E4, E6, Delta, j} at arbitrary z in H.

    For Im z below the series floor, evaluates at the reduced point and pulls
    back through the automorphy factors (as jets), so the production path
    never sees an ill-conditioned q-series.
    """
    z = complex(z)
    if z.imag >= _YQ:
        p = eval_core(z, order)
        return {k: p.jets[k] for k in ("e2star", "e4", "e6", "delta", "j")}
    zr, (a, b, c, d), _ = _psl_reduce(z)
    p = eval_core(zr, order)
    J0 = c * z + d
    # jets in dz: J(dz) = J0 + c dz; gamma(z + dz) - zr = dz / (J0 (J0 + c dz))
    jc = np.zeros(order + 1, dtype=complex)
    jc[0] = J0
    if order >= 1:
        jc[1] = c
    Jj = Jet(jc)
    if order >= 1:
        num = np.zeros(order + 1, dtype=complex)
        num[1] = 1.0
        inner = Jet(num) / (Jj * J0)
        comp = {k: p.jets[k].compose(inner) for k in ("e2star", "e4", "e6", "delta", "j")}
    else:
        comp = {k: Jet(np.array([p.jets[k].value])) for k in ("e2star", "e4", "e6", "delta", "j")}
    return {
        "e2star": (comp["e2star"] + (6j * c / math.pi) * Jj) / Jj**2,
        "e4": comp["e4"] / Jj**4,
        "e6": comp["e6"] / Jj**6,
        "delta": comp["delta"] / Jj**12,
        "j": comp["j"],
    }


def eval_E2_nonholo(z: complex) -> complex:
    """E2(z) = E2*(z) - 3/(pi Im z)."""
    z = complex(z)
    return psl_jets(z, 0)["e2star"].value - 3.0 / (math.pi * z.imag)


# ----------------------------------------------------------------------------
# Hauptmoduln.
# ----------------------------------------------------------------------------

def eval_lambda(z: complex) -> complex:
    """Modular lambda via theta null quotients, lam = (theta2/theta3)^4."""
    z = complex(z)
    if z.imag <= 0:
        raise ValueError("z must be in the upper half-plane")
    zs = z - 2 * round(z.real / 2)  # lambda has period 2
    q = cmath.exp(1j * math.pi * zs)
    if abs(q) > math.exp(-math.pi * Y_MIN):
        raise ValueError("Im z below series floor for lambda")
    nmax = int(math.sqrt(18.0 * math.log(10.0) / (math.pi * zs.imag))) + 3
    n = np.arange(0, nmax + 1)
    t2 = 2.0 * np.sum(np.power(q, (n + 0.5) ** 2))
    t3 = 1.0 + 2.0 * np.sum(np.power(q, (n + 1.0) ** 2))
    return complex((t2 / t3) ** 4)


_ALPHA_EXP = {2: 24, 3: 12, 4: 8}     # exponent on eta(z)/eta(Nz)
_ALPHA_SCALE = {2: 64.0, 3: 27.0, 4: 16.0}  # N^{6/(N-1)}


def _alpha_direct(N: int, z: complex) -> complex:
    r = eta(z) / eta(N * z)
    inv = 1.0 + r ** _ALPHA_EXP[N] / _ALPHA_SCALE[N]
    if abs(inv) < 1e-13:
        return complex(math.inf, 0.0)
    return 1.0 / inv


def eval_alphaN(N: int, z: complex) -> complex:
    """Hauptmodul alpha_N for Gamma0(N), N in {2,3,4}; poles return complex inf."""
    if N not in (2, 3, 4):
        raise ValueError("levels 2, 3, 4 only")
    z = complex(z) - round(complex(z).real)
    if z.imag >= Y_MIN:
        return _alpha_direct(N, z)
    xi = -1.0 / (N * z)
    xi -= round(xi.real)
    if xi.imag >= Y_MIN:
        a = _alpha_direct(N, xi)
        return 1.0 - a if not math.isinf(a.real) else complex(-math.inf, 0)
    raise ValueError("Im z too small for alpha_N even after a Fricke flip")


def sqrt_j_ratio(z: complex) -> complex:
    """sqrt((j(z)-1728)/j(z)) with the sign convention of the level-1 hauptmodul.

    Principal root on the standard fundamental domain, with a sign flip for
    every S or odd T step of the reduction word (the sign character of the
    projective modular group); positive above i on the imaginary axis and
    negative below it.
    """
    zr, _, parity = _psl_reduce(complex(z))
    jv = eval_core(zr, 0).j
    if jv == 0:
        raise ZeroDivisionError("j = 0: corner point excluded")
    s = cmath.sqrt((jv - 1728.0) / jv)
    return -s if parity else s


def eval_alpha1(z: complex) -> complex:
    """Level-1 analogue of alpha_N: (1 - sqrt((j-1728)/j))/2 on the branch above."""
    return 0.5 * (1.0 - sqrt_j_ratio(z))


def alpha_derivative(N: int, z: complex) -> complex:
    """alpha_N'(z) = (2 pi i/(N-1)) alpha_N (1-alpha_N) (N E2(Nz) - E2(z))."""
    a = eval_alphaN(N, z)
    if math.isinf(a.real):
        raise ArithmeticError("alpha_N pole")
    _, dval = hecke_channel(N, z)
    return 2j * math.pi / (N - 1.0) * a * (1.0 - a) * dval


# ----------------------------------------------------------------------------
# Robust (alpha_N, N E2*(N.) - E2*(.)) evaluation for contour integrands.
# ----------------------------------------------------------------------------

def _hecke_direct(N: int, z: complex):
    a = _alpha_direct(N, z)
    d = N * eisenstein_e2star(N * z) - eisenstein_e2star(z)
    return a, d


def hecke_channel(N: int, zeta: complex):
    """(alpha_N(zeta), N E2*(N zeta) - E2*(zeta)) anywhere the contours go.

    Uses a T-shift, and when Im zeta is small a Fricke flip
    alpha -> 1 - alpha, D -> -N xi^2 D(xi) with xi = -1/(N zeta).
    """
    z = complex(zeta)
    z0 = z - round(z.real)
    if z0.imag >= _YQ:
        return _hecke_direct(N, z0)
    xi = -1.0 / (N * z0)
    xis = xi - round(xi.real)
    if xis.imag >= max(z0.imag, Y_MIN):
        a, d = _hecke_direct(N, xis)
        af = (1.0 - a) if not math.isinf(a.real) else complex(-math.inf, 0.0)
        return af, -N * xi * xi * d
    if z0.imag >= Y_MIN:
        return _hecke_direct(N, z0)
    raise ValueError(f"cannot evaluate level-{N} data at {zeta}")


def hecke_jets(N: int, z: complex, order: int) -> dict:
    """Jets of alpha_N and D = N E2*(Nz) - E2*(z) at z (Im z >= Y_MIN).

    alpha jets are generated from alpha' = (2 pi i/(N-1)) alpha (1-alpha) D,
    order by order.
    """
    z = complex(z)
    if z.imag < Y_MIN:
        raise ValueError("Im z below series floor for hecke_jets")
    e2_z = _eisenstein_jets(eisenstein_e2star(z), eisenstein_e4(z), eisenstein_e6(z), order)[0]
    pN = _eisenstein_jets(eisenstein_e2star(N * z), eisenstein_e4(N * z),
                          eisenstein_e6(N * z), order)[0]
    # chain rule for E2*(N z): coefficient k picks up N^k
    dj = Jet(N * pN.c * N ** np.arange(order + 1) - e2_z.c)
    a0 = eval_alphaN(N, z)
    if math.isinf(a0.real):
        raise ArithmeticError("alpha_N pole")
    ac = np.zeros(order + 1, dtype=complex)
    ac[0] = a0
    kfac = 2j * math.pi / (N - 1.0)
    for k in range(order):
        aj = Jet(ac)
        rhs = kfac * aj * (1.0 - aj) * dj
        ac[k + 1] = rhs.c[k] / (k + 1)
    return {"alpha": Jet(ac), "D": dj}


# ----------------------------------------------------------------------------
# Fundamental-domain reduction per group.
# ----------------------------------------------------------------------------

def fundamental_domain_reduce(z: complex, group: GroupSpec):
    """Move z into the closed fundamental domain of the group.

    Returns (z_reduced, gamma) with gamma = (a, b, c, d) integer entries and
    z_reduced = gamma z in the original coordinates of the group family.
    """
    z = complex(z)
    if z.imag <= 0:
        raise ValueError("z must be in the upper half-plane")
    fam, lvl = group.family, group.level
    if fam == "psl2z" or (fam == "gamma0" and lvl == 1):
        w, mat, _ = _psl_reduce(z)
        return w, mat
    if fam == "gamma2":
        w, (a, b, c, d) = fundamental_domain_reduce(z / 2.0, GroupSpec("gamma0", 4))
        return 2.0 * w, (a, 2 * b, c // 2, d)
    if fam == "theta":
        w, (a, b, c, d) = fundamental_domain_reduce((z - 1.0) / 2.0, GroupSpec("gamma0", 2))
        return 2.0 * w + 1.0, (a + c // 2, 2 * b + d - a - c // 2, c // 2, d - c // 2)
    N = lvl
    a, b, c, d = 1, 0, 0, 1
    w = z
    for _ in range(10000):
        n = round(w.real)
        if n != 0:
            w -= n
            a, b = a - n * c, b - n * d
        moved = False
        for sgn in (+1, -1):
            # isometric circle |z - sgn/N| = 1/N of [[1,0],[-sgn N,1]]
            if abs(w - sgn / N) < 1.0 / N - 1e-15:
                w = w / (-sgn * N * w + 1.0)
                a, b, c, d = a, b, c - sgn * N * a, d - sgn * N * b
                moved = True
                break
        if not moved:
            return w, (a, b, c, d)
    raise RuntimeError("fundamental-domain reduction did not terminate")
