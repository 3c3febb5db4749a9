"""Theta-series evaluation of K, sn/cn/dn, the rectangle map and Weierstrass p.

Conventions: the nome is ``q = exp(i*pi*tau)``; the modulus is
``k = theta2(0)^2 / theta3(0)^2`` so that ``K'/K = -i*tau``.  All evaluators
accept scalars or numpy arrays and return the same shape.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import elliprf

from .errors import NonConvergent, OutOfDomain, PoleProximity
from .lattice import SublatticeBasis, as_basis, hermite_canonical

DEFAULT_SEED = 20100407
MAX_NOME = 0.97


@dataclass(frozen=True)
class EvalSettings:
    series_tolerance: float = 1e-14
    max_terms: int = 64
    identity_tolerance: float = 1e-9
    pole_guard: float = 1e-8
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if not 0 < self.series_tolerance < 1e-6:
            raise ValueError("series_tolerance must lie in (0, 1e-6)")
        if self.max_terms < 16:
            raise ValueError("max_terms must be at least 16")
        if self.identity_tolerance <= 0:
            raise ValueError("identity_tolerance must be positive")

    def replace(self, **kw) -> "EvalSettings":
        return EvalSettings(**{**self.__dict__, **kw})


DEFAULT_SETTINGS = EvalSettings()


@dataclass(frozen=True)
class Modulus:
    tau: complex

    def __post_init__(self):
        tau = complex(self.tau)
        if not tau.imag > 0:
            raise ValueError(f"tau must have positive imaginary part, got {tau}")
        object.__setattr__(self, "tau", tau)

    @classmethod
    def from_k(cls, k: float) -> "Modulus":
        """Modulus with real elliptic modulus ``0 < k < 1``."""
        kp = math.sqrt(1.0 - k * k)
        return cls(1j * _agm(1.0, kp) / _agm(1.0, k))

    @property
    def q(self) -> complex:
        return cmath.exp(1j * math.pi * self.tau)

    def scaled(self, n) -> "Modulus":
        return Modulus(n * self.tau)

    @property
    def k(self) -> complex:
        _, t2, t3, _ = null_thetas(self.tau)
        return t2 * t2 / (t3 * t3)

    @property
    def kprime(self) -> complex:
        _, _, t3, t4 = null_thetas(self.tau)
        return t4 * t4 / (t3 * t3)

    def to_json_obj(self) -> dict:
        return {"tau": [self.tau.real, self.tau.imag]}

    @classmethod
    def from_json_obj(cls, obj) -> "Modulus":
        re, im = obj["tau"]
        return cls(complex(re, im))


@dataclass(frozen=True)
class AmbientLattice:
    """Complex lattice ``Z*omega1 + Z*omega2`` with ``Im(omega2/omega1) > 0``."""

    omega1: complex
    omega2: complex

    def __post_init__(self):
        w1, w2 = complex(self.omega1), complex(self.omega2)
        if w1 == 0 or not (w2 / w1).imag > 0:
            raise ValueError("generators must be independent with Im(omega2/omega1) > 0")
        object.__setattr__(self, "omega1", w1)
        object.__setattr__(self, "omega2", w2)

    @classmethod
    def from_tau(cls, tau: complex) -> "AmbientLattice":
        return cls(1.0, tau)

    def generators(self, sub=None) -> tuple[complex, complex]:
        if sub is None:
            return self.omega1, self.omega2
        m = as_basis(sub).m
        return (
            m[0][0] * self.omega1 + m[1][0] * self.omega2,
            m[0][1] * self.omega1 + m[1][1] * self.omega2,
        )

    def rebased(self, sub) -> "AmbientLattice":
        """The sublattice ``sub`` as an ambient lattice in its own right."""
        return AmbientLattice(*self.generators(hermite_canonical(sub)))

    def to_json_obj(self) -> dict:
        return {
            "omega1": [self.omega1.real, self.omega1.imag],
            "omega2": [self.omega2.real, self.omega2.imag],
        }

    @classmethod
    def from_json_obj(cls, obj) -> "AmbientLattice":
        return cls(complex(*obj["omega1"]), complex(*obj["omega2"]))


def _agm(a, b, tol=4e-16, max_iter=64):
    """Arithmetic-geometric mean with the 'right' choice of square root."""
    a, b = complex(a), complex(b)
    for _ in range(max_iter):
        if abs(a - b) <= tol * abs(a):
            return a if a.imag or b.imag else a.real
        g = cmath.sqrt(a * b)
        m = 0.5 * (a + b)
        if abs(m - g) > abs(m + g):
            g = -g
        a, b = m, g
    raise NonConvergent("AGM did not converge")


def _check_nome(tau: complex) -> complex:
    q = cmath.exp(1j * math.pi * tau)
    if abs(q) > MAX_NOME:
        raise NonConvergent(f"|q| = {abs(q):.4f} exceeds {MAX_NOME}; theta series too slow")
    return q


def _term_count(tau: complex, max_im: float, settings: EvalSettings) -> int:
    """Terms needed so every theta tail is below ``series_tolerance`` relative
    to the leading amplitude, for arguments with ``|Im v| <= max_im``."""
    a = math.pi * tau.imag
    log_tol = math.log(settings.series_tolerance)
    for n in range(1, settings.max_terms + 1):
        if -a * n * n + 2 * n * max_im <= log_tol:
            return n
    raise NonConvergent(f"theta series needs more than {settings.max_terms} terms")


def thetas(v, tau: complex, settings: EvalSettings = DEFAULT_SETTINGS):
    """Jacobi theta functions ``theta_1..theta_4`` at ``v`` with nome ``exp(i pi tau)``."""
    _check_nome(tau)
    v = np.asarray(v, dtype=complex)
    max_im = float(np.max(np.abs(v.imag), initial=0.0))
    nterms = _term_count(tau, max_im, settings)
    t1 = np.zeros_like(v)
    t2 = np.zeros_like(v)
    t3 = np.ones_like(v)
    t4 = np.ones_like(v)
    for n in range(nterms + 1):
        h = n + 0.5
        qh = cmath.exp(1j * math.pi * tau * h * h)
        sgn = -1.0 if n % 2 else 1.0
        t1 += sgn * 2.0 * qh * np.sin((2 * n + 1) * v)
        t2 += 2.0 * qh * np.cos((2 * n + 1) * v)
        if n:
            c = 2.0 * cmath.exp(1j * math.pi * tau * n * n) * np.cos(2 * n * v)
            t3 += c
            t4 += sgn * c
    return t1, t2, t3, t4


def null_thetas(tau: complex, settings: EvalSettings = DEFAULT_SETTINGS):
    """``(0, theta2(0), theta3(0), theta4(0))`` as Python complex numbers."""
    _check_nome(tau)
    tol = settings.series_tolerance
    t2, t3, t4 = 0j, 1 + 0j, 1 + 0j
    for n in range(settings.max_terms):
        h = n + 0.5
        a = 2 * cmath.exp(1j * math.pi * tau * h * h)
        t2 += a
        b = 2 * cmath.exp(1j * math.pi * tau * n * n) if n else 0j
        t3 += b
        t4 += -b if n % 2 else b
        if n >= 1 and max(abs(a), abs(b)) <= tol * min(abs(t2), abs(t3), abs(t4)):
            return 0j, t2, t3, t4
    raise NonConvergent("null theta series did not converge")


def complete_elliptic_K(m: Modulus, settings: EvalSettings = DEFAULT_SETTINGS) -> complex:
    """Complete elliptic integral ``K`` for the modulus determined by ``tau``.

    Computed as ``pi / (2 AGM(1, k'))``; the result is checked against the
    theta identity ``K = pi theta3(0)^2 / 2`` so that the AGM branch is the
    one matching the nome.
    """
    _, _, t3, t4 = null_thetas(m.tau, settings)
    kp = t4 * t4 / (t3 * t3)
    K = math.pi / (2 * _agm(1.0, kp))
    K_theta = 0.5 * math.pi * t3 * t3
    if abs(K - K_theta) > 1e-10 * abs(K_theta):
        raise NonConvergent(f"AGM branch disagrees with nome for tau = {m.tau}")
    if isinstance(K, complex) and K.imag == 0:
        return K.real
    return K


def jacobi_sncndn(z, m: Modulus, settings: EvalSettings = DEFAULT_SETTINGS):
    """``(sn, cn, dn)`` at ``z`` with quarter periods ``K`` and ``iK' = tau*K``."""
    tau = m.tau
    _, n2, n3, n4 = null_thetas(tau, settings)
    z = np.asarray(z, dtype=complex)
    v = z / (n3 * n3)
    lat_im = math.pi * tau.imag
    nt = np.round(v.imag / lat_im)
    v = v - nt * math.pi * tau
    mp = np.round(v.real / math.pi)
    v = v - mp * math.pi

    half = 0.5 * math.pi * tau
    poles = [s * half + c * math.pi for s in (1, -1) for c in (-1, 0, 1)]
    dist = np.min([np.abs(v - p) for p in poles], axis=0)
    K = 0.5 * math.pi * n3 * n3
    if np.any(dist * abs(n3 * n3) < settings.pole_guard * abs(K)):
        raise PoleProximity("argument is within the pole guard of a pole of sn")

    t1, t2, t3, t4 = thetas(v, tau, settings)
    sm = np.where(mp % 2, -1.0, 1.0)
    sn_ = np.where(nt % 2, -1.0, 1.0)
    sn = (n3 / n2) * t1 / t4 * sm
    cn = (n4 / n2) * t2 / t4 * sm * sn_
    dn = (n4 / n3) * t3 / t4 * sn_
    return _unwrap(sn), _unwrap(cn), _unwrap(dn)


def _unwrap(a):
    a = np.asarray(a)
    return complex(a) if a.ndim == 0 else a


def jacobi_sn(z, m: Modulus, settings: EvalSettings = DEFAULT_SETTINGS):
    return jacobi_sncndn(z, m, settings)[0]


def rectangle_map(u, m: Modulus, settings: EvalSettings = DEFAULT_SETTINGS):
    """``x_tau(u) = sn(K u | tau)``: maps ``[-1, 1] x [0, |tau|]`` onto the upper half-plane."""
    K = complete_elliptic_K(m, settings)
    return jacobi_sn(np.asarray(u, dtype=complex) * K, m, settings)


def _f_real(x, k):
    """Incomplete integral ``F(arcsin x | k)`` for real ``|x| <= 1``, ``0 < k < 1``."""
    x = np.asarray(x, dtype=float)
    return x * elliprf(1 - x * x, 1 - k * k * x * x, 1.0)


def _seed_inverse(x: np.ndarray, m: Modulus, K: complex) -> np.ndarray:
    k = m.k
    kp = m.kprime
    real_k = abs(k.imag) < 1e-15 and abs(kp.imag) < 1e-15
    u = np.empty_like(x)
    on_axis = (x.imag == 0) & (np.abs(x.real) > 1) if real_k else np.zeros(x.shape, bool)
    inner = ~on_axis
    if np.any(inner):
        xi = x[inner]
        u[inner] = xi * elliprf(1 - xi * xi, 1 - k * k * xi * xi, 1.0 + 0j) / K
    if np.any(on_axis):
        k, kp, K = k.real, kp.real, float(np.real(K))
        xr = x[on_axis].real
        a = np.abs(xr)
        sgn = np.sign(xr)
        side = a <= 1 / k
        out = np.empty(xr.shape, complex)
        # right/left edge: sn(K + i y) = 1 / dn(y | k')
        s = np.sqrt(np.clip(1 - 1 / (a[side] ** 2), 0, None)) / kp
        out[side] = sgn[side] * (1 + 1j * _f_real(np.clip(s, 0, 1), kp) / K)
        # top edge: sn(z + iK') = 1 / (k sn z)
        w = _f_real(1 / (k * xr[~side]), k) / K
        out[~side] = w + m.tau
        u[on_axis] = out
    return u


def _clamp_to_rectangle(u: complex, tau: complex) -> complex:
    """Pick the preimage representative closest to ``[-1, 1] x [0, |tau|]``."""
    h = abs(tau)

    def dist(w):
        dx = max(abs(w.real) - 1, 0)
        dy = max(-w.imag, w.imag - h, 0)
        return math.hypot(dx, dy)

    if dist(u) == 0:
        return u
    b0 = round(u.imag / (2 * h))
    a0 = round(u.real / 4)
    base = u - 4 * a0 - 2 * tau * b0
    best = u
    for w0 in (base, 2 - base, -2 - base):
        for a in (-1, 0, 1):
            for b in (-1, 0, 1):
                w = w0 + 4 * a + 2 * tau * b
                if dist(w) < dist(best) - 1e-15:
                    best = w
    return best


def rectangle_map_inverse(x, m: Modulus, settings: EvalSettings = DEFAULT_SETTINGS):
    """Inverse of :func:`rectangle_map` on the closed upper half-plane."""
    xa = np.atleast_1d(np.asarray(x, dtype=complex))
    if np.any(xa.imag < -1e-14 * np.maximum(1, np.abs(xa))):
        raise OutOfDomain("rectangle_map_inverse requires Im(x) >= 0")
    xa = np.where(xa.imag < 0, xa.real + 0j, xa)
    K = complete_elliptic_K(m, settings)
    u = _seed_inverse(xa, m, K)

    big = np.abs(xa) > 1
    target = np.where(big, 1 / np.where(xa == 0, 1, xa), xa)
    for _ in range(30):
        s, c, d = jacobi_sncndn(u * K, m, settings)
        s, c, d = np.atleast_1d(s), np.atleast_1d(c), np.atleast_1d(d)
        with np.errstate(divide="ignore", invalid="ignore"):
            f = np.where(big, 1 / s, s)
        err = f - target
        if np.all(np.abs(err) <= 4e-16 * np.maximum(1, np.abs(target))):
            break
        with np.errstate(divide="ignore", invalid="ignore"):
            deriv = np.where(big, -K * c * d / (s * s), K * c * d)
            step = np.where(np.abs(deriv) > 0, err / np.where(deriv == 0, 1, deriv), 0)
        u = u - np.where(np.abs(err) > 4e-16 * np.maximum(1, np.abs(target)), step, 0)

    if m.tau.real == 0:
        u = np.array([_clamp_to_rectangle(complex(w), m.tau) for w in u])
    back = np.atleast_1d(jacobi_sn(u * K, m, settings))
    resid = np.abs(back - xa) / np.maximum(1, np.abs(xa))
    if np.any(resid > settings.identity_tolerance):
        raise NonConvergent(f"inverse rectangle map residual {resid.max():.3e}")
    return _unwrap(u) if np.ndim(x) == 0 else u


def _reduce_lattice(w1: complex, w2: complex) -> tuple[complex, complex]:
    """Lagrange-Gauss reduction, positively oriented."""
    if abs(w2) < abs(w1):
        w1, w2 = w2, w1
    while True:
        mu = round((w2 / w1).real)
        w2 = w2 - mu * w1
        if abs(w2) >= abs(w1):
            break
        w1, w2 = w2, w1
    if (w2 / w1).imag < 0:
        w2 = -w2
    return w1, w2


def _lattice_generators(lat: AmbientLattice, sub) -> tuple[complex, complex]:
    if sub is None:
        return lat.omega1, lat.omega2
    return lat.generators(sub)


def weierstrass_p(u, lat: AmbientLattice, sub=None, settings: EvalSettings = DEFAULT_SETTINGS):
    """Weierstrass p of the complex lattice spanned by ``lat`` in ``sub`` coordinates.

    Uses ``p(z) = (pi/w1)^2 [(t2 t3 t4(v)/t1(v))^2 - (t2^4 + t3^4)/3]`` with
    ``v = pi z / w1`` on a reduced basis, so ``|q| <= exp(-pi sqrt(3)/2)``.
    """
    w1, w2 = _reduce_lattice(*_lattice_generators(lat, sub))
    tau = w2 / w1
    z = np.asarray(u, dtype=complex)
    zt = z / w1
    b = np.round(zt.imag / tau.imag)
    zt = zt - b * tau
    a = np.round(zt.real)
    zt = zt - a
    dist = np.min(
        [np.abs(zt - (i + j * tau)) for i in (-1, 0, 1) for j in (-1, 0, 1)], axis=0
    )
    if np.any(dist < settings.pole_guard):
        raise PoleProximity("argument is within the pole guard of a lattice point")
    _, n2, n3, _ = null_thetas(tau, settings)
    v = math.pi * zt
    t1, _, _, t4 = thetas(v, tau, settings)
    c = (math.pi / w1) ** 2
    val = c * ((n2 * n3 * t4 / t1) ** 2 - (n2**4 + n3**4) / 3)
    return _unwrap(val)


def weierstrass_p_oracle(u, lat: AmbientLattice, sub=None, radius: int = 200):
    """Direct truncated lattice sum over coordinates ``|a|, |b| <= radius``."""
    if radius < 8:
        raise ValueError("radius must be at least 8")
    w1, w2 = _lattice_generators(lat, sub)
    r = np.arange(-radius, radius + 1)
    A, B = np.meshgrid(r, r, indexing="ij")
    mask = (A != 0) | (B != 0)
    pts = (A * w1 + B * w2)[mask]
    inv_sq = np.sum(1.0 / pts**2)

    def one(z):
        z = complex(z)
        d = z - pts
        if abs(z) < 1e-300 or np.min(np.abs(d)) < 1e-300:
            raise PoleProximity("argument coincides with a lattice point")
        return 1 / z**2 + np.sum(1.0 / d**2) - inv_sq

    z = np.asarray(u, dtype=complex)
    if z.ndim == 0:
        return one(z)
    return np.array([one(w) for w in z.ravel()]).reshape(z.shape)


def lattice_points_near(u, lat: AmbientLattice, sub=None) -> float:
    """Distance from ``u`` to the nearest point of the complex lattice."""
    w1, w2 = _reduce_lattice(*_lattice_generators(lat, sub))
    tau = w2 / w1
    zt = complex(u) / w1
    zt -= round(zt.imag / tau.imag) * tau
    zt -= round(zt.real)
    return abs(w1) * min(abs(zt - (i + j * tau)) for i in (-1, 0, 1) for j in (-1, 0, 1))


__all__ = [
    "AmbientLattice",
    "DEFAULT_SEED",
    "DEFAULT_SETTINGS",
    "EvalSettings",
    "Modulus",
    "SublatticeBasis",
    "complete_elliptic_K",
    "jacobi_sn",
    "jacobi_sncndn",
    "null_thetas",
    "rectangle_map",
    "rectangle_map_inverse",
    "thetas",
    "weierstrass_p",
    "weierstrass_p_oracle",
]
