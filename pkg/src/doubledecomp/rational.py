"""Rational maps between the spheres ``C / L_sub^+ -> C / L^+``.

With coordinates ``x(u) = p(u | L)`` and ``x_sub(u) = p(u | L_sub)`` every
sublattice inclusion gives a rational function ``R`` of degree ``|L : L_sub|``
with ``R(x_sub(u)) = x(u)``.  This module recovers ``R`` from samples,
composes such maps, and checks the composition identities they satisfy.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .elliptic import (
    DEFAULT_SETTINGS,
    AmbientLattice,
    EvalSettings,
    Modulus,
    lattice_points_near,
    rectangle_map,
    rectangle_map_inverse,
    weierstrass_p,
)
from .errors import (
    DegenerateSampling,
    DegreeCollapse,
    EqualSublattices,
    InvalidPath,
    NonConvergent,
    PoleProximity,
)
from .lattice import (
    DecompositionTable,
    LatticePath,
    SublatticeBasis,
    as_basis,
    hermite_canonical,
    intersect,
    relative_basis,
)

# composite identities stack the kernel error once more
MAP_SETTINGS = DEFAULT_SETTINGS.replace(identity_tolerance=1e-8)

KERNEL_GAP = 1e6
MAX_ATTEMPTS = 4
TRIM = 1e-13


def _as_coeffs(c) -> tuple[complex, ...]:
    out = [complex(x) for x in c]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    if not out:
        out = [0j]
    return tuple(out)


def _horner(coeffs, x):
    acc = np.zeros_like(x, dtype=complex)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _abs_horner(coeffs, ax):
    acc = np.zeros_like(ax, dtype=float)
    for c in reversed(coeffs):
        acc = acc * ax + abs(c)
    return acc


def _polymul(a, b):
    return np.convolve(np.asarray(a, complex), np.asarray(b, complex))


def _polyadd(a, b):
    n = max(len(a), len(b))
    out = np.zeros(n, complex)
    out[: len(a)] += a
    out[: len(b)] += b
    return out


@dataclass(frozen=True)
class RationalFunction:
    """``num(x) / den(x)``; coefficients in ascending powers of ``x``."""

    num: tuple[complex, ...]
    den: tuple[complex, ...]

    def __init__(self, num, den=(1,)):
        n, d = _as_coeffs(num), _as_coeffs(den)
        if all(c == 0 for c in d):
            raise ValueError("denominator is identically zero")
        object.__setattr__(self, "num", n)
        object.__setattr__(self, "den", d)

    @classmethod
    def identity(cls) -> "RationalFunction":
        return cls((0, 1), (1,))

    @property
    def degree(self) -> int:
        return max(len(self.num), len(self.den)) - 1

    def normalized(self) -> "RationalFunction":
        """Scale so that the largest-magnitude coefficient equals 1."""
        allc = self.num + self.den
        big = max(allc, key=abs)
        return RationalFunction([c / big for c in self.num], [c / big for c in self.den])

    def trimmed(self, rel: float = TRIM) -> "RationalFunction":
        """Drop leading coefficients below ``rel`` times the largest one."""
        scale = max(abs(c) for c in self.num + self.den)

        def cut(cs):
            cs = list(cs)
            while len(cs) > 1 and abs(cs[-1]) <= rel * scale:
                cs.pop()
            return cs

        return RationalFunction(cut(self.num), cut(self.den))

    def __call__(self, x):
        return self.eval(x)

    def eval(self, x):
        """Horner evaluation; raises :class:`PoleProximity` on a numerical pole."""
        xa = np.asarray(x, dtype=complex)
        d = _horner(self.den, xa)
        bound = _abs_horner(self.den, np.abs(xa))
        if np.any(np.abs(d) <= 1e-14 * bound):
            raise PoleProximity("denominator vanishes at the evaluation point")
        val = _horner(self.num, xa) / d
        return complex(val) if val.ndim == 0 else val

    def roots(self) -> tuple[np.ndarray, np.ndarray]:
        t = self.trimmed()
        return np.roots(t.num[::-1]), np.roots(t.den[::-1])

    def common_root_gap(self) -> float:
        """Smallest relative distance between a zero and a pole (inf if none)."""
        zeros, poles = self.roots()
        if not len(zeros) or not len(poles):
            return math.inf
        d = np.abs(zeros[:, None] - poles[None, :]) / (1 + np.abs(poles[None, :]))
        return float(d.min())

    def to_json_obj(self) -> dict:
        return {
            "num": [[c.real, c.imag] for c in self.num],
            "den": [[c.real, c.imag] for c in self.den],
        }

    @classmethod
    def from_json_obj(cls, obj) -> "RationalFunction":
        return cls([complex(*c) for c in obj["num"]], [complex(*c) for c in obj["den"]])


@dataclass(frozen=True)
class MobiusMap:
    """``x -> (a x + b) / (c x + d)``; composition is the matrix product."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        if self.a * self.d - self.b * self.c == 0:
            raise ValueError("singular Mobius matrix")

    @classmethod
    def identity(cls) -> "MobiusMap":
        return cls(1, 0, 0, 1)

    @classmethod
    def from_points(cls, src, dst) -> "MobiusMap":
        """The unique map sending the three points ``src`` to ``dst``.

        ``math.inf`` stands for the point at infinity.
        """
        return _to_standard(dst).inverse() @ _to_standard(src)

    def __matmul__(self, other: "MobiusMap") -> "MobiusMap":
        return MobiusMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "MobiusMap":
        return MobiusMap(self.d, -self.b, -self.c, self.a)

    def __call__(self, x):
        x = np.asarray(x, dtype=complex)
        val = (self.a * x + self.b) / (self.c * x + self.d)
        return complex(val) if val.ndim == 0 else val

    def as_rational(self) -> RationalFunction:
        return RationalFunction((self.b, self.a), (self.d, self.c))

    def to_json_obj(self) -> dict:
        return {"matrix": [[[z.real, z.imag] for z in (self.a, self.b)],
                           [[z.real, z.imag] for z in (self.c, self.d)]]}


def _to_standard(pts) -> MobiusMap:
    """Map sending ``pts`` to ``(0, 1, inf)``."""
    z1, z2, z3 = (p if p == math.inf else complex(p) for p in pts)
    if z1 == math.inf:
        return MobiusMap(0, z2 - z3, 1, -z3)
    if z2 == math.inf:
        return MobiusMap(1, -z1, 1, -z3)
    if z3 == math.inf:
        return MobiusMap(1, -z1, 0, z2 - z1)
    return MobiusMap(z2 - z3, -z1 * (z2 - z3), z2 - z1, -z3 * (z2 - z1))


def compose(outer: RationalFunction, inner: RationalFunction) -> RationalFunction:
    """Coefficients of ``outer(inner(x))`` obtained by clearing denominators."""
    for f in (outer, inner):
        if f.degree > 0 and f.common_root_gap() < 1e-8:
            raise DegreeCollapse("input has a numerically common zero and pole")
    n = outer.degree
    a = np.asarray(inner.num, complex)
    b = np.asarray(inner.den, complex)
    apow = [np.ones(1, complex)]
    bpow = [np.ones(1, complex)]
    for _ in range(n):
        apow.append(_polymul(apow[-1], a))
        bpow.append(_polymul(bpow[-1], b))
    num = np.zeros(1, complex)
    den = np.zeros(1, complex)
    for k in range(n + 1):
        term = _polymul(apow[k], bpow[n - k])
        if k < len(outer.num):
            num = _polyadd(num, outer.num[k] * term)
        if k < len(outer.den):
            den = _polyadd(den, outer.den[k] * term)
    out = RationalFunction(num, den).normalized().trimmed()
    if out.degree < outer.degree * inner.degree:
        raise DegreeCollapse(
            f"composite degree {out.degree} below {outer.degree} * {inner.degree}"
        )
    return out


def _relative_residual(got, want) -> np.ndarray:
    return np.abs(got - want) / np.maximum(1.0, np.abs(want))


def _shortest(w1: complex, w2: complex) -> float:
    return min(abs(w1), abs(w2), abs(w1 + w2), abs(w1 - w2))


def sample_points(lat: AmbientLattice, sub, count: int, rng: np.random.Generator,
                  settings: EvalSettings = DEFAULT_SETTINGS, avoid=None) -> np.ndarray:
    """Uniform points of the fundamental parallelogram of ``lat`` in ``sub`` coordinates.

    Points within the pole guard of the lattices in ``avoid`` (a list of
    ``(AmbientLattice, sub)``) or of the half-lattice points of the sampled
    lattice are redrawn.
    """
    sub = hermite_canonical(sub if sub is not None else SublatticeBasis.identity())
    w1, w2 = lat.generators(sub)
    checks = [(lat, None)] + list(avoid or [])
    guard = settings.pole_guard * _shortest(*lat.generators())
    out = []
    while len(out) < count:
        s, t = rng.random(2)
        u = s * w1 + t * w2
        near_half = min(abs(u - (i * w1 + j * w2) / 2)
                        for i in range(3) for j in range(3))
        if near_half < guard:
            continue
        if any(lattice_points_near(u, L, S) < guard for L, S in checks):
            continue
        out.append(u)
    return np.array(out)


def _rng(settings: EvalSettings, *salt) -> np.random.Generator:
    return np.random.default_rng([settings.seed, *[abs(int(s)) for s in salt]])


def _sub_salt(sub: SublatticeBasis) -> list[int]:
    return [x for row in sub.m for x in row]


@dataclass(frozen=True)
class Recovery:
    """A recovered map with its fitting diagnostics."""

    function: RationalFunction
    residual: float
    kernel_gap: float
    attempts: int
    samples: int
    validation_samples: int
    tolerance: float

    @property
    def ok(self) -> bool:
        return self.residual <= self.tolerance and self.kernel_gap >= KERNEL_GAP

    def to_json_obj(self) -> dict:
        return {
            "function": self.function.to_json_obj(),
            "degree": self.function.degree,
            "residual": self.residual,
            "kernel_gap": self.kernel_gap,
            "attempts": self.attempts,
            "samples": self.samples,
            "validation_samples": self.validation_samples,
            "tolerance": self.tolerance,
        }


def _half_period_values(lat: AmbientLattice, sub, settings: EvalSettings) -> np.ndarray:
    w1, w2 = lat.generators(sub)
    return np.array([weierstrass_p(z, lat, sub, settings) for z in (w1 / 2, w2 / 2, (w1 + w2) / 2)])


def _slope(X, Y, e_sub, e_amb) -> np.ndarray:
    """``|dY/dX|`` from ``p'^2 = 4 prod (p - e_i)`` on both lattices."""
    top = np.abs(np.prod(Y[:, None] - e_amb[None, :], axis=1))
    bot = np.abs(np.prod(X[:, None] - e_sub[None, :], axis=1))
    return np.sqrt(top / bot)


def _fit(X: np.ndarray, Y: np.ndarray, n: int, slope=None) -> tuple[RationalFunction, float]:
    """Kernel of ``P(X) - Y Q(X) = 0`` with ``deg P, deg Q <= n``.

    Rows are weighted down where rounding in ``X`` is amplified by a steep
    ``dY/dX``; returns the function and the ratio of the two smallest
    singular values.
    """
    V = np.vander(X, n + 1, increasing=True)
    A = np.hstack([V, -Y[:, None] * V])
    A /= np.linalg.norm(A, axis=1, keepdims=True)
    if slope is not None:
        w = 1.0 / (1.0 + np.abs(Y) + np.abs(X) * slope)
        A *= (w / w.max())[:, None]
    cs = np.linalg.norm(A, axis=0)
    _, s, vh = np.linalg.svd(A / cs, full_matrices=False)
    gap = float(s[-2] / s[-1]) if s[-1] > 0 else math.inf
    c = vh[-1].conj() / cs
    return RationalFunction(c[: n + 1], c[n + 1:]).normalized().trimmed(), gap


def recover_map_report(lat: AmbientLattice, sub,
                       settings: EvalSettings = MAP_SETTINGS) -> Recovery:
    """Fit ``R`` with ``R(p(u | L_sub)) = p(u | L)``; never raises on a failed fit.

    Fits ``4n + 8`` samples of the sublattice's fundamental domain and keeps
    the best of up to ``MAX_ATTEMPTS`` draws.  Validation uses fresh points
    of the ambient fundamental domain, where ``p(u | L_sub)`` is a
    well-conditioned coordinate.
    """
    sub = hermite_canonical(sub)
    n = abs(sub.det)
    if n == 1:
        return Recovery(RationalFunction.identity(), 0.0, math.inf, 1, 0, 0,
                        settings.identity_tolerance)
    e_sub = _half_period_values(lat, sub, settings)
    e_amb = _half_period_values(lat, None, settings)
    best = None
    for attempt in range(MAX_ATTEMPTS):
        rng = _rng(settings, 1, attempt, *_sub_salt(sub))
        u = sample_points(lat, sub, 4 * n + 8, rng, settings)
        X = weierstrass_p(u, lat, sub, settings)
        Y = weierstrass_p(u, lat, None, settings)
        rf, gap = _fit(X, Y, n, _slope(X, Y, e_sub, e_amb))
        uv = sample_points(lat, None, 2 * n + 20, rng, settings, avoid=[(lat, sub)])
        Xv = weierstrass_p(uv, lat, sub, settings)
        Yv = weierstrass_p(uv, lat, None, settings)
        try:
            resid = float(np.max(_relative_residual(rf(Xv), Yv)))
        except PoleProximity:
            resid = math.inf
        rec = Recovery(rf, resid, gap, attempt + 1, len(u), len(uv),
                       settings.identity_tolerance)
        if rf.degree == n and (best is None or (rec.kernel_gap >= KERNEL_GAP, -rec.residual)
                               > (best.kernel_gap >= KERNEL_GAP, -best.residual)):
            best = rec
        if rec.ok and rf.degree == n:
            return rec
    if best is None:
        raise DegenerateSampling(f"no draw produced a degree-{n} map")
    return best


def recover_map(lat: AmbientLattice, sub, settings: EvalSettings = MAP_SETTINGS) -> RationalFunction:
    """The degree-``|L : L_sub|`` map ``R`` with ``R(p(u | L_sub)) = p(u | L)``."""
    rec = recover_map_report(lat, sub, settings)
    if rec.kernel_gap < KERNEL_GAP:
        raise DegenerateSampling(
            f"kernel gap {rec.kernel_gap:.3g} below {KERNEL_GAP:g} after {rec.attempts} draws"
        )
    if rec.residual > settings.identity_tolerance:
        raise NonConvergent(
            f"held-out residual {rec.residual:.3e} exceeds {settings.identity_tolerance:g}"
        )
    return rec.function


def validation_residual(rf: RationalFunction, lat: AmbientLattice, sub, count: int = 30,
                        settings: EvalSettings = MAP_SETTINGS, salt: int = 7) -> float:
    """Max relative mismatch of ``rf(p(u | L_sub))`` against ``p(u | L)``."""
    sub = hermite_canonical(sub)
    u = sample_points(lat, None, count, _rng(settings, salt, *_sub_salt(sub)), settings,
                      avoid=[(lat, sub)])
    got = rf(weierstrass_p(u, lat, sub, settings))
    return float(np.max(_relative_residual(got, weierstrass_p(u, lat, None, settings))))


@dataclass(frozen=True)
class DoubleDecomposition:
    """The two factorisations ``R_b o S_b = R_c o S_c`` of ``R_{L : L_b & L_c}``."""

    outer_bullet: RationalFunction
    inner_bullet: RationalFunction
    outer_circ: RationalFunction
    inner_circ: RationalFunction
    full: Recovery
    intersection: SublatticeBasis
    residual: float
    samples: int
    tolerance: float

    @property
    def ok(self) -> bool:
        return self.residual <= self.tolerance

    def to_json_obj(self) -> dict:
        return {
            "outer_bullet": self.outer_bullet.to_json_obj(),
            "inner_bullet": self.inner_bullet.to_json_obj(),
            "outer_circ": self.outer_circ.to_json_obj(),
            "inner_circ": self.inner_circ.to_json_obj(),
            "full": self.full.function.to_json_obj(),
            "full_residual": self.full.residual,
            "intersection": self.intersection.to_json_obj(),
            "degrees": {
                "outer_bullet": self.outer_bullet.degree,
                "inner_bullet": self.inner_bullet.degree,
                "outer_circ": self.outer_circ.degree,
                "inner_circ": self.inner_circ.degree,
                "full": self.full.function.degree,
            },
            "residual": self.residual,
            "samples": self.samples,
            "tolerance": self.tolerance,
        }


def factor_map(lat: AmbientLattice, outer, inner, settings: EvalSettings = MAP_SETTINGS) -> RationalFunction:
    """``R_{outer : inner}`` with the ambient lattice re-based to ``outer``."""
    outer = hermite_canonical(outer)
    return recover_map(lat.rebased(outer), relative_basis(outer, inner), settings)


def double_decomposition(lat: AmbientLattice, sub_b, sub_c,
                         settings: EvalSettings = MAP_SETTINGS, samples: int = 30) -> DoubleDecomposition:
    """Both factorisations of ``R_{L : L_b & L_c}`` and their pointwise mismatch.

    Each branch ``R_b(S_b(x))`` is evaluated pointwise and compared with
    ``p(u | L)`` itself, which is what ``R_{L : L_b & L_c}`` reproduces; the
    directly fitted composite is reported alongside with its own residual.
    """
    b, c = hermite_canonical(sub_b), hermite_canonical(sub_c)
    if b == c:
        raise EqualSublattices(f"{b!r} and {c!r} span the same sublattice")
    bc = intersect(b, c)
    outer_b = recover_map(lat, b, settings)
    inner_b = factor_map(lat, b, bc, settings)
    outer_c = recover_map(lat, c, settings)
    inner_c = factor_map(lat, c, bc, settings)
    full = recover_map_report(lat, bc, settings)

    u = sample_points(lat, None, samples, _rng(settings, 3, *_sub_salt(bc)), settings,
                      avoid=[(lat, bc)])
    X = weierstrass_p(u, lat, bc, settings)
    want = weierstrass_p(u, lat, None, settings)
    got_b = outer_b(inner_b(X))
    got_c = outer_c(inner_c(X))
    resid = max(
        float(np.max(_relative_residual(got_b, want))),
        float(np.max(_relative_residual(got_c, want))),
        float(np.max(_relative_residual(got_b, got_c))),
    )
    return DoubleDecomposition(outer_b, inner_b, outer_c, inner_c, full, bc, resid,
                               samples, settings.identity_tolerance)


def zolotarev_eval(x, n: int, m: Modulus, settings: EvalSettings = DEFAULT_SETTINGS):
    """``Z_n(x | tau) = x_tau(x_{n tau}^{-1}(x))`` on the closed upper half-plane."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    u = rectangle_map_inverse(x, m.scaled(n), settings)
    out = rectangle_map(u, m, settings)
    if np.ndim(x) == 0:
        return complex(np.ravel(out)[0])
    return np.asarray(out)


def zolotarev_lattice(n: int, m: Modulus) -> tuple[AmbientLattice, SublatticeBasis]:
    """``L = Span{4, 2 tau}`` and ``L_n = Span{4, 2 n tau}`` as a sublattice."""
    return AmbientLattice(4.0, 2 * m.tau), SublatticeBasis(((1, 0), (0, n)))


def _rectangle_chart(lat: AmbientLattice, settings: EvalSettings) -> MobiusMap:
    """Mobius ``M`` with ``x_tau(1 + w) = M(p(w | L))``: sends ``p(2), p(1), inf`` to ``-1, 0, 1``."""
    e2 = weierstrass_p(2.0, lat, None, settings)
    e1 = weierstrass_p(1.0, lat, None, settings)
    return MobiusMap.from_points((e2, e1, math.inf), (-1, 0, 1))


@dataclass(frozen=True)
class ZolotarevRealization:
    """``Z_n = outer o core o inner`` with ``core = R_{L : L_n}``."""

    n: int
    tau: complex
    core: RationalFunction
    outer: MobiusMap
    inner: MobiusMap
    residual: float
    samples: int
    tolerance: float

    def as_rational(self) -> RationalFunction:
        return compose(self.outer.as_rational(), compose(self.core, self.inner.as_rational()))

    def __call__(self, x):
        return self.outer(self.core(self.inner(x)))

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "tau": [self.tau.real, self.tau.imag],
            "core": self.core.to_json_obj(),
            "outer": self.outer.to_json_obj(),
            "inner": self.inner.to_json_obj(),
            "zolotarev": self.as_rational().to_json_obj(),
            "residual": self.residual,
            "samples": self.samples,
            "tolerance": self.tolerance,
        }


def zolotarev_as_rational(n: int, m: Modulus, settings: EvalSettings = MAP_SETTINGS,
                          samples: int = 30) -> ZolotarevRealization:
    """Realize ``Z_n(. | tau)`` through the lattice pair ``Span{4, 2tau} > Span{4, 2n tau}``.

    The charts ``x_tau(1 + w) = M_tau(p(w | L))`` fix both Mobius factors
    through the three boundary points ``-1, 0, 1``.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    lat, sub = zolotarev_lattice(n, m)
    core = recover_map(lat, sub, settings)
    outer = _rectangle_chart(lat, settings)
    inner = _rectangle_chart(lat.rebased(sub), settings).inverse()
    rng = _rng(settings, 5, n)
    xs = np.concatenate([
        np.linspace(-0.95, 0.95, samples - samples // 2),
        rng.uniform(-1.5, 1.5, samples // 2) + 1j * rng.uniform(0.05, 1.5, samples // 2),
    ])
    direct = zolotarev_eval(xs, n, m, settings)
    got = outer(core(inner(xs)))
    resid = float(np.max(_relative_residual(got, direct)))
    return ZolotarevRealization(n, m.tau, core, outer, inner, resid, len(xs),
                                settings.identity_tolerance)


def nesting_check(mm: int, nn: int, m: Modulus, settings: EvalSettings = DEFAULT_SETTINGS,
                  samples: int = 30) -> float:
    """Max over ``x in [-1, 1]`` of ``|Z_{mn}(x | tau) - Z_m(Z_n(x | m tau) | tau)|``."""
    if mm < 1 or nn < 1:
        raise ValueError("orders must be positive integers")
    xs = np.linspace(-1.0, 1.0, samples)
    lhs = zolotarev_eval(xs, mm * nn, m, settings)
    inner = zolotarev_eval(xs, nn, m.scaled(mm), settings)
    # real-axis inputs only accumulate rounding noise in the imaginary part
    inner = np.where(np.abs(inner.imag) < 1e-12, inner.real + 0j, inner)
    rhs = zolotarev_eval(inner, mm, m, settings)
    return float(np.max(np.abs(lhs - rhs)))


def path_factors(table: DecompositionTable, path: LatticePath, lat: AmbientLattice,
                 settings: EvalSettings = MAP_SETTINGS) -> list[RationalFunction]:
    """Prime factor maps along ``path``, outermost (next to ``L``) first.

    Index-one edges join equal lattices and contribute nothing.
    """
    if not path.fits(table):
        raise InvalidPath("path does not start at the table corner")
    factors = []
    for (k0, j0), (k1, j1) in zip(path.cells, path.cells[1:]):
        inner, outer = table.cell(k0, j0), table.cell(k1, j1)
        if inner == outer:
            continue
        factors.append(factor_map(lat, outer, inner, settings))
    factors.reverse()
    return factors


def verify_path_decomposition(table: DecompositionTable, path: LatticePath, lat: AmbientLattice,
                              settings: EvalSettings = MAP_SETTINGS, samples: int = 30) -> float:
    """Residual of the composed path factors against ``R_{L : corner}``."""
    factors = path_factors(table, path, lat, settings)
    composite = RationalFunction.identity()
    for f in factors:
        composite = f if composite.degree == 1 and composite == RationalFunction.identity() \
            else compose(composite, f)
    corner = table.corner
    full = recover_map(lat, corner, settings)
    u = sample_points(lat, None, samples, _rng(settings, 4, *_sub_salt(corner)), settings,
                      avoid=[(lat, corner)])
    X = weierstrass_p(u, lat, corner, settings)
    return float(np.max(_relative_residual(composite(X), full(X))))


__all__ = [
    "DoubleDecomposition",
    "MobiusMap",
    "RationalFunction",
    "Recovery",
    "ZolotarevRealization",
    "compose",
    "double_decomposition",
    "factor_map",
    "nesting_check",
    "path_factors",
    "recover_map",
    "recover_map_report",
    "validation_residual",
    "verify_path_decomposition",
    "zolotarev_as_rational",
    "zolotarev_eval",
    "zolotarev_lattice",
]
