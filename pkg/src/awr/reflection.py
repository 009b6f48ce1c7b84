"""Reflection across the image boundary, driven by disk data only.

For a locally univalent f on the disk the reflection of w = f(z) is

    R_w = f(z) + (1 - |z|^2) f'(z) / (conj(z) - (1 - |z|^2) f''(z) / (2 f'(z)))

which extends f to |z| > 1 through z -> 1/conj(z).  The denominator is
minus the local second coefficient

    b2(z) = (1 - |z|^2) f''(z) / (2 f'(z)) - conj(z),

so R_w = f(z) - (1 - |z|^2) f'(z) / b2(z), and at z = 0 the reflection
of the origin is -1/a2.  Vanishing b2 sends the reflection to infinity
(for the strip map this happens along the whole real diameter).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CoincidentPoints, CriticalPoint, DomainViolation
from .evaluate import jet_eval
from .extended import INFINITY, chordal, is_infinite
from .grids import GridMeta, grid_points
from .jets import Jet3

B2_TOL = 1e-14
DERIV_TOL = 1e-14


@dataclass(frozen=True)
class ReflectionSample:
    """One reflected point: z in the disk, w = f(z), r = R_w, local b2."""

    z: complex
    w: complex
    r: complex
    b2: complex

    @property
    def r_is_inf(self) -> bool:
        return bool(is_infinite(self.r))


@dataclass(frozen=True)
class Mobius:
    """w -> (a w + b) / (c w + d) on the extended plane."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        det = self.a * self.d - self.b * self.c
        if abs(det) < 1e-14:
            raise CoincidentPoints(f"mobius coefficients are singular, det = {det}")

    def __call__(self, w):
        if np.isscalar(w) or isinstance(w, complex):
            if is_infinite(w):
                if abs(self.c) < 1e-300:
                    return INFINITY
                return self.a / self.c
            den = self.c * w + self.d
            if den == 0:
                return INFINITY
            return (self.a * w + self.b) / den
        w = np.asarray(w, dtype=complex)
        out = np.empty_like(w)
        inf_mask = is_infinite(w)
        with np.errstate(divide="ignore", invalid="ignore"):
            den = self.c * w + self.d
            vals = (self.a * w + self.b) / den
        vals = np.where(den == 0, INFINITY, vals)
        if abs(self.c) < 1e-300:
            vals = np.where(inf_mask, INFINITY, vals)
        else:
            vals = np.where(inf_mask, self.a / self.c, vals)
        out[...] = vals
        return out

    def compose(self, other: "Mobius") -> "Mobius":
        """self after other: (self.compose(other))(w) = self(other(w))."""
        return Mobius(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "Mobius":
        return Mobius(self.d, -self.b, -self.c, self.a)

    @property
    def is_affine(self) -> bool:
        scale = max(abs(self.a), abs(self.b), abs(self.c), abs(self.d))
        return abs(self.c) <= 1e-13 * scale

    def pole(self):
        """Preimage of infinity."""
        if self.is_affine:
            return INFINITY
        return -self.d / self.c

    def at_infinity(self):
        """Image of infinity."""
        if self.is_affine:
            return INFINITY
        return self.a / self.c

    @staticmethod
    def identity() -> "Mobius":
        return Mobius(1.0, 0.0, 0.0, 1.0)

    @staticmethod
    def random(rng: np.random.Generator) -> "Mobius":
        while True:
            a, b, c, d = (complex(*rng.standard_normal(2)) for _ in range(4))
            det = a * d - b * c
            if abs(det) > 0.1:
                s = 1.0 / np.sqrt(complex(det))
                return Mobius(a * s, b * s, c * s, d * s)

    def apply_jet(self, j: Jet3) -> Jet3:
        num = j * self.a + Jet3.constant(self.b, j.at)
        den = j * self.c + Jet3.constant(self.d, j.at)
        return num / den


def local_b2(j: Jet3, z) -> complex:
    """(1 - |z|^2) f''/(2 f') - conj(z) from a jet of f at z."""
    z = np.asarray(z) if not np.isscalar(z) else z
    return (1.0 - np.abs(z) ** 2) * j.f2 / (2.0 * j.f1) - np.conjugate(z)


def reflect_jet(j: Jet3, z):
    """Reflection value from a scalar jet at z; returns (w, r, b2)."""
    if abs(j.f1) < DERIV_TOL:
        raise CriticalPoint(f"derivative vanishes at z = {z}")
    b2 = local_b2(j, z)
    if abs(b2) < B2_TOL:
        return j.f0, INFINITY, b2
    r = j.f0 - (1.0 - abs(z) ** 2) * j.f1 / b2
    return j.f0, r, b2


def reflect(expr, z) -> ReflectionSample:
    """Ahlfors-Weill reflection of w = f(z) for a point z in the disk."""
    z = complex(z)
    j = jet_eval(expr, z)
    w, r, b2 = reflect_jet(j, z)
    return ReflectionSample(z=z, w=complex(w), r=r, b2=complex(b2))


def reflect_grid(expr, meta: GridMeta, jitter: bool = False):
    """Vectorized reflection over a ring grid.

    Returns (z, w, r, b2) flat complex arrays; entries of r where the
    local coefficient vanishes hold INFINITY.
    """
    zs = grid_points(meta, jitter=jitter).ravel()
    j = jet_eval(expr, zs)
    b2 = local_b2(j, zs)
    with np.errstate(divide="ignore", invalid="ignore"):
        r = j.f0 - (1.0 - np.abs(zs) ** 2) * j.f1 / b2
    r = np.where(np.abs(b2) < B2_TOL, INFINITY, r)
    return zs, j.f0.copy() if isinstance(j.f0, np.ndarray) else np.full_like(zs, j.f0), r, b2


def extend(expr, z):
    """Value of the reflected extension at a point outside the closed disk."""
    z = complex(z)
    if abs(z) <= 1.0:
        raise DomainViolation(f"extension is defined for |z| > 1, got |z| = {abs(z)}")
    return reflect(expr, 1.0 / np.conjugate(z)).r


def mobius_equivariance_check(expr, mob: Mobius, meta: GridMeta):
    """Chordal residual between R(M o f) and M(R(f)) over a grid.

    The reflection construction commutes with Mobius post-composition;
    the residual should sit at rounding level.  Grid points where M o f
    has a pole (so the jet arithmetic degenerates) are excluded and
    counted.  Returns (max_residual, n_checked, n_excluded).
    """
    zs = grid_points(meta).ravel()
    j = jet_eval(expr, zs)
    b2 = local_b2(j, zs)
    with np.errstate(divide="ignore", invalid="ignore"):
        r_f = j.f0 - (1.0 - np.abs(zs) ** 2) * j.f1 / b2
    r_f = np.where(np.abs(b2) < B2_TOL, INFINITY, r_f)
    lhs = mob(r_f)

    with np.errstate(divide="ignore", invalid="ignore"):
        jm = mob.apply_jet(j)
        b2m = local_b2(jm, zs)
        r_m = jm.f0 - (1.0 - np.abs(zs) ** 2) * jm.f1 / b2m
    r_m = np.where(np.abs(b2m) < B2_TOL, INFINITY, r_m)

    res = chordal(lhs, r_m)
    ok = ~np.isnan(res)
    n_excluded = int(np.size(res) - np.count_nonzero(ok))
    max_residual = float(np.max(res[ok])) if np.any(ok) else float("nan")
    return max_residual, int(np.count_nonzero(ok)), n_excluded
