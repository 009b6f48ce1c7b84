"""Jet evaluation of map expressions on the open unit disk.

`jet_eval` returns the third-order jet of an expression at ``z``.  Two
calling conventions share one recursion:

* scalar ``z``: singular evaluations raise (DomainViolation outside the
  open disk, PoleAtPoint on a vanishing denominator, CriticalPoint on a
  vanishing renormalization derivative);
* ndarray ``z``: singular entries are masked with NaN so grid scans can
  reduce with nan-aware aggregates.

Per-expression scalars (renormalization data at a base point, the
second Taylor coefficient used by the Mobius shift) are cached on the
hashable expression nodes.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import CriticalPoint, DomainViolation, PoleAtPoint
from .expr import (
    Affine,
    Disk,
    Halfplane,
    Identity,
    Koebe,
    MapExpr,
    MobiusOfStrip,
    MobiusShift,
    SectorAuto,
    SectorReal,
    Strip,
    StripShift,
)
from .jets import Jet3


def sector_auto_params(a: complex) -> tuple[complex, float, complex]:
    """Derived constants (c, beta, b) for the automorphism-based sector map.

    c is unimodular because 1 - conj(a) = conj(1 - a).
    """
    a = complex(a)
    c = -(1.0 - np.conj(a)) / (1.0 - a)
    beta = (1.0 - abs(a) ** 2) / (2.0 * (1.0 - a.real))
    b = 1.0 / (a * c - 1.0)
    return complex(c), float(beta.real if isinstance(beta, complex) else beta), complex(b)


def _pow_jet(w: Jet3, p: float) -> Jet3:
    """Jet of w(z)**p (principal branch) given the jet of w."""
    u = w.f0
    with np.errstate(divide="ignore", invalid="ignore"):
        g0 = u**p
        g1 = p * g0 / u
        g2 = (p - 1.0) * g1 / u
        g3 = (p - 2.0) * g2 / u
    outer = Jet3(g0, g1, g2, g3, u)
    return outer.compose(w)


def _guard(den, z, strict: bool, what: str):
    """Replace vanishing denominators: raise when strict, NaN otherwise."""
    if strict:
        if den == 0:
            raise PoleAtPoint(f"{what} vanishes at z = {z}")
        return den
    return np.where(den == 0, np.nan, den)


@lru_cache(maxsize=None)
def _koebe_scalars(inner: MapExpr, z0: complex) -> tuple[complex, complex]:
    """(f(z0), f'(z0)) for the renormalized precomposition."""
    j = _jet(inner, complex(z0), True)
    if j.f1 == 0:
        raise CriticalPoint(f"derivative vanishes at renormalization point {z0}")
    return complex(j.f0), complex(j.f1)


@lru_cache(maxsize=None)
def shift_a2(inner: MapExpr) -> complex:
    """Second Taylor coefficient f''(0)/2 used by the Mobius shift."""
    return complex(_jet(inner, 0.0 + 0.0j, True).f2) / 2.0


def _jet(expr: MapExpr, z, strict: bool) -> Jet3:
    if isinstance(expr, Identity):
        return Jet3.identity(z)

    if isinstance(expr, (Disk, Halfplane)):
        x = expr.x if isinstance(expr, Disk) else expr.c
        den = _guard(1.0 + x * z, z, strict, "mobius denominator")
        d2 = den * den
        return Jet3(z / den, 1.0 / d2, -2.0 * x / (d2 * den), 6.0 * x * x / (d2 * d2), z)

    if isinstance(expr, SectorReal):
        a = expr.a
        om = _guard(1.0 - z, z, strict, "sector denominator")
        om2 = om * om
        wj = Jet3((1.0 + z) / om, 2.0 / om2, 4.0 / (om2 * om), 12.0 / (om2 * om2), z)
        return (_pow_jet(wj, a) - 1.0) * (0.5 / a)

    if isinstance(expr, Strip):
        d = _guard(1.0 - z * z, z, strict, "strip denominator")
        d2 = d * d
        return Jet3(np.arctanh(z), 1.0 / d, 2.0 * z / d2, (2.0 + 6.0 * z * z) / (d2 * d), z)

    if isinstance(expr, StripShift):
        return _jet(expr.lower(), z, strict)

    if isinstance(expr, MobiusOfStrip):
        lj = _jet(Strip(), z, strict)
        return lj / (lj * expr.a + 1.0)

    if isinstance(expr, SectorAuto):
        c, beta, b = sector_auto_params(expr.a)
        den = _guard(1.0 + c * z, z, strict, "sector denominator")
        d2 = den * den
        wj = Jet3(
            (1.0 + z) / den,
            (1.0 - c) / d2,
            -2.0 * c * (1.0 - c) / (d2 * den),
            6.0 * c * c * (1.0 - c) / (d2 * d2),
            z,
        )
        return (_pow_jet(wj, beta) - 1.0) * (-b)

    if isinstance(expr, Koebe):
        z0 = expr.z0
        fz0, fpz0 = _koebe_scalars(expr.inner, z0)
        zb = np.conj(z0)
        r2 = 1.0 - abs(z0) ** 2
        den = 1.0 + zb * z
        d2 = den * den
        sj = Jet3(
            (z + z0) / den,
            r2 / d2,
            -2.0 * zb * r2 / (d2 * den),
            6.0 * zb * zb * r2 / (d2 * d2),
            z,
        )
        fj = _jet(expr.inner, sj.f0, strict)
        return (fj.compose(sj) - fz0) * (1.0 / (r2 * fpz0))

    if isinstance(expr, MobiusShift):
        a2 = shift_a2(expr.inner)
        fj = _jet(expr.inner, z, strict)
        if a2 == 0:
            return fj
        return fj / (fj * a2 + 1.0)

    if isinstance(expr, Affine):
        return _jet(expr.inner, z, strict) * expr.A + expr.B

    raise TypeError(f"unknown expression node {type(expr).__name__}")


def jet_eval(expr: MapExpr, z) -> Jet3:
    """Third-order jet of ``expr`` at ``z`` (scalar or ndarray)."""
    if isinstance(z, np.ndarray) and z.ndim > 0:
        z = np.asarray(z, dtype=complex)
        z = np.where(np.abs(z) < 1.0, z, np.nan)
        with np.errstate(divide="ignore", invalid="ignore"):
            return _jet(expr, z, False)
    z = complex(z)
    if not abs(z) < 1.0:
        raise DomainViolation(f"|z| = {abs(z)} is not inside the open unit disk")
    return _jet(expr, z, True)


def value(expr: MapExpr, z):
    """Map value alone (same conventions as jet_eval)."""
    return jet_eval(expr, z).f0


@lru_cache(maxsize=None)
def taylor(expr: MapExpr) -> tuple[complex, complex, complex]:
    """First three Taylor coefficients (a1, a2, a3) at the origin."""
    j = _jet(expr, 0.0 + 0.0j, True)
    return complex(j.f1), complex(j.f2) / 2.0, complex(j.f3) / 6.0
