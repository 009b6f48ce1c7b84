"""Third-order jets of holomorphic maps.

A ``Jet3`` bundles the value and first three derivatives of a map at a
base point.  Fields may be complex scalars or complex ndarrays (all of
one shape); arithmetic is numpy-vectorized either way.

Scalar jets raise on division by a vanishing value; array jets mask the
offending entries with NaN so grid scans can skip them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BasePointMismatch, PoleAtPoint

BASE_TOL = 1e-12


def _is_array(x) -> bool:
    return isinstance(x, np.ndarray) and x.ndim > 0


@dataclass(frozen=True)
class Jet3:
    """Value and derivatives (f, f', f'', f''') at the base point ``at``."""

    f0: complex
    f1: complex
    f2: complex
    f3: complex
    at: complex

    @staticmethod
    def identity(at) -> "Jet3":
        at = np.asarray(at, dtype=complex) if _is_array(at) else complex(at)
        one = np.ones_like(at) if _is_array(at) else 1.0 + 0.0j
        zero = np.zeros_like(at) if _is_array(at) else 0.0 + 0.0j
        return Jet3(at, one, zero, zero, at)

    @staticmethod
    def constant(c, at) -> "Jet3":
        if _is_array(at):
            at = np.asarray(at, dtype=complex)
            c = np.broadcast_to(np.asarray(c, dtype=complex), at.shape).copy()
            zero = np.zeros_like(at)
            return Jet3(c, zero, zero.copy(), zero.copy(), at)
        return Jet3(complex(c), 0.0 + 0.0j, 0.0 + 0.0j, 0.0 + 0.0j, complex(at))

    def _check_same_base(self, other: "Jet3") -> None:
        d = np.max(np.abs(np.asarray(self.at) - np.asarray(other.at)))
        if not (d <= BASE_TOL):
            raise BasePointMismatch(
                f"jet base points differ by {float(d):.3e} (> {BASE_TOL:.0e})"
            )

    def __add__(self, other):
        if isinstance(other, Jet3):
            self._check_same_base(other)
            return Jet3(
                self.f0 + other.f0,
                self.f1 + other.f1,
                self.f2 + other.f2,
                self.f3 + other.f3,
                self.at,
            )
        return Jet3(self.f0 + other, self.f1, self.f2, self.f3, self.at)

    __radd__ = __add__

    def __neg__(self):
        return Jet3(-self.f0, -self.f1, -self.f2, -self.f3, self.at)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Jet3) else -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Jet3):
            self._check_same_base(other)
            a, b = self, other
            return Jet3(
                a.f0 * b.f0,
                a.f1 * b.f0 + a.f0 * b.f1,
                a.f2 * b.f0 + 2.0 * a.f1 * b.f1 + a.f0 * b.f2,
                a.f3 * b.f0 + 3.0 * a.f2 * b.f1 + 3.0 * a.f1 * b.f2 + a.f0 * b.f3,
                a.at,
            )
        return Jet3(
            self.f0 * other, self.f1 * other, self.f2 * other, self.f3 * other, self.at
        )

    __rmul__ = __mul__

    def invert(self) -> "Jet3":
        """Jet of 1/f at the same base point."""
        w = self.f0
        if _is_array(w) or _is_array(self.at):
            w = np.asarray(w, dtype=complex)
            bad = np.abs(w) == 0.0
            if np.any(bad):
                w = np.where(bad, np.nan, w)
            with np.errstate(divide="ignore", invalid="ignore"):
                u = 1.0 / w
                u2 = u * u
                g1 = -self.f1 * u2
                g2 = (2.0 * self.f1 * self.f1 * u - self.f2) * u2
                g3 = (
                    -self.f3 * u2
                    + 6.0 * self.f1 * self.f2 * u * u2
                    - 6.0 * self.f1**3 * u2 * u2
                )
            return Jet3(u, g1, g2, g3, self.at)
        if abs(w) == 0.0:
            raise PoleAtPoint(f"division by zero value at base point {self.at}")
        u = 1.0 / w
        u2 = u * u
        return Jet3(
            u,
            -self.f1 * u2,
            (2.0 * self.f1 * self.f1 * u - self.f2) * u2,
            -self.f3 * u2 + 6.0 * self.f1 * self.f2 * u * u2 - 6.0 * self.f1**3 * u2 * u2,
            self.at,
        )

    def __truediv__(self, other):
        if isinstance(other, Jet3):
            return self * other.invert()
        return self * (1.0 / other)

    def __rtruediv__(self, other):
        return self.invert() * other

    def compose(self, inner: "Jet3") -> "Jet3":
        """Jet of self o inner.  ``self`` must be based at ``inner.f0``."""
        mism = np.asarray(np.abs(np.asarray(self.at) - np.asarray(inner.f0)))
        finite = np.isfinite(mism)
        if np.any(finite) and np.max(np.where(finite, mism, 0.0)) > BASE_TOL:
            worst = float(np.max(np.where(finite, mism, 0.0)))
            raise BasePointMismatch(
                f"outer jet based {worst:.3e} away from inner value (> {BASE_TOL:.0e})"
            )
        g1, g2, g3 = self.f1, self.f2, self.f3
        h1 = inner.f1
        h2 = inner.f2
        h3 = inner.f3
        return Jet3(
            self.f0,
            g1 * h1,
            g2 * h1 * h1 + g1 * h2,
            g3 * h1**3 + 3.0 * g2 * h1 * h2 + g1 * h3,
            inner.at,
        )
