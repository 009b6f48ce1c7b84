"""Riemann-sphere arithmetic helpers.

The point at infinity is represented by the sentinel ``INFINITY``
(``complex(inf, inf)``).  Any complex value with a non-finite real or
imaginary part is treated as infinite; NaN payloads are *not* conflated
with infinity and are handled by the vectorized mask helpers instead.
"""

from __future__ import annotations

import numpy as np

INFINITY = complex(float("inf"), float("inf"))


def is_infinite(w) -> bool:
    """True when ``w`` represents the point at infinity.

    Works on scalars and ndarrays (returns a bool array for the latter).
    """
    w = np.asarray(w, dtype=complex)
    out = np.isinf(w.real) | np.isinf(w.imag)
    if out.ndim == 0:
        return bool(out)
    return out


def is_nan(w):
    """True where ``w`` has a NaN component (and is not infinite)."""
    w = np.asarray(w, dtype=complex)
    out = (np.isnan(w.real) | np.isnan(w.imag)) & ~is_infinite(w)
    if out.ndim == 0:
        return bool(out)
    return out


def chordal(u, v):
    """Chordal distance on the Riemann sphere.

    d(u, v) = 2|u - v| / sqrt((1+|u|^2)(1+|v|^2)), with the usual
    limits when either argument is infinite.  Vectorized; broadcasting
    follows numpy rules.  NaN inputs propagate as NaN.
    """
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    u_inf = is_infinite(u)
    v_inf = is_infinite(v)
    u_fin = np.where(u_inf, 0.0, u)
    v_fin = np.where(v_inf, 0.0, v)
    su = np.sqrt(1.0 + np.abs(u_fin) ** 2)
    sv = np.sqrt(1.0 + np.abs(v_fin) ** 2)
    both = u_inf & v_inf
    out = np.where(
        both,
        0.0,
        np.where(
            u_inf,
            2.0 / sv,
            np.where(v_inf, 2.0 / su, 2.0 * np.abs(u_fin - v_fin) / (su * sv)),
        ),
    )
    # NaN payloads survive the masking above only on the finite branch;
    # reinstate them explicitly so callers can filter.
    nan_mask = is_nan(u) | is_nan(v)
    out = np.where(nan_mask, np.nan, out)
    if out.ndim == 0:
        return float(out)
    return out.astype(float)
