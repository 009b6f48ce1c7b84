"""Catalog of closed-form disk maps with certification metadata.

Every entry keeps the normalized expression together with its second
Taylor coefficient, the outcome of a numerical convexity check, a
boundedness hint, and whether the omitted point -1/a2 sits on the image
boundary.  The last flag is what the Mobius shift cares about: shifting
a map whose omitted point touches the boundary produces the strip map
up to rotation (unbounded), while every other shift is bounded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .deepscan import strip_structure
from .errors import ConsistencyError, PoleInDomain
from .evaluate import jet_eval, taylor
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
from .extended import is_infinite

CONVEXITY_RINGS = (0.9, 0.99, 0.999)
CONVEXITY_ANGLES = 4096
A2_ZERO_TOL = 1e-12

BOUNDED = "bounded"
UNBOUNDED = "unbounded"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class MappingSpec:
    """A catalog entry: expression plus certification metadata."""

    expr: MapExpr
    a2: complex
    convexity_certified: bool
    convexity_min: float
    bounded_hint: str
    omitted_on_boundary: object  # True / False / None when undecided
    notes: str = ""


@dataclass(frozen=True)
class SectorParams:
    """Derived sector quantities for the automorphism construction."""

    a: complex
    c: complex
    beta: float
    b: complex


def validate_convexity(expr: MapExpr, rings=CONVEXITY_RINGS, angles=CONVEXITY_ANGLES):
    """Min of Re(1 + z f''/f') over a ring grid; certified when > -1e-9.

    Convexity of the image is equivalent to that quantity staying
    positive on the disk; sampling rings close to the boundary catches
    every catalog non-convexity by a wide margin.
    """
    theta = 2.0 * np.pi * np.arange(angles) / angles
    best = math.inf
    arg = 0j
    for r in rings:
        z = r * np.exp(1j * theta)
        j = jet_eval(expr, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            vals = np.real(1.0 + z * j.f2 / j.f1)
        ok = np.isfinite(vals)
        if not np.any(ok):
            continue
        i = int(np.nanargmin(np.where(ok, vals, np.nan)))
        if vals[i] < best:
            best = float(vals[i])
            arg = complex(z[i])
    certified = best > -1e-9
    return certified, best, arg


def _branch_cut_check(expr: MapExpr) -> None:
    """Dense boundary sample: power-map arguments stay off (-inf, 0].

    The sector maps raise (1+z)/(1+cz) to a fractional power; the
    principal branch is safe iff that ratio never meets the cut.  A
    near-boundary ring sample is checked at construction time.
    """
    nodes = [expr]
    while nodes:
        node = nodes.pop()
        nodes.extend(node.children())
        if isinstance(node, SectorReal):
            c = -1.0 + 0j
        elif isinstance(node, SectorAuto):
            from .evaluate import sector_auto_params

            c, _, _ = sector_auto_params(node.a)
        else:
            continue
        z = 0.999999 * np.exp(2j * np.pi * np.arange(4096) / 4096)
        w = (1.0 + z) / (1.0 + c * z)
        on_cut = (w.real <= 0.0) & (np.abs(w.imag) < 1e-12)
        if np.any(on_cut):
            from .errors import BranchCutViolation

            raise BranchCutViolation(
                f"power-map argument crosses (-inf, 0] for {node!r}"
            )


def omitted_point_on_boundary(expr: MapExpr):
    """Whether -1/a2 lies on the image boundary (the delta_f = 0 family).

    Only strip-built maps can place the omitted point on their boundary:
    otherwise the shifted map would be an unbounded zero-a2 map, forcing
    it to be the strip map itself.  For a strip-built f = P(L(T(z))) the
    omitted point touches the boundary exactly when P is affine and
    a2 = 0 (f is a rotation conjugate of L), or P has a pole and -1/a2
    is the image of the strip ends.
    """
    struct = strip_structure(expr)
    if struct is None:
        return False
    a2 = taylor(expr)[1]
    post = struct.post
    if post.is_affine:
        return bool(abs(a2) < A2_ZERO_TOL)
    if abs(a2) < A2_ZERO_TOL:
        v = post.pole()
        if is_infinite(v):
            return False
        return bool(abs(abs(v.imag) - math.pi / 4.0) < 1e-12)
    t = post.at_infinity()
    return bool(abs(-1.0 / a2 - t) <= 1e-9 * (1.0 + abs(t)))


def boundedness_hint(expr: MapExpr) -> str:
    """Static boundedness classification of the image domain."""
    if isinstance(expr, (Identity, Disk)):
        return BOUNDED
    if isinstance(expr, (Halfplane, SectorReal, SectorAuto, Strip, StripShift)):
        return UNBOUNDED
    if isinstance(expr, MobiusOfStrip):
        # Image is bounded iff the pole -1/a of v -> v/(1+av) stays off
        # the closed strip |Im v| <= pi/4, i.e. |Im a| > (pi/4) |a|^2.
        return BOUNDED if abs(expr.a.imag) > 0.25 * math.pi * abs(expr.a) ** 2 else UNBOUNDED
    if isinstance(expr, (Koebe, Affine)):
        # Precomposition with an automorphism keeps the image set; the
        # affine renormalization keeps boundedness.
        return boundedness_hint(expr.inner)
    if isinstance(expr, MobiusShift):
        a2 = taylor(expr.inner)[1]
        if abs(a2) < A2_ZERO_TOL:
            return boundedness_hint(expr.inner)
        on_boundary = omitted_point_on_boundary(expr.inner)
        if on_boundary is True:
            return UNBOUNDED
        if on_boundary is False:
            return BOUNDED
        return UNKNOWN
    return UNKNOWN


def build_map(expr: MapExpr) -> MappingSpec:
    """Construct a catalog entry, running the construction-time checks."""
    _branch_cut_check(expr)
    a2 = taylor(expr)[1]
    certified, conv_min, _ = validate_convexity(expr)
    return MappingSpec(
        expr=expr,
        a2=complex(a2),
        convexity_certified=certified,
        convexity_min=conv_min,
        bounded_hint=boundedness_hint(expr),
        omitted_on_boundary=omitted_point_on_boundary(expr),
    )


def _as_expr(spec_or_expr) -> MapExpr:
    if isinstance(spec_or_expr, MappingSpec):
        return spec_or_expr.expr
    return spec_or_expr


def koebe_transform(spec_or_expr, z0) -> MappingSpec:
    """Renormalized recentering at z0, with the b2 formula cross-checked.

    The new second coefficient must match

        b2 = (1 - |z0|^2) f''(z0) / (2 f'(z0)) - conj(z0)

    within 1e-10 of the jet expansion of the transformed expression.
    """
    inner = _as_expr(spec_or_expr)
    z0 = complex(z0)
    expr = Koebe(inner, z0)
    j = jet_eval(inner, z0)
    b2_formula = (1.0 - abs(z0) ** 2) * j.f2 / (2.0 * j.f1) - np.conjugate(z0)
    spec = build_map(expr)
    if abs(spec.a2 - b2_formula) > 1e-10 * (1.0 + abs(b2_formula)):
        raise ConsistencyError(
            f"koebe coefficient mismatch: jet {spec.a2}, formula {b2_formula}"
        )
    return spec


def mobius_shift(spec_or_expr) -> MappingSpec:
    """Post-compose with w -> w/(1 + a2 w), killing the second coefficient.

    When a2 is already zero the shift is the identity; the returned
    entry is flagged through its notes.  A boundary ring sample guards
    against 1 + a2 f vanishing inside the disk (no catalog map does).
    """
    inner = _as_expr(spec_or_expr)
    a2 = taylor(inner)[1]
    notes = ""
    if abs(a2) < A2_ZERO_TOL:
        notes = "second coefficient is zero; shift acts as the identity"
    else:
        theta = 2.0 * np.pi * np.arange(1024) / 1024
        for r in (0.3, 0.6, 0.9, 0.99, 0.999):
            vals = jet_eval(inner, r * np.exp(1j * theta)).f0
            den = np.abs(1.0 + a2 * vals)
            den = den[np.isfinite(den)]
            if den.size and float(np.min(den)) < 1e-12:
                raise PoleInDomain(
                    f"1 + a2 f vanishes near |z| = {r}; shifted map has a pole"
                )
    spec = build_map(MobiusShift(inner))
    if notes:
        spec = MappingSpec(
            expr=spec.expr,
            a2=spec.a2,
            convexity_certified=spec.convexity_certified,
            convexity_min=spec.convexity_min,
            bounded_hint=spec.bounded_hint,
            omitted_on_boundary=spec.omitted_on_boundary,
            notes=notes,
        )
    return spec


def sector_from_automorphism(a) -> tuple:
    """Sector map of the extremal construction, with derived parameters.

    For an automorphism parameter a (|a| < 1) the boundary function is
    the unimodular constant c = -(1 - conj(a))/(1 - a); the map sends
    the disk onto a sector of opening beta*pi with

        beta = (1 - |a|^2) / (2 (1 - Re a)),    b = 1/(a c - 1),
        f(z) = -b [((1 + z)/(1 + c z))^beta - 1],

    and second coefficient a2 = -a c + b c (1 - |a|^2) / 2.  Both the
    coefficient identity and Re(a2 b) = -1/2 are verified numerically.
    For real a this is the familiar sector map with exponent (1 + a)/2.
    """
    a = complex(a)
    expr = SectorAuto(a)
    cbar = (1.0 - np.conjugate(a)) / (1.0 - a)
    c = -cbar
    beta = (1.0 - abs(a) ** 2) / (2.0 * (1.0 - a.real))
    b = 1.0 / (a * c - 1.0)
    a2_formula = -a * c + 0.5 * b * c * (1.0 - abs(a) ** 2)
    spec = build_map(expr)
    if abs(spec.a2 - a2_formula) > 1e-10 * (1.0 + abs(a2_formula)):
        raise ConsistencyError(
            f"sector coefficient mismatch: jet {spec.a2}, formula {a2_formula}"
        )
    if abs((spec.a2 * b).real + 0.5) > 1e-10:
        raise ConsistencyError(
            f"Re(a2 b) = {(spec.a2 * b).real}, expected -1/2"
        )
    return spec, SectorParams(a=a, c=complex(c), beta=float(beta), b=complex(b))


FIXTURE_EXPRS = (
    ("identity", Identity()),
    ("disk", Disk(0.5)),
    ("halfplane", Halfplane(-1.0)),
    ("sector", SectorReal(0.5)),
    ("sector-auto", SectorAuto(0.5)),
    ("strip", Strip()),
    ("strip-shift", StripShift(0.7)),
    ("mobius-of-strip", MobiusOfStrip(0.25)),
)


def catalog_fixtures():
    """The standard fixture set, as (name, MappingSpec) pairs."""
    return [(name, build_map(expr)) for name, expr in FIXTURE_EXPRS]
