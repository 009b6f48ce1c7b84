import numpy as np
import pytest

from awr.catalog import FIXTURE_EXPRS, build_map


@pytest.fixture(scope="session")
def catalog():
    """Fixture catalog built once: name -> MappingSpec."""
    return {name: build_map(expr) for name, expr in FIXTURE_EXPRS}


@pytest.fixture(scope="session")
def fixture_names():
    return [name for name, _ in FIXTURE_EXPRS]


@pytest.fixture(scope="session")
def ratio_reports(catalog):
    """Distance-ratio profiles per fixture, run once for the session.

    The strip maps to None: its reflection sends the whole axis to
    infinity, so the ratio scan refuses it as ill-posed.
    """
    from awr.errors import DegenerateDomain
    from awr.quasidisk import quasidisk_ratio_scan

    out = {}
    for name, spec in catalog.items():
        try:
            out[name] = quasidisk_ratio_scan(spec.expr)
        except DegenerateDomain:
            out[name] = None
    return out


@pytest.fixture(scope="session")
def omission_reports(catalog):
    """Omitted-direction scans per fixture, run once for the session."""
    from awr.quasidisk import koebe_omission_scan

    return {name: koebe_omission_scan(spec.expr)
            for name, spec in catalog.items()}


def disk_points(seed: int, n: int, rmax: float = 0.9) -> np.ndarray:
    """Deterministic cloud of probe points with |z| <= rmax."""
    rng = np.random.default_rng(seed)
    r = rmax * np.sqrt(rng.uniform(0.0, 1.0, n))
    t = rng.uniform(0.0, 2.0 * np.pi, n)
    return r * np.exp(1j * t)


# Fifty grammar cases for the parse/print round-trip check, spanning
# every constructor, nesting, whitespace, and case-folding variants.
GRAMMAR_CASES = (
    "identity",
    "strip",
    "identity()",
    "strip()",
    "disk(x=0.5)",
    "disk(x=0.25)",
    "disk(x=-0.5)",
    "disk(x=0.9)",
    "disk(x=-0.999)",
    "halfplane(c=-1+0i)",
    "halfplane(c=1+0i)",
    "halfplane(c=0+1i)",
    "halfplane(c=0.6+0.8i)",
    "halfplane(c=-0.6-0.8i)",
    "sector(a=0.5)",
    "sector(a=0.25)",
    "sector(a=0.75)",
    "sector(a=0.999)",
    "sector-auto(a=0.5+0i)",
    "sector-auto(a=0.25-0.25i)",
    "sector-auto(a=0+0.5i)",
    "sector-auto(a=-0.3+0.2i)",
    "sector-auto(a=0+0i)",
    "strip-shift(x=0.7)",
    "strip-shift(x=0.1)",
    "strip-shift(x=0.999)",
    "mobius-of-strip(a=0.25+0i)",
    "mobius-of-strip(a=0+0.25i)",
    "mobius-of-strip(a=0.1-0.3i)",
    "mobius-of-strip(a=1+0i)",
    "koebe(strip, z0=0.7+0i)",
    "koebe(strip, z0=0+0.7i)",
    "koebe(identity, z0=0.3-0.2i)",
    "koebe(disk(x=0.5), z0=0.1+0.1i)",
    "koebe(sector(a=0.5), z0=-0.2+0.4i)",
    "koebe(halfplane(c=-1+0i), z0=0.25+0i)",
    "koebe(koebe(strip, z0=0+0.3i), z0=0.2+0i)",
    "mobius-shift(strip)",
    "mobius-shift(identity)",
    "mobius-shift(mobius-of-strip(a=0.25+0i))",
    "mobius-shift(koebe(strip, z0=0+0.7i))",
    "affine(identity, a=2+0i, b=1+0i)",
    "affine(strip, a=0.5+0.5i, b=0+0i)",
    "affine(disk(x=0.5), a=1-1i, b=-2+3i)",
    "affine(sector(a=0.5), b=0+1i, a=0+1i)",
    "  identity  ",
    "DISK( X = 0.5 )",
    "Koebe( Strip , Z0 = 0.7+0i )",
    "sector-AUTO(A=0.5+0i)",
    "MOBIUS-OF-STRIP(a=0.25+0i)",
)
