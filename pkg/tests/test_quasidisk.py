"""Image-side diagnostics: normalized sup, boundary clusters, omitted
value distance, reflection distance ratios, and the omission scan.

Values are pinned from runs at the module defaults.  The recurring
theme is a clean split between the convex fixtures, whose diagnostics
stay bounded away from the degenerate regime, and the tangent-disk map
mobius-of-strip, which collapses in every metric.
"""

import numpy as np
import pytest

from awr.errors import DegenerateDomain
from awr.expr import Halfplane, MobiusOfStrip, Strip
from awr.quasidisk import (
    CHORDAL,
    EUCLIDEAN,
    boundary_polyline,
    delta_f,
    lemma32_demo,
    near_one_clusters,
    normalized_sup,
    quasidisk_ratio_scan,
)

# name -> (sup, abs tol, interior_ok)
NORMALIZED_SUP_TABLE = {
    "identity": (0.0, 1e-12, True),
    "disk": (0.49995000, 1e-6, True),
    "halfplane": (0.99990000, 1e-6, True),
    "sector": (0.98595681, 1e-6, True),
    "sector-auto": (0.99881146, 1e-6, True),
    "strip": (0.0, 1e-12, True),
    "strip-shift": (0.99900456, 1e-6, True),
    "mobius-of-strip": (1.23792969, 1e-6, False),
}

# name -> (cluster count, whole_ring) on the default ring 0.9999
CLUSTER_TABLE = {
    "halfplane": (1, True),
    "sector": (2, False),
    "sector-auto": (2, False),
    "strip-shift": (2, False),
}

# name -> (delta, rel tol, metric)
DELTA_TABLE = {
    "identity": (np.sqrt(2.0), 1e-6, CHORDAL),
    "disk": (4.0 / 3.0, 1e-6, EUCLIDEAN),
    "halfplane": (0.5, 1e-6, EUCLIDEAN),
    "sector": (1.0002236, 1e-5, EUCLIDEAN),
    "sector-auto": (2.0 / 3.0, 1e-4, EUCLIDEAN),
    "strip": (8.4810667e-4, 1e-4, CHORDAL),
    "strip-shift": (0.55396892, 1e-6, EUCLIDEAN),
    "mobius-of-strip": (6.7733649e-3, 1e-4, EUCLIDEAN),
}

# name -> (per-ring infima, c_estimate)
RATIO_TABLE = {
    "identity": ((1.01514, 1.05231, 1.10579), 1.01514),
    "disk": ((1.00836, 1.05161, 1.10542), 1.00836),
    "halfplane": ((1.00000, 1.00000, 1.10289), 1.00000),
    "sector": ((1.00504, 1.05126, 1.10524), 1.00504),
    "sector-auto": ((1.00502, 1.05126, 1.10524), 1.00502),
    "strip-shift": ((1.00499, 1.05126, 1.10524), 1.00499),
}

# name -> omission scan infimum
OMISSION_TABLE = {
    "identity": 5.263158e-01,
    "disk": 5.087720e-01,
    "halfplane": 5.000000e-01,
    "sector": 5.013812e-01,
    "sector-auto": 5.008041e-01,
    "strip": 5.043503e-01,
    "strip-shift": 5.025699e-01,
}


@pytest.mark.parametrize("name", sorted(NORMALIZED_SUP_TABLE))
def test_normalized_sup(name, catalog):
    want, tol, interior_ok = NORMALIZED_SUP_TABLE[name]
    got = normalized_sup(catalog[name].expr)
    assert abs(got.sup - want) < tol, (name, got.sup)
    assert got.interior_ok == interior_ok, name


def test_normalized_sup_below_one_on_convex_fixtures(catalog):
    for name, (_, _, interior_ok) in NORMALIZED_SUP_TABLE.items():
        if name == "mobius-of-strip":
            continue
        got = normalized_sup(catalog[name].expr)
        assert got.sup < 1.0, (name, got.sup)
        assert interior_ok


@pytest.mark.parametrize("name", sorted(CLUSTER_TABLE))
def test_near_one_clusters(name, catalog):
    count, whole_ring = CLUSTER_TABLE[name]
    got = near_one_clusters(catalog[name].expr)
    assert got.count == count, (name, got.count)
    assert got.whole_ring == whole_ring, name
    assert got.pmax < 1.0
    if not whole_ring:
        assert len(got.spans) == count


def test_clusters_empty_when_sup_is_zero(catalog):
    got = near_one_clusters(catalog["identity"].expr)
    assert got.pmax == 0.0
    # tau = 1 - 1.5 (1 - pmax) < 0 means the whole ring trivially
    # clears the cut, reported as a single full-circle run
    assert got.whole_ring


@pytest.mark.parametrize("name", sorted(DELTA_TABLE))
def test_delta_f(name, catalog):
    want, rtol, metric = DELTA_TABLE[name]
    got = delta_f(catalog[name].expr)
    assert got.metric == metric, name
    assert abs(got.value - want) < rtol * max(want, 1e-3), (name, got.value)


def test_delta_deep_refinement_shrinks_tangent_disk():
    shallow = delta_f(MobiusOfStrip(0.25), passes=3)
    deep = delta_f(MobiusOfStrip(0.25), passes=6)
    assert deep.value < shallow.value
    assert deep.value < 1e-4


def test_boundary_polyline_guards(catalog):
    with pytest.raises(DegenerateDomain):
        boundary_polyline(Halfplane(-1.0), r=0.5)
    with pytest.raises(DegenerateDomain):
        boundary_polyline(Halfplane(-1.0), r=1.0)
    with pytest.raises(DegenerateDomain):
        boundary_polyline(Halfplane(-1.0), n=512)


def test_boundary_polyline_defaults(catalog):
    for name in ("identity", "halfplane", "strip"):
        poly = boundary_polyline(catalog[name].expr)
        assert not poly.clipped, name
        assert poly.vertices().size == 8192, name
        seg_a, seg_b = poly.segments()
        assert seg_a.size == 8192
        # consecutive points stay close on a fine ring image
        assert np.all(np.isfinite(seg_a)) and np.all(np.isfinite(seg_b))


@pytest.mark.parametrize("name", sorted(RATIO_TABLE))
def test_quasidisk_ratio_scan(name, ratio_reports):
    per_ring, c_est = RATIO_TABLE[name]
    got = ratio_reports[name]
    assert not got.collapsed, name
    assert abs(got.c_estimate - c_est) < 1e-4, (name, got.c_estimate)
    for want, have in zip(per_ring, got.inf_ratio_per_ring):
        assert abs(have - want) < 1e-4, (name, have, want)
    assert got.c_estimate == min(got.inf_ratio_per_ring)


def test_ratio_scan_collapses_on_tangent_disk(ratio_reports):
    got = ratio_reports["mobius-of-strip"]
    assert got.collapsed
    assert got.c_estimate < 0.05
    # the collapse deepens with the probe ring
    ratios = got.inf_ratio_per_ring
    assert ratios[0] > ratios[1] > ratios[2]


def test_ratio_scan_rejects_strip_conjugates(catalog, ratio_reports):
    with pytest.raises(DegenerateDomain):
        quasidisk_ratio_scan(Strip())
    assert ratio_reports["strip"] is None


@pytest.mark.parametrize("name", sorted(OMISSION_TABLE))
def test_koebe_omission_scan(name, omission_reports):
    want = OMISSION_TABLE[name]
    got = omission_reports[name]
    assert not got.collapsed, name
    assert abs(got.inf_value - want) < 1e-5, (name, got.inf_value)
    assert got.inf_value > 0.45


def test_omission_scan_collapses_on_tangent_disk(omission_reports):
    got = omission_reports["mobius-of-strip"]
    assert got.collapsed
    assert got.inf_value < 5e-3


def test_omission_and_ratio_verdicts_agree(ratio_reports, omission_reports):
    for name, ratio in ratio_reports.items():
        if ratio is None:
            continue
        assert ratio.collapsed == omission_reports[name].collapsed, name


def test_lemma32_demo_rows():
    rows = lemma32_demo()
    assert [row.a for row in rows] == [(0.25 + 0j), (0.01 + 0j), 0.25j]
    for row in rows:
        assert row.sup_norm_dev < 1e-10, row.a
        assert row.delta < 1e-2, row.a
        assert row.delta_metric == EUCLIDEAN
    # smaller tangency parameter means slower collapse at fixed depth
    assert rows[1].delta > rows[0].delta
    # the parameter modulus controls the rate, not its phase
    assert abs(rows[2].delta - rows[0].delta) < 1e-9
