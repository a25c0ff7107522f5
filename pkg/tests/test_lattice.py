import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from anomalion.lattice import Region, Window, classify_support, contains

sites = st.tuples(st.integers(-8, 8), st.integers(-8, 8))

REGIONS = [
    Region.full(),
    Region.half_plane_H(),
    Region.boundary_line(),
    Region.half_line_R(),
    Region.half_line_L(),
    Region.origin_disk(2),
    Region.complement_of(Region.half_plane_H()),
    Region.complement_of(Region.origin_disk(1)),
]


def test_contains_examples():
    assert not contains(Region.half_plane_H(), (3, -1))
    assert contains(Region.half_line_R(), (0, 0))
    assert contains(Region.origin_disk(2, thickening=1), (3, 0))
    assert not contains(Region.origin_disk(2, thickening=0), (3, 0))
    assert contains(Region.half_line_L(), (-5, 0))
    assert not contains(Region.half_line_L(), (1, 0))
    assert contains(Region.boundary_line(1), (4, -1))


@given(st.sampled_from(REGIONS), sites, st.integers(0, 3), st.integers(0, 3))
@settings(max_examples=300, deadline=None)
def test_thickening_monotone(region, site, r1, r2):
    lo, hi = min(r1, r2), max(r1, r2)
    if contains(region.thickened(lo), site):
        assert contains(region.thickened(hi), site)


@given(st.sampled_from(REGIONS), sites)
@settings(max_examples=300, deadline=None)
def test_double_complement_core(region, site):
    double = Region.complement_of(Region.complement_of(region))
    assert contains(double, site) == contains(region, site)


def test_window_geometry():
    w = Window.centered(12, 12, margin=3)
    assert (w.x_min, w.x_max) == (-6, 5)
    assert w.contains((0, 0)) and not w.contains((6, 0))
    assert w.edge_distance((5, 0)) == 0
    assert w.in_interior((-3, 2)) and w.in_edge_strip((4, 0))
    assert len(list(w.sites())) == 144

    c = Window.chain(12, margin=3)
    assert c.is_chain and len(list(c.sites())) == 12

    with pytest.raises(ValueError):
        Window(3, 2, 0, 0)
    with pytest.raises(ValueError):
        Window.centered(6, 6, margin=5)


def test_classify_support():
    rep = classify_support([(0, 0), (1, 0)], [Region.half_line_R()])
    assert rep.fully_inside(0)
    rep = classify_support([(-1, 0), (0, 0)], [Region.half_line_R()])
    assert not rep.fully_inside(0)
    rep = classify_support([(2, 1), (0, 0)], [Region.half_plane_H(), Region.boundary_line()])
    assert rep.memberships[0][1] and not rep.memberships[1][1]
    assert rep.max_dist_to_boundary_line == 1
    assert rep.max_dist_to_origin == 2


def test_intersection_region():
    r = Region.intersection_of(Region.half_line_R(1), Region.origin_disk(3))
    assert contains(r, (2, 1)) and not contains(r, (4, 0)) and not contains(r, (-2, 0))


def test_region_json_roundtrip():
    r = Region.origin_disk(2, thickening=1)
    assert Region.from_json(r.to_json()) == r
    r2 = Region.complement_of(Region.half_plane_H(), thickening=2)
    assert Region.from_json(r2.to_json()) == r2
