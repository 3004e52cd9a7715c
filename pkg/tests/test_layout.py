from __future__ import annotations

import json

import numpy as np
import pytest

from fbt import (
    AnchorSet,
    EntryMode,
    RegionId,
    ScreenGeometry,
    build_layout,
    derive_regions,
    hit_test,
    load_layout,
    mirror,
    save_layout,
)
from fbt.keys import Digit
from fbt.layout import (
    InvalidAnchorsError,
    InvariantViolationError,
    OutOfBoundsError,
    ParseError,
    default_anchors,
    layout_to_dict,
    min_center_distance,
    with_mode,
)


def test_derive_regions_distinct_in_bounds(geometry):
    regions = derive_regions(geometry, default_anchors(geometry))
    assert [r.id for r in regions] == list(RegionId)
    centers = [r.center for r in regions]
    assert len(set(centers)) == 11
    for c in centers:
        assert geometry.contains(c)


def test_derive_regions_tablet_scale():
    # same relative anchors on a tablet screen: same region set, in bounds
    tablet = ScreenGeometry(800, 1280)
    regions = derive_regions(tablet, default_anchors(tablet))
    assert [r.id for r in regions] == list(RegionId)
    assert all(tablet.contains(r.center) for r in regions)


def test_derive_regions_rejects_bad_finger_order(geometry):
    anchors = default_anchors(geometry)
    swapped = AnchorSet(
        index=anchors.middle,
        middle=anchors.index,
        ring=anchors.ring,
        little=anchors.little,
        thumb=anchors.thumb,
    )
    with pytest.raises(InvalidAnchorsError):
        derive_regions(geometry, swapped)


def test_derive_regions_rejects_thumb_on_same_edge(geometry):
    anchors = default_anchors(geometry)
    bad = AnchorSet(
        index=anchors.index,
        middle=anchors.middle,
        ring=anchors.ring,
        little=anchors.little,
        thumb=(geometry.width, 0.45 * geometry.height),
    )
    with pytest.raises(InvalidAnchorsError):
        derive_regions(geometry, bad)


def test_hit_test_center_identity(single_layout):
    for region in single_layout.regions:
        assert hit_test(single_layout, region.center) is region.id


def test_hit_test_tie_breaks_in_enum_order(geometry):
    # midpoint between the index and middle centers is an exact tie; a wide
    # activation radius makes it reachable
    layout = build_layout(geometry, EntryMode.SINGLE_DIGIT, activation_radius=70.0)
    ix, iy = layout.center_of(RegionId.INDEX)
    mx, my = layout.center_of(RegionId.MIDDLE)
    assert ix == mx
    tie_point = (ix, (iy + my) / 2.0)
    assert hit_test(layout, tie_point) is RegionId.INDEX


def test_hit_test_dead_zone_and_bounds(single_layout):
    # the geometric point farthest from every center on this layout
    assert hit_test(single_layout, (130.0, 30.0)) is None
    with pytest.raises(OutOfBoundsError):
        hit_test(single_layout, (-1.0, 10.0))
    with pytest.raises(OutOfBoundsError):
        hit_test(single_layout, (10.0, 801.0))


def test_mirror_reflects_and_involutes(single_layout):
    m = mirror(single_layout)
    assert m.keymap == single_layout.keymap
    for a, b in zip(m.regions, single_layout.regions):
        assert a.id is b.id
        assert a.center[0] == pytest.approx(480 - b.center[0], abs=1e-9)
        assert a.center[1] == b.center[1]
    mm = mirror(m)
    for a, b in zip(mm.regions, single_layout.regions):
        assert a.center[0] == pytest.approx(b.center[0], abs=1e-9)
        assert a.center[1] == pytest.approx(b.center[1], abs=1e-9)


def test_mirror_reflection_arithmetic(geometry):
    layout = build_layout(geometry, EntryMode.SINGLE_DIGIT)
    # a center at x=100 must land at x=380 on a 480-wide screen
    assert 480.0 - 100.0 == 380.0
    m = mirror(layout)
    tx = layout.center_of(RegionId.THUMB)[0]
    assert m.center_of(RegionId.THUMB)[0] == pytest.approx(480 - tx, abs=1e-12)


def test_mirror_commutes_with_hit_test(single_layout):
    # deterministic grid of sample points away from exact tie boundaries
    m = mirror(single_layout)
    w = single_layout.geometry.width
    for x in np.arange(3.75, 480, 7.5):
        for y in np.arange(6.25, 800, 12.5):
            assert hit_test(m, (w - x, y)) is hit_test(single_layout, (x, y))


def test_scale_equivariance_relative(geometry):
    s = 1.7
    anchors = default_anchors(geometry)
    scaled_geo = ScreenGeometry(geometry.width * s, geometry.height * s)
    scaled_anchors = AnchorSet(
        **{
            f: (p[0] * s, p[1] * s)
            for f, p in (
                ("index", anchors.index),
                ("middle", anchors.middle),
                ("ring", anchors.ring),
                ("little", anchors.little),
                ("thumb", anchors.thumb),
            )
        }
    )
    base = derive_regions(geometry, anchors, inset=30.0, margin=40.0)
    scaled = derive_regions(scaled_geo, scaled_anchors, inset=30.0 * s, margin=40.0 * s)
    for a, b in zip(scaled, base):
        assert a.center[0] == pytest.approx(b.center[0] * s, rel=1e-12)
        assert a.center[1] == pytest.approx(b.center[1] * s, rel=1e-12)


def test_save_load_round_trip(tmp_path, single_layout, double_layout):
    for layout in (single_layout, double_layout):
        path = tmp_path / f"{layout.mode.value}.json"
        save_layout(layout, path)
        assert load_layout(path) == layout


def test_load_rejects_ten_regions(tmp_path, single_layout):
    doc = layout_to_dict(single_layout)
    doc["regions"] = doc["regions"][:10]
    path = tmp_path / "ten.json"
    path.write_text(json.dumps(doc))
    with pytest.raises(InvariantViolationError, match="11 regions"):
        load_layout(path)


def test_load_rejects_noncanonical_keymap(tmp_path, single_layout):
    # the thumb key dials 2 in single-digit mode; a file claiming 5 is invalid
    doc = layout_to_dict(single_layout)
    doc["keymap"]["thumb"] = "digit:5"
    path = tmp_path / "bad_keymap.json"
    path.write_text(json.dumps(doc))
    with pytest.raises(InvariantViolationError, match="thumb"):
        load_layout(path)


def test_load_rejects_malformed_json(tmp_path):
    path = tmp_path / "junk.json"
    path.write_text("{not json")
    with pytest.raises(ParseError):
        load_layout(path)


def test_load_rejects_out_of_bounds_center(tmp_path, single_layout):
    doc = layout_to_dict(single_layout)
    doc["regions"][0]["center"] = [10000.0, 10.0]
    path = tmp_path / "oob.json"
    path.write_text(json.dumps(doc))
    with pytest.raises(InvariantViolationError, match="out of bounds"):
        load_layout(path)


def test_with_mode_swaps_keymap(single_layout):
    d = with_mode(single_layout, EntryMode.DOUBLE_DIGIT)
    assert d.mode is EntryMode.DOUBLE_DIGIT
    assert d.regions == single_layout.regions
    assert d.keymap != single_layout.keymap
    assert with_mode(single_layout, EntryMode.SINGLE_DIGIT) is single_layout


def test_single_keymap_covers_all_digits(single_layout):
    digits = {a.value for a in single_layout.keymap.values() if isinstance(a, Digit)}
    assert digits == set(range(10))


def test_partition_soundness_random_points(single_layout):
    rng = np.random.default_rng(1234)
    owners = {r.center: r.id for r in single_layout.regions}
    radius = single_layout.params.activation_radius
    assert radius > 0
    assert min_center_distance(single_layout.regions) / 2 > radius * 0.99
    for _ in range(500):
        p = (rng.uniform(0, 480), rng.uniform(0, 800))
        rid = hit_test(single_layout, p)
        if rid is not None:
            cx, cy = single_layout.center_of(rid)
            assert (cx - p[0]) ** 2 + (cy - p[1]) ** 2 <= radius**2 + 1e-9
    for center, rid in owners.items():
        assert hit_test(single_layout, center) is rid
