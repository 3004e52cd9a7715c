"""Touch-surface model: finger-anchored accessible regions and hit testing.

A layout is derived from where the holding hand rests on the device edge:
four fingers along one vertical edge, the thumb on the opposite edge. Eleven
named regions are placed relative to those anchors and each region carries a
key action for one entry mode. Hit testing is nearest-center with an
activation radius, so the regions partition the screen into disjoint virtual
keys plus dead space.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path

from fbt.keys import (
    Action,
    Digit,
    DigitPair,
    EntryMode,
    KeyAction,
    format_key_action,
    parse_key_action,
)

Point = tuple[float, float]


class LayoutError(Exception):
    """Base class for layout construction and file errors."""


class InvalidAnchorsError(LayoutError):
    """Anchor points violate the edge-band or ordering rules."""


class OutOfBoundsError(LayoutError):
    """A point lies outside the screen rectangle."""


class ParseError(LayoutError):
    """A layout file is not syntactically valid."""


class InvariantViolationError(LayoutError):
    """A layout file parses but breaks a layout invariant (named in the message)."""


class RegionId(Enum):
    """The 11 accessible positions, in tie-breaking order."""

    ABOVE_INDEX = "above_index"
    INDEX = "index"
    MIDDLE = "middle"
    RING = "ring"
    LITTLE = "little"
    BELOW_LITTLE = "below_little"
    ABOVE_THUMB = "above_thumb"
    THUMB = "thumb"
    BELOW_THUMB = "below_thumb"
    BETWEEN_THUMB_AND_MIDDLE = "between_thumb_and_middle"
    BOTTOM_CENTRE = "bottom_centre"


class Handedness(Enum):
    LEFT_HOLD = "left_hold"


@dataclass(frozen=True)
class ScreenGeometry:
    """Screen size in device-independent pixels."""

    width: float
    height: float
    handedness: Handedness = Handedness.LEFT_HOLD

    def __post_init__(self) -> None:
        if not (self.width > 0 and self.height > 0):
            raise ValueError("screen width and height must be positive")

    def contains(self, point: Point) -> bool:
        x, y = point
        return 0 <= x <= self.width and 0 <= y <= self.height


@dataclass(frozen=True)
class AnchorSet:
    """Per-finger rest points: four fingers on one edge, thumb on the other."""

    index: Point
    middle: Point
    ring: Point
    little: Point
    thumb: Point

    @property
    def fingers(self) -> tuple[Point, Point, Point, Point]:
        return (self.index, self.middle, self.ring, self.little)


@dataclass(frozen=True)
class Region:
    id: RegionId
    center: Point


@dataclass(frozen=True)
class LayoutParams:
    """Tunables of the partition rule, in screen units.

    `inset` moves finger-adjacent centers inward from the edge, `margin` is
    both the anchor edge-band width and the bottom margin, and
    `activation_radius` bounds how far a tap may land from a center and still
    activate it.
    """

    inset: float
    margin: float
    activation_radius: float

    def __post_init__(self) -> None:
        if self.inset < 0 or self.margin < 0:
            raise ValueError("inset and margin must be non-negative")
        if self.activation_radius <= 0:
            raise ValueError("activation radius must be positive")


# Fraction of screen width used for the default inset and edge margin.
DEFAULT_EDGE_FRACTION = 0.08
# Activation radius as a fraction of half the minimum inter-center distance.
DEFAULT_RADIUS_FACTOR = 0.9
# Default anchor heights as fractions of screen height.
DEFAULT_FINGER_FRACTIONS = (0.25, 0.40, 0.55, 0.70)
DEFAULT_THUMB_FRACTION = 0.45


def default_anchors(geometry: ScreenGeometry) -> AnchorSet:
    """Anchors for a left-hand hold: fingers on the right edge, thumb on the left."""
    w, h = geometry.width, geometry.height
    fi, fm, fr, fl = DEFAULT_FINGER_FRACTIONS
    return AnchorSet(
        index=(w, fi * h),
        middle=(w, fm * h),
        ring=(w, fr * h),
        little=(w, fl * h),
        thumb=(0.0, DEFAULT_THUMB_FRACTION * h),
    )


def validate_anchors(
    geometry: ScreenGeometry, anchors: AnchorSet, margin: float
) -> None:
    """Raise InvalidAnchorsError unless the anchors satisfy all anchor invariants."""
    for name, point in (
        ("index", anchors.index),
        ("middle", anchors.middle),
        ("ring", anchors.ring),
        ("little", anchors.little),
        ("thumb", anchors.thumb),
    ):
        if not geometry.contains(point):
            raise InvalidAnchorsError(f"{name} anchor {point} outside the screen")

    w = geometry.width
    on_left = all(p[0] <= margin for p in anchors.fingers)
    on_right = all(p[0] >= w - margin for p in anchors.fingers)
    if not (on_left or on_right):
        raise InvalidAnchorsError(
            f"finger anchors must share one vertical edge band (margin {margin})"
        )
    tx = anchors.thumb[0]
    thumb_opposite = (tx >= w - margin) if on_left else (tx <= margin)
    if not thumb_opposite:
        raise InvalidAnchorsError("thumb anchor must lie on the edge opposite the fingers")

    ys = [p[1] for p in anchors.fingers]
    if not (ys[0] < ys[1] < ys[2] < ys[3]):
        raise InvalidAnchorsError(
            "finger anchors must be strictly ordered top-to-bottom: "
            "index above middle above ring above little"
        )


def _clamp(point: Point, geometry: ScreenGeometry) -> Point:
    x, y = point
    return (min(max(x, 0.0), geometry.width), min(max(y, 0.0), geometry.height))


def derive_regions(
    geometry: ScreenGeometry,
    anchors: AnchorSet,
    inset: float | None = None,
    margin: float | None = None,
) -> tuple[Region, ...]:
    """Place the 11 region centers from the anchor geometry.

    Finger and thumb regions sit at their anchors moved inward by `inset`;
    the above/below regions are offset vertically by the mean inter-finger
    gap; the between-thumb-and-middle region is the midpoint of the thumb and
    middle centers (which lands near the middle of the screen); the bottom
    centre region sits `margin` above the bottom edge. Every center is
    clamped to the screen rectangle.
    """
    if inset is None:
        inset = DEFAULT_EDGE_FRACTION * geometry.width
    if margin is None:
        margin = DEFAULT_EDGE_FRACTION * geometry.width
    validate_anchors(geometry, anchors, margin)

    fingers_on_right = anchors.index[0] >= geometry.width / 2
    finger_dx = -inset if fingers_on_right else inset
    thumb_dx = inset if fingers_on_right else -inset

    # Telescoped mean of the three consecutive inter-finger gaps.
    gap = (anchors.little[1] - anchors.index[1]) / 3.0

    index_c = (anchors.index[0] + finger_dx, anchors.index[1])
    middle_c = (anchors.middle[0] + finger_dx, anchors.middle[1])
    ring_c = (anchors.ring[0] + finger_dx, anchors.ring[1])
    little_c = (anchors.little[0] + finger_dx, anchors.little[1])
    thumb_c = (anchors.thumb[0] + thumb_dx, anchors.thumb[1])

    centers: dict[RegionId, Point] = {
        RegionId.ABOVE_INDEX: (index_c[0], index_c[1] - gap),
        RegionId.INDEX: index_c,
        RegionId.MIDDLE: middle_c,
        RegionId.RING: ring_c,
        RegionId.LITTLE: little_c,
        RegionId.BELOW_LITTLE: (little_c[0], little_c[1] + gap),
        RegionId.ABOVE_THUMB: (thumb_c[0], thumb_c[1] - gap),
        RegionId.THUMB: thumb_c,
        RegionId.BELOW_THUMB: (thumb_c[0], thumb_c[1] + gap),
        RegionId.BETWEEN_THUMB_AND_MIDDLE: (
            (thumb_c[0] + middle_c[0]) / 2.0,
            (thumb_c[1] + middle_c[1]) / 2.0,
        ),
        RegionId.BOTTOM_CENTRE: (geometry.width / 2.0, geometry.height - margin),
    }
    return tuple(Region(rid, _clamp(centers[rid], geometry)) for rid in RegionId)


def min_center_distance(regions: tuple[Region, ...]) -> float:
    best = float("inf")
    for i, a in enumerate(regions):
        for b in regions[i + 1 :]:
            dx = a.center[0] - b.center[0]
            dy = a.center[1] - b.center[1]
            best = min(best, (dx * dx + dy * dy) ** 0.5)
    return best


# Widget placement for single-digit entry: one region per digit plus Call.
#
# Digits 1-3 wrap the thumb, 4-8 run down the finger edge, and 9 sits at the
# between-thumb-and-middle region, which the derivation places at the middle
# of the screen. Zero takes the above-index region, so the default single
# layout has no backspace key (there are 12 actions for 11 regions; a custom
# keymap may trade the zero key for backspace).
SINGLE_DIGIT_KEYMAP: dict[RegionId, KeyAction] = {
    RegionId.ABOVE_INDEX: Digit(0),
    RegionId.INDEX: Digit(4),
    RegionId.MIDDLE: Digit(5),
    RegionId.RING: Digit(6),
    RegionId.LITTLE: Digit(7),
    RegionId.BELOW_LITTLE: Digit(8),
    RegionId.ABOVE_THUMB: Digit(1),
    RegionId.THUMB: Digit(2),
    RegionId.BELOW_THUMB: Digit(3),
    RegionId.BETWEEN_THUMB_AND_MIDDLE: Digit(9),
    RegionId.BOTTOM_CENTRE: Action.CALL,
}

# Widget placement for double-digit entry: five digit-pair keys on the finger
# edge, editing and call keys around the thumb.
DOUBLE_DIGIT_KEYMAP: dict[RegionId, KeyAction] = {
    RegionId.ABOVE_INDEX: Action.BACKSPACE,
    RegionId.INDEX: DigitPair(1, 2),
    RegionId.MIDDLE: DigitPair(3, 4),
    RegionId.RING: DigitPair(5, 6),
    RegionId.LITTLE: DigitPair(7, 8),
    RegionId.BELOW_LITTLE: DigitPair(9, 0),
    RegionId.ABOVE_THUMB: Action.UNASSIGNED,
    RegionId.THUMB: Action.ENTER,
    RegionId.BELOW_THUMB: Action.CONTACTS,
    RegionId.BETWEEN_THUMB_AND_MIDDLE: Action.UNASSIGNED,
    RegionId.BOTTOM_CENTRE: Action.CALL,
}

CANONICAL_KEYMAPS: dict[EntryMode, dict[RegionId, KeyAction]] = {
    EntryMode.SINGLE_DIGIT: SINGLE_DIGIT_KEYMAP,
    EntryMode.DOUBLE_DIGIT: DOUBLE_DIGIT_KEYMAP,
}


@dataclass(frozen=True)
class LayoutSpec:
    """Immutable layout: geometry, anchors, the 11 regions, and a keymap."""

    geometry: ScreenGeometry
    anchors: AnchorSet
    regions: tuple[Region, ...]
    mode: EntryMode
    keymap: dict[RegionId, KeyAction]
    params: LayoutParams

    def __post_init__(self) -> None:
        ids = [r.id for r in self.regions]
        if ids != list(RegionId):
            raise ValueError("regions must be exactly the 11 region ids, in order")
        for r in self.regions:
            if not self.geometry.contains(r.center):
                raise ValueError(f"region {r.id.value} center {r.center} out of bounds")
        centers = [r.center for r in self.regions]
        if len(set(centers)) != len(centers):
            raise ValueError("region centers must be pairwise distinct")
        if set(self.keymap) != set(RegionId):
            raise ValueError("keymap must assign every region id")

    def center_of(self, rid: RegionId) -> Point:
        for r in self.regions:
            if r.id is rid:
                return r.center
        raise KeyError(rid)

    def region_for_action(self, action: KeyAction) -> RegionId:
        for rid, mapped in self.keymap.items():
            if mapped == action:
                return rid
        raise KeyError(f"no region mapped to {action}")


def build_layout(
    geometry: ScreenGeometry,
    mode: EntryMode,
    anchors: AnchorSet | None = None,
    inset: float | None = None,
    margin: float | None = None,
    activation_radius: float | None = None,
    keymap: dict[RegionId, KeyAction] | None = None,
) -> LayoutSpec:
    """Derive a full layout, defaulting anchors and parameters from the geometry."""
    if inset is None:
        inset = DEFAULT_EDGE_FRACTION * geometry.width
    if margin is None:
        margin = DEFAULT_EDGE_FRACTION * geometry.width
    if anchors is None:
        anchors = default_anchors(geometry)
    regions = derive_regions(geometry, anchors, inset=inset, margin=margin)
    if activation_radius is None:
        activation_radius = DEFAULT_RADIUS_FACTOR * min_center_distance(regions) / 2.0
    params = LayoutParams(inset=inset, margin=margin, activation_radius=activation_radius)
    return LayoutSpec(
        geometry=geometry,
        anchors=anchors,
        regions=regions,
        mode=mode,
        keymap=dict(CANONICAL_KEYMAPS[mode] if keymap is None else keymap),
        params=params,
    )


def with_mode(layout: LayoutSpec, mode: EntryMode) -> LayoutSpec:
    """The same physical layout re-keyed with the canonical map for `mode`."""
    if mode is layout.mode:
        return layout
    return replace(layout, mode=mode, keymap=dict(CANONICAL_KEYMAPS[mode]))


def hit_test(layout: LayoutSpec, point: Point) -> RegionId | None:
    """Resolve a tap to the nearest region center within the activation radius.

    Returns None for dead space. Exact ties go to the lowest region id in
    enum order. Raises OutOfBoundsError for points outside the screen.
    """
    if not layout.geometry.contains(point):
        raise OutOfBoundsError(f"point {point} outside {layout.geometry.width}x{layout.geometry.height}")
    x, y = point
    best: RegionId | None = None
    best_d2 = float("inf")
    for region in layout.regions:  # enum order: first hit wins ties
        dx = region.center[0] - x
        dy = region.center[1] - y
        d2 = dx * dx + dy * dy
        if d2 < best_d2:
            best = region.id
            best_d2 = d2
    radius = layout.params.activation_radius
    if best_d2 <= radius * radius:
        return best
    return None


def mirror(layout: LayoutSpec) -> LayoutSpec:
    """Reflect the layout about the vertical centerline (right-hand hold)."""
    w = layout.geometry.width

    def flip(p: Point) -> Point:
        return (w - p[0], p[1])

    return replace(
        layout,
        anchors=AnchorSet(
            index=flip(layout.anchors.index),
            middle=flip(layout.anchors.middle),
            ring=flip(layout.anchors.ring),
            little=flip(layout.anchors.little),
            thumb=flip(layout.anchors.thumb),
        ),
        regions=tuple(Region(r.id, flip(r.center)) for r in layout.regions),
    )


def layout_to_dict(layout: LayoutSpec) -> dict:
    """Serialize to the layout-file document (canonical field order)."""
    return {
        "geometry": {
            "width": layout.geometry.width,
            "height": layout.geometry.height,
            "handedness": layout.geometry.handedness.value,
        },
        "anchors": {
            "index": list(layout.anchors.index),
            "middle": list(layout.anchors.middle),
            "ring": list(layout.anchors.ring),
            "little": list(layout.anchors.little),
            "thumb": list(layout.anchors.thumb),
        },
        "mode": layout.mode.value,
        "regions": [
            {"id": r.id.value, "center": list(r.center)} for r in layout.regions
        ],
        "keymap": {
            rid.value: format_key_action(layout.keymap[rid]) for rid in RegionId
        },
        "parameters": {
            "inset": layout.params.inset,
            "margin": layout.params.margin,
            "activation_radius": layout.params.activation_radius,
        },
    }


def save_layout(layout: LayoutSpec, path: str | Path) -> None:
    Path(path).write_text(json.dumps(layout_to_dict(layout), indent=2) + "\n")


def _point(value: object, what: str) -> Point:
    if (
        not isinstance(value, (list, tuple))
        or len(value) != 2
        or not all(isinstance(v, (int, float)) for v in value)
    ):
        raise ParseError(f"{what} must be a [x, y] pair")
    return (float(value[0]), float(value[1]))


def layout_from_dict(doc: dict) -> LayoutSpec:
    """Build and fully validate a LayoutSpec from a layout-file document."""
    try:
        geo = doc["geometry"]
        geometry = ScreenGeometry(
            width=float(geo["width"]),
            height=float(geo["height"]),
            handedness=Handedness(geo.get("handedness", "left_hold")),
        )
        anchors = AnchorSet(**{k: _point(v, f"anchor {k}") for k, v in doc["anchors"].items()})
        mode = EntryMode(doc["mode"])
        region_docs = doc["regions"]
        keymap_doc = doc["keymap"]
        params_doc = doc["parameters"]
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed layout document: {exc}") from exc

    if not isinstance(region_docs, list) or len(region_docs) != 11:
        raise InvariantViolationError(
            f"exactly 11 regions required, found {len(region_docs) if isinstance(region_docs, list) else 'non-list'}"
        )
    regions = []
    for rdoc in region_docs:
        try:
            rid = RegionId(rdoc["id"])
        except (KeyError, TypeError, ValueError):
            raise InvariantViolationError(f"unknown region id in {rdoc!r}") from None
        regions.append(Region(rid, _point(rdoc["center"], f"center of {rid.value}")))
    regions.sort(key=lambda r: list(RegionId).index(r.id))
    if [r.id for r in regions] != list(RegionId):
        raise InvariantViolationError("regions must cover each of the 11 region ids exactly once")

    try:
        keymap = {RegionId(k): parse_key_action(v) for k, v in keymap_doc.items()}
    except ValueError as exc:
        raise InvariantViolationError(f"bad keymap entry: {exc}") from exc

    canonical = CANONICAL_KEYMAPS[mode]
    if keymap != canonical:
        for rid in RegionId:
            if keymap.get(rid) != canonical[rid]:
                raise InvariantViolationError(
                    f"{mode.value} keymap must map {rid.value} to "
                    f"{format_key_action(canonical[rid])}, "
                    f"found {format_key_action(keymap[rid]) if rid in keymap else 'nothing'}"
                )

    try:
        params = LayoutParams(
            inset=float(params_doc["inset"]),
            margin=float(params_doc["margin"]),
            activation_radius=float(params_doc["activation_radius"]),
        )
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed parameters: {exc}") from exc
    except ValueError as exc:
        raise InvariantViolationError(str(exc)) from exc

    try:
        validate_anchors(geometry, anchors, margin=params.margin)
    except InvalidAnchorsError as exc:
        raise InvariantViolationError(str(exc)) from exc

    try:
        return LayoutSpec(
            geometry=geometry,
            anchors=anchors,
            regions=tuple(regions),
            mode=mode,
            keymap=keymap,
            params=params,
        )
    except ValueError as exc:
        raise InvariantViolationError(str(exc)) from exc


def load_layout(path: str | Path) -> LayoutSpec:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError(f"layout file {path} must contain a JSON object")
    return layout_from_dict(doc)
