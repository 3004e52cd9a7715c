"""Tour of the finger-anchored layout model.

Builds the default phone-sized layout, shows where the 11 accessible regions
land, probes the hit-testing partition, and mirrors the layout for a
right-hand hold. Pass --plot to save a scatter of the region centers.
"""

import sys

from fbt import (
    EntryMode,
    RegionId,
    ScreenGeometry,
    build_layout,
    hit_test,
    mirror,
)
from fbt.keys import format_key_action

geometry = ScreenGeometry(480, 800)
layout = build_layout(geometry, EntryMode.SINGLE_DIGIT)

print("Default single-digit layout on a 480x800 screen")
print(f"activation radius: {layout.params.activation_radius:.1f}px\n")
print(f"{'region':30s} {'center':>18s}  key")
for region in layout.regions:
    action = format_key_action(layout.keymap[region.id])
    cx, cy = region.center
    print(f"{region.id.value:30s} ({cx:7.1f},{cy:7.1f})  {action}")

# Taps resolve to the nearest center, but only within the activation radius:
print("\nhit tests:")
for point in [(440.0, 330.0), (240.0, 345.0), (130.0, 30.0)]:
    rid = hit_test(layout, point)
    print(f"  tap at {point} -> {rid.value if rid else 'dead space'}")

# A right-hand hold is the same layout reflected about the vertical midline.
flipped = mirror(layout)
thumb = layout.center_of(RegionId.THUMB)
thumb_m = flipped.center_of(RegionId.THUMB)
print(f"\nmirrored thumb center: {thumb} -> {thumb_m}")

# The same anchors scale to a tablet; regions stay on the held edges.
tablet = build_layout(ScreenGeometry(800, 1280), EntryMode.SINGLE_DIGIT)
print("\non a 800x1280 tablet the edge columns move with the screen:")
print(f"  index center {layout.center_of(RegionId.INDEX)} -> {tablet.center_of(RegionId.INDEX)}")

if "--plot" in sys.argv:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(3.6, 6))
    for region in layout.regions:
        x, y = region.center
        ax.add_patch(plt.Circle((x, y), layout.params.activation_radius,
                                alpha=0.2, color="tab:blue"))
        ax.plot(x, y, "k.")
        ax.annotate(region.id.value, (x, y), fontsize=6, ha="center",
                    xytext=(0, 6), textcoords="offset points")
    ax.set_xlim(0, 480)
    ax.set_ylim(800, 0)
    ax.set_aspect("equal")
    ax.set_title("accessible regions, left-hand hold")
    fig.tight_layout()
    fig.savefig("layout_regions.png", dpi=150)
    print("\nwrote layout_regions.png")
