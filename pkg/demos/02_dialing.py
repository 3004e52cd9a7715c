"""Dialing walkthrough for both entry techniques.

Every tap is answered with spoken feedback; this script prints what a user
would hear. The double-digit walkthrough follows the canonical story: press
the 1-2 key once to hear "one", again to hear "two", then enter to commit.
"""

from fbt import EntryMode, RegionId, ScreenGeometry, TapEvent, build_layout, new_session, step
from fbt.entry import canonical_press_sequence

geometry = ScreenGeometry(480, 800)


def dial(layout, regions, label):
    print(f"\n== {label} ==")
    state = new_session(layout.mode)
    for i, rid in enumerate(regions):
        x, y = layout.center_of(rid)
        state, events = step(state, layout, TapEvent(x, y, i * 400.0))
        spoken = ", ".join(f'"{e.utterance}"' for e in events)
        print(f"  tap {rid.value:26s} -> {spoken:24s} buffer={state.buffer!r}")
    return state


single = build_layout(geometry, EntryMode.SINGLE_DIGIT)
dial(single, [RegionId.THUMB, RegionId.ABOVE_THUMB, RegionId.LITTLE,
              RegionId.BOTTOM_CENTRE],
     "single-digit: dial 217 and call")

double = build_layout(geometry, EntryMode.DOUBLE_DIGIT)
dial(double, [RegionId.INDEX, RegionId.INDEX, RegionId.THUMB],
     "double-digit: two presses of the 1-2 key, then enter, gives 2")

dial(double, [RegionId.INDEX, RegionId.THUMB],
     "double-digit: a single press plus enter gives 1")

dial(double, [RegionId.MIDDLE, RegionId.ABOVE_INDEX,   # pending 3, cleared
              RegionId.RING, RegionId.RING, RegionId.THUMB,  # commit 6
              RegionId.ABOVE_INDEX],                   # delete it again
     "double-digit: clearing a pending digit vs correcting a committed one")

# The minimal press sequences the simulator uses as its intent model:
for number in ("2", "90"):
    for mode in (EntryMode.SINGLE_DIGIT, EntryMode.DOUBLE_DIGIT):
        seq = [r.value for r in canonical_press_sequence(number, mode)]
        print(f"\ncanonical presses for {number!r} in {mode.value}: {seq}")
