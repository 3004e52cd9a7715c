"""Per-trial measures: entry speed, minimal string distance, corrections.

Rebuilds the textbook example: ten digits in 35 seconds is about 3.1 words
per minute under the (|T|-1)/S * 60 * 1/5 convention.
"""

from fbt import (
    EntryMode,
    RegionId,
    ScreenGeometry,
    TapEvent,
    build_layout,
    error_count,
    new_session,
    step,
    wpm,
)
from fbt.metrics import Trial, score_trial

print("entry speed for 10 digits in 35 s:", wpm(10, 35.0))
print("entry speed for 10 digits in 15 s:", wpm(10, 15.0))
print("a single digit has no timed interval, so:", wpm(1, 12.0))

print("\nuncorrected errors are the minimal string distance between")
print("the presented number P and the transcribed number T:")
for p, t in [("0123456789", "0123456789"),
             ("0123456789", "0123456780"),
             ("0123456789", "012345678"),
             ("0123456789", "01234567899")]:
    print(f"  P={p} T={t:<12s} -> {error_count(p, t)}")

# Corrections are backspaces that removed a committed digit. Replay a small
# double-digit session that latches, clears, commits, and deletes.
layout = build_layout(ScreenGeometry(480, 800), EntryMode.DOUBLE_DIGIT)
state = new_session(EntryMode.DOUBLE_DIGIT)
story = [
    RegionId.INDEX, RegionId.THUMB,        # commit 1
    RegionId.MIDDLE,                       # pending 3
    RegionId.ABOVE_INDEX,                  # clear the pending digit (no correction)
    RegionId.RING, RegionId.THUMB,         # commit 5
    RegionId.ABOVE_INDEX,                  # delete the 5 (a real correction)
    RegionId.LITTLE, RegionId.THUMB,       # commit 7
    RegionId.BOTTOM_CENTRE,                # call
]
for i, rid in enumerate(story):
    x, y = layout.center_of(rid)
    state, _ = step(state, layout, TapEvent(x, y, i * 500.0))

trial = Trial(presented="17", transcribed=state.buffer,
              start_time=state.log[0].tap.t, end_time=state.log[-1].tap.t,
              log=state.log)
result = score_trial(trial)
print(f"\nreplayed trial: T={state.buffer!r}")
print(f"  duration {result.duration_seconds}s, speed {result.wpm:.3f} wpm")
print(f"  errors {result.error_count}, corrections {result.correction_count}, "
      f"complete {result.complete}")
