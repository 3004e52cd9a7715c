from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from fbt import (
    EntryMode,
    FeedbackKind,
    RegionId,
    ScreenGeometry,
    TapEvent,
    build_layout,
    canonical_press_sequence,
    new_session,
    step,
)
from fbt.entry import (
    ModeMismatchError,
    NonMonotoneTimestampError,
    SessionTerminatedError,
)
from fbt.keys import Action, Digit
from fbt.layout import SINGLE_DIGIT_KEYMAP


def tap_at(layout, rid: RegionId, t: float) -> TapEvent:
    x, y = layout.center_of(rid)
    return TapEvent(x, y, t)


def run_regions(layout, regions, mode=None, state=None):
    state = state or new_session(mode or layout.mode)
    events = []
    t = float(len(state.log)) * 250.0
    for rid in regions:
        state, evs = step(state, layout, tap_at(layout, rid, t))
        events.extend(evs)
        t += 250.0
    return state, events


def test_double_digit_worked_example_second_of_pair(double_layout):
    # pressing the 1-2 key twice then enter dials "2"
    state, events = run_regions(
        double_layout, [RegionId.INDEX, RegionId.INDEX, RegionId.THUMB]
    )
    assert state.buffer == "2"
    assert [(e.kind, e.detail) for e in events] == [
        (FeedbackKind.PENDING, "1"),
        (FeedbackKind.PENDING, "2"),
        (FeedbackKind.DIGIT, "2"),
    ]


def test_double_digit_worked_example_first_of_pair(double_layout):
    state, events = run_regions(double_layout, [RegionId.INDEX, RegionId.THUMB])
    assert state.buffer == "1"
    assert [e.kind for e in events] == [FeedbackKind.PENDING, FeedbackKind.DIGIT]


def test_double_digit_third_press_cycles(double_layout):
    state, events = run_regions(
        double_layout,
        [RegionId.INDEX, RegionId.INDEX, RegionId.INDEX, RegionId.THUMB],
    )
    assert state.buffer == "1"
    assert [e.detail for e in events] == ["1", "2", "1", "1"]


def test_single_digit_thumb_dials_two(single_layout):
    state, events = run_regions(single_layout, [RegionId.THUMB])
    assert state.buffer == "2"
    assert events[0].kind is FeedbackKind.DIGIT and events[0].detail == "2"


def test_single_digit_backspace_on_empty_buffer(geometry):
    # a custom single-digit keymap carrying a backspace key (the canonical
    # one spends every region on digits and call)
    keymap = dict(SINGLE_DIGIT_KEYMAP)
    keymap[RegionId.ABOVE_INDEX] = Action.BACKSPACE
    layout = build_layout(geometry, EntryMode.SINGLE_DIGIT, keymap=keymap)
    state, events = run_regions(layout, [RegionId.ABOVE_INDEX])
    assert state.buffer == ""
    assert events == [
        e for e in events if e.kind is FeedbackKind.ERROR and e.detail == "empty"
    ]

    state, events = run_regions(layout, [RegionId.THUMB, RegionId.ABOVE_INDEX])
    assert state.buffer == ""
    assert events[-1].kind is FeedbackKind.ACTION and events[-1].detail == "backspace"


def test_double_digit_pending_replaced_by_other_key(double_layout):
    state, events = run_regions(double_layout, [RegionId.INDEX, RegionId.MIDDLE])
    assert state.pending is not None
    assert state.pending.region is RegionId.MIDDLE and state.pending.selected == 3
    kinds = [e.kind for e in events]
    assert kinds == [FeedbackKind.PENDING, FeedbackKind.ERROR, FeedbackKind.PENDING]
    assert events[-1].detail == "3"


def test_double_digit_enter_without_pending(double_layout):
    state, events = run_regions(double_layout, [RegionId.THUMB])
    assert state.buffer == ""
    assert events[0].kind is FeedbackKind.ERROR
    assert events[0].detail == "nothing to enter"


def test_double_digit_backspace_clears_pending_then_edits_buffer(double_layout):
    # commit 1, latch a pending 3, then backspace twice
    state, _ = run_regions(
        double_layout,
        [RegionId.INDEX, RegionId.THUMB, RegionId.MIDDLE, RegionId.ABOVE_INDEX],
    )
    assert state.buffer == "1" and state.pending is None
    state, events = run_regions(double_layout, [RegionId.ABOVE_INDEX], state=state)
    assert state.buffer == "" and events[0].detail == "backspace"
    state, events = run_regions(double_layout, [RegionId.ABOVE_INDEX], state=state)
    assert events[0].detail == "empty"


def test_double_digit_contacts_announces_without_buffer_change(double_layout):
    state, events = run_regions(double_layout, [RegionId.BELOW_THUMB])
    assert state.buffer == ""
    assert events[0].kind is FeedbackKind.ACTION and events[0].detail == "contacts"


def test_call_terminates_and_rejects_later_taps(single_layout):
    state, events = run_regions(single_layout, [RegionId.THUMB, RegionId.BOTTOM_CENTRE])
    assert state.terminated and state.buffer == "2"
    assert events[-1].detail == "call"
    with pytest.raises(SessionTerminatedError):
        step(state, single_layout, tap_at(single_layout, RegionId.THUMB, 9000.0))


def test_unassigned_regions_and_dead_space_announce(double_layout):
    state, events = run_regions(double_layout, [RegionId.ABOVE_THUMB])
    assert state.buffer == "" and state.pending is None
    assert events[0].kind is FeedbackKind.UNASSIGNED

    state, events = step(
        new_session(EntryMode.DOUBLE_DIGIT), double_layout, TapEvent(130.0, 30.0, 0.0)
    )
    assert events[0].kind is FeedbackKind.UNASSIGNED
    assert state.log[-1].region is None


def test_mode_mismatch_rejected(single_layout):
    with pytest.raises(ModeMismatchError):
        step(new_session(EntryMode.DOUBLE_DIGIT), single_layout, TapEvent(1, 1, 0))


def test_non_monotone_timestamp_rejected(single_layout):
    state, _ = step(new_session(EntryMode.SINGLE_DIGIT), single_layout, TapEvent(1, 1, 100.0))
    with pytest.raises(NonMonotoneTimestampError):
        step(state, single_layout, TapEvent(1, 1, 99.0))


def test_keystroke_log_appends_every_tap(double_layout):
    state, _ = run_regions(
        double_layout, [RegionId.INDEX, RegionId.ABOVE_THUMB, RegionId.THUMB]
    )
    assert len(state.log) == 3
    assert [e.region for e in state.log] == [
        RegionId.INDEX,
        RegionId.ABOVE_THUMB,
        RegionId.THUMB,
    ]


def test_canonical_sequences_worked_cases():
    assert canonical_press_sequence("2", EntryMode.DOUBLE_DIGIT) == [
        RegionId.INDEX,
        RegionId.INDEX,
        RegionId.THUMB,
    ]
    assert canonical_press_sequence("7", EntryMode.SINGLE_DIGIT) == [RegionId.LITTLE]


def test_canonical_sequences_transcribe_every_digit(single_layout, double_layout):
    for mode, layout in (
        (EntryMode.SINGLE_DIGIT, single_layout),
        (EntryMode.DOUBLE_DIGIT, double_layout),
    ):
        for d in "0123456789":
            state, events = run_regions(layout, canonical_press_sequence(d, mode))
            assert state.buffer == d
            assert all(e.kind is not FeedbackKind.ERROR for e in events)


def test_canonical_sequence_rejects_bad_input():
    with pytest.raises(ValueError):
        canonical_press_sequence("", EntryMode.SINGLE_DIGIT)
    with pytest.raises(ValueError):
        canonical_press_sequence("12a", EntryMode.SINGLE_DIGIT)


def test_keystrokes_per_digit(single_layout, double_layout):
    for d in range(10):
        assert len(canonical_press_sequence(str(d), EntryMode.SINGLE_DIGIT)) == 1
    for d in (1, 3, 5, 7, 9):
        assert len(canonical_press_sequence(str(d), EntryMode.DOUBLE_DIGIT)) == 2
    for d in (2, 4, 6, 8, 0):
        assert len(canonical_press_sequence(str(d), EntryMode.DOUBLE_DIGIT)) == 3


def test_transcription_sound_for_all_two_digit_numbers(single_layout, double_layout):
    for a, b in itertools.product("0123456789", repeat=2):
        number = a + b
        for mode, layout in (
            (EntryMode.SINGLE_DIGIT, single_layout),
            (EntryMode.DOUBLE_DIGIT, double_layout),
        ):
            state, events = run_regions(layout, canonical_press_sequence(number, mode))
            assert state.buffer == number
            assert all(e.kind is not FeedbackKind.ERROR for e in events)


def test_step_is_deterministic(double_layout):
    state = new_session(EntryMode.DOUBLE_DIGIT)
    tap = tap_at(double_layout, RegionId.RING, 10.0)
    out1 = step(state, double_layout, tap)
    out2 = step(state, double_layout, tap)
    assert out1 == out2


_LAYOUTS = {
    mode: build_layout(ScreenGeometry(480, 800), mode)
    for mode in (EntryMode.SINGLE_DIGIT, EntryMode.DOUBLE_DIGIT)
}


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.sampled_from(list(RegionId)), min_size=1, max_size=25),
    st.sampled_from([EntryMode.SINGLE_DIGIT, EntryMode.DOUBLE_DIGIT]),
)
def test_buffer_changes_one_digit_at_a_time(regions, mode):
    layout = _LAYOUTS[mode]
    state = new_session(mode)
    t = 0.0
    for rid in regions:
        if state.terminated:
            break
        before = state.buffer
        state, events = step(state, layout, tap_at(layout, rid, t))
        t += 100.0
        assert events, "no silent taps"
        after = state.buffer
        if len(after) == len(before) + 1:
            assert after[:-1] == before
            assert isinstance(state.log[-1].action, Digit) or (
                state.log[-1].action is Action.ENTER
            )
        elif len(after) == len(before) - 1:
            assert before[:-1] == after
            assert state.log[-1].action is Action.BACKSPACE
        else:
            assert after == before
