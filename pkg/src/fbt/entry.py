"""Dialing state machines for single- and double-digit entry.

Both machines consume taps and emit spoken-feedback events; no tap is ever
silent, since the user cannot see the screen. In single-digit mode each
region press commits one digit. In double-digit mode a digit-pair press
latches a pending digit (repeat presses cycle within the pair) and the
enter key commits it, mirroring "press once for the first digit, twice for
the second, then enter".

`step` is a pure transition: it returns a new state plus the feedback
events, so sessions can be replayed or run concurrently without shared
mutable state.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

from fbt.keys import Action, Digit, DigitPair, EntryMode, KeyAction
from fbt.layout import CANONICAL_KEYMAPS, LayoutSpec, RegionId, hit_test


class EntryError(Exception):
    """Base class for entry-engine errors."""


class SessionTerminatedError(EntryError):
    """A tap arrived after the call key ended the session."""


class ModeMismatchError(EntryError):
    """The layout's mode differs from the session's mode."""


class NonMonotoneTimestampError(EntryError):
    """A tap's timestamp went backwards within the session."""


class UnmappableDigitError(EntryError):
    """The requested digit has no region in the given mode."""


DIGIT_WORDS = (
    "zero", "one", "two", "three", "four",
    "five", "six", "seven", "eight", "nine",
)


class FeedbackKind(Enum):
    DIGIT = "digit"          # a digit was committed to the buffer
    PENDING = "pending"      # a digit is latched, awaiting enter
    ACTION = "action"        # a non-digit key took effect
    ERROR = "error"          # a mistake was made
    UNASSIGNED = "unassigned"  # the tap hit dead space or an unassigned key


@dataclass(frozen=True)
class FeedbackEvent:
    kind: FeedbackKind
    utterance: str
    detail: str = ""

    def __post_init__(self) -> None:
        if not self.utterance:
            raise ValueError("utterance must be non-empty")


def _digit_feedback(d: int) -> FeedbackEvent:
    return FeedbackEvent(FeedbackKind.DIGIT, DIGIT_WORDS[d], detail=str(d))


def _pending_feedback(d: int) -> FeedbackEvent:
    return FeedbackEvent(FeedbackKind.PENDING, DIGIT_WORDS[d], detail=str(d))


def _action_feedback(name: str, utterance: str | None = None) -> FeedbackEvent:
    return FeedbackEvent(FeedbackKind.ACTION, utterance or name, detail=name)


def _error_feedback(reason: str, utterance: str) -> FeedbackEvent:
    return FeedbackEvent(FeedbackKind.ERROR, utterance, detail=reason)


_UNASSIGNED_FEEDBACK = FeedbackEvent(FeedbackKind.UNASSIGNED, "nothing there")


@dataclass(frozen=True)
class TapEvent:
    """A single touch at screen point (x, y), `t` milliseconds into the session."""

    x: float
    y: float
    t: float

    def __post_init__(self) -> None:
        if self.t < 0:
            raise ValueError("tap timestamp must be non-negative")

    @property
    def point(self) -> tuple[float, float]:
        return (self.x, self.y)


@dataclass(frozen=True)
class PendingDigit:
    """Double-digit latch: `selected` alternates within the region's pair."""

    region: RegionId
    selected: int
    press_count: int


@dataclass(frozen=True)
class LogEntry:
    tap: TapEvent
    region: RegionId | None
    action: KeyAction


@dataclass(frozen=True)
class EntryState:
    mode: EntryMode
    buffer: str = ""
    pending: PendingDigit | None = None
    log: tuple[LogEntry, ...] = ()
    terminated: bool = False


def new_session(mode: EntryMode) -> EntryState:
    return EntryState(mode=mode)


def step(
    state: EntryState, layout: LayoutSpec, tap: TapEvent
) -> tuple[EntryState, tuple[FeedbackEvent, ...]]:
    """Apply one tap and return the successor state plus feedback events."""
    if state.terminated:
        raise SessionTerminatedError("session already ended by the call key")
    if layout.mode is not state.mode:
        raise ModeMismatchError(f"layout is {layout.mode.value}, session is {state.mode.value}")
    if state.log and tap.t < state.log[-1].tap.t:
        raise NonMonotoneTimestampError(
            f"tap at t={tap.t} before previous tap at t={state.log[-1].tap.t}"
        )

    region = hit_test(layout, tap.point)
    action: KeyAction = Action.UNASSIGNED if region is None else layout.keymap[region]

    if state.mode is EntryMode.SINGLE_DIGIT:
        next_state, events = _step_single(state, action)
    else:
        next_state, events = _step_double(state, region, action)

    next_state = replace(next_state, log=state.log + (LogEntry(tap, region, action),))
    return next_state, events


def _step_single(
    state: EntryState, action: KeyAction
) -> tuple[EntryState, tuple[FeedbackEvent, ...]]:
    match action:
        case Digit(value=d):
            return replace(state, buffer=state.buffer + str(d)), (_digit_feedback(d),)
        case Action.BACKSPACE:
            if state.buffer:
                return replace(state, buffer=state.buffer[:-1]), (_action_feedback("backspace"),)
            return state, (_error_feedback("empty", "nothing to delete"),)
        case Action.CALL:
            return replace(state, terminated=True), (_action_feedback("call", "calling"),)
        case _:
            # Dead space, unassigned keys, and any action foreign to this
            # mode (enter, contacts, digit pairs) are announced no-ops.
            return state, (_UNASSIGNED_FEEDBACK,)


def _step_double(
    state: EntryState, region: RegionId | None, action: KeyAction
) -> tuple[EntryState, tuple[FeedbackEvent, ...]]:
    pending = state.pending
    match action:
        case DigitPair(first=a, second=b):
            assert region is not None
            if pending is None or pending.region is not region:
                events: tuple[FeedbackEvent, ...] = (_pending_feedback(a),)
                if pending is not None:
                    events = (
                        _error_feedback("pending replaced", "changed key"),
                        _pending_feedback(a),
                    )
                return replace(state, pending=PendingDigit(region, a, 1)), events
            # Repeat press on the same key: cycle within the pair.
            count = pending.press_count + 1
            selected = a if count % 2 == 1 else b
            return (
                replace(state, pending=PendingDigit(region, selected, count)),
                (_pending_feedback(selected),),
            )
        case Digit(value=d):
            # Not part of the canonical double keymap, but a keymap may
            # carry plain digit keys; they commit directly.
            return replace(state, buffer=state.buffer + str(d)), (_digit_feedback(d),)
        case Action.ENTER:
            if pending is None:
                return state, (_error_feedback("nothing to enter", "nothing to enter"),)
            return (
                replace(state, buffer=state.buffer + str(pending.selected), pending=None),
                (_digit_feedback(pending.selected),),
            )
        case Action.BACKSPACE:
            if pending is not None:
                return replace(state, pending=None), (
                    _action_feedback("pending cleared", "cleared"),
                )
            if state.buffer:
                return replace(state, buffer=state.buffer[:-1]), (_action_feedback("backspace"),)
            return state, (_error_feedback("empty", "nothing to delete"),)
        case Action.CONTACTS:
            return state, (_action_feedback("contacts"),)
        case Action.CALL:
            return replace(state, terminated=True, pending=None), (
                _action_feedback("call", "calling"),
            )
        case _:
            return state, (_UNASSIGNED_FEEDBACK,)


def canonical_press_sequence(number: str, mode: EntryMode) -> list[RegionId]:
    """The minimal tap sequence that transcribes `number` without errors.

    Single-digit mode taps one region per digit. Double-digit mode taps a
    pair key once or twice to latch the digit and then the enter key to
    commit it. The call key is not included; transcription and termination
    are separate concerns.
    """
    if not number:
        raise ValueError("number must be non-empty")
    if not number.isdigit():
        raise ValueError(f"number must contain digits only: {number!r}")

    keymap = CANONICAL_KEYMAPS[mode]
    presses: list[RegionId] = []
    if mode is EntryMode.SINGLE_DIGIT:
        region_of = {
            act.value: rid for rid, act in keymap.items() if isinstance(act, Digit)
        }
        for ch in number:
            d = int(ch)
            if d not in region_of:
                raise UnmappableDigitError(f"digit {d} has no single-digit region")
            presses.append(region_of[d])
    else:
        enter = next(rid for rid, act in keymap.items() if act is Action.ENTER)
        pair_of: dict[int, tuple[RegionId, int]] = {}
        for rid, act in keymap.items():
            if isinstance(act, DigitPair):
                pair_of[act.first] = (rid, 1)
                pair_of[act.second] = (rid, 2)
        for ch in number:
            d = int(ch)
            if d not in pair_of:
                raise UnmappableDigitError(f"digit {d} has no double-digit key")
            rid, presses_needed = pair_of[d]
            presses.extend([rid] * presses_needed)
            presses.append(enter)
    return presses
