"""Per-trial text-entry measures: entry speed, duration, errors, corrections."""

from __future__ import annotations

from dataclasses import dataclass

from fbt.keys import Action, Digit, DigitPair
from fbt.entry import LogEntry


class MetricsError(Exception):
    pass


class NonPositiveDurationError(MetricsError):
    pass


class EmptyTranscriptionError(MetricsError):
    pass


@dataclass(frozen=True)
class Trial:
    """One dialing task: the target number, what was entered, and how."""

    presented: str
    transcribed: str
    start_time: float  # ms, first tap
    end_time: float    # ms, call tap (or last tap if never completed)
    log: tuple[LogEntry, ...]

    def __post_init__(self) -> None:
        if self.end_time < self.start_time:
            raise ValueError("end_time must not precede start_time")
        if self.transcribed and not self.transcribed.isdigit():
            raise ValueError("transcribed text must contain digits only")


@dataclass(frozen=True)
class TrialResult:
    wpm: float
    duration_seconds: float
    error_count: int
    correction_count: int
    complete: bool


def wpm(transcribed_length: int, seconds: float) -> float:
    """Entry speed in words per minute: ((|T| - 1) / S) * 60 * (1/5).

    The conventional five-characters-per-word constant is kept for digit
    entry so results compare directly with text-entry studies.
    """
    if transcribed_length < 1:
        raise EmptyTranscriptionError("transcribed length must be at least 1")
    if seconds <= 0:
        raise NonPositiveDurationError("duration must be positive")
    return (transcribed_length - 1) / seconds * 60.0 * (1.0 / 5.0)


def error_count(presented: str, transcribed: str) -> int:
    """Minimal string distance between presented and transcribed numbers.

    Unit-cost Levenshtein distance; this counts the digits that remain wrong
    after any corrections the user made.
    """
    if not presented:
        raise ValueError("presented number must be non-empty")
    prev = list(range(len(transcribed) + 1))
    for i, p in enumerate(presented, start=1):
        cur = [i]
        for j, t in enumerate(transcribed, start=1):
            cost = 0 if p == t else 1
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost))
        prev = cur
    return prev[-1]


def correction_count(log: tuple[LogEntry, ...] | list[LogEntry]) -> int:
    """Count backspaces that removed a committed digit.

    Backspaces that only cleared a pending double-digit selection, or hit an
    already-empty buffer, are not corrections.
    """
    corrections = 0
    depth = 0
    pending = False
    for entry in log:
        match entry.action:
            case DigitPair():
                pending = True
            case Digit():
                depth += 1
            case Action.ENTER:
                if pending:
                    depth += 1
                    pending = False
            case Action.BACKSPACE:
                if pending:
                    pending = False
                elif depth > 0:
                    depth -= 1
                    corrections += 1
            case Action.CALL:
                pending = False
            case _:
                pass
    return corrections


def score_trial(trial: Trial) -> TrialResult:
    """Compute all per-trial measures.

    Duration runs from the first tap to the call tap; a trial that never
    reached the call key is incomplete and its duration runs to the last
    tap instead. A trial is complete when the call key was pressed and the
    transcription has the presented length.
    """
    call_time = None
    for entry in trial.log:
        if entry.action is Action.CALL:
            call_time = entry.tap.t
            break
    terminated = call_time is not None

    if trial.log:
        first = trial.log[0].tap.t
        last = call_time if terminated else trial.log[-1].tap.t
        duration_s = (last - first) / 1000.0
    else:
        duration_s = 0.0

    if len(trial.transcribed) >= 1 and duration_s > 0:
        speed = wpm(len(trial.transcribed), duration_s)
    else:
        speed = 0.0

    return TrialResult(
        wpm=speed,
        duration_seconds=duration_s,
        error_count=error_count(trial.presented, trial.transcribed),
        correction_count=correction_count(trial.log),
        complete=terminated and len(trial.transcribed) == len(trial.presented),
    )
