"""Key actions and entry modes shared by the layout and entry engines."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class EntryMode(Enum):
    SINGLE_DIGIT = "single"
    DOUBLE_DIGIT = "double"


class Action(Enum):
    """Non-digit key actions."""

    BACKSPACE = "backspace"
    ENTER = "enter"
    CALL = "call"
    CONTACTS = "contacts"
    UNASSIGNED = "unassigned"


# The five digit pairs carried by double-digit keys, in key order.
DIGIT_PAIRS: tuple[tuple[int, int], ...] = ((1, 2), (3, 4), (5, 6), (7, 8), (9, 0))


@dataclass(frozen=True)
class Digit:
    """A single committed digit 0-9."""

    value: int

    def __post_init__(self) -> None:
        if not 0 <= self.value <= 9:
            raise ValueError(f"digit out of range: {self.value}")


@dataclass(frozen=True)
class DigitPair:
    """A double-digit key: the first press selects `first`, the second `second`."""

    first: int
    second: int

    def __post_init__(self) -> None:
        if (self.first, self.second) not in DIGIT_PAIRS:
            raise ValueError(f"not a valid digit pair: ({self.first}, {self.second})")


KeyAction = Digit | DigitPair | Action


def parse_key_action(text: str) -> KeyAction:
    """Parse the serialized form used in layout files ("digit:4", "pair:1:2", "call", ...)."""
    if text.startswith("digit:"):
        return Digit(int(text.split(":", 1)[1]))
    if text.startswith("pair:"):
        _, a, b = text.split(":")
        return DigitPair(int(a), int(b))
    try:
        return Action(text)
    except ValueError:
        raise ValueError(f"unknown key action: {text!r}") from None


def format_key_action(action: KeyAction) -> str:
    if isinstance(action, Digit):
        return f"digit:{action.value}"
    if isinstance(action, DigitPair):
        return f"pair:{action.first}:{action.second}"
    return action.value
