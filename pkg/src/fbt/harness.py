"""Trace replay, synthetic participants, and the end-to-end evaluation pipeline.

A session is one participant dialing a list of presented numbers with one
technique; its tap traces replay deterministically through the entry engine.
The simulator stands in for human participants: it perturbs canonical press
sequences with a seeded noise model, so off-target taps and their downstream
transcription errors arise naturally through hit testing. `evaluate` then
reproduces the analysis pipeline: per-participant aggregation, normality
checks, ANOVA on speed and duration, and a Mann-Whitney test on error
counts.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from fbt.entry import (
    EntryError,
    TapEvent,
    canonical_press_sequence,
    new_session,
    step,
)
from fbt.keys import Action, EntryMode
from fbt.layout import LayoutError, LayoutSpec
from fbt.metrics import Trial, TrialResult, score_trial
from fbt.stats import TestResult, anova_oneway, mann_whitney_u, mean_sd, shapiro_wilk


class HarnessError(Exception):
    pass


class TraceParseError(HarnessError):
    """A trace file is malformed; the message carries field diagnostics."""


class InsufficientDataError(HarnessError):
    pass


class ReplayError(HarnessError):
    """An engine error surfaced while replaying; annotated with the trial index."""

    def __init__(self, trial_index: int, cause: Exception):
        super().__init__(f"trial {trial_index}: {cause}")
        self.trial_index = trial_index


@dataclass(frozen=True)
class TrialSpec:
    """One presented number and the tap trace that answered it."""

    presented: str
    taps: tuple[TapEvent, ...]

    def __post_init__(self) -> None:
        if not self.presented.isdigit():
            raise ValueError("presented number must be digits only")


@dataclass(frozen=True)
class Session:
    participant_id: str
    technique: EntryMode
    layout: LayoutSpec
    trials: tuple[TrialSpec, ...]
    preference: str | None = None


@dataclass(frozen=True)
class ReplayedTrial:
    trial: Trial
    result: TrialResult


@dataclass(frozen=True)
class LatencySpec:
    """Log-normal latency: median milliseconds and the sigma of the log."""

    median_ms: float
    sigma: float

    def __post_init__(self) -> None:
        if self.median_ms < 0 or self.sigma < 0:
            raise ValueError("latency parameters must be non-negative")

    def sample(self, rng: np.random.Generator) -> float:
        return self.median_ms * math.exp(rng.normal(0.0, self.sigma))


@dataclass(frozen=True)
class NoiseModel:
    """Synthetic-participant model: spatial scatter plus per-tap latencies.

    `tap_sigma` is the standard deviation of a symmetric 2-D Gaussian around
    the intended region center. `decision_latency` is added before enter
    presses and before repeat presses of the same key, where the user has to
    track the announced pending digit. Everything is deterministic given
    `seed`.
    """

    tap_sigma: float = 16.0
    tap_latency: LatencySpec = field(default_factory=lambda: LatencySpec(2800.0, 0.35))
    decision_latency: LatencySpec = field(default_factory=lambda: LatencySpec(900.0, 0.4))
    seed: int = 0

    def __post_init__(self) -> None:
        if self.tap_sigma < 0:
            raise ValueError("tap_sigma must be non-negative")


# Presented numbers in the spirit of the study: ten digits, easy to keep in
# mind, jointly covering every digit.
DEFAULT_NUMBERS: tuple[str, ...] = (
    "0123456789",
    "9876543210",
    "0112233445",
    "5566778899",
    "0246813579",
    "1357902468",
    "0101010101",
    "1234567890",
)


def replay_trials(session: Session) -> list[ReplayedTrial]:
    """Feed every trace tap-by-tap through the entry engine and score it."""
    replayed = []
    for idx, spec in enumerate(session.trials):
        state = new_session(session.technique)
        try:
            for tap in spec.taps:
                state, _ = step(state, session.layout, tap)
        except (EntryError, LayoutError) as exc:
            raise ReplayError(idx, exc) from exc

        call_times = [e.tap.t for e in state.log if e.action is Action.CALL]
        if state.log:
            start = state.log[0].tap.t
            end = call_times[0] if call_times else state.log[-1].tap.t
        else:
            start = end = 0.0
        trial = Trial(
            presented=spec.presented,
            transcribed=state.buffer,
            start_time=start,
            end_time=end,
            log=state.log,
        )
        replayed.append(ReplayedTrial(trial, score_trial(trial)))
    return replayed


def replay(session: Session) -> list[TrialResult]:
    return [rt.result for rt in replay_trials(session)]


def _synthesize_trace(
    rng: np.random.Generator,
    noise: NoiseModel,
    layout: LayoutSpec,
    number: str,
) -> tuple[TapEvent, ...]:
    regions = canonical_press_sequence(number, layout.mode)
    regions.append(layout.region_for_action(Action.CALL))
    enter_region = None
    if layout.mode is EntryMode.DOUBLE_DIGIT:
        enter_region = layout.region_for_action(Action.ENTER)

    taps = []
    t = 0.0
    previous = None
    w, h = layout.geometry.width, layout.geometry.height
    for rid in regions:
        dt = noise.tap_latency.sample(rng)
        if rid is enter_region or rid is previous:
            dt += noise.decision_latency.sample(rng)
        t += dt
        cx, cy = layout.center_of(rid)
        dx, dy = rng.normal(0.0, noise.tap_sigma, size=2)
        x = min(max(cx + dx, 0.0), w)
        y = min(max(cy + dy, 0.0), h)
        taps.append(TapEvent(x=x, y=y, t=t))
        previous = rid
    return tuple(taps)


def simulate(
    participants: int,
    trials_per_participant: int,
    noise: NoiseModel,
    technique: EntryMode,
    layout: LayoutSpec,
    numbers: Sequence[str] = DEFAULT_NUMBERS,
) -> list[Session]:
    """Generate seeded synthetic sessions, one per participant."""
    if participants < 1 or trials_per_participant < 1:
        raise ValueError("participant and trial counts must be at least 1")
    if layout.mode is not technique:
        raise ValueError("layout mode must match the simulated technique")
    if not numbers:
        raise ValueError("at least one presented number is required")
    for num in numbers:
        if not num or not num.isdigit():
            raise ValueError(f"presented numbers must be digits only: {num!r}")

    seeds = np.random.SeedSequence(noise.seed).spawn(participants)
    sessions = []
    for p_idx in range(participants):
        rng = np.random.default_rng(seeds[p_idx])
        trials = tuple(
            TrialSpec(
                presented=numbers[t_idx % len(numbers)],
                taps=_synthesize_trace(rng, noise, layout, numbers[t_idx % len(numbers)]),
            )
            for t_idx in range(trials_per_participant)
        )
        sessions.append(
            Session(
                participant_id=f"P{p_idx + 1:02d}",
                technique=technique,
                layout=layout,
                trials=trials,
            )
        )
    return sessions


# --- evaluation -------------------------------------------------------------

@dataclass(frozen=True)
class TechniqueSummary:
    technique: EntryMode
    participants: int
    trials: int
    complete_trials: int
    wpm_by_participant: tuple[float, ...]
    duration_by_participant: tuple[float, ...]
    errors_by_participant: tuple[float, ...]
    corrections_total: int
    wpm_mean_sd: tuple[float, float] | None
    duration_mean_sd: tuple[float, float] | None
    errors_mean_sd: tuple[float, float] | None
    shapiro_wpm: TestResult | None
    shapiro_duration: TestResult | None


@dataclass(frozen=True)
class EvaluationReport:
    summaries: tuple[TechniqueSummary, TechniqueSummary]
    anova_wpm: TestResult
    anova_duration: TestResult
    mann_whitney_errors: TestResult
    preference_tally: dict[str, int]


def _mean(values: Sequence[float]) -> float:
    return sum(values) / len(values)


def _summarize_technique(
    technique: EntryMode,
    sessions: list[Session],
    include_incomplete: bool,
) -> TechniqueSummary:
    wpm_means: list[float] = []
    duration_means: list[float] = []
    error_totals: list[float] = []
    trials = complete = corrections = 0
    for session in sorted(sessions, key=lambda s: s.participant_id):
        results = replay(session)
        trials += len(results)
        complete += sum(r.complete for r in results)
        corrections += sum(r.correction_count for r in results)
        scored = results if include_incomplete else [r for r in results if r.complete]
        if scored:
            wpm_means.append(_mean([r.wpm for r in scored]))
            duration_means.append(_mean([r.duration_seconds for r in scored]))
        error_totals.append(float(sum(r.error_count for r in results)))

    def try_mean_sd(values: list[float]) -> tuple[float, float] | None:
        return mean_sd(values) if len(values) >= 2 else None

    def try_shapiro(values: list[float]) -> TestResult | None:
        if len(values) < 3:
            return None
        try:
            return shapiro_wilk(values)
        except Exception:
            return None

    return TechniqueSummary(
        technique=technique,
        participants=len(sessions),
        trials=trials,
        complete_trials=complete,
        wpm_by_participant=tuple(wpm_means),
        duration_by_participant=tuple(duration_means),
        errors_by_participant=tuple(error_totals),
        corrections_total=corrections,
        wpm_mean_sd=try_mean_sd(wpm_means),
        duration_mean_sd=try_mean_sd(duration_means),
        errors_mean_sd=try_mean_sd(error_totals),
        shapiro_wpm=try_shapiro(wpm_means),
        shapiro_duration=try_shapiro(duration_means),
    )


def evaluate(
    sessions: Iterable[Session], include_incomplete: bool = False
) -> EvaluationReport:
    """Compare two techniques: ANOVA on speed and duration, Mann-Whitney on errors.

    Participant means are the analysis unit. Incomplete trials are excluded
    from the speed and duration aggregates unless `include_incomplete`; error
    counts always cover all trials.
    """
    by_technique: dict[EntryMode, list[Session]] = {}
    preference_tally: dict[str, int] = {}
    for session in sessions:
        by_technique.setdefault(session.technique, []).append(session)
        if session.preference:
            preference_tally[session.preference] = (
                preference_tally.get(session.preference, 0) + 1
            )

    if len(by_technique) != 2:
        raise InsufficientDataError(
            f"exactly two techniques required, got {len(by_technique)}"
        )
    for mode, group in by_technique.items():
        if len(group) < 2:
            raise InsufficientDataError(
                f"technique {mode.value} needs at least 2 sessions, got {len(group)}"
            )

    modes = sorted(by_technique, key=lambda m: m.value, reverse=True)  # single first
    summaries = tuple(
        _summarize_technique(mode, by_technique[mode], include_incomplete)
        for mode in modes
    )
    wpm_groups = [s.wpm_by_participant for s in summaries]
    duration_groups = [s.duration_by_participant for s in summaries]
    if any(len(g) < 2 for g in wpm_groups):
        raise InsufficientDataError(
            "too few participants with scored trials for the speed comparison"
        )

    return EvaluationReport(
        summaries=summaries,  # type: ignore[arg-type]
        anova_wpm=anova_oneway(wpm_groups),
        anova_duration=anova_oneway(duration_groups),
        mann_whitney_errors=mann_whitney_u(
            summaries[0].errors_by_participant, summaries[1].errors_by_participant
        ),
        preference_tally=preference_tally,
    )


# --- file formats -----------------------------------------------------------

def session_to_dict(session: Session, layout_ref: str = "") -> dict:
    doc = {
        "participant_id": session.participant_id,
        "technique": session.technique.value,
        "layout_ref": layout_ref,
        "trials": [
            {
                "presented": spec.presented,
                "taps": [{"x": tap.x, "y": tap.y, "t": tap.t} for tap in spec.taps],
            }
            for spec in session.trials
        ],
    }
    if session.preference is not None:
        doc["preference"] = session.preference
    return doc


def save_trace(session: Session, path: str | Path, layout_ref: str = "") -> None:
    Path(path).write_text(json.dumps(session_to_dict(session, layout_ref), indent=2) + "\n")


def session_from_dict(doc: dict, layout: LayoutSpec) -> Session:
    try:
        technique = EntryMode(doc["technique"])
        trials = []
        for t_idx, tdoc in enumerate(doc["trials"]):
            taps = tuple(
                TapEvent(x=float(tap["x"]), y=float(tap["y"]), t=float(tap["t"]))
                for tap in tdoc["taps"]
            )
            trials.append(TrialSpec(presented=str(tdoc["presented"]), taps=taps))
        return Session(
            participant_id=str(doc["participant_id"]),
            technique=technique,
            layout=layout,
            trials=tuple(trials),
            preference=doc.get("preference"),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise TraceParseError(f"malformed trace document: {exc}") from exc


def load_trace(path: str | Path, layout: LayoutSpec) -> Session:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise TraceParseError(f"invalid JSON in {path}: line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise TraceParseError(f"trace file {path} must contain a JSON object")
    return session_from_dict(doc, layout)


RESULTS_CSV_HEADER = (
    "participant",
    "technique",
    "trial",
    "P",
    "T",
    "S",
    "wpm",
    "errors",
    "corrections",
    "complete",
)


def write_results_csv(sessions: Sequence[Session], path: str | Path) -> None:
    """One row per trial, in (participant, technique, trial) order."""
    ordered = sorted(sessions, key=lambda s: (s.participant_id, s.technique.value))
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(RESULTS_CSV_HEADER)
        for session in ordered:
            for idx, replayed in enumerate(replay_trials(session), start=1):
                trial, result = replayed.trial, replayed.result
                writer.writerow(
                    [
                        session.participant_id,
                        session.technique.value,
                        idx,
                        trial.presented,
                        trial.transcribed,
                        result.duration_seconds,
                        result.wpm,
                        result.error_count,
                        result.correction_count,
                        "true" if result.complete else "false",
                    ]
                )


def _test_result_dict(result: TestResult | None) -> dict | None:
    if result is None:
        return None
    return {
        "statistic": result.statistic,
        "df": list(result.df) if result.df is not None else None,
        "p_value": result.p_value,
        "reject_at_05": result.reject_at_05,
    }


def report_to_dict(report: EvaluationReport) -> dict:
    techniques = {}
    for s in report.summaries:
        techniques[s.technique.value] = {
            "participants": s.participants,
            "trials": s.trials,
            "complete_trials": s.complete_trials,
            "corrections_total": s.corrections_total,
            "wpm": {
                "mean_sd": list(s.wpm_mean_sd) if s.wpm_mean_sd else None,
                "by_participant": list(s.wpm_by_participant),
                "shapiro_wilk": _test_result_dict(s.shapiro_wpm),
            },
            "duration_seconds": {
                "mean_sd": list(s.duration_mean_sd) if s.duration_mean_sd else None,
                "by_participant": list(s.duration_by_participant),
                "shapiro_wilk": _test_result_dict(s.shapiro_duration),
            },
            "errors": {
                "mean_sd": list(s.errors_mean_sd) if s.errors_mean_sd else None,
                "by_participant": list(s.errors_by_participant),
            },
        }
    first, second = report.summaries
    return {
        "techniques": techniques,
        "tests": {
            "anova_wpm": {
                **_test_result_dict(report.anova_wpm),
                "inputs": {
                    first.technique.value: list(first.wpm_by_participant),
                    second.technique.value: list(second.wpm_by_participant),
                },
            },
            "anova_duration": {
                **_test_result_dict(report.anova_duration),
                "inputs": {
                    first.technique.value: list(first.duration_by_participant),
                    second.technique.value: list(second.duration_by_participant),
                },
            },
            "mann_whitney_errors": {
                **_test_result_dict(report.mann_whitney_errors),
                "inputs": {
                    first.technique.value: list(first.errors_by_participant),
                    second.technique.value: list(second.errors_by_participant),
                },
            },
        },
        "preferences": dict(sorted(report.preference_tally.items())),
    }


def write_report(report: EvaluationReport, path: str | Path) -> None:
    Path(path).write_text(json.dumps(report_to_dict(report), indent=2) + "\n")
