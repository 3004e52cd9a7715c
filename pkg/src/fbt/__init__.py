"""Finger-anchored eyes-free touch input: layouts, entry engines, and evaluation."""

from fbt.keys import Action, Digit, DigitPair, EntryMode, KeyAction
from fbt.layout import (
    AnchorSet,
    LayoutSpec,
    RegionId,
    ScreenGeometry,
    build_layout,
    derive_regions,
    hit_test,
    load_layout,
    mirror,
    save_layout,
)
from fbt.entry import (
    EntryState,
    FeedbackEvent,
    FeedbackKind,
    TapEvent,
    canonical_press_sequence,
    new_session,
    step,
)
from fbt.metrics import Trial, TrialResult, correction_count, error_count, score_trial, wpm
from fbt.stats import (
    Sample,
    TestResult,
    anova_oneway,
    mann_whitney_u,
    mean_sd,
    shapiro_wilk,
)
from fbt.harness import (
    DEFAULT_NUMBERS,
    EvaluationReport,
    LatencySpec,
    NoiseModel,
    Session,
    TrialSpec,
    evaluate,
    load_trace,
    replay,
    replay_trials,
    save_trace,
    simulate,
    write_report,
    write_results_csv,
)

__all__ = [
    "Action",
    "AnchorSet",
    "DEFAULT_NUMBERS",
    "Digit",
    "DigitPair",
    "EntryMode",
    "EntryState",
    "EvaluationReport",
    "FeedbackEvent",
    "FeedbackKind",
    "KeyAction",
    "LatencySpec",
    "LayoutSpec",
    "NoiseModel",
    "RegionId",
    "Sample",
    "ScreenGeometry",
    "Session",
    "TapEvent",
    "TestResult",
    "Trial",
    "TrialResult",
    "TrialSpec",
    "anova_oneway",
    "build_layout",
    "canonical_press_sequence",
    "correction_count",
    "derive_regions",
    "error_count",
    "evaluate",
    "hit_test",
    "load_layout",
    "load_trace",
    "mann_whitney_u",
    "mean_sd",
    "mirror",
    "new_session",
    "replay",
    "replay_trials",
    "save_layout",
    "save_trace",
    "score_trial",
    "shapiro_wilk",
    "simulate",
    "step",
    "wpm",
    "write_report",
    "write_results_csv",
]

__version__ = "0.1.0"
