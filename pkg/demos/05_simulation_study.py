"""End-to-end desk-scale study: simulate, replay, evaluate.

Seven synthetic participants dial eight ten-digit numbers with each
technique. The noise model is seeded, so the whole study is reproducible
bit-for-bit. Expect the single-digit technique to come out faster; at
default noise the error comparison usually stays inconclusive, mirroring
the human study's direction.
"""

from fbt import (
    EntryMode,
    NoiseModel,
    ScreenGeometry,
    build_layout,
    evaluate,
    simulate,
)
from fbt.harness import report_to_dict

geometry = ScreenGeometry(480, 800)
single = build_layout(geometry, EntryMode.SINGLE_DIGIT)
double = build_layout(geometry, EntryMode.DOUBLE_DIGIT)
noise = NoiseModel(seed=2026)

sessions = simulate(7, 8, noise, EntryMode.SINGLE_DIGIT, single)
sessions += simulate(7, 8, noise, EntryMode.DOUBLE_DIGIT, double)
report = evaluate(sessions)

for summary in report.summaries:
    wpm_mean, wpm_sd = summary.wpm_mean_sd
    dur_mean, dur_sd = summary.duration_mean_sd
    print(f"{summary.technique.value:6s}: "
          f"speed {wpm_mean:5.2f} wpm (sd {wpm_sd:4.2f}), "
          f"duration {dur_mean:6.2f} s (sd {dur_sd:5.2f}), "
          f"{summary.complete_trials}/{summary.trials} complete, "
          f"errors per participant {summary.errors_by_participant}")

print(f"\nspeed ANOVA:    F{report.anova_wpm.df} = {report.anova_wpm.statistic:.2f}, "
      f"p = {report.anova_wpm.p_value:.4f}")
print(f"duration ANOVA: F{report.anova_duration.df} = {report.anova_duration.statistic:.2f}, "
      f"p = {report.anova_duration.p_value:.4f}")
print(f"error Mann-Whitney: U = {report.mann_whitney_errors.statistic}, "
      f"p = {report.mann_whitney_errors.p_value:.3f}")

# The full report, with the inputs of every test, serializes to JSON:
doc = report_to_dict(report)
print("\nreport sections:", ", ".join(doc.keys()))
print("speed test provenance:", doc["tests"]["anova_wpm"]["inputs"]["single"][:3], "...")
