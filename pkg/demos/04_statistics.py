"""The statistical toolkit on study-sized samples.

Two groups of six participant means are enough to reproduce the reported
speed comparison; the error analysis calls for a rank test because error
counts are nowhere near normal.
"""

import math

from fbt import anova_oneway, mann_whitney_u, mean_sd, shapiro_wilk


def group_with(mean, sd, n=6):
    """Rebuild a group from its published summary statistics."""
    base = [float(2 * i - (n - 1)) for i in range(n)]
    scale = math.sqrt(sum(b * b for b in base) / (n - 1))
    return [mean + sd * b / scale for b in base]


single_wpm = group_with(3.26, 0.784)
double_wpm = group_with(1.92, 1.00)
print("single-technique speeds:", [round(v, 3) for v in single_wpm])
print("  mean/sd:", tuple(round(v, 3) for v in mean_sd(single_wpm)))
print("double-technique speeds:", [round(v, 3) for v in double_wpm])
print("  mean/sd:", tuple(round(v, 3) for v in mean_sd(double_wpm)))

for label, sample in (("single", single_wpm), ("double", double_wpm)):
    sw = shapiro_wilk(sample)
    print(f"normality ({label}): W={sw.statistic:.3f} p={sw.p_value:.3f}")

speed = anova_oneway([single_wpm, double_wpm])
print(f"\nspeed ANOVA: F{speed.df} = {speed.statistic:.3f}, p = {speed.p_value:.3f}, "
      f"significant at 0.05: {speed.reject_at_05}")

duration = anova_oneway([group_with(35.00, 9.67), group_with(68.50, 37.45)])
print(f"duration ANOVA: F{duration.df} = {duration.statistic:.3f}, "
      f"p = {duration.p_value:.3f}")

# Error counts: mostly zeros, so compare ranks instead of means. With seven
# participants per technique and U = 12 the difference is not significant.
errors_single = [0, 0, 0, 0, 0, 1, 2]
errors_double = [0, 0, 1, 1, 2, 3, 4]
u = mann_whitney_u(errors_single, errors_double)
print(f"\nerror-count Mann-Whitney: U = {u.statistic}, exact p = {u.p_value:.3f}")

u_cohort = mann_whitney_u([1, 2, 3, 4, 5, 11, 14], [6, 7, 8, 9, 10, 12, 13])
print(f"tie-free cohort with U = 12: exact p = {u_cohort.p_value:.4f}")
