"""How often is the unitary Owen point a core allocation?"""

import sys

from sigames import SimConfig, run_table_experiment

trials = int(sys.argv[1]) if len(sys.argv) > 1 else 2000

# Each trial draws integer demands and costs uniformly from closed ranges,
# seeded by (seed, trial), and counts a success when some optimal grand plan
# yields a unitary Owen point in the core.
for players, periods in [(2, 2), (2, 3), (3, 2)]:
    report = run_table_experiment(SimConfig(players, periods, trials, seed=2026))
    print(f"n={players} T={periods}: {report.percentage:7.3f}%  "
          f"[{100 * report.ci_low:.3f}, {100 * report.ci_high:.3f}]  "
          f"failing trials {report.failures[:5]}")

# Strictly positive ranges remove zero demands and free setups.
report = run_table_experiment(SimConfig.positive(2, 2, trials, seed=2026))
print("\npositive ranges")
print(report.to_markdown())

# Only the canonical plan, rather than every optimal one.
report = run_table_experiment(SimConfig(2, 2, trials, seed=2026, mode="canonical"))
print(f"canonical plans only: {report.percentage:.3f}%")
