"""
Market model and cumulative abnormal returns
=============================================

Fit the single-index market model on a pre-event estimation window, then
measure abnormal returns and their running sum around day 0.
"""

import numpy as np

from eventreg import frame
from eventreg.inference import event_sample
from eventreg.synthlab import SynthScenario, generate_panel

# A synthetic panel: one asset that tracks a benchmark with beta 1.3 and
# loses one percent a day on the five trading days after the event.
scenario = SynthScenario(seed=11, injected_effect=-0.01)
panel = generate_panel(scenario)
print(panel.names, len(panel), "trading days")

# Attach event-relative offsets.  Day 0 must be a trading date in the panel.
framed = frame(panel, scenario.event_date)
spec = scenario.event_spec
print("estimation window", spec.estimation_window, "event window", spec.event_window)

# The market model is fitted on the estimation window only.
sample = event_sample(framed, "asset", "benchmark", spec)
fit = sample.fit
print(f"alpha_hat = {fit.alpha_hat:.6f} (se {fit.alpha_se:.6f})")
print(f"beta_hat  = {fit.beta_hat:.6f} (se {fit.beta_se:.6f})")

# Abnormal returns over the event window and the running CAR.
cars = sample.event_car(spec)
for off, ar, run in zip(cars.offsets, cars.ars, cars.running):
    print(f"day {off:+d}: AR {ar:+.5f}  CAR {run:+.5f}")

# CARs over sub-windows add up.
print("CAR[+1, +5] =", round(cars.car(1, 5), 6))
print("CAR[-5, 0] + CAR[+1, +5] - CAR[-5, +5] =",
      cars.car(-5, 0) + cars.car(1, 5) - cars.car(-5, 5))
np.testing.assert_allclose(cars.car(-5, 5), cars.running[-1])
