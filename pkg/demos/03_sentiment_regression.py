"""
Stock returns and public-interest series
=========================================

Regress daily stock returns on the log level of a sentiment index such as
search interest, tweet counts or poll shares, optionally with commodity
controls.  Inputs are CSV snapshots aligned on their common trading days.
"""

import numpy as np

from eventreg import align, log_levels, log_returns, parse_csv_series
from eventreg.inference import sentiment_regression
from eventreg.series_store import render_csv
from eventreg.synthlab import SynthScenario, generate_panel, price_panel

# Build a price file and a separate sentiment file with gaps, as real
# snapshots would have.
scenario = SynthScenario(
    seed=5,
    assets=("Brazil",),
    control_loadings={"WTI": 0.1},
    sentiment_loadings={"Trends": 0.004},
)
prices = price_panel(scenario, generate_panel(scenario))
price_csv = render_csv(prices.select(["Brazil", "WTI"]))
trends = prices.select(["Trends"])
trends_csv = render_csv(trends.take(np.arange(len(trends)) % 7 != 3))

# Parse, transform and align.  Returns lose their first date, and the
# sentiment file lacks every seventh day, so the intersection is shorter.
brazil = log_returns(parse_csv_series(price_csv, "Brazil"))
wti = log_returns(parse_csv_series(price_csv, "WTI"))
sentiment = log_levels(parse_csv_series(trends_csv, "Trends"))
panel = align([brazil, wti, sentiment])
print(len(panel), "common days; dropped per series:", panel.dropped)

y, x = panel.column("Brazil"), panel.column("Trends")
for controls in (None, {"WTI": panel.column("WTI")}):
    res = sentiment_regression(y, x, controls, sentiment_name="Trends")
    print({n: round(float(c), 5) for n, c in zip(res.names, res.coefficients)}, "p(Trends) =", round(res.pvalue("Trends"), 4))
