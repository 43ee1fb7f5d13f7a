"""
Result tables with significance stars
======================================

Lay regression results out as one column per asset and one block per
event definition, then render them as markdown, CSV or JSON.
"""

from eventreg import frame, regression_table, render_table
from eventreg.inference import event_dummy_regression
from eventreg.reporting import Cell, cell_text, parse_structured, significance_stars
from eventreg.synthlab import SynthScenario, generate_panel

# The star rule uses strict inequalities at 1%, 5% and 10%.
for p in (0.0004, 0.0339, 0.0707, 0.2451):
    print(p, repr(significance_stars(p)), cell_text(Cell(-0.09762, p)))

scenario = SynthScenario(seed=8, assets=("Brazil", "Russia", "India"))
framed = frame(generate_panel(scenario), scenario.event_date)
spec = scenario.event_spec

results = {
    asset: {
        "Event day [0 ; 0]": event_dummy_regression(framed, asset, "benchmark", spec, {0}),
        "Event window [+1; +5]": event_dummy_regression(framed, asset, "benchmark", spec, range(1, 6)),
    }
    for asset in scenario.assets
}
table = regression_table("Event impact on abnormal returns", results)
print(render_table(table, "markdown"))
print(render_table(table, "csv"))

# The JSON rendering keeps full precision and parses back to the same table.
assert parse_structured(render_table(table, "structured")) == table
