import json
import math
import statistics

import numpy as np
import pytest
from fractions import Fraction

from eventreg.errors import ConfigError, NumericalError
from eventreg.market_model import fit_market_model
from eventreg.synthlab import (
    EPOCH,
    SynthScenario,
    Xoshiro256,
    generate_panel,
    load_scenario,
    oracle_ols,
    price_panel,
    solve_full_pivot,
    splitmix64,
    truth_json,
)


def test_splitmix64_reference_output():
    # First output of SplitMix64 from state 0 (reference value of the algorithm).
    assert splitmix64(0)[1] == 0xE220A8397B1DCDAF


def test_xoshiro_stream_is_frozen():
    r = Xoshiro256(0)
    assert [r.next_u64() for _ in range(3)] == [
        0x99EC5F36CB75F2B4,
        0xBF6E1F784956452A,
        0x1A5F849D4933E6E0,
    ]


def test_uniform_range_and_normal_moments():
    r = Xoshiro256(123)
    u = [r.uniform() for _ in range(20000)]
    assert 0.0 <= min(u) and max(u) < 1.0
    z = Xoshiro256(99).normals(40000)
    assert abs(statistics.fmean(z)) < 0.02
    assert abs(statistics.pstdev(z) - 1.0) < 0.02


def test_polar_pairs_share_one_radius():
    r = Xoshiro256(5)
    a, b = r.normal(), r.normal()
    # Replay the uniforms: both variates come from one accepted (u, v) point.
    q = Xoshiro256(5)
    while True:
        u, v = 2 * q.uniform() - 1, 2 * q.uniform() - 1
        s = u * u + v * v
        if 0 < s < 1:
            break
    f = math.sqrt(-2 * math.log(s) / s)
    assert (a, b) == (u * f, v * f)


def test_same_seed_identical_panels():
    sc = SynthScenario(seed=7, control_loadings={"WTI": 0.1})
    assert generate_panel(sc) == generate_panel(sc)
    assert generate_panel(sc) != generate_panel(SynthScenario(seed=8, control_loadings={"WTI": 0.1}))


def test_noiseless_panel_is_exact_affine_plus_injection():
    sc = SynthScenario(seed=3, noise_sd=0.0, injected_effect=-0.01)
    p = generate_panel(sc)
    offs = np.arange(sc.n_days) - sc.day0_row
    shift = np.where((offs >= 1) & (offs <= 5), -0.01, 0.0)
    np.testing.assert_array_equal(p.column("asset"), 0.0005 + 1.3 * p.column("benchmark") + shift)


def test_noiseless_recovery_without_injection():
    sc = SynthScenario(seed=4, noise_sd=0.0, injected_effect=0.0, alpha=0.0007, beta=0.85)
    p = generate_panel(sc)
    fit = fit_market_model(p.column("asset"), p.column("benchmark"))
    assert abs(fit.alpha_hat - 0.0007) <= 1e-12
    assert abs(fit.beta_hat - 0.85) <= 1e-12


def test_calendar_is_consecutive_weekdays():
    p = generate_panel(SynthScenario())
    assert p.dates[0] == EPOCH
    assert all(d.weekday() < 5 for d in p.dates)
    gaps = {(b - a).days for a, b in zip(p.dates, p.dates[1:])}
    assert gaps <= {1, 3}


def test_benchmark_variance_positive_for_many_seeds():
    for seed in range(200):
        assert np.var(generate_panel(SynthScenario(seed=seed)).column("benchmark")) > 0


def test_too_few_days():
    with pytest.raises(ConfigError, match="too small"):
        SynthScenario(n_days=5)


def test_price_panel_round_trips_returns():
    sc = SynthScenario(seed=2, control_loadings={"WTI": 0.2}, sentiment_loadings={"polls": 0.001})
    r = generate_panel(sc)
    prices = price_panel(sc, r)
    assert len(prices) == len(r) + 1
    np.testing.assert_allclose(np.diff(np.log(prices.column("asset"))), r.column("asset"), atol=1e-14)
    np.testing.assert_array_equal(prices.column("polls")[1:], r.column("polls"))


def test_load_scenario_and_truth():
    sc = load_scenario(
        "[scenario]\nseed = 9\nnoise_sd = 0\nassets = A, B\ncontrols = WTI:0.1, GOLD:-0.2\nflagged = 1..5\n"
    )
    assert sc.seed == 9 and sc.assets == ("A", "B")
    assert sc.control_loadings == {"WTI": 0.1, "GOLD": -0.2}
    truth = json.loads(truth_json(sc))
    assert truth["injected_effect"] == -0.01 and truth["flagged"] == [1, 2, 3, 4, 5]
    assert truth["event_date"] == sc.event_date.isoformat()
    with pytest.raises(ConfigError, match="scenario"):
        load_scenario("[other]\nx = 1\n")
    with pytest.raises(ConfigError, match="n_days"):
        load_scenario("[scenario]\nn_days = 5\n")


@pytest.mark.parametrize(
    "X, y, expected",
    [
        ([[1, 0], [1, 1], [1, 2]], [0, 1, 2], [0, 1]),
        ([[1, 0], [1, 1], [1, 2]], [1, 3, 5], [1, 2]),
        ([[1, 0], [1, 1], [1, 2]], [1, 0, 2], [0.5, 0.5]),
    ],
)
def test_oracle_hand_instances(X, y, expected):
    assert list(oracle_ols(np.array(X, float), np.array(y, float))) == expected


def test_oracle_is_exact_on_rationals():
    a = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(3)]]
    b = [Fraction(1), Fraction(2)]
    assert solve_full_pivot(a, b) == [Fraction(1, 5), Fraction(3, 5)]


def test_oracle_full_pivoting_handles_zero_leading_entry():
    a = [[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]]
    assert solve_full_pivot(a, [Fraction(4), Fraction(7)]) == [7, 4]


def test_oracle_rejects_singular():
    with pytest.raises(NumericalError, match="singular"):
        oracle_ols(np.array([[1.0, 2.0], [1.0, 2.0], [1.0, 2.0]]), np.array([1.0, 2.0, 3.0]))
