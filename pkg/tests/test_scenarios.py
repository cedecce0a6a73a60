import math

import pytest

from noisebudget import (
    CascadeNetwork,
    ScenarioConfig,
    StageSpec,
    build_report,
    fig2a_no_noise,
    fig2b_identical_external,
    fig2c_totals,
    fig3_internal_only,
    total_friis_composition,
    total_product_composition,
)


def rel(a: float, b: float, tol: float = 1e-12) -> bool:
    return math.isclose(a, b, rel_tol=tol, abs_tol=0.0)


# ----------------------------------------------------------------- config


def test_config_defaults():
    cfg = ScenarioConfig()
    assert (cfg.n, cfg.gain, cfg.external_noise) == (6, 10.0, 10.0)
    assert (cfg.internal_ratio, cfg.input_noise, cfg.input_signal) == (1.0, 1.0, 100.0)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"n": 0},
        {"n": 2.5},
        {"gain": 0.5},
        {"gain": math.inf},
        {"external_noise": -1.0},
        {"internal_ratio": -0.1},
        {"input_noise": 0.0},
        {"input_signal": -5.0},
    ],
)
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        ScenarioConfig(**kwargs)


def test_config_accepts_integral_floats():
    assert ScenarioConfig(n=4.0).n == 4


# ------------------------------------------------------------- scenarios


def test_no_noise_series_is_all_unity():
    table = fig2a_no_noise()
    assert table.label == "fig2a"
    assert len(table.rows) == 6
    assert table.totals is None
    for row in table.rows:
        assert row.friis == 1.0
        assert row.corrected == 1.0


def test_no_noise_pins_out_config_noise():
    # the scenario is about noiseless stages, so noise settings in the
    # config must not leak in
    noisy = ScenarioConfig(external_noise=50.0, internal_ratio=2.0)
    for row in fig2a_no_noise(noisy).rows:
        assert row.friis == 1.0 and row.corrected == 1.0


def test_external_series_flat_friis_decaying_corrected():
    table = fig2b_identical_external()
    assert table.label == "fig2b"
    friis = [r.friis for r in table.rows]
    corrected = [r.corrected for r in table.rows]
    assert friis == [2.0] * 6
    assert corrected[0] == 2.0
    assert corrected[1] == 1.05
    assert all(a > b for a, b in zip(corrected, corrected[1:]))


def test_external_series_unit_gain_closed_form():
    # with G = 1 and N_ext = N_i the arriving noise after x-1 stages is
    # x * N_i, so the corrected factor is 1 + 1/x
    cfg = ScenarioConfig(gain=1.0, external_noise=1.0, input_noise=1.0)
    table = fig2b_identical_external(cfg)
    for row in table.rows:
        assert rel(row.corrected, 1.0 + 1.0 / row.stage)
        assert row.friis == 2.0


def test_external_series_ignores_internal_ratio():
    a = fig2b_identical_external(ScenarioConfig(internal_ratio=0.0))
    b = fig2b_identical_external(ScenarioConfig(internal_ratio=3.0))
    assert a == b


def test_totals_series_grows_identically_on_both_paths():
    table = fig2c_totals()
    assert table.label == "fig2c"
    assert table.totals is None
    for row in table.rows:
        assert rel(row.friis, row.corrected)
    assert rel(table.rows[0].friis, 2.0)
    assert rel(table.rows[1].friis, 2.1)
    # prefix totals are nondecreasing
    values = [r.friis for r in table.rows]
    assert all(a <= b for a, b in zip(values, values[1:]))


def test_totals_series_unit_gain_closed_form():
    cfg = ScenarioConfig(n=5, gain=1.0, external_noise=1.0, input_noise=1.0)
    for row in fig2c_totals(cfg).rows:
        assert rel(row.friis, 1.0 + row.stage)
        assert rel(row.corrected, 1.0 + row.stage)


def test_internal_series_constant_factors_growing_total():
    table = fig3_internal_only()
    assert table.label == "fig3"
    assert table.totals is not None
    for row in table.rows:
        assert row.friis == 1.0
        assert row.corrected == 1.1
    for m, row in enumerate(table.totals, start=1):
        assert row.friis == 1.0
        assert rel(row.corrected, 1.1**m)
    assert math.isclose(table.totals[-1].corrected, 1.771561, rel_tol=1e-9)


def test_internal_series_zero_ratio_is_trivial():
    table = fig3_internal_only(ScenarioConfig(internal_ratio=0.0))
    for row in table.rows:
        assert row.friis == 1.0 and row.corrected == 1.0
    for row in table.totals:
        assert row.friis == 1.0 and row.corrected == 1.0


def test_internal_series_single_stage_unit_gain():
    cfg = ScenarioConfig(n=1, gain=1.0, internal_ratio=1.0)
    table = fig3_internal_only(cfg)
    assert table.rows[0].corrected == 2.0
    assert table.rows[0].friis == 1.0
    assert table.totals[0].corrected == 2.0


def test_internal_series_ignores_external_noise():
    a = fig3_internal_only(ScenarioConfig(external_noise=0.0))
    b = fig3_internal_only(ScenarioConfig(external_noise=99.0))
    assert a == b


def test_row_counts_follow_n():
    cfg = ScenarioConfig(n=3)
    assert len(fig2a_no_noise(cfg).rows) == 3
    assert len(fig2b_identical_external(cfg).rows) == 3
    assert len(fig2c_totals(cfg).rows) == 3
    table = fig3_internal_only(cfg)
    assert len(table.rows) == 3
    assert len(table.totals) == 3


# --------------------------------------------- reproduction by the engine


def test_external_series_reproduces_engine_rows():
    # rebuild the scenario's network by hand and compare row for row
    cfg = ScenarioConfig()
    net = CascadeNetwork(
        cfg.input_signal,
        cfg.input_noise,
        (StageSpec(cfg.gain, 0.0, cfg.external_noise),) * cfg.n,
    )
    report = build_report(net)
    table = fig2b_identical_external(cfg)
    for got, want in zip(table.rows, report.per_stage):
        assert got.stage == want.stage
        assert got.friis == float(want.friis)
        assert got.corrected == float(want.corrected)


def test_totals_series_reproduces_engine_prefixes():
    cfg = ScenarioConfig(n=4)
    table = fig2c_totals(cfg)
    for m, row in enumerate(table.rows, start=1):
        prefix = CascadeNetwork(
            cfg.input_signal,
            cfg.input_noise,
            (StageSpec(cfg.gain, 0.0, cfg.external_noise),) * m,
        )
        assert row.friis == float(total_friis_composition(prefix))
        assert row.corrected == float(total_product_composition(prefix))


def test_internal_series_reproduces_engine_rows():
    cfg = ScenarioConfig(n=4, gain=10.0, internal_ratio=0.5)
    stages = []
    noise = cfg.input_noise
    for _ in range(cfg.n):
        internal = cfg.internal_ratio * noise
        stages.append(StageSpec(cfg.gain, internal, 0.0))
        noise = noise * cfg.gain + internal
    net = CascadeNetwork(cfg.input_signal, cfg.input_noise, tuple(stages))
    report = build_report(net)
    table = fig3_internal_only(cfg)
    for got, want in zip(table.rows, report.per_stage):
        assert rel(got.corrected, float(want.corrected))
        assert got.friis == float(want.friis)
