import math

import pytest

from noisebudget import (
    MAX_STAGES,
    CascadeNetwork,
    NoiseFactor,
    StageSpec,
    ValidationError,
    ensure_valid,
    validate,
)


def test_valid_network_has_no_violations():
    net = CascadeNetwork(100.0, 1.0, [StageSpec(10.0, 0.0, 10.0)])
    assert validate(net) == []


def test_stages_are_stored_as_a_tuple():
    net = CascadeNetwork(1.0, 1.0, [StageSpec(2.0)])
    assert isinstance(net.stages, tuple)
    assert len(net) == 1


def test_stage_noise_defaults_to_zero():
    stage = StageSpec(3.0)
    assert stage.internal_noise == 0.0
    assert stage.external_noise == 0.0


def test_amplitude_gain_squares_to_power_gain():
    assert StageSpec(power_gain=4.0).amplitude_gain == 2.0


def test_empty_stage_list_rejected():
    messages = validate(CascadeNetwork(100.0, 1.0, ()))
    assert any("n >= 1" in m for m in messages)


def test_zero_input_noise_rejected():
    messages = validate(CascadeNetwork(100.0, 0.0, [StageSpec(10.0)]))
    assert any("input_noise" in m for m in messages)


def test_all_violations_reported_in_one_pass():
    net = CascadeNetwork(-1.0, 0.0, [StageSpec(0.0, -1.0, -2.0)])
    messages = validate(net)
    # bad signal, bad noise, bad gain, two bad stage noises
    assert len(messages) == 5
    assert any(m.startswith("stage 1") for m in messages)


def test_nonfinite_values_rejected():
    net = CascadeNetwork(math.inf, 1.0, [StageSpec(10.0, math.nan, 0.0)])
    assert len(validate(net)) == 2


def test_stage_count_cap():
    net = CascadeNetwork(1.0, 1.0, [StageSpec(1.0)] * (MAX_STAGES + 1))
    assert any("maximum" in m for m in validate(net))


def test_longest_allowed_chain_is_valid():
    net = CascadeNetwork(1.0, 1.0, [StageSpec(1.0)] * MAX_STAGES)
    assert validate(net) == []


def test_ensure_valid_raises_with_violation_list():
    net = CascadeNetwork(1.0, 1.0, [StageSpec(-2.0)])
    with pytest.raises(ValidationError) as err:
        ensure_valid(net)
    assert err.value.violations
    assert "power_gain" in str(err.value)


def test_ensure_valid_accepts_good_networks():
    ensure_valid(CascadeNetwork(1.0, 1.0, [StageSpec(1.0)]))


def test_noise_factor_behaves_as_a_float():
    f = NoiseFactor(2.0)
    assert f * f == 4.0
    assert isinstance(f, float)


def test_noise_factor_figure_db():
    assert math.isclose(NoiseFactor(2.0).figure_db, 3.010299956639812, rel_tol=1e-15)
    assert NoiseFactor(1.0).figure_db == 0.0
