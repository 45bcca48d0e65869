import math

import pytest
from hypothesis import given, strategies as st

from entangled_rates.states import (
    CollectiveState,
    MonopolePair,
    TransitionChannel,
    allowed_transitions,
    channel,
    energy,
    monopole_elements,
)

R2 = 1 / math.sqrt(2)
omegas = st.floats(min_value=1e-3, max_value=1e3, allow_nan=False)


@pytest.mark.parametrize(
    "state, omega0, expected",
    [(CollectiveState.GROUND, 2.0, -2.0), (CollectiveState.SYM, 2.0, 0.0), (CollectiveState.EXCITED, 1.0, 1.0)],
)
def test_energy_examples(state, omega0, expected):
    assert energy(state, omega0) == expected


@given(omegas)
def test_energy_ladder(w0):
    assert energy("g", w0) == -w0
    assert energy("a", w0) == energy("s", w0) == 0.0
    assert energy("e", w0) == w0


@pytest.mark.parametrize("bad", [0.0, -1.0])
def test_energy_rejects_nonpositive_gap(bad):
    with pytest.raises(ValueError):
        energy("g", bad)


def test_parse_labels():
    assert CollectiveState.parse("s") is CollectiveState.SYM
    assert CollectiveState.parse(CollectiveState.ANTISYM) is CollectiveState.ANTISYM
    with pytest.raises(ValueError):
        CollectiveState.parse("x")


def test_monopole_examples():
    assert monopole_elements(channel("s", "g")) == pytest.approx(MonopolePair(R2, R2))
    sg = monopole_elements(channel("s", "g"))
    ag = monopole_elements(channel("a", "g"))
    assert (sg.m1, sg.m2) == pytest.approx((R2, R2), abs=1e-15)
    assert (ag.m1, ag.m2) == pytest.approx((R2, -R2), abs=1e-15)
    eg = monopole_elements(channel("e", "g"))
    assert eg.m1 == 0 and eg.m2 == 0 and eg.is_zero


def test_same_state_rejected():
    with pytest.raises(ValueError):
        monopole_elements(channel("s", "s"))


def test_allowed_set():
    labels = {ch.label for ch in allowed_transitions()}
    assert labels == {"es", "ea", "sg", "ag", "se", "ae", "gs", "ga"}
    assert "eg" not in labels and "sa" not in labels


@given(omegas)
def test_allowed_channel_invariants(w0):
    for ch in allowed_transitions(w0):
        mp = monopole_elements(ch)
        assert abs(ch.delta_omega) == pytest.approx(w0, rel=1e-15)
        assert mp.m1**2 + mp.m2**2 == pytest.approx(1.0, abs=1e-14)
        assert abs(mp.m1) <= 1 and abs(mp.m2) <= 1
        assert ch.is_decay == (ch.delta_omega < 0)


def test_exchange_symmetry():
    sg = monopole_elements(channel("s", "g"))
    ag = monopole_elements(channel("a", "g"))
    assert (sg.m1, sg.m2) == (sg.m2, sg.m1)
    assert ag.m1 * ag.m2 == pytest.approx(-sg.m1 * sg.m2)


@given(omegas)
def test_delta_omega_tracks_energies(w0):
    ch = TransitionChannel(CollectiveState.SYM, CollectiveState.GROUND, 1.0).with_omega0(w0)
    assert ch.delta_omega == energy("g", w0) - energy("s", w0)
    assert ch.delta_omega < 0


def test_channel_text():
    ch = channel("a", "g", 2.0)
    assert str(ch) == "a->g"
    assert ch.label == "ag"
    assert ch.wavelength == pytest.approx(math.pi)
    with pytest.raises(ValueError):
        _ = channel("s", "a").wavelength
