import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from entangled_rates.rates import (
    AtomConfig,
    Geometry,
    GeometryKind,
    rate,
    rate_cavity,
    rate_free,
    rate_mirror,
)
from entangled_rates.states import allowed_transitions, channel

SG = channel("s", "g", 2.0)
AG = channel("a", "g", 2.0)
LAM = math.pi  # wavelength for omega0 = 2


def test_free_examples():
    assert rate_free(SG, AtomConfig(0.0, 0.0)).total == pytest.approx(2 / math.pi, rel=1e-15)
    assert rate_free(AG, AtomConfig(0.0, 0.0)).total == pytest.approx(0.0, abs=1e-16)
    for cfg in (AtomConfig(0.0, 0.0), AtomConfig(1.0, 3.0)):
        assert rate_free(channel("g", "s", 2.0), cfg).total == 0.0


def test_mirror_examples():
    for d in (0.0, 0.2, 1.0, 17.3):
        assert abs(rate_mirror(AG, AtomConfig(d, d)).total) <= 1e-15
    far = rate_mirror(SG, AtomConfig(1e9, 1e9)).total
    assert far == pytest.approx(2 / math.pi, rel=1e-8)
    d = math.pi / 4
    bd = rate_mirror(SG, AtomConfig(d, d))
    # sinc(4 d) = sin(pi)/pi = 0, so every term equals 1/pi
    assert bd.total == pytest.approx(2 / math.pi, rel=1e-14)


def test_cavity_examples():
    for L in (7.0, 15.0, 23.0):
        for d in (0.0, 1.3, L / 3, L / 2):
            assert abs(rate_cavity(SG, AtomConfig(d, L - d), L).total) <= 1e-12
            assert abs(rate_cavity(AG, AtomConfig(d, d), L).total) <= 1e-12
    assert rate_cavity(SG, AtomConfig(0.0, 2.3), 7.0).total > 1e-3


def test_dispatch():
    cfg = AtomConfig(1.1, 2.9)
    assert rate(SG, cfg, Geometry.free()) == rate_free(SG, cfg)
    assert rate(AG, cfg, Geometry.mirror()) == rate_mirror(AG, cfg)
    assert rate(SG, cfg, Geometry.cavity(7)) == rate_cavity(SG, cfg, 7.0)
    assert Geometry("cavity", 3.0).kind is GeometryKind.CAVITY


def test_domain_errors():
    with pytest.raises(ValueError):
        Geometry.cavity(0.0)
    with pytest.raises(ValueError):
        rate_mirror(SG, AtomConfig(-1.0, 1.0))
    with pytest.raises(ValueError):
        rate_cavity(SG, AtomConfig(1.0, 8.0), 7.0)


def test_nonnegativity_random():
    rng = np.random.default_rng(2024)
    n = 10_000
    for ch in allowed_transitions(2.0):
        d1 = rng.uniform(0, 20, n)
        d2 = rng.uniform(0, 20, n)
        assert np.all(rate_free(ch, AtomConfig(d1, d2)).total >= -1e-12)
        assert np.all(rate_mirror(ch, AtomConfig(d1, d2)).total >= -1e-12)
        for L in (1.0, 7.0, 15.0, 23.0, 40.3):
            u1 = rng.uniform(0, L, n)
            u2 = rng.uniform(0, L, n)
            assert np.all(rate_cavity(ch, AtomConfig(u1, u2), L).total >= -1e-12)


@pytest.mark.parametrize("n", [0, 1, 2])
def test_interference_law(n):
    asym = 1 / math.pi
    q1 = AtomConfig(0.0, (n + 0.25) * LAM)
    q3 = AtomConfig(0.0, (n + 0.75) * LAM)
    assert rate_free(SG, q1).total > asym > rate_free(SG, q3).total
    assert rate_free(AG, q1).total < asym < rate_free(AG, q3).total


@given(st.floats(0.05, 500.0))
def test_large_separation_envelope(d):
    asym = 1 / math.pi
    for ch in (SG, AG):
        assert abs(rate_free(ch, AtomConfig(0.0, d)).total - asym) <= asym / (2.0 * d) * (1 + 1e-12)


@given(st.floats(0, 50), st.floats(0, 50))
def test_free_depends_only_on_separation(a, b):
    x = rate_free(SG, AtomConfig(a, b)).total
    y = rate_free(SG, AtomConfig(0.0, abs(a - b))).total
    assert x == pytest.approx(y, abs=1e-15)


@given(st.floats(0, 30), st.floats(0.2, 5.0))
def test_mirror_pair_matches_free_pair_with_image(d, w0):
    # Atoms sharing a spot next to the mirror decay from |s> like a free
    # antisymmetric pair at the image separation 2d (twice over).
    sg = channel("s", "g", w0)
    ag = channel("a", "g", w0)
    mirror = rate_mirror(sg, AtomConfig(d, d)).total
    free = rate_free(ag, AtomConfig(0.0, 2 * d)).total
    assert mirror == pytest.approx(2 * free, abs=1e-12)


@settings(max_examples=200)
@given(st.sampled_from([7.0, 15.0, 23.0, 4.4]), st.floats(0, 1), st.floats(0, 1))
def test_cavity_relabel_and_reflection(L, u, v):
    d1, d2 = u * L, v * L
    for ch in (SG, AG):
        a = rate_cavity(ch, AtomConfig(d1, d2), L).total
        b = rate_cavity(ch, AtomConfig(d2, d1), L).total
        assert a == pytest.approx(b, abs=1e-14)
    sg = rate_cavity(SG, AtomConfig(d1, d2), L).total
    assert sg == pytest.approx(rate_cavity(AG, AtomConfig(d1, L - d2), L).total, abs=1e-12)


@given(st.floats(0.1, 5.0), st.floats(0.1, 5.0))
def test_wide_cavity_tends_to_mirror(d1, d2):
    L = 2.0e4 + 0.123
    for ch in (SG, AG):
        cav = rate_cavity(ch, AtomConfig(d1, d2), L).total
        mir = rate_mirror(ch, AtomConfig(d1, d2)).total
        assert abs(cav - mir) <= 1e-3 * 2.0


def test_cavity_resonance_flag():
    L = 3 * math.pi / 2  # |dw| L / pi = 3
    assert rate_cavity(SG, AtomConfig(1.0, 2.0), L).resonant
    assert not rate_cavity(SG, AtomConfig(1.0, 2.0), 7.0).resonant


def test_breakdown_broadcasts():
    d = np.linspace(0, 7, 11)
    bd = rate_cavity(SG, AtomConfig(d, 7 - d), 7.0)
    assert bd.total.shape == (11,)
    assert np.all(np.abs(bd.total) <= 1e-12)
    assert set(bd.as_dict()) == {"self1", "self2", "cross", "total"}


def test_upward_channels_vanish_everywhere():
    up = channel("g", "a", 2.0)
    for geom, cfg in ((Geometry.free(), AtomConfig(0, 1)), (Geometry.mirror(), AtomConfig(1, 1)), (Geometry.cavity(7), AtomConfig(2, 3))):
        assert rate(up, cfg, geom).as_dict() == {"self1": 0.0, "self2": 0.0, "cross": 0.0, "total": 0.0}
