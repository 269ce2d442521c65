import math
from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thermomimo.capacity import (
    LinkSpec,
    capacity_bounds,
    degenerate_capacity,
    noise_sink_rate,
    shannon_capacity,
    thermo_capacity,
)
from thermomimo.exceptions import DomainError, ValidationError

from conftest import make_branch


def link_from_ratios(x, d, bandwidth=1.0, gains=None):
    """Link whose branches have SNR ratios ``x`` and DOF ratios ``d``."""
    branches = tuple(
        make_branch(signal_power=xi * 1e-13, fec_power=0.0, noise_power=1e-13,
                    signal_dof=di * 10.0, fec_dof=0.0, noise_dof=10.0)
        for xi, di in zip(x, d)
    )
    n = len(branches)
    return LinkSpec(bandwidth, 1e-7, branches, n_t=max(n, 8), n_r=n, gains=gains)


# -- Shannon ------------------------------------------------------------------

@pytest.mark.parametrize("b, lam, rho, expected", [
    (20e6, [1], [1], 2e7),
    (20e6, [0, 0, 0], [5, 1, 9], 0.0),
    (20e6, [1, 1, 1, 1], [3, 3, 3, 3], 1.6e8),
    (1.0, [2.0], [0.75], math.log2(4.0)),
])
def test_shannon_capacity(b, lam, rho, expected):
    assert shannon_capacity(b, lam, rho) == pytest.approx(expected, rel=1e-12, abs=0)


def test_shannon_capacity_validation():
    with pytest.raises(ValidationError):
        shannon_capacity(1.0, [1, 1], [1])
    with pytest.raises(ValidationError):
        shannon_capacity(1.0, [], [])
    with pytest.raises(ValidationError):
        shannon_capacity(1.0, [-1], [1])


# -- noise sink rate ------------------------------------------------------------

def test_noise_sink_rate():
    assert noise_sink_rate(1e6, 1e-6) == pytest.approx(1 / math.log(2), rel=1e-12)
    # 20 / ln 2
    assert noise_sink_rate(20e6, 1e-6) == pytest.approx(28.85390081777926814719849362, rel=1e-12)
    assert noise_sink_rate(20e6, 2e-6) == pytest.approx(2 * noise_sink_rate(20e6, 1e-6), rel=1e-15)
    with pytest.raises(DomainError):
        noise_sink_rate(0.0, 1.0)
    with pytest.raises(DomainError):
        noise_sink_rate(1.0, -1.0)


# -- thermo capacity ----------------------------------------------------------

def test_thermo_capacity_single_branch():
    link = link_from_ratios([3.0], [1.0], bandwidth=20e6)
    result = thermo_capacity(link)
    assert result.thermo_capacity == pytest.approx(2e7, rel=1e-12)
    assert result.per_branch_terms[0] == pytest.approx((4e7, 2e7), rel=1e-12)
    assert result.warnings == ()


def test_thermo_capacity_cancels_when_ratios_match():
    link = link_from_ratios([0.5, 2.0, 7.0], [0.5, 2.0, 7.0], bandwidth=20e6)
    assert thermo_capacity(link).thermo_capacity == pytest.approx(0.0, abs=1e-6)


def test_thermo_capacity_large_noise_dof_degenerates():
    link = link_from_ratios([3.0, 1.5, 0.2, 9.0], [1.0, 2.0, 0.5, 4.0], bandwidth=20e6)
    branches = tuple(replace(b, noise_dof=1e12 * b.transmit_dof) for b in link.branches)
    big = replace(link, branches=branches)
    assert thermo_capacity(big).thermo_capacity == pytest.approx(degenerate_capacity(big), rel=1e-9)


def test_infinite_noise_dof_equals_shannon_exactly():
    link = link_from_ratios([3.0, 1.5, 0.2, 9.0], [1.0, 2.0, 0.5, 4.0], bandwidth=20e6)
    branches = tuple(replace(b, noise_dof=math.inf) for b in link.branches)
    result = thermo_capacity(replace(link, branches=branches))
    assert result.thermo_capacity == result.shannon_reference


def test_negative_capacity_warns_and_optionally_clamps():
    link = link_from_ratios([1.0, 3.0], [3.0, 0.0], bandwidth=1.0)
    raw = thermo_capacity(link)
    assert raw.thermo_capacity == pytest.approx(-1.0 + 2.0, rel=1e-12)
    assert len(raw.warnings) == 1 and "branch 0" in raw.warnings[0]
    clamped = thermo_capacity(link, clamp_negative=True)
    assert clamped.thermo_capacity == pytest.approx(2.0, rel=1e-12)
    assert "clamped" in clamped.warnings[0]


def test_thermo_capacity_equals_sum_of_terms(rng):
    for _ in range(100):
        n = int(rng.integers(1, 9))
        link = link_from_ratios(rng.uniform(0, 50, n), rng.uniform(0, 5, n), bandwidth=rng.uniform(1, 1e8))
        r = thermo_capacity(link)
        assert r.thermo_capacity == pytest.approx(sum(s - d for s, d in r.per_branch_terms), rel=1e-12, abs=1e-6)


def test_linkspec_validation():
    b = make_branch()
    with pytest.raises(ValidationError):
        LinkSpec(1.0, 1.0, (b, b), n_t=4, n_r=1)
    with pytest.raises(ValidationError):
        LinkSpec(1.0, 1.0, (), n_t=4, n_r=1)
    with pytest.raises(DomainError):
        LinkSpec(0.0, 1.0, (b,), n_t=4, n_r=1)
    with pytest.raises(ValidationError):
        LinkSpec(1.0, 1.0, (b,), n_t=4, n_r=1, gains=(1.0, 2.0))


# -- degenerate capacity ------------------------------------------------------

def test_degenerate_capacity_examples():
    assert degenerate_capacity(link_from_ratios([1.0], [1.0], 20e6)) == pytest.approx(2e7, rel=1e-12)
    assert degenerate_capacity(link_from_ratios([0.0, 0.0], [1.0, 1.0], 20e6)) == 0.0
    assert degenerate_capacity(link_from_ratios([3.0] * 4, [1.0] * 4, 20e6)) == pytest.approx(1.6e8, rel=1e-12)


def test_degenerate_capacity_is_shannon_with_unit_gains(rng):
    for _ in range(50):
        n = int(rng.integers(1, 9))
        x = rng.uniform(0, 100, n)
        link = link_from_ratios(x, rng.uniform(0, 5, n), bandwidth=20e6)
        ratios = [b.transmit_power / b.noise_power for b in link.branches]
        assert degenerate_capacity(link) == shannon_capacity(20e6, [1.0] * n, ratios)


def test_gains_scale_snr():
    link = link_from_ratios([3.0], [1.0], bandwidth=1.0, gains=(2.0,))
    assert degenerate_capacity(link) == pytest.approx(math.log2(13.0), rel=1e-12)


# -- bounds ---------------------------------------------------------------------

def test_bounds_tight_for_single_branch(rng):
    for _ in range(50):
        link = link_from_ratios(rng.uniform(0, 50, 1), rng.uniform(0, 5, 1), bandwidth=rng.uniform(1, 1e8))
        r = thermo_capacity(link)
        assert r.lower_bound == pytest.approx(r.thermo_capacity, rel=1e-12, abs=1e-9)
        assert r.upper_bound == pytest.approx(r.thermo_capacity, rel=1e-12, abs=1e-9)


def test_bounds_hand_example():
    link = link_from_ratios([3.0, 3.0], [1.0, 1.0])
    lo, hi = capacity_bounds(link)
    r = thermo_capacity(link)
    assert r.thermo_capacity == pytest.approx(2.0, rel=1e-12)
    # log2(10) - 2 log2(3)
    assert lo == pytest.approx(0.152003093445049984962841541594, rel=1e-12)
    assert hi == pytest.approx(3.0, rel=1e-12)


def test_bounds_log_domain_for_many_branches():
    link = link_from_ratios([1e4] * 128, [1e3] * 128)
    r = thermo_capacity(link)
    assert all(math.isfinite(v) for v in (r.lower_bound, r.upper_bound))
    assert any("log domain" in w for w in r.warnings)
    # log2(1 + 1e4**128) ~ 128 * log2(1e4)
    assert r.lower_bound == pytest.approx(128 * math.log2(1e4) - 128 * math.log2(1 + 128e3), rel=1e-12)
    assert r.lower_bound <= r.thermo_capacity <= r.upper_bound


ratio = st.floats(1e-3, 1e3)


@given(st.integers(1, 8).flatmap(lambda n: st.tuples(
    st.lists(ratio, min_size=n, max_size=n), st.lists(ratio, min_size=n, max_size=n))),
    st.floats(1.0, 1e9))
@settings(max_examples=500, deadline=None)
def test_sandwich_property(ratios, bandwidth):
    x, d = ratios
    r = thermo_capacity(link_from_ratios(x, d, bandwidth))
    slack = 1e-12 * bandwidth * (1 + sum(math.log2(1 + v) for v in x + d))
    assert r.lower_bound <= r.thermo_capacity + slack
    assert r.thermo_capacity <= r.upper_bound + slack


def test_capacity_scales_linearly_with_bandwidth(rng):
    x, d = rng.uniform(0, 20, 4), rng.uniform(0, 3, 4)
    a = thermo_capacity(link_from_ratios(x, d, 1.0))
    b = thermo_capacity(link_from_ratios(x, d, 37.5))
    for attr in ("thermo_capacity", "lower_bound", "upper_bound", "shannon_reference"):
        assert getattr(b, attr) == pytest.approx(37.5 * getattr(a, attr), rel=1e-12, abs=1e-9)


def test_capacity_monotone_in_signal_power_and_signal_dof(rng):
    for _ in range(50):
        link = link_from_ratios(rng.uniform(0.1, 20, 3), rng.uniform(0.1, 3, 3), 1.0)
        base = thermo_capacity(link).thermo_capacity
        i = int(rng.integers(0, 3))
        b = link.branches[i]
        more_s = list(link.branches)
        more_s[i] = replace(b, signal_power=b.signal_power * 1.5)
        more_m = list(link.branches)
        more_m[i] = replace(b, signal_dof=b.signal_dof * 1.5)
        assert thermo_capacity(replace(link, branches=tuple(more_s))).thermo_capacity > base
        assert thermo_capacity(replace(link, branches=tuple(more_m))).thermo_capacity < base


def test_degeneration_gap_shrinks_monotonically(rng):
    link = link_from_ratios(rng.uniform(0.1, 20, 4), rng.uniform(0.1, 3, 4), 1.0)
    gaps = []
    for scale in np.logspace(0, 8, 17):
        branches = tuple(replace(b, noise_dof=b.noise_dof * scale) for b in link.branches)
        spec = replace(link, branches=branches)
        gaps.append(abs(thermo_capacity(spec).thermo_capacity - degenerate_capacity(spec)))
    assert all(b < a for a, b in zip(gaps, gaps[1:]))
    assert gaps[-1] < 1e-6
