"""Randomized invariants over the whole model space."""

import math

from hypothesis import given, settings
from hypothesis import strategies as st

from gha.hartree import (
    OscillatorModel,
    Phase,
    gap_residual_scale,
    general_gap_residuals,
    hamiltonian_polynomial,
    solve_level,
)
from gha.hipt import second_order
from gha.ladder import ModeParameters, expectation
from gha.vacuum import vacuum_structure

powers = st.sampled_from([4, 6, 8])
log_couplings = st.floats(min_value=-3.0, max_value=3.0, allow_nan=False)
log_stiffness = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False)
levels = st.integers(min_value=0, max_value=25)


@settings(max_examples=60, deadline=None)
@given(powers, log_stiffness, log_couplings, levels)
def test_solved_frequency_kills_the_gap_polynomial(power, lg, ll, n):
    model = OscillatorModel(power=power, g=10.0**lg, lam=10.0**ll)
    sol = solve_level(model, n)
    gap, shift = general_gap_residuals(model, n, sol.omega, sol.sigma)
    assert abs(gap) <= 1e-9 * gap_residual_scale(model, n, Phase.AHO)
    assert shift == 0.0


@settings(max_examples=40, deadline=None)
@given(powers, log_stiffness, log_couplings, st.integers(min_value=0, max_value=12))
def test_variational_energy_is_the_expectation(power, lg, ll, n):
    model = OscillatorModel(power=power, g=10.0**lg, lam=10.0**ll)
    sol = solve_level(model, n)
    mode = ModeParameters(omega=sol.omega, sigma=sol.sigma)
    mean = expectation(hamiltonian_polynomial(model, mode), n)
    assert abs(mean - sol.energy) <= 1e-9 * max(1.0, abs(sol.energy))


@settings(max_examples=40, deadline=None)
@given(powers, log_stiffness, log_couplings, st.integers(min_value=0, max_value=20))
def test_levels_are_ordered(power, lg, ll, n):
    model = OscillatorModel(power=power, g=10.0**lg, lam=10.0**ll)
    assert solve_level(model, n + 1).energy > solve_level(model, n).energy


@settings(max_examples=40, deadline=None)
@given(powers, log_stiffness, log_couplings)
def test_second_order_lowers_the_ground_state(power, lg, ll):
    model = OscillatorModel(power=power, g=10.0**lg, lam=10.0**ll)
    assert second_order(model, 0).delta_e2 < 0.0


@settings(max_examples=80, deadline=None)
@given(st.floats(min_value=-3.0, max_value=3.0, allow_nan=False))
def test_vacuum_pairing_identity(lw):
    v = vacuum_structure(10.0**lw)
    # n0 = sinh²α and u = tanh α for one squeeze parameter α
    assert abs(v.n0 - math.sinh(v.alpha) ** 2) <= 1e-12 * max(1.0, v.n0)
    assert abs(v.u - math.tanh(v.alpha)) <= 1e-12


@settings(max_examples=30, deadline=None)
@given(st.floats(min_value=0.011, max_value=5.0, allow_nan=False), levels)
def test_double_well_phases_cover_the_coupling_axis(lam, n):
    model = OscillatorModel(power=4, g=-1.0, lam=lam)
    sol = solve_level(model, n)
    assert sol.phase in (Phase.DWO_SR, Phase.DWO_SSB)
    if sol.branches:
        # when both phases solve, the reported one is the lower
        assert sol.energy == min(b.energy for b in sol.branches)
