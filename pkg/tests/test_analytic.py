"""Closed-form spectra, crossing values, and the large-index limit."""
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sheared_spectra.analytic import (
    ALT_ZERO_SEED_COEFFICIENT,
    Branch,
    Endpoint,
    HalfLineLevel,
    ho_crossings,
    ho_endpoint_spectrum,
    ho_half_line_energy,
    linear_crossings,
    linear_half_line_energy,
    semiclassical_energy,
    table_rows,
)
from sheared_spectra.errors import IndexOutOfRangeError, ShearOutOfRangeError
from sheared_spectra.verification import REFERENCE_CROSSING_TABLE


class TestHarmonicEndpoints:
    def test_symmetric_ground_state(self):
        assert ho_endpoint_spectrum(0, Endpoint.NU_ONE) == 0.5

    def test_hard_wall_ground_state(self):
        assert ho_endpoint_spectrum(0, Endpoint.NU_HALF) == 0.75

    def test_ratio_identity_exact(self):
        for n in range(0, 11):
            ratio = Fraction(ho_endpoint_spectrum(n, Endpoint.NU_HALF)) / Fraction(
                ho_endpoint_spectrum(n, Endpoint.NU_ONE)
            )
            assert ratio == Fraction(2 * (2 * n) + 3, 2 * (2 * n + 1))

    def test_hard_wall_above_symmetric(self):
        for n in range(0, 20):
            assert ho_endpoint_spectrum(n, Endpoint.NU_HALF) > ho_endpoint_spectrum(
                n, Endpoint.NU_ONE
            )


class TestHarmonicHalfLine:
    def test_symmetric_case_recovers_odd_levels(self):
        assert ho_half_line_energy(Branch.RIGHT, 0, 1.0) == pytest.approx(1.5)
        assert ho_half_line_energy(Branch.LEFT, 0, 1.0) == pytest.approx(1.5)

    def test_crossing_shear_gives_symmetric_energy(self):
        # nu_{01} = 5/7: the right k=1 level sits at E_2(1) = 2.5
        e = ho_half_line_energy(Branch.RIGHT, 1, Fraction(5, 7))
        assert e == pytest.approx((5 / 7) * 3.5, rel=1e-15)
        assert e == pytest.approx(2.5, rel=1e-14)

    def test_left_and_right_degenerate_at_crossing(self):
        for n in range(1, 8):
            for ev in ho_crossings(n):
                left = ho_half_line_energy(Branch.LEFT, ev.i, ev.nu)
                right = ho_half_line_energy(Branch.RIGHT, ev.j, ev.nu)
                assert left == pytest.approx(right, rel=1e-13)
                assert left == pytest.approx(ev.energy, rel=1e-13)

    def test_shear_range_enforced(self):
        with pytest.raises(ShearOutOfRangeError):
            ho_half_line_energy(Branch.LEFT, 0, 0.5)

    def test_half_line_level_wrapper(self):
        lvl = HalfLineLevel(Branch.RIGHT, 2, 3.0)
        assert lvl.energy == 3.0
        with pytest.raises(ValueError):
            HalfLineLevel(Branch.LEFT, 0, -1.0)


class TestHarmonicCrossings:
    def test_single_family_for_n_one(self):
        events = ho_crossings(1)
        assert len(events) == 1
        ev = events[0]
        assert (ev.i, ev.j, ev.nu, ev.n) == (0, 0, Fraction(1), 1)
        assert ev.energy == 1.5

    def test_n_four_families(self):
        events = ho_crossings(4)
        assert [(ev.i, ev.j) for ev in events] == [(1, 2), (0, 3)]
        assert [ev.nu for ev in events] == [Fraction(9, 11), Fraction(3, 5)]

    def test_energy_is_symmetric_value_for_all_events(self):
        for n in range(1, 11):
            for ev in ho_crossings(n):
                assert ev.energy == 1.0 * (n + 0.5)
                assert ev.n == ev.i + ev.j + 1

    def test_sorted_by_descending_nu(self):
        for n in range(2, 11):
            nus = [ev.nu for ev in ho_crossings(n)]
            assert nus == sorted(nus, reverse=True)

    def test_rational_identities(self):
        for n in range(1, 31):
            for ev in ho_crossings(n):
                assert ev.nu == Fraction(2 * (ev.i + ev.j) + 3, 4 * ev.j + 3)
                assert 1 - ev.nu == Fraction(2 * (ev.j - ev.i), 4 * ev.j + 3)
                assert Fraction(1, 2) < ev.nu <= 1
                assert (ev.nu == 1) == (ev.i == ev.j)

    @given(n=st.integers(min_value=2, max_value=40))
    @settings(max_examples=30, deadline=None)
    def test_nu_strictly_decreases_with_gap(self, n):
        events = ho_crossings(n)
        for a, b in zip(events, events[1:]):
            assert a.j - a.i < b.j - b.i
            assert a.nu > b.nu

    def test_requires_positive_n(self):
        with pytest.raises(IndexOutOfRangeError):
            ho_crossings(0)


class TestLinearHalfLine:
    def test_symmetric_first_level(self):
        e = linear_half_line_energy(Branch.RIGHT, 1, 1.0)
        assert e == pytest.approx(1.855757081, rel=1e-9)
        assert linear_half_line_energy(Branch.LEFT, 1, 1.0) == pytest.approx(e, rel=1e-15)

    def test_second_level(self):
        assert linear_half_line_energy(Branch.RIGHT, 2, 1.0) == pytest.approx(
            3.244607624, rel=1e-9
        )

    def test_index_and_shear_validation(self):
        with pytest.raises(IndexOutOfRangeError):
            linear_half_line_energy(Branch.RIGHT, 0, 1.0)
        with pytest.raises(ShearOutOfRangeError):
            linear_half_line_energy(Branch.RIGHT, 1, 0.5)


class TestLinearCrossings:
    @pytest.mark.parametrize("row", REFERENCE_CROSSING_TABLE)
    def test_reference_table(self, row):
        s, i, j, nu_ref, e_ref = row
        ev = linear_crossings(i, j)
        assert ev.n == i + j - 1
        assert ev.nu_float == pytest.approx(nu_ref, rel=1e-8)
        assert ev.energy == pytest.approx(e_ref, rel=1e-8)

    def test_full_table_row_order(self):
        rows = table_rows(11)
        assert len(rows) == 30
        assert [(ev.i + ev.j, ev.i, ev.j) for ev in rows] == [
            (s, i, j) for s, i, j, _, _ in REFERENCE_CROSSING_TABLE
        ]

    def test_shear_bounds_and_diag(self):
        for i, j in [(1, 1), (2, 2), (5, 5)]:
            assert linear_crossings(i, j).nu == 1.0
        for i, j in [(1, 2), (2, 5), (3, 9)]:
            ev = linear_crossings(i, j)
            assert 0.5 < ev.nu < 1.0

    def test_crossing_degenerates_half_line_levels(self):
        for i, j in [(1, 2), (2, 4), (3, 5)]:
            ev = linear_crossings(i, j)
            left = linear_half_line_energy(Branch.LEFT, i, ev.nu)
            right = linear_half_line_energy(Branch.RIGHT, j, ev.nu)
            assert left == pytest.approx(right, rel=1e-12)
            assert left == pytest.approx(ev.energy, rel=1e-12)

    def test_index_validation(self):
        with pytest.raises(IndexOutOfRangeError):
            linear_crossings(0, 1)
        with pytest.raises(IndexOutOfRangeError):
            linear_crossings(3, 2)

    @given(
        i=st.integers(min_value=1, max_value=20),
        gap=st.integers(min_value=0, max_value=20),
    )
    @settings(max_examples=60, deadline=None)
    def test_shear_bounds_property(self, i, gap):
        ev = linear_crossings(i, i + gap)
        assert 0.5 < ev.nu <= 1.0
        assert (ev.nu == 1.0) == (gap == 0)
        assert ev.energy > 0.0

    def test_relative_spread_shrinks_with_level(self):
        def rel_spread(total):
            es = [linear_crossings(i, total - i).energy for i in range(1, total // 2 + 1)]
            return (max(es) - min(es)) / min(es)

        # node counts n = 5 and n = 10 correspond to i+j = 6 and 11
        assert rel_spread(6) > rel_spread(11)

    def test_near_degenerate_family_spread(self):
        es = [linear_crossings(i, 6 - i).energy for i in (1, 2, 3)]
        spread = max(es) - min(es)
        assert 2.5e-3 < spread < 2.9e-3


class TestSemiclassical:
    def test_close_to_exact_at_moderate_indices(self):
        exact = linear_crossings(5, 6).energy
        approx = semiclassical_energy(5, 6)
        assert abs(approx - exact) / exact < 3e-3

    def test_small_index_regime_is_loose_but_sane(self):
        exact = linear_crossings(1, 1).energy
        approx = semiclassical_energy(1, 1)
        assert abs(approx - exact) / exact < 0.05

    def test_depends_only_on_index_sum(self):
        assert semiclassical_energy(2, 9) == semiclassical_energy(5, 6)
        assert semiclassical_energy(1, 10) == semiclassical_energy(5, 6)

    def test_prefactor_matches_six_pi_form(self):
        s = 7
        direct = (6.0 * math.pi) ** (2.0 / 3.0) / 8.0 * (2 * s - 1) ** (2.0 / 3.0)
        assert semiclassical_energy(3, 4) == pytest.approx(direct, rel=1e-14)

    def test_alternative_coefficient_is_far_off(self):
        exact = linear_crossings(5, 6).energy
        approx = semiclassical_energy(5, 6, zero_coefficient=ALT_ZERO_SEED_COEFFICIENT)
        assert abs(approx - exact) / exact > 0.20
