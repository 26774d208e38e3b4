import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from h2landau.operators import Component, FieldConfig
from h2landau.spectra import (
    EnergyKind,
    ExponentVariant,
    allowed_m_interval,
    bound_state_count,
    bound_variant,
    continuum_threshold,
    decoupling_matrices,
    exponent_pair,
    hypergeo_params,
    nonrel_energy,
    nonrel_spectrum,
    relativistic_energy,
    unified_condition,
    unified_condition_absvalue,
)

B5 = FieldConfig(B=5.0)


class TestExponents:
    def test_psi2_v1(self):
        p = exponent_pair(Component.psi2, ExponentVariant.v1, -2, B5)
        assert (p.a, p.c) == (-6.0, 1.0)

    def test_psi1_v4(self):
        p = exponent_pair(Component.psi1, ExponentVariant.v4, 2, B5)
        assert (p.a, p.c) == (-3.5, 0.5)

    def test_psi3_v1_zero_field(self):
        p = exponent_pair(Component.psi3, ExponentVariant.v1, -1, FieldConfig(B=0))
        assert (p.a, p.c) == (-1.0, 0.0)

    @given(m=st.integers(-10, 10), B=st.floats(0.1, 20, allow_nan=False),
           variant=st.sampled_from(list(ExponentVariant)),
           channel=st.sampled_from(list(Component)))
    @settings(max_examples=60)
    def test_parameter_relations(self, m, B, variant, channel):
        cfg = FieldConfig(B=B)
        pair = exponent_pair(channel, variant, m, cfg)
        params = hypergeo_params(channel, variant, m, cfg, X=0.0)
        assert abs(params.gamma - (2 * pair.c + 1)) < 1e-12
        if not params.oscillatory:
            assert abs(params.alpha + params.beta - (2 * (pair.a + pair.c) + 1)) < 1e-10


class TestHypergeoParams:
    def test_ground_level_terminates(self):
        p = hypergeo_params(Component.psi2, ExponentVariant.v1, -2, B5, X=5.0)
        assert p.gamma == 3.0
        assert abs(p.sqrt_arg - 20.25) < 1e-12
        assert abs(p.alpha - 0.0) < 1e-12

    def test_free_state(self):
        p = hypergeo_params(Component.psi2, ExponentVariant.v1, -2, B5, X=0.0)
        assert abs(p.alpha - (-5.0 + 0.5 + math.sqrt(25.25))) < 1e-12

    def test_psi1_gamma(self):
        p = hypergeo_params(Component.psi1, ExponentVariant.v1, -3, B5, X=0.0)
        assert p.gamma == 5.0  # equals -m + 2

    def test_oscillatory_flagged(self):
        p = hypergeo_params(Component.psi2, ExponentVariant.v1, -2, B5, X=100.0)
        assert p.oscillatory
        assert math.isnan(p.alpha) and math.isnan(p.beta)
        assert p.sqrt_arg < 0


class TestNonrelEnergy:
    @pytest.mark.parametrize("channel,m,n,expected", [
        (Component.psi2, -2, 0, 2.5),
        (Component.psi2, 1, 0, 6.5),
        (Component.psi1, -1, 0, 4.0),
        (Component.psi3, -1, 0, 0.0),
    ])
    def test_spot_values(self, channel, m, n, expected):
        assert nonrel_energy(channel, m, n, B5) == pytest.approx(expected, abs=1e-14)

    def test_unbound_returns_none(self):
        assert nonrel_energy(Component.psi2, 7, 0, B5) is None
        assert nonrel_energy(Component.psi2, -2, 5, B5) is None
        assert nonrel_energy(Component.psi2, 0, 0, FieldConfig(B=0)) is None

    def test_negative_n_raises(self):
        with pytest.raises(ValueError):
            nonrel_energy(Component.psi2, 0, -1, B5)

    def test_mirror_map(self):
        cfgneg = FieldConfig(B=-5.0)
        for m in range(-4, 13):
            for n in range(6):
                lhs = nonrel_energy(Component.psi1, m, n, cfgneg)
                rhs = nonrel_energy(Component.psi3, -m, n, B5)
                assert lhs == rhs

    def test_quantization_alpha_is_minus_n(self):
        for channel in Component:
            for m in range(-8, 5):
                for n in range(bound_state_count(channel, m, B5)):
                    eps_m = nonrel_energy(channel, m, n, B5)
                    assert eps_m is not None
                    v = bound_variant(channel, m)
                    p = hypergeo_params(channel, v, m, B5, X=2 * eps_m)
                    assert abs(p.alpha + n) < 1e-12

    def test_monotone_in_n_below_vertex(self):
        for channel in Component:
            for m in (-3, -1, 0, 2):
                values = [nonrel_energy(channel, m, n, B5)
                          for n in range(bound_state_count(channel, m, B5))]
                diffs = np.diff([v for v in values if v is not None])
                vertex = B5.B - 0.5 - max(m, 0)
                # increasing while n stays below the parabola vertex
                for n, d in enumerate(diffs):
                    if n + 1 < vertex:
                        assert d > 0

    def test_levels_below_threshold(self):
        for channel in Component:
            thr = continuum_threshold(channel, B5)
            for m in range(-10, 5):
                for n in range(bound_state_count(channel, m, B5)):
                    eps_m = nonrel_energy(channel, m, n, B5)
                    assert 2 * eps_m < thr

    def test_bound_variant_exponent_invariants(self):
        for B in (0.7, 2.0, 5.0, 10.0):
            cfg = FieldConfig(B=B)
            for channel in Component:
                for m in range(-12, 13):
                    if bound_state_count(channel, m, cfg) == 0:
                        continue
                    pair = exponent_pair(channel, bound_variant(channel, m), m, cfg)
                    assert pair.a < 0
                    assert pair.c >= 0
                    assert 2 * pair.c + 1 >= 1


class TestUnifiedCondition:
    def test_values(self):
        assert unified_condition(Component.psi2, -2, 0, B5) == 4.5
        assert unified_condition(Component.psi2, 1, 0, B5) == 3.5

    def test_absvalue_form_disagrees(self):
        printed = unified_condition_absvalue(Component.psi2, -2, 0, B5)
        assert printed == -7.5
        assert printed != unified_condition(Component.psi2, -2, 0, B5)

    def test_consistent_form_matches_per_case_sqrt(self):
        for channel in Component:
            for m in range(-10, 5):
                for n in range(bound_state_count(channel, m, B5)):
                    eps_m = nonrel_energy(channel, m, n, B5)
                    root = math.sqrt(continuum_threshold(channel, B5) - 2 * eps_m)
                    assert abs(unified_condition(channel, m, n, B5) - root) < 1e-12


class TestAllowedM:
    def test_positive_field(self):
        region = allowed_m_interval(B5)
        assert region.integers(-3, 8) == [-3, -2, -1, 0, 1, 2, 3, 4]

    def test_negative_field(self):
        region = allowed_m_interval(FieldConfig(B=-5.0))
        assert region.integers(-8, 2) == [-4, -3, -2, -1, 0, 1, 2]

    def test_small_field(self):
        region = allowed_m_interval(FieldConfig(B=0.5))
        assert region.integers(-2, 2) == [-2, -1, 0]

    def test_zero_field_empty(self):
        region = allowed_m_interval(FieldConfig(B=0))
        assert region.empty
        assert region.integers(-5, 5) == []


class TestBoundStateCount:
    def test_psi2_m_minus2(self):
        assert bound_state_count(Component.psi2, -2, B5) == 5

    def test_outside_region(self):
        assert bound_state_count(Component.psi2, 7, B5) == 0

    def test_psi3_weak_field(self):
        assert bound_state_count(Component.psi3, -1, FieldConfig(B=0.4)) == 1

    def test_count_matches_energy_availability(self):
        for channel in Component:
            for m in range(-12, 13):
                count = bound_state_count(channel, m, B5)
                assert nonrel_energy(channel, m, count, B5) is None
                if count:
                    assert nonrel_energy(channel, m, count - 1, B5) is not None

    def test_zero_field(self):
        assert bound_state_count(Component.psi2, 0, FieldConfig(B=0)) == 0


class TestDecoupling:
    def test_lambda_with_kappa2(self):
        d = decoupling_matrices(1.0, FieldConfig(B=5.0, M=1.0), kappa=2.0)
        assert (d.lambda1, d.lambda2) == (10.0, -10.0)

    def test_lambda_with_kappa1(self):
        d = decoupling_matrices(1.0, FieldConfig(B=5.0, M=1.0), kappa=1.0)
        assert (d.lambda1, d.lambda2) == (5.0, -5.0)

    def test_field_free_trivial(self):
        d = decoupling_matrices(2.0, FieldConfig(B=0.0, M=1.0), kappa=1.0)
        assert d.lambda1 == 0.0
        assert np.max(np.abs(d.A_mat)) == 0.0

    def test_zero_eps_rejected(self):
        with pytest.raises(ValueError):
            decoupling_matrices(0.0, B5, kappa=1.0)

    def test_similarity_randomized(self):
        rng = np.random.default_rng(20250808)
        for _ in range(100):
            eps = rng.uniform(0.2, 8.0)
            M = rng.uniform(0.2, 5.0)
            B = rng.uniform(-8.0, 8.0)
            kappa = rng.choice([1.0, 2.0])
            d = decoupling_matrices(eps, FieldConfig(B=B, M=M), kappa=kappa)
            assert np.max(np.abs(d.S @ d.S_inv - np.eye(2))) < 1e-13
            diag = d.S @ d.A_mat @ d.S_inv
            target = np.diag([d.lambda1, d.lambda2])
            assert np.max(np.abs(diag - target)) < 1e-12


class TestRelativistic:
    def test_phi2_ground(self):
        eps = relativistic_energy(EnergyKind.rel_phi2, -2, 0, FieldConfig(B=5, M=1), 1.0)
        assert abs(eps - math.sqrt(6.0)) < 1e-14

    def test_nonrelativistic_limit(self):
        M = 50.0
        eps = relativistic_energy(EnergyKind.rel_phi2, -2, 0, FieldConfig(B=5, M=M), 1.0)
        # after rest-energy removal, eps*M - M^2 approaches the eps*M product
        assert abs((eps * M - M * M) - 2.5) / 2.5 < 1e-3

    def test_branches_coincide_at_zero_field(self):
        # X and the branch shift both vanish with B, so compare at B -> 0 via kappa*B = 0
        cfg = FieldConfig(B=5.0, M=1.0)
        e0 = relativistic_energy(EnergyKind.rel_phi2, -2, 0, cfg, kappa=0.0)
        eg = relativistic_energy(EnergyKind.rel_gprime, -2, 0, cfg, kappa=0.0)
        ep = relativistic_energy(EnergyKind.rel_phi0prime, -2, 0, cfg, kappa=0.0)
        assert e0 == eg == ep

    def test_branch_ordering(self):
        cfg = FieldConfig(B=5.0, M=1.0)
        e0 = relativistic_energy(EnergyKind.rel_phi2, -2, 0, cfg, 1.0)
        eg = relativistic_energy(EnergyKind.rel_gprime, -2, 0, cfg, 1.0)
        ep = relativistic_energy(EnergyKind.rel_phi0prime, -2, 0, cfg, 1.0)
        assert ep < e0 < eg

    def test_unbound_returns_none(self):
        assert relativistic_energy(EnergyKind.rel_phi2, 7, 0, B5, 1.0) is None

    def test_nonrel_kind_rejected(self):
        with pytest.raises(ValueError):
            relativistic_energy(EnergyKind.nonrel, -2, 0, B5, 1.0)


class TestSweep:
    def test_row_count_psi2(self):
        entries = nonrel_spectrum(B5, channels=[Component.psi2],
                                  m_values=range(-3, 5), n_max=6)
        per_m = {}
        for e in entries:
            per_m.setdefault(e.m, 0)
            per_m[e.m] += 1
        assert per_m[-2] == 5
        assert 4 not in per_m or per_m[4] == 1

    def test_empty_outside_region(self):
        entries = nonrel_spectrum(B5, m_values=range(7, 10))
        assert entries == []
