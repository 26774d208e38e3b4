import math

import numpy as np
import pytest

from h2landau.operators import Component, FieldConfig, measured_kappa
from h2landau.oracle import (
    Grid,
    companion_coupled_eigenvalues,
    selfadjoint_discretize,
    solve_relativistic_coupled,
    _branch_root,
    _coupled_positive_roots,
)
from h2landau.spectra import EnergyKind, relativistic_energy

CFG = FieldConfig(B=5.0, M=1.0)
GRID = Grid(r_max=28.0, n=800)


@pytest.fixture(scope="module")
def kappa():
    return measured_kappa()


@pytest.fixture(scope="module")
def rel(kappa):
    return solve_relativistic_coupled(-2, CFG, kappa=kappa, grid=GRID,
                                      drift_tol=1e-6)


class TestPhi2Branch:
    def test_ground_level_sqrt6(self, rel):
        assert abs(rel.phi2[0] - math.sqrt(6.0)) < 1e-6

    def test_matches_closed_form_ladder(self, rel, kappa):
        for n, eps in enumerate(rel.phi2[:4]):
            want = relativistic_energy(EnergyKind.rel_phi2, -2, n, CFG, kappa)
            assert abs(eps - want) < 1e-6 * (1 + want)

    def test_nonrelativistic_limit(self, kappa):
        heavy = FieldConfig(B=5.0, M=50.0)
        res = solve_relativistic_coupled(-2, heavy, kappa=kappa, grid=GRID,
                                         drift_tol=1e-6)
        eps = res.phi2[0]
        # rest-energy subtraction recovers the eps*M product of the slot
        assert abs(eps * 50.0 - 2500.0 - 2.5) / 2.5 < 1e-3


class TestCoupledSystem:
    def test_branch_mismatch_tiny(self, rel):
        assert rel.branch_mismatch < 1e-8

    def test_converged(self, rel):
        assert all(rel.converged)

    def test_coupled_matches_exactly_one_kappa_hypothesis(self, rel, kappa):
        # hypothesis spectra: push the independently solved slot values
        # through the shifted quadratics for kappa = 1 and kappa = 2
        M = CFG.M
        x_from_phi2 = rel.phi2 ** 2 - M * M
        mismatches = {}
        for hyp in (1.0, 2.0):
            shift = hyp * CFG.B / M
            union = np.sort(np.concatenate([
                _branch_root(+shift, M, x_from_phi2),
                _branch_root(-shift, M, x_from_phi2)]))
            union = union[union < rel.eps_cut]
            if len(union) != len(rel.coupled):
                mismatches[hyp] = math.inf
            else:
                mismatches[hyp] = float(np.max(np.abs(union - rel.coupled)))
        assert mismatches[1.0] < 1e-6
        assert mismatches[2.0] > 1e-2

    def test_kappa_match_stable_under_refinement(self, kappa):
        finer = solve_relativistic_coupled(-2, CFG, kappa=kappa,
                                           grid=Grid(r_max=28.0, n=1200),
                                           drift_tol=1e-6)
        assert finer.branch_mismatch < 1e-8
        assert np.max(np.abs(finer.coupled - _expected_coupled(finer))) < 1e-6

    def test_zero_coupling_degenerate_pairs(self):
        res = solve_relativistic_coupled(-2, CFG, kappa=0.0, grid=GRID,
                                         drift_tol=1e-6)
        # both branches collapse onto sqrt(M^2 + X): every level appears twice
        assert len(res.coupled) == 2 * len(res.phi2[res.phi2 < res.eps_cut])
        pairs = res.coupled.reshape(-1, 2)
        assert np.max(np.abs(pairs[:, 0] - pairs[:, 1])) < 1e-6

    def test_companion_linearization_cross_check(self, kappa):
        t = selfadjoint_discretize(Component.psi2, -2, CFG,
                                   Grid(r_max=22.0, n=180))
        coupling = kappa * CFG.B / CFG.M
        cut = float(_branch_root(-coupling, CFG.M, t.threshold))
        dense = companion_coupled_eigenvalues(t, CFG, coupling, cut)
        inertia = _coupled_positive_roots(t, CFG, coupling, cut, 1e-11)
        assert len(dense) == len(inertia)
        assert np.max(np.abs(dense - inertia)) < 1e-8


def _expected_coupled(res):
    M = CFG.M
    x = res.phi2 ** 2 - M * M
    shift = res.kappa * CFG.B / M
    union = np.sort(np.concatenate([
        _branch_root(+shift, M, x), _branch_root(-shift, M, x)]))
    return union[union < res.eps_cut][: len(res.coupled)]


def test_field_free_coupled_spectrum_empty():
    res = solve_relativistic_coupled(0, FieldConfig(B=0.0, M=1.0), kappa=1.0,
                                     grid=Grid(r_max=25.0, n=400))
    assert len(res.coupled) == 0
    assert len(res.phi2) == 0
