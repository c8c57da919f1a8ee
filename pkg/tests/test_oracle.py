import numpy as np
import pytest

from whindex import (
    BlaschkeSpec,
    Polynomial,
    StructureError,
    SymbolPair,
    blaschke_realization,
    full_profile,
    roots_stable,
    schur_cohen_stable,
    winding_number,
)
from whindex.sampling import random_blaschke_spec, random_polynomial_off_axis


def test_winding_degree_gap():
    phi = BlaschkeSpec(1.0, (-1.0, -2.0, -0.5 + 1.0j))
    m = BlaschkeSpec(1.0, (-1.0, -1.5, -0.3 - 0.7j, -2.5, -0.8))
    assert winding_number(phi, m) == -2


def test_winding_of_the_disk_map_itself():
    zeta = BlaschkeSpec(-1.0, (-1.0,))
    one = BlaschkeSpec(1.0, ())
    assert winding_number(zeta, one) == 1


def test_winding_equal_degrees():
    phi = BlaschkeSpec(1.0, (-1.0, -2.0 + 1.0j))
    m = BlaschkeSpec(np.exp(0.3j), (-0.5, -1.1 - 0.4j))
    assert winding_number(phi, m) == 0


def test_winding_law_random_sweep():
    rng = np.random.default_rng(51)
    for _ in range(25):
        phi = random_blaschke_spec(rng, int(rng.integers(0, 7)))
        m = random_blaschke_spec(rng, int(rng.integers(0, 7)))
        assert winding_number(phi, m) == phi.degree - m.degree


def test_roots_stable_examples():
    assert roots_stable(Polynomial((1, 1)))
    assert not roots_stable(Polynomial((-1, 1)))
    assert roots_stable(Polynomial((1, 1, 1)))


def test_roots_stable_needs_degree():
    with pytest.raises(StructureError):
        roots_stable(Polynomial((1.0,)))


def test_schur_cohen_examples():
    verdict, lam = schur_cohen_stable(Polynomial((1, 1)))
    assert verdict and lam > 0
    verdict, _ = schur_cohen_stable(Polynomial((-1, 1)))
    assert not verdict
    verdict, lam = schur_cohen_stable(Polynomial((-2, -1, 1)))
    assert not verdict and lam < 0


def test_stability_tests_agree():
    rng = np.random.default_rng(52)
    for _ in range(100):
        p = random_polynomial_off_axis(rng, int(rng.integers(1, 9)))
        assert schur_cohen_stable(p)[0] == roots_stable(p)


def test_pipeline_sum_matches_winding():
    rng = np.random.default_rng(53)
    for _ in range(10):
        phi = random_blaschke_spec(rng, int(rng.integers(0, 5)))
        m = random_blaschke_spec(rng, int(rng.integers(0, 5)))
        pair = SymbolPair(blaschke_realization(phi), blaschke_realization(m))
        assert sum(full_profile(pair).all_indices) == winding_number(phi, m)
