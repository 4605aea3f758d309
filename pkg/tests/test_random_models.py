import warnings

import numpy as np
import pytest

from warmthlab.errors import GenerationFailed, InvalidParameter
from warmthlab.formats import write_graph6
from warmthlab.graph import complete, cycle, petersen
from warmthlab.random_models import (
    GnpParams,
    codegree_report,
    derive_seed,
    gnp,
    gnp_degrees,
    gnp_seeded,
    random_regular,
    random_regular_seeded,
    rng_for,
    splitmix64,
)
import warmthlab.random_models as rm


def test_splitmix_reference_values():
    # first outputs of the reference generator seeded with 0
    state, out = 0, []
    for _ in range(3):
        out.append(splitmix64(state))
        state = (state + 0x9E3779B97F4A7C15) & ((1 << 64) - 1)
    assert out == [0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F]


def test_seed_derivation_separates_keys():
    seeds = {derive_seed(1, n, t) for n in range(10) for t in range(10)}
    assert len(seeds) == 100
    assert derive_seed(1, 2, 3) != derive_seed(1, 3, 2)


def test_gnp_edge_cases():
    assert gnp(GnpParams(6, p=0.0), 1).edge_count == 0
    assert gnp(GnpParams(6, p=1.0), 1) == complete(6)
    with pytest.raises(InvalidParameter):
        GnpParams(5)
    with pytest.raises(InvalidParameter):
        GnpParams(5, p=0.5, alpha=0.5)
    with pytest.raises(InvalidParameter):
        GnpParams(5, p=1.5)
    assert GnpParams(16, alpha=0.5, mu=2.0).probability == pytest.approx(0.5)


def test_gnp_determinism():
    a = write_graph6(gnp_seeded(GnpParams(30, p=0.5), 42, 0))
    b = write_graph6(gnp_seeded(GnpParams(30, p=0.5), 42, 0))
    c = write_graph6(gnp_seeded(GnpParams(30, p=0.5), 42, 1))
    assert a == b != c


def test_gnp_mean_edge_count():
    counts = [gnp(GnpParams(40, p=0.5), rng_for(7, t)).edge_count for t in range(200)]
    assert abs(np.mean(counts) - 390) < 0.05 * 390


def test_gnp_degrees_large_n():
    deg = gnp_degrees(GnpParams(1000, p=0.01), 5)
    assert deg.sum() % 2 == 0
    assert abs(deg.mean() - 9.99) < 1.0
    with pytest.raises(InvalidParameter):
        gnp_degrees(GnpParams(1025, p=0.1), 5)


def test_random_regular_examples():
    g = random_regular(6, 2, 3)
    assert all(g.degree(v) == 2 for v in range(6))
    assert random_regular(4, 3, 0) == complete(4)
    a = random_regular_seeded(10, 3, 9, 0)
    assert a == random_regular_seeded(10, 3, 9, 0)
    assert all(a.degree(v) == 3 for v in range(10))
    dense = random_regular(12, 8, 1)
    assert all(dense.degree(v) == 8 for v in range(12))
    with pytest.raises(InvalidParameter):
        random_regular(5, 3, 0)
    with pytest.raises(InvalidParameter):
        random_regular(5, 5, 0)


def test_random_regular_is_roughly_uniform():
    # three labeled perfect matchings on 4 vertices, each should appear about 200 times
    counts = {}
    for t in range(600):
        g = random_regular(4, 1, rng_for(11, t))
        counts[write_graph6(g)] = counts.get(write_graph6(g), 0) + 1
    assert len(counts) == 3
    assert all(150 < c < 250 for c in counts.values())


def test_generation_cap(monkeypatch):
    monkeypatch.setattr(rm, "REGULAR_MAX_REDRAWS", 0)
    with pytest.raises(GenerationFailed):
        random_regular(10, 3, 1)


def test_codegree_report_examples():
    r = codegree_report(petersen(), 3)
    assert r.max_codegree == 1 and r.reference == pytest.approx(0.9)
    r = codegree_report(complete(6), 5)
    assert r.min_codegree == r.max_codegree == 4
    assert r.reference == pytest.approx(25 / 6)
    r = codegree_report(cycle(8), 2)
    assert {r.min_codegree, r.max_codegree} <= {0, 1} and r.reference == 0.5
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        codegree_report(cycle(8), 3)
    assert caught
