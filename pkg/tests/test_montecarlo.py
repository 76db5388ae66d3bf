import math

import numpy as np
import pytest

from xppt.montecarlo import (
    BLOCK_SIZE, CSV_COLUMNS, Method, estimate, estimate_naive, estimate_rao_blackwell,
    estimates_to_csv, rao_blackwell_weights, sweep,
)
from xppt.ptstructure import PtClassification, classify, ppt_mask
from xppt.sampler import SampleConfig
from xppt.xstate import Dims, DomainError

MN_LE_16 = [Dims(m, n) for m in range(2, 9) for n in range(m, 9) if m * n <= 16]


def cfg(m, n, seed, count):
    return SampleConfig(Dims(m, n), seed, count)


def test_naive_2x2():
    e = estimate_naive(cfg(2, 2, 1, 1_000_000))
    assert e.method is Method.NAIVE
    assert abs(e.z_score) < 3
    assert e.std_error == pytest.approx(math.sqrt(e.mean * (1 - e.mean) / e.count))


def test_naive_4x4():
    e = estimate_naive(cfg(4, 4, 2, 1_000_000))
    assert e.analytic_value == pytest.approx(0.0256)
    assert abs(e.z_score) < 3


def test_small_runs_are_reproducible():
    a = estimate_naive(cfg(2, 2, 77, 10))
    b = estimate_naive(cfg(2, 2, 77, 10))
    assert a == b


@pytest.mark.parametrize("m, n", [(2, 2), (2, 3)])
def test_rao_blackwell_1e5(m, n):
    rb = estimate_rao_blackwell(cfg(m, n, 3, 100_000))
    naive = estimate_naive(cfg(m, n, 3, 100_000))
    assert abs(rb.z_score) < 3
    assert rb.std_error < naive.std_error


def test_rb_weights_zero_product_and_empty():
    cls = classify(Dims(2, 2))
    diag = np.array([[0.0, 0.3, 0.3, 0.4], [0.25, 0.25, 0.25, 0.25], [0.1, 0.2, 0.3, 0.4]])
    w = rao_blackwell_weights(diag, cls)
    assert w[0] == 0.0
    assert w[1] == 1.0
    p, q = 0.1 * 0.4, 0.2 * 0.3
    assert w[2] == pytest.approx(min(p, q) ** 2 / (p * q))
    empty = PtClassification(Dims(2, 2), (), ((1, 4), (2, 3)), None)
    np.testing.assert_array_equal(rao_blackwell_weights(diag, empty), 1.0)


def test_rb_weights_are_conditional_ppt_probability():
    # brute force: for a fixed diagonal, sample disks many times
    dims = Dims(2, 3)
    cls = classify(dims)
    diag = np.array([0.1, 0.2, 0.15, 0.25, 0.12, 0.18])
    rng = np.random.default_rng(4)
    k = 400_000
    P = dims.P
    products = diag[:P] * diag[::-1][:P]
    off = np.sqrt(products * rng.random((k, P))) * np.exp(2j * np.pi * rng.random((k, P)))
    hits = ppt_mask(np.broadcast_to(diag, (k, dims.N)), off, cls).mean()
    w = rao_blackwell_weights(diag[None, :], cls)[0]
    assert abs(hits - w) < 4 * math.sqrt(w * (1 - w) / k)


def test_count_validation():
    with pytest.raises(DomainError):
        estimate_naive(cfg(2, 2, 0, 1))
    with pytest.raises(DomainError):
        estimate(cfg(2, 2, 0, 10), "bogus")
    with pytest.raises(DomainError):
        estimate(cfg(2, 2, 0, 10), "rb", workers=0)


def test_means_in_unit_interval():
    for method in Method:
        for d in [(2, 2), (3, 3), (6, 6)]:
            e = estimate(cfg(*d, 5, 2000), method)
            assert 0.0 <= e.mean <= 1.0
            assert e.std_error >= 0


@pytest.mark.parametrize("method", list(Method))
def test_unbiased_small_scale(method):
    means = [estimate(cfg(2, 2, seed, 10_000), method).mean for seed in range(100)]
    grand = np.mean(means)
    grand_se = np.std(means, ddof=1) / np.sqrt(len(means))
    assert abs(grand - 0.4) < 4 * grand_se


@pytest.mark.parametrize("dims", MN_LE_16, ids=str)
def test_rb_variance_dominates(dims):
    for seed in range(20):
        c = SampleConfig(dims, 1000 + seed, 5000)
        assert estimate_rao_blackwell(c).sample_variance < estimate_naive(c).sample_variance


def test_exponential_decay():
    rows = sweep([Dims(2, 2), Dims(4, 4), Dims(6, 6)], [400_000], [17])
    means = [r.mean for r in rows]
    assert means[0] > means[1] > means[2]
    for r, power in zip(rows, (1, 4, 9)):
        assert r.analytic_value == pytest.approx(0.4 ** power)
        assert abs(r.z_score) < 3


def test_worker_count_does_not_change_result():
    count = 3 * BLOCK_SIZE + 123
    for method in Method:
        ref = estimate(cfg(3, 3, 9, count), method, workers=1)
        assert estimate(cfg(3, 3, 9, count), method, workers=4) == ref


def test_sweep_shape_and_errors():
    rows = sweep([Dims(2, 2), Dims(2, 3)], [10_000], [1])
    assert len(rows) == 2
    assert [(r.dims.m, r.dims.n) for r in rows] == [(2, 2), (2, 3)]
    with pytest.raises(DomainError):
        sweep([], [10], [1])


def test_sweep_3x3_both_methods():
    naive, rb = sweep([Dims(3, 3)], [200_000], [5], methods=("naive", "rb"))
    assert abs(naive.z_score) < 4 and abs(rb.z_score) < 4
    assert rb.std_error < naive.std_error


def test_csv_schema():
    e = estimate(cfg(2, 2, 3, 100), "rb")
    text = estimates_to_csv([e])
    header, row = text.strip().split("\n")
    assert header.split(",") == list(CSV_COLUMNS)
    fields = row.split(",")
    assert fields[:5] == ["2", "2", "rao_blackwell", "100", "3"]
    assert float(fields[5]) == e.mean
