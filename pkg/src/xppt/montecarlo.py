"""Monte Carlo estimates of the PPT volume ratio.

Samples are generated in fixed-size blocks; block ``b`` always draws from
substream ``b`` of the master seed and per-block statistics are merged in
block order. The result therefore depends only on (dims, count, seed),
never on the number of workers.
"""
from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .analytic import ratio
from .ptstructure import PtClassification, classify, ppt_mask
from .sampler import SampleConfig, make_rng, sample_diagonals, sample_offdiagonals
from .xstate import Dims, DomainError

BLOCK_SIZE = 1 << 16

CSV_COLUMNS = ("m", "n", "method", "count", "seed", "mean", "std_error", "analytic", "z_score")


class Method(str, Enum):
    NAIVE = "naive"
    RAO_BLACKWELL = "rao_blackwell"

    @classmethod
    def parse(cls, value) -> "Method":
        if isinstance(value, Method):
            return value
        aliases = {"rb": cls.RAO_BLACKWELL, "rao-blackwell": cls.RAO_BLACKWELL}
        key = str(value).lower()
        if key in aliases:
            return aliases[key]
        try:
            return cls(key)
        except ValueError:
            raise DomainError(f"unknown method {value!r}") from None


@dataclass(frozen=True)
class Estimate:
    dims: Dims
    method: Method
    mean: float
    std_error: float
    count: int
    seed: int
    analytic_value: float
    z_score: float

    @property
    def sample_variance(self) -> float:
        return self.std_error ** 2 * self.count

    def passed(self, threshold: float = 4.0) -> bool:
        return abs(self.z_score) <= threshold

    def row(self) -> list:
        return [self.dims.m, self.dims.n, self.method.value, self.count, self.seed,
                repr(self.mean), repr(self.std_error), repr(self.analytic_value), repr(self.z_score)]

    def to_dict(self) -> dict:
        return dict(zip(CSV_COLUMNS, [self.dims.m, self.dims.n, self.method.value, self.count,
                                      self.seed, self.mean, self.std_error,
                                      self.analytic_value, self.z_score]))


def rao_blackwell_weights(diag: np.ndarray, cls: PtClassification) -> np.ndarray:
    """P(PPT | diagonal) = prod over quadruples of min(p, q)^2 / (p q)."""
    P = cls.dims.P
    products = diag[:, :P] * diag[:, ::-1][:, :P]
    first, second = cls.quad_index_arrays()
    p = products[:, first]
    q = products[:, second]
    low = np.minimum(p, q)
    high = np.maximum(p, q)
    # min^2/(pq) = min/max; a zero product makes its disk a point, factor 0
    with np.errstate(divide="ignore", invalid="ignore"):
        factors = np.where(high > 0, low / high, 0.0)
    return np.prod(factors, axis=1)


def _block_values(dims: Dims, cls: PtClassification, method: Method, seed: int,
                  block: int, size: int) -> np.ndarray:
    rng = make_rng(seed, block)
    diag = sample_diagonals(dims, rng, size)
    if method is Method.RAO_BLACKWELL:
        return rao_blackwell_weights(diag, cls)
    off = sample_offdiagonals(dims, diag, rng)
    return ppt_mask(diag, off, cls).astype(np.float64)


def _block_stats(values: np.ndarray) -> tuple[int, float, float]:
    mean = float(np.mean(values))
    m2 = float(np.sum((values - mean) ** 2))
    return values.size, mean, m2


def _merge(a, b):
    # pairwise (Chan et al.) merge of count, mean and sum of squared deviations
    na, ma, sa = a
    nb, mb, sb = b
    n = na + nb
    delta = mb - ma
    return n, ma + delta * nb / n, sa + sb + delta * delta * na * nb / n


def _block_sizes(count: int) -> list[int]:
    full, rest = divmod(count, BLOCK_SIZE)
    return [BLOCK_SIZE] * full + ([rest] if rest else [])


def estimate(cfg: SampleConfig, method, workers: int = 1) -> Estimate:
    method = Method.parse(method)
    if cfg.count < 2:
        raise DomainError(f"count must be >= 2, got {cfg.count}")
    if workers < 1:
        raise DomainError(f"workers must be >= 1, got {workers}")
    dims = cfg.dims
    analytic = float(ratio(dims))
    cls = classify(dims)
    sizes = _block_sizes(cfg.count)

    def run(job):
        block, size = job
        return _block_stats(_block_values(dims, cls, method, cfg.seed, block, size))

    jobs = list(enumerate(sizes))
    if workers == 1:
        stats = [run(j) for j in jobs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            stats = list(pool.map(run, jobs))

    total = stats[0]
    for s in stats[1:]:
        total = _merge(total, s)
    n, mean, m2 = total
    if method is Method.NAIVE:
        std_error = math.sqrt(mean * (1.0 - mean) / n)
    else:
        std_error = math.sqrt(m2 / (n - 1) / n)
    if std_error > 0:
        z = (mean - analytic) / std_error
    else:
        z = 0.0 if mean == analytic else math.copysign(math.inf, mean - analytic)
    return Estimate(dims, method, mean, std_error, n, cfg.seed, analytic, z)


def estimate_naive(cfg: SampleConfig, workers: int = 1) -> Estimate:
    """Fraction of uniformly sampled states that pass the PPT test."""
    return estimate(cfg, Method.NAIVE, workers)


def estimate_rao_blackwell(cfg: SampleConfig, workers: int = 1) -> Estimate:
    """Mean of the conditional PPT probability given the sampled diagonal."""
    return estimate(cfg, Method.RAO_BLACKWELL, workers)


def sweep(dims_list: Sequence[Dims], counts: Sequence[int], seeds: Sequence[int],
          methods: Iterable = (Method.RAO_BLACKWELL,), workers: int = 1) -> list[Estimate]:
    """Every combination of dims x method x count x seed, in that nesting order."""
    dims_list, counts, seeds = list(dims_list), list(counts), list(seeds)
    methods = [Method.parse(m) for m in methods]
    for name, seq in (("dims_list", dims_list), ("counts", counts), ("seeds", seeds), ("methods", methods)):
        if not seq:
            raise DomainError(f"{name} must not be empty")
    return [
        estimate(SampleConfig(d, seed, count), method, workers)
        for d, method, count, seed in product(dims_list, methods, counts, seeds)
    ]


def estimates_to_csv(estimates: Iterable[Estimate], header: bool = True) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if header:
        writer.writerow(CSV_COLUMNS)
    for e in estimates:
        writer.writerow(e.row())
    return buf.getvalue()
