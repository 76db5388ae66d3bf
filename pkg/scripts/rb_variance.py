#!/usr/bin/env python3
"""Per-sample variance of the naive and Rao-Blackwellised estimators, side by side."""
from xppt.montecarlo import Method, estimate
from xppt.sampler import SampleConfig
from xppt.xstate import Dims

COUNT = 200_000

print("m,n,analytic,naive_var,rb_var,variance_ratio")
for m, n in [(2, 2), (2, 3), (3, 3), (2, 4), (3, 4), (4, 4), (4, 5), (6, 6)]:
    cfg = SampleConfig(Dims(m, n), 7, COUNT)
    naive = estimate(cfg, Method.NAIVE)
    rb = estimate(cfg, Method.RAO_BLACKWELL)
    print(f"{m},{n},{naive.analytic_value:.6g},{naive.sample_variance:.4e},"
          f"{rb.sample_variance:.4e},{naive.sample_variance / rb.sample_variance:.2f}")
