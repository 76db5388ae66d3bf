#!/usr/bin/env python3
"""Error of the I0 and 2x2 ratio quadratures under repeated grid doubling."""

from xppt.analytic import i_zero, ratio
from xppt.quadrature import observed_order, quad_i_zero, quad_ratio_2x2
from xppt.xstate import Dims

exact_i0 = float(i_zero())
exact_ratio = float(ratio(Dims(2, 2)))
levels = [4, 8, 16, 32, 64, 128]

i0_err = [abs(quad_i_zero(s) / exact_i0 - 1) for s in levels]
ratio_err = [abs(quad_ratio_2x2(s) / exact_ratio - 1) for s in levels]

print("subdivisions,i0_rel_error,ratio_rel_error")
for s, a, b in zip(levels, i0_err, ratio_err):
    print(f"{s},{a:.3e},{b:.3e}")
print("observed order (I0):", " ".join(f"{o:.2f}" for o in observed_order(i0_err)))
print("observed order (ratio):", " ".join(f"{o:.2f}" for o in observed_order(ratio_err)))
