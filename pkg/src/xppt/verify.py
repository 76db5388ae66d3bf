"""Cross-checks between the fast paths and the brute-force oracles."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import quadrature as quad
from .analytic import i_zero, ratio
from .ptstructure import classify, ppt_mask, pt_permute_index
from .sampler import make_rng, sample_states_arrays
from .xstate import Dims, XState, eigenvalue_list

ORACLE_SEED = 20240521
ORACLE_THRESHOLD = -1e-10
EIGEN_TOL = 1e-10


@dataclass(frozen=True)
class Check:
    name: str
    measured: float
    expected: float
    tolerance: float
    passed: bool

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"{status}  {self.name}: measured={self.measured!r} "
                f"expected={self.expected!r} tol={self.tolerance:g}")


def _relative(name, measured, expected, tol):
    err = abs(measured - expected) / abs(expected)
    return Check(name, measured, expected, tol, err <= tol)


def small_dims(max_mn: int = 12) -> list[Dims]:
    return [Dims(m, n) for m in range(2, max_mn + 1) for n in range(2, max_mn + 1) if m * n <= max_mn]


def oracle_batch(dims: Dims, count: int, seed: int = ORACLE_SEED) -> dict:
    """Compare closed-form spectra and PPT tests with dense Jacobi results.

    Returns the worst eigenvalue deviation and the number of PPT disagreements.
    """
    diag, off = sample_states_arrays(dims, make_rng(seed, dims.N * 100 + dims.m), count)
    states = [XState(dims, d, o) for d, o in zip(diag, off)]
    dense = np.stack([quad.dense_from_x(s).entries for s in states])
    dense_eigs = quad.jacobi_eigenvalues(dense)
    fast_eigs = np.array([eigenvalue_list(s) for s in states])
    pt_min = quad.jacobi_eigenvalues(quad.dense_partial_transpose(dense, dims))[:, 0]
    cls = classify(dims)
    fast_ppt = ppt_mask(diag, off, cls)
    oracle_ppt = pt_min >= ORACLE_THRESHOLD
    return {
        "eigen_error": float(np.max(np.abs(fast_eigs - dense_eigs))),
        "ppt_disagreements": int(np.sum(fast_ppt != oracle_ppt)),
        "ppt_fraction": float(np.mean(oracle_ppt)),
        "count": count,
    }


def pt_map_consistency(dims: Dims) -> bool:
    """Dense partial transpose moves each marked anti-diagonal entry where the index map says."""
    N = dims.N
    for t in range(1, dims.P + 1):
        mat = np.zeros((N, N), dtype=np.complex128)
        mat[t - 1, N - t] = 1.0
        moved = quad.dense_partial_transpose(mat, dims)
        r, c = pt_permute_index(dims, t, N + 1 - t)
        if moved[r - 1, c - 1] != 1.0 or np.count_nonzero(moved) != 1:
            return False
    return True


def run_verification(states: int = 1000, inject_fault: bool = False) -> list[Check]:
    checks = [
        _relative("quad_i_zero vs i_zero", quad.quad_i_zero(64), float(i_zero()), 1e-6),
        _relative("quad_i_zero_3d vs i_zero (coarse)", quad.quad_i_zero_3d(12), float(i_zero()), 1e-4),
        _relative("quad_ratio_2x2 vs ratio(2,2)",
                  quad.quad_ratio_2x2(64, "max" if inject_fault else "min"),
                  float(ratio(Dims(2, 2))), 1e-5),
    ]
    for dims in small_dims():
        res = oracle_batch(dims, states)
        checks.append(Check(f"eigenvalues closed-form vs Jacobi {dims.m}x{dims.n}",
                            res["eigen_error"], 0.0, EIGEN_TOL, res["eigen_error"] <= EIGEN_TOL))
        checks.append(Check(f"ppt_check vs dense PT {dims.m}x{dims.n} (disagreements)",
                            float(res["ppt_disagreements"]), 0.0, 0.0, res["ppt_disagreements"] == 0))
        ok = pt_map_consistency(dims)
        checks.append(Check(f"PT index map vs dense PT {dims.m}x{dims.n}",
                            float(ok), 1.0, 0.0, ok))
    return checks
