"""How the partial transpose acts on the anti-diagonal of an X-state.

Product-basis ordering is first-subsystem-major: |a>|b> has 1-based index
``a*n + b + 1``. The partial transpose on the first factor sends the
element at ((a,b),(c,d)) to ((c,b),(a,d)); on an X-state this permutes
anti-diagonal positions among themselves. Pairs whose entry is swapped with
another pair's entry become quadruples, pairs mapped onto themselves (or
their conjugate position) are fixed pairs.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .xstate import DEFAULT_TOL, Dims, DomainError, XState


def pt_permute_index(dims: Dims, row: int, col: int, subsystem: int = 1) -> tuple[int, int]:
    """Image of anti-diagonal position (row, col) under the partial transpose.

    ``subsystem=1`` transposes the first factor; ``subsystem=2`` the second.
    """
    N, n = dims.N, dims.n
    if not (1 <= row <= N and 1 <= col <= N) or row + col != N + 1:
        raise DomainError(f"({row}, {col}) is not an anti-diagonal position for N={N}")
    a, b = divmod(row - 1, n)
    c, d = divmod(col - 1, n)
    if subsystem == 1:
        return c * n + b + 1, a * n + d + 1
    if subsystem == 2:
        return a * n + d + 1, c * n + b + 1
    raise DomainError(f"subsystem must be 1 or 2, got {subsystem}")


def parity_table(m: int, n: int) -> tuple[int, int, int]:
    """Closed-form (A, B, C) for each parity cell of (m, n)."""
    if m % 2 and n % 2:
        return (m - 1) * (n - 1) // 4, (m + n - 2) // 2, 1
    if m % 2 == 0 and n % 2:
        return m * (n - 1) // 4, m // 2, 0
    if m % 2 and n % 2 == 0:
        return (m - 1) * n // 4, n // 2, 0
    return m * n // 4, 0, 0


@dataclass(frozen=True)
class PtClassification:
    dims: Dims
    quadruples: tuple[tuple[int, int, int, int], ...]
    fixed_pairs: tuple[tuple[int, int], ...]
    center: int | None

    @property
    def A(self) -> int:
        return len(self.quadruples)

    @property
    def B(self) -> int:
        return len(self.fixed_pairs)

    @property
    def C(self) -> int:
        return 0 if self.center is None else 1

    @property
    def counts(self) -> tuple[int, int, int]:
        return self.A, self.B, self.C

    def partition(self) -> frozenset:
        """Pair indices grouped as they are coupled, independent of labelling."""
        groups = [frozenset((i, k)) for i, _, k, _ in self.quadruples]
        groups += [frozenset((i,)) for i, _ in self.fixed_pairs]
        return frozenset(groups)

    def quad_index_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """0-based pair slots (t-1 of i, t-1 of k) for each quadruple."""
        first = np.array([q[0] - 1 for q in self.quadruples], dtype=np.intp)
        second = np.array([q[2] - 1 for q in self.quadruples], dtype=np.intp)
        return first, second

    def to_dict(self) -> dict:
        return {
            "m": self.dims.m,
            "n": self.dims.n,
            "A": self.A,
            "B": self.B,
            "C": self.C,
            "quadruples": [list(q) for q in self.quadruples],
            "fixed_pairs": [list(p) for p in self.fixed_pairs],
            "center": self.center,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "PtClassification":
        return cls(
            dims=Dims(data["m"], data["n"]),
            quadruples=tuple(tuple(q) for q in data["quadruples"]),
            fixed_pairs=tuple(tuple(p) for p in data["fixed_pairs"]),
            center=data["center"],
        )


def classify(dims: Dims, subsystem: int = 1) -> PtClassification:
    N = dims.N
    quadruples = []
    fixed = []
    seen = set()
    for t in range(1, dims.P + 1):
        if t in seen:
            continue
        row, col = t, N + 1 - t
        image = pt_permute_index(dims, row, col, subsystem)
        if image in ((row, col), (col, row)):
            fixed.append((row, col))
            seen.add(t)
            continue
        k = min(image)
        quadruples.append((row, col, k, N + 1 - k))
        seen.update((t, k))
    return PtClassification(dims, tuple(quadruples), tuple(fixed), dims.center)


def ppt_check(state: XState, cls: PtClassification, tol: float = DEFAULT_TOL) -> bool:
    """True when the partial transpose of ``state`` is positive semidefinite.

    Assumes ``state`` itself is PSD, so only the swapped constraints of the
    quadruples need checking.
    """
    if state.dims != cls.dims:
        raise DomainError(f"state dims {state.dims} do not match classification dims {cls.dims}")
    state.check_structure()
    products = state.pair_products()
    modsq = np.abs(state.offdiag) ** 2
    first, second = cls.quad_index_arrays()
    return bool(
        np.all(modsq[first] <= products[second] + tol)
        and np.all(modsq[second] <= products[first] + tol)
    )


def ppt_mask(diag: np.ndarray, offdiag: np.ndarray, cls: PtClassification,
             tol: float = DEFAULT_TOL) -> np.ndarray:
    """Row-wise :func:`ppt_check` for batches of shape (count, N) and (count, P)."""
    P = cls.dims.P
    products = diag[:, :P] * diag[:, ::-1][:, :P]
    modsq = offdiag.real ** 2 + offdiag.imag ** 2
    first, second = cls.quad_index_arrays()
    ok = (modsq[:, first] <= products[:, second] + tol) & (modsq[:, second] <= products[:, first] + tol)
    return np.all(ok, axis=1)
