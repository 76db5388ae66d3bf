"""X-state data model: dimensions, closed-form eigenvalues and validation.

Indices in the public API are 1-based. Pair ``t`` always refers to the
anti-diagonal entry at (row ``t``, column ``N + 1 - t``) with
``1 <= t <= N // 2``. Only that upper half of the anti-diagonal is stored;
the lower half is its complex conjugate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

DEFAULT_TOL = 1e-12


class DomainError(ValueError):
    """Argument outside the domain where an operation is defined."""


class StructuralError(DomainError):
    """State arrays do not have the shape implied by its dimensions."""


@dataclass(frozen=True)
class Dims:
    m: int
    n: int

    def __post_init__(self):
        for name in ("m", "n"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
                raise DomainError(f"{name} must be an integer, got {value!r}")
            if value < 2:
                raise DomainError(f"{name} must be >= 2, got {value}")
            object.__setattr__(self, name, int(value))

    @property
    def N(self) -> int:
        return self.m * self.n

    @property
    def P(self) -> int:
        return self.N // 2

    @property
    def has_center(self) -> bool:
        return self.N % 2 == 1

    @property
    def center(self) -> int | None:
        """1-based index of the crossing diagonal entry, if any."""
        return (self.N + 1) // 2 if self.has_center else None

    @property
    def body_dimension(self) -> int:
        """Real dimension of the X-state body: mn - 1 + 2 floor(mn/2)."""
        return self.N - 1 + 2 * self.P

    def partner(self, i: int) -> int:
        return self.N + 1 - i

    def pairs(self) -> list[tuple[int, int]]:
        return [(t, self.N + 1 - t) for t in range(1, self.P + 1)]


@dataclass(frozen=True, eq=False)
class XState:
    """Diagonal plus upper anti-diagonal of an X-shaped density matrix.

    ``offdiag[t - 1]`` holds the entry at (t, N + 1 - t). Lengths are not
    checked here so that malformed states can still reach :func:`validate`.
    """

    dims: Dims
    diag: np.ndarray
    offdiag: np.ndarray = field(default=None)

    def __post_init__(self):
        diag = np.array(self.diag, dtype=np.float64).reshape(-1)
        if self.offdiag is None:
            offdiag = np.zeros(self.dims.P, dtype=np.complex128)
        else:
            offdiag = np.array(self.offdiag, dtype=np.complex128).reshape(-1)
        diag.flags.writeable = False
        offdiag.flags.writeable = False
        object.__setattr__(self, "diag", diag)
        object.__setattr__(self, "offdiag", offdiag)

    def __eq__(self, other):
        if not isinstance(other, XState):
            return NotImplemented
        return (
            self.dims == other.dims
            and np.array_equal(self.diag, other.diag)
            and np.array_equal(self.offdiag, other.offdiag)
        )

    __hash__ = None

    def check_structure(self) -> None:
        N, P = self.dims.N, self.dims.P
        if self.diag.shape != (N,):
            raise StructuralError(f"diag has length {self.diag.size}, expected {N}")
        if self.offdiag.shape != (P,):
            raise StructuralError(f"offdiag has length {self.offdiag.size}, expected {P}")

    def entry(self, row: int, col: int) -> complex:
        """Matrix element at 1-based (row, col)."""
        N = self.dims.N
        if not (1 <= row <= N and 1 <= col <= N):
            raise DomainError(f"index ({row}, {col}) outside 1..{N}")
        if row == col:
            return complex(self.diag[row - 1])
        if row + col != N + 1:
            return 0j
        if row < col:
            return complex(self.offdiag[row - 1])
        return complex(self.offdiag[col - 1]).conjugate()

    @property
    def trace(self) -> float:
        return math.fsum(self.diag)

    def pair_products(self) -> np.ndarray:
        """rho_tt * rho_jj for every pair t, j = N + 1 - t."""
        P = self.dims.P
        return self.diag[:P] * self.diag[::-1][:P]


class EigenPair(NamedTuple):
    lambda_plus: float
    lambda_minus: float
    pair_index: int


def _block_eigenvalues(a, b, modsq):
    """Eigenvalues of [[a, z], [z*, b]] with |z|^2 = modsq, vectorised."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    s = a + b
    # (a+b)^2 - 4(ab - |z|^2) rewritten without cancellation
    root = np.sqrt((a - b) ** 2 + 4.0 * modsq)
    plus = 0.5 * (s + root)
    det = a * b - modsq
    with np.errstate(divide="ignore", invalid="ignore"):
        minus = np.where(plus > 0, det / np.where(plus > 0, plus, 1.0), 0.5 * (s - root))
    return plus, np.minimum(minus, plus)


def eigenvalues(state: XState) -> tuple[list[EigenPair], float | None]:
    """Closed-form spectrum of an X-state.

    Returns one :class:`EigenPair` per anti-diagonal pair and, when ``mn``
    is odd, the central diagonal entry as an extra singleton eigenvalue.
    """
    state.check_structure()
    dims = state.dims
    P = dims.P
    a = state.diag[:P]
    b = state.diag[::-1][:P]
    plus, minus = _block_eigenvalues(a, b, np.abs(state.offdiag) ** 2)
    pairs = [EigenPair(float(p), float(q), t + 1) for t, (p, q) in enumerate(zip(plus, minus))]
    center = float(state.diag[dims.center - 1]) if dims.has_center else None
    return pairs, center


def eigenvalue_list(state: XState) -> list[float]:
    """All N eigenvalues as a flat, ascending list."""
    pairs, center = eigenvalues(state)
    values = [v for p in pairs for v in (p.lambda_plus, p.lambda_minus)]
    if center is not None:
        values.append(center)
    return sorted(values)


def is_positive_semidefinite(state: XState, tol: float = DEFAULT_TOL) -> bool:
    state.check_structure()
    if np.any(state.diag < -tol):
        return False
    return bool(np.all(state.pair_products() >= np.abs(state.offdiag) ** 2 - tol))


class Issue(NamedTuple):
    kind: str  # "length", "trace", "negative_diag", "psd"
    index: int | None
    amount: float


@dataclass(frozen=True)
class ValidationReport:
    issues: tuple[Issue, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.issues

    def __len__(self):
        return len(self.issues)

    def __iter__(self):
        return iter(self.issues)

    def of_kind(self, kind: str) -> list[Issue]:
        return [i for i in self.issues if i.kind == kind]

    def __str__(self):
        if self.ok:
            return "valid"
        return "; ".join(
            f"{i.kind}" + (f"[{i.index}]" if i.index is not None else "") + f": {i.amount:.3g}"
            for i in self.issues
        )


def validate(state: XState, tol: float = DEFAULT_TOL) -> ValidationReport:
    """Collect every trace, sign, positivity and shape violation of ``state``."""
    issues = []
    N, P = state.dims.N, state.dims.P
    if state.diag.size != N:
        issues.append(Issue("length", None, float(state.diag.size - N)))
    if state.offdiag.size != P:
        issues.append(Issue("length", None, float(state.offdiag.size - P)))
    if issues:
        return ValidationReport(tuple(issues))

    deviation = abs(state.trace - 1.0)
    if deviation > tol:
        issues.append(Issue("trace", None, deviation))
    for i, value in enumerate(state.diag, start=1):
        if value < -tol:
            issues.append(Issue("negative_diag", i, float(-value)))
    excess = np.abs(state.offdiag) ** 2 - state.pair_products()
    for t, value in enumerate(excess, start=1):
        if value > tol:
            issues.append(Issue("psd", t, float(value)))
    return ValidationReport(tuple(issues))
