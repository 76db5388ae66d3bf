"""Brute-force oracles used to check the fast paths.

Nothing here imports the closed forms it is meant to check: integrals are
done by composite Gauss-Legendre quadrature, spectra by a cyclic Jacobi
eigensolver on full matrices, partial transposes by explicit index
shuffling of a dense array.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .xstate import Dims, DomainError, XState

HERMITIAN_TOL = 1e-12
GAUSS_POINTS = 6


@dataclass(frozen=True, eq=False)
class DenseHermitian:
    entries: np.ndarray

    def __post_init__(self):
        mat = np.array(self.entries, dtype=np.complex128)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise DomainError(f"expected a square matrix, got shape {mat.shape}")
        mat.flags.writeable = False
        object.__setattr__(self, "entries", mat)

    @property
    def order(self) -> int:
        return self.entries.shape[0]

    def hermiticity_error(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.conj().T), initial=0.0))

    @property
    def trace(self) -> complex:
        return complex(np.trace(self.entries))


def dense_from_x(state: XState) -> DenseHermitian:
    state.check_structure()
    N = state.dims.N
    mat = np.zeros((N, N), dtype=np.complex128)
    mat[np.arange(N), np.arange(N)] = state.diag
    for t, z in enumerate(state.offdiag):
        mat[t, N - 1 - t] = z
        mat[N - 1 - t, t] = np.conj(z)
    return DenseHermitian(mat)


def x_from_dense(mat: DenseHermitian, dims: Dims) -> XState:
    """Read the diagonal and upper anti-diagonal back out of a dense matrix."""
    N = dims.N
    if mat.order != N:
        raise DomainError(f"matrix order {mat.order} does not match mn={N}")
    e = mat.entries
    diag = e.diagonal().real.copy()
    off = np.array([e[t, N - 1 - t] for t in range(dims.P)])
    return XState(dims, diag, off)


def _pt_permutation(m: int, n: int, subsystem: int) -> tuple[np.ndarray, np.ndarray]:
    # source (row, col) for every destination (row, col), 0-based
    idx = np.arange(m * n)
    a, b = np.divmod(idx, n)
    ra, rb = a[:, None], b[:, None]
    ca, cb = a[None, :], b[None, :]
    if subsystem == 1:
        src_r = ca * n + rb
        src_c = ra * n + cb
    elif subsystem == 2:
        src_r = ra * n + cb
        src_c = ca * n + rb
    else:
        raise DomainError(f"subsystem must be 1 or 2, got {subsystem}")
    return np.broadcast_to(src_r, (m * n, m * n)), np.broadcast_to(src_c, (m * n, m * n))


def dense_partial_transpose(mat: DenseHermitian | np.ndarray, dims: Dims, subsystem: int = 1):
    """Output entry ((a,b),(c,d)) is input entry ((c,b),(a,d)) for ``subsystem=1``.

    Accepts a :class:`DenseHermitian` or a raw array whose last two axes are
    the matrix (batched use); returns the same kind.
    """
    raw = mat.entries if isinstance(mat, DenseHermitian) else np.asarray(mat)
    if raw.shape[-1] != dims.N or raw.shape[-2] != dims.N:
        raise DomainError(f"matrix order {raw.shape[-1]} does not match mn={dims.N}")
    src_r, src_c = _pt_permutation(dims.m, dims.n, subsystem)
    out = raw[..., src_r, src_c]
    return DenseHermitian(out) if isinstance(mat, DenseHermitian) else out


def _off_norm_sq(a: np.ndarray) -> np.ndarray:
    k = a.shape[-1]
    off = ~np.eye(k, dtype=bool)
    return np.sum(np.abs(a[..., off]) ** 2, axis=-1)


def jacobi_eigenvalues(mats: np.ndarray, tol: float = 1e-13, max_sweeps: int = 60) -> np.ndarray:
    """Cyclic Jacobi eigenvalues for a batch of Hermitian matrices.

    ``mats`` has shape (..., k, k). Each rotation first removes the phase of
    the pivot, then applies the real symmetric Jacobi rotation that zeroes
    it. Sweeps stop once every matrix has off-diagonal Frobenius norm below
    ``tol`` times its full norm. Returns ascending eigenvalues.
    """
    a = np.array(mats, dtype=np.complex128)
    shape = a.shape
    if a.ndim < 2 or shape[-1] != shape[-2]:
        raise DomainError(f"expected square matrices, got shape {shape}")
    k = shape[-1]
    a = a.reshape(-1, k, k)
    err = np.max(np.abs(a - np.conj(np.swapaxes(a, -1, -2))), initial=0.0)
    if err > HERMITIAN_TOL:
        raise DomainError(f"matrix is not Hermitian (max deviation {err:.3g})")
    a = 0.5 * (a + np.conj(np.swapaxes(a, -1, -2)))
    scale = np.sqrt(np.sum(np.abs(a) ** 2, axis=(-2, -1)))
    target = (tol * scale) ** 2
    floor = 1e-30 * scale

    for _ in range(max_sweeps):
        if np.all(_off_norm_sq(a) <= target):
            break
        for p in range(k - 1):
            for q in range(p + 1, k):
                apq = a[:, p, q]
                mag = np.abs(apq)
                # pivots this small are dropped: the eigenvalue shift is O(mag^2)
                active = mag > floor
                if not np.any(active):
                    a[:, p, q] = 0.0
                    a[:, q, p] = 0.0
                    continue
                safe = np.where(active, mag, 1.0)
                phase = np.where(active, apq / safe, 1.0)
                app = a[:, p, p].real
                aqq = a[:, q, q].real
                theta = (aqq - app) / (2.0 * safe)
                t = np.where(theta >= 0, 1.0, -1.0) / (np.abs(theta) + np.hypot(theta, 1.0))
                t = np.where(active, t, 0.0)
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                # U = diag(1, conj(phase)) @ [[c, s], [-s, c]] restricted to (p, q)
                u_pp = c
                u_pq = s
                u_qp = -s * np.conj(phase)
                u_qq = c * np.conj(phase)
                col_p = a[:, :, p].copy()
                col_q = a[:, :, q]
                a[:, :, p] = col_p * u_pp[:, None] + col_q * u_qp[:, None]
                a[:, :, q] = col_p * u_pq[:, None] + col_q * u_qq[:, None]
                row_p = a[:, p, :].copy()
                row_q = a[:, q, :]
                a[:, p, :] = np.conj(u_pp)[:, None] * row_p + np.conj(u_qp)[:, None] * row_q
                a[:, q, :] = np.conj(u_pq)[:, None] * row_p + np.conj(u_qq)[:, None] * row_q
                a[:, p, q] = 0.0
                a[:, q, p] = 0.0
    else:
        raise RuntimeError(f"Jacobi did not converge in {max_sweeps} sweeps")
    values = np.sort(np.einsum("...ii->...i", a).real, axis=-1)
    return values.reshape(shape[:-1])


def eigenvalues_dense(mat: DenseHermitian) -> np.ndarray:
    return jacobi_eigenvalues(mat.entries)


# -- quadrature ---------------------------------------------------------------


@lru_cache(maxsize=None)
def _gauss_legendre_01(points: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(points)
    return 0.5 * (x + 1.0), 0.5 * w


def _composite_nodes(subdivisions: int, points: int = GAUSS_POINTS) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of composite Gauss-Legendre on [0, 1]."""
    x, w = _gauss_legendre_01(points)
    h = 1.0 / subdivisions
    left = np.arange(subdivisions)[:, None] * h
    return (left + h * x[None, :]).ravel(), np.tile(h * w, subdivisions)


def _triangle_rule(subdivisions: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Points (x1, x2) and weights over {x1, x2 >= 0, x1 + x2 <= 1}.

    Collapsed square: x1 = u, x2 = (1 - u) v, Jacobian (1 - u).
    """
    u, wu = _composite_nodes(subdivisions)
    v, wv = _composite_nodes(subdivisions)
    U, V = np.meshgrid(u, v, indexing="ij")
    W = np.outer(wu, wv) * (1.0 - U)
    return U.ravel(), ((1.0 - U) * V).ravel(), W.ravel()


def reduced_i_zero_integrand(x1: np.ndarray, x2: np.ndarray) -> np.ndarray:
    """x1^2 x2^2 (1-x1-x2)^3 / (3 (x1+x2)^2), defined as 0 where x1 + x2 = 0."""
    s = x1 + x2
    rest = np.clip(1.0 - s, 0.0, None)
    with np.errstate(divide="ignore", invalid="ignore"):
        val = x1 ** 2 * x2 ** 2 * rest ** 3 / (3.0 * s ** 2)
    return np.where(s > 0, val, 0.0)


def quad_i_zero(subdivisions: int = 64) -> float:
    """Integral of min[x1(1-x1-x2-x3), x2 x3]^2 over the 3-simplex.

    The innermost integral is split at the kink and done in closed form;
    the remaining 2D integral uses composite Gauss on the triangle.
    """
    if subdivisions < 2:
        raise DomainError("subdivisions must be >= 2")
    x1, x2, w = _triangle_rule(subdivisions)
    return float(np.sum(w * reduced_i_zero_integrand(x1, x2)))


def quad_i_zero_3d(subdivisions: int = 12) -> float:
    """Same integral with the raw min-integrand on a 3D collapsed grid (coarse check)."""
    if subdivisions < 2:
        raise DomainError("subdivisions must be >= 2")
    x1, x2, w2 = _triangle_rule(subdivisions)
    r, wr = _composite_nodes(subdivisions)
    rest = 1.0 - x1 - x2
    x3 = rest[:, None] * r[None, :]
    w = w2[:, None] * rest[:, None] * wr[None, :]
    f = np.minimum(x1[:, None] * (rest[:, None] - x3), x2[:, None] * x3) ** 2
    return float(np.sum(w * f))


_INTEGRANDS = {
    "min": lambda p, q: np.minimum(p, q) ** 2,
    "max": lambda p, q: np.maximum(p, q) ** 2,
    "first": lambda p, q: p ** 2,
    "second": lambda p, q: q ** 2,
    "product": lambda p, q: p * q,
}


def quad_simplex3(integrand: str = "min", subdivisions: int = 64, inner_points: int = 4) -> float:
    """Integral of f(rho11 rho44, rho22 rho33) over the 3-simplex, rho44 = 1 - sum.

    The rho33 range is split where rho22 rho33 = rho11 rho44 so that every
    piece is a polynomial of degree <= 4 in rho33; ``inner_points`` Gauss
    nodes on each piece integrate it exactly.
    """
    if subdivisions < 2:
        raise DomainError("subdivisions must be >= 2")
    try:
        f = _INTEGRANDS[integrand]
    except KeyError:
        raise DomainError(f"unknown integrand {integrand!r}") from None
    r11, r22, w2 = _triangle_rule(subdivisions)
    rest = 1.0 - r11 - r22
    with np.errstate(divide="ignore", invalid="ignore"):
        kink = np.where(r11 + r22 > 0, r11 * rest / (r11 + r22), 0.0)
    g, gw = _gauss_legendre_01(inner_points)
    total = 0.0
    for lo, hi in ((np.zeros_like(kink), kink), (kink, rest)):
        width = hi - lo
        r33 = lo[:, None] + width[:, None] * g[None, :]
        r44 = rest[:, None] - r33
        vals = f(r11[:, None] * r44, r22[:, None] * r33)
        total += float(np.sum(w2[:, None] * width[:, None] * gw[None, :] * vals))
    return total


def quad_ratio_2x2(subdivisions: int = 64, integrand: str = "min") -> float:
    """PPT/all volume ratio for two qubits from the reduced 3D integral.

    The X-state volume without pi factors, 1/7!, is obtained by the same
    rule with the integrand ``rho11 rho44 rho22 rho33``.
    """
    ppt = quad_simplex3(integrand, subdivisions)
    full = quad_simplex3("product", subdivisions)
    return ppt / full


def quad_dirichlet(alphas, subdivisions: int = 4) -> float:
    """Dirichlet integral for 2 or 3 exponents (alpha_0 last), by collapsed Gauss."""
    alphas = list(alphas)
    if len(alphas) == 2:
        x, w = _composite_nodes(subdivisions)
        a1, a0 = alphas
        return float(np.sum(w * x ** (a1 - 1) * (1 - x) ** (a0 - 1)))
    if len(alphas) == 3:
        x1, x2, w = _triangle_rule(subdivisions)
        a1, a2, a0 = alphas
        rest = np.clip(1 - x1 - x2, 0.0, None)
        return float(np.sum(w * x1 ** (a1 - 1) * x2 ** (a2 - 1) * rest ** (a0 - 1)))
    raise DomainError("quad_dirichlet supports 2 or 3 exponents")


def quad_i_min(n: int, a: float, subdivisions: int = 64) -> float:
    """Incomplete min-integral via its radial reduction to I0 and a 1D rule."""
    t, w = _composite_nodes(subdivisions)
    t = a * t
    radial = float(np.sum(a * w * t ** 7 * (a - t) ** n))
    return radial * quad_i_zero(subdivisions)


def observed_order(errors: list[float]) -> list[float]:
    """log2 of successive error ratios for a sequence of doubled resolutions."""
    return [math.log2(e0 / e1) for e0, e1 in zip(errors, errors[1:]) if e0 > 0 and e1 > 0]
