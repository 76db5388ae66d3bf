"""Uniform (Hilbert-Schmidt) sampling of X-states.

The uniform measure on the X-state body factorises: the diagonal has
density proportional to the product of disk areas prod(pi rho_ii rho_jj),
i.e. Dirichlet with exponent 2 on paired entries and 1 on the center, and
given the diagonal each anti-diagonal entry is uniform on its disk.

Random source: numpy ``PCG64`` (128-bit state). Substream ``k`` of master
seed ``s`` is ``PCG64(SeedSequence(s, spawn_key=(k,)))``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import IO, Iterator

import numpy as np

from .xstate import Dims, DomainError, XState

SEED_MAX = 2**64 - 1


@dataclass(frozen=True)
class SampleConfig:
    dims: Dims
    seed: int
    count: int

    def __post_init__(self):
        if not 0 <= self.seed <= SEED_MAX:
            raise DomainError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if self.count < 1:
            raise DomainError(f"count must be >= 1, got {self.count}")


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """Independent generator for substream ``stream`` of master ``seed``."""
    if not 0 <= seed <= SEED_MAX:
        raise DomainError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(stream,))))


def _dirichlet_exponents(dims: Dims) -> np.ndarray:
    alphas = np.full(dims.N, 2, dtype=np.int64)
    if dims.has_center:
        alphas[dims.center - 1] = 1
    return alphas


def sample_diagonals(dims: Dims, rng: np.random.Generator, count: int) -> np.ndarray:
    """``count`` diagonals, shape (count, N), each Dirichlet(2, ..., 2[, 1])."""
    # Gamma(2) = -ln(u1) - ln(u2), Gamma(1) = -ln(u1); 1 - random() lies in (0, 1]
    u = 1.0 - rng.random((count, dims.N, 2))
    logs = -np.log(u)
    gammas = logs[..., 0] + logs[..., 1]
    if dims.has_center:
        c = dims.center - 1
        gammas[:, c] = logs[:, c, 0]
    return gammas / gammas.sum(axis=1, keepdims=True)


def sample_offdiagonals(dims: Dims, diag: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Anti-diagonal entries uniform on their positivity disks, shape (count, P)."""
    count = diag.shape[0]
    P = dims.P
    products = diag[:, :P] * diag[:, ::-1][:, :P]
    u = rng.random((count, P, 2))
    radius = np.sqrt(products * u[..., 0])
    angle = 2.0 * np.pi * u[..., 1]
    return radius * np.exp(1j * angle)


def sample_states_arrays(dims: Dims, rng: np.random.Generator, count: int) -> tuple[np.ndarray, np.ndarray]:
    diag = sample_diagonals(dims, rng, count)
    return diag, sample_offdiagonals(dims, diag, rng)


def sample_diagonal(dims: Dims, rng: np.random.Generator) -> np.ndarray:
    return sample_diagonals(dims, rng, 1)[0]


def sample_state(dims: Dims, rng: np.random.Generator) -> XState:
    diag, off = sample_states_arrays(dims, rng, 1)
    return XState(dims, diag[0], off[0])


def iter_states(cfg: SampleConfig, batch: int = 4096) -> Iterator[XState]:
    """Stream ``cfg.count`` states from substream 0 of ``cfg.seed``."""
    rng = make_rng(cfg.seed)
    remaining = cfg.count
    while remaining:
        k = min(batch, remaining)
        diag, off = sample_states_arrays(cfg.dims, rng, k)
        for d, o in zip(diag, off):
            yield XState(cfg.dims, d, o)
        remaining -= k


def state_to_record(state: XState) -> dict:
    return {
        "diag": [float(x) for x in state.diag],
        "offdiag": [[float(z.real), float(z.imag)] for z in state.offdiag],
    }


def state_from_record(dims: Dims, record: dict) -> XState:
    off = [complex(re, im) for re, im in record["offdiag"]]
    return XState(dims, record["diag"], off)


def dump_samples(cfg: SampleConfig, fh: IO[str]) -> int:
    """Write JSON lines ``{"diag": [...], "offdiag": [[re, im], ...]}``."""
    written = 0
    for state in iter_states(cfg):
        fh.write(json.dumps(state_to_record(state)) + "\n")
        written += 1
    return written


def load_samples(dims: Dims, fh: IO[str]) -> list[XState]:
    return [state_from_record(dims, json.loads(line)) for line in fh if line.strip()]
