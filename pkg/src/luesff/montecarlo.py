"""Monte Carlo sampling of complex Wishart spectra.

Sample ``i`` of a run draws its matrix from a Philox stream whose 128-bit
key is ``(index << 64) | seed``, so every sample is reproducible on its
own and samples can be produced in any order. Samples are processed in
fixed chunks and reduced in index order, which makes estimates
bit-identical for any worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

CHUNK = 4096
_U64 = (1 << 64) - 1


@dataclass(frozen=True)
class McConfig:
    N: int
    n: int
    samples: int
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        for name in ("N", "n", "samples", "seed", "workers"):
            v = getattr(self, name)
            if isinstance(v, bool) or int(v) != v:
                raise ValueError(f"{name} must be an integer, got {v!r}")
            object.__setattr__(self, name, int(v))
        if self.N < 1:
            raise ValueError("N must be >= 1")
        if self.n < self.N:
            raise ValueError(f"n must be >= N (got n={self.n}, N={self.N})")
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if not 0 <= self.seed <= _U64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")

    @property
    def a(self) -> int:
        return self.n - self.N

    @classmethod
    def from_a(cls, N: int, a: int, samples: int, seed: int = 0, workers: int = 1) -> "McConfig":
        if int(a) != a or a < 0:
            raise ValueError(f"Monte Carlo needs a non-negative integer a, got {a!r}")
        return cls(N, N + int(a), samples, seed, workers)


@dataclass(frozen=True)
class McEstimate:
    mean: float | complex
    std_error: float
    samples: int
    seed: int


def _generator(cfg: McConfig, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=(index << 64) | cfg.seed))


def _gaussian_block(cfg: McConfig, start: int, stop: int) -> np.ndarray:
    g = np.empty((stop - start, cfg.n, cfg.N, 2))
    for j, i in enumerate(range(start, stop)):
        g[j] = _generator(cfg, i).standard_normal((cfg.n, cfg.N, 2))
    # real and imaginary parts of variance 1/2
    return (g[..., 0] + 1j * g[..., 1]) * math.sqrt(0.5)


def _spectra_block(cfg: McConfig, start: int, stop: int) -> np.ndarray:
    X = _gaussian_block(cfg, start, stop)
    gram = np.conj(np.swapaxes(X, 1, 2)) @ X
    # LinAlgError on non-convergence propagates to the caller
    return np.linalg.eigvalsh(gram)


def sample_lue_spectrum(cfg: McConfig, index: int) -> np.ndarray:
    """Ascending eigenvalues of ``X^H X`` for sample ``index``."""
    if not 0 <= index <= _U64:
        raise ValueError("index must be a 64-bit unsigned integer")
    return _spectra_block(cfg, index, index + 1)[0]


def _map_chunks(cfg: McConfig, fn) -> list:
    bounds = [(s, min(s + CHUNK, cfg.samples)) for s in range(0, cfg.samples, CHUNK)]
    if cfg.workers == 1 or len(bounds) == 1:
        return [fn(*b) for b in bounds]
    with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
        return list(pool.map(lambda b: fn(*b), bounds))


def spectra(cfg: McConfig) -> np.ndarray:
    """All samples as a ``(samples, N)`` array, rows in index order."""
    return np.concatenate(_map_chunks(cfg, lambda s, e: _spectra_block(cfg, s, e)))


def _linear_statistics(cfg: McConfig, ks, gamma: float = 0.0) -> np.ndarray:
    """``A[i, m] = sum_j exp((i k_m - gamma) lambda_ij)``."""
    ks = np.atleast_1d(np.asarray(ks, dtype=float))
    z = 1j * ks - gamma

    def block(s, e):
        lam = _spectra_block(cfg, s, e)
        return np.exp(lam[:, :, None] * z[None, None, :]).sum(axis=1)

    return np.concatenate(_map_chunks(cfg, block))


def _structure_from_stats(A: np.ndarray, cfg: McConfig) -> list[McEstimate]:
    M = A.shape[0]
    out = []
    for col in A.T:
        centred = col - col.mean()
        # influence of each sample on the plug-in variance
        psi = np.abs(centred) ** 2
        val = float(psi.mean())
        se = float(psi.std(ddof=1) / math.sqrt(M)) if M > 1 else 0.0
        out.append(McEstimate(val, se, M, cfg.seed))
    return out


def estimate_structure_mc(cfg: McConfig, k: float) -> McEstimate:
    """Plug-in estimate of ``<|sum e^{ik lambda}|^2> - |<sum e^{ik lambda}>|^2``."""
    return estimate_structure_mc_grid(cfg, [k])[0]


def estimate_structure_mc_grid(cfg: McConfig, ks) -> list[McEstimate]:
    """Same as :func:`estimate_structure_mc` for many k from one set of samples."""
    return _structure_from_stats(_linear_statistics(cfg, ks), cfg)


def estimate_mean_exp_mc(cfg: McConfig, k: float, gamma: float = 0.0) -> McEstimate:
    """Sample mean of ``sum_j exp((i k - gamma) lambda_j)``."""
    if not gamma >= 0:
        raise ValueError("gamma must be >= 0")
    col = _linear_statistics(cfg, [k], gamma)[:, 0]
    M = col.shape[0]
    se = float(np.sqrt(np.var(col.real, ddof=1) + np.var(col.imag, ddof=1)) / math.sqrt(M)) if M > 1 else 0.0
    return McEstimate(complex(col.mean()), se, M, cfg.seed)


def scaled_histogram(cfg: McConfig, edges) -> np.ndarray:
    """Density histogram of ``lambda / 4N`` over the given bin edges.

    Normalised by the total number of eigenvalues, so it estimates the
    bin averages of the global density including mass outside ``edges``.
    """
    edges = np.asarray(edges, dtype=float)

    def block(s, e):
        return np.histogram(_spectra_block(cfg, s, e).ravel() / (4 * cfg.N), bins=edges)[0]

    counts = np.sum(_map_chunks(cfg, block), axis=0)
    return counts / (cfg.samples * cfg.N * np.diff(edges))
