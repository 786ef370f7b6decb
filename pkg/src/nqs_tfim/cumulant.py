"""Cumulant (coupled-cluster) expansion of a state via Walsh-Hadamard.

log Psi(s) = sum_A c_A S_A(s), where A runs over subset bitmasks and
S_A(s) = prod_{i in A} s_i is a monomial of +-1 spin variables. The
coefficients are the Walsh-Hadamard transform of log Psi up to a per-order
sign: S_A(s) = (-1)^|A| (-1)^{A.b} for the bit vector b of s, so
c_A = (-1)^|A| fwht(log Psi)[A] / 2^L.

Truncation keeps the N by-magnitude largest coefficients (not the lowest
orders), re-exponentiates and renormalizes.
"""

from dataclasses import dataclass

import numpy as np

from . import exact, hilbert

AMPLITUDE_FLOOR = 1e-30
COEFF_FLOOR = 1e-300   # below this an exact coefficient has no relative error


def fwht(v: np.ndarray) -> np.ndarray:
    """Unnormalized fast Walsh-Hadamard transform; fwht(fwht(v)) = len(v)*v."""
    v = np.array(v, dtype=complex)
    n = v.size
    if n == 0 or n & (n - 1):
        raise ValueError(f"length {n} is not a power of two")
    h = 1
    while h < n:
        v = v.reshape(-1, 2, h)
        a = v[:, 0, :] + v[:, 1, :]
        b = v[:, 0, :] - v[:, 1, :]
        v = np.stack([a, b], axis=1)
        h *= 2
    return v.reshape(n)


def subset_orders(L: int) -> np.ndarray:
    """|A| for every subset bitmask A in [0, 2^L)."""
    return np.bitwise_count(np.arange(1 << L, dtype=np.uint64)).astype(np.int64)


@dataclass(frozen=True)
class CumulantCoefficients:
    c: np.ndarray   # (2^L,) complex, indexed by subset bitmask
    L: int

    def __post_init__(self):
        if self.c.shape != (1 << self.L,):
            raise ValueError("coefficient vector length must be 2^L")


def cumulant_coefficients(psi: np.ndarray, floor: float = AMPLITUDE_FLOOR) -> CumulantCoefficients:
    """Expansion coefficients of log Psi for a phase-fixed state.

    Amplitudes below `floor` in magnitude are clamped before the log, so
    states with exact zeros give regularization-dependent results.
    """
    psi = np.asarray(psi, dtype=complex)
    n = psi.size
    L = int(n).bit_length() - 1
    if n != 1 << L:
        raise ValueError("state length is not a power of two")
    mags = np.abs(psi)
    if np.all(mags < floor):
        raise ValueError("all amplitudes below the clamp floor")
    log_amp = np.log(np.maximum(mags, floor)) + 1j * np.angle(psi)
    signs = 1.0 - 2.0 * (subset_orders(L) & 1)
    return CumulantCoefficients(signs * fwht(log_amp) / n, L)


def reconstruct(coeffs: CumulantCoefficients, kept: np.ndarray | None = None) -> np.ndarray:
    """exp(sum_{A in kept} c_A S_A(s)), normalized and phase-fixed.

    `kept` is an array of subset bitmasks; None keeps everything.
    """
    c = coeffs.c
    if kept is not None:
        masked = np.zeros_like(c)
        masked[kept] = c[kept]
        c = masked
    n = c.size
    signs = 1.0 - 2.0 * (subset_orders(coeffs.L) & 1)
    log_amp = fwht(signs * c)
    amps = np.exp(log_amp - np.max(log_amp.real))
    return exact.fix_phase(amps / np.linalg.norm(amps))


def magnitude_ranking(coeffs: CumulantCoefficients) -> np.ndarray:
    """Subset bitmasks ordered by descending |c_A|, ties by ascending mask."""
    c = coeffs.c
    return np.lexsort((np.arange(c.size), -np.abs(c)))


@dataclass(frozen=True)
class TruncationResult:
    kept: np.ndarray       # bitmasks of the N largest coefficients
    state: np.ndarray      # reconstructed, normalized, phase-fixed


def truncate(coeffs: CumulantCoefficients, n_keep: int) -> TruncationResult:
    """Keep the n_keep by-magnitude largest coefficients and re-exponentiate."""
    if not 1 <= n_keep <= coeffs.c.size:
        raise ValueError(f"n_keep={n_keep} outside [1, {coeffs.c.size}]")
    kept = magnitude_ranking(coeffs)[:n_keep]
    return TruncationResult(kept, reconstruct(coeffs, kept))


def default_n_grid(L: int, n_points: int = 200) -> np.ndarray:
    """All N in [1, 2^L] for L <= 10, ~n_points log-spaced above."""
    total = 1 << L
    if L <= 10:
        return np.arange(1, total + 1)
    grid = np.unique(np.geomspace(1, total, n_points).round().astype(int))
    return grid


def infidelity_curve(source: np.ndarray, reference: np.ndarray, ns) -> list:
    """(N, infidelity(truncated source, reference)) for each N in ns."""
    coeffs = cumulant_coefficients(exact.fix_phase(exact.normalize(source)))
    ranking = magnitude_ranking(coeffs)
    out = []
    for n in ns:
        state = reconstruct(coeffs, ranking[: int(n)])
        out.append((int(n), exact.infidelity(state, reference)))
    return out


def coefficient_relative_errors(
    c_model: CumulantCoefficients, c_exact: CumulantCoefficients,
    floor: float = COEFF_FLOOR,
):
    """Per-coefficient relative errors ranked by descending |c_exact|.

    Returns (ranked bitmasks, errors); entries where |c_exact| < floor are
    NaN (relative error undefined).
    """
    if c_model.L != c_exact.L:
        raise ValueError("coefficient sets live on different chains")
    ranking = magnitude_ranking(c_exact)
    ref = np.abs(c_exact.c[ranking])
    err = np.abs(c_model.c[ranking] - c_exact.c[ranking])
    out = np.full(ref.shape, np.nan)
    ok = ref >= floor
    out[ok] = err[ok] / ref[ok]
    return ranking, out
