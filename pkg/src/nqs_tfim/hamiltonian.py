"""Rotated transverse-field Ising chain with open boundaries.

H(theta) = -sum_{i<L-1} sz~_i sz~_{i+1} - lambda * sum_i sx~_i, where the
rotated Paulis are sx~ = cos(t) sx + sin(t) sz and sz~ = cos(t) sz - sin(t) sx.
Expanding gives a fixed collection of X/Z Pauli strings with real
coefficients, stored as (x_mask, z_mask, coeff) triples. The matrix element
of coeff * Z_A X_B between <s| and |s'> is nonzero only for s' = s ^ B and
then equals coeff * prod_{i in A} s_i.
"""

from dataclasses import dataclass, field

import numpy as np

from . import hilbert

DENSE_MAX_SITES = 14
COEFF_DROP_TOL = 1e-14


@dataclass(frozen=True)
class RotatedTfim:
    L: int
    lam: float
    theta: float
    terms: tuple = field(init=False, repr=False)

    def __post_init__(self):
        hilbert.check_sites(self.L)
        object.__setattr__(self, "terms", _build_terms(self.L, self.lam, self.theta))

    @property
    def dim(self) -> int:
        return 1 << self.L


def _build_terms(L, lam, theta):
    c, s = np.cos(theta), np.sin(theta)
    acc = {}

    def add(x_mask, z_mask, coeff):
        key = (x_mask, z_mask)
        acc[key] = acc.get(key, 0.0) + coeff

    for i in range(L - 1):
        zi, zj = 1 << i, 1 << (i + 1)
        # (c Z - s X)_i (c Z - s X)_{i+1} with overall minus sign
        add(0, zi | zj, -c * c)
        add(zj, zi, c * s)       # Z_i X_{i+1}
        add(zi, zj, c * s)       # X_i Z_{i+1}
        add(zi | zj, 0, -s * s)
    for i in range(L):
        m = 1 << i
        add(m, 0, -lam * c)
        add(0, m, -lam * s)

    return tuple(
        (x, z, v) for (x, z), v in sorted(acc.items()) if abs(v) > COEFF_DROP_TOL
    )


def row(h: RotatedTfim, s: int):
    """All nonzero matrix elements H_{s s'} of row s.

    Returns a list of (s', amplitude) pairs with duplicate targets merged
    and coefficients below the drop tolerance removed.
    """
    hilbert.check_config(s, h.L)
    out = {}
    for x_mask, z_mask, coeff in h.terms:
        sign = 1 - 2 * (int(~s & z_mask & (h.dim - 1)).bit_count() & 1)
        target = s ^ x_mask
        out[target] = out.get(target, 0.0) + coeff * sign
    return [(t, v) for t, v in sorted(out.items()) if abs(v) > COEFF_DROP_TOL]


def dense_matrix(h: RotatedTfim) -> np.ndarray:
    """Full 2^L x 2^L real symmetric matrix (L <= 14)."""
    if h.L > DENSE_MAX_SITES:
        raise ValueError(f"dense matrix refused for L={h.L} > {DENSE_MAX_SITES}")
    dim = h.dim
    idx = np.arange(dim)
    m = np.zeros((dim, dim))
    for x_mask, z_mask, coeff in h.terms:
        m[idx, idx ^ x_mask] += coeff * hilbert.parity_in_mask(idx, z_mask)
    return m


def matvec(h: RotatedTfim, v: np.ndarray) -> np.ndarray:
    """H @ v using the term list, O(n_terms * 2^L)."""
    idx = np.arange(h.dim)
    out = np.zeros_like(np.asarray(v, dtype=np.result_type(v, float)))
    for x_mask, z_mask, coeff in h.terms:
        out += coeff * hilbert.parity_in_mask(idx, z_mask) * v[idx ^ x_mask]
    return out


def _grouped_elements(h: RotatedTfim):
    """Matrix elements merged per flip mask: yields (x_mask, values over s).

    values[s] = H_{s, s^x_mask}; terms sharing a flip mask are summed
    before any sign inspection.
    """
    idx = np.arange(h.dim)
    groups = {}
    for x_mask, z_mask, coeff in h.terms:
        groups.setdefault(x_mask, []).append((z_mask, coeff))
    for x_mask, parts in groups.items():
        vals = np.zeros(h.dim)
        for z_mask, coeff in parts:
            vals += coeff * hilbert.parity_in_mask(idx, z_mask)
        yield x_mask, vals


def is_stoquastic(h: RotatedTfim, tol: float = 1e-12) -> bool:
    """True iff every off-diagonal matrix element is <= tol."""
    if h.L > DENSE_MAX_SITES:
        raise ValueError(f"stoquasticity scan refused for L={h.L} > {DENSE_MAX_SITES}")
    for x_mask, vals in _grouped_elements(h):
        if x_mask == 0:
            continue
        if np.any(vals > tol):
            return False
    return True


def phase_amplitude_decomposition(h: RotatedTfim, s: int, sp: int):
    """Write H_{s' s} = -|H| * exp(i Theta); returns (|H|, Theta).

    Elements are real, so Theta is 0 (negative element) or pi (positive).
    """
    amp = dict(row(h, s)).get(sp)
    if amp is None:
        raise ValueError(f"H[{s},{sp}] is zero; phase undefined")
    return abs(amp), (0.0 if amp < 0 else np.pi)


def stoquastic_energy(h: RotatedTfim, amplitudes: np.ndarray) -> float:
    """Sign-free energy: off-diagonal elements replaced by -|H_{s's}|.

    Returns (sum_s H_ss A(s)^2 - sum_{s != s'} |H_{s's}| A(s') A(s)) / sum A^2,
    the variational energy an amplitude-only (phase-free) optimizer sees.
    Diagonal elements keep their sign: they couple to |A|^2 only and carry
    no phase interference, so taking their magnitude would change the
    energy even for exactly uniform phases.
    """
    a = np.asarray(amplitudes, dtype=float)
    norm = np.sum(a * a)
    if norm == 0:
        raise ValueError("amplitude vector is identically zero")
    idx = np.arange(h.dim)
    total = 0.0
    for x_mask, vals in _grouped_elements(h):
        if x_mask == 0:
            total += np.sum(vals * a * a)
        else:
            total -= np.sum(np.abs(vals) * a[idx ^ x_mask] * a)
    return total / norm


def parity_expectation(h: RotatedTfim, psi: np.ndarray) -> float:
    """<psi| prod_i sx~_i(theta) |psi> for a normalized state."""
    c, s = np.cos(h.theta), np.sin(h.theta)
    idx = np.arange(h.dim)
    v = np.asarray(psi, dtype=complex).copy()
    for i in range(h.L):
        v = c * v[idx ^ (1 << i)] + s * hilbert.parity_in_mask(idx, 1 << i) * v
    return float(np.real(np.vdot(psi, v)))
