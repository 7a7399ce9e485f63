"""Brute-force statevector ground truth at desk scale.

Builds explicit ground-state vectors by enumerating the star group,
takes partial traces by bit gathering, and evaluates von Neumann
entropy and two-spin concurrence from dense eigendecompositions.

Basis convention: computational basis index = binary expansion over
link occupation with link 0 as the least significant bit.  The reduced
basis after a partial trace orders the kept links ascending, again LSB
first.  This must match the bitmask convention of the GF(2) layer, and
the partial-trace index arithmetic below depends on it.
"""

from __future__ import annotations

import math
from typing import IO, Iterable

import numpy as np

from .errors import ResourceLimitError
from .gf2 import DEFAULT_ENUM_MAX_RANK, FlipVector
from .lattice import Lattice, Partition, ladder_operators, star_group
from .states import GroundStateCoeffs

MAX_ORACLE_LINKS = 26
MAX_SUBSYSTEM_LINKS = 14
EIG_NEGATIVE_TOL = 1e-10
EIG_ZERO_TOL = 1e-12

_CHUNK = 1 << 20


def build_ground_state(
    lat: Lattice,
    coeffs: GroundStateCoeffs,
    *,
    max_links: int = MAX_ORACLE_LINKS,
    enum_max_rank: int = DEFAULT_ENUM_MAX_RANK,
) -> np.ndarray:
    """Dense 2**n state vector of the ground state with given amplitudes.

    The state is assembled coset by coset: each star-group element g
    contributes amplitude a_ij/sqrt(|group|) at basis index
    g ^ (ladder shifts selected by i, j).  The four cosets are disjoint,
    so every nonzero amplitude is written exactly once.
    """
    n = lat.n_links
    if n > max_links:
        raise ResourceLimitError(f"{n} links exceed the {max_links}-link oracle cap")
    group = star_group(lat)
    w1, w2 = ladder_operators(lat)
    shifts = {  # (i, j) -> flip applied on top of the star coset
        (0, 0): 0,
        (0, 1): w1.bits,
        (1, 0): w2.bits,
        (1, 1): w1.bits ^ w2.bits,
    }
    amp_by_shift = {
        shifts[0, 0]: coeffs.a00,
        shifts[0, 1]: coeffs.a01,
        shifts[1, 0]: coeffs.a10,
        shifts[1, 1]: coeffs.a11,
    }
    members = np.fromiter(
        (v.bits for v in group.enumerate_row_space(enum_max_rank)),
        dtype=np.int64,
        count=1 << group.rank(),
    )
    norm = 1.0 / math.sqrt(len(members))
    state = np.zeros(1 << n, dtype=np.complex128)
    for shift, amp in amp_by_shift.items():
        if amp != 0:
            state[members ^ shift] += amp * norm
    return state


def apply_flip(state: np.ndarray, mask: FlipVector | int) -> np.ndarray:
    """Apply the x-flip with the given support (a basis permutation)."""
    bits = mask.bits if isinstance(mask, FlipVector) else mask
    idx = np.arange(len(state), dtype=np.int64)
    return state[idx ^ bits]


def apply_phase(state: np.ndarray, zmask: FlipVector | int) -> np.ndarray:
    """Apply the z-string on the given support (a diagonal sign flip)."""
    bits = zmask.bits if isinstance(zmask, FlipVector) else zmask
    idx = np.arange(len(state), dtype=np.int64)
    parity = np.zeros(len(state), dtype=np.int64)
    b = bits
    while b:
        l = (b & -b).bit_length() - 1
        parity ^= (idx >> l) & 1
        b &= b - 1
    return np.where(parity == 1, -state, state)


def is_stabilized(lat: Lattice, state: np.ndarray, tol: float = 1e-12) -> bool:
    """Check the state is fixed by every star (X) and plaquette (Z)."""
    for sm in lat.star_masks():
        if np.max(np.abs(apply_flip(state, sm) - state)) > tol:
            return False
    for pm in lat.plaquette_masks():
        if np.max(np.abs(apply_phase(state, pm) - state)) > tol:
            return False
    return True


def _gather_bits(idx: np.ndarray, links: Iterable[int]) -> np.ndarray:
    out = np.zeros(len(idx), dtype=np.int64)
    for pos, link in enumerate(links):
        out |= ((idx >> link) & 1) << pos
    return out


def reduced_density_matrix(
    state: np.ndarray,
    p: Partition,
    *,
    max_subsystem: int = MAX_SUBSYSTEM_LINKS,
) -> np.ndarray:
    """Partial trace over side B, keeping the links of side A.

    Amplitudes are rearranged into a matrix indexed by (A bits, B bits)
    and contracted as M M^dagger; works in chunks so the full index
    array never has to be materialized.
    """
    n = p.n_links
    if len(state) != 1 << n:
        raise ValueError("state size does not match the partition width")
    a_links = p.a_links()
    if len(a_links) > max_subsystem:
        raise ResourceLimitError(
            f"subsystem of {len(a_links)} links exceeds the "
            f"{max_subsystem}-link cap"
        )
    b_links = tuple(i for i in range(n) if not ((p.a_mask >> i) & 1))
    m = np.zeros((1 << len(a_links), 1 << len(b_links)), dtype=np.complex128)
    for lo in range(0, len(state), _CHUNK):
        hi = min(lo + _CHUNK, len(state))
        idx = np.arange(lo, hi, dtype=np.int64)
        m[_gather_bits(idx, a_links), _gather_bits(idx, b_links)] = state[lo:hi]
    return m @ m.conj().T


def reduced_spectrum(rho: np.ndarray) -> np.ndarray:
    """Eigenvalues of a density matrix, clamped and sorted descending."""
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError("density matrix must be square")
    if np.max(np.abs(rho - rho.conj().T)) > 1e-12:
        raise ValueError("density matrix is not Hermitian")
    eigs = np.linalg.eigvalsh(rho)
    if eigs.min() < -EIG_NEGATIVE_TOL:
        raise ValueError(f"density matrix has eigenvalue {eigs.min()} < 0")
    return np.sort(np.clip(eigs, 0.0, None))[::-1]


def von_neumann_entropy(rho: np.ndarray) -> float:
    """Entropy in bits; eigenvalues below 1e-12 contribute zero."""
    eigs = reduced_spectrum(rho)
    eigs = eigs[eigs > EIG_ZERO_TOL]
    return float(-(eigs * np.log2(eigs)).sum())


def off_diagonal_mass(rho: np.ndarray) -> float:
    """Sum of absolute values of the off-diagonal entries."""
    return float(np.abs(rho).sum() - np.abs(np.diag(rho)).sum())


_YY = np.array(
    [
        [0, 0, 0, -1],
        [0, 0, 1, 0],
        [0, 1, 0, 0],
        [-1, 0, 0, 0],
    ],
    dtype=np.complex128,
)


def concurrence(rho: np.ndarray) -> float:
    """Two-spin mixed-state concurrence.

    sqrt-eigenvalues of rho (Y x Y) rho* (Y x Y) in decreasing order;
    the result is clamped at zero.
    """
    if rho.shape != (4, 4):
        raise ValueError(f"concurrence needs a 4x4 density matrix, got {rho.shape}")
    r = rho @ _YY @ rho.conj() @ _YY
    eigs = np.sort(np.clip(np.linalg.eigvals(r).real, 0.0, None))[::-1]
    roots = np.sqrt(eigs)
    return float(max(0.0, roots[0] - roots[1] - roots[2] - roots[3]))


def oracle_entropy(
    lat: Lattice,
    coeffs: GroundStateCoeffs,
    p: Partition,
    *,
    max_links: int = MAX_ORACLE_LINKS,
    max_subsystem: int = MAX_SUBSYSTEM_LINKS,
    enum_max_rank: int = DEFAULT_ENUM_MAX_RANK,
) -> float:
    """Ground-state entropy across ``p`` straight from the statevector."""
    state = build_ground_state(
        lat, coeffs, max_links=max_links, enum_max_rank=enum_max_rank
    )
    return von_neumann_entropy(
        reduced_density_matrix(state, p, max_subsystem=max_subsystem)
    )


def basis_state_entropy_invariance(
    lat: Lattice, p: Partition, tol: float = 1e-9
) -> bool:
    """Check all four ladder-basis ground states give the same entropy."""
    values = [
        oracle_entropy(lat, GroundStateCoeffs.xi(i, j), p)
        for i in (0, 1)
        for j in (0, 1)
    ]
    return max(values) - min(values) <= tol


def dump_spectrum_csv(rho: np.ndarray, stream: IO[str]) -> None:
    """Write the reduced spectrum as a two-column CSV (index, eigenvalue)."""
    stream.write("index,eigenvalue\n")
    for i, lam in enumerate(reduced_spectrum(rho)):
        stream.write(f"{i},{lam!r}\n")
