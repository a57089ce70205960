"""Ideal gate matrices: conditional phase gates, Hadamard, inversion about
average, QFT, SWAP and the ``R_k`` phase gate."""

from __future__ import annotations

import cmath
import math

import numpy as np

from .qstate import IDENTITY_2, kron

HADAMARD_2 = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)

_EPS = {"e", "E", "ε", "*"}


def normalize_condition(pattern: str) -> str:
    """Canonical condition string over ``0``, ``1`` and ``e`` (unconditioned)."""
    out = []
    for c in str(pattern):
        if c in _EPS:
            out.append("e")
        elif c in "01":
            out.append(c)
        else:
            raise ValueError(f"invalid condition character {c!r} in {pattern!r}")
    if not out:
        raise ValueError("empty condition pattern")
    return "".join(out)


def conditioned_qubits(pattern: str) -> list[int]:
    """1-based indices of the qubits the pattern conditions on."""
    return [i + 1 for i, c in enumerate(normalize_condition(pattern)) if c != "e"]


def matching_states(pattern: str) -> np.ndarray:
    """Boolean mask over basis indices that satisfy ``pattern``."""
    pat = normalize_condition(pattern)
    n = len(pat)
    idx = np.arange(2**n)
    mask = np.ones(2**n, dtype=bool)
    for q, c in enumerate(pat):
        if c == "e":
            continue
        bit = (idx >> (n - 1 - q)) & 1
        mask &= bit == int(c)
    return mask


def conditional_phase(pattern: str, phi: float) -> np.ndarray:
    """Diagonal gate putting ``e^{i phi}`` on every basis state matching ``pattern``."""
    mask = matching_states(pattern)
    return np.diag(np.where(mask, cmath.exp(1j * phi), 1.0)).astype(complex)


def hadamard(n: int, qubits=None) -> np.ndarray:
    """Hadamard on the given 1-based qubits (all by default), identity elsewhere."""
    qubits = set(range(1, n + 1) if qubits is None else qubits)
    if not qubits:
        raise ValueError("hadamard needs at least one qubit")
    if not qubits <= set(range(1, n + 1)):
        raise ValueError(f"qubits {sorted(qubits)} out of range for n={n}")
    return kron(*(HADAMARD_2 if q in qubits else IDENTITY_2 for q in range(1, n + 1)))


def inversion_about_average(n: int) -> np.ndarray:
    if n < 1:
        raise ValueError("n must be positive")
    d = 2**n
    return (2 * np.full((d, d), 1 / d) - np.eye(d)).astype(complex)


def qft_matrix(n: int) -> np.ndarray:
    if n < 1:
        raise ValueError("n must be positive")
    q = 2**n
    x = np.arange(q)
    return np.exp(2j * np.pi * np.outer(x, x) / q) / math.sqrt(q)


def swap(i: int, j: int, n: int) -> np.ndarray:
    """Permutation matrix exchanging qubits ``i`` and ``j`` (1-based)."""
    if i == j:
        raise ValueError("swap needs two distinct qubits")
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"qubits ({i}, {j}) out of range for n={n}")
    bi, bj = n - i, n - j
    d = 2**n
    u = np.zeros((d, d), dtype=complex)
    for x in range(d):
        a, b = (x >> bi) & 1, (x >> bj) & 1
        y = x & ~((1 << bi) | (1 << bj)) | (b << bi) | (a << bj)
        u[y, x] = 1
    return u


def r_k(k: int) -> np.ndarray:
    if k < 1:
        raise ValueError("k must be at least 1")
    return np.diag([1, cmath.exp(2j * math.pi / 2**k)]).astype(complex)
