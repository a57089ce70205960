"""Dense state containers and the small amount of linear algebra built on them.

Basis ordering: qubit 1 is the most significant bit, so ``|b1 b2 b3>`` has
index ``4*b1 + 2*b2 + b3``. Operators are plain complex ``numpy`` arrays.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import reduce

import numpy as np

ATOL = 1e-12

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)
PROJ_0 = np.array([[1, 0], [0, 0]], dtype=complex)
PROJ_1 = np.array([[0, 0], [0, 1]], dtype=complex)


def n_qubits_of(dim: int) -> int:
    n = int(dim).bit_length() - 1
    if dim < 1 or 2**n != dim:
        raise ValueError(f"dimension {dim} is not a power of two")
    return n


def kron(*mats) -> np.ndarray:
    """Kronecker product of one or more matrices, left factor = qubit 1."""
    if not mats:
        raise ValueError("kron needs at least one factor")
    return reduce(np.kron, (np.asarray(m, dtype=complex) for m in mats))


def is_unitary(u, tol: float = ATOL) -> bool:
    u = np.asarray(u)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    return bool(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))) <= tol)


def _check_same_shape(u, v):
    if u.shape != v.shape:
        raise ValueError(f"dimension mismatch: {u.shape} vs {v.shape}")


def global_phase(u, v) -> float:
    """Phase theta such that u ~ exp(i theta) v, read off the largest entry of v."""
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    _check_same_shape(u, v)
    k = np.unravel_index(np.argmax(np.abs(v)), v.shape)
    return float(np.angle(u[k] / v[k]))


def equal_up_to_global_phase(u, v, tol: float = ATOL) -> tuple[bool, float]:
    """Return ``(ok, theta)`` with ok true when ``max|u - e^{i theta} v| <= tol``.

    Theta is estimated from the largest-modulus entry of ``v``.
    """
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    _check_same_shape(u, v)
    if np.max(np.abs(v)) <= tol:
        raise ValueError("reference matrix is numerically zero")
    theta = global_phase(u, v)
    err = np.max(np.abs(u - np.exp(1j * theta) * v))
    return bool(err <= tol), theta


def diagonal_phases(u, v, tol: float = ATOL) -> tuple[bool, np.ndarray]:
    """Check ``u = D v`` for a diagonal unitary ``D``; return its phase angles.

    Such ``u`` and ``v`` produce identical computational-basis populations
    on every input state.
    """
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    _check_same_shape(u, v)
    d = u @ v.conj().T
    diag = np.diag(d)
    ok = np.max(np.abs(d - np.diag(diag))) <= tol and np.max(np.abs(np.abs(diag) - 1)) <= tol
    return bool(ok), np.angle(diag)


@dataclass(frozen=True)
class StateVector:
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        n_qubits_of(amps.size)
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def basis(cls, bits: str) -> StateVector:
        """Computational basis state from a bitstring such as ``"110"``."""
        if not bits or set(bits) - {"0", "1"}:
            raise ValueError(f"invalid bitstring {bits!r}")
        amps = np.zeros(2 ** len(bits), dtype=complex)
        amps[int(bits, 2)] = 1
        return cls(amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    @property
    def n_qubits(self) -> int:
        return n_qubits_of(self.dim)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def populations(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def to_density(self) -> DensityMatrix:
        a = self.amplitudes
        return DensityMatrix(np.outer(a, a.conj()))


@dataclass(frozen=True)
class DensityMatrix:
    """Density matrix, or with ``deviation=True`` a traceless deviation matrix."""

    matrix: np.ndarray = field(repr=False)
    deviation: bool = False

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("density matrix must be square")
        n_qubits_of(m.shape[0])
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def maximally_mixed(cls, n: int) -> DensityMatrix:
        return cls(np.eye(2**n) / 2**n)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_qubits(self) -> int:
        return n_qubits_of(self.dim)

    def trace(self) -> complex:
        return complex(np.trace(self.matrix))

    def is_hermitian(self, tol: float = ATOL) -> bool:
        return bool(np.max(np.abs(self.matrix - self.matrix.conj().T)) <= tol)

    def is_valid(self, tol: float = ATOL) -> bool:
        if not self.is_hermitian(tol):
            return False
        if self.deviation:
            return abs(self.trace()) <= tol
        eig = np.linalg.eigvalsh(self.matrix)
        return abs(self.trace() - 1) <= tol and eig.min() >= -1e-10

    def populations(self) -> np.ndarray:
        return populations(self)


def _check_dims(u, dim):
    if u.shape != (dim, dim):
        raise ValueError(f"operator of shape {u.shape} does not act on dimension {dim}")


def apply(u, state: StateVector) -> StateVector:
    u = np.asarray(u, dtype=complex)
    _check_dims(u, state.dim)
    return StateVector(u @ state.amplitudes)


def conjugate(u, rho: DensityMatrix) -> DensityMatrix:
    """Return ``U rho U^dagger`` with the deviation flag carried over."""
    u = np.asarray(u, dtype=complex)
    _check_dims(u, rho.dim)
    return DensityMatrix(u @ rho.matrix @ u.conj().T, deviation=rho.deviation)


def evolve(u, state):
    """Dispatch to :func:`apply` or :func:`conjugate` by state type."""
    if isinstance(state, DensityMatrix):
        return conjugate(u, state)
    return apply(u, state)


def crush(rho: DensityMatrix) -> DensityMatrix:
    """Ideal z-gradient: zero every coherence, keep the populations."""
    return DensityMatrix(np.diag(np.diag(rho.matrix)), deviation=rho.deviation)


def populations(state) -> np.ndarray:
    if isinstance(state, StateVector):
        return state.populations()
    return np.real(np.diag(state.matrix)).copy()


# JSON: {"n_qubits": int, "kind": "state"|"density"|"unitary", "re": [...], "im": [...]}


def to_dict(obj, kind: str | None = None) -> dict:
    if isinstance(obj, StateVector):
        data, kind = obj.amplitudes, "state"
    elif isinstance(obj, DensityMatrix):
        data, kind = obj.matrix, "density"
    else:
        data = np.asarray(obj, dtype=complex)
        kind = kind or "unitary"
    out = {
        "n_qubits": n_qubits_of(data.shape[0]),
        "kind": kind,
        "re": np.real(data).tolist(),
        "im": np.imag(data).tolist(),
    }
    if isinstance(obj, DensityMatrix) and obj.deviation:
        out["deviation"] = True
    return out


def from_dict(d: dict):
    kind = d.get("kind")
    data = np.asarray(d["re"], dtype=float) + 1j * np.asarray(d["im"], dtype=float)
    if data.shape[0] != 2 ** d["n_qubits"]:
        raise ValueError("n_qubits does not match data shape")
    if kind == "state":
        return StateVector(data)
    if kind == "density":
        return DensityMatrix(data, deviation=bool(d.get("deviation", False)))
    if kind == "unitary":
        return data
    raise ValueError(f"unknown kind {kind!r}")


def to_json(obj, kind: str | None = None) -> str:
    return json.dumps(to_dict(obj, kind))


def from_json(text: str):
    return from_dict(json.loads(text))
