"""Selective rotation pulses and time-ordered pulse sequences.

A pulse ``(theta)_axis`` is ``exp(-i theta G)`` with generator
``G = sigma_axis/2`` on the active qubit, tensored with ``|0><0|`` or
``|1><1|`` on every fixed spectator and the identity on free (``*``)
spectators. With every spectator free the pulse is spin selective; with
every spectator fixed it addresses a single transition.

Sequences are lists in time order (index 0 first). The matrix product is
therefore taken in reverse: ``U = U_k ... U_2 U_1``.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, replace

import numpy as np

from .qstate import IDENTITY_2, PROJ_0, PROJ_1, SIGMA_X, SIGMA_Y, SIGMA_Z, kron

AXES = ("x", "-x", "y", "-y", "z", "-z")
_PAULI = {"x": SIGMA_X, "y": SIGMA_Y, "z": SIGMA_Z}
_SPECTATOR = {"0": PROJ_0, "1": PROJ_1, "*": IDENTITY_2}


class PulseProgramError(ValueError):
    """Malformed pulse-program text."""


def normalize_axis(axis: str) -> str:
    a = axis.strip().lower()
    if a.startswith("+"):
        a = a[1:]
    if a not in AXES:
        raise ValueError(f"unknown axis {axis!r}")
    return a


def negate_axis(axis: str) -> str:
    a = normalize_axis(axis)
    return a[1:] if a.startswith("-") else "-" + a


def signed_pauli(axis: str) -> np.ndarray:
    a = normalize_axis(axis)
    if a.startswith("-"):
        return -_PAULI[a[1:]]
    return _PAULI[a]


@dataclass(frozen=True)
class PulseSpec:
    """One rotation pulse.

    ``active`` is 1-based. ``pattern`` has one character per qubit from
    ``{"0", "1", "*"}``; the character at the active position is forced to
    ``"*"``.
    """

    axis: str
    angle: float
    active: int
    pattern: str

    def __post_init__(self):
        object.__setattr__(self, "axis", normalize_axis(self.axis))
        angle = float(self.angle)
        if not math.isfinite(angle):
            raise ValueError("pulse angle must be finite")
        object.__setattr__(self, "angle", angle)
        pat = str(self.pattern)
        if set(pat) - set("01*"):
            raise ValueError(f"pattern {pat!r} must use only 0, 1 and *")
        if not 1 <= self.active <= len(pat):
            raise ValueError(f"active qubit {self.active} outside pattern {pat!r}")
        pat = pat[: self.active - 1] + "*" + pat[self.active :]
        object.__setattr__(self, "pattern", pat)

    @classmethod
    def spin(cls, axis: str, angle: float, active: int, n: int) -> PulseSpec:
        """Spin-selective pulse: every spectator free."""
        return cls(axis, angle, active, "*" * n)

    @property
    def n_qubits(self) -> int:
        return len(self.pattern)

    @property
    def spectators(self) -> str:
        return self.pattern[: self.active - 1] + self.pattern[self.active :]

    @property
    def is_spin_selective(self) -> bool:
        return set(self.spectators) <= {"*"}

    @property
    def is_transition_selective(self) -> bool:
        return "*" not in self.spectators

    @property
    def is_z(self) -> bool:
        return self.axis in ("z", "-z")

    def label(self) -> str:
        """Compact label such as ``1z0`` or ``11(-x)``."""
        ax = self.axis if len(self.axis) == 1 else f"({self.axis})"
        return self.pattern[: self.active - 1] + ax + self.pattern[self.active :]


def _check_n(p: PulseSpec, n: int | None) -> int:
    if n is None:
        return p.n_qubits
    if p.n_qubits != n:
        raise ValueError(f"pulse pattern {p.pattern!r} has length {p.n_qubits}, expected {n}")
    return n


def _embed(p: PulseSpec, active_factor: np.ndarray) -> np.ndarray:
    factors = [_SPECTATOR[c] for c in p.pattern]
    factors[p.active - 1] = active_factor
    return kron(*factors)


def generator(p: PulseSpec, n: int | None = None) -> np.ndarray:
    """Hermitian generator ``G`` with ``pulse_unitary(p) = exp(-i angle G)``."""
    _check_n(p, n)
    return _embed(p, signed_pauli(p.axis) / 2)


def rotation_2x2(axis: str, angle: float) -> np.ndarray:
    return math.cos(angle / 2) * IDENTITY_2 - 1j * math.sin(angle / 2) * signed_pauli(axis)


def pulse_unitary(p: PulseSpec, n: int | None = None) -> np.ndarray:
    """Closed-form ``exp(-i angle G)``: identity off the selected subspace."""
    n = _check_n(p, n)
    selected = _embed(p, IDENTITY_2)
    rotated = _embed(p, rotation_2x2(p.axis, p.angle))
    return np.eye(2**n, dtype=complex) - selected + rotated


def sequence_unitary(seq, n: int | None = None) -> np.ndarray:
    seq = list(seq)
    if not seq:
        raise ValueError("empty pulse sequence")
    n = _check_n(seq[0], n)
    u = np.eye(2**n, dtype=complex)
    for p in seq:
        u = pulse_unitary(p, n) @ u
    return u


def composite_z(p: PulseSpec) -> list[PulseSpec]:
    """Replace a z rotation by ``(pi/2)_y (angle)_x (pi/2)_-y`` in time order.

    All three pulses keep the selectivity of ``p``. For a ``-z`` pulse the
    x rotation angle is negated.
    """
    if not p.is_z:
        raise ValueError(f"composite_z needs a z pulse, got axis {p.axis!r}")
    theta = p.angle if p.axis == "z" else -p.angle
    return [
        replace(p, axis="y", angle=math.pi / 2),
        replace(p, axis="x", angle=theta),
        replace(p, axis="-y", angle=math.pi / 2),
    ]


def transition_expansion(p: PulseSpec) -> list[PulseSpec]:
    """Split a pulse with free spectators into one pulse per fixed assignment.

    Free spectators are enumerated in binary order, qubit 1 most significant.
    For z pulses the members commute and their product equals ``p``.
    """
    free = [i for i, c in enumerate(p.pattern) if c == "*" and i != p.active - 1]
    out = []
    for bits in itertools.product("01", repeat=len(free)):
        pat = list(p.pattern)
        for i, b in zip(free, bits):
            pat[i] = b
        out.append(replace(p, pattern="".join(pat)))
    return out


def hard_pulse(axis: str, angle: float, n: int, qubits=None) -> list[PulseSpec]:
    """A non-selective pulse, as one spin-selective pulse per qubit."""
    qubits = range(1, n + 1) if qubits is None else qubits
    return [PulseSpec.spin(axis, angle, q, n) for q in qubits]


# text format, one pulse per line:  <axis> <angle_radians> q<active> pat=<pattern>

_LINE = re.compile(r"^(\S+)\s+(\S+)\s+q(\d+)\s+pat=(\S+)$")


def parse_program(text: str) -> list[PulseSpec]:
    seq = []
    n = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        m = _LINE.match(line)
        if not m:
            raise PulseProgramError(f"line {lineno}: cannot parse {raw!r}")
        axis, angle, active, pat = m.groups()
        try:
            p = PulseSpec(axis, float(angle), int(active), pat)
        except ValueError as exc:
            raise PulseProgramError(f"line {lineno}: {exc}") from None
        if pat[p.active - 1] != "*":
            raise PulseProgramError(f"line {lineno}: active position must be '*' in {pat!r}")
        if n is not None and p.n_qubits != n:
            raise PulseProgramError(f"line {lineno}: pattern length {p.n_qubits}, expected {n}")
        n = p.n_qubits
        seq.append(p)
    return seq


def format_pulse(p: PulseSpec) -> str:
    return f"{p.axis} {p.angle!r} q{p.active} pat={p.pattern}"


def serialize_program(seq, header: str | None = None) -> str:
    lines = [f"# {h}" for h in header.splitlines()] if header else []
    lines.extend(format_pulse(p) for p in seq)
    return "\n".join(lines) + "\n"
