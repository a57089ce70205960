"""Lowering of gates to selective pulse programs, plus verification.

A conditional phase gate on ``m`` conditioned qubits is built from z
rotations: the ``t``-th conditioned qubit (in the chosen order) gets a
rotation by ``phi / 2**(m - t)``, about ``+z`` when its condition bit is 1
and ``-z`` when it is 0, selective on the bits of the qubits handled
before it. The product equals the ideal gate times ``exp(-i phi / 2**m)``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import gates
from .pulse import PulseSpec, composite_z, sequence_unitary, transition_expansion
from .qstate import ATOL, diagonal_phases


class SynthesisError(ValueError):
    pass


@dataclass(frozen=True)
class SynthesisResult:
    sequence: list
    expected_phase: float
    z_pulse_count: int
    expanded: bool

    def unitary(self) -> np.ndarray:
        return sequence_unitary(self.sequence)


def expected_pulse_count(n: int, m: int) -> int:
    """Transition-selective z pulses needed for ``m`` conditioned qubits out of ``n``."""
    return 2**n - 2 ** (n - m)


def synth_phase_gate(pattern: str, phi: float, order=None, expanded: bool = False) -> SynthesisResult:
    """Compile ``C_pattern(phi)`` into z pulses.

    ``order`` is a permutation of the conditioned qubits (1-based), default
    ascending. With ``expanded`` every free spectator is enumerated, giving
    only transition-selective pulses; otherwise each qubit gets a single
    (spin- or subset-selective) pulse.
    """
    pat = gates.normalize_condition(pattern)
    n = len(pat)
    cond = gates.conditioned_qubits(pat)
    m = len(cond)
    if m == 0:
        raise SynthesisError("no conditioned qubits: the gate is a global phase")
    if order is None:
        order = cond
    order = [int(q) for q in order]
    if sorted(order) != cond:
        raise SynthesisError(f"order {order} is not a permutation of conditioned qubits {cond}")

    seq = []
    fixed = ["*"] * n
    for t, q in enumerate(order, 1):
        bit = pat[q - 1]
        p = PulseSpec("z" if bit == "1" else "-z", phi / 2 ** (m - t), q, "".join(fixed))
        seq.extend(transition_expansion(p) if expanded else [p])
        fixed[q - 1] = bit

    return SynthesisResult(
        sequence=seq,
        expected_phase=-phi / 2**m,
        z_pulse_count=len(seq),
        expanded=expanded,
    )


def expand_composite(seq) -> list[PulseSpec]:
    """Replace each z pulse by its three-pulse x/y realization."""
    out = []
    for p in seq:
        out.extend(composite_z(p) if p.is_z else [p])
    return out


def synth_hadamard(qubits, n: int) -> list[PulseSpec]:
    """Hadamard on ``qubits`` as spin-selective ``(pi)_x`` then ``(pi/2)_-y``.

    Each qubit contributes a factor ``-i``.
    """
    qubits = sorted(set(qubits))
    if not qubits:
        raise SynthesisError("hadamard needs at least one qubit")
    if qubits[0] < 1 or qubits[-1] > n:
        raise SynthesisError(f"qubits {qubits} out of range for n={n}")
    return [PulseSpec.spin("x", math.pi, q, n) for q in qubits] + [
        PulseSpec.spin("-y", math.pi / 2, q, n) for q in qubits
    ]


def hadamard_phase(qubits) -> complex:
    return (-1j) ** len(set(qubits))


def synth_swap(i: int, j: int, n: int) -> list[PulseSpec]:
    """Exchange qubits ``i`` and ``j`` with a cascade of selective pi pulses.

    For each assignment of the remaining qubits three pi pulses route
    ``|..0..1..> <-> |..1..0..>`` through a pivot state with ``i = j = c``;
    ``c`` is the first spectator bit (0 when there is none). For (1, 3) of
    3 qubits this is ``[00x x00 00x][11x x11 11x]``. The product matches the
    SWAP permutation up to a diagonal phase matrix.
    """
    if i == j:
        raise SynthesisError("swap needs two distinct qubits")
    if not (1 <= i <= n and 1 <= j <= n):
        raise SynthesisError(f"swap({i}, {j}) unsupported for n={n}")
    i, j = min(i, j), max(i, j)
    others = [q for q in range(1, n + 1) if q not in (i, j)]
    seq = []
    for s in range(2 ** len(others)):
        bits = format(s, f"0{len(others)}b") if others else ""
        c = bits[0] if bits else "0"
        pat = ["*"] * n
        for q, b in zip(others, bits):
            pat[q - 1] = b
        on_j = pat.copy()
        on_j[i - 1] = c
        on_i = pat.copy()
        on_i[j - 1] = c
        a = PulseSpec("x", math.pi, j, "".join(on_j))
        b = PulseSpec("x", math.pi, i, "".join(on_i))
        seq.extend([a, b, a])
    return seq


def pulse_counts(seq) -> dict:
    """Pulse accounting by kind."""
    seq = list(seq)
    return {
        "total": len(seq),
        "z": sum(p.is_z for p in seq),
        "transition_selective": sum(p.is_transition_selective for p in seq),
        "spin_selective": sum(p.is_spin_selective and not p.is_transition_selective for p in seq),
    }


def _wrap(angle: float) -> float:
    return float((angle + math.pi) % (2 * math.pi) - math.pi)


@dataclass
class VerificationReport:
    target: str
    max_err: float
    phase: float
    passed: bool
    expected_phase: float | None = None
    phase_error: float | None = None
    diagonal_phases: list | None = field(default=None)

    def to_dict(self) -> dict:
        d = {"target": self.target, "max_err": self.max_err, "phase": self.phase, "pass": self.passed}
        if self.expected_phase is not None:
            d["expected_phase"] = self.expected_phase
            d["phase_error"] = self.phase_error
        if self.diagonal_phases is not None:
            d["diagonal_phases"] = self.diagonal_phases
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def verify_sequence(
    seq,
    target,
    expected_phase: float | None = None,
    tol: float = ATOL,
    up_to: str = "global",
    name: str = "",
) -> VerificationReport:
    """Compare a pulse program with a target matrix.

    ``up_to="global"`` aligns a single phase (the Frobenius-optimal one) and
    reports the max-entry residual. ``up_to="diagonal"`` allows a per-state
    phase and records those phases; populations are then exactly preserved.
    The phase check against ``expected_phase`` uses a 1e-9 window mod 2 pi.
    """
    target = np.asarray(target, dtype=complex)
    u = sequence_unitary(seq) if len(seq) else np.eye(target.shape[0], dtype=complex)
    if u.shape != target.shape:
        raise ValueError(f"dimension mismatch: program {u.shape} vs target {target.shape}")

    diag = None
    if up_to == "global":
        theta = float(np.angle(np.vdot(target, u)))
        max_err = float(np.max(np.abs(u - np.exp(1j * theta) * target)))
    elif up_to == "diagonal":
        _, angles = diagonal_phases(u, target)
        max_err = float(np.max(np.abs(u - np.exp(1j * angles)[:, None] * target)))
        theta = float(angles[0])
        diag = [float(a) for a in angles]
    else:
        raise ValueError(f"up_to must be 'global' or 'diagonal', not {up_to!r}")

    passed = max_err <= tol
    phase_error = None
    if expected_phase is not None:
        phase_error = abs(_wrap(theta - expected_phase))
        passed = passed and phase_error <= 1e-9
    return VerificationReport(
        target=name,
        max_err=max_err,
        phase=theta,
        passed=bool(passed),
        expected_phase=expected_phase,
        phase_error=phase_error,
        diagonal_phases=diag,
    )
