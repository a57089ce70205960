"""Gate programs and end-to-end drivers: Grover search, the 3-qubit QFT and
pseudo-pure state preparation.

A :class:`Program` lists steps in execution order. :func:`run` executes it
either with ideal gate matrices (``level="gate"``) or with compiled
selective-pulse programs (``level="pulse"``), recording the state at every
labelled checkpoint.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import gates, synth
from .angles import format_angle, parse_angle
from .pulse import PulseSpec, hard_pulse, pulse_unitary, sequence_unitary
from .qstate import DensityMatrix, StateVector, crush, evolve, to_dict

LEVELS = ("gate", "pulse")


class ProgramError(ValueError):
    pass


@dataclass(frozen=True)
class Step:
    name: str
    qubits: tuple = ()
    pattern: str = ""
    angle: float = 0.0
    label: str | None = None

    def describe(self) -> str:
        if self.name == "H":
            return "H q=" + ",".join(map(str, self.qubits))
        if self.name == "CPHASE":
            return f"CPHASE pat={self.pattern} angle={format_angle(self.angle)}"
        if self.name == "SWAP":
            return "SWAP q=" + ",".join(map(str, self.qubits))
        raise ProgramError(f"unknown step {self.name!r}")


def H(*qubits, label=None) -> Step:
    return Step("H", tuple(sorted(qubits)), label=label)


def CPHASE(pattern: str, angle: float, label=None) -> Step:
    return Step("CPHASE", pattern=gates.normalize_condition(pattern), angle=float(angle), label=label)


def SWAP(i: int, j: int, label=None) -> Step:
    return Step("SWAP", (i, j), label=label)


@dataclass(frozen=True)
class Program:
    n_qubits: int
    steps: tuple = ()
    initial_label: str = "initial"

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        labels = [self.initial_label] + [s.label for s in self.steps if s.label is not None]
        if len(set(labels)) != len(labels):
            raise ProgramError(f"duplicate checkpoint labels in {labels}")
        for s in self.steps:
            _check_step(s, self.n_qubits)

    @property
    def labels(self) -> list[str]:
        return [self.initial_label] + [s.label for s in self.steps if s.label is not None]


def _check_step(s: Step, n: int):
    if s.name == "CPHASE":
        if len(s.pattern) != n:
            raise ProgramError(f"pattern {s.pattern!r} does not match {n} qubits")
    elif s.name in ("H", "SWAP"):
        if not s.qubits or not all(1 <= q <= n for q in s.qubits):
            raise ProgramError(f"{s.name} qubits {s.qubits} out of range for n={n}")
        if s.name == "SWAP" and (len(s.qubits) != 2 or s.qubits[0] == s.qubits[1]):
            raise ProgramError("SWAP needs two distinct qubits")
    else:
        raise ProgramError(f"unknown step {s.name!r}")


@lru_cache(maxsize=512)
def gate_matrix(step: Step, n: int) -> np.ndarray:
    if step.name == "H":
        return gates.hadamard(n, step.qubits)
    if step.name == "CPHASE":
        return gates.conditional_phase(step.pattern, step.angle)
    if step.name == "SWAP":
        return gates.swap(*step.qubits, n)
    raise ProgramError(f"unknown step {step.name!r}")


@lru_cache(maxsize=512)
def compile_step(step: Step, n: int) -> tuple:
    """Selective-pulse program for one step, in time order.

    Phase gates become transition-selective z pulses, each realized by the
    composite x/y triple. A phase gate with no conditioned qubit is a global
    phase and compiles to nothing.
    """
    try:
        if step.name == "CPHASE":
            if not gates.conditioned_qubits(step.pattern):
                return ()
            res = synth.synth_phase_gate(step.pattern, step.angle, expanded=True)
            return tuple(synth.expand_composite(res.sequence))
        if step.name == "H":
            return tuple(synth.synth_hadamard(step.qubits, n))
        if step.name == "SWAP":
            return tuple(synth.synth_swap(*step.qubits, n))
    except synth.SynthesisError as exc:
        raise ProgramError(f"cannot compile {step.describe()}: {exc}") from None
    raise ProgramError(f"unknown step {step.name!r}")


@lru_cache(maxsize=512)
def step_unitary(step: Step, n: int, level: str = "gate") -> np.ndarray:
    if level == "gate":
        u = gate_matrix(step, n)
    elif level == "pulse":
        seq = compile_step(step, n)
        u = sequence_unitary(seq, n) if seq else np.eye(2**n, dtype=complex)
    else:
        raise ValueError(f"level must be one of {LEVELS}")
    u.setflags(write=False)  # shared through the cache
    return u


def program_unitary(program: Program, level: str = "gate") -> np.ndarray:
    """Overall operator; later steps multiply from the left."""
    n = program.n_qubits
    u = np.eye(2**n, dtype=complex)
    for s in program.steps:
        u = step_unitary(s, n, level) @ u
    return u


def compile_program(program: Program) -> list[PulseSpec]:
    seq = []
    for s in program.steps:
        seq.extend(compile_step(s, program.n_qubits))
    return seq


@dataclass
class RunTrace:
    states: dict = field(default_factory=dict)
    level: str = "gate"
    kind: str = "state"

    def __getitem__(self, label):
        return self.states[label]

    @property
    def final(self):
        return next(reversed(self.states.values()))

    def to_dict(self) -> dict:
        return {label: to_dict(s) for label, s in self.states.items()}


def run(program: Program, initial, level: str = "gate", final_label: str | None = None) -> RunTrace:
    """Execute ``program`` on ``initial`` (state vector or density matrix)."""
    if level not in LEVELS:
        raise ValueError(f"level must be one of {LEVELS}")
    n = program.n_qubits
    if initial.dim != 2**n:
        raise ValueError(f"initial state has dimension {initial.dim}, program needs {2**n}")
    kind = "density" if isinstance(initial, DensityMatrix) else "state"
    trace = RunTrace({program.initial_label: initial}, level, kind)
    state = initial
    for s in program.steps:
        state = evolve(step_unitary(s, n, level), state)
        if s.label is not None:
            trace.states[s.label] = state
    if final_label is not None and final_label not in trace.states:
        trace.states[final_label] = state
    return trace


def optimal_grover_iterations(n: int) -> int:
    return max(1, math.floor(math.pi / 4 * math.sqrt(2**n)))


def grover_program(n: int, target: str, iterations: int | None = None, start: str | None = None) -> Program:
    """H on all qubits, then ``iterations`` rounds of sign flip and inversion.

    The inversion about average is ``H C_start(pi) H`` where ``start`` is the
    pseudo-pure starting state (all zeros by default). Checkpoints:
    ``pseudo_pure``, ``superposition``, ``sign_flip_k`` and ``inversion_k``.
    """
    start = "0" * n if start is None else start
    for name, bits in (("target", target), ("start", start)):
        if len(bits) != n or set(bits) - {"0", "1"}:
            raise ProgramError(f"{name} {bits!r} is not a {n}-bit string")
    if iterations is None:
        iterations = optimal_grover_iterations(n)
    if iterations < 1:
        raise ProgramError("iterations must be at least 1")
    every = tuple(range(1, n + 1))
    steps = [H(*every, label="superposition")]
    for k in range(1, iterations + 1):
        steps += [
            CPHASE(target, math.pi, label=f"sign_flip_{k}"),
            H(*every),
            CPHASE(start, math.pi),
            H(*every, label=f"inversion_{k}"),
        ]
    return Program(n, steps, initial_label="pseudo_pure")


def qft_program(n: int = 3) -> Program:
    """QFT circuit in execution order, ending with the qubit-reversal swaps.

    For ``n = 3``: H1, C_11e(pi/2), H2, C_1e1(pi/4), C_e11(pi/2), H3, SWAP13.
    """
    if n < 1:
        raise ProgramError("n must be positive")
    steps = []
    for k in range(1, n + 1):
        for j in range(1, k):
            pat = "".join("1" if q in (j, k) else "e" for q in range(1, n + 1))
            steps.append(CPHASE(pat, math.pi / 2 ** (k - j)))
        steps.append(H(k))
    for i in range(1, n // 2 + 1):
        steps.append(SWAP(i, n + 1 - i))
    steps[-1] = Step(steps[-1].name, steps[-1].qubits, steps[-1].pattern, steps[-1].angle, "output")
    return Program(n, steps, initial_label="input")


def qft_input(period: int, n: int = 3) -> StateVector:
    """Periodic input prepared from ``|0...0>`` by spin-selective ``(pi/2)_y`` pulses.

    A pulse on qubits 1..k gives support on every ``2**(n-k)``-th basis
    state, i.e. period ``r = 2**(n-k)``.
    """
    q = 2**n
    if period < 1 or q % period or period & (period - 1):
        raise ProgramError(f"period {period} must be a power of two dividing {q}")
    k = n - int(math.log2(period))
    state = StateVector.basis("0" * n)
    if k:
        u = sequence_unitary(hard_pulse("y", math.pi / 2, n, range(1, k + 1)), n)
        state = evolve(u, state)
    return state


PREP_ANGLE = math.acos(1 / 3)


def thermal_deviation_2q() -> DensityMatrix:
    """Equal-weight deviation ``I_z x 1 + 1 x I_z`` scaled to diag(1, 0, 0, -1)."""
    return DensityMatrix(np.diag([1.0, 0.0, 0.0, -1.0]), deviation=True)


def pseudo_pure_2q(angle: float = PREP_ANGLE) -> tuple[DensityMatrix, RunTrace]:
    """Prepare the ``|00>`` pseudo-pure deviation.

    Rotates the ``|01>-|11>`` transition by ``angle`` (default arccos(1/3)),
    then the ``|10>-|11>`` transition by pi/2, then crushes coherences. The
    three lower populations end equal at -1/3 while ``|00>`` stays at 1.
    """
    rho = thermal_deviation_2q()
    trace = RunTrace({"thermal": rho}, level="pulse", kind="density")
    rho = evolve(pulse_unitary(PulseSpec("x", angle, 1, "*1")), rho)
    trace.states["x_on_q1_given_q2_1"] = rho
    rho = evolve(pulse_unitary(PulseSpec("x", math.pi / 2, 2, "1*")), rho)
    trace.states["x_on_q2_given_q1_1"] = rho
    rho = crush(rho)
    trace.states["pseudo_pure"] = rho
    return rho, trace


# Program text, one step per line in execution order:
#   H q=1,2,3 | CPHASE pat=110 angle=pi | SWAP q=1,3 | CHECKPOINT label
# A CHECKPOINT before any gate names the initial state.


def _qubit_list(token: str, lineno: int) -> tuple:
    if not token.startswith("q="):
        raise ProgramError(f"line {lineno}: expected q=<list>, got {token!r}")
    try:
        return tuple(int(x) for x in token[2:].split(","))
    except ValueError:
        raise ProgramError(f"line {lineno}: bad qubit list {token!r}") from None


def parse_program_text(text: str, n: int | None = None) -> Program:
    steps: list[Step] = []
    initial_label = "initial"
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        head = head.upper()
        try:
            if head == "CHECKPOINT":
                if len(rest) != 1:
                    raise ProgramError("CHECKPOINT takes one label")
                if not steps:
                    initial_label = rest[0]
                elif steps[-1].label is not None:
                    raise ProgramError("two checkpoints after one step")
                else:
                    last = steps[-1]
                    steps[-1] = Step(last.name, last.qubits, last.pattern, last.angle, rest[0])
            elif head in ("H", "SWAP"):
                if len(rest) != 1:
                    raise ProgramError(f"{head} takes q=<list>")
                qubits = _qubit_list(rest[0], lineno)
                steps.append(H(*qubits) if head == "H" else SWAP(*qubits))
            elif head == "CPHASE":
                kv = dict(tok.split("=", 1) for tok in rest if "=" in tok)
                if set(kv) != {"pat", "angle"} or len(rest) != 2:
                    raise ProgramError("CPHASE takes pat=<pattern> angle=<angle>")
                steps.append(CPHASE(kv["pat"], parse_angle(kv["angle"])))
            else:
                raise ProgramError(f"unknown instruction {head!r}")
        except (ProgramError, ValueError, TypeError) as exc:
            msg = str(exc)
            if not msg.startswith("line "):
                msg = f"line {lineno}: {msg}"
            raise ProgramError(msg) from None
    if n is None:
        widths = [len(s.pattern) for s in steps if s.name == "CPHASE"]
        n = widths[0] if widths else max((max(s.qubits) for s in steps if s.qubits), default=1)
    return Program(n, steps, initial_label=initial_label)


def serialize_program_text(program: Program) -> str:
    lines = []
    if program.initial_label != "initial":
        lines.append(f"CHECKPOINT {program.initial_label}")
    for s in program.steps:
        lines.append(s.describe())
        if s.label is not None:
            lines.append(f"CHECKPOINT {s.label}")
    return "\n".join(lines) + "\n"
