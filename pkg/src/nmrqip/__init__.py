"""Selective-pulse compilation and simulation of conditional phase gates."""

from .algorithms import (
    Program,
    RunTrace,
    Step,
    grover_program,
    program_unitary,
    pseudo_pure_2q,
    qft_input,
    qft_program,
    run,
)
from .gates import conditional_phase, hadamard, inversion_about_average, qft_matrix, r_k, swap
from .pulse import PulseSpec, composite_z, parse_program, pulse_unitary, sequence_unitary, serialize_program
from .qstate import DensityMatrix, StateVector, equal_up_to_global_phase
from .synth import expand_composite, synth_hadamard, synth_phase_gate, synth_swap, verify_sequence

__version__ = "0.1.0"
