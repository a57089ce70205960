# Grover search on three qubits, with ideal gates and with compiled pulses.
import numpy as np

from nmrqip import StateVector, grover_program, run
from nmrqip.algorithms import compile_program
from nmrqip.qstate import global_phase

prog = grover_program(3, "110", iterations=2)
gate = run(prog, StateVector.basis("000"), level="gate")
pulse = run(prog, StateVector.basis("000"), level="pulse")

np.set_printoptions(precision=4, suppress=True)
for label in prog.labels:
    a = pulse[label].amplitudes
    a = a * np.exp(-1j * global_phase(a, gate[label].amplitudes))
    print(f"{label:14s} gate  {gate[label].amplitudes.real}")
    print(f"{'':14s} pulse {a.real}")

print("P(110) =", gate.final.populations()[6], "= 121/128 =", 121 / 128)
print("pulses in the whole pulse-level program:", len(compile_program(prog)))

# two qubits: one iteration finds any target with certainty
for target in ["00", "01", "10", "11"]:
    t = run(grover_program(2, target, 1), StateVector.basis("00"), level="pulse")
    print(target, t.final.populations().round(12))
