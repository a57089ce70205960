# Compiling conditional phase gates into selective z pulses.
import math

import numpy as np

from nmrqip import gates, synth
from nmrqip.pulse import serialize_program

phi = math.pi / 3

# C_111(phi) on three qubits: 4 + 2 + 1 transition-selective z pulses
res = synth.synth_phase_gate("111", phi, expanded=True)
for p in res.sequence:
    print(f"({p.angle / phi:.4g} phi)_{p.label()}")
print("z pulses:", res.z_pulse_count, " predicted global phase:", res.expected_phase)

# the product equals the ideal gate up to exp(-i phi/8)
report = synth.verify_sequence(res.sequence, gates.conditional_phase("111", phi), res.expected_phase)
print(report.to_json())

# any order of the conditioned qubits works and costs the same
for order in [(2, 1, 3), (3, 2, 1), (3, 1, 2)]:
    alt = synth.synth_phase_gate("111", phi, order=order, expanded=True)
    print(order, [p.label() for p in alt.sequence], np.allclose(alt.unitary(), res.unitary()))

# a reduced gate (third qubit unconditioned) needs one pulse fewer
red = synth.synth_phase_gate("11e", phi, expanded=True)
print("C_11e pulses:", [p.label() for p in red.sequence])

# merged form: one spin-selective pulse on qubit 1 replaces four transition pulses
print(serialize_program(synth.synth_phase_gate("11e", phi).sequence))

# each z pulse is realized with three x/y pulses
rf = synth.expand_composite(res.sequence)
print(len(rf), "r.f. pulses; still verifies:",
      synth.verify_sequence(rf, gates.conditional_phase("111", phi), res.expected_phase).passed)

# pulse count 2^N - 2^(N-m)
for n in range(1, 6):
    print(n, [synth.expected_pulse_count(n, m) for m in range(1, n + 1)])
