# The three-qubit QFT picks out the period of its input.
import numpy as np

from nmrqip import qft_input, qft_matrix, qft_program, run, program_unitary
from nmrqip.qstate import equal_up_to_global_phase

prog = qft_program(3)
for step in prog.steps:
    print(step.describe())

print("circuit == QFT_8 up to phase:", equal_up_to_global_phase(program_unitary(prog), qft_matrix(3))[0])

for period in (4, 2):
    x = qft_input(period)
    print(f"\ninput period {period}:", x.populations().round(3))
    for level in ("gate", "pulse"):
        out = run(prog, x, level=level).final
        print(f"  {level:5s} output", out.populations().round(12), "peaks every", 8 // period)

# the pulse-level swap matches SWAP_13 only up to per-state signs
from nmrqip import gates, synth

rep = synth.verify_sequence(synth.synth_swap(1, 3, 3), gates.swap(1, 3, 3), up_to="diagonal")
print("\nswap cascade diagonal phases / pi:", np.round(np.array(rep.diagonal_phases) / np.pi, 3))
