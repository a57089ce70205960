# Preparing the |00> pseudo-pure state from an equal-weight thermal deviation.
import math

import numpy as np

from nmrqip.algorithms import pseudo_pure_2q

rho, trace = pseudo_pure_2q()
for label, state in trace.states.items():
    print(f"{label:22s}", state.populations().round(6))

print("coherence left after the gradient:", np.abs(rho.matrix - np.diag(np.diag(rho.matrix))).max())
print("prep angle", math.degrees(math.acos(1 / 3)), "deg")

# the rounded 70.5 deg leaves the three populations slightly unequal
print(pseudo_pure_2q(math.radians(70.5))[0].populations())
