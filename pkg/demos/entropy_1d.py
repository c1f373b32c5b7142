"""Entanglement of the lowest cavity mode with the rest of a 1-D cavity.

The mirror oscillates at twice the lowest mode frequency.  This prints the
exact Renyi and von Neumann entropies of that mode against slow time tau,
next to the large-tau expansions, and the approach of S - log(tau)/2 to
its limiting constant.
"""

import math

from casimir_entropy import dce1d

print(f"{'tau':>6} {'R exact':>10} {'R asymp':>10} {'S exact':>10} {'S asymp':>10}")
for tau in (0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 6.0):
    print(f"{tau:6.2f} {dce1d.renyi_1d(tau):10.6f} {dce1d.renyi_asymp1(tau):10.6f} "
          f"{dce1d.entropy_1d(tau):10.6f} {dce1d.entropy_asymp(tau):10.6f}")

print("\nS - log(tau)/2 tends to", f"{dce1d.ENTROPY_OFFSET:.6f}")
for tau in (5.0, 10.0, 20.0, 50.0):
    print(f"  tau = {tau:5.1f}: {dce1d.entropy_1d(tau) - 0.5 * math.log(tau):.6f}")

# entropy grows only logarithmically while particle number grows linearly
print("\nparticle number in the lowest mode (closed form)")
for tau in (1.0, 2.0, 3.0):
    print(f"  tau = {tau}: N_1 = {dce1d.particle_number_closed_form(tau):.5f}")
