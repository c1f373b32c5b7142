"""A resonant mode in a square 2-D cavity, seen through a beam splitter.

Only the resonant mode is squeezed.  Mixing it 50/50 with a spectator mode
and keeping one output gives a subsystem whose entropy grows linearly, at
the rate of the instability.
"""

import math

import numpy as np

from casimir_entropy import dcend, gaussian

geom = dcend.CavityGeometry((1.0, 1.0), epsilon=0.01)
params = dcend.resonance_gamma(geom)
print(f"omega_r = {params.omega_r:.6f}, gamma = {params.gamma:.6f}, rate = {params.rate:.7f}")

print(f"\n{'x':>6} {'R_A':>10} {'log cosh x':>11} {'S_A - R_A':>10}")
for x in (0.5, 1.0, 2.0, 4.0, 8.0, 16.0):
    m = dcend.mixed_subsystem_entropies(params, x / params.rate)
    print(f"{x:6.1f} {m.renyi:10.6f} {math.log(math.cosh(x)):11.6f} {m.entropy - m.renyi:10.6f}")
print(f"  limit of S_A - R_A: 1 - log 2 = {1 - math.log(2):.6f}")

# the same rate shows up three ways
K = dcend.lift_generator(dcend.resonant_flow(params, 0.0).generator, 4)
mixed = dcend.generic_subsystem(dcend.mode_subsystem(4, [0], gaussian.beam_splitter(4, 0, 1)), K)
print("\nexponents / rate:")
print("  Floquet  ", dcend.mathieu_floquet_mu(params.omega_r, dcend.mathieu_drive_amplitude(geom)) / params.rate)
print("  generator", dcend.lyapunov_spectrum(K)[0] / params.rate)
print("  subsystem", dcend.subsystem_exponent(mixed, params) / params.rate)

alone = dcend.generic_subsystem(dcend.mode_subsystem(4, [0]), K)
print("resonant mode alone: generic =", alone.generic, " exponent =", dcend.subsystem_exponent(alone, params))

rng = np.random.default_rng(1)
sub = dcend.generic_subsystem(dcend.random_subsystem(4, [0, 1], rng), K)
print("random subsystem:    generic =", sub.generic, " exponent / rate =",
      dcend.subsystem_exponent(sub, params) / params.rate)
