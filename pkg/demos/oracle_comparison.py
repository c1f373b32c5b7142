"""Closed-form 1-D coefficients against brute-force mode integration.

The truncated mode equations are integrated for a moving mirror, and the
lowest-mode Bogoliubov coefficient is compared with the closed form.  The
gap is a finite-amplitude effect, so it shrinks as the amplitude does.
Takes about half a minute.
"""

import math

import numpy as np

from casimir_entropy import dce1d, oracle

for eps in (0.01, 0.005, 0.002):
    tr = oracle.MirrorTrajectory(epsilon=eps, n_periods=1)
    periods = math.ceil(0.3 / tr.tau(tr.period) - 1e-9)
    tr = oracle.MirrorTrajectory(epsilon=eps, n_periods=periods)
    run = oracle.integrate_modes(oracle.TruncatedSystem(15), tr)
    alpha, beta = oracle.bogoliubov_history(run)
    ref = np.array([dce1d.alpha_beta_11(float(t), 0)[0].value for t in run.tau])
    dev = np.abs(alpha[:, 0, 0] - ref)
    worst = max(oracle.symplectic_defect(a, b) for a, b in zip(alpha, beta))
    print(f"eps = {eps:<6} periods = {periods:4d}  max |alpha_11 - closed form| = {dev.max():.2e}"
          f"  symplectic defect = {worst:.1e}")

print("\nat the last sample (eps = 0.002):")
print(f"  tau = {run.tau[-1]:.4f}  alpha_11 = {alpha[-1, 0, 0].real:.6f}  closed form = {ref[-1]:.6f}")
print(f"  N_1 = {oracle.particle_numbers(beta[-1])[0]:.6f}  closed form = "
      f"{dce1d.particle_number_closed_form(float(run.tau[-1])):.6f}")
