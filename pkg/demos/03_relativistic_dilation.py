#!/usr/bin/env python3
"""Relativistic tick rates, and what they do to quantum phases.

First the classical part: the kinematic factor sqrt(1 - v^2/c^2) and the
Schwarzschild factor sqrt(1 - 2GM/(r c^2)), evaluated directly and
recovered through the general-metric proper-time integral.

Then the quantum part: a qubit hovering at r = 4GM/c^2 evolves in its own
emergent time.  Its Hamiltonian is untouched; only the time argument is
rescaled, so its phase advances sqrt(1/2) as fast as a faraway twin's.
"""

import numpy as np

from chronosim import (
    StateVector,
    WorldlineSpec,
    emergent_time_metric,
    emergent_time_schwarzschild,
    emergent_time_unified,
    evolve_unitary,
    hermitian_operator,
    reparametrized_trajectory,
    schwarzschild_factor,
    sr_factor,
)

print("kinematic dilation:")
for v in (0.0, 0.3, 0.6, 0.9, 0.99):
    print(f"  v = {v:4.2f} c   dtau/dt = {sr_factor(v):.6f}")

print("\ngravitational dilation (GM = 1):")
for r in (2.5, 4.0, 10.0, 100.0):
    print(f"  r = {r:6.1f}   dtau/dt = {schwarzschild_factor(1.0, r):.6f}")

# the general-metric integral reproduces both special cases
T = 10.0
sr_quad, _ = emergent_time_metric([-1.0, 1.0], [1.0, 0.6], 0.0, T)
print(f"\nMinkowski worldline at v = 0.6c over T = {T}: proper time "
      f"{sr_quad:.10f} (factor x T = {sr_factor(0.6) * T})")
schw_quad, _ = emergent_time_metric([-(1 - 2 / 4), 1.0], [1.0, 0.0], 0.0, T)
print(f"static observer at r = 4GM: proper time {schw_quad:.10f} "
      f"(emergent-time functional: {emergent_time_schwarzschild(1.0, 4.0, T):.10f})")

# gravitationally modulated quantum evolution
GM = 1.0
spec = WorldlineSpec(t0=0.0, t1=T, r=4.0 * GM, GM=GM)
series = emergent_time_unified(spec, tol=1e-12, grid_points=11)
H = hermitian_operator(np.diag([0.0, 1.0]))
psi0 = StateVector(np.array([1.0, 1.0]) / np.sqrt(2))
near = reparametrized_trajectory(H, psi0, series)

factor = schwarzschild_factor(GM, 4.0 * GM)
print(f"\nqubit at r = 4GM (tick rate {factor:.6f}):")
print("  coord t   phase(near)   phase(far twin)   ratio")
for t, state in list(zip(near.times, near.states))[1:6]:
    far = evolve_unitary(H, t, psi0)
    ph_near = -np.angle(state.amplitudes[1] / state.amplitudes[0])
    ph_far = -np.angle(far.amplitudes[1] / far.amplitudes[0])
    print(f"  {t:7.2f}   {ph_near:9.4f}     {ph_far:9.4f}        "
          f"{ph_near / ph_far:.4f}")
print(f"  (expected ratio: {factor:.4f})")
