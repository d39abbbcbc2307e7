"""Two initial conditions, two fates: bistability below threshold.

At the reference rates the reproduction number sits below one, yet a
large enough initial drinking population locks the system into the
endemic state, while a small one dies out.  The deciding quantity is the
relapse pool: the temporarily recovered re-enter the infectious class at
a rate proportional to the pressure, so history matters.

Runs the same transport grid from a large and a tiny initial bump and
tracks the pressure B(t) toward its two attractors.
"""

import numpy as np

from epiage import (
    ConstantRates,
    GridSpec,
    cosine_bump,
    fixed_points_exact,
    simulate,
    stable_timestep,
)

rates = ConstantRates(mu=0.0125, beta=60.0, phi=60.0, gamma=13.0, rho=76.65)
small_root, large_root = fixed_points_exact(rates)
print(f"endemic pressures: unstable {small_root:.6g}, stable {large_root:.6g}")

age_max, time_max, da = 200.0, 10.0, 0.05
n_age = round(age_max / da)
gate = stable_timestep(rates, GridSpec(age_max, time_max, n_age, 10 ** 6))
grid = GridSpec(
    age_max, time_max, n_age, int(np.ceil(time_max / (0.9 * gate.dt_max)))
)
nodes = grid.age_nodes()
print(f"grid: da = {grid.da}, dt = {grid.dt:.5f} (positivity bound {gate.dt_max:.5f})")

for label, scale in (("large bump", 1.0), ("small bump", 1e-3)):
    i0 = cosine_bump(nodes, 0.9 * scale, 50.0, 50.0)
    trajectory = simulate(rates, (1.0 - i0, i0, np.zeros_like(nodes)), grid)
    b = trajectory.b_series
    times = grid.time_nodes()
    print(f"\n{label}: B(0) = {b[0]:.4g}")
    for t_probe in (0.5, 1.0, 2.0, 5.0, 10.0):
        j = np.searchsorted(times, t_probe)
        print(f"  B({t_probe:5.1f}) = {b[j]:.6g}")
    fate = "endemic" if abs(b[-1] - large_root) / large_root < 0.05 else "extinct"
    print(f"  -> {fate} (stable pressure {large_root:.6g})")
