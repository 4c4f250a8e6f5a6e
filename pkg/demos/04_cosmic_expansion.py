#!/usr/bin/env python3
"""Emergent time in an expanding universe: the frozen-time ceiling.

A subsystem entangled with the cosmic clock accumulates emergent time as
int dt / a(t).  In a static universe that is just coordinate time.  Under
exponential expansion a(t) = exp(Ht) the integral saturates at 1/H: no
matter how long the universe runs, the subsystem's internal time never
passes that ceiling, and its dynamics asymptotically freezes.
"""

from pathlib import Path

import math
import numpy as np

from chronosim import (
    accumulate_tick_rate,
    emergent_time_exponential,
    emergent_time_flrw,
)
from chronosim.svgplot import line_plot

out_dir = Path(__file__).parent / "output"
out_dir.mkdir(exist_ok=True)

H = 1.0
print(f"exponential expansion, H = {H}")
print("  T        quadrature       closed form      ceiling 1/H")
for T in (0.5, 1.0, 2.0, 5.0, 10.0, 50.0):
    quad, err = emergent_time_flrw(lambda t: math.exp(H * t), 0.0, T)
    closed = emergent_time_exponential(H, T)
    print(f"  {T:5.1f}    {quad:.12f}   {closed:.12f}   {1 / H:.1f}"
          f"   (est. quadrature error {err:.1e})")

# contrast with a static universe and a slow power-law-ish tabulated one
static, _ = emergent_time_flrw(1.0, 0.0, 10.0)
print(f"\nstatic universe over T = 10: emergent time = {static:.6f}")
table = [[t, (1.0 + t) ** 0.5] for t in np.linspace(0.0, 10.0, 51)]
slow, err = emergent_time_flrw(table, 0.0, 10.0)
print(f"tabulated a(t) ~ sqrt(1+t) over T = 10: emergent time = {slow:.6f} "
      f"(closed form {2 * (math.sqrt(11) - 1):.6f})")

# full tau(t) curves for the figure
grids = {}
for label, rate in [("H = 0.5", 0.5), ("H = 1.0", 1.0), ("H = 2.0", 2.0)]:
    series, _ = accumulate_tick_rate(lambda t, h=rate: math.exp(-h * t),
                                     0.0, 10.0, 1e-8, 101)
    grids[label] = series

svg = out_dir / "cosmic_saturation.svg"
any_series = next(iter(grids.values()))
line_plot(str(svg), any_series.t_grid,
          [s.tau_values for s in grids.values()],
          labels=list(grids), title="Emergent time saturates under expansion",
          xlabel="coordinate time t", ylabel="emergent time tau(t)")
print(f"\nwrote {svg}")
