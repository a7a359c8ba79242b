"""Energy zones of the rectangular electrostatic barrier.

A relativistic spin-0 particle with total energy E sees a barrier of
height V0 very differently depending on where E sits relative to
V0 -+ m.  This demo walks the energy axis for m = 1, V0 = 10 and prints
the zone and the character of the interior solution at each point,
then checks the dimensionless picture: in terms of n2 = k^2/w^2 the
tunneling (evanescent) zone is exactly the interval (n2 - v/2)^2 < 1.
"""

import numpy as np

from kleintunnel import (
    BarrierSetup,
    barrier_channel,
    classify_zone,
    mode_from_energy,
    rho_n2,
    tunneling_interval_n2,
)

setup = BarrierSetup(m=1.0, V0=10.0, L=1.0)
print(f"m = {setup.m}, V0 = {setup.V0}  ->  w = {setup.w:.6f}, v = {setup.v}")
print(f"zone boundaries in E: m = {setup.m}, V0 - m = {setup.V0 - setup.m}, "
      f"V0 + m = {setup.V0 + setup.m}")
print()

print(f"{'E':>8} {'zone':>15} {'channel':>12} {'rho or q':>10}")
for E in (0.5, 3.0, 5.0, 9.0, 9.5, 10.0, 10.5, 11.0, 12.0, 20.0):
    zone = classify_zone(setup, E)
    if zone.value == "NonPropagating":
        print(f"{E:8.2f} {zone.value:>15} {'-':>12} {'-':>10}")
        continue
    ch = barrier_channel(setup, mode_from_energy(setup, E))
    val = ch.rho if ch.kind == "evanescent" else ch.q
    print(f"{E:8.2f} {zone.value:>15} {ch.kind:>12} {val:10.4f}")

print()
lo, hi = tunneling_interval_n2(setup.v)
print(f"tunneling interval in n2 for v = {setup.v}: ({lo}, {hi})")
print("interval condition check: rho(n)^2 > 0 exactly inside it")
for n2 in np.linspace(3.0, 7.0, 9):
    r2 = rho_n2(setup.v, float(n2))
    inside = "inside " if lo < n2 < hi else "outside"
    print(f"  n2 = {n2:4.1f}  ({inside})   rho(n)^2 = {r2:+.6f}")

print()
print("note how the relativistic tunneling window sits at n2 ~ v/2 >> 1,")
print("far above the Schroedinger window 0 < n2 < 1.")
