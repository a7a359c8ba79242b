"""Does the transmitted peak really arrive at the stationary-phase time?

Synthesize a Gaussian packet, send it through the barrier at the
stationary-phase sweet spot (v = 10, n2(k0) = 5, mL = 0.1, where the
transmission is high and nearly flat across the spectrum), and measure
when the intensity peak passes x = L.  As the spectrum narrows, the
measured peak converges onto t_phi(k0), and the distortion metrics
confirm the spectrum passes almost unfiltered.  A deep Schroedinger-
regime barrier (kappa*L = 10) shows the opposite: heavy attenuation and
a spectrum shifted toward high k (the filter effect).
"""

import math

from kleintunnel import BarrierSetup, SpectrumSpec, classical_tau, mode_from_n2, run_packet

setup = BarrierSetup(m=1.0, V0=10.0, L=0.1)
k0 = 10.0  # n2(k0) = 5, mid-tunneling
tau = classical_tau(setup, mode_from_n2(setup, 5.0))
print(f"v = 10, mL = 0.1, k0 = {k0} (n2 = 5); classical tau = {tau:.6f}")
print()

print("narrowing the spectrum pins the peak onto the prediction:")
for frac in (0.1, 0.05, 0.02):
    run = run_packet(setup, SpectrumSpec(k0=k0, sigma_k=frac * k0))
    a = run.arrival
    d = run.distortion
    print(f"  sigma_k = {frac:5.2f}*k0: t_peak = {a.t_peak:.6f}  "
          f"t_phi(k0) = {a.t_predicted:.6f}  gap = {a.relative_gap:.4%}")
    print(f"      transmitted_norm = {d.transmitted_norm:.4f}  "
          f"shape_distance = {d.shape_distance:.5f}  "
          f"mean_k_shift = {d.mean_k_shift:+.5f}")
print(f"  note t_peak < tau = {tau:.4f}: the transmitted peak runs ahead of a")
print("  classical particle, with an essentially undistorted spectrum.")
print()

print("deep Schroedinger tunneling for contrast (kappa*L = 10):")
v_nr = 1e-4
w = math.sqrt(2.0 * v_nr)
k_nr = w * math.sqrt(0.5)
setup_nr = BarrierSetup(m=1.0, V0=v_nr, L=10.0 / k_nr)
run = run_packet(setup_nr, SpectrumSpec(k0=k_nr, sigma_k=0.02 * k_nr))
tau_nr = classical_tau(setup_nr, mode_from_n2(setup_nr, 0.5))
print(f"  transmitted_norm = {run.distortion.transmitted_norm:.2e}  (almost nothing survives)")
print(f"  mean_k_shift     = {run.distortion.mean_k_shift:+.2e}  (> 0: high-k tail preferred)")
print(f"  t_peak = {run.arrival.t_peak:.1f} vs tau = {tau_nr:.1f}  (front-loaded peak)")
