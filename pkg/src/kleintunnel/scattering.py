"""Exact boundary matching and closed forms for the rectangular barrier.

The stationary ansatz is

    phi1 = exp(ikx) + R exp(-ikx)          x < 0
    phi2 = alpha exp(-rho x) + beta exp(+rho x)   0 < x < L
    phi3 = T exp(ik(x - L))                x > L

with the oscillatory interior basis {exp(-iqx), exp(+iqx)} in the Klein
and above-barrier zones and the degenerate basis {1, x} exactly at
E = V0 -+ m.  Matching phi and phi' at x = 0 and x = L fixes
(R, alpha, beta, T); this module solves that system exactly and also
provides the closed forms it implies.

Ground truth is :func:`match_boundaries`; the closed forms are
cross-checks against it.  In the tunneling zone the exact magnitude is

    |T| = [1 + ((n2 + rho_n^2)^2 / (4 n2 rho_n^2)) sinh^2(rho_n wL)]^(-1/2)

while :func:`transmission_magnitude_nr_form` keeps the non-relativistic
prefactor 1/(4 n2 rho_n^2) (exact when k^2 + rho^2 = w^2, i.e. for the
Schroedinger dispersion, but too large here); it is retained to document
the discrepancy.  The transmitted phase is

    arg T = arctan[((n2 - rho_n^2)/(2 n rho_n)) tanh(rho_n wL)].

Both forms continue analytically through rho^2 -> -q^2 into the
oscillatory zones, where phases are unwrapped to be continuous in n2 and
anchored at phase -> 0 for L -> 0.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from ._stable import sinh_sq, tanhc
from .errors import EdgeDegenerateError, NonPropagatingError, ZoneError
from .kinematics import (
    BarrierSetup,
    IncidentMode,
    Zone,
    barrier_channel,
    classify_zone,
    rho_n2,
)

# Beyond this value of (rho*L)^2 the asymptotic form of the magnitude is
# exact to double precision and sinh would overflow.
_LARGE_D2 = 350.0**2


@dataclass(frozen=True)
class ScatteringSolution:
    """Exact amplitudes of the matched stationary solution.

    alpha and beta are the interior coefficients in the basis of the
    zone: {exp(-rho x), exp(+rho x)} (evanescent), {exp(-iqx), exp(+iqx)}
    (oscillatory) or {1, x} (degenerate edge).
    """

    R: complex
    T: complex
    alpha: complex
    beta: complex
    zone: Zone


@dataclass(frozen=True)
class TransmissionPoint:
    """|T|, unwrapped phase and |T|^2 at one incident mode.

    phase is continuous in n2 along a sweep and ->0 as L->0; winding is
    the integer number of pi steps added to the principal arctangent
    (always 0 in the tunneling zone), so the principal value is
    phase - winding*pi.
    """

    magnitude: float
    phase: float
    probability: float
    winding: int = 0


# ---------------------------------------------------------------------------
# exact matching
# ---------------------------------------------------------------------------

def match_boundaries(setup: BarrierSetup, mode: IncidentMode) -> ScatteringSolution:
    """Solve the four continuity equations exactly.

    The 4x4 system is reduced analytically: the interior pair is
    eliminated at x = L, leaving a 2x2 solve for (R, T).  The growing
    interior exponential is kept in the factored form exp(rho(x-L)) so
    nothing overflows for rho*L up to ~700; the transmission is solved
    as S = T*exp(rho L) (an O(1) quantity) and rescaled at the end.

    Raises NonPropagatingError for E <= m.
    """
    zone = classify_zone(setup, mode.E)
    if zone is Zone.NON_PROPAGATING:
        raise NonPropagatingError(f"E={mode.E} does not exceed m={setup.m}")
    k, L = mode.k, setup.L
    channel = barrier_channel(setup, mode)

    if channel.kind == "linear":
        # interior a + b*x; per unit T: b = ik, a = 1 - ikL
        T = 2.0 / (2.0 - 1j * k * L)
        R = -1j * k * L / (2.0 - 1j * k * L)
        return ScatteringSolution(R=R, T=T, alpha=(1.0 - 1j * k * L) * T,
                                  beta=1j * k * T, zone=zone)

    kappa = complex(channel.rho) if channel.kind == "evanescent" else 1j * channel.q
    u = cmath.exp(-kappa * L)  # |u| <= 1 in both zones
    ik = 1j * k
    g1 = 0.5 * (1.0 - ik / kappa)
    g2 = 0.5 * (1.0 + ik / kappa)
    u2 = u * u
    # phi(0)/S and phi'(0)/S with S = T/u: both coefficients are bounded
    P = g1 + g2 * u2
    Q = kappa * (g2 * u2 - g1)
    det = Q + ik * P
    S = 2.0 * ik / det
    R = S * P - 1.0
    return ScatteringSolution(R=R, T=S * u, alpha=g1 * S, beta=g2 * S * u2,
                              zone=zone)


def continuity_residuals(setup: BarrierSetup, mode: IncidentMode,
                         sol: ScatteringSolution) -> tuple[float, float]:
    """Relative continuity mismatch of (phi, phi') at x=0 and x=L.

    Evaluates both sides of each matching condition from the stored
    amplitudes and returns the larger relative residual per interface.
    Direct exponentials are used, so this check is meant for moderate
    rho*L (the growing term overflows near rho*L ~ 700).
    """
    k, L = mode.k, setup.L
    channel = barrier_channel(setup, mode)
    if channel.kind == "linear":
        def interior(x):
            return sol.alpha + sol.beta * x, sol.beta
    else:
        kappa = complex(channel.rho) if channel.kind == "evanescent" else 1j * channel.q
        def interior(x):
            e1 = cmath.exp(-kappa * x)
            e2 = cmath.exp(kappa * x)
            val = sol.alpha * e1 + sol.beta * e2
            der = -kappa * sol.alpha * e1 + kappa * sol.beta * e2
            return val, der

    def rel(a, b):
        return abs(a - b) / max(abs(a), abs(b), 1e-300)

    v0, d0 = interior(0.0)
    r0 = max(rel(1.0 + sol.R, v0), rel(1j * k * (1.0 - sol.R), d0))
    vL, dL = interior(L)
    rL = max(rel(sol.T, vL), rel(1j * k * sol.T, dL))
    return r0, rL


# ---------------------------------------------------------------------------
# closed forms (cross-checks of the matcher)
# ---------------------------------------------------------------------------

def _magnitude_from_prefactor(c: float, d2: float) -> float:
    """[1 + c*sinh_sq(d2)]^(-1/2), asymptotic branch for huge positive d2."""
    if d2 > _LARGE_D2:
        # sinh^2 ~ exp(2d)/4; relative error exp(-2d), far below roundoff
        return 2.0 * math.exp(-math.sqrt(d2)) / math.sqrt(c)
    return 1.0 / math.sqrt(1.0 + c * sinh_sq(d2))


def _phase_continuous(v: float, n2: float, wL: float) -> tuple[float, int]:
    """Unwrapped transmitted phase (value, winding) at (v, n2, wL).

    One expression serves all zones: arctan of
    ((n2 - rho_n^2)/(2 sqrt(n2))) * wL * tanh(d)/d, continued through
    rho_n^2 < 0 where tanh turns into tan and the branch count
    N = floor(q_n wL / pi + 1/2) restores continuity in n2.
    """
    r2 = rho_n2(v, n2)
    d2 = r2 * wL * wL
    principal = math.atan((n2 - r2) / (2.0 * math.sqrt(n2)) * wL * tanhc(d2))
    winding = 0
    if d2 < 0.0:
        winding = math.floor(math.sqrt(-d2) / math.pi + 0.5)
    return principal + winding * math.pi, winding


def transmission_closed_form(setup: BarrierSetup, mode: IncidentMode) -> TransmissionPoint:
    """Closed-form |T| and phase in the tunneling zone.

    magnitude = [1 + ((n2+rho_n^2)^2/(4 n2 rho_n^2)) sinh^2(rho_n wL)]^(-1/2),
    phase     = arctan[((n2-rho_n^2)/(2 n rho_n)) tanh(rho_n wL)].

    The prefactor (n2+rho_n^2)^2 is required for agreement with
    match_boundaries (the Wronskian-conserving solution); see
    transmission_magnitude_nr_form for the variant without it.
    Raises ZoneError outside the tunneling zone and EdgeDegenerateError
    at rho = 0 (use match_boundaries there).
    """
    zone = classify_zone(setup, mode.E)
    if zone in (Zone.EDGE_LOWER, Zone.EDGE_UPPER):
        raise EdgeDegenerateError(f"rho=0 at E={mode.E}; closed form undefined")
    if zone is not Zone.TUNNELING:
        raise ZoneError(f"transmission_closed_form needs the tunneling zone, got {zone}")
    v, wL, n2 = setup.v, setup.wL, mode.n2
    r2 = rho_n2(v, n2)
    c = (n2 + r2) ** 2 / (4.0 * n2 * r2)
    mag = _magnitude_from_prefactor(c, r2 * wL * wL)
    phase, winding = _phase_continuous(v, n2, wL)
    return TransmissionPoint(magnitude=mag, phase=phase,
                             probability=mag * mag, winding=winding)


def transmission_magnitude_nr_form(setup: BarrierSetup, mode: IncidentMode) -> float:
    """|T| with the non-relativistic prefactor 1/(4 n2 rho_n^2).

    For Schroedinger kinematics k^2 + rho^2 = w^2 makes this identical to
    the exact form; with the relativistic dispersion it overestimates the
    transmission (e.g. 0.463 instead of 0.103 at v=10, n2=5, wL=2pi).
    Provided solely so the discrepancy can be quantified; same domain and
    errors as transmission_closed_form.
    """
    zone = classify_zone(setup, mode.E)
    if zone in (Zone.EDGE_LOWER, Zone.EDGE_UPPER):
        raise EdgeDegenerateError(f"rho=0 at E={mode.E}; form undefined")
    if zone is not Zone.TUNNELING:
        raise ZoneError(f"transmission_magnitude_nr_form needs the tunneling zone, got {zone}")
    v, wL, n2 = setup.v, setup.wL, mode.n2
    r2 = rho_n2(v, n2)
    c = 1.0 / (4.0 * n2 * r2)
    return _magnitude_from_prefactor(c, r2 * wL * wL)


def oscillatory_transmission(setup: BarrierSetup, mode: IncidentMode) -> TransmissionPoint:
    """Analytic continuation of the closed forms to the oscillatory zones.

    magnitude = [1 + ((k^2-q^2)^2/(4 k^2 q^2)) sin^2(qL)]^(-1/2), which is
    1 exactly at the resonances qL = N*pi; the phase is unwrapped to be
    continuous in n2 (winding N = floor(qL/pi + 1/2)).  Raises ZoneError
    unless the zone is Klein or above-barrier.
    """
    zone = classify_zone(setup, mode.E)
    if zone not in (Zone.KLEIN, Zone.ABOVE_BARRIER):
        raise ZoneError(f"oscillatory_transmission needs Klein/AboveBarrier, got {zone}")
    v, wL, n2 = setup.v, setup.wL, mode.n2
    r2 = rho_n2(v, n2)  # negative here; -r2 = (q/w)^2
    c = (n2 + r2) ** 2 / (4.0 * n2 * r2)
    mag = 1.0 / math.sqrt(1.0 + c * sinh_sq(r2 * wL * wL))
    phase, winding = _phase_continuous(v, n2, wL)
    return TransmissionPoint(magnitude=mag, phase=phase,
                             probability=mag * mag, winding=winding)


def unwrapped_phase(setup: BarrierSetup, mode: IncidentMode) -> float:
    """Continuous arg T(E) taken from the exact matcher.

    The principal argument of match_boundaries' T is lifted onto the
    continuous branch by borrowing the integer winding from the analytic
    continuation; the returned value therefore differentiates smoothly
    in E within a zone, which is what the numeric phase-time oracle
    needs.
    """
    sol = match_boundaries(setup, mode)
    principal = cmath.phase(sol.T)
    analytic, _ = _phase_continuous(setup.v, mode.n2, setup.wL)
    turns = round((analytic - principal) / (2.0 * math.pi))
    return principal + 2.0 * math.pi * turns


def transmission_any_zone(setup: BarrierSetup, mode: IncidentMode) -> TransmissionPoint:
    """|T|, unwrapped phase and |T|^2 in whatever zone the mode is in.

    Dispatches to the matcher (edges), the tunneling closed form or the
    oscillatory continuation; convenient for sweeps and spectra that
    cross zone boundaries.
    """
    zone = classify_zone(setup, mode.E)
    if zone in (Zone.EDGE_LOWER, Zone.EDGE_UPPER):
        sol = match_boundaries(setup, mode)
        mag = abs(sol.T)
        return TransmissionPoint(magnitude=mag, phase=cmath.phase(sol.T),
                                 probability=mag * mag, winding=0)
    if zone is Zone.TUNNELING:
        return transmission_closed_form(setup, mode)
    return oscillatory_transmission(setup, mode)
