"""Traversal and stationary-phase (phase) times for the rectangular barrier.

The transit time of a transmitted packet whose peak leaves the barrier at
x = L is the energy derivative of the transmitted phase, t_phi = dphi/dE,
evaluated at the spectral peak.  Normalizing by the classical traversal
time tau = L/(dE/dk) = L*E/k gives the dimensionless ratio computed here
in three independent ways:

* a closed form f(n,L)/g(n,L) (the exact derivative of the closed-form
  phase, written out below),
* a Richardson-refined central difference of the matcher's unwrapped
  phase (the oracle, independent of every closed form),
* small-rho and zone-edge limit formulas.

The closed-form ratio is f/g with s = sqrt(1 + 2*n2*v), d = rho_n*wL:

    f = 8 n2 [(2 + 8 n2 v + v^2) - (4 n2 + 3 v) s]
        + 4 [(4 + 4 n2 v + v^2) s - 2 v (2 + 3 n2 v)] sinh(d)cosh(d)/d
    g = 16 n2 [2 (1 + 2 n2 v) - s (2 n2 + v)]
        + 2 [(4 + 8 n2 v + v^2) s - 4 v (1 + 2 n2 v)] sinh(d)^2

Both f and g are even in d, so the same expressions continue into the
oscillatory zones (sinh -> sin).  Near the zone edges the ratio tends to
a finite value that still depends on wL,

    [1/2 -+ 1/(v -+ 1) -+ n2 wL^2 / (3 (v -+ 1))] / (1 + n2 wL^2 / 4),

which only for wL -> infinity reaches the width-independent limit
-(4/3)/(1 +- 2 n2); see edge_phase_time_ratio / edge_limit_ratio.

A self-contained Schroedinger reference pipeline (dispersion
k^2 = 2 m E_NR) is included as the v -> 0 oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._stable import sinh_sq, sinhc_cosh, tanhc
from .errors import (
    DomainError,
    EdgeDegenerateError,
    NonConvergentError,
    ZeroLengthError,
    ZoneCrossingError,
    ZoneError,
)
from .kinematics import BarrierSetup, IncidentMode, Zone, classify_zone, mode_from_energy, rho_n2
from .scattering import unwrapped_phase

_LARGE_D2 = 350.0**2
# n2-distance from a zone edge below which the verbatim f/g cancels too
# hard to be meaningful in doubles
_EDGE_N2_TOL = 1e-12


@dataclass(frozen=True)
class PhaseTimeResult:
    """tau, t_phi and the normalized ratio t_phi/tau from one method.

    method is "closed_form" or "numeric_derivative".  At L = 0 the ratio
    is 0/0; it is then reported as nan with ratio_defined False instead
    of being silently divided.
    """

    tau: float
    t_phi: float
    ratio: float
    method: str
    ratio_defined: bool = True


@dataclass(frozen=True)
class NRReference:
    """Schroedinger rectangular-barrier reference point (own dispersion)."""

    e_nr: float
    kappa: float
    magnitude: float
    phase: float
    ratio: float


# ---------------------------------------------------------------------------
# classical traversal time
# ---------------------------------------------------------------------------

def classical_tau(setup: BarrierSetup, mode: IncidentMode) -> float:
    """Classical traversal time tau = L*(dE/dk)^(-1) = L*E/k.

    Raises ZeroLengthError at L = 0, where tau = 0 makes every normalized
    ratio undefined.
    """
    if setup.L == 0.0:
        raise ZeroLengthError("L=0: tau=0 and t_phi/tau is undefined")
    return setup.L * mode.E / mode.k


# ---------------------------------------------------------------------------
# closed-form ratio
# ---------------------------------------------------------------------------

def _fg_brackets(v: float, n2: float) -> tuple[float, float, float, float]:
    s = math.sqrt(1.0 + 2.0 * n2 * v)
    A = (2.0 + 8.0 * n2 * v + v * v) - (4.0 * n2 + 3.0 * v) * s
    B = (4.0 + 4.0 * n2 * v + v * v) * s - 2.0 * v * (2.0 + 3.0 * n2 * v)
    C = 2.0 * (1.0 + 2.0 * n2 * v) - s * (2.0 * n2 + v)
    D = (4.0 + 8.0 * n2 * v + v * v) * s - 4.0 * v * (1.0 + 2.0 * n2 * v)
    return A, B, C, D


def normalized_phase_time(v: float, n2: float, wL: float) -> float:
    """Closed-form t_phi/tau at (v, n2, wL), any zone.

    Continues analytically through the oscillatory zones; for huge
    rho_n*wL both f and g are rescaled by sinh^2 so nothing overflows.
    Raises EdgeDegenerateError within ~1e-12 of a zone edge in n2, where
    the 0/0 form loses all precision (use edge_phase_time_ratio there).
    """
    if abs(abs(n2 - 0.5 * v) - 1.0) <= _EDGE_N2_TOL:
        raise EdgeDegenerateError(
            f"n2={n2} sits on a zone edge of v={v}; ratio is 0/0 there")
    A, B, C, D = _fg_brackets(v, n2)
    r2 = rho_n2(v, n2)
    d2 = r2 * wL * wL
    if d2 > _LARGE_D2:
        # divide f and g by sinh^2: sc/sh2 = coth(d)/d, 1/sh2 = 4u/(1-u)^2
        d = math.sqrt(d2)
        u = math.exp(-2.0 * d)
        inv_sh2 = 4.0 * u / (1.0 - u) ** 2
        f = 8.0 * n2 * A * inv_sh2 + 4.0 * B * (1.0 + u) / ((1.0 - u) * d)
        g = 16.0 * n2 * C * inv_sh2 + 2.0 * D
        return f / g
    f = 8.0 * n2 * A + 4.0 * B * sinhc_cosh(d2)
    g = 16.0 * n2 * C + 2.0 * D * sinh_sq(d2)
    return f / g


def phase_time_closed_form(setup: BarrierSetup, mode: IncidentMode) -> PhaseTimeResult:
    """Closed-form phase time in the tunneling zone.

    Raises ZoneError outside the tunneling zone and EdgeDegenerateError
    at rho = 0.
    """
    zone = classify_zone(setup, mode.E)
    if zone in (Zone.EDGE_LOWER, Zone.EDGE_UPPER):
        raise EdgeDegenerateError(
            f"rho=0 at E={mode.E}; use edge_phase_time_ratio")
    if zone is not Zone.TUNNELING:
        raise ZoneError(f"phase_time_closed_form needs the tunneling zone, got {zone}")
    ratio = normalized_phase_time(setup.v, mode.n2, setup.wL)
    if setup.L == 0.0:
        return PhaseTimeResult(tau=0.0, t_phi=0.0, ratio=float("nan"),
                               method="closed_form", ratio_defined=False)
    tau = classical_tau(setup, mode)
    return PhaseTimeResult(tau=tau, t_phi=ratio * tau, ratio=ratio,
                           method="closed_form")


# ---------------------------------------------------------------------------
# numeric oracle: Richardson-refined dphi/dE of the matched amplitude
# ---------------------------------------------------------------------------

def phase_time_numeric(setup: BarrierSetup, mode: IncidentMode,
                       dE: float | None = None) -> PhaseTimeResult:
    """t_phi = dphi/dE by central differences of the matcher's phase.

    The step starts at dE (default 1e-6*m), clamped so the stencil stays
    10 steps away from the nearest zone edge, and is halved with
    Richardson extrapolation until two successive estimates agree to
    1e-8 relative (with an absolute floor at the derivative scale).

    Raises ZoneCrossingError if the point sits on an edge (no one-zone
    stencil exists) and NonConvergentError if refinement fails.
    """
    m, V0 = setup.m, setup.V0
    E = mode.E
    zone = classify_zone(setup, E)
    if zone in (Zone.EDGE_LOWER, Zone.EDGE_UPPER):
        raise ZoneCrossingError(f"E={E} lies on a zone edge; stencil would straddle it")
    boundaries = [m, V0 + m]
    if V0 - m > m:
        boundaries.append(V0 - m)
    dist = min(abs(E - b) for b in boundaries)
    h = min(dE if dE is not None else 1e-6 * m, dist / 10.0)
    if h <= 0.0:
        raise ZoneCrossingError(f"E={E} touches a zone boundary")

    def central(step: float) -> tuple[float, float]:
        hi = unwrapped_phase(setup, mode_from_energy(setup, E + step))
        lo = unwrapped_phase(setup, mode_from_energy(setup, E - step))
        return (hi - lo) / (2.0 * step), max(abs(hi), abs(lo))

    d0, phi_scale = central(h)
    # difference-quotient roundoff at the largest step bounds the
    # achievable absolute accuracy of the whole tableau
    noise_floor = 64.0 * math.ulp(max(phi_scale, 1.0)) / h
    table: list[list[float]] = [[d0]]
    t_phi, err = d0, math.inf
    converged = setup.L == 0.0  # phase identically 0: first estimate exact
    for _ in range(1, 20):
        if converged:
            break
        h *= 0.5
        if h < 64.0 * math.ulp(max(E, m)):
            break
        row = [central(h)[0]]
        p4 = 1.0
        for prev in table[-1]:
            p4 *= 4.0
            cand = (p4 * row[-1] - prev) / (p4 - 1.0)
            errt = max(abs(cand - row[-1]), abs(cand - prev))
            row.append(cand)
            if errt <= err:
                err, t_phi = errt, cand
        diag_jump = abs(row[-1] - table[-1][-1])
        table.append(row)
        if err <= max(1e-8 * abs(t_phi), noise_floor):
            converged = True
        elif diag_jump >= 4.0 * err:
            break  # halving further only amplifies roundoff
    if not converged:
        raise NonConvergentError(
            f"step-halving stalled at error {err:.3e} "
            f"(target {max(1e-8 * abs(t_phi), noise_floor):.3e})")
    if setup.L == 0.0:
        return PhaseTimeResult(tau=0.0, t_phi=0.0, ratio=float("nan"),
                               method="numeric_derivative", ratio_defined=False)
    tau = classical_tau(setup, mode)
    return PhaseTimeResult(tau=tau, t_phi=t_phi, ratio=t_phi / tau,
                           method="numeric_derivative")


# ---------------------------------------------------------------------------
# limit formulas
# ---------------------------------------------------------------------------

def small_rho_ratio(v: float, n2: float) -> float:
    """Leading small-rho term of the normalized phase time.

    (4/3) [(4 + 4 n2 v + v^2) s - 2 v (2 + 3 n2 v)]
        / [(4 + 8 n2 v + v^2) s - 4 v (1 + 2 n2 v)],   s = sqrt(1+2 n2 v).

    Equals 4/3 for every n2 at v = 0 and reproduces the zone-edge limit
    values when evaluated at n2 = v/2 -+ 1.
    """
    if not (v >= 0.0):
        raise DomainError(f"v must be >= 0, got {v}")
    if not (n2 > 0.0):
        raise DomainError(f"n2 must be positive, got {n2}")
    s = math.sqrt(1.0 + 2.0 * n2 * v)
    num = (4.0 + 4.0 * n2 * v + v * v) * s - 2.0 * v * (2.0 + 3.0 * n2 * v)
    den = (4.0 + 8.0 * n2 * v + v * v) * s - 4.0 * v * (1.0 + 2.0 * n2 * v)
    return (4.0 / 3.0) * num / den


def _check_edge(v: float, edge: str) -> float:
    if edge not in ("lower", "upper"):
        raise DomainError(f"edge must be 'lower' or 'upper', got {edge!r}")
    if edge == "lower":
        if not (v > 2.0):
            raise DomainError(f"lower edge needs v > 2 (n2 = v/2 - 1 > 0), got v={v}")
        return 0.5 * v - 1.0
    return 0.5 * v + 1.0


def edge_limit_ratio(v: float, edge: str) -> float:
    """Width-independent edge limit of the ratio: -(4/3)/(1 +- 2 n2).

    n2 = v/2 - 1 at the lower edge (needs v > 2; always negative there)
    and n2 = v/2 + 1 at the upper edge (positive).  This is the
    wL -> infinity limit of edge_phase_time_ratio; both tend to 0 as
    v -> infinity.
    """
    n2 = _check_edge(v, edge)
    if edge == "lower":
        return -(4.0 / 3.0) / (1.0 + 2.0 * n2)
    return -(4.0 / 3.0) / (1.0 - 2.0 * n2)


def edge_phase_time_ratio(v: float, wL: float, edge: str) -> float:
    """Exact zone-edge value of the normalized phase time at finite wL.

    Taking n2 -> v/2 -+ 1 in the closed form at fixed wL gives

        [1/2 -+ 1/(v -+ 1) -+ n2 wL^2 / (3 (v -+ 1))] / (1 + n2 wL^2 / 4)

    (upper signs: lower edge).  It interpolates between
    1/2 -+ 1/(v -+ 1) at wL = 0 and edge_limit_ratio at wL -> infinity;
    the width-independent limit values are approached only as
    wL grows, at the sweep's wL = 2*pi they are still ~5-10% away.
    """
    n2 = _check_edge(v, edge)
    if not (wL >= 0.0):
        raise DomainError(f"wL must be >= 0, got {wL}")
    sgn = 1.0 if edge == "lower" else -1.0
    num = 0.5 - sgn / (v - sgn) - sgn * n2 * wL * wL / (3.0 * (v - sgn))
    return num / (1.0 + 0.25 * n2 * wL * wL)


def edge_limit_magnitude_nr_form(v: float, wL: float, edge: str) -> float:
    """Zone-edge magnitude of the NR-prefactor transmission form.

    [1 + wL^2/(2v - 4)]^(-1/2) at the lower edge and
    [1 + wL^2/(2v + 4)]^(-1/2) at the upper edge; for v >> 1 both become
    [1 + (mL)^2]^(-1/2) with mL = wL/sqrt(2v).  This is the rho -> 0
    limit of transmission_magnitude_nr_form, not of the exact matcher,
    whose edge value is |2/(2 - i k L)|.
    """
    _check_edge(v, edge)
    if not (wL >= 0.0):
        raise DomainError(f"wL must be >= 0, got {wL}")
    den = 2.0 * v - 4.0 if edge == "lower" else 2.0 * v + 4.0
    return 1.0 / math.sqrt(1.0 + wL * wL / den)


# ---------------------------------------------------------------------------
# Schroedinger reference pipeline (independent v -> 0 oracle)
# ---------------------------------------------------------------------------

def nr_rho2(n2: float) -> float:
    """Normalized NR evanescent constant squared, kappa^2/w^2 = 1 - n2."""
    return 1.0 - n2


def nr_magnitude_normalized(n2: float, wL: float) -> float:
    """NR |T| at (n2 = E_NR/V0, wL); valid on both sides of n2 = 1."""
    r2 = nr_rho2(n2)
    if r2 == 0.0:
        return 1.0 / math.sqrt(1.0 + 0.25 * n2 * wL * wL)
    d2 = r2 * wL * wL
    if d2 > _LARGE_D2:
        return 2.0 * math.exp(-math.sqrt(d2)) * math.sqrt(4.0 * n2 * r2)
    return 1.0 / math.sqrt(1.0 + sinh_sq(d2) / (4.0 * n2 * r2))


def nr_phase_normalized(n2: float, wL: float) -> float:
    """NR transmitted phase, unwrapped continuously in n2."""
    r2 = nr_rho2(n2)
    d2 = r2 * wL * wL
    phase = math.atan((n2 - r2) / (2.0 * math.sqrt(n2)) * wL * tanhc(d2))
    if d2 < 0.0:
        phase += math.pi * math.floor(math.sqrt(-d2) / math.pi + 0.5)
    return phase


def nr_ratio_normalized(n2: float, wL: float) -> float:
    """NR normalized phase time t_phi/tau_NR (tau_NR = L*m/k).

    Derivative of the NR phase in closed form:

        [sc(d)/(2 n2 r2) - (2 n2 - 1)/(2 r2)] / [1 + sinh^2(d)/(4 n2 r2)]

    with r2 = 1 - n2, d = sqrt(r2)*wL and sc(d) = sinh(d)cosh(d)/d;
    continues through n2 > 1.  At n2 = 1 exactly the 0/0 edge value
    (3/2 + wL^2/3)/(1 + wL^2/4) is returned.
    """
    r2 = nr_rho2(n2)
    if abs(r2) <= _EDGE_N2_TOL:
        return (1.5 + wL * wL / 3.0) / (1.0 + 0.25 * wL * wL)
    d2 = r2 * wL * wL
    if d2 > _LARGE_D2:
        d = math.sqrt(d2)
        u = math.exp(-2.0 * d)
        inv_sh2 = 4.0 * u / (1.0 - u) ** 2
        num = (1.0 + u) / ((1.0 - u) * d) / (2.0 * n2 * r2) \
            - (2.0 * n2 - 1.0) / (2.0 * r2) * inv_sh2
        den = inv_sh2 + 1.0 / (4.0 * n2 * r2)
        return num / den
    num = sinhc_cosh(d2) / (2.0 * n2 * r2) - (2.0 * n2 - 1.0) / (2.0 * r2)
    den = 1.0 + sinh_sq(d2) / (4.0 * n2 * r2)
    return num / den


def nr_ratio_numeric(n2: float, wL: float, dn: float = 1e-6) -> float:
    """NR ratio by central differences of the NR phase (plumbing oracle)."""
    n = math.sqrt(n2)
    h = min(dn, abs(n - 1.0) / 10.0 if n != 1.0 else dn)
    if h <= 0.0:
        raise ZoneCrossingError("n2=1 sits on the NR zone edge")
    d1 = (nr_phase_normalized((n + h) ** 2, wL) - nr_phase_normalized((n - h) ** 2, wL)) / (2.0 * h)
    h2 = 0.5 * h
    d2_ = (nr_phase_normalized((n + h2) ** 2, wL) - nr_phase_normalized((n - h2) ** 2, wL)) / (2.0 * h2)
    return (4.0 * d2_ - d1) / 3.0 / wL


def _nr_check(setup: BarrierSetup, e_nr: float) -> None:
    if not (0.0 < e_nr < setup.V0):
        raise DomainError(f"E_NR must lie in (0, V0)=(0, {setup.V0}), got {e_nr}")


def nr_transmission(setup: BarrierSetup, e_nr: float) -> NRReference:
    """Schroedinger rectangular-barrier reference at kinetic energy E_NR.

    Own dispersion k^2 = 2 m E_NR, kappa^2 = 2 m (V0 - E_NR); fills
    magnitude, phase and the phase-time ratio.  DomainError outside
    (0, V0).
    """
    _nr_check(setup, e_nr)
    n2 = e_nr / setup.V0
    kappa = math.sqrt(2.0 * setup.m * (setup.V0 - e_nr))
    return NRReference(e_nr=e_nr, kappa=kappa,
                       magnitude=nr_magnitude_normalized(n2, setup.wL),
                       phase=nr_phase_normalized(n2, setup.wL),
                       ratio=nr_ratio_normalized(n2, setup.wL))


def nr_phase_time(setup: BarrierSetup, e_nr: float) -> NRReference:
    """Alias of nr_transmission emphasizing the time observables."""
    return nr_transmission(setup, e_nr)


def nr_t_phi(setup: BarrierSetup, e_nr: float) -> float:
    """Dimensionful NR phase time t_phi = ratio * tau_NR, tau_NR = L*m/k."""
    _nr_check(setup, e_nr)
    if setup.L == 0.0:
        return 0.0
    k = math.sqrt(2.0 * setup.m * e_nr)
    return nr_ratio_normalized(e_nr / setup.V0, setup.wL) * setup.L * setup.m / k
