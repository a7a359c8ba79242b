"""kleintunnel: relativistic spin-0 tunneling through a rectangular barrier.

Exact boundary-matched transmission amplitudes, closed forms, stationary
phase (tunneling) times, transmitted wave-packet synthesis and parameter
sweeps for the 1D rectangular electrostatic barrier in natural units
(hbar = c = 1).
"""

from .errors import (
    ClippedWindowError,
    DomainError,
    EdgeDegenerateError,
    KleinTunnelError,
    NoPeakError,
    NonConvergentError,
    NonPropagatingError,
    QuadratureError,
    SupportError,
    ZeroLengthError,
    ZoneCrossingError,
    ZoneError,
)
from .kinematics import (
    BarrierChannel,
    BarrierSetup,
    IncidentMode,
    Zone,
    barrier_channel,
    classify_zone,
    mode_from_energy,
    mode_from_n2,
    rho_n2,
    tunneling_interval_n2,
)
from .phasetime import (
    NRReference,
    PhaseTimeResult,
    classical_tau,
    edge_limit_magnitude_nr_form,
    edge_limit_ratio,
    edge_phase_time_ratio,
    normalized_phase_time,
    nr_phase_time,
    nr_t_phi,
    nr_transmission,
    phase_time_closed_form,
    phase_time_numeric,
    small_rho_ratio,
)
from .scattering import (
    ScatteringSolution,
    TransmissionPoint,
    continuity_residuals,
    match_boundaries,
    oscillatory_transmission,
    transmission_any_zone,
    transmission_closed_form,
    transmission_magnitude_nr_form,
    unwrapped_phase,
)
from .sweep import SweepRecord, SweepRequest, fig1_preset, read_csv, run_sweep, write_csv, write_json
from .wavepacket import (
    ArrivalEstimate,
    DistortionMetrics,
    PacketRun,
    SpectrumSpec,
    distortion,
    estimate_arrival,
    run_packet,
    synthesize_incident,
    synthesize_reflected,
    synthesize_transmitted,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
