"""Parameter sweeps over n2 with zone tags, ordered unwrapping and CSV/JSON output.

A sweep is defined by (v, wL, m) and a linear n2 grid; each grid point is
computed independently (embarrassingly parallel), results are merged in
grid order, and a single ordered pass normalizes the phase column so it
is continuous along the grid.  v = 0 selects the self-contained
Schroedinger pipeline in the same normalized variables.

Grid points landing within 1e-9 (relative) of a zone edge are snapped to
the edge, evaluated by the degenerate-basis path and flagged in the
``nudged`` column rather than dropped; per-point computation errors are
captured in the record (empty CSV cells, ``error`` field in JSON) and
never abort the sweep.

CSV contract: header row mandatory, columns in the fixed order

    n2, E_over_m, zone, T2_exact, T2_nr_form, phase_rad,
    ratio_closed, ratio_numeric, nudged

UTF-8, LF line endings, floats as shortest round-trip decimals, absent
values as empty fields.  JSON output is an array of records with the
same field names plus ``error``.
"""

from __future__ import annotations

import concurrent.futures
import json
import math
from dataclasses import dataclass, replace

from .errors import DomainError, KleinTunnelError
from .kinematics import BarrierSetup, Zone, classify_zone, mode_from_n2
from .phasetime import (
    edge_phase_time_ratio,
    normalized_phase_time,
    nr_magnitude_normalized,
    nr_phase_normalized,
    nr_ratio_normalized,
    nr_ratio_numeric,
    phase_time_numeric,
)
from .scattering import match_boundaries, transmission_any_zone, transmission_magnitude_nr_form

VALUE_COLUMNS = ("T2_exact", "T2_nr_form", "phase_rad", "ratio_closed", "ratio_numeric")
CSV_COLUMNS = ("n2", "E_over_m", "zone") + VALUE_COLUMNS + ("nudged",)

# relative n2 distance to a zone edge below which a grid point is snapped
# onto the edge and handled by the degenerate path
EDGE_SNAP_RTOL = 1e-9


@dataclass(frozen=True)
class SweepRequest:
    """One sweep: dimensionless barrier (v, wL) at mass scale m, linear n2 grid."""

    v: float
    wL: float
    n2_min: float
    n2_max: float
    count: int
    m: float = 1.0
    outputs: tuple[str, ...] = VALUE_COLUMNS

    def __post_init__(self) -> None:
        if not (self.v >= 0.0):
            raise DomainError(f"v must be >= 0, got {self.v}")
        if not (self.wL >= 0.0):
            raise DomainError(f"wL must be >= 0, got {self.wL}")
        if not (self.m > 0.0):
            raise DomainError(f"m must be positive, got {self.m}")
        if not (self.n2_min > 0.0):
            raise DomainError(f"n2_min must be positive, got {self.n2_min}")
        if not (self.n2_max > self.n2_min):
            raise DomainError("n2_max must exceed n2_min")
        if self.count < 2:
            raise DomainError(f"count must be >= 2, got {self.count}")
        if not self.outputs:
            raise DomainError("outputs must not be empty")
        unknown = set(self.outputs) - set(VALUE_COLUMNS)
        if unknown:
            raise DomainError(f"unknown outputs: {sorted(unknown)}")

    def grid(self) -> list[float]:
        step = (self.n2_max - self.n2_min) / (self.count - 1)
        return [self.n2_min + i * step for i in range(self.count)]


@dataclass(frozen=True)
class SweepRecord:
    """One grid point; value fields are None when not requested or failed."""

    n2: float
    e_over_m: float | None
    zone: str
    t2_exact: float | None = None
    t2_nr_form: float | None = None
    phase_rad: float | None = None
    ratio_closed: float | None = None
    ratio_numeric: float | None = None
    nudged: bool = False
    error: str | None = None


_FIELD_OF_COLUMN = {
    "T2_exact": "t2_exact",
    "T2_nr_form": "t2_nr_form",
    "phase_rad": "phase_rad",
    "ratio_closed": "ratio_closed",
    "ratio_numeric": "ratio_numeric",
}


# ---------------------------------------------------------------------------
# per-point evaluation (pure functions of the request parameters)
# ---------------------------------------------------------------------------

def _snap_to_edge(v: float, n2: float) -> tuple[float, str | None]:
    """Snap n2 onto a zone edge when within EDGE_SNAP_RTOL of it."""
    edges = []
    if v == 0.0:
        edges.append((1.0, "upper"))
    else:
        if 0.5 * v - 1.0 > 0.0:
            edges.append((0.5 * v - 1.0, "lower"))
        edges.append((0.5 * v + 1.0, "upper"))
    for e, name in edges:
        if abs(n2 - e) <= EDGE_SNAP_RTOL * max(1.0, e):
            return e, name
    return n2, None


def _relativistic_point(v: float, wL: float, m: float, n2: float,
                        outputs: tuple[str, ...]) -> SweepRecord:
    n2, edge = _snap_to_edge(v, n2)
    setup = BarrierSetup.from_dimensionless(v, wL, m)
    vals: dict[str, float | None] = {}
    errs: list[str] = []

    if edge is not None:
        zone = Zone.EDGE_LOWER if edge == "lower" else Zone.EDGE_UPPER
        kL = math.sqrt(n2) * wL
        if "T2_exact" in outputs:
            vals["t2_exact"] = 4.0 / (4.0 + kL * kL)
        if "T2_nr_form" in outputs:
            vals["t2_nr_form"] = 1.0 / (1.0 + wL * wL / (4.0 * n2))
        if "phase_rad" in outputs:
            vals["phase_rad"] = math.atan(0.5 * kL)
        if "ratio_closed" in outputs:
            vals["ratio_closed"] = edge_phase_time_ratio(v, wL, edge)
        if "ratio_numeric" in outputs:
            errs.append("ratio_numeric: stencil cannot avoid the zone edge")
        return SweepRecord(n2=n2, e_over_m=math.sqrt(1.0 + 2.0 * n2 * v),
                           zone=zone.value, nudged=True,
                           error="; ".join(errs) or None, **vals)

    mode = mode_from_n2(setup, n2)
    zone = classify_zone(setup, mode.E)
    if "T2_exact" in outputs:
        vals["t2_exact"] = abs(match_boundaries(setup, mode).T) ** 2
    if "T2_nr_form" in outputs and zone is Zone.TUNNELING:
        vals["t2_nr_form"] = transmission_magnitude_nr_form(setup, mode) ** 2
    if "phase_rad" in outputs:
        vals["phase_rad"] = transmission_any_zone(setup, mode).phase
    if "ratio_closed" in outputs:
        vals["ratio_closed"] = normalized_phase_time(v, n2, wL)
    if "ratio_numeric" in outputs:
        try:
            res = phase_time_numeric(setup, mode)
            vals["ratio_numeric"] = res.ratio if res.ratio_defined else None
            if not res.ratio_defined:
                errs.append("ratio_numeric: undefined at L=0")
        except KleinTunnelError as exc:
            errs.append(f"ratio_numeric: {exc}")
    return SweepRecord(n2=n2, e_over_m=mode.E / m, zone=zone.value,
                       error="; ".join(errs) or None, **vals)


def _nr_point(wL: float, n2: float, outputs: tuple[str, ...]) -> SweepRecord:
    n2, edge = _snap_to_edge(0.0, n2)
    vals: dict[str, float | None] = {}
    errs: list[str] = []
    if edge is not None:
        zone = Zone.EDGE_UPPER
    elif n2 < 1.0:
        zone = Zone.TUNNELING
    else:
        zone = Zone.ABOVE_BARRIER
    if "T2_exact" in outputs:
        vals["t2_exact"] = nr_magnitude_normalized(n2, wL) ** 2
    if "T2_nr_form" in outputs and zone in (Zone.TUNNELING, Zone.EDGE_UPPER):
        # NR prefactor is the exact one for Schroedinger kinematics
        vals["t2_nr_form"] = nr_magnitude_normalized(n2, wL) ** 2
    if "phase_rad" in outputs:
        vals["phase_rad"] = (math.atan(0.5 * math.sqrt(n2) * wL) if edge
                             else nr_phase_normalized(n2, wL))
    if "ratio_closed" in outputs:
        vals["ratio_closed"] = nr_ratio_normalized(n2, wL)
    if "ratio_numeric" in outputs:
        if edge is not None:
            errs.append("ratio_numeric: stencil cannot avoid the zone edge")
        else:
            try:
                vals["ratio_numeric"] = nr_ratio_numeric(n2, wL)
            except KleinTunnelError as exc:
                errs.append(f"ratio_numeric: {exc}")
    return SweepRecord(n2=n2, e_over_m=None, zone=zone.value, nudged=edge is not None,
                       error="; ".join(errs) or None, **vals)


def _compute_point(args: tuple[float, float, float, float, tuple[str, ...]]) -> SweepRecord:
    v, wL, m, n2, outputs = args
    try:
        if v == 0.0:
            return _nr_point(wL, n2, outputs)
        return _relativistic_point(v, wL, m, n2, outputs)
    except KleinTunnelError as exc:
        # a point-level failure is captured, never fatal for the sweep
        return SweepRecord(n2=n2, e_over_m=None, zone=Zone.NON_PROPAGATING.value,
                           error=str(exc))


# ---------------------------------------------------------------------------
# sweep driver
# ---------------------------------------------------------------------------

def run_sweep(req: SweepRequest, workers: int = 1) -> list[SweepRecord]:
    """Evaluate the request grid in ascending n2.

    Points are computed independently (optionally across ``workers``
    processes), merged in grid order, then a single ordered pass removes
    any residual 2*pi steps from the phase column.  Output is identical
    for every worker count.
    """
    jobs = [(req.v, req.wL, req.m, n2, tuple(req.outputs)) for n2 in req.grid()]
    if workers > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_compute_point, jobs, chunksize=64))
    else:
        records = [_compute_point(job) for job in jobs]
    return _unwrap_phases(records)


def _unwrap_phases(records: list[SweepRecord]) -> list[SweepRecord]:
    out: list[SweepRecord] = []
    prev: float | None = None
    for rec in records:
        if rec.phase_rad is not None:
            if prev is not None:
                turns = round((prev - rec.phase_rad) / (2.0 * math.pi))
                if turns:
                    rec = replace(rec, phase_rad=rec.phase_rad + 2.0 * math.pi * turns)
            prev = rec.phase_rad
        out.append(rec)
    return out


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def _fmt(value: float | None) -> str:
    return "" if value is None else repr(value)


def _record_cells(rec: SweepRecord) -> list[str]:
    return [
        repr(rec.n2),
        _fmt(rec.e_over_m),
        rec.zone,
        _fmt(rec.t2_exact),
        _fmt(rec.t2_nr_form),
        _fmt(rec.phase_rad),
        _fmt(rec.ratio_closed),
        _fmt(rec.ratio_numeric),
        "true" if rec.nudged else "",
    ]


def write_csv(records: list[SweepRecord], path) -> None:
    """Write records in the fixed CSV contract (round-trip exact floats)."""
    if not records:
        raise DomainError("refusing to write an empty sweep")
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(",".join(CSV_COLUMNS) + "\n")
            for rec in records:
                fh.write(",".join(_record_cells(rec)) + "\n")
    except OSError as exc:
        raise KleinTunnelError(f"writing {path}: {exc}") from exc


def read_csv(path) -> list[SweepRecord]:
    """Parse a file written by write_csv back into records (exact floats)."""
    def num(cell: str) -> float | None:
        return None if cell == "" else float(cell)

    try:
        with open(path, "r", encoding="utf-8", newline="\n") as fh:
            header = fh.readline().rstrip("\n")
            if header != ",".join(CSV_COLUMNS):
                raise DomainError(f"{path}: unexpected header {header!r}")
            out = []
            for line in fh:
                cells = line.rstrip("\n").split(",")
                if len(cells) != len(CSV_COLUMNS):
                    raise DomainError(f"{path}: malformed row {line!r}")
                out.append(SweepRecord(
                    n2=float(cells[0]), e_over_m=num(cells[1]), zone=cells[2],
                    t2_exact=num(cells[3]), t2_nr_form=num(cells[4]),
                    phase_rad=num(cells[5]), ratio_closed=num(cells[6]),
                    ratio_numeric=num(cells[7]), nudged=cells[8] == "true"))
            return out
    except OSError as exc:
        raise KleinTunnelError(f"reading {path}: {exc}") from exc


def write_json(records: list[SweepRecord], path) -> None:
    """Write records as a JSON array with the CSV field names plus ``error``."""
    if not records:
        raise DomainError("refusing to write an empty sweep")
    payload = [{
        "n2": rec.n2,
        "E_over_m": rec.e_over_m,
        "zone": rec.zone,
        "T2_exact": rec.t2_exact,
        "T2_nr_form": rec.t2_nr_form,
        "phase_rad": rec.phase_rad,
        "ratio_closed": rec.ratio_closed,
        "ratio_numeric": rec.ratio_numeric,
        "nudged": rec.nudged,
        "error": rec.error,
    } for rec in records]
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(payload, fh, indent=1)
            fh.write("\n")
    except OSError as exc:
        raise KleinTunnelError(f"writing {path}: {exc}") from exc


# ---------------------------------------------------------------------------
# presets
# ---------------------------------------------------------------------------

FIG1_V_VALUES = (0.0, 1.0, 2.0, 5.0, 10.0)
FIG1_WL = 2.0 * math.pi
FIG1_COUNT = 2000


def fig1_request(v: float) -> SweepRequest:
    """Sweep request for one transmission/phase-time panel: wL = 2*pi,
    2000 linear n2 points on (0, v/2 + 3] (covers all three zones)."""
    top = 0.5 * v + 3.0
    return SweepRequest(v=v, wL=FIG1_WL, n2_min=top / FIG1_COUNT, n2_max=top,
                        count=FIG1_COUNT)


def fig1_preset(out_dir, fmt: str = "csv", workers: int = 1) -> list[str]:
    """Produce the five standard datasets (v = 0, 1, 2, 5, 10) and return paths."""
    import os

    if fmt not in ("csv", "json"):
        raise DomainError(f"fmt must be 'csv' or 'json', got {fmt!r}")
    os.makedirs(out_dir, exist_ok=True)
    paths = []
    for v in FIG1_V_VALUES:
        records = run_sweep(fig1_request(v), workers=workers)
        path = os.path.join(str(out_dir), f"fig1_v{int(v)}.{fmt}")
        (write_csv if fmt == "csv" else write_json)(records, path)
        paths.append(path)
    return paths
