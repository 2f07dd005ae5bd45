"""Event-driven abstraction of synapses and dendrites.

Loop currents decay exponentially between events; a synapse event deposits
its bias-dependent fluxon count in one step; dendrites compare an
instantaneous weighted drive against a firing threshold calibrated from the
circuit backend (the bare i_c plus the measured inductive spring shift).
Couplings are one-directional: k = M/L_receiver, exactly the ratio the
circuit backend realizes with its mutual inductors.

Nodes are immutable values; every operation returns the updated node.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import calibration
from .errors import CalibrationError, ParameterError
from .quantities import PHI0, StorageLoopSpec

I_C_DEFAULT = 40.0


def _decayed(i: float, dt: float, tau: float) -> float:
    if dt == 0.0 or math.isinf(tau) or i == 0.0:
        return i
    return i * math.exp(-dt / tau)


@dataclass(frozen=True)
class SynapseNode:
    """A storage loop fed by a photonic or electronic synapse."""

    name: str
    loop: StorageLoopSpec
    i_sy: float = 38.0
    weight_fn: tuple = calibration.WEIGHT_QUADRATIC  # (a, b, c) -> n_f(i_sy)
    i_sat: float = calibration.SAT_FRACTION * I_C_DEFAULT
    i_si: float = 0.0
    last_update: float = 0.0
    saturating: bool = False  # one event fills the loop (inhibitory/query style)

    def __post_init__(self):
        if not 0.0 <= self.i_si <= self.i_sat + 1e-12:
            raise ParameterError(
                f"{self.name}: i_si={self.i_si} outside [0, i_sat={self.i_sat}]")

    @property
    def fluxon_step(self) -> float:
        return PHI0 / self.loop.inductance_l

    def n_f(self, i_sy: float | None = None) -> int:
        """Fluxons per synapse event at the given (or stored) bias."""
        a, b, c = self.weight_fn
        x = self.i_sy if i_sy is None else i_sy
        return max(0, int(round(a * x * x + b * x + c)))


def decay(node, dt: float):
    """Exponential relaxation of the node's loop current over dt."""
    if dt < 0:
        raise ParameterError(f"decay needs dt >= 0, got {dt}")
    if isinstance(node, SynapseNode):
        return replace(node, i_si=_decayed(node.i_si, dt, node.loop.tau),
                       last_update=node.last_update + dt)
    if isinstance(node, DendriteNode):
        return replace(node, i_di=_decayed(node.i_di, dt, node.di_loop.tau),
                       last_update=node.last_update + dt)
    if isinstance(node, RQNode):
        return replace(node, i_rq=_decayed(node.i_rq, dt, node.tau_rq),
                       last_update=node.last_update + dt)
    raise ParameterError(f"cannot decay {type(node).__name__}")


def synapse_fire(node: SynapseNode, t: float) -> SynapseNode:
    """Deposit one synapse event's fluxons at time t.

    Fluxons are added one Phi0/L step at a time until the event's count is
    spent or the loop reaches saturation (hard truncation of the near-full
    loop's effective weight).
    """
    if t < node.last_update:
        raise ParameterError(
            f"{node.name}: event at t={t} precedes last update {node.last_update}")
    node = decay(node, t - node.last_update)
    step = node.fluxon_step
    count = node.n_f()
    if node.saturating:
        count = max(count, int(math.floor(node.i_sat / step)))
    room = int(math.floor((node.i_sat - node.i_si) / step + 1e-12))
    added = min(count, room)
    return replace(node, i_si=node.i_si + added * step)


def calibrate_weight_function(table) -> tuple:
    """Least-squares quadratic through a (i_sy, n_f) table.

    Returns ((a, b, c), r_squared). The table must be monotone nondecreasing
    in n_f and non-degenerate.
    """
    rows = sorted((float(b), float(n)) for b, n in table)
    if len(rows) < 8:
        raise CalibrationError(f"need >= 8 sweep points, got {len(rows)}")
    ns = [n for _, n in rows]
    if any(b < a for a, b in zip(ns, ns[1:])):
        raise CalibrationError("fluxon table is not monotone nondecreasing")
    if max(ns) == min(ns):
        raise CalibrationError("degenerate fluxon table (constant)")
    xs = np.array([b for b, _ in rows])
    ys = np.array(ns, dtype=float)
    coeffs = np.polyfit(xs, ys, 2)
    resid = ys - np.polyval(coeffs, xs)
    ss = float(((ys - ys.mean()) ** 2).sum())
    r2 = 1.0 - float((resid ** 2).sum()) / ss if ss > 0 else 1.0
    return (float(coeffs[0]), float(coeffs[1]), float(coeffs[2])), r2


@dataclass(frozen=True)
class DendriteNode:
    """Receiving-loop comparator plus integration loop.

    threshold is the total drive (i_de plus weighted afferents) at which the
    firing junction escapes; it defaults to i_c plus the calibrated spring
    shift of the circuit dendrite. reset_level is the drive below which a
    latched binary dendrite un-latches.
    """

    name: str
    mode: str  # binary | analog
    i_de: float
    couplings: tuple  # of (source_name, k, sign)
    di_loop: StorageLoopSpec
    i_di: float = 0.0
    i_c: float = I_C_DEFAULT
    threshold: float | None = None
    reset_level: float | None = None
    latched: bool = False
    analog_gain: float = calibration.ANALOG_GAIN
    di_sat: float = calibration.SAT_FRACTION * I_C_DEFAULT
    last_update: float = 0.0
    last_overdrive: float = 0.0
    accum: float = 0.0  # fractional-fluxon carry of the overdrive integral

    def __post_init__(self):
        if self.mode not in ("binary", "analog"):
            raise ParameterError(f"{self.name}: mode must be binary|analog")
        if self.latched and self.mode != "binary":
            raise ParameterError(f"{self.name}: only binary dendrites latch")
        if not 0.0 <= self.i_di <= self.di_sat + 1e-12:
            raise ParameterError(
                f"{self.name}: i_di={self.i_di} outside [0, di_sat={self.di_sat}]")
        if self.threshold is None:
            shift = calibration.dendrite_threshold_shift(self.mode, self.i_de)
            object.__setattr__(self, "threshold", self.i_c + shift)
        if self.reset_level is None:
            object.__setattr__(
                self, "reset_level",
                self.i_de + calibration.binary_reset_drive(self.i_de))

    @property
    def fluxon_step(self) -> float:
        return PHI0 / self.di_loop.inductance_l


def dendrite_drive(node: DendriteNode, sources: dict, t: float) -> float:
    """Total drive toward the firing junction: bias plus signed weighted
    afferent loop currents. Sources must already be decayed to t."""
    total = node.i_de
    for (src, k, sign) in node.couplings:
        total += sign * k * sources[src].i_si
    return total


def _add_di(node: DendriteNode, count: int):
    step = node.fluxon_step
    room = int(math.floor((node.di_sat - node.i_di) / step + 1e-12))
    added = min(count, room)
    return replace(node, i_di=node.i_di + added * step), added


def dendrite_update(node: DendriteNode, drive: float, t: float):
    """Advance the dendrite to time t under the given instantaneous drive.

    Returns (node, fluxons_emitted). Binary mode emits exactly one fluxon per
    supra-threshold excursion and re-arms when the drive falls below the
    reset level; analog mode integrates the overdrive at the calibrated gain.
    """
    dt = t - node.last_update
    if dt < 0:
        raise ParameterError(f"{node.name}: update at t={t} precedes state time")
    node = decay(node, dt)
    emitted = 0
    if node.mode == "binary":
        if not node.latched and drive > node.threshold:
            node, emitted = _add_di(node, 1)
            node = replace(node, latched=True)
        elif node.latched and drive < node.reset_level:
            node = replace(node, latched=False)
        node = replace(node, last_overdrive=max(drive - node.threshold, 0.0))
    else:
        over = max(drive - node.threshold, 0.0)
        area = 0.5 * (node.last_overdrive + over) * dt
        accum = node.accum + node.analog_gain * area
        whole = int(math.floor(accum))
        node = replace(node, accum=accum - whole, last_overdrive=over)
        if whole > 0:
            node, emitted = _add_di(node, whole)
    return node, emitted


@dataclass(frozen=True)
class RQNode:
    """Dedicated query synapse: saturates identically on every event and
    decays fast; its firing samples the owning dendrite's receiving loop."""

    name: str
    tau_rq: float = 10.0
    i_rq: float = 0.0
    i_rq_sat: float = 34.0
    k: float = 0.25          # coupling into the dendrite drive
    rq_gain: float = calibration.RQ_GAIN
    saturating: bool = True
    last_update: float = 0.0


def rapid_query(node: DendriteNode, rq: RQNode, drive: float, t: float):
    """One query event: the RQ loop saturates, momentarily lifting the drive;
    the dendrite dumps a fluxon count proportional to the sampled drive
    overshoot into its integration loop.

    Returns (dendrite, rq, fluxons_emitted). `drive` is the dendrite's
    excitatory/inhibitory drive without the query contribution.
    """
    dt = t - rq.last_update
    if dt < 0:
        raise ParameterError(f"{rq.name}: query at t={t} precedes state time")
    rq = replace(decay(rq, dt), i_rq=rq.i_rq_sat)
    node = decay(node, t - node.last_update)
    drive_with_rq = drive + rq.k * rq.i_rq_sat
    count = int(round(rq.rq_gain * max(drive_with_rq - node.threshold, 0.0)))
    node, emitted = _add_di(node, count)
    return node, rq, emitted


@dataclass(frozen=True)
class QueuedEvent:
    t: float
    seq: int
    target: str
    kind: str  # photon | rq_photon | ih_photon


@dataclass
class EventQueue:
    """Time-ordered event list; ties keep insertion order."""

    events: list = field(default_factory=list)
    _counter: int = 0

    def push(self, t: float, target: str, kind: str = "photon"):
        self.events.append(QueuedEvent(float(t), self._counter, target, kind))
        self._counter += 1

    def sorted_events(self) -> list:
        return sorted(self.events, key=lambda e: (e.t, e.seq))


def split(event: QueuedEvent, targets) -> list:
    """Copy one routed event to each downstream target, payload intact."""
    return [replace(event, target=tgt) for tgt in targets]
