"""Circuit-accurate simulation of the elemental circuits.

Each Josephson junction follows the resistively-and-capacitively-shunted
model in phase coordinates,

    (Phi0/2pi)*C*d2phi/dt2 + (Phi0/2pi)*(1/r_n)*dphi/dt + I_c*sin(phi) = I_node,

with node equations assembled per template kind. Pure inductor branches are
expressed through phase differences (I = (Phi0/2pi)*(phi_i - phi_j)/L), so
flux quantization is exact by construction; branches with series resistance
(SPD recovery, leaky storage loops) carry their own current state.

A junction "emits a fluxon" when its phase advances 2pi; emission times are
collected by a streaming counter attached to every accepted integrator step.

Sign conventions worth keeping in mind:

  * storage-loop current i_si/i_di is drawn out of the last line junction's
    node, so a filled loop counter-biases that junction (saturation falls
    out of the node equations, it is not modeled separately);
  * the dendritic receiving loop connects the firing junction (J_df) to the
    reset junction (J_dr); afferent flux raises J_df's drive and lowers
    J_dr's, and a 2pi slip of J_df moves Phi0/L_dr of circulating current
    onto J_dr.
"""

from __future__ import annotations

import bisect
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .errors import IntegrationError, ParameterError, StructuralError
from .odesolver import hermite, solve_segment
from .quantities import PHI0_OVER_2PI as _P
from .templates import (
    ANALOG,
    BINARY,
    DENDRITE,
    ELECTRONIC,
    MODE_RESET_FRACTION,
    SPLITTER,
    SYNAPSE,
    CircuitTemplate,
)
from .traces import TraceSet

TWO_PI = 2.0 * math.pi

# Step caps (ns). The quiet cap bounds drift between stimuli; the hotspot cap
# resolves the 50 ps SPD current dump; the running cap engages only while a
# junction is actually rotating (plasma period here is 20-40 ps).
MAX_STEP_QUIET = 0.025
MAX_STEP_HOTSPOT = 0.001
MAX_STEP_RUNNING = 0.002
RUNNING_RATE = 3.0  # rad/ns; above this a junction counts as rotating

# Spacing below which a splitter is not guaranteed to copy every pulse.
SPLITTER_MIN_GAP_NS = 0.05

DEFAULT_TOL = 1e-6
DEFAULT_CADENCE = 0.01  # ns


# ---------------------------------------------------------------------------
# stimuli

@dataclass(frozen=True)
class PhotonTimes:
    """Photon absorption times (ns) at a synapse's detector."""

    times: tuple

    def __init__(self, times):
        ts = tuple(float(t) for t in times)
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise ParameterError("photon times must be strictly increasing")
        object.__setattr__(self, "times", ts)


@dataclass(frozen=True)
class CurrentSchedule:
    """Piecewise-linear injected drive.

    For a synapse this is extra current (uA) into the firing junction node;
    for a dendrite it is the circulating drive current (uA) induced in the
    receiving loop, i.e. (coupled flux)/L_dr.
    """

    t: np.ndarray
    i: np.ndarray

    def __init__(self, t, i):
        t = np.asarray(t, dtype=float)
        i = np.asarray(i, dtype=float)
        if t.ndim != 1 or t.shape != i.shape or t.size < 2:
            raise ParameterError("schedule needs matching 1-d t and i arrays (>= 2 points)")
        if not np.all(np.diff(t) > 0):
            raise ParameterError("schedule times must be strictly increasing")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "i", i)

    def interp(self):
        """Fast scalar interpolator; O(1) on uniform grids."""
        t, vals = self.t, self.i
        t0 = float(t[0])
        n = t.size
        dt = float(t[1] - t[0])
        uniform = bool(np.allclose(np.diff(t), dt, rtol=1e-9, atol=1e-15))
        v = vals.tolist()
        if uniform:
            def f(x: float) -> float:
                u = (x - t0) / dt
                if u <= 0.0:
                    return v[0]
                k = int(u)
                if k >= n - 1:
                    return v[n - 1]
                w = u - k
                return v[k] * (1.0 - w) + v[k + 1] * w
        else:
            tl = t.tolist()

            def f(x: float) -> float:
                if x <= tl[0]:
                    return v[0]
                if x >= tl[-1]:
                    return v[-1]
                k = bisect.bisect_right(tl, x) - 1
                w = (x - tl[k]) / (tl[k + 1] - tl[k])
                return v[k] * (1.0 - w) + v[k + 1] * w
        return f


@dataclass(frozen=True)
class FluxonTrain:
    """Incoming fluxon arrival times (ns), delivered through a phase source
    that advances 2pi per fluxon over `ramp` ns."""

    times: tuple
    ramp: float = 0.005

    def __init__(self, times, ramp: float = 0.005):
        ts = tuple(float(t) for t in times)
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise ParameterError("fluxon times must be strictly increasing")
        if ramp <= 0:
            raise ParameterError("fluxon ramp must be positive")
        object.__setattr__(self, "times", ts)
        object.__setattr__(self, "ramp", ramp)

    def phase(self, t: float) -> float:
        times, ramp = self.times, self.ramp
        k = bisect.bisect_right(times, t - ramp)
        val = TWO_PI * k
        i = k
        while i < len(times) and times[i] <= t:
            u = (t - times[i]) / ramp
            val += TWO_PI * (u * u * (3.0 - 2.0 * u))
            i += 1
        return val


# ---------------------------------------------------------------------------
# phase-slip detection

class PhaseSlipCounter:
    """Streaming 2pi-crossing counter with a retraction band.

    An event is recorded when the phase first reaches ref + 2pi*k; if the
    phase later falls below that level by more than `hysteresis` the
    provisional event is retracted (under-damped ringing that peeks over a
    level without completing the slip is not a fluxon).
    """

    def __init__(self, ref: float, hysteresis: float = math.pi / 4):
        self.ref = ref
        self.hysteresis = hysteresis
        self.events: list = []

    def update(self, t_prev: float, phi_prev: float, t_new: float, phi_new: float):
        ref = self.ref
        k = len(self.events)
        while phi_new >= ref + TWO_PI * (k + 1):
            level = ref + TWO_PI * (k + 1)
            if phi_new > phi_prev:
                tc = t_prev + (t_new - t_prev) * (level - phi_prev) / (phi_new - phi_prev)
            else:
                tc = t_new
            self.events.append(min(tc, t_new))
            k += 1
        while k > 0 and phi_new < ref + TWO_PI * k - self.hysteresis:
            self.events.pop()
            k -= 1


def detect_phase_slips(t, phi, ref: float | None = None,
                       hysteresis: float = math.pi / 4) -> np.ndarray:
    """Fluxon emission times from a continuous phase trace.

    Counts crossings of ref + 2pi*k (k = 1, 2, ...); for a monotone trace the
    count equals floor((phi_end - phi_start)/2pi). ref defaults to phi[0].
    """
    t = np.asarray(t, dtype=float)
    phi = np.asarray(phi, dtype=float)
    if t.shape != phi.shape or t.ndim != 1:
        raise StructuralError("detect_phase_slips needs matching 1-d arrays")
    if t.size == 0:
        return np.empty(0)
    counter = PhaseSlipCounter(ref if ref is not None else float(phi[0]), hysteresis)
    for k in range(1, t.size):
        counter.update(float(t[k - 1]), float(phi[k - 1]), float(t[k]), float(phi[k]))
    return np.asarray(counter.events, dtype=float)


# ---------------------------------------------------------------------------
# per-kind circuit equations

def _junction_constants(template: CircuitTemplate):
    """(a, g, ic, bias) per junction in layout order; a = 1/((Phi0/2pi)*C)."""
    out = []
    for j in template.junctions:
        c_nf = j.spec.c_j * 1e-3
        out.append((1.0 / (_P * c_nf), _P / j.spec.r_n, j.spec.i_c, j.bias))
    return out


def _make_rhs(template: CircuitTemplate, *, rvar: float = 0.0,
              ext_current=None, ext_drive=None, phase_source=None):
    """Build the segment RHS closure for one template kind.

    rvar: SPD nanowire resistance for this segment (synapse only).
    ext_current: callable t -> uA injected into the firing node (synapse).
    ext_drive: callable t -> uA circulating drive in the DR loop (dendrite).
    phase_source: callable t -> rad upstream phase (electronic/splitter).
    """
    kind = template.kind
    jc = _junction_constants(template)
    sin = math.sin
    n = template.state_size

    if kind in (SYNAPSE, ELECTRONIC):
        si = template.loop("si").spec
        l_si, r_si = si.inductance_l, si.leak_r
        if kind == SYNAPSE:
            links = [template.iso_l, *template.jtl_stage_l]
            spd = template.spd
            ib, rs, ls = spd.i_bias, spd.r_spd, spd.l_spd
        else:
            links = list(template.jtl_stage_l)
        inv_l = [_P / L for L in links]
        nj = len(jc)
        a = [c[0] for c in jc]; g = [c[1] for c in jc]
        ic = [c[2] for c in jc]; bias = [c[3] for c in jc]
        iext = ext_current
        src = phase_source
        lin = template.input_l

        def rhs(t, y):
            out = np.empty(n)
            isi = y[-1]
            # link currents between consecutive junction nodes
            link = [inv_l[m] * (y[2 * m] - y[2 * m + 2]) for m in range(nj - 1)]
            for m in range(nj):
                drive = bias[m]
                if m > 0:
                    drive += link[m - 1]
                if m < nj - 1:
                    drive -= link[m]
                else:
                    drive -= isi
                if m == 0:
                    if kind == SYNAPSE:
                        drive += ib - y[-2]
                        if iext is not None:
                            drive += iext(t)
                    else:
                        drive += _P * (src(t) - y[0]) / lin
                v = y[2 * m + 1]
                out[2 * m] = v
                out[2 * m + 1] = a[m] * (drive - ic[m] * sin(y[2 * m]) - g[m] * v)
            if kind == SYNAPSE:
                il = y[-2]
                out[-2] = (_P * y[1] + rs * (ib - il) - rvar * il) / ls
            out[-1] = (_P * y[2 * nj - 1] - r_si * isi) / l_si
            return out
        return rhs

    if kind == DENDRITE:
        di = template.loop("di").spec
        l_di, r_di = di.inductance_l, di.leak_r
        ldr = template.dr_loop_l
        links = [template.iso_l, *template.jtl_stage_l]
        inv_l = [_P / L for L in links]
        nj = len(jc)      # J_df, J_dr, then chain
        nch = nj - 2
        a = [c[0] for c in jc]; g = [c[1] for c in jc]
        ic = [c[2] for c in jc]; bias = [c[3] for c in jc]
        drv = ext_drive

        def rhs(t, y):
            out = np.empty(n)
            idi = y[-1]
            d = drv(t) if drv is not None else 0.0
            iloop = _P * (y[0] - y[2]) / ldr - d
            # link m: from J_df (m=0) or chain node m-1 to chain node m
            link = [inv_l[m] * (y[0 if m == 0 else 2 * (m + 1)] - y[2 * (m + 2)])
                    for m in range(nch)]
            # J_df
            out[0] = y[1]
            out[1] = a[0] * (bias[0] - iloop - link[0] - ic[0] * sin(y[0]) - g[0] * y[1])
            # J_dr
            out[2] = y[3]
            out[3] = a[1] * (bias[1] + iloop - ic[1] * sin(y[2]) - g[1] * y[3])
            # chain junctions
            for m in range(nch):
                k = m + 2
                drive = bias[k] + link[m]
                if m < nch - 1:
                    drive -= link[m + 1]
                else:
                    drive -= idi
                v = y[2 * k + 1]
                out[2 * k] = v
                out[2 * k + 1] = a[k] * (drive - ic[k] * sin(y[2 * k]) - g[k] * v)
            out[-1] = (_P * y[2 * nj - 1] - r_di * idi) / l_di
            return out
        return rhs

    if kind == SPLITTER:
        (a0, g0, ic0, b0), (aa, ga, ica, ba), (ab, gb, icb, bb) = jc
        lin, lbr = template.input_l, template.branch_l
        src = phase_source

        def rhs(t, y):
            phi0, v0, phia, va, phib, vb = y
            iin = _P * (src(t) - phi0) / lin
            ia = _P * (phi0 - phia) / lbr
            ib2 = _P * (phi0 - phib) / lbr
            return np.array([
                v0, a0 * (b0 + iin - ia - ib2 - ic0 * sin(phi0) - g0 * v0),
                va, aa * (ba + ia - ica * sin(phia) - ga * va),
                vb, ab * (bb + ib2 - icb * sin(phib) - gb * vb),
            ])
        return rhs

    raise StructuralError(f"unknown template kind {kind!r}")


def rcsj_rhs(state_vec, template: CircuitTemplate, t: float = 0.0, **ext):
    """State derivative for one template (thin public wrapper over the
    specialized closures; validates dimensions)."""
    y = np.asarray(state_vec, dtype=float)
    if y.size != template.state_size:
        raise StructuralError(
            f"state size {y.size} does not match {template.kind} "
            f"({template.state_size})")
    return _make_rhs(template, **ext)(t, y)


def dc_operating_point(template: CircuitTemplate, *, stored: float = 0.0,
                       ext_drive0: float = 0.0) -> np.ndarray:
    """Static solution with all junctions subcritical and rates zero.

    stored: initial storage-loop current (uA). ext_drive0: dendrite afferent
    circulating drive at t0.
    """
    kind = template.kind
    jc = _junction_constants(template)
    nj = len(jc)
    ic = [c[2] for c in jc]
    bias = [c[3] for c in jc]
    guess = np.array([math.asin(min(b / i, 0.999)) for (_, _, i, b) in
                      [(0, 0, c[2], c[3]) for c in jc]])

    if kind in (SYNAPSE, ELECTRONIC):
        if kind == SYNAPSE:
            links = [template.iso_l, *template.jtl_stage_l]
        else:
            links = list(template.jtl_stage_l)
        lin = template.input_l

        def res(phi):
            link = [_P * (phi[m] - phi[m + 1]) / links[m] for m in range(nj - 1)]
            r = []
            for m in range(nj):
                drive = bias[m]
                if m > 0:
                    drive += link[m - 1]
                if m < nj - 1:
                    drive -= link[m]
                else:
                    drive -= stored
                if m == 0 and kind == ELECTRONIC:
                    drive += _P * (0.0 - phi[0]) / lin
                r.append(drive - ic[m] * math.sin(phi[m]))
            return r
    elif kind == DENDRITE:
        ldr = template.dr_loop_l
        links = [template.iso_l, *template.jtl_stage_l]
        nch = nj - 2

        def res(phi):
            iloop = _P * (phi[0] - phi[1]) / ldr - ext_drive0
            link = [_P * ((phi[0] if m == 0 else phi[m + 1]) - phi[m + 2]) / links[m]
                    for m in range(nch)]
            r = [bias[0] - iloop - link[0] - ic[0] * math.sin(phi[0]),
                 bias[1] + iloop - ic[1] * math.sin(phi[1])]
            for m in range(nch):
                k = m + 2
                drive = bias[k] + link[m]
                if m < nch - 1:
                    drive -= link[m + 1]
                else:
                    drive -= stored
                r.append(drive - ic[k] * math.sin(phi[k]))
            return r
    elif kind == SPLITTER:
        lin, lbr = template.input_l, template.branch_l

        def res(phi):
            p0, pa, pb = phi
            iin = _P * (0.0 - p0) / lin
            ia = _P * (p0 - pa) / lbr
            ib2 = _P * (p0 - pb) / lbr
            return [bias[0] + iin - ia - ib2 - ic[0] * math.sin(p0),
                    bias[1] + ia - ic[1] * math.sin(pa),
                    bias[2] + ib2 - ic[2] * math.sin(pb)]
    else:
        raise StructuralError(f"unknown template kind {kind!r}")

    sol = optimize.root(res, guess, method="hybr", tol=1e-13)
    if not sol.success or np.max(np.abs(res(sol.x))) > 1e-8:
        raise ParameterError(
            f"no static operating point for {kind} template (biases too close "
            f"to critical?): {sol.message}")

    y0 = np.zeros(template.state_size)
    y0[0:2 * nj:2] = sol.x
    if kind == SYNAPSE:
        y0[-2] = template.spd.i_bias  # SPD carries its full bias at rest
        y0[-1] = stored
    elif kind in (ELECTRONIC, DENDRITE):
        y0[-1] = stored
    return y0


# ---------------------------------------------------------------------------
# signal extraction per kind

def _signal_extractors(template: CircuitTemplate, ext_drive=None):
    kind = template.kind
    nj = len(template.junctions)
    iv_last = 2 * nj - 1
    if kind == SYNAPSE:
        ib = template.spd.i_bias
        return {
            "i_div_uA": lambda t, y: ib - y[-2],
            "i_spd_uA": lambda t, y: y[-2],
            "i_si_uA": lambda t, y: y[-1],
            "v_sf_uV": lambda t, y: _P * y[1],
            "v_out_uV": lambda t, y: _P * y[iv_last],
        }
    if kind == ELECTRONIC:
        return {
            "i_si_uA": lambda t, y: y[-1],
            "v_out_uV": lambda t, y: _P * y[iv_last],
        }
    if kind == DENDRITE:
        ldr = template.dr_loop_l
        i_de = template.junction("J_df").bias
        drv = ext_drive or (lambda t: 0.0)
        return {
            "i_di_uA": lambda t, y: y[-1],
            "i_loop_uA": lambda t, y: _P * (y[0] - y[2]) / ldr - drv(t),
            "drive_df_uA": lambda t, y: i_de - (_P * (y[0] - y[2]) / ldr - drv(t)),
            "v_df_uV": lambda t, y: _P * y[1],
        }
    if kind == SPLITTER:
        return {
            "v_in_uV": lambda t, y: _P * y[1],
            "v_out_a_uV": lambda t, y: _P * y[3],
            "v_out_b_uV": lambda t, y: _P * y[5],
        }
    raise StructuralError(f"unknown template kind {kind!r}")


# ---------------------------------------------------------------------------
# the integrate() driver

def _segment_plan(template, stimulus, t0, t1):
    """Split [t0, t1] at stimulus discontinuities.

    Returns a list of (a, b, rvar, cap): segment bounds, SPD resistance and
    the max-step bound for that span.
    """
    cuts = set()
    hot_windows = []
    ramp_windows = []
    if isinstance(stimulus, PhotonTimes):
        hot = template.spd.t_hotspot
        for tk in stimulus.times:
            if tk < t0 or tk > t1:
                raise ParameterError(f"photon time {tk} outside span ({t0}, {t1})")
            cuts.add(tk)
            cuts.add(min(tk + hot, t1))
            hot_windows.append((tk, tk + hot))
    elif isinstance(stimulus, CurrentSchedule):
        # Sparse schedules carry genuine slope discontinuities worth landing
        # on; dense ones (resampled traces) are effectively smooth.
        if stimulus.t.size <= 64:
            for tk in stimulus.t:
                if t0 < tk < t1:
                    cuts.add(float(tk))
    elif isinstance(stimulus, FluxonTrain):
        for tk in stimulus.times:
            if tk < t0 or tk > t1:
                raise ParameterError(f"fluxon time {tk} outside span ({t0}, {t1})")
            cuts.add(tk)
            cuts.add(min(tk + stimulus.ramp, t1))
            ramp_windows.append((tk, tk + stimulus.ramp))
    elif stimulus is not None:
        raise ParameterError(f"unsupported stimulus type {type(stimulus).__name__}")

    edges = sorted({t0, t1} | {c for c in cuts if t0 < c < t1})
    segs = []
    for a, b in zip(edges, edges[1:]):
        mid = 0.5 * (a + b)
        rvar = 0.0
        cap = MAX_STEP_QUIET
        for (wa, wb) in hot_windows:
            if wa <= mid < wb:
                rvar = template.spd.r_hotspot
                cap = min(cap, MAX_STEP_HOTSPOT)
        for (wa, wb) in ramp_windows:
            if wa <= mid < wb:
                cap = min(cap, stimulus.ramp / 5.0)
        segs.append((a, b, rvar, cap))
    return segs


def integrate(template: CircuitTemplate, stimulus, t_span, tol: float = DEFAULT_TOL,
              cadence: float = DEFAULT_CADENCE, *, ext_drive=None,
              stored: float = 0.0, extra_signals=None) -> TraceSet:
    """Adaptive integration of one elemental circuit over t_span.

    stimulus: PhotonTimes | CurrentSchedule | FluxonTrain | None, matched to
    the template kind. ext_drive: dendrite afferent drive (callable t -> uA),
    used by the tree co-simulation; plain dendrite runs pass the drive as a
    CurrentSchedule stimulus instead. Returns sampled traces plus fluxon
    emission times for every junction.
    """
    if not (1e-12 < tol < 1e-2):
        raise ParameterError(f"tol must lie in (1e-12, 1e-2), got {tol}")
    t0, t1 = float(t_span[0]), float(t_span[1])
    if not t1 > t0:
        raise ParameterError(f"empty integration span {t_span}")
    if cadence <= 0:
        raise ParameterError("sampling cadence must be positive")

    kind = template.kind
    ext_current = None
    phase_source = None
    drive_fn = ext_drive
    if isinstance(stimulus, CurrentSchedule):
        if kind == DENDRITE:
            if ext_drive is not None:
                raise ParameterError("pass either a drive schedule or ext_drive, not both")
            drive_fn = stimulus.interp()
        elif kind == SYNAPSE:
            ext_current = stimulus.interp()
        else:
            raise ParameterError(f"current schedule not supported for {kind}")
    elif isinstance(stimulus, PhotonTimes):
        if kind != SYNAPSE:
            raise ParameterError(f"photon stimulus requires a synapse template, got {kind}")
    elif isinstance(stimulus, FluxonTrain):
        if kind not in (ELECTRONIC, SPLITTER):
            raise ParameterError(f"fluxon train not supported for {kind}")
        phase_source = stimulus.phase

    y = dc_operating_point(template, stored=stored,
                           ext_drive0=drive_fn(t0) if drive_fn else 0.0)
    n_junc = len(template.junctions)
    counters = [PhaseSlipCounter(float(y[2 * i])) for i in range(n_junc)]

    extractors = _signal_extractors(template, ext_drive=drive_fn)
    if extra_signals:
        extractors.update(extra_signals)
    sample_t = np.arange(t0, t1 + 0.5 * cadence, cadence)
    sample_t = sample_t[sample_t <= t1 + 1e-12]
    samples = {name: np.empty(sample_t.size) for name in extractors}
    sample_idx = 0

    rate_slots = [2 * i + 1 for i in range(n_junc)]

    def step_cap(t, yy):
        for s in rate_slots:
            if abs(yy[s]) > RUNNING_RATE:
                return MAX_STEP_RUNNING
        return None

    def on_step(tp, yp, fp, tn, yn, fn):
        nonlocal sample_idx
        for i, c in enumerate(counters):
            c.update(tp, float(yp[2 * i]), tn, float(yn[2 * i]))
        while sample_idx < sample_t.size and sample_t[sample_idx] <= tn + 1e-12:
            ts = float(sample_t[sample_idx])
            ys = hermite(ts, tp, yp, fp, tn, yn, fn) if ts < tn else yn
            for name, fx in extractors.items():
                samples[name][sample_idx] = fx(ts, ys)
            sample_idx += 1

    atol = tol * 1e-2
    h = None
    # record the exact t0 sample before stepping
    on_step(t0, y, np.zeros_like(y), t0, y, np.zeros_like(y))

    for (a, b, rvar, cap) in _segment_plan(template, stimulus, t0, t1):
        rhs = _make_rhs(template, rvar=rvar, ext_current=ext_current,
                        ext_drive=drive_fn, phase_source=phase_source)
        # The RHS may be discontinuous across segment edges (hotspot switch,
        # schedule knots), so the FSAL derivative is recomputed per segment.
        y, _, h, _ = solve_segment(
            rhs, a, b, y, rtol=tol, atol=atol, max_step=cap,
            f0=None, h_init=h, step_cap=step_cap, on_step=on_step)
        if not np.all(np.isfinite(y)):
            raise IntegrationError("non-finite state", b)

    events = {}
    for i, role in enumerate(template.junction_roles):
        events[role] = np.asarray(counters[i].events, dtype=float)
    return TraceSet(t=sample_t, signals=samples, fluxon_events=events)


# ---------------------------------------------------------------------------
# higher-level operations

def synapse_event_window(template: CircuitTemplate, i_sy: float) -> float:
    """Rough upper bound (ns) on how long one photon keeps J_sf supercritical."""
    spd = template.spd
    ic = template.junction("J_sf").spec.i_c
    margin = max(ic - i_sy, 0.2)
    if spd.i_bias <= margin:
        return 2.0
    return spd.tau_spd * math.log(spd.i_bias / margin) + 2.0


def count_fluxons_vs_bias(template: CircuitTemplate, i_sy_values,
                          tol: float = DEFAULT_TOL, photon_t: float = 5.0):
    """Single-photon fluxon yield n_f per synaptic bias value.

    Returns a list of (i_sy, n_f) using the count of fluxons stored in the
    SI loop (slips of the last line junction).
    """
    ic = template.junction("J_sf").spec.i_c
    rows = []
    for i_sy in i_sy_values:
        if i_sy >= ic:
            raise ParameterError(f"i_sy = {i_sy} uA must stay below I_c = {ic} uA")
        tpl = template.with_bias(i_sy=i_sy)
        t_end = photon_t + synapse_event_window(tpl, i_sy) + 25.0
        trace = integrate(tpl, PhotonTimes([photon_t]), (0.0, t_end), tol=tol,
                          cadence=0.05)
        rows.append((float(i_sy), trace.fluxon_count(tpl.output_junction)))
    return rows


def simulate_dendrite_mode(template: CircuitTemplate, drive: CurrentSchedule,
                           mode: str | None = None, tol: float = DEFAULT_TOL,
                           cadence: float = DEFAULT_CADENCE) -> TraceSet:
    """Drive a dendrite template with a circulating-current schedule.

    mode (binary|analog) rebiases the reset junction to the mode's default
    fraction when given; otherwise the template's own biasing is used.
    """
    if mode is not None:
        if mode not in (BINARY, ANALOG):
            raise ParameterError(f"mode must be binary|analog, got {mode!r}")
        ic = template.junction("J_dr").spec.i_c
        template = template.with_bias(i_reset_bias=MODE_RESET_FRACTION[mode] * ic)
    t_span = (float(drive.t[0]), float(drive.t[-1]))
    return integrate(template, drive, t_span, tol=tol, cadence=cadence)


def simulate_splitter(template: CircuitTemplate, input_times,
                      tol: float = DEFAULT_TOL, settle: float = 2.0):
    """Propagate a fluxon train through a splitter.

    Returns (times_a, times_b, trace). Inputs spaced closer than
    SPLITTER_MIN_GAP_NS are flagged with a dropped-fluxon warning up front;
    a count mismatch after simulation is also warned about.
    """
    times = [float(t) for t in input_times]
    if any(b <= a for a, b in zip(times, times[1:])):
        raise ParameterError("input fluxon times must be strictly increasing")
    tight = [i for i in range(1, len(times))
             if times[i] - times[i - 1] < SPLITTER_MIN_GAP_NS]
    if tight:
        warnings.warn(
            f"splitter input gaps below {SPLITTER_MIN_GAP_NS} ns at indices {tight}; "
            "fluxons may be dropped", RuntimeWarning, stacklevel=2)
    if not times:
        return np.empty(0), np.empty(0), None
    t0 = min(0.0, times[0] - 1.0)
    t1 = times[-1] + settle
    trace = integrate(template, FluxonTrain(times), (t0, t1), tol=tol, cadence=0.002)
    out_a = trace.fluxon_events["J_out_a"]
    out_b = trace.fluxon_events["J_out_b"]
    for name, out in (("A", out_a), ("B", out_b)):
        if out.size != len(times):
            missing = list(range(min(out.size, len(times)), len(times)))
            warnings.warn(
                f"splitter output {name} carried {out.size}/{len(times)} fluxons "
                f"(missing input indices {missing})", RuntimeWarning, stacklevel=2)
    return out_a, out_b, trace
