"""Composition of elemental circuits into a dendritic arbor.

A tree is a DAG of named nodes (photonic synapses, splitters, electronic
synapses, dendrites, one soma) joined by two kinds of edges:

  flux   a storage loop couples into a dendrite's receiving loop through a
         mutual inductor (m_ph picohenries, sign +1 excitatory / -1
         inhibitory, rq flags a rapid-query synapse);
  route  fluxon pulses are copied one-to-two by splitters into electronic
         synapses (fan-out of photon events in the electronic domain).

The same TreeSpec runs on either backend:

  behavioral  event-driven nodes from :mod:`fluxtree.behavioral`;
  ode         node-by-node circuit integration in dependency order, with
              upstream loop currents sampled on a fine grid and injected as
              flux drive downstream (one-directional co-simulation; the
              mutual inductors' back-action is ~1e-3 and neglected).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace

import numpy as np

from . import behavioral as bh
from . import rcsj
from .errors import ConfigError, ParameterError, TreeValidationError
from .quantities import PHI0, StorageLoopSpec
from .templates import (
    ANALOG,
    BINARY,
    MODE_DR_LOOP_L,
    build_dendrite,
    build_electronic_synapse,
    build_splitter,
    build_synapse,
)
from .traces import TraceSet

PHOTONIC = "photonic_synapse"
ELECTRONIC = "electronic_synapse"
SPLITTER = "splitter"
DENDRITE = "dendrite"
SOMA = "soma"
NODE_TYPES = (PHOTONIC, ELECTRONIC, SPLITTER, DENDRITE, SOMA)

I_C = 40.0

# Upstream loop currents are sampled on this grid for flux injection into
# downstream receiving loops (ODE backend).
CO_SIM_DT = 0.01  # ns

MAX_ELECTRONIC_FANOUT = 10


@dataclass(frozen=True)
class NodeDecl:
    name: str
    type: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.type not in NODE_TYPES:
            raise ConfigError(f"node {self.name!r}: unknown type {self.type!r}")

    def p(self, key, default=None):
        return self.params.get(key, default)


@dataclass(frozen=True)
class EdgeDecl:
    src: str
    dst: str
    kind: str = "flux"   # flux | route
    m_ph: float = 500.0  # mutual inductance, pH (flux edges)
    sign: int = +1
    rq: bool = False

    def __post_init__(self):
        if self.kind not in ("flux", "route"):
            raise ConfigError(f"edge {self.src}->{self.dst}: unknown kind {self.kind!r}")
        if self.sign not in (+1, -1):
            raise ConfigError(f"edge {self.src}->{self.dst}: sign must be +1/-1")


@dataclass
class TreeSpec:
    nodes: dict
    edges: list
    backend: str = "behavioral"

    def node(self, name: str) -> NodeDecl:
        return self.nodes[name]

    def in_edges(self, name: str):
        return [e for e in self.edges if e.dst == name]

    def out_edges(self, name: str):
        return [e for e in self.edges if e.src == name]


@dataclass(frozen=True)
class PeriodicSpec:
    start: float
    period: float
    count: int
    jitter_sd: float = 0.0
    seed: int = 0


@dataclass
class SpikeProgram:
    """Per-terminal spike times: explicit lists or periodic generators.

    Jittered times are reproducible across implementations: terminal i (in
    sorted terminal-name order) uses numpy's default_rng seeded with
    [seed, i]; times are start + k*period + sd*standard_normal(count),
    sorted, with exact ties nudged apart by 1e-6 ns.
    """

    terminals: dict

    def spike_times(self, terminal: str, index: int) -> np.ndarray:
        spec = self.terminals[terminal]
        if isinstance(spec, PeriodicSpec):
            times = spec.start + spec.period * np.arange(spec.count, dtype=float)
            if spec.jitter_sd > 0:
                rng = np.random.default_rng([spec.seed, index])
                times = times + spec.jitter_sd * rng.standard_normal(spec.count)
            times = np.sort(times)
        else:
            times = np.asarray(sorted(float(t) for t in spec), dtype=float)
        for k in range(1, times.size):
            if times[k] <= times[k - 1]:
                times[k] = times[k - 1] + 1e-6
        return times

    def all_times(self) -> dict:
        return {term: self.spike_times(term, i)
                for i, term in enumerate(sorted(self.terminals))}


def _dendrite_like(decl: NodeDecl) -> bool:
    return decl.type in (DENDRITE, SOMA)


def _loop_of(decl: NodeDecl) -> StorageLoopSpec:
    if decl.type in (PHOTONIC, ELECTRONIC):
        return StorageLoopSpec.from_tau(decl.p("l_si_nH", 77.5),
                                        decl.p("tau_si_ns", math.inf))
    return StorageLoopSpec.from_tau(decl.p("l_di_nH", 77.5),
                                    decl.p("tau_di_ns", math.inf))


def _dr_loop_l(decl: NodeDecl) -> float:
    mode = decl.p("mode", ANALOG)
    return decl.p("dr_loop_l_nH", MODE_DR_LOOP_L[mode])


def _coupling_k(edge: EdgeDecl, dst: NodeDecl) -> float:
    return edge.m_ph * 1e-3 / _dr_loop_l(dst)


def _sat_current(decl: NodeDecl) -> float:
    return decl.p("i_sat_uA", I_C)


def validate(tree: TreeSpec) -> TreeSpec:
    """Check every structural invariant; raises TreeValidationError listing
    all problems with their node paths."""
    problems = []
    names = set(tree.nodes)
    for e in tree.edges:
        for end in (e.src, e.dst):
            if end not in names:
                problems.append((f"{e.src}->{e.dst}", f"unknown node {end!r}"))
    if problems:
        raise TreeValidationError(problems)

    # cycle check (iterative DFS, deterministic order)
    color = {n: 0 for n in tree.nodes}
    order = []

    def visit(start):
        stack = [(start, iter(sorted(x.dst for x in tree.out_edges(start))))]
        color[start] = 1
        while stack:
            node, it = stack[-1]
            for nxt in it:
                if color[nxt] == 1:
                    problems.append((nxt, "cycle detected through this node"))
                    return
                if color[nxt] == 0:
                    color[nxt] = 1
                    stack.append((nxt, iter(sorted(x.dst for x in tree.out_edges(nxt)))))
                    break
            else:
                color[node] = 2
                order.append(node)
                stack.pop()

    for n in sorted(tree.nodes):
        if color[n] == 0:
            visit(n)
            if any("cycle" in msg for _, msg in problems):
                break

    somas = [n for n, d in tree.nodes.items() if d.type == SOMA]
    if len(somas) > 1:
        problems.append((",".join(sorted(somas)), "more than one soma"))
    for s in somas:
        if tree.out_edges(s):
            problems.append((s, "soma must be a sink"))

    for name in sorted(tree.nodes):
        decl = tree.nodes[name]
        ins = tree.in_edges(name)
        outs = tree.out_edges(name)
        if decl.type == SPLITTER:
            if len([e for e in outs if e.kind == "route"]) != 2:
                problems.append((name, "splitter out-degree must be exactly 2"))
            if len([e for e in ins if e.kind == "route"]) != 1:
                problems.append((name, "splitter needs exactly 1 routed input"))
        if _dendrite_like(decl):
            exc = [e for e in ins if e.kind == "flux" and e.sign > 0 and not e.rq]
            if not exc:
                problems.append((name, "dendrite needs >= 1 excitatory flux input"))
            i_de = decl.p("i_de_uA", 36.0)
            if not i_de < I_C:
                problems.append((name, f"bias i_de={i_de} not below I_c={I_C}"))
            # rapid-query precondition: with every excitatory source saturated
            # the drive must stay below the bare critical current
            if any(e.rq for e in ins):
                drive = i_de
                for e in ins:
                    if e.kind == "flux" and e.sign > 0 and not e.rq:
                        drive += _coupling_k(e, decl) * _sat_current(tree.nodes[e.src])
                if drive >= I_C:
                    problems.append(
                        (name, f"rapid-query dendrite saturable drive {drive:.2f} uA "
                               f"reaches I_c={I_C}; lower couplings or i_de"))
        if decl.type == PHOTONIC:
            i_sy = decl.p("i_sy_uA", 38.0)
            if not i_sy < I_C:
                problems.append((name, f"bias i_sy={i_sy} not below I_c={I_C}"))
        if decl.type in (PHOTONIC, ELECTRONIC, DENDRITE):
            for e in outs:
                if e.kind == "flux":
                    dst = tree.nodes[e.dst]
                    if not _dendrite_like(dst):
                        problems.append(
                            (f"{e.src}->{e.dst}", "flux edges must end on a dendrite/soma"))
                        continue
                    l_src = _loop_of(decl).inductance_l * 1e3
                    l_dst = _dr_loop_l(dst) * 1e3
                    if e.m_ph ** 2 > l_src * l_dst:
                        problems.append(
                            (f"{e.src}->{e.dst}",
                             f"mutual {e.m_ph} pH exceeds sqrt(L1*L2)="
                             f"{math.sqrt(l_src * l_dst):.1f} pH"))

    # electronic fan-out per photonic synapse (through splitter trees)
    for name in sorted(tree.nodes):
        if tree.nodes[name].type != PHOTONIC:
            continue
        seen, frontier, count = set(), [name], 0
        while frontier:
            cur = frontier.pop()
            for e in tree.out_edges(cur):
                if e.kind != "route" or e.dst in seen:
                    continue
                seen.add(e.dst)
                if tree.nodes[e.dst].type == ELECTRONIC:
                    count += 1
                elif tree.nodes[e.dst].type == SPLITTER:
                    frontier.append(e.dst)
        if count > MAX_ELECTRONIC_FANOUT:
            warnings.warn(f"photonic synapse {name!r} fans out to {count} electronic "
                          f"synapses (> {MAX_ELECTRONIC_FANOUT})", RuntimeWarning,
                          stacklevel=2)

    if problems:
        raise TreeValidationError(problems)
    return tree


def _topo_order(tree: TreeSpec) -> list:
    indeg = {n: 0 for n in tree.nodes}
    for e in tree.edges:
        indeg[e.dst] += 1
    ready = sorted(n for n, d in indeg.items() if d == 0)
    out = []
    while ready:
        n = ready.pop(0)
        out.append(n)
        for e in sorted(tree.out_edges(n), key=lambda e: e.dst):
            indeg[e.dst] -= 1
            if indeg[e.dst] == 0:
                ready.append(e.dst)
        ready.sort()
    return out


# ---------------------------------------------------------------------------
# behavioral backend

def _build_behavioral_nodes(tree: TreeSpec):
    synapses, dendrites, rqs = {}, {}, {}
    for name in sorted(tree.nodes):
        decl = tree.nodes[name]
        if decl.type in (PHOTONIC, ELECTRONIC):
            synapses[name] = bh.SynapseNode(
                name=name, loop=_loop_of(decl), i_sy=decl.p("i_sy_uA", 38.0),
                i_sat=_sat_current(decl),
                saturating=bool(decl.p("saturating", False)),
                weight_fn=tuple(decl.p("weight_fn", bh.calibration.WEIGHT_QUADRATIC)))
        elif _dendrite_like(decl):
            couplings = []
            for e in tree.in_edges(name):
                if e.kind != "flux" or e.rq:
                    continue
                couplings.append((e.src, _coupling_k(e, decl), e.sign))
            dendrites[name] = bh.DendriteNode(
                name=name, mode=decl.p("mode", ANALOG),
                i_de=decl.p("i_de_uA", 36.0), couplings=tuple(couplings),
                di_loop=_loop_of(decl), di_sat=decl.p("di_sat_uA", I_C),
                threshold=decl.p("threshold_uA"),
                reset_level=decl.p("reset_level_uA"),
                analog_gain=decl.p("analog_gain", bh.calibration.ANALOG_GAIN))
            for e in tree.in_edges(name):
                if e.kind == "flux" and e.rq:
                    src = tree.nodes[e.src]
                    rqs[e.src] = bh.RQNode(
                        name=e.src, tau_rq=src.p("tau_si_ns", 10.0),
                        i_rq_sat=min(src.p("i_sat_uA", 34.0), I_C),
                        k=_coupling_k(e, decl),
                        rq_gain=src.p("rq_gain", bh.calibration.RQ_GAIN))
    return synapses, dendrites, rqs


def _route_targets(tree: TreeSpec, start: str):
    """Electronic synapses reached from `start` through routed edges."""
    out = []
    frontier = [start]
    while frontier:
        cur = frontier.pop(0)
        for e in sorted(tree.out_edges(cur), key=lambda e: e.dst):
            if e.kind != "route":
                continue
            if tree.nodes[e.dst].type == ELECTRONIC:
                out.append(e.dst)
            elif tree.nodes[e.dst].type == SPLITTER:
                frontier.append(e.dst)
    return out


def _run_behavioral(tree: TreeSpec, program: SpikeProgram, t_span, cadence) -> TraceSet:
    t0, t1 = float(t_span[0]), float(t_span[1])
    synapses, dendrites, rqs = _build_behavioral_nodes(tree)
    # align node clocks with the span start
    synapses = {k: replace(v, last_update=t0) for k, v in synapses.items()}
    dendrites = {k: replace(v, last_update=t0) for k, v in dendrites.items()}
    rqs = {k: replace(v, last_update=t0) for k, v in rqs.items()}

    rq_owner = {}
    for name in dendrites:
        for e in tree.in_edges(name):
            if e.kind == "flux" and e.rq:
                rq_owner[e.src] = name

    dend_order = [n for n in _topo_order(tree) if n in dendrites]

    # event table: photon arrivals per terminal plus routed copies
    events = []
    for term, times in program.all_times().items():
        if term not in tree.nodes:
            raise ConfigError(f"spike program terminal {term!r} is not a tree node")
        targets = _route_targets(tree, term)
        for t in times:
            if not (t0 <= t <= t1):
                raise ConfigError(f"spike at {t} ns outside span ({t0}, {t1})")
            events.append((float(t), term))
            for tgt in targets:
                events.append((float(t), tgt))

    ticks = np.arange(t0, t1 + 0.5 * cadence, cadence)
    times = sorted(set([float(x) for x in ticks] + [e[0] for e in events]))
    by_time = {}
    for t, tgt in sorted(events):
        by_time.setdefault(t, []).append(tgt)

    sig = {f"{n}.i_si_uA": [] for n in synapses}
    sig.update({f"{n}.i_di_uA": [] for n in dendrites})
    sig.update({f"{n}.drive_uA": [] for n in dendrites})
    sample_t = []
    emissions = {n: [] for n in dendrites}
    fired = []

    tick_set = set(float(x) for x in ticks)
    soma_name = next((n for n, d in tree.nodes.items() if d.type == SOMA), None)
    fire_level = (tree.nodes[soma_name].p("fire_threshold_uA", 1.0)
                  if soma_name else None)
    prev_soma_di = 0.0

    def current_sources(t):
        """Snapshot of source currents decayed to t (reads are side-effect free)."""
        snap = {}
        for n, node in synapses.items():
            snap[n] = replace(node, i_si=bh._decayed(
                node.i_si, t - node.last_update, node.loop.tau))
        for n, node in dendrites.items():
            snap[n] = _DIView(bh._decayed(node.i_di, t - node.last_update,
                                          node.di_loop.tau))
        return snap

    for t in times:
        # 1) synapse impulses at this timestamp
        for tgt in by_time.get(t, ()):
            if tgt in rqs:
                continue  # queries handled below, after excitatory deposits
            if tgt in synapses:
                synapses[tgt] = bh.synapse_fire(synapses[tgt], t)
        # 2) rapid queries
        for tgt in by_time.get(t, ()):
            if tgt in rqs:
                owner = rq_owner[tgt]
                snap = current_sources(t)
                drive = bh.dendrite_drive(dendrites[owner], snap, t)
                d, q, emitted = bh.rapid_query(dendrites[owner], rqs[tgt], drive, t)
                dendrites[owner] = d
                rqs[tgt] = q
                for i in range(emitted):
                    emissions[owner].append(t + i * 1e-9)
        # 3) dendrite updates in dependency order
        snap = current_sources(t)
        for n in dend_order:
            drive = bh.dendrite_drive(dendrites[n], snap, t)
            dendrites[n], emitted = bh.dendrite_update(dendrites[n], drive, t)
            for i in range(emitted):
                emissions[n].append(t + i * 1e-9)
            snap[n] = _DIView(dendrites[n].i_di)
        # 4) soma firing detection
        if soma_name:
            di = dendrites[soma_name].i_di
            if prev_soma_di < fire_level <= di:
                fired.append(t)
            prev_soma_di = di
        # 5) sampling
        if t in tick_set:
            sample_t.append(t)
            snap = current_sources(t)
            for n in synapses:
                sig[f"{n}.i_si_uA"].append(snap[n].i_si)
            for n in dendrites:
                sig[f"{n}.i_di_uA"].append(snap[n].i_si)  # _DIView aliases i_si
                sig[f"{n}.drive_uA"].append(bh.dendrite_drive(dendrites[n], snap, t))

    fluxon_events = {f"{n}.DI": np.asarray(v) for n, v in emissions.items() if v}
    if fired:
        fluxon_events["neuron_fired"] = np.asarray(fired)
    return TraceSet(t=np.asarray(sample_t),
                    signals={k: np.asarray(v) for k, v in sig.items()},
                    fluxon_events=fluxon_events)


class _DIView:
    """Adapter letting a dendrite act as a coupling source (its DI current
    plays the role of i_si for downstream receiving loops)."""

    __slots__ = ("i_si",)

    def __init__(self, i):
        self.i_si = i


# ---------------------------------------------------------------------------
# ode backend

def _drive_fn_from_grid(grid_t0, dt, values):
    vals = values.tolist()
    n = len(vals)

    def f(x: float) -> float:
        u = (x - grid_t0) / dt
        if u <= 0.0:
            return vals[0]
        k = int(u)
        if k >= n - 1:
            return vals[-1]
        w = u - k
        return vals[k] * (1.0 - w) + vals[k + 1] * w
    return f


def _run_ode(tree: TreeSpec, program: SpikeProgram, t_span, cadence,
             tol) -> TraceSet:
    t0, t1 = float(t_span[0]), float(t_span[1])
    spikes = program.all_times()
    order = _topo_order(tree)
    grid = np.arange(t0, t1 + 0.5 * CO_SIM_DT, CO_SIM_DT)
    loop_current = {}    # node -> np.ndarray on grid (storage-loop current)
    out_events = {}      # node -> fluxon emission times of its output junction
    parts = []

    for name in order:
        decl = tree.nodes[name]
        if decl.type == PHOTONIC:
            tpl = build_synapse(i_sy=decl.p("i_sy_uA", 38.0),
                                l_si=decl.p("l_si_nH", 77.5),
                                tau_si=decl.p("tau_si_ns", math.inf))
            times = spikes.get(name, np.empty(0))
            stim = rcsj.PhotonTimes(times) if times.size else None
            trace = rcsj.integrate(tpl, stim, (t0, t1), tol=tol, cadence=CO_SIM_DT)
            loop_current[name] = trace.signal("i_si_uA")
            out_events[name] = trace.fluxon_events[tpl.output_junction]
        elif decl.type == SPLITTER:
            src = tree.in_edges(name)[0].src
            inp = out_events.get(src, np.empty(0))
            tpl = build_splitter()
            if inp.size:
                out_a, out_b, _ = rcsj.simulate_splitter(tpl, inp, tol=tol)
            else:
                out_a = out_b = np.empty(0)
            dsts = sorted(e.dst for e in tree.out_edges(name) if e.kind == "route")
            out_events[name] = out_a  # default: first output
            out_events[(name, dsts[0])] = out_a
            if len(dsts) > 1:
                out_events[(name, dsts[1])] = out_b
        elif decl.type == ELECTRONIC:
            e_in = tree.in_edges(name)[0]
            key = (e_in.src, name)
            inp = out_events.get(key, out_events.get(e_in.src, np.empty(0)))
            inp = inp[(inp >= t0) & (inp <= t1 - 0.5)]
            tpl = build_electronic_synapse(l_si=decl.p("l_si_nH", 77.5),
                                           tau_si=decl.p("tau_si_ns", math.inf))
            stim = rcsj.FluxonTrain(inp) if inp.size else None
            trace = rcsj.integrate(tpl, stim, (t0, t1), tol=tol, cadence=CO_SIM_DT)
            loop_current[name] = trace.signal("i_si_uA")
            out_events[name] = trace.fluxon_events[tpl.output_junction]
        elif _dendrite_like(decl):
            drive = np.zeros_like(grid)
            for e in tree.in_edges(name):
                if e.kind != "flux":
                    continue
                drive = drive + e.sign * _coupling_k(e, decl) * loop_current[e.src]
            tpl = build_dendrite(mode=decl.p("mode", ANALOG),
                                 i_de=decl.p("i_de_uA", 36.0),
                                 couplings=[(e.src, e.m_ph, e.sign)
                                            for e in tree.in_edges(name)
                                            if e.kind == "flux"],
                                 l_di=decl.p("l_di_nH", 77.5),
                                 tau_di=decl.p("tau_di_ns", math.inf),
                                 dr_loop_l=decl.p("dr_loop_l_nH"))
            fn = _drive_fn_from_grid(t0, CO_SIM_DT, drive)
            trace = rcsj.integrate(tpl, None, (t0, t1), tol=tol,
                                   cadence=CO_SIM_DT, ext_drive=fn)
            loop_current[name] = trace.signal("i_di_uA")
            out_events[name] = trace.fluxon_events[tpl.output_junction]
            if decl.type == SOMA:
                level = decl.p("fire_threshold_uA", 1.0)
                di = trace.signal("i_di_uA")
                up = np.flatnonzero((di[1:] >= level) & (di[:-1] < level))
                if up.size:
                    parts.append(TraceSet(t=grid, fluxon_events={
                        "neuron_fired": grid[up + 1]}))

    # resample to the requested cadence and prefix with node names
    keep = np.arange(t0, t1 + 0.5 * cadence, cadence)
    idx = np.clip(np.round((keep - t0) / CO_SIM_DT).astype(int), 0, grid.size - 1)
    sig = {}
    fe = {}
    for name, cur in loop_current.items():
        label = "i_di_uA" if _dendrite_like(tree.nodes[name]) else "i_si_uA"
        sig[f"{name}.{label}"] = cur[idx]
    for name, ev in out_events.items():
        if isinstance(name, tuple):
            continue
        if isinstance(ev, np.ndarray) and ev.size:
            fe[f"{name}.out"] = ev
    ts = TraceSet(t=keep, signals=sig, fluxon_events=fe)
    for p in parts:
        ts.fluxon_events.update(p.fluxon_events)
    return ts


def run(tree: TreeSpec, program: SpikeProgram, t_span, cadence: float = 0.1,
        tol: float = rcsj.DEFAULT_TOL) -> TraceSet:
    """Validate and simulate the tree over t_span on its chosen backend."""
    validate(tree)
    if tree.backend == "behavioral":
        return _run_behavioral(tree, program, t_span, cadence)
    if tree.backend == "ode":
        return _run_ode(tree, program, t_span, cadence, tol)
    raise ConfigError(f"unknown backend {tree.backend!r}")


def set_path(tree: TreeSpec, path: str, value):
    """Assign one numeric field addressed as nodes.NAME.PARAM or
    edges.INDEX.FIELD, returning a modified copy."""
    parts = path.split(".")
    new_nodes = dict(tree.nodes)
    new_edges = list(tree.edges)
    if parts[0] == "nodes" and len(parts) == 3:
        name, param = parts[1], parts[2]
        if name not in new_nodes:
            raise ConfigError(f"sweep path {path!r}: no node {name!r}")
        decl = new_nodes[name]
        params = dict(decl.params)
        params[param] = value
        new_nodes[name] = replace(decl, params=params)
    elif parts[0] == "edges" and len(parts) == 3:
        try:
            idx = int(parts[1])
            new_edges[idx] = replace(new_edges[idx], **{parts[2]: value})
        except (ValueError, IndexError, TypeError) as exc:
            raise ConfigError(f"bad sweep path {path!r}: {exc}") from None
    else:
        raise ConfigError(
            f"sweep path {path!r} must look like nodes.NAME.PARAM or edges.I.FIELD")
    return TreeSpec(nodes=new_nodes, edges=new_edges, backend=tree.backend)


def sweep(tree: TreeSpec, path: str, values, program: SpikeProgram, t_span,
          cadence: float = 0.1, tol: float = rcsj.DEFAULT_TOL,
          processes: int = 1) -> list:
    """Independent runs with one numeric field swept; results in input order."""
    variants = [set_path(tree, path, v) for v in values]
    if processes > 1 and len(variants) > 1:
        import concurrent.futures as cf
        with cf.ProcessPoolExecutor(max_workers=processes) as pool:
            futs = [pool.submit(run, v, program, t_span, cadence, tol)
                    for v in variants]
            return [f.result() for f in futs]
    return [run(v, program, t_span, cadence, tol) for v in variants]
