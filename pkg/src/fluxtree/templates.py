"""Parameterized descriptions of the three elemental circuits.

Everything the circuit backend simulates is one of:

  synapse_transducer   SPD + synaptic firing junction + JTL + SI loop
  electronic_synapse   fluxon-driven JTL + SI loop (a synapse copy made by a
                       splitter, no detector of its own)
  dendrite             receiving loop (firing + reset junction) + JTL + DI
                       loop, flux-coupled to upstream storage loops
  splitter             one input junction fanning out to two output junctions

Templates are immutable values; geometry defaults are exposed as fields so
scenarios can override them.

The transmission line between a firing junction and its storage loop is
graded, which is what makes the transducer work at all:

  * the first (isolation) inductor is large enough that a slowly rising
    input cannot leak into the line statically -- moving 1 uA across it
    costs ~1 rad of phase, so the firing junction escapes its well and
    emits fluxons instead of re-biasing its neighbors;
  * successive stage inductors shrink, so each relayed fluxon delivers a
    Phi0/L current kick that overwhelms the next junction's headroom
    (power gain), letting the line push flux into the storage loop against
    the loop's own back-bias;
  * the last stage is sized so the push stalls right around a stored
    current of I_c, the loop's nominal fluxon capacity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from . import calibration
from .errors import ParameterError, StructuralError
from .quantities import (
    BiasSet,
    CouplingSpec,
    JunctionSpec,
    SPDSpec,
    StorageLoopSpec,
    default_junction,
)

SYNAPSE = "synapse_transducer"
ELECTRONIC = "electronic_synapse"
DENDRITE = "dendrite"
SPLITTER = "splitter"

BINARY = "binary"
ANALOG = "analog"

# Reset-junction bias fraction of I_c per dendrite mode, paired with a
# mode-dependent receiving-loop inductance (MODE_DR_LOOP_L). Analog mode
# uses a small loop: the stored fluxon is Phi0/L_dr ~ 21 µA, so the reset
# junction fires after every firing-junction slip regardless of drive
# (continuous streaming). Binary mode uses a larger loop: the ~10 µA stored
# fluxon cannot switch the reset junction until the afferent drive decays,
# which is what latches the loop after exactly one emitted fluxon.
MODE_RESET_FRACTION = {BINARY: 0.82, ANALOG: 0.90}

# Default graded line geometries (nH). See module docstring.
SYNAPSE_ISO_L = 0.300
SYNAPSE_STAGE_L = (0.060, 0.045)
DENDRITE_ISO_L = 0.300
DENDRITE_STAGE_L = (0.045,)
MODE_DR_LOOP_L = {BINARY: 0.200, ANALOG: 0.100}
JTL_BIAS_FRACTION = 0.95


def template_junction() -> JunctionSpec:
    """The junction used by all default templates (calibrated shunt)."""
    return default_junction(r_n=calibration.TEMPLATE_R_N)


@dataclass(frozen=True)
class TaggedJunction:
    role: str
    spec: JunctionSpec
    bias: float  # uA


@dataclass(frozen=True)
class TaggedLoop:
    role: str  # "si" or "di"
    spec: StorageLoopSpec


@dataclass(frozen=True)
class CircuitTemplate:
    kind: str
    junctions: tuple[TaggedJunction, ...]
    loops: tuple[TaggedLoop, ...]
    biases: BiasSet
    spd: SPDSpec | None = None
    couplings: tuple[CouplingSpec, ...] = ()
    mode: str | None = None                   # dendrite only
    iso_l: float = SYNAPSE_ISO_L              # nH, firing junction -> line
    jtl_stage_l: tuple = SYNAPSE_STAGE_L      # nH per successive stage link
    input_l: float = 0.100                    # nH, phase-source coupling
    dr_loop_l: float = 0.200                  # nH, dendritic receiving loop
    branch_l: float = 0.020                   # nH, splitter output branches

    def __post_init__(self):
        roles = [j.role for j in self.junctions]
        if len(set(roles)) != len(roles):
            raise StructuralError(f"duplicate junction roles in template: {roles}")
        for j in self.junctions:
            if j.bias >= j.spec.i_c:
                raise ParameterError(
                    f"bias {j.bias} uA on {j.role} is not below I_c = {j.spec.i_c} uA")
        if self.kind == SYNAPSE and self.spd is None:
            raise StructuralError("synapse_transducer template requires an SPDSpec")
        if self.kind == DENDRITE:
            if self.mode not in (BINARY, ANALOG):
                raise StructuralError(
                    f"dendrite template needs mode binary|analog, got {self.mode}")
            if not any(c.sign > 0 for c in self.couplings):
                raise StructuralError("dendrite template requires >= 1 excitatory coupling")
        if self.kind == SPLITTER and len(self.junctions) != 3:
            raise StructuralError("splitter template has exactly 1 input and 2 output junctions")
        if self.kind in (SYNAPSE, ELECTRONIC, DENDRITE):
            n_chain = len(self.jtl_stage_l) + 1
            n_head = {SYNAPSE: 1, ELECTRONIC: 0, DENDRITE: 2}[self.kind]
            if len(self.junctions) != n_head + n_chain:
                raise StructuralError(
                    f"{self.kind} template has {len(self.junctions)} junctions but the "
                    f"line geometry implies {n_head + n_chain}")

    def junction(self, role: str) -> TaggedJunction:
        for j in self.junctions:
            if j.role == role:
                return j
        raise StructuralError(f"no junction with role {role!r} in {self.kind} template")

    def loop(self, role: str) -> TaggedLoop:
        for lp in self.loops:
            if lp.role == role:
                return lp
        raise StructuralError(f"no loop with role {role!r} in {self.kind} template")

    @property
    def junction_roles(self) -> tuple:
        return tuple(j.role for j in self.junctions)

    @property
    def branch_names(self) -> tuple:
        return {SYNAPSE: ("i_spd", "i_si"), ELECTRONIC: ("i_si",),
                DENDRITE: ("i_di",), SPLITTER: ()}[self.kind]

    @property
    def state_size(self) -> int:
        return 2 * len(self.junctions) + len(self.branch_names)

    @property
    def output_junction(self) -> str:
        """The junction whose 2pi slips feed the storage loop."""
        if self.kind == SPLITTER:
            raise StructuralError("splitter has two outputs; use J_out_a/J_out_b")
        return self.junctions[-1].role

    def with_bias(self, **kw) -> "CircuitTemplate":
        """Rebuild with updated named biases (i_sy, i_de, i_jtl, i_reset_bias)."""
        biases = self.biases.replace(**kw)
        bias_of = {"J_sf": biases.i_sy, "J_df": biases.i_de, "J_dr": biases.i_reset_bias}
        juncs = tuple(
            replace(j, bias=bias_of.get(j.role, biases.i_jtl)) for j in self.junctions
        )
        return replace(self, biases=biases, junctions=juncs)


@dataclass(frozen=True)
class CircuitState:
    """Unpacked view of one backend state vector (for inspection and tests)."""

    kind: str
    t: float
    phases: dict
    phase_rates: dict
    branch_currents: dict
    hotspot_active: bool = False
    hotspot_expiry: float = -math.inf

    def __post_init__(self):
        vals = list(self.phases.values()) + list(self.phase_rates.values()) \
            + list(self.branch_currents.values())
        if not all(math.isfinite(v) for v in vals):
            raise StructuralError("circuit state contains non-finite entries")
        if self.hotspot_active and not self.t < self.hotspot_expiry:
            raise StructuralError("hotspot flagged active past its expiry time")


def unpack_state(template: CircuitTemplate, t: float, y,
                 hotspot_active: bool = False,
                 hotspot_expiry: float = -math.inf) -> CircuitState:
    if len(y) != template.state_size:
        raise StructuralError(
            f"state vector length {len(y)} does not match {template.kind} layout "
            f"({template.state_size} entries)")
    roles = template.junction_roles
    phases = {r: float(y[2 * i]) for i, r in enumerate(roles)}
    rates = {r: float(y[2 * i + 1]) for i, r in enumerate(roles)}
    off = 2 * len(roles)
    currents = {b: float(y[off + i]) for i, b in enumerate(template.branch_names)}
    return CircuitState(kind=template.kind, t=t, phases=phases, phase_rates=rates,
                        branch_currents=currents, hotspot_active=hotspot_active,
                        hotspot_expiry=hotspot_expiry)


def _jtl_junctions(spec: JunctionSpec, bias: float, count: int) -> list:
    return [TaggedJunction(f"J_jtl{i + 1}", spec, bias) for i in range(count)]


def build_synapse(i_sy: float = 38.0, l_si: float = 77.5, tau_si: float = math.inf,
                  junction: JunctionSpec | None = None, spd: SPDSpec | None = None,
                  i_jtl_frac: float = JTL_BIAS_FRACTION, iso_l: float = SYNAPSE_ISO_L,
                  jtl_stage_l: tuple = SYNAPSE_STAGE_L) -> CircuitTemplate:
    """Photon-input synaptic transducer (SPD -> J_sf -> JTL -> SI loop)."""
    j = junction or template_junction()
    spd = spd or SPDSpec()
    biases = BiasSet(i_sy=i_sy, i_jtl=i_jtl_frac * j.i_c)
    si = StorageLoopSpec.from_tau(l_si, tau_si)
    return CircuitTemplate(
        kind=SYNAPSE,
        junctions=(TaggedJunction("J_sf", j, biases.i_sy),
                   *_jtl_junctions(j, biases.i_jtl, len(jtl_stage_l) + 1)),
        loops=(TaggedLoop("si", si),),
        biases=biases,
        spd=spd,
        iso_l=iso_l,
        jtl_stage_l=tuple(jtl_stage_l),
    )


def build_electronic_synapse(l_si: float = 77.5, tau_si: float = math.inf,
                             junction: JunctionSpec | None = None,
                             i_jtl_frac: float = JTL_BIAS_FRACTION,
                             jtl_stage_l: tuple = DENDRITE_STAGE_L,
                             input_l: float = 0.100) -> CircuitTemplate:
    """Splitter-fed synapse copy: fluxon train in, SI loop current out."""
    j = junction or template_junction()
    biases = BiasSet(i_jtl=i_jtl_frac * j.i_c)
    si = StorageLoopSpec.from_tau(l_si, tau_si)
    return CircuitTemplate(
        kind=ELECTRONIC,
        junctions=tuple(_jtl_junctions(j, biases.i_jtl, len(jtl_stage_l) + 1)),
        loops=(TaggedLoop("si", si),),
        biases=biases,
        jtl_stage_l=tuple(jtl_stage_l),
        input_l=input_l,
    )


def build_dendrite(mode: str, i_de: float, couplings, l_di: float = 77.5,
                   tau_di: float = math.inf, junction: JunctionSpec | None = None,
                   i_reset_frac: float | None = None,
                   i_jtl_frac: float = JTL_BIAS_FRACTION,
                   dr_loop_l: float | None = None, iso_l: float = DENDRITE_ISO_L,
                   jtl_stage_l: tuple = DENDRITE_STAGE_L) -> CircuitTemplate:
    """Dendritic processor: flux-summing DR loop -> JTL -> DI loop.

    couplings: iterable of CouplingSpec or (source_name, mutual_pH, sign).
    The reset junction bias defaults to the mode's fraction of I_c.
    """
    j = junction or template_junction()
    if i_reset_frac is None:
        i_reset_frac = MODE_RESET_FRACTION[mode]
    if dr_loop_l is None:
        dr_loop_l = MODE_DR_LOOP_L[mode]
    biases = BiasSet(i_de=i_de, i_jtl=i_jtl_frac * j.i_c,
                     i_reset_bias=i_reset_frac * j.i_c)
    di = StorageLoopSpec.from_tau(l_di, tau_di)
    cps = tuple(
        c if isinstance(c, CouplingSpec)
        else CouplingSpec(mutual_m=c[1], sign=c[2], source_loop=c[0], target_loop="dr")
        for c in couplings
    )
    return CircuitTemplate(
        kind=DENDRITE,
        junctions=(TaggedJunction("J_df", j, biases.i_de),
                   TaggedJunction("J_dr", j, biases.i_reset_bias),
                   *_jtl_junctions(j, biases.i_jtl, len(jtl_stage_l) + 1)),
        loops=(TaggedLoop("di", di),),
        biases=biases,
        couplings=cps,
        mode=mode,
        dr_loop_l=dr_loop_l,
        iso_l=iso_l,
        jtl_stage_l=tuple(jtl_stage_l),
    )


def build_splitter(junction: JunctionSpec | None = None, bias_frac_in: float = 0.7,
                   bias_frac_out: float = 0.7, input_l: float = 0.100,
                   branch_l: float = 0.020) -> CircuitTemplate:
    """One-to-two fluxon pulse splitter with level restoration."""
    j = junction or template_junction()
    biases = BiasSet(i_jtl=bias_frac_in * j.i_c)
    return CircuitTemplate(
        kind=SPLITTER,
        junctions=(
            TaggedJunction("J_in", j, bias_frac_in * j.i_c),
            TaggedJunction("J_out_a", j, bias_frac_out * j.i_c),
            TaggedJunction("J_out_b", j, bias_frac_out * j.i_c),
        ),
        loops=(),
        biases=biases,
        input_l=input_l,
        branch_l=branch_l,
    )
