"""Physical constants, device parameter records, and derived circuit quantities.

Everything in this package works in one internal unit system chosen so that
the state variables of the circuit equations are O(1)-O(1e3):

    current     µA
    inductance  nH
    time        ns
    resistance  Ω
    capacitance pF   (nH/Ω² = nF is the *natural* capacitance unit; the
                      stored pF values are converted where they enter dynamics)

Consequences that make the bookkeeping disappear:

    1 nH / 1 Ω            = 1 ns       (loop decay times, tau = L/r)
    1 µA · 1 Ω            = 1 µV       (junction/resistor voltages)
    Phi0 = h/2e           = 2.0678 µA·nH

so a loop current decays as I·exp(-t·r/L) and a single fluxon deposits
Phi0/L µA with no conversion factors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import ParameterError

# Magnetic flux quantum h/2e. 2.067833848e-15 Wb == 2.067833848 µA·nH.
PHI0 = 2.067833848
PHI0_WB = 2.067833848e-15
PLANCK_H = 6.62607015e-34   # J·s
LIGHT_SPEED = 2.99792458e8  # m/s

# Phi0/2pi shows up in every junction equation (voltage = (Phi0/2pi)·dphi/dt).
PHI0_OVER_2PI = PHI0 / (2.0 * math.pi)


@dataclass(frozen=True)
class PhysicalConstants:
    """Fundamental constants in internal units (phi0) and SI (the rest)."""

    phi0: float = PHI0            # µA·nH
    planck_h: float = PLANCK_H    # J·s
    light_speed: float = LIGHT_SPEED  # m/s


CONSTANTS = PhysicalConstants()


@dataclass(frozen=True)
class JunctionSpec:
    """A resistively-and-capacitively-shunted Josephson junction.

    c_j is normally derived from beta_c via `derive_capacitance`; the stored
    value must satisfy beta_c = 2pi·i_c·r_n²·c_j/Phi0.
    """

    i_c: float      # critical current, µA
    beta_c: float   # Stewart-McCumber damping parameter
    r_n: float      # shunt resistance, Ω
    c_j: float      # junction capacitance, pF

    def __post_init__(self):
        if self.i_c <= 0 or self.beta_c <= 0 or self.r_n <= 0:
            raise ParameterError(
                f"junction parameters must be positive: i_c={self.i_c}, "
                f"beta_c={self.beta_c}, r_n={self.r_n}"
            )
        if self.c_j <= 0:
            raise ParameterError(f"junction capacitance must be positive: c_j={self.c_j}")
        implied = 2.0 * math.pi * self.i_c * self.r_n ** 2 * (self.c_j * 1e-3) / PHI0
        if abs(implied - self.beta_c) > 1e-9 * self.beta_c:
            raise ParameterError(
                f"c_j={self.c_j} pF inconsistent with beta_c={self.beta_c} "
                f"(implies beta_c={implied})"
            )

    @property
    def char_voltage(self) -> float:
        """I_c·r_n in µV."""
        return self.i_c * self.r_n

    def with_r_n(self, r_n: float) -> "JunctionSpec":
        """Same i_c and beta_c with a different shunt; c_j is re-derived."""
        return derive_capacitance(i_c=self.i_c, beta_c=self.beta_c, r_n=r_n)


def derive_capacitance(i_c: float, beta_c: float, r_n: float) -> JunctionSpec:
    """Build a JunctionSpec with c_j fixed by the Stewart-McCumber relation.

    beta_c = 2pi·I_c·r_n²·C/Phi0, so C = beta_c·Phi0/(2pi·I_c·r_n²).
    In internal units Phi0/(µA·Ω²) comes out in nF; stored as pF.
    """
    if i_c <= 0 or beta_c <= 0 or r_n <= 0:
        raise ParameterError(
            f"derive_capacitance needs positive inputs, got i_c={i_c}, "
            f"beta_c={beta_c}, r_n={r_n}"
        )
    c_nf = beta_c * PHI0 / (2.0 * math.pi * i_c * r_n ** 2)
    return JunctionSpec(i_c=i_c, beta_c=beta_c, r_n=r_n, c_j=c_nf * 1e3)


def default_junction(i_c: float = 40.0, beta_c: float = 0.95, r_n: float | None = None) -> JunctionSpec:
    """The working-point junction: I_c = 40 µA, beta_c = 0.95.

    r_n is a free design parameter here; the default picks I_c·r_n = 100 µV,
    a typical characteristic voltage for externally shunted junctions.
    """
    if r_n is None:
        r_n = 100.0 / i_c
    return derive_capacitance(i_c=i_c, beta_c=beta_c, r_n=r_n)


@dataclass(frozen=True)
class StorageLoopSpec:
    """A superconducting current-storage loop with an optional resistive leak.

    leak_r = 0 means a purely superconducting loop: tau is infinite and a
    stored current persists indefinitely.
    """

    inductance_l: float  # nH
    leak_r: float = 0.0  # Ω

    def __post_init__(self):
        if self.inductance_l <= 0:
            raise ParameterError(f"loop inductance must be positive: {self.inductance_l}")
        if self.leak_r < 0:
            raise ParameterError(f"loop leak resistance must be >= 0: {self.leak_r}")

    @property
    def tau(self) -> float:
        """Decay time L/r in ns; inf for a lossless loop."""
        if self.leak_r == 0.0:
            return math.inf
        return self.inductance_l / self.leak_r

    def fluxon_capacity(self, junction: JunctionSpec) -> float:
        """L·I_c/Phi0 for the junction feeding this loop (beta_L/2pi)."""
        return self.inductance_l * junction.i_c / PHI0

    @staticmethod
    def from_tau(inductance_l: float, tau: float) -> "StorageLoopSpec":
        """Convenience constructor; tau = inf gives a lossless loop."""
        if tau <= 0:
            raise ParameterError(f"loop tau must be positive: {tau}")
        leak = 0.0 if math.isinf(tau) else inductance_l / tau
        return StorageLoopSpec(inductance_l=inductance_l, leak_r=leak)


def fluxon_current(loop: StorageLoopSpec) -> float:
    """Current step Phi0/L (µA) deposited in the loop by one fluxon."""
    return PHI0 / loop.inductance_l


def saturation_count(loop: StorageLoopSpec, junction: JunctionSpec) -> float:
    """How many fluxons the loop can hold before its stored current opposes
    the feeding junction's full critical current: L·I_c/Phi0 = beta_L/2pi.

    Real-valued; callers floor it. The realized count in a circuit also
    depends on the applied bias, so this is an upper estimate.
    """
    return loop.fluxon_capacity(junction)


@dataclass(frozen=True)
class SPDSpec:
    """Superconducting-nanowire single-photon detector and its readout branch.

    Photon absorption switches the nanowire to r_hotspot for t_hotspot, which
    dumps the detector's bias current through r_spd into the receiving
    junction; afterwards the bias recovers into the nanowire inductance with
    tau_spd = l_spd/r_spd.
    """

    l_spd: float = 250.0     # nH
    r_spd: float = 25.0      # Ω, diversion resistor
    r_hotspot: float = 5000.0  # Ω
    t_hotspot: float = 0.2   # ns
    i_bias: float = 10.0     # µA

    def __post_init__(self):
        if self.l_spd <= 0 or self.r_spd <= 0:
            raise ParameterError("SPD inductance and diversion resistance must be positive")
        if self.r_hotspot <= 10.0 * self.r_spd:
            raise ParameterError(
                f"hotspot resistance {self.r_hotspot} must dominate the diversion "
                f"path (> 10 x r_spd = {10 * self.r_spd})"
            )
        if self.t_hotspot <= 0 or self.i_bias <= 0:
            raise ParameterError("hotspot duration and SPD bias must be positive")

    @property
    def tau_spd(self) -> float:
        """Bias recovery time l_spd/r_spd in ns."""
        return self.l_spd / self.r_spd

    @staticmethod
    def from_recovery(tau_spd: float = 10.0, l_spd: float = 250.0, **kw) -> "SPDSpec":
        return SPDSpec(l_spd=l_spd, r_spd=l_spd / tau_spd, **kw)


@dataclass(frozen=True)
class CouplingSpec:
    """A mutual inductor tying a storage loop to a receiving loop.

    sign +1 couples excitatory (source current raises the receiver's firing
    drive), -1 inhibitory (reversed winding, opposes the firing drive).
    """

    mutual_m: float   # pH
    sign: int         # +1 or -1
    source_loop: str
    target_loop: str

    def __post_init__(self):
        if self.mutual_m <= 0:
            raise ParameterError(f"mutual inductance must be positive: {self.mutual_m}")
        if self.sign not in (+1, -1):
            raise ParameterError(f"coupling sign must be +1 or -1: {self.sign}")

    def check_realizable(self, l_source_nh: float, l_target_nh: float) -> None:
        """Coupling coefficient k = M/sqrt(L1·L2) cannot exceed 1."""
        limit = math.sqrt(l_source_nh * 1e3 * l_target_nh * 1e3)  # pH
        if self.mutual_m ** 2 > l_source_nh * 1e3 * l_target_nh * 1e3:
            raise ParameterError(
                f"mutual inductance {self.mutual_m} pH exceeds sqrt(L1·L2) = {limit:.3g} pH "
                f"({self.source_loop} -> {self.target_loop})"
            )


@dataclass(frozen=True)
class BiasSet:
    """Static bias currents applied to a circuit template (µA)."""

    i_sy: float = 38.0        # synaptic firing junction
    i_de: float = 36.0        # dendritic firing junction
    i_jtl: float = 28.0       # each transmission-line junction
    i_reset_bias: float = 24.0  # dendritic reset junction

    def check_below_critical(self, junction: JunctionSpec) -> None:
        for name, val in (("i_sy", self.i_sy), ("i_de", self.i_de),
                          ("i_jtl", self.i_jtl), ("i_reset_bias", self.i_reset_bias)):
            if val >= junction.i_c:
                raise ParameterError(
                    f"bias {name} = {val} µA not below critical current {junction.i_c} µA"
                )

    def replace(self, **kw) -> "BiasSet":
        return replace(self, **kw)
