"""fluxtree: superconducting optoelectronic synapse and dendrite simulation.

Two interchangeable backends over one set of circuit templates:

  * :mod:`fluxtree.rcsj` integrates the junction-level circuit equations;
  * :mod:`fluxtree.behavioral` runs a fast event-driven abstraction whose
    constants are calibrated against the circuit backend.

:mod:`fluxtree.tree` composes templates into dendritic arbors,
:mod:`fluxtree.analysis` holds the numerical post-processing (rate-to-current
averaging, sum-of-exponentials power-law fits, energy accounting), and
:mod:`fluxtree.cli` exposes the scenario runner.
"""

from .quantities import (
    CONSTANTS,
    PHI0,
    BiasSet,
    CouplingSpec,
    JunctionSpec,
    PhysicalConstants,
    SPDSpec,
    StorageLoopSpec,
    default_junction,
    derive_capacitance,
    fluxon_current,
    saturation_count,
)
from .templates import (
    CircuitState,
    CircuitTemplate,
    build_dendrite,
    build_electronic_synapse,
    build_splitter,
    build_synapse,
)
from .traces import TraceSet

__version__ = "0.1.0"

__all__ = [
    "CONSTANTS", "PHI0", "BiasSet", "CouplingSpec", "JunctionSpec",
    "PhysicalConstants", "SPDSpec", "StorageLoopSpec", "default_junction",
    "derive_capacitance", "fluxon_current", "saturation_count",
    "CircuitState", "CircuitTemplate", "build_dendrite",
    "build_electronic_synapse", "build_splitter", "build_synapse",
    "TraceSet", "__version__",
]
