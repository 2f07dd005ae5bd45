"""Time-series and fluxon-event containers shared by both backends."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import StructuralError


@dataclass
class TraceSet:
    """Sampled signals plus per-junction fluxon emission times.

    t is strictly increasing; every signal array has the same length as t.
    Signal names carry their unit as a suffix (e.g. ``i_si_uA``); tree runs
    prefix names with the owning node (``syn1.i_si_uA``).
    """

    t: np.ndarray
    signals: dict[str, np.ndarray] = field(default_factory=dict)
    fluxon_events: dict[str, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        self.t = np.asarray(self.t, dtype=float)
        self.signals = {k: np.asarray(v, dtype=float) for k, v in self.signals.items()}
        self.fluxon_events = {k: np.asarray(v, dtype=float)
                              for k, v in self.fluxon_events.items()}
        self.validate()

    def validate(self):
        if self.t.size > 1 and not np.all(np.diff(self.t) > 0):
            raise StructuralError("trace sample times must be strictly increasing")
        for name, vals in self.signals.items():
            if vals.shape != self.t.shape:
                raise StructuralError(
                    f"signal {name!r} length {vals.size} != time axis length {self.t.size}")
        for name, times in self.fluxon_events.items():
            if times.size > 1 and not np.all(np.diff(times) > 0):
                raise StructuralError(f"fluxon times for {name!r} must be strictly increasing")

    def signal(self, name: str) -> np.ndarray:
        try:
            return self.signals[name]
        except KeyError:
            avail = ", ".join(sorted(self.signals)) or "<none>"
            raise StructuralError(f"no signal {name!r}; available: {avail}") from None

    def fluxon_count(self, junction: str) -> int:
        return int(self.fluxon_events.get(junction, np.empty(0)).size)

    def with_prefix(self, prefix: str) -> "TraceSet":
        return TraceSet(
            t=self.t,
            signals={f"{prefix}.{k}": v for k, v in self.signals.items()},
            fluxon_events={f"{prefix}.{k}": v for k, v in self.fluxon_events.items()},
        )

    @staticmethod
    def merge(parts: list["TraceSet"]) -> "TraceSet":
        """Combine trace sets that share one time axis."""
        if not parts:
            return TraceSet(t=np.empty(0))
        base = parts[0]
        out = TraceSet(t=base.t)
        for p in parts:
            if p.t.shape != base.t.shape or not np.array_equal(p.t, base.t):
                raise StructuralError("cannot merge trace sets with different time axes")
            out.signals.update(p.signals)
            out.fluxon_events.update(p.fluxon_events)
        return out
