"""Adaptive embedded Runge-Kutta 4(5) integration (Dormand-Prince pair).

Small hand-rolled stepper instead of a general-purpose solver: the circuit
systems here have 5-10 state variables, need exact stepping onto scheduled
discontinuities (hotspot switching, stimulus edges), per-window step caps,
and an accepted-step observer for streaming phase-slip detection. The loop
is deterministic: identical inputs give bit-identical trajectories on one
platform.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import IntegrationError

# Dormand-Prince 5(4) tableau. Rows of A padded to 7 for uniform dot products.
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A = np.array([
    [0, 0, 0, 0, 0, 0, 0],
    [1 / 5, 0, 0, 0, 0, 0, 0],
    [3 / 40, 9 / 40, 0, 0, 0, 0, 0],
    [44 / 45, -56 / 15, 32 / 9, 0, 0, 0, 0],
    [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729, 0, 0, 0],
    [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656, 0, 0],
    [35 / 384, 0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0],
])
# 5th-order solution weights equal the last A row (FSAL); error weights are
# the difference against the embedded 4th-order solution.
_B5 = _A[6]
_B4 = np.array([5179 / 57600, 0, 7571 / 16695, 393 / 640,
                -92097 / 339200, 187 / 2100, 1 / 40])
_E = _B5 - _B4

_MIN_STEP = 1e-7  # ns; below this the problem is considered stiff/broken
_MAX_ACCEPTED = 60_000_000


def hermite(t: float, t0: float, y0: np.ndarray, f0: np.ndarray,
            t1: float, y1: np.ndarray, f1: np.ndarray) -> np.ndarray:
    """Cubic Hermite interpolant on one accepted step."""
    h = t1 - t0
    if h <= 0.0:
        return y1.copy()
    s = (t - t0) / h
    s2 = s * s
    s3 = s2 * s
    h00 = 2 * s3 - 3 * s2 + 1
    h10 = s3 - 2 * s2 + s
    h01 = -2 * s3 + 3 * s2
    h11 = s3 - s2
    return h00 * y0 + (h10 * h) * f0 + h01 * y1 + (h11 * h) * f1


def solve_segment(rhs, t0: float, t1: float, y0: np.ndarray, *,
                  rtol: float, atol: float, max_step: float,
                  f0: np.ndarray | None = None, h_init: float | None = None,
                  step_cap=None, on_step=None):
    """Integrate y' = rhs(t, y) from t0 to t1, landing exactly on t1.

    step_cap: optional callable (t, y) -> float or None giving an additional
        max-step bound from the current state (used to resolve fast junction
        rotation only when it is happening).
    on_step: optional callable (t_prev, y_prev, f_prev, t, y, f) invoked once
        per accepted step, in order.

    Returns (y_end, f_end, h_last, n_accepted). f_end is rhs at (t1, y_end)
    and can seed the next segment (FSAL).
    """
    t = t0
    y = np.asarray(y0, dtype=float).copy()
    n = y.size
    f = rhs(t, y) if f0 is None else f0
    if not np.all(np.isfinite(f)):
        raise IntegrationError("non-finite derivative at segment start", t)

    span = t1 - t0
    if span <= 0.0:
        return y, f, h_init or max_step, 0

    h = min(max_step, span) if h_init is None else min(h_init, max_step, span)
    K = np.empty((7, n))
    accepted = 0

    while t < t1:
        rem = t1 - t
        if rem <= 1e-12 * max(1.0, abs(t1)):
            break  # span exhausted to rounding; snap to the boundary
        cap = max_step
        if step_cap is not None:
            extra = step_cap(t, y)
            if extra is not None and extra < cap:
                cap = extra
        h = min(h, cap, rem)
        if h < _MIN_STEP and h < 0.99 * rem:
            raise IntegrationError("step size underflow (stiffness failure)", t)

        K[0] = f
        failed_stage = False
        for i in range(1, 7):
            yi = y + h * (_A[i, :i] @ K[:i])
            if not np.all(np.isfinite(yi)):
                failed_stage = True
                break
            K[i] = rhs(t + _C[i] * h, yi)
        if failed_stage or not np.all(np.isfinite(K)):
            h *= 0.2
            continue

        y_new = y + h * (_B5 @ K)
        err_vec = h * (_E @ K)
        scale = atol + rtol * np.maximum(np.abs(y), np.abs(y_new))
        err = math.sqrt(float(np.mean((err_vec / scale) ** 2)))

        if err <= 1.0:
            t_new = t + h
            f_new = K[6].copy()  # FSAL: stage 7 is rhs(t_new, y_new)
            if on_step is not None:
                on_step(t, y, f, t_new, y_new, f_new)
            t, y, f = t_new, y_new, f_new
            accepted += 1
            if accepted > _MAX_ACCEPTED:
                raise IntegrationError("accepted-step budget exhausted", t)
            grow = 0.9 * err ** -0.2 if err > 1e-10 else 5.0
            h = h * min(5.0, max(0.2, grow))
        else:
            h = h * min(1.0, max(0.2, 0.9 * err ** -0.2))

    return y, f, h, accepted
