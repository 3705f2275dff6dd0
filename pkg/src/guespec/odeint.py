"""Adaptive embedded Runge–Kutta integration (Cash–Karp 5(4)).

One compact integrator serves both the symmetric Painlevé systems and the
third-order σ-equations.  Requested output abscissas are hit exactly (the
step is clipped rather than interpolated), and step-size underflow is
reported as a movable-pole diagnostic carrying the last trusted point.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import PoleEncounteredError

# Cash-Karp tableau
_A = [
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (3 / 10, -9 / 10, 6 / 5),
    (-11 / 54, 5 / 2, -70 / 27, 35 / 27),
    (1631 / 55296, 175 / 512, 575 / 13824, 44275 / 110592, 253 / 4096),
]
_C = (0.0, 1 / 5, 3 / 10, 3 / 5, 1.0, 7 / 8)
_B5 = (37 / 378, 0.0, 250 / 621, 125 / 594, 0.0, 512 / 1771)
_B4 = (2825 / 27648, 0.0, 18575 / 48384, 13525 / 55296, 277 / 14336, 1 / 4)

_SAFETY = 0.9
_MIN_SHRINK = 0.1
_MAX_GROW = 5.0
_ORDER = 5.0


@dataclass
class OdeResult:
    """Accepted abscissas/states plus the subset requested via ``t_eval``."""

    ts: np.ndarray
    ys: np.ndarray
    t_eval: np.ndarray
    y_eval: np.ndarray
    n_steps: int = 0
    n_rejected: int = 0


def _step(f, t, y, h):
    k = [f(t, y)]
    for i in range(1, 6):
        yi = y + h * sum(a * kk for a, kk in zip(_A[i], k))
        k.append(f(t + _C[i] * h, yi))
    y5 = y + h * sum(b * kk for b, kk in zip(_B5, k))
    y4 = y + h * sum(b * kk for b, kk in zip(_B4, k))
    return y5, y5 - y4


def integrate(
    f,
    t0: float,
    y0,
    t1: float,
    rtol: float = 1e-12,
    atol: float = 1e-14,
    t_eval=None,
    max_step: float = np.inf,
    first_step: float | None = None,
    blowup: float = 1e12,
) -> OdeResult:
    """Integrate y' = f(t, y) from t0 to t1 (either direction).

    ``t_eval`` abscissas must lie between t0 and t1 inclusive and are hit
    exactly.  Raises :class:`PoleEncounteredError` when the controller
    underflows its step or the state exceeds ``blowup``.
    """
    y = np.asarray(y0, dtype=float).copy()
    direction = 1.0 if t1 >= t0 else -1.0
    span = abs(t1 - t0)
    if span == 0.0:
        te = np.asarray([t0]) if t_eval is None else np.asarray(t_eval, dtype=float)
        return OdeResult(np.array([t0]), y[None, :], te, np.repeat(y[None, :], len(te), 0))

    targets = []
    if t_eval is not None:
        targets = sorted((float(s) for s in t_eval), reverse=direction < 0)
        for s in targets:
            if (s - t0) * direction < -1e-12 or (s - t1) * direction > 1e-12:
                raise ValueError(f"t_eval point {s} outside integration range")
    target_iter = iter(targets)
    next_target = next(target_iter, None)

    h = first_step if first_step is not None else min(span / 100.0, max_step, 0.1)
    h = min(h, max_step)
    t = t0
    ts = [t]
    ys = [y.copy()]
    te_out, ye_out = [], []
    n_steps = n_rejected = 0

    # emit any targets equal to t0
    while next_target is not None and abs(next_target - t) <= 1e-14 * max(1.0, abs(t)):
        te_out.append(t)
        ye_out.append(y.copy())
        next_target = next(target_iter, None)

    while (t1 - t) * direction > 1e-14 * max(1.0, abs(t1)):
        h_try = min(h, abs(t1 - t))
        clipped = False
        if next_target is not None and (next_target - t) * direction <= h_try + 1e-15:
            h_try = abs(next_target - t)
            clipped = True
        if h_try < 1e-13 * max(1.0, abs(t)):
            raise PoleEncounteredError(t, y.copy())
        y_new, err_vec = _step(f, t, y, direction * h_try)
        if not np.all(np.isfinite(y_new)) or np.max(np.abs(y_new)) > blowup:
            h *= 0.25
            n_rejected += 1
            if h < 1e-13 * max(1.0, abs(t)):
                raise PoleEncounteredError(t, y.copy())
            continue
        scale = atol + rtol * np.maximum(np.abs(y), np.abs(y_new))
        err = float(np.sqrt(np.mean((err_vec / scale) ** 2)))
        if err <= 1.0:
            t = next_target if clipped else t + direction * h_try
            y = y_new
            ts.append(t)
            ys.append(y.copy())
            n_steps += 1
            if clipped:
                te_out.append(t)
                ye_out.append(y.copy())
                next_target = next(target_iter, None)
                while next_target is not None and abs(next_target - t) <= 1e-14 * max(1.0, abs(t)):
                    te_out.append(t)
                    ye_out.append(y.copy())
                    next_target = next(target_iter, None)
            grow = _SAFETY * err ** (-1.0 / _ORDER) if err > 0 else _MAX_GROW
            h = min(max_step, h_try * min(_MAX_GROW, max(_MIN_SHRINK, grow)))
        else:
            n_rejected += 1
            h = h_try * max(_MIN_SHRINK, _SAFETY * err ** (-1.0 / _ORDER))

    return OdeResult(
        np.asarray(ts),
        np.asarray(ys),
        np.asarray(te_out),
        np.asarray(ye_out) if ye_out else np.empty((0, len(y))),
        n_steps,
        n_rejected,
    )


def cumulative_simpson(xs: np.ndarray, fs: np.ndarray) -> np.ndarray:
    """Cumulative ∫ f dx on a (possibly nonuniform) grid, composite Simpson
    on successive triples with a parabolic correction on the odd tail."""
    xs = np.asarray(xs, float)
    fs = np.asarray(fs, float)
    out = np.zeros_like(fs)
    # trapezoid base then Richardson-style parabolic refinement per pair
    for i in range(1, len(xs)):
        h = xs[i] - xs[i - 1]
        seg = 0.5 * h * (fs[i] + fs[i - 1])
        if i >= 2:
            # quadratic through (i-2, i-1, i) for the last interval
            h0 = xs[i - 1] - xs[i - 2]
            if h0 > 0 and h > 0:
                d1 = (fs[i - 1] - fs[i - 2]) / h0
                d2 = (fs[i] - fs[i - 1]) / h
                c = (d2 - d1) / (h0 + h)
                seg = 0.5 * h * (fs[i] + fs[i - 1]) - (h**3) * c / 6.0
        out[i] = out[i - 1] + seg
    return out
