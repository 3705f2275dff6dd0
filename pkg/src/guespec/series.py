"""Truncated Laurent arithmetic and order-by-order matching of asymptotic
series against a differential residual.

A series lives in the variable w (either 1/t or t^{-1/2}); all powers are
integers.  The solver determines tail coefficients one at a time: at each
candidate power it probes the residual functional with c ∈ {0, ±1}, fits
the local quadratic A c² + B c + r₀ in the lowest unresolved residual
order, and takes the appropriate root.  Leading coefficients that satisfy
a pure quadratic (two asymptotic branches) are resolved by an explicit
root-selection policy instead of Newton, which would stick at the trivial
branch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import AccuracyError


class Laurent:
    """Σ c_p w^p over integer p, with powers above ``order`` discarded."""

    __slots__ = ("c", "order")

    def __init__(self, coeffs=None, order=40):
        self.order = order
        self.c = {}
        if coeffs:
            for p, v in coeffs.items():
                if v != 0.0 and p <= order:
                    self.c[p] = float(v)

    @classmethod
    def mono(cls, p: int, v: float, order: int):
        return cls({p: v}, order)

    def __add__(self, other):
        out = Laurent(self.c, self.order)
        for p, v in other.c.items():
            out.c[p] = out.c.get(p, 0.0) + v
            if out.c[p] == 0.0:
                del out.c[p]
        return out

    def __sub__(self, other):
        return self + other * (-1.0)

    def __mul__(self, other):
        if isinstance(other, Laurent):
            out = Laurent(order=self.order)
            for p1, v1 in self.c.items():
                for p2, v2 in other.c.items():
                    p = p1 + p2
                    if p <= self.order:
                        out.c[p] = out.c.get(p, 0.0) + v1 * v2
            out.c = {p: v for p, v in out.c.items() if v != 0.0}
            return out
        out = Laurent(order=self.order)
        out.c = {p: v * other for p, v in self.c.items() if v * other != 0.0}
        return out

    __rmul__ = __mul__

    def shift(self, dp: int):
        """Multiply by w^{dp}."""
        out = Laurent(order=self.order)
        out.c = {p + dp: v for p, v in self.c.items() if p + dp <= self.order}
        return out

    def coeff(self, p: int) -> float:
        return self.c.get(p, 0.0)

    def lowest(self):
        return min(self.c) if self.c else None

    def scale(self) -> float:
        return max((abs(v) for v in self.c.values()), default=0.0)


def d_dt(series: Laurent, half_powers: bool) -> Laurent:
    """d/dt when w = t^{-1/2} (half_powers) or w = 1/t."""
    out = Laurent(order=series.order)
    for p, v in series.c.items():
        if half_powers:
            q, f = p + 2, -0.5 * p * v
        else:
            q, f = p + 1, -p * v
        if f != 0.0 and q <= series.order:
            out.c[q] = out.c.get(q, 0.0) + f
    return out


def t_times(series: Laurent, half_powers: bool) -> Laurent:
    """Multiply by t (= w^{-2} or w^{-1})."""
    return series.shift(-2 if half_powers else -1)


def solve_tail(
    base: Laurent,
    powers,
    residual_fn,
    leading_policy: str = "newton",
    rel_tol: float = 1e-9,
):
    """Determine tail coefficients of ``base + Σ c_p w^p`` so that
    ``residual_fn`` vanishes order by order.

    ``leading_policy`` applies to the first power only when Newton is
    degenerate there: 'nonzero' picks the nontrivial quadratic root,
    'negative'/'positive' select by sign, 'newton' keeps plain Newton.
    Returns (series, coeff_dict).
    """
    s = base
    solved = {}
    resolved_below = None  # residual orders below this are matched already
    for idx, p in enumerate(powers):
        r0 = residual_fn(s)
        rp = residual_fn(s + Laurent.mono(p, 1.0, s.order))
        rm = residual_fn(s + Laurent.mono(p, -1.0, s.order))
        lin = (rp - rm) * 0.5
        quad = (rp + rm - r0 - r0) * 0.5
        # lowest order where this coefficient acts
        q = lin.lowest()
        if q is None:
            q = quad.lowest()
        if q is None:
            solved[p] = 0.0
            continue
        scale = max(r0.scale(), lin.scale(), 1e-300)
        if resolved_below is not None and q < resolved_below:
            raise AccuracyError(f"series matching lost order monotonicity at power {p}")
        A, B, R = quad.coeff(q), lin.coeff(q), r0.coeff(q)
        c = 0.0
        if abs(B) > 1e-12 * scale:
            c = -R / B
            # polish on the true scalar residual at order q (quadratic)
            for _ in range(2):
                rc = residual_fn(s + Laurent.mono(p, c, s.order)).coeff(q)
                c -= rc / (B + 2 * A * c)
        elif abs(A) > 1e-12 * scale:
            disc = B * B - 4 * A * R
            if disc < 0:
                raise AccuracyError(f"no real branch for series coefficient at power {p}")
            root = math.sqrt(disc)
            c_lo, c_hi = (-B - root) / (2 * A), (-B + root) / (2 * A)
            if leading_policy == "negative":
                c = min(c_lo, c_hi)
            elif leading_policy == "positive":
                c = max(c_lo, c_hi)
            elif leading_policy == "nonzero":
                c = c_lo if abs(c_lo) > abs(c_hi) else c_hi
            else:
                c = 0.0 if abs(R) < rel_tol * scale else c_lo
        elif abs(R) > rel_tol * scale:
            raise AccuracyError(
                f"series residual {R:.3e} at order {q} cannot be matched by power {p}"
            )
        solved[p] = c
        if c != 0.0:
            s = s + Laurent.mono(p, c, s.order)
        resolved_below = q + 1
        leading_policy = "newton"  # policy applies to the first power only
    return s, solved


@dataclass
class TailSeries:
    """Evaluatable asymptotic tail: value(t) = Σ poly + Σ c_p w(t)^p."""

    half_powers: bool
    series: Laurent
    direction: int  # +1 anchored at +∞, -1 at -∞

    def _w(self, t: float) -> float:
        if self.half_powers:
            if t <= 0:
                raise ValueError("half-power series requires t > 0")
            return t ** -0.5
        return 1.0 / t

    def value(self, t: float) -> float:
        w = self._w(t)
        return sum(v * w**p for p, v in sorted(self.series.c.items()))

    def jet(self, t: float):
        """(value, d/dt, d²/dt²) by term-wise differentiation."""
        w = self._w(t)
        val = der = der2 = 0.0
        for p, v in sorted(self.series.c.items()):
            e = -p / 2.0 if self.half_powers else -float(p)
            term = v * w**p
            val += term
            der += term * e / t
            der2 += term * e * (e - 1.0) / (t * t)
        return val, der, der2

    def truncation_estimate(self, t: float) -> float:
        """Magnitude of the highest retained term (asymptotic error proxy)."""
        w = self._w(t)
        if not self.series.c:
            return 0.0
        pmax = max(self.series.c)
        return abs(self.series.c[pmax] * w**pmax)

    def integral(self, t_from: float, t_to: float) -> float:
        """∫ value dt, term by term (exact for each power)."""
        total = 0.0
        for p, v in self.series.c.items():
            e = -p / 2.0 if self.half_powers else -float(p)
            if abs(e + 1.0) < 1e-12:
                total += v * math.log(abs(t_to / t_from))
            else:
                total += v * (t_to ** (e + 1.0) - t_from ** (e + 1.0)) / (e + 1.0)
        return total
