"""Scalar special functions and quadrature primitives.

Everything downstream (moment determinants, boundary anchors, densities)
reduces to four ingredients implemented here:

* physicists' Hermite polynomials by three-term recurrence,
* the Airy function and its derivatives by Maclaurin series / asymptotic
  expansion with an explicit handoff,
* incomplete Gaussian moments  I_a(t) = ∫_{-∞}^t (t-x)^a e^{-x²} dx  and
  their full-line / rotated companions,
* Gauss–Hermite nodes and the Barnes-G normalization constants.

The moment recurrence  I_a = t·I_{a-1} + (a-1)/2·I_{a-2}  is applied only
for a > 1; at a = 1 the integration by parts leaves a boundary term, and the
correct relation is  I_1 = t·I_0 + e^{-t²}/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import mpmath
import numpy as np
from scipy import integrate as _sciint
from scipy import special as _scisp

from .errors import AccuracyError, DomainError
from .precision import DEFAULT_CONFIG, PrecisionConfig

SQRT_PI = math.sqrt(math.pi)

# Maclaurin values: Ai(0) = 3^(-2/3)/Γ(2/3), Ai'(0) = -3^(-1/3)/Γ(1/3)
_AI0 = 3.0 ** (-2.0 / 3.0) / math.gamma(2.0 / 3.0)
_AIP0 = -(3.0 ** (-1.0 / 3.0)) / math.gamma(1.0 / 3.0)

# Series/asymptotic handoff for the Airy function at 53-bit precision.
_AIRY_SWITCH_53 = 6.0


class MomentTail(Enum):
    """Integration region for a Gaussian moment."""

    LEFT_INCOMPLETE = "left_incomplete"
    FULL_LINE_REAL = "full_line_real"
    FULL_LINE_ROTATED = "full_line_rotated"


@dataclass(frozen=True)
class IncompleteMomentKey:
    """Exponent, endpoint, and integration region of a Gaussian moment.

    ``left_incomplete`` is ∫_{-∞}^t (t-x)^a e^{-x²} dx (a > -1);
    ``full_line_real`` the same over all of ℝ (a > -1 integer, or any a > -1
    with Im t > 0 on the principal branch); ``full_line_rotated`` is
    ∫ (t-ix)^a e^{-x²} dx = √π 2^{-a} H_a(t), integer a only.
    """

    exponent: float
    endpoint: complex
    tail: MomentTail = MomentTail.LEFT_INCOMPLETE

    def __post_init__(self):
        a = self.exponent
        if self.tail is MomentTail.FULL_LINE_ROTATED:
            if a != int(round(a)) or a < 0:
                raise DomainError("rotated moments require a nonnegative integer exponent")
        elif a <= -1:
            raise DomainError(f"moment exponent must exceed -1, got {a}")


def _is_integer(a: float) -> bool:
    return abs(a - round(a)) < 1e-13


# ---------------------------------------------------------------------------
# Hermite polynomials
# ---------------------------------------------------------------------------

def hermite(p: int, t):
    """Physicists' Hermite polynomial H_p(t).

    Three-term recurrence H_{p+1} = 2t H_p - 2p H_{p-1}; accepts real or
    complex argument (and mpmath types).
    """
    if p < 0:
        raise DomainError("Hermite degree must be nonnegative")
    if p == 0:
        return t * 0 + 1.0
    h_prev, h = t * 0 + 1.0, 2.0 * t
    for k in range(1, p):
        h_prev, h = h, 2.0 * t * h - 2.0 * k * h_prev
    return h


def hermite_list(p: int, t):
    """All of H_0(t), ..., H_p(t) in one recurrence pass."""
    if p < 0:
        raise DomainError("Hermite degree must be nonnegative")
    out = [1.0 * (t * 0 + 1)]
    if p >= 1:
        out.append(2.0 * t)
    for k in range(1, p):
        out.append(2.0 * t * out[k] - 2.0 * k * out[k - 1])
    return out


def hermite_coefficients(p: int) -> list[int]:
    """Exact integer coefficients of H_p, lowest degree first."""
    if p < 0:
        raise DomainError("Hermite degree must be nonnegative")
    prev, cur = [1], [0, 2]
    if p == 0:
        return prev
    for k in range(1, p):
        nxt = [0] * (k + 2)
        for i, c in enumerate(cur):
            nxt[i + 1] += 2 * c
        for i, c in enumerate(prev):
            nxt[i] -= 2 * k * c
        prev, cur = cur, nxt
    return cur


# ---------------------------------------------------------------------------
# Airy function
# ---------------------------------------------------------------------------

def _airy_series(s: float, cfg: PrecisionConfig):
    """Ai and Ai' by the Maclaurin series; converges for all s, used for
    moderate |s|."""
    f, g = 1.0, s  # f = Σ c_k s^{3k},  g = Σ d_k s^{3k+1}
    fp, gp = 0.0, 1.0
    tf, tg = 1.0, s
    s3 = s * s * s
    tol = cfg.eps
    for k in range(1, cfg.series_terms + 1):
        tf = tf * s3 / (3 * k * (3 * k - 1))
        tg = tg * s3 / ((3 * k + 1) * (3 * k))
        f += tf
        g += tg
        fp += tf * (3 * k) / s if s != 0.0 else 0.0
        gp += tg * (3 * k + 1) / s if s != 0.0 else (1.0 if k == 0 else 0.0)
        if abs(tf) < tol * abs(f) and abs(tg) < tol * (abs(g) + 1e-300):
            break
    else:
        raise AccuracyError("Airy Maclaurin series did not converge within the term budget")
    ai = _AI0 * f + _AIP0 * g
    aip = _AI0 * fp + _AIP0 * gp
    return ai, aip


def _airy_u_coefficients(kmax: int) -> list[float]:
    """u_k of the large-argument expansion; u_0 = 1,
    u_k = u_{k-1} (6k-5)(6k-3)(6k-1) / (216 k (2k-1))."""
    u = [1.0]
    for k in range(1, kmax + 1):
        u.append(u[-1] * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / (216.0 * k * (2 * k - 1)))
    return u


def _airy_asymptotic_pos(s: float, cfg: PrecisionConfig, kmax: int = 40):
    """Ai, Ai' for s >> 1:  Ai ~ e^{-ξ}/(2√π s^{1/4}) Σ (-1)^k u_k ξ^{-k},
    ξ = (2/3) s^{3/2}; the derivative series has v_k = -u_k (6k+1)/(6k-1)."""
    xi = (2.0 / 3.0) * s ** 1.5
    u = _airy_u_coefficients(kmax)
    target = cfg.eps
    sa = sap = 0.0
    prev = math.inf
    converged = False
    for k in range(kmax + 1):
        term = (-1) ** k * u[k] / xi**k
        if abs(term) > prev:
            break  # past the optimal truncation point
        sa += term
        sap += (-1) ** k * (-u[k] * (6 * k + 1) / (6 * k - 1) if k else 1.0) / xi**k
        prev = abs(term)
        if prev < target:
            converged = True
            break
    if not converged and prev > 1e3 * target:
        raise AccuracyError(
            f"Airy asymptotic series stalls at {prev:.2e} for s = {s}; "
            "raise working_precision or the series switch point"
        )
    pref = math.exp(-xi) / (2.0 * SQRT_PI * s**0.25)
    return pref * sa, -(s**0.25) / (2.0 * SQRT_PI) * math.exp(-xi) * sap


def _airy_asymptotic_neg(s: float, cfg: PrecisionConfig, kmax: int = 40):
    """Oscillatory expansion for s << -1 (DLMF 9.7.9/9.7.10 form)."""
    z = -s
    zeta = (2.0 / 3.0) * z ** 1.5
    u = _airy_u_coefficients(2 * kmax + 1)
    v = [1.0] + [-u[k] * (6 * k + 1) / (6 * k - 1) for k in range(1, 2 * kmax + 2)]
    target = cfg.eps
    c_even = s_odd = 0.0   # Ai: cos-series over u_{2k}, sin-series over u_{2k+1}
    ce_p = so_p = 0.0      # Ai': v-analogues
    prev = math.inf
    for k in range(kmax + 1):
        te = (-1) ** k * u[2 * k] / zeta ** (2 * k)
        to = (-1) ** k * u[2 * k + 1] / zeta ** (2 * k + 1)
        if abs(te) > prev:
            break
        c_even += te
        s_odd += to
        ce_p += (-1) ** k * v[2 * k] / zeta ** (2 * k)
        so_p += (-1) ** k * v[2 * k + 1] / zeta ** (2 * k + 1)
        prev = abs(te)
        if prev < target:
            break
    if prev > 1e6 * target and prev > 1e-13:
        raise AccuracyError(f"Airy oscillatory expansion stalls at {prev:.2e} for s = {s}")
    ang = zeta - math.pi / 4.0
    ai = (math.cos(ang) * c_even + math.sin(ang) * s_odd) / (SQRT_PI * z**0.25)
    aip = (z**0.25 / SQRT_PI) * (math.sin(ang) * ce_p - math.cos(ang) * so_p)
    return ai, aip


def airy_derivs(s: float, m: int, cfg: PrecisionConfig = DEFAULT_CONFIG) -> list[float]:
    """Ai(s), Ai'(s), ..., Ai^{(m)}(s).

    Maclaurin series for |s| below the switch point, asymptotic expansions
    beyond; derivatives of order ≥ 2 reduced through Ai'' = s·Ai via
    Ai^{(k+2)} = s·Ai^{(k)} + k·Ai^{(k-1)}.
    """
    if m < 0:
        raise DomainError("derivative order must be nonnegative")
    if cfg.extended:
        with cfg.mp_context():
            vals = [mpmath.airyai(s, derivative=k) for k in range(m + 1)]
        return vals
    switch = _AIRY_SWITCH_53 * math.sqrt(cfg.working_precision / 53.0)
    if abs(s) <= switch:
        ai, aip = _airy_series(float(s), cfg)
    elif s > 0:
        ai, aip = _airy_asymptotic_pos(float(s), cfg)
    else:
        ai, aip = _airy_asymptotic_neg(float(s), cfg)
    out = [ai, aip]
    for k in range(m - 1):
        out.append(s * out[k] + k * out[k - 1] if k >= 1 else s * out[0])
    return out[: m + 1]


# ---------------------------------------------------------------------------
# Gaussian moments
# ---------------------------------------------------------------------------

def _base_moment_quadrature(a: float, t: float, cfg: PrecisionConfig) -> float:
    """I_a(t) for a in (-1, 1] by adaptive quadrature.

    Written as e^{-t²} ∫_0^∞ u^a e^{2tu-u²} du (so deep tails stay accurate
    in a relative sense) and regularized by u = w^{1/(a+1)}, which removes
    the endpoint singularity exactly.
    """
    if cfg.extended:
        with cfg.mp_context():
            f = lambda u: u**a * mpmath.exp(-((t - u) ** 2))
            hi = abs(t) + math.sqrt(cfg.working_precision) + 6
            return mpmath.quad(f, [0, max(t, 1), hi])
    ap1 = a + 1.0
    hi = max(t, 0.0) + 9.5  # e^{2tu-u²} is below e^{-90} relative past here

    def integrand(w):
        u = w ** (1.0 / ap1)
        return math.exp((2.0 * t - u) * u) / ap1

    scaled, err = _sciint.quad(integrand, 0.0, hi**ap1, epsabs=0.0, epsrel=1e-13, limit=400)
    if err > 1e-9 * abs(scaled):
        raise AccuracyError(f"moment quadrature error {err:.2e} too large at a={a}, t={t}")
    return math.exp(-t * t) * scaled


def _erf(t, cfg: PrecisionConfig):
    if cfg.extended:
        return mpmath.erf(t)
    return _scisp.erf(t)


def _exp(t, cfg: PrecisionConfig):
    return mpmath.exp(t) if cfg.extended else math.exp(t)


def incomplete_moment(key: IncompleteMomentKey, cfg: PrecisionConfig = DEFAULT_CONFIG):
    """Evaluate the Gaussian moment selected by ``key``.

    Left-incomplete and full-line moments use exact erf-based base cases for
    integer exponents and adaptive quadrature for fractional ones, then the
    two-step recurrence upward (only for exponents > 1; the exponent-1 case
    carries the boundary term e^{-t²}/2).
    """
    a, t, tail = key.exponent, key.endpoint, key.tail

    if tail is MomentTail.FULL_LINE_ROTATED:
        p = int(round(a))
        if cfg.extended:
            with cfg.mp_context():
                return mpmath.sqrt(mpmath.pi) * mpmath.mpf(2) ** (-p) * hermite(p, mpmath.mpf(t))
        return SQRT_PI * 2.0 ** (-p) * hermite(p, t)

    if tail is MomentTail.FULL_LINE_REAL:
        return _full_line_moment(a, t, cfg)

    # left-incomplete
    if hasattr(t, "imag") and getattr(t, "imag", 0.0) != 0:
        raise DomainError("left-incomplete moments take a real endpoint")
    t = float(t)
    if _is_integer(a):
        return _left_moment_integer_ladder(int(round(a)), t, cfg)[-1]
    return _left_moment_fractional(a, t, cfg)


def _left_moment_integer_ladder(a_max: int, t: float, cfg: PrecisionConfig):
    """[I_0(t), ..., I_{a_max}(t)] with exact base cases.

    I_0 = √π (1 + erf t)/2 and I_1 = t I_0 + e^{-t²}/2; two-step recurrence
    above that.
    """
    if cfg.extended:
        with cfg.mp_context():
            sq = mpmath.sqrt(mpmath.pi)
            tm = mpmath.mpf(t)
            vals = [sq * (1 + mpmath.erf(tm)) / 2]
            if a_max >= 1:
                vals.append(tm * vals[0] + mpmath.exp(-tm * tm) / 2)
            for b in range(2, a_max + 1):
                vals.append(tm * vals[b - 1] + (b - 1) / mpmath.mpf(2) * vals[b - 2])
            return vals
    vals = [SQRT_PI * (1.0 + _scisp.erf(t)) / 2.0]
    if a_max >= 1:
        vals.append(t * vals[0] + math.exp(-t * t) / 2.0)
    for b in range(2, a_max + 1):
        vals.append(t * vals[b - 1] + (b - 1) / 2.0 * vals[b - 2])
    return vals


def _left_moment_fractional(a: float, t: float, cfg: PrecisionConfig):
    """I_a(t) for fractional a > -1 via the shared-table ladder."""
    return left_moment_table(a, 1, t, cfg)[0]


def left_moment_table(a0: float, count: int, t: float, cfg: PrecisionConfig = DEFAULT_CONFIG):
    """[I_{a0}(t), I_{a0+1}(t), ..., I_{a0+count-1}(t)] sharing one base pair.

    This is the workhorse for Hankel matrix assembly: one erf (or one pair
    of quadratures) per table regardless of length.
    """
    if a0 <= -1:
        raise DomainError("moment exponent must exceed -1")
    if count < 1:
        return []
    if _is_integer(a0):
        ladder = _left_moment_integer_ladder(int(round(a0)) + count - 1, t, cfg)
        return ladder[int(round(a0)):]
    frac = a0 - math.floor(a0)  # in (0, 1)
    base_lo = frac - 1.0        # in (-1, 0)
    n_lo = int(round(a0 - base_lo))  # offset of a0 above base_lo
    vals = [
        _base_moment_quadrature(base_lo, t, cfg),
        _base_moment_quadrature(frac, t, cfg),
    ]
    for k in range(2, n_lo + count):
        c = base_lo + k  # always > 1 here
        vals.append(t * vals[k - 1] + (c - 1.0) / 2.0 * vals[k - 2])
    return vals[n_lo : n_lo + count]


def _full_line_moment(a: float, lam, cfg: PrecisionConfig):
    """Ī_a(λ) = ∫_ℝ (λ-x)^a e^{-x²} dx.

    Integer a: exact recurrence from Ī_0 = √π, Ī_1 = λ√π (no boundary
    correction on the full line).  Fractional a: principal branch, requires
    Im λ > 0; Gauss–Hermite quadrature at the configured order.
    """
    if _is_integer(a) and a >= 0:
        return full_line_moment_table(int(round(a)) + 1, lam, cfg)[-1]
    if getattr(lam, "imag", 0.0) <= 0:
        raise DomainError(
            "fractional full-line moments are defined on the principal branch "
            "only for Im λ > 0"
        )
    x, w = gauss_hermite_nodes(cfg.quad_order)
    return complex(np.sum(w * (lam - x) ** a))


def full_line_moment_table(count: int, lam, cfg: PrecisionConfig = DEFAULT_CONFIG):
    """[Ī_0(λ), ..., Ī_{count-1}(λ)] by the exact two-step recurrence."""
    if cfg.extended:
        with cfg.mp_context():
            sq = mpmath.sqrt(mpmath.pi)
            vals = [sq]
            if count > 1:
                vals.append(lam * sq)
            for b in range(2, count):
                vals.append(lam * vals[b - 1] + (b - 1) / mpmath.mpf(2) * vals[b - 2])
            return vals[:count]
    vals = [SQRT_PI + 0 * lam]
    if count > 1:
        vals.append(lam * SQRT_PI)
    for b in range(2, count):
        vals.append(lam * vals[b - 1] + (b - 1) / 2.0 * vals[b - 2])
    return vals[:count]


# ---------------------------------------------------------------------------
# Barnes G and ensemble normalization constants
# ---------------------------------------------------------------------------

def log_barnes_g(n: int) -> float:
    """log G(n) for integer n ≥ 1: G(1) = G(2) = 1 and G(n) = Π_{k≤n-2} k!."""
    if n < 1:
        raise DomainError("Barnes G implemented for positive integers only")
    return float(sum(math.lgamma(k + 1) for k in range(1, n - 1)))


def log_gaussian_normalization(n: int) -> float:
    """log of ∫ Π e^{-x_j²} Π (x_k - x_j)² dx over ℝ^n,
    = log[ 2^{-n²/2} (2π)^{n/2} G(n+2) ]."""
    if n < 0:
        raise DomainError("dimension must be nonnegative")
    if n == 0:
        return 0.0
    return -n * n / 2.0 * math.log(2.0) + n / 2.0 * math.log(2.0 * math.pi) + log_barnes_g(n + 2)


def gauss_hermite_nodes(m: int):
    """Nodes and weights exact for degree ≤ 2m-1 against weight e^{-x²}."""
    if m < 1:
        raise DomainError("quadrature order must be positive")
    return np.polynomial.hermite.hermgauss(m)


# ---------------------------------------------------------------------------
# Spectral densities used as right-side boundary data
# ---------------------------------------------------------------------------

def gue_density_jet(n: int, t: float):
    """Eigenvalue density of the n×n Gaussian ensemble and its first two
    derivatives: ρ(t) = 2^{-n} e^{-t²} [H_n² - H_{n+1}H_{n-1}] / (√π (n-1)!).

    Derivatives are taken exactly through H_p' = 2p H_{p-1}.
    """
    if n < 1:
        raise DomainError("density defined for n ≥ 1")
    h = hermite_list(n + 2, t)

    def dh(p):  # H_p'
        return 2.0 * p * h[p - 1] if p >= 1 else 0.0

    def d2h(p):  # H_p''
        return 4.0 * p * (p - 1) * h[p - 2] if p >= 2 else 0.0

    q = h[n] * h[n] - h[n + 1] * h[n - 1]
    dq = 2 * h[n] * dh(n) - dh(n + 1) * h[n - 1] - h[n + 1] * dh(n - 1)
    d2q = (
        2 * dh(n) ** 2
        + 2 * h[n] * d2h(n)
        - d2h(n + 1) * h[n - 1]
        - 2 * dh(n + 1) * dh(n - 1)
        - h[n + 1] * d2h(n - 1)
    )
    pref = 2.0 ** (-n) / (SQRT_PI * math.factorial(n - 1))
    e = math.exp(-t * t)
    rho = pref * e * q
    drho = pref * e * (dq - 2 * t * q)
    d2rho = pref * e * (d2q - 4 * t * dq + (4 * t * t - 2) * q)
    return rho, drho, d2rho


def soft_edge_density_jet(s: float, cfg: PrecisionConfig = DEFAULT_CONFIG):
    """Soft-edge density ρ(s) = Ai'(s)² - s·Ai(s)² with first and second
    derivatives (ρ' = -Ai², ρ'' = -2 Ai Ai')."""
    ai, aip = airy_derivs(s, 1, cfg)
    rho = aip * aip - s * ai * ai
    return rho, -ai * ai, -2.0 * ai * aip


def soft_edge_density_tail_mass(s: float, cfg: PrecisionConfig = DEFAULT_CONFIG) -> float:
    """∫_s^∞ [Ai'² - t Ai²] dt in closed form:
    (2/3)s²Ai² - (2/3)s Ai'² - (1/3) Ai Ai'."""
    ai, aip = airy_derivs(s, 1, cfg)
    return (2.0 / 3.0) * s * s * ai * ai - (2.0 / 3.0) * s * aip * aip - ai * aip / 3.0
