"""Gaussian-effective-potential sector of λφ⁴ theory in 3+1 dimensions.

A sharp momentum cutoff Λ regulates the momentum integrals

    I_n(M²) = (1/4π²) ∫₀^Λ dk k² (k² + M²)^{(2n−1)/2},     n ∈ {−1, 0, 1},

which are evaluated in closed form.  The variational (Gaussian) vacuum of

    H = ∫d³x [ ½π² + ½(∇φ)² + ½m²φ² + λφ⁴ ]

has quasiparticle mass M and shift σ determined by

    gap:  M² = m² + 12λσ² + 12λ I₀(M²)
    VEV:  σ [M² − 8λσ²] = 0,

with effective potential U(σ) = I₁ − 3λI₀² + ½m²σ² + λσ⁴ evaluated on the
gap solution M²(σ).  For m² > 0 the only physical vacuum is σ = 0.  The
curvatures of U at the origin give the renormalized parameters

    m_R² = m² + 12λ I₀(M̄²) = M̄²,
    λ_R  = λ (1 − 12λ I₋₁(M̄²)) / (1 + 6λ I₋₁(M̄²)),

and the equal-time two-point structure of the vacuum is carried by
u(k) = √((k²+m²)/(k²+M²)), ρ(k) = (1 + k²/m_R²)^{−1/2}, and the static
potential U(r) = m_R K₁(m_R r)/(4π² r).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, NoRoot, NonConvergence

_FOUR_PI2 = 4.0 * math.pi * math.pi
_HALF_PI = 0.5 * math.pi


@dataclass(frozen=True)
class FieldTheory:
    """Bare parameters: mass² m² > 0 (symmetric theory), coupling λ > 0,
    momentum cutoff Λ > 0 (Λ ≫ m recommended)."""

    m2: float
    lam: float
    cutoff: float

    def __post_init__(self):
        if not (self.m2 > 0.0) or not math.isfinite(self.m2):
            raise DomainError(f"bare mass^2 must be positive, got {self.m2}")
        if not (self.lam > 0.0) or not math.isfinite(self.lam):
            raise DomainError(f"coupling must be positive, got {self.lam}")
        if not (self.cutoff > 0.0):
            raise DomainError(f"cutoff must be positive, got {self.cutoff}")


@dataclass(frozen=True)
class GapState:
    sigma: float
    M2: float
    i0: float
    i1: float
    im1: float


@dataclass(frozen=True)
class RenormalizedParams:
    mR2: float
    lambdaR: float


def stevenson(n: int, M2: float, cutoff: float) -> float:
    """Closed-form cutoff integral I_n(M²) for n ∈ {−1, 0, 1}."""
    if n not in (-1, 0, 1):
        raise DomainError(f"only n in {{-1, 0, 1}} supported, got {n}")
    if not (M2 > 0.0) or not (cutoff > 0.0):
        raise DomainError(f"need M2 > 0 and cutoff > 0, got {M2}, {cutoff}")
    length = float(cutoff)
    mass = math.sqrt(M2)
    s = math.hypot(length, mass)  # overflow-safe sqrt(L² + M²)
    lt = math.log((length + s) / mass)
    if n == -1:
        return (lt - length / s) / _FOUR_PI2
    if n == 0:
        return (length * s - M2 * lt) / (2.0 * _FOUR_PI2)
    return (length * s**3 / 4.0 - M2 * length * s / 8.0 - M2 * M2 * lt / 8.0) / _FOUR_PI2


def solve_mass_gap(theory: FieldTheory, sigma: float) -> GapState:
    """Unique root of M² = m² + 12λσ² + 12λI₀(M²).

    The right side is strictly decreasing in M², so the residual
    F(M²) = M² − m² − 12λσ² − 12λI₀(M²) is strictly increasing with
    F' = 1 + 6λI₋₁ > 0; Newton with a bisection safeguard converges fast.
    """
    if theory.cutoff <= 0.0:
        raise NoRoot("cutoff must be positive for the gap integrals")
    lam, cut = theory.lam, theory.cutoff
    base = theory.m2 + 12.0 * lam * sigma * sigma

    def residual(m2):
        return m2 - base - 12.0 * lam * stevenson(0, m2, cut)

    lo = base
    hi = base + 12.0 * lam * stevenson(0, base, cut)
    m2 = 0.5 * (lo + hi)
    for _ in range(200):
        f = residual(m2)
        if abs(f) < 1e-12 * m2:
            break
        if f > 0.0:
            hi = m2
        else:
            lo = m2
        fprime = 1.0 + 6.0 * lam * stevenson(-1, m2, cut)
        step = m2 - f / fprime
        m2 = step if lo < step < hi else 0.5 * (lo + hi)
    else:
        raise NonConvergence("mass-gap iteration did not settle")
    if abs(residual(m2)) >= 1e-10 * m2:
        raise NonConvergence(f"gap residual {residual(m2):.3e} too large")
    return GapState(
        sigma=float(sigma),
        M2=m2,
        i0=stevenson(0, m2, cut),
        i1=stevenson(1, m2, cut),
        im1=stevenson(-1, m2, cut),
    )


def vev_branches(theory: FieldTheory):
    """All (σ, M²) vacuum branches; the head of the list is physical.

    A σ ≠ 0 branch would need M² = 8λσ² together with the gap equation,
    i.e. −M²/2 = m² + 12λI₀(M²), impossible for m² > 0 (left side negative,
    right side positive).  A sign scan confirms this defensively.
    """
    zero = solve_mass_gap(theory, 0.0)
    branches = [(0.0, zero.M2)]
    probe = theory.m2 * 1e-6
    top = max(zero.M2 * 10.0, theory.m2 * 10.0)
    while probe <= top:
        if theory.m2 + 12.0 * theory.lam * stevenson(0, probe, theory.cutoff) + 0.5 * probe <= 0.0:
            branches.append((math.sqrt(probe / (8.0 * theory.lam)), probe))
        probe *= 4.0
    return branches


def effective_potential(theory: FieldTheory, sigma: float) -> float:
    """Gaussian effective potential U(σ) on the gap solution M²(σ)."""
    state = solve_mass_gap(theory, sigma)
    return (
        state.i1
        - 3.0 * theory.lam * state.i0 * state.i0
        + 0.5 * theory.m2 * sigma * sigma
        + theory.lam * sigma**4
    )


def renormalized(theory: FieldTheory) -> RenormalizedParams:
    """Renormalized mass² and coupling from the curvatures of U at σ = 0."""
    bar = solve_mass_gap(theory, 0.0)
    mr2 = theory.m2 + 12.0 * theory.lam * bar.i0
    lam = theory.lam
    lam_r = lam * (1.0 - 12.0 * lam * bar.im1) / (1.0 + 6.0 * lam * bar.im1)
    return RenormalizedParams(mR2=mr2, lambdaR=lam_r)


def structure_function(k: float, m2: float, M2: float) -> float:
    """Vacuum structure function u(k) = √((k²+m²)/(k²+M²))."""
    if k < 0.0 or m2 <= 0.0 or M2 <= 0.0:
        raise DomainError("need k >= 0, m2 > 0, M2 > 0")
    return math.sqrt((k * k + m2) / (k * k + M2))


def density_ratio(k: float, mR2: float) -> float:
    """ρ(k) = (1 + k²/m_R²)^{−1/2}, the density profile of the condensate."""
    if k < 0.0 or mR2 <= 0.0:
        raise DomainError("need k >= 0 and mR2 > 0")
    return 1.0 / math.sqrt(1.0 + k * k / mR2)


def peak_density(m2: float, mR2: float) -> float:
    """Peak condensate number density n(0) = (m/m_R)/(32π³)."""
    if m2 <= 0.0 or mR2 <= 0.0:
        raise DomainError("need m2 > 0 and mR2 > 0")
    return math.sqrt(m2 / mR2) / (32.0 * math.pi**3)


def occupation(k: float, m2: float, M2: float) -> float:
    """Finite-cutoff mode occupation n(k) = sinh²(½ ln u(k)) = ¼(u + 1/u − 2)."""
    u = structure_function(k, m2, M2)
    return 0.25 * (u + 1.0 / u - 2.0)


def _k1_scaled(x: float) -> float:
    """∫₀^∞ exp(−x(√(1+s²)−1)) ds by double-exponential quadrature.

    Equals e^x K₁(x); the factored exponential keeps x up to 700 inside
    normal double range.
    """

    def phi(s):
        # sqrt(1+s²) − 1 without cancellation at small s
        return s * s / (1.0 + math.sqrt(1.0 + s * s))

    def sweep(h):
        total = 0.0
        for direction in (1, -1):
            j = 0 if direction == 1 else -1
            while True:
                u = j * h
                su = math.sinh(u)
                if abs(su) > 700.0 / _HALF_PI:
                    break
                s = math.exp(_HALF_PI * su)
                weight = _HALF_PI * math.cosh(u) * s
                arg = x * phi(s)
                term = 0.0 if arg > 745.0 else weight * math.exp(-arg)
                total += term
                if abs(j) > 3 and term <= 1e-18 * abs(total):
                    break
                j += direction
                if abs(j) > 4000:
                    raise NonConvergence("quadrature node budget exhausted")
        return total * h

    value = sweep(0.5)
    # slow decay at small x (scale s ~ 1/x) needs the finer steps
    for h in (0.25, 0.125, 0.0625, 0.03125, 0.015625, 0.0078125, 0.00390625):
        refined = sweep(h)
        if abs(refined - value) <= 1e-13 * abs(refined):
            return refined
        value = refined
    raise NonConvergence("double-exponential quadrature did not converge")


def bessel_k1(x: float) -> float:
    """Modified Bessel function K₁(x) for x ∈ [1e-3, 700].

    Computed from the integral representation K₁(x) = ∫₀^∞ e^{−x cosh t}
    cosh t dt = ∫₀^∞ e^{−x √(1+s²)} ds (substituting s = sinh t).
    """
    if not (1e-3 <= x <= 700.0):
        raise DomainError(f"bessel_k1 supports x in [1e-3, 700], got {x}")
    return math.exp(-x) * _k1_scaled(x)


def static_potential(r: float, mR: float) -> float:
    """Static inter-particle potential U(r) = m_R K₁(m_R r)/(4π² r)."""
    if not (r > 0.0):
        raise DomainError(f"r must be positive, got {r}")
    if not (mR > 0.0):
        raise DomainError(f"mR must be positive, got {mR}")
    return mR * bessel_k1(mR * r) / (_FOUR_PI2 * r)
