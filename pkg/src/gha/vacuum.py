"""Structure of the Hartree vacuum for the oscillator models.

The free (λ = 0, unit-frequency) and Hartree vacua are related by a
Bogoliubov transformation with parameter α = ½ ln(1/ω).  The free-particle
number density in the Hartree vacuum and the structure parameter are

    n₀ = sinh²α = ¼(ω + 1/ω − 2),        u = (1 − ω)/(1 + ω),

so n₀ = 0 exactly at ω = 1 and grows on both sides.  At strong coupling the
quartic gap equation gives ω ≈ (6λf)^{1/3}, hence n₀ ~ λ^{1/3} for λ ≫ 1
(the local log-log slope creeps toward 1/3 from above, with a λ^{-1/3}
correction).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from .errors import DomainError
from .hartree import OscillatorModel, solve_level


@dataclass(frozen=True)
class VacuumStructure:
    alpha: float
    n0: float
    u: float


def vacuum_structure(omega: float) -> VacuumStructure:
    """Bogoliubov parameter, condensate density, and structure parameter."""
    if not (omega > 0.0) or not math.isfinite(omega):
        raise DomainError(f"omega must be positive, got {omega}")
    alpha = -0.5 * math.log(omega)
    n0 = 0.25 * (omega + 1.0 / omega - 2.0)
    u = (1.0 - omega) / (1.0 + omega)
    return VacuumStructure(alpha=alpha, n0=n0, u=u)


def strong_coupling_scaling(
    model: OscillatorModel, lambdas: Iterable[float]
) -> List[Tuple[float, float]]:
    """Ground-state n₀ sampled over strong couplings of the quartic AHO."""
    if model.power != 4 or model.g <= 0.0:
        raise DomainError("strong-coupling scaling is defined for the quartic AHO")
    values = [float(lam) for lam in lambdas]
    if not values:
        raise DomainError("need at least one coupling")
    if min(values) < 100.0:
        raise DomainError("strong-coupling samples require lambda >= 100")
    samples = []
    for lam in values:
        sol = solve_level(OscillatorModel(power=4, g=model.g, lam=lam), 0)
        samples.append((lam, vacuum_structure(sol.omega).n0))
    return samples


def loglog_slope(samples: Sequence[Tuple[float, float]]) -> float:
    """Least-squares slope of ln n₀ against ln λ."""
    if len(samples) < 2:
        raise DomainError("slope needs at least two samples")
    x = np.log([lam for lam, _ in samples])
    y = np.log([n0 for _, n0 in samples])
    return float(np.polyfit(x, y, 1)[0])
