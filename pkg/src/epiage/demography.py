"""Demographic quantities: survival, total population, mixing density.

The infinite age domain is truncated to [0, A].  Kernels renormalize the
stationary mixing density so its quadrature over [0, A] is exactly one,
which the fixed-point analysis relies on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ParameterError
from .grids import GridSpec, QuadratureGrid
from .parameters import ParameterSet, as_parameter_set
from .profiles import as_profile

#: default truncation: age_max is chosen so survival(age_max) <= this
SURVIVAL_CUTOFF = 1e-6


def survival(params: ParameterSet, a):
    """Probability of remaining in the system to age ``a``.

    Exact for constant and piecewise-linear exit rates (the cumulative
    integral of a linear segment is a closed form).
    """
    return np.exp(-params.mu.cumulative(a))


def total_population(params: ParameterSet, n0, t: float, a):
    """Total population density at time ``t`` and age ``a``.

    Characteristics carry the initial profile for t < a and the inflow of
    newborns for t >= a; the two branches agree along t = a exactly when
    n0(0) equals the birth rate, and the inflow branch is used there.
    """
    if t < 0:
        raise DomainError("time must be >= 0")
    n0 = as_profile(n0)
    a_arr = np.asarray(a, dtype=float)
    inflow = params.birth_rate * survival(params, a_arr)
    a_shift = np.maximum(a_arr - t, 0.0)
    carried = n0(a_shift) * np.exp(
        -(params.mu.cumulative(a_arr) - params.mu.cumulative(a_shift))
    )
    out = np.where(t >= a_arr, inflow, carried)
    return float(out) if np.isscalar(a) or a_arr.ndim == 0 else out


@dataclass(frozen=True)
class DemographicKernel:
    """Stationary mixing density cached on an age grid.

    survival: F(a_k); density: the stationary mixing density p(a_k) with
    quadrature exactly 1 over the grid; norm: the normalizing integral of
    contact * survival before renormalization.
    """

    grid: QuadratureGrid
    survival: np.ndarray
    density: np.ndarray
    norm: float

    @property
    def ages(self) -> np.ndarray:
        return self.grid.nodes

    def integrate(self, values: np.ndarray) -> float:
        return self.grid.integrate(values)


def _kernel_on(params: ParameterSet, grid: QuadratureGrid) -> DemographicKernel:
    if params.mu.min_value() <= 0:
        raise ParameterError("mu must be strictly positive to build a kernel")
    F = survival(params, grid.nodes)
    weighted = params.contact(grid.nodes) * F
    norm = grid.integrate(weighted)
    if not norm > 0:
        raise ParameterError("normalizing integral of contact * survival is <= 0")
    density = weighted / norm
    # second pass pins the quadrature of the density at exactly one
    density = density / grid.integrate(density)
    return DemographicKernel(grid, F, density, float(norm))


def stationary_mixing(params, grid) -> DemographicKernel:
    """Kernel on a simulation grid (or any prebuilt quadrature grid)."""
    params = as_parameter_set(params)
    if isinstance(grid, GridSpec):
        grid = QuadratureGrid.uniform(grid.age_max, grid.n_age)
    return _kernel_on(params, grid)


def truncation_age(params: ParameterSet, cutoff: float = SURVIVAL_CUTOFF) -> float:
    """Smallest age A with survival(A) <= cutoff, found by bisection."""
    target = math.log(1.0 / cutoff)
    hi = 1.0
    while params.mu.cumulative(hi) < target:
        hi *= 2.0
        if hi > 1e9:
            raise ParameterError("survival decays too slowly to truncate")
    lo = hi / 2.0 if hi > 1.0 else 0.0
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if params.mu.cumulative(mid) < target:
            lo = mid
        else:
            hi = mid
    return hi


def analysis_kernel(
    params,
    cutoff: float = SURVIVAL_CUTOFF,
    panels_per_block: int = 128,
    age_max: float | None = None,
) -> DemographicKernel:
    """Kernel on a graded grid suited to steady-state and threshold work.

    The grid refines dyadically towards age 0 so that boundary layers of
    width ~1/(phi+gamma+rho+beta) are resolved, while the far tail keeps
    coarse blocks.
    """
    params = as_parameter_set(params)
    if age_max is None:
        age_max = truncation_age(params, cutoff)
    fastest = (
        params.mu.max_value()
        + params.beta.max_value()
        + params.phi.max_value()
        + params.gamma.max_value()
        + params.rho.max_value()
        + 1.0
    )
    knots = np.unique(
        np.concatenate(
            [getattr(params, name).ages for name in
             ("mu", "beta", "phi", "gamma", "rho", "contact")]
        )
    )
    grid = QuadratureGrid.graded(
        age_max, 1.0 / fastest, panels_per_block, knots=knots
    )
    return _kernel_on(params, grid)


def refine_kernel(params, kernel: DemographicKernel) -> DemographicKernel:
    """Same kernel with every quadrature panel halved (for Richardson checks)."""
    return _kernel_on(as_parameter_set(params), kernel.grid.refined())
