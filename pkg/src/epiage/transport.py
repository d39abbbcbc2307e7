"""Explicit first-order upwind solver for the rescaled fraction system.

Each time step advances the interior nodes with the three update formulas

    s+ = s + dt (-beta s B - D s)
    i+ = i + dt (beta s B - (phi+gamma) i + rho r B - D i)
    r+ = r + dt ((phi+gamma) i - rho r B - D r)

where D is the backward age difference and B the quadrature of i against
the mixing density at the current time.  The reaction terms are computed
once and reused across the three updates, so they cancel exactly in the
sum s+i+r and conservation holds to roundoff.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .demography import stationary_mixing, survival
from .errors import ParameterError, ShapeError, TimeStepError
from .grids import GridSpec, QuadratureGrid
from .parameters import ParameterSet, as_parameter_set
from .profiles import as_profile

#: abort threshold for the positivity monitor (well below the invariant's
#: roundoff allowance, so only genuine blow-ups trip it)
_POSITIVITY_ABORT = -1e-10

_SUM_TOL = 1e-12
_AUTO_STORE_LIMIT = 4_000_000
_AUTO_STORE_ROWS = 256


@dataclass(frozen=True)
class TimeStepReport:
    ok: bool
    dt_max: float
    reasons: tuple


def stable_timestep(params, grid: GridSpec) -> TimeStepReport:
    """CFL and positivity gate for the explicit scheme.

    Requires dt < da, plus the worst-case (B = 1) positivity bounds
    dt (1/da + max(phi+gamma+rho)) <= 1 and dt (1/da + max beta) <= 1.
    ``dt_max`` is the largest step passing all three.
    """
    params = as_parameter_set(params)
    da, dt = grid.da, grid.dt
    reaction = (
        params.phi.max_value() + params.gamma.max_value() + params.rho.max_value()
    )
    infection = params.beta.max_value()
    bound_i = 1.0 / (1.0 / da + reaction)
    bound_s = 1.0 / (1.0 / da + infection)
    dt_max = min(np.nextafter(da, 0.0), bound_i, bound_s)
    reasons = []
    if not dt < da:
        reasons.append(f"dt = {dt:g} must be < da = {da:g}")
    if dt * (1.0 / da + reaction) > 1.0:
        reasons.append(f"positivity: dt (1/da + {reaction:g}) > 1")
    if dt * (1.0 / da + infection) > 1.0:
        reasons.append(f"positivity: dt (1/da + {infection:g}) > 1")
    return TimeStepReport(not reasons, dt_max, tuple(reasons))


def force_of_infection(i_row, p_row, grid: GridSpec) -> float:
    """Quadrature of i * p over age on the grid rows (Simpson, trapezoid
    fallback when the panel count is odd)."""
    i_row = np.asarray(i_row, dtype=float)
    p_row = np.asarray(p_row, dtype=float)
    if i_row.shape != p_row.shape:
        raise ShapeError("i and p rows must share a shape")
    quad = QuadratureGrid.uniform(grid.age_max, grid.n_age)
    return float(quad.integrate(i_row * p_row))


def step(row, B: float, params, grid: GridSpec):
    """One explicit update of (s, i, r) given the current pressure B.

    The boundary node k = 0 keeps (1, 0, 0); callers must have set it.
    """
    params = as_parameter_set(params)
    s, i, r = (np.asarray(x, dtype=float) for x in row)
    nodes = grid.age_nodes()
    if s.shape != nodes.shape:
        raise ShapeError("row length must match the age grid")
    rates = _node_rates(params, nodes)
    return _step_arrays(s, i, r, B, grid.dt, grid.da, *rates)


def _node_rates(params: ParameterSet, nodes: np.ndarray):
    beta = params.beta(nodes)
    exit_pressure = params.phi(nodes) + params.gamma(nodes)
    rho = params.rho(nodes)
    return beta, exit_pressure, rho


def _step_arrays(s, i, r, B, dt, da, beta, exit_pressure, rho):
    infection = beta[1:] * s[1:] * B
    recovery = exit_pressure[1:] * i[1:]
    relapse = rho[1:] * r[1:] * B
    s_new = np.empty_like(s)
    i_new = np.empty_like(i)
    r_new = np.empty_like(r)
    s_new[0], i_new[0], r_new[0] = 1.0, 0.0, 0.0
    s_new[1:] = s[1:] + dt * (-infection - (s[1:] - s[:-1]) / da)
    i_new[1:] = i[1:] + dt * (
        infection - recovery + relapse - (i[1:] - i[:-1]) / da
    )
    r_new[1:] = r[1:] + dt * (recovery - relapse - (r[1:] - r[:-1]) / da)
    return s_new, i_new, r_new


@dataclass(frozen=True)
class StateField:
    """(s, i, r) rows stored at the times in ``times``."""

    times: np.ndarray
    ages: np.ndarray
    s: np.ndarray
    i: np.ndarray
    r: np.ndarray


@dataclass(frozen=True)
class Trajectory:
    """Simulation output.

    ``b_series`` holds the pressure at every time node regardless of row
    storage.  ``conservation_max`` and ``minimum_value`` are running
    monitors over every node the solver visited.
    """

    grid: GridSpec
    mixing: str
    field: StateField
    b_series: np.ndarray
    conservation_max: float
    minimum_value: float

    @property
    def final_row(self):
        return self.field.s[-1], self.field.i[-1], self.field.r[-1]


def _initial_rows(initial, nodes):
    s0, i0, r0 = initial
    rows = []
    for x in (s0, i0, r0):
        if np.isscalar(x):
            rows.append(np.full(nodes.shape, float(x)))
        elif callable(x):
            rows.append(np.asarray(x(nodes), dtype=float))
        else:
            arr = np.asarray(x, dtype=float)
            if arr.shape != nodes.shape:
                raise ShapeError("initial rows must match the age grid")
            rows.append(arr.copy())
    return rows


def simulate(
    params,
    initial,
    grid: GridSpec,
    mixing: str = "stationary",
    n0=None,
    store: str | int = "auto",
) -> Trajectory:
    """Run the upwind scheme over the full (t, a) rectangle.

    initial: (s0, i0, r0) as arrays on the age nodes, profiles, or scalars;
        must sum to 1 pointwise with i0(0) = r0(0) = 0.
    mixing: "stationary" weights the pressure with the stationary density
        (valid when the population starts at demographic steady state);
        "full" rebuilds the density every step from the total population
        carried along characteristics (n0 defaults to birth_rate * survival).
    store: "auto", "full", or a stride int controlling rows kept
        (the final row and every monitor are always exact).
    """
    params = as_parameter_set(params)
    gate = stable_timestep(params, grid)
    if not gate.ok:
        raise TimeStepError(
            "; ".join(gate.reasons) + f"; largest safe dt = {gate.dt_max:.6g}",
            suggested_dt=gate.dt_max,
        )
    if mixing not in ("stationary", "full"):
        raise ParameterError("mixing must be 'stationary' or 'full'")

    nodes = grid.age_nodes()
    s, i, r = _initial_rows(initial, nodes)
    total = s + i + r
    if np.max(np.abs(total - 1.0)) > _SUM_TOL:
        raise ParameterError("initial fractions must sum to 1 (tolerance 1e-12)")
    if i[0] != 0.0 or r[0] != 0.0:
        raise ParameterError("inflow boundary requires i0(0) = r0(0) = 0")
    if min(s.min(), i.min(), r.min()) < -1e-13:
        raise ParameterError("initial fractions must be nonnegative")
    s, i, r = (np.maximum(x, 0.0) for x in (s, i, r))
    s[0] = 1.0

    quad = QuadratureGrid.uniform(grid.age_max, grid.n_age)
    weights = quad.weights
    kernel = stationary_mixing(params, quad)
    if mixing == "full":
        if n0 is None:
            n0_fn = lambda shift: params.birth_rate * np.exp(  # noqa: E731
                -params.mu.cumulative(shift)
            )
        else:
            n0_fn = as_profile(n0)
        contact = params.contact(nodes)
        cum_mu = params.mu.cumulative(nodes)

    rates = _node_rates(params, nodes)
    dt, da = grid.dt, grid.da

    n_time = grid.n_time
    if store == "full":
        stride = 1
    elif store == "auto":
        full_size = (n_time + 1) * (grid.n_age + 1)
        stride = 1 if full_size <= _AUTO_STORE_LIMIT else int(
            np.ceil(n_time / _AUTO_STORE_ROWS)
        )
    else:
        stride = max(1, int(store))

    kept_j = sorted(set(range(0, n_time + 1, stride)) | {n_time})
    kept_pos = {j: idx for idx, j in enumerate(kept_j)}
    n_nodes = nodes.size
    out_s = np.empty((len(kept_j), n_nodes))
    out_i = np.empty_like(out_s)
    out_r = np.empty_like(out_s)
    b_series = np.empty(n_time + 1)

    conservation = 0.0
    minimum = np.inf
    time_nodes = grid.time_nodes()
    for j in range(n_time + 1):
        t = time_nodes[j]
        if mixing == "stationary":
            p_row = kernel.density
        else:
            shift = np.maximum(nodes - t, 0.0)
            carried = n0_fn(shift) * np.exp(-(cum_mu - params.mu.cumulative(shift)))
            n_row = np.where(t >= nodes, params.birth_rate * kernel.survival, carried)
            weighted = contact * n_row
            norm = float(weights @ weighted)
            if not norm > 0:
                raise ParameterError("mixing normalization vanished mid-run")
            p_row = weighted / norm
        B = float(weights @ (i * p_row))
        b_series[j] = B

        conservation = max(conservation, float(np.max(np.abs(s + i + r - 1.0))))
        row_min = float(min(s.min(), i.min(), r.min()))
        minimum = min(minimum, row_min)
        if row_min < _POSITIVITY_ABORT:
            field = min((s.min(), "s"), (i.min(), "i"), (r.min(), "r"))[1]
            k = int(np.argmin({"s": s, "i": i, "r": r}[field]))
            raise TimeStepError(
                f"positivity lost at step {j}, age node {k} ({field} = {row_min:g}); "
                f"largest safe dt = {gate.dt_max:.6g}",
                suggested_dt=gate.dt_max,
                node=(j, k),
            )
        if j in kept_pos:
            idx = kept_pos[j]
            out_s[idx], out_i[idx], out_r[idx] = s, i, r
        if j == n_time:
            break
        s, i, r = _step_arrays(s, i, r, B, dt, da, *rates)

    field = StateField(
        times=time_nodes[np.asarray(kept_j)],
        ages=nodes,
        s=out_s,
        i=out_i,
        r=out_r,
    )
    return Trajectory(
        grid=grid,
        mixing=mixing,
        field=field,
        b_series=b_series,
        conservation_max=conservation,
        minimum_value=float(minimum),
    )
