"""Discretization grids.

``GridSpec`` is the uniform (t, a) rectangle used by the transport solver.
``QuadratureGrid`` is a 1-d age grid carrying composite-Simpson weights; it
can be uniform or graded (dyadic blocks refining towards age 0, which is
where the steady-state boundary layers live).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError, ShapeError


@dataclass(frozen=True)
class GridSpec:
    """Uniform space-time grid on [0, time_max] x [0, age_max].

    The CFL requirement dt < da is enforced by ``transport.stable_timestep``
    (and by ``simulate``), not at construction, so that offending grids can
    still be built and diagnosed.
    """

    age_max: float
    time_max: float
    n_age: int
    n_time: int

    def __post_init__(self):
        if self.age_max <= 0 or self.time_max <= 0:
            raise ParameterError("grid extents must be positive")
        if self.n_age < 2 or self.n_time < 2:
            raise ParameterError("grid needs at least 2 subintervals per axis")

    @property
    def da(self) -> float:
        return self.age_max / self.n_age

    @property
    def dt(self) -> float:
        return self.time_max / self.n_time

    def age_nodes(self) -> np.ndarray:
        return np.linspace(0.0, self.age_max, self.n_age + 1)

    def time_nodes(self) -> np.ndarray:
        return np.linspace(0.0, self.time_max, self.n_time + 1)


def _simpson_weights(n_panels: int, h: float) -> np.ndarray:
    """Weights of the composite Simpson rule on n_panels uniform panels.

    Falls back to the composite trapezoid rule when n_panels is odd.
    """
    w = np.full(n_panels + 1, h)
    if n_panels % 2 == 0:
        w *= 1.0 / 3.0
        w[1:-1:2] *= 4.0
        w[2:-1:2] *= 2.0
    else:
        w[0] *= 0.5
        w[-1] *= 0.5
    return w


@dataclass(frozen=True)
class QuadratureGrid:
    """Age nodes plus matching quadrature weights.

    ``blocks`` lists (start_index, n_panels) per uniform block; consecutive
    blocks share their boundary node.  ``integrate`` is a single dot
    product, exact for cubics on even-panel blocks.
    """

    nodes: np.ndarray
    weights: np.ndarray
    blocks: tuple = field(default=())

    @classmethod
    def uniform(cls, length: float, n_panels: int) -> "QuadratureGrid":
        if length <= 0 or n_panels < 2:
            raise ParameterError("quadrature grid needs length > 0, panels >= 2")
        nodes = np.linspace(0.0, length, n_panels + 1)
        w = _simpson_weights(n_panels, length / n_panels)
        return cls(nodes, w, ((0, n_panels),))

    @classmethod
    def graded(
        cls,
        length: float,
        finest: float,
        panels_per_block: int = 128,
        knots=(),
    ):
        """Dyadic blocks [0, A/2^J], [A/2^J, A/2^(J-1)], ..., [A/2, A].

        J is chosen so the innermost block is no wider than ``finest``;
        every block gets ``panels_per_block`` uniform Simpson panels.
        ``knots`` are extra interior block edges (profile kinks land on
        cell boundaries there, preserving the 4th-order behaviour of the
        rule and of the exponential sweep).
        """
        if length <= 0 or finest <= 0:
            raise ParameterError("length and finest scale must be positive")
        if panels_per_block % 2 or panels_per_block < 2:
            raise ParameterError("panels_per_block must be even and >= 2")
        depth = max(1, math.ceil(math.log2(length / min(finest, length))))
        edges = [0.0] + [length * 2.0 ** (-j) for j in range(depth, -1, -1)]
        interior = [k for k in knots if 0.0 < k < length]
        edges = np.unique(np.concatenate([edges, interior]))
        # drop near-duplicate edges introduced by knots hitting dyadic points
        keep = np.concatenate([[True], np.diff(edges) > 1e-9 * length])
        edges = edges[keep]
        edges[0], edges[-1] = 0.0, length
        nodes = [np.array([0.0])]
        weights = np.zeros(1)
        blocks = []
        for lo, hi in zip(edges[:-1], edges[1:]):
            h = (hi - lo) / panels_per_block
            blocks.append((len(weights) - 1, panels_per_block))
            block_nodes = lo + h * np.arange(1, panels_per_block + 1)
            nodes.append(block_nodes)
            w = _simpson_weights(panels_per_block, h)
            weights[-1] += w[0]
            weights = np.concatenate([weights, w[1:]])
        return cls(np.concatenate(nodes), weights, tuple(blocks))

    @property
    def length(self) -> float:
        return float(self.nodes[-1])

    def integrate(self, values: np.ndarray) -> float:
        values = np.asarray(values)
        if values.shape[-1] != self.nodes.size:
            raise ShapeError(
                f"expected {self.nodes.size} samples, got {values.shape[-1]}"
            )
        return values @ self.weights

    def refined(self) -> "QuadratureGrid":
        """Same block layout with every panel split in two."""
        nodes = [np.array([self.nodes[0]])]
        weights = np.zeros(1)
        blocks = []
        for start, n_panels in self.blocks:
            seg = self.nodes[start : start + n_panels + 1]
            lo, hi = seg[0], seg[-1]
            n2 = 2 * n_panels
            h = (hi - lo) / n2
            blocks.append((len(weights) - 1, n2))
            nodes.append(lo + h * np.arange(1, n2 + 1))
            w = _simpson_weights(n2, h)
            weights[-1] += w[0]
            weights = np.concatenate([weights, w[1:]])
        return QuadratureGrid(np.concatenate(nodes), weights, tuple(blocks))

    def cell_stages(self):
        """Ages at the 4 cubic stage points {0, 1/3, 2/3, 1} of every cell.

        Returns an (n_cells, 4) array; consecutive cells repeat their shared
        endpoint.
        """
        left = self.nodes[:-1]
        h = np.diff(self.nodes)
        offsets = np.array([0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0])
        return left[:, None] + h[:, None] * offsets[None, :]
