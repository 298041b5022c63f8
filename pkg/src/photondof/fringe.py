"""Phase sweeps through a projection network and harmonic visibility extraction."""

import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import GridError
from .optics import PolarizationPhase, coincidence_probability
from .states import KValue

DEFAULT_POINTS = 64
GRID_TOL = 1e-12


def visibility_prediction(k):
    """Four-photon fringe visibility ``3 (1 + 2K) / (7 + 2K)``."""
    k = KValue(k)
    return 3.0 * (1.0 + 2.0 * k) / (7.0 + 2.0 * k)


def uniform_grid(points=DEFAULT_POINTS):
    return 2.0 * np.pi * np.arange(points) / points


def check_grid(grid, fundamental):
    grid = np.asarray(grid, dtype=float)
    m = grid.size
    if m < 4 * fundamental:
        raise GridError(f"{m} grid points cannot resolve harmonic {fundamental}; need at least {4 * fundamental}")
    if not np.allclose(grid, uniform_grid(m), rtol=0.0, atol=GRID_TOL):
        raise GridError("phase grid must be uniform on [0, 2 pi) starting at 0")
    return grid


def harmonic_projection(grid, rates, n):
    """``(a, b, c)`` for ``rates ~ a - b cos(n phi) - c sin(n phi)`` on a uniform grid."""
    grid = np.asarray(grid, dtype=float)
    rates = np.asarray(rates, dtype=float)
    m = grid.size
    a = float(rates.sum() / m)
    b = float(-2.0 * np.dot(rates, np.cos(n * grid)) / m)
    c = float(-2.0 * np.dot(rates, np.sin(n * grid)) / m)
    return a, b, c


@dataclass(frozen=True)
class FringeResult:
    phase_grid: tuple
    rates: tuple
    fundamental: int
    constant_term: float
    cosine_amplitude: float
    sine_amplitude: float

    @property
    def visibility(self):
        if self.constant_term <= 0.0:
            return 0.0
        return math.hypot(self.cosine_amplitude, self.sine_amplitude) / self.constant_term

    def model(self):
        g = np.asarray(self.phase_grid)
        n = self.fundamental
        return self.constant_term - self.cosine_amplitude * np.cos(n * g) - self.sine_amplitude * np.sin(n * g)

    def residual(self):
        """Largest deviation of the rates from the single-harmonic model."""
        return float(np.max(np.abs(np.asarray(self.rates) - self.model())))

    def to_csv(self):
        buf = io.StringIO()
        buf.write("phi,rate\n")
        for phi, r in zip(self.phase_grid, self.rates):
            buf.write(f"{phi:.12g},{r:.12g}\n")
        return buf.getvalue()

    def to_dict(self):
        return {
            "fundamental": self.fundamental,
            "visibility": _g12(self.visibility),
            "constant_term": _g12(self.constant_term),
            "cosine_amplitude": _g12(self.cosine_amplitude),
            "sine_amplitude": _g12(self.sine_amplitude),
            "phi": [_g12(x) for x in self.phase_grid],
            "rate": [_g12(x) for x in self.rates],
        }


def _g12(x):
    return float(f"{x:.12g}") + 0.0


def fringe_sweep(state, network, layout, grid=None, fundamental=None, workers=1):
    """Coincidence rate versus a collective H/V phase placed before ``network``.

    The phase element sits in front of every other element and acts on all
    arms. ``fundamental`` defaults to the photon number. With ``workers > 1``
    grid points are evaluated on a thread pool; results keep grid order.
    """
    n = state.photon_number if fundamental is None else int(fundamental)
    grid = check_grid(uniform_grid() if grid is None else grid, n)

    def rate(phi):
        return coincidence_probability(state, network.prepend(PolarizationPhase(float(phi))), layout)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rates = list(pool.map(rate, grid))
    else:
        rates = [rate(phi) for phi in grid]
    a, b, c = harmonic_projection(grid, rates, n)
    return FringeResult(tuple(float(x) for x in grid), tuple(rates), n, a, b, c)
