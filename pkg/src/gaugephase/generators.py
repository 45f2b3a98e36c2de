"""Seeded sources of test data: Haar unitaries, eigenframes, swap evolutions.

Everything here is deterministic given its seed (numpy's default_rng),
which is what makes the verification suites and the CLI reports
reproducible byte-for-byte.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .canonical import decompose
from .core import (
    DEFAULT_TOLERANCES,
    DegenerateSpectrumError,
    DimensionMismatchError,
    NonGenericMatrixError,
    Tolerances,
    UnitaryMatrix,
    UnitVector,
)
from .curves import FrameEvolution

__all__ = [
    "SmoothCoefficient",
    "HermitianPath",
    "random_generic_unitary",
    "random_unit_vector",
    "random_hermitian_path",
    "random_smooth_phases",
    "frame_evolution_from_path",
    "engineered_swap_evolution",
]

logger = logging.getLogger(__name__)


def _as_rng(seed_or_rng) -> np.random.Generator:
    if isinstance(seed_or_rng, np.random.Generator):
        return seed_or_rng
    return np.random.default_rng(seed_or_rng)


# ---------------------------------------------------------------------------
# Haar sampling
# ---------------------------------------------------------------------------

def _haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """QR of a complex Ginibre matrix, with the R-diagonal phases fixed.

    Dividing out the phases of R's diagonal makes the distribution exactly
    Haar rather than QR-convention dependent.
    """
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d)).conj()


def random_generic_unitary(n: int, seed: int, *,
                           tol: Tolerances = DEFAULT_TOLERANCES) -> UnitaryMatrix:
    """Haar-random n x n unitary, conditioned on canonical genericity.

    A draw whose canonical factorization would hit the non-generic
    stratum is rejected and redrawn (the rejection is logged; at the
    default gate this is a measure-~1e-8 event, so in practice the first
    draw is returned).  Deterministic for fixed (n, seed) including any
    rejections.
    """
    if n < 2:
        raise DimensionMismatchError(f"need n >= 2, got {n}")
    rng = np.random.default_rng(seed)
    while True:
        candidate = UnitaryMatrix(_haar_unitary(n, rng), tol=tol.tol_unitary)
        try:
            decompose(candidate, tol=tol)
        except NonGenericMatrixError as err:
            logger.debug(
                "rejected non-generic draw at n=%d seed=%d (level %d, |zeta_1|=%.3e)",
                n, seed, err.level, err.magnitude,
            )
            continue
        return candidate


def random_unit_vector(n: int, seed_or_rng, *, min_leading: float = 0.0) -> UnitVector:
    """Uniform random unit vector; optionally resample until
    the leading component modulus exceeds ``min_leading``."""
    if n < 1:
        raise DimensionMismatchError(f"need n >= 1, got {n}")
    rng = _as_rng(seed_or_rng)
    while True:
        v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        v /= np.linalg.norm(v)
        if abs(v[0]) > min_leading:
            return UnitVector(v)


def random_smooth_phases(grid, seed_or_rng, *, columns: int | None = None,
                         harmonics: int = 3, amplitude: float = 1.0) -> np.ndarray:
    """Smooth random phase profiles over a grid: a low-order trig series.

    Returns shape (N,) when ``columns`` is None, else (N, columns) with
    independent profiles per column.  Used to drive gauge-invariance
    checks with something rougher than a constant but still smooth.
    """
    g = np.asarray(grid, dtype=np.float64)
    rng = _as_rng(seed_or_rng)
    span = g[-1] - g[0] if g.size > 1 else 1.0
    u = (g - g[0]) / span if span != 0 else np.zeros_like(g)
    cols = 1 if columns is None else int(columns)
    out = np.zeros((g.size, cols))
    for c in range(cols):
        alpha = np.full(g.size, rng.uniform(-amplitude, amplitude))
        for k in range(1, harmonics + 1):
            a, b = rng.uniform(-amplitude, amplitude, 2)
            alpha = alpha + (a * np.cos(np.pi * k * u) + b * np.sin(np.pi * k * u)) / k
        out[:, c] = alpha
    return out[:, 0] if columns is None else out


# ---------------------------------------------------------------------------
# Smooth Hermitian paths and their eigenframes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SmoothCoefficient:
    """c(s) = sum_k poly[k] s^k + sum_k (cos_amps[k] cos((k+1) omega s)
    + sin_amps[k] sin((k+1) omega s))."""

    poly: tuple[float, ...] = ()
    cos_amps: tuple[float, ...] = ()
    sin_amps: tuple[float, ...] = ()
    omega: float = 1.0

    def __call__(self, s: float) -> float:
        value = 0.0
        for k, c in enumerate(self.poly):
            value += c * s ** k
        for k, a in enumerate(self.cos_amps):
            value += a * math.cos((k + 1) * self.omega * s)
        for k, b in enumerate(self.sin_amps):
            value += b * math.sin((k + 1) * self.omega * s)
        return value


@dataclass(frozen=True)
class HermitianPath:
    """A smooth family H(s) = sum_i c_i(s) B_i of Hermitian matrices.

    The basis matrices are validated Hermitian once at construction;
    real coefficients then keep every sample exactly Hermitian.
    """

    basis: tuple[np.ndarray, ...]
    coefficients: tuple[SmoothCoefficient, ...]
    domain: tuple[float, float]

    def __post_init__(self) -> None:
        if len(self.basis) != len(self.coefficients) or not self.basis:
            raise ValueError("need one coefficient per basis matrix, at least one term")
        frozen = []
        n = None
        for i, b in enumerate(self.basis):
            arr = np.asarray(b, dtype=np.complex128)
            if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
                raise DimensionMismatchError(f"basis[{i}] is not square: {arr.shape}")
            if n is None:
                n = arr.shape[0]
            elif arr.shape[0] != n:
                raise DimensionMismatchError("basis matrices of mixed dimension")
            if float(np.abs(arr - arr.conj().T).max()) > 1e-12:
                raise ValueError(f"basis[{i}] is not Hermitian")
            arr = arr.copy()
            arr.setflags(write=False)
            frozen.append(arr)
        object.__setattr__(self, "basis", tuple(frozen))
        lo, hi = float(self.domain[0]), float(self.domain[1])
        if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
            raise ValueError(f"domain must be a finite interval, got {self.domain}")
        object.__setattr__(self, "domain", (lo, hi))

    @property
    def dim(self) -> int:
        return self.basis[0].shape[0]

    def sample(self, s: float) -> np.ndarray:
        lo, hi = self.domain
        slack = 1e-9 * (hi - lo)
        if not lo - slack <= s <= hi + slack:
            raise ValueError(f"s = {s!r} outside domain [{lo}, {hi}]")
        out = np.zeros((self.dim, self.dim), dtype=np.complex128)
        for c, b in zip(self.coefficients, self.basis):
            out += c(s) * b
        return out


def random_hermitian_path(n: int, seed: int, *, domain: tuple[float, float] = (0.0, 1.0),
                          base_gap: float = 1.0, strength: float = 0.6,
                          harmonics: int = 2) -> HermitianPath:
    """A seeded smooth path with a gapped diagonal backbone.

    The constant term diag(0, base_gap, 2 base_gap, ...) keeps the
    spectrum generically non-degenerate; the trig terms (random Hermitian
    matrices, amplitudes ~ strength/k) stir the eigenframes enough that
    endpoint overlaps are generic.
    """
    if n < 2:
        raise DimensionMismatchError(f"need n >= 2, got {n}")
    rng = np.random.default_rng(seed)
    span = domain[1] - domain[0]
    omega = math.pi / span
    basis = [np.diag(np.arange(n, dtype=np.float64)) * base_gap]
    coeffs = [SmoothCoefficient(poly=(1.0,))]
    for k in range(1, harmonics + 1):
        for trig in ("cos", "sin"):
            z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            h = (z + z.conj().T) / (2.0 * math.sqrt(n))
            basis.append(h)
            amp = strength * float(rng.uniform(0.5, 1.0)) / k
            if trig == "cos":
                amps = tuple(amp if i == k - 1 else 0.0 for i in range(k))
                coeffs.append(SmoothCoefficient(cos_amps=amps, omega=omega))
            else:
                amps = tuple(amp if i == k - 1 else 0.0 for i in range(k))
                coeffs.append(SmoothCoefficient(sin_amps=amps, omega=omega))
    return HermitianPath(basis=tuple(basis), coefficients=tuple(coeffs), domain=domain)


def frame_evolution_from_path(path: HermitianPath, steps: int, *,
                              min_gap: float = 1e-6,
                              tol: Tolerances = DEFAULT_TOLERANCES) -> FrameEvolution:
    """Eigenframes of H(s) on a uniform grid, phase-aligned point to point.

    Eigenvectors come from eigh (ascending eigenvalues); each column of
    each successive frame is rephased so its overlap with the previous
    frame's column is real and positive, producing smooth basis curves.

    Raises
    ------
    DegenerateSpectrumError
        At the first grid point whose minimal eigengap is <= ``min_gap``;
        eigenframe continuation is ill-posed across a (near-)crossing.
    """
    if steps < 2:
        raise ValueError(f"need at least 2 steps, got {steps}")
    grid = np.linspace(path.domain[0], path.domain[1], steps)
    frames = np.empty((steps, path.dim, path.dim), dtype=np.complex128)
    previous = None
    for i, s in enumerate(grid):
        h = path.sample(float(s))
        w, v = np.linalg.eigh(h)
        gap = float(np.diff(w).min())
        if gap <= min_gap:
            raise DegenerateSpectrumError(float(s), gap)
        if previous is not None:
            overlaps = np.einsum("ij,ij->j", previous.conj(), v)
            moduli = np.abs(overlaps)
            if float(moduli.min()) <= 0.5:
                raise ValueError(
                    f"eigenframe continuation under-resolved near s = {float(s)!r} "
                    f"(column overlap {float(moduli.min()):.3f}); increase steps"
                )
            v = v * (overlaps / moduli).conj()[None, :]
        frames[i] = v
        previous = v
    return FrameEvolution(grid, frames, tol=tol)


def engineered_swap_evolution(n: int, j: int, k: int, steps: int) -> FrameEvolution:
    """Planar rotation through pi/2 in the (j, k) coordinate plane.

    Level j ends on e_k and level k on -e_j while every other level sits
    still.  All successive overlaps are real and positive, so both
    rotating levels have exactly zero dynamical phase, orthogonal
    endpoints (diagonal overlaps vanish), and the cross overlaps are
    a_{jk} = -1, a_{kj} = +1: the canonical source of a defined
    off-diagonal pair factor where the diagonal phases are undefined.
    """
    if not (1 <= j < k <= n):
        raise ValueError(f"need 1 <= j < k <= n, got j={j}, k={k}, n={n}")
    if steps < 2:
        raise ValueError(f"need at least 2 steps, got {steps}")
    grid = np.linspace(0.0, math.pi / 2.0, steps)
    frames = np.zeros((steps, n, n), dtype=np.complex128)
    frames[:] = np.eye(n)
    c, s = np.cos(grid), np.sin(grid)
    frames[:, j - 1, j - 1] = c
    frames[:, k - 1, j - 1] = s
    frames[:, j - 1, k - 1] = -s
    frames[:, k - 1, k - 1] = c
    return FrameEvolution(grid, frames)
