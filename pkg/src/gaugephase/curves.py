"""Discretized state curves, frame evolutions, and the three phases.

A smooth curve of unit vectors psi(s), s in [s_1, s_2], carries

    total     = arg (psi(s_1), psi(s_2))            -- undefined when the
                                                       endpoints are orthogonal
    dynamical = Im integral (psi, dpsi/ds) ds
    geometric = total - dynamical, reduced to (-pi, pi]

The geometric part is invariant under both reparametrization and local
phase changes psi(s) -> e^{i alpha(s)} psi(s); it is the quantity all the
invariants in this package ultimately compute.

Two quadratures are provided for the dynamical integral.  The default,

    "pancharatnam":  sum_i arg (psi_i, psi_{i+1}),

telescopes exactly under local phase changes, so the discretized
geometric phase is *exactly* gauge invariant at finite N, not merely up
to discretization error.  The alternative "trapezoid" rule

    Im sum_i (psi_i, psi_{i+1} - psi_i)

is first-order in the overlap but shares the key structural property
that neither rule references the grid values: both are exactly
reparametrization invariant.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .core import (
    DEFAULT_TOLERANCES,
    DimensionMismatchError,
    GridMismatchError,
    NotUnitaryError,
    Tolerances,
    Undefined,
    UnitaryMatrix,
    UnitVector,
    principal_arg,
    reduce_phase,
)

__all__ = [
    "QUADRATURES",
    "StateCurve",
    "FrameEvolution",
    "PhaseReport",
    "total_phase",
    "dynamical_phase",
    "geometric_phase",
    "phase_report",
    "frame_phase_bundle",
    "endpoint_overlap_matrix",
]

QUADRATURES = ("pancharatnam", "trapezoid")

ORTHOGONAL_ENDPOINTS = "orthogonal_endpoints"


def _check_grid(grid) -> np.ndarray:
    g = np.asarray(grid, dtype=np.float64)
    if g.ndim != 1 or g.size < 1:
        raise GridMismatchError(f"grid must be a non-empty 1-d array, got shape {g.shape}")
    if not np.all(np.isfinite(g)):
        raise ValueError("grid contains non-finite values")
    if g.size > 1 and not np.all(np.diff(g) > 0):
        raise ValueError("grid must be strictly increasing")
    g = g.copy()
    g.setflags(write=False)
    return g


def _check_quadrature(quadrature: str) -> None:
    if quadrature not in QUADRATURES:
        raise ValueError(f"unknown quadrature {quadrature!r}; choose from {QUADRATURES}")


class StateCurve:
    """A discretized curve of unit vectors on a strictly increasing grid.

    ``states`` is an (N, n) complex array, one unit row per grid point.
    Construction enforces the resolution guard: every successive overlap
    modulus must exceed ``min_overlap`` (default 0.9).  An under-resolved
    curve fails loudly here instead of silently corrupting phase sums
    downstream.
    """

    __slots__ = ("_grid", "_states", "_min_overlap")

    def __init__(self, grid, states, *, min_overlap: float = 0.9,
                 tol: Tolerances = DEFAULT_TOLERANCES):
        g = _check_grid(grid)
        arr = np.asarray(states, dtype=np.complex128)
        if arr.ndim != 2:
            raise DimensionMismatchError(f"states must be (N, n), got shape {arr.shape}")
        if arr.shape[0] != g.size:
            raise GridMismatchError(
                f"{arr.shape[0]} states on a grid of {g.size} points"
            )
        if arr.shape[1] < 1:
            raise DimensionMismatchError("states need at least one component")
        if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
            raise ValueError("states contain non-finite entries")
        norms = np.linalg.norm(arr, axis=1)
        worst = float(np.abs(norms - 1.0).max())
        if worst > tol.tol_norm:
            raise ValueError(f"state norms deviate from 1 by up to {worst:.3e}")
        if not 0.0 <= min_overlap < 1.0:
            raise ValueError(f"min_overlap must lie in [0, 1), got {min_overlap}")
        if arr.shape[0] > 1:
            o = np.abs(np.einsum("ij,ij->i", arr[:-1].conj(), arr[1:]))
            smallest = float(o.min())
            if smallest <= min_overlap:
                raise ValueError(
                    f"curve under-resolved: successive overlap modulus {smallest:.6f} "
                    f"<= {min_overlap}; refine the grid"
                )
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "_grid", g)
        object.__setattr__(self, "_states", arr)
        object.__setattr__(self, "_min_overlap", float(min_overlap))

    @property
    def grid(self) -> np.ndarray:
        return self._grid

    @property
    def states(self) -> np.ndarray:
        return self._states

    @property
    def num_points(self) -> int:
        return self._grid.size

    @property
    def dim(self) -> int:
        return self._states.shape[1]

    @property
    def min_overlap(self) -> float:
        return self._min_overlap

    def state(self, i: int) -> UnitVector:
        """Grid-point state by 0-based position."""
        return UnitVector(self._states[i], tol=1e-9)

    def __repr__(self) -> str:
        return f"StateCurve(points={self.num_points}, dim={self.dim})"

    def __setattr__(self, name, value):
        raise AttributeError("StateCurve is immutable")


class FrameEvolution:
    """A discretized curve of orthonormal frames (one unitary per point).

    Column j of frame i is the j-th basis state at grid point i; the
    j-th column traced over the grid is the state curve C_j the
    off-diagonal machinery works with.
    """

    __slots__ = ("_grid", "_frames")

    def __init__(self, grid, frames, *, tol: Tolerances = DEFAULT_TOLERANCES):
        g = _check_grid(grid)
        if isinstance(frames, np.ndarray):
            arr = np.asarray(frames, dtype=np.complex128)
        else:
            arr = np.stack([
                f.data if isinstance(f, UnitaryMatrix) else np.asarray(f, dtype=np.complex128)
                for f in frames
            ])
        if arr.ndim != 3 or arr.shape[1] != arr.shape[2]:
            raise DimensionMismatchError(f"frames must be (N, n, n), got shape {arr.shape}")
        if arr.shape[0] != g.size:
            raise GridMismatchError(f"{arr.shape[0]} frames on a grid of {g.size} points")
        if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
            raise ValueError("frames contain non-finite entries")
        eye = np.eye(arr.shape[1])
        dev = float(np.abs(
            np.einsum("nji,njk->nik", arr.conj(), arr) - eye[None, :, :]
        ).max())
        if dev > tol.tol_unitary:
            raise NotUnitaryError(dev, tol.tol_unitary)
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "_grid", g)
        object.__setattr__(self, "_frames", arr)

    @property
    def grid(self) -> np.ndarray:
        return self._grid

    @property
    def frames(self) -> np.ndarray:
        return self._frames

    @property
    def num_points(self) -> int:
        return self._grid.size

    @property
    def dim(self) -> int:
        return self._frames.shape[1]

    def frame(self, i: int) -> UnitaryMatrix:
        """Frame by 0-based grid position."""
        return UnitaryMatrix(self._frames[i], tol=1e-8)

    def column_curve(self, j: int, *, min_overlap: float = 0.9,
                     tol: Tolerances = DEFAULT_TOLERANCES) -> StateCurve:
        """The state curve traced by basis level j (1-based)."""
        if not 1 <= j <= self.dim:
            raise IndexError(f"level {j} outside 1..{self.dim}")
        relaxed = replace(tol, tol_norm=max(tol.tol_norm, 2.0 * tol.tol_unitary))
        return StateCurve(self._grid, self._frames[:, :, j - 1],
                          min_overlap=min_overlap, tol=relaxed)

    def __repr__(self) -> str:
        return f"FrameEvolution(points={self.num_points}, dim={self.dim})"

    def __setattr__(self, name, value):
        raise AttributeError("FrameEvolution is immutable")


# ---------------------------------------------------------------------------
# Phase functionals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PhaseReport:
    """Phases of one curve.  Undefined values are values, not errors."""

    total: float | Undefined
    dynamical: float
    geometric: float | Undefined
    endpoint_overlap_modulus: float
    quadrature: str


def total_phase(curve: StateCurve, *,
                tol: Tolerances = DEFAULT_TOLERANCES) -> float | Undefined:
    """arg of the endpoint overlap, or Undefined for orthogonal endpoints."""
    overlap = complex(np.vdot(curve.states[0], curve.states[-1]))
    if abs(overlap) <= tol.tol_generic:
        return Undefined(ORTHOGONAL_ENDPOINTS)
    return principal_arg(overlap, tol=tol)


def dynamical_phase(curve: StateCurve, *, quadrature: str = "pancharatnam") -> float:
    """Discretized Im integral (psi, dpsi); see the module docstring.

    A single-point curve has zero dynamical phase.
    """
    _check_quadrature(quadrature)
    s = curve.states
    if s.shape[0] < 2:
        return 0.0
    overlaps = np.einsum("ij,ij->i", s[:-1].conj(), s[1:])
    if quadrature == "pancharatnam":
        return float(np.angle(overlaps).sum())
    return float(np.einsum("ij,ij->i", s[:-1].conj(), s[1:] - s[:-1]).imag.sum())


def geometric_phase(curve: StateCurve, *, quadrature: str = "pancharatnam",
                    tol: Tolerances = DEFAULT_TOLERANCES) -> float | Undefined:
    """total - dynamical, reduced to (-pi, pi]; Undefined follows total."""
    tot = total_phase(curve, tol=tol)
    if isinstance(tot, Undefined):
        return tot
    return reduce_phase(tot - dynamical_phase(curve, quadrature=quadrature))


def phase_report(curve: StateCurve, *, quadrature: str = "pancharatnam",
                 tol: Tolerances = DEFAULT_TOLERANCES) -> PhaseReport:
    """All three phases plus the endpoint overlap modulus, in one record."""
    _check_quadrature(quadrature)
    overlap = complex(np.vdot(curve.states[0], curve.states[-1]))
    tot = total_phase(curve, tol=tol)
    dyn = dynamical_phase(curve, quadrature=quadrature)
    geo = tot if isinstance(tot, Undefined) else reduce_phase(tot - dyn)
    return PhaseReport(
        total=tot,
        dynamical=dyn,
        geometric=geo,
        endpoint_overlap_modulus=abs(overlap),
        quadrature=quadrature,
    )


def frame_phase_bundle(evolution: FrameEvolution, *, quadrature: str = "pancharatnam",
                       min_overlap: float = 0.9,
                       tol: Tolerances = DEFAULT_TOLERANCES) -> list[PhaseReport]:
    """Phase reports of every basis-level curve, level 1 first.

    A level whose endpoint overlap a_{jj} vanishes reports total (and
    geometric) as Undefined — exactly the situation the off-diagonal
    factors exist to handle.
    """
    return [
        phase_report(evolution.column_curve(j, min_overlap=min_overlap, tol=tol),
                     quadrature=quadrature, tol=tol)
        for j in range(1, evolution.dim + 1)
    ]


def endpoint_overlap_matrix(evolution: FrameEvolution, *,
                            tol: Tolerances = DEFAULT_TOLERANCES) -> UnitaryMatrix:
    """Overlap matrix a_{jk} = (psi_j(s_1), psi_k(s_2)) of the endpoints.

    Equals F(s_1)^dagger F(s_2); unitary because both frames are.
    """
    first = evolution.frames[0]
    last = evolution.frames[-1]
    return UnitaryMatrix(first.conj().T @ last, tol=tol.tol_unitary)
