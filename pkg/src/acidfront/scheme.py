"""Finite-volume spatial operators and the semi-implicit time stepper.

Diffusion terms are discretized in flux form: the flux through an interior
interface is an averaged interface coefficient times the difference of the
adjacent cell values over the center-to-center distance, and the exterior
fluxes of the first and last cell are zero (Neumann closure).  Written this
way the operator telescopes, so totals are conserved exactly.

Time stepping is IMEX: reactions advance by one explicit Euler stage, then
each diffusing field is corrected by a backward-Euler diffusion solve.  The
tumour solve uses the coefficient (1 - u) built from the *already updated*
healthy field, so one step runs u -> v -> w.  Both implicit matrices are
tridiagonal and strictly diagonally dominant (the dominance gap is exactly
the 1 on the identity), so the direct solves are safe whenever the interface
coefficients stay nonnegative.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .core import ModelParameters, reaction_u, reaction_v, reaction_w
from .errors import InstabilityError, StabilityWarning
from .mesh import DiffusionProfile, Mesh, project_cell_averages

ARITHMETIC = "arithmetic"
HARMONIC = "harmonic"


@dataclass(frozen=True)
class SchemeOptions:
    """Time step and interface-averaging choices.

    The acid coefficient may be averaged arithmetically (width-weighted) or
    harmonically at cell interfaces.  The tumour coefficient (1 - u) is
    degenerate (it vanishes where u = 1), which rules the harmonic mean out
    for that equation, so its averaging is fixed to arithmetic.
    """

    dt: float
    interface_average_w: str = ARITHMETIC
    interface_average_v: str = ARITHMETIC

    def __post_init__(self):
        if not self.dt > 0.0:
            raise ValueError(f"time step must be positive, got {self.dt!r}")
        if self.interface_average_w not in (ARITHMETIC, HARMONIC):
            raise ValueError(
                f"unknown interface average {self.interface_average_w!r} "
                f"(choose {ARITHMETIC!r} or {HARMONIC!r})"
            )
        if self.interface_average_v != ARITHMETIC:
            raise ValueError(
                "tumour diffusion must use arithmetic interface averaging; "
                "its coefficient (1 - u) may vanish"
            )


@dataclass(frozen=True)
class SimulationState:
    """Cell-averaged fields u, v, w on a shared mesh at one time.

    Arrays are validated (matching length, all finite) and frozen on
    construction, so states can be shared across threads and kept as
    snapshots without defensive copies.
    """

    mesh: Mesh
    time: float
    u: np.ndarray
    v: np.ndarray
    w: np.ndarray

    def __post_init__(self):
        n = self.mesh.n_cells
        for name in ("u", "v", "w"):
            arr = np.array(getattr(self, name), dtype=float)
            if arr.shape != (n,):
                raise ValueError(
                    f"field {name} has shape {arr.shape}, expected ({n},)"
                )
            if not np.all(np.isfinite(arr)):
                raise ValueError(f"field {name} contains non-finite values")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)


@dataclass(frozen=True)
class TridiagonalSystem:
    """Tridiagonal linear system: sub/super are the N-1 off-diagonal bands."""

    sub: np.ndarray
    diag: np.ndarray
    super: np.ndarray
    rhs: np.ndarray

    def __post_init__(self):
        for name in ("sub", "diag", "super", "rhs"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        n = self.diag.size
        if self.sub.size != n - 1 or self.super.size != n - 1 or self.rhs.size != n:
            raise ValueError("inconsistent tridiagonal band lengths")

    def is_diagonally_dominant(self) -> bool:
        mag = np.zeros_like(self.diag)
        mag[1:] += np.abs(self.sub)
        mag[:-1] += np.abs(self.super)
        return bool(np.all(self.diag > 0.0) and np.all(self.diag > mag))

    def dense(self) -> np.ndarray:
        return (
            np.diag(self.diag)
            + np.diag(self.sub, -1)
            + np.diag(self.super, 1)
        )


def interface_diffusivity_arithmetic(aL, aR, dxL, dxR):
    """Width-weighted average of the two cell coefficients at an interface."""
    return (aL * dxL + aR * dxR) / (dxL + dxR)


def interface_diffusivity_harmonic(aL, aR):
    """Harmonic mean of the two cell coefficients; requires both positive."""
    if np.any(np.asarray(aL) <= 0.0) or np.any(np.asarray(aR) <= 0.0):
        raise ValueError("harmonic interface averaging needs strictly positive values")
    return 2.0 * aL * aR / (aL + aR)


def _interface_coefficients(cells: np.ndarray, mesh: Mesh, average: str) -> np.ndarray:
    """Coefficient at each of the N-1 interior interfaces."""
    if average == ARITHMETIC:
        return interface_diffusivity_arithmetic(
            cells[:-1], cells[1:], mesh.widths[:-1], mesh.widths[1:]
        )
    return interface_diffusivity_harmonic(cells[:-1], cells[1:])


def diffusion_operator(kappa: np.ndarray, mesh: Mesh):
    """Tridiagonal bands (sub, diag, super) of the flux-form operator L.

    (L q)_i = (F_{i+1/2} - F_{i-1/2}) / dx_i with interior fluxes
    F = kappa * (q_right - q_left) / (center distance) and zero exterior
    fluxes.  Interior row sums vanish identically, boundary rows lose one
    off-diagonal to the Neumann closure.
    """
    widths = mesh.widths
    gaps = 0.5 * (widths[:-1] + widths[1:])
    cond = kappa / gaps
    super_ = cond / widths[:-1]
    sub = cond / widths[1:]
    diag = np.zeros(mesh.n_cells)
    diag[:-1] -= super_
    diag[1:] -= sub
    return sub, diag, super_


def _assemble_backward_euler(
    kappa: np.ndarray, gamma: float, rhs: np.ndarray, mesh: Mesh
) -> TridiagonalSystem:
    """System (I - gamma*L) x = rhs for the diffusion operator above."""
    sub, diag, super_ = diffusion_operator(kappa, mesh)
    return TridiagonalSystem(
        sub=-gamma * sub,
        diag=1.0 - gamma * diag,
        super=-gamma * super_,
        rhs=np.asarray(rhs, dtype=float),
    )


def assemble_implicit_v(
    u_next: np.ndarray,
    v_expl: np.ndarray,
    p: ModelParameters,
    opts: SchemeOptions,
    m: Mesh,
) -> TridiagonalSystem:
    """Backward-Euler system for the tumour diffusion stage.

    Encodes (I - dt*D*L) v = v_expl where L carries the degenerate
    coefficient (1 - u) evaluated from the freshly updated healthy field.
    A negative interface coefficient means u exceeded 1 upstream, which
    would break the dominance of the matrix; that is reported rather than
    clamped.
    """
    kappa = _interface_coefficients(1.0 - np.asarray(u_next), m, opts.interface_average_v)
    if np.any(kappa < 0.0):
        raise InstabilityError(
            "negative tumour interface coefficient: healthy density exceeded 1"
        )
    return _assemble_backward_euler(kappa, p.D * opts.dt, v_expl, m)


def assemble_implicit_w(
    A_cells: np.ndarray,
    w_expl: np.ndarray,
    opts: SchemeOptions,
    m: Mesh,
) -> TridiagonalSystem:
    """Backward-Euler system (I - dt*L_A) w = w_expl for the acid stage."""
    kappa = _interface_coefficients(np.asarray(A_cells), m, opts.interface_average_w)
    return _assemble_backward_euler(kappa, opts.dt, w_expl, m)


def solve_tridiagonal(sys: TridiagonalSystem) -> np.ndarray:
    """Direct solve of a tridiagonal system (LAPACK gtsv: elimination with
    partial pivoting and back substitution).

    The assembled systems are strictly diagonally dominant so a zero pivot
    cannot occur for them; singular input is still caught and reported.
    """
    n = sys.diag.size
    ab = np.zeros((3, n))
    ab[0, 1:] = sys.super
    ab[1, :] = sys.diag
    ab[2, :-1] = sys.sub
    try:
        return scipy.linalg.solve_banded(
            (1, 1), ab, sys.rhs, overwrite_ab=True, check_finite=False
        )
    except np.linalg.LinAlgError as exc:
        raise InstabilityError(f"singular tridiagonal system: {exc}") from exc


def _flux_divergence(kappa: np.ndarray, q: np.ndarray, mesh: Mesh) -> np.ndarray:
    """Apply the flux-form diffusion operator with zero exterior fluxes."""
    gaps = 0.5 * (mesh.widths[:-1] + mesh.widths[1:])
    flux = kappa * np.diff(q) / gaps
    div = np.zeros_like(q)
    div[:-1] += flux
    div[1:] -= flux
    return div / mesh.widths


def semidiscrete_rhs(
    s: SimulationState,
    A_cells: np.ndarray,
    p: ModelParameters,
    opts: SchemeOptions,
):
    """Time derivatives (du, dv, dw) of the semi-discrete system."""
    du = reaction_u(s.u, s.w, p.d)
    kappa_v = _interface_coefficients(1.0 - s.u, s.mesh, opts.interface_average_v)
    dv = reaction_v(s.v, p.r) + p.D * _flux_divergence(kappa_v, s.v, s.mesh)
    kappa_w = _interface_coefficients(np.asarray(A_cells), s.mesh, opts.interface_average_w)
    dw = reaction_w(s.v, s.w, p.c) + _flux_divergence(kappa_w, s.w, s.mesh)
    return du, dv, dw


def step_imex(
    s: SimulationState,
    A_cells: np.ndarray,
    p: ModelParameters,
    opts: SchemeOptions,
) -> SimulationState:
    """Advance the state by one IMEX step of size opts.dt."""
    dt = opts.dt
    u_next = s.u + dt * reaction_u(s.u, s.w, p.d)
    v_expl = s.v + dt * reaction_v(s.v, p.r)
    v_next = solve_tridiagonal(assemble_implicit_v(u_next, v_expl, p, opts, s.mesh))
    w_expl = s.w + dt * reaction_w(s.v, s.w, p.c)
    w_next = solve_tridiagonal(assemble_implicit_w(A_cells, w_expl, opts, s.mesh))
    if not (
        np.all(np.isfinite(u_next))
        and np.all(np.isfinite(v_next))
        and np.all(np.isfinite(w_next))
    ):
        raise InstabilityError(
            f"non-finite field values after step from t={s.time!r}", time=s.time
        )
    return SimulationState(mesh=s.mesh, time=s.time + dt, u=u_next, v=v_next, w=w_next)


def reaction_step_limit(p: ModelParameters) -> float:
    """Largest dt the explicit reaction stage tolerates, heuristically 2/rate.

    The stiffest linearized reaction rate among the three equations is
    max(1, r, c); explicit Euler on q' = -k q is stable for dt <= 2/k.
    """
    return 2.0 / max(1.0, p.r, p.c)


def run(
    s0: SimulationState,
    A: DiffusionProfile,
    p: ModelParameters,
    opts: SchemeOptions,
    T: float,
    observers=(),
) -> SimulationState:
    """March the state from its current time to T with a fixed step.

    Takes ceil((T - t0)/dt) steps; each observer is called as
    ``observer(step_index, previous_state, new_state)`` after every step.
    Instability aborts the run with the failing step index and time.
    """
    if T < s0.time:
        raise ValueError(f"final time {T!r} precedes state time {s0.time!r}")
    if opts.dt > reaction_step_limit(p):
        warnings.warn(
            f"dt={opts.dt!r} exceeds the explicit reaction stability "
            f"heuristic 2/max(1, r, c) = {reaction_step_limit(p)!r}",
            StabilityWarning,
            stacklevel=2,
        )
    A_cells = project_cell_averages(A, s0.mesh)
    n_steps = max(0, math.ceil((T - s0.time) / opts.dt - 1e-9))
    state = s0
    for k in range(n_steps):
        previous = state
        try:
            state = step_imex(state, A_cells, p, opts)
        except InstabilityError as exc:
            raise InstabilityError(
                f"run became unstable at step {k} (t={previous.time!r}): {exc}",
                step=k,
                time=previous.time,
            ) from exc
        for observer in observers:
            observer(k, previous, state)
    return state
