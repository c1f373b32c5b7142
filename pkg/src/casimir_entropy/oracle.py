"""Brute-force integration of the truncated cavity mode equations.

Nothing here uses the slow-variation approximation or any closed form; it
exists to check those against the equations of motion.

One-dimensional cavity
    The in-mode ``n`` is expanded in the instantaneous sine basis with
    amplitudes ``Q^n_k(t)``, collected into an ``N x N`` matrix ``Q[k, n]``.
    They obey

        Q'' + Omega(t)^2 Q = 2 lam g Q' + lam' g Q + lam^2 g^T g Q,

    with ``Omega_k = pi k / L(t)``, ``lam = L'/L`` and the antisymmetric
    coupling matrix of :func:`coupling_matrix`.  Written in terms of
    ``P = Q' - lam g Q`` the same system is Hamiltonian and free of ``lam'``,
    which is why ``P`` (not ``Q'``) is continuous when the mirror starts or
    stops abruptly.  The integration runs on the literal second-order form and
    applies the matching velocity jumps at the ends of the motion window.

Resonant oscillator
    ``Q'' + Omega_r(t)^2 Q = 0`` with ``Omega_r^2 = w^2 + a cos(2 w t)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
from scipy.integrate import solve_ivp

__all__ = [
    "MirrorTrajectory",
    "TruncatedSystem",
    "ModeRun",
    "MathieuRun",
    "coupling_matrix",
    "integrate_modes",
    "extract_bogoliubov",
    "bogoliubov_history",
    "mode_covariance",
    "symplectic_defect",
    "normalize_coefficients",
    "integrate_mathieu",
    "integrate_averaged",
    "particle_numbers",
    "stroboscopic_envelope",
]

RTOL = 1e-10
ATOL = 1e-12


class IntegrationError(RuntimeError):
    pass


@dataclass(frozen=True)
class MirrorTrajectory:
    """Harmonic motion of the right mirror during ``0 <= t <= n_periods * T``.

    ``phase="sin"``:      L(t) = L1 [1 + eps sin(w t)]
    ``phase="neg_cos"``:  L(t) = L1 [1 - eps cos(w t)]

    Outside the window the mirror rests where the motion starts and ends.
    """

    L1: float = 1.0
    epsilon: float = 0.005
    omega_drive: float | None = None  # defaults to twice the lowest mode frequency
    phase: Literal["sin", "neg_cos"] = "sin"
    n_periods: int = 1

    def __post_init__(self):
        if self.L1 <= 0:
            raise ValueError("L1 must be positive")
        if not 0 <= self.epsilon < 1:
            raise ValueError("epsilon must lie in [0, 1)")
        if self.phase not in ("sin", "neg_cos"):
            raise ValueError(f"unknown phase {self.phase!r}")
        if self.omega_drive is None:
            object.__setattr__(self, "omega_drive", 2.0 * math.pi / self.L1)
        if self.n_periods < 0:
            raise ValueError("n_periods must be non-negative")

    @property
    def period(self) -> float:
        return 2.0 * math.pi / self.omega_drive

    @property
    def duration(self) -> float:
        return self.n_periods * self.period

    def _clip(self, t):
        return np.clip(t, 0.0, self.duration)

    def length(self, t):
        s = self.omega_drive * self._clip(t)
        if self.phase == "sin":
            return self.L1 * (1.0 + self.epsilon * np.sin(s))
        return self.L1 * (1.0 - self.epsilon * np.cos(s))

    def velocity(self, t):
        inside = (np.asarray(t) >= 0) & (np.asarray(t) <= self.duration)
        s = self.omega_drive * self._clip(t)
        w = self.omega_drive * self.L1 * self.epsilon
        v = w * np.cos(s) if self.phase == "sin" else w * np.sin(s)
        return np.where(inside, v, 0.0)

    def acceleration(self, t):
        inside = (np.asarray(t) >= 0) & (np.asarray(t) <= self.duration)
        s = self.omega_drive * self._clip(t)
        w = self.omega_drive**2 * self.L1 * self.epsilon
        a = -w * np.sin(s) if self.phase == "sin" else w * np.cos(s)
        return np.where(inside, a, 0.0)

    def lam(self, t):
        """``L'/L`` inside the window (one-sided limits at its ends)."""
        return self.velocity(t) / self.length(t)

    def lam_dot(self, t):
        L, v = self.length(t), self.velocity(t)
        return self.acceleration(t) / L - (v / L) ** 2

    def tau(self, t, omega: float | None = None):
        """Slow time ``eps * omega * t / 2``; ``omega`` defaults to ``pi / L1``."""
        omega = math.pi / self.L1 if omega is None else omega
        return 0.5 * self.epsilon * omega * np.asarray(t)


def coupling_matrix(N: int) -> np.ndarray:
    """``g_jk = (-1)^(j+k) 2 j k / (k^2 - j^2)`` for ``j != k``, zero diagonal."""
    if N < 2:
        raise ValueError("need at least two modes")
    j = np.arange(1, N + 1, dtype=float)[:, None]
    k = np.arange(1, N + 1, dtype=float)[None, :]
    sign = np.where(((j + k) % 2) == 0, 1.0, -1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        g = sign * 2.0 * j * k / (k**2 - j**2)
    np.fill_diagonal(g, 0.0)
    return g


@dataclass
class TruncatedSystem:
    """Cutoff-``N`` mode system with the in-vacuum initial data."""

    N: int = 15
    L1: float = 1.0
    g: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        self.g = coupling_matrix(self.N)

    @property
    def omega(self) -> np.ndarray:
        """Static mode frequencies ``pi k / L1``."""
        return math.pi * np.arange(1, self.N + 1) / self.L1

    def initial_state(self) -> tuple[np.ndarray, np.ndarray]:
        Q = np.eye(self.N, dtype=complex)
        Qdot = np.diag(-1j * self.omega).astype(complex)
        return Q, Qdot


@dataclass
class ModeRun:
    """Samples of a one-dimensional run.

    ``Q[i]`` and ``Qdot[i]`` are the amplitudes and their time derivative at
    ``t[i]``.  ``Qdot_out[i]`` is the derivative the amplitudes would have if
    the mirror were frozen at ``t[i]`` (equal to ``Qdot`` where ``L' = 0``).
    """

    t: np.ndarray
    Q: np.ndarray
    Qdot: np.ndarray
    Qdot_out: np.ndarray
    system: TruncatedSystem
    trajectory: MirrorTrajectory

    @property
    def tau(self) -> np.ndarray:
        return self.trajectory.tau(self.t)


def integrate_modes(
    system: TruncatedSystem,
    trajectory: MirrorTrajectory,
    t_end: float | None = None,
    samples=None,
    rtol: float = RTOL,
    atol: float = ATOL,
    method: str = "DOP853",
) -> ModeRun:
    """Integrate the full one-dimensional mode equations from the in-vacuum.

    Args:
        system: cutoff and coupling matrix.
        trajectory: mirror motion; the cavity is static outside its window.
        t_end: final time (defaults to the end of the motion window).
        samples: times at which to record the state; defaults to every drive
            period plus ``t_end``.
        rtol, atol: local error targets for the adaptive Runge-Kutta step.

    Raises:
        IntegrationError: if the integrator fails or produces non-finite values.
    """
    if abs(trajectory.L1 - system.L1) > 1e-15 * system.L1:
        raise ValueError("trajectory and system disagree on L1")
    T = trajectory.duration
    t_end = T if t_end is None else float(t_end)
    if samples is None:
        samples = np.arange(0.0, t_end + 0.5 * trajectory.period, trajectory.period)
        samples = samples[samples <= t_end * (1 + 1e-14)]
        if samples.size == 0 or samples[-1] < t_end:
            samples = np.append(samples, t_end)
    samples = np.asarray(samples, dtype=float)
    if np.any(np.diff(samples) < 0) or samples[0] < 0:
        raise ValueError("sample times must be non-negative and sorted")

    N, g = system.N, system.g
    gtg = g.T @ g
    w2 = (math.pi * np.arange(1, N + 1)) ** 2

    def rhs(t, y):
        Q = y[: N * N].reshape(N, N)
        V = y[N * N :].reshape(N, N)
        L = trajectory.length(t)
        lam = trajectory.lam(t)
        dlam = trajectory.lam_dot(t)
        acc = -(w2 / L**2)[:, None] * Q + 2.0 * lam * (g @ V) + dlam * (g @ Q) + lam**2 * (gtg @ Q)
        return np.concatenate([V.ravel(), acc.ravel()])

    Q0, V0 = system.initial_state()
    # segments: [0, T] with the mirror moving, then (T, t_end] static
    segments = [(0.0, min(T, t_end))]
    if t_end > T:
        segments.append((T, t_end))

    out_Q, out_V, out_P = [], [], []
    Q, V = Q0, V0
    for a, b in segments:
        moving = a == 0.0 and T > 0
        if moving:
            V = V + trajectory.lam(0.0) * (g @ Q)  # mirror starts: P continuous
        mask = (samples >= a) & (samples <= b) if a == 0.0 else (samples > a) & (samples <= b)
        ts = samples[mask]
        if b > a:
            sol = solve_ivp(
                rhs,
                (a, b),
                np.concatenate([Q.ravel(), V.ravel()]),
                method=method,
                t_eval=ts if ts.size else None,
                rtol=rtol,
                atol=atol,
            )
            if not sol.success:
                raise IntegrationError(sol.message)
            if not np.all(np.isfinite(sol.y)):
                raise IntegrationError("non-finite amplitudes")
            ys = sol.y if ts.size else np.empty((2 * N * N, 0))
            y_end = sol.y[:, -1]
        else:
            ys = np.concatenate([Q.ravel(), V.ravel()])[:, None].repeat(ts.size, axis=1)
            y_end = np.concatenate([Q.ravel(), V.ravel()])
        for i, t in enumerate(ts):
            q = ys[: N * N, i].reshape(N, N)
            v = ys[N * N :, i].reshape(N, N)
            if t == 0.0 and moving:
                # mirror not yet moving: in-region derivative
                out_Q.append(q)
                out_V.append(V0)
                out_P.append(V0)
                continue
            lam = trajectory.lam(t) if moving else 0.0
            out_Q.append(q)
            out_V.append(v)
            out_P.append(v - lam * (g @ q))
        Q = y_end[: N * N].reshape(N, N)
        V = y_end[N * N :].reshape(N, N)
        if moving:
            V = V - trajectory.lam(b) * (g @ Q)  # mirror stops

    return ModeRun(
        t=samples,
        Q=np.array(out_Q),
        Qdot=np.array(out_V),
        Qdot_out=np.array(out_P),
        system=system,
        trajectory=trajectory,
    )


def extract_bogoliubov(Q, Qdot, omega, t):
    """Invert ``Q = alpha e^{-i w t} + beta e^{i w t}`` using ``Q'``.

    ``Q`` and ``Qdot`` may be arrays whose first axis (or the ``k`` axis of
    an ``N x N`` block) matches ``omega``.  Returns ``(alpha, beta)``.
    """
    omega = np.asarray(omega, dtype=float)
    if np.any(omega <= 0):
        raise ValueError("frequencies must be positive")
    Q = np.asarray(Q, dtype=complex)
    Qdot = np.asarray(Qdot, dtype=complex)
    w = omega.reshape(omega.shape + (1,) * (Q.ndim - omega.ndim))
    phase = np.exp(1j * w * t)
    alpha = 0.5 * phase * (Q + 1j * Qdot / w)
    beta = 0.5 * np.conj(phase) * (Q - 1j * Qdot / w)
    return alpha, beta


def normalize_coefficients(coeff: np.ndarray, omega: np.ndarray) -> np.ndarray:
    """Rescale amplitude coefficients ``c[..., n, k]`` by ``sqrt(w_k / w_n)``.

    The amplitudes ``Q^n_k`` carry the in-mode normalisation of mode ``n`` on
    every out-component ``k``; the rescaled coefficients are the ones that
    obey the standard (unweighted) Bogoliubov relations and that the closed
    forms of :mod:`casimir_entropy.dce1d` describe.
    """
    w = np.asarray(omega, dtype=float)
    return coeff * np.sqrt(w[None, :] / w[:, None])


def bogoliubov_history(run: ModeRun, frozen: bool = True, normalized: bool = True):
    """Bogoliubov coefficients ``alpha[i, n, k]``, ``beta[i, n, k]`` along a run.

    ``n`` labels the in-mode and ``k`` the out-mode.  With ``frozen=True``
    each sample is the out-region value for a mirror halted at that instant.
    ``normalized=False`` returns the raw amplitude coefficients.
    """
    omega = run.system.omega
    V = run.Qdot_out if frozen else run.Qdot
    alphas, betas = [], []
    for t, Q, Qd in zip(run.t, run.Q, V):
        a, b = extract_bogoliubov(Q, Qd, omega, t)
        alphas.append(a.T)
        betas.append(b.T)
    alpha, beta = np.array(alphas), np.array(betas)
    if normalized:
        alpha = normalize_coefficients(alpha, omega)
        beta = normalize_coefficients(beta, omega)
    return alpha, beta


def mode_covariance(alpha: np.ndarray, beta: np.ndarray, k: int = 0) -> np.ndarray:
    """``2 x 2`` covariance matrix of out-mode ``k`` from normalised ``alpha[n, k]``, ``beta[n, k]``.

    ``G^{11} = 2 sum_n alpha_nk conj(beta_nk)``, ``G^{12} = sum_n |alpha_nk|^2 + |beta_nk|^2``.
    """
    a, b = np.asarray(alpha)[:, k], np.asarray(beta)[:, k]
    g11 = 2.0 * np.sum(a * np.conj(b))
    g12 = np.sum(np.abs(a) ** 2 + np.abs(b) ** 2)
    return np.array([[g11, g12], [g12, np.conj(g11)]])


def symplectic_defect(alpha: np.ndarray, beta: np.ndarray) -> float:
    """Largest violation of the Bogoliubov relations of normalised coefficients.

    ``sum_k (alpha_nk alpha*_mk - beta_nk beta*_mk) = delta_nm`` and
    ``sum_k (alpha_nk beta_mk - beta_nk alpha_mk) = 0``.
    """
    a, b = alpha, beta
    first = a @ a.conj().T - b @ b.conj().T - np.eye(a.shape[0])
    second = a @ b.T - b @ a.T
    return float(max(np.abs(first).max(), np.abs(second).max()))


def particle_numbers(beta: np.ndarray) -> np.ndarray:
    """``<N_k> = sum_n |beta_nk|^2`` for a normalised ``beta[n, k]`` (or a stack)."""
    return np.sum(np.abs(beta) ** 2, axis=-2)


# --------------------------------------------------------------------------
# Single resonant oscillator
# --------------------------------------------------------------------------


@dataclass
class MathieuRun:
    t: np.ndarray
    alpha: np.ndarray
    beta: np.ndarray
    omega: float
    drive_amplitude: float


def integrate_mathieu(
    omega: float,
    drive_amplitude: float,
    t_end: float,
    samples=None,
    rtol: float = RTOL,
    atol: float = ATOL,
) -> MathieuRun:
    """Integrate ``Q'' + (w^2 + a cos(2 w t)) Q = 0`` from ``Q = 1, Q' = -i w``.

    ``samples`` default to every drive period ``pi / w`` (stroboscopic).
    The returned ``alpha``, ``beta`` are read off with the static frequency.
    """
    if omega <= 0:
        raise ValueError("frequency must be positive")
    if samples is None:
        samples = np.arange(0.0, t_end * (1 + 1e-14), math.pi / omega)
    samples = np.asarray(samples, dtype=float)
    w2, a = omega**2, drive_amplitude

    def rhs(t, y):
        return np.array([y[1], -(w2 + a * math.cos(2.0 * omega * t)) * y[0]])

    sol = solve_ivp(
        rhs, (0.0, float(samples[-1])), np.array([1.0 + 0j, -1j * omega]),
        method="DOP853", t_eval=samples, rtol=rtol, atol=atol,
    )
    if not sol.success or not np.all(np.isfinite(sol.y)):
        raise IntegrationError(sol.message)
    alpha, beta = extract_bogoliubov(sol.y[0], sol.y[1], omega, sol.t)
    return MathieuRun(t=sol.t, alpha=alpha, beta=beta, omega=omega, drive_amplitude=a)


def integrate_averaged(rate: float, t_end: float, samples=None, beta_sign: int = 1):
    """Integrate ``alpha' = -i s c beta, beta' = i s c alpha`` with ``c = rate``.

    This is the slow-variation system of the resonant mode; its exact solution
    is ``(cosh(c t), i s sinh(c t))``.
    """
    samples = np.linspace(0.0, t_end, 101) if samples is None else np.asarray(samples, float)
    c = beta_sign * rate

    def rhs(t, y):
        return np.array([-1j * c * y[1], 1j * c * y[0]])

    sol = solve_ivp(rhs, (0.0, float(samples[-1])), np.array([1.0 + 0j, 0j]),
                    method="DOP853", t_eval=samples, rtol=1e-12, atol=1e-14)
    if not sol.success:
        raise IntegrationError(sol.message)
    return sol.t, sol.y[0], sol.y[1]


def stroboscopic_envelope(run: MathieuRun, rate: float) -> tuple[float, float]:
    """Least-squares slope of ``log|beta|`` against ``t`` and the Floquet estimate.

    Only samples with ``rate * t >= 2`` are used so the ``sinh`` has become
    exponential.  Returns ``(slope, intercept)``.
    """
    sel = (rate * run.t >= 2.0) & (np.abs(run.beta) > 0)
    if sel.sum() < 2:
        raise ValueError("run too short for an envelope fit")
    slope, intercept = np.polyfit(run.t[sel], np.log(np.abs(run.beta[sel])), 1)
    return float(slope), float(intercept)
