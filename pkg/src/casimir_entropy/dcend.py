"""Resonance in a cavity with two or more spatial dimensions.

In the averaged dynamics every mode evolves independently; only the resonant
mode ``r`` is amplified, by the Bogoliubov transformation

    alpha_r = cosh(w_r gamma t),     beta_r = s i sinh(w_r gamma t),

with ``s = +-1`` a sign convention (entropies only see ``|alpha|, |beta|``).
The phase-space flow of the resonant pair is ``exp(t K_r)``.  A subsystem
gains entropy only when it straddles the resonant mode and its complement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.integrate import solve_ivp
from scipy.linalg import expm

from . import gaussian

__all__ = [
    "CavityGeometry",
    "ResonanceParams",
    "ResonantFlow",
    "GenericSubsystem",
    "MixedEntropies",
    "mode_frequency",
    "resonance_gamma",
    "resonant_flow",
    "lift_flow",
    "lift_generator",
    "evolved_state",
    "mixed_subsystem_entropies",
    "lyapunov_spectrum",
    "mathieu_drive_amplitude",
    "mathieu_floquet_mu",
    "flow_growth_rate",
    "mode_subsystem",
    "symplectic_projection",
    "generic_subsystem",
    "subsystem_volume",
    "log_volume_history",
    "subsystem_exponent",
    "random_subsystem",
    "GENERICITY_TOL",
]

GENERICITY_TOL = 1e-8
SLOW_VARIATION_EPS = 0.1


@dataclass(frozen=True)
class CavityGeometry:
    """Box ``[0, L_1] x ... x [0, L_d]`` whose first wall oscillates with relative amplitude ``epsilon``."""

    lengths: tuple[float, ...]
    epsilon: float = 0.01

    def __post_init__(self):
        L = tuple(float(x) for x in self.lengths)
        if len(L) < 2:
            raise ValueError("need at least two spatial dimensions")
        if any(x <= 0 for x in L):
            raise ValueError("cavity lengths must be positive")
        if not 0 <= self.epsilon < 1:
            raise ValueError("epsilon must lie in [0, 1)")
        object.__setattr__(self, "lengths", L)

    @property
    def dims(self) -> int:
        return len(self.lengths)

    @property
    def slowly_varying(self) -> bool:
        """Whether ``epsilon`` is small enough for the averaged dynamics."""
        return self.epsilon < SLOW_VARIATION_EPS


def _mode(geom: CavityGeometry, k: Sequence[int]) -> tuple[int, ...]:
    k = tuple(int(x) for x in k)
    if len(k) != geom.dims:
        raise ValueError(f"mode {k} does not match a {geom.dims}-dimensional cavity")
    if any(x < 1 for x in k):
        raise ValueError(f"mode indices must be >= 1, got {k}")
    return k


def mode_frequency(geom: CavityGeometry, k: Sequence[int]) -> float:
    """``w_k = pi sqrt(sum_i (k_i / L_i)^2)`` of the static cavity."""
    k = _mode(geom, k)
    return math.pi * math.sqrt(sum((ki / Li) ** 2 for ki, Li in zip(k, geom.lengths)))


@dataclass(frozen=True)
class ResonanceParams:
    mode: tuple[int, ...]
    omega_r: float
    gamma: float

    @property
    def rate(self) -> float:
        """``w_r * gamma``: the growth rate of the resonant mode."""
        return self.omega_r * self.gamma


def resonance_gamma(geom: CavityGeometry, r: Sequence[int] | None = None) -> ResonanceParams:
    """Resonant frequency and ``gamma = (eps/2) (pi r_1 / L_1)^2 / w_r^2``.

    ``r`` defaults to the lowest mode ``(1, ..., 1)``.
    """
    r = _mode(geom, (1,) * geom.dims if r is None else r)
    w = mode_frequency(geom, r)
    gamma = 0.5 * geom.epsilon * (math.pi * r[0] / geom.lengths[0]) ** 2 / w**2
    return ResonanceParams(mode=r, omega_r=w, gamma=gamma)


@dataclass(frozen=True)
class ResonantFlow:
    """Bogoliubov map and generator of the resonant pair at time ``t``."""

    t: float
    bogoliubov: gaussian.BogoliubovMap
    generator: np.ndarray = field(repr=False)

    @property
    def matrix(self) -> np.ndarray:
        return self.bogoliubov.matrix

    @property
    def alpha(self) -> complex:
        return complex(self.bogoliubov.alpha[0, 0])

    @property
    def beta(self) -> complex:
        return complex(self.bogoliubov.beta[0, 0])


def _generator(rate: float, beta_sign: int) -> np.ndarray:
    c = beta_sign * rate
    return np.array([[0.0, -1j * c], [1j * c, 0.0]])


def resonant_flow(params: ResonanceParams | float, t: float, beta_sign: int = 1) -> ResonantFlow:
    """``alpha = cosh(x)``, ``beta = i s sinh(x)``, ``x = w_r gamma t``.

    ``params`` may also be the bare rate ``w_r * gamma``.
    """
    if t < 0:
        raise ValueError("time must be non-negative")
    if beta_sign not in (1, -1):
        raise ValueError("beta_sign must be +1 or -1")
    rate = params.rate if isinstance(params, ResonanceParams) else float(params)
    x = rate * t
    bog = gaussian.BogoliubovMap([[math.cosh(x)]], [[beta_sign * 1j * math.sinh(x)]])
    return ResonantFlow(t=t, bogoliubov=bog, generator=_generator(rate, beta_sign))


def lift_flow(flow_2x2: np.ndarray, n_modes: int, resonant: int = 0) -> np.ndarray:
    """Embed a single-mode ``2 x 2`` map into ``n_modes`` modes, identity elsewhere."""
    M = np.eye(2 * n_modes, dtype=complex)
    s = [resonant, resonant + n_modes]
    M[np.ix_(s, s)] = flow_2x2
    return M


def lift_generator(generator_2x2: np.ndarray, n_modes: int, resonant: int = 0) -> np.ndarray:
    """Embed a single-mode generator; the other modes do not evolve (``K_k = 0``)."""
    K = np.zeros((2 * n_modes, 2 * n_modes), dtype=complex)
    s = [resonant, resonant + n_modes]
    K[np.ix_(s, s)] = generator_2x2
    return K


def evolved_state(params, t: float, n_modes: int = 4, resonant: int = 0, beta_sign: int = 1) -> gaussian.CovarianceMatrix:
    """Full covariance matrix of ``n_modes`` modes (resonant one included) at time ``t``."""
    M = lift_flow(resonant_flow(params, t, beta_sign).matrix, n_modes, resonant)
    return gaussian.apply_bogoliubov(M, gaussian.vacuum(n_modes))


@dataclass(frozen=True)
class MixedEntropies:
    renyi: float
    entropy: float
    covariance: np.ndarray = field(repr=False)
    renyi_asymptote: float
    entropy_asymptote: float


def mixed_subsystem_entropies(
    params, t: float, spectator: int = 1, n_modes: int = 4, beta_sign: int = 1
) -> MixedEntropies:
    """Entropies of ``(a_r + a_s)/sqrt 2`` with the resonant mode at index 0.

    Builds the full evolved state, mixes the resonant and spectator modes
    with a balanced beam splitter and keeps the first output mode.
    Asymptotically ``R ~ x - log 2`` and ``S ~ x + 1 - 2 log 2``.
    """
    if spectator == 0:
        raise ValueError("spectator mode must differ from the resonant mode")
    if not 0 < spectator < n_modes:
        raise ValueError(f"spectator {spectator} out of range for {n_modes} modes")
    rate = params.rate if isinstance(params, ResonanceParams) else float(params)
    M = lift_flow(resonant_flow(rate, t, beta_sign).matrix, n_modes, 0)
    G = gaussian.apply_bogoliubov(M, gaussian.vacuum(n_modes))
    A = gaussian.Subsystem((0,), mixing=gaussian.beam_splitter(n_modes, 0, spectator))
    GA = gaussian.restrict(G, A).matrix
    x = rate * t
    # det G_A loses ~e^{2x} eps to cancellation; the factored form does not
    renyi = gaussian.renyi_entropy_from_map(M, A)
    return MixedEntropies(
        renyi=renyi,
        entropy=gaussian.entropy_from_renyi_single_mode(renyi),
        covariance=GA,
        renyi_asymptote=x - math.log(2.0),
        entropy_asymptote=x + 1.0 - 2.0 * math.log(2.0),
    )


def lyapunov_spectrum(generator: np.ndarray) -> np.ndarray:
    """Eigenvalues of a time-independent generator, largest first (real parts)."""
    ev = np.linalg.eigvals(np.asarray(generator, dtype=complex))
    return np.sort(ev.real)[::-1]


def mathieu_drive_amplitude(geom: CavityGeometry) -> float:
    """First-order amplitude ``a = 2 eps pi^2 / L_1^2`` of ``Omega_r^2 = w_r^2 + a cos(2 w_r t)``."""
    return 2.0 * geom.epsilon * math.pi**2 / geom.lengths[0] ** 2


def mathieu_floquet_mu(omega0: float, drive_amplitude: float, rtol: float = 1e-12) -> float:
    """Floquet exponent of ``x'' + (w0^2 + a cos(2 w0 t)) x = 0``.

    Computed from the monodromy matrix over one drive period ``pi / w0``;
    to first order in ``a`` it equals ``a / (4 w0)``.
    """
    if omega0 <= 0:
        raise ValueError("natural frequency must be positive")
    if drive_amplitude < 0:
        raise ValueError("drive amplitude must be non-negative")
    period = math.pi / omega0

    def rhs(t, y):
        w2 = omega0**2 + drive_amplitude * math.cos(2.0 * omega0 * t)
        return [y[1], -w2 * y[0], y[3], -w2 * y[2]]

    sol = solve_ivp(rhs, (0.0, period), [1.0, 0.0, 0.0, 1.0], method="DOP853", rtol=rtol, atol=rtol)
    if not sol.success:
        raise ArithmeticError(f"monodromy integration failed: {sol.message}")
    mono = sol.y[:, -1].reshape(2, 2).T
    lam = np.max(np.abs(np.linalg.eigvals(mono)))
    return max(0.0, math.log(lam) / period)


def flow_growth_rate(params, x_window=(5.0, 10.0), n_samples: int = 51, beta_sign: int = 1) -> float:
    """Slope of ``log |M(t) v|`` for the unstable eigenvector ``v`` of the generator.

    Times are chosen so that ``w_r gamma t`` spans ``x_window``.
    """
    rate = params.rate if isinstance(params, ResonanceParams) else float(params)
    if rate <= 0:
        return 0.0
    K = _generator(rate, beta_sign)
    w, V = np.linalg.eig(K)
    v = V[:, np.argmax(w.real)]
    ts = np.linspace(x_window[0] / rate, x_window[1] / rate, n_samples)
    logs = [math.log(np.linalg.norm(resonant_flow(rate, t, beta_sign).matrix @ v)) for t in ts]
    return float(np.polyfit(ts, logs, 1)[0])


# --------------------------------------------------------------------------
# Generic subsystems and volume growth
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class GenericSubsystem:
    """Subsystem spanned by covectors ``basis[:, i]`` on the truncated phase space.

    The columns are linear observables ``theta_i . xi``; a single mode of a
    rotated basis contributes its annihilator and creator rows.
    """

    basis: np.ndarray = field(repr=False)
    satisfies_i: bool
    satisfies_ii: bool

    @property
    def generic(self) -> bool:
        return self.satisfies_i and self.satisfies_ii

    @property
    def n_modes(self) -> int:
        return self.basis.shape[1] // 2


def mode_subsystem(n_modes: int, modes: Sequence[int], mixing: np.ndarray | None = None) -> np.ndarray:
    """Covectors of ``modes`` in the basis ``mixing . xi`` (identity by default)."""
    B = np.eye(2 * n_modes, dtype=complex) if mixing is None else np.asarray(mixing, dtype=complex)
    idx = list(modes) + [m + n_modes for m in modes]
    return B[idx, :].T.copy()


def symplectic_projection(basis: np.ndarray, covector: np.ndarray) -> np.ndarray:
    """Component in span(``basis``) along its symplectic complement."""
    n = basis.shape[0] // 2
    omega = gaussian.standard_form(n).matrix
    W = np.asarray(basis, dtype=complex)
    form = W.T @ omega @ W
    return W @ np.linalg.solve(form, W.T @ omega @ covector)


def _unstable_direction(generator_full: np.ndarray) -> np.ndarray:
    """Covector of the contracting direction of ``K^T`` (``ell_2``)."""
    w, V = np.linalg.eig(generator_full.T)
    v = V[:, np.argmin(w.real)]
    return v / np.linalg.norm(v)


def generic_subsystem(basis: np.ndarray, generator_full: np.ndarray, tol: float = GENERICITY_TOL) -> GenericSubsystem:
    """Validate a covector basis and compute the two genericity conditions.

    (i)  the contracting eigen-covector has a nonzero symplectic projection on A*;
    (ii) it also has a nonzero projection on the complement B*.

    Raises:
        ValueError: if the basis is not a Darboux set (within ``1e-8``).
    """
    W = np.asarray(basis, dtype=complex)
    n = W.shape[0] // 2
    nA = W.shape[1] // 2
    if W.shape[1] % 2 or W.shape[1] == 0:
        raise ValueError("a subsystem needs an even, nonzero number of covectors")
    form = W.T @ gaussian.standard_form(n).matrix @ W
    if np.max(np.abs(form - gaussian.standard_form(nA).matrix)) > 1e-8:
        raise ValueError("subsystem basis is not symplectic")
    ell = _unstable_direction(generator_full)
    pA = symplectic_projection(W, ell)
    return GenericSubsystem(
        basis=W,
        satisfies_i=bool(np.linalg.norm(pA) > tol),
        satisfies_ii=bool(np.linalg.norm(ell - pA) > tol),
    )


def subsystem_volume(basis: np.ndarray, M: np.ndarray) -> float:
    """Log of the Gram volume of the columns ``M^T theta_i`` (Hermitian inner product).

    ``sqrt(det(V^H V))`` is evaluated as ``prod |R_ii|`` from a QR factorisation.
    """
    V = np.asarray(M).T @ basis
    r = np.linalg.qr(V, mode="r")
    return float(np.sum(np.log(np.abs(np.diag(r)))))


def log_volume_history(
    basis: np.ndarray, generator_full: np.ndarray, times: np.ndarray
) -> np.ndarray:
    """``log Vol(M(t)^T D_A) - log Vol(D_A)`` at increasing ``times``.

    The covectors are pushed forward over short intervals and
    re-orthonormalised after each one, accumulating ``log |R_ii|``.  A single
    long step would bury the contracting directions in rounding error.
    """
    times = np.asarray(times, dtype=float)
    if np.any(np.diff(times) < 0) or times[0] < 0:
        raise ValueError("times must be non-negative and increasing")
    KT = np.asarray(generator_full, dtype=complex).T
    Q, r = np.linalg.qr(np.asarray(basis, dtype=complex))
    log0 = float(np.sum(np.log(np.abs(np.diag(r)))))
    acc, t_prev = log0, 0.0
    out = np.empty(len(times))
    steps: dict[float, np.ndarray] = {}
    for i, t in enumerate(times):
        dt = t - t_prev
        if dt > 0:
            key = round(dt, 12)
            if key not in steps:
                steps[key] = expm(dt * KT)
            Q, r = np.linalg.qr(steps[key] @ Q)
            acc += float(np.sum(np.log(np.abs(np.diag(r)))))
        out[i] = acc - log0
        t_prev = t
    return out


def subsystem_exponent(
    subsystem: GenericSubsystem | np.ndarray,
    params,
    t_max: float | None = None,
    resonant: int = 0,
    n_samples: int = 161,
    beta_sign: int = 1,
) -> float:
    """Fit ``Lambda_A`` from the growth of the subsystem's phase-space volume.

    The log-volume ratio is fitted by least squares over the second half of
    ``[0, t_max]``; ``t_max`` defaults to ``20 / (w_r gamma)``.

    Raises:
        ValueError: if a raw basis is passed that is not a Darboux set.
    """
    rate = params.rate if isinstance(params, ResonanceParams) else float(params)
    basis = subsystem.basis if isinstance(subsystem, GenericSubsystem) else np.asarray(subsystem, dtype=complex)
    n = basis.shape[0] // 2
    K = lift_generator(_generator(rate, beta_sign), n, resonant)
    if not isinstance(subsystem, GenericSubsystem):
        generic_subsystem(basis, K)
    if rate <= 0:
        return 0.0
    t_max = 20.0 / rate if t_max is None else float(t_max)
    ts = np.linspace(0.0, t_max, n_samples)
    logv = log_volume_history(basis, K, ts)
    half = ts >= 0.5 * t_max
    return float(np.polyfit(ts[half], logv[half], 1)[0])


def random_subsystem(
    n_modes: int, support: Sequence[int], rng: np.random.Generator, scale: float = 0.7
) -> np.ndarray:
    """One mode of a random symplectic basis change acting on the modes ``support``."""
    k = len(support)
    R = gaussian.random_symplectic(k, rng, scale)
    B = np.eye(2 * n_modes, dtype=complex)
    idx = list(support) + [s + n_modes for s in support]
    B[np.ix_(idx, idx)] = R
    return mode_subsystem(n_modes, [support[0]], B)
