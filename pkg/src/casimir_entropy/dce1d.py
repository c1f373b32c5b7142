"""Resonant mode of a one-dimensional cavity with one oscillating mirror.

With the mirror driven at twice the lowest cavity frequency and the slow
time ``tau = eps * omega_1 * t / 2``, everything about the resonant mode
follows from the complete elliptic integrals evaluated at

    kappa = sqrt(1 - exp(-8 tau)),     kc = exp(-4 tau).

Coefficients here are the normalised ones (see
:func:`casimir_entropy.oracle.normalize_coefficients`), which are real.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import gaussian
from .special import DEFAULT_ORDER, Jet, elliptic_KED_jet, parameter_jet_of_tau

__all__ = [
    "DEFAULT_NMAX",
    "BogoliubovLadder",
    "ResonantCovariance1D",
    "SumRuleResiduals",
    "alpha_beta_11",
    "build_ladder",
    "sum_rule_residuals",
    "oracle_double_sum_residual",
    "covariance_1d",
    "covariance_1d_jets",
    "covariance_1d_asymptotic",
    "renyi_1d",
    "entropy_1d",
    "renyi_asymp1",
    "renyi_asymp2",
    "entropy_asymp",
    "ENTROPY_OFFSET",
    "particle_number_1d",
    "particle_number_closed_form",
]

DEFAULT_NMAX = 21

# 1 + log(32 / pi^4) / 2, the constant in S_A ~ log(tau)/2 + const
ENTROPY_OFFSET = 1.0 + 0.5 * math.log(32.0 / math.pi**4)

_TWO_OVER_PI = 2.0 / math.pi


def _check_tau(tau: float) -> float:
    tau = float(tau)
    if not tau >= 0.0:
        raise ValueError(f"tau must be non-negative, got {tau}")
    return tau


def _elliptic_jets(tau: float, order: int):
    m, q = parameter_jet_of_tau(tau, order)
    K, E, D = elliptic_KED_jet(m, q)
    return K, E, D, m, q, q.sqrt()


def alpha_beta_11(tau: float, order: int = DEFAULT_ORDER) -> tuple[Jet, Jet]:
    """Jets in ``tau`` of the lowest coefficients ``alpha_11`` and ``beta_11``.

    ``beta_11 = -(2/pi)(E - kc K)/(1 - kc)`` is 0/0 at ``tau = 0``; it is
    evaluated as ``-(2/pi)[K - (1 + kc)(K - E)/kappa^2]``, which is regular.
    """
    tau = _check_tau(tau)
    K, E, D, _, _, kc = _elliptic_jets(tau, order)
    alpha = (E + kc * K) / (1.0 + kc) * _TWO_OVER_PI
    beta = (K - (1.0 + kc) * D) * (-_TWO_OVER_PI)
    return alpha, beta


@dataclass(frozen=True)
class BogoliubovLadder:
    """Odd-index column ``alpha_{n1}``, ``beta_{n1}`` and their ``tau``-derivatives.

    ``n[i]`` is the in-mode index of entry ``i`` (1, 3, 5, ...); even indices
    vanish identically and are not stored.
    """

    tau: float
    n: np.ndarray
    alpha: np.ndarray
    beta: np.ndarray
    alpha_dot: np.ndarray
    beta_dot: np.ndarray

    @property
    def n_max(self) -> int:
        return int(self.n[-1])

    @property
    def alpha_11(self) -> float:
        return float(self.alpha[0])

    @property
    def beta_11(self) -> float:
        return float(self.beta[0])

    def first_row(self) -> tuple[np.ndarray, np.ndarray]:
        """``alpha_{1,n}``, ``beta_{1,n}`` for the same odd ``n``.

        For normalised coefficients the index swap only costs a sign,
        ``c_{1,2j+1} = (-1)^j c_{2j+1,1}``.  In raw amplitude normalisation
        the same statement reads ``c_{2j+1,1} = (-1)^j (2j+1) c_{1,2j+1}``.
        """
        sign = np.where(((self.n - 1) // 2) % 2 == 0, 1.0, -1.0)
        return sign * self.alpha, sign * self.beta

    def dense(self) -> tuple[np.ndarray, np.ndarray]:
        """Columns over all ``n = 1..n_max`` with explicit zeros at even ``n``."""
        a = np.zeros(self.n_max)
        b = np.zeros(self.n_max)
        a[self.n - 1] = self.alpha
        b[self.n - 1] = self.beta
        return a, b


def build_ladder(tau: float, n_max: int = DEFAULT_NMAX, order: int | None = None) -> BogoliubovLadder:
    """Climb the recurrences from ``(alpha_11, beta_11)`` up to ``n_max``.

        sqrt(3) alpha_31 = -beta_11 - alpha_11'
        sqrt(n(n+2)) alpha_{n+2,1} = sqrt(n(n-2)) alpha_{n-2,1} - alpha_{n1}'   (n >= 3)

    and the same with ``alpha <-> beta`` in the first line.  Each rung
    differentiates once, so the base jets need order ``(n_max + 1)/2`` at
    least; one spare order is required as a guard.

    Raises:
        ValueError: for even or non-positive ``n_max`` or insufficient order.
    """
    tau = _check_tau(tau)
    if n_max < 1 or n_max % 2 == 0:
        raise ValueError(f"n_max must be a positive odd integer, got {n_max}")
    need = (n_max + 1) // 2 + 1
    order = need if order is None else int(order)
    if order < need:
        raise ValueError(f"jet order {order} too small for n_max={n_max}; need {need}")
    ns = np.arange(1, n_max + 1, 2)
    if tau == 0.0:
        # the transformation is the identity; skip the (ill-conditioned) jets
        z = np.zeros(len(ns))
        a = z.copy()
        a[0] = 1.0
        return BogoliubovLadder(tau, ns, a, z.copy(), z.copy(), z.copy())

    a1, b1 = alpha_beta_11(tau, order)
    A: dict[int, Jet] = {1: a1}
    B: dict[int, Jet] = {1: b1}
    if n_max >= 3:
        s3 = math.sqrt(3.0)
        A[3] = (-b1.truncate(order - 1) - a1.derivative()) / s3
        B[3] = (-a1.truncate(order - 1) - b1.derivative()) / s3
    for n in range(3, n_max - 1, 2):
        lo = math.sqrt(n * (n - 2))
        hi = math.sqrt(n * (n + 2))
        A[n + 2] = (lo * A[n - 2] - A[n].derivative()) / hi
        B[n + 2] = (lo * B[n - 2] - B[n].derivative()) / hi
    alpha = np.array([A[n].value for n in ns])
    beta = np.array([B[n].value for n in ns])
    alpha_dot = np.array([A[n].coefficients[1] for n in ns])
    beta_dot = np.array([B[n].coefficients[1] for n in ns])
    return BogoliubovLadder(tau, ns, alpha, beta, alpha_dot, beta_dot)


@dataclass(frozen=True)
class SumRuleResiduals:
    """Truncation residuals of the three infinite sums over the ladder."""

    alpha_alpha_dot: float
    beta_beta_dot: float
    alpha_beta_dot: float

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.alpha_alpha_dot, self.beta_beta_dot, self.alpha_beta_dot)


def sum_rule_residuals(ladder: BogoliubovLadder) -> SumRuleResiduals:
    """Residuals of

        sum_n alpha_n1 alpha_n1' = sum_n beta_n1 beta_n1' = -alpha_11 beta_11,
        sum_n (alpha_n1 beta_n1' + alpha_n1' beta_n1) = -(alpha_11^2 + beta_11^2),

    truncated at the ladder's ``n_max``.
    """
    a, b, ad, bd = ladder.alpha, ladder.beta, ladder.alpha_dot, ladder.beta_dot
    target = -a[0] * b[0]
    return SumRuleResiduals(
        alpha_alpha_dot=float(abs(a @ ad - target)),
        beta_beta_dot=float(abs(b @ bd - target)),
        alpha_beta_dot=float(abs(a @ bd + ad @ b + a[0] ** 2 + b[0] ** 2)),
    )


def oracle_double_sum_residual(tau: np.ndarray, alpha: np.ndarray, beta: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Residual of ``sum_{k,n} beta_nk beta_nk' = -sum_n alpha_n1 beta_n1`` on sampled data.

    Args:
        tau: increasing sample times.
        alpha, beta: normalised coefficient stacks ``[i, n, k]`` (e.g. from
            :func:`casimir_entropy.oracle.bogoliubov_history`).

    Returns:
        ``(tau_inner, residual)`` at the interior samples, using central
        differences in ``tau``.  Real parts are used since the closed forms
        are real.
    """
    tau = np.asarray(tau, dtype=float)
    b = np.real(beta)
    a = np.real(alpha)
    db = (b[2:] - b[:-2]) / (tau[2:] - tau[:-2])[:, None, None]
    lhs = np.sum(b[1:-1] * db, axis=(1, 2))
    rhs = -np.sum(a[1:-1, :, 0] * b[1:-1, :, 0], axis=1)
    return tau[1:-1], np.abs(lhs - rhs)


# --------------------------------------------------------------------------
# Covariance matrix and entropies
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ResonantCovariance1D:
    """Reduced covariance matrix ``[[g11, g12], [g12, g11]]`` of the resonant mode."""

    tau: float
    g11: float
    g12: float

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.g11, self.g12], [self.g12, self.g11]])

    @property
    def minus_det(self) -> float:
        """``-det G_A = (g12 - g11)(g12 + g11)``, formed without cancellation."""
        return self._sum_diff[0] * self._sum_diff[1]

    @property
    def _sum_diff(self) -> tuple[float, float]:
        return self.g12 - self.g11, self.g12 + self.g11


def covariance_1d_jets(tau: float, order: int = 1) -> tuple[Jet, Jet]:
    """Jets of ``G^11`` and ``G^12`` in ``tau``.

        G^11 = -(4/pi^2) (E - kc^2 K)(K - E) / kappa^2,   G^12 = (4/pi^2) E K.
    """
    tau = _check_tau(tau)
    K, E, D, _, q, _ = _elliptic_jets(tau, order)
    c = 4.0 / math.pi**2
    g11 = (E - q * K) * D * (-c)
    g12 = E * K * c
    return g11, g12


def covariance_1d(tau: float) -> ResonantCovariance1D:
    tau = _check_tau(tau)
    if tau == 0.0:
        return ResonantCovariance1D(0.0, 0.0, 1.0)
    g11, g12 = covariance_1d_jets(tau, order=0)
    return ResonantCovariance1D(tau, g11.value, g12.value)


def covariance_1d_asymptotic(tau: float) -> np.ndarray:
    """Large-``tau`` form ``(4/pi^2) [[1 - z, z], [z, 1 - z]]``, ``z = log 4 + 4 tau``."""
    z = math.log(4.0) + 4.0 * float(tau)
    return 4.0 / math.pi**2 * np.array([[1.0 - z, z], [z, 1.0 - z]])


def renyi_1d(tau: float) -> float:
    """Exact Renyi-2 entropy of the resonant mode."""
    return gaussian.renyi_entropy(covariance_1d(tau).matrix)


def entropy_1d(tau: float) -> float:
    """Exact von Neumann entropy of the resonant mode."""
    return gaussian.entanglement_entropy(covariance_1d(tau).matrix)


def renyi_asymp1(tau):
    """``R ~ 1/2 log(16 (8 tau + log 16 - 1) / pi^4)``."""
    tau = np.asarray(tau, dtype=float)
    out = 0.5 * np.log(16.0 * (8.0 * tau + math.log(16.0) - 1.0) / math.pi**4)
    return float(out) if out.ndim == 0 else out


def renyi_asymp2(tau):
    """``R ~ 1/2 log(128 / pi^4) + 1/2 log tau``."""
    tau = np.asarray(tau, dtype=float)
    out = 0.5 * math.log(128.0 / math.pi**4) + 0.5 * np.log(tau)
    return float(out) if out.ndim == 0 else out


def entropy_asymp(tau):
    """``S ~ 1 + 1/2 log(32 / pi^4) + 1/2 log tau``."""
    tau = np.asarray(tau, dtype=float)
    out = ENTROPY_OFFSET + 0.5 * np.log(tau)
    return float(out) if out.ndim == 0 else out


def particle_number_1d(ladder: BogoliubovLadder) -> float:
    """Partial sum ``sum_{n <= n_max} beta_n1^2`` of quanta in the resonant mode.

    Converges quickly while ``tau`` is small.  Once ``tau`` is of order one the
    created quanta spread into high in-modes and the truncated sum falls well
    short; :func:`particle_number_closed_form` has no truncation.
    """
    return float(np.sum(ladder.beta**2))


def particle_number_closed_form(tau: float) -> float:
    """``<N_1> = (G^12 - 1)/2``, from ``sum_n (alpha_n1^2 - beta_n1^2) = 1``."""
    return 0.5 * (covariance_1d(tau).g12 - 1.0)
