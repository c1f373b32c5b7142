"""Gaussian states of N bosonic modes in the complex (ladder-operator) basis.

All matrices refer to the ordering ``(b_1, ..., b_N, b_1^+, ..., b_N^+)``.
In this basis the commutator form is

    Omega = -i [[0, 1], [-1, 0]],

so ``Omega^2 = 1`` and ``det Omega = (-1)^N``.  A centred Gaussian state is
described by its covariance matrix ``G^{ab} = <xi^a xi^b + xi^b xi^a>``; the
vacuum is ``G_0 = [[0, 1], [1, 0]]``.  A Bogoliubov transformation with
coefficients ``alpha``, ``beta`` acts on ``xi`` by

    M = [[alpha^T, beta^+], [beta^T, alpha^+]],

and evolves covariance matrices as ``G -> M G M^T``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike
from scipy.linalg import expm

__all__ = [
    "PHYSICAL_TOL",
    "SymplecticForm",
    "CovarianceMatrix",
    "BogoliubovMap",
    "Subsystem",
    "UnphysicalStateError",
    "PrecisionLossError",
    "standard_form",
    "vacuum",
    "apply_bogoliubov",
    "restrict",
    "quadrature_transform",
    "renyi_entropy_from_map",
    "complex_structure",
    "symplectic_eigenvalues",
    "renyi_entropy",
    "entanglement_entropy",
    "entropy_from_renyi_single_mode",
    "single_mode_entropy",
    "is_symplectic",
    "purity_defect",
    "random_symplectic",
    "beam_splitter",
]

PHYSICAL_TOL = 1e-9


PRECISION_LIMIT = 1e-4


class PrecisionLossError(ArithmeticError):
    """Raised when a result would carry fewer than about four significant digits."""


class UnphysicalStateError(ValueError):
    """A covariance matrix violates the uncertainty bound beyond tolerance."""


@dataclass(frozen=True)
class SymplecticForm:
    n_modes: int
    matrix: np.ndarray = field(repr=False)

    @property
    def inverse(self) -> np.ndarray:
        # the standard form is an involution
        return self.matrix


def standard_form(n_modes: int) -> SymplecticForm:
    """The commutator form ``Omega`` for ``n_modes`` modes."""
    if n_modes < 1:
        raise ValueError("need at least one mode")
    eye = np.eye(n_modes)
    zero = np.zeros((n_modes, n_modes))
    omega = -1j * np.block([[zero, eye], [-eye, zero]])
    return SymplecticForm(n_modes, omega)


@dataclass(frozen=True)
class CovarianceMatrix:
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] % 2:
            raise ValueError(f"covariance matrix must be 2N x 2N, got {m.shape}")
        object.__setattr__(self, "matrix", m)

    @property
    def n_modes(self) -> int:
        return self.matrix.shape[0] // 2


def vacuum(n_modes: int) -> CovarianceMatrix:
    eye = np.eye(n_modes)
    zero = np.zeros((n_modes, n_modes))
    return CovarianceMatrix(np.block([[zero, eye], [eye, zero]]))


@dataclass(frozen=True)
class BogoliubovMap:
    """Bogoliubov coefficients ``alpha[n, k]``, ``beta[n, k]`` and their matrix."""

    alpha: np.ndarray
    beta: np.ndarray

    def __post_init__(self):
        a = np.atleast_2d(np.asarray(self.alpha, dtype=complex))
        b = np.atleast_2d(np.asarray(self.beta, dtype=complex))
        if a.shape != b.shape or a.shape[0] != a.shape[1]:
            raise ValueError("alpha and beta must be square and of equal shape")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    @classmethod
    def identity(cls, n_modes: int) -> "BogoliubovMap":
        return cls(np.eye(n_modes), np.zeros((n_modes, n_modes)))

    @classmethod
    def from_matrix(cls, M: ArrayLike) -> "BogoliubovMap":
        M = np.asarray(M, dtype=complex)
        n = M.shape[0] // 2
        return cls(M[:n, :n].T, M[n:, :n].T)

    @property
    def n_modes(self) -> int:
        return self.alpha.shape[0]

    @property
    def matrix(self) -> np.ndarray:
        a, b = self.alpha, self.beta
        return np.block([[a.T, b.conj().T], [b.T, a.conj().T]])


@dataclass(frozen=True)
class Subsystem:
    """Modes ``mode_indices`` (0-based), optionally after a basis change ``mixing``.

    ``mixing`` is a ``2N x 2N`` symplectic matrix ``B`` in the same ordering;
    the covariance matrix is transformed as ``B G B^{-1}`` before selection.
    """

    mode_indices: tuple[int, ...]
    mixing: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        idx = tuple(int(i) for i in np.atleast_1d(self.mode_indices))
        if len(set(idx)) != len(idx):
            raise ValueError("subsystem modes must be distinct")
        if any(i < 0 for i in idx):
            raise ValueError("mode indices must be non-negative")
        object.__setattr__(self, "mode_indices", idx)
        if self.mixing is not None:
            B = np.asarray(self.mixing, dtype=complex)
            n = B.shape[0] // 2
            if not is_symplectic(B, standard_form(n).matrix):
                raise ValueError("mixing matrix is not symplectic")
            object.__setattr__(self, "mixing", B)

    def slots(self, n_modes: int) -> np.ndarray:
        """Row/column positions of the selected annihilation and creation slots."""
        idx = np.array(self.mode_indices)
        if idx.size == 0 or idx.max() >= n_modes:
            raise IndexError(f"subsystem {self.mode_indices} out of range for {n_modes} modes")
        return np.concatenate([idx, idx + n_modes])


def _as_matrix(G) -> np.ndarray:
    return G.matrix if isinstance(G, CovarianceMatrix) else np.asarray(G, dtype=complex)


def is_symplectic(M: ArrayLike, omega: ArrayLike | None = None, tol: float = 1e-10) -> bool:
    """``max |M Omega M^T - Omega| < tol``."""
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] % 2:
        return False
    omega = standard_form(M.shape[0] // 2).matrix if omega is None else np.asarray(omega)
    if omega.shape != M.shape:
        return False
    return bool(np.max(np.abs(M @ omega @ M.T - omega)) < tol)


def apply_bogoliubov(M, G, tol: float = 1e-8) -> CovarianceMatrix:
    """Evolve a covariance matrix: ``G -> M G M^T``.

    ``M`` may be a :class:`BogoliubovMap` or its ``2N x 2N`` matrix.

    Raises:
        ValueError: on a dimension mismatch or a non-symplectic ``M``.
    """
    Mm = M.matrix if isinstance(M, BogoliubovMap) else np.asarray(M, dtype=complex)
    Gm = _as_matrix(G)
    if Mm.shape != Gm.shape:
        raise ValueError(f"dimension mismatch: M {Mm.shape}, G {Gm.shape}")
    if not is_symplectic(Mm, tol=tol * max(1.0, np.abs(Mm).max() ** 2)):
        raise ValueError("transformation is not symplectic")
    return CovarianceMatrix(Mm @ Gm @ Mm.T)


def restrict(G, subsystem: Subsystem) -> CovarianceMatrix:
    """Covariance matrix of a subsystem (after its optional mixing)."""
    Gm = _as_matrix(G)
    n = Gm.shape[0] // 2
    if subsystem.mixing is not None:
        B = subsystem.mixing
        if B.shape != Gm.shape:
            raise ValueError("mixing matrix does not match the state")
        Gm = B @ Gm @ np.linalg.inv(B)
    s = subsystem.slots(n)
    return CovarianceMatrix(Gm[np.ix_(s, s)])


def complex_structure(G_A, omega_A: ArrayLike | None = None, restricted: bool = True) -> np.ndarray:
    """Linear complex structure of a (possibly mixed) state.

    ``restricted=True`` gives ``J_A = -G_A Omega_A^{-1}``; ``restricted=False``
    the pure-state convention ``J = G Omega^{-1}``.  Entropies only see the
    magnitudes of the eigenvalues of ``i J`` and are unaffected by the sign.
    """
    Gm = _as_matrix(G_A)
    omega = standard_form(Gm.shape[0] // 2).matrix if omega_A is None else np.asarray(omega_A)
    J = Gm @ np.linalg.inv(omega)
    return -J if restricted else J


def symplectic_eigenvalues(G_A, omega_A: ArrayLike | None = None, tol: float = PHYSICAL_TOL) -> np.ndarray:
    """The ``N_A`` values ``nu_k >= 1`` such that ``i J_A`` has eigenvalues ``+-nu_k``.

    Values in ``[1 - tol, 1)`` are clamped to 1.

    Raises:
        UnphysicalStateError: if some ``nu_k < 1 - tol``.
    """
    J = complex_structure(G_A, omega_A)
    ev = np.linalg.eigvals(1j * J)
    mags = np.sort(np.abs(ev.real))[::-1]
    n = len(ev) // 2
    # eigenvalues come in +-nu pairs; average each pair for stability
    nu = 0.5 * (mags[0 : 2 * n : 2] + mags[1 : 2 * n : 2])
    if np.any(nu < 1.0 - tol):
        raise UnphysicalStateError(f"symplectic eigenvalue {nu.min():.3e} below 1")
    return np.maximum(nu, 1.0)


def renyi_entropy(G_A, omega_A: ArrayLike | None = None, tol: float = PHYSICAL_TOL) -> float:
    """Renyi-2 entropy ``R_A = 1/2 log(det G_A / det Omega_A)``.

    The determinants are taken through ``slogdet`` so that large squeezing
    cannot overflow.
    """
    Gm = _as_matrix(G_A)
    omega = standard_form(Gm.shape[0] // 2).matrix if omega_A is None else np.asarray(omega_A)
    sg, lg = np.linalg.slogdet(Gm)
    so, lo = np.linalg.slogdet(omega)
    phase = sg / so
    if sg == 0 or abs(phase - 1.0) > 1e-6:
        raise UnphysicalStateError(f"det G_A / det Omega_A has phase {phase}")
    r = 0.5 * (lg - lo)
    if r < -tol:
        raise UnphysicalStateError(f"negative Renyi entropy {r:.3e}")
    return max(float(r), 0.0)


def single_mode_entropy(nu) -> np.ndarray | float:
    """Von Neumann entropy of one mode with symplectic eigenvalue ``nu >= 1``.

    ``s(nu) = (nu+1)/2 log((nu+1)/2) - (nu-1)/2 log((nu-1)/2)``, ``s(1) = 0``.
    """
    nu = np.asarray(nu, dtype=float)
    p = 0.5 * (nu + 1.0)
    m = 0.5 * (nu - 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        mlog = np.where(m > 0, m * np.log(np.where(m > 0, m, 1.0)), 0.0)
    out = p * np.log(p) - mlog
    return float(out) if out.ndim == 0 else out


def entanglement_entropy(G_A, omega_A: ArrayLike | None = None, tol: float = PHYSICAL_TOL) -> float:
    """Von Neumann entropy of the subsystem, summed over symplectic eigenvalues.

    For one mode ``nu = exp(R_A)`` is used directly; the eigenvalue route
    loses digits once the state is strongly squeezed.
    """
    Gm = _as_matrix(G_A)
    if Gm.shape[0] == 2 and omega_A is None:
        return entropy_from_renyi_single_mode(renyi_entropy(Gm, tol=tol))
    nu = symplectic_eigenvalues(G_A, omega_A, tol)
    return float(np.sum(single_mode_entropy(nu)))


def quadrature_transform(n_modes: int) -> np.ndarray:
    """``T`` with ``xi = T r`` for ``r = (x, p)``; satisfies ``T T^T = G_vacuum``."""
    eye = np.eye(n_modes)
    return np.block([[eye, 1j * eye], [eye, -1j * eye]]) / np.sqrt(2.0)


def renyi_entropy_from_map(M, subsystem: Subsystem) -> float:
    """Renyi-2 entropy of ``subsystem`` for the state ``M G_vacuum M^T``.

    Uses ``G = (M T)(M T)^T``: the subsystem rows of ``B M T``, mapped back to
    real quadratures, give a real factor ``Y`` with ``R_A = log |det R|`` from
    the QR decomposition of ``Y^T``.  This stays accurate when ``G_A`` itself
    cannot be formed without cancellation.

    The error in ``R_A`` is about ``eps max|Y| / min r_ii``; past
    ``PRECISION_LIMIT`` a :class:`PrecisionLossError` is raised.  A subsystem
    whose rows touch exactly its own number of phase-space columns is
    decoupled and returns 0 exactly.
    """
    Mm = M.matrix if isinstance(M, BogoliubovMap) else np.asarray(M, dtype=complex)
    n = Mm.shape[0] // 2
    F = Mm @ quadrature_transform(n)
    if subsystem.mixing is not None:
        F = subsystem.mixing @ F
    s = subsystem.slots(n)
    Y = np.linalg.solve(quadrature_transform(len(subsystem.mode_indices)), F[s, :])
    if np.max(np.abs(Y.imag)) > 1e-8 * max(1.0, np.max(np.abs(Y))):
        raise UnphysicalStateError("subsystem quadratures are not real")
    if np.count_nonzero(np.any(Y != 0, axis=0)) == Y.shape[0]:
        # decoupled: a square block of a symplectic map has unit determinant
        return 0.0
    r = np.abs(np.diag(np.linalg.qr(Y.real.T, mode="r")))
    if np.finfo(float).eps * np.max(np.abs(Y)) > PRECISION_LIMIT * r.min():
        raise PrecisionLossError("squeezing too strong for double precision")
    out = float(np.sum(np.log(r)))
    if out < -PHYSICAL_TOL:
        raise UnphysicalStateError(f"negative Renyi entropy {out:.3e}")
    return max(out, 0.0)


def entropy_from_renyi_single_mode(R: float) -> float:
    """``S = s(exp(R))`` for a single mode, where ``exp(R)`` is its ``nu``."""
    if R < 0:
        raise ValueError("Renyi entropy must be non-negative")
    if R > 6.0:
        # s(x) = log(x/2) + 1 - 1/(6x^2) - 1/(20x^4) + O(x^-6); the exact
        # form cancels to ~x * eps here
        x_inv2 = np.exp(-2.0 * R)
        return float(R + 1.0 - np.log(2.0) - x_inv2 / 6.0 - x_inv2**2 / 20.0)
    return single_mode_entropy(np.exp(R))


def purity_defect(G, omega: ArrayLike | None = None, relative: bool = False) -> float:
    """``max |(G Omega^{-1})^2 + 1|``; zero for a pure Gaussian state.

    With ``relative=True`` the defect is divided by ``max(1, max|J|^2)``,
    the scale of the rounding error in ``J^2`` for strongly squeezed states.
    """
    J = complex_structure(G, omega, restricted=False)
    d = float(np.max(np.abs(J @ J + np.eye(J.shape[0]))))
    if relative:
        d /= max(1.0, float(np.max(np.abs(J))) ** 2)
    return d


def random_symplectic(n_modes: int, rng: np.random.Generator | None = None, scale: float = 1.0) -> np.ndarray:
    """A random Bogoliubov matrix ``exp(K)`` with ``K = Omega h`` for admissible ``h``.

    ``h`` is built from a random real symmetric matrix in quadrature
    variables, so ``exp(K)`` preserves the reality structure of the basis.
    """
    rng = np.random.default_rng() if rng is None else rng
    n = n_modes
    H = rng.normal(scale=scale, size=(2 * n, 2 * n))
    H = 0.5 * (H + H.T)
    eye, zero = np.eye(n), np.zeros((n, n))
    Jr = np.block([[zero, eye], [-eye, zero]])
    S = expm(Jr @ H)
    T = quadrature_transform(n)
    return T @ S @ np.linalg.inv(T)


def beam_splitter(n_modes: int, i: int, j: int) -> np.ndarray:
    """Balanced mixer ``a_i -> (a_i + a_j)/sqrt 2``, ``a_j -> (a_i - a_j)/sqrt 2``."""
    if i == j:
        raise ValueError("need two distinct modes")
    u = np.eye(n_modes)
    s = 1.0 / np.sqrt(2.0)
    u[i, i], u[i, j], u[j, i], u[j, j] = s, s, s, -s
    zero = np.zeros((n_modes, n_modes))
    return np.block([[u, zero], [zero, u]]).astype(complex)
