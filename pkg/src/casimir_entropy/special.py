"""Complete elliptic integrals and truncated Taylor jets.

The elliptic integrals use the modulus convention

    K(k) = int_0^{pi/2} da / sqrt(1 - k^2 sin^2 a),
    E(k) = int_0^{pi/2} sqrt(1 - k^2 sin^2 a) da,

and are evaluated with the arithmetic-geometric mean.  Wherever the
complementary modulus ``kc = sqrt(1 - k^2)`` is known exactly (as it is for
the resonant cavity, ``kc = exp(-4 tau)``) it should be passed in directly;
forming ``1 - k**2`` in floating point destroys ``kc`` once ``k`` rounds to 1.

A :class:`Jet` holds the Taylor coefficients ``c_j = f^(j)(t0) / j!`` of a
function of one real variable, truncated at order ``D``.  Jets are used to
push exact higher derivatives with respect to ``tau`` through the elliptic
integrals, which is what the Bogoliubov ladder in :mod:`casimir_entropy.dce1d`
consumes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from numbers import Real

import numpy as np

__all__ = [
    "DEFAULT_ORDER",
    "Jet",
    "EllipticPair",
    "agm",
    "elliptic_KE",
    "elliptic_KE_jet",
    "elliptic_KED_jet",
    "kappa_jet_of_tau",
    "parameter_jet_of_tau",
]

DEFAULT_ORDER = 12

# Below this value of the parameter m = k^2 the jets are built from the
# hypergeometric series instead of the differential equations, which divide by m.
_SERIES_SWITCH = 0.05
_SERIES_TERMS = 160


class Jet:
    """Truncated Taylor series ``sum_j c_j h^j`` with ``j <= order``.

    Arithmetic between jets of different order truncates to the lower one.
    Instances are treated as immutable; every operation returns a new jet.
    """

    __slots__ = ("_c",)
    __array_priority__ = 1000  # keep numpy scalars from broadcasting over us

    def __init__(self, coefficients):
        c = np.array(coefficients, dtype=float, ndmin=1)
        if c.ndim != 1:
            raise ValueError("jet coefficients must be one-dimensional")
        c.setflags(write=False)
        self._c = c

    # construction ---------------------------------------------------------

    @classmethod
    def constant(cls, value: float, order: int = DEFAULT_ORDER) -> "Jet":
        c = np.zeros(order + 1)
        c[0] = value
        return cls(c)

    @classmethod
    def variable(cls, value: float, order: int = DEFAULT_ORDER) -> "Jet":
        """The identity function expanded about ``value``."""
        c = np.zeros(order + 1)
        c[0] = value
        if order >= 1:
            c[1] = 1.0
        return cls(c)

    # access ---------------------------------------------------------------

    @property
    def coefficients(self) -> np.ndarray:
        return self._c

    @property
    def order(self) -> int:
        return len(self._c) - 1

    @property
    def value(self) -> float:
        return float(self._c[0])

    def derivatives(self) -> np.ndarray:
        """Derivatives ``f^(j)(t0)`` for ``j = 0..order``."""
        fact = np.array([math.factorial(j) for j in range(self.order + 1)], dtype=float)
        return self._c * fact

    def derivative(self) -> "Jet":
        """Jet of ``f'``; its order is one less than ``self.order``."""
        if self.order == 0:
            raise ValueError("cannot differentiate an order-0 jet")
        j = np.arange(1, self.order + 1)
        return Jet(self._c[1:] * j)

    def truncate(self, order: int) -> "Jet":
        if order > self.order:
            raise ValueError(f"cannot raise jet order {self.order} to {order}")
        return Jet(self._c[: order + 1])

    def __call__(self, h: float) -> float:
        """Evaluate the truncated polynomial at offset ``h`` from the base point."""
        return float(np.polynomial.polynomial.polyval(h, self._c))

    def __repr__(self) -> str:
        return f"Jet({np.array2string(self._c, precision=6)})"

    def __len__(self) -> int:
        return len(self._c)

    # arithmetic -----------------------------------------------------------

    @staticmethod
    def _pair(a: "Jet", b) -> tuple[np.ndarray, np.ndarray]:
        if isinstance(b, Jet):
            n = min(len(a._c), len(b._c))
            return a._c[:n], b._c[:n]
        if isinstance(b, Real):
            cb = np.zeros_like(a._c)
            cb[0] = float(b)
            return a._c, cb
        return NotImplemented, NotImplemented

    def __add__(self, other):
        a, b = self._pair(self, other)
        if a is NotImplemented:
            return NotImplemented
        return Jet(a + b)

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._pair(self, other)
        if a is NotImplemented:
            return NotImplemented
        return Jet(a - b)

    def __rsub__(self, other):
        a, b = self._pair(self, other)
        if a is NotImplemented:
            return NotImplemented
        return Jet(b - a)

    def __neg__(self):
        return Jet(-self._c)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, Real):
            return Jet(self._c * float(other))
        if not isinstance(other, Jet):
            return NotImplemented
        a, b = self._pair(self, other)
        return Jet(np.convolve(a, b)[: len(a)])

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Real):
            return Jet(self._c / float(other))
        if not isinstance(other, Jet):
            return NotImplemented
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        if not isinstance(other, Real):
            return NotImplemented
        return self.reciprocal() * float(other)

    def __pow__(self, n):
        if isinstance(n, int) and n >= 0:
            out = Jet.constant(1.0, self.order)
            base = self
            while n:
                if n & 1:
                    out = out * base
                base = base * base
                n >>= 1
            return out
        if isinstance(n, Real):
            return (self.log() * float(n)).exp()
        return NotImplemented

    def reciprocal(self) -> "Jet":
        a = self._c
        if a[0] == 0.0:
            raise ZeroDivisionError("jet with zero constant term has no reciprocal")
        b = np.zeros_like(a)
        b[0] = 1.0 / a[0]
        for k in range(1, len(a)):
            b[k] = -np.dot(a[1 : k + 1], b[k - 1 :: -1]) / a[0]
        return Jet(b)

    # analytic primitives --------------------------------------------------

    def exp(self) -> "Jet":
        a = self._c
        b = np.zeros_like(a)
        b[0] = math.exp(a[0])
        # b' = a' b  ->  k b_k = sum_{j=1}^k j a_j b_{k-j}
        for k in range(1, len(a)):
            j = np.arange(1, k + 1)
            b[k] = np.dot(j * a[1 : k + 1], b[k - 1 :: -1]) / k
        return Jet(b)

    def log(self) -> "Jet":
        a = self._c
        if a[0] <= 0.0:
            raise ValueError("log of a jet needs a positive constant term")
        b = np.zeros_like(a)
        b[0] = math.log(a[0])
        # a b' = a'  ->  k a_0 b_k = k a_k - sum_{j=1}^{k-1} j b_j a_{k-j}
        for k in range(1, len(a)):
            j = np.arange(1, k)
            b[k] = (k * a[k] - np.dot(j * b[1:k], a[k - 1 : 0 : -1])) / (k * a[0])
        return Jet(b)

    def sqrt(self) -> "Jet":
        a = self._c
        if a[0] < 0.0:
            raise ValueError("sqrt of a jet needs a non-negative constant term")
        b = np.zeros_like(a)
        b[0] = math.sqrt(a[0])
        if len(a) > 1 and b[0] == 0.0:
            raise ValueError("sqrt is not analytic at a zero constant term")
        # b^2 = a  ->  2 b_0 b_k = a_k - sum_{j=1}^{k-1} b_j b_{k-j}
        for k in range(1, len(a)):
            b[k] = (a[k] - np.dot(b[1:k], b[k - 1 : 0 : -1])) / (2.0 * b[0])
        return Jet(b)

    def compose_series(self, series: np.ndarray) -> "Jet":
        """Evaluate ``sum_n series[n] * self**n`` by Horner's rule."""
        out = Jet.constant(float(series[-1]), self.order)
        for s in series[-2::-1]:
            out = out * self + float(s)
        return out


# --------------------------------------------------------------------------
# Elliptic integrals
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class EllipticPair:
    K: float
    E: float
    modulus: float


def agm(a: float, b: float, tol: float = 1e-16) -> float:
    """Arithmetic-geometric mean of two non-negative numbers."""
    if a < 0 or b < 0:
        raise ValueError("agm needs non-negative arguments")
    for _ in range(64):
        if abs(a - b) <= tol * a:
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return 0.5 * (a + b)


def elliptic_KE(kappa: float, complement: float | None = None) -> EllipticPair:
    """Complete elliptic integrals ``K(kappa)`` and ``E(kappa)``.

    Args:
        kappa: modulus, ``0 <= kappa < 1``.
        complement: the complementary modulus ``sqrt(1 - kappa**2)`` when it
            is known more accurately than ``kappa`` itself.

    Raises:
        ValueError: if the modulus is outside ``[0, 1)``.
    """
    kappa = float(kappa)
    if not 0.0 <= kappa <= 1.0:
        raise ValueError(f"modulus must lie in [0, 1), got {kappa}")
    kc = math.sqrt((1.0 - kappa) * (1.0 + kappa)) if complement is None else float(complement)
    if kc <= 0.0:
        raise ValueError("K diverges at modulus 1")
    if kc > 1.0:
        raise ValueError(f"complementary modulus must lie in (0, 1], got {kc}")
    # Gauss: K = pi / (2 agm(1, kc));  E = K (1 - sum_n 2^(n-1) c_n^2), c_0 = kappa
    a, b = 1.0, kc
    s = 0.5 * kappa * kappa
    p = 0.5
    for _ in range(64):
        c = 0.5 * (a - b)
        p *= 2.0
        s += p * c * c
        if abs(c) <= 1e-17 * a:
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    K = math.pi / (2.0 * a)
    return EllipticPair(K=K, E=K * (1.0 - s), modulus=kappa)


def _hypergeometric_coefficients(n_terms: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Power-series coefficients in m = kappa^2 of K, E and (K - E)/m."""
    k = np.empty(n_terms + 1)
    e = np.empty(n_terms + 1)
    k[0] = e[0] = math.pi / 2
    for n in range(1, n_terms + 1):
        r = (n - 0.5) / n
        k[n] = k[n - 1] * r * r
        e[n] = e[n - 1] * r * (n - 1.5) / n
    d = (k - e)[1:]
    return k[:-1], e[:-1], d


_K_SERIES, _E_SERIES, _D_SERIES = _hypergeometric_coefficients(_SERIES_TERMS)


def elliptic_KED_jet(m: Jet, q: Jet) -> tuple[Jet, Jet, Jet]:
    """Jets of ``K``, ``E`` and ``(K - E)/m`` for parameter jet ``m = kappa^2``.

    ``q`` must be the jet of ``1 - m`` (the squared complementary modulus),
    supplied separately so that it keeps full relative precision when ``m``
    is close to 1.

    Near ``m = 0`` the hypergeometric series are composed with ``m``; elsewhere
    the coefficients follow from

        dE/dm = (E - K) / (2 m),     dK/dm = (E - q K) / (2 m q).
    """
    order = min(m.order, q.order)
    m, q = m.truncate(order), q.truncate(order)
    m0 = m.value
    if m0 < 0.0 or q.value <= 0.0:
        raise ValueError(f"parameter must lie in [0, 1), got m = {m0}")
    if m0 < _SERIES_SWITCH:
        return (
            m.compose_series(_K_SERIES),
            m.compose_series(_E_SERIES),
            m.compose_series(_D_SERIES),
        )

    base = elliptic_KE(math.sqrt(m0), math.sqrt(q.value))
    dm = m.derivative() if order else None
    Kc = np.zeros(order + 1)
    Ec = np.zeros(order + 1)
    Kc[0], Ec[0] = base.K, base.E
    if order:
        a = (dm / (m.truncate(order - 1) * 2.0)).coefficients
        b = (dm / (m.truncate(order - 1) * q.truncate(order - 1) * 2.0)).coefficients
        qc = q.coefficients
        for k in range(order):
            # coefficient k of (E - K) and (E - q K) use only entries <= k
            em_k = Ec[: k + 1] - Kc[: k + 1]
            eq_k = Ec[: k + 1] - np.convolve(qc[: k + 1], Kc[: k + 1])[: k + 1]
            Ec[k + 1] = np.dot(a[: k + 1], em_k[::-1]) / (k + 1)
            Kc[k + 1] = np.dot(b[: k + 1], eq_k[::-1]) / (k + 1)
    K, E = Jet(Kc), Jet(Ec)
    return K, E, (K - E) / m


def elliptic_KE_jet(kappa: Jet, complement: Jet | None = None) -> tuple[Jet, Jet]:
    """Taylor jets of ``K`` and ``E`` composed with a modulus jet.

    ``complement`` is the jet of ``sqrt(1 - kappa^2)``; pass it whenever it is
    available, since it is what keeps ``K`` accurate as ``kappa -> 1``.
    """
    if kappa.value < 0.0:
        raise ValueError("modulus must be non-negative")
    m = kappa * kappa
    q = 1.0 - m if complement is None else complement * complement
    K, E, _ = elliptic_KED_jet(m, q)
    return K, E


def parameter_jet_of_tau(tau0: float, order: int = DEFAULT_ORDER) -> tuple[Jet, Jet]:
    """Jets in ``tau`` of ``m = 1 - exp(-8 tau)`` and ``q = exp(-8 tau)``.

    Unlike the modulus ``kappa = sqrt(m)``, both are analytic at ``tau = 0``.
    """
    if tau0 < 0:
        raise ValueError(f"tau must be non-negative, got {tau0}")
    j = np.arange(order + 1)
    q = math.exp(-8.0 * tau0) * (-8.0) ** j / np.array([math.factorial(i) for i in j], dtype=float)
    qj = Jet(q)
    m = -q
    m[0] = -math.expm1(-8.0 * tau0)
    return Jet(m), qj


def kappa_jet_of_tau(tau0: float, order: int = DEFAULT_ORDER) -> tuple[Jet, Jet]:
    """Jets in ``tau`` of ``kappa = sqrt(1 - exp(-8 tau))`` and ``kc = exp(-4 tau)``.

    ``kappa`` behaves like ``sqrt(8 tau)`` at the origin, so at ``tau0 = 0``
    only the order-0 jet exists; use :func:`parameter_jet_of_tau` there.
    """
    if tau0 < 0:
        raise ValueError(f"tau must be non-negative, got {tau0}")
    if tau0 == 0.0 and order > 0:
        raise ValueError("kappa(tau) is not differentiable at tau = 0; use parameter_jet_of_tau")
    m, _ = parameter_jet_of_tau(tau0, order)
    j = np.arange(order + 1)
    kc = math.exp(-4.0 * tau0) * (-4.0) ** j / np.array([math.factorial(i) for i in j], dtype=float)
    if tau0 == 0.0:
        return Jet([0.0]), Jet([1.0])
    return m.sqrt(), Jet(kc)
