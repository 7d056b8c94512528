"""The sphere quantum algebra, its symmetric tensor powers and idempotents.

The rank-two algebra has basis ``1, H`` with the single relation
``H^2 = T^omega`` (``omega`` the sphere area).  Its indecomposable
idempotents are ``(1 +- T^(-omega/2) H) / 2``, each of valuation
``-omega/2``.

The invariant subalgebra of the k-th tensor power is spanned by the
monomial symmetrizations ``m_j = sum over |S| = j of H placed in slots S``
for ``j = 0..k``.  Its ``k + 1`` indecomposable idempotents are the
symmetrized products of ``j`` plus-idempotents with ``k - j`` minus ones;
every one has valuation exactly ``-k * omega / 2``, so the normalized
valuation is the constant ``-omega/2`` whatever ``k`` is.  That constant
is the obstruction tabulated by the scan driver.

Grading convention: ``T^(a*omega)`` sits in degree ``-4a`` and ``H`` in
degree ``-2``, the unique assignment making the defining relation
homogeneous and the idempotents degree zero simultaneously.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import List, Optional, Tuple

from .errors import AlgebraMismatchError, ConfigError
from .novikov import INFINITY, NovikovSeries, as_fraction


@dataclass(frozen=True)
class QHP1Element:
    """Element ``a + b H`` of the rank-two sphere algebra."""

    a: NovikovSeries
    b: NovikovSeries
    omega: Fraction

    def __init__(self, a, b, omega):
        object.__setattr__(self, "a", NovikovSeries.from_scalar(a))
        object.__setattr__(self, "b", NovikovSeries.from_scalar(b))
        omega = as_fraction(omega)
        if omega <= 0:
            raise ConfigError("omega must be positive")
        object.__setattr__(self, "omega", omega)

    @classmethod
    def one(cls, omega) -> "QHP1Element":
        return cls(NovikovSeries.one(), NovikovSeries.zero(), omega)

    @classmethod
    def H(cls, omega) -> "QHP1Element":
        return cls(NovikovSeries.zero(), NovikovSeries.one(), omega)

    def __add__(self, other):
        _check_omega(self, other)
        return QHP1Element(self.a + other.a, self.b + other.b, self.omega)

    def __sub__(self, other):
        _check_omega(self, other)
        return QHP1Element(self.a - other.a, self.b - other.b, self.omega)

    def __mul__(self, other):
        return qh1_multiply(self, other)

    def valuation(self):
        return min(self.a.valuation(), self.b.valuation())

    def __str__(self):
        return f"({self.a}) + ({self.b})*H"


def _check_omega(x: QHP1Element, y: QHP1Element):
    if not isinstance(y, QHP1Element) or x.omega != y.omega:
        raise AlgebraMismatchError("omega mismatch")


def qh1_multiply(x: QHP1Element, y: QHP1Element) -> QHP1Element:
    """Product under ``H^2 = T^omega``."""
    _check_omega(x, y)
    q = NovikovSeries.monomial(1, x.omega)
    return QHP1Element(x.a * y.a + x.b * y.b * q,
                       x.a * y.b + x.b * y.a,
                       x.omega)


def qh1_idempotents(omega) -> Tuple[QHP1Element, QHP1Element]:
    """The two indecomposable idempotents ``(1 +- T^(-omega/2) H) / 2``."""
    omega = as_fraction(omega)
    half = Fraction(1, 2)
    u = NovikovSeries.monomial(half, -omega / 2)
    e_plus = QHP1Element(NovikovSeries.monomial(half, 0), u, omega)
    e_minus = QHP1Element(NovikovSeries.monomial(half, 0), -u, omega)
    return e_plus, e_minus


class SymQHElement:
    """Element of the symmetric invariants of the k-fold tensor power.

    Coefficients are stored over the monomial basis ``m_0, ..., m_k``
    (``m_j`` sums the ``C(k, j)`` arrangements of ``j`` copies of ``H``).
    """

    __slots__ = ("k", "omega", "_coeffs")

    def __init__(self, k: int, omega, coeffs):
        if k < 1:
            raise ConfigError("k must be a positive integer")
        coeffs = tuple(NovikovSeries.from_scalar(c) for c in coeffs)
        if len(coeffs) != k + 1:
            raise ConfigError(f"need {k + 1} basis coefficients, "
                              f"got {len(coeffs)}")
        self.k = int(k)
        self.omega = as_fraction(omega)
        self._coeffs = coeffs

    @property
    def coeffs(self) -> Tuple[NovikovSeries, ...]:
        return self._coeffs

    @classmethod
    def one(cls, k: int, omega) -> "SymQHElement":
        coeffs = [NovikovSeries.one()] + [NovikovSeries.zero()] * k
        return cls(k, omega, coeffs)

    @classmethod
    def basis(cls, k: int, omega, j: int) -> "SymQHElement":
        coeffs = [NovikovSeries.one() if i == j else NovikovSeries.zero()
                  for i in range(k + 1)]
        return cls(k, omega, coeffs)

    def __add__(self, other):
        self._check(other)
        return SymQHElement(self.k, self.omega,
                            [a + b for a, b in zip(self._coeffs,
                                                   other._coeffs)])

    def __sub__(self, other):
        self._check(other)
        return SymQHElement(self.k, self.omega,
                            [a - b for a, b in zip(self._coeffs,
                                                   other._coeffs)])

    def __mul__(self, other):
        return symk_multiply(self, other)

    def scale(self, u) -> "SymQHElement":
        u = NovikovSeries.from_scalar(u)
        return SymQHElement(self.k, self.omega,
                            [c * u for c in self._coeffs])

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self._coeffs)

    def valuation(self):
        return min((c.valuation() for c in self._coeffs), default=INFINITY)

    def __eq__(self, other):
        if not isinstance(other, SymQHElement):
            return NotImplemented
        return (self.k == other.k and self.omega == other.omega
                and self._coeffs == other._coeffs)

    def __hash__(self):
        return hash((self.k, self.omega, self._coeffs))

    def _check(self, other):
        if (not isinstance(other, SymQHElement) or other.k != self.k
                or other.omega != self.omega):
            raise AlgebraMismatchError("algebra mismatch: k or omega differ")

    def __repr__(self):
        body = ", ".join(f"m{j}: {c}" for j, c in enumerate(self._coeffs)
                         if not c.is_zero())
        return f"SymQH[k={self.k}]({body or '0'})"


def symk_multiply(x: SymQHElement, y: SymQHElement) -> SymQHElement:
    """Product in the monomial basis.

    ``m_i * m_j`` distributes over arrangement pairs: an overlap of size
    ``c`` turns into ``T^(c*omega)`` and the symmetric difference carries
    the surviving ``H`` factors, giving

        ``m_i m_j = sum_l C(l, i-c) C(k-l, c) T^(c*omega) m_l``

    with ``c = (i + j - l)/2`` running over admissible integers.
    """
    x._check(y)
    k, omega = x.k, x.omega
    out = [NovikovSeries.zero() for _ in range(k + 1)]
    for i, ci in enumerate(x.coeffs):
        if ci.is_zero():
            continue
        for j, cj in enumerate(y.coeffs):
            if cj.is_zero():
                continue
            prod = ci * cj
            for l in range(k + 1):
                if (i + j - l) % 2:
                    continue
                c = (i + j - l) // 2
                if c < 0 or i - c < 0 or i - c > l or c > k - l:
                    continue
                mult = comb(l, i - c) * comb(k - l, c)
                if mult == 0:
                    continue
                weight = NovikovSeries.monomial(mult, c * omega)
                out[l] = out[l] + prod * weight
    return SymQHElement(k, omega, out)


def symk_idempotents(k: int, omega) -> List[SymQHElement]:
    """The ``k + 1`` indecomposable idempotents of the invariant algebra.

    ``E_j`` symmetrizes ``j`` plus-idempotents against ``k - j`` minus
    ones.  Expanding every slot of ``(1 +- T^(-omega/2) H)/2`` and
    collecting arrangements gives the closed form used here:

        ``E_j = 2^-k sum_w alpha_{j,w} T^(-w*omega/2) m_w``,
        ``alpha_{j,w} = sum_t (-1)^(w-t) C(w, t) C(k-w, j-t)``.

    They are pairwise orthogonal, sum to the unit, and each has valuation
    exactly ``-k*omega/2``.
    """
    if k < 1:
        raise ConfigError("k must be a positive integer")
    omega = as_fraction(omega)
    scale = Fraction(1, 2 ** k)
    out = []
    for j in range(k + 1):
        coeffs = []
        for w in range(k + 1):
            alpha = 0
            for t in range(0, min(w, j) + 1):
                alpha += (-1) ** (w - t) * comb(w, t) * comb(k - w, j - t)
            if alpha:
                coeffs.append(NovikovSeries.monomial(
                    scale * alpha, -Fraction(w) * omega / 2))
            else:
                coeffs.append(NovikovSeries.zero())
        out.append(SymQHElement(k, omega, coeffs))
    return out


def grading(x) -> Optional[Fraction]:
    """Common degree of a homogeneous element, or ``None`` for mixed.

    A term ``T^e`` on a basis element with ``w`` quantum-class factors has
    degree ``-4 e / omega - 2 w``.
    """
    if isinstance(x, QHP1Element):
        pieces = [(x.a, 0), (x.b, 1)]
        omega = x.omega
    elif isinstance(x, SymQHElement):
        pieces = list(zip(x.coeffs, range(x.k + 1)))
        omega = x.omega
    else:
        raise TypeError("grading expects a sphere-algebra element")
    degree = None
    for series, w in pieces:
        for e, _ in series.terms:
            d = Fraction(-4) * e / omega - 2 * w
            if degree is None:
                degree = d
            elif degree != d:
                return None
    return degree
