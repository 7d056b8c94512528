"""Laurent polynomials over the Novikov field and their torus calculus.

A potential is a finite sum of monomials ``coeff * z^m`` with integer
exponent vectors ``m`` and Novikov-series coefficients.  Critical-point
theory on the unit torus uses multiplicative (logarithmic) derivatives
throughout: the gradient component ``i`` is ``z_i d/dz_i W`` and the
Hessian entry ``(i, j)`` is ``z_i d/dz_i z_j d/dz_j W``, the natural
nondegeneracy operators for unit-torus critical points.

Determinants of series matrices are computed by fraction-free Bareiss
elimination; the intermediate divisions are exact in the series ring, so no
adic precision is lost to division.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import (
    ConfigError,
    NonUnitaryError,
    PrecisionError,
    SingularMatrixError,
)
from .novikov import (
    INFINITY,
    NovikovSeries,
    as_precision,
    divide,
    is_unitary,
)

ExponentVector = Tuple[int, ...]


class UnitaryPoint:
    """A point on the unit torus: coordinates of valuation zero.

    Each coordinate must have an invertible leading coefficient at exponent
    zero (the multiplicative unit group of the series field).
    """

    __slots__ = ("_coords",)

    def __init__(self, coords: Sequence[NovikovSeries]):
        coords = tuple(NovikovSeries.from_scalar(c) for c in coords)
        for c in coords:
            if not is_unitary(c):
                raise NonUnitaryError("point not in unitary torus")
        self._coords = coords

    @property
    def coords(self) -> Tuple[NovikovSeries, ...]:
        return self._coords

    def __len__(self):
        return len(self._coords)

    def __iter__(self):
        return iter(self._coords)

    def __getitem__(self, i):
        return self._coords[i]

    def __eq__(self, other):
        if not isinstance(other, UnitaryPoint):
            return NotImplemented
        return self._coords == other._coords

    def __hash__(self):
        return hash(self._coords)

    def leading_tuple(self) -> Tuple[Fraction, ...]:
        """Leading (constant-order) coordinates over the rationals."""
        return tuple(c.leading_coefficient() for c in self._coords)

    def precision(self):
        """Smallest coordinate precision (INFINITY when all exact)."""
        return min((c.precision for c in self._coords), default=INFINITY)

    def to_obj(self) -> dict:
        return {"coords": [c.to_obj() for c in self._coords]}

    @classmethod
    def from_obj(cls, obj) -> "UnitaryPoint":
        return cls([NovikovSeries.from_obj(c) for c in obj["coords"]])

    def __repr__(self):
        inner = ", ".join(str(c) for c in self._coords)
        return f"UnitaryPoint({inner})"


class LaurentPotential:
    """Finite Laurent polynomial in ``num_vars`` variables over the series field."""

    __slots__ = ("_num_vars", "_terms")

    def __init__(self, num_vars: int,
                 terms: Optional[Dict[ExponentVector, NovikovSeries]] = None):
        if num_vars < 1:
            raise ConfigError("num_vars must be a positive integer")
        self._num_vars = int(num_vars)
        cleaned: Dict[ExponentVector, NovikovSeries] = {}
        for m, coeff in (terms or {}).items():
            m = tuple(int(e) for e in m)
            if len(m) != self._num_vars:
                raise ConfigError("exponent vector length does not match "
                                  "num_vars")
            coeff = NovikovSeries.from_scalar(coeff)
            if coeff.is_zero():
                continue
            if m in cleaned:
                coeff = cleaned[m] + coeff
                if coeff.is_zero():
                    del cleaned[m]
                    continue
            cleaned[m] = coeff
        self._terms = cleaned

    # -- basic structure ----------------------------------------------------

    @property
    def num_vars(self) -> int:
        return self._num_vars

    def items(self):
        """Deterministic (exponent vector, coefficient) iteration."""
        return iter(sorted(self._terms.items()))

    def coefficient(self, m: ExponentVector) -> NovikovSeries:
        return self._terms.get(tuple(m), NovikovSeries.zero())

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other):
        if not isinstance(other, LaurentPotential):
            return NotImplemented
        return (self._num_vars == other._num_vars
                and self._terms == other._terms)

    def __hash__(self):
        return hash((self._num_vars, tuple(sorted(self._terms.items()))))

    def __add__(self, other):
        if isinstance(other, LaurentPotential):
            if other._num_vars != self._num_vars:
                raise ConfigError("potentials have different variable counts")
            merged = dict(self._terms)
            for m, c in other._terms.items():
                merged[m] = merged.get(m, NovikovSeries.zero()) + c
            return LaurentPotential(self._num_vars, merged)
        return NotImplemented

    def __neg__(self):
        return LaurentPotential(
            self._num_vars, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, LaurentPotential):
            return self + (-other)
        return NotImplemented

    def scale(self, u) -> "LaurentPotential":
        """Multiply every coefficient by the scalar ``u``."""
        u = NovikovSeries.from_scalar(u)
        return LaurentPotential(
            self._num_vars, {m: c * u for m, c in self._terms.items()})

    def min_coefficient_valuation(self):
        vals = [c.valuation() for c in self._terms.values()]
        return min(vals) if vals else INFINITY

    def variables_present(self) -> Tuple[int, ...]:
        """Indices of variables that occur with nonzero exponent."""
        present = set()
        for m in self._terms:
            for i, e in enumerate(m):
                if e:
                    present.add(i)
        return tuple(sorted(present))

    # -- torus calculus ------------------------------------------------------

    def evaluate(self, point, target_precision=None) -> NovikovSeries:
        """Value at a unitary point, modulo ``T^target_precision``.

        Without a target the evaluation is exact, which requires every
        coordinate raised to a negative power to be an exact monomial
        (constant points qualify); otherwise a target must be supplied.
        """
        coords = _as_unitary_coords(point, self._num_vars)
        if not self._terms:
            return NovikovSeries.zero(
                INFINITY if target_precision is None
                else as_precision(target_precision))
        target = (None if target_precision is None
                  else as_precision(target_precision))
        min_cval = min(c.val_lower_bound() for c in self._terms.values())
        if target is None:
            factor_prec = None
        else:
            factor_prec = target - min(min_cval, Fraction(0))
        powers = _PowerCache(coords, factor_prec)
        total = NovikovSeries.zero()
        for m, coeff in sorted(self._terms.items()):
            term = coeff
            for i, e in enumerate(m):
                if e:
                    term = term * powers.get(i, e)
            total = total + term
        if target is not None:
            total = total.truncate(target)
        return total

    def log_gradient(self) -> List["LaurentPotential"]:
        """Multiplicative gradient: component ``i`` is ``sum m_i coeff z^m``."""
        out = []
        for i in range(self._num_vars):
            comp = {}
            for m, coeff in self._terms.items():
                if m[i]:
                    comp[m] = coeff * m[i]
            out.append(LaurentPotential(self._num_vars, comp))
        return out

    def log_hessian(self) -> List[List["LaurentPotential"]]:
        """Symbolic matrix of second multiplicative derivatives."""
        n = self._num_vars
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                comp = {}
                for m, coeff in self._terms.items():
                    f = m[i] * m[j]
                    if f:
                        comp[m] = coeff * f
                row.append(LaurentPotential(n, comp))
            rows.append(row)
        return rows

    def log_hessian_det_at(self, point, target_precision=None):
        """Hessian matrix and determinant at a unitary point.

        Returns ``(matrix, det)`` where ``matrix[i][j]`` is the evaluated
        second multiplicative derivative and ``det`` is its fraction-free
        Bareiss determinant, both modulo ``T^target_precision``.
        """
        hess = self.log_hessian()
        matrix = [[entry.evaluate(point, target_precision) for entry in row]
                  for row in hess]
        return matrix, det_bareiss(matrix)

    # -- serialization -------------------------------------------------------

    def to_obj(self) -> dict:
        return {
            "num_vars": self._num_vars,
            "terms": [{"m": list(m), "coeff": c.to_obj()}
                      for m, c in sorted(self._terms.items())],
        }

    @classmethod
    def from_obj(cls, obj) -> "LaurentPotential":
        if isinstance(obj, list):
            items = obj
            if not items:
                raise ConfigError("cannot infer variable count from an "
                                  "empty term list")
            num_vars = len(items[0]["m"])
        else:
            items = obj.get("terms", [])
            num_vars = obj.get("num_vars")
            if num_vars is None:
                if not items:
                    raise ConfigError("potential needs num_vars or terms")
                num_vars = len(items[0]["m"])
        terms: Dict[ExponentVector, NovikovSeries] = {}
        for item in items:
            m = tuple(int(e) for e in item["m"])
            coeff = NovikovSeries.from_obj(item["coeff"])
            terms[m] = terms.get(m, NovikovSeries.zero()) + coeff
        return cls(num_vars, terms)

    def __repr__(self):
        body = " + ".join(f"({c})*z^{list(m)}" for m, c in self.items())
        return f"LaurentPotential[{self._num_vars}]({body or '0'})"


class _PowerCache:
    """Coordinate powers built incrementally, capped at a working precision."""

    def __init__(self, coords, precision):
        self._coords = coords
        self._prec = precision
        self._cache: Dict[Tuple[int, int], NovikovSeries] = {}
        self._inverses: Dict[int, NovikovSeries] = {}

    def _inverse(self, i):
        inv = self._inverses.get(i)
        if inv is None:
            c = self._coords[i]
            if self._prec is None:
                if len(c.terms) != 1 or not c.is_exact():
                    raise PrecisionError(
                        "exact evaluation needs monomial coordinates for "
                        "negative powers; pass target_precision")
                inv = c.invert()
            else:
                inv = c.invert(self._prec)
            self._inverses[i] = inv
        return inv

    def get(self, i, e):
        key = (i, e)
        got = self._cache.get(key)
        if got is not None:
            return got
        step = 1 if e > 0 else -1
        base = self._coords[i] if e > 0 else self._inverse(i)
        prev = NovikovSeries.one()
        n = 0
        # Extend from the highest cached power of the same sign.
        for m in range(abs(e) - 1, 0, -1):
            hit = self._cache.get((i, step * m))
            if hit is not None:
                prev, n = hit, m
                break
        while n < abs(e):
            prev = prev * base
            if self._prec is not None:
                prev = prev.truncate(self._prec)
            n += 1
            self._cache[(i, step * n)] = prev
        return prev


def _as_unitary_coords(point, num_vars):
    if isinstance(point, UnitaryPoint):
        coords = point.coords
    else:
        coords = tuple(NovikovSeries.from_scalar(c) for c in point)
        for c in coords:
            if not is_unitary(c):
                raise NonUnitaryError("point not in unitary torus")
    if len(coords) != num_vars:
        raise ConfigError(f"point has {len(coords)} coordinates, potential "
                          f"has {num_vars} variables")
    return coords


# -- series matrices ---------------------------------------------------------


def det_bareiss(matrix: Sequence[Sequence[NovikovSeries]]) -> NovikovSeries:
    """Determinant by fraction-free Bareiss elimination.

    Row pivoting picks the lowest-valuation nonzero entry in each column;
    the Bareiss divisions are exact, so precision follows the adic rules
    with no division loss.  The empty matrix has determinant 1.
    """
    n = len(matrix)
    if n == 0:
        return NovikovSeries.one()
    m = [list(row) for row in matrix]
    for row in m:
        if len(row) != n:
            raise ConfigError("matrix is not square")
    sign = 1
    prev = NovikovSeries.one()
    for k in range(n - 1):
        pivot_row = _pick_pivot(m, k)
        if pivot_row is None:
            return _singular_det(m, k)
        if pivot_row != k:
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = divide(num, prev)
            m[i][k] = NovikovSeries.zero(m[i][k].precision)
        prev = m[k][k]
    out = m[n - 1][n - 1]
    return out if sign == 1 else -out


def _pick_pivot(m, k):
    best = None
    best_val = None
    for i in range(k, len(m)):
        entry = m[i][k]
        if entry.is_zero():
            continue
        v = entry.valuation()
        if best is None or v < best_val:
            best, best_val = i, v
    return best


def _singular_det(m, k):
    # Column k vanishes (mod precision) below row k: the determinant is zero
    # to the precision the column data supports.
    prec = INFINITY
    for i in range(k, len(m)):
        prec = min(prec, m[i][k].precision)
    for i in range(k, len(m)):
        for j in range(k, len(m)):
            prec = min(prec, m[i][j].precision + m[i][k].val_lower_bound())
    return NovikovSeries.zero(prec)


def solve_linear(matrix: Sequence[Sequence[NovikovSeries]],
                 rhs: Sequence[NovikovSeries],
                 target_precision=None) -> List[NovikovSeries]:
    """Solve ``matrix @ x = rhs`` over the series field.

    Gaussian elimination with lowest-valuation pivoting; division precision
    follows the adic rules.  The elimination divisions are generic, so with
    fully exact inputs a ``target_precision`` cap is required to keep the
    quotients finite.  Raises ``SingularMatrixError`` when no pivot with a
    nonzero leading term exists at the available precision.
    """
    n = len(matrix)
    if target_precision is not None:
        tp = as_precision(target_precision)
        matrix = [[e.truncate(tp) for e in row] for row in matrix]
        rhs = [e.truncate(tp) for e in rhs]
    a = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    for k in range(n):
        best, best_val = None, None
        for i in range(k, n):
            if a[i][k].is_zero():
                continue
            v = a[i][k].valuation()
            if best is None or v < best_val:
                best, best_val = i, v
        if best is None:
            raise SingularMatrixError("matrix is singular at the available "
                                      "precision")
        if best != k:
            a[k], a[best] = a[best], a[k]
        for i in range(k + 1, n):
            if a[i][k].is_zero():
                continue
            factor = divide(a[i][k], a[k][k])
            for j in range(k, n + 1):
                a[i][j] = a[i][j] - factor * a[k][j]
    xs: List[NovikovSeries] = [NovikovSeries.zero()] * n
    for k in range(n - 1, -1, -1):
        acc = a[k][n]
        for j in range(k + 1, n):
            acc = acc - a[k][j] * xs[j]
        xs[k] = divide(acc, a[k][k])
    return xs
