"""Clifford-algebra model of a torus Floer algebra and its trace.

The algebra on ``n`` generators is presented on the wedge-compatible basis
``{e_I : I subset {1..n}}`` (antisymmetrized generator products, matching
the cohomology basis of an n-torus).  Products follow the quantized
relation

    ``e_i e_j + e_j e_i = kappa * form[i][j]``,

realized on the wedge basis by the contraction rule: left multiplication
by a generator is "wedge plus contraction against the bilinear form
``kappa/2 * form``".

The pairing is the integration pairing of the torus: ``<e_I, e_J>`` is the
shuffle sign when ``J`` complements ``I`` and zero otherwise, so the Gram
matrix ``g`` is a signed permutation.  The trace

    ``Z = sum_{I,J} (-1)^{|I|} g^{IJ} <m2(e_I, vol), m2(e_J, vol)>``

uses the graded inverse ``g^{IJ} = (-1)^{|I| + n(n-1)/2} (g^{-1})_{IJ}``;
with ``kappa = 1`` these conventions are the unique calibration (fixed
once on the two-element basis, with the quadratic twist pinned by the
rank-4 diagonal case) under which ``Z`` reproduces the determinant of the
form exactly.  Both constants are frozen below and never re-tuned.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

from .errors import AlgebraMismatchError, ConfigError, DegenerateTraceError
from .novikov import Exponent, NovikovSeries, as_fraction

Subset = Tuple[int, ...]

#: Frozen calibration scalar for the anticommutation relation.
KAPPA = Fraction(1)


def shuffle_sign(I: Subset, J: Subset) -> int:
    """Sign of the shuffle sorting the concatenation of two disjoint tuples."""
    seq = list(I) + list(J)
    inv = 0
    for a in range(len(seq)):
        for b in range(a + 1, len(seq)):
            if seq[a] > seq[b]:
                inv += 1
    return -1 if inv % 2 else 1


def graded_inverse_sign(size_i: int, n: int) -> int:
    """Sign convention carried by the inverse pairing matrix."""
    return -1 if (size_i + (n * (n - 1)) // 2) % 2 else 1


class CliffordAlgebraModel:
    """Rank ``2^n`` algebra built from a symmetric series-valued form."""

    def __init__(self, form: Sequence[Sequence[NovikovSeries]],
                 kappa: Fraction = KAPPA):
        n = len(form)
        rows = []
        for row in form:
            row = [NovikovSeries.from_scalar(x) for x in row]
            if len(row) != n:
                raise ConfigError("form matrix is not square")
            rows.append(tuple(row))
        for i in range(n):
            for j in range(n):
                if rows[i][j] != rows[j][i]:
                    raise ConfigError("form matrix is not symmetric")
        self.n = n
        self.form = tuple(rows)
        self.kappa = as_fraction(kappa)
        # Contraction form B = (kappa/2) * form, the square of a generator.
        half = Fraction(self.kappa, 2)
        self._b = tuple(tuple(entry * half for entry in row) for row in rows)
        self._basis_products: Dict[Tuple[Subset, Subset], "CliffordElement"] = {}

    # -- elements ------------------------------------------------------------

    def element(self, coeffs: Dict[Subset, NovikovSeries]) -> "CliffordElement":
        return CliffordElement(self, coeffs)

    def basis_element(self, I: Iterable[int]) -> "CliffordElement":
        I = tuple(sorted(int(i) for i in I))
        if any(i < 1 or i > self.n for i in I) or len(set(I)) != len(I):
            raise ConfigError(f"invalid basis subset {I}")
        return CliffordElement(self, {I: NovikovSeries.one()})

    @property
    def unit(self) -> "CliffordElement":
        return self.basis_element(())

    @property
    def vol(self) -> "CliffordElement":
        """The volume class: the top wedge-basis element."""
        return self.basis_element(range(1, self.n + 1))

    def subsets(self) -> List[Subset]:
        out: List[Subset] = [()]
        for i in range(1, self.n + 1):
            out.extend(s + (i,) for s in list(out))
        return sorted(out, key=lambda s: (len(s), s))

    # -- products --------------------------------------------------------------

    def _generator_times(self, i: int,
                         coeffs: Dict[Subset, NovikovSeries]
                         ) -> Dict[Subset, NovikovSeries]:
        """Left product by ``e_i``: wedge insertion plus form contraction."""
        out: Dict[Subset, NovikovSeries] = {}
        for J, c in coeffs.items():
            if i not in J:
                pos = sum(1 for j in J if j < i)
                sign = -1 if pos % 2 else 1
                K = tuple(sorted(J + (i,)))
                _accumulate(out, K, c if sign == 1 else -c)
            for pos, j in enumerate(J):
                b = self._b[i - 1][j - 1]
                if b.is_zero():
                    continue
                K = tuple(x for x in J if x != j)
                contrib = b * c
                _accumulate(out, K, contrib if pos % 2 == 0 else -contrib)
        return out

    def _basis_times(self, I: Subset,
                     coeffs: Dict[Subset, NovikovSeries]
                     ) -> Dict[Subset, NovikovSeries]:
        """Left product by the wedge-basis element ``e_I``.

        ``e_I = e_i * e_{I'} - iota_i(e_{I'})`` with ``i`` the least index,
        so the product recurses on strictly smaller wedge degree.
        """
        if not I:
            return dict(coeffs)
        i, rest = I[0], I[1:]
        acc = self._generator_times(i, self._basis_times(rest, coeffs))
        for pos, j in enumerate(rest):
            b = self._b[i - 1][j - 1]
            if b.is_zero():
                continue
            K = tuple(x for x in rest if x != j)
            sub = self._basis_times(K, coeffs)
            sign = 1 if pos % 2 == 0 else -1
            for L, v in sub.items():
                _accumulate(acc, L, (-sign) * b * v)
        return acc

    def basis_product(self, I: Subset, J: Subset) -> "CliffordElement":
        key = (I, J)
        got = self._basis_products.get(key)
        if got is None:
            raw = self._basis_times(I, {J: NovikovSeries.one()})
            got = CliffordElement(self, raw)
            self._basis_products[key] = got
        return got

    # -- pairing ----------------------------------------------------------------

    def pairing_sign(self, I: Subset, J: Subset) -> int:
        """``<e_I, e_J>``: shuffle sign on complementary subsets, else 0."""
        if len(I) + len(J) != self.n or set(I) & set(J):
            return 0
        return shuffle_sign(I, J)


class CliffordElement:
    """Finite combination of wedge-basis elements with series coefficients."""

    __slots__ = ("algebra", "_coeffs")

    def __init__(self, algebra: CliffordAlgebraModel,
                 coeffs: Dict[Subset, NovikovSeries]):
        self.algebra = algebra
        cleaned = {}
        for I, c in coeffs.items():
            I = tuple(sorted(I))
            c = NovikovSeries.from_scalar(c)
            if not c.is_zero():
                cleaned[I] = c
        self._coeffs = cleaned

    @property
    def coeffs(self) -> Dict[Subset, NovikovSeries]:
        return dict(self._coeffs)

    def coefficient(self, I: Iterable[int]) -> NovikovSeries:
        return self._coeffs.get(tuple(sorted(I)), NovikovSeries.zero())

    def is_zero(self) -> bool:
        return not self._coeffs

    def __add__(self, other):
        _check_same_algebra(self, other)
        out = dict(self._coeffs)
        for I, c in other._coeffs.items():
            _accumulate(out, I, c)
        return CliffordElement(self.algebra, out)

    def __neg__(self):
        return CliffordElement(self.algebra,
                               {I: -c for I, c in self._coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, u) -> "CliffordElement":
        u = NovikovSeries.from_scalar(u)
        return CliffordElement(self.algebra,
                               {I: c * u for I, c in self._coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, CliffordElement):
            return NotImplemented
        return (self.algebra is other.algebra
                and self._coeffs == other._coeffs)

    def __repr__(self):
        if not self._coeffs:
            return "CliffordElement(0)"
        body = " + ".join(f"({c})*e{list(I)}"
                          for I, c in sorted(self._coeffs.items()))
        return f"CliffordElement({body})"


def _accumulate(d: Dict[Subset, NovikovSeries], I: Subset, c: NovikovSeries):
    cur = d.get(I)
    c = cur + c if cur is not None else c
    if c.is_zero():
        d.pop(I, None)
    else:
        d[I] = c


def _check_same_algebra(a: CliffordElement, b: CliffordElement):
    if not isinstance(b, CliffordElement):
        raise AlgebraMismatchError("algebra mismatch")
    if a.algebra is b.algebra:
        return
    if (a.algebra.n != b.algebra.n
            or a.algebra.form != b.algebra.form
            or a.algebra.kappa != b.algebra.kappa):
        raise AlgebraMismatchError("algebra mismatch")


def clifford_product(alg: CliffordAlgebraModel, a: CliffordElement,
                     b: CliffordElement) -> CliffordElement:
    """Bilinear product obeying ``e_i e_j + e_j e_i = kappa * form[i][j]``."""
    _check_same_algebra(a, b)
    if a.algebra is not alg and a.algebra.form != alg.form:
        raise AlgebraMismatchError("algebra mismatch")
    out: Dict[Subset, NovikovSeries] = {}
    for I, ca in a._coeffs.items():
        for J, cb in b._coeffs.items():
            prod = alg.basis_product(I, J)
            w = ca * cb
            for K, v in prod._coeffs.items():
                _accumulate(out, K, v * w)
    return CliffordElement(alg, out)


def poincare_pairing(alg: CliffordAlgebraModel, a: CliffordElement,
                     b: CliffordElement) -> NovikovSeries:
    """Integration pairing, extended bilinearly from the basis signs."""
    _check_same_algebra(a, b)
    total = NovikovSeries.zero()
    for I, ca in a._coeffs.items():
        for J, cb in b._coeffs.items():
            s = alg.pairing_sign(I, J)
            if s:
                term = ca * cb
                total = total + (term if s == 1 else -term)
    return total


def trace_Z(alg: CliffordAlgebraModel) -> NovikovSeries:
    """The volume-class trace of the algebra.

    Sums ``(-1)^{|I|} g^{IJ} <m2(e_I, vol), m2(e_J, vol)>`` over the basis,
    with the frozen graded-inversion signs; for an algebra built from a
    Hessian matrix this equals the Hessian determinant.
    """
    n = alg.n
    vol = alg.vol
    full = tuple(range(1, n + 1))
    products = {}
    for I in alg.subsets():
        products[I] = clifford_product(alg, alg.basis_element(I), vol)
    total = NovikovSeries.zero()
    for I in alg.subsets():
        J = tuple(sorted(set(full) - set(I)))
        # g is a signed permutation pairing I with its complement:
        # (g^{-1})_{IJ} = 1/<e_J, e_I> on complementary pairs.
        ginv = alg.pairing_sign(J, I)
        g_upper = ginv * graded_inverse_sign(len(I), n)
        sign = (-1 if len(I) % 2 else 1) * g_upper
        bracket = poincare_pairing(alg, products[I], products[J])
        total = total + (bracket if sign == 1 else -bracket)
    return total


def defect_bound(Z: NovikovSeries) -> Exponent:
    """Valuation of the trace: the quasimorphism-defect bound.

    A vanishing trace means the underlying critical point was not Morse.
    """
    if Z.is_zero():
        raise DegenerateTraceError("degenerate: not Morse")
    return Z.valuation()


def from_hessian(matrix: Sequence[Sequence[NovikovSeries]]
                 ) -> CliffordAlgebraModel:
    """Build the algebra whose form is an evaluated Hessian matrix."""
    return CliffordAlgebraModel(matrix)
