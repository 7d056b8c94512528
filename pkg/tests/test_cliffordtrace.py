"""Clifford model: products, pairing, trace identity and calibration."""

from __future__ import annotations

import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from novlink.cliffordtrace import (
    KAPPA,
    CliffordAlgebraModel,
    clifford_product,
    defect_bound,
    poincare_pairing,
    trace_Z,
)
from novlink.errors import AlgebraMismatchError, DegenerateTraceError
from novlink.laurent import det_bareiss
from novlink.linkfam import BulkParameter, CircleLinkS2, critical_data
from novlink.novikov import NovikovSeries

from oracles import trace_with_conventions


def mono(c, e=0):
    return NovikovSeries.monomial(F(c), F(e))


def diag_algebra(*entries):
    n = len(entries)
    form = [[entries[i] if i == j else NovikovSeries.zero()
             for j in range(n)] for i in range(n)]
    return CliffordAlgebraModel(form)


def random_symmetric_form(rng, n, diagonal=False):
    form = [[NovikovSeries.zero()] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            if diagonal and i != j:
                continue
            pairs = [(F(rng.randint(-6, 6) or 2, rng.randint(1, 3)),
                      F(rng.randint(0, 10), rng.choice((2, 3, 4))))]
            if rng.random() < 0.4:
                pairs.append((F(rng.randint(-4, 4) or 1),
                              pairs[0][1] + F(rng.randint(1, 5), 4)))
            entry = NovikovSeries(pairs)
            if i == j and entry.is_zero():
                entry = NovikovSeries.one()
            form[i][j] = entry
            form[j][i] = entry
    return form


class TestProduct:
    def test_unit_acts_trivially(self):
        alg = diag_algebra(mono(3), mono(5))
        x = alg.element({(1,): mono(2), (1, 2): mono(7)})
        assert clifford_product(alg, alg.unit, x) == x
        assert clifford_product(alg, x, alg.unit) == x

    def test_generator_square_is_half_kappa_form(self):
        h = NovikovSeries([(3, F(1, 2))])
        alg = diag_algebra(h)
        e1 = alg.basis_element((1,))
        sq = clifford_product(alg, e1, e1)
        assert sq.coefficient(()) == h * F(KAPPA, 2)
        assert sq.coefficient((1,)).is_zero()

    def test_off_diagonal_generators_anticommute(self):
        alg = diag_algebra(mono(2), mono(3))
        e1, e2 = alg.basis_element((1,)), alg.basis_element((2,))
        ab = clifford_product(alg, e1, e2)
        ba = clifford_product(alg, e2, e1)
        assert (ab + ba).is_zero()

    def test_algebra_mismatch_rejected(self):
        alg2 = diag_algebra(mono(1), mono(1))
        alg3 = diag_algebra(mono(1), mono(1), mono(1))
        with pytest.raises(AlgebraMismatchError, match="algebra mismatch"):
            clifford_product(alg2, alg2.unit, alg3.unit)

    @given(data=st.data())
    @settings(max_examples=30, deadline=None)
    def test_associativity(self, data):
        n = data.draw(st.integers(1, 4))
        rng = random.Random(data.draw(st.integers(0, 10 ** 6)))
        alg = CliffordAlgebraModel(random_symmetric_form(rng, n))

        def rand_elt():
            coeffs = {}
            for _ in range(rng.randint(1, 3)):
                I = tuple(sorted(rng.sample(range(1, n + 1),
                                            rng.randint(0, n))))
                coeffs[I] = mono(rng.randint(-4, 4) or 1,
                                 F(rng.randint(0, 3), 2))
            return alg.element(coeffs)

        a, b, c = rand_elt(), rand_elt(), rand_elt()
        left = clifford_product(alg, clifford_product(alg, a, b), c)
        right = clifford_product(alg, a, clifford_product(alg, b, c))
        assert left == right


class TestPairing:
    def test_unit_pairs_with_volume(self):
        alg = diag_algebra(mono(1), mono(1), mono(1))
        assert poincare_pairing(alg, alg.unit, alg.vol) == mono(1)

    def test_non_complementary_vanishes(self):
        alg = diag_algebra(mono(1), mono(1))
        e1 = alg.basis_element((1,))
        assert poincare_pairing(alg, e1, e1).is_zero()

    def test_gram_matrix_is_signed_permutation(self):
        alg = diag_algebra(mono(1), mono(1), mono(1))
        subsets = alg.subsets()
        for I in subsets:
            hits = [J for J in subsets if alg.pairing_sign(I, J) != 0]
            assert len(hits) == 1
            assert alg.pairing_sign(I, hits[0]) in (1, -1)


class TestTraceIdentity:
    def test_rank_zero_trace_is_one(self):
        alg = CliffordAlgebraModel([])
        assert trace_Z(alg) == NovikovSeries.one()

    def test_rank_one_trace_equals_form(self):
        h = NovikovSeries([(3, F(1, 2)), (-1, 2)])
        assert trace_Z(diag_algebra(h)) == h

    def test_rank_two_diagonal_valuation_adds(self):
        h1 = NovikovSeries([(2, F(1, 3))])
        h2 = NovikovSeries([(5, F(1, 4)), (1, 1)])
        Z = trace_Z(diag_algebra(h1, h2))
        assert Z.valuation() == h1.valuation() + h2.valuation()
        assert Z == h1 * h2

    def test_trace_equals_bareiss_det_random(self):
        rng = random.Random(23)
        for n in range(1, 5):
            for _ in range(4):
                form = random_symmetric_form(rng, n)
                assert trace_Z(CliffordAlgebraModel(form)) \
                    == det_bareiss(form)

    def test_chain_link_trace_valuation_is_kB(self):
        for k in (1, 2, 3):
            link = CircleLinkS2(k, F(1, 8), F(1, 4))
            cert = critical_data(link, BulkParameter(F(1)))
            Z = trace_Z(CliffordAlgebraModel(cert.hessian))
            assert Z.valuation() == k * link.B

    def test_scaling_shifts_by_n_val_u(self):
        rng = random.Random(5)
        n = 3
        form = random_symmetric_form(rng, n)
        u = NovikovSeries([(2, F(1, 2)), (1, 1)])
        scaled = [[entry * u for entry in row] for row in form]
        Z = trace_Z(CliffordAlgebraModel(form))
        Zu = trace_Z(CliffordAlgebraModel(scaled))
        shift = n * u.valuation()
        assert Zu.valuation() == Z.valuation() + shift
        lead_ratio = Zu.leading_coefficient() / Z.leading_coefficient()
        assert lead_ratio == u.leading_coefficient() ** n


class TestCalibration:
    def test_rank_one_enumeration_pins_kappa_and_parity(self):
        # Brute force over the candidate grid on the two-element basis:
        # only kappa = 1 with the parity twist reproduces the form.
        h = NovikovSeries([(7, F(2, 3))])
        survivors = []
        for kappa in (F(2), F(1), F(1, 2), F(-1), F(-2)):
            for parity in (False, True):
                for quad in (False, True):
                    Z = trace_with_conventions([[h]], kappa, parity, quad)
                    if Z == h:
                        survivors.append((kappa, parity, quad))
        assert all(k == KAPPA and parity for k, parity, _ in survivors)
        assert (KAPPA, True, True) in survivors

    def test_rank_two_fixes_quadratic_twist(self):
        h1, h2 = mono(2), mono(3)
        form = [[h1, NovikovSeries.zero()], [NovikovSeries.zero(), h2]]
        good = trace_with_conventions(form, KAPPA, True, True)
        bad = trace_with_conventions(form, KAPPA, True, False)
        assert good == h1 * h2
        assert bad == -(h1 * h2)

    def test_frozen_constants_hold_without_retuning(self):
        rng = random.Random(99)
        for n in (3, 4, 5):
            form = random_symmetric_form(rng, n, diagonal=(n == 5))
            assert trace_Z(CliffordAlgebraModel(form)) == det_bareiss(form)


class TestDefectBound:
    def test_reads_valuation(self):
        assert defect_bound(NovikovSeries.monomial(4, F(1, 2))) == F(1, 2)

    def test_chain_defect_is_kB(self):
        link = CircleLinkS2(2, F(1, 8), F(1, 4))
        cert = critical_data(link, BulkParameter(F(1)))
        Z = trace_Z(CliffordAlgebraModel(cert.hessian))
        assert defect_bound(Z) == 2 * link.B

    def test_zero_trace_degenerate(self):
        with pytest.raises(DegenerateTraceError, match="not Morse"):
            defect_bound(NovikovSeries.zero())
