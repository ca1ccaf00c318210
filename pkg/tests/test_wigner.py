from fractions import Fraction
from itertools import product

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.physics import wigner as classical

from su2_oracles import all_6j_args, contract_6j, direct_9j, spins
from qsu3.matrices import max_abs, to_float
from qsu3.qnum import QValue, Radical, half_range
from qsu3.wigner import (
    cgc_su2q, projections, q6j, q9j, q9j_unbraided, su2_irrep, su2_product_module,
    su2_projector_elem, triangle, u_coefficient,
)

Q1 = QValue(1, "exact")
Q07 = QValue("7/10", "exact")


def sym(x):
    return sympy.Rational(x.numerator, x.denominator)


def test_cgc_trivial_examples():
    for q in (Q07, QValue(2.0)):
        for j in spins(2):
            for m in projections(j):
                assert float(cgc_su2q(j, m, 0, 0, j, m, q)) == pytest.approx(1, abs=1e-14)
        assert float(cgc_su2q("1/2", "1/2", "1/2", "1/2", 1, 1, q)) == pytest.approx(1, abs=1e-14)


def test_singlet_matches_null_vector():
    # oracle: null vector of Delta(T+) on the zero weight space of 2 (x) 2
    for qs in ("7/10", "2", "1"):
        q = QValue(qs, "exact")
        space = su2_product_module(su2_irrep("1/2", q), su2_irrep("1/2", q))
        # basis order (+,+), (+,-), (-,+), (-,-)
        up = space.raise_
        a, b = up[0, 1], up[0, 2]
        norm = (a * a + b * b).sqrt()
        expected = (b / norm, -a / norm)
        got = (cgc_su2q("1/2", "1/2", "1/2", "-1/2", 0, 0, q), cgc_su2q("1/2", "-1/2", "1/2", "1/2", 0, 0, q))
        assert got == expected
    # frozen value at q = 7/10
    assert str(cgc_su2q("1/2", "1/2", "1/2", "-1/2", 0, 0, Q07)) == "7/149*sqrt(149)"


def test_cgc_classical_limit_matches_sympy():
    for j1, j2 in product(spins(2), repeat=2):
        for j in half_range(abs(j1 - j2), j1 + j2):
            for m1, m2 in product(projections(j1), projections(j2)):
                m = m1 + m2
                if abs(m) > j:
                    continue
                ref = classical.clebsch_gordan(*(sym(x) for x in (j1, j2, j, m1, m2, m)))
                assert sympy.simplify(sympy.sympify(str(cgc_su2q(j1, m1, j2, m2, j, m, Q1))) - ref) == 0


def test_cgc_is_column_of_product_module():
    # every coupled vector is annihilated by Delta(T+) when m = j
    q = QValue(0.7)
    for j1, j2 in product(spins(3 / 2), repeat=2):
        space = su2_product_module(su2_irrep(j1, q), su2_irrep(j2, q))
        rows = [(m1, m2) for m1 in projections(j1) for m2 in projections(j2)]
        for j in half_range(abs(j1 - j2), j1 + j2):
            v = np.array([cgc_su2q(j1, m1, j2, m2, j, j, q) for m1, m2 in rows])
            assert np.abs(to_float(space.raise_) @ v).max() < 1e-12


def test_q6j_examples():
    assert q6j(1, 1, 1, 1, 1, 1, Q1) == Radical(Fraction(1, 6))
    assert q6j(1, 1, 1, 1, 1, 3, Q07) == 0
    # one argument zero collapses to (-1)^(a+b+c)/sqrt([2a+1][2b+1])
    for a, b in product(spins(2), repeat=2):
        for c in half_range(abs(a - b), a + b):
            expected = contract_6j(a, b, c, 0, c, b, Q07)
            assert q6j(a, b, c, 0, c, b, Q07) == expected


def test_q6j_classical_matches_sympy():
    for args in all_6j_args(3 / 2):
        ref = classical.wigner_6j(*(sym(x) for x in args))
        assert sympy.simplify(sympy.sympify(str(q6j(*args, Q1))) - ref) == 0


def test_q6j_float_contraction():
    q = QValue(2.0)
    for args in all_6j_args(3 / 2):
        assert q6j(*args, q) == pytest.approx(contract_6j(*args, q), abs=1e-12)


def test_q9j_classical_matches_sympy():
    cases = [(1, 1, 1, 1, 1, 1, 1, 1, 1), ("1/2", "1/2", 1, "1/2", "1/2", 1, 1, 1, 0),
             (1, "1/2", "3/2", "1/2", 1, "1/2", "3/2", "3/2", 1), (2, 1, 1, 1, 1, 1, 1, 1, 1)]
    for args in cases:
        hs = [Fraction(x) for x in args]
        ref = classical.wigner_9j(*(sym(x) for x in hs), prec=None)
        got = sympy.sympify(str(q9j(*hs, Q1)))
        assert sympy.simplify(got - ref) == 0
        assert q9j_unbraided(*hs, Q1) == q9j(*hs, Q1)


def test_q9j_braided_differs_from_single_sum():
    # at q != 1 the three-6j single sum is not the recoupling coefficient
    args = ("1/2", "1/2", 1, "1/2", "1/2", 1, 1, 1, 0)
    q = QValue(0.7)
    assert q9j(*args, q) == pytest.approx(direct_9j(*args, q), abs=1e-13)
    assert abs(q9j_unbraided(*args, q) - direct_9j(*args, q)) > 1e-3


def test_q9j_triad_violation():
    assert q9j(1, 1, 3, 1, 1, 1, 1, 1, 1, Q07) == 0


@given(st.sampled_from(list(all_6j_args(1))), st.sampled_from([0.5, 0.7, 2.0, 3.0]))
@settings(max_examples=40, deadline=None)
def test_q6j_symmetries(args, qf):
    q = QValue(qf)
    a, b, c, d, e, f = args
    v = q6j(a, b, c, d, e, f, q)
    assert q6j(b, a, c, e, d, f, q) == pytest.approx(v, abs=1e-12)
    assert q6j(a, e, f, d, b, c, q) == pytest.approx(v, abs=1e-12)
    assert q6j(*args, q.inverse()) == pytest.approx(v, abs=1e-12)


def test_u_coefficient_classical_matches_racah():
    for j, jp in product(spins(1), repeat=2):
        for tpp, tp, t in product(spins(2), repeat=3):
            jj = j + jp
            if not (triangle(j, tpp, t) and triangle(tp, jp, t) and triangle(tp, tpp, jj)):
                continue
            ref = sympy.sqrt((2 * sym(jj) + 1) * (2 * sym(t) + 1)) * classical.racah(
                *(sym(x) for x in (j, jp, tpp, tp, jj, t)))
            got = sympy.sympify(str(u_coefficient(j, jp, tpp, tp, t, Q1)))
            assert sympy.simplify(got - ref) == 0


def test_u_coefficient_scalar_collapse():
    for j, t in product(spins(2), repeat=2):
        for tpp in spins(2):
            v = u_coefficient(j, 0, tpp, t, t, Q07) if triangle(j, t, t) else None
            if v is not None and triangle(0, tpp, t):
                assert v == (1 if tpp == t else 0)


def test_projector_elem_on_irrep_and_singlet():
    q = QValue(0.7)
    for t in spins(3 / 2):
        space = su2_irrep(t, q)
        ms = projections(t)
        for a, tz in enumerate(ms):
            p = to_float(su2_projector_elem(t, tz, tz, space))
            unit = np.zeros((len(ms), len(ms)))
            unit[a, a] = 1
            assert np.abs(p - unit).max() < 1e-12
        if t >= 1:
            # another spin of the same integrality is killed
            other = t - 1
            assert max_abs(su2_projector_elem(other, other, other, space)) < 1e-12
    space = su2_product_module(su2_irrep("1/2", q), su2_irrep("1/2", q))
    singlet = np.array([0, cgc_su2q("1/2", "1/2", "1/2", "-1/2", 0, 0, q),
                        cgc_su2q("1/2", "-1/2", "1/2", "1/2", 0, 0, q), 0])
    p = to_float(su2_projector_elem(0, 0, 0, space))
    assert np.abs(p - np.outer(singlet, singlet)).max() < 1e-12
