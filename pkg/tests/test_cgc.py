from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qsu3.basis import enumerate_basis, highest_label, hypercharge, weight
from qsu3.cgc import cgc_table, projector_matrix_element, resolve_multiplicity, seeds
from qsu3.matrices import to_float
from qsu3.oracle import decompose_product, product_of
from qsu3.qnum import DomainError, QValue, Radical

QE = QValue("7/10", "exact")
H = Fraction(1, 2)
SMALL = [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (0, 2)]


def test_trivial_second_factor():
    for rep in ((1, 0), (1, 1), (2, 1)):
        h = highest_label(rep)
        z = (0, 0, 0)
        assert projector_matrix_element((rep, (0, 0), rep), h, h, z, z, h, h, QE) == 1


def test_singlet_elements_frozen():
    # values equal the oracle projector <g1 g2|P^(0,0)|g1' g2'> on 3 (x) 3bar, q = 7/10
    reps = ((1, 0), (0, 1), (0, 0))
    u, d, s = (H, H, H), (H, H, -H), (0, 0, 0)
    bu, bd, bs = (0, H, H), (0, H, -H), (H, 0, 0)
    z = (0, 0, 0)
    frozen = {
        (u, u, bd, bd): Fraction(4900, 17301),
        (u, d, bd, bu): Fraction(-7000, 17301),
        (u, s, bd, bs): Fraction(3430, 17301),
        (d, d, bu, bu): Fraction(10000, 17301),
        (d, s, bu, bs): Fraction(-4900, 17301),
        (s, s, bs, bs): Fraction(2401, 17301),
    }
    for (g1, g1p, g2, g2p), v in frozen.items():
        assert projector_matrix_element(reps, g1, g1p, g2, g2p, z, z, QE) == Radical(v)


def test_weight_violation_is_zero():
    reps = ((1, 0), (0, 1), (0, 0))
    z = (0, 0, 0)
    assert projector_matrix_element(reps, (H, H, H), (H, H, H), (0, H, H), (0, H, -H), z, z, QE) == 0


def test_bad_labels_raise():
    with pytest.raises(DomainError):
        projector_matrix_element(((1, 0), (0, 1), (0, 0)), (1, 0, 0), (H, H, H), (0, H, H), (0, H, -H),
                                 (0, 0, 0), (0, 0, 0), QE)


def test_master_formula_matches_oracle_exact():
    for rep1, rep2 in (((1, 0), (1, 0)), ((0, 1), (1, 0))):
        m = product_of(rep1, rep2, QE)
        rows = [(a, b) for a in enumerate_basis(rep1) for b in enumerate_basis(rep2)]
        for comp in decompose_product(m):
            labels = enumerate_basis(comp.rep)
            for g3 in labels[::2]:
                g3p = labels[0]
                ref = comp.projector_element(g3, g3p)
                for i, (g1, g2) in enumerate(rows):
                    for k, (g1p, g2p) in enumerate(rows):
                        v = projector_matrix_element((rep1, rep2, comp.rep), g1, g1p, g2, g2p, g3, g3p, QE)
                        assert v == ref[i, k]


def test_resolve_multiplicity():
    assert len(resolve_multiplicity((1, 0), (0, 1), (1, 1), QE)) == 1
    assert resolve_multiplicity((1, 0), (0, 1), (2, 0), QE) == []
    combos = resolve_multiplicity((1, 1), (1, 1), (1, 1), QValue(0.7))
    assert len(combos) == 2
    assert len(seeds((1, 1), (1, 1), (1, 1))) >= 2


def test_identity_table():
    t = cgc_table((1, 0), (0, 0), (1, 0), QE)
    z = (0, 0, 0)
    for g in enumerate_basis((1, 0)):
        for gp in enumerate_basis((1, 0)):
            assert t.value(g, z, 0, gp) == (1 if g == gp else 0)


def test_stretched_entry():
    t = cgc_table((1, 0), (1, 0), (2, 0), QE)
    h1, h3 = highest_label((1, 0)), highest_label((2, 0))
    assert t.value(h1, h1, 0, h3) == 1


def test_exact_multiplicity_table_orthonormal():
    t = cgc_table((1, 1), (1, 1), (1, 1), QE)
    assert t.multiplicity == 2
    b = np.concatenate([t.block(0), t.block(1)], axis=1)
    gram = b.T @ b
    assert all(gram[i, k] == (1 if i == k else 0) for i in range(16) for k in range(16))


def test_classical_singlet():
    q = QValue(1, "exact")
    t = cgc_table((1, 0), (0, 1), (0, 0), q)
    comp = [c for c in decompose_product(product_of((1, 0), (0, 1), q)) if c.rep == (0, 0)][0]
    e = comp.embeddings[0][:, 0]
    b = t.block(0)[:, 0]
    assert all(x == y for x, y in zip(b, e)) or all(x == -y for x, y in zip(b, e))
    assert sorted(abs(float(x)) for x in b if x) == pytest.approx([3 ** -0.5] * 3)


@given(st.sampled_from(SMALL), st.sampled_from(SMALL), st.sampled_from([0.5, 0.7, 1.0, 2.0]))
@settings(max_examples=25)
def test_tables_orthogonal_and_selection_rules(rep1, rep2, qf):
    from qsu3.basis import product_multiplicities
    q = QValue(qf)
    cols = []
    for rep3 in product_multiplicities(rep1, rep2):
        t = cgc_table(rep1, rep2, rep3, q)
        for (g1, g2, _, g3), v in t.entries.items():
            assert g1.tz + g2.tz == g3.tz
            assert hypercharge(rep1, g1.j) + hypercharge(rep2, g2.j) == hypercharge(rep3, g3.j)
            w1, w2, w3 = weight(rep1, g1), weight(rep2, g2), weight(rep3, g3)
            assert (w1[0] + w2[0], w1[1] + w2[1]) == w3
        cols += [to_float(t.block(s)) for s in range(t.multiplicity)]
    u = np.concatenate(cols, axis=1)
    assert u.shape[0] == u.shape[1]
    assert np.abs(u.T @ u - np.eye(u.shape[0])).max() < 1e-10


def test_phase_convention():
    q = QValue(0.7)
    for rep1, rep2, rep3 in (((1, 0), (1, 0), (0, 1)), ((1, 1), (1, 0), (1, 1)), ((1, 1), (1, 1), (1, 1))):
        t = cgc_table(rep1, rep2, rep3, q)
        for s in range(t.multiplicity):
            k = enumerate_basis(rep3).index(highest_label(rep3))
            col = to_float(t.block(s))[:, k]
            first = col[np.abs(col) > 1e-12][0]
            assert first > 0
