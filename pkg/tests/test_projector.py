from fractions import Fraction

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from qsu3.basis import enumerate_basis, highest_label
from qsu3.matrices import eye, max_abs, to_float
from qsu3.oracle import build_module, decompose_product, highest_weight_vectors, product_of
from qsu3.projector import (
    extremal_projector_matrix, factorized_projection_operator, factorized_projector,
    rho_tensor_component, tensor_projector_matrix, tensor_projector_terms, weight_projector,
)
from qsu3.qnum import QValue, q_pow

QE = QValue("7/10", "exact")
H = Fraction(1, 2)


def is_zero(m):
    return all(not x for x in m.flat)


def test_projector_on_irrep_is_highest_weight_dyad():
    for rep in ((1, 0), (0, 1), (1, 1), (2, 1)):
        m = build_module(rep, QE)
        p = extremal_projector_matrix(m)
        unit = eye(m.dim, QE) * 0
        k = enumerate_basis(rep).index(highest_label(rep))
        unit[k, k] = QE.one()
        assert is_zero(p - unit)


def test_projector_on_singlet_weight_space():
    q = QValue(0.7)
    m = product_of((1, 0), (0, 1), q)
    p = to_float(extremal_projector_matrix(m) @ weight_projector(m, (0, 0)))
    assert np.linalg.matrix_rank(p, tol=1e-10) == 1
    hw = to_float(np.array(highest_weight_vectors(m, (0, 0))[0]))
    assert np.abs(p @ hw - hw).max() < 1e-12


def test_idempotent_exact_on_octet_and_product():
    for m in (build_module((1, 1), QE), product_of((1, 0), (0, 1), QE)):
        p = extremal_projector_matrix(m)
        assert is_zero(p @ p - p)
        assert is_zero(p - factorized_projector(m))


@given(st.sampled_from([((1, 0), (1, 0)), ((0, 1), (1, 0)), ((1, 1), (0, 1))]),
       st.sampled_from([0.5, 0.7, 2.0]))
@settings(max_examples=12)
def test_projector_annihilated_by_generators(pair, qf):
    m = product_of(*pair, QValue(qf))
    p = to_float(extremal_projector_matrix(m))
    g = {k: to_float(v) for k, v in m.gen.items()}
    assert np.abs(p @ p - p).max() < 1e-9
    for up, down in (("e12", "e21"), ("e23", "e32"), ("e13", "e31")):
        assert np.abs(g[up] @ p).max() < 1e-9
        assert np.abs(p @ g[down]).max() < 1e-9


def test_tensor_form_highest_weight_term():
    rep = (1, 1)
    h = highest_label(rep)
    terms = tensor_projector_terms(rep, h, h, QE)
    assert terms[0].jpp == 0
    m = build_module(rep, QE)
    p = extremal_projector_matrix(m)
    assert is_zero(tensor_projector_matrix(m, rep, h, h) - p)


def test_tensor_form_is_unit_operator_on_irrep():
    q = QValue(0.7)
    rep = (1, 0)
    m = build_module(rep, q)
    labels = enumerate_basis(rep)
    for a, g in enumerate(labels):
        for b, gp in enumerate(labels):
            unit = np.zeros((3, 3))
            unit[a, b] = 1
            assert np.abs(to_float(tensor_projector_matrix(m, rep, g, gp)) - unit).max() < 1e-12
            assert np.abs(to_float(factorized_projection_operator(m, rep, g, gp)) - unit).max() < 1e-12


def test_tensor_form_matches_oracle_on_product():
    q = QValue(0.7)
    m = product_of((1, 0), (0, 1), q)
    for comp in decompose_product(m):
        labels = enumerate_basis(comp.rep)
        for g in labels[::3]:
            for gp in labels[::2]:
                ref = comp.projector_element(g, gp)
                assert max_abs(tensor_projector_matrix(m, comp.rep, g, gp) - ref) < 1e-10


def test_no_terms_for_inadmissible_labels():
    assert tensor_projector_terms((1, 0), (1, 0, 0), (0, 0, 0), QE) == []


def test_rho_components():
    m = build_module((1, 1), QE)
    c = rho_tensor_component("plain", 0, 0, QE)
    assert is_zero(c.matrix(m) - eye(m.dim, QE))
    c = rho_tensor_component("plain", H, H, QE)
    cart = np.diag([q_pow(QE, Fraction(-w[0], 2)) for w in m.weights])
    assert is_zero(c.matrix(m) - m.gen["e21"] @ cart)
