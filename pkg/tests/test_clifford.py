import random
from fractions import Fraction

import pytest

from quatspin.clifford import (
    MAX_M_ENV,
    basis_vector,
    build_clifford_model,
    complex_vector,
    corrupt_gamma,
    vector_action,
)
from quatspin.errors import DimensionError, DomainError, ResourceLimitError
from quatspin.exact import DenseMatrix, ExactScalar


@pytest.fixture(scope="module")
def model2():
    return build_clifford_model(2)


@pytest.mark.parametrize("m", [1, 2])
def test_anticommutation_relations(m):
    model = build_clifford_model(m)
    ident = DenseMatrix.identity(model.spinor_dim)
    for i, gi in enumerate(model.gamma):
        for j, gj in enumerate(model.gamma):
            anti = gi @ gj + gj @ gi
            if i == j:
                assert anti == ident.scale(-2)
            else:
                assert anti.is_zero()


def test_dimensions():
    for m in (1, 2, 3):
        model = build_clifford_model(m)
        assert model.n == 4 * m
        assert len(model.gamma) == 4 * m
        assert model.spinor_dim == 2 ** (2 * m)
        assert model.gamma[0].rows == model.spinor_dim


def test_gamma_entries_are_fourth_roots(model2):
    allowed = {ExactScalar(0), ExactScalar(1), ExactScalar(-1),
               ExactScalar(0, 1), ExactScalar(0, -1)}
    for g in model2.gamma:
        for i in range(g.rows):
            for j in range(g.cols):
                assert g[i, j] in allowed


def test_resource_cap():
    with pytest.raises(ResourceLimitError):
        build_clifford_model(5)
    with pytest.raises(DomainError):
        build_clifford_model(0)
    with pytest.raises(DomainError):
        build_clifford_model(2, kind="floats")


def test_resource_cap_env_override(monkeypatch):
    monkeypatch.setenv(MAX_M_ENV, "1")
    with pytest.raises(ResourceLimitError):
        build_clifford_model(2)
    monkeypatch.setenv(MAX_M_ENV, "not-a-number")
    with pytest.raises(DomainError):
        build_clifford_model(1)


def test_isotropic_vector_squares_to_zero(model2):
    # (e1 + i e2)^2 = 0: the complexified null vector
    coeffs = [0] * model2.n
    coeffs[0] = ExactScalar(1)
    coeffs[1] = ExactScalar(0, 1)
    a = vector_action(model2, complex_vector(model2, coeffs))
    assert (a @ a).is_zero()


def test_action_squares_to_minus_norm(model2):
    rng = random.Random(13)
    for _ in range(5):
        coeffs = [Fraction(rng.randint(-5, 5), rng.randint(1, 3))
                  for _ in range(model2.n)]
        v = complex_vector(model2, coeffs)
        a = vector_action(model2, v)
        norm2 = sum(c * c for c in coeffs)
        ident = DenseMatrix.identity(model2.spinor_dim)
        assert a @ a == ident.scale(-norm2)


def test_action_linearity(model2):
    e0 = basis_vector(model2, 0)
    e1 = basis_vector(model2, 1)
    lhs = vector_action(model2, e0.scale(3) + e1.scale(ExactScalar(0, 2)))
    rhs = model2.gamma[0].scale(3) + model2.gamma[1].scale(ExactScalar(0, 2))
    assert lhs == rhs


def test_action_shape_checks(model2):
    with pytest.raises(DimensionError):
        vector_action(model2, DenseMatrix.zeros(3, 1))
    with pytest.raises(DomainError):
        basis_vector(model2, 8)


def test_corrupt_gamma_breaks_relations(model2):
    bad = corrupt_gamma(model2, 0)
    assert bad.gamma[0] == -model2.gamma[0]
    # the square still equals -1, but products with other generators flip sign
    g0, g1 = bad.gamma[0], bad.gamma[1]
    assert (g0 @ g1 + g1 @ g0).is_zero()  # anticommutation survives a sign flip
    assert bad.content_hash() != model2.content_hash()


def test_content_hash_deterministic():
    a = build_clifford_model(1)
    b = build_clifford_model(1)
    assert a.content_hash() == b.content_hash()


def test_float_backend_model():
    model = build_clifford_model(1, kind="float")
    ident = DenseMatrix.identity(model.spinor_dim, kind="float")
    for gi in model.gamma:
        assert (gi @ gi + ident).is_zero(1e-12)
