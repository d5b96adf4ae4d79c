import random
from fractions import Fraction

import pytest

from quatspin.errors import DimensionError, DomainError, SpectrumError
from quatspin.exact import (
    DenseMatrix,
    ExactScalar,
    column_space_basis,
    lagrange_eigenprojectors,
    mat_mul,
)


def rand_scalar(rng, span=6):
    return ExactScalar(
        Fraction(rng.randint(-span, span), rng.randint(1, 4)),
        Fraction(rng.randint(-span, span), rng.randint(1, 4)),
    )


def rand_matrix(rng, rows, cols):
    return DenseMatrix.from_rows(
        [[rand_scalar(rng) for _ in range(cols)] for _ in range(rows)])


def test_scalar_field_axioms():
    rng = random.Random(7)
    for _ in range(200):
        a, b, c = (rand_scalar(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)
        assert a + b == b + a
        if not b.is_zero():
            assert (a / b) * b == a
        assert (a * a.conjugate()).im == 0
        assert a.abs2() == (a * a.conjugate()).re


def test_scalar_int_interop():
    a = ExactScalar(Fraction(1, 2), 3)
    assert a + 1 == ExactScalar(Fraction(3, 2), 3)
    assert 2 * a == ExactScalar(1, 6)
    assert ExactScalar(5) == 5
    assert hash(ExactScalar(5)) == hash(5)
    assert str(ExactScalar(Fraction(1, 2), Fraction(-1, 3))) == "1/2-1/3i"
    with pytest.raises(ZeroDivisionError):
        a / ExactScalar(0)


def test_identity_multiplication():
    rng = random.Random(1)
    m = rand_matrix(rng, 4, 4)
    assert DenseMatrix.identity(4) @ m == m
    assert m @ DenseMatrix.identity(4) == m


def test_symplectic_square():
    j = DenseMatrix.from_rows([[0, 1], [-1, 0]])
    assert j @ j == -DenseMatrix.identity(2)


def test_matmul_shape_error():
    a = DenseMatrix.zeros(2, 3)
    b = DenseMatrix.zeros(2, 3)
    with pytest.raises(DimensionError):
        mat_mul(a, b)
    with pytest.raises(DimensionError):
        a + DenseMatrix.zeros(3, 2)


def test_algebra_properties_random():
    rng = random.Random(11)
    for _ in range(25):
        a = rand_matrix(rng, 3, 3)
        b = rand_matrix(rng, 3, 3)
        c = rand_matrix(rng, 3, 3)
        assert (a @ b) @ c == a @ (b @ c)
        assert a @ (b + c) == a @ b + a @ c
        assert (a + b) @ c == a @ c + b @ c
        s = rand_scalar(rng)
        assert (a.scale(s)) @ b == (a @ b).scale(s)
        if not s.is_zero():
            assert a.scale(s).scale(ExactScalar(1) / s) == a


def test_common_denominator_normalization():
    m = DenseMatrix.from_rows([[Fraction(2, 4), Fraction(3, 6)]])
    n = DenseMatrix.from_rows([[Fraction(1, 2), Fraction(1, 2)]])
    assert m == n
    assert m[0, 0] == ExactScalar(Fraction(1, 2))


def test_big_integer_fallback():
    # entries large enough that one product overflows int64
    big = 2**40
    a = DenseMatrix.from_rows([[big, 0], [0, big]])
    sq = a @ a
    assert sq[0, 0] == ExactScalar(big * big)
    assert (sq - DenseMatrix.identity(2).scale(big * big)).is_zero()


def test_hermitian_and_trace():
    m = DenseMatrix.from_rows([[ExactScalar(1, 2), ExactScalar(0, -1)],
                               [ExactScalar(3), ExactScalar(Fraction(1, 3), 1)]])
    h = m.hermitian()
    assert h[0, 0] == ExactScalar(1, -2)
    assert h[0, 1] == ExactScalar(3)
    assert m.trace() == ExactScalar(Fraction(4, 3), 3)
    assert m.frobenius_norm2() == Fraction(1 + 4) + 1 + 9 + Fraction(1, 9) + 1


def test_diagonal_eigenprojectors():
    d = DenseMatrix.from_rows([[1, 0], [0, -1]])
    projs = lagrange_eigenprojectors(d, [1, -1])
    assert projs[ExactScalar(1)] == DenseMatrix.from_rows([[1, 0], [0, 0]])
    assert projs[ExactScalar(-1)] == DenseMatrix.from_rows([[0, 0], [0, 1]])


def test_eigenprojectors_reject_duplicates():
    d = DenseMatrix.identity(2)
    with pytest.raises(DomainError):
        lagrange_eigenprojectors(d, [1, 1])


def test_eigenprojectors_certification_failure():
    d = DenseMatrix.from_rows([[1, 0], [0, 2]])
    with pytest.raises(SpectrumError):
        lagrange_eigenprojectors(d, [1, -1])


def test_eigenprojectors_nontrivial():
    # rank-1 projector pair for a non-diagonal involution
    m = DenseMatrix.from_rows([[0, 1], [1, 0]])
    projs = lagrange_eigenprojectors(m, [1, -1])
    p = projs[ExactScalar(1)]
    assert p == DenseMatrix.from_rows([[Fraction(1, 2), Fraction(1, 2)],
                                       [Fraction(1, 2), Fraction(1, 2)]])
    assert p.trace() == ExactScalar(1)


def test_eigenprojectors_float_backend():
    d = DenseMatrix.from_rows([[1, 0], [0, -1]], kind="float")
    projs = lagrange_eigenprojectors(d, [1, -1], tol=1e-12)
    p = projs[complex(1)]
    assert (p - DenseMatrix.from_rows([[1, 0], [0, 0]], kind="float")).is_zero(1e-12)


def test_column_space_basis_exact():
    # second column is a multiple of the first, third independent
    m = DenseMatrix.from_rows([[1, 2, 0],
                               [2, 4, 1],
                               [3, 6, 0]])
    basis = column_space_basis(m)
    assert len(basis) == 2
    # reduced form: pivots normalized to 1, sorted by pivot position
    assert [b[0, 0] for b in basis] == [ExactScalar(1), ExactScalar(0)]
    assert basis[1][1, 0] == ExactScalar(1)
    # the original columns must be reproducible from the basis
    span = DenseMatrix.from_rows([[basis[j][i, 0] for j in range(2)]
                                  for i in range(3)])
    # column 0 = 1*b0 + 2*b1 + 3*... check via elimination residual instead
    col0 = DenseMatrix.from_rows([[1], [2], [3]])
    coeff = DenseMatrix.from_rows([[1], [2]])
    assert span @ coeff == col0


def test_column_space_basis_of_projector():
    p = DenseMatrix.from_rows([[Fraction(1, 2), Fraction(1, 2)],
                               [Fraction(1, 2), Fraction(1, 2)]])
    basis = column_space_basis(p)
    assert len(basis) == 1
    assert basis[0][0, 0] == ExactScalar(1)
    assert basis[0][1, 0] == ExactScalar(1)


def test_scaled_representation_invariance():
    rng = random.Random(3)
    m = rand_matrix(rng, 3, 3)
    scaled = m.scale(Fraction(7, 5)).scale(Fraction(5, 7))
    assert scaled == m
    assert m.fingerprint() == scaled.fingerprint()
    assert m.fingerprint() != (m + DenseMatrix.identity(3)).fingerprint()


def test_float_backend_mirror():
    rng = random.Random(5)
    a = rand_matrix(rng, 3, 3)
    b = rand_matrix(rng, 3, 3)
    fa, fb = a.to_float(), b.to_float()
    prod = (a @ b).to_float()
    assert ((fa @ fb) - prod).is_zero(1e-12)
    assert (fa + fb - (a + b).to_float()).is_zero(1e-12)
    assert not fa.is_zero(1e-12)
