"""Concrete Clifford algebra models of R^{4m} acting on a 2^{2m}-dim spinor space.

Generators satisfy e_i e_j + e_j e_i = -2 delta_ij and are realized by the
iterated tensor construction (a chain of diagonal sign factors, one of the
two imaginary-unit 2x2 blocks, then identities), so every matrix entry lies
in {0, +1, -1, +i, -i}.
"""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, DomainError, ResourceLimitError
from .exact import DenseMatrix, ExactScalar

DEFAULT_MAX_M = 4
MAX_M_ENV = "QUATSPIN_MAX_M"

_BLOCK_I = np.eye(2, dtype=np.complex128)
_BLOCK_A = np.array([[0, 1j], [1j, 0]], dtype=np.complex128)   # squares to -1
_BLOCK_B = np.array([[0, 1], [-1, 0]], dtype=np.complex128)    # squares to -1
_BLOCK_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)


def resolved_max_m(max_m=None):
    """Effective model-size cap: explicit argument, else env override, else 4."""
    if max_m is not None:
        return int(max_m)
    env = os.environ.get(MAX_M_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise DomainError(f"{MAX_M_ENV} must be an integer, got {env!r}") from None
    return DEFAULT_MAX_M


def _kron_chain(factors):
    out = factors[0]
    for f in factors[1:]:
        out = np.kron(out, f)
    return out


@dataclass(frozen=True)
class CliffordModel:
    """A fixed matrix model: m, the 4m generators, and the backend kind."""

    m: int
    n: int
    spinor_dim: int
    gamma: tuple
    kind: str

    def content_hash(self):
        h = hashlib.sha256()
        h.update(f"clifford:m={self.m}:kind={self.kind}".encode())
        for g in self.gamma:
            h.update(g.fingerprint().encode())
        return h.hexdigest()


def build_clifford_model(m, kind="exact", max_m=None):
    """Build the standard Clifford model for quaternionic dimension m.

    Raises DomainError for m < 1 and ResourceLimitError above the cap
    (default 4, overridable via the QUATSPIN_MAX_M environment variable or
    the max_m argument).
    """
    if not isinstance(m, int) or m < 1:
        raise DomainError(f"quaternionic dimension must be a positive integer, got {m!r}")
    cap = resolved_max_m(max_m)
    if m > cap:
        raise ResourceLimitError(
            f"m={m} exceeds the cap {cap}; raise it via {MAX_M_ENV} or max_m=")
    if kind not in ("exact", "float"):
        raise DomainError(f"unknown backend kind {kind!r}")
    pairs = 2 * m
    gammas = []
    for j in range(pairs):
        lead = [_BLOCK_Z] * j
        tail = [_BLOCK_I] * (pairs - j - 1)
        for blk in (_BLOCK_A, _BLOCK_B):
            c = _kron_chain(lead + [blk] + tail)
            if kind == "float":
                g = DenseMatrix(rows=c.shape[0], cols=c.shape[1], kind="float", c=c)
            else:
                # entries are exactly 0, +-1, +-i, so rounding is lossless
                g = DenseMatrix.from_int_arrays(
                    np.rint(c.real).astype(np.int64),
                    np.rint(c.imag).astype(np.int64))
            gammas.append(g)
    return CliffordModel(m=m, n=4 * m, spinor_dim=2 ** (2 * m),
                         gamma=tuple(gammas), kind=kind)


def corrupt_gamma(model, index):
    """Model with one generator sign-flipped (negative-control harness)."""
    if not 0 <= index < model.n:
        raise DomainError(f"generator index {index} out of range 0..{model.n - 1}")
    gammas = list(model.gamma)
    gammas[index] = -gammas[index]
    return CliffordModel(m=model.m, n=model.n, spinor_dim=model.spinor_dim,
                         gamma=tuple(gammas), kind=model.kind)


def basis_vector(model, i):
    """The i-th (0-based) standard basis vector of R^{4m} as a column."""
    if not 0 <= i < model.n:
        raise DomainError(f"basis index {i} out of range 0..{model.n - 1}")
    col = DenseMatrix.zeros(model.n, 1, kind=model.kind)
    if model.kind == "float":
        c = col._c.copy()
        c[i, 0] = 1.0
        return DenseMatrix(rows=model.n, cols=1, kind="float", c=c)
    re = np.zeros((model.n, 1), dtype=np.int64)
    re[i, 0] = 1
    return DenseMatrix.from_int_arrays(re, np.zeros_like(re))


def complex_vector(model, coeffs):
    """Column vector in the complexified R^{4m} from a coefficient sequence."""
    if len(coeffs) != model.n:
        raise DimensionError(f"expected {model.n} coefficients, got {len(coeffs)}")
    return DenseMatrix.from_rows([[v] for v in coeffs], kind=model.kind)


def vector_action(model, v):
    """Clifford action of a (complexified) vector on the spinor space.

    v is an n x 1 column; the result is sum_i v_i gamma_i, extended
    C-linearly in the coefficients.
    """
    if not isinstance(v, DenseMatrix) or v.cols != 1 or v.rows != model.n:
        raise DimensionError(f"expected an {model.n}x1 coefficient column")
    if v.kind != model.kind:
        raise TypeError("vector backend does not match the model backend")
    out = DenseMatrix.zeros(model.spinor_dim, model.spinor_dim, kind=model.kind)
    for i in range(model.n):
        c = v[i, 0]
        if isinstance(c, complex):
            if c != 0:
                out = out + model.gamma[i].scale(c)
        elif not c.is_zero():
            out = out + model.gamma[i].scale(c)
    return out
