"""Shared helpers for the test suite.

Everything here recomputes quantities from dense 4x4 matrices with
numpy's general-purpose eigensolver, deliberately bypassing the closed
forms in the package, so each test compares two independent derivations.
"""

import math

import numpy as np
import pytest

SIGMA = (
    np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
)
EYE2 = np.eye(2, dtype=complex)

# worked example: the X-matrix that the regression values below refer to
EX_MATRIX = np.array([
    [0.0783, 0.0000, 0.0000, 0.0000],
    [0.0000, 0.1250, 0.1000, 0.0000],
    [0.0000, 0.1000, 0.1250, 0.0000],
    [0.0000, 0.0000, 0.0000, 0.6717],
])


def dense_entropy(matrix) -> float:
    """Von Neumann entropy in bits via the dense eigensolver."""
    w = np.linalg.eigvalsh(np.asarray(matrix, dtype=complex))
    return float(-sum(x * math.log2(x) for x in np.clip(w, 0.0, 1.0)
                      if x > 0.0))


def ptrace_a(matrix) -> np.ndarray:
    """Reduced state of qubit b."""
    m = np.asarray(matrix, dtype=complex).reshape(2, 2, 2, 2)
    return np.einsum("abad->bd", m)


def ptrace_b(matrix) -> np.ndarray:
    """Reduced state of qubit a."""
    m = np.asarray(matrix, dtype=complex).reshape(2, 2, 2, 2)
    return np.einsum("abcb->ac", m)


def measured_conditional_entropy(matrix, direction) -> float:
    """Average entropy after projecting qubit b along a unit direction.

    Built from explicit projectors and partial traces; the package's
    conditional ensembles must reproduce this number.
    """
    z1, z2, z3 = direction
    b0 = 0.5 * (EYE2 + z1 * SIGMA[0] + z2 * SIGMA[1] + z3 * SIGMA[2])
    m = np.asarray(matrix, dtype=complex)
    total = 0.0
    for proj in (b0, EYE2 - b0):
        pb = np.kron(EYE2, proj)
        sub = pb @ m @ pb
        pk = float(np.trace(sub).real)
        if pk > 1e-15:
            total += pk * dense_entropy(ptrace_b(sub) / pk)
    return total


def closed_form_bell_diagonal(c1, c2, c3) -> float:
    """Independent transcription of the Bell-diagonal discord formula."""
    big = max(abs(c1), abs(c2), abs(c3))

    def xl(t):
        return t * math.log2(t) if t > 0.0 else 0.0

    return (0.25 * (xl(1 - c3 + c1 + c2) + xl(1 - c3 - c1 - c2)
                    + xl(1 + c3 + c1 - c2) + xl(1 + c3 - c1 + c2))
            - 0.5 * (xl(1 + big) + xl(1 - big)))


@pytest.fixture
def ex_matrix() -> np.ndarray:
    return EX_MATRIX.copy()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260815)
