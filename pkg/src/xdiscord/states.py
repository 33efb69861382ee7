"""Two-qubit X-state representations, validation, and entropic basics.

An X-state is a two-qubit density matrix whose only nonzero entries sit on
the diagonal and the anti-diagonal.  Up to local phases it is fixed by five
real Pauli coefficients (r, s, c1, c2, c3):

    rho = (I(x)I + r s3(x)I + s I(x)s3 + sum_i ci si(x)si) / 4

with r, s the local z-polarizations and ci the diagonal correlators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

PHYS_TOL = 1e-10    # slack allowed on the two positivity inequalities
EIG_CLAMP = 1e-12   # closed-form eigenvalues this close to 0 or 1 snap
TRACE_TOL = 1e-12
HERM_TOL = 1e-12
PHASE_TOL = 1e-13   # |Im| above this (relative) marks a corner as complex

# entries that must vanish for the X pattern
_OFF_X = np.array([
    [False, True, True, False],
    [True, False, False, True],
    [True, False, False, True],
    [False, True, True, False],
])


class PhysicalityError(ValueError):
    """Parameters or matrix outside the set of valid X-states."""


class XPatternError(ValueError):
    """Matrix has support off the diagonal and anti-diagonal."""


def xlog2(x):
    """x * log2(x) with the 0 log 0 = 0 convention, elementwise."""
    x = np.asarray(x, dtype=float)
    safe = np.where(x > 0.0, x, 1.0)
    out = np.where(x > 0.0, x * np.log2(safe), 0.0)
    return float(out) if out.ndim == 0 else out


def binary_entropy(x):
    """Shannon entropy -x log2 x - (1-x) log2 (1-x) of a bit, in bits."""
    x = np.asarray(x, dtype=float)
    out = -(xlog2(x) + xlog2(1.0 - x)) + 0.0   # "+ 0.0" normalizes -0.0
    return float(out) if np.ndim(out) == 0 else out


def physicality_margins(r, s, c1, c2, c3):
    """Slack of the two block positivity constraints.

    Both are nonnegative exactly when the Pauli coefficients describe a
    positive semidefinite matrix:

        1 - c3 >= sqrt((r - s)^2 + (c1 + c2)^2)
        1 + c3 >= sqrt((r + s)^2 + (c1 - c2)^2)
    """
    m1 = (1.0 - c3) - math.hypot(r - s, c1 + c2)
    m2 = (1.0 + c3) - math.hypot(r + s, c1 - c2)
    return m1, m2


@dataclass(frozen=True)
class BlochX:
    """Pauli coefficients (r, s, c1, c2, c3) of a two-qubit X-state.

    Validates the positivity region on construction; raises
    PhysicalityError naming the violated inequality otherwise.
    """

    r: float
    s: float
    c1: float
    c2: float
    c3: float

    def __post_init__(self):
        for name in ("r", "s", "c1", "c2", "c3"):
            v = float(getattr(self, name))
            object.__setattr__(self, name, v)
            if not math.isfinite(v) or abs(v) > 1.0 + PHYS_TOL:
                raise PhysicalityError(f"{name} = {v!r} outside [-1, 1]")
        m1, m2 = physicality_margins(*self.as_tuple())
        if m1 < -PHYS_TOL:
            raise PhysicalityError(
                "1 - c3 >= sqrt((r-s)^2 + (c1+c2)^2) violated by %.3e" % -m1)
        if m2 < -PHYS_TOL:
            raise PhysicalityError(
                "1 + c3 >= sqrt((r+s)^2 + (c1-c2)^2) violated by %.3e" % -m2)

    def as_tuple(self) -> tuple[float, float, float, float, float]:
        return (self.r, self.s, self.c1, self.c2, self.c3)

    def swapped(self) -> "BlochX":
        """The same state with the roles of the two qubits exchanged."""
        return BlochX(self.s, self.r, self.c1, self.c2, self.c3)

    @property
    def margins(self) -> tuple[float, float]:
        return physicality_margins(*self.as_tuple())


@dataclass(frozen=True)
class XDensityMatrix:
    """A validated 4x4 X-shaped density matrix.

    Checks the X pattern, hermiticity, unit trace, and positive
    semidefiniteness at construction.  The wrapped array is read-only.
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.shape != (4, 4):
            raise XPatternError(f"expected a 4x4 matrix, got {m.shape}")
        stray = np.abs(m[_OFF_X])
        if stray.max() > HERM_TOL:
            raise XPatternError(
                "entries off the diagonal and anti-diagonal "
                "(largest %.3e)" % stray.max())
        if np.abs(m - m.conj().T).max() > HERM_TOL:
            raise PhysicalityError("matrix is not hermitian")
        tr = m.trace().real
        if abs(tr - 1.0) > TRACE_TOL:
            raise PhysicalityError(f"trace {tr!r} differs from 1")
        if np.linalg.eigvalsh(m).min() < -PHYS_TOL:
            raise PhysicalityError(
                "matrix has a negative eigenvalue (%.3e)"
                % np.linalg.eigvalsh(m).min())
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def corner_outer(self) -> complex:
        return complex(self.matrix[0, 3])

    @property
    def corner_inner(self) -> complex:
        return complex(self.matrix[1, 2])


def bloch_to_matrix(p: BlochX) -> XDensityMatrix:
    """Assemble the density matrix from Pauli coefficients.

    Diagonal (1 + e_a r + e_b s + e_a e_b c3)/4 over signs e_a, e_b, outer
    corner (c1 - c2)/4, inner corner (c1 + c2)/4, corners real.
    """
    r, s, c1, c2, c3 = p.as_tuple()
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = (1.0 + r + s + c3) / 4.0
    m[1, 1] = (1.0 + r - s - c3) / 4.0
    m[2, 2] = (1.0 - r + s - c3) / 4.0
    m[3, 3] = (1.0 - r - s + c3) / 4.0
    m[0, 3] = m[3, 0] = (c1 - c2) / 4.0
    m[1, 2] = m[2, 1] = (c1 + c2) / 4.0
    return XDensityMatrix(m)


def _real_or_modulus(corner: complex) -> float:
    # keep real corners (either sign) exact; rotate complex ones positive
    scale = max(1.0, abs(corner))
    if abs(corner.imag) > PHASE_TOL * scale:
        return abs(corner)
    return corner.real


def matrix_to_bloch(m) -> BlochX:
    """Extract Pauli coefficients from a matrix, stripping corner phases.

    Real corners of either sign are preserved, so bloch -> matrix -> bloch
    is an exact identity.  Complex corners are replaced by their moduli
    (a local phase gauge that leaves discord, entanglement, and the
    measurement optimum unchanged); the removed phases are available from
    corner_phases.
    """
    xm = m if isinstance(m, XDensityMatrix) else XDensityMatrix(m)
    d = np.real(np.diag(xm.matrix))
    e14 = _real_or_modulus(xm.corner_outer)
    e23 = _real_or_modulus(xm.corner_inner)
    r = d[0] + d[1] - d[2] - d[3]
    s = d[0] - d[1] + d[2] - d[3]
    c3 = d[0] - d[1] - d[2] + d[3]
    c1 = 2.0 * (e23 + e14)
    c2 = 2.0 * (e23 - e14)
    return BlochX(r, s, c1, c2, c3)


def corner_phases(m) -> tuple[float, float]:
    """Phases (outer, inner) removed by matrix_to_bloch, in radians."""
    xm = m if isinstance(m, XDensityMatrix) else XDensityMatrix(m)
    out = []
    for corner in (xm.corner_outer, xm.corner_inner):
        if abs(corner.imag) > PHASE_TOL * max(1.0, abs(corner)):
            out.append(float(np.angle(corner)))
        else:
            out.append(0.0)
    return out[0], out[1]


def spectrum(p: BlochX) -> np.ndarray:
    """Eigenvalues of the state in closed form, descending.

    The X pattern block-diagonalizes into two 2x2 blocks:

        (1 - c3 +/- R1)/4 with R1 = sqrt((r - s)^2 + (c1 + c2)^2)
        (1 + c3 +/- R2)/4 with R2 = sqrt((r + s)^2 + (c1 - c2)^2)
    """
    r, s, c1, c2, c3 = p.as_tuple()
    R1 = math.hypot(r - s, c1 + c2)
    R2 = math.hypot(r + s, c1 - c2)
    lam = np.array([1.0 - c3 + R1, 1.0 - c3 - R1,
                    1.0 + c3 + R2, 1.0 + c3 - R2]) / 4.0
    lam[np.abs(lam) < EIG_CLAMP] = 0.0
    lam[np.abs(lam - 1.0) < EIG_CLAMP] = 1.0
    return np.sort(lam)[::-1]


def marginals(p: BlochX) -> tuple[np.ndarray, np.ndarray]:
    """Reduced states of qubits a and b, each diag((1+x)/2, (1-x)/2)."""
    ra = np.diag([(1.0 + p.r) / 2.0, (1.0 - p.r) / 2.0])
    rb = np.diag([(1.0 + p.s) / 2.0, (1.0 - p.s) / 2.0])
    return ra, rb


def state_entropy(p: BlochX) -> float:
    """Von Neumann entropy of the state in bits."""
    return float(-np.sum(xlog2(spectrum(p))))


def mutual_information(p: BlochX) -> float:
    """Quantum mutual information S(a) + S(b) - S(ab) in bits."""
    sa = binary_entropy((1.0 + p.r) / 2.0)
    sb = binary_entropy((1.0 + p.s) / 2.0)
    return float(sa + sb + np.sum(xlog2(spectrum(p))))
