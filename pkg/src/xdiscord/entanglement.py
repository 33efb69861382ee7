"""Concurrence, entanglement of formation, and the rank-2 bridge.

For rank-2 X-states a purification with a single ancilla qubit c exists;
tracing out qubit a then relates the classical correlation of the input
(measured on a) to the entanglement of formation of the (b, c) pair:

    C_a(rho_ab) + E(rho_bc) = S(rho_b)

which this module checks end to end.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .engine import discord
from .states import (_OFF_X, BlochX, XDensityMatrix, binary_entropy,
                     matrix_to_bloch)

RANK_TOL = 1e-10        # eigenvalues below this count as zero
NEAR_RANK_BAND = 1e-6   # third eigenvalue in (RANK_TOL, this) warns
ROUTE_TOL = 1e-10       # allowed gap between the two concurrence routes

# sigma_y (x) sigma_y, real in the computational basis
_SYY = np.array([
    [0.0, 0.0, 0.0, -1.0],
    [0.0, 0.0, 1.0, 0.0],
    [0.0, 1.0, 0.0, 0.0],
    [-1.0, 0.0, 0.0, 0.0],
])


class RankError(ValueError):
    """State does not have the rank required by the decomposition."""


def _as_array(matrix) -> np.ndarray:
    if isinstance(matrix, XDensityMatrix):
        matrix = matrix.matrix
    return np.asarray(matrix, dtype=complex)


def spin_flip(matrix) -> np.ndarray:
    """The spin-flipped matrix (sy x sy) conj(rho) (sy x sy)."""
    m = _as_array(matrix)
    return _SYY @ m.conj() @ _SYY


def _sqrtm_psd(m: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(m)
    w = np.sqrt(np.clip(w, 0.0, None))
    return (v * w) @ v.conj().T


def mu_spectrum(matrix) -> np.ndarray:
    """Square roots of the eigenvalues of rho rho-tilde, descending.

    Computed on the hermitian product sqrt(rho) rho-tilde sqrt(rho),
    which shares the spectrum and keeps the eigensolver on safe ground.
    Works for any two-qubit density matrix.
    """
    m = _as_array(matrix)
    sq = _sqrtm_psd(m)
    w = np.linalg.eigvalsh(sq @ spin_flip(m) @ sq)
    # eigensolver noise on exact zeros would be amplified by the sqrt
    w[w < 64.0 * np.finfo(float).eps * max(float(w[-1]), 1e-30)] = 0.0
    return np.sort(np.sqrt(np.clip(w, 0.0, None)))[::-1]


def mu_spectrum_closed(matrix) -> np.ndarray:
    """The mu spectrum of an X-shaped matrix in closed form.

    {sqrt(rho11 rho44) +/- |rho14|, sqrt(rho22 rho33) +/- |rho23|},
    descending.
    """
    m = _as_array(matrix)
    g1 = math.sqrt(max(m[0, 0].real * m[3, 3].real, 0.0))
    g2 = math.sqrt(max(m[1, 1].real * m[2, 2].real, 0.0))
    a14 = abs(m[0, 3])
    a23 = abs(m[1, 2])
    mu = np.array([g1 + a14, abs(g1 - a14), g2 + a23, abs(g2 - a23)])
    return np.sort(mu)[::-1]


def _con_from_mu(mu: np.ndarray) -> float:
    return max(0.0, float(mu[0] - mu[1] - mu[2] - mu[3]))


def concurrence(matrix, check: bool = True) -> float:
    """Concurrence of a two-qubit density matrix.

    Uses the general eigenvalue route; for X-shaped inputs the closed
    form is evaluated as well and a disagreement beyond 1e-10 raises,
    so the two derivations keep checking each other.
    """
    m = _as_array(matrix)
    con = _con_from_mu(mu_spectrum(m))
    if check and np.abs(m[_OFF_X]).max() < 1e-14:
        con_x = _con_from_mu(mu_spectrum_closed(m))
        if abs(con - con_x) > ROUTE_TOL:
            raise RuntimeError(
                "concurrence routes disagree: eigen %.12g vs closed %.12g"
                % (con, con_x))
    return con


def eof_from_concurrence(con: float) -> float:
    """Entanglement of formation from the concurrence, in bits."""
    con = min(max(con, 0.0), 1.0)
    x = 0.5 * (1.0 + math.sqrt(max(1.0 - con * con, 0.0)))
    return binary_entropy(x)


def entanglement_of_formation(matrix) -> float:
    return eof_from_concurrence(concurrence(matrix))


# ---------------------------------------------------------------------------
# Rank-2 spectral decompositions.  The X pattern keeps the two nonzero
# eigenvectors inside the outer span(|00>, |11>) and middle span(|01>, |10>)
# blocks, so the decomposition is written down entrywise.

@dataclass(frozen=True)
class RankTwoDecomposition:
    """Spectral decomposition rho = w0 |v0><v0| + w1 |v1><v1|.

    case is "I" (support in the outer block, c3 = 1), "II" (middle block,
    c3 = -1), or "III" (one eigenvector in each block).  purification is
    the three-qubit pure state sum_k sqrt(w_k) |v_k>|k>_c as a (2, 2, 2)
    tensor over (a, b, c); rho_bc is its (b, c) marginal.
    """

    case: str
    weights: tuple[float, float]
    vectors: np.ndarray
    purification: np.ndarray
    rho_bc: np.ndarray


def _block_eigvecs(t: float, u: float):
    # eigenpairs of [[1 + t, u], [u, 1 - t]] / 2, descending eigenvalue;
    # each formula vector is paired with its eigenvalue by residual
    k = math.hypot(t, u)
    lams = (0.5 * (1.0 + k), 0.5 * (1.0 - k))
    if abs(u) < 1e-15:
        vecs = ((1.0, 0.0), (0.0, 1.0)) if t >= 0.0 else ((0.0, 1.0), (1.0, 0.0))
        return [(lams[0], vecs[0]), (lams[1], vecs[1])]
    sg = math.copysign(1.0, u)
    cands = []
    for e in (1.0, -1.0):
        n = math.sqrt(2.0 * k * k + 2.0 * e * t * k)
        cands.append((sg * (t + e * k) / n, abs(u) / n))

    def residual(vec, lam):
        a, b = vec
        return math.hypot(0.5 * ((1.0 + t) * a + u * b) - lam * a,
                          0.5 * (u * a + (1.0 - t) * b) - lam * b)

    out = []
    used: set[int] = set()
    for lam in lams:
        idx = min((i for i in range(2) if i not in used),
                  key=lambda i: residual(cands[i], lam))
        used.add(idx)
        out.append((lam, cands[idx]))
    return out


def _embed(pair, idx0: int, idx1: int) -> np.ndarray:
    v = np.zeros(4)
    v[idx0], v[idx1] = pair
    return v


def rank_two_classify(matrix) -> RankTwoDecomposition:
    """Classify a rank-2 X-state and build its spectral decomposition.

    Raises RankError when the state is not rank 2 at tolerance 1e-10; a
    third eigenvalue inside (1e-10, 1e-6) warns and is treated as zero.
    """
    xm = matrix if isinstance(matrix, XDensityMatrix) else XDensityMatrix(matrix)
    p = matrix_to_bloch(xm)
    m = np.real(np.asarray(xm.matrix))
    r, s, c1, c2, c3 = p.as_tuple()
    R1 = math.hypot(r - s, c1 + c2)
    R2 = math.hypot(r + s, c1 - c2)
    lam_mid = ((1.0 - c3 + R1) / 4.0, (1.0 - c3 - R1) / 4.0)
    lam_out = ((1.0 + c3 + R2) / 4.0, (1.0 + c3 - R2) / 4.0)
    tagged = sorted([(lam_mid[0], "mid"), (lam_mid[1], "mid"),
                     (lam_out[0], "out"), (lam_out[1], "out")],
                    key=lambda t: t[0], reverse=True)
    lams = [t[0] for t in tagged]
    if lams[1] <= RANK_TOL:
        raise RankError(
            "state has rank 1 (second eigenvalue %.3e); decomposition "
            "needs rank 2" % lams[1])
    if lams[2] >= NEAR_RANK_BAND:
        nonzero = sum(1 for x in lams if x > RANK_TOL)
        raise RankError(
            f"state has rank {nonzero}, decomposition needs rank 2")
    if lams[2] > RANK_TOL:
        warnings.warn(
            "third eigenvalue %.3e is barely zero; treating the state as "
            "rank 2" % lams[2], RuntimeWarning, stacklevel=2)
    # residual slack grows with whatever the rank-2 truncation discards
    slack = max(1e-10, 8.0 * (abs(lams[2]) + abs(lams[3])))

    top_blocks = {tagged[0][1], tagged[1][1]}
    if top_blocks == {"out"}:
        case = "I"
        tr = m[0, 0] + m[3, 3]
        pairs = _block_eigvecs((m[0, 0] - m[3, 3]) / tr, 2.0 * m[0, 3] / tr)
        weights = (tr * pairs[0][0], tr * pairs[1][0])
        vectors = [_embed(pairs[0][1], 0, 3), _embed(pairs[1][1], 0, 3)]
    elif top_blocks == {"mid"}:
        case = "II"
        tr = m[1, 1] + m[2, 2]
        pairs = _block_eigvecs((m[1, 1] - m[2, 2]) / tr, 2.0 * m[1, 2] / tr)
        weights = (tr * pairs[0][0], tr * pairs[1][0])
        vectors = [_embed(pairs[0][1], 1, 2), _embed(pairs[1][1], 1, 2)]
    else:
        case = "III"
        w_out = 0.5 * (1.0 + c3)
        w_mid = 0.5 * (1.0 - c3)
        u0 = math.sqrt(max((1.0 + r + s + c3) / (2.0 * (1.0 + c3)), 0.0))
        u3 = math.copysign(
            math.sqrt(max((1.0 - r - s + c3) / (2.0 * (1.0 + c3)), 0.0)),
            c1 - c2 if c1 != c2 else 1.0)
        v1 = math.sqrt(max((1.0 + r - s - c3) / (2.0 * (1.0 - c3)), 0.0))
        v2 = math.copysign(
            math.sqrt(max((1.0 - r + s - c3) / (2.0 * (1.0 - c3)), 0.0)),
            c1 + c2 if c1 != -c2 else 1.0)
        weights = (w_out, w_mid)
        vectors = [_embed((u0, u3), 0, 3), _embed((v1, v2), 1, 2)]

    vecs = np.array(vectors)
    recon = (weights[0] * np.outer(vecs[0], vecs[0])
             + weights[1] * np.outer(vecs[1], vecs[1]))
    if np.abs(recon - m).max() > slack:
        raise RuntimeError(
            "decomposition residual %.3e; eigenvector formulas do not "
            "match the input" % np.abs(recon - m).max())

    psi = np.zeros((2, 2, 2))
    for k in (0, 1):
        psi[:, :, k] = math.sqrt(max(weights[k], 0.0)) * vecs[k].reshape(2, 2)
    rho_bc = np.einsum("abc,ade->bcde", psi, psi).reshape(4, 4)
    return RankTwoDecomposition(case=case,
                                weights=(float(weights[0]), float(weights[1])),
                                vectors=vecs, purification=psi,
                                rho_bc=rho_bc)


def purification_marginal_ab(decomp: RankTwoDecomposition) -> np.ndarray:
    """Trace the ancilla back out; must reproduce the input state."""
    psi = decomp.purification
    return np.einsum("abc,dec->abde", psi, psi).reshape(4, 4)


@dataclass(frozen=True)
class KoashiWinterReport:
    """Both sides of C_a(rho_ab) + E(rho_bc) = S(rho_b) for one state."""

    case: str
    classical_correlation_a: float
    concurrence_bc: float
    eof_bc: float
    marginal_entropy_b: float
    residual: float
    z_star_swapped: float


def koashi_winter(matrix) -> KoashiWinterReport:
    """Check the purification identity on a rank-2 X-state.

    The classical correlation measured on qubit a equals the one the
    engine computes (which measures b) on the qubit-swapped state.
    """
    decomp = rank_two_classify(matrix)
    p = matrix_to_bloch(matrix if isinstance(matrix, XDensityMatrix)
                        else XDensityMatrix(matrix))
    swapped = discord(p.swapped())
    c_a = swapped.classical_correlation
    con = concurrence(decomp.rho_bc)
    e_bc = eof_from_concurrence(con)
    s_b = binary_entropy((1.0 + p.s) / 2.0)
    return KoashiWinterReport(case=decomp.case,
                              classical_correlation_a=c_a,
                              concurrence_bc=con, eof_bc=e_bc,
                              marginal_entropy_b=s_b,
                              residual=abs(c_a + e_bc - s_b),
                              z_star_swapped=swapped.z_star)
