"""Invariants built from a pure-state decomposition.

The overlap (Gram) matrix Omega with entries tr(A_i A_j^dag) changes only
by unitary conjugation when the decomposition is rotated, so the
coefficients of its characteristic polynomial depend on the state alone.
The same mechanism extends to the order-2s trace hypermatrix with entries
tr(A_{i1} A_{j1}^dag ... A_{is} A_{js}^dag): every multilinear invariant
of the matching format, evaluated on it, is both decomposition-independent
and local-unitary invariant.

Implemented invariant polynomials (explicit formulas only):

* the elementary symmetric coefficients F_i of Omega (any size),
* Cayley's 2x2x2 hyperdeterminant,
* the two degree-4 determinant invariants of format 2x2x2x2, named N and
  M after the two 4x4 index layouts they are printed as,
* coefficients of the lambda polynomials inv(Omega_s - lambda E),
* the Ky Fan (trace) norm of the realignment matrix, the classical
  comparison baseline.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import (
    BadShapeError,
    NotBipartiteError,
    NotHermitianError,
    NotPSDError,
    NotUnitTraceError,
    TooLargeError,
    UnsupportedFormatError,
)
from .linalg import Polynomial, char_poly, determinant, singular_values
from .states import DensityMatrix, PureStateDecomposition

GRAM_TOL = 1e-10
HYPERMATRIX_MAX_ENTRIES = 2**20


@dataclass(frozen=True)
class GramMatrix:
    """The I x I overlap matrix Omega_ij = tr(A_i A_j^dag).

    Hermitian and positive semidefinite by construction; its trace equals
    the trace of the reconstructed state (1 for a density matrix).
    """

    omega: np.ndarray

    @property
    def size(self) -> int:
        return self.omega.shape[0]


def gram_matrix(d: PureStateDecomposition) -> GramMatrix:
    """Overlap matrix of a decomposition, validated against its invariants."""
    stack = d.stacked()
    omega = np.einsum("ikl,jkl->ij", stack, stack.conj())
    herm = float(np.abs(omega - omega.conj().T).max())
    if herm > GRAM_TOL:
        raise NotHermitianError(f"NotHermitian: Gram residual {herm:.3e} > {GRAM_TOL:.3e}")
    omega = (omega + omega.conj().T) / 2.0
    w = np.linalg.eigvalsh(omega)
    if w.min() < -GRAM_TOL:
        raise NotPSDError(f"NotPSD: Gram min eigenvalue {w.min():.3e} < -{GRAM_TOL:.3e}")
    tr = float(np.trace(omega).real)
    if abs(tr - 1.0) > GRAM_TOL:
        raise NotUnitTraceError(
            f"NotUnitTrace: Gram trace {tr!r} differs from 1 by {abs(tr - 1.0):.3e}"
        )
    omega.setflags(write=False)
    return GramMatrix(omega=omega)


@dataclass(frozen=True)
class InvariantVector:
    """F_0 .. F_I with F_i the i-th elementary symmetric polynomial of
    the Gram spectrum. F_0 is exactly 1; F_1 equals tr(rho)."""

    F: np.ndarray

    def __len__(self) -> int:
        return len(self.F)


def f_invariants(g: GramMatrix) -> InvariantVector:
    """Characteristic-polynomial coefficients of Omega, sign-normalized.

    F_i := e_i(spectrum of Omega), i.e. (-1)**i times the coefficient of
    lambda**(I-i) in det(lambda E - Omega). For a PSD Omega every F_i is
    real and nonnegative, matching the concrete F_1 = tr(Omega) and
    F_I = det(Omega) formulas.
    """
    p = char_poly(g.omega)
    size = g.size
    f = np.array([(-1) ** i * p.coeffs[size - i] for i in range(size + 1)], dtype=complex)
    f[0] = 1.0
    f.setflags(write=False)
    return InvariantVector(F=f)


@dataclass(frozen=True)
class Hypermatrix:
    """Order-2s trace hypermatrix of a decomposition.

    ``entries`` has shape (I,) * (2s) with axes in the trace order
    (i_1, j_1, i_2, j_2, ...), so that for s = 2 and I = 2 the row-major
    flat index of entry (i, j, k, l) is exactly r = 8i + 4j + 2k + l.
    Use :meth:`entry` to address an element by its two index groups.
    """

    s: int
    side: int
    entries: np.ndarray

    def entry(self, i_idx, j_idx) -> complex:
        """Element for row group (i_1..i_s) and column group (j_1..j_s)."""
        if len(i_idx) != self.s or len(j_idx) != self.s:
            raise BadShapeError(f"index groups must each have length {self.s}")
        interleaved = tuple(x for pair in zip(i_idx, j_idx) for x in pair)
        return complex(self.entries[interleaved])

    def flat(self) -> np.ndarray:
        """Row-major flattening; matches the r = 8i+4j+2k+l convention."""
        return self.entries.reshape(-1)


def _validate_hypermatrix_symmetries(t: np.ndarray, s: int) -> None:
    scale = max(float(np.abs(t).max()), 1.0)
    # conj(T[i1,j1,...,is,js]) == T[js,is, ..., j1,i1]: reverse the pair
    # sequence and swap within each pair (trace of the dagger).
    axes = []
    for p in range(s - 1, -1, -1):
        axes.extend([2 * p + 1, 2 * p])
    if np.abs(t.conj() - np.transpose(t, axes)).max() > 1e-10 * scale:
        raise BadShapeError("hypermatrix violates conjugate symmetry")
    # simultaneous cyclic shift of the s (i, j) pairs (trace cyclicity)
    if s > 1:
        rolled = np.moveaxis(t, [0, 1], [2 * s - 2, 2 * s - 1])
        if np.abs(t - rolled).max() > 1e-10 * scale:
            raise BadShapeError("hypermatrix violates cyclic symmetry")


def hypermatrix(d: PureStateDecomposition, s: int) -> Hypermatrix:
    """The order-2s hypermatrix tr(A_{i1} A_{j1}^dag ... A_{is} A_{js}^dag).

    For s = 1 this flattens to the Gram matrix. Refuses formats larger
    than 2**20 entries.
    """
    if s < 1:
        raise BadShapeError(f"order parameter s must be >= 1, got {s}")
    i_count = len(d)
    if i_count ** (2 * s) > HYPERMATRIX_MAX_ENTRIES:
        raise TooLargeError(
            f"hypermatrix would have {i_count ** (2 * s)} entries "
            f"(limit {HYPERMATRIX_MAX_ENTRIES})"
        )
    stack = d.stacked()
    # products P[i, j] = A_i A_j^dag, shape (I, I, n, n)
    prod = np.einsum("iab,jcb->ijac", stack, stack.conj())
    cur = prod
    for _ in range(s - 1):
        cur = np.einsum("...ab,klbc->...klac", cur, prod)
    t = np.einsum("...aa->...", cur)
    _validate_hypermatrix_symmetries(t, s)
    t = np.ascontiguousarray(t)
    t.setflags(write=False)
    return Hypermatrix(s=s, side=i_count, entries=t)


def identity_hypermatrix(s: int, side: int) -> np.ndarray:
    """Entries of the identity hypermatrix: prod_k delta(i_k, j_k)."""
    eye = np.eye(side)
    t = eye
    for _ in range(s - 1):
        t = np.multiply.outer(t, eye)
    return t  # axes already (i1, j1, i2, j2, ...)


_LEVI_CIVITA_2 = np.array([[0.0, 1.0], [-1.0, 0.0]])


def cayley_det_222(tensor, method: str = "expanded") -> complex:
    """Cayley's hyperdeterminant of a 2x2x2 array.

    ``method="expanded"`` evaluates the classical 12-term degree-4
    polynomial. ``method="compact"`` contracts with the Levi-Civita symbol:
    b_kn = (1/2) eps^{il} eps^{jm} a_{ijk} a_{lmn}, then
    Det = -2 eps^{il} eps^{jm} b_{ij} b_{lm}. The -2 normalization (rather
    than +1/2) is what makes the contraction identical to the 12-term
    expansion; it is fixed by the basis tensor with a_000 = a_111 = 1,
    whose hyperdeterminant is 1.

    Vanishes on decomposable (product) tensors, and scales by det(B)**2
    when an invertible B acts on any one slot.
    """
    a = np.asarray(tensor, dtype=complex)
    if a.size != 8:
        raise BadShapeError(f"expected 8 entries for a 2x2x2 tensor, got {a.size}")
    a = a.reshape(2, 2, 2)
    if method == "expanded":
        return complex(
            a[0, 0, 0] ** 2 * a[1, 1, 1] ** 2
            + a[0, 0, 1] ** 2 * a[1, 1, 0] ** 2
            + a[0, 1, 0] ** 2 * a[1, 0, 1] ** 2
            + a[1, 0, 0] ** 2 * a[0, 1, 1] ** 2
            - 2 * a[0, 0, 0] * a[0, 0, 1] * a[1, 1, 0] * a[1, 1, 1]
            - 2 * a[0, 0, 0] * a[0, 1, 0] * a[1, 0, 1] * a[1, 1, 1]
            - 2 * a[0, 0, 0] * a[0, 1, 1] * a[1, 0, 0] * a[1, 1, 1]
            - 2 * a[0, 0, 1] * a[0, 1, 0] * a[1, 0, 1] * a[1, 1, 0]
            - 2 * a[0, 0, 1] * a[0, 1, 1] * a[1, 1, 0] * a[1, 0, 0]
            - 2 * a[0, 1, 0] * a[0, 1, 1] * a[1, 0, 1] * a[1, 0, 0]
            + 4 * a[0, 0, 0] * a[0, 1, 1] * a[1, 0, 1] * a[1, 1, 0]
            + 4 * a[0, 0, 1] * a[0, 1, 0] * a[1, 0, 0] * a[1, 1, 1]
        )
    if method == "compact":
        eps = _LEVI_CIVITA_2
        b = 0.5 * np.einsum("il,jm,ijk,lmn->kn", eps, eps, a, a)
        return complex(-2.0 * np.einsum("il,jm,ij,lm->", eps, eps, b, b))
    raise BadShapeError(f"unknown method {method!r}; use 'expanded' or 'compact'")


# 4x4 index layouts of the two degree-4 invariants of format 2x2x2x2,
# as flat positions r = 8i + 4j + 2k + l into the s=2 hypermatrix.
N_LAYOUT = ((0, 1, 8, 9), (2, 3, 10, 11), (4, 5, 12, 13), (6, 7, 14, 15))
M_LAYOUT = ((0, 8, 2, 10), (1, 9, 3, 11), (4, 12, 6, 14), (5, 13, 7, 15))


def _layout_det(flat: np.ndarray, layout) -> complex:
    mat = np.array([[flat[r] for r in row] for row in layout], dtype=complex)
    return determinant(mat)


def _require_2222(h: Hypermatrix, name: str) -> None:
    if h.s != 2 or h.side != 2:
        raise UnsupportedFormatError(
            f"{name} is defined for format 2x2x2x2 only (s=2, I=2); "
            f"got s={h.s}, I={h.side}"
        )


def invariant_N(h: Hypermatrix) -> complex:
    """Degree-4 invariant N: det of the (a0 a1 a8 a9 / a2 a3 a10 a11 /
    a4 a5 a12 a13 / a6 a7 a14 a15) layout of the s=2 hypermatrix."""
    _require_2222(h, "invariant_N")
    return _layout_det(h.flat(), N_LAYOUT)


def invariant_M(h: Hypermatrix) -> complex:
    """Degree-4 invariant M: det of the (a0 a8 a2 a10 / a1 a9 a3 a11 /
    a4 a12 a6 a14 / a5 a13 a7 a15) layout of the s=2 hypermatrix."""
    _require_2222(h, "invariant_M")
    return _layout_det(h.flat(), M_LAYOUT)


@lru_cache(maxsize=16)
def _vandermonde_inverse(d: int) -> np.ndarray:
    """Exact inverse of the Vandermonde matrix at integer nodes 0..d.

    Computed in rational arithmetic so interpolation at the nodes is exact
    up to the evaluation error of the sampled values.
    """
    n = d + 1
    aug = [
        [Fraction(x) ** p for p in range(n)] + [Fraction(int(x == j)) for j in range(n)]
        for x in range(n)
    ]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [v / pv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    inv = np.array([[float(aug[i][n + j]) for j in range(n)] for i in range(n)])
    inv.setflags(write=False)
    return inv


def _interpolate(values: np.ndarray, d: int) -> np.ndarray:
    """Coefficients (ascending) of the degree-<=d polynomial through
    the samples at integer nodes 0..d."""
    return _vandermonde_inverse(d) @ values


def lambda_poly(d: PureStateDecomposition, s: int, inv: str) -> Polynomial:
    """Coefficients of inv(Omega_s - lambda E) as a polynomial in lambda.

    ``inv`` selects the invariant polynomial applied to the shifted
    hypermatrix: ``"det"`` (requires s = 1; the resulting polynomial is
    returned in the monic normalization (-1)**I det(Omega - lambda E) =
    det(lambda E - Omega), under which zero-padding the decomposition
    multiplies it by exactly lambda**(J-r)), or ``"N"`` / ``"M"``
    (require s = 2 and a two-member decomposition).

    Coefficients are recovered by evaluating at the integer nodes
    0..degree and applying the exact Vandermonde inverse.
    """
    size = len(d)
    if inv == "det":
        if s != 1:
            raise UnsupportedFormatError(f"inv='det' requires s=1, got s={s}")
        omega = gram_matrix(d).omega
        values = np.array(
            [determinant(omega - t * np.eye(size)) for t in range(size + 1)]
        )
        coeffs = ((-1) ** size) * _interpolate(values, size)
        return Polynomial(coeffs)
    if inv in ("N", "M"):
        if s != 2 or size != 2:
            raise UnsupportedFormatError(
                f"inv={inv!r} requires s=2 and a rank-2 decomposition; "
                f"got s={s}, I={size}"
            )
        layout = N_LAYOUT if inv == "N" else M_LAYOUT
        h = hypermatrix(d, 2)
        eye = identity_hypermatrix(2, 2).reshape(-1)
        flat = h.flat()
        values = np.array(
            [_layout_det(flat - t * eye, layout) for t in range(5)]
        )
        return Polynomial(_interpolate(values, 4))
    raise UnsupportedFormatError(f"unknown invariant {inv!r}; use 'det', 'N' or 'M'")


def realignment(rho: DensityMatrix) -> np.ndarray:
    """The realigned matrix R of a bipartite state.

    R has shape n^2 x m^2 with R[(i,j),(k,l)] = rho[(i,k),(j,l)], indices
    big-endian as everywhere in this package.
    """
    if len(rho.dims) != 2:
        raise NotBipartiteError(
            f"realignment needs a bipartite state, got {len(rho.dims)} subsystems"
        )
    n, m = rho.dims
    four = rho.mat.reshape(n, m, n, m)  # axes (i, k, j, l)
    return four.transpose(0, 2, 1, 3).reshape(n * n, m * m)


def realignment_kyfan(rho: DensityMatrix) -> float:
    """Ky Fan norm (sum of all singular values) of the realigned matrix."""
    return float(np.sum(singular_values(realignment(rho))))
