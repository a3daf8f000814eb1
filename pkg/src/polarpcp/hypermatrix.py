"""Matrices over the polar n-complex and n-bicomplex algebras.

An l x m hypercomplex matrix is stored as an (l, m, n) coefficient tensor
whose tube (i, k, :) holds the coefficients of entry A_ik.  The tube axis is
the fastest-varying one so tube DFTs stay cache-local.

The adjoint representation replaces each entry by its circulant matrix,
giving an ln x mn real or complex matrix that carries a ring isomorphism:
identity, sums, products, conjugate transpose and inverses all commute with
it.  The circulant Fourier transform (cft) block-diagonalizes the adjoint;
its frontal blocks are exactly the unnormalized tube DFT values, so the
matrix-free implementation is "transform every tube, regroup slices" and the
dense permutation/Kronecker construction survives only as a test oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .hyperalgebra import COMPLEX, REAL, PolarScalar, _check_field, promote_fields

UNNORMALIZED = "unnormalized"
UNITARY = "unitary"

# Relative imaginary-part threshold under which an inverse transform is
# considered real-valued.
_REAL_DETECT_RTOL = 1e-10


class HyperMatrix:
    """l x m matrix of polar n-complex or n-bicomplex entries."""

    __slots__ = ("data", "field")

    def __init__(self, data, field=None):
        arr = np.asarray(data)
        if arr.ndim != 3 or min(arr.shape) < 1:
            raise ValueError("data must have shape (l, m, n) with l, m, n >= 1")
        if field is None:
            field = COMPLEX if np.iscomplexobj(arr) else REAL
        _check_field(field)
        if field == REAL:
            if np.iscomplexobj(arr):
                if np.any(arr.imag != 0):
                    raise ValueError("real field requires zero imaginary parts")
                arr = arr.real
            arr = np.ascontiguousarray(arr, dtype=np.float64)
        else:
            arr = np.ascontiguousarray(arr, dtype=np.complex128)
        self.data = arr
        self.field = field

    @classmethod
    def zeros(cls, l, m, n, field=REAL):
        dtype = np.float64 if field == REAL else np.complex128
        return cls(np.zeros((l, m, n), dtype=dtype), field)

    @classmethod
    def identity(cls, m, n, field=REAL):
        out = cls.zeros(m, m, n, field)
        out.data[np.arange(m), np.arange(m), 0] = 1.0
        return out

    @property
    def l(self):
        return self.data.shape[0]

    @property
    def m(self):
        return self.data.shape[1]

    @property
    def n(self):
        return self.data.shape[2]

    @property
    def shape(self):
        return self.data.shape[:2]

    def entry(self, i, k):
        return PolarScalar(self.data[i, k], self.field)

    def copy(self):
        return HyperMatrix(self.data.copy(), self.field)

    def __repr__(self):
        return f"HyperMatrix(l={self.l}, m={self.m}, n={self.n}, field={self.field!r})"

    def _require_same_shape(self, other):
        if self.data.shape != other.data.shape:
            raise ValueError(
                f"shape mismatch: {self.data.shape} vs {other.data.shape}"
            )

    def __add__(self, other):
        if not isinstance(other, HyperMatrix):
            return NotImplemented
        self._require_same_shape(other)
        return HyperMatrix(self.data + other.data, promote_fields(self.field, other.field))

    def __sub__(self, other):
        if not isinstance(other, HyperMatrix):
            return NotImplemented
        self._require_same_shape(other)
        return HyperMatrix(self.data - other.data, promote_fields(self.field, other.field))

    def __neg__(self):
        return HyperMatrix(-self.data, self.field)

    def __mul__(self, scalar):
        if isinstance(scalar, (int, float, np.integer, np.floating)):
            return HyperMatrix(self.data * float(scalar), self.field)
        if isinstance(scalar, (complex, np.complexfloating)):
            return HyperMatrix(self.data.astype(np.complex128) * scalar, COMPLEX)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self.__mul__(1.0 / scalar)

    def __matmul__(self, other):
        if not isinstance(other, HyperMatrix):
            return NotImplemented
        return matmul(self, other)

    def conj_transpose(self):
        """Entry (i, k) of the result is the algebra conjugate of A_ki."""
        # Conjugation reverses the tube indices 1..n-1 and conjugates values.
        swapped = np.transpose(self.data, (1, 0, 2))
        flipped = np.roll(swapped[:, :, ::-1], 1, axis=2)
        return HyperMatrix(np.conj(flipped), self.field)

    @property
    def H(self):
        return self.conj_transpose()


@dataclass
class SpectralMatrix:
    """Transform-domain form of a hypercomplex matrix.

    blocks has shape (n, l, m): frontal slice b holds the b-th block of the
    block-diagonalized adjoint.  normalization records whether the values are
    the raw tube-DFT values ("unnormalized", the circulant eigenvalues) or
    divided by sqrt(n) ("unitary"), so downstream scalings are applied
    exactly once.
    """

    blocks: np.ndarray
    normalization: str = UNNORMALIZED

    def __post_init__(self):
        self.blocks = np.asarray(self.blocks, dtype=np.complex128)
        if self.blocks.ndim != 3 or min(self.blocks.shape) < 1:
            raise ValueError("blocks must have shape (n, l, m) with n, l, m >= 1")
        if self.normalization not in (UNNORMALIZED, UNITARY):
            raise ValueError(f"unknown normalization {self.normalization!r}")

    @property
    def n(self):
        return self.blocks.shape[0]

    @property
    def l(self):
        return self.blocks.shape[1]

    @property
    def m(self):
        return self.blocks.shape[2]


def adjoint(A):
    """Dense ln x mn adjoint: block (i, k) is the circulant of entry A_ik."""
    l, m, n = A.data.shape
    idx = (np.arange(n)[:, None] - np.arange(n)[None, :]) % n
    blocks = A.data[:, :, idx]            # (l, m, n, n)
    out = np.transpose(blocks, (0, 2, 1, 3)).reshape(l * n, m * n)
    return out


def stride_permutation(m, s):
    """Index map of the stride-by-s permutation of order m.

    Returns f with f[i] = i*s - (m-1)*floor(i*s/m); applying the permutation
    to a vector x yields x[f].  Requires s to divide m (s = m is allowed).
    """
    if m < 1 or s < 1 or m % s != 0:
        raise ValueError(f"invalid stride permutation size: m={m}, s={s}")
    i = np.arange(m)
    return i * s - (m - 1) * ((i * s) // m)


def cft(A, normalization=UNNORMALIZED):
    """Circulant Fourier transform: block-diagonalize the adjoint of A.

    Implemented matrix-free as the n-point DFT of every tube followed by a
    regrouping of frontal slices; block b entry (i, k) equals
    fft(A.data[i, k, :])[b].  Under "unitary" the blocks are divided by
    sqrt(n).
    """
    if normalization not in (UNNORMALIZED, UNITARY):
        raise ValueError(f"unknown normalization {normalization!r}")
    blocks = np.moveaxis(np.fft.fft(A.data, axis=2), 2, 0)
    if normalization == UNITARY:
        blocks = blocks / math.sqrt(A.n)
    return SpectralMatrix(blocks, normalization)


def icft(S):
    """Inverse circulant Fourier transform.

    Returns a real-field matrix when the spectrum is conjugate-symmetric
    within tolerance (i.e. the inverse DFT is real), complex otherwise.
    """
    blocks = S.blocks
    if S.normalization == UNITARY:
        blocks = blocks * math.sqrt(S.n)
    data = np.fft.ifft(np.moveaxis(blocks, 0, 2), axis=2)
    scale = np.abs(data).max() if data.size else 0.0
    if np.abs(data.imag).max(initial=0.0) <= _REAL_DETECT_RTOL * max(1.0, scale):
        return HyperMatrix(data.real, REAL)
    return HyperMatrix(data, COMPLEX)


def matmul(A, B):
    """Hypercomplex matrix product, computed blockwise in the spectral domain.

    Entry (i, k) equals sum_r A_ir * B_rk with the circular-convolution
    scalar product; the spectral blocks multiply directly because they hold
    the circulant eigenvalues.
    """
    if A.m != B.l or A.n != B.n:
        raise ValueError(
            f"dimension mismatch: ({A.l}x{A.m}, n={A.n}) @ ({B.l}x{B.m}, n={B.n})"
        )
    Ah = np.moveaxis(np.fft.fft(A.data, axis=2), 2, 0)
    Bh = np.moveaxis(np.fft.fft(B.data, axis=2), 2, 0)
    Ch = np.matmul(Ah, Bh)
    data = np.fft.ifft(np.moveaxis(Ch, 0, 2), axis=2)
    field = promote_fields(A.field, B.field)
    return HyperMatrix(data.real if field == REAL else data, field)


def inv(A):
    """Inverse of a square hypercomplex matrix, blockwise in the spectral domain.

    Raises numpy.linalg.LinAlgError when the pooled block spectrum is
    singular relative to its largest singular value.
    """
    if A.l != A.m:
        raise ValueError("matrix inverse requires a square matrix")
    hat = np.moveaxis(np.fft.fft(A.data, axis=2), 2, 0)
    svals = np.linalg.svd(hat, compute_uv=False)
    if svals.min() <= 1e-12 * svals.max():
        raise np.linalg.LinAlgError("hypercomplex matrix is singular")
    inv_blocks = np.linalg.inv(hat)
    data = np.fft.ifft(np.moveaxis(inv_blocks, 0, 2), axis=2)
    return HyperMatrix(data.real if A.field == REAL else data, A.field)


def inner(A, B):
    """Frobenius inner product Re tr(A B*) = sum of Re(a conj(b)) over all
    coefficients; equals the dot product of the vec isomorphisms."""
    if A.data.shape != B.data.shape:
        raise ValueError(f"shape mismatch: {A.data.shape} vs {B.data.shape}")
    return float(np.real(np.sum(A.data * np.conj(B.data))))


def frobenius(A):
    """Frobenius norm: Euclidean norm of all coefficients."""
    return float(np.linalg.norm(A.data))


def unfold(A):
    """Slab isomorphism xi: real field gives [I_0 | I_1 | ... | I_{n-1}]
    (l x mn); complex field interleaves real and imaginary slabs per
    coefficient (l x 2mn)."""
    if A.field == REAL:
        return np.concatenate([A.data[:, :, t] for t in range(A.n)], axis=1)
    slabs = []
    for t in range(A.n):
        slabs.append(A.data[:, :, t].real)
        slabs.append(A.data[:, :, t].imag)
    return np.concatenate(slabs, axis=1)


def vec(A):
    """Column-major vectorization of unfold(A)."""
    return unfold(A).ravel(order="F")


def spectral_norm(A, transform=None):
    """Operator norm of the adjoint: the largest block singular value.

    With a non-default tube transform the blocks of that transform are used
    instead of the DFT blocks.
    """
    if transform is None:
        hat = np.moveaxis(np.fft.fft(A.data, axis=2), 2, 0)
    else:
        hat = np.moveaxis(transform.forward(A.data, axis=2), 2, 0)
    svals = np.linalg.svd(hat, compute_uv=False)
    return float(svals.max())


def max_modulus(A):
    """Largest entry modulus, the hypercomplex max-norm."""
    mods = np.sqrt((A.data.real**2 + A.data.imag**2).sum(axis=2))
    return float(mods.max())
