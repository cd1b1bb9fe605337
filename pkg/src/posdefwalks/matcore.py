"""Dense symmetric positive definite linear algebra.

All operations accept a single ``(d, d)`` matrix or a stack of matrices with
shape ``(..., d, d)`` and are pure value-to-value functions. States living on
the positive definite cone are represented as plain float arrays stored
exactly symmetric; :func:`posdef` is the validating constructor.
"""

import enum

import numpy as np

from .errors import EigenFailure, NotPositiveDefinite, SingularTransform

# Cholesky pivot must exceed this multiple of the largest diagonal entry,
# separating genuine singularity from round-off at small d.
PIVOT_RTOL = 1e-13

# Condition number heuristic for congruence transforms.
COND_MAX = 1e13


class SplitKind(str, enum.Enum):
    """The two split functions w with x = w(x)^T w(x)."""

    SQUARE_ROOT = "sqrt"
    CHOLESKY = "cholesky"


def symmetrize(m):
    m = np.asarray(m, dtype=float)
    return 0.5 * (m + np.swapaxes(m, -1, -2))


def identity(d):
    return np.eye(d)


def posdef(m, name="matrix"):
    """Validating constructor for positive definite values.

    Symmetrizes the input as (m + m^T)/2, then checks positive definiteness
    through a Cholesky factorization with a relative pivot tolerance.

    Parameters
    ----------
    m : array_like, shape (..., d, d)
    name : str
        Label used in error messages.

    Returns
    -------
    ndarray
        The stored-symmetric validated value.

    Raises
    ------
    NotPositiveDefinite
        If the symmetrized input fails the factorization or the pivot bound.
    """
    x = symmetrize(m)
    if x.ndim < 2 or x.shape[-1] != x.shape[-2]:
        raise NotPositiveDefinite(f"{name} must be square, got shape {x.shape}")
    cholesky(x, name=name)
    return x


def is_posdef(m):
    try:
        posdef(m)
    except NotPositiveDefinite:
        return False
    return True


def cholesky(x, name="matrix"):
    """Upper triangular u with positive diagonal and x = u^T u."""
    x = np.asarray(x, dtype=float)
    try:
        lower = np.linalg.cholesky(x)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefinite(f"{name} is not positive definite: {exc}") from None
    diag = np.diagonal(lower, axis1=-2, axis2=-1)
    scale = np.max(np.diagonal(x, axis1=-2, axis2=-1), axis=-1)
    if np.any(diag * diag <= PIVOT_RTOL * scale[..., None]):
        raise NotPositiveDefinite(f"{name} has a Cholesky pivot below tolerance")
    return np.swapaxes(lower, -1, -2)


def sqrt_factor(x):
    """The unique positive definite b with b b = x, via eigendecomposition."""
    x = np.asarray(x, dtype=float)
    try:
        w, v = np.linalg.eigh(x)
    except np.linalg.LinAlgError as exc:
        raise EigenFailure(f"eigendecomposition failed: {exc}") from None
    if np.any(w <= 0):
        raise NotPositiveDefinite("matrix has a nonpositive eigenvalue")
    root = (v * np.sqrt(w)[..., None, :]) @ np.swapaxes(v, -1, -2)
    return symmetrize(root)


def congruence(a, x):
    """The group action a^T x a for invertible a."""
    a = np.asarray(a, dtype=float)
    cond = np.linalg.cond(a)
    if not np.all(np.isfinite(cond)) or np.any(cond > COND_MAX):
        raise SingularTransform("transform matrix is numerically singular")
    return symmetrize(np.swapaxes(a, -1, -2) @ np.asarray(x, dtype=float) @ a)


def split_factor(kind, y):
    """w(y) for the requested split kind."""
    kind = SplitKind(kind)
    if kind is SplitKind.SQUARE_ROOT:
        return sqrt_factor(y)
    return cholesky(y)


def sym_product(kind, y, x):
    """Symmetrised product w(y)^T x w(y); multiplication by y landing in the cone."""
    w = split_factor(kind, y)
    return symmetrize(np.swapaxes(w, -1, -2) @ np.asarray(x, dtype=float) @ w)


def sym_product_alt(kind, y, x):
    """Alternative operator w(y) x w(y)^T; equals sym_product for the square root."""
    w = split_factor(kind, y)
    return symmetrize(w @ np.asarray(x, dtype=float) @ np.swapaxes(w, -1, -2))


def eigenvalues(x):
    """Eigenvalues sorted descending."""
    try:
        vals = np.linalg.eigvalsh(np.asarray(x, dtype=float))
    except np.linalg.LinAlgError as exc:
        raise EigenFailure(f"eigensolver did not converge: {exc}") from None
    return vals[..., ::-1]


def invert(x):
    """Inverse of a positive definite matrix, validated and stored symmetric."""
    u = cholesky(x)
    uinv = np.linalg.inv(u)
    return symmetrize(uinv @ np.swapaxes(uinv, -1, -2))


def det(x):
    return np.linalg.det(np.asarray(x, dtype=float))


def logdet(x):
    sign, ld = np.linalg.slogdet(np.asarray(x, dtype=float))
    if np.any(sign <= 0):
        raise NotPositiveDefinite("determinant is not positive")
    return ld


def trace(x):
    return np.trace(np.asarray(x, dtype=float), axis1=-2, axis2=-1)


def lambda_max(x):
    return eigenvalues(x)[..., 0]


def lambda_min(x):
    return eigenvalues(x)[..., -1]
