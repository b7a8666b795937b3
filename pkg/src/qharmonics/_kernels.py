"""Contraction engine for axis-exponential kernels.

Every transform in this library is a sandwich of factors of the form
``e^{mu * theta}`` with ``mu`` a fixed pure unit.  Since
``e^{mu theta} = cos(theta) + mu sin(theta)``, contracting a quaternion
field against such a kernel reduces to two real matrix products, which
keeps the quadrature paths at BLAS speed while preserving the exact
non-commutative placement (left vs right) of each factor.
"""

from __future__ import annotations

import numpy as np

from .quaternion import mul_pure, qexp_pure, qmul

__all__ = ["exp_contract", "chirp_multiply", "const_multiply"]


def exp_contract(theta, mu, field, left, axis):
    """Contract one grid axis of `field` against the kernel e^{mu*theta}.

    Parameters
    ----------
    theta : (n_out, n_in) array
        Kernel angles, out index first; signs must already be baked in.
    mu : (3,) array
        Pure unit axis of the exponential.
    field : (..., 4) array
        Quaternion field; the grid axis `axis` has length n_in.
    left : bool
        Kernel multiplies from the left (True) or the right (False).
    axis : int
        Which grid axis of `field` to contract (0 or 1 for 2D fields).

    Returns
    -------
    array with the contracted axis replaced by n_out, same axis position.
    """
    c = np.cos(theta)
    s = np.sin(theta)
    mu_field = mul_pure(mu, field, left=left)
    F = np.moveaxis(field, axis, 0)
    MF = np.moveaxis(mu_field, axis, 0)
    n_in = F.shape[0]
    rest = F.shape[1:]
    out = c @ F.reshape(n_in, -1) + s @ MF.reshape(n_in, -1)
    out = out.reshape((theta.shape[0],) + rest)
    return np.moveaxis(out, 0, axis)


def chirp_multiply(angles, mu, field, left, axis):
    """Multiply elementwise along one grid axis by e^{mu*angles}.

    `angles` is 1D with the length of grid axis `axis`.
    """
    shape = [1] * field.ndim
    shape[axis] = -1
    chirp = qexp_pure(mu, np.asarray(angles, dtype=float).reshape(shape[:-1]))
    return qmul(chirp, field) if left else qmul(field, chirp)


def const_multiply(q_const, field, left):
    """Multiply the whole field by one quaternion constant."""
    return qmul(q_const, field) if left else qmul(field, q_const)
