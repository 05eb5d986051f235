#
# Minimal polynomial extrapolation of a vector sequence
#

import numpy as np


def minimal_polynomial_extrapolation(iterates, tol: float = 1e-12):
    """Estimates the limit of a vector sequence from its last iterates.

    Given rows :math:`x_0, ..., x_{k+1}` with differences
    :math:`u_j = x_{j+1} - x_j`, finds :math:`c` minimising
    :math:`\\| \\sum_j c_j u_j \\|` with :math:`c_k = 1` by least squares and
    returns :math:`\\sum_j \\gamma_j x_j` with :math:`\\gamma = c / \\sum c`.

    Parameters
    ----------
    iterates : np.array
        A :math:`m \\times n` array, one iterate per row, oldest first

    Returns
    -------
    np.array
        The extrapolated vector. The last iterate is returned as it is when
        the sequence has stopped moving or the coefficients sum to zero
    """
    x = np.asarray(iterates, dtype=float)
    if x.ndim != 2 or x.shape[0] < 1:
        raise ValueError("iterates must be a non-empty 2D array")
    if x.shape[0] < 3:
        return x[-1].copy()
    u = np.diff(x, axis=0).T
    if not np.any(np.abs(u) > tol):
        return x[-1].copy()
    c, *_ = np.linalg.lstsq(u[:, :-1], -u[:, -1], rcond=None)
    gamma = np.append(c, 1.0)
    total = gamma.sum()
    if abs(total) < tol:
        return x[-1].copy()
    return x[:-1].T @ (gamma / total)
