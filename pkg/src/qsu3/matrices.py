"""Dense matrices over either scalar backend.

Float backend matrices are ``float64`` arrays.  Exact backend matrices are
``object`` arrays of :class:`~qsu3.qnum.Radical`.  numpy's ``@`` works for
both; :func:`mm` is the faster product for sparse exact matrices.
"""

import numpy as np

from .qnum import Radical


def zeros(shape, q):
    if isinstance(shape, int):
        shape = (shape, shape)
    if q.exact:
        out = np.empty(shape, dtype=object)
        for idx in np.ndindex(*shape):
            out[idx] = Radical()
        return out
    return np.zeros(shape)


def eye(n, q):
    out = zeros(n, q)
    for i in range(n):
        out[i, i] = q.one()
    return out


def diag(values, q):
    values = list(values)
    out = zeros(len(values), q)
    for i, v in enumerate(values):
        out[i, i] = v
    return out


def mm(*mats):
    """Matrix product left to right.

    Exact operands are multiplied row by row over their nonzero entries;
    generator matrices are weight-shift operators, so this avoids almost all
    of the Radical arithmetic of a dense product.
    """
    out = mats[0]
    for b in mats[1:]:
        out = _mm2(out, b)
    return out


def _mm2(a, b):
    if a.dtype != object or b.dtype != object or a.ndim != 2:
        return a @ b
    vec = b.ndim == 1
    if vec:
        b = b.reshape(-1, 1)
    cols = b.shape[1]
    nz_b = [[(j, x) for j, x in enumerate(row) if x] for row in b]
    zero = Radical()
    out = np.empty((a.shape[0], cols), dtype=object)
    for i, row in enumerate(a):
        acc = {}
        for k, x in enumerate(row):
            if not x:
                continue
            for j, y in nz_b[k]:
                t = x * y
                acc[j] = acc[j] + t if j in acc else t
        for j in range(cols):
            out[i, j] = acc.get(j, zero)
    return out.reshape(-1) if vec else out


def mpow(a, n, q):
    """a**n for n >= 0 by repeated squaring."""
    n = int(n)
    if n < 0:
        raise ValueError("negative matrix power")
    out = None
    base = a
    while n:
        if n & 1:
            out = base if out is None else mm(out, base)
        n >>= 1
        if n:
            base = mm(base, base)
    return eye(a.shape[0], q) if out is None else out


def to_float(a):
    """Float copy of a matrix or vector of either backend."""
    if a.dtype == object:
        return np.vectorize(float, otypes=[float])(a)
    return np.asarray(a, dtype=float)


def max_abs(a):
    """Largest |entry| as a float (0.0 for an empty array)."""
    if a.size == 0:
        return 0.0
    return float(np.abs(to_float(a)).max())


def is_zero(a, tol=0.0):
    """Exact zero test for object arrays, |a| <= tol for floats."""
    if a.dtype == object:
        return all(not x for x in a.flat)
    return a.size == 0 or float(np.abs(a).max()) <= tol


def equal(a, b, tol=0.0):
    return is_zero(a - b, tol)


def transpose(a):
    return a.T.copy()
