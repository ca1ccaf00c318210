"""Wigner-Racah calculus of U_q(su(2)).

All functions take spins as ints, Fractions, HalfInts or strings such as
``"3/2"`` and return a scalar of the backend carried by ``q``.  Selection
rule violations give an exact zero.

Conventions
-----------
The q-CGC is the q-analogue of the van der Waerden sum with a
Condon-Shortley type phase.  It is the coefficient of the coupled vector
in the tensor product built with the coproduct
``T+ (x) q^T0 + q^-T0 (x) T+`` (see :func:`su2_product_module`), with the
component at ``m1 = j1`` positive.  The q-6j symbol is the Racah sum and
equals the contraction of four q-CGCs.

The q-9j symbol of :func:`q9j` is the *braided* one.  At q != 1 the
recoupling (12)(34) -> (13)(24) has to swap the spaces 2 and 3, and the
swap is the R-matrix of U_q(su(2)).  The product of three q-6j symbols
used in the classical case is not a recoupling coefficient for q != 1,
so it is only kept as :func:`q9j_unbraided`.
"""

from fractions import Fraction
from functools import lru_cache

import numpy as np

from .matrices import diag, mm, mpow, zeros
from .qnum import DomainError, half, half_range, q_factorial, q_int, q_pow, sign


def triangle(a, b, c):
    """True if (a, b, c) is a triad: |a-b| <= c <= a+b and a+b+c integral."""
    return abs(a - b) <= c <= a + b and (a + b + c).denominator == 1


def _proj_ok(j, m):
    return abs(m) <= j and (j + m).denominator == 1


def _delta(a, b, c, q):
    num = q_factorial(a + b - c, q) * q_factorial(a - b + c, q) * q_factorial(-a + b + c, q)
    return q.sqrt(num / q_factorial(a + b + c + 1, q))


@lru_cache(maxsize=None)
def _cgc(j1, m1, j2, m2, j, m, q):
    if m1 + m2 != m or not triangle(j1, j2, j):
        return q.zero()
    if not (_proj_ok(j1, m1) and _proj_ok(j2, m2) and _proj_ok(j, m)):
        return q.zero()
    pre = q_int(2 * j + 1, q)
    for n in (j1 + m1, j1 - m1, j2 + m2, j2 - m2, j + m, j - m):
        pre = pre * q_factorial(n, q)
    total = q.zero()
    for z in range(0, int(j1 + j2 - j) + 1):
        args = (z, j1 + j2 - j - z, j1 - m1 - z, j2 + m2 - z, j - j2 + m1 + z, j - j1 - m2 + z)
        if min(args) < 0:
            continue
        den = q.one()
        for n in args:
            den = den * q_factorial(n, q)
        term = q_pow(q, -z * (j1 + j2 + j + 1)) / den
        total = total - term if z % 2 else total + term
    if not total:
        return q.zero()
    phase = q_pow(q, (j1 + j2 - j) * (j1 + j2 + j + 1) / 2 + j1 * m2 - j2 * m1)
    return _delta(j1, j2, j, q) * q.sqrt(pre) * phase * total


def cgc_su2q(j1, m1, j2, m2, j, m, q):
    """The q-Clebsch-Gordan coefficient (j1 m1 j2 m2 | j m)_q."""
    return _cgc(half(j1), half(m1), half(j2), half(m2), half(j), half(m), q)


@lru_cache(maxsize=None)
def _q6j(a, b, c, d, e, f, q):
    if not (triangle(a, b, c) and triangle(a, e, f) and triangle(d, b, f) and triangle(d, e, c)):
        return q.zero()
    lo = max(a + b + c, a + e + f, d + b + f, d + e + c)
    hi = min(a + b + d + e, a + c + d + f, b + c + e + f)
    total = q.zero()
    for z in half_range(lo, hi):
        den = q.one()
        for n in (z - a - b - c, z - a - e - f, z - d - b - f, z - d - e - c,
                  a + b + d + e - z, a + c + d + f - z, b + c + e + f - z):
            den = den * q_factorial(n, q)
        term = q_factorial(z + 1, q) / den
        total = total + term * sign(z)
    if not total:
        return q.zero()
    pre = _delta(a, b, c, q) * _delta(a, e, f, q) * _delta(d, b, f, q) * _delta(d, e, c, q)
    return pre * total


def q6j(a, b, c, d, e, f, q):
    """The q-6j symbol {a b c; d e f}_q (Racah sum)."""
    return _q6j(*(half(x) for x in (a, b, c, d, e, f)), q)


def _casimir(x):
    return x * (x + 1)


@lru_cache(maxsize=None)
def _q9j(j1, j2, j12, j3, j4, j34, j13, j24, jj, q, s):
    rows = ((j1, j2, j12), (j3, j4, j34), (j13, j24, jj))
    cols = ((j1, j3, j13), (j2, j4, j24), (j12, j34, jj))
    if not all(triangle(*t) for t in rows + cols):
        return q.zero()
    total = q.zero()
    for k in half_range(abs(j12 - j3), j12 + j3):
        if not (triangle(k, j4, jj) and triangle(j13, j2, k)):
            continue
        w1 = q6j(j12, j3, k, j4, jj, j34, q)
        w4 = q6j(j13, j2, k, j4, jj, j24, q)
        if not w1 or not w4:
            continue
        outer = sign(j12 + j3 + j4 + jj) * sign(j13 + j2 + j4 + jj) * q_int(2 * k + 1, q) * w1 * w4
        inner = q.zero()
        for j23 in half_range(abs(j2 - j3), j2 + j3):
            w2 = q6j(j1, j2, j12, j3, k, j23, q)
            w3 = q6j(j1, j3, j13, j2, k, j23, q)
            if not w2 or not w3:
                continue
            braid = q_pow(q, s * (_casimir(j23) - _casimir(j2) - _casimir(j3)))
            ph = sign(j2 + j3 - j23)
            inner = inner + ph * q_int(2 * j23 + 1, q) * braid * w2 * w3
        total = total + outer * inner
    # the square roots of the four recoupling coefficients cancel the
    # 1/sqrt([2j12+1][2j34+1][2j13+1][2j24+1]) normalization
    return total


def q9j(j1, j2, j12, j3, j4, j34, j13, j24, jj, q, braid=1):
    """Braided q-9j symbol with rows (j1 j2 j12), (j3 j4 j34), (j13 j24 jj).

    It is the overlap of the coupling ((j1 j2)j12 (j3 j4)j34) jj with
    ((j1 j3)j13 (j2 j4)j24) jj after the middle factors are exchanged by
    the braiding ``sum_k (-1)^(j2+j3-k) q^(braid*(c_k - c_2 - c_3))``,
    c_x = x(x+1), divided by sqrt([2j12+1][2j34+1][2j13+1][2j24+1]).
    At q = 1 it is the classical 9j symbol.
    """
    if braid not in (1, -1):
        raise DomainError("braid must be +1 or -1")
    return _q9j(*(half(x) for x in (j1, j2, j12, j3, j4, j34, j13, j24, jj)), q, braid)


@lru_cache(maxsize=None)
def _q9j_unbraided(a, b, c, d, e, f, g, h, i, q):
    lo = max(abs(a - i), abs(d - h), abs(b - f))
    hi = min(a + i, d + h, b + f)
    total = q.zero()
    for x in half_range(lo, hi):
        t = q6j(a, b, c, f, i, x, q) * q6j(d, e, f, b, x, h, q) * q6j(g, h, i, x, a, d, q)
        total = total + sign(2 * x) * q_int(2 * x + 1, q) * t
    return total


def q9j_unbraided(a, b, c, d, e, f, g, h, i, q):
    """Single sum over three q-6j symbols, the classical 9j formula read at q."""
    return _q9j_unbraided(*(half(x) for x in (a, b, c, d, e, f, g, h, i)), q)


def u_coefficient(j, jp, tpp, tp, t, q):
    """U(j j' t'' t'; j+j' t)_q = (-1)^(j+j'+t'+t'') sqrt([2j+2j'+1][2t+1]) {j j' j+j'; t' t'' t}_q."""
    j, jp, tpp, tp, t = (half(x) for x in (j, jp, tpp, tp, t))
    w = q6j(j, jp, j + jp, tp, tpp, t, q)
    if not w:
        return q.zero()
    return sign(j + jp + tp + tpp) * q.sqrt(q_int(2 * j + 2 * jp + 1, q) * q_int(2 * t + 1, q)) * w


# ------------------------------------------------------------ su(2) spaces

def projections(j):
    """m = j, j-1, ..., -j."""
    j = half(j)
    return [j - k for k in range(int(2 * j) + 1)]


class Su2Space:
    """A finite-dimensional space with U_q(su(2)) action.

    ``raise_``/``lower`` are the matrices of T+ and T-, ``weights`` the
    eigenvalues of 2*T0 on the standard basis (the action of T0 is
    diagonal).  Matrices are numpy arrays of float or object dtype.
    """

    def __init__(self, raise_, lower, weights, q):
        self.raise_ = raise_
        self.lower = lower
        self.weights = [int(w) for w in weights]
        self.q = q

    @property
    def dim(self):
        return len(self.weights)


def su2_irrep(j, q):
    """Spin-j irrep in the basis |j m>, m descending."""
    j = half(j)
    ms = projections(j)
    n = len(ms)
    up = zeros(n, q)
    for a in range(1, n):
        m = ms[a]
        up[a - 1, a] = q.sqrt(q_int(j - m, q) * q_int(j + m + 1, q))
    return Su2Space(up, up.T.copy(), [2 * m for m in ms], q)


def su2_product_module(a, b):
    """Tensor product with Delta(T+-) = T+- (x) q^T0 + q^-T0 (x) T+-."""
    q = a.q
    ka = diag([q_pow(q, Fraction(-w, 2)) for w in a.weights], q)
    kb = diag([q_pow(q, Fraction(w, 2)) for w in b.weights], q)
    up = np.kron(a.raise_, kb) + np.kron(ka, b.raise_)
    down = np.kron(a.lower, kb) + np.kron(ka, b.lower)
    weights = [x + y for x in a.weights for y in b.weights]
    return Su2Space(up, down, weights, q)


def su2_extremal_projector(space):
    """p = sum_n (-1)^n/[n]! T-^n T+^n / prod_{s=1..n} [2T0 + 1 + s], on the given space."""
    from .projector import extremal_series
    if getattr(space, "_extremal", None) is None:
        space._extremal = extremal_series(space.raise_, space.lower, space.weights, 1, space.q)
    return space._extremal


def su2_projector_elem(t, tz, tzp, space):
    """Matrix of P^t_{tz;tz'} = c(tz) c(tz') T-^(t-tz) p Pi_t T+^(t-tz') on ``space``.

    c(m) = sqrt([t+m]!/([2t]![t-m]!)) and Pi_t is the projection on the
    T0 = t eigenspace.  The operator maps the tz'-component of every spin-t
    multiplet to its tz-component and kills every other spin.
    """
    t, tz, tzp = half(t), half(tz), half(tzp)
    if not (_proj_ok(t, tz) and _proj_ok(t, tzp)):
        raise DomainError(f"projections {tz}, {tzp} not allowed for spin {t}")
    if not hasattr(space, "raise_"):
        raise DomainError("space carries no T-spin action")
    q = space.q

    def c(m):
        return q.sqrt(q_factorial(t + m, q) / (q_factorial(2 * t, q) * q_factorial(t - m, q)))

    p = su2_extremal_projector(space)
    pi = diag([q.one() if w == 2 * t else q.zero() for w in space.weights], q)
    out = mm(mpow(space.lower, t - tz, q), p, pi, mpow(space.raise_, t - tzp, q))
    return out * (c(tz) * c(tzp))
