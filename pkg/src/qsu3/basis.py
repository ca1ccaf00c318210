"""Gelfand-Tsetlin labels |(lam mu) j t tz> of U_q(su(3)) irreps.

j fixes the hypercharge, t is the T-spin of the U_q(su_T(2)) subalgebra
generated by e23, e32, and tz its projection.  Labels are Fractions on the
half-integer lattice.
"""

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .qnum import DomainError, half, q_factorial, q_pow


class IrrepLabel(NamedTuple):
    lam: int
    mu: int

    def __str__(self):
        return f"({self.lam},{self.mu})"


class GTLabel(NamedTuple):
    j: Fraction
    t: Fraction
    tz: Fraction

    def strings(self):
        return [_hstr(x) for x in self]

    def __str__(self):
        return "(" + ",".join(self.strings()) + ")"


def _hstr(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def irrep(rep):
    """Coerce a pair to an IrrepLabel, rejecting negative entries."""
    lam, mu = (int(x) for x in rep)
    if lam < 0 or mu < 0:
        raise DomainError(f"irrep labels must be nonnegative, got {rep}")
    return IrrepLabel(lam, mu)


def gt_label(g):
    j, t, tz = (half(x) for x in g)
    return GTLabel(j, t, tz)


def dimension(rep):
    lam, mu = irrep(rep)
    return (lam + 1) * (mu + 1) * (lam + mu + 2) // 2


def admissible(rep, j, t):
    """True if (j, t) occurs in the irrep.

    The fourth inequality reads mu/2 + j + t <= lam + mu; every factorial in
    the normalization then has a nonnegative argument.
    """
    lam, mu = irrep(rep)
    j, t = Fraction(j), Fraction(t)
    m = Fraction(mu, 2)
    if j < 0 or t < 0 or (m + j + t).denominator != 1:
        return False
    return m + j - t >= 0 and -m + j + t >= 0 and m - j + t >= 0 and m + j + t <= lam + mu


@lru_cache(maxsize=None)
def _basis(lam, mu):
    out = []
    top = lam + mu
    for j2 in range(top, -1, -1):
        j = Fraction(j2, 2)
        for t2 in range(top, -1, -1):
            t = Fraction(t2, 2)
            if not admissible((lam, mu), j, t):
                continue
            for k in range(t2 + 1):
                out.append(GTLabel(j, t, t - k))
    return tuple(out)


def enumerate_basis(rep):
    """All GT labels of the irrep, ordered by descending (j, t, tz)."""
    return list(_basis(*irrep(rep)))


def highest_label(rep):
    """Labels of the highest weight vector: j = 0, t = tz = mu/2."""
    lam, mu = irrep(rep)
    m = Fraction(mu, 2)
    return GTLabel(Fraction(0), m, m)


def hypercharge(rep, j):
    """y = -(2 lam + mu)/3 + 2j."""
    lam, mu = irrep(rep)
    return Fraction(-(2 * lam + mu), 3) + 2 * half(j)


def weight(rep, g):
    """(h_alpha1, h_alpha2) eigenvalues of the basis vector with labels g."""
    lam, mu = irrep(rep)
    j, t, tz = gt_label(g)
    h2 = 2 * tz
    h1 = lam + Fraction(mu, 2) - 3 * j - tz
    return int(h1), int(h2)


def lowering_exponents(rep, j, t):
    """Powers (a, b) of e31^a e21^b producing the (j, t) state from the highest weight."""
    m = Fraction(irrep(rep).mu, 2)
    return int(j + m - t), int(j - m + t)


def norm_factor(rep, j, t, q):
    """Normalization N_{jt} of the GT vector N P^t_{tz;t} e31^a e21^b |h>.

    The power q^(2j+mu-2t) sits in the numerator under the square root;
    this is the placement that makes the vectors orthonormal.
    """
    lam, mu = irrep(rep)
    j, t = half(j), half(t)
    if not admissible((lam, mu), j, t):
        raise DomainError(f"(j,t) = ({j},{t}) does not occur in ({lam},{mu})")
    m = Fraction(mu, 2)
    num = (q_factorial(lam + m - j + t + 1, q) * q_factorial(lam + m - j - t, q)
           * q_factorial(m + j + t + 1, q) * q_factorial(m - j + t, q))
    den = (q_factorial(lam, q) * q_factorial(mu, q) * q_factorial(lam + mu + 1, q)
           * q_factorial(j + m - t, q) * q_factorial(j - m + t, q) * q_factorial(2 * t + 1, q))
    return q.sqrt(num / den) * q_pow(q, (2 * j + mu - 2 * t) / 2)



def weights_of(rep):
    """Multiset of (h_alpha1, h_alpha2) weights of the irrep."""
    return [weight(rep, g) for g in enumerate_basis(rep)]


def product_multiplicities(rep1, rep2):
    """{IrrepLabel: multiplicity} of rep1 (x) rep2, by peeling characters.

    The weight of largest level lam + mu left in the multiset is a highest
    weight; the weights of its irrep are removed and the step repeats.
    """
    rest = Counter((a[0] + b[0], a[1] + b[1]) for a in weights_of(rep1) for b in weights_of(rep2))
    out = Counter()
    while rest:
        top = max(rest, key=lambda w: (w[0] + w[1], w[0]))
        out[IrrepLabel(*top)] += 1
        rest.subtract(weights_of(top))
        if any(v < 0 for v in rest.values()):
            raise DomainError("character peeling failed")
        rest = +rest
    return dict(sorted(out.items(), reverse=True))
