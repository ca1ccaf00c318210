"""U_q(su(3)) Clebsch-Gordan coefficients from projection-operator matrix elements.

:func:`projector_matrix_element` gives
<g1 g2| Delta(P^{L3}_{g3; g3'}) |g1' g2'> in closed form, a five-fold sum
of su(2) data.  :func:`cgc_table` assembles full coupling tables from it.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .basis import (admissible, enumerate_basis, gt_label, highest_label, irrep,
                    product_multiplicities, weight)
from .matrices import zeros
from .qnum import ConsistencyError, DomainError, half_range, q_fact_or_none, q_int, q_pow, sign
from .projector import phase_phi
from .wigner import cgc_su2q, q6j, q9j

CONVENTION = "gt-lowering-word/first-nonzero-positive/seed-gram-schmidt"


def _phi_t(lam, mu, j, t):
    # phase exponent carried by a GT state: phi plus the lowering-word weight
    return phase_phi(lam, mu, j, t) + mu + 2 * j - 2 * t


def _psi(reps, g1, g1p, g2, g2p, g3, g3p, a, ta, b, tb, tc):
    (l1, m1), (l2, m2), (l3, m3) = reps
    j1, t1 = g1[:2]
    j2, t2 = g2[:2]
    j1p, t1p = g1p[:2]
    j2p, t2p = g2p[:2]
    j3, t3 = g3[:2]
    j3p, t3p = g3p[:2]
    x = j1 + j2 - j3 - a - b
    s = (2 * _phi_t(l1, m1, a, ta) - _phi_t(l1, m1, j1, t1) - _phi_t(l1, m1, j1p, t1p)
         + 2 * _phi_t(l2, m2, b, tb) - _phi_t(l2, m2, j2, t2) - _phi_t(l2, m2, j2p, t2p)
         - 2 * phase_phi(l3, m3, x, tc) + _phi_t(l3, m3, j3, t3) + _phi_t(l3, m3, j3p, t3p))
    s += x * (4 * l3 + 2 * m3 + 2) + 4 * tc - 2 * m3
    s += -(j2 + j2p - 2 * b) * (2 * l1 + m1 - 6 * a) + 4 * (j1 - a) * (j2 - b) + 4 * (j1p - a) * (j2p - b)
    return s


def _overall_sign(g1, g1p, g2, g2p):
    return sign(2 * (g1[0] + g1p[0] + g2[0] + g2p[0]))


def _hypercharge2(rep, j):
    # 3y, kept integral
    lam, mu = rep
    return 6 * j - (2 * lam + mu)


def _half_a(reps, g1, g2, g3, q):
    (l1, m1), (l2, m2), (l3, m3) = reps
    M1, M2, M3 = Fraction(m1, 2), Fraction(m2, 2), Fraction(m3, 2)
    (j1, t1), (j2, t2), (j3, t3) = g1[:2], g2[:2], g3[:2]
    num = [2 * j1 + 1, 2 * j2 + 1, l3 + M3 - j3 + t3 + 1, l3 + M3 - j3 - t3]
    den = [l1 + M1 - j1 + t1 + 1, l1 + M1 - j1 - t1, l2 + M2 - j2 + t2 + 1, l2 + M2 - j2 - t2, 2 * j3]
    out = q_int(2 * t1 + 1, q) * q_int(2 * t2 + 1, q)
    for n in num:
        out = out * q_fact_or_none(n, q)
    for n in den:
        out = out / q_fact_or_none(n, q)
    return out


@lru_cache(maxsize=None)
def _core(reps, jt1, jt1p, jt2, jt2p, jt3, jt3p, q):
    """Everything but the two su(2) CGC prefactors; independent of the t_z labels."""
    (l1, m1), (l2, m2), (l3, m3) = reps
    M1, M2, M3 = Fraction(m1, 2), Fraction(m2, 2), Fraction(m3, 2)
    (j1, t1), (j1p, t1p) = jt1, jt1p
    (j2, t2), (j2p, t2p) = jt2, jt2p
    (j3, t3), (j3p, t3p) = jt3, jt3p
    zero = q.zero()
    total = zero
    for a in _halves(min(j1, j1p)):
        for b in _halves(min(j2, j2p)):
            x = j1 + j2 - j3 - a - b
            if x < 0:
                continue
            fac = _c_factorials(reps, j1, j2, j1p, j2p, a, b, x, q)
            if fac is None:
                continue
            for ta in half_range(abs(M1 - a), M1 + a):
                w1 = q6j(j1 - a, a, j1, M1, t1, ta, q)
                w1p = q6j(j1p - a, a, j1p, M1, t1p, ta, q) if w1 else zero
                if not w1p:
                    continue
                fa = _pair_factorials(l1, M1, a, ta, q)
                if fa is None:
                    continue
                for tb in half_range(abs(M2 - b), M2 + b):
                    w2 = q6j(j2 - b, b, j2, M2, t2, tb, q)
                    w2p = q6j(j2p - b, b, j2p, M2, t2p, tb, q) if w2 else zero
                    if not w2p:
                        continue
                    fb = _pair_factorials(l2, M2, b, tb, q)
                    if fb is None:
                        continue
                    for tc in half_range(abs(M3 - x), M3 + x):
                        w3 = q6j(j3, x, j3 + x, tc, t3, M3, q)
                        w3p = q6j(j3p, x, j3p + x, tc, t3p, M3, q) if w3 else zero
                        if not w3p:
                            continue
                        n1 = q9j(j1 - a, j2 - b, j1 + j2 - a - b, ta, tb, tc, t1, t2, t3, q)
                        if not n1:
                            continue
                        n2 = q9j(j1p - a, j2p - b, j1p + j2p - a - b, ta, tb, tc, t1p, t2p, t3p, q)
                        if not n2:
                            continue
                        d1 = q_fact_or_none(l3 + M3 + x + tc + 2, q)
                        d2 = q_fact_or_none(l3 + M3 + x - tc + 1, q)
                        if d1 is None or d2 is None:
                            continue
                        psi = _psi(reps, jt1, jt1p, jt2, jt2p, jt3, jt3p, a, ta, b, tb, tc)
                        c = fac * fa * fb / (d1 * d2) * q_int(2 * tc + 1, q) * q_pow(q, psi)
                        c = c * w1 * w1p * w2 * w2p * w3 * w3p * sign(2 * (j1 + j2 + j3p - a - b))
                        total = total + c * n1 * n2
    if not total:
        return zero
    pre = q_int(l3 + 1, q) * q_int(m3 + 1, q) * q_int(l3 + m3 + 2, q)
    pre = pre * q.sqrt(_half_a(reps, jt1, jt2, jt3, q) * _half_a(reps, jt1p, jt2p, jt3p, q))
    return pre * total * _overall_sign(jt1, jt1p, jt2, jt2p)


def _me(reps, g1, g1p, g2, g2p, g3, g3p, q):
    (j1, t1, t1z), (j1p, t1p, t1zp) = g1, g1p
    (j2, t2, t2z), (j2p, t2p, t2zp) = g2, g2p
    (j3, t3, t3z), (j3p, t3p, t3zp) = g3, g3p
    zero = q.zero()
    if j1 + j2 - j3 != j1p + j2p - j3p:
        return zero
    h = _hypercharge2
    if (h(reps[0], j1) + h(reps[1], j2) != h(reps[2], j3)
            or h(reps[0], j1p) + h(reps[1], j2p) != h(reps[2], j3p)):
        return zero
    pre = cgc_su2q(t1, t1z, t2, t2z, t3, t3z, q)
    if not pre:
        return zero
    pre = pre * cgc_su2q(t1p, t1zp, t2p, t2zp, t3p, t3zp, q)
    if not pre:
        return zero
    core = _core(reps, (j1, t1), (j1p, t1p), (j2, t2), (j2p, t2p), (j3, t3), (j3p, t3p), q)
    return pre * core


def _halves(hi):
    return [Fraction(k, 2) for k in range(int(2 * hi) + 1)]


def _c_factorials(reps, j1, j2, j1p, j2p, a, b, x, q):
    num = [2 * (j1 + j2 - a - b) + 1, 2 * (j1p + j2p - a - b) + 1]
    den = [2 * a, 2 * b, 2 * j1 - 2 * a, 2 * j2 - 2 * b, 2 * j1p - 2 * a, 2 * j2p - 2 * b, 2 * x]
    out = q.one()
    for n in num:
        f = q_fact_or_none(n, q)
        if f is None:
            return None
        out = out * f
    for n in den:
        f = q_fact_or_none(n, q)
        if f is None:
            return None
        out = out / f
    return out


def _pair_factorials(lam, m, a, ta, q):
    f1 = q_fact_or_none(lam + m - a + ta + 1, q)
    f2 = q_fact_or_none(lam + m - a - ta, q)
    if f1 is None or f2 is None:
        return None
    return f1 * f2 * q_int(2 * ta + 1, q)


def projector_matrix_element(reps, g1, g1p, g2, g2p, g3, g3p, q):
    """<L1 g1, L2 g2| Delta(P^{L3}_{g3; g3'}) |L1 g1', L2 g2'>.

    ``reps`` is (L1, L2, L3); every g is a GT label (j, t, tz).  The value
    is zero unless the labels are admissible and t_z and hypercharge add
    up on both sides.
    """
    reps = tuple(tuple(irrep(r)) for r in reps)
    labels = [gt_label(g) for g in (g1, g1p, g2, g2p, g3, g3p)]
    for rep, g in zip((reps[0], reps[0], reps[1], reps[1], reps[2], reps[2]), labels):
        if not admissible(rep, g.j, g.t) or abs(g.tz) > g.t or (g.t + g.tz).denominator != 1:
            raise DomainError(f"label {g} does not occur in {rep}")
    return _me(reps, *(tuple(g) for g in labels), q)


# ------------------------------------------------------------- CGC tables

def seeds(rep1, rep2, rep3):
    """Labels g2' of rep2 with weight(h of rep1) + weight(g2') = weight(h of rep3), in basis order."""
    w1 = weight(rep1, highest_label(rep1))
    w3 = tuple(irrep(rep3))
    return [g for g in enumerate_basis(rep2)
            if (w1[0] + weight(rep2, g)[0], w1[1] + weight(rep2, g)[1]) == w3]


def _gram_tol(gram, q, tol):
    if q.exact:
        return None
    diag = [abs(float(gram[k][k])) for k in range(len(gram))]
    return tol * max(diag + [1.0])


def resolve_multiplicity(rep1, rep2, rep3, q, tol=1e-9):
    """Coefficient vectors C(g2'), one per multiplicity index s.

    The vectors Delta(P_{h;h}) |rep1 h>|rep2 g2'> over the seeds g2' span
    the highest weight space of rep3 in the product.  Their Gram matrix is
    a table of projector matrix elements; Gram-Schmidt in seed order gives
    one orthonormal combination per copy, and seeds that add nothing new
    are dropped.  Each result is a dict {seed: coefficient}.
    """
    rep1, rep2, rep3 = irrep(rep1), irrep(rep2), irrep(rep3)
    expected = product_multiplicities(rep1, rep2).get(rep3, 0)
    if not expected:
        return []
    reps = (tuple(rep1), tuple(rep2), tuple(rep3))
    h1, h3 = tuple(highest_label(rep1)), tuple(highest_label(rep3))
    sd = [tuple(g) for g in seeds(rep1, rep2, rep3)]
    n = len(sd)
    gram = [[_me(reps, h1, h1, sd[k], sd[l], h3, h3, q) for l in range(n)] for k in range(n)]
    cut = _gram_tol(gram, q, tol)

    def inner(u, v):
        out = q.zero()
        for k in range(n):
            if not u[k]:
                continue
            for l in range(n):
                if v[l]:
                    out = out + u[k] * gram[k][l] * v[l]
        return out

    basis = []
    for k in range(n):
        c = [q.one() if i == k else q.zero() for i in range(n)]
        for u in basis:
            proj = inner(u, c)
            c = [ci - proj * ui for ci, ui in zip(c, u)]
        norm2 = inner(c, c)
        if (not norm2) if q.exact else float(norm2) <= cut:
            continue
        scale = 1 / q.sqrt(norm2)
        basis.append([ci * scale for ci in c])
    if len(basis) != expected:
        raise ConsistencyError(
            f"{rep3} in {rep1}x{rep2}: Gram rank {len(basis)} but multiplicity {expected}")
    return [{sd[k]: c[k] for k in range(n) if c[k]} for c in basis]


@dataclass
class CGCTable:
    """CGCs <rep1 g1, rep2 g2 | rep3 g3, s> for one triple of irreps.

    ``entries`` holds the nonzero values keyed by (g1, g2, s, g3) with
    GTLabel keys and s counted from 0.
    """

    reps: tuple
    q: object
    multiplicity: int
    entries: dict = field(default_factory=dict)
    convention: str = CONVENTION

    def value(self, g1, g2, s, g3):
        return self.entries.get((gt_label(g1), gt_label(g2), s, gt_label(g3)), self.q.zero())

    def block(self, s):
        """Matrix with rows (g1, g2) in product basis order and columns g3."""
        rep1, rep2, rep3 = self.reps
        rows = [(a, b) for a in enumerate_basis(rep1) for b in enumerate_basis(rep2)]
        cols = enumerate_basis(rep3)
        out = zeros((len(rows), len(cols)), self.q)
        ri = {r: i for i, r in enumerate(rows)}
        ci = {c: i for i, c in enumerate(cols)}
        for (g1, g2, ss, g3), v in self.entries.items():
            if ss == s:
                out[ri[(g1, g2)], ci[g3]] = v
        return out


def _first_nonzero_sign(values, q, tol):
    for v in values:
        if (v if q.exact else abs(float(v)) > tol):
            return 1 if v > 0 else -1
    return 1


def cgc_table(rep1, rep2, rep3, q, tol=1e-9):
    """Full CGC table of rep3 in rep1 (x) rep2 built from projector matrix elements.

    Entry (g1, g2, s, g3) = sum_{g2'} C_s(g2') <g1 g2|Delta(P_{g3; h})|h g2'>.
    Each block is normalized by construction; its sign makes the first
    nonzero entry at g3 = h, in product basis order, positive.

    The matrix element factorizes into the su(2) CGC (t1 t1z t2 t2z|t3 t3z)
    times a t_z-independent part, so the latter is computed once per
    (j, t) triple.
    """
    rep1, rep2, rep3 = irrep(rep1), irrep(rep2), irrep(rep3)
    reps = (tuple(rep1), tuple(rep2), tuple(rep3))
    combos = resolve_multiplicity(rep1, rep2, rep3, q, tol)
    table = CGCTable((rep1, rep2, rep3), q, len(combos))
    if not combos:
        return table
    h1, h3 = highest_label(rep1), highest_label(rep3)
    l1, l2, l3 = enumerate_basis(rep1), enumerate_basis(rep2), enumerate_basis(rep3)
    by_weight = {}
    for g1 in l1:
        wa = weight(rep1, g1)
        for g2 in l2:
            wb = weight(rep2, g2)
            by_weight.setdefault((wa[0] + wb[0], wa[1] + wb[1]), []).append((g1, g2))
    su2 = {}

    def cg(a, b, c):
        key = (a.t, a.tz, b.t, b.tz, c.t, c.tz)
        if key not in su2:
            su2[key] = cgc_su2q(*key, q)
        return su2[key]

    small = 0.0 if q.exact else tol * 1e-3
    for s, comb in enumerate(combos):
        weights = [(c * cg(h1, gt_label(sd), h3), (sd[0], sd[1])) for sd, c in comb.items()]
        weights = [(w, jt) for w, jt in weights if w]
        reduced = {}
        block = {}
        for g3 in l3:
            for g1, g2 in by_weight.get(weight(rep3, g3), ()):
                key = (g1.j, g1.t, g2.j, g2.t, g3.j, g3.t)
                if key not in reduced:
                    val = q.zero()
                    for w, jt in weights:
                        core = _core(reps, (g1.j, g1.t), (h1.j, h1.t), (g2.j, g2.t), jt, (g3.j, g3.t), (h3.j, h3.t), q)
                        if core:
                            val = val + w * core
                    reduced[key] = val
                red = reduced[key]
                if not red:
                    continue
                val = cg(g1, g2, g3)
                if not val:
                    continue
                val = val * red
                if (val if q.exact else abs(float(val)) > small):
                    block[(g1, g2, s, g3)] = val
        top = [v for (g1, g2, _, g3), v in block.items() if g3 == h3]
        flip = _first_nonzero_sign(top, q, tol)
        for k, v in block.items():
            table.entries[k] = v if flip > 0 else -v
    return table
