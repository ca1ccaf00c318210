"""Extremal projector of U_q(su(3)) and the tensor form of the projection operator.

Everything is realized as matrices on concrete modules from
:mod:`qsu3.oracle`.  Cartan-valued coefficients are evaluated weight by
weight, never as operator inverses.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .basis import admissible, irrep, norm_factor, weight
from .matrices import diag, eye, mm, mpow, zeros
from .qnum import ConsistencyError, half, half_range, q_factorial, q_int, q_pow, sign
from .wigner import cgc_su2q, projections, q6j, su2_projector_elem


def extremal_series(raise_, lower, hvals, r, q):
    """sum_n (-1)^n/[n]! q^(-(r-1)n) / prod_{s=1..n}[H + r + s] lower^n raise^n.

    ``hvals`` are the eigenvalues of H on the basis.  Lowering stands on
    the left, so the series kills the image of ``lower`` and fixes vectors
    annihilated by ``raise_``.  On weights with H < -r the projector is zero
    (no such weight carries a highest weight vector); there the printed
    series would hit a pole.
    """
    n_dim = len(hvals)
    dom = [h >= -r for h in hvals]
    mask = diag([q.one() if d else q.zero() for d in dom], q)
    total = mask.copy()
    coef = [q.one() if d else q.zero() for d in dom]
    up = eye(n_dim, q)
    down = eye(n_dim, q)
    n = 0
    while True:
        n += 1
        up = mm(raise_, up)
        if not any(x != 0 for x in up.flat):
            return total
        if n > n_dim:
            raise ConsistencyError("extremal projector series does not terminate")
        down = mm(down, lower)
        for i, h in enumerate(hvals):
            if dom[i]:
                coef[i] = coef[i] / q_int(h + r + n, q)
        scale = q_pow(q, -(r - 1) * n) / q_factorial(n, q)
        if n % 2:
            scale = -scale
        total = total + mm(diag([c * scale for c in coef], q), down, up, mask)


def extremal_apply(raise_, lower, hvals, r, q, v):
    """The series of :func:`extremal_series` applied to a vector v.

    Only matrix-vector products are formed; lower^n raise^n keeps the
    weight, so the Cartan coefficient is read off componentwise.
    """
    dom = [h >= -r for h in hvals]
    zero = q.zero()
    out = np.array([x if d else zero for x, d in zip(v, dom)], dtype=v.dtype)
    coef = [q.one() if d else zero for d in dom]
    up = out.copy()
    n = 0
    while True:
        n += 1
        up = mm(raise_, up)
        if not any(x != 0 for x in up):
            return out
        if n > len(hvals):
            raise ConsistencyError("extremal projector series does not terminate")
        for i, h in enumerate(hvals):
            if dom[i]:
                coef[i] = coef[i] / q_int(h + r + n, q)
        down = up
        for _ in range(n):
            down = mm(lower, down)
        scale = q_pow(q, -(r - 1) * n) / q_factorial(n, q)
        if n % 2:
            scale = -scale
        out = out + np.array([c * scale * x for c, x in zip(coef, down)], dtype=v.dtype)


def _root_data(module):
    g = module.gen
    h1 = [w[0] for w in module.weights]
    h2 = [w[1] for w in module.weights]
    return {
        "12": (g["e12"], g["e21"], h1, 1),
        "13": (g["e13"], g["e31"], [a + b for a, b in zip(h1, h2)], 2),
        "23": (g["e23"], g["e32"], h2, 1),
    }


def root_projector(module, ij):
    """The factor p_ij (ij in '12', '13', '23') on the module."""
    up, down, h, r = _root_data(module)[ij]
    return extremal_series(up, down, h, r, module.q)


def extremal_projector_matrix(module):
    """p = p12 p13 p23 on the module."""
    return mm(root_projector(module, "12"), root_projector(module, "13"), root_projector(module, "23"))


def factorized_projector(module):
    """p = p(su_T(2)) (p12 p13) p(su_T(2)), with p(su_T(2)) = p23."""
    pt = root_projector(module, "23")
    return mm(pt, root_projector(module, "12"), root_projector(module, "13"), pt)


def weight_projector(module, w):
    """Diagonal projector onto the basis vectors of weight w = (h1, h2)."""
    q = module.q
    w = tuple(int(x) for x in w)
    return diag([q.one() if tuple(x) == w else q.zero() for x in module.weights], q)


# ------------------------------------------------------- tensor operators

@dataclass(frozen=True)
class TensorComponent:
    """coefficient * word * q^(a1*h_alpha1 + aT*T0).

    ``word`` is a tuple of (generator name, power) applied left to right.
    """

    coefficient: object
    word: tuple
    a1: Fraction
    aT: Fraction

    def matrix(self, module):
        q = module.q
        out = eye(module.dim, q)
        for name, power in self.word:
            if power:
                out = mm(out, mpow(module.gen[name], power, q))
        cart = diag([q_pow(q, self.a1 * h1 + self.aT * Fraction(h2, 2)) for h1, h2 in module.weights], q)
        return mm(out, cart) * self.coefficient


def rho_tensor_component(variant, j, jz, q):
    """Component R^j_{jz} of the plain (e21, e31) or primed (e12, e'13) tensor operator.

    plain:  sqrt([2j]!/([j-jz]![j+jz]!)) q^(2j^2-j)  e21^(j+jz) e31^(j-jz) q^(-j h1 - (j-jz) T0)
    primed: sqrt([2j]!/([j-jz]![j+jz]!)) q^(-2j^2+j) e12^(j-jz) e'13^(j+jz) q^(-j h1 - (j+jz) T0)
    """
    j, jz = half(j), half(jz)
    if abs(jz) > j or (j + jz).denominator != 1:
        raise ValueError(f"bad component {jz} of rank {j}")
    c = q.sqrt(q_factorial(2 * j, q) / (q_factorial(j - jz, q) * q_factorial(j + jz, q)))
    if variant == "plain":
        return TensorComponent(c * q_pow(q, 2 * j * j - j),
                               (("e21", int(j + jz)), ("e31", int(j - jz))), -j, -(j - jz))
    if variant == "primed":
        return TensorComponent(c * q_pow(q, -2 * j * j + j),
                               (("e12", int(j - jz)), ("e13p", int(j + jz))), -j, -(j + jz))
    raise ValueError(f"unknown variant {variant!r}")


def coupled_tensor(module, variant, j, t, tz, tp, tpz, cache=None):
    """IR^j_{t tz; t' t'z} = sqrt([2t+1]) sum (j jz t' x | t tz) R^j_{jz} P^{t'}_{x; t'z}."""
    q = module.q
    j, t, tz, tp, tpz = (half(x) for x in (j, t, tz, tp, tpz))
    total = zeros(module.dim, q)
    space = module.tspin()
    for jz in projections(j):
        x = tz - jz
        if abs(x) > tp:
            continue
        c = cgc_su2q(j, jz, tp, x, t, tz, q)
        if not c:
            continue
        key = (tp, x, tpz)
        if cache is not None and key in cache:
            proj = cache[key]
        else:
            proj = su2_projector_elem(tp, x, tpz, space)
            if cache is not None:
                cache[key] = proj
        total = total + mm(rho_tensor_component(variant, j, jz, q).matrix(module), proj) * c
    return total * q.sqrt(q_int(2 * t + 1, q))


def phase_phi(lam, mu, j, t):
    """phi(lam, mu, j, t) = (mu/2 + j - t)(mu/2 + j + t - 3)/2 + j(lam - 2j + 1)."""
    m = Fraction(mu, 2)
    return (m + j - t) * (m + j + t - 3) / 2 + j * (lam - 2 * j + 1)


@dataclass(frozen=True)
class TensorProjectorTerm:
    jpp: Fraction
    tpp: Fraction
    coefficient: object
    left_rank: Fraction
    right_rank: Fraction


def b_coefficient(rep, g, gp, jpp, tpp, q):
    """Coefficient B_{j''t''} of the tensor form, or None when the term vanishes.

    The q-exponent carries the two extra pieces (mu + 2j - 2t) and
    (mu + 2j' - 2t') on top of the printed phase; without them the tensor
    form disagrees with the factorized projector for q != 1.
    """
    lam, mu = irrep(rep)
    (j, t, _), (jp, tp, _) = g, gp
    m = Fraction(mu, 2)
    w1 = q6j(j, jpp, j + jpp, tpp, t, m, q)
    if not w1:
        return None
    w2 = q6j(jp, jpp, jp + jpp, tpp, tp, m, q)
    if not w2:
        return None
    fa = (lam + m + jpp + tpp + 2, lam + m + jpp - tpp + 1, 2 * jpp)
    if min(fa) < 0:
        return None
    ph = (phase_phi(lam, mu, j, t) + phase_phi(lam, mu, jp, tp) - 2 * phase_phi(lam, mu, jpp, tpp)
          + jpp * (4 * lam + 2 * mu - 1) + 4 * tpp - 2 * mu - 3 * jp
          + (mu + 2 * j - 2 * t) + (mu + 2 * jp - 2 * tp))
    out = q_int(lam + 1, q) * q_int(mu + 1, q) * q_int(lam + mu + 2, q) * q_pow(q, ph)
    for n in fa:
        out = out / q_factorial(n, q)
    out = out * w1 * w2 * sign(2 * j + jp + jpp - tp + tpp)
    rad = (q_factorial(lam + m - j + t + 1, q) * q_factorial(lam + m - j - t, q)
           * q_factorial(lam + m - jp + tp + 1, q) * q_factorial(lam + m - jp - tp, q)
           * q_int(2 * j + 2 * jpp + 1, q) * q_int(2 * jp + 2 * jpp + 1, q)
           / (q_factorial(2 * j, q) * q_factorial(2 * jp, q) * q_int(2 * t + 1, q) * q_int(2 * tp + 1, q)))
    return out * q.sqrt(rad)


def tensor_projector_terms(rep, g, gp, q, jmax=None):
    """Terms (j'', t'', B) of P^{(lam mu)}_{g; g'} = sum B IR^{j+j''} IR'^{j''+j'}.

    The series in j'' is infinite as an algebra element.  On the irrep
    itself every term with j'' > (lam+mu)/2 vanishes, which is the default
    cut; pass ``jmax`` for larger modules.  t'' runs over the triad
    |mu/2 - j''| .. mu/2 + j''.
    """
    lam, mu = irrep(rep)
    g, gp = tuple(half(x) for x in g), tuple(half(x) for x in gp)
    if not (admissible(rep, g[0], g[1]) and admissible(rep, gp[0], gp[1])):
        return []
    m = Fraction(mu, 2)
    if jmax is None:
        jmax = Fraction(lam + mu, 2)
    out = []
    for k in range(int(2 * jmax) + 1):
        jpp = Fraction(k, 2)
        for tpp in half_range(abs(m - jpp), m + jpp):
            b = b_coefficient((lam, mu), g, gp, jpp, tpp, q)
            if b is None or not b:
                continue
            out.append(TensorProjectorTerm(jpp, tpp, b, g[0] + jpp, jpp + gp[0]))
    return out


def _tensor_cutoff(module, jp):
    """Largest j'' for which some component of R'^{j''+j'} is nonzero on the module."""
    q = module.q
    jpp = Fraction(0)
    while True:
        rank = jpp + jp
        if all(not any(x for x in rho_tensor_component("primed", rank, jz, q).matrix(module).flat)
               for jz in projections(rank)):
            return jpp - Fraction(1, 2)
        jpp += Fraction(1, 2)
        if jpp > module.dim:
            raise ConsistencyError("tensor operators are not nilpotent on the module")


def tensor_projector_matrix(module, rep, g, gp):
    """Matrix of the tensor form sum_B B IR^{j+j''}_{t tz; t'' t''} IR'^{j''+j'}_{t'' t''; t' t'z}.

    The result is restricted to the weight space of the state g' of the
    irrep, where the Cartan elements take the values used in B.  The j''
    sum stops where every component of the right tensor operator vanishes
    on the module.
    """
    q = module.q
    rep = irrep(rep)
    g, gp = tuple(half(x) for x in g), tuple(half(x) for x in gp)
    cache = {}
    total = zeros(module.dim, q)
    jmax = _tensor_cutoff(module, gp[0])
    for term in tensor_projector_terms(rep, g, gp, q, jmax):
        left = coupled_tensor(module, "plain", term.left_rank, g[1], g[2], term.tpp, term.tpp, cache)
        right = coupled_tensor(module, "primed", term.right_rank, term.tpp, term.tpp, gp[1], gp[2], cache)
        total = total + mm(left, right) * term.coefficient
    return mm(total, weight_projector(module, weight(rep, gp)))


def lowering_word(module, rep, g):
    """Operator N P^t_{tz;t} e31^a e21^b that sends |h> to the GT vector g."""
    q = module.q
    lam, mu = irrep(rep)
    j, t, tz = (half(x) for x in g)
    a, b = int(j + Fraction(mu, 2) - t), int(j - Fraction(mu, 2) + t)
    word = mm(mpow(module.gen["e31"], a, q), mpow(module.gen["e21"], b, q))
    word = mm(su2_projector_elem(t, tz, t, module.tspin()), word)
    return word * norm_factor((lam, mu), j, t, q)


def factorized_projection_operator(module, rep, g, gp):
    """P_{g;g'} = F_g p W_(lam mu) F_g'^T, with p in the factorized form.

    W restricts to the highest weight (lam, mu) and F_g is the lowering
    word of g; transposition turns it into the raising word.
    """
    rep = irrep(rep)
    p = mm(factorized_projector(module), weight_projector(module, rep))
    return mm(lowering_word(module, rep, g), p, lowering_word(module, rep, gp).T)
