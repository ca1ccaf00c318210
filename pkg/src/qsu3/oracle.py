"""Explicit U_q(su(3)) modules used as brute-force ground truth.

An irrep is built on its GT basis from the action of the rank-1/2 tensor
operator, whose components are e21 and e31 dressed by Cartan factors.
Raising generators are transposes of lowering ones.  Products carry the
coproduct action, and :func:`decompose_product` splits them by null spaces
of the raising generators.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .basis import (dimension, enumerate_basis, highest_label, hypercharge, irrep,
                    lowering_exponents, norm_factor, weight)
from .matrices import diag, max_abs, mm, mpow, zeros
from .qnum import ConsistencyError, DomainError, q_factorial, q_int, q_pow, sign
from .projector import extremal_apply
from .wigner import Su2Space, cgc_su2q, u_coefficient

RAISING = ("e12", "e23")
LOWERING = ("e21", "e32")
ROOTS = {"e12": (2, -1), "e21": (-2, 1), "e23": (-1, 2), "e32": (1, -2),
         "e13": (1, 1), "e13p": (1, 1), "e31": (-1, -1)}


class Module:
    """Generator matrices on an ordered weight basis.

    ``gen`` maps e12, e21, e23, e32, e13, e13p (the inverse-ordered e'13)
    and e31 to matrices; ``weights`` lists (h_alpha1, h_alpha2) per basis
    vector.
    """

    def __init__(self, gen, weights, q, labels=None):
        self.q = q
        self.weights = [(int(a), int(b)) for a, b in weights]
        self.labels = list(labels) if labels is not None else list(range(len(self.weights)))
        self.gen = dict(gen)
        self._tspin = None
        g = self.gen
        qi = q_pow(q, -1)
        if "e13" not in g:
            g["e13"] = mm(g["e12"], g["e23"]) - mm(g["e23"], g["e12"]) * q.scalar(q.q)
        if "e13p" not in g:
            g["e13p"] = mm(g["e23"], g["e12"]) - mm(g["e12"], g["e23"]) * q.scalar(q.q)
        if "e31" not in g:
            g["e31"] = mm(g["e32"], g["e21"]) - mm(g["e21"], g["e32"]) * qi

    @property
    def dim(self):
        return len(self.weights)

    def cartan(self, a1, a2):
        """Diagonal q^(a1 h_alpha1 + a2 h_alpha2)."""
        return diag([q_pow(self.q, a1 * h1 + a2 * h2) for h1, h2 in self.weights], self.q)

    def t0(self):
        return diag([self.q.scalar(Fraction(h2, 2)) for _, h2 in self.weights], self.q)

    def tspin(self):
        """The U_q(su_T(2)) action T+ = e23, T- = e32."""
        if self._tspin is None:
            self._tspin = Su2Space(self.gen["e23"], self.gen["e32"], [w[1] for w in self.weights], self.q)
        return self._tspin

    def weight_indices(self, w):
        w = tuple(int(x) for x in w)
        return [i for i, x in enumerate(self.weights) if x == w]


class ExplicitModule(Module):
    """The irrep (lam mu) on its GT basis (order of :func:`enumerate_basis`)."""

    def __init__(self, rep, gen, q):
        self.rep = irrep(rep)
        labels = enumerate_basis(self.rep)
        super().__init__(gen, [weight(self.rep, g) for g in labels], q, labels)
        self.index = {g: i for i, g in enumerate(labels)}
        self.hypercharges = [hypercharge(self.rep, g.j) for g in labels]


class ProductModule(Module):
    """A (x) B with Delta(e) = e (x) q^(h/2) + q^(-h/2) (x) e on simple root vectors."""

    def __init__(self, a, b):
        if a.q != b.q:
            raise DomainError("factors carry different q")
        q = a.q
        self.factors = (a, b)
        gen = {}
        for name, (x, y) in (("e12", (1, 0)), ("e21", (1, 0)), ("e23", (0, 1)), ("e32", (0, 1))):
            half_a = Fraction(1, 2)
            gen[name] = (np.kron(a.gen[name], b.cartan(half_a * x, half_a * y))
                         + np.kron(a.cartan(-half_a * x, -half_a * y), b.gen[name]))
        weights = [(wa[0] + wb[0], wa[1] + wb[1]) for wa in a.weights for wb in b.weights]
        labels = [(la, lb) for la in a.labels for lb in b.labels]
        super().__init__(gen, weights, q, labels)


# ------------------------------------------------------------ construction

def _script_n(rep, j, t, q):
    """Phase-carrying normalization relating the tensor-operator action to GT vectors."""
    lam, mu = rep
    m = Fraction(mu, 2)
    e = (j + m - t) * (j - m + t) + j * lam + m * (j + m - t) - 2 * j * j + j + t - m
    rad = q_factorial(j - m + t, q) * q_factorial(j + m - t, q) / (q_factorial(2 * j, q) * q_int(mu + 1, q))
    out = q.sqrt(rad) * q_pow(q, e) * cgc_su2q(j, m - t, t, t, m, m, q) * norm_factor(rep, j, t, q)
    return out * sign(2 * j)


def _half_tensor(rep, labels, index, jz, q):
    """Matrix of the rank-1/2 tensor component R_{jz} on the GT basis."""
    lam, mu = rep
    m = Fraction(mu, 2)
    h = Fraction(1, 2)
    n = len(labels)
    out = zeros(n, q)
    norms = {}

    def cal(j, t):
        if (j, t) not in norms:
            norms[(j, t)] = _script_n(rep, j, t, q)
        return norms[(j, t)]

    for col, (j, t, tz) in enumerate(labels):
        for row, (j2, t2, tz2) in enumerate(labels):
            if j2 != j + h or tz2 != tz + jz:
                continue
            c = cgc_su2q(h, jz, t, tz, t2, tz2, q)
            if not c:
                continue
            u = u_coefficient(h, j, t2, m, t, q)
            if not u:
                continue
            red = q.sqrt(q_int(2 * t + 1, q) / q_int(2 * t2 + 1, q)) * cal(j, t) / cal(j2, t2) * u
            out[row, col] = c * red
    return out


def build_module(rep, q, check=True):
    """The irrep (lam mu) with all generator matrices on the GT basis.

    e21 and e31 come from the rank-1/2 tensor operator,
    R_{+1/2} = e21 q^(-h1/2) and R_{-1/2} = e31 q^(-h1/2 - T0) up to the
    prefactors of the tensor components; the T-spin part is the standard
    U_q(su(2)) action.  Raising generators are transposes.  With ``check``
    the defining relations are verified and a failure raises
    ConsistencyError.
    """
    rep = irrep(rep)
    labels = enumerate_basis(rep)
    index = {g: i for i, g in enumerate(labels)}
    n = len(labels)
    weights = [weight(rep, g) for g in labels]
    h = Fraction(1, 2)
    e32 = zeros(n, q)
    for col, (j, t, tz) in enumerate(labels):
        if tz > -t:
            e32[index[(j, t, tz - 1)], col] = q.sqrt(q_int(t + tz, q) * q_int(t - tz + 1, q))
    rp = _half_tensor(rep, labels, index, h, q)
    rm = _half_tensor(rep, labels, index, -h, q)
    e21 = mm(rp, diag([q_pow(q, Fraction(w[0], 2)) for w in weights], q))
    e31 = mm(rm, diag([q_pow(q, Fraction(w[0] + w[1], 2)) for w in weights], q))
    gen = {"e21": e21, "e32": e32, "e12": e21.T.copy(), "e23": e32.T.copy()}
    mod = ExplicitModule(rep, gen, q)
    derived = mod.gen["e31"]
    mod.gen["e31"] = e31
    if check:
        diff = derived - e31
        bad = any(x for x in diff.flat) if q.exact else max_abs(diff) > 1e-10 * max(1.0, max_abs(e31))
        if bad:
            raise ConsistencyError(f"tensor-operator e31 disagrees with e32 e21 - q^-1 e21 e32 on {rep}")
        check_relations(mod)
    return mod


def trivial_module(q):
    return build_module((0, 0), q, check=False)


# ------------------------------------------------------------- relations

def _comm(a, b, c):
    return mm(a, b) - mm(b, a) * c


def relation_residuals(module):
    """Residual matrix of every defining relation, keyed by a short name."""
    q = module.q
    g = module.gen
    one = q.one()
    qq = q.scalar(q.q)
    qi = q_pow(q, -1)
    out = {}
    out["[e12,e21]=[h1]"] = _comm(g["e12"], g["e21"], one) - diag([q_int(w[0], q) for w in module.weights], q)
    out["[e23,e32]=[h2]"] = _comm(g["e23"], g["e32"], one) - diag([q_int(w[1], q) for w in module.weights], q)
    out["[e12,e32]=0"] = _comm(g["e12"], g["e32"], one)
    out["[e23,e21]=0"] = _comm(g["e23"], g["e21"], one)
    for a, b in (("e12", "e23"), ("e23", "e12"), ("e21", "e32"), ("e32", "e21")):
        x = _comm(g[a], g[b], qi)
        out[f"serre({a},{b})"] = _comm(x, g[b], qq)
    out["e31=[e32,e21]"] = g["e31"] - _comm(g["e32"], g["e21"], qi)
    out["e13=[e12,e23]"] = g["e13"] - _comm(g["e12"], g["e23"], qq)
    out["e13p=[e23,e12]"] = g["e13p"] - _comm(g["e23"], g["e12"], qq)
    for name, root in ROOTS.items():
        bad = zeros(module.dim, q)
        mat = g[name]
        for r, wr in enumerate(module.weights):
            for c, wc in enumerate(module.weights):
                if (wr[0] - wc[0], wr[1] - wc[1]) != root:
                    bad[r, c] = mat[r, c]
        out[f"weight({name})"] = bad
    return out


def check_relations(module, tol=1e-12):
    """Raise ConsistencyError unless every relation holds.

    Exact modules must satisfy them exactly.  Float residuals are measured
    relative to max(1, largest generator entry)^3, the scale of the cubic
    Serre terms.
    """
    res = relation_residuals(module)
    if module.q.exact:
        bad = [k for k, v in res.items() if any(x for x in v.flat)]
    else:
        scale = max([1.0] + [max_abs(m) for m in module.gen.values()]) ** 3
        bad = [k for k, v in res.items() if max_abs(v) > tol * scale]
    if bad:
        raise ConsistencyError("relations fail: " + ", ".join(bad))
    return True


# ------------------------------------------------------------- GT vectors

def lower_to_gt(module, hw, rep, g):
    """N P^t_{tz;t} e31^a e21^b applied to the highest weight vector ``hw``.

    P^t_{tz;t} = c T-^(t-tz) p Pi_t is applied vector by vector;
    c = sqrt([t+tz]!/([2t]![t-tz]!)).
    """
    q = module.q
    j, t, tz = g
    a, b = lowering_exponents(rep, j, t)
    v = hw
    for _ in range(b):
        v = mm(module.gen["e21"], v)
    for _ in range(a):
        v = mm(module.gen["e31"], v)
    sp = module.tspin()
    v = np.array([x if w == 2 * t else q.zero() for x, w in zip(v, sp.weights)], dtype=v.dtype)
    v = extremal_apply(sp.raise_, sp.lower, sp.weights, 1, q, v)
    for _ in range(int(t - tz)):
        v = mm(sp.lower, v)
    c = q.sqrt(q_factorial(t + tz, q) / (q_factorial(2 * t, q) * q_factorial(t - tz, q)))
    return v * (c * norm_factor(rep, j, t, q))


def gt_vector(rep, g, q, module=None):
    """Column of the GT vector g built by the lowering word on the irrep module."""
    rep = irrep(rep)
    if module is None:
        module = build_module(rep, q, check=False)
    hw = zeros((module.dim,), q)
    hw[module.index[highest_label(rep)]] = q.one()
    return lower_to_gt(module, hw, rep, tuple(Fraction(x) for x in g))


def gt_matrix(rep, q, module=None):
    """All GT vectors of the irrep as columns, in basis order."""
    rep = irrep(rep)
    if module is None:
        module = build_module(rep, q, check=False)
    cols = [gt_vector(rep, g, q, module) for g in module.labels]
    out = zeros((module.dim, len(cols)), q)
    for k, c in enumerate(cols):
        out[:, k] = c
    return out


# ---------------------------------------------------------- decomposition

def _rref_null(a, q):
    """Exact null space basis of an object matrix, free variables set to 1."""
    a = a.copy()
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if a[i, c]), None)
        if p is None:
            continue
        a[[r, p]] = a[[p, r]]
        inv = a[r, c].inverse()
        a[r] = a[r] * inv
        for i in range(rows):
            if i != r and a[i, c]:
                a[i] = a[i] - a[r] * a[i, c]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    out = []
    for f in (c for c in range(cols) if c not in pivots):
        v = zeros((cols,), q)
        v[f] = q.one()
        for i, c in enumerate(pivots):
            v[c] = -a[i, f]
        out.append(v)
    return out


def _dot(u, v):
    return (u * v).sum()


def highest_weight_vectors(module, w, tol=1e-9):
    """Orthonormal highest weight vectors of weight w, canonically ordered.

    The null space of (Delta e12, Delta e23) on the weight space is
    Gram-Schmidt orthonormalized in the order of the basis vectors that
    lead it; each vector has its first nonzero component positive.
    """
    q = module.q
    idx = module.weight_indices(w)
    if not idx:
        return []
    a = np.concatenate([module.gen["e12"][:, idx], module.gen["e23"][:, idx]], axis=0)
    if q.exact:
        cands = _rref_null(a, q)
    else:
        norm = float(np.linalg.norm(a)) if a.size else 0.0
        _, s, vh = np.linalg.svd(a)
        rank = int((s > tol * max(norm, 1.0)).sum())
        null = vh[rank:].T
        proj = null @ null.T
        cands = [proj[:, k] for k in range(len(idx))]
    basis = []
    for v in cands:
        for u in basis:
            v = v - u * _dot(u, v)
        n2 = _dot(v, v)
        if q.exact:
            if not n2:
                continue
            v = v / n2.sqrt()
        else:
            if n2 <= tol * tol:
                continue
            v = v / np.sqrt(n2)
        basis.append(v)
    out = []
    for v in basis:
        lead = next(x for x in v if (x if q.exact else abs(x) > tol))
        if lead < 0:
            v = -v
        full = zeros((module.dim,), q)
        full[idx] = v
        out.append(full)
    return out


@dataclass
class Component:
    rep: tuple
    multiplicity: int
    embeddings: list

    def projector(self):
        """Orthogonal projector on the isotypic subspace."""
        out = None
        for e in self.embeddings:
            p = e @ e.T
            out = p if out is None else out + p
        return out

    def projector_element(self, g3, g3p):
        """Operator |Lambda3 g3><Lambda3 g3'| summed over multiplicity."""
        labels = enumerate_basis(self.rep)
        i, k = labels.index(g3), labels.index(g3p)
        out = None
        for e in self.embeddings:
            p = np.outer(e[:, i], e[:, k])
            out = p if out is None else out + p
        return out


def decompose_product(module, tol=1e-9):
    """Split a product module into irreps.

    Returns a list of Components, ordered by descending (lam, mu).  Each
    embedding matrix has one column per GT label of the irrep; these
    columns are brute-force CGCs.
    """
    q = module.q
    cands = sorted({w for w in module.weights if w[0] >= 0 and w[1] >= 0}, reverse=True)
    out = []
    total = 0
    for w in cands:
        hws = highest_weight_vectors(module, w, tol)
        if not hws:
            continue
        rep = irrep(w)
        labels = enumerate_basis(rep)
        embs = []
        for hw in hws:
            e = zeros((module.dim, len(labels)), q)
            for k, g in enumerate(labels):
                e[:, k] = lower_to_gt(module, hw, rep, g)
            embs.append(e)
        total += len(hws) * dimension(rep)
        out.append(Component(rep, len(hws), embs))
    if total != module.dim:
        raise ConsistencyError(f"decomposition covers {total} of {module.dim} dimensions")
    return out


def product_of(rep1, rep2, q):
    return ProductModule(build_module(rep1, q), build_module(rep2, q))


__all__ = [
    "Module", "ExplicitModule", "ProductModule", "Component",
    "build_module", "trivial_module", "relation_residuals", "check_relations",
    "lower_to_gt", "gt_vector", "gt_matrix", "highest_weight_vectors",
    "decompose_product", "product_of",
]
