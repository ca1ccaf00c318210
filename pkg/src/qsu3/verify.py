"""Invariant checks shared by ``qsu3 verify`` and the test suite.

Every check returns a :class:`Check` with the worst deviation seen.  Exact
backends count any nonzero residual as a failure.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .basis import dimension, product_multiplicities
from .cgc import cgc_table
from .matrices import eye, max_abs, mm, to_float
from .oracle import build_module, decompose_product, gt_matrix, product_of, relation_residuals
from .projector import extremal_projector_matrix
from .qnum import half_range
from .wigner import cgc_su2q, projections


@dataclass
class Check:
    name: str
    passed: bool
    deviation: float
    detail: str = ""

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name}: max deviation {self.deviation:.3g}{'  ' + self.detail if self.detail else ''}"


def _dev(mat, exact):
    """(worst |entry| as float, exact-zero flag)."""
    if exact:
        return max_abs(mat), all(not x for x in mat.flat)
    return max_abs(mat), None


def _judge(devs, exact, tol):
    worst = max([d for d, _ in devs] + [0.0])
    if exact:
        return all(z for _, z in devs), worst
    return worst <= tol, worst


def irreps_up_to(max_weight):
    """Irreps (lam, mu) with lam + mu <= max_weight."""
    return [(a, s - a) for s in range(max_weight + 1) for a in range(s, -1, -1)]


def check_relations_suite(reps, q, tol=1e-12):
    devs = []
    for rep in reps:
        mod = build_module(rep, q, check=False)
        scale = max([1.0] + [max_abs(m) for m in mod.gen.values()]) ** 3
        for res in relation_residuals(mod).values():
            d, z = _dev(res, q.exact)
            devs.append((d / scale, z))
    ok, worst = _judge(devs, q.exact, tol)
    return Check(f"algebra relations on {len(reps)} irreps at q={q.label()}", ok, worst)


def check_projector_suite(modules, q, tol=1e-9):
    devs = []
    for mod in modules:
        p = extremal_projector_matrix(mod)
        g = mod.gen
        for mat in (mm(p, p) - p, mm(g["e12"], p), mm(g["e23"], p), mm(g["e13"], p),
                    mm(p, g["e21"]), mm(p, g["e32"]), mm(p, g["e31"])):
            devs.append(_dev(mat, q.exact))
    ok, worst = _judge(devs, q.exact, tol)
    return Check(f"extremal projector on {len(modules)} modules at q={q.label()}", ok, worst)


def check_gt_orthonormality(reps, q, tol=1e-10):
    devs = []
    for rep in reps:
        v = gt_matrix(rep, q)
        devs.append(_dev(mm(v.T, v) - eye(dimension(rep), q), q.exact))
    ok, worst = _judge(devs, q.exact, tol)
    return Check(f"GT orthonormality on {len(reps)} irreps at q={q.label()}", ok, worst)


def full_cgc_matrix(rep1, rep2, q):
    """All CGC blocks of rep1 (x) rep2 side by side (float)."""
    cols = []
    for rep3, mult in product_multiplicities(rep1, rep2).items():
        table = cgc_table(rep1, rep2, rep3, q)
        cols.extend(to_float(table.block(s)) for s in range(table.multiplicity))
    return np.concatenate(cols, axis=1)


def check_cgc_unitarity(pairs, q, tol=1e-9):
    worst = 0.0
    for rep1, rep2 in pairs:
        u = full_cgc_matrix(rep1, rep2, q)
        worst = max(worst, float(np.abs(u.T @ u - np.eye(u.shape[1])).max()))
    return Check(f"CGC tables orthogonal on {len(pairs)} products at q={q.label()}", worst <= tol, worst)


def check_cgc_vs_oracle(pairs, q, tol=1e-8):
    """Span of every formula block equals the oracle's isotypic subspace."""
    worst = 0.0
    for rep1, rep2 in pairs:
        comps = decompose_product(product_of(rep1, rep2, q))
        for comp in comps:
            mine = None
            for s in range(comp.multiplicity):
                b = to_float(cgc_table(rep1, rep2, comp.rep, q).block(s))
                mine = b @ b.T if mine is None else mine + b @ b.T
            worst = max(worst, float(np.abs(mine - to_float(comp.projector())).max()))
    return Check(f"CGC isotypic subspaces vs oracle on {len(pairs)} products at q={q.label()}",
                 worst <= tol, worst)


def check_su2_unitarity(jmax, q, tol=1e-10):
    worst = 0.0
    spins = [Fraction(k, 2) for k in range(int(2 * jmax) + 1)]
    for j1 in spins:
        for j2 in spins:
            rows = [(m1, m2) for m1 in projections(j1) for m2 in projections(j2)]
            cols = [(j, m) for j in half_range(abs(j1 - j2), j1 + j2) for m in projections(j)]
            u = np.array([[float(cgc_su2q(j1, m1, j2, m2, j, m, q)) for j, m in cols] for m1, m2 in rows])
            worst = max(worst, float(np.abs(u.T @ u - np.eye(len(cols))).max()))
    return Check(f"q-CGC unitarity for spins <= {jmax} at q={q.label()}", worst <= tol, worst)


def run_suite(max_weight, q):
    """The invariant suite behind ``qsu3 verify``."""
    reps = irreps_up_to(max_weight)
    pairs = [(a, b) for a in reps for b in reps]
    checks = [
        check_su2_unitarity(Fraction(max(max_weight, 1), 1), q),
        check_relations_suite(reps, q),
        check_gt_orthonormality(reps, q),
        check_projector_suite([build_module(r, q, check=False) for r in reps], q),
    ]
    # CGC tables are checked in floating point at the same q
    fq = q.as_float_backend()
    checks.append(check_cgc_unitarity(pairs, fq))
    checks.append(check_cgc_vs_oracle([p for p in pairs if sum(p[0]) + sum(p[1]) <= max_weight + 1], fq))
    return checks
