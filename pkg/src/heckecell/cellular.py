"""The cell datum (Lambda, M, C, *): construction of the cellular basis from
the integral J-representations and machine verification of the Graham-Lehrer
axioms (C1)-(C3).

The basis element C^lambda_{s,t} is stored as its integer coefficient vector
on the dagger KL basis:

    coeff of c_w^dagger  =  nhat_w nhat_{w^-1} (B^lambda rho^lambda(t_{w^-1}))_{t,s}

Lambda is ordered by decreasing a-value: lambda < mu iff a_lambda > a_mu.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactalg import IntMatrix, LaurentPoly, frac_inverse, lattice_basis, prime_factors
from .hecke import add_scaled
from .jreps import JIrrep, bad_primes
from .verify import CheckResult

__all__ = [
    "CellDatum",
    "build_cell_datum",
    "r_matrix",
    "jaction_on_cdag",
    "verify_axioms",
    "golden_b2_report",
    "B2_EQUAL_REFERENCE",
]


@dataclass
class CellDatum:
    ws: object
    reps: list[JIrrep]
    triples: list[tuple[int, int, int]]            # (rep index, s, t), fixed order
    coeff: dict[tuple[int, int, int], dict[int, int]]

    def element(self, li: int, s: int, t: int) -> dict:
        """C^lambda_{s,t} as a Hecke element in the T-basis."""
        kl = self.ws.kl
        out: dict = {}
        for w, k in self.coeff[(li, s, t)].items():
            add_scaled(out, kl.cdag_t[w], LaurentPoly.const(k))
        return out

    def transition_matrix(self) -> IntMatrix:
        """Rows indexed by w, columns by the (lambda, s, t) triples."""
        n = self.ws.group.order
        cols = []
        for key in self.triples:
            vec = [0] * n
            for w, k in self.coeff[key].items():
                vec[w] = k
            cols.append(vec)
        return IntMatrix(n, n, [cols[j][i] for i in range(n) for j in range(n)])


def build_cell_datum(ws) -> CellDatum:
    group = ws.group
    ad = ws.adata
    inv = group.inv
    nhat = ad.nhat
    triples = []
    coeff = {}
    for li, rep in enumerate(ws.reps):
        b = rep.gram
        for w in range(group.order):
            m = rep.mats[inv[w]]
            if m.is_zero():
                continue
            bm = b * m
            sign = nhat[w] * nhat[inv[w]]
            for s in range(rep.dim):
                for t in range(rep.dim):
                    v = sign * bm[t, s]
                    if v:
                        coeff.setdefault((li, s, t), {})[w] = v
        for s in range(rep.dim):
            for t in range(rep.dim):
                triples.append((li, s, t))
                coeff.setdefault((li, s, t), {})
    return CellDatum(ws=ws, reps=ws.reps, triples=triples, coeff=coeff)


def r_matrix(ws, h: dict, li: int) -> list[list[LaurentPoly]]:
    """r_h(s',s) = sum_x a_h(x) rho^lambda_{s's}(t_x), with phi(h) = sum a_h(x) t_x."""
    rep = ws.reps[li]
    img = ws.phi.of_hecke(h)
    d = rep.dim
    out = [[LaurentPoly.zero() for _ in range(d)] for _ in range(d)]
    for x, p in img.items():
        m = rep.mats[x]
        if m.is_zero():
            continue
        for sp in range(d):
            for s in range(d):
                v = m[sp, s]
                if v:
                    out[sp][s] = out[sp][s] + p * v
    return out


def jaction_on_cdag(ws, x: int, w: int) -> dict[int, int]:
    """t_x * c_w^dagger = sum_z gamma_{x,w,z^-1} nhat_w nhat_z c_z^dagger."""
    nhat = ws.adata.nhat
    out = {}
    for z, c in ws.jring.prod.get((x, w), []):
        v = c * nhat[w] * nhat[z]
        if v:
            out[z] = v
    return out


def _gen_elements(group) -> list[int]:
    return [w for w in range(group.order) if group.length[w] == 1]


def verify_axioms(ws, datum: CellDatum | None = None) -> list[CheckResult]:
    """(C1) basis with determinant supported on bad primes, (C2) star symmetry,
    (C3) generator action congruent modulo higher a-strata, plus the stratum
    support claim, the J_A-action identities and the inversion formula."""
    datum = datum or ws.datum
    group = ws.group
    kl = ws.kl
    ad = ws.adata
    inv = group.inv
    checks: list[CheckResult] = []

    bad = []
    for (li, s, t), vec in datum.coeff.items():
        alam = datum.reps[li].a
        for w in vec:
            if ad.a[w] != alam:
                bad.append((datum.reps[li].label, s, t, w))
    checks.append(
        CheckResult("C supported on the a_lambda stratum", not bad, "%s" % bad[:3])
    )

    trans = datum.transition_matrix()
    det = trans.det()
    lbad = bad_primes(datum.reps)
    ok = det != 0 and prime_factors(det) <= lbad
    checks.append(
        CheckResult(
            "(C1) transition determinant unit over R",
            ok,
            "det=%d, bad primes=%s" % (det, sorted(lbad)),
        )
    )

    bad = []
    for li, rep in enumerate(datum.reps):
        for s in range(rep.dim):
            for t in range(rep.dim):
                starred = {}
                for w, k in datum.coeff[(li, s, t)].items():
                    starred[inv[w]] = k
                if starred != datum.coeff[(li, t, s)]:
                    bad.append((rep.label, s, t))
    checks.append(CheckResult("(C2) star(C_st) = C_ts", not bad, "%s" % bad[:3]))

    # star really is T_w -> T_{w^-1} on the dagger basis: (c_w)* = c_{w^-1}
    bad = []
    for w in range(group.order):
        if ws.algebra.star(kl.cdag_t[w]) != kl.cdag_t[inv[w]]:
            bad.append(w)
    checks.append(
        CheckResult("star maps c_w^dagger to c_{w^-1}^dagger", not bad, "w=%s" % bad[:5])
    )

    gens = _gen_elements(group)
    bad = []
    for li, rep in enumerate(datum.reps):
        alam = rep.a
        rmats = {}
        for ge in gens:
            rmats[ge] = r_matrix(ws, {ge: LaurentPoly.one()}, li)
        for s in range(rep.dim):
            for t in range(rep.dim):
                celt = datum.element(li, s, t)
                for ge in gens:
                    lhs = ws.algebra.lmul_gen(group.word[ge][0], celt)
                    expand = kl.to_cdag(lhs)
                    r = rmats[ge]
                    for sp in range(rep.dim):
                        p = r[sp][s]
                        if p:
                            for w, k in datum.coeff[(li, sp, t)].items():
                                cur = expand.get(w, LaurentPoly.zero()) - p * k
                                if cur:
                                    expand[w] = cur
                                else:
                                    expand.pop(w, None)
                    for w, p in expand.items():
                        if p and ad.a[w] < alam + 1:
                            bad.append((rep.label, s, t, ws.element_name(ge), w))
                            break
    checks.append(
        CheckResult(
            "(C3) T_s C_st = sum r(s',s) C_s't mod higher a-strata",
            not bad,
            "%s" % bad[:3],
        )
    )

    # exact J_A-module identity: phi(h) * C_st = sum r_h(s',s) C_s't
    bad = []
    for li, rep in enumerate(datum.reps):
        for ge in gens:
            r = r_matrix(ws, {ge: LaurentPoly.one()}, li)
            img = ws.phi.of_hecke({ge: LaurentPoly.one()})
            for s in range(rep.dim):
                for t in range(rep.dim):
                    lhs: dict = {}
                    for x, p in img.items():
                        for w, k in datum.coeff[(li, s, t)].items():
                            for z, v in jaction_on_cdag(ws, x, w).items():
                                cur = lhs.get(z, LaurentPoly.zero()) + p * (v * k)
                                if cur:
                                    lhs[z] = cur
                                else:
                                    lhs.pop(z, None)
                    rhs: dict = {}
                    for sp in range(rep.dim):
                        p = r[sp][s]
                        if p:
                            for w, k in datum.coeff[(li, sp, t)].items():
                                cur = rhs.get(w, LaurentPoly.zero()) + p * k
                                if cur:
                                    rhs[w] = cur
                                else:
                                    rhs.pop(w, None)
                    if lhs != rhs:
                        bad.append((rep.label, ws.element_name(ge), s, t))
    checks.append(
        CheckResult("phi(h) * C_st = sum r_h(s',s) C_s't exactly", not bad, "%s" % bad[:3])
    )

    # the congruence behind (C3): h c_w = phi(h) * c_w mod higher strata
    bad = []
    for ge in gens:
        img = ws.phi.of_hecke({ge: LaurentPoly.one()})
        for w in range(group.order):
            lhs = kl.to_cdag(ws.algebra.lmul_gen(group.word[ge][0], dict(kl.cdag_t[w])))
            for x, p in img.items():
                for z, v in jaction_on_cdag(ws, x, w).items():
                    cur = lhs.get(z, LaurentPoly.zero()) - p * v
                    if cur:
                        lhs[z] = cur
                    else:
                        lhs.pop(z, None)
            for z, p in lhs.items():
                if p and ad.a[z] < ad.a[w] + 1:
                    bad.append((ws.element_name(ge), w, z))
                    break
    checks.append(
        CheckResult(
            "T_s c_w = phi(T_s) * c_w mod higher a-strata", not bad, "%s" % bad[:3]
        )
    )

    # inversion: sum over (lambda,s,t) of (1/f)(rho(t_y) B^-1)_{s,t} C_st = +-c_y
    bad = []
    nhat = ad.nhat
    for y in range(group.order):
        acc: dict[int, Fraction] = {}
        for li, rep in enumerate(datum.reps):
            m = rep.mats[y]
            if m.is_zero():
                continue
            binv = frac_inverse([[Fraction(v) for v in rep.gram.row(i)] for i in range(rep.dim)])
            mfr = [[Fraction(m[i, j]) for j in range(rep.dim)] for i in range(rep.dim)]
            prod = [
                [sum(mfr[i][k] * binv[k][j] for k in range(rep.dim)) for j in range(rep.dim)]
                for i in range(rep.dim)
            ]
            for s in range(rep.dim):
                for t in range(rep.dim):
                    c = prod[s][t] / rep.f
                    if not c:
                        continue
                    for w, k in datum.coeff[(li, s, t)].items():
                        cur = acc.get(w, Fraction(0)) + c * k
                        if cur:
                            acc[w] = cur
                        else:
                            acc.pop(w, None)
        want = {y: Fraction(nhat[y] * nhat[inv[y]])}
        if acc != want:
            bad.append(y)
    checks.append(
        CheckResult(
            "inversion: C-combination reduces to nhat_y nhat_{y^-1} c_y", not bad,
            "y=%s" % bad[:5],
        )
    )

    return checks


# --- golden reference: B2 at equal weights ------------------------------------
# Element indices follow the shortlex numbering of B2:
# 0:1, 1:s1, 2:s2, 3:s1s2, 4:s2s1, 5:s1s2s1, 6:s2s1s2, 7:s1s2s1s2 (= w0)

B2_EQUAL_REFERENCE = {
    "left_cells": [[0], [1, 4, 5], [2, 3, 6], [7]],
    "a_values": [0, 1, 1, 1, 1, 1, 1, 4],
    "a_invariants": [0, 1, 1, 1, 4],
    "j_relations": [
        ((0, 0), {0: 1}),
        ((7, 7), {7: 1}),
        ((1, 1), {1: 1}),
        ((1, 3), {3: 1}),
        ((1, 5), {5: 1}),
        ((2, 2), {2: 1}),
        ((2, 4), {4: 1}),
        ((2, 6), {6: 1}),
        ((3, 4), {1: 1, 5: 1}),
        ((3, 6), {3: 1}),
        ((4, 3), {2: 1, 6: 1}),
        ((4, 5), {4: 1}),
        ((5, 5), {1: 1}),
        ((6, 6), {2: 1}),
    ],
    "two_dim_char": {1: 1, 2: 1, 5: 1, 6: 1},
    "two_dim_gram": [[1, 0], [0, 2]],
    "one_dim_elements": [{0: 1}, {1: 1, 5: -1}, {2: 1, 6: -1}, {7: 1}],
    "two_dim_lattice": [
        {1: 1, 5: 1},
        {3: -2},
        {4: -2},
        {2: 2, 6: 2},
    ],
}


def golden_b2_report(ws) -> list[CheckResult]:
    """Compare the computed B2 (equal weights) data against the reference."""
    ref = B2_EQUAL_REFERENCE
    checks: list[CheckResult] = []
    if str(ws.cartan) != "B2" or not ws.weights.is_equal_parameter():
        return [CheckResult("golden b2 applicability", False, "needs B2 with equal weights")]

    got = [sorted(c) for c in ws.cells.left_cells]
    checks.append(
        CheckResult("golden: left cells", got == ref["left_cells"], "%s" % got)
    )

    checks.append(
        CheckResult("golden: a-values", ws.adata.a == ref["a_values"], "%s" % ws.adata.a)
    )

    bad = []
    for (x, y), want in ref["j_relations"]:
        if ws.jring.basis_product(x, y) != want:
            bad.append((x, y))
    checks.append(CheckResult("golden: J-relations", not bad, "%s" % bad))

    two = [r for r in ws.reps if r.dim == 2]
    ok = len(two) == 1
    if ok:
        char = {w: c for w, c in enumerate(two[0].char) if c}
        ok = char == ref["two_dim_char"]
    checks.append(CheckResult("golden: 2-dim character", ok))
    if two:
        checks.append(
            CheckResult(
                "golden: B = diag(1,2) for the 2-dim class",
                two[0].gram.to_rows() == ref["two_dim_gram"],
                "%s" % two[0].gram.to_rows(),
            )
        )

    checks.append(
        CheckResult(
            "golden: a-invariants",
            sorted(r.a for r in ws.reps) == sorted(ref["a_invariants"]),
            "%s" % sorted(r.a for r in ws.reps),
        )
    )

    datum = ws.datum
    one_dim_got = []
    two_dim_got = []
    for (li, s, t) in datum.triples:
        vec = datum.coeff[(li, s, t)]
        if datum.reps[li].dim == 1:
            one_dim_got.append(vec)
        else:
            two_dim_got.append(vec)
    ok = all(vec in one_dim_got for vec in ref["one_dim_elements"]) and len(
        one_dim_got
    ) == len(ref["one_dim_elements"])
    checks.append(
        CheckResult("golden: 1-dim cellular elements entrywise", ok, "%s" % one_dim_got)
    )

    n = ws.group.order
    rows_got = [[vec.get(w, 0) for w in range(n)] for vec in two_dim_got]
    rows_ref = [[vec.get(w, 0) for w in range(n)] for vec in ref["two_dim_lattice"]]
    ok = lattice_basis(rows_got) == lattice_basis(rows_ref)
    checks.append(CheckResult("golden: 2-dim block spans the reference lattice", ok))

    return checks
