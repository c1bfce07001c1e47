"""The asymptotic ring J: structure constants gamma, multiplication, the
identity element, the homomorphism phi from the Hecke algebra into J_A, and
its specialization phi_1 at v = 1.

J-elements are dicts {element index: value}; values are integers for J itself
and LaurentPoly for J_A.  The same multiplication routine serves both.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .cells import AData, CellPartition
from .exactalg import IntMatrix, LaurentPoly, frac_inverse
from .hecke import HTable, add_scaled
from .verify import CheckResult, PropertyViolation

__all__ = ["JRing", "Phi", "gamma_table", "verify_jring"]


def gamma_table(ht: HTable, ad: AData) -> dict[tuple[int, int, int], int]:
    """gamma_{x,y,z^-1} = constant term of v^{a(z)} h_{x,y,z}, nonzero entries."""
    g = ht.group
    inv = g.inv
    gamma: dict[tuple[int, int, int], int] = {}
    for x in range(g.order):
        hx = ht.h[x]
        for y in range(g.order):
            for z, p in hx[y].items():
                c = p.coeff(-ad.a[z])
                if c:
                    gamma[(x, y, inv[z])] = c
    return gamma


class JRing:
    def __init__(self, group, gamma: dict, ad: AData):
        self.group = group
        self.gamma = gamma
        self.ad = ad
        inv = group.inv
        prod: dict[tuple[int, int], list[tuple[int, int]]] = {}
        for (x, y, u), c in gamma.items():
            prod.setdefault((x, y), []).append((inv[u], c))
        self.prod = {k: sorted(v) for k, v in prod.items()}
        self.identity = {d: ad.nz[d] for d in ad.dset}

    def multiply(self, a: dict, b: dict) -> dict:
        """t_x t_y = sum_z gamma_{x,y,z^-1} t_z, extended bilinearly.

        Works for integer-valued and LaurentPoly-valued elements alike.
        """
        out: dict = {}
        for x, px in a.items():
            for y, py in b.items():
                terms = self.prod.get((x, y))
                if not terms:
                    continue
                pxy = px * py
                for z, c in terms:
                    cur = out.get(z)
                    cur = pxy * c if cur is None else cur + pxy * c
                    if cur:
                        out[z] = cur
                    else:
                        del out[z]
        return out

    def basis_product(self, x: int, y: int) -> dict:
        return {z: c for z, c in self.prod.get((x, y), [])}

    def verify_identity(self) -> None:
        """1_J = sum n_d t_d must be a two-sided identity on every t_w."""
        one = self.identity
        for w in range(self.group.order):
            tw = {w: 1}
            if self.multiply(one, tw) != tw or self.multiply(tw, one) != tw:
                raise PropertyViolation("1_J identity", "fails on t_%d" % w)


class Phi:
    """Lusztig's homomorphism phi : H -> J_A, tabulated on the dagger basis."""

    def __init__(self, kl, ht: HTable, ad: AData):
        if ad.nhat is None:
            raise ValueError("nhat must be computed before phi")
        self.kl = kl
        self.ht = ht
        self.ad = ad
        self.group = ht.group
        self.images = self._build()

    def _build(self) -> list[dict]:
        g = self.group
        ad = self.ad
        out = []
        for w in range(g.order):
            hw = self.ht.h[w]
            img: dict[int, LaurentPoly] = {}
            for d in ad.dset:
                for z, p in hw[d].items():
                    if ad.a[z] != ad.a[d]:
                        continue
                    q = p * ad.nhat[z]
                    cur = img.get(z)
                    cur = q if cur is None else cur + q
                    if cur:
                        img[z] = cur
                    else:
                        del img[z]
            out.append(img)
        return out

    def of_cdag(self, w: int) -> dict:
        return dict(self.images[w])

    def of_hecke(self, h: dict) -> dict:
        """phi of an arbitrary element given in the T-basis."""
        out: dict = {}
        for w, coeff in self.kl.to_cdag(h).items():
            add_scaled(out, self.images[w], coeff)
        return out

    def phi_one_matrix(self) -> IntMatrix:
        """Matrix of phi_1 : Q[W] -> J_Q; entry (z, w) is the t_z-coordinate
        of phi(T_w) at v = 1."""
        n = self.group.order
        cols = []
        for w in range(n):
            img = self.of_hecke({w: LaurentPoly.one()})
            col = [0] * n
            for z, p in img.items():
                col[z] = sum(p.c.values())  # evaluate at v = 1
            cols.append(col)
        return IntMatrix(n, n, [cols[w][z] for z in range(n) for w in range(n)])

    def phi_one_inverse(self) -> list[list[Fraction]]:
        m = self.phi_one_matrix()
        rows = [[Fraction(x) for x in m.row(i)] for i in range(m.rows)]
        return frac_inverse(rows)


def verify_jring(
    jr: JRing,
    phi: Phi,
    cp: CellPartition,
    exhaustive_limit: int = 48,
    seed: int = 0,
) -> list[CheckResult]:
    """Gamma symmetries (P7, P8, inverse-transpose), the identity element,
    associativity, phi multiplicativity on generator pairs, phi_1 invertibility."""
    g = jr.group
    n = g.order
    inv = g.inv
    checks: list[CheckResult] = []

    bad = []
    for (x, y, z), c in jr.gamma.items():
        if jr.gamma.get((y, z, x), 0) != c:
            bad.append((x, y, z))
            break
    checks.append(CheckResult("P7: gamma cyclic symmetry", not bad, "%s" % bad[:3]))

    bad = []
    for (x, y, z), c in jr.gamma.items():
        if jr.gamma.get((inv[y], inv[x], inv[z]), 0) != c:
            bad.append((x, y, z))
            break
    checks.append(CheckResult("gamma inverse-transpose symmetry", not bad, "%s" % bad[:3]))

    bad = []
    for (x, y, z) in jr.gamma:
        if (
            cp.left[x] != cp.left[inv[y]]
            or cp.left[y] != cp.left[inv[z]]
            or cp.left[z] != cp.left[inv[x]]
        ):
            bad.append((x, y, z))
            break
    checks.append(CheckResult("P8: gamma cell support", not bad, "%s" % bad[:3]))

    try:
        jr.verify_identity()
        checks.append(CheckResult("1_J is a two-sided identity", True))
    except PropertyViolation as exc:
        checks.append(CheckResult("1_J is a two-sided identity", False, exc.witness))

    if n <= exhaustive_limit:
        triples = (
            (x, y, z) for x in range(n) for y in range(n) for z in range(n)
        )
    else:
        rng = random.Random(seed)
        triples = (
            (rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(2000)
        )
    bad = []
    for x, y, z in triples:
        lhs = jr.multiply(jr.basis_product(x, y), {z: 1})
        rhs = jr.multiply({x: 1}, jr.basis_product(y, z))
        if lhs != rhs:
            bad.append((x, y, z))
            break
    checks.append(CheckResult("J multiplication associative", not bad, "%s" % bad[:3]))

    bad = []
    gens = [w for w in range(n) if g.length[w] == 1]
    for s in gens:
        for y in range(n):
            lhs: dict = {}
            for z, hp in phi.ht.h[s][y].items():
                add_scaled(lhs, phi.images[z], hp)
            rhs = jr.multiply(phi.images[s], phi.images[y])
            if lhs != rhs:
                bad.append((s, y))
                break
        if bad:
            break
    checks.append(
        CheckResult("phi multiplicative on (c_s, c_y) pairs", not bad, "%s" % bad[:3])
    )

    det = phi.phi_one_matrix().det()
    checks.append(CheckResult("phi_1 invertible", det != 0, "det=%d" % det))
    return checks
