"""Generic Iwahori-Hecke algebra over Z[v,v^-1]: T-basis arithmetic, the bar
involution, the Kazhdan-Lusztig basis c_w and its dagger twin, the star
anti-involution and the structure constants h_{x,y,z} of the c-basis.

Elements are plain dicts {group element index: LaurentPoly}; the algebra
object carries the group, the weight function and the cached tables.
"""

from __future__ import annotations

import hashlib
import json
import os

from .coxeter import CoxeterGroup, WeightFunction
from .exactalg import LaurentPoly

__all__ = ["HeckeAlgebra", "KLBasis", "HTable", "CACHE_FORMAT"]

CACHE_FORMAT = 1


def add_scaled(dst: dict, src: dict, factor: LaurentPoly | int = 1) -> None:
    """dst += factor * src, in place, dropping zero coefficients."""
    for w, p in src.items():
        q = dst.get(w)
        q = p * factor if q is None else q + p * factor
        if q:
            dst[w] = q
        else:
            dst.pop(w, None)


class HeckeAlgebra:
    def __init__(self, group: CoxeterGroup, weights: WeightFunction):
        if weights.group is not group:
            raise ValueError("weight function built for a different group")
        self.group = group
        self.weights = weights
        self.xi = [
            LaurentPoly({weights.of_generator(s): 1, -weights.of_generator(s): -1})
            for s in range(group.rank)
        ]
        self._t_inv: list[dict] | None = None

    def unit(self) -> dict:
        return {0: LaurentPoly.one()}

    def t_basis(self, w: int) -> dict:
        return {w: LaurentPoly.one()}

    def lmul_gen(self, s: int, h: dict) -> dict:
        """T_s * h."""
        g = self.group
        out: dict = {}
        xi = self.xi[s]
        for w, p in h.items():
            sw = g.lmult[w][s]
            if g.ldesc[w] >> s & 1:  # l(sw) < l(w)
                add_scaled(out, {sw: p, w: p * xi})
            else:
                add_scaled(out, {sw: p})
        return out

    def rmul_gen(self, h: dict, s: int) -> dict:
        """h * T_s."""
        g = self.group
        out: dict = {}
        xi = self.xi[s]
        for w, p in h.items():
            ws = g.rmult[w][s]
            if g.rdesc[w] >> s & 1:
                add_scaled(out, {ws: p, w: p * xi})
            else:
                add_scaled(out, {ws: p})
        return out

    def mul(self, h1: dict, h2: dict) -> dict:
        """Product in the T-basis."""
        out: dict = {}
        for u, p in h1.items():
            acc = h2
            for s in reversed(self.group.word[u]):
                acc = self.lmul_gen(s, acc)
            add_scaled(out, acc, p)
        return out

    def t_inverse(self, w: int) -> dict:
        """(T_{w^{-1}})^{-1}, which is also bar(T_w)."""
        if self._t_inv is None:
            self._build_t_inverses()
        return self._t_inv[w]

    def _build_t_inverses(self):
        g = self.group
        table: list[dict] = [self.unit()]
        for w in range(1, g.order):
            word = g.word[w]
            s = word[-1]
            prev = table[g.rmult[w][s]]  # w = w' * s with l(w') < l(w)
            out = self.rmul_gen(prev, s)
            add_scaled(out, prev, -self.xi[s])
            table.append(out)
        self._t_inv = table

    def bar(self, h: dict) -> dict:
        """Ring involution with bar(v) = v^-1 and bar(T_w) = (T_{w^{-1}})^{-1}."""
        out: dict = {}
        for w, p in h.items():
            add_scaled(out, self.t_inverse(w), p.bar())
        return out

    def dagger(self, h: dict) -> dict:
        """A-algebra involution with T_s -> -T_s^{-1}."""
        out: dict = {}
        for w, p in h.items():
            sign = -1 if self.group.length[w] % 2 else 1
            add_scaled(out, self.t_inverse(w), p * sign)
        return out

    def star(self, h: dict) -> dict:
        """A-linear anti-involution T_w -> T_{w^{-1}}."""
        inv = self.group.inv
        return {inv[w]: p for w, p in h.items()}


class KLBasis:
    """Kazhdan-Lusztig basis data for (W, L).

    c_t[w]     T-expansion of c_w
    cdag_t[w]  T-expansion of c_w^dagger
    corr[w]    list of (z, mu) with c_w = c_s c_{sw} - sum mu_z c_z
    chosen_s[w] the left descent used in the recursion
    """

    def __init__(self, algebra: HeckeAlgebra):
        self.algebra = algebra
        self.group = algebra.group
        self._build()

    def _build(self):
        g = self.group
        alg = self.algebra
        n = g.order
        c_t: list[dict] = [alg.unit()]
        corr: list[list] = [[]]
        chosen: list[int] = [-1]
        by_length: dict[int, list[int]] = {}
        for w in range(n):
            by_length.setdefault(g.length[w], []).append(w)
        for w in range(1, n):
            s = g.first_left_descent(w)
            y = g.lmult[w][s]
            vL = LaurentPoly.monomial(-alg.weights.of_generator(s))
            q = alg.lmul_gen(s, c_t[y])
            add_scaled(q, c_t[y], vL)  # c_s * c_y with c_s = T_s + v^{-L(s)} T_1
            fixes = []
            for ln in range(g.length[w] - 1, -1, -1):
                for z in by_length[ln]:
                    p = q.get(z)
                    if p is None:
                        continue
                    mu = LaurentPoly(
                        {k: c for k, c in p.c.items() if k > 0}
                    )
                    mu = mu + mu.bar() + LaurentPoly.const(p.coeff(0))
                    if mu:
                        add_scaled(q, c_t[z], -mu)
                        fixes.append((z, mu))
            assert q.get(w) == LaurentPoly.one()
            c_t.append(q)
            corr.append(fixes)
            chosen.append(s)
        self.c_t = c_t
        self.corr = corr
        self.chosen_s = chosen
        self.cdag_t = [alg.dagger(c) for c in c_t]

    def p(self, y: int, w: int) -> LaurentPoly:
        """Coefficient of T_y in c_w (p_{w,w} = 1)."""
        return self.c_t[w].get(y, LaurentPoly.zero())

    def c(self, w: int, daggered: bool = False) -> dict:
        return dict(self.cdag_t[w] if daggered else self.c_t[w])

    def _expand(self, h: dict, basis: list[dict], diag_sign: bool) -> dict:
        g = self.group
        work = dict(h)
        out: dict = {}
        for w in sorted(work, key=lambda w: (-g.length[w], -w)):
            p = work.get(w)
            if not p:
                continue
            if diag_sign and g.length[w] % 2:
                p = -p
            out[w] = p
            add_scaled(work, basis[w], -p)
        return {w: p for w, p in out.items() if p}

    def to_c(self, h: dict) -> dict:
        """Coefficients of h on the basis {c_w}."""
        return self._expand(h, self.c_t, diag_sign=False)

    def to_cdag(self, h: dict) -> dict:
        """Coefficients of h on the basis {c_w^dagger}."""
        return self._expand(h, self.cdag_t, diag_sign=True)

    def verify_bar_invariance(self) -> list[int]:
        """Indices w with bar(c_w) != c_w (expected empty)."""
        alg = self.algebra
        bad = []
        for w, cw in enumerate(self.c_t):
            if alg.bar(cw) != cw:
                bad.append(w)
        return bad

    def verify_triangularity(self) -> list[tuple[int, int]]:
        """Pairs (y, w) violating p in v^{-1}Z[v^{-1}] or Bruhat support."""
        g = self.group
        bad = []
        for w, cw in enumerate(self.c_t):
            for y, p in cw.items():
                if y == w:
                    if p != LaurentPoly.one():
                        bad.append((y, w))
                    continue
                if (p.max_exp() is not None and p.max_exp() >= 0) or not g.bruhat_leq(y, w):
                    bad.append((y, w))
        return bad


class HTable:
    """Structure constants h_{x,y,z} of c_x c_y = sum_z h_{x,y,z} c_z.

    Stored as h[x][y] = {z: LaurentPoly}; identical for the dagger basis.
    """

    def __init__(self, kl: KLBasis, rows=None):
        self.kl = kl
        self.group = kl.group
        self.h = rows if rows is not None else self._build()

    def _build(self):
        g = self.group
        alg = self.kl.algebra
        n = g.order
        one = LaurentPoly.one()
        # base rows: products c_s * c_y expanded in the c-basis
        base: list[list[dict]] = []
        for s in range(g.rank):
            vL = LaurentPoly.monomial(-alg.weights.of_generator(s))
            rows_s = []
            for y in range(n):
                q = alg.lmul_gen(s, self.kl.c_t[y])
                add_scaled(q, self.kl.c_t[y], vL)
                rows_s.append(self.kl.to_c(q))
            base.append(rows_s)
        gen_elt = {}  # generator -> element index of the length-1 element
        for w in range(n):
            if g.length[w] == 1:
                gen_elt[g.word[w][0]] = w
        h: list[list[dict]] = [[{} for _ in range(n)] for _ in range(n)]
        for y in range(n):
            h[0][y] = {y: one}
        for s, w in gen_elt.items():
            for y in range(n):
                h[w][y] = base[s][y]
        for x in range(1, n):
            if g.length[x] == 1:
                continue
            s = self.kl.chosen_s[x]
            xp = g.lmult[x][s]
            for y in range(n):
                row: dict = {}
                for u, p in h[xp][y].items():
                    add_scaled(row, base[s][u], p)
                for z, mu in self.kl.corr[x]:
                    add_scaled(row, h[z][y], -mu)
                h[x][y] = row
        return h

    def get(self, x: int, y: int, z: int) -> LaurentPoly:
        return self.h[x][y].get(z, LaurentPoly.zero())

    def row(self, x: int, y: int) -> dict:
        return self.h[x][y]


# --- disk cache ---------------------------------------------------------------

def cache_key(type_str: str, weights) -> str:
    payload = json.dumps(
        {"format": CACHE_FORMAT, "type": type_str, "weights": list(weights)},
        sort_keys=True,
    )
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


def cache_path(cache_dir: str, type_str: str, weights) -> str:
    tag = "%s_%s_%s" % (type_str, "-".join(map(str, weights)), cache_key(type_str, weights))
    return os.path.join(cache_dir, tag + ".json")


def save_tables(path: str, type_str: str, weights, kl: KLBasis, ht: HTable) -> None:
    n = kl.group.order
    payload = {
        "format": CACHE_FORMAT,
        "type": type_str,
        "weights": list(weights),
        "c_t": [{str(y): p.to_json() for y, p in kl.c_t[w].items()} for w in range(n)],
        "corr": [[[z, mu.to_json()] for z, mu in kl.corr[w]] for w in range(n)],
        "chosen_s": kl.chosen_s,
        "h": [
            [{str(z): p.to_json() for z, p in ht.h[x][y].items()} for y in range(n)]
            for x in range(n)
        ],
    }
    tmp = path + ".tmp"
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(tmp, "w") as fh:
        json.dump(payload, fh, sort_keys=True, separators=(",", ":"))
    os.replace(tmp, path)


def load_tables(path: str, algebra: HeckeAlgebra, type_str: str, weights):
    """Returns (KLBasis, HTable) or None on any mismatch."""
    try:
        with open(path) as fh:
            payload = json.load(fh)
    except (OSError, ValueError):
        return None
    if (
        payload.get("format") != CACHE_FORMAT
        or payload.get("type") != type_str
        or payload.get("weights") != list(weights)
    ):
        return None
    kl = KLBasis.__new__(KLBasis)
    kl.algebra = algebra
    kl.group = algebra.group
    kl.c_t = [
        {int(y): LaurentPoly.from_json(p) for y, p in row.items()} for row in payload["c_t"]
    ]
    kl.corr = [
        [(z, LaurentPoly.from_json(mu)) for z, mu in row] for row in payload["corr"]
    ]
    kl.chosen_s = payload["chosen_s"]
    kl.cdag_t = [algebra.dagger(c) for c in kl.c_t]
    rows = [
        [
            {int(z): LaurentPoly.from_json(p) for z, p in cell.items()}
            for cell in hrow
        ]
        for hrow in payload["h"]
    ]
    return kl, HTable(kl, rows=rows)
