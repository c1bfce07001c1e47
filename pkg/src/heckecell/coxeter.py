"""Finite Weyl groups, enumerated through their permutation action on roots.

Supported Cartan types: A1-A5, B2-B4, D4, G2, F4 (group order capped, default
1200).  Elements are numbered 0..|W|-1 in shortlex order of their minimal
reduced words with generators ordered s1 < s2 < ...; index 0 is the identity.
All coordinates live in the simple-root basis, so everything is integral.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

__all__ = ["CartanType", "CoxeterGroup", "WeightFunction", "build_group"]

DEFAULT_ORDER_CAP = 1200

_ORDERS = {
    ("A", 1): 2, ("A", 2): 6, ("A", 3): 24, ("A", 4): 120, ("A", 5): 720,
    ("B", 2): 8, ("B", 3): 48, ("B", 4): 384,
    ("D", 4): 192,
    ("G", 2): 12,
    ("F", 4): 1152,
}


@dataclass(frozen=True)
class CartanType:
    family: str
    rank: int

    @classmethod
    def parse(cls, s: str) -> "CartanType":
        s = s.strip().upper()
        if len(s) < 2 or s[0] not in "ABDGF" or not s[1:].isdigit():
            raise ValueError("cannot parse Cartan type %r" % (s,))
        return cls(s[0], int(s[1:]))

    def __str__(self):
        return "%s%d" % (self.family, self.rank)

    def order(self) -> int:
        key = (self.family, self.rank)
        if key not in _ORDERS:
            raise ValueError("unsupported Cartan type %s" % (self,))
        return _ORDERS[key]

    def gram(self) -> list[list[Fraction]]:
        """Gram matrix of the simple roots (a crystallographic normalization)."""
        n = self.rank
        f = self.family
        if f == "A":
            g = [[Fraction(0)] * n for _ in range(n)]
            for i in range(n):
                g[i][i] = Fraction(2)
                if i + 1 < n:
                    g[i][i + 1] = g[i + 1][i] = Fraction(-1)
            return g
        if f == "B":
            # alpha_1 short (norm 1), alpha_i = e_i - e_{i-1} style chain
            g = [[Fraction(0)] * n for _ in range(n)]
            g[0][0] = Fraction(1)
            for i in range(1, n):
                g[i][i] = Fraction(2)
                g[i - 1][i] = g[i][i - 1] = Fraction(-1)
            return g
        if f == "D" and n == 4:
            g = [[Fraction(0)] * 4 for _ in range(4)]
            for i in range(4):
                g[i][i] = Fraction(2)
            for i in (0, 2, 3):  # node 1 is the branch node
                g[i][1] = g[1][i] = Fraction(-1)
            return g
        if f == "G" and n == 2:
            return [[Fraction(2), Fraction(-3)], [Fraction(-3), Fraction(6)]]
        if f == "F" and n == 4:
            g = [[Fraction(0)] * 4 for _ in range(4)]
            norms = [4, 4, 2, 2]
            for i in range(4):
                g[i][i] = Fraction(norms[i])
            g[0][1] = g[1][0] = Fraction(-2)
            g[1][2] = g[2][1] = Fraction(-2)
            g[2][3] = g[3][2] = Fraction(-1)
            return g
        raise ValueError("unsupported Cartan type %s" % (self,))


class CoxeterGroup:
    """Enumerated finite Weyl group.

    Attributes (all immutable after construction):
      order         group order |W|
      rank          number of simple generators
      word          minimal reduced word per element (tuple of generator ids)
      length        l(w) per element
      rmult[w][s]   index of w*s
      lmult[w][s]   index of s*w
      inv[w]        index of w^{-1}
      ldesc, rdesc  descent bitmasks over generators
      w0            index of the longest element
      coxeter_matrix[s][t]  order of s*t in W
    """

    def __init__(self, cartan: CartanType, max_order: int = DEFAULT_ORDER_CAP):
        expected = cartan.order()
        if expected > max_order:
            raise ValueError(
                "type %s has order %d, above the cap %d" % (cartan, expected, max_order)
            )
        self.cartan = cartan
        self.rank = cartan.rank
        self._build_roots(cartan)
        self._enumerate(expected)
        self._bruhat_rows: list[int] | None = None

    # -- construction ----------------------------------------------------

    def _build_roots(self, cartan: CartanType):
        n = cartan.rank
        g = cartan.gram()
        # Cartan integers c[i][j] = 2(a_i, a_j)/(a_j, a_j)
        c = [[2 * g[i][j] / g[j][j] for j in range(n)] for i in range(n)]
        if any(x.denominator != 1 for row in c for x in row):
            raise ValueError("non-crystallographic Gram matrix")
        c = [[int(x) for x in row] for row in c]

        def reflect(j, vec):
            coef = sum(vec[i] * c[i][j] for i in range(n))
            out = list(vec)
            out[j] -= coef
            return tuple(out)

        simple = [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
        roots = list(simple)
        seen = set(roots)
        queue = list(roots)
        while queue:
            v = queue.pop()
            for j in range(n):
                w = reflect(j, v)
                if w not in seen:
                    seen.add(w)
                    roots.append(w)
                    queue.append(w)
        # positives first (all coords >= 0), then negatives in matching order
        pos = sorted(r for r in roots if all(x >= 0 for x in r))
        self.roots = pos + [tuple(-x for x in r) for r in pos]
        self.n_pos = len(pos)
        index = {r: i for i, r in enumerate(self.roots)}
        self.simple_root = [index[s] for s in simple]
        nr = len(self.roots)
        self.gen_perm = []
        for j in range(n):
            self.gen_perm.append(tuple(index[reflect(j, r)] for r in self.roots))
        self.coxeter_matrix = [[self._product_order(s, t) for t in range(n)] for s in range(n)]
        assert nr == 2 * self.n_pos

    def _product_order(self, s: int, t: int) -> int:
        if s == t:
            return 1
        ps, pt = self.gen_perm[s], self.gen_perm[t]
        perm = tuple(ps[pt[i]] for i in range(len(ps)))
        cur = perm
        m = 1
        ident = tuple(range(len(ps)))
        while cur != ident:
            cur = tuple(perm[i] for i in cur)
            m += 1
        return m

    def _enumerate(self, expected: int):
        n = self.rank
        nr = len(self.roots)
        ident = tuple(range(nr))
        index: dict[tuple, int] = {ident: 0}
        perms = [ident]
        words: list[tuple[int, ...]] = [()]
        frontier = [0]
        while frontier:
            nxt = []
            for w in frontier:
                pw = perms[w]
                for s in range(n):
                    ps = self.gen_perm[s]
                    cand = tuple(pw[ps[i]] for i in range(nr))  # w*s on roots
                    if cand not in index:
                        index[cand] = len(perms)
                        perms.append(cand)
                        words.append(words[w] + (s,))
                        nxt.append(index[cand])
            frontier = nxt
        if len(perms) != expected:
            raise AssertionError(
                "enumerated %d elements, expected %d" % (len(perms), expected)
            )
        self.order = len(perms)
        self.word = words
        self.length = [len(w) for w in words]
        self._perms = perms
        self.rmult = []
        self.lmult = []
        for w, pw in enumerate(perms):
            self.rmult.append(tuple(index[tuple(pw[ps[i]] for i in range(nr))] for ps in self.gen_perm))
            self.lmult.append(tuple(index[tuple(ps[pw[i]] for i in range(nr))] for ps in self.gen_perm))
        self.inv = []
        for pw in perms:
            pinv = [0] * nr
            for i, im in enumerate(pw):
                pinv[im] = i
            self.inv.append(index[tuple(pinv)])
        npos = self.n_pos
        self.rdesc = []
        self.ldesc = []
        for w, pw in enumerate(perms):
            rd = 0
            for s in range(n):
                if pw[self.simple_root[s]] >= npos:
                    rd |= 1 << s
            self.rdesc.append(rd)
        for w in range(self.order):
            self.ldesc.append(self.rdesc[self.inv[w]])
        self.w0 = max(range(self.order), key=lambda w: self.length[w])
        assert self.length[self.w0] == self.n_pos

    # -- queries ----------------------------------------------------------

    def multiply(self, x: int, y: int) -> int:
        for s in self.word[y]:
            x = self.rmult[x][s]
        return x

    def left_descents(self, w: int) -> list[int]:
        return [s for s in range(self.rank) if self.ldesc[w] >> s & 1]

    def right_descents(self, w: int) -> list[int]:
        return [s for s in range(self.rank) if self.rdesc[w] >> s & 1]

    def first_left_descent(self, w: int) -> int:
        d = self.ldesc[w]
        if not d:
            raise ValueError("identity has no descent")
        return (d & -d).bit_length() - 1

    def _build_bruhat(self):
        rows = [0] * self.order
        rows[0] = 1
        by_index = sorted(range(self.order), key=lambda w: (self.length[w], w))
        for y in by_index:
            if y == 0:
                continue
            s = self.first_left_descent(y)
            base = rows[self.lmult[y][s]]
            # x <= y  iff  (sx < x and sx <= sy) or (sx > x and x <= sy)
            m = 0
            rest = base
            while rest:
                low = rest & -rest
                z = low.bit_length() - 1
                rest ^= low
                if not (self.ldesc[z] >> s & 1):  # s*z > z
                    m |= 1 << z
                    m |= 1 << self.lmult[z][s]
            rows[y] = m | base
        self._bruhat_rows = rows

    def bruhat_leq(self, x: int, y: int) -> bool:
        """x <= y in Bruhat-Chevalley order."""
        if self._bruhat_rows is None:
            self._build_bruhat()
        return bool(self._bruhat_rows[y] >> x & 1)

    def generator_conjugacy_classes(self) -> list[list[int]]:
        """Classes of generators under W-conjugacy (odd-bond path components)."""
        n = self.rank
        parent = list(range(n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for s in range(n):
            for t in range(s + 1, n):
                if self.coxeter_matrix[s][t] % 2 == 1:
                    parent[find(s)] = find(t)
        classes: dict[int, list[int]] = {}
        for s in range(n):
            classes.setdefault(find(s), []).append(s)
        return sorted(classes.values())


class WeightFunction:
    """Strictly positive weights L(s), constant on conjugate generators."""

    def __init__(self, group: CoxeterGroup, values):
        values = list(values)
        if len(values) != group.rank:
            raise ValueError("expected %d weights, got %d" % (group.rank, len(values)))
        if any(not isinstance(v, int) or v <= 0 for v in values):
            raise ValueError("weights must be strictly positive integers")
        for cls in group.generator_conjugacy_classes():
            vals = {values[s] for s in cls}
            if len(vals) > 1:
                raise ValueError(
                    "generators %s are conjugate but have different weights" % (cls,)
                )
        self.group = group
        self.values = tuple(values)

    def of_generator(self, s: int) -> int:
        return self.values[s]

    def weight(self, w: int) -> int:
        return sum(self.values[s] for s in self.group.word[w])

    def is_equal_parameter(self) -> bool:
        return len(set(self.values)) == 1

    def __repr__(self):
        return "WeightFunction(%s)" % (list(self.values),)


def build_group(cartan: CartanType | str, max_order: int = DEFAULT_ORDER_CAP) -> CoxeterGroup:
    if isinstance(cartan, str):
        cartan = CartanType.parse(cartan)
    return CoxeterGroup(cartan, max_order=max_order)
