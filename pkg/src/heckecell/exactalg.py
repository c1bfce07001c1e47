"""Exact arithmetic substrate: integer Laurent polynomials in one variable v,
dense integer matrices, and the exact linear algebra used downstream.

All coefficients are arbitrary-precision Python integers; rational work uses
`fractions.Fraction`.  Nothing here ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

__all__ = [
    "LaurentPoly",
    "IntMatrix",
    "gcd_normalize",
    "det_bareiss",
    "charpoly",
    "prime_factors",
    "row_hnf",
    "lattice_basis",
    "lattice_intersection",
    "primitive_vector",
    "frac_rref",
    "frac_kernel_basis",
    "frac_solve",
    "frac_inverse",
    "frac_mat_mul",
]


class LaurentPoly:
    """Integer Laurent polynomial in v, stored as {exponent: nonzero coeff}.

    >>> p = LaurentPoly({1: 1, -1: 1})
    >>> p * p
    LaurentPoly('v^2 + 2 + v^-2')
    >>> p.bar() == p
    True
    """

    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        if coeffs is None:
            self.c = {}
        elif isinstance(coeffs, dict):
            self.c = {e: k for e, k in coeffs.items() if k}
        else:
            self.c = {e: k for e, k in coeffs if k}

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def const(cls, n: int) -> "LaurentPoly":
        return cls({0: n})

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPoly":
        return cls({exp: coeff})

    def is_zero(self) -> bool:
        return not self.c

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.c == ({0: other} if other else {})
        return isinstance(other, LaurentPoly) and self.c == other.c

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        out = dict(self.c)
        for e, k in other.c.items():
            n = out.get(e, 0) + k
            if n:
                out[e] = n
            else:
                out.pop(e, None)
        r = LaurentPoly.__new__(LaurentPoly)
        r.c = out
        return r

    __radd__ = __add__

    def __neg__(self):
        r = LaurentPoly.__new__(LaurentPoly)
        r.c = {e: -k for e, k in self.c.items()}
        return r

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return LaurentPoly()
            r = LaurentPoly.__new__(LaurentPoly)
            r.c = {e: k * other for e, k in self.c.items()}
            return r
        out: dict[int, int] = {}
        for e1, k1 in self.c.items():
            for e2, k2 in other.c.items():
                e = e1 + e2
                n = out.get(e, 0) + k1 * k2
                if n:
                    out[e] = n
                else:
                    del out[e]
        r = LaurentPoly.__new__(LaurentPoly)
        r.c = out
        return r

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by v^k."""
        r = LaurentPoly.__new__(LaurentPoly)
        r.c = {e + k: v for e, v in self.c.items()}
        return r

    def bar(self) -> "LaurentPoly":
        """The involution v -> v^-1."""
        r = LaurentPoly.__new__(LaurentPoly)
        r.c = {-e: v for e, v in self.c.items()}
        return r

    def coeff(self, k: int) -> int:
        return self.c.get(k, 0)

    def min_exp(self):
        return min(self.c) if self.c else None

    def max_exp(self):
        return max(self.c) if self.c else None

    def evaluate(self, field, x):
        """Sum of coeff * x**exp inside `field`; x must be a unit there."""
        acc = field.zero()
        xinv = None
        for e, k in sorted(self.c.items()):
            p = field.one()
            if e >= 0:
                for _ in range(e):
                    p = field.mul(p, x)
            else:
                if xinv is None:
                    xinv = field.inv(x)
                for _ in range(-e):
                    p = field.mul(p, xinv)
            acc = field.add(acc, field.mul(field.from_int(k), p))
        return acc

    def to_json(self) -> dict:
        exps = sorted(self.c)
        return {"e": exps, "c": [self.c[e] for e in exps]}

    @classmethod
    def from_json(cls, obj) -> "LaurentPoly":
        return cls(zip(obj["e"], obj["c"]))

    def __repr__(self):
        return "LaurentPoly(%r)" % (str(self),)

    def __str__(self):
        if not self.c:
            return "0"
        parts = []
        for e in sorted(self.c, reverse=True):
            k = self.c[e]
            if e == 0:
                t = str(abs(k))
            else:
                ve = "v" if e == 1 else "v^%d" % e
                t = ve if abs(k) == 1 else "%d*%s" % (abs(k), ve)
            parts.append(("- " if k < 0 else "+ ") + t)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


V = LaurentPoly.monomial(1)


class IntMatrix:
    """Dense integer matrix, row-major, immutable by convention."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data):
        data = list(data)
        if len(data) != rows * cols:
            raise ValueError("data length does not match shape")
        self.rows = rows
        self.cols = cols
        self.data = data

    @classmethod
    def from_rows(cls, rows) -> "IntMatrix":
        rows = [list(r) for r in rows]
        n = len(rows)
        m = len(rows[0]) if rows else 0
        flat = []
        for r in rows:
            if len(r) != m:
                raise ValueError("ragged rows")
            flat.extend(r)
        return cls(n, m, flat)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i * self.cols + j]

    def row(self, i: int) -> list[int]:
        return self.data[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> list[list[int]]:
        return [self.row(i) for i in range(self.rows)]

    def __eq__(self, other):
        return (
            isinstance(other, IntMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(self.data)))

    def __add__(self, other):
        assert self.rows == other.rows and self.cols == other.cols
        return IntMatrix(self.rows, self.cols, [a + b for a, b in zip(self.data, other.data)])

    def __sub__(self, other):
        assert self.rows == other.rows and self.cols == other.cols
        return IntMatrix(self.rows, self.cols, [a - b for a, b in zip(self.data, other.data)])

    def __neg__(self):
        return IntMatrix(self.rows, self.cols, [-a for a in self.data])

    def scale(self, n: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, [n * a for a in self.data])

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        assert self.cols == other.rows
        n, k, m = self.rows, self.cols, other.cols
        a, b = self.data, other.data
        out = [0] * (n * m)
        for i in range(n):
            arow = a[i * k : (i + 1) * k]
            base = i * m
            for t in range(k):
                ait = arow[t]
                if ait:
                    brow = b[t * m : (t + 1) * m]
                    for j in range(m):
                        out[base + j] += ait * brow[j]
        return IntMatrix(n, m, out)

    __rmul__ = scale

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.cols,
            self.rows,
            [self.data[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)],
        )

    def trace(self) -> int:
        assert self.rows == self.cols
        return sum(self.data[i * self.cols + i] for i in range(self.rows))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.data)

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and self == self.transpose()

    def det(self) -> int:
        assert self.rows == self.cols
        return det_bareiss(self.to_rows())

    def is_positive_definite(self) -> bool:
        """Sylvester criterion on exact leading principal minors."""
        assert self.rows == self.cols
        rows = self.to_rows()
        for k in range(1, self.rows + 1):
            if det_bareiss([r[:k] for r in rows[:k]]) <= 0:
                return False
        return True

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "data": list(self.data)}

    @classmethod
    def from_json(cls, obj) -> "IntMatrix":
        return cls(obj["rows"], obj["cols"], obj["data"])

    def __repr__(self):
        return "IntMatrix.from_rows(%r)" % (self.to_rows(),)


def gcd_normalize(m: IntMatrix) -> tuple[IntMatrix, int]:
    """Divide out the gcd of all nonzero entries; returns (m/n, n), n > 0."""
    n = 0
    for a in m.data:
        n = gcd(n, a)
    if n == 0:
        raise ValueError("zero matrix has no gcd normalization")
    return IntMatrix(m.rows, m.cols, [a // n for a in m.data]), n


def det_bareiss(rows: list[list[int]]) -> int:
    """Fraction-free exact determinant of a square integer matrix."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def charpoly(mat: IntMatrix) -> list[int]:
    """Characteristic polynomial of an integer matrix by Faddeev-LeVerrier.

    Returns coefficients [c_0, ..., c_n] with det(xI - M) = sum c_k x^k,
    c_n = 1.
    """
    n = mat.rows
    a = [[Fraction(x) for x in mat.row(i)] for i in range(n)]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    m = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        am = [[sum(a[i][t] * m[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        c = -sum(am[i][i] for i in range(n)) / k
        coeffs[n - k] = c
        m = [[am[i][j] + (c if i == j else 0) for j in range(n)] for i in range(n)]
    out = []
    for c in coeffs:
        if c.denominator != 1:
            raise ArithmeticError("characteristic polynomial not integral")
        out.append(int(c))
    return out


def prime_factors(n: int) -> set[int]:
    """Set of primes dividing |n| (trial division; inputs here are small)."""
    n = abs(n)
    out: set[int] = set()
    if n <= 1:
        return out
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.add(n)
    return out


# --- Hermite normal form and lattice utilities -------------------------------

def row_hnf(rows: list[list[int]], want_transform: bool = False):
    """Row-style Hermite normal form.

    Returns (H, U) with U unimodular, U*M = H, H in row echelon form with
    positive pivots and entries above each pivot reduced; zero rows at the
    bottom.  U is None unless want_transform.
    """
    m = [list(r) for r in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    u = [[1 if i == j else 0 for j in range(nr)] for i in range(nr)] if want_transform else None
    r = 0
    for c in range(nc):
        if r == nr:
            break
        # euclidean elimination in column c below row r
        while True:
            piv = None
            for i in range(r, nr):
                if m[i][c] != 0 and (piv is None or abs(m[i][c]) < abs(m[piv][c])):
                    piv = i
            if piv is None:
                break
            if piv != r:
                m[r], m[piv] = m[piv], m[r]
                if u:
                    u[r], u[piv] = u[piv], u[r]
            done = True
            for i in range(r + 1, nr):
                if m[i][c]:
                    q = m[i][c] // m[r][c]
                    for j in range(nc):
                        m[i][j] -= q * m[r][j]
                    if u:
                        for j in range(nr):
                            u[i][j] -= q * u[r][j]
                    if m[i][c]:
                        done = False
            if done:
                break
        if any(m[i][c] for i in range(r, nr)):
            if m[r][c] < 0:
                m[r] = [-x for x in m[r]]
                if u:
                    u[r] = [-x for x in u[r]]
            for i in range(r):
                q = m[i][c] // m[r][c]
                if q:
                    for j in range(nc):
                        m[i][j] -= q * m[r][j]
                    if u:
                        for j in range(nr):
                            u[i][j] -= q * u[r][j]
            r += 1
    return m, u


def lattice_basis(vectors: list) -> list[list[int]]:
    """Basis (as rows, in HNF) of the lattice spanned by integer row vectors."""
    h, _ = row_hnf([list(v) for v in vectors])
    return [r for r in h if any(r)]


def integer_kernel(rows: list[list[int]]) -> list[list[int]]:
    """Basis of {x in Z^n : x*M = 0} for the matrix M given by `rows`."""
    h, u = row_hnf(rows, want_transform=True)
    return [u[i] for i in range(len(rows)) if not any(h[i])]


def lattice_intersection(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    """Intersection of the lattices spanned by the rows of a and of b (HNF rows)."""
    stacked = [list(r) for r in a] + [list(r) for r in b]
    combos = integer_kernel(stacked)
    na = len(a)
    vecs = []
    for cmb in combos:
        v = [sum(cmb[i] * a[i][j] for i in range(na)) for j in range(len(a[0]))]
        vecs.append(v)
    return lattice_basis(vecs) if vecs else []


def primitive_vector(vec) -> tuple[int, ...]:
    """Scale a rational vector to a primitive integer vector, first nonzero > 0."""
    fr = [Fraction(x) for x in vec]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector is not primitive")
    ints = [x // g for x in ints]
    for x in ints:
        if x:
            if x < 0:
                ints = [-y for y in ints]
            break
    return tuple(ints)


# --- Exact rational linear algebra (small dense systems) ---------------------

def frac_rref(rows: list[list[Fraction]]):
    """Reduced row echelon form; returns (rref rows, pivot column list)."""
    m = [[Fraction(x) for x in r] for r in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    pivots = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        piv = next((i for i in range(r, nr) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nr):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots

def frac_kernel_basis(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    """Echelon basis of {x : M x = 0}, one vector per free column."""
    nc = len(rows[0]) if rows else 0
    rref, pivots = frac_rref(rows)
    free = [c for c in range(nc) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * nc
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -rref[r][fc]
        basis.append(v)
    return basis

def frac_solve(a: list[list[Fraction]], b: list[Fraction]):
    """One solution x of A x = b, or None if inconsistent."""
    nr = len(a)
    nc = len(a[0]) if nr else 0
    aug = [list(map(Fraction, a[i])) + [Fraction(b[i])] for i in range(nr)]
    rref, pivots = frac_rref(aug)
    for i in range(nr):
        if all(x == 0 for x in rref[i][:nc]) and rref[i][nc] != 0:
            return None
    x = [Fraction(0)] * nc
    for r, pc in enumerate(pivots):
        if pc < nc:
            x[pc] = rref[r][nc]
    return x

def frac_inverse(a: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(a)
    aug = [
        [Fraction(a[i][j]) for j in range(n)]
        + [Fraction(1) if i == j else Fraction(0) for j in range(n)]
        for i in range(n)
    ]
    rref, pivots = frac_rref(aug)
    if pivots != list(range(n)):
        raise ArithmeticError("matrix is singular")
    return [row[n:] for row in rref]

def frac_mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    return [
        [sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m)]
        for i in range(n)
    ]


if __name__ == "__main__":
    import doctest

    doctest.testmod()
