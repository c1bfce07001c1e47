"""Integral irreducible matrix representations of the asymptotic ring J,
their invariants a_lambda and f_lambda, and the symmetric positive-definite
integer intertwiners B^lambda.

Construction pipeline, per left cell (cells visited in order of their minimal
element):

  1. the left-cell module on basis {t_x | x in cell}, with integer matrix
     coefficients gamma_{w, x_t, x_s^{-1}};
  2. if its commutant is one-dimensional it is kept verbatim in the t-basis
     (this makes type A reproduce plus-or-minus the KL basis on the nose);
  3. otherwise it is split over Q by generalized eigenspaces of seeded random
     commutant elements, and each irreducible piece is made integral again by
     intersecting the spin lattices of its echelon basis vectors; the lattice
     basis is then sorted so the Gram diagonal increases.

Isomorphism classes are keyed by character vectors; completeness is certified
by sum of dim^2 = |W|.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .cells import AData, CellPartition
from .exactalg import (
    IntMatrix,
    charpoly,
    frac_inverse,
    frac_kernel_basis,
    frac_mat_mul,
    gcd_normalize,
    lattice_basis,
    lattice_intersection,
    prime_factors,
    primitive_vector,
)
from .jring import JRing
from .verify import CheckResult, PropertyViolation

__all__ = [
    "JIrrep",
    "left_cell_module",
    "irreducible_reps",
    "invariants_af",
    "gram_B",
    "bad_primes",
    "observed_prime_support",
    "verify_reps",
    "verify_schur",
    "verify_gram",
]


@dataclass
class JIrrep:
    label: str
    dim: int
    mats: list[IntMatrix]      # rho(t_w) per group element, zero off the cell
    a: int
    f: int
    cell: int                  # supporting two-sided cell id
    gram: IntMatrix            # B^lambda
    gram_scale: int            # gcd removed from sum rho^tr rho
    char: tuple[int, ...]

    def trace(self, w: int) -> int:
        return self.char[w]


def left_cell_module(group, jr: JRing, cell: list[int]) -> list[IntMatrix]:
    """Matrices of J acting on <t_x | x in cell>, rho_{st}(t_w) =
    gamma_{w, x_t, x_s^{-1}}; the basis is the cell sorted ascending."""
    xs = sorted(cell)
    k = len(xs)
    inv = group.inv
    gamma = jr.gamma
    mats = []
    for w in range(group.order):
        data = [
            gamma.get((w, xs[t], inv[xs[s]]), 0)
            for s in range(k)
            for t in range(k)
        ]
        mats.append(IntMatrix(k, k, data))
    return mats


# --- exact decomposition over Q ----------------------------------------------

def _frac_mats(mats: list[IntMatrix]) -> list[list[list[Fraction]]]:
    return [[[Fraction(x) for x in m.row(i)] for i in range(m.rows)] for m in mats]


def _random_combo(mats, rng) -> list[list[Fraction]]:
    d = len(mats[0])
    out = [[Fraction(0)] * d for _ in range(d)]
    for m in mats:
        c = rng.randint(-4, 4)
        if c:
            for i in range(d):
                for j in range(d):
                    out[i][j] += c * m[i][j]
    return out


def _commutes(x, m) -> bool:
    return frac_mat_mul(x, m) == frac_mat_mul(m, x)


def commutant_basis(mats, rng, max_probes: int = 10):
    """Echelon basis of {X : X rho(t_w) = rho(t_w) X for all w}, over Q.

    Solves against a few random algebra elements and verifies against the
    full list, adding probes until the verification sticks.
    """
    d = len(mats[0])
    nonzero = [m for m in mats if any(any(x for x in row) for row in m)]
    probes = [_random_combo(nonzero, rng), _random_combo(nonzero, rng)]
    for _ in range(max_probes):
        rows = []
        for y in probes:
            for i in range(d):
                for j in range(d):
                    row = [Fraction(0)] * (d * d)
                    for l in range(d):
                        row[i * d + l] += y[l][j]
                    for k in range(d):
                        row[k * d + j] -= y[i][k]
                    rows.append(row)
        basis_vecs = frac_kernel_basis(rows)
        basis = [
            [vec[i * d : (i + 1) * d] for i in range(d)] for vec in basis_vecs
        ]
        if all(all(_commutes(x, m) for m in nonzero) for x in basis):
            return basis
        probes.append(_random_combo(nonzero, rng))
    # last resort: impose every matrix as a constraint
    rows = []
    for y in nonzero:
        for i in range(d):
            for j in range(d):
                row = [Fraction(0)] * (d * d)
                for l in range(d):
                    row[i * d + l] += y[l][j]
                for k in range(d):
                    row[k * d + j] -= y[i][k]
                rows.append(row)
    basis_vecs = frac_kernel_basis(rows)
    return [[vec[i * d : (i + 1) * d] for i in range(d)] for vec in basis_vecs]


def _clear_denominators(x) -> list[list[int]]:
    d = len(x)
    den = 1
    for row in x:
        for v in row:
            den = den * v.denominator // gcd(den, v.denominator)
    return [[int(v * den) for v in row] for row in x]


def _integer_roots(coeffs: list[int], bound: int) -> list[tuple[int, int]]:
    """(root, multiplicity) pairs of the monic integer polynomial, |root|<=bound."""
    out = []
    work = list(coeffs)
    for c in range(-bound, bound + 1):
        while len(work) > 1:
            acc = 0
            for k in reversed(range(len(work))):
                acc = acc * c + work[k]
            if acc != 0:
                break
            # synthetic division by (x - c)
            q = [0] * (len(work) - 1)
            carry = 0
            for k in reversed(range(1, len(work))):
                carry = work[k] + carry * c
                q[k - 1] = carry
            work = q
            for idx, (r, m) in enumerate(out):
                if r == c:
                    out[idx] = (r, m + 1)
                    break
            else:
                out.append((c, 1))
    return out


def _restrict(mats, basis_rows):
    """Action matrices on the invariant subspace spanned by basis_rows."""
    d = len(mats[0])
    k = len(basis_rows)
    bcols = [[Fraction(basis_rows[j][i]) for j in range(k)] for i in range(d)]
    # left inverse of bcols via rref of [bcols | I_d]
    aug = [list(bcols[i]) + [Fraction(1 if i == j else 0) for j in range(d)] for i in range(d)]
    from .exactalg import frac_rref

    rref, pivots = frac_rref(aug)
    if len(pivots) < k or any(p >= k for p in pivots[:k]):
        raise ArithmeticError("subspace basis is not independent")
    linv = [row[k:] for row in rref[:k]]
    out = []
    for m in mats:
        mb = frac_mat_mul(m, bcols)
        a = frac_mat_mul(linv, mb)
        # invariance: bcols * a must reproduce m * bcols
        if frac_mat_mul(bcols, a) != mb:
            raise ArithmeticError("subspace is not invariant")
        out.append(a)
    return out


@dataclass
class _Leaf:
    mats: list                 # Fraction matrices
    irreducible: bool
    commutant_dim: int


def _decompose(mats, rng, max_attempts: int = 8) -> list[_Leaf]:
    d = len(mats[0])
    comm = commutant_basis(mats, rng)
    if len(comm) == 1:
        return [_Leaf(mats, True, 1)]
    for _ in range(max_attempts):
        coeffs = [rng.randint(-6, 6) for _ in comm]
        x = [[sum(coeffs[t] * comm[t][i][j] for t in range(len(comm))) for j in range(d)] for i in range(d)]
        xint = _clear_denominators(x)
        xm = IntMatrix.from_rows(xint)
        poly = charpoly(xm)
        bound = max(sum(abs(v) for v in row) for row in xint)
        roots = _integer_roots(poly, bound)
        if not roots:
            continue
        spaces = []
        rem = list(poly)
        for c, mult in roots:
            power = IntMatrix.identity(d)
            shift = xm - IntMatrix.identity(d).scale(c)
            for _ in range(mult):
                power = power * shift
            kern = frac_kernel_basis([[Fraction(v) for v in power.row(i)] for i in range(d)])
            if kern:
                spaces.append(kern)
            for _ in range(mult):
                q = [0] * (len(rem) - 1)
                carry = 0
                for k in reversed(range(1, len(rem))):
                    carry = rem[k] + carry * c
                    q[k - 1] = carry
                rem = q
        if len(rem) > 1:
            acc = IntMatrix.identity(d)
            gxm = IntMatrix.zeros(d, d)
            for k, ck in enumerate(rem):
                if ck:
                    gxm = gxm + acc.scale(ck)
                acc = acc * xm
            kern = frac_kernel_basis([[Fraction(v) for v in gxm.row(i)] for i in range(d)])
            if kern:
                spaces.append(kern)
        if len(spaces) < 2 or sum(len(s) for s in spaces) != d:
            continue
        leaves: list[_Leaf] = []
        for kern in spaces:
            basis = [primitive_vector(v) for v in kern]
            leaves.extend(_decompose(_restrict(mats, basis), rng, max_attempts))
        return leaves
    return [_Leaf(mats, False, len(comm))]


# --- integral form ------------------------------------------------------------

def _integral_form(mats) -> list[IntMatrix]:
    """Integral matrices for an irreducible piece given over Q: intersect the
    spin lattices of the standard basis vectors and rewrite in that basis."""
    d = len(mats[0])
    den = 1
    for m in mats:
        for row in m:
            for v in row:
                den = den * v.denominator // gcd(den, v.denominator)
    lattice = None
    for i in range(d):
        vecs = [[int(den * m[r][i]) for r in range(d)] for m in mats]
        vecs.append([den if r == i else 0 for r in range(d)])
        li = lattice_basis(vecs)
        lattice = li if lattice is None else lattice_intersection(lattice, li)
    bcols = [[Fraction(lattice[j][i]) for j in range(len(lattice))] for i in range(d)]
    binv = frac_inverse([[bcols[i][j] for j in range(d)] for i in range(d)])
    out = []
    for m in mats:
        a = frac_mat_mul(binv, frac_mat_mul(m, bcols))
        if any(v.denominator != 1 for row in a for v in row):
            raise PropertyViolation("integral form", "lattice not invariant")
        out.append(IntMatrix.from_rows([[int(v) for v in row] for row in a]))
    return out


def _sort_basis_by_gram(mats: list[IntMatrix]) -> list[IntMatrix]:
    """Stable-sort the basis so the normalized Gram diagonal ascends."""
    d = mats[0].rows
    b1 = IntMatrix.zeros(d, d)
    for m in mats:
        b1 = b1 + m.transpose() * m
    b, _ = gcd_normalize(b1)
    order = sorted(range(d), key=lambda i: b[i, i])
    if order == list(range(d)):
        return mats
    perm = IntMatrix(d, d, [1 if order[j] == i else 0 for i in range(d) for j in range(d)])
    pinv = perm.transpose()
    return [pinv * m * perm for m in mats]


# --- invariants ----------------------------------------------------------------

def invariants_af(group, ad: AData, mats: list[IntMatrix]) -> tuple[int, int]:
    """a_lambda (common a on the support) and f_lambda (Schur sum / dim)."""
    support = [w for w in range(group.order) if not mats[w].is_zero()]
    if not support:
        raise PropertyViolation("rep support", "zero representation")
    avals = {ad.a[w] for w in support}
    if len(avals) != 1:
        raise PropertyViolation("rep support", "non-constant a on support: %s" % avals)
    d = mats[0].rows
    total = sum(mats[w].trace() * mats[group.inv[w]].trace() for w in support)
    if total % d != 0 or total <= 0:
        raise PropertyViolation("f integrality", "trace sum %d, dim %d" % (total, d))
    return avals.pop(), total // d


def gram_B(mats: list[IntMatrix], group=None) -> tuple[IntMatrix, int]:
    """B^lambda: gcd-normalized sum of rho(t_y)^tr rho(t_y)."""
    d = mats[0].rows
    b1 = IntMatrix.zeros(d, d)
    for m in mats:
        b1 = b1 + m.transpose() * m
    return gcd_normalize(b1)


def irreducible_reps(group, jr: JRing, ad: AData, cp: CellPartition, seed: int = 0) -> list[JIrrep]:
    """One integral representative per isomorphism class of Irr(J_Q)."""
    rng = random.Random(seed)
    found: dict[tuple, dict] = {}
    stuck: list[tuple[tuple, int, int]] = []
    for cell in cp.left_cells:
        cell_mats = left_cell_module(group, jr, cell)
        leaves = _decompose(_frac_mats(cell_mats), rng)
        if len(leaves) == 1 and leaves[0].irreducible:
            pieces = [cell_mats]  # keep the t-basis form verbatim
        else:
            pieces = []
            for leaf in leaves:
                if leaf.irreducible:
                    pieces.append(_sort_basis_by_gram(_integral_form(leaf.mats)))
                else:
                    m = isqrt(leaf.commutant_dim)
                    dim = len(leaf.mats[0])
                    tr = tuple(
                        sum(leaf.mats[w][i][i] for i in range(dim))
                        for w in range(group.order)
                    )
                    if m * m != leaf.commutant_dim or any(t % m for t in tr):
                        raise PropertyViolation(
                            "rep splitting",
                            "unsplittable block of dim %d, commutant dim %d"
                            % (dim, leaf.commutant_dim),
                        )
                    stuck.append((tuple(t // m for t in tr), dim // m, m))
        for mats in pieces:
            char = tuple(m.trace() for m in mats)
            if char not in found:
                found[char] = {"mats": mats, "cell": cp.two_sided[min(cell)]}
    for char, dim, m in stuck:
        if char not in found:
            raise PropertyViolation(
                "rep splitting",
                "an isotypic block (multiplicity %d, dim %d) has no multiplicity-one "
                "realization in any left cell" % (m, dim),
            )
    total = sum(rec["mats"][0].rows ** 2 for rec in found.values())
    if total != group.order:
        raise PropertyViolation(
            "completeness",
            "sum of dim^2 = %d but |W| = %d" % (total, group.order),
        )
    reps = []
    for char, rec in found.items():
        mats = rec["mats"]
        a, f = invariants_af(group, ad, mats)
        gram, scale = gram_B(mats)
        for w in range(group.order):
            if mats[w].transpose() * gram != gram * mats[group.inv[w]]:
                raise PropertyViolation(
                    "gram intertwiner", "B rho(t_{w^-1}) != rho(t_w)^tr B at w=%d" % w
                )
        reps.append(
            JIrrep(
                label="",
                dim=mats[0].rows,
                mats=mats,
                a=a,
                f=f,
                cell=rec["cell"],
                gram=gram,
                gram_scale=scale,
                char=char,
            )
        )
    reps.sort(key=lambda r: (r.a, r.dim, r.char))
    for i, r in enumerate(reps):
        r.label = "L%02d" % i
    return reps


def bad_primes(reps: list[JIrrep]) -> set[int]:
    """Primes dividing some f_lambda."""
    out: set[int] = set()
    for r in reps:
        out |= prime_factors(r.f)
    return out


def observed_prime_support(reps: list[JIrrep]) -> set[int]:
    """Primes dividing some f_lambda or some det(B^lambda)."""
    out = bad_primes(reps)
    for r in reps:
        out |= prime_factors(r.gram.det())
    return out


# --- verification suites --------------------------------------------------------

def verify_reps(group, jr: JRing, ad: AData, reps: list[JIrrep]) -> list[CheckResult]:
    checks: list[CheckResult] = []
    n = group.order

    bad = []
    for r in reps:
        for x in range(n):
            for y in range(n):
                prod = r.mats[x] * r.mats[y]
                acc = IntMatrix.zeros(r.dim, r.dim)
                for z, c in jr.prod.get((x, y), []):
                    acc = acc + r.mats[z].scale(c)
                if prod != acc:
                    bad.append((r.label, x, y))
                    break
            if bad:
                break
        if bad:
            break
    checks.append(CheckResult("rho is a J-representation", not bad, "%s" % bad[:3]))

    bad = []
    for r in reps:
        for w in range(n):
            nonzero = not r.mats[w].is_zero()
            if nonzero and ad.a[w] != r.a:
                bad.append((r.label, w))
    checks.append(
        CheckResult("rho(t_w) = 0 off the a_lambda stratum", not bad, "%s" % bad[:3])
    )

    total = sum(r.dim * r.dim for r in reps)
    checks.append(
        CheckResult(
            "sum of dim^2 equals |W|", total == n, "%d vs %d" % (total, n)
        )
    )

    chars = [r.char for r in reps]
    checks.append(
        CheckResult("characters pairwise distinct", len(set(chars)) == len(chars))
    )

    bad = []
    for r in reps:
        if r.f <= 0:
            bad.append(r.label)
    checks.append(CheckResult("f_lambda positive integers", not bad, "%s" % bad))

    return checks


def verify_schur(group, reps: list[JIrrep]) -> list[CheckResult]:
    """Both Schur relation families, exactly."""
    checks: list[CheckResult] = []
    n = group.order
    inv = group.inv

    bad = []
    for li, r in enumerate(reps):
        for lj, r2 in enumerate(reps):
            if len(bad) > 2:
                break
            for s in range(r.dim):
                for t in range(r.dim):
                    for u in range(r2.dim):
                        for v in range(r2.dim):
                            total = sum(
                                r.mats[w][s, t] * r2.mats[inv[w]][u, v]
                                for w in range(n)
                            )
                            want = r.f if (li == lj and s == v and t == u) else 0
                            if total != want:
                                bad.append((r.label, r2.label, s, t, u, v, total))
    checks.append(CheckResult("first Schur relations", not bad, "%s" % bad[:3]))

    bad = []
    for x in range(n):
        for y in range(n):
            total = Fraction(0)
            for r in reps:
                acc = 0
                mx = r.mats[x]
                my = r.mats[inv[y]]
                for s in range(r.dim):
                    for t in range(r.dim):
                        acc += mx[s, t] * my[t, s]
                total += Fraction(acc, r.f)
            want = 1 if x == y else 0
            if total != want:
                bad.append((x, y, str(total)))
                break
        if bad:
            break
    checks.append(CheckResult("second Schur relations", not bad, "%s" % bad[:3]))
    return checks


def verify_gram(group, reps: list[JIrrep]) -> list[CheckResult]:
    checks: list[CheckResult] = []
    lbad = bad_primes(reps)
    inv = group.inv

    bad = [r.label for r in reps if not r.gram.is_symmetric()]
    checks.append(CheckResult("B symmetric", not bad, "%s" % bad))

    bad = [r.label for r in reps if not r.gram.is_positive_definite()]
    checks.append(CheckResult("B positive definite", not bad, "%s" % bad))

    bad = []
    for r in reps:
        for w in range(group.order):
            if r.gram * r.mats[inv[w]] != r.mats[w].transpose() * r.gram:
                bad.append((r.label, w))
                break
    checks.append(CheckResult("B intertwines rho and rho-transpose", not bad, "%s" % bad[:3]))

    bad = []
    for r in reps:
        g = 0
        for v in r.gram.data:
            g = gcd(g, v)
        if g != 1:
            bad.append(r.label)
    checks.append(CheckResult("B has entry gcd 1", not bad, "%s" % bad))

    bad = []
    for r in reps:
        det = r.gram.det()
        if det == 0 or not prime_factors(det) <= lbad:
            bad.append((r.label, det))
    checks.append(
        CheckResult(
            "primes of det(B) are L-bad", not bad, "%s (bad=%s)" % (bad[:3], sorted(lbad))
        )
    )
    return checks
