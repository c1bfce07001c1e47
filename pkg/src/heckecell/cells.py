"""Lusztig's a-function, the invariants Delta(z) and n_z, the distinguished
involutions, the sign function nhat, and the partition of W into left, right
and two-sided cells.

The left preorder is generated by all c-basis products: z <=_L y whenever
h_{x,y,z} != 0 for some x, closed reflexively and transitively; cells are the
mutual-reachability classes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coxeter import CoxeterGroup, WeightFunction
from .hecke import HTable, KLBasis
from .verify import CheckResult, PropertyViolation

__all__ = ["AData", "CellPartition", "a_function", "delta_n", "build_adata",
           "cell_partition", "nhat_values", "verify_cell_properties"]


@dataclass
class AData:
    a: list[int]
    delta: list[int]
    nz: list[int]
    dset: list[int]          # distinguished involutions, ascending indices
    nhat: list[int] | None = None


@dataclass
class CellPartition:
    left: list[int]          # left cell id per element
    right: list[int]
    two_sided: list[int]
    left_cells: list[list[int]]
    right_cells: list[list[int]]
    two_sided_cells: list[list[int]]
    left_reach: list[int]    # bitmask per y of {z : z <=_L y}
    two_sided_reach: list[int]

    def leq_left(self, z: int, y: int) -> bool:
        return bool(self.left_reach[y] >> z & 1)

    def leq_two_sided(self, z: int, y: int) -> bool:
        return bool(self.two_sided_reach[y] >> z & 1)


def a_function(ht: HTable) -> list[int]:
    """a(z) = max over x, y of -(lowest v-exponent of h_{x,y,z}), at least 0."""
    n = ht.group.order
    a = [0] * n
    for x in range(n):
        hx = ht.h[x]
        for y in range(n):
            for z, p in hx[y].items():
                d = -p.min_exp()
                if d > a[z]:
                    a[z] = d
    return a


def delta_n(kl: KLBasis) -> tuple[list[int], list[int]]:
    """Delta(z) and n_z from p_{1,z} = n_z v^{-Delta(z)} + lower terms."""
    n = kl.group.order
    delta = [0] * n
    nz = [0] * n
    for z in range(n):
        p = kl.c_t[z].get(0)
        if p is None or p.is_zero():
            raise PropertyViolation(
                "delta", "p_{1,z} = 0 for z=%d (degenerate weight function)" % z
            )
        e = p.max_exp()
        delta[z] = -e
        nz[z] = p.coeff(e)
    return delta, nz


def build_adata(kl: KLBasis, ht: HTable) -> AData:
    a = a_function(ht)
    delta, nz = delta_n(kl)
    dset = [z for z in range(kl.group.order) if a[z] == delta[z]]
    return AData(a=a, delta=delta, nz=nz, dset=dset)


def _closure(adj: list[int], n: int) -> list[int]:
    reach = list(adj)
    changed = True
    while changed:
        changed = False
        for y in range(n):
            acc = reach[y]
            rest = acc
            while rest:
                low = rest & -rest
                rest ^= low
                acc |= reach[low.bit_length() - 1]
            if acc != reach[y]:
                reach[y] = acc
                changed = True
    return reach


def _classes(reach: list[int], n: int) -> tuple[list[int], list[list[int]]]:
    cell_of = [-1] * n
    cells: list[list[int]] = []
    for y in range(n):
        if cell_of[y] >= 0:
            continue
        members = [z for z in range(n) if reach[y] >> z & 1 and reach[z] >> y & 1]
        cid = len(cells)
        cells.append(members)
        for z in members:
            cell_of[z] = cid
    order = sorted(range(len(cells)), key=lambda c: min(cells[c]))
    relabel = {old: new for new, old in enumerate(order)}
    return [relabel[c] for c in cell_of], [cells[c] for c in order]


def cell_partition(ht: HTable) -> CellPartition:
    g = ht.group
    n = g.order
    adj = [1 << y for y in range(n)]
    for x in range(n):
        hx = ht.h[x]
        for y in range(n):
            for z in hx[y]:
                adj[y] |= 1 << z
    left_reach = _closure(adj, n)
    left, left_cells = _classes(left_reach, n)
    inv = g.inv
    right_reach = [0] * n
    for y in range(n):
        row = left_reach[inv[y]]
        acc = 0
        while row:
            low = row & -row
            row ^= low
            acc |= 1 << inv[low.bit_length() - 1]
        right_reach[y] = acc
    right, right_cells = _classes(right_reach, n)
    two_reach = _closure([left_reach[y] | right_reach[y] for y in range(n)], n)
    two, two_cells = _classes(two_reach, n)
    return CellPartition(
        left=left,
        right=right,
        two_sided=two,
        left_cells=left_cells,
        right_cells=right_cells,
        two_sided_cells=two_cells,
        left_reach=left_reach,
        two_sided_reach=two_reach,
    )


def nhat_values(group: CoxeterGroup, ad: AData, cp: CellPartition) -> list[int]:
    """nhat_z = n_d for the unique distinguished d in the left cell of z^{-1}."""
    n = group.order
    dset = set(ad.dset)
    d_of_cell: dict[int, int] = {}
    for d in ad.dset:
        cid = cp.left[d]
        if cid in d_of_cell:
            raise PropertyViolation(
                "P13", "left cell %d contains several distinguished elements" % cid
            )
        d_of_cell[cid] = d
    nhat = [0] * n
    for z in range(n):
        cid = cp.left[group.inv[z]]
        if cid not in d_of_cell:
            raise PropertyViolation(
                "P13", "left cell %d of z^-1 (z=%d) has no distinguished element" % (cid, z)
            )
        d = d_of_cell[cid]
        if ad.nz[d] not in (1, -1):
            raise PropertyViolation("P5", "n_d = %d for d=%d" % (ad.nz[d], d))
        nhat[z] = ad.nz[d]
    ad.nhat = nhat
    return nhat


def verify_cell_properties(
    group: CoxeterGroup,
    weights: WeightFunction,
    ad: AData,
    cp: CellPartition,
) -> list[CheckResult]:
    checks: list[CheckResult] = []

    bad = [z for z in range(group.order) if ad.a[z] > ad.delta[z]]
    checks.append(CheckResult("P1: a(z) <= Delta(z)", not bad, "z=%s" % bad[:5]))

    bad = []
    for cell in cp.two_sided_cells:
        if len({ad.a[z] for z in cell}) > 1:
            bad.append(cell)
    checks.append(
        CheckResult("P4: a constant on two-sided cells", not bad, "cells=%s" % bad[:2])
    )

    bad = []
    for z in range(group.order):
        rest = cp.two_sided_reach[z]
        while rest:
            low = rest & -rest
            rest ^= low
            u = low.bit_length() - 1
            if cp.two_sided[u] != cp.two_sided[z] and ad.a[u] <= ad.a[z]:
                bad.append((u, z))
        if bad:
            break
    checks.append(
        CheckResult(
            "P4: a strictly increases down the two-sided order", not bad, "%s" % bad[:5]
        )
    )

    bad = [d for d in ad.dset if ad.nz[d] not in (1, -1)]
    checks.append(CheckResult("P5: n_d = +-1 on distinguished set", not bad, "d=%s" % bad[:5]))

    dset = set(ad.dset)
    bad = []
    for cell in cp.left_cells:
        hits = [z for z in cell if z in dset]
        if len(hits) != 1:
            bad.append((cell, hits))
    checks.append(
        CheckResult(
            "P13: one distinguished element per left cell", not bad, "%s" % bad[:2]
        )
    )

    bad = [z for z in range(group.order) if ad.a[z] != ad.a[group.inv[z]]]
    checks.append(CheckResult("a(z) = a(z^-1)", not bad, "z=%s" % bad[:5]))

    w0 = group.w0
    ok = ad.a[w0] == weights.weight(w0)
    checks.append(
        CheckResult(
            "a(w0) = L(w0)", ok, "a(w0)=%d, L(w0)=%d" % (ad.a[w0], weights.weight(w0))
        )
    )

    if ad.nhat is not None:
        bad = []
        for cell in cp.right_cells:
            if len({ad.nhat[z] for z in cell}) > 1:
                bad.append(cell)
        checks.append(
            CheckResult("nhat constant on right cells", not bad, "cells=%s" % bad[:2])
        )

    mirror_ok = all(
        sorted(group.inv[z] for z in cell) in [sorted(c) for c in cp.right_cells]
        for cell in cp.left_cells
    )
    checks.append(CheckResult("right cells mirror inverted left cells", mirror_ok))

    return checks
