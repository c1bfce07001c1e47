"""Lazy pipeline context: builds and memoizes the full tower of tables for a
fixed (Cartan type, weight function), with optional disk caching of the
expensive KL/h tables."""

from __future__ import annotations

import os

from .cells import build_adata, cell_partition, nhat_values
from .coxeter import CartanType, WeightFunction, build_group
from .hecke import HeckeAlgebra, HTable, KLBasis, cache_path, load_tables, save_tables
from .jring import JRing, Phi, gamma_table
from .jreps import irreducible_reps

__all__ = ["Workspace"]


class Workspace:
    def __init__(self, type_str: str, weights=None, cache_dir: str | None = None,
                 seed: int = 0, max_order: int = 1200):
        self.cartan = CartanType.parse(type_str)
        self.type_str = str(self.cartan)
        self.group = build_group(self.cartan, max_order=max_order)
        if weights is None:
            weights = [1] * self.group.rank
        self.weights = WeightFunction(self.group, weights)
        self.cache_dir = cache_dir
        self.seed = seed
        self._kl = None
        self._ht = None
        self._ad = None
        self._cp = None
        self._jr = None
        self._phi = None
        self._reps = None
        self._datum = None
        self.algebra = HeckeAlgebra(self.group, self.weights)

    # -- table tower -------------------------------------------------------

    def _ensure_tables(self):
        if self._kl is not None:
            return
        if self.cache_dir:
            path = cache_path(self.cache_dir, self.type_str, self.weights.values)
            loaded = load_tables(path, self.algebra, self.type_str, self.weights.values)
            if loaded is not None:
                self._kl, self._ht = loaded
                return
        self._kl = KLBasis(self.algebra)
        self._ht = HTable(self._kl)
        if self.cache_dir:
            os.makedirs(self.cache_dir, exist_ok=True)
            path = cache_path(self.cache_dir, self.type_str, self.weights.values)
            save_tables(path, self.type_str, self.weights.values, self._kl, self._ht)

    @property
    def kl(self) -> KLBasis:
        self._ensure_tables()
        return self._kl

    @property
    def htable(self) -> HTable:
        self._ensure_tables()
        return self._ht

    @property
    def adata(self):
        if self._ad is None:
            self._ad = build_adata(self.kl, self.htable)
            nhat_values(self.group, self._ad, self.cells)
        return self._ad

    @property
    def cells(self):
        if self._cp is None:
            self._cp = cell_partition(self.htable)
        return self._cp

    @property
    def jring(self) -> JRing:
        if self._jr is None:
            gamma = gamma_table(self.htable, self.adata)
            self._jr = JRing(self.group, gamma, self.adata)
        return self._jr

    @property
    def phi(self) -> Phi:
        if self._phi is None:
            self._phi = Phi(self.kl, self.htable, self.adata)
        return self._phi

    @property
    def reps(self):
        if self._reps is None:
            self._reps = irreducible_reps(
                self.group, self.jring, self.adata, self.cells, seed=self.seed
            )
        return self._reps

    @property
    def datum(self):
        if self._datum is None:
            from .cellular import build_cell_datum

            self._datum = build_cell_datum(self)
        return self._datum

    def element_name(self, w: int) -> str:
        word = self.group.word[w]
        return "".join("s%d" % (s + 1) for s in word) if word else "1"
