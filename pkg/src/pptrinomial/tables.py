"""Vectorised exp/log tables over F_{q^3} for whole-field sweeps.

For q^3 up to 2^24 a discrete-log table pins multiplication down to one
add and one lookup, which is what makes exhaustive permutation sweeps
and curve point counts feasible; above that the scalar carry-less path
in gf.py is used instead.  Tables are built lazily, once per tower, by
walking the powers of the smallest generator.

Zero handling is branch-free: LOG[0] is a sentinel pointing into a
zero-padded tail of the exp table, so EXPZ[LOG[a] + LOG[b]] is a*b for
every pair including zero.
"""

from __future__ import annotations

import numpy as np

from .gf import FieldTower

__all__ = ["FieldTables", "get_tables", "TABLE_MAX_BITS"]

TABLE_MAX_BITS = 24  # largest 3*m for which tables may be built

_cache: dict[int, "FieldTables"] = {}


class FieldTables:
    def __init__(self, tower: FieldTower):
        if 3 * tower.m > TABLE_MAX_BITS:
            raise ValueError("field too large for exp/log tables (3m > %d)" % TABLE_MAX_BITS)
        self.tower = tower
        n = tower.n
        mo = n - 1  # multiplicative order
        self.n = n
        self.mo = mo
        q = tower.q

        g = tower.primitive_element()
        exp = np.zeros(2 * mo, dtype=np.int64)
        v = 1
        mul = tower.mul
        for i in range(mo):
            exp[i] = v
            v = mul(g, v)
        exp[mo:] = exp[:mo]
        log = np.zeros(n, dtype=np.int64)
        log[exp[:mo]] = np.arange(mo, dtype=np.int64)
        log[0] = 2 * mo  # sentinel; see EXPZ

        expz = np.zeros(4 * mo + 1, dtype=np.int64)
        expz[:2 * mo] = exp
        self.EXP = exp
        self.EXPZ = expz
        self.LOG = log

        ks = np.arange(mo, dtype=np.int64)

        def power_table(e: int) -> np.ndarray:
            t = np.zeros(n, dtype=np.int64)
            t[exp[:mo]] = exp[(ks * (e % mo)) % mo]
            return t

        self.FRB1 = power_table(q)                    # x -> x^q
        self.FRB2 = power_table(q * q)                # x -> x^(q^2)
        self.T_MAIN = power_table(q * q - q + 1)      # x -> x^(q^2-q+1)
        self.NORM = power_table(1 + q + q * q)        # x -> x^(1+q+q^2)

        # canonical preimage of x -> x^(q-1): smallest x per image value
        pre = np.full(n, n, dtype=np.int64)
        imgs = exp[(ks * (q - 1)) % mo]
        np.minimum.at(pre, imgs, exp[:mo])
        self.QM1_PRE = pre

        # the norm-one subgroup as a sorted array
        self.NORM_ONE = np.sort(exp[(ks[: (n - 1) // (q - 1)] * (q - 1)) % mo])

    # -- scalar-vector products ----------------------------------------

    def mul_sv(self, a: int, vec: np.ndarray) -> np.ndarray:
        """a * vec for a packed scalar a and a packed vector."""
        if a == 0:
            return np.zeros_like(vec)
        return self.EXPZ[int(self.LOG[a]) + self.LOG[vec]]

    def mul_vv(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        return self.EXPZ[self.LOG[u] + self.LOG[v]]

    def inv_v(self, u: np.ndarray) -> np.ndarray:
        """Element-wise inverse of a vector of nonzero packed values."""
        return self.EXP[(self.mo - self.LOG[u]) % self.mo]

    # -- trinomial evaluation -------------------------------------------

    def f_values(self, a: int, b: int) -> np.ndarray:
        """f(x) = x^(q^2-q+1) + A x^(q^2) + B x over every x, as one vector."""
        xs = np.arange(self.n, dtype=np.int64)
        return self.T_MAIN ^ self.mul_sv(a, self.FRB2) ^ self.mul_sv(b, xs)

    def is_permutation(self, a: int, b: int) -> bool:
        f = self.f_values(a, b)
        return bool(np.bincount(f, minlength=self.n).max() == 1)


def get_tables(tower: FieldTower) -> FieldTables:
    key = id(tower)
    t = _cache.get(key)
    if t is None or t.tower is not tower:
        t = FieldTables(tower)
        _cache[key] = t
    return t
