"""Permutation testing and classification for f(X) = X^(q^2-q+1) + A X^(q^2) + B X.

A, B range over the nonzero elements of F_{q^3}.  The classifier decides
the permutation property exactly (early-exit collision scan, backed by a
vectorised whole-field check), evaluates the two sufficiency conditions

    cond1:  norm(A) = norm(B)  and  A^q B in F_q \\ {0, 1}
    cond2:  A^q B = 1          and  norm(B) != 1

and the two explicit non-permutation constructions

    case (i):   A^q B = 1 and norm(A) = 1
    case (ii):  A^q B != 1 and
                norm(A) + A B^(q^2) + A^q B + A^(q^2) B^q + norm(B) + 1 = 0

whose concrete roots are produced as witnesses.  Nonzero roots of f
correspond to solutions u of u^q + A u^(q+1) + B = 0 with norm(u) = 1
via u = x^(q-1), which is how roots are searched without scanning the
whole field.

Whole-(A,B) sweeps are exhaustive for m <= 4 and seeded-random above
that; exceeding the evaluation budget raises BudgetError up front rather
than producing partial output.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
import random

import numpy as np

from .gf import ExtElem, FieldTower, get_tower
from .tables import TABLE_MAX_BITS, get_tables

__all__ = [
    "TrinomialParams", "ClassifyRecord", "BudgetError",
    "eval_f", "is_permutation", "is_permutation_scan",
    "cond1", "cond2", "prop3_i", "prop3_ii", "prop3_witness",
    "unit_equation_solutions", "nontrivial_root",
    "classify_field", "classify_chunk", "classify_header",
    "cond_pairs", "flagged_pairs",
]

SAMPLED_EVAL_BUDGET = 1 << 28


class BudgetError(RuntimeError):
    """The requested sweep exceeds the configured evaluation budget."""


@dataclass(frozen=True)
class TrinomialParams:
    """The coefficient pair (A, B); both must be nonzero."""

    A: ExtElem
    B: ExtElem

    def __post_init__(self):
        if self.A.tower is not self.B.tower:
            raise ValueError("A and B must live in the same tower")
        if not self.A or not self.B:
            raise ValueError("A and B must be nonzero")

    @property
    def tower(self) -> FieldTower:
        return self.A.tower


@dataclass
class ClassifyRecord:
    """One classifier verdict; the unit of the sweep reports."""

    A: str
    B: str
    is_pp: bool
    cond1: bool
    cond2: bool
    prop3_i: bool
    prop3_ii: bool
    root_witness: str | None

    CSV_HEADER = "A,B,is_pp,cond1,cond2,prop3_i,prop3_ii,root_witness"

    def json_obj(self) -> dict:
        return {
            "A": self.A,
            "B": self.B,
            "is_pp": self.is_pp,
            "cond1": self.cond1,
            "cond2": self.cond2,
            "prop3_i": self.prop3_i,
            "prop3_ii": self.prop3_ii,
            "root_witness": self.root_witness,
        }

    def csv_row(self) -> str:
        # element encodings contain commas, so they travel quoted
        flags = ",".join("1" if f else "0" for f in
                         (self.is_pp, self.cond1, self.cond2, self.prop3_i, self.prop3_ii))
        witness = '"%s"' % self.root_witness if self.root_witness else ""
        return '"%s","%s",%s,%s' % (self.A, self.B, flags, witness)


# ----------------------------------------------------------------------
# evaluation and the permutation test

def eval_f(p: TrinomialParams, x: ExtElem) -> ExtElem:
    """f(x), with x^(q^2-q+1) computed as x^(q^2) * x / x^q; f(0) = 0."""
    tw = p.tower
    if not x:
        return tw.zero()
    xq2 = x.frobenius(2)
    main = xq2 * x / x.frobenius(1)
    return main + p.A * xq2 + p.B * x


def is_permutation_scan(p: TrinomialParams) -> bool:
    """Early-exit occupancy scan over the whole field (scalar path)."""
    tw = p.tower
    seen = bytearray(tw.n)
    a, b = p.A.v, p.B.v
    mul, frob, inv = tw.mul, tw.frob, tw.inv
    seen[0] = 1  # f(0) = 0
    for x in range(1, tw.n):
        xq2 = frob(x, 2)
        v = mul(mul(xq2, x), inv(frob(x))) ^ mul(a, xq2) ^ mul(b, x)
        if seen[v]:
            return False
        seen[v] = 1
    return True


def is_permutation(p: TrinomialParams) -> bool:
    """True iff f is injective on F_{q^3}."""
    tw = p.tower
    if 3 * tw.m <= TABLE_MAX_BITS and tw.m <= 6:
        return get_tables(tw).is_permutation(p.A.v, p.B.v)
    return is_permutation_scan(p)


# ----------------------------------------------------------------------
# parameter conditions

def cond1(p: TrinomialParams) -> bool:
    tw = p.tower
    z = tw.mul(tw.frob(p.A.v), p.B.v)
    if z in (0, 1) or not tw.in_subfield(z):
        return False
    return tw.norm(p.A.v) == tw.norm(p.B.v)


def cond2(p: TrinomialParams) -> bool:
    tw = p.tower
    return (tw.mul(tw.frob(p.A.v), p.B.v) == 1
            and tw.norm(p.B.v) != 1)


def _six_term(tw: FieldTower, a: int, b: int) -> int:
    # norm(A) + A B^(q^2) + A^q B + A^(q^2) B^q + norm(B) + 1
    aq = tw.frob(a)
    aq2 = tw.frob(aq)
    return (tw.norm(a) ^ tw.mul(a, tw.frob(b, 2)) ^ tw.mul(aq, b)
            ^ tw.mul(aq2, tw.frob(b)) ^ tw.norm(b) ^ 1)


def prop3_i(p: TrinomialParams) -> bool:
    tw = p.tower
    return tw.mul(tw.frob(p.A.v), p.B.v) == 1 and tw.norm(p.A.v) == 1


def prop3_ii(p: TrinomialParams) -> bool:
    tw = p.tower
    return (tw.mul(tw.frob(p.A.v), p.B.v) != 1
            and _six_term(tw, p.A.v, p.B.v) == 0)


# ----------------------------------------------------------------------
# roots

@lru_cache(maxsize=None)
def _unit_solutions_packed(tower: FieldTower) -> tuple[int, ...]:
    tw = tower
    out = []
    for y in tw.norm_one_elements():
        yq = tw.frob(y)
        if tw.mul(yq, y) ^ yq ^ 1 == 0:
            out.append(y)
    return tuple(out)


def unit_equation_solutions(tower: FieldTower) -> list[ExtElem]:
    """All y in F_{q^3} with y^(q+1) + y^q + 1 = 0 (there are exactly q+1).

    Every solution has norm 1, so the scan runs over the order q^2+q+1
    subgroup; results come sorted by packed encoding.
    """
    return [ExtElem(tower, v) for v in _unit_solutions_packed(tower)]


def _min_qm1_preimage(tw: FieldTower, u: int) -> int:
    """Smallest packed x with x^(q-1) = u (requires norm(u) = 1)."""
    if 3 * tw.m <= TABLE_MAX_BITS and tw.m <= 6:
        x = int(get_tables(tw).QM1_PRE[u])
        if x >= tw.n:
            raise ArithmeticError("element has no (q-1)-th preimage: norm != 1")
        return x
    x0 = tw.qm1_preimage(u)
    if x0 is None:
        raise ArithmeticError("element has no (q-1)-th preimage: norm != 1")
    return min(tw.scale(x0, c) for c in range(1, tw.q))


def prop3_witness(p: TrinomialParams) -> ExtElem | None:
    """A nonzero root of f when one of the two constructions applies.

    Case (i) solves (A u)^q + (A u)^(q+1) + 1 = 0 through the unit
    equation; case (ii) uses the closed form u = (A^q B + 1)/(A + B^(1+q)).
    Returns None when neither case holds.
    """
    tw = p.tower
    a, b = p.A.v, p.B.v
    if prop3_i(p):
        y = _unit_solutions_packed(tw)[0]
        u = tw.mul(y, tw.inv(a))
    elif prop3_ii(p):
        den = a ^ tw.pow(b, 1 + tw.q)
        if den == 0:
            # excluded: with the six-term sum zero this would force
            # norm(A) = norm(B) = 1, contradicting A^q B != 1
            raise ArithmeticError("A + B^(1+q) = 0 cannot occur in case (ii)")
        u = tw.mul(tw.mul(tw.frob(a), b) ^ 1, tw.inv(den))
    else:
        return None
    x = ExtElem(tw, _min_qm1_preimage(tw, u))
    assert x and not eval_f(p, x), "witness construction produced a non-root"
    return x


def nontrivial_root(p: TrinomialParams) -> ExtElem | None:
    """Smallest-u root of u^q + A u^(q+1) + B = 0 on the norm-one group,
    mapped back to a nonzero x with x^(q-1) = u; None if f has no nonzero root."""
    tw = p.tower
    a, b = p.A.v, p.B.v
    for u in tw.norm_one_elements():
        uq = tw.frob(u)
        if uq ^ tw.mul(a, tw.mul(u, uq)) ^ b == 0:
            return ExtElem(tw, _min_qm1_preimage(tw, u))
    return None


# ----------------------------------------------------------------------
# constructive pair enumerations (used by the sufficiency suites)

def cond_pairs(tower: FieldTower) -> list[tuple[int, int, bool, bool]]:
    """Every (A, B) packed pair satisfying cond1 or cond2, in (A, B) order.

    cond1 pairs come from B = c * A^(-q) for c in F_q \\ {0, 1} filtered on
    norm equality; cond2 pairs from A = B^(-q^2).
    """
    tw = tower
    out = []
    for a in range(1, tw.n):
        aqi = tw.inv(tw.frob(a))
        na = tw.norm(a)
        for c in range(2, tw.q):
            b = tw.scale(aqi, c)
            if tw.norm(b) == na:
                out.append((a, b, True, False))
        # cond2 with this a: b = A^(-q) works iff A^q B = 1; require norm(b) != 1
        b = aqi
        if tw.norm(b) != 1:
            out.append((a, b, False, True))
    out.sort()
    return out


def flagged_pairs(tower: FieldTower) -> list[tuple[int, int, bool, bool]]:
    """Every (A, B) pair flagged by construction case (i) or (ii)."""
    tw = tower
    out = []
    if 3 * tw.m <= TABLE_MAX_BITS and tw.m <= 6:
        tb = get_tables(tw)
        bs = np.arange(1, tw.n, dtype=np.int64)
        norm_b = tb.NORM[bs]
        frb1_b = tb.FRB1[bs]
        frb2_b = tb.FRB2[bs]
        for a in range(1, tw.n):
            aq = tw.frob(a)
            na = tw.norm(a)
            z = tb.mul_sv(aq, bs)
            six = (na ^ 1) ^ tb.mul_sv(a, frb2_b) ^ z ^ tb.mul_sv(tw.frob(aq), frb1_b) ^ norm_b
            if na == 1:
                out.append((a, tw.inv(aq), True, False))
            for i in np.nonzero((six == 0) & (z != 1))[0]:
                out.append((a, int(bs[i]), False, True))
    else:
        for a in range(1, tw.n):
            b0 = tw.inv(tw.frob(a))
            if tw.norm(a) == 1:
                out.append((a, b0, True, False))
            for b in range(1, tw.n):
                if b != b0 and _six_term(tw, a, b) == 0:
                    out.append((a, b, False, True))
    out.sort()
    return out


# ----------------------------------------------------------------------
# field sweeps

def classify_header(tower: FieldTower, mode: str, seed: int | None,
                    samples: int | None = None) -> dict:
    h = dict(tower.spec_dict())
    h["mode"] = mode
    h["seed"] = seed
    if samples is not None:
        h["samples"] = samples
    return h


def _record(tw: FieldTower, a: int, b: int, is_pp: bool, c1: bool, c2: bool,
            p3i: bool, p3ii: bool, witness: int | None) -> ClassifyRecord:
    return ClassifyRecord(
        A=tw.format_elem(a),
        B=tw.format_elem(b),
        is_pp=bool(is_pp),
        cond1=bool(c1),
        cond2=bool(c2),
        prop3_i=bool(p3i),
        prop3_ii=bool(p3ii),
        root_witness=tw.format_elem(witness) if witness is not None else None,
    )


def classify_chunk(tower: FieldTower, a_lo: int, a_hi: int) -> list[ClassifyRecord]:
    """Exhaustive records for A in [a_lo, a_hi), all nonzero B, in (A, B) order.

    Safe to run on disjoint chunks in parallel: output depends only on the
    chunk bounds, so any partition merges to the same report.
    """
    tw = tower
    tb = get_tables(tw)
    n = tw.n
    bs = np.arange(1, n, dtype=np.int64)
    log_bs = tb.LOG[bs]
    pref = min(n - 1, 128)
    xs = np.arange(1, pref + 1, dtype=np.int64)
    log_xs = tb.LOG[xs]
    norm_b = tb.NORM[bs]
    frb1_b = tb.FRB1[bs]
    frb2_b = tb.FRB2[bs]
    unit = tb.NORM_ONE
    unit_q = tb.FRB1[unit]
    unit_q1 = tb.mul_vv(unit, unit_q)

    out: list[ClassifyRecord] = []
    for a in range(max(a_lo, 1), a_hi):
        aq = tw.frob(a)
        aq2 = tw.frob(aq)
        na = tw.norm(a)
        z = tb.mul_sv(aq, bs)  # A^q B over all B
        z_sub = (tb.FRB1[z] == z)
        c1v = z_sub & (z != 1) & (norm_b == na)
        c2v = (z == 1) & (norm_b != 1)
        p3iv = (z == 1) if na == 1 else np.zeros(len(bs), dtype=bool)
        six = (na ^ 1) ^ tb.mul_sv(a, frb2_b) ^ z ^ tb.mul_sv(aq2, frb1_b) ^ norm_b
        p3iiv = (z != 1) & (six == 0)

        # root witnesses: B values reached by u -> u^q + A u^(q+1), minimal u
        broots = unit_q ^ tb.mul_sv(a, unit_q1)
        wit_u = np.full(n, n, dtype=np.int64)
        np.minimum.at(wit_u, broots, unit)

        # permutation check: prefix collision filter, then full check
        g_pref = tb.T_MAIN[xs] ^ tb.mul_sv(a, tb.FRB2[xs])
        mat = np.empty((n - 1, pref + 1), dtype=np.int64)
        mat[:, :pref] = tb.EXPZ[log_bs[:, None] + log_xs[None, :]] ^ g_pref[None, :]
        mat[:, pref] = 0  # f(0) = 0 participates in collisions
        mat.sort(axis=1)
        collide = (np.diff(mat, axis=1) == 0).any(axis=1)
        ispp = np.zeros(n - 1, dtype=bool)
        for idx in np.nonzero(~collide)[0]:
            ispp[idx] = tb.is_permutation(a, int(bs[idx]))

        for i in range(n - 1):
            b = int(bs[i])
            w = int(wit_u[b])
            witness = int(tb.QM1_PRE[w]) if w < n else None
            out.append(_record(tw, a, b, bool(ispp[i]), bool(c1v[i]), bool(c2v[i]),
                               bool(p3iv[i]), bool(p3iiv[i]), witness))
    return out


def _classify_sampled(tower: FieldTower, samples: int, seed: int,
                      force_budget: bool) -> list[ClassifyRecord]:
    tw = tower
    if samples * tw.n > SAMPLED_EVAL_BUDGET and not force_budget:
        raise BudgetError(
            "sampled classify predicts %d evaluations (budget %d); "
            "pass force_budget to override" % (samples * tw.n, SAMPLED_EVAL_BUDGET))
    rng = random.Random(seed)
    use_tables = 3 * tw.m <= TABLE_MAX_BITS and tw.m <= 6
    out = []
    for _ in range(samples):
        a = rng.randrange(1, tw.n)
        b = rng.randrange(1, tw.n)
        p = TrinomialParams(ExtElem(tw, a), ExtElem(tw, b))
        if use_tables:
            ispp = get_tables(tw).is_permutation(a, b)
        else:
            ispp = is_permutation_scan(p)
        root = nontrivial_root(p)
        out.append(_record(tw, a, b, ispp, cond1(p), cond2(p),
                           prop3_i(p), prop3_ii(p),
                           root.v if root is not None else None))
    return out


def classify_field(m_or_tower, mode: str | None = None, samples: int = 1000,
                   seed: int = 0, force_budget: bool = False):
    """Classify the whole (A, B) rectangle; returns (header, records).

    Exhaustive mode (default for m <= 4) walks every pair in lexicographic
    packed order.  Sampled mode (default for m >= 5) draws pairs from a
    seeded PRNG (Mersenne Twister via random.Random; the seed is recorded
    in the header).  Exhaustive mode for m > 4 raises BudgetError unless
    force_budget is set.
    """
    tw = m_or_tower if isinstance(m_or_tower, FieldTower) else get_tower(m_or_tower)
    if mode is None:
        mode = "exhaustive" if tw.m <= 4 else "sampled"
    if mode == "exhaustive":
        if tw.m > 4 and not force_budget:
            raise BudgetError(
                "exhaustive classify for m=%d predicts %d pair checks; "
                "pass force_budget to override" % (tw.m, (tw.n - 1) ** 2))
        header = classify_header(tw, "exhaustive", None)
        return header, classify_chunk(tw, 1, tw.n)
    if mode == "sampled":
        header = classify_header(tw, "sampled", seed, samples)
        return header, _classify_sampled(tw, samples, seed, force_budget)
    raise ValueError("mode must be 'exhaustive' or 'sampled'")
