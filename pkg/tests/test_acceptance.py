"""Acceptance gate: one test per release criterion, exact checks only.

Each test prints a single [criterion N] PASS line once its assertions
hold; run with `pytest -s tests/test_acceptance.py` to see the lines as
the suite progresses.
"""

import json
import os
import random

from pptrinomial.bounds import BoundQuery, lang_weil_applicable, main_bound_holds, minimal_m
from pptrinomial.gf import ExtElem, get_tower
from pptrinomial.pp import (TrinomialParams, classify_field, cond_pairs,
                            eval_f, flagged_pairs, prop3_witness,
                            unit_equation_solutions)
from pptrinomial import surface as sf
from pptrinomial.suite import EXPECTED_QUOTED_DIVERGENCES
from pptrinomial.tables import get_tables

GOLDEN = os.path.join(os.path.dirname(__file__), "golden")


def _done(n, text):
    print("\n[criterion %d] PASS - %s" % (n, text))


def _params(tw, a, b):
    return TrinomialParams(ExtElem(tw, a), ExtElem(tw, b))


def _sample_pairs(tw, count, seed):
    rng = random.Random(seed)
    return [(rng.randrange(1, tw.n), rng.randrange(1, tw.n)) for _ in range(count)]


def test_criterion_1_sufficiency_exhaustive():
    totals = {}
    for m in (1, 2, 3, 4):
        tw = get_tower(m)
        tb = get_tables(tw)
        pairs = cond_pairs(tw)
        violations = [(a, b) for (a, b, _, _) in pairs
                      if not tb.is_permutation(a, b)]
        assert violations == [], (m, violations[:5])
        totals[m] = len(pairs)
    # the enumeration itself is complete (cross-checked against a full
    # predicate scan at m <= 2 in test_pp)
    assert totals[1] == 0 and totals[2] == 84
    _done(1, "every cond1/cond2 pair permutes; pair counts %s" % totals)


def test_criterion_2_nonpp_constructions():
    totals = {}
    for m in (2, 3):
        tw = get_tower(m)
        flagged = flagged_pairs(tw)
        assert flagged
        for (a, b, f_i, f_ii) in flagged:
            p = _params(tw, a, b)
            w = prop3_witness(p)
            assert w is not None and w.v != 0, (m, a, b)
            assert eval_f(p, w).v == 0, (m, a, b)
        totals[m] = len(flagged)
    _done(2, "every flagged pair produced a verified nonzero root; counts %s" % totals)


def test_criterion_3_unit_equation():
    for m in range(1, 7):
        tw = get_tower(m)
        sols = unit_equation_solutions(tw)
        assert len(sols) == tw.q + 1, m
        assert all(s.norm().v == 1 for s in sols), m
    _done(3, "q+1 unit-equation solutions of norm 1 for m = 1..6")


def test_criterion_4_g_structure():
    generic_degrees_hold = 0
    locus_pairs = 0
    for m in (2, 3, 4):
        tw = get_tower(m)
        for (a, b) in _sample_pairs(tw, 100, seed=400 + m):
            p = _params(tw, a, b)
            gd = sf.derive_G(p)
            assert all(gd.checks.values()), (m, a, b, gd.checks)
            assert gd.G.degree() == 8
            if gd.alpha.is_zero():
                continue
            on_locus = (not (p.A + p.B * p.B.frobenius())
                        or not (p.A * p.A.frobenius() + p.B.frobenius()))
            if on_locus:
                locus_pairs += 1
            else:
                assert gd.beta.degree() == 5
                assert gd.gamma.degree() == 7
                assert gd.delta.degree() == 8
                generic_degrees_hold += 1
    # most samples are generic; at m=2 about a third sit on alpha = 0
    assert generic_degrees_hold >= 200
    _done(4, "deg(G)=8, alpha and delta closed forms exact on 300 sampled pairs; "
             "generic degrees (5,7,8) held %d times, degenerate loci %d"
          % (generic_degrees_hold, locus_pairs))


def test_criterion_5_aqb1_factorization():
    counts = {}
    for m in (2, 3, 4):
        tw = get_tower(m)
        if tw.n - 1 <= 100:
            bs = list(range(1, tw.n))
        else:
            rng = random.Random(500 + m)
            bs = [rng.randrange(1, tw.n) for _ in range(100)]
        for b in bs:
            ok, detail = sf.verify_factorization_aqb1(ExtElem(tw, b))
            assert ok, (m, detail)
        counts[m] = len(bs)
    _done(5, "reciprocal-case factorization exact for %s sampled B" % counts)


def test_criterion_6_claim_table():
    divergences = set()
    for m in (2, 3, 4, 11):
        tw = get_tower(m)
        rng = random.Random(600 + m)
        n_pairs = 3 if m < 11 else 1
        for _ in range(n_pairs):
            p = _params(tw, rng.randrange(1, tw.n), rng.randrange(1, tw.n))
            rows = sf.verify_claim_table(p)
            assert len(rows) == 13
            for r in rows:
                assert r["pass"], (m, r["candidate"], r)
                for s in r["steps"]:
                    if not s.get("quoted_match", True):
                        divergences.add((r["candidate"], s["kind"],
                                         s["condition"], tuple(s["monomial"] or ())))
    assert divergences == set(EXPECTED_QUOTED_DIVERGENCES), divergences
    _done(6, "all 12 candidate rows + lambda chain verified exactly at "
             "m in {2,3,4,11}; quoted-text divergences limited to the 5 "
             "documented content-normalised steps")


def test_criterion_7_cond1_three_factor_split():
    counts = {}
    for m in (2, 3):
        tw = get_tower(m)
        pairs = [x for x in cond_pairs(tw) if x[2]][:50]
        assert pairs
        for (a, b, _, _) in pairs:
            rep = sf.remark_cond1_factorization(_params(tw, a, b))
            assert rep["pass"], (m, rep)
        counts[m] = len(pairs)
    _done(7, "G_* = (A^qB+1)^2 (three linear factors) with matched lambdas "
             "for %s cond1 pairs" % counts)


def test_criterion_8_curve_equivalence_exhaustive():
    for m in (1, 2):
        tw = get_tower(m)
        tb = get_tables(tw)
        for a in range(1, tw.n):
            for b in range(1, tw.n):
                p = _params(tw, a, b)
                count, _ = sf.curve_point_count(p)
                f = tb.f_values(a, b)
                has_root = bool((f[1:] == 0).any())
                is_pp = tb.is_permutation(a, b)
                assert is_pp == (count == 0 and not has_root), (m, a, b)
    _done(8, "permutation <=> (no off-line curve points and no nonzero root), "
             "exhaustive for m <= 2; nonzero roots are what 'trivial roots' "
             "must exclude for the equivalence to hold")


def test_criterion_9_threshold_bounds():
    assert minimal_m() == 19
    assert not main_bound_holds(18)
    assert main_bound_holds(19)
    assert lang_weil_applicable(BoundQuery(r=2, delta=12, m=10))
    assert not lang_weil_applicable(BoundQuery(r=2, delta=12, m=9))
    _done(9, "certified enclosures give minimal m = 19; applicability "
             "flips between m = 9 and m = 10")


def test_criterion_10_necessity_goldens():
    with open(os.path.join(GOLDEN, "necessity_counts.json")) as fh:
        golden = json.load(fh)
    got = {}
    for m in (1, 2):
        _, recs = classify_field(m)
        n_pp = sum(1 for r in recs if r.is_pp)
        n_exc = sum(1 for r in recs if r.is_pp and not (r.cond1 or r.cond2))
        got[str(m)] = {"pairs": len(recs), "pp": n_pp,
                       "pp_outside_cond1_cond2": n_exc}
    assert got == golden, (got, golden)
    with open(os.path.join(GOLDEN, "classify_m1.jsonl")) as fh:
        golden_lines = fh.read().splitlines()
    _, recs = classify_field(1)
    lines = [json.dumps(r.json_obj(), sort_keys=True, separators=(",", ":"))
             for r in recs]
    assert lines == golden_lines[1:]
    _done(10, "PP-outside-conditions counts reproduced byte-identically: %s"
          % {k: v["pp_outside_cond1_cond2"] for k, v in golden.items()})
