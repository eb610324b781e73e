"""Batch verification suites: sampled identity checks with JSON-able reports.

Each check row carries {check, m, cases, pass, failures[...]}; failures
hold counterexample payloads (the offending pair plus whatever the check
compared).  Sampling is driven by random.Random(seed), so a (m, samples,
seed) triple pins the byte-exact report.
"""

from __future__ import annotations

import random

from .gf import ExtElem, FieldTower
from .pp import TrinomialParams, cond_pairs
from .surface import (FactorCandidate, component_membership, derive_G,
                      factor_candidate_test, remark_cond1_factorization,
                      verify_claim_table, verify_factorization_aqb1)

__all__ = ["identity_report", "EXPECTED_QUOTED_DIVERGENCES"]

# The five claim-table steps whose quoted forms hold only after content
# normalisation (see the claim-table comment in surface.py); every other
# step must match verbatim.
EXPECTED_QUOTED_DIVERGENCES = frozenset([
    ("Y1^2*X0 + l*N*^2", "slot", None, (5, 7)),
    ("Y1^2*X0 + l*M*^2", "slot", None, (5, 7)),
    ("Y0Y1*X0 + l*N*^2", "coeff_shift", "sub_a", (1, 7)),
    ("X0 + l*N* (lambda chain)", "coeff_cleared", "lambda=B^q/(A^(q+1)+B^q)", (2, 2)),
    ("X0 + l*N* (lambda chain)", "coeff_cleared", "lambda=B^q/(A^(q+1)+B^q)", (2, 3)),
])


def _sample_pairs(tower: FieldTower, count: int, rng: random.Random):
    out = []
    for _ in range(count):
        a = rng.randrange(1, tower.n)
        b = rng.randrange(1, tower.n)
        out.append(TrinomialParams(ExtElem(tower, a), ExtElem(tower, b)))
    return out


def _row(check: str, m: int, cases: int, failures: list) -> dict:
    return {"check": check, "m": m, "cases": cases,
            "pass": not failures, "failures": failures[:10]}


def _check_system(tower, pairs) -> dict:
    from .surface import build_system
    fails = []
    for p in pairs:
        sysm = build_system(p)
        ok = (sysm.eq2 == sysm.eq1.frobenius_twist()
              and sysm.eq3 == sysm.eq2.frobenius_twist()
              and sysm.eq1 == sysm.eq3.frobenius_twist()
              and all(eq.swap_xy() == eq for eq in sysm.equations())
              and all(eq.is_homogeneous() and eq.degree() == 3
                      for eq in sysm.equations()))
        if not ok:
            fails.append({"A": p.A.encode(), "B": p.B.encode()})
    return _row("system-structure", tower.m, len(pairs), fails)


def _g_structure_chunk(job):
    m, packed = job
    from .gf import get_tower
    tw = get_tower(m)
    fails = []
    for a, b in packed:
        p = TrinomialParams(ExtElem(tw, a), ExtElem(tw, b))
        gd = derive_G(p)
        bad = [k for k, v in gd.checks.items() if not v]
        if bad:
            fails.append({"A": p.A.encode(), "B": p.B.encode(), "failed": bad})
    return fails


def _check_g_structure(tower, pairs, jobs: int = 1) -> dict:
    from .gf import get_tower
    if jobs > 1 and get_tower(tower.m) is tower and len(pairs) >= 2 * jobs:
        from concurrent.futures import ProcessPoolExecutor
        packed = [(p.A.v, p.B.v) for p in pairs]
        step = (len(packed) + jobs - 1) // jobs
        work = [(tower.m, packed[i:i + step]) for i in range(0, len(packed), step)]
        fails = []
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_g_structure_chunk, work):
                fails.extend(part)  # submission order keeps this deterministic
        return _row("g-structure", tower.m, len(pairs), fails)
    fails = []
    for p in pairs:
        gd = derive_G(p)
        bad = [k for k, v in gd.checks.items() if not v]
        if bad:
            fails.append({"A": p.A.encode(), "B": p.B.encode(), "failed": bad})
    return _row("g-structure", tower.m, len(pairs), fails)


def _check_route_stability(tower, pairs) -> dict:
    fails = []
    for p in pairs:
        g1 = derive_G(p, route="x2-first").G
        g2 = derive_G(p, route="x1-first").G
        if not (g1.exact_div(g2) is not None and g2.exact_div(g1) is not None):
            fails.append({"A": p.A.encode(), "B": p.B.encode()})
    return _row("g-route-stability", tower.m, len(pairs), fails)


def _check_claim_table(tower, pair) -> list[dict]:
    rows = verify_claim_table(pair)
    out = []
    divergences = set()
    fails = []
    for r in rows:
        for s in r["steps"]:
            if not s.get("quoted_match", True):
                divergences.add((r["candidate"], s["kind"], s["condition"],
                                 tuple(s["monomial"] or ())))
        if not r["pass"]:
            fails.append({"candidate": r["candidate"],
                          "steps": [s for s in r["steps"] if not s["pass"]]})
        out.append({"check": "claim:%s" % r["candidate"], "m": tower.m,
                    "cases": len(r["steps"]), "pass": r["pass"],
                    "failures": [s for s in r["steps"] if not s["pass"]][:4]})
    unexpected = divergences - set(EXPECTED_QUOTED_DIVERGENCES)
    missing = set(EXPECTED_QUOTED_DIVERGENCES) - divergences
    out.append({"check": "claim-quoted-divergence-set", "m": tower.m,
                "cases": len(rows),
                "pass": not unexpected and not missing,
                "failures": ([{"unexpected": sorted(map(str, unexpected))}]
                             if unexpected else [])
                + ([{"missing": sorted(map(str, missing))}] if missing else [])})
    return out


def _check_factor_exclusions(tower, pairs, rng) -> dict:
    """Shape exclusions: l+k >= 3 and l+k = 0 candidates never divide when
    the leading coefficient is nonzero; the combination test agrees with
    direct division."""
    fails = []
    cases = 0
    for p in pairs:
        gd = derive_G(p)
        if gd.alpha.is_zero():
            continue
        lam = ExtElem(tower, rng.randrange(1, tower.n))
        shapes = [(0, 0, 2, 1), (0, 1, 1, 2), (1, 2, 2, 2),  # l+k >= 3
                  (0, 0, 0, 0), (1, 2, 0, 0)]                # l+k = 0
        for (i, j, l, k) in shapes:
            cases += 1
            cand = FactorCandidate(i=i, j=j, l=l, k=k, lam=lam)
            divides = factor_candidate_test(gd, cand)
            agree = (gd.g_star.exact_div(cand.linear_poly(gd)) is not None) == divides
            if divides or not agree:
                fails.append({"A": p.A.encode(), "B": p.B.encode(),
                              "candidate": cand.label(),
                              "divides": divides, "division_agrees": agree})
    return _row("factor-shape-exclusions", tower.m, cases, fails)


def _check_remark_cond1(tower, count) -> dict:
    pairs = [x for x in cond_pairs(tower) if x[2]][:count]
    fails = []
    for (a, b, _, _) in pairs:
        p = TrinomialParams(ExtElem(tower, a), ExtElem(tower, b))
        rep = remark_cond1_factorization(p)
        if not rep["pass"]:
            fails.append(rep)
    return _row("cond1-three-factor-split", tower.m, len(pairs), fails)


def _check_aqb1(tower, count, rng) -> dict:
    fails = []
    if tower.n - 1 <= count:  # small field: just exhaust every B
        bs = list(range(1, tower.n))
    else:
        bs = [rng.randrange(1, tower.n) for _ in range(count)]
    for b in bs:
        ok, detail = verify_factorization_aqb1(ExtElem(tower, b))
        if not ok or not detail["twist_consistency"]:
            fails.append(detail)
    return _row("aqb1-factorization", tower.m, len(bs), fails)


def _check_components(tower, pairs, seed) -> dict:
    fails = []
    for p in pairs[:3]:
        rep = component_membership(p, which="all", samples=12, seed=seed)
        if not rep["pass"]:
            fails.append({"A": p.A.encode(), "B": p.B.encode(), "report": rep})
    return _row("component-membership", tower.m, min(len(pairs), 3), fails)


def identity_report(tower: FieldTower, samples: int = 20, seed: int = 0,
                    jobs: int = 1) -> list[dict]:
    """Run the full identity suite at `samples` seeded pairs; returns rows.

    jobs > 1 spreads the elimination-heavy sample checks over worker
    processes; aggregation is order-preserving, so the report bytes do
    not depend on the worker count.
    """
    rng = random.Random(seed)
    pairs = _sample_pairs(tower, samples, rng)
    rows = [
        _check_system(tower, pairs[: min(len(pairs), 10)]),
        _check_g_structure(tower, pairs, jobs=jobs),
        _check_route_stability(tower, pairs[: min(len(pairs), 10)]),
    ]
    rows.extend(_check_claim_table(tower, pairs[0]))
    rows.append(_check_factor_exclusions(tower, pairs[: min(len(pairs), 5)], rng))
    rows.append(_check_remark_cond1(tower, min(samples, 50)))
    rows.append(_check_aqb1(tower, min(samples, 50), rng))
    rows.append(_check_components(tower, pairs, seed))
    return rows
