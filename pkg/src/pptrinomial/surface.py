"""The projective surface system attached to f and its residual polynomial G.

Writing (X0,...,Y2) for the conjugate coordinates (X, X^q, X^(q^2), Y,
Y^q, Y^(q^2)), the vanishing of

    eq1 = Y1 (X0 X2 + A X1 X2 + B X0 X1) + X1 (Y0 Y2 + A Y1 Y2 + B Y0 Y1)

together with its two twists eq2, eq3 (coefficient Frobenius composed
with the cyclic block shift) cuts out the surface whose rational points
off the trivial components encode collisions f(x) = f(y).  Eliminating
X2 and X1 from the system and clearing the bookkeeping factors leaves a
single homogeneous octic G(X0, Y0, Y1, Y2); its dehomogenisation
G_* = alpha X0^3 + beta X0^2 + gamma X0 + delta has
delta = M_*^2 N_*^2 for the quadrics

    M = Y0 Y1 + B^q Y1 Y2 + A^q Y0 Y2,     N = A Y1 Y2 + B Y0 Y1 + Y0 Y2

(the star meaning Y2 = 1).  Divisibility of G_* by a linear-in-X0
candidate  eps(Y0,Y1) X0 + sigma(Y0,Y1)  with eps = Y0^i Y1^j and
sigma = lambda M_*^l N_*^k is equivalent to the vanishing of

    alpha sigma^3 + beta sigma^2 eps + gamma sigma eps^2 + delta eps^3,

which is what the claim table pins down coefficient by coefficient.

Every elimination step is an explicit exact division with multiply-back;
the stripped cofactors are logged so a deviation on some field localises
immediately.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .gf import ExtElem, FieldTower
from .mpoly import MultiPoly, X0, X1, X2, Y0, Y1, Y2, monomial, variable
from .pp import BudgetError, TrinomialParams, cond1
from .tables import get_tables

__all__ = [
    "SurfaceSystem", "GDecomposition", "FactorCandidate", "EliminationError",
    "build_system", "derive_G", "gtilde", "factor_candidate_test",
    "verify_claim_table", "remark_cond1_factorization",
    "verify_factorization_aqb1", "curve_point_count", "component_membership",
    "quad_m", "quad_n", "tilde_n", "tilde_m", "default_lambdas", "CLAIM_ROWS",
]


class EliminationError(RuntimeError):
    """An exact-division step of the elimination failed."""


def quad_m(tw: FieldTower, A: ExtElem, B: ExtElem) -> MultiPoly:
    """M = Y0 Y1 + B^q Y1 Y2 + A^q Y0 Y2 (homogeneous)."""
    y0, y1, y2 = (variable(tw, v) for v in (Y0, Y1, Y2))
    return y0 * y1 + B.frobenius() * (y1 * y2) + A.frobenius() * (y0 * y2)


def quad_n(tw: FieldTower, A: ExtElem, B: ExtElem) -> MultiPoly:
    """N = A Y1 Y2 + B Y0 Y1 + Y0 Y2 (homogeneous)."""
    y0, y1, y2 = (variable(tw, v) for v in (Y0, Y1, Y2))
    return A * (y1 * y2) + B * (y0 * y1) + y0 * y2


def tilde_n(tw: FieldTower, B: ExtElem) -> MultiPoly:
    """B^(1+q^2) Y0 Y1 + B^(q^2) Y0 Y2 + Y1 Y2 (the A^q B = 1 regime)."""
    y0, y1, y2 = (variable(tw, v) for v in (Y0, Y1, Y2))
    bq2 = B.frobenius(2)
    return (B * bq2) * (y0 * y1) + bq2 * (y0 * y2) + y1 * y2


def tilde_m(tw: FieldTower, B: ExtElem) -> MultiPoly:
    """The twist of tilde_n: B Y0 Y1 + Y0 Y2 + B^(1+q) Y1 Y2."""
    return tilde_n(tw, B).frobenius_twist()


@dataclass(frozen=True)
class SurfaceSystem:
    params: TrinomialParams
    eq1: MultiPoly
    eq2: MultiPoly
    eq3: MultiPoly

    @property
    def fbar(self) -> MultiPoly:
        """The untwisted system polynomial (identical to eq1)."""
        return self.eq1

    def equations(self) -> tuple[MultiPoly, MultiPoly, MultiPoly]:
        return (self.eq1, self.eq2, self.eq3)


def build_system(p: TrinomialParams) -> SurfaceSystem:
    """The three system equations; eq2 and eq3 arise by twisting eq1."""
    tw = p.tower
    A, B = p.A, p.B
    x0, x1, x2, y0, y1, y2 = (variable(tw, v) for v in range(6))
    eq1 = (y1 * (x0 * x2 + A * (x1 * x2) + B * (x0 * x1))
           + x1 * (y0 * y2 + A * (y1 * y2) + B * (y0 * y1)))
    eq2 = eq1.frobenius_twist()
    eq3 = eq2.frobenius_twist()
    return SurfaceSystem(params=p, eq1=eq1, eq2=eq2, eq3=eq3)


@dataclass
class GDecomposition:
    """G and its X0-coefficient split, with the elimination audit trail."""

    params: TrinomialParams
    G: MultiPoly            # homogeneous octic in X0, Y0, Y1, Y2
    g_star: MultiPoly       # G at Y2 = 1
    alpha: MultiPoly
    beta: MultiPoly
    gamma: MultiPoly
    delta: MultiPoly
    m_quad: MultiPoly       # M, homogeneous
    n_quad: MultiPoly       # N, homogeneous
    m_star: MultiPoly       # M at Y2 = 1
    n_star: MultiPoly       # N at Y2 = 1
    stripped: list = field(default_factory=list)  # [(label, MultiPoly), ...]
    checks: dict = field(default_factory=dict)


def _solve_linear(p: MultiPoly, var: int):
    """Write p = den*var + num (p linear in var) and return (num, den)."""
    parts = p.coeffs_in(var)
    if set(parts) - {0, 1}:
        raise EliminationError("expected a polynomial linear in %d" % var)
    num = parts.get(0, MultiPoly.zero(p.tower))
    return num, parts[1]


def _strip(poly: MultiPoly, factors, log: list) -> MultiPoly:
    for label, f in factors:
        q = poly.exact_div(f)
        if q is None:
            raise EliminationError("cofactor %r does not divide the eliminant" % label)
        log.append((label, f))
        poly = q
    return poly


def derive_G(p: TrinomialParams, route: str = "x2-first") -> GDecomposition:
    """Eliminate X2 and X1 from the system, strip cofactors, and split G.

    The default route solves eq1 for X2, substitutes into eq2, strips the
    X1 bookkeeping factor, solves for X1, pushes both into eq3 and strips
    (X0 + Y0) and the X2-numerator cofactor K.  The alternative
    "x1-first" route eliminates in the mirrored order (strips X0,
    X0 + Y0, Y1) and must land on the same G; both schedules are fixed
    and fully logged.
    """
    tw = p.tower
    sysm = build_system(p)
    x0p, x1p, x2p = variable(tw, X0), variable(tw, X1), variable(tw, X2)
    y0p, y1p = variable(tw, Y0), variable(tw, Y1)
    log: list = []

    if route == "x2-first":
        num2, den2 = _solve_linear(sysm.eq1, X2)
        k_poly = num2.exact_div(x1p)
        if k_poly is None:
            raise EliminationError("the X2 numerator must carry the X1 factor")
        n2, _ = sysm.eq2.substitute(X2, num2, den2)
        e2 = _strip(n2, [("X1", x1p)], log)
        num1, den1 = _solve_linear(e2, X1)
        n3, _ = sysm.eq3.substitute(X2, num2, den2)
        n3, _ = n3.substitute(X1, num1, den1)
        g = _strip(n3, [("X0+Y0", x0p + y0p), ("K", k_poly)], log)
    elif route == "x1-first":
        num1, den1 = _solve_linear(sysm.eq1, X1)
        n2, _ = sysm.eq2.substitute(X1, num1, den1)
        e2 = _strip(n2, [("X2", x2p)], log)
        num2, den2 = _solve_linear(e2, X2)
        n3, _ = sysm.eq3.substitute(X1, num1, den1)
        n3, _ = n3.substitute(X2, num2, den2)
        g = _strip(n3, [("X0", x0p), ("X0+Y0", x0p + y0p), ("Y1", y1p)], log)
    else:
        raise ValueError("route must be 'x2-first' or 'x1-first'")

    if g.involves(X1) or g.involves(X2):
        raise EliminationError("residual polynomial still involves X1 or X2")

    A, B = p.A, p.B
    mq = quad_m(tw, A, B)
    nq = quad_n(tw, A, B)
    ms = mq.at_y2_one()
    ns = nq.at_y2_one()
    gs = g.at_y2_one()
    parts = gs.coeffs_in(X0)
    zero = MultiPoly.zero(tw)
    alpha = parts.get(3, zero)
    beta = parts.get(2, zero)
    gamma = parts.get(1, zero)
    delta = parts.get(0, zero)

    one = tw.one()
    s = A.frobenius() * B + one
    six = (A.norm() + A * B.frobenius(2) + A.frobenius() * B
           + A.frobenius(2) * B.frobenius() + B.norm() + one)
    alpha_form = monomial(tw, s * six, (0, 0, 0, 1, 2, 0))
    recomposed = (alpha * x0p ** 3 + beta * x0p ** 2 + gamma * x0p + delta)

    # The generic coefficient degrees are (3, 5, 7, 8); beta drops to 4
    # exactly on A + B^(1+q) = 0 and gamma to 6 exactly on
    # A^(q+1) + B^q = 0 (the two loci are disjoint while alpha != 0).
    beta_deg = 4 if not (A + B * B.frobenius()) else 5
    gamma_deg = 6 if not (A * A.frobenius() + B.frobenius()) else 7
    checks = {
        "deg8": g.degree() == 8 and g.is_homogeneous(),
        "alpha_closed_form": alpha == alpha_form,
        "delta_msq_nsq": delta == (ms * ns).square(),
        "coefficient_degrees": (alpha.is_zero()
                                or (alpha.degree() == 3 and beta.degree() == beta_deg
                                    and gamma.degree() == gamma_deg
                                    and delta.degree() == 8)),
        "gstar_recomposition": recomposed == gs,
    }
    return GDecomposition(params=p, G=g, g_star=gs, alpha=alpha, beta=beta,
                          gamma=gamma, delta=delta, m_quad=mq, n_quad=nq,
                          m_star=ms, n_star=ns, stripped=log, checks=checks)


# ----------------------------------------------------------------------
# candidate factors of G_*

@dataclass(frozen=True)
class FactorCandidate:
    """eps X0 + sigma with eps = Y0^i Y1^j and sigma = lam * M_*^l N_*^k."""

    i: int
    j: int
    l: int
    k: int
    lam: ExtElem

    def __post_init__(self):
        if not (0 <= self.i <= 1 and 0 <= self.j <= 2
                and 0 <= self.l <= 2 and 0 <= self.k <= 2):
            raise ValueError("candidate exponents out of range")
        if not self.lam:
            raise ValueError("lambda must be nonzero")

    def label(self) -> str:
        eps_txt = ("Y0^%d" % self.i if self.i > 1 else "Y0" if self.i else "") + \
                  ("Y1^%d" % self.j if self.j > 1 else "Y1" if self.j else "")
        sig_txt = "l" + ("*M*^%d" % self.l if self.l > 1 else "*M*" if self.l else "") + \
                  ("*N*^%d" % self.k if self.k > 1 else "*N*" if self.k else "")
        return "%sX0 + %s" % (eps_txt + ("*" if eps_txt else ""), sig_txt)

    def eps_poly(self, tw: FieldTower) -> MultiPoly:
        return monomial(tw, 1, (0, 0, 0, self.i, self.j, 0))

    def sigma_poly(self, g: "GDecomposition") -> MultiPoly:
        return ((g.m_star ** self.l) * (g.n_star ** self.k)).scale(self.lam)

    def linear_poly(self, g: "GDecomposition") -> MultiPoly:
        tw = g.params.tower
        return self.eps_poly(tw) * variable(tw, X0) + self.sigma_poly(g)


def gtilde(g: GDecomposition, c: FactorCandidate) -> MultiPoly:
    """alpha sigma^3 + beta sigma^2 eps + gamma sigma eps^2 + delta eps^3."""
    tw = g.params.tower
    eps = c.eps_poly(tw)
    sig = c.sigma_poly(g)
    return (g.alpha * sig ** 3 + g.beta * (sig * sig) * eps
            + g.gamma * sig * (eps * eps) + g.delta * eps ** 3)


def factor_candidate_test(g: GDecomposition, c: FactorCandidate) -> bool:
    """True iff eps X0 + sigma divides G_* (the cleared combination vanishes)."""
    return gtilde(g, c).is_zero()


def default_lambdas(tw: FieldTower, A: ExtElem, B: ExtElem) -> list[ExtElem]:
    """Deterministic nonzero scalar set used when sweeping free lambdas."""
    out: list[ExtElem] = []
    for cand in (tw.one(), A, B, A + B, A * B):
        if cand and cand not in out:
            out.append(cand)
    return out[:4]


# -- the built-in claim table -------------------------------------------
#
# One row per candidate shape excluded by coefficient extraction.  A row
# is a cascade of steps; each step names a side condition on (A, B), and
# either pins one monomial coefficient of the cleared combination to a
# closed form in (A, B, lambda) or just asserts the combination stays
# nonzero (for the shapes handled as mirror cases).  Side conditions:
# None (any pair will do), "sub_a" (A = B^(q+1), norm(B) != 1),
# "sub_ab" (A = B^(q+1) and norm(B) = 1).
#
# Five of the sixteen quoted coefficient claims do not hold verbatim for
# the four-term combination itself: the source computation normalised
# its polynomials by their content over a symbolic (A, B)-ring, which
# cancels scalar factors and monomial shifts that are invisible in the
# quoted prose.  For those steps the table carries both the quoted form
# (reported as quoted_match, expected False) and the reconciled identity
# that does hold exactly:
#   * Y1^2 X0 + l N*^2 at Y0^5 Y1^7: the lambda-linear slot equals
#     A^(1+q^2) (A^q B + 1)^2   [quoted: lambda A^(1+q^2) (A^q B + 1)]
#   * Y1^2 X0 + l M*^2 at Y0^5 Y1^7: the lambda-linear slot equals
#     B^(q+q^2) (A^q B + 1)^2   [quoted: lambda B^(q+q^2) (A^q B + 1)]
#   * Y0 Y1 X0 + l N*^2 under sub_a: the quoted lambda^3 coefficient
#     lives at Y0 Y1^8 (quoted monomial Y0 Y1^7), where it is isolated
#   * the pinned-lambda chain coefficients at Y0^2 Y1^2 and Y0^2 Y1^3
#     match the quoted products only after multiplying by
#     (A^(q+1) + B^q) / A (denominator clearing and content).

def _s_of(tw, A, B):
    return A.frobenius() * B + tw.one()


def _six_of(tw, A, B):
    return (A.norm() + A * B.frobenius(2) + A.frobenius() * B
            + A.frobenius(2) * B.frobenius() + B.norm() + tw.one())


def _cf_row1(tw, A, B, lam):
    return lam * A * A.frobenius(2) * _s_of(tw, A, B)


def _vf_row1_slot(tw, A, B):
    s = _s_of(tw, A, B)
    return A * A.frobenius(2) * s * s


def _cf_row2_generic(tw, A, B, lam):
    return lam * A * B.frobenius() * _s_of(tw, A, B) * (A + B * B.frobenius()).frobenius(2)


def _cf_row2_sub_a(tw, A, B, lam):
    return lam ** 3 * (B * B.frobenius()) ** 6 * (B.norm() + tw.one()) ** 3


def _cf_row2_sub_ab(tw, A, B, lam):
    return B * B


def _cf_row4(tw, A, B, lam):
    return lam ** 3 * B ** 3 * _s_of(tw, A, B) * _six_of(tw, A, B)


def _cf_row6(tw, A, B, lam):
    return lam * B.frobenius() * B.frobenius(2) * _s_of(tw, A, B)


def _vf_row6_slot(tw, A, B):
    s = _s_of(tw, A, B)
    return B.frobenius() * B.frobenius(2) * s * s


def _cf_row9(tw, A, B, lam):
    return lam * A ** 3 * _s_of(tw, A, B).frobenius()


def _cf_row10(tw, A, B, lam):
    return (A * A).frobenius()


def _cf_row11(tw, A, B, lam):
    return lam * (B ** 3).frobenius() * _s_of(tw, A, B).frobenius(2)


_NONZERO_CASCADE = (
    {"kind": "nonzero", "condition": None},
    {"kind": "nonzero", "condition": "sub_a"},
    {"kind": "nonzero", "condition": "sub_ab"},
)

# (candidate exponents (i, j, l, k), steps).  Step kinds:
#   coeff        quoted and verified agree: coeff(monomial) == form(lam)
#   coeff_shift  verified at "verified_monomial"; quoted monomial recorded
#   slot         verified: the lambda^slot_power part of the combination at
#                "monomial" equals slot_form (and the combination stays
#                nonzero); the quoted full-coefficient form is recorded
#   nonzero      the combination must not vanish (mirror-case bullets)
CLAIM_ROWS = (
    ((0, 2, 0, 2), ({"kind": "slot", "condition": None, "monomial": (5, 7),
                     "slot_power": 1, "slot_form": _vf_row1_slot,
                     "quoted_form": _cf_row1},)),
    ((1, 1, 0, 2), ({"kind": "coeff", "condition": None, "monomial": (6, 5),
                     "form": _cf_row2_generic},
                    {"kind": "coeff_shift", "condition": "sub_a",
                     "monomial": (1, 7), "verified_monomial": (1, 8),
                     "form": _cf_row2_sub_a},
                    {"kind": "coeff", "condition": "sub_ab", "monomial": (7, 7),
                     "form": _cf_row2_sub_ab})),
    ((1, 2, 0, 2), _NONZERO_CASCADE),
    ((0, 2, 1, 1), ({"kind": "coeff", "condition": None, "monomial": (7, 8),
                     "form": _cf_row4},)),
    ((1, 2, 1, 1), _NONZERO_CASCADE),
    ((0, 2, 2, 0), ({"kind": "slot", "condition": None, "monomial": (5, 7),
                     "slot_power": 1, "slot_form": _vf_row6_slot,
                     "quoted_form": _cf_row6},)),
    ((1, 1, 2, 0), _NONZERO_CASCADE),
    ((1, 2, 2, 0), _NONZERO_CASCADE),
    ((0, 1, 0, 1), ({"kind": "coeff", "condition": None, "monomial": (1, 7),
                     "form": _cf_row9},)),
    ((1, 0, 0, 1), ({"kind": "coeff", "condition": None, "monomial": (7, 0),
                     "form": _cf_row10},)),
    ((0, 0, 1, 0), ({"kind": "coeff", "condition": None, "monomial": (1, 3),
                     "form": _cf_row11},)),
    ((1, 0, 1, 0), ({"kind": "coeff", "condition": None, "monomial": (7, 0),
                     "form": _cf_row10},)),
)


def _conditioned_pair(tw: FieldTower, condition: str | None,
                      fallback: TrinomialParams) -> TrinomialParams | None:
    """Deterministic smallest pair satisfying a side condition."""
    if condition is None:
        return fallback
    if condition == "sub_a":
        for b in range(1, tw.n):
            if tw.norm(b) == 1:
                continue
            a = tw.pow(b, 1 + tw.q)
            return TrinomialParams(ExtElem(tw, a), ExtElem(tw, b))
        return None
    if condition == "sub_ab":
        if 3 * tw.m <= 18:
            norm_one = (b for b in tw.norm_one_elements() if b != 1)
        else:
            # avoid materialising the whole norm-one subgroup: y^(q-1) has
            # norm 1, and the first y outside F_q gives a value != 1
            norm_one = (tw.pow(y, tw.q - 1) for y in range(2, tw.n)
                        if tw.frob(y) != y)
        for b in norm_one:
            a = tw.pow(b, 1 + tw.q)
            if a:
                return TrinomialParams(ExtElem(tw, a), ExtElem(tw, b))
        return None
    raise ValueError("unknown side condition %r" % condition)


def _lambda_slot(g: GDecomposition, c: FactorCandidate, power: int) -> MultiPoly:
    """The lambda^power part of the cleared combination (lambda stripped)."""
    tw = g.params.tower
    eps = c.eps_poly(tw)
    base = (g.m_star ** c.l) * (g.n_star ** c.k)
    parts = {3: g.alpha * base ** 3,
             2: g.beta * base.square() * eps,
             1: g.gamma * base * eps.square(),
             0: g.delta * eps ** 3}
    return parts[power]


def _mono_key(mono) -> tuple:
    return (0, 0, 0, mono[0], mono[1], 0)


def verify_claim_table(p: TrinomialParams,
                       lambdas: list[ExtElem] | None = None) -> list[dict]:
    """Check every claim-table row; returns one report dict per row.

    Unconditioned steps run at p itself; side-condition steps run at the
    smallest pair of the tower satisfying the condition (the claims are
    vacuous elsewhere).  lambda sweeps over a deterministic nonzero set
    derived from (A, B) unless an explicit list is supplied.

    Every step reports the exact verified identity in "pass" and whether
    the quoted form matched verbatim in "quoted_match" (False exactly for
    the content-normalised steps explained in the table comment).
    """
    tw = p.tower
    gcache: dict[tuple[int, int], GDecomposition] = {}

    def gdec_for(pp: TrinomialParams) -> GDecomposition:
        key = (pp.A.v, pp.B.v)
        if key not in gcache:
            gcache[key] = derive_G(pp)
        return gcache[key]

    rows = []
    for exps, steps in CLAIM_ROWS:
        i, j, l, k = exps
        srep = []
        for step in steps:
            kind = step["kind"]
            condition = step["condition"]
            mono = step.get("monomial")
            pair = _conditioned_pair(tw, condition, p)
            entry = {
                "kind": kind,
                "condition": condition,
                "monomial": list(mono) if mono else None,
                "pass": True,
                "quoted_match": True,
                "mismatches": [],
            }
            if pair is None:
                entry["pass"] = False
                entry["mismatches"].append({"error": "no pair satisfies the condition"})
                srep.append(entry)
                continue
            entry["A"] = pair.A.encode()
            entry["B"] = pair.B.encode()
            gd = gdec_for(pair)
            lams = lambdas or default_lambdas(tw, pair.A, pair.B)
            entry["lambdas"] = [lm.encode() for lm in lams]

            if kind == "slot":
                cand = FactorCandidate(i=i, j=j, l=l, k=k, lam=tw.one())
                slot = _lambda_slot(gd, cand, step["slot_power"])
                got = slot.coeff_of(_mono_key(mono))
                want = step["slot_form"](tw, pair.A, pair.B)
                if got != want:
                    entry["pass"] = False
                    entry["mismatches"].append({"got": got.encode(),
                                                "expected": want.encode()})
                for lam in lams:
                    gt = gtilde(gd, FactorCandidate(i=i, j=j, l=l, k=k, lam=lam))
                    if gt.is_zero():
                        entry["pass"] = False
                        entry["mismatches"].append({"lambda": lam.encode(),
                                                    "error": "combination vanished"})
                    if gt.coeff_of(_mono_key(mono)) != step["quoted_form"](tw, pair.A, pair.B, lam):
                        entry["quoted_match"] = False
                srep.append(entry)
                continue

            if kind == "nonzero":
                for lam in lams:
                    gt = gtilde(gd, FactorCandidate(i=i, j=j, l=l, k=k, lam=lam))
                    if gt.is_zero():
                        entry["pass"] = False
                        entry["mismatches"].append({
                            "lambda": lam.encode(),
                            "error": "combination vanished; candidate would divide",
                        })
                srep.append(entry)
                continue

            vmono = step.get("verified_monomial", mono)
            entry["verified_monomial"] = list(vmono)
            for lam in lams:
                gt = gtilde(gd, FactorCandidate(i=i, j=j, l=l, k=k, lam=lam))
                want = step["form"](tw, pair.A, pair.B, lam)
                got = gt.coeff_of(_mono_key(vmono))
                if got != want:
                    entry["pass"] = False
                    entry["mismatches"].append({
                        "lambda": lam.encode(),
                        "got": got.encode(),
                        "expected": want.encode(),
                    })
                if vmono != mono and gt.coeff_of(_mono_key(mono)) != want:
                    entry["quoted_match"] = False
            srep.append(entry)
        cand0 = FactorCandidate(i=i, j=j, l=l, k=k, lam=tw.one())
        rows.append({
            "candidate": cand0.label(),
            "exponents": {"i": i, "j": j, "l": l, "k": k},
            "steps": srep,
            "pass": all(s["pass"] for s in srep),
        })

    rows.append(_lambda_chain_row(p, gcache, lambdas))
    return rows


def _lambda_chain_row(p: TrinomialParams, gcache, lambdas) -> dict:
    """The X0 + lam N_* cascade.

    Step 1 pins the Y1^4 coefficient for free lambda (quoted form holds
    verbatim).  Steps 2 and 3 pin the Y0^2 Y1^2 and Y0^2 Y1^3
    coefficients at lam = B^q / (A^(q+1) + B^q); verbatim these hold only
    after clearing by (A^(q+1)+B^q)/A, so the verified identities are

        (A^(q+1)+B^q) * coeff(Y0^2 Y1^2) = A^(2+q) (A^(1+2q) + B^(2q+q^2))
        (A^(q+1)+B^q) * coeff(Y0^2 Y1^3) = A^(2+q) B^q
                        (A^(1+q+q^2) + A^q B + A^(q^2) B^q + B^(1+q+q^2))

    which force the same two vanishing conclusions.
    """
    tw = p.tower
    A, B = p.A, p.B
    key = (A.v, B.v)
    if key not in gcache:
        gcache[key] = derive_G(p)
    gd = gcache[key]
    aq = A.frobenius()
    bq = B.frobenius()
    den = A * aq + bq  # A^(q+1) + B^q
    lams = lambdas or default_lambdas(tw, A, B)
    steps = []

    entry = {"kind": "coeff", "condition": None, "monomial": [0, 4],
             "A": A.encode(), "B": B.encode(),
             "lambdas": [lm.encode() for lm in lams],
             "pass": True, "quoted_match": True, "mismatches": []}
    for lam in lams:
        gt = gtilde(gd, FactorCandidate(0, 0, 0, 1, lam))
        got = gt.coeff_of(_mono_key((0, 4)))
        want = A * A * bq * (den * lam + bq)
        if got != want:
            entry["pass"] = False
            entry["mismatches"].append({"lambda": lam.encode(), "got": got.encode(),
                                        "expected": want.encode()})
    steps.append(entry)

    if den:
        lam_star = bq / den
        gt = gtilde(gd, FactorCandidate(0, 0, 0, 1, lam_star))
        u_term = A * (aq * aq) + (bq * bq) * B.frobenius(2)
        v_term = A.norm() + aq * B + A.frobenius(2) * bq + B.norm()
        cleared22 = A * A * aq * u_term
        cleared23 = A * A * aq * bq * v_term
        quoted22 = A * aq * den * u_term
        quoted23 = A * aq * bq * den * v_term
        for mono, cleared, quoted in (((2, 2), cleared22, quoted22),
                                      ((2, 3), cleared23, quoted23)):
            got = gt.coeff_of(_mono_key(mono))
            entry = {"kind": "coeff_cleared",
                     "condition": "lambda=B^q/(A^(q+1)+B^q)",
                     "monomial": list(mono), "A": A.encode(), "B": B.encode(),
                     "lambdas": [lam_star.encode()],
                     "pass": den * got == cleared,
                     "quoted_match": got == quoted,
                     "mismatches": []}
            if not entry["pass"]:
                entry["mismatches"].append({"lambda": lam_star.encode(),
                                            "got": got.encode(),
                                            "expected_cleared": cleared.encode()})
            steps.append(entry)

    return {
        "candidate": "X0 + l*N* (lambda chain)",
        "exponents": {"i": 0, "j": 0, "l": 0, "k": 1},
        "steps": steps,
        "pass": all(s["pass"] for s in steps),
    }


# ----------------------------------------------------------------------
# the two closed factorizations

def remark_cond1_factorization(p: TrinomialParams) -> dict:
    """Under cond1, split G_* into (A^qB+1)^2 times three linear factors.

    lambda_2 comes from the chain identity, lambda_1 and lambda_3 from
    coefficient matching on the quotient; the product is verified against
    G_* by an exact multiply-back.
    """
    if not cond1(p):
        raise ValueError("the three-factor split needs cond1 to hold")
    tw = p.tower
    A, B = p.A, p.B
    one = tw.one()
    gd = derive_G(p)
    x0p = variable(tw, X0)
    s = A.frobenius() * B + one
    den = A * A.frobenius() + B.frobenius()
    report = {"A": A.encode(), "B": B.encode(), "pass": False}
    if not den:
        report["error"] = "A^(q+1) + B^q vanished"
        return report
    lam2 = B.frobenius() / den
    f2 = x0p + gd.n_star.scale(lam2)
    q2 = gd.g_star.exact_div(f2)
    if q2 is None:
        report["error"] = "X0 + lambda2 N* does not divide G_*"
        return report
    c1 = q2.coeffs_in(X0).get(1)
    if c1 is None:
        report["error"] = "quotient lost its X0 term"
        return report
    rest = c1.exact_div((variable(tw, Y1) * gd.m_star).scale(s * s))
    if rest is None:
        report["error"] = "X0-coefficient of the quotient has the wrong shape"
        return report
    lam1 = rest.coeff_of((0, 0, 0, 0, 1, 0)) / A
    lam3 = rest.coeff_of((0, 0, 0, 1, 0, 0)) + lam1
    if not lam1 or not lam3:
        report["error"] = "degenerate lambda"
        return report
    f1 = monomial(tw, 1, (1, 0, 0, 1, 1, 0)) + (gd.m_star * gd.n_star).scale(lam1)
    f3 = monomial(tw, 1, (1, 0, 0, 0, 1, 0)) + gd.m_star.scale(lam3)
    product = (f1 * f2 * f3).scale(s * s)
    report.update({
        "lambda1": lam1.encode(),
        "lambda2": lam2.encode(),
        "lambda3": lam3.encode(),
        "pass": product == gd.g_star,
    })
    return report


def verify_factorization_aqb1(B: ExtElem) -> tuple[bool, dict]:
    """With A = B^(-q^2), check
    B^(2+q+2q^2) G = Mt Nt [(norm(B)+1) Y2 X0 + Mt][(norm(B)+1) Y1 X0 + B^q Nt]
    as an exact term-map identity (Nt, Mt the tilde quadrics)."""
    tw = B.tower
    if not B:
        raise ValueError("B must be nonzero")
    A = B.frobenius(2).inverse()
    p = TrinomialParams(A, B)
    gd = derive_G(p)
    nt = tilde_n(tw, B)
    mt = tilde_m(tw, B)
    c = B.norm() + tw.one()
    x0p = variable(tw, X0)
    f1 = (variable(tw, Y2) * x0p).scale(c) + mt
    f2 = (variable(tw, Y1) * x0p).scale(c) + nt.scale(B.frobenius())
    rhs = mt * nt * f1 * f2
    scale = B * B * B.frobenius() * (B.frobenius(2) * B.frobenius(2))
    lhs = gd.G.scale(scale)
    detail = {
        "B": B.encode(),
        "A": A.encode(),
        "norm_B": B.norm().encode(),
        "twist_consistency": mt == tilde_n(tw, B).frobenius_twist(),
        "equal": lhs == rhs,
    }
    return lhs == rhs, detail


# ----------------------------------------------------------------------
# curve points

def curve_point_count(p: TrinomialParams, max_examples: int = 5,
                      force: bool = False) -> tuple[int, list[tuple[str, str]]]:
    """Affine pairs (x, y) with x y (x+y) != 0 on which
    y^q (x^(q^2+1) + A x^(q^2+q) + B x^(q+1)) + x^q (...) vanishes.

    Evaluates the numerator literally (independently of the f-value
    table), so the count is a genuine second route to the permutation
    verdict.  Cost is q^6 evaluations; refuses m > 3 unless forced.
    """
    tw = p.tower
    if tw.m > 3 and not force:
        raise BudgetError("curve scan costs q^6 = 2^%d evaluations; "
                          "pass force to override" % (6 * tw.m))
    tb = get_tables(tw)
    n = tw.n
    xs = np.arange(n, dtype=np.int64)
    v_qq1 = tb.mul_vv(tb.FRB2, xs)       # x^(q^2+1)
    v_qqq = tb.mul_vv(tb.FRB2, tb.FRB1)  # x^(q^2+q)
    v_q1 = tb.mul_vv(tb.FRB1, xs)        # x^(q+1)
    pv = v_qq1 ^ tb.mul_sv(p.A.v, v_qqq) ^ tb.mul_sv(p.B.v, v_q1)
    log_p = tb.LOG[pv]
    log_q = tb.LOG[tb.FRB1]
    numer = (tb.EXPZ[log_p[:, None] + log_q[None, :]]
             ^ tb.EXPZ[log_q[:, None] + log_p[None, :]])
    off = numer == 0
    off[0, :] = False
    off[:, 0] = False
    np.fill_diagonal(off, False)
    count = int(off.sum())
    ex = np.argwhere(off)[:max_examples]
    examples = [(tw.format_elem(int(x)), tw.format_elem(int(y))) for x, y in ex]
    return count, examples


# ----------------------------------------------------------------------
# component membership

def _normalized_set(polys) -> frozenset:
    out = []
    for f in polys:
        lead = f.terms[f.leading_key()]
        g = f.scale(ExtElem(f.tower, f.tower.inv(lead)))
        out.append(frozenset(g.terms.items()))
    return frozenset(out)


def _orbit_of_u(sysm: SurfaceSystem) -> list[list[MultiPoly]]:
    tw = sysm.params.tower
    A, B = sysm.params.A, sysm.params.B
    y0, y1, y2 = (variable(tw, v) for v in (Y0, Y1, Y2))
    conic = y0 * y2 + A * (y1 * y2) + B * (y0 * y1)
    u = [variable(tw, X2), variable(tw, X0), conic]
    psi_u = [f.frobenius_twist() for f in u]
    psi2_u = [f.frobenius_twist() for f in psi_u]
    members = [u, [f.swap_xy() for f in u],
               psi_u, [f.swap_xy() for f in psi_u],
               psi2_u, [f.swap_xy() for f in psi2_u]]
    return members


def _sample_component_point(tw: FieldTower, polys, rng) -> list[int] | None:
    """A random projective point satisfying a component's equations.

    Components here are cut out by single variables, binomials v + w, and
    at most one quadric that is linear in some free variable.
    """
    fixed_zero = set()
    identify = {}
    quadric = None
    for f in polys:
        if f.degree() == 1 and f.num_terms() == 1:
            key = f.leading_key()
            var = max(range(6), key=lambda i: (key >> (6 * i)) & 0x3F)
            fixed_zero.add(var)
        elif f.degree() == 1 and f.num_terms() == 2:
            ks = sorted(f.sorted_keys())
            vs = []
            for key in f.sorted_keys():
                for i in range(6):
                    if (key >> (6 * i)) & 0x3F:
                        vs.append(i)
            identify[max(vs)] = min(vs)
        else:
            quadric = f
    for _ in range(64):
        pt = [rng.randrange(tw.n) for _ in range(6)]
        for v in fixed_zero:
            pt[v] = 0
        for v, w in identify.items():
            pt[v] = pt[w]
        if quadric is not None:
            target = None
            for v in range(6):
                if v in fixed_zero or v in identify:
                    continue
                if quadric.deg_in(v) == 1:
                    target = v
                    break
            if target is None:
                continue
            parts = quadric.coeffs_in(target)
            c1 = parts[1].eval_at(pt)
            if not c1:
                continue
            c0 = parts.get(0, MultiPoly.zero(tw)).eval_at(pt)
            pt[target] = (c0 / c1).v
        if any(pt):
            return pt
    return None


def component_membership(p: TrinomialParams, which: str = "all",
                         samples: int = 20, seed: int = 0) -> dict:
    """Sample points of the named component(s) and check them on the system.

    which: one of U1, U2, U3, U, orbit, all.  The orbit report also
    checks that the six twisted/swapped copies of U are pairwise distinct
    as (normalised) equation sets.
    """
    import random as _random
    tw = p.tower
    sysm = build_system(p)
    rng = _random.Random(seed)
    x_vars = [variable(tw, v) for v in (X0, X1, X2)]
    y_vars = [variable(tw, v) for v in (Y0, Y1, Y2)]
    u3 = [x_vars[i] + y_vars[i] for i in range(3)]
    orbit = _orbit_of_u(sysm)
    named = {
        "U1": [x_vars[0], x_vars[1], x_vars[2]],
        "U2": [y_vars[0], y_vars[1], y_vars[2]],
        "U3": u3,
        "U": orbit[0],
    }
    report: dict = {"which": which, "samples": samples, "pass": True}
    targets: list[tuple[str, list[MultiPoly]]] = []
    if which in ("U1", "U2", "U3", "U"):
        targets.append((which, named[which]))
    elif which == "orbit":
        targets.extend(("orbit[%d]" % idx, m) for idx, m in enumerate(orbit))
    elif which == "all":
        targets.extend(named.items())
        targets.extend(("orbit[%d]" % idx, m) for idx, m in enumerate(orbit))
    else:
        raise ValueError("which must be U1, U2, U3, U, orbit or all")

    comp_reports = []
    for name, polys in targets:
        on_system = 0
        tried = 0
        for _ in range(samples):
            pt = _sample_component_point(tw, polys, rng)
            if pt is None:
                continue
            tried += 1
            if all(not eq.eval_at(pt) for eq in sysm.equations()):
                on_system += 1
        ok = tried > 0 and on_system == tried
        comp_reports.append({"component": name, "points": tried,
                             "on_system": on_system, "pass": ok})
        report["pass"] = report["pass"] and ok
    report["components"] = comp_reports

    if which in ("orbit", "all"):
        distinct = len({_normalized_set(m) for m in orbit})
        report["orbit_distinct"] = distinct
        report["pass"] = report["pass"] and distinct == 6
    return report
