"""Sparse polynomial algebra over F_{q^3} in X0, X1, X2, Y0, Y1, Y2.

Terms live in a dict keyed by the exponent 6-tuple packed into a single
integer (6 bits per variable, so every individual exponent must stay
below 64 -- degrees in this artifact never exceed 15).  Coefficients are
stored as packed field integers; zero coefficients are never stored.
Addition is xor on coefficients (characteristic 2).

The canonical term order is graded lexicographic with
X0 > X1 > X2 > Y0 > Y1 > Y2; it drives printing, leading-term selection
and exact division.  Values are immutable after construction: every
operation allocates a fresh polynomial.
"""

from __future__ import annotations

from .gf import ExtElem, FieldTower

__all__ = [
    "MultiPoly", "variable", "constant", "monomial",
    "X0", "X1", "X2", "Y0", "Y1", "Y2", "VAR_NAMES",
    "NotDivisible", "equal_on_random_points",
]

VAR_NAMES = ("X0", "X1", "X2", "Y0", "Y1", "Y2")
X0, X1, X2, Y0, Y1, Y2 = range(6)

_SHIFTS = tuple(6 * i for i in range(6))
_FIELD = 0x3F


class NotDivisible(Exception):
    """Raised by MultiPoly.exact_div_or_raise when no exact quotient exists."""


def _pack_exps(exps) -> int:
    key = 0
    for e, sh in zip(exps, _SHIFTS):
        if not 0 <= e <= _FIELD:
            raise ValueError("exponent out of the packable range: %r" % (exps,))
        key |= e << sh
    return key


def _unpack_key(key: int) -> tuple[int, ...]:
    return tuple((key >> sh) & _FIELD for sh in _SHIFTS)


def _total_deg(key: int) -> int:
    t = 0
    while key:
        t += key & _FIELD
        key >>= 6
    return t


def _order_tuple(key: int):
    e = _unpack_key(key)
    return (sum(e),) + e


class MultiPoly:
    """Immutable sparse polynomial over one field tower."""

    __slots__ = ("tower", "terms")

    def __init__(self, tower: FieldTower, terms: dict[int, int] | None = None):
        self.tower = tower
        self.terms = terms if terms is not None else {}

    # -- constructors -------------------------------------------------

    @classmethod
    def from_terms(cls, tower: FieldTower, mapping: dict) -> "MultiPoly":
        terms: dict[int, int] = {}
        for exps, coeff in mapping.items():
            v = coeff.v if isinstance(coeff, ExtElem) else int(coeff)
            if v:
                key = _pack_exps(exps)
                w = terms.get(key, 0) ^ v
                if w:
                    terms[key] = w
                else:
                    terms.pop(key, None)
        return cls(tower, terms)

    @classmethod
    def zero(cls, tower: FieldTower) -> "MultiPoly":
        return cls(tower, {})

    # -- basics --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (isinstance(other, MultiPoly) and other.tower is self.tower
                and other.terms == self.terms)

    def __hash__(self):
        return hash((id(self.tower), frozenset(self.terms.items())))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(_total_deg(k) for k in self.terms)

    def deg_in(self, var: int) -> int:
        if not self.terms:
            return -1
        sh = _SHIFTS[var]
        return max((k >> sh) & _FIELD for k in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {_total_deg(k) for k in self.terms}
        return len(degs) <= 1

    def involves(self, var: int) -> bool:
        sh = _SHIFTS[var]
        return any((k >> sh) & _FIELD for k in self.terms)

    def num_terms(self) -> int:
        return len(self.terms)

    def leading_key(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms, key=_order_tuple)

    def coeff_of(self, exps) -> ExtElem:
        return ExtElem(self.tower, self.terms.get(_pack_exps(exps), 0))

    # -- ring operations -------------------------------------------------

    def _chk(self, other: "MultiPoly") -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            raise TypeError("expected MultiPoly, got %r" % (other,))
        if other.tower is not self.tower:
            raise ValueError("polynomials from different towers")
        return other

    def __add__(self, other):
        other = self._chk(other)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out = dict(a)
        for k, v in b.items():
            w = out.get(k, 0) ^ v
            if w:
                out[k] = w
            else:
                del out[k]
        return MultiPoly(self.tower, out)

    __sub__ = __add__  # characteristic 2

    def __mul__(self, other):
        if isinstance(other, ExtElem):
            return self.scale(other)
        other = self._chk(other)
        mul = self.tower.mul
        out: dict[int, int] = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                k = ka + kb  # per-variable addition: 6-bit fields, no carry here
                w = out.get(k, 0) ^ mul(ca, cb)
                if w:
                    out[k] = w
                else:
                    del out[k]
        return MultiPoly(self.tower, out)

    def __rmul__(self, other):
        if isinstance(other, ExtElem):
            return self.scale(other)
        return NotImplemented

    def scale(self, c: ExtElem | int) -> "MultiPoly":
        v = c.v if isinstance(c, ExtElem) else int(c)
        if v == 0:
            return MultiPoly.zero(self.tower)
        if v == 1:
            return self
        mul = self.tower.mul
        return MultiPoly(self.tower, {k: mul(cv, v) for k, cv in self.terms.items()})

    def square(self) -> "MultiPoly":
        # (sum c_k X^k)^2 = sum c_k^2 X^(2k) in characteristic 2
        mul = self.tower.mul
        return MultiPoly(self.tower,
                         {self._double_key(k): mul(c, c) for k, c in self.terms.items()})

    @staticmethod
    def _double_key(key: int) -> int:
        out = 0
        for sh in _SHIFTS:
            e = (key >> sh) & _FIELD
            if 2 * e > _FIELD:
                raise ValueError("exponent overflow while squaring")
            out |= (2 * e) << sh
        return out

    def __pow__(self, e: int) -> "MultiPoly":
        if e < 0:
            raise ValueError("negative polynomial power")
        r = constant(self.tower, 1)
        b = self
        while e:
            if e & 1:
                r = r * b
            e >>= 1
            if e:
                b = b.square()
        return r

    # -- structure maps ----------------------------------------------------

    def frobenius_twist(self) -> "MultiPoly":
        """Raise coefficients to the q-th power and shift both variable blocks.

        X0 -> X1 -> X2 -> X0 and Y0 -> Y1 -> Y2 -> Y0 (an occurrence of X0
        becomes X1, and so on); applied three times this is the identity.
        """
        frob = self.tower.frob
        out: dict[int, int] = {}
        for k, c in self.terms.items():
            e = _unpack_key(k)
            nk = _pack_exps((e[2], e[0], e[1], e[5], e[3], e[4]))
            out[nk] = frob(c)
        return MultiPoly(self.tower, out)

    def swap_xy(self) -> "MultiPoly":
        """Exchange the X block with the Y block."""
        out: dict[int, int] = {}
        for k, c in self.terms.items():
            e = _unpack_key(k)
            out[_pack_exps((e[3], e[4], e[5], e[0], e[1], e[2]))] = c
        return MultiPoly(self.tower, out)

    def at_y2_one(self) -> "MultiPoly":
        """Substitute Y2 = 1.  Only defined for polynomials free of X1, X2."""
        if self.involves(X1) or self.involves(X2):
            raise ValueError("dehomogenisation at Y2=1 requires a polynomial in X0, Y0, Y1, Y2")
        sh = _SHIFTS[Y2]
        out: dict[int, int] = {}
        for k, c in self.terms.items():
            nk = k & ~(_FIELD << sh)
            w = out.get(nk, 0) ^ c
            if w:
                out[nk] = w
            else:
                del out[nk]
        return MultiPoly(self.tower, out)

    # -- substitution and division -----------------------------------------

    def coeffs_in(self, var: int) -> dict[int, "MultiPoly"]:
        """Split into coefficient polynomials of var^k (var removed)."""
        sh = _SHIFTS[var]
        out: dict[int, dict[int, int]] = {}
        for k, c in self.terms.items():
            e = (k >> sh) & _FIELD
            out.setdefault(e, {})[k & ~(_FIELD << sh)] = c
        return {e: MultiPoly(self.tower, t) for e, t in out.items()}

    def substitute(self, var: int, num: "MultiPoly", den: "MultiPoly"):
        """Evaluate at var = num/den; returns (numerator, den^d) unreduced.

        d is the degree of var in self; the numerator is
        sum_k coeff_k * num^k * den^(d-k).  No factor stripping happens
        here -- cancellations are a separate, explicit step.
        """
        self._chk(num)
        self._chk(den)
        if den.is_zero():
            raise ZeroDivisionError("substitution denominator is zero")
        d = self.deg_in(var)
        if d <= 0:
            return self, constant(self.tower, 1)
        parts = self.coeffs_in(var)
        num_pows = [constant(self.tower, 1)]
        den_pows = [constant(self.tower, 1)]
        for _ in range(d):
            num_pows.append(num_pows[-1] * num)
            den_pows.append(den_pows[-1] * den)
        acc = MultiPoly.zero(self.tower)
        for k, coeff in parts.items():
            acc = acc + coeff * num_pows[k] * den_pows[d - k]
        return acc, den_pows[d]

    def exact_div(self, divisor: "MultiPoly") -> "MultiPoly | None":
        """Quotient q with self = divisor * q, or None when not divisible.

        Leading-term elimination in the graded-lex order, followed by a
        multiply-back verification.
        """
        divisor = self._chk(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return self
        tower = self.tower
        mul = tower.mul
        lead_b = divisor.leading_key()
        inv_lb = tower.inv(divisor.terms[lead_b])
        rem = dict(self.terms)
        quo: dict[int, int] = {}
        while rem:
            lead_r = max(rem, key=_order_tuple)
            qk = self._key_sub(lead_r, lead_b)
            if qk is None:
                return None
            qc = mul(rem[lead_r], inv_lb)
            quo[qk] = quo.get(qk, 0) ^ qc
            for kb, cb in divisor.terms.items():
                k = qk + kb
                w = rem.get(k, 0) ^ mul(qc, cb)
                if w:
                    rem[k] = w
                else:
                    rem.pop(k, None)
        quotient = MultiPoly(tower, {k: c for k, c in quo.items() if c})
        if (quotient * divisor).terms != self.terms:  # guards term-order pitfalls
            return None
        return quotient

    def exact_div_or_raise(self, divisor: "MultiPoly", what: str = "") -> "MultiPoly":
        q = self.exact_div(divisor)
        if q is None:
            raise NotDivisible(what or "polynomial is not divisible")
        return q

    @staticmethod
    def _key_sub(ka: int, kb: int) -> int | None:
        out = 0
        for sh in _SHIFTS:
            d = ((ka >> sh) & _FIELD) - ((kb >> sh) & _FIELD)
            if d < 0:
                return None
            out |= d << sh
        return out

    # -- evaluation -----------------------------------------------------

    def eval_at(self, point) -> ExtElem:
        """Exact evaluation at six field elements (ExtElem or packed int)."""
        tower = self.tower
        vals = [p.v if isinstance(p, ExtElem) else int(p) for p in point]
        if len(vals) != 6:
            raise ValueError("evaluation point must have 6 coordinates")
        pows = [[1] for _ in range(6)]
        for i in range(6):
            d = self.deg_in(i)
            for _ in range(max(d, 0)):
                pows[i].append(tower.mul(pows[i][-1], vals[i]))
        acc = 0
        for k, c in self.terms.items():
            t = c
            for i, sh in enumerate(_SHIFTS):
                e = (k >> sh) & _FIELD
                if e:
                    t = tower.mul(t, pows[i][e])
                    if t == 0:
                        break
            acc ^= t
        return ExtElem(tower, acc)

    # -- presentation ------------------------------------------------------

    def sorted_keys(self) -> list[int]:
        return sorted(self.terms, key=_order_tuple, reverse=True)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k in self.sorted_keys():
            c = self.terms[k]
            mono = " ".join("%s^%d" % (VAR_NAMES[i], e) if e > 1 else VAR_NAMES[i]
                            for i, e in enumerate(_unpack_key(k)) if e)
            cs = self.tower.format_elem(c)
            parts.append("(%s)" % cs if not mono else "(%s) %s" % (cs, mono))
        return " + ".join(parts)

    def terms_json(self) -> list:
        """Canonically ordered [[exponents], coeff-encoding] pairs."""
        return [[list(_unpack_key(k)), self.tower.format_elem(self.terms[k])]
                for k in self.sorted_keys()]

    def __repr__(self):
        text = self.to_text()
        if len(text) > 120:
            text = text[:117] + "..."
        return "MultiPoly(%s)" % text


def constant(tower: FieldTower, c) -> MultiPoly:
    v = c.v if isinstance(c, ExtElem) else int(c)
    return MultiPoly(tower, {0: v} if v else {})


def variable(tower: FieldTower, var: int) -> MultiPoly:
    return MultiPoly(tower, {_pack_exps(tuple(1 if i == var else 0 for i in range(6))): 1})


def monomial(tower: FieldTower, coeff, exps) -> MultiPoly:
    v = coeff.v if isinstance(coeff, ExtElem) else int(coeff)
    return MultiPoly(tower, {_pack_exps(exps): v} if v else {})


def equal_on_random_points(a: MultiPoly, b: MultiPoly, rng, error_bits: int = 30) -> bool:
    """Probabilistic equality: agreement on enough uniform points of F_{q^3}^6.

    The number of sample points N is chosen so that (d/q^3)^N < 2^-error_bits
    for d = max degree; requires d < q^3.  Structural comparison should be
    preferred whenever both sides are explicitly constructed.
    """
    if a.tower is not b.tower:
        raise ValueError("polynomials from different towers")
    d = max(a.degree(), b.degree(), 1)
    size = a.tower.n
    if d >= size:
        raise ValueError("field too small for a meaningful identity test")
    import math
    per_point = math.log2(size / d)
    npoints = max(1, math.ceil(error_bits / per_point))
    for _ in range(npoints):
        pt = [rng.randrange(size) for _ in range(6)]
        if a.eval_at(pt) != b.eval_at(pt):
            return False
    return True
