"""Exact arithmetic in Q(q,t) plus finite q-series primitives.

QQt is a rational function in two formal variables with arbitrary-precision
rational coefficients, kept in a canonical form: numerator and denominator
are integer polynomials with gcd 1 (polynomial gcd, integer content
included) and the denominator has positive leading coefficient under
graded-lex with q > t.  Equality of canonical forms is structural.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as _int_gcd

from qtbranch import kernel as K
from qtbranch.errors import PoleError

_GRLEX = lambda k: (k[0] + k[1], k[0])  # noqa: E731


def _poly_from_pairs(pairs):
    """Build a kernel dict from {(qe, te): Fraction|int}, clearing denominators.

    Returns (poly, extra_den) where extra_den is the positive integer the
    input was multiplied by.
    """
    den = 1
    for v in pairs.values():
        f = Fraction(v)
        den = den * f.denominator // _int_gcd(den, f.denominator)
    poly = {}
    for k, v in pairs.items():
        f = Fraction(v)
        c = f.numerator * (den // f.denominator)
        if c:
            poly[k] = c
    return poly, den


class QQt:
    """Canonical-form rational function in (q, t) over the rationals."""

    __slots__ = ("num", "den", "_key")

    def __init__(self, num, den=None, *, _canonical=False):
        if den is None:
            den = dict(K.P_ONE)
        if _canonical:
            self.num = num
            self.den = den
        else:
            self.num, self.den = _canonicalize(num, den)
        self._key = None

    # -- constructors --

    @classmethod
    def from_int(cls, n: int) -> "QQt":
        return cls({(0, 0): n} if n else {}, dict(K.P_ONE), _canonical=True)

    @classmethod
    def from_fraction(cls, f) -> "QQt":
        f = Fraction(f)
        num = {(0, 0): f.numerator} if f.numerator else {}
        return cls(num, {(0, 0): f.denominator}, _canonical=True)

    @classmethod
    def monomial(cls, coeff, q_exp: int = 0, t_exp: int = 0) -> "QQt":
        """coeff * q^q_exp * t^t_exp with Laurent exponents allowed."""
        c = Fraction(coeff)
        if not c:
            return ZERO
        nq, nt = max(q_exp, 0), max(t_exp, 0)
        dq, dt = max(-q_exp, 0), max(-t_exp, 0)
        return cls({(nq, nt): c.numerator}, {(dq, dt): c.denominator}, _canonical=True)

    @classmethod
    def from_poly_pairs(cls, pairs) -> "QQt":
        """Polynomial from {(qe, te): rational coefficient}."""
        num, den = _poly_from_pairs(pairs)
        return cls(num, {(0, 0): den})

    # -- predicates, equality --

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def key(self):
        if self._key is None:
            self._key = (
                tuple(sorted(self.num.items())),
                tuple(sorted(self.den.items())),
            )
        return self._key

    def __eq__(self, other):
        if isinstance(other, int):
            other = QQt.from_int(other)
        if not isinstance(other, QQt):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash(self.key())

    # -- arithmetic --

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.num:
            return other
        if not other.num:
            return self
        if self.den == other.den:
            return QQt(K.p_add(self.num, other.num), dict(self.den))
        g = K.p_gcd(self.den, other.den)
        da = K.p_divexact(self.den, g)
        db = K.p_divexact(other.den, g)
        num = K.p_add(K.p_mul(self.num, db), K.p_mul(other.num, da))
        den = K.p_mul(K.p_mul(da, db), g)
        return QQt(num, den)

    __radd__ = __add__

    def __neg__(self):
        return QQt(K.p_neg(self.num), dict(self.den), _canonical=True)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.num or not other.num:
            return ZERO
        # cross-cancel first: keeps gcd inputs small
        g1 = K.p_gcd(self.num, other.den)
        g2 = K.p_gcd(other.num, self.den)
        na = K.p_divexact(self.num, g1)
        nb = K.p_divexact(other.num, g2)
        da = K.p_divexact(self.den, g2)
        db = K.p_divexact(other.den, g1)
        return QQt(K.p_mul(na, nb), K.p_mul(da, db), _canonical=True)

    __rmul__ = __mul__

    def inverse(self) -> "QQt":
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        num, den = dict(self.den), dict(self.num)
        lk = max(den, key=_GRLEX)
        if den[lk] < 0:
            num, den = K.p_neg(num), K.p_neg(den)
        return QQt(num, den, _canonical=True)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    # -- substitutions --

    def limit_q0(self) -> "QQt":
        """Substitute q = 0; PoleError when the canonical denominator vanishes."""
        num0 = {k: v for k, v in self.num.items() if k[0] == 0}
        den0 = {k: v for k, v in self.den.items() if k[0] == 0}
        if not den0:
            raise PoleError("pole at q = 0")
        return QQt(num0, den0)

    def subs_t_qk(self, k: int) -> "QQt":
        """t -> q^k (k >= 0).  PoleError on a vanishing denominator."""
        num = _subs_exp(self.num, lambda qe, te: (qe + k * te, 0))
        den = _subs_exp(self.den, lambda qe, te: (qe + k * te, 0))
        if not den:
            raise PoleError(f"pole at t = q^{k}")
        return QQt(num, den)

    def subs_q_t(self) -> "QQt":
        """q -> t.  PoleError on a vanishing denominator."""
        num = _subs_exp(self.num, lambda qe, te: (0, qe + te))
        den = _subs_exp(self.den, lambda qe, te: (0, qe + te))
        if not den:
            raise PoleError("pole at q = t")
        return QQt(num, den)

    def squared(self) -> "QQt":
        """The substitution (q, t) -> (q^2, t^2): doubles every exponent."""
        num = {(2 * qe, 2 * te): v for (qe, te), v in self.num.items()}
        den = {(2 * qe, 2 * te): v for (qe, te), v in self.den.items()}
        return QQt(num, den, _canonical=True)

    def evaluate(self, qv, tv) -> Fraction:
        """Exact evaluation at rational (qv, tv)."""
        qv, tv = Fraction(qv), Fraction(tv)
        den = _eval_poly(self.den, qv, tv)
        if den == 0:
            raise PoleError(f"pole at (q, t) = ({qv}, {tv})")
        return _eval_poly(self.num, qv, tv) / den

    # -- presentation --

    def __repr__(self):
        n = _poly_str(self.num)
        if self.den == K.P_ONE:
            return n
        d = _poly_str(self.den)
        if len(self.num) > 1:
            n = f"({n})"
        if len(self.den) > 1:
            d = f"({d})"
        return f"{n}/{d}"

    def to_json_obj(self):
        return {"num": _poly_json(self.num), "den": _poly_json(self.den)}

    @classmethod
    def from_json_obj(cls, obj) -> "QQt":
        num = {(int(qe), int(te)): Fraction(c) for qe, te, c in obj["num"]}
        den = {(int(qe), int(te)): Fraction(c) for qe, te, c in obj["den"]}
        (pn, dn) = _poly_from_pairs(num)
        (pd, dd) = _poly_from_pairs(den)
        return cls(K.p_mul_int(pn, dd), K.p_mul_int(pd, dn))


def _canonicalize(num, den):
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return {}, dict(K.P_ONE)
    g = K.p_gcd(num, den)
    if g != K.P_ONE:
        num = K.p_divexact(num, g)
        den = K.p_divexact(den, g)
    if den[max(den, key=_GRLEX)] < 0:
        num, den = K.p_neg(num), K.p_neg(den)
    return num, den


def _coerce(x):
    if isinstance(x, QQt):
        return x
    if isinstance(x, int):
        return QQt.from_int(x)
    if isinstance(x, Fraction):
        return QQt.from_fraction(x)
    return NotImplemented


def _subs_exp(poly, f):
    out = {}
    for (qe, te), v in poly.items():
        k = f(qe, te)
        nv = out.get(k, 0) + v
        if nv:
            out[k] = nv
        else:
            del out[k]
    return out


def _eval_poly(poly, qv, tv):
    s = Fraction(0)
    for (qe, te), v in poly.items():
        s += v * qv**qe * tv**te
    return s


def _poly_json(poly):
    return [[qe, te, str(v)] for (qe, te), v in sorted(poly.items(), key=lambda kv: _GRLEX(kv[0]), reverse=True)]


def _poly_str(poly):
    if not poly:
        return "0"
    bits = []
    for (qe, te), v in sorted(poly.items(), key=lambda kv: _GRLEX(kv[0])):
        mono = "*".join(
            ([] if qe == 0 else [f"q^{qe}" if qe > 1 else "q"])
            + ([] if te == 0 else [f"t^{te}" if te > 1 else "t"])
        )
        if not mono:
            term = str(abs(v))
        elif abs(v) == 1:
            term = mono
        else:
            term = f"{abs(v)}*{mono}"
        bits.append(("- " if v < 0 else "+ ") + term)
    s = " ".join(bits)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]


ZERO = QQt.from_int(0)
ONE = QQt.from_int(1)
Q = QQt.monomial(1, 1, 0)
T = QQt.monomial(1, 0, 1)


@dataclass(frozen=True)
class QMonomial:
    """A single Laurent monomial c * q^a * t^b, used as a Pochhammer argument."""

    coeff: Fraction
    q_exp: int = 0
    t_exp: int = 0

    def as_qqt(self) -> QQt:
        return QQt.monomial(self.coeff, self.q_exp, self.t_exp)

    def times_pow(self, other: "QMonomial", i: int) -> QQt:
        return QQt.monomial(
            Fraction(self.coeff) * Fraction(other.coeff) ** i,
            self.q_exp + i * other.q_exp,
            self.t_exp + i * other.t_exp,
        )


def qmono(coeff, q_exp=0, t_exp=0) -> QMonomial:
    return QMonomial(Fraction(coeff), q_exp, t_exp)


def qpochhammer(a: QMonomial, base: QMonomial, m: int) -> QQt:
    """Finite Pochhammer (a; base)_m = prod_{i=0}^{m-1} (1 - a*base^i)."""
    if m < 0:
        raise ValueError("Pochhammer length must be >= 0")
    out = ONE
    for i in range(m):
        factor = ONE - a.times_pow(base, i)
        if abs(a.coeff) == 1:  # registers the factor's irreducible atoms
            K.binomial(a.q_exp + i * base.q_exp, a.t_exp + i * base.t_exp)
        out = out * factor
    return out


def _var_poly_pow(var: str, e: int):
    return {(e, 0)} if var == "q" else {(0, e)}


def phi_r(r: int, var: str = "t") -> QQt:
    """(1 - v)(1 - v^2)...(1 - v^r) in the named variable."""
    if r < 0:
        raise ValueError("phi_r wants r >= 0")
    vq = var == "q"
    out = dict(K.P_ONE)
    for i in range(1, r + 1):
        out = K.p_mul(out, K.binomial(i, 0) if vq else K.binomial(0, i))
    return QQt(out, dict(K.P_ONE), _canonical=True)


def qbinomial(n: int, k: int, var: str = "t") -> QQt:
    """Gaussian binomial coefficient in the named variable; 0 outside 0<=k<=n."""
    if k < 0 or k > n:
        return ZERO
    vq = var == "q"
    num = dict(K.P_ONE)
    den = dict(K.P_ONE)
    for i in range(1, k + 1):
        e = n - k + i
        num = K.p_mul(num, K.binomial(e, 0) if vq else K.binomial(0, e))
        den = K.p_mul(den, K.binomial(i, 0) if vq else K.binomial(0, i))
    # always an exact polynomial
    return QQt(K.p_divexact(num, den), dict(K.P_ONE), _canonical=True)


def limit_q0(f: QQt) -> QQt:
    return f.limit_q0()


def specialize_t_qk(f: QQt, k: int) -> QQt:
    return f.subs_t_qk(k)


def specialize_q_t(f: QQt) -> QQt:
    return f.subs_q_t()


def evaluate_at(f: QQt, qv, tv) -> Fraction:
    return f.evaluate(qv, tv)
