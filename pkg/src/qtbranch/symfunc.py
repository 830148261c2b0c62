"""Laurent polynomials in x_1..x_n over QQt and the symmetric bases.

Monomial, Macdonald and Hall-Littlewood bases; dominance-triangular basis
change; the Macdonald q-difference operator (the independent construction
oracle for the P basis); truncated infinite-product series; and the exact
constant-term inner product at t = q^k.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations

from qtbranch.coeffs import g_coeff, psi, psi_hl
from qtbranch.errors import ExpansionError, InvalidInput
from qtbranch.partitions import (
    check_partition,
    dominates,
    partitions_of,
    strip_zeros,
)
from qtbranch.qtalg import ONE, ZERO, QQt, _coerce

_GRLEX = lambda e: (sum(e), e)  # noqa: E731


class LaurentSym:
    """Sparse Laurent polynomial in n variables with QQt coefficients."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None, *, _clean=False):
        self.n = n
        if terms is None:
            terms = {}
        if _clean:
            self.terms = terms
        else:
            self.terms = {
                tuple(e): c for e, c in terms.items() if not (_coerce(c).is_zero())
            }
            self.terms = {e: _coerce(c) for e, c in self.terms.items()}

    # -- constructors --

    @classmethod
    def zero(cls, n: int) -> "LaurentSym":
        return cls(n, {}, _clean=True)

    @classmethod
    def one(cls, n: int) -> "LaurentSym":
        return cls(n, {(0,) * n: ONE}, _clean=True)

    @classmethod
    def monomial(cls, exps, coeff=ONE) -> "LaurentSym":
        c = _coerce(coeff)
        if c.is_zero():
            return cls.zero(len(exps))
        return cls(len(exps), {tuple(exps): c}, _clean=True)

    # -- ring ops --

    def __add__(self, other):
        if self.n != other.n:
            raise InvalidInput("variable counts differ")
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
        return LaurentSym(self.n, out, _clean=True)

    def __sub__(self, other):
        return self + other.scaled(-1)

    def __mul__(self, other):
        if isinstance(other, (int, QQt)):
            return self.scaled(other)
        if self.n != other.n:
            raise InvalidInput("variable counts differ")
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                c = ca * cb
                s = out.get(e)
                s = c if s is None else s + c
                if s.is_zero():
                    out.pop(e, None)
                else:
                    out[e] = s
        return LaurentSym(self.n, out, _clean=True)

    __rmul__ = __mul__

    def scaled(self, c) -> "LaurentSym":
        c = _coerce(c)
        if c.is_zero():
            return LaurentSym.zero(self.n)
        return LaurentSym(
            self.n, {e: v * c for e, v in self.terms.items()}, _clean=True
        )

    def mul_monomial(self, exps, coeff=ONE) -> "LaurentSym":
        c = _coerce(coeff)
        exps = tuple(exps)
        out = {}
        for e, v in self.terms.items():
            nv = v * c
            if not nv.is_zero():
                out[tuple(x + y for x, y in zip(e, exps))] = nv
        return LaurentSym(self.n, out, _clean=True)

    def shifted(self, m: int) -> "LaurentSym":
        """Multiply by (x_1 ... x_n)^m."""
        return self.mul_monomial((m,) * self.n)

    def map_coeffs(self, f) -> "LaurentSym":
        out = {}
        for e, c in self.terms.items():
            nc = f(c)
            if not nc.is_zero():
                out[e] = nc
        return LaurentSym(self.n, out, _clean=True)

    def squared_params(self) -> "LaurentSym":
        """Apply (q, t) -> (q^2, t^2) to every coefficient."""
        return self.map_coeffs(lambda c: c.squared())

    # -- queries --

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, LaurentSym)
            and self.n == other.n
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.terms.items(), key=lambda kv: kv[0]))))

    def coeff(self, exps) -> QQt:
        return self.terms.get(tuple(exps), ZERO)

    def total_degrees(self):
        return {sum(e) for e in self.terms}

    def xn_slice(self, e: int) -> "LaurentSym":
        """Coefficient of x_n^e, a Laurent polynomial in x_1..x_{n-1}."""
        out = {}
        for exps, c in self.terms.items():
            if exps[-1] == e:
                out[exps[:-1]] = c
        return LaurentSym(self.n - 1, out, _clean=True)

    def xn_exponents(self):
        return sorted({e[-1] for e in self.terms})

    def is_symmetric(self) -> bool:
        """Invariant under all adjacent transpositions of the exponents."""
        for i in range(self.n - 1):
            for e, c in self.terms.items():
                if e[i] == e[i + 1]:
                    continue
                swapped = list(e)
                swapped[i], swapped[i + 1] = swapped[i + 1], swapped[i]
                if self.terms.get(tuple(swapped), ZERO) != c:
                    return False
        return True

    def truncate_degree(self, d: int) -> "LaurentSym":
        return LaurentSym(
            self.n,
            {e: c for e, c in self.terms.items() if sum(e) <= d},
            _clean=True,
        )

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e, c in sorted(self.terms.items(), key=lambda kv: _GRLEX(kv[0]), reverse=True):
            mono = "*".join(
                f"x{i + 1}^{v}" if v != 1 else f"x{i + 1}"
                for i, v in enumerate(e)
                if v
            )
            bits.append(f"({c})*{mono}" if mono else f"({c})")
        return " + ".join(bits)

    # -- serialization --

    def to_json_obj(self):
        items = sorted(self.terms.items(), key=lambda kv: _GRLEX(kv[0]), reverse=True)
        return {"n": self.n, "terms": [[list(e), c.to_json_obj()] for e, c in items]}

    @classmethod
    def from_json_obj(cls, obj) -> "LaurentSym":
        return cls(
            int(obj["n"]),
            {
                tuple(int(x) for x in e): QQt.from_json_obj(c)
                for e, c in obj["terms"]
            },
        )


def monomial_sym(gamma, n: int) -> LaurentSym:
    """Monomial symmetric polynomial: sum of x^e over distinct permutations
    of gamma (padded with zeros to length n); gamma may have negative parts."""
    gamma = tuple(gamma)
    if len(gamma) > n:
        raise InvalidInput(f"{gamma} has more than {n} parts")
    padded = gamma + (0,) * (n - len(gamma))
    return LaurentSym(n, {e: ONE for e in set(permutations(padded))}, _clean=True)


def complete_h(r: int, n: int) -> LaurentSym:
    """One-row Schur polynomial s_r = h_r: all monomials of degree r."""
    out = LaurentSym.zero(n)
    for mu in partitions_of(r, max_len=n):
        out = out + monomial_sym(mu, n)
    if r == 0:
        out = LaurentSym.one(n)
    return out


@lru_cache(maxsize=None)
def macdonald_P(lam, n: int) -> LaurentSym:
    """Monic Macdonald polynomial P_lam(x_1..x_n; q, t), built by the
    one-variable branching recursion with psi coefficients."""
    lam = strip_zeros(check_partition(lam))
    if len(lam) > n:
        raise InvalidInput(f"{lam} needs more than {n} variables")
    if n == 0:
        return LaurentSym.one(0)
    if n == 1:
        return LaurentSym.monomial((lam[0] if lam else 0,))
    terms = {}
    drop = sum(lam)
    for mu in _interlacing_below(lam, n - 1):
        c = psi(lam, mu)
        if c.is_zero():
            continue
        sub = macdonald_P(mu, n - 1)
        e = drop - sum(mu)
        for exps, v in sub.terms.items():
            key = exps + (e,)
            s = terms.get(key)
            s = v * c if s is None else s + v * c
            terms[key] = s
    return LaurentSym(n, {k: v for k, v in terms.items() if not v.is_zero()}, _clean=True)


@lru_cache(maxsize=None)
def macdonald_P_sq(lam, n: int) -> LaurentSym:
    """P_lam(x; q^2, t^2)."""
    return macdonald_P(lam, n).squared_params()


@lru_cache(maxsize=None)
def hall_littlewood_P(lam, n: int) -> LaurentSym:
    """Hall-Littlewood polynomial P_lam(x_1..x_n; t) via the t-branching
    recursion; equals the q -> 0 limit of macdonald_P coefficientwise."""
    lam = strip_zeros(check_partition(lam))
    if len(lam) > n:
        raise InvalidInput(f"{lam} needs more than {n} variables")
    if n == 0:
        return LaurentSym.one(0)
    if n == 1:
        return LaurentSym.monomial((lam[0] if lam else 0,))
    terms = {}
    drop = sum(lam)
    for mu in _interlacing_below(lam, n - 1):
        c = psi_hl(lam, mu)
        if c.is_zero():
            continue
        sub = hall_littlewood_P(mu, n - 1)
        e = drop - sum(mu)
        for exps, v in sub.terms.items():
            key = exps + (e,)
            s = terms.get(key)
            s = v * c if s is None else s + v * c
            terms[key] = s
    return LaurentSym(n, {k: v for k, v in terms.items() if not v.is_zero()}, _clean=True)


@lru_cache(maxsize=None)
def hall_littlewood_P_sq(lam, n: int) -> LaurentSym:
    """P_lam(x; t^2)."""
    return hall_littlewood_P(lam, n).squared_params()


def _interlacing_below(lam, length: int):
    """Partitions mu with mu interlacing lam and at most `length` parts."""
    lam = strip_zeros(lam)
    k = min(len(lam), length)
    out = []

    def rec(j, prev, acc):
        if j == k:
            out.append(strip_zeros(acc))
            return
        hi = min(lam[j], prev)
        lo = lam[j + 1] if j + 1 < len(lam) else 0
        for v in range(hi, lo - 1, -1):
            rec(j + 1, v, acc + (v,))

    if len(lam) <= length + 1:
        if lam:
            rec(0, lam[0], ())
        else:
            out.append(())
    return out


def schur_poly(lam, n: int) -> LaurentSym:
    """Schur polynomial from the bialternant ratio of alternants."""
    lam = strip_zeros(check_partition(lam))
    if len(lam) > n:
        raise InvalidInput(f"{lam} needs more than {n} variables")
    full = lam + (0,) * (n - len(lam))
    delta = tuple(range(n - 1, -1, -1))
    num = _alternant(tuple(a + b for a, b in zip(full, delta)), n)
    den = _alternant(delta, n)
    return ls_divexact(num, den)


def _alternant(exps, n):
    out = {}
    for sigma in permutations(range(n)):
        sign = _perm_sign(sigma)
        e = tuple(exps[sigma[i]] for i in range(n))
        c = out.get(e, ZERO) + QQt.from_int(sign)
        if c.is_zero():
            out.pop(e, None)
        else:
            out[e] = c
    return LaurentSym(n, out, _clean=True)


def _perm_sign(sigma):
    sign = 1
    seen = [False] * len(sigma)
    for i in range(len(sigma)):
        if seen[i]:
            continue
        j, clen = i, 0
        while not seen[j]:
            seen[j] = True
            j = sigma[j]
            clen += 1
        if clen % 2 == 0:
            sign = -sign
    return sign


def ls_divexact(f: LaurentSym, g: LaurentSym) -> LaurentSym:
    """Exact division of Laurent polynomials; raises when not divisible."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if f.is_zero():
        return LaurentSym.zero(f.n)
    n = f.n
    shift_f = [min(e[i] for e in f.terms) for i in range(n)]
    shift_g = [min(e[i] for e in g.terms) for i in range(n)]
    fterms = {tuple(x - s for x, s in zip(e, shift_f)): c for e, c in f.terms.items()}
    gterms = {tuple(x - s for x, s in zip(e, shift_g)): c for e, c in g.terms.items()}
    eg = max(gterms, key=_GRLEX)
    cg = gterms[eg]
    out = {}
    while fterms:
        ef = max(fterms, key=_GRLEX)
        de = tuple(a - b for a, b in zip(ef, eg))
        if any(x < 0 for x in de):
            raise ExpansionError(f"not divisible: stuck at exponent {ef}")
        cq = fterms[ef] / cg
        out[de] = cq
        for e, c in gterms.items():
            k = tuple(a + b for a, b in zip(e, de))
            s = fterms.get(k, ZERO) - cq * c
            if s.is_zero():
                fterms.pop(k, None)
            else:
                fterms[k] = s
    off = tuple(a - b for a, b in zip(shift_f, shift_g))
    return LaurentSym(n, {tuple(a + b for a, b in zip(e, off)): c for e, c in out.items()}, _clean=True)


def macdonald_operator(f: LaurentSym) -> LaurentSym:
    """Macdonald's first q-difference operator.

    D f = sum_i prod_{j != i} ((t x_i - x_j)/(x_i - x_j)) * f(.., q x_i, ..);
    on symmetric polynomial input the Vandermonde divides out exactly, and
    P_lam is the eigenfunction with eigenvalue sum_i q^{lam_i} t^{n-i}.
    """
    n = f.n
    if not f.is_symmetric():
        raise InvalidInput("Macdonald operator wants symmetric input")
    if n == 0 or f.is_zero():
        return f
    from qtbranch.qtalg import Q, T

    num = LaurentSym.zero(n)
    for i in range(n):
        shifted = LaurentSym(
            n,
            {
                e: c * QQt.monomial(1, e[i], 0)
                for e, c in f.terms.items()
            },
        )
        prod = shifted
        sign = 1
        for j in range(n):
            if j == i:
                continue
            factor = LaurentSym(
                n,
                {
                    _unit(n, i): T,
                    _unit(n, j): QQt.from_int(-1),
                },
                _clean=True,
            )
            prod = prod * factor
        for a in range(n):
            for b in range(a + 1, n):
                if a == i or b == i:
                    continue
                factor = LaurentSym(
                    n,
                    {_unit(n, a): ONE, _unit(n, b): QQt.from_int(-1)},
                    _clean=True,
                )
                prod = prod * factor
        if i % 2 == 1:
            prod = prod.scaled(-1)
        num = num + prod
    den = LaurentSym.one(n)
    for a in range(n):
        for b in range(a + 1, n):
            den = den * LaurentSym(
                n, {_unit(n, a): ONE, _unit(n, b): QQt.from_int(-1)}, _clean=True
            )
    return ls_divexact(num, den)


def _unit(n, i):
    e = [0] * n
    e[i] = 1
    return tuple(e)


def macdonald_eigenvalue(lam, n: int) -> QQt:
    lam = tuple(lam) + (0,) * (n - len(lam))
    out = ZERO
    for i in range(n):
        out = out + QQt.monomial(1, lam[i], n - 1 - i)
    return out


class PExpansion(dict):
    """Map partition -> QQt coefficient in a P basis."""

    def reconstruct(self, n: int, basis) -> LaurentSym:
        out = LaurentSym.zero(n)
        for mu, c in self.items():
            out = out + basis(mu, n).scaled(c)
        return out


_BASES = {
    ("macdonald", False): macdonald_P,
    ("macdonald", True): macdonald_P_sq,
    ("hall_littlewood", False): hall_littlewood_P,
    ("hall_littlewood", True): hall_littlewood_P_sq,
}


def expand_in_P(f: LaurentSym, basis: str = "macdonald", *, squared: bool = False,
                shift: int = 0) -> PExpansion:
    """Expand f in the chosen P basis by a dominance-triangular solve.

    Homogeneous slices are independent (the basis is homogeneous), so the
    solve peels the graded-lex-largest exponent of each slice; that exponent
    must be a partition or the support is not expressible.
    """
    key = (basis, squared)
    if key not in _BASES:
        raise InvalidInput(f"unknown basis {basis!r}")
    basis_fn = _BASES[key]
    if shift:
        f = f.shifted(shift)
    n = f.n
    out = PExpansion()
    rem = dict(f.terms)
    while rem:
        e = max(rem, key=_GRLEX)
        part = strip_zeros(e)
        if any(x < 0 for x in e) or any(
            part[i] < part[i + 1] for i in range(len(part) - 1)
        ):
            raise ExpansionError(f"support not partition-dominated at exponent {e}")
        c = rem[e]
        out[part] = c
        for ee, cc in basis_fn(part, n).terms.items():
            s = rem.get(ee, ZERO) - c * cc
            if s.is_zero():
                rem.pop(ee, None)
            else:
                rem[ee] = s
    return out


def pieri_coeff(gamma, mu, delta, n: int, *, squared: bool = False) -> QQt:
    """Coefficient of P_delta in m_gamma * P_mu (n variables).

    gamma may be a signature; a uniform monomial shift moves the product to
    partition support, using P_{nu + m 1^n} = (x_1..x_n)^m P_nu.
    """
    gamma = tuple(gamma)
    mu = strip_zeros(mu)
    delta = strip_zeros(delta)
    if not gamma or gamma == (0,) * len(gamma):
        return ONE if delta == mu else ZERO
    basis = macdonald_P_sq if squared else macdonald_P
    m = max(0, -min(gamma))
    f = monomial_sym(gamma, n) * basis(mu, n)
    exp = expand_in_P(f, "macdonald", squared=squared, shift=m)
    target = strip_zeros(tuple(x + m for x in delta + (0,) * (n - len(delta))))
    return exp.get(target, ZERO)


@lru_cache(maxsize=None)
def cauchy_factor(n: int, D: int) -> LaurentSym:
    """prod_{i=1}^{n} sum_{m=0}^{D} g((m); q^2, t^2) x_i^m, truncated to
    total degree D; the per-variable coefficients come from the q-binomial
    theorem applied to (q^2 x; q^2)_inf / (t^2 x; q^2)_inf."""
    if D < 0:
        raise InvalidInput("cauchy_factor wants D >= 0")
    coeffs = [g_coeff((m,), squared=True) for m in range(D + 1)]
    out = LaurentSym.one(n)
    for i in range(n):
        var = LaurentSym(
            n,
            {tuple(m if k == i else 0 for k in range(n)): coeffs[m] for m in range(D + 1)},
        )
        out = (out * var).truncate_degree(D)
    return out


def g_poly(r: int, n: int) -> LaurentSym:
    """The degree-r one-row element: sum over partitions mu of r of
    prod_i (t; q)_{mu_i} / (q; q)_{mu_i} times m_mu(x_1..x_n)."""
    if r < 0:
        raise InvalidInput("g_poly wants r >= 0")
    if r == 0:
        return LaurentSym.one(n)
    from qtbranch import kernel as K

    out = LaurentSym.zero(n)
    for mu in partitions_of(r, max_len=n):
        num = dict(K.P_ONE)
        den = dict(K.P_ONE)
        for part in mu:
            for i in range(part):
                num = K.p_mul(num, K.binomial(i, 1))
                den = K.p_mul(den, K.binomial(i + 1, 0))
        out = out + monomial_sym(mu, n).scaled(QQt(num, den))
    return out


def ct_inner(f: LaurentSym, g: LaurentSym, k: int) -> QQt:
    """Constant term of f(x) g(1/x) Delta(x; q, q^k): the torus inner product
    at t = q^k, where the density is the finite Laurent polynomial
    prod_{i != j} (x_i/x_j; q)_k.  Unnormalized; use ratios."""
    n = f.n
    ginv = LaurentSym(n, {tuple(-x for x in e): c for e, c in g.terms.items()}, _clean=True)
    prod = f * ginv
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for m in range(k):
                e = [0] * n
                e[i], e[j] = 1, -1
                factor = LaurentSym(
                    n,
                    {(0,) * n: ONE, tuple(e): QQt.monomial(-1, m, 0)},
                    _clean=True,
                )
                prod = prod * factor
    return prod.coeff((0,) * n)
