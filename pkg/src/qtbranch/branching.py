"""Branching coefficients of Macdonald trace functions and their limits.

The central objects: c(lam, mu; q, t), the coefficient of x_n^{|lam|-|mu|}
P_mu in the reduced trace-ratio identity R_n * P_lam; its q -> 0 limit in
three forms; the Pieri-route evaluation at t = q^k; per-pattern diagonal
coefficients; and the truncated trace series themselves.

All Macdonald-level quantities live in squared parameters (q^2, t^2), which
the underlying (q, t) formulas reach through exponent doubling.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from qtbranch.coeffs import (
    b_poly,
    b_poly_sig,
    d_poly,
    g_coeff,
    phi_hl,
    phi_qt,
    psi,
    psi_hl,
    sk,
    sk_sig,
)
from qtbranch.errors import CutoffError, InvalidInput
from qtbranch.partitions import (
    Chain,
    GTPattern,
    chain_from_gt_pattern,
    conjugate,
    partitions_between,
    partitions_of,
    signatures_below,
    strip_zeros,
)
from qtbranch.qtalg import ONE, ZERO, QQt, qbinomial
from qtbranch.symfunc import (
    LaurentSym,
    expand_in_P,
    macdonald_P_sq,
    monomial_sym,
    pieri_coeff,
)

__all__ = [
    "psi", "psi_hl", "phi_hl", "phi_qt", "sk", "sk_sig", "g_coeff",
    "b_poly", "d_poly", "omega", "omega_table", "c_qt", "c_hl",
    "a_pieri_route", "upper_gap_condition", "c_gt_pattern", "trace_series",
    "TraceSeries",
    "BranchTable", "branch_table", "canonical_shift", "ratio_series_part",
    "chain_sum_series", "verify_identity",
]


def canonical_shift(lam, mu, n: int):
    """Shift (lam, mu) by m*(1^n, 1^{n-1}) until every part of both is >= 1.

    Returns (lam', mu', m) with lam', mu' partitions of full lengths n and
    n-1; the branching coefficients are invariant under this shift.
    """
    lam = tuple(lam) + (0,) * (n - len(lam))
    mu = tuple(mu) + (0,) * (n - 1 - len(mu))
    if len(lam) != n:
        raise InvalidInput(f"{lam} does not fit ambient length {n}")
    entries = lam + mu if n > 1 else lam
    m = max(0, 1 - min(entries))
    return (
        tuple(x + m for x in lam),
        tuple(x + m for x in mu),
        m,
    )


# -- Omega: expansion of P_mu times the truncated product kernel --

_OMEGA_CACHE: dict = {}


def omega_table(mu, nvars: int, D: int):
    """All Omega(beta/mu) with |beta| <= |mu| + D at once, as a dict keyed by
    beta: expand P_mu(x; q^2, t^2) * cauchy_factor(nvars, D) in the squared
    Macdonald basis.  Cached; a larger-D table answers smaller-D queries."""
    from qtbranch.symfunc import cauchy_factor

    mu = strip_zeros(mu)
    key = (mu, nvars)
    cached = _OMEGA_CACHE.get(key)
    if cached is not None and cached[0] >= D:
        return cached[1]
    f = macdonald_P_sq(mu, nvars) * cauchy_factor(nvars, D)
    f = f.truncate_degree(sum(mu) + D)
    table = expand_in_P(f, "macdonald", squared=True)
    _OMEGA_CACHE[key] = (D, table)
    return table


def omega(beta, mu, D: int | None = None, nvars: int | None = None) -> QQt:
    """Coefficient of P_beta(x; q^2, t^2) in P_mu times the infinite product
    prod_i (q^2 x_i; q^2)_inf / (t^2 x_i; q^2)_inf, truncated at degree D.

    Stable in D once D >= |beta| - |mu|; zero when mu is not inside beta.
    """
    beta, mu = strip_zeros(beta), strip_zeros(mu)
    need = sum(beta) - sum(mu)
    if need < 0:
        return ZERO
    if D is None:
        D = need
    if D < need:
        raise CutoffError(f"cutoff {D} cannot reach |beta/mu| = {need}")
    if nvars is None:
        nvars = max(len(beta), len(mu), 1)
    return omega_table(mu, nvars, D).get(beta, ZERO)


# -- the branching coefficient, by sum formula and by extraction --

_CQT_CACHE: dict = {}


def c_qt(lam, mu, method: str = "eq12", cutoff: int | None = None) -> QQt:
    """Branching coefficient c(lam, mu; q, t) for a signature pair with
    ambient lengths (n, n-1).

    method 'eq12' evaluates d_mu * sum_beta psi(lam/beta)/d_beta *
    Omega(beta/mu) in squared parameters over mu <= beta interlacing lam;
    method 'extract' reads the coefficient off the reduced series identity
    R_n * P_lam.  Both agree; eq12 is the default and is cached.
    """
    lam = tuple(lam)
    n = len(lam)
    mu = tuple(mu) + (0,) * (n - 1 - len(mu))
    if len(mu) != n - 1:
        raise InvalidInput("mu must have ambient length one less than lam")
    if any(mu[j] > lam[j] for j in range(n - 1)):
        return ZERO
    lamp, mup, _ = canonical_shift(lam, mu, n)
    if method == "eq12":
        key = (lamp, mup)
        val = _CQT_CACHE.get(key)
        if val is None:
            val = _c_qt_eq12(lamp, mup, n)
            _CQT_CACHE[key] = val
        return val
    if method == "extract":
        return _c_qt_extract(lamp, mup, n, cutoff)
    raise InvalidInput(f"unknown method {method!r}")


def _c_qt_eq12(lamp, mup, n: int) -> QQt:
    betas = partitions_between(lamp, mup, n)
    if not betas:
        return ZERO
    Dmax = max(sum(b) for b in betas) - sum(mup)
    table = omega_table(strip_zeros(mup), n - 1, Dmax)
    total = ZERO
    for beta in betas:
        om = table.get(strip_zeros(beta), ZERO)
        if om.is_zero():
            continue
        term = psi(lamp, beta).squared() * om / d_poly(beta, n - 1).squared()
        total = total + term
    return d_poly(mup, n - 1).squared() * total


def ratio_series_part(n: int, d: int) -> LaurentSym:
    """Degree-d slice of the reduced trace-ratio series R_n: the coefficient
    of x_n^d, a Laurent polynomial sum_{|gamma| = d} g(gamma) m_{-gamma} in
    the first n-1 variables (squared parameters)."""
    out = LaurentSym.zero(n - 1)
    for gamma in partitions_of(d, max_len=n - 1):
        c = g_coeff(gamma, squared=True)
        out = out + monomial_sym(tuple(-x for x in gamma), n - 1).scaled(c)
    if d == 0:
        out = LaurentSym.one(n - 1)
    return out


def _c_qt_extract(lamp, mup, n: int, cutoff: int | None) -> QQt:
    e = sum(lamp) - sum(mup)
    if e < 0:
        return ZERO
    if cutoff is not None and e > cutoff:
        raise CutoffError(f"x_n window {cutoff} cannot reach exponent {e}")
    P = macdonald_P_sq(strip_zeros(lamp), n)
    acc = LaurentSym.zero(n - 1)
    for d in range(e + 1):
        ps = P.xn_slice(e - d)
        if ps.is_zero():
            continue
        acc = acc + ratio_series_part(n, d) * ps
    if acc.is_zero():
        return ZERO
    exp = expand_in_P(acc, "macdonald", squared=True, shift=e)
    target = strip_zeros(tuple(x + e for x in mup))
    return exp.get(target, ZERO)


# -- the q -> 0 limit in its three forms --

_CHL_CACHE: dict = {}


def c_hl(lam, mu, form: str = "product_form") -> QQt:
    """The q -> 0 branching coefficient, a polynomial in t.

    form 'limit' takes the actual limit of c_qt; 'sum_form' evaluates
    (b_mu/b_lam)(t^2) * sum_beta phi(lam/beta)(t^2) t^{2|beta/mu|}
    sk(beta/mu)(t^2); 'product_form' the factored conjugate-binomial
    product.  All three agree after the canonical shift.
    """
    lam = tuple(lam)
    n = len(lam)
    mu = tuple(mu) + (0,) * (n - 1 - len(mu))
    if any(mu[j] > lam[j] for j in range(n - 1)):
        return ZERO
    lamp, mup, _ = canonical_shift(lam, mu, n)
    if form == "limit":
        return c_qt(lam, mu).limit_q0()
    if form == "sum_form":
        total = ZERO
        for beta in _interlacing_upto(lamp, n - 1):
            s = sk(beta, mup, "t")
            if s.is_zero():
                continue
            ph = phi_hl(lamp, beta)
            if ph.is_zero():
                continue
            drop = sum(beta) - sum(mup)
            total = total + ph.squared() * s.squared() * QQt.monomial(1, 0, 2 * drop)
        return b_poly(mup).limit_q0().squared() / b_poly(lamp).limit_q0().squared() * total
    if form == "product_form":
        key = (lamp, mup)
        val = _CHL_CACHE.get(key)
        if val is None:
            val = _c_hl_product(lamp, mup)
            _CHL_CACHE[key] = val
        return val
    raise InvalidInput(f"unknown form {form!r}")


def _c_hl_product(lamp, mup) -> QQt:
    lc = conjugate(lamp)
    mc = conjugate(mup)
    width = (lamp[0] if lamp else 0) + 1
    lc += (0,) * (width + 1 - len(lc))
    mc += (0,) * (width + 1 - len(mc))
    expo = 0
    out = ONE
    for j in range(width):
        d = lc[j] - mc[j]
        expo += d * (d - 1)  # doubled exponent: 2 * C(d, 2)
        out = out * qbinomial(lc[j] - mc[j + 1], lc[j] - lc[j + 1], "t").squared()
        if out.is_zero():
            return ZERO
    return out * QQt.monomial(1, 0, expo)


def _interlacing_upto(lam, length: int):
    """Partitions beta interlacing lam with at most `length` parts."""
    return partitions_between(lam, (), length + 1)


# -- the Pieri route at t = q^k --


def a_pieri_route(lam, mu, k: int) -> QQt:
    """Branching coefficient through one-row weights and Pieri coefficients,
    evaluated at t = q^k: sum over beta interlacing lam and gamma with
    |gamma| = |beta| - |mu| of g(gamma) psi(lam/beta) (d_mu/d_beta)
    c^beta_{gamma, mu}, all in squared parameters."""
    if k < 1:
        raise InvalidInput("k must be >= 1")
    lam = tuple(lam)
    n = len(lam)
    mu = tuple(mu) + (0,) * (n - 1 - len(mu))
    if any(mu[j] > lam[j] for j in range(n - 1)):
        return ZERO
    lamp, mup, _ = canonical_shift(lam, mu, n)
    d_mu = d_poly(mup, n - 1).squared()
    total = ZERO
    for beta in _interlacing_upto(lamp, n - 1):
        r = sum(beta) - sum(mup)
        if r < 0:
            continue
        ps = psi(lamp, beta)
        if ps.is_zero():
            continue
        inner = ZERO
        for gamma in partitions_of(r, max_len=n - 1):
            cp = pieri_coeff(gamma, strip_zeros(mup), beta, n - 1, squared=True)
            if cp.is_zero():
                continue
            inner = inner + g_coeff(gamma, squared=True) * cp
        if inner.is_zero():
            continue
        total = total + ps.squared() * d_mu / d_poly(beta, n - 1).squared() * inner
    return total.subs_t_qk(k)


def upper_gap_condition(lam, mu, k: int) -> bool:
    """True iff lam_{j+1} - mu_j <= k - 1 for all j (the admissibility gap
    bound for one branching step)."""
    lam = tuple(lam)
    n = len(lam)
    mu = tuple(mu) + (0,) * (n - 1 - len(mu))
    return all(lam[j + 1] - mu[j] <= k - 1 for j in range(n - 1))


def c_gt_pattern(pattern: GTPattern, k: int) -> QQt:
    """Diagonal coefficient attached to a GT pattern at level parameter k:
    zero when the pattern is not indexed by an admissible chain, otherwise
    the product of c(level pairs) specialized at t = q^k."""
    chain = chain_from_gt_pattern(pattern, k)
    if chain is None:
        return ZERO
    out = ONE
    for i in range(chain.n - 1):
        out = out * c_qt(chain.levels[i], chain.levels[i + 1]).subs_t_qk(k)
        if out.is_zero():
            return ZERO
    return out


# -- trace series --


@dataclass
class TraceSeries:
    """Truncated reduced trace expansion: each branching level keeps
    x-degree at most `cutoff`, so every monomial with all exponents (beyond
    the first variable) <= cutoff is exact."""

    n: int
    cutoff: int
    terms: LaurentSym
    params: str = "generic"

    def coeff(self, exps) -> QQt:
        return self.terms.coeff(exps)

    def to_json_obj(self):
        obj = self.terms.to_json_obj()
        obj["cutoff"] = self.cutoff
        obj["params"] = self.params
        return obj


def trace_series(lam, n: int, cutoff: int, q0: bool = False) -> TraceSeries:
    """Reduced trace series of shape lam in n variables: iterate the
    branching rule with coefficient c_hl (q0) or c_qt (generic), keeping
    x-degree at most cutoff at each level; base case x_1^m."""
    lam = tuple(lam) + (0,) * (n - len(lam))
    if len(lam) != n:
        raise InvalidInput(f"{lam} does not fit ambient length {n}")
    memo: dict = {}

    def level(sig):
        N = len(sig)
        if N == 1:
            return LaurentSym.monomial((sig[0],))
        got = memo.get(sig)
        if got is not None:
            return got
        terms: dict = {}
        for mu in signatures_below(sig, N - 1, sum(sig) - cutoff):
            c = c_hl(sig, mu) if q0 else c_qt(sig, mu)
            if c.is_zero():
                continue
            e = sum(sig) - sum(mu)
            sub = level(mu)
            for exps, v in sub.terms.items():
                key = exps + (e,)
                s = terms.get(key)
                s = v * c if s is None else s + v * c
                terms[key] = s
        out = LaurentSym(N, {k: v for k, v in terms.items() if not v.is_zero()}, _clean=True)
        memo[sig] = out
        return out

    return TraceSeries(n, cutoff, level(lam), "q0" if q0 else "generic")


def chain_sum_series(lam, n: int, cutoff: int) -> LaurentSym:
    """The chain-sum side of the q = 0 trace formula, without its constant:
    sum over signature chains below lam (level drops <= cutoff) of
    sk_S(t^2) x^{wt(S)}."""
    lam = tuple(lam) + (0,) * (n - len(lam))
    out: dict = {}

    def rec(sig, coeff, wt_rev):
        N = len(sig)
        if N == 1:
            key = (sig[0],) + tuple(reversed(wt_rev))
            s = out.get(key)
            s = coeff if s is None else s + coeff
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
            return
        for mu in signatures_below(sig, N - 1, sum(sig) - cutoff):
            s = sk_sig(sig, mu, N).squared()
            if s.is_zero():
                continue
            rec(mu, coeff * s, wt_rev + [sum(sig) - sum(mu)])

    rec(lam, ONE, [])
    return LaurentSym(n, out, _clean=True)


# -- branch tables --


@dataclass
class BranchTable:
    """Keyed table mu -> coefficient for one shape lam."""

    lam: tuple
    params: str
    k: int | None
    entries: dict = field(default_factory=dict)

    def to_json_obj(self):
        rows = []
        order = sorted(
            self.entries.items(),
            key=lambda kv: (-sum(kv[0]), tuple(-x for x in kv[0])),
        )
        for mu, coeff in order:
            rows.append(
                {
                    "mu": list(mu),
                    "rho": sum(self.lam) - sum(mu),
                    "coeff": coeff.to_json_obj(),
                }
            )
        obj = {"lambda": list(self.lam), "params": self.params, "entries": rows}
        if self.k is not None:
            obj["k"] = self.k
        return obj


def branch_table(lam, n: int, params: str = "generic", k: int | None = None,
                 cutoff: int = 4) -> BranchTable:
    """All branching coefficients out of lam within the cutoff window,
    under generic (q, t), q -> 0, or t = q^k parameters."""
    lam = tuple(lam) + (0,) * (n - len(lam))
    if params == "t_eq_qk" and (k is None or k < 1):
        raise InvalidInput("t_eq_qk requires k >= 1")
    table = BranchTable(lam, params, k if params == "t_eq_qk" else None)
    for mu in signatures_below(lam, n - 1, sum(lam) - cutoff):
        if params == "q0":
            c = c_hl(lam, mu)
        else:
            c = c_qt(lam, mu)
            if params == "t_eq_qk":
                c = c.subs_t_qk(k)
        if not c.is_zero():
            table.entries[mu] = c
    return table


def verify_identity(name: str, params: dict | None = None):
    """Structured pass/fail sweep for one of the named identities; see
    qtbranch.verify for the suite definitions."""
    from qtbranch import verify as _verify

    return _verify.verify_identity(name, params)
