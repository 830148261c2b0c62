"""Scalar coefficient formulas of Macdonald / Hall-Littlewood theory.

Everything here is a finite product of factors (1 - q^a t^b) and their
reciprocals: branching coefficients psi and phi (generic and q=0), the norm
products b and d, the subgroup-counting polynomials sk, and the one-row
weight g.  Products are accumulated as raw kernel dicts and converted to a
canonical QQt once at the end.
"""

from __future__ import annotations

from qtbranch import kernel as K
from qtbranch.partitions import (
    conjugate,
    contains,
    horizontal_strip,
    interlaces_parts,
    strip_zeros,
)
from qtbranch.qtalg import ONE, ZERO, QQt, qbinomial


def _poch_poly(A: int, B: int, m: int):
    """prod_{i=0}^{m-1} (1 - q^{A+i} t^B) as a kernel dict; needs A, B >= 0."""
    out = dict(K.P_ONE)
    for i in range(m):
        out = K.p_mul(out, K.binomial(A + i, B))
    return out


def psi(lam, mu) -> QQt:
    """Branching coefficient of the monic Macdonald recursion, generic (q, t).

    Zero unless mu interlaces lam.  The four-f-ratio product is pre-paired
    into finite Pochhammer quotients of length lam_i - mu_i, so no factor
    can vanish or fail to terminate once interlacing holds.
    """
    lam, mu = strip_zeros(lam), strip_zeros(mu)
    if not interlaces_parts(lam, mu):
        return ZERO
    num = dict(K.P_ONE)
    den = dict(K.P_ONE)
    lmu = len(mu)
    for i in range(1, lmu + 1):
        m = lam[i - 1] - mu[i - 1]
        if m == 0:
            continue
        for j in range(i, lmu + 1):
            e = j - i
            a1 = mu[i - 1] - mu[j - 1]
            a2 = mu[i - 1] - (lam[j] if j < len(lam) else 0)
            num = K.p_mul(num, _poch_poly(a1, e + 1, m))
            num = K.p_mul(num, _poch_poly(a2 + 1, e, m))
            den = K.p_mul(den, _poch_poly(a1 + 1, e, m))
            den = K.p_mul(den, _poch_poly(a2, e + 1, m))
    return QQt(num, den)


def psi_hl(lam, mu) -> QQt:
    """q -> 0 limit of psi: a product of (1 - t^{m_j(mu)}) over the columns
    where the strip ends; zero off horizontal strips."""
    lam, mu = strip_zeros(lam), strip_zeros(mu)
    if not horizontal_strip(lam, mu):
        return ZERO
    lc, mc = conjugate(lam), conjugate(mu)
    width = lam[0] if lam else 0
    lc += (0,) * (width + 1 - len(lc))
    mc += (0,) * (width + 1 - len(mc))
    out = dict(K.P_ONE)
    for j in range(width):
        if lc[j] == mc[j] and lc[j + 1] == mc[j + 1] + 1:
            out = K.p_mul(out, K.binomial(0, mc[j] - mc[j + 1]))
    return QQt(out, dict(K.P_ONE), _canonical=True)


def phi_hl(lam, mu) -> QQt:
    """q -> 0 companion of psi_hl, with multiplicities read off lam."""
    lam, mu = strip_zeros(lam), strip_zeros(mu)
    if not horizontal_strip(lam, mu):
        return ZERO
    lc, mc = conjugate(lam), conjugate(mu)
    width = lam[0] if lam else 0
    lc += (0,) * (width + 1 - len(lc))
    mc += (0,) * (width + 1 - len(mc))
    out = dict(K.P_ONE)
    for j in range(width):
        if lc[j] == mc[j] + 1 and lc[j + 1] == mc[j + 1]:
            out = K.p_mul(out, K.binomial(0, lc[j] - lc[j + 1]))
    return QQt(out, dict(K.P_ONE), _canonical=True)


def _armleg_factor(nu, nuc, i, j):
    """(arm, leg) of cell (i, j) in nu (1-based), via the conjugate nuc."""
    return nu[i - 1] - j, nuc[j - 1] - i


def phi_qt(lam, mu) -> QQt:
    """Generic-(q, t) phi from the column arm/leg product: over every column
    meeting the strip, ratio of the lam-cell factors to the mu-cell factors."""
    lam, mu = strip_zeros(lam), strip_zeros(mu)
    if not horizontal_strip(lam, mu):
        return ZERO
    lc, mc = conjugate(lam), conjugate(mu)
    mc_pad = mc + (0,) * (len(lc) - len(mc))
    cols = [j for j in range(1, len(lc) + 1) if lc[j - 1] != mc_pad[j - 1]]
    num = dict(K.P_ONE)
    den = dict(K.P_ONE)
    for j in cols:
        for i in range(1, lc[j - 1] + 1):
            a, l = _armleg_factor(lam, lc, i, j)
            num = K.p_mul(num, K.binomial(a, l + 1))
            den = K.p_mul(den, K.binomial(a + 1, l))
        for i in range(1, mc_pad[j - 1] + 1):
            a, l = _armleg_factor(mu, mc, i, j)
            den = K.p_mul(den, K.binomial(a, l + 1))
            num = K.p_mul(num, K.binomial(a + 1, l))
    return QQt(num, den)


def b_poly(lam) -> QQt:
    """b_lam(q, t) = prod over cells of (1 - q^a t^{l+1}) / (1 - q^{a+1} t^l)."""
    lam = strip_zeros(lam)
    lc = conjugate(lam)
    num = dict(K.P_ONE)
    den = dict(K.P_ONE)
    for i in range(1, len(lam) + 1):
        for j in range(1, lam[i - 1] + 1):
            a, l = _armleg_factor(lam, lc, i, j)
            num = K.p_mul(num, K.binomial(a, l + 1))
            den = K.p_mul(den, K.binomial(a + 1, l))
    return QQt(num, den)


def b_poly_sig(lam, nvars: int) -> QQt:
    """b extended to signatures of ambient length nvars by full-column shifts."""
    lam = tuple(lam)
    if len(lam) > nvars:
        raise ValueError("signature longer than ambient")
    lam = lam + (0,) * (nvars - len(lam))
    m = max(0, 1 - min(lam)) if lam else 0
    return b_poly(tuple(x + m for x in lam))


def d_poly(lam, nvars: int) -> QQt:
    """Reciprocal norm of the monic Macdonald basis in nvars variables,
    normalized so the empty partition gives 1.

    Built from arms/legs and coarms/colegs; only ratios d_mu / d_beta are
    meaningful to callers, the overall constant being fixed by d_empty = 1.
    """
    lam = strip_zeros(lam)
    if len(lam) > nvars:
        raise ValueError(f"{lam} needs more than {nvars} variables")
    lc = conjugate(lam)
    num = dict(K.P_ONE)
    den = dict(K.P_ONE)
    for i in range(1, len(lam) + 1):
        for j in range(1, lam[i - 1] + 1):
            a, l = _armleg_factor(lam, lc, i, j)
            ap, lp = j - 1, i - 1
            num = K.p_mul(num, K.binomial(a, l + 1))
            num = K.p_mul(num, K.binomial(ap + 1, nvars - 1 - lp))
            den = K.p_mul(den, K.binomial(a + 1, l))
            den = K.p_mul(den, K.binomial(ap, nvars - lp))
    return QQt(num, den)


def sk(lam, mu, var: str = "t") -> QQt:
    """The chain-counting polynomial of the skew shape lam/mu:
    t^{sum_j C(lam'_j - mu'_j, 2)} * prod_j binom(lam'_j - mu'_{j+1}, m_j(mu)).

    Zero unless mu is contained in lam.  At t = 1/p it counts subgroups of
    type mu in an abelian p-group of type lam, up to the stated power of t.
    """
    lam, mu = strip_zeros(lam), strip_zeros(mu)
    if not contains(lam, mu):
        return ZERO
    lc, mc = conjugate(lam), conjugate(mu)
    width = (lam[0] if lam else 0) + 1
    lc += (0,) * (width + 1 - len(lc))
    mc += (0,) * (width + 1 - len(mc))
    expo = 0
    out = ONE
    for j in range(width):
        d = lc[j] - mc[j]
        expo += d * (d - 1) // 2
        out = out * qbinomial(lc[j] - mc[j + 1], mc[j] - mc[j + 1], var)
        if out.is_zero():
            return ZERO
    return out * QQt.monomial(1, *((expo, 0) if var == "q" else (0, expo)))


def sk_sig(lam, mu, nvars: int, var: str = "t") -> QQt:
    """sk extended to signature pairs with ambient lengths (nvars, nvars - 1)
    by simultaneous full-column shifts.

    Shifts only stabilize once every part of both vectors is >= 1 (lengths
    stay full), so the shift lands there, not merely at >= 0.
    """
    lam = tuple(lam) + (0,) * (nvars - len(lam))
    mu = tuple(mu) + (0,) * (nvars - 1 - len(mu))
    low = min(lam + mu) if (lam + mu) else 1
    m = max(0, 1 - low)
    return sk(tuple(x + m for x in lam), tuple(x + m for x in mu), var)


def g_coeff(gamma, squared: bool = False) -> QQt:
    """One-row expansion weights: t^{|gamma|} * prod_i (t^{-1}q; q)_{gamma_i}
    / (q; q)_{gamma_i}; with squared=True every exponent is doubled."""
    gamma = strip_zeros(gamma)
    num = dict(K.P_ONE)
    den = dict(K.P_ONE)
    tot = 0
    for part in gamma:
        tot += part
        # t^part * (q/t; q)_part = prod_{i=1}^{part} (t - q^i)
        for i in range(1, part + 1):
            num = K.p_mul(num, K.binomial2((0, 1), (i, 0)))
            den = K.p_mul(den, K.binomial(i, 0))
    g = QQt(num, den)
    return g.squared() if squared else g
