"""Kernel selection plus the factor-aware gcd layer.

The low-level polynomial primitives come from a compiled extension when
available, a pure-Python twin otherwise (force the fallback with
QTBRANCH_PURE_PYTHON=1).

Almost every denominator in this algebra is a product of binomials
1 - q^a t^b or q^a t^b - q^c t^d.  Each such factor splits into pairwise
coprime irreducibles: cyclotomic polynomials evaluated at a primitive
monomial, cleared of negative exponents.  The factories below register
those atoms as they are created, and p_gcd extracts common atoms by exact
trial division (after cheap integer-point divisibility filters) before
falling back to the primitive remainder sequence on what is left.  This
keeps the remainder sequences off the hot path entirely.
"""

import os
from math import gcd as _int_gcd

if os.environ.get("QTBRANCH_PURE_PYTHON"):
    from qtbranch import _kernel_py as _impl
else:
    try:
        from qtbranch import _kernel_cy as _impl  # type: ignore[attr-defined]
    except ImportError:
        from qtbranch import _kernel_py as _impl

BACKEND = _impl.BACKEND

P_ONE = _impl.P_ONE
p_is_zero = _impl.p_is_zero
p_add = _impl.p_add
p_neg = _impl.p_neg
p_sub = _impl.p_sub
p_mul = _impl.p_mul
p_mul_int = _impl.p_mul_int
p_leading = _impl.p_leading
p_content = _impl.p_content
p_div_int = _impl.p_div_int
p_divexact = _impl.p_divexact
p_gcd_prs = _impl.p_gcd


def available_backends():
    """Names of kernel implementations importable in this environment."""
    names = ["python"]
    try:
        from qtbranch import _kernel_cy  # noqa: F401

        names.append("cython")
    except ImportError:
        pass
    return names


# -- cyclotomic atoms ---------------------------------------------------------

_CYCLO: dict = {1: {1: 1, 0: -1}}  # d -> coefficients of Phi_d as {exp: int}


def _cyclotomic(d: int):
    got = _CYCLO.get(d)
    if got is not None:
        return got
    # (x^d - 1) / prod_{e | d, e < d} Phi_e(x), by univariate exact division
    num = {d: 1, 0: -1}
    for e in range(1, d):
        if d % e == 0:
            num = _u_divexact(num, _cyclotomic(e))
    _CYCLO[d] = num
    return num


def _u_divexact(f, g):
    dg = max(g)
    lg = g[dg]
    r = dict(f)
    out = {}
    while r:
        dr = max(r)
        c = r[dr]
        if dr < dg or c % lg:
            raise ArithmeticError("inexact cyclotomic division")
        q = c // lg
        out[dr - dg] = q
        for e, v in g.items():
            ee = e + dr - dg
            nv = r.get(ee, 0) - q * v
            if nv:
                r[ee] = nv
            else:
                r.pop(ee, None)
    return out


# atom key: (d, alpha, beta) = cleared Phi_d(q^alpha t^beta), with (alpha,
# beta) primitive and sign-canonical (first nonzero entry positive).
_ATOMS: dict = {}  # key -> (poly dict, |value at (q,t)=(2,3)|, |value at (5,2)|)
_ATOM_LIST: list = []  # append-only view, for incremental refactorization
_EVAL_PTS = ((2, 3), (5, 2))


def _eval_int(poly, qv, tv):
    return sum(c * qv**a * tv**b for (a, b), c in poly.items())


def _atom(d: int, alpha: int, beta: int):
    key = (d, alpha, beta)
    got = _ATOMS.get(key)
    if got is not None:
        return got
    cyc = _cyclotomic(d)
    deg = max(cyc)
    qpad = max(0, -alpha) * deg
    tpad = max(0, -beta) * deg
    poly = {}
    for k, c in cyc.items():
        poly[(alpha * k + qpad, beta * k + tpad)] = c
    lead = poly[max(poly, key=lambda kk: (kk[0] + kk[1], kk[0]))]
    if lead < 0:
        poly = {k: -v for k, v in poly.items()}
    vals = tuple(abs(_eval_int(poly, *pt)) for pt in _EVAL_PTS)
    got = (poly, vals[0], vals[1])
    _ATOMS[key] = got
    _ATOM_LIST.append((key, got))
    return got


def _register_direction(dq: int, dt: int):
    """Register the atoms of a binomial with exponent-difference (dq, dt),
    and of its squared-parameter image (which exponent doubling produces)."""
    g = _int_gcd(abs(dq), abs(dt))
    if g == 0:
        return
    alpha, beta = dq // g, dt // g
    if alpha < 0 or (alpha == 0 and beta < 0):
        alpha, beta = -alpha, -beta
    for gg in (g, 2 * g):
        for e in range(1, gg + 1):
            if gg % e == 0:
                _atom(e, alpha, beta)


def binomial(a: int, b: int):
    """The factor 1 - q^a t^b as a kernel dict, registering its atoms."""
    _register_direction(a, b)
    return {(0, 0): 1, (a, b): -1}


def binomial2(m1, m2):
    """q^{m1} - q^{m2} for exponent pairs m1, m2, registering its atoms."""
    (a, b), (c, d) = m1, m2
    _register_direction(a - c, b - d)
    return {(a, b): 1, (c, d): -1}


# -- factor-aware gcd ---------------------------------------------------------

_FACT_CACHE: dict = {}
_FACT_CACHE_LIMIT = 200_000


def _freeze(poly):
    return tuple(sorted(poly.items()))


def _extract_atoms(work, vals, atoms, start: int):
    """Divide out registry atoms (from index `start` on) to full multiplicity.

    Filter values track the work polynomial at the integer points and are
    maintained by exact integer division, never re-evaluated.
    """
    for idx in range(start, len(_ATOM_LIST)):
        akey, (apoly, av1, av2) = _ATOM_LIST[idx]
        if len(work) == 1:
            break
        if len(apoly) > len(work):
            continue
        while True:
            if av1 > 1 and vals[0] % av1:
                break
            if av2 > 1 and vals[1] % av2:
                break
            try:
                nxt = p_divexact(work, apoly)
            except ArithmeticError:
                break
            work = nxt
            if av1:
                vals[0] //= av1
            else:
                vals[0] = abs(_eval_int(work, *_EVAL_PTS[0]))
            if av2:
                vals[1] //= av2
            else:
                vals[1] = abs(_eval_int(work, *_EVAL_PTS[1]))
            atoms[akey] = atoms.get(akey, 0) + 1
            if len(work) == 1:
                break
    return work


def _factorize(poly):
    """(content, (qmin, tmin), {atom_key: mult}, residual poly, frozen residual).

    Extracts integer content, the monomial gcd, and every registered atom
    to full multiplicity; the residual carries whatever remains.  Cached;
    when the registry has grown since the cache entry was made, only the
    new atoms are tried against the stored residual.
    """
    key = _freeze(poly)
    got = _FACT_CACHE.get(key)
    if got is not None:
        upto, entry = got
        if upto == len(_ATOM_LIST):
            return entry
        content, (qmin, tmin), atoms, work, _ = entry
        atoms = dict(atoms)
        vals = [abs(_eval_int(work, *pt)) for pt in _EVAL_PTS]
        work = _extract_atoms(work, vals, atoms, upto)
    else:
        content = p_content(poly)
        lead_key = max(poly, key=lambda kk: (kk[0] + kk[1], kk[0]))
        if poly[lead_key] < 0:
            content = -content
        work = p_div_int(poly, content) if content != 1 else dict(poly)
        qmin = min(k[0] for k in work)
        tmin = min(k[1] for k in work)
        if qmin or tmin:
            work = {(a - qmin, b - tmin): c for (a, b), c in work.items()}
        vals = [abs(_eval_int(work, *pt)) for pt in _EVAL_PTS]
        atoms = {}
        work = _extract_atoms(work, vals, atoms, 0)
    # the residual may still hide a monomial (from atom clearings)
    qr = min(k[0] for k in work)
    tr = min(k[1] for k in work)
    if qr or tr:
        work = {(a - qr, b - tr): c for (a, b), c in work.items()}
        qmin += qr
        tmin += tr
    out = (content, (qmin, tmin), atoms, work, _freeze(work))
    if len(_FACT_CACHE) < _FACT_CACHE_LIMIT:
        _FACT_CACHE[key] = (len(_ATOM_LIST), out)
    return out


def p_gcd(a, b):
    """Gcd in Z[q,t], positive leading coefficient under graded-lex."""
    if not a:
        return p_gcd_prs(a, b)
    if not b:
        return p_gcd_prs(a, b)
    if a == b:
        return p_gcd_prs(a, a)
    if len(a) == 1 or len(b) == 1:
        return p_gcd_prs(a, b)
    ca, ma, atoms_a, res_a, fra = _factorize(a)
    cb, mb, atoms_b, res_b, frb = _factorize(b)
    out = {(min(ma[0], mb[0]), min(ma[1], mb[1])): _int_gcd(ca, cb)}
    for akey, mult_a in atoms_a.items():
        mult = min(mult_a, atoms_b.get(akey, 0))
        if mult:
            apoly = _ATOMS[akey][0]
            for _ in range(mult):
                out = p_mul(out, apoly)
    if len(res_a) > 1 and len(res_b) > 1:
        if fra == frb:
            out = p_mul(out, res_a)
        else:
            dq, dt = _impl.p_gcd_degree_probe(res_a, res_b)
            if dq or dt:
                g = p_gcd_prs(res_a, res_b)
                if g != P_ONE:
                    out = p_mul(out, g)
    return out
