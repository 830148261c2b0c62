"""Pure-Python kernel for sparse bivariate integer polynomials in (q, t).

A polynomial is a dict mapping (q_exponent, t_exponent) -> nonzero int.
The zero polynomial is the empty dict.  Exponents are non-negative here;
Laurent behaviour lives one level up, in the rational-function wrapper.

The compiled twin (_kernel_cy) implements the same functions with the same
semantics; both are interchangeable behind qtbranch.kernel.
"""

import heapq
from math import gcd as _int_gcd

BACKEND = "python"

P_ONE = {(0, 0): 1}


def p_is_zero(a):
    return not a


def p_add(a, b):
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    if len(b) > len(a):
        a, b = b, a
    out = dict(a)
    for k, v in b.items():
        nv = out.get(k, 0) + v
        if nv:
            out[k] = nv
        else:
            del out[k]
    return out


def p_neg(a):
    return {k: -v for k, v in a.items()}


def p_sub(a, b):
    if not b:
        return dict(a)
    out = dict(a)
    for k, v in b.items():
        nv = out.get(k, 0) - v
        if nv:
            out[k] = nv
        else:
            del out[k]
    return out


def p_mul(a, b):
    if not a or not b:
        return {}
    if len(a) == 1:
        ((ka, va),) = a.items()
        return {(ka[0] + k[0], ka[1] + k[1]): va * v for k, v in b.items()}
    if len(b) == 1:
        ((kb, vb),) = b.items()
        return {(k[0] + kb[0], k[1] + kb[1]): vb * v for k, v in a.items()}
    out = {}
    for (qa, ta), va in a.items():
        for (qb, tb), vb in b.items():
            k = (qa + qb, ta + tb)
            nv = out.get(k, 0) + va * vb
            if nv:
                out[k] = nv
            else:
                del out[k]
    return out


def p_mul_int(a, c):
    if c == 0:
        return {}
    if c == 1:
        return dict(a)
    return {k: c * v for k, v in a.items()}


def _grlex(k):
    return (k[0] + k[1], k[0])


def p_leading(a):
    """Leading (key, coeff) under graded-lex with q > t."""
    k = max(a, key=_grlex)
    return k, a[k]


def p_content(a):
    """Positive integer gcd of the coefficients; 0 for the zero polynomial."""
    g = 0
    for v in a.values():
        g = _int_gcd(g, v)
        if g == 1:
            return 1
    return g


def p_div_int(a, c):
    if c == 1:
        return dict(a)
    return {k: v // c for k, v in a.items()}


def p_divexact(a, b):
    """Exact polynomial division a / b; raises ArithmeticError when inexact.

    A heap tracks the graded-lex leading term of the remainder, so each
    reduction step is logarithmic instead of a full rescan.
    """
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return {}
    if len(b) == 1:
        ((kb, cb),) = b.items()
        out = {}
        for k, v in a.items():
            dq, dt = k[0] - kb[0], k[1] - kb[1]
            if dq < 0 or dt < 0 or v % cb:
                raise ArithmeticError("inexact polynomial division")
            out[(dq, dt)] = v // cb
        return out
    kb, cb = p_leading(b)
    rem = dict(a)
    heap = [(-(k[0] + k[1]), -k[0], k) for k in rem]
    heapq.heapify(heap)
    out = {}
    while rem:
        while heap and heap[0][2] not in rem:
            heapq.heappop(heap)
        kr = heap[0][2]
        cr = rem[kr]
        dq, dt = kr[0] - kb[0], kr[1] - kb[1]
        if dq < 0 or dt < 0 or cr % cb:
            raise ArithmeticError("inexact polynomial division")
        cq = cr // cb
        out[(dq, dt)] = cq
        for k, v in b.items():
            kk = (k[0] + dq, k[1] + dt)
            old = rem.get(kk)
            nv = (old or 0) - cq * v
            if nv:
                rem[kk] = nv
                if old is None:
                    heapq.heappush(heap, (-(kk[0] + kk[1]), -kk[0], kk))
            else:
                rem.pop(kk, None)
    return out


# -- univariate integer polynomials (dicts exp -> int), used inside gcd --


def _t_content(f):
    g = 0
    for v in f.values():
        g = _int_gcd(g, v)
        if g == 1:
            return 1
    return g


def _t_primitive(f):
    if not f:
        return f
    c = _t_content(f)
    if f[max(f)] < 0:
        c = -c
    if c != 1:
        f = {e: v // c for e, v in f.items()}
    return f


def _t_mul(f, g):
    out = {}
    for e1, v1 in f.items():
        for e2, v2 in g.items():
            e = e1 + e2
            nv = out.get(e, 0) + v1 * v2
            if nv:
                out[e] = nv
            else:
                del out[e]
    return out


def _t_prem(f, g):
    """Pseudo-remainder of f by g in Z[x] (up to lc(g) powers, which the
    primitive PRS discards anyway)."""
    dg = max(g)
    lg = g[dg]
    r = dict(f)
    while r:
        dr = max(r)
        if dr < dg:
            break
        lr = r[dr]
        nr = {e: v * lg for e, v in r.items()}
        for e, v in g.items():
            ee = e + dr - dg
            nv = nr.get(ee, 0) - lr * v
            if nv:
                nr[ee] = nv
            else:
                nr.pop(ee, None)
        r = nr
    return r


def _is_probable_prime(n):
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24 with these witnesses
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _prime_stream(start=(1 << 61)):
    n = start | 1
    while True:
        if _is_probable_prime(n):
            yield n
        n += 2


def _mod_gcd_monic(f, g, p):
    """Monic gcd of two univariate polys over GF(p); dicts exp -> residue."""
    a = {e: v % p for e, v in f.items() if v % p}
    b = {e: v % p for e, v in g.items() if v % p}
    while b:
        # a mod b
        db = max(b)
        inv = pow(b[db], p - 2, p)
        r = dict(a)
        while r:
            dr = max(r)
            if dr < db:
                break
            c = r[dr] * inv % p
            for e, v in b.items():
                ee = e + dr - db
                nv = (r.get(ee, 0) - c * v) % p
                if nv:
                    r[ee] = nv
                else:
                    r.pop(ee, None)
        a, b = b, r
    da = max(a)
    inv = pow(a[da], p - 2, p)
    return {e: v * inv % p for e, v in a.items()}


def _t_try_div(f, g):
    """f // g when the division is exact, else None (univariate over Z)."""
    if not g:
        return None
    dg = max(g)
    lg = g[dg]
    r = dict(f)
    out = {}
    while r:
        dr = max(r)
        lr = r[dr]
        if dr < dg or lr % lg:
            return None
        c = lr // lg
        out[dr - dg] = c
        for e, v in g.items():
            ee = e + dr - dg
            nv = r.get(ee, 0) - c * v
            if nv:
                r[ee] = nv
            else:
                r.pop(ee, None)
    return out


def _t_gcd(f, g):
    """Gcd in Z[x] by modular images with CRT, certified by trial division."""
    if not f:
        return _t_primitive_pos(g)
    if not g:
        return _t_primitive_pos(f)
    cf, cg = _t_content(f), _t_content(g)
    c = _int_gcd(cf, cg)
    a = {e: v // cf for e, v in f.items()}
    b = {e: v // cg for e, v in g.items()}
    if len(a) == 1 or len(b) == 1:
        e = min(min(a), min(b))
        return {e: c}
    lc = _int_gcd(a[max(a)], b[max(b)])
    best_deg = None
    h = None
    modulus = 1
    for p in _prime_stream():
        if a[max(a)] % p == 0 or b[max(b)] % p == 0:
            continue
        hp = _mod_gcd_monic(a, b, p)
        d = max(hp)
        if d == 0:
            return {0: c}
        if best_deg is None or d < best_deg:
            best_deg, h, modulus = d, {e: v * lc % p for e, v in hp.items()}, p
        elif d > best_deg:
            continue
        else:
            # combine with CRT
            inv = pow(modulus, p - 2, p)
            nh = {}
            for e in set(h) | set(hp):
                ve = h.get(e, 0)
                vp = hp.get(e, 0) * lc % p
                t = (vp - ve) % p * inv % p
                nh[e] = ve + modulus * t
            h, modulus = nh, modulus * p
        # symmetric lift, primitive part, then certify
        half = modulus // 2
        cand = {}
        for e, v in h.items():
            v = v if v <= half else v - modulus
            if v:
                cand[e] = v
        cand = _t_primitive_pos(cand)
        if cand and _t_try_div(a, cand) is not None and _t_try_div(b, cand) is not None:
            if c != 1:
                cand = {e: c * v for e, v in cand.items()}
            return cand


def _t_primitive_pos(f):
    if not f:
        return {}
    c = _t_content(f)
    if f[max(f)] < 0:
        c = -c
    return {e: v // c for e, v in f.items()} if c != 1 else dict(f)


def _t_divexact(f, g):
    if not f:
        return {}
    dg = max(g)
    lg = g[dg]
    r = dict(f)
    out = {}
    while r:
        dr = max(r)
        lr = r[dr]
        if dr < dg or lr % lg:
            raise ArithmeticError("inexact univariate division")
        cq = lr // lg
        out[dr - dg] = cq
        for e, v in g.items():
            ee = e + dr - dg
            nv = r.get(ee, 0) - cq * v
            if nv:
                r[ee] = nv
            else:
                r.pop(ee, None)
    return out


_PROBE_PRIME = (1 << 61) - 1


def p_gcd_degree_probe(a, b):
    """Sound upper bounds (deg_q, deg_t) for deg(gcd(a, b)), via univariate
    gcds of modular evaluations; (0, 0) certifies a constant gcd."""
    dq = _probe_one(a, b, qdir=True)
    dt = _probe_one(a, b, qdir=False)
    return dq, dt


def _probe_one(a, b, qdir):
    p = _PROBE_PRIME
    for tau in (3, 5, 11):
        fa = _eval_side(a, tau, p, qdir)
        fb = _eval_side(b, tau, p, qdir)
        if not fa or not fb:
            continue
        # evaluation may only lose leading terms; guard by degree match
        if max(fa) != max(k[0] if qdir else k[1] for k in a):
            continue
        if max(fb) != max(k[0] if qdir else k[1] for k in b):
            continue
        g = _mod_gcd_monic(fa, fb, p)
        return max(g)
    return min(
        max(k[0] if qdir else k[1] for k in a),
        max(k[0] if qdir else k[1] for k in b),
    )


def _eval_side(poly, tau, p, qdir):
    out = {}
    for (qe, te), v in poly.items():
        if qdir:
            e, w = qe, v * pow(tau, te, p) % p
        else:
            e, w = te, v * pow(tau, qe, p) % p
        nv = (out.get(e, 0) + w) % p
        if nv:
            out[e] = nv
        else:
            out.pop(e, None)
    return out


# -- bivariate gcd via content / primitive-part recursion in (Z[t])[q] --


def _to_uni_q(a):
    u = {}
    for (qe, te), v in a.items():
        u.setdefault(qe, {})[te] = v
    return u


def _from_uni_q(u):
    out = {}
    for qe, f in u.items():
        for te, v in f.items():
            out[(qe, te)] = v
    return out


def _u_content(u):
    c = {}
    for f in u.values():
        c = _t_gcd(c, f)
        if c == {0: 1}:
            return c
    return c


def _u_div_t(u, c):
    if c == {0: 1}:
        return u
    return {qe: _t_divexact(f, c) for qe, f in u.items()}


def _u_primitive(u):
    if not u:
        return u
    return _u_div_t(u, _u_content(u))


def _u_prem(a, b):
    """Pseudo-remainder of a by b, both univariate in q over Z[t]."""
    db = max(b)
    lb = b[db]
    r = a
    while r:
        dr = max(r)
        if dr < db:
            break
        lr = r[dr]
        nr = {qe: _t_mul(f, lb) for qe, f in r.items()}
        for qe, f in b.items():
            ee = qe + dr - db
            cur = nr.get(ee)
            prod = _t_mul(f, lr)
            if cur is None:
                nr[ee] = {e: -v for e, v in prod.items()}
            else:
                for e, v in prod.items():
                    nv = cur.get(e, 0) - v
                    if nv:
                        cur[e] = nv
                    else:
                        del cur[e]
                if not cur:
                    del nr[ee]
        r = nr
    return r


def p_gcd(a, b):
    """Gcd in Z[q,t], normalized with positive leading (graded-lex) coefficient.

    Contents and primitive parts are taken with polynomials viewed in
    (Z[t])[q]; the primitive remainder sequence does the rest.
    """
    if not a:
        return _p_normal_pos(b)
    if not b:
        return _p_normal_pos(a)
    if a == b:
        return _p_normal_pos(a)
    if len(a) == 1 or len(b) == 1:
        qm = min(k[0] for k in a)
        tm = min(k[1] for k in a)
        qn = min(k[0] for k in b)
        tn = min(k[1] for k in b)
        c = _int_gcd(p_content(a), p_content(b))
        return {(min(qm, qn), min(tm, tn)): c}
    ua, ub = _to_uni_q(a), _to_uni_q(b)
    ca, cb = _u_content(ua), _u_content(ub)
    c = _t_gcd(ca, cb)
    ua = _u_div_t(ua, ca)
    ub = _u_div_t(ub, cb)
    if max(ua) < max(ub):
        ua, ub = ub, ua
    while ub:
        r = _u_prem(ua, ub)
        ua = ub
        ub = _u_primitive(r)
    if c != {0: 1}:
        ua = {qe: _t_mul(f, c) for qe, f in ua.items()}
    return _p_normal_pos(_from_uni_q(ua))


def _p_normal_pos(a):
    """Divide out the integer content and make the leading coefficient positive."""
    if not a:
        return {}
    c = p_content(a)
    if a[max(a, key=_grlex)] < 0:
        c = -c
    if c == 1:
        return dict(a)
    return {k: v // c for k, v in a.items()}
