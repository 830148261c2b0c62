"""Identity verification sweeps with structured pass/fail reports.

Each suite enumerates desk-scale cases in a deterministic order and checks
an exact symbolic identity; a failing case carries the symbolic difference.
Suites are split into picklable (name, case) units so the CLI can fan them
out over a process pool and still merge deterministically.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from qtbranch.branching import (
    a_pieri_route,
    c_hl,
    c_qt,
    canonical_shift,
    chain_sum_series,
    ratio_series_part,
    trace_series,
    upper_gap_condition,
)
from qtbranch.coeffs import b_poly, b_poly_sig, phi_hl, phi_qt, psi, psi_hl, sk
from qtbranch.partitions import (
    contains,
    partitions_between,
    partitions_of,
    partitions_upto,
    signatures_below,
    strip_zeros,
)
from qtbranch.qtalg import ONE, QQt, Q, T
from qtbranch.symfunc import (
    LaurentSym,
    complete_h,
    expand_in_P,
    hall_littlewood_P,
    hall_littlewood_P_sq,
    macdonald_P_sq,
)

SUITES = (
    "branching",
    "pfaff1",
    "pfaff2",
    "lauveK",
    "phipsi",
    "trestr_forms",
    "gt_padic",
    "hl_ratio",
    "pieri_route",
)


@dataclass
class CaseResult:
    name: str
    passed: bool
    detail: str = ""

    def to_json_obj(self):
        out = {"case": self.name, "passed": self.passed}
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class Report:
    suite: str
    cases: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    def to_json_obj(self):
        return {
            "suite": self.suite,
            "passed": self.passed,
            "meta": self.meta,
            "cases": [c.to_json_obj() for c in self.cases],
        }

    def pretty_lines(self):
        yield f"suite {self.suite}: {'PASS' if self.passed else 'FAIL'} ({len(self.cases)} cases)"
        for c in self.cases:
            mark = "ok  " if c.passed else "FAIL"
            line = f"  [{mark}] {c.name}"
            if c.detail and not c.passed:
                line += f"  -- {c.detail}"
            yield line


def _sig_P(mu, n):
    """P for a signature: uniform shift times the partition polynomial."""
    m = max(0, -min(mu)) if mu else 0
    base = macdonald_P_sq(strip_zeros(tuple(x + m for x in mu)), n)
    return base.mul_monomial((-m,) * n) if m else base


# -- case generation ---------------------------------------------------------


def iter_cases(name: str, params: dict):
    if name == "branching":
        for n in params.get("n_values", (2, 3)):
            for lam in partitions_upto(params.get("max_size", 4), max_len=n):
                yield {"n": n, "lam": lam, "cutoff": params.get("cutoff", 6)}
    elif name in ("pfaff1", "pfaff2"):
        # identity (2) assumes l(mu) = n - 1 exactly; (1) holds for any mu
        which = int(name[-1])
        for lam in partitions_upto(params.get("max_size", 5)):
            if not lam:
                continue
            n = len(lam)
            for mu in partitions_upto(sum(lam), max_len=max(n - 1, 0)):
                if which == 2 and len(strip_zeros(mu)) != n - 1:
                    continue
                if contains(lam, mu):
                    yield {"lam": lam, "mu": mu, "which": which}
        if which == 2:
            # the shift identities used in the proof, in their valid regime
            for lam in partitions_upto(params.get("max_size", 5)):
                if not lam or lam[-1] < 1:
                    continue
                yield {"gadget": "phi", "lam": lam}
            for lam in partitions_upto(params.get("max_size", 5)):
                n = len(lam)
                if n < 2:
                    continue
                for mu in partitions_upto(sum(lam), max_len=n - 1):
                    mu_s = strip_zeros(mu)
                    if len(mu_s) == n - 1 and mu_s and mu_s[-1] >= 2 and contains(lam, mu_s):
                        yield {"gadget": "sk", "lam": lam, "mu": mu_s}
    elif name == "lauveK":
        for n in range(2, params.get("max_n", 4) + 1):
            for lam in partitions_upto(params.get("max_size", 4), max_len=n):
                for r in range(1, params.get("max_r", 3) + 1):
                    yield {"n": n, "lam": lam, "r": r}
    elif name == "phipsi":
        for lam in partitions_upto(params.get("max_size", 5)):
            for mu in partitions_upto(sum(lam)):
                if contains(lam, mu):
                    yield {"lam": lam, "mu": mu}
    elif name == "trestr_forms":
        yield {"golden": True}
        yield {"remark": True}
        for n in params.get("n_values", (2, 3)):
            for lam in partitions_upto(params.get("max_size", 4), max_len=n):
                for mu in partitions_upto(sum(lam), max_len=n - 1):
                    if contains(lam, mu):
                        yield {"n": n, "lam": lam, "mu": mu}
    elif name == "gt_padic":
        for n in params.get("n_values", (2, 3)):
            for lam in partitions_upto(params.get("max_size", 4), max_len=n):
                yield {"n": n, "lam": lam, "cutoff": params.get("cutoff", 6)}
    elif name == "hl_ratio":
        for n in params.get("n_values", (2, 3)):
            for lam in partitions_upto(params.get("max_size", 4), max_len=n):
                yield {"n": n, "lam": lam, "cutoff": params.get("cutoff", 6)}
    elif name == "pieri_route":
        for k in params.get("k_values", (2, 3)):
            for n in params.get("n_values", (2, 3)):
                for lam in partitions_upto(params.get("max_size", 3), max_len=n):
                    lam_full = lam + (0,) * (n - len(lam))
                    for mu in signatures_below(
                        lam_full, n - 1, sum(lam) - params.get("window", 4)
                    ):
                        yield {"n": n, "lam": lam, "mu": mu, "k": k}
    else:
        raise ValueError(f"unknown suite {name!r}")


# -- per-case checks ---------------------------------------------------------


def run_case(name: str, case: dict) -> CaseResult:
    try:
        return _RUNNERS[name](case)
    except Exception as exc:  # failures are report entries, not crashes
        return CaseResult(f"{name} {case}", False, f"exception: {exc!r}")


def _case_branching(case) -> CaseResult:
    n, lam, cutoff = case["n"], tuple(case["lam"]), case["cutoff"]
    lam_full = lam + (0,) * (n - len(lam))
    P = macdonald_P_sq(lam, n)
    label = f"branching n={n} lam={lam_full} window 0..{cutoff}"
    for e in range(cutoff + 1):
        lhs = LaurentSym.zero(n - 1)
        for d in range(e + 1):
            ps = P.xn_slice(e - d)
            if not ps.is_zero():
                lhs = lhs + ratio_series_part(n, d) * ps
        rhs = LaurentSym.zero(n - 1)
        for mu in signatures_below(lam_full, n - 1, sum(lam) - e):
            if sum(mu) != sum(lam) - e:
                continue
            c = c_qt(lam_full, mu)
            if c.is_zero():
                continue
            rhs = rhs + _sig_P(mu, n - 1).scaled(c)
        if lhs != rhs:
            diff = lhs - rhs
            return CaseResult(label, False, f"x_n^{e} slice differs by {diff!r}")
    return CaseResult(label, True)


def _case_pfaff(case) -> CaseResult:
    if case.get("gadget") == "phi":
        lam = tuple(case["lam"])
        n = len(lam)
        down = tuple(x - 1 for x in lam)
        label = f"pfaff shift gadget phi lam={lam}"
        for beta in partitions_between(down, (), n + 1):
            up = tuple(x + 1 for x in (beta + (0,) * (n - len(beta))))
            if phi_hl(lam, up) != phi_hl(down, beta):
                return CaseResult(label, False, f"fails at beta'={beta}")
        return CaseResult(label, True)
    if case.get("gadget") == "sk":
        lam, mu = tuple(case["lam"]), tuple(case["mu"])
        n = len(lam)
        label = f"pfaff shift gadget sk lam={lam} mu={mu}"
        mu_down = tuple(x - 1 for x in mu)
        for beta in partitions_upto(sum(lam), max_len=n):
            up = tuple(x + 1 for x in (beta + (0,) * (n - len(beta))))
            if sk(up, mu) != sk(beta, mu_down):
                return CaseResult(label, False, f"fails at beta'={beta}")
        return CaseResult(label, True)
    lam, mu, which = tuple(case["lam"]), tuple(case["mu"]), case["which"]
    n = len(lam)
    label = f"pfaff{which} lam={lam} mu={mu}"
    max_len = n if which == 1 else n - 1
    total = QQt.from_int(0)
    for beta in partitions_between(lam, (), max_len + 1):
        s = sk(beta, mu)
        if s.is_zero():
            continue
        ph = phi_hl(lam, beta)
        if ph.is_zero():
            continue
        drop = sum(beta) - sum(mu)
        total = total + ph.squared() * s.squared() * QQt.monomial(1, 0, 2 * drop)
    target = sk(lam, mu).squared()
    if which == 2:
        target = (ONE - T * T) * target
    if total == target:
        return CaseResult(label, True)
    return CaseResult(label, False, f"sum {total!r} != target {target!r}")


def _case_lauvek(case) -> CaseResult:
    n, lam, r = case["n"], tuple(case["lam"]), case["r"]
    label = f"lauveK n={n} lam={lam} r={r}"
    f = hall_littlewood_P(lam, n) * complete_h(r, n)
    exp = expand_in_P(f, "hall_littlewood")
    expected = {}
    for plus in partitions_of(sum(lam) + r, max_len=n):
        if not contains(plus, lam):
            continue
        val = sk(plus, lam)
        if not val.is_zero():
            expected[strip_zeros(plus)] = val
    got = {k: v for k, v in exp.items() if not v.is_zero()}
    if got == expected:
        return CaseResult(label, True)
    keys = set(got) | set(expected)
    bad = [
        (k, got.get(k), expected.get(k))
        for k in sorted(keys)
        if got.get(k) != expected.get(k)
    ]
    return CaseResult(label, False, f"coefficient mismatches: {bad[:3]}")


def _case_phipsi(case) -> CaseResult:
    lam, mu = tuple(case["lam"]), tuple(case["mu"])
    label = f"phipsi lam={lam} mu={mu}"
    lhs = phi_qt(lam, mu) * b_poly(mu)
    rhs = psi(lam, mu) * b_poly(lam)
    if lhs != rhs:
        return CaseResult(label, False, f"generic: {lhs!r} != {rhs!r}")
    b_lam0 = b_poly(lam).limit_q0()
    b_mu0 = b_poly(mu).limit_q0()
    lhs0 = phi_hl(lam, mu) * b_mu0
    rhs0 = psi_hl(lam, mu) * b_lam0
    if lhs0 != rhs0:
        return CaseResult(label, False, f"q=0: {lhs0!r} != {rhs0!r}")
    if phi_qt(lam, mu).limit_q0() != phi_hl(lam, mu):
        return CaseResult(label, False, "limit of generic phi disagrees with phi_hl")
    return CaseResult(label, True)


def _case_trestr(case) -> CaseResult:
    if case.get("golden"):
        want = (ONE + T * T) // 1 if False else (ONE + T * T)
        got = c_hl((2, 1), (1,))
        ok = got == want and c_qt((2, 1), (1,)).limit_q0() == want
        return CaseResult(
            "trestr golden c((2,1),(1); t) = 1 + t^2",
            ok,
            "" if ok else f"got {got!r}",
        )
    if case.get("remark"):
        return _case_remark()
    n, lam, mu = case["n"], tuple(case["lam"]), tuple(case["mu"])
    lam_full = lam + (0,) * (n - len(lam))
    label = f"trestr n={n} lam={lam_full} mu={mu}"
    via_limit = c_hl(lam_full, mu, "limit")
    via_sum = c_hl(lam_full, mu, "sum_form")
    via_prod = c_hl(lam_full, mu, "product_form")
    if via_limit == via_sum == via_prod:
        return CaseResult(label, True)
    return CaseResult(
        label,
        False,
        f"limit={via_limit!r} sum={via_sum!r} product={via_prod!r}",
    )


def _case_remark() -> CaseResult:
    """The in-text example value for c((2,1),(1)) disagrees with the normative
    computation under both parameter conventions; this case passes when the
    mismatch is detected, documenting the discrepancy."""
    remark = (ONE - T) * (ONE - Q * T * T) * (ONE - Q - Q * Q + T) / (ONE - Q * T)
    ours = c_qt((2, 1), (1,))
    plain_differs = remark != ours
    squared_differs = remark.squared() != ours
    limit_differs = remark.limit_q0() != ours.limit_q0()
    ok = plain_differs and squared_differs and limit_differs
    detail = (
        f"remark q->0 gives {remark.limit_q0()!r}, computation gives "
        f"{ours.limit_q0()!r}; mismatch detected and reported"
    )
    return CaseResult("trestr remark-discrepancy flagged", ok, detail)


def _q0_prefactor(lam_full, n) -> QQt:
    """(1 - t^2)^n / b(lam)(t^2) with b extended to signatures by shifts."""
    pref = ONE
    for _ in range(n):
        pref = pref * (ONE - T * T)
    return pref / b_poly_sig(lam_full, n).limit_q0().squared()


def _case_gt_padic(case) -> CaseResult:
    n, lam, cutoff = case["n"], tuple(case["lam"]), case["cutoff"]
    lam_full = lam + (0,) * (n - len(lam))
    label = f"gt_padic n={n} lam={lam_full} cutoff={cutoff}"
    lhs = trace_series(lam_full, n, cutoff, q0=True).terms
    rhs = chain_sum_series(lam_full, n, cutoff).scaled(_q0_prefactor(lam_full, n))
    # the single global constant, measured on the zero shape
    zero = (0,) * n
    a0 = trace_series(zero, n, cutoff, q0=True).terms
    b0 = chain_sum_series(zero, n, cutoff).scaled(_q0_prefactor(zero, n))
    const = b0.coeff(zero) / a0.coeff(zero)
    if b0 != a0.scaled(const):
        return CaseResult(label, False, "no single constant works at lam = 0")
    if rhs == lhs.scaled(const):
        return CaseResult(label, True)
    diff = rhs - lhs.scaled(const)
    return CaseResult(label, False, f"difference {diff!r}")


def _window_filter(f: LaurentSym, cutoff: int) -> LaurentSym:
    keep = {
        e: c for e, c in f.terms.items() if all(x <= cutoff for x in e[1:])
    }
    return LaurentSym(f.n, keep, _clean=True)


def _case_hl_ratio(case) -> CaseResult:
    n, lam, cutoff = case["n"], tuple(case["lam"]), case["cutoff"]
    lam_full = lam + (0,) * (n - len(lam))
    label = f"hl_ratio n={n} lam={lam_full} cutoff={cutoff}"
    num = trace_series(lam_full, n, cutoff, q0=True).terms
    den = trace_series((0,) * n, n, cutoff, q0=True).terms
    hl = hall_littlewood_P_sq(strip_zeros(lam), n)
    lhs = _window_filter(num, cutoff)
    rhs = _window_filter(hl * den, cutoff)
    if lhs == rhs:
        return CaseResult(label, True)
    return CaseResult(label, False, f"difference {(lhs - rhs)!r}")


def _case_pieri_route(case) -> CaseResult:
    n, lam, mu, k = case["n"], tuple(case["lam"]), tuple(case["mu"]), case["k"]
    lam_full = lam + (0,) * (n - len(lam))
    label = f"pieri_route n={n} k={k} lam={lam_full} mu={mu}"
    via_route = a_pieri_route(lam_full, mu, k)
    via_spec = c_qt(lam_full, mu).subs_t_qk(k)
    if via_route != via_spec:
        return CaseResult(label, False, f"route {via_route!r} != {via_spec!r}")
    gap_ok = upper_gap_condition(lam_full, mu, k)
    if via_spec.is_zero() != (not gap_ok):
        return CaseResult(
            label, False, f"vanishing mismatch: value {via_spec!r}, gap ok {gap_ok}"
        )
    return CaseResult(label, True)


_RUNNERS = {
    "branching": _case_branching,
    "pfaff1": _case_pfaff,
    "pfaff2": _case_pfaff,
    "lauveK": _case_lauvek,
    "phipsi": _case_phipsi,
    "trestr_forms": _case_trestr,
    "gt_padic": _case_gt_padic,
    "hl_ratio": _case_hl_ratio,
    "pieri_route": _case_pieri_route,
}


def verify_identity(name: str, params: dict | None = None, jobs: int = 1) -> Report:
    """Run one named suite; report lists each case with pass/fail and the
    exact symbolic discrepancy on failure."""
    params = dict(params or {})
    seed = params.pop("seed", 0)
    rng = random.Random(seed)
    points = [
        (Fraction(rng.randint(1, 6), rng.randint(7, 19)),
         Fraction(rng.randint(1, 6), rng.randint(7, 19)))
        for _ in range(2)
    ]
    cases = list(iter_cases(name, params))
    report = Report(
        suite=name,
        meta={"params": params, "seed": seed, "eval_points": [[str(a), str(b)] for a, b in points]},
    )
    if jobs > 1:
        import concurrent.futures as cf

        with cf.ProcessPoolExecutor(max_workers=jobs) as pool:
            report.cases = list(pool.map(run_case, [name] * len(cases), cases))
    else:
        report.cases = [run_case(name, case) for case in cases]
    return report
