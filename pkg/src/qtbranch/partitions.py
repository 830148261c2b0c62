"""Partitions, signatures, orders, Gelfand-Tsetlin patterns and chains.

Partitions and signatures are plain tuples of ints (weakly decreasing).  A
partition may carry trailing zeros when it stands for a signature with an
explicit ambient length; helpers below pad and strip as needed.

GT patterns produced from chains live on half-integers in general, so
GTPattern stores every entry doubled (the "doubled lattice"): an entry 3/2
is stored as 3.  Chains themselves are always integral.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from qtbranch.errors import InvalidInput


def is_weakly_decreasing(parts) -> bool:
    return all(parts[i] >= parts[i + 1] for i in range(len(parts) - 1))


def check_partition(parts):
    if not is_weakly_decreasing(parts) or (parts and parts[-1] < 0):
        raise InvalidInput(f"not a partition: {parts}")
    return tuple(parts)


def strip_zeros(parts):
    p = tuple(parts)
    while p and p[-1] == 0:
        p = p[:-1]
    return p


def pad(parts, n: int):
    p = tuple(parts)
    if len(p) > n:
        if any(p[n:]):
            raise InvalidInput(f"length of {parts} exceeds ambient {n}")
        return p[:n]
    return p + (0,) * (n - len(p))


def size(parts) -> int:
    return sum(parts)


def conjugate(lam):
    """lam'_j = #{i : lam_i >= j}; an involution on partitions."""
    lam = strip_zeros(lam)
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x >= j) for j in range(1, lam[0] + 1))


def multiplicity(lam, i: int) -> int:
    return sum(1 for x in lam if x == i)


def n_stat(lam) -> int:
    """n(lam) = sum_i (i-1) * lam_i."""
    return sum(i * x for i, x in enumerate(lam))


def contains(lam, mu) -> bool:
    """mu_i <= lam_i componentwise (missing parts read as 0)."""
    lam, mu = tuple(lam), tuple(mu)
    m = max(len(lam), len(mu))
    lam += (0,) * (m - len(lam))
    mu += (0,) * (m - len(mu))
    return all(a <= b for a, b in zip(mu, lam))


def dominates(lam, mu) -> bool:
    """Dominance: equal sizes and partial sums of lam bound those of mu."""
    if sum(lam) != sum(mu):
        return False
    s1 = s2 = 0
    for i in range(max(len(lam), len(mu))):
        s1 += lam[i] if i < len(lam) else 0
        s2 += mu[i] if i < len(mu) else 0
        if s1 < s2:
            return False
    return True


def interlaces(lam, mu) -> bool:
    """True iff lam_j >= mu_j >= lam_{j+1} for all j, with len(mu) = len(lam) - 1."""
    lam, mu = tuple(lam), tuple(mu)
    if len(mu) != len(lam) - 1:
        raise InvalidInput(
            f"interlacing wants length {len(lam) - 1}, got {len(mu)}"
        )
    return all(lam[j] >= mu[j] >= lam[j + 1] for j in range(len(mu)))


def interlaces_parts(lam, mu) -> bool:
    """Interlacing for partitions of any lengths (zero-padded as needed)."""
    lam, mu = strip_zeros(lam), strip_zeros(mu)
    if len(mu) > len(lam):
        return False
    lam_pad = lam + (0,) * (len(lam) - len(mu))
    return all(
        lam[j] >= (mu[j] if j < len(mu) else 0) >= (lam[j + 1] if j + 1 < len(lam) else 0)
        for j in range(len(lam))
    )


def horizontal_strip(lam, mu) -> bool:
    """True iff mu is contained in lam and lam/mu has at most one box per column."""
    if not contains(lam, mu):
        return False
    lc, mc = conjugate(lam), conjugate(mu)
    mc += (0,) * (len(lc) - len(mc))
    return all(a - b <= 1 for a, b in zip(lc, mc))


def partitions_of(n: int, max_len: int | None = None, max_part: int | None = None):
    """All partitions of n, ascending lex within fixed size."""
    if max_part is None:
        max_part = n
    if max_len is None:
        max_len = n

    def rec(rem, cap, slots):
        if rem == 0:
            yield ()
            return
        if slots == 0:
            return
        for first in range(min(rem, cap), 0, -1):
            for rest in rec(rem - first, first, slots - 1):
                yield (first,) + rest

    yield from sorted(rec(n, max_part, max_len))


def partitions_upto(n: int, max_len: int | None = None):
    """All partitions of size 0..n, graded, ascending lex within each size."""
    for s in range(n + 1):
        yield from partitions_of(s, max_len=max_len)


def partitions_between(lam, mu, n: int):
    """All partitions beta with mu contained in beta, beta interlacing lam,
    and len(beta) <= n - 1, in ascending graded-lex order."""
    lam = strip_zeros(lam)
    mu = strip_zeros(mu)
    k = min(len(lam), n - 1)
    out = []

    def rec(j, prev, acc):
        if j == k:
            out.append(strip_zeros(acc))
            return
        hi = min(lam[j], prev)
        lo = max(lam[j + 1] if j + 1 < len(lam) else 0, mu[j] if j < len(mu) else 0)
        for v in range(hi, lo - 1, -1):
            rec(j + 1, v, acc + (v,))

    if len(mu) <= k and contains(lam, mu):
        if lam:
            rec(0, lam[0], ())
        else:
            out.append(())
    return sorted(set(out), key=lambda b: (sum(b), b))


# enumerate_between is the public name used by the CLI surface
enumerate_between = partitions_between


def signatures_below(lam, length: int, min_sum: int):
    """Weakly decreasing integer vectors mu of the given length with
    mu_j <= lam_j componentwise and sum(mu) >= min_sum."""
    lam = tuple(lam)
    if len(lam) < length:
        raise InvalidInput("ambient too short")
    out = []

    def rec(j, prev, acc, total):
        if j == length:
            out.append(acc)
            return
        hi = min(lam[j], prev)
        # optimistic bound: remaining parts can each reach min(lam_l, v)
        for v in range(hi, hi - 10**9, -1):
            best = total + v + sum(min(lam[l], v) for l in range(j + 1, length))
            if best < min_sum:
                break
            rec(j + 1, v, acc + (v,), total + v)

    rec(0, 10**9, (), 0)
    return out


def rho_weight(lam, mu) -> int:
    """rho(lam, mu) = |lam| - |mu| (total sizes)."""
    return sum(lam) - sum(mu)


@dataclass(frozen=True)
class Chain:
    """A containment chain (mu^(0) > mu^(1) > ... > mu^(n-1)) of signatures,
    level i of length n - i, each level componentwise <= the previous one on
    the first n - i - 1 parts (weak containment)."""

    levels: tuple

    def __post_init__(self):
        levels = tuple(tuple(l) for l in self.levels)
        object.__setattr__(self, "levels", levels)
        n = len(levels)
        for i, lev in enumerate(levels):
            if len(lev) != n - i:
                raise InvalidInput(f"level {i} must have length {n - i}")
            if not is_weakly_decreasing(lev):
                raise InvalidInput(f"level {i} not weakly decreasing: {lev}")
        for i in range(n - 1):
            upper, lower = levels[i], levels[i + 1]
            if any(lower[j] > upper[j] for j in range(len(lower))):
                raise InvalidInput(f"containment fails between levels {i} and {i + 1}")

    @property
    def n(self) -> int:
        return len(self.levels)

    @property
    def shape(self):
        return self.levels[0]

    def weight(self):
        """wt = (|mu^(n-1)|, |mu^(n-2)| - |mu^(n-1)|, ..., |mu^(0)| - |mu^(1)|)."""
        sizes = [sum(l) for l in self.levels]
        out = [sizes[-1]]
        for i in range(len(sizes) - 1, 0, -1):
            out.append(sizes[i - 1] - sizes[i])
        return tuple(out)

    def to_json_obj(self):
        return [list(l) for l in self.levels]

    @classmethod
    def from_json_obj(cls, obj) -> "Chain":
        return cls(tuple(tuple(int(x) for x in row) for row in obj))


def chain_weight(chain: Chain):
    return chain.weight()


@dataclass(frozen=True)
class GTPattern:
    """Triangular array of interlacing rows on the doubled lattice.

    rows2[i][j] stores twice the actual entry, so half-integer patterns stay
    integral.  Row i has length n - i.
    """

    rows2: tuple

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows2)
        object.__setattr__(self, "rows2", rows)
        n = len(rows)
        for i, row in enumerate(rows):
            if len(row) != n - i:
                raise InvalidInput(f"row {i} must have length {n - i}")
            if not is_weakly_decreasing(row):
                raise InvalidInput(f"row {i} not weakly decreasing")
        for i in range(n - 1):
            up, lo = rows[i], rows[i + 1]
            for j in range(len(lo)):
                if not (up[j] >= lo[j] >= up[j + 1]):
                    raise InvalidInput(f"rows {i} and {i + 1} do not interlace")

    @property
    def n(self) -> int:
        return len(self.rows2)

    @property
    def shape2(self):
        return self.rows2[0]

    def entry(self, i: int, j: int) -> Fraction:
        return Fraction(self.rows2[i][j], 2)

    def to_json_obj(self):
        """Rows of exact entries; halves rendered as 'a/2' strings."""
        out = []
        for row in self.rows2:
            out.append([v // 2 if v % 2 == 0 else f"{v}/2" for v in row])
        return out

    @classmethod
    def from_json_obj(cls, obj) -> "GTPattern":
        rows = []
        for row in obj:
            r = []
            for v in row:
                f = Fraction(v)
                if f.denominator not in (1, 2):
                    raise InvalidInput(f"entry {v} is not on the half-integer lattice")
                r.append(int(f * 2))
            rows.append(tuple(r))
        return cls(tuple(rows))


def check_chain_conditions(chain: Chain, k: int):
    """The admissibility conditions for a chain at level parameter k:
    containment on every kept coordinate plus mu^(i)_j - mu^(i+1)_{j-1} <= k - 1."""
    if k < 1:
        raise InvalidInput("k must be >= 1")
    levels = chain.levels
    n = len(levels)
    for i in range(n - 1):
        up, lo = levels[i], levels[i + 1]
        for j in range(2, n - i + 1):  # 1-based j
            if up[j - 1] - lo[j - 2] > k - 1:
                raise InvalidInput(
                    f"upper-gap condition fails at level {i}, column {j}: "
                    f"{up[j - 1]} - {lo[j - 2]} > {k - 1}"
                )


def gt_index(chain: Chain, k: int) -> GTPattern:
    """Map an admissible chain to its Gelfand-Tsetlin pattern.

    Row i is mu^(i) + (k-1) * rho_{n-i} + (k-1) * (i/2, ..., i/2); entry j
    works out to mu^(i)_j + (k-1) * (n + 1 - 2j) / 2 independently of i.
    """
    check_chain_conditions(chain, k)
    n = chain.n
    rows = []
    for i, lev in enumerate(chain.levels):
        rows.append(
            tuple(2 * lev[j] + (k - 1) * (n + 1 - 2 * (j + 1)) for j in range(n - i))
        )
    return GTPattern(tuple(rows))


def chain_from_gt_pattern(pattern: GTPattern, k: int) -> Chain | None:
    """Invert gt_index; None when the pattern has no admissible preimage."""
    if k < 1:
        raise InvalidInput("k must be >= 1")
    n = pattern.n
    levels = []
    for i, row in enumerate(pattern.rows2):
        lev = []
        for j in range(n - i):
            v2 = row[j] - (k - 1) * (n + 1 - 2 * (j + 1))
            if v2 % 2:
                return None
            lev.append(v2 // 2)
        levels.append(tuple(lev))
    try:
        chain = Chain(tuple(levels))
        check_chain_conditions(chain, k)
    except InvalidInput:
        return None
    return chain


def parse_parts(text: str):
    """Comma-separated integers -> tuple; '' or '-' means the empty partition."""
    text = text.strip()
    if text in ("", "-"):
        return ()
    try:
        parts = tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise InvalidInput(f"bad part list {text!r}: {exc}") from None
    if not is_weakly_decreasing(parts):
        raise InvalidInput(f"parts not weakly decreasing: {text!r}")
    return parts
