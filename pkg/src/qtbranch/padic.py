"""Brute-force finite abelian p-group computations.

An implementation-independent check of the subgroup-counting polynomials:
enumerate every subgroup of a group of type lam (direct sum of cyclic
groups of order p^{lam_i}), classify each by type, and compare counts with
p-power-scaled evaluations of sk at t = 1/p.

Enumeration is breadth-first closure over cyclic extensions H + <g>, with
canonical element-set hashing for dedup; numpy supplies the vectorized
element arithmetic (a precomputed addition table on encoded elements).
Feasible up to group order 243 by default; override with the
QTBRANCH_MAX_GROUP environment variable.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from qtbranch.coeffs import sk
from qtbranch.errors import GroupSizeError, InvalidInput
from qtbranch.partitions import check_partition, n_stat, strip_zeros

DEFAULT_MAX_ORDER = 243


def max_group_order() -> int:
    return int(os.environ.get("QTBRANCH_MAX_GROUP", DEFAULT_MAX_ORDER))


@dataclass(frozen=True)
class AbelianPGroup:
    """Direct sum of Z / p^{lam_i}, elements encoded in mixed radix."""

    p: int
    lam: tuple

    def __post_init__(self):
        object.__setattr__(self, "lam", strip_zeros(check_partition(self.lam)))
        if self.p < 2:
            raise InvalidInput("p must be a prime >= 2")

    @property
    def moduli(self):
        return tuple(self.p ** a for a in self.lam)

    @property
    def order(self) -> int:
        n = 1
        for m in self.moduli:
            n *= m
        return n

    def elements(self) -> np.ndarray:
        """All elements as an (order, rank) array of digits, in encoded order."""
        mods = self.moduli
        if not mods:
            return np.zeros((1, 0), dtype=np.int64)
        grids = np.meshgrid(*[np.arange(m, dtype=np.int64) for m in mods], indexing="ij")
        return np.stack([g.ravel() for g in grids], axis=1)

    def encode(self, vecs: np.ndarray) -> np.ndarray:
        mods = self.moduli
        out = np.zeros(len(vecs), dtype=np.int64)
        for i, m in enumerate(mods):
            out = out * m + vecs[:, i]
        return out

    def decode(self, ids) -> np.ndarray:
        mods = self.moduli
        ids = np.asarray(ids, dtype=np.int64)
        out = np.zeros((len(ids), len(mods)), dtype=np.int64)
        rest = ids.copy()
        for i in range(len(mods) - 1, -1, -1):
            out[:, i] = rest % mods[i]
            rest //= mods[i]
        return out


@dataclass(frozen=True)
class Subgroup:
    """A subgroup, canonically the sorted tuple of its encoded elements."""

    group: AbelianPGroup
    element_ids: tuple

    @property
    def order(self) -> int:
        return len(self.element_ids)

    def decode(self) -> np.ndarray:
        return self.group.decode(self.element_ids)

    def contains(self, other: "Subgroup") -> bool:
        return set(other.element_ids) >= set() and set(other.element_ids) <= set(
            self.element_ids
        )


@lru_cache(maxsize=32)
def _tables(p: int, lam: tuple):
    """(addition table, element orders, p-multiplication map) on encoded ids."""
    group = AbelianPGroup(p, lam)
    elems = group.elements()
    mods = np.array(group.moduli, dtype=np.int64)
    sums = (elems[:, None, :] + elems[None, :, :]) % mods
    order = group.order
    add = group.encode(sums.reshape(order * order, -1)).reshape(order, order)
    orders = np.ones(order, dtype=np.int64)
    for idx in range(order):
        o = 1
        for gi, mi in zip(elems[idx], mods):
            oi = int(mi) // math.gcd(int(gi), int(mi))
            o = o * oi // math.gcd(o, oi)
        orders[idx] = o
    pmul = group.encode((elems * p) % mods)
    return add, orders, pmul


@lru_cache(maxsize=32)
def enumerate_subgroups_cached(p: int, lam: tuple):
    group = AbelianPGroup(p, lam)
    if group.order > max_group_order():
        raise GroupSizeError(
            f"group order {group.order} exceeds bound {max_group_order()}"
        )
    if not group.lam:
        return (Subgroup(group, (0,)),)
    add, orders, _ = _tables(p, group.lam)
    n_elems = group.order
    trivial = np.zeros(1, dtype=np.int64)
    seen = {trivial.tobytes(): trivial}
    queue = [trivial]
    while queue:
        harr = queue.pop()
        hset = set(harr.tolist())
        for g in range(n_elems):
            if g in hset:
                continue
            parts = [harr]
            cur = harr
            for _ in range(int(orders[g]) - 1):
                cur = add[cur, g]
                parts.append(cur)
            new = np.unique(np.concatenate(parts))
            key = new.tobytes()
            if key not in seen:
                seen[key] = new
                queue.append(new)
    subs = [
        Subgroup(group, tuple(int(x) for x in arr)) for arr in seen.values()
    ]
    return tuple(sorted(subs, key=lambda h: (h.order, h.element_ids)))


def enumerate_subgroups(group: AbelianPGroup) -> list[Subgroup]:
    """Every subgroup of the group, each exactly once."""
    return list(enumerate_subgroups_cached(group.p, group.lam))


def subgroup_type(sub: Subgroup) -> tuple:
    """Partition mu with mu'_j = log_p |p^{j-1} H / p^j H|."""
    group = sub.group
    if not group.lam:
        return ()
    p = group.p
    mods = np.array(group.moduli, dtype=np.int64)
    vecs = sub.decode()
    conj = []
    scale = 1
    prev = len(np.unique(group.encode(vecs)))
    while prev > 1:
        scale *= p
        cur = len(np.unique(group.encode((vecs * scale) % mods)))
        step, e = prev // cur, 0
        while step > 1:
            step //= p
            e += 1
        conj.append(e)
        prev = cur
    mu = []
    for i in range(1, (conj[0] if conj else 0) + 1):
        mu.append(sum(1 for c in conj if c >= i))
    return tuple(sorted(mu, reverse=True))


@lru_cache(maxsize=64)
def type_census(lam: tuple, p: int = 3):
    """Counts of subgroups by type, from one full enumeration."""
    census: dict = {}
    for sub in enumerate_subgroups_cached(p, strip_zeros(check_partition(lam))):
        tau = subgroup_type(sub)
        census[tau] = census.get(tau, 0) + 1
    return census


def alpha(lam, mu, p: int = 3) -> int:
    """Number of subgroups of type mu in a group of type lam, by enumeration."""
    lam = strip_zeros(check_partition(lam))
    mu = strip_zeros(check_partition(mu))
    return type_census(lam, p).get(mu, 0)


def alpha_predicted(lam, mu, p: int = 3) -> Fraction:
    """p^{n(lam) - n(mu)} * sk(lam/mu)(1/p), the closed-form count."""
    lam = strip_zeros(lam)
    mu = strip_zeros(mu)
    val = sk(lam, mu).evaluate(0, Fraction(1, p))
    return Fraction(p) ** (n_stat(lam) - n_stat(mu)) * val


def count_chains(lam, types, p: int = 3) -> int:
    """Number of nested flags H_1 >= H_2 >= ... inside a group of type lam
    with subgroup_type(H_i) = types[i]."""
    lam = strip_zeros(check_partition(lam))
    subs = enumerate_subgroups_cached(p, lam)
    by_type: dict = {}
    for sub in subs:
        by_type.setdefault(subgroup_type(sub), []).append(sub)
    types = [strip_zeros(t) for t in types]
    if not types:
        return 1
    flags = [[s] for s in by_type.get(types[0], [])]
    for tau in types[1:]:
        nxt = []
        for flag in flags:
            top = set(flag[-1].element_ids)
            for cand in by_type.get(tau, []):
                if set(cand.element_ids) <= top:
                    nxt.append(flag + [cand])
        flags = nxt
    return len(flags)


def chains_predicted(lam, types, p: int = 3) -> Fraction:
    """Product of per-step closed-form counts: the chain polynomial sk_S
    evaluated at 1/p, scaled by the telescoping p-power."""
    seq = [strip_zeros(lam)] + [strip_zeros(t) for t in types]
    out = Fraction(1)
    for a, b in zip(seq, seq[1:]):
        out *= alpha_predicted(a, b, p)
    return out
