"""Finite abelian groups in invariant-factor form, Young subgroups, and the
quotient-group computation used by the stabilizer comparison."""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial, gcd
from typing import Callable, Iterable, Sequence

Perm = tuple[int, ...]


class NonabelianQuotientError(Exception):
    """Raised when a stabilizer quotient turns out nonabelian.

    The comparison theorem implies the quotient is abelian, but the
    computation does not assume it; a nonabelian quotient is reported as a
    distinguished failure instead of silently mis-decomposing."""


def compose(p: Perm, q: Perm) -> Perm:
    """(p ∘ q)(i) = p(q(i))."""
    return tuple(p[x] for x in q)


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def identity(n: int) -> Perm:
    return tuple(range(n))


def cycles(p: Perm) -> list[tuple[int, ...]]:
    """Nontrivial cycles, 0-based, each starting at its minimal element."""
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i] or p[i] == i:
            seen[i] = True
            continue
        cyc = [i]
        seen[i] = True
        j = p[i]
        while j != i:
            cyc.append(j)
            seen[j] = True
            j = p[j]
        out.append(tuple(cyc))
    return out


def cycle_notation(p: Perm) -> str:
    cs = cycles(p)
    if not cs:
        return "id"
    return "".join("(" + " ".join(str(x + 1) for x in c) + ")" for c in cs)


def from_cycles(n: int, cycs: Sequence[Sequence[int]]) -> Perm:
    """Permutation from 1-based cycles."""
    out = list(range(n))
    for c in cycs:
        for a, b in zip(c, c[1:] + type(c)([c[0]])):
            out[a - 1] = b - 1
    return tuple(out)


def invariant_factors(cyclic_orders: Iterable[int]) -> tuple[int, ...]:
    """Invariant factors d_1 | d_2 | ... of a product of cyclic groups."""
    powers: dict[int, list[int]] = {}
    for m in cyclic_orders:
        if m < 1:
            raise ValueError("cyclic order must be positive")
        d = 2
        while d * d <= m:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            if e:
                powers.setdefault(d, []).append(e)
            d += 1
        if m > 1:
            powers.setdefault(m, []).append(1)
    if not powers:
        return ()
    k = max(len(v) for v in powers.values())
    factors = [1] * k
    for p, exps in powers.items():
        exps = sorted(exps, reverse=True)
        for i, e in enumerate(exps):
            factors[i] *= p ** e
    factors = [f for f in factors if f > 1]
    return tuple(sorted(factors))


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Invariant-factor form: factors ascending with d_i | d_{i+1}."""

    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        fs = self.invariant_factors
        if any(f < 2 for f in fs):
            raise ValueError("invariant factors must be >= 2")
        if any(fs[i + 1] % fs[i] != 0 for i in range(len(fs) - 1)):
            raise ValueError("invariant factors must form a divisibility chain")

    @staticmethod
    def from_cyclic_orders(orders: Iterable[int]) -> "FiniteAbelianGroup":
        return FiniteAbelianGroup(invariant_factors(orders))

    def order(self) -> int:
        out = 1
        for f in self.invariant_factors:
            out *= f
        return out

    def is_trivial(self) -> bool:
        return not self.invariant_factors


@dataclass(frozen=True)
class YoungSubgroup:
    """Product of full symmetric groups on the blocks of a set partition."""

    n: int
    blocks: tuple[tuple[int, ...], ...]  # 0-based, sorted, only blocks of size >= 2

    def order(self) -> int:
        out = 1
        for b in self.blocks:
            out *= factorial(len(b))
        return out

    def blocks_one_based(self) -> list[list[int]]:
        return [[x + 1 for x in b] for b in self.blocks]


def young_subgroup_of(perms: Sequence[Perm], n: int) -> YoungSubgroup:
    """The Young subgroup generated by a set of permutations, if it is one.

    Raises if the group generated by the orbits' symmetric groups differs in
    order from the given set (i.e. the set is not a full Young subgroup)."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in perms:
        for i, x in enumerate(p):
            ri, rx = find(i), find(x)
            if ri != rx:
                parent[ri] = rx
    blocks: dict[int, list[int]] = {}
    for i in range(n):
        blocks.setdefault(find(i), []).append(i)
    bl = tuple(tuple(sorted(b)) for b in sorted(blocks.values()) if len(b) >= 2)
    yg = YoungSubgroup(n, bl)
    if yg.order() != len(set(perms)):
        raise ValueError("permutation set is not a Young subgroup")
    return yg


def abelian_invariant_factors_of_group(elements: Sequence, mul: Callable,
                                       ident) -> tuple[int, ...]:
    """Invariant factors of a finite abelian group given by its multiplication.

    Classical peeling: an element of maximal order spans a direct summand;
    recurse on the quotient, taking minima over cosets as canonical
    representatives.  Raises NonabelianQuotientError on a nonabelian input.
    """
    elems = sorted(elements)
    for x in elems:
        for y in elems:
            if mul(x, y) != mul(y, x):
                raise NonabelianQuotientError(f"non-commuting classes {x} and {y}")

    def peel(elems, mul, ident):
        if len(elems) == 1:
            return []

        def order_of(x):
            k, acc = 1, x
            while acc != ident:
                acc = mul(acc, x)
                k += 1
            return k

        orders = {x: order_of(x) for x in elems}
        exponent = 1
        for o in orders.values():
            exponent = exponent * o // gcd(exponent, o)
        gen = next(x for x in elems if orders[x] == exponent)
        sub = [ident]
        acc = gen
        while acc != ident:
            sub.append(acc)
            acc = mul(acc, gen)
        reps = sorted({min(mul(g, h) for h in sub) for g in elems})
        qident = min(sub)

        def qmul(a, b):
            return min(mul(mul(a, b), h) for h in sub)

        return peel(reps, qmul, qident) + [exponent]

    factors = peel(elems, mul, ident)
    total = 1
    for f in factors:
        total *= f
    assert total == len(elems), "invariant factor product must equal group order"
    return tuple(f for f in factors if f > 1)
