"""Integer partitions: orders, conjugation, box complements, enumeration."""

from __future__ import annotations

from itertools import accumulate, product
from typing import Iterable, Iterator

__all__ = [
    "Partition",
    "dominance_leq",
    "contained",
    "conjugate",
    "complement_in_box",
    "enumerate_partitions",
    "partitions_of",
    "sub_partitions",
]


class Partition(tuple):
    """Weakly decreasing tuple of positive integers (trailing zeros trimmed)."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = [int(p) for p in parts]
        if any(p < 0 for p in parts):
            raise ValueError(f"negative part in {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts not weakly decreasing: {parts}")
        while parts and parts[-1] == 0:
            parts.pop()
        return super().__new__(cls, parts)

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def part(self, i: int) -> int:
        """1-based part, zero beyond the length."""
        return self[i - 1] if i <= len(self) else 0

    def padded(self, n: int) -> tuple[int, ...]:
        if len(self) > n:
            raise ValueError(f"{self} has more than {n} parts")
        return tuple(self) + (0,) * (n - len(self))

    def conjugate(self) -> "Partition":
        return conjugate(self)

    def boxes(self) -> Iterator[tuple[int, int]]:
        """Cells (i, j), 1-based row and column."""
        for i, row in enumerate(self, 1):
            for j in range(1, row + 1):
                yield i, j

    def add_column(self, n: int) -> "Partition":
        """nu + (1^n)."""
        return Partition(p + 1 for p in self.padded(n))

    def __repr__(self):
        return f"Partition({list(self)})"


def dominance_leq(mu: Partition, lam: Partition) -> bool:
    """mu <= lam in dominance order; only defined for equal weights."""
    mu, lam = Partition(mu), Partition(lam)
    if mu.weight != lam.weight:
        raise ValueError(f"dominance order compares equal weights only: {mu} vs {lam}")
    m = max(len(mu), len(lam))
    ps_mu = accumulate(mu.padded(m))
    ps_lam = accumulate(lam.padded(m))
    return all(x <= y for x, y in zip(ps_mu, ps_lam))


def contained(mu: Partition, lam: Partition) -> bool:
    """mu is a subdiagram of lam: mu_i <= lam_i for all i."""
    if len(mu) > len(lam):
        return False
    return all(m <= l for m, l in zip(mu, lam))


def conjugate(lam: Partition) -> Partition:
    lam = Partition(lam)
    if not lam:
        return Partition()
    return Partition(sum(1 for p in lam if p >= j) for j in range(1, lam[0] + 1))


def complement_in_box(nu: Partition, N: int, n: int) -> Partition:
    """Complement of nu inside the n x N rectangle: nu_hat_i = N - nu_{n-i+1}."""
    nu = Partition(nu)
    if len(nu) > n or (nu and nu[0] > N):
        raise ValueError(f"{nu} does not fit in the box ({N}^{n})")
    p = nu.padded(n)
    return Partition(N - p[n - i] for i in range(1, n + 1))


def partitions_of(weight: int, max_length: int, max_part: int | None = None) -> list[Partition]:
    """Partitions of ``weight`` with at most ``max_length`` parts, lex-descending."""
    if max_part is None:
        max_part = weight
    out: list[Partition] = []

    def rec(remaining, slots, cap, prefix):
        if remaining == 0:
            out.append(Partition(prefix))
            return
        if slots == 0:
            return
        for p in range(min(remaining, cap), 0, -1):
            if p * slots < remaining:
                break
            rec(remaining - p, slots - 1, p, prefix + [p])

    rec(weight, max_length, max_part, [])
    return out


def enumerate_partitions(max_weight: int, max_length: int) -> list[Partition]:
    """All partitions with |lam| <= max_weight and l(lam) <= max_length.

    Ordered by weight, then reverse-lexicographically within a weight.
    """
    if max_weight < 0 or max_length < 0:
        raise ValueError("bounds must be nonnegative")
    out: list[Partition] = []
    for w in range(max_weight + 1):
        out.extend(partitions_of(w, max_length))
    return out


def sub_partitions(lam: Partition) -> list[Partition]:
    """All mu contained in lam (including lam and the empty partition)."""
    lam = Partition(lam)
    out = []
    for parts in product(*(range(p + 1) for p in lam)):
        if all(parts[i] >= parts[i + 1] for i in range(len(parts) - 1)):
            out.append(Partition(parts))
    out.sort(key=lambda p: (p.weight, tuple(-x for x in p)))
    return out
