"""Finite abelian groups given by generators and relations.

A group Z^n / (row span of R) is brought to Smith form U*R*V = diag(d_1, ...)
with d_1 | d_2 | ...; an exponent vector e then has canonical coordinates
(e*V)_i mod d_i, keeping only the components with d_i > 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(M: Sequence[Sequence[int]]):
    """Return (U, D, V) with U*M*V = D, U and V unimodular, D diagonal.

    Diagonal entries are nonnegative and each divides the next.
    """
    A = [list(map(int, row)) for row in M]
    r = len(A)
    c = len(A[0]) if r else 0
    U = _identity(r)
    V = _identity(c)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        A[dst] = [x + k * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + k * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, k):
        for row in A:
            row[dst] += k * row[src]
        for row in V:
            row[dst] += k * row[src]

    for t in range(min(r, c)):
        while True:
            pivot = None
            for i in range(t, r):
                for j in range(t, c):
                    if A[i][j] and (pivot is None or abs(A[i][j]) < abs(A[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                return U, A, V
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            p = A[t][t]
            dirty = False
            for i in range(t + 1, r):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    dirty |= A[i][t] != 0
            for j in range(t + 1, c):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    dirty |= A[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, r) for j in range(t + 1, c) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    return U, A, V


@dataclass(frozen=True)
class AbelianGroup:
    """Z/d_1 x ... x Z/d_k with d_1 | ... | d_k, all d_i > 1."""

    divisors: tuple[int, ...]

    @property
    def order(self) -> int:
        out = 1
        for d in self.divisors:
            out *= d
        return out

    @property
    def rank(self) -> int:
        return len(self.divisors)

    def zero(self) -> tuple[int, ...]:
        return (0,) * len(self.divisors)

    def reduce(self, v) -> tuple[int, ...]:
        return tuple(int(x) % d for x, d in zip(v, self.divisors))

    def add(self, u, v) -> tuple[int, ...]:
        return tuple((x + y) % d for x, y, d in zip(u, v, self.divisors))

    def neg(self, u) -> tuple[int, ...]:
        return tuple((-x) % d for x, d in zip(u, self.divisors))

    def scale(self, k: int, u) -> tuple[int, ...]:
        return tuple((k * x) % d for x, d in zip(u, self.divisors))

    def basis(self) -> list[tuple[int, ...]]:
        n = len(self.divisors)
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]

    def elements(self) -> Iterator[tuple[int, ...]]:
        return product(*(range(d) for d in self.divisors))

    def element_order(self, u) -> int:
        k, cur = 1, self.reduce(u)
        while cur != self.zero():
            cur = self.add(cur, u)
            k += 1
        return k


@dataclass(frozen=True)
class Presentation:
    """Z^n modulo relations, with the canonicalising map into an AbelianGroup."""

    ngens: int
    relations: tuple[tuple[int, ...], ...]
    group: AbelianGroup
    _columns: tuple[tuple[int, ...], ...]  # columns of V kept for nontrivial divisors

    @classmethod
    def from_relations(cls, ngens: int, relations: Sequence[Sequence[int]]) -> "Presentation":
        rel = [tuple(map(int, r)) for r in relations]
        if ngens == 0:
            return cls(0, (), AbelianGroup(()), ())
        if len(rel) < ngens:
            raise ValueError("relations do not define a finite group")
        _, D, V = smith_normal_form(rel)
        diag = [D[i][i] for i in range(ngens)]
        if any(x == 0 for x in diag):
            raise ValueError("relations do not define a finite group")
        keep = [i for i, x in enumerate(diag) if x > 1]
        cols = tuple(tuple(V[r][i] for r in range(ngens)) for i in keep)
        return cls(ngens, tuple(rel), AbelianGroup(tuple(diag[i] for i in keep)), cols)

    def canonical(self, exponents: Sequence[int]) -> tuple[int, ...]:
        return tuple(
            sum(e * v for e, v in zip(exponents, col)) % d
            for col, d in zip(self._columns, self.group.divisors)
        )
