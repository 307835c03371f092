"""Cycles (moduli): a finite ideal part together with a set of real places."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, Iterator

from ..errors import InputError
from .field import Ideal, NumberField, PrimeIdeal


@dataclass(frozen=True)
class Cycle:
    field: NumberField
    finite: tuple[tuple[PrimeIdeal, int], ...] = ()
    real_places: frozenset = frozenset()

    @classmethod
    def make(cls, field: NumberField, finite=(), real_places: Iterable[int] = ()) -> "Cycle":
        """Canonicalising constructor. ``finite`` is a mapping or (prime, exp) pairs."""
        items = finite.items() if isinstance(finite, dict) else finite
        exps: dict[PrimeIdeal, int] = {}
        for P, e in items:
            if P.field != field:
                raise InputError("prime of a different field in cycle")
            if e < 0:
                raise InputError("negative exponent in cycle")
            if e:
                exps[P] = exps.get(P, 0) + int(e)
        places = frozenset(int(s) for s in real_places)
        if not places <= set(field.real_places):
            raise InputError(f"{field.name} has real places {field.real_places}, got {sorted(places)}")
        return cls(field, tuple(sorted(exps.items(), key=lambda t: t[0].key())), places)

    @classmethod
    def from_ideal(cls, ideal: Ideal, real_places: Iterable[int] = ()) -> "Cycle":
        return cls.make(ideal.field, ideal.factor(), real_places)

    @classmethod
    def one(cls, field: NumberField) -> "Cycle":
        return cls(field, (), frozenset())

    # -- accessors -----------------------------------------------------------
    def exponent(self, P: PrimeIdeal) -> int:
        for Q, e in self.finite:
            if Q == P:
                return e
        return 0

    @property
    def primes(self) -> tuple[PrimeIdeal, ...]:
        return tuple(P for P, _ in self.finite)

    @cached_property
    def finite_ideal(self) -> Ideal:
        return self.field.ideal_from_factors(self.finite)

    def norm(self) -> int:
        return self.finite_ideal.norm()

    def is_one(self) -> bool:
        return not self.finite and not self.real_places

    def key(self) -> tuple:
        return (
            self.norm(),
            len(self.real_places),
            tuple((P.key(), e) for P, e in self.finite),
            tuple(sorted(self.real_places)),
        )

    # -- lattice operations --------------------------------------------------
    def _check(self, other: "Cycle"):
        if other.field != self.field:
            raise InputError("cycles of different fields")

    def divides(self, other: "Cycle") -> bool:
        self._check(other)
        return self.real_places <= other.real_places and all(e <= other.exponent(P) for P, e in self.finite)

    def gcd(self, other: "Cycle") -> "Cycle":
        self._check(other)
        fin = {P: min(e, other.exponent(P)) for P, e in self.finite}
        return Cycle.make(self.field, fin, self.real_places & other.real_places)

    def lcm(self, other: "Cycle") -> "Cycle":
        self._check(other)
        fin = dict(self.finite)
        for P, e in other.finite:
            fin[P] = max(fin.get(P, 0), e)
        return Cycle.make(self.field, fin, self.real_places | other.real_places)

    def times_ideal(self, d: Ideal) -> "Cycle":
        fin = dict(self.finite)
        for P, e in d.factor():
            fin[P] = fin.get(P, 0) + e
        return Cycle.make(self.field, fin, self.real_places)

    def __truediv__(self, d: Ideal) -> "Cycle":
        """f/d for an ideal d dividing the finite part; real places are kept."""
        fin = dict(self.finite)
        for P, e in d.factor():
            if fin.get(P, 0) < e:
                raise InputError(f"{d} does not divide the finite part of {self}")
            fin[P] -= e
        return Cycle.make(self.field, fin, self.real_places)

    def ideal_divisors(self) -> list[Ideal]:
        """All ideals dividing the finite part, sorted by canonical key."""
        out = []
        for exps in product(*(range(e + 1) for _, e in self.finite)):
            out.append(self.field.ideal_from_factors(zip(self.primes, exps)))
        return sorted(out, key=Ideal.key)

    def divisors(self) -> list["Cycle"]:
        """All divisor cycles, sorted by (norm, number of places, primes)."""
        places = sorted(self.real_places)
        out = []
        for exps in product(*(range(e + 1) for _, e in self.finite)):
            for mask in product((0, 1), repeat=len(places)):
                chosen = [s for s, m in zip(places, mask) if m]
                out.append(Cycle.make(self.field, zip(self.primes, exps), chosen))
        return sorted(out, key=Cycle.key)

    def maximal_proper_divisors(self) -> Iterator["Cycle"]:
        """Divisors obtained by lowering one exponent by one or dropping one place."""
        for P, e in self.finite:
            fin = dict(self.finite)
            fin[P] = e - 1
            yield Cycle.make(self.field, fin, self.real_places)
        for s in sorted(self.real_places):
            yield Cycle.make(self.field, self.finite, self.real_places - {s})

    def __str__(self):
        parts = [f"{P!r}^{e}" if e > 1 else repr(P) for P, e in self.finite]
        fin = "*".join(parts) if parts else "1"
        if self.field.degree == 1:
            fin = str(self.norm())
        inf = "".join(f"*inf{s}" if self.field.degree == 2 else "*inf" for s in sorted(self.real_places))
        return fin + inf

    __repr__ = __str__
