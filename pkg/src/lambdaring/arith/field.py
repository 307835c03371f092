"""Exact arithmetic in Q and in quadratic fields Q(sqrt d).

Elements are written x + y*w in the integral basis {1, w} of O_K, where
w = sqrt(d) if d = 2, 3 mod 4 and w = (1 + sqrt(d))/2 if d = 1 mod 4.  Over Q
the y coordinate is always zero.

Ideals are stored in the canonical form c*(Z*a + Z*(b + w)) with a | N(b + w)
and 0 <= b < a, so equality of ideals is equality of the (c, a, b) triple.
Over Q an ideal (n) is stored as (n, 1, 0).

Each field class implements the ideal-arithmetic backend used by every
higher layer (ray class groups, Deligne-Ribet monoids, the checkers).
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Iterator, Optional

from sympy import factorint, primerange
from sympy.ntheory import sqrt_mod

from ..errors import InputError

SPLIT = "split"
INERT = "inert"
RAMIFIED = "ramified"


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def hnf2(vectors) -> tuple[int, int, int]:
    """Hermite form (A, B, C) of a full-rank sublattice of Z^2.

    The lattice is spanned by (A, 0) and (B, C) with A, C > 0 and 0 <= B < A.
    Vectors are coordinates (u, v) of u + v*w.
    """
    A = 0
    pu, pv = 0, 0
    for u, v in vectors:
        if v == 0:
            A = gcd(A, u)
            continue
        if pv == 0:
            pu, pv = u, v
            continue
        g, s, t = _xgcd(pv, v)
        A = gcd(A, (v // g) * pu - (pv // g) * u)
        pu, pv = s * pu + t * u, g
    if pv < 0:
        pu, pv = -pu, -pv
    if A == 0 or pv == 0:
        raise InputError("lattice is not of full rank (zero ideal?)")
    return A, pu % A, pv


def _squarefree(n: int) -> bool:
    return all(e == 1 for e in factorint(abs(n)).values())


def _valuation_int(n: int, p: int) -> int:
    n = abs(n)
    if n == 0:
        raise ValueError("valuation of zero")
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def _sign_surd(m: Fraction, n: Fraction, d: int) -> int:
    """Sign of m + n*sqrt(d) for d > 0 not a square."""
    if n == 0:
        return (m > 0) - (m < 0)
    if m == 0 or (m > 0) == (n > 0):
        return 1 if (n > 0 if m == 0 else m > 0) else -1
    # opposite signs: compare magnitudes
    if m * m > n * n * d:
        return 1 if m > 0 else -1
    return 1 if n > 0 else -1


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldElement:
    """x + y*w with exact rational coordinates."""

    field: "NumberField"
    x: Fraction
    y: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "y", Fraction(self.y))

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise InputError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, Fraction(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, self.x + other.x, self.y + other.y)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, -self.x, -self.y)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, self.x - other.x, self.y - other.y)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t, n = self.field.w_trace, self.field.w_norm
        x1, y1, x2, y2 = self.x, self.y, other.x, other.y
        yy = y1 * y2
        return FieldElement(self.field, x1 * x2 - n * yy, x1 * y2 + x2 * y1 + t * yy)

    __rmul__ = __mul__

    def conj(self) -> "FieldElement":
        return FieldElement(self.field, self.x + self.field.w_trace * self.y, -self.y)

    def norm(self) -> Fraction:
        t, n = self.field.w_trace, self.field.w_norm
        return self.x * self.x + t * self.x * self.y + n * self.y * self.y

    def trace(self) -> Fraction:
        return 2 * self.x + self.field.w_trace * self.y if self.field.degree == 2 else self.x

    def inverse(self) -> "FieldElement":
        nm = self.norm()
        if nm == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.field.degree == 1:
            return FieldElement(self.field, 1 / self.x)
        c = self.conj()
        return FieldElement(self.field, c.x / nm, c.y / nm)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def is_integral(self) -> bool:
        return self.x.denominator == 1 and self.y.denominator == 1

    def split_denominator(self) -> tuple[tuple[int, int], int]:
        """Return ((u, v), n) with self = (u + v*w)/n, u, v integers, n >= 1."""
        n = self.x.denominator * self.y.denominator // gcd(self.x.denominator, self.y.denominator)
        return (int(self.x * n), int(self.y * n)), n

    def sign(self, place: int) -> int:
        return self.field.sign(self, place)

    def __repr__(self):
        return self.field.format_element(self)


# ---------------------------------------------------------------------------
# ideals and primes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Ideal:
    """Nonzero integral ideal c*(Z*a + Z*(b + w)) in canonical form."""

    field: "NumberField" = dc_field(compare=True, repr=False)
    c: int = 1
    a: int = 1
    b: int = 0

    def _check(self, other: "Ideal"):
        if not isinstance(other, Ideal):
            raise TypeError(f"expected Ideal, got {type(other).__name__}")
        if other.field != self.field:
            raise InputError("ideals of different fields")

    def __mul__(self, other: "Ideal") -> "Ideal":
        self._check(other)
        return self.field.ideal_mul(self, other)

    def __pow__(self, k: int) -> "Ideal":
        return self.field.ideal_pow(self, k)

    def norm(self) -> int:
        return self.field.ideal_norm(self)

    def key(self) -> tuple:
        return (self.norm(), self.c, self.a, self.b)

    def is_one(self) -> bool:
        return self.c == 1 and self.a == 1

    def divides(self, other: "Ideal") -> bool:
        """True iff self | other, i.e. other is contained in self."""
        self._check(other)
        return self.field.ideal_divides(self, other)

    def __truediv__(self, other: "Ideal") -> "Ideal":
        self._check(other)
        return self.field.ideal_div_exact(self, other)

    def gcd(self, other: "Ideal") -> "Ideal":
        self._check(other)
        return self.field.ideal_add(self, other)

    def lcm(self, other: "Ideal") -> "Ideal":
        self._check(other)
        return self.field.ideal_lcm(self, other)

    def coprime(self, other: "Ideal") -> bool:
        return self.gcd(other).is_one()

    def factor(self) -> list[tuple["PrimeIdeal", int]]:
        return self.field.ideal_factor(self)

    def contains(self, element: FieldElement) -> bool:
        return self.field.ideal_contains(self, element)

    def __repr__(self):
        return self.field.format_ideal(self)


@dataclass(frozen=True)
class PrimeIdeal:
    """Prime ideal of O_K above the rational prime p.

    ``root`` is the root r of the minimal polynomial of w mod p for split and
    ramified primes; the prime is then (p, w - r).
    """

    field: "NumberField" = dc_field(repr=False)
    p: int = 2
    kind: str = INERT
    root: Optional[int] = None

    @property
    def ideal(self) -> Ideal:
        return self.field.prime_to_ideal(self)

    def norm(self) -> int:
        return self.ideal.norm()

    @property
    def ramification(self) -> int:
        return 2 if self.kind == RAMIFIED else 1

    def key(self) -> tuple:
        return (self.norm(), self.p, -1 if self.root is None else self.root)

    def __lt__(self, other: "PrimeIdeal") -> bool:
        return self.key() < other.key()

    def __repr__(self):
        return self.field.format_prime(self)


@dataclass(frozen=True)
class UnitGroup:
    field: "NumberField"
    torsion_generator: FieldElement
    torsion_order: int
    fundamental_unit: Optional[FieldElement] = None


# ---------------------------------------------------------------------------
# backend interface
# ---------------------------------------------------------------------------


class NumberField(ABC):
    """Ideal-arithmetic backend. Subclasses: RationalField, QuadraticField."""

    degree: int
    w_trace: int
    w_norm: int

    # -- basic data --------------------------------------------------------
    @property
    @abstractmethod
    def discriminant(self) -> int: ...

    @property
    @abstractmethod
    def signature(self) -> tuple[int, int]: ...

    @property
    def real_places(self) -> tuple[int, ...]:
        return tuple(range(1, self.signature[0] + 1))

    @property
    @abstractmethod
    def name(self) -> str: ...

    def element(self, x, y=0) -> FieldElement:
        return FieldElement(self, Fraction(x), Fraction(y))

    def one(self) -> FieldElement:
        return self.element(1)

    @abstractmethod
    def sign(self, z: FieldElement, place: int) -> int: ...

    @abstractmethod
    def format_element(self, z: FieldElement) -> str: ...

    # -- ideals ------------------------------------------------------------
    def unit_ideal(self) -> Ideal:
        return Ideal(self, 1, 1, 0)

    @abstractmethod
    def ideal(self, *args) -> Ideal: ...

    @abstractmethod
    def principal_ideal(self, z: FieldElement) -> Ideal: ...

    @abstractmethod
    def ideal_mul(self, I: Ideal, J: Ideal) -> Ideal: ...

    @abstractmethod
    def ideal_add(self, I: Ideal, J: Ideal) -> Ideal: ...

    @abstractmethod
    def ideal_norm(self, I: Ideal) -> int: ...

    @abstractmethod
    def ideal_conj(self, I: Ideal) -> Ideal: ...

    @abstractmethod
    def ideal_contains(self, I: Ideal, z: FieldElement) -> bool: ...

    @abstractmethod
    def ideal_div_exact(self, I: Ideal, J: Ideal) -> Ideal: ...

    @abstractmethod
    def reduce_mod(self, I: Ideal, z: FieldElement) -> tuple[int, int]:
        """Canonical residue of an integral element modulo I."""

    @abstractmethod
    def factor_rational_prime(self, p: int) -> list[tuple[PrimeIdeal, int]]: ...

    @abstractmethod
    def prime_to_ideal(self, P: PrimeIdeal) -> Ideal: ...

    @abstractmethod
    def is_principal(self, I: Ideal) -> Optional[FieldElement]: ...

    @abstractmethod
    def unit_group(self) -> UnitGroup: ...

    @abstractmethod
    def minkowski_bound(self) -> int:
        """An integer at least the Minkowski bound."""

    @abstractmethod
    def format_ideal(self, I: Ideal) -> str: ...

    @abstractmethod
    def format_prime(self, P: PrimeIdeal) -> str: ...

    # -- generic ideal operations -------------------------------------------
    def ideal_divides(self, J: Ideal, I: Ideal) -> bool:
        return self.ideal_add(I, J) == J

    def ideal_pow(self, I: Ideal, k: int) -> Ideal:
        if k < 0:
            raise InputError("negative ideal power")
        return _ideal_pow_cached(I, k)

    def ideal_lcm(self, I: Ideal, J: Ideal) -> Ideal:
        # (I + J)(I n J) = IJ in a Dedekind domain
        return self.ideal_div_exact(self.ideal_mul(I, J), self.ideal_add(I, J))

    def ideal_factor(self, I: Ideal) -> list[tuple[PrimeIdeal, int]]:
        out = []
        rest = I
        for p in sorted(factorint(I.norm())):
            for P, _ in self.factor_rational_prime(p):
                k = 0
                PI = P.ideal
                while self.ideal_divides(PI, rest):
                    rest = self.ideal_div_exact(rest, PI)
                    k += 1
                if k:
                    out.append((P, k))
        if not rest.is_one():
            raise AssertionError(f"factorisation of {I} left cofactor {rest}")
        return out

    def ideal_from_factors(self, factors) -> Ideal:
        out = self.unit_ideal()
        for P, e in factors:
            out = self.ideal_mul(out, self.ideal_pow(P.ideal, e))
        return out

    def primes_up_to(self, bound: int) -> list[PrimeIdeal]:
        """All prime ideals of norm <= bound, sorted by (norm, p, root)."""
        out = []
        for p in primerange(2, bound + 1):
            for P, _ in self.factor_rational_prime(int(p)):
                if P.norm() <= bound:
                    out.append(P)
        return sorted(out)

    def ideals_up_to(self, bound: int) -> list[Ideal]:
        """All nonzero ideals of norm <= bound, sorted by canonical key."""
        primes = self.primes_up_to(bound)
        out = []

        def rec(i: int, current: Ideal, nm: int):
            out.append(current)
            for j in range(i, len(primes)):
                pn = primes[j].norm()
                if nm * pn > bound:
                    # primes are sorted by norm
                    break
                rec(j, self.ideal_mul(current, primes[j].ideal), nm * pn)

        rec(0, self.unit_ideal(), 1)
        return sorted(out, key=Ideal.key)

    def valuation(self, P: PrimeIdeal, z) -> float | int:
        """ord_P(z) for z in K; +inf for z = 0."""
        if not isinstance(z, FieldElement):
            z = self.element(z)
        if z.is_zero():
            return float("inf")
        (u, v), n = z.split_denominator()
        num = self._valuation_integral(P, u, v)
        return num - P.ramification * _valuation_int(n, P.p) if n % P.p == 0 else num

    def _valuation_integral(self, P: PrimeIdeal, u: int, v: int) -> int:
        z = self.element(u, v)
        k = 0
        while self.ideal_contains(self.ideal_pow(P.ideal, k + 1), z):
            k += 1
        return k

    def ideal_valuation(self, P: PrimeIdeal, I: Ideal) -> int:
        k = 0
        PI = P.ideal
        while self.ideal_divides(self.ideal_pow(PI, k + 1), I):
            k += 1
        return k


@lru_cache(maxsize=4096)
def _ideal_pow_cached(I: Ideal, k: int) -> Ideal:
    result = I.field.unit_ideal()
    base = I
    while k:
        if k & 1:
            result = I.field.ideal_mul(result, base)
        base = I.field.ideal_mul(base, base)
        k >>= 1
    return result


# ---------------------------------------------------------------------------
# Q
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RationalField(NumberField):
    degree = 1
    w_trace = 0
    w_norm = 0

    @property
    def discriminant(self) -> int:
        return 1

    @property
    def signature(self) -> tuple[int, int]:
        return (1, 0)

    @property
    def name(self) -> str:
        return "Q"

    def sign(self, z: FieldElement, place: int) -> int:
        if place != 1:
            raise InputError(f"Q has one real place, not s{place}")
        return (z.x > 0) - (z.x < 0)

    def format_element(self, z: FieldElement) -> str:
        return str(z.x)

    def ideal(self, n) -> Ideal:
        n = abs(int(n))
        if n == 0:
            raise InputError("zero ideal")
        return Ideal(self, n, 1, 0)

    def principal_ideal(self, z: FieldElement) -> Ideal:
        if not z.is_integral():
            raise InputError("principal ideal of a non-integral element")
        return self.ideal(int(z.x))

    def ideal_mul(self, I, J):
        return Ideal(self, I.c * J.c, 1, 0)

    def ideal_add(self, I, J):
        return Ideal(self, gcd(I.c, J.c), 1, 0)

    def ideal_norm(self, I):
        return I.c

    def ideal_conj(self, I):
        return I

    def ideal_contains(self, I, z):
        return z.is_integral() and int(z.x) % I.c == 0

    def ideal_div_exact(self, I, J):
        if I.c % J.c:
            raise InputError(f"{J} does not divide {I}")
        return Ideal(self, I.c // J.c, 1, 0)

    def reduce_mod(self, I, z):
        return (int(z.x) % I.c, 0)

    def factor_rational_prime(self, p: int):
        return [(PrimeIdeal(self, int(p), INERT, None), 1)]

    def prime_to_ideal(self, P):
        return Ideal(self, P.p, 1, 0)

    def ideal_factor(self, I):
        return [(PrimeIdeal(self, int(p), INERT, None), e) for p, e in sorted(factorint(I.c).items())]

    def is_principal(self, I):
        return self.element(I.c)

    def unit_group(self):
        return UnitGroup(self, self.element(-1), 2, None)

    def minkowski_bound(self) -> int:
        return 1

    def valuation(self, P, z):
        if not isinstance(z, FieldElement):
            z = self.element(z)
        if z.x == 0:
            return float("inf")
        return _valuation_int(z.x.numerator, P.p) - _valuation_int(z.x.denominator, P.p)

    def ideal_valuation(self, P, I):
        return _valuation_int(I.c, P.p)

    def format_ideal(self, I):
        return f"({I.c})"

    def format_prime(self, P):
        return f"({P.p})"


# ---------------------------------------------------------------------------
# Q(sqrt d)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuadraticField(NumberField):
    d: int = -1
    degree = 2

    def __post_init__(self):
        d = int(self.d)
        if d in (0, 1) or not _squarefree(d):
            raise InputError(f"d = {d} must be squarefree and not 0 or 1")
        object.__setattr__(self, "d", d)

    @property
    def w_trace(self) -> int:  # type: ignore[override]
        return 1 if self.d % 4 == 1 else 0

    @property
    def w_norm(self) -> int:  # type: ignore[override]
        return (1 - self.d) // 4 if self.d % 4 == 1 else -self.d

    @property
    def discriminant(self) -> int:
        return self.d if self.d % 4 == 1 else 4 * self.d

    @property
    def signature(self) -> tuple[int, int]:
        return (2, 0) if self.d > 0 else (0, 1)

    @property
    def name(self) -> str:
        if self.d == -1:
            return "Q(i)"
        return f"Q(sqrt {self.d})"

    # -- elements ----------------------------------------------------------
    def _surd(self, z: FieldElement) -> tuple[Fraction, Fraction]:
        """(m, n) with z = m + n*sqrt(d)."""
        if self.w_trace:
            return z.x + z.y / 2, z.y / 2
        return z.x, z.y

    def sign(self, z: FieldElement, place: int) -> int:
        if self.d < 0 or place not in (1, 2):
            raise InputError(f"{self.name} has no real place s{place}")
        m, n = self._surd(z)
        return _sign_surd(m, n if place == 1 else -n, self.d)

    def floor_real(self, z: FieldElement) -> int:
        """floor of the image of z under the first real embedding."""
        m, n = self._surd(z)
        L = m.denominator * n.denominator
        M, N = int(m * L), int(n * L)
        if N == 0:
            return M // L
        t = isqrt(N * N * self.d)
        if N > 0:
            return (M + t) // L
        return (M - t - 1) // L

    def format_element(self, z: FieldElement) -> str:
        w = "i" if self.d == -1 else ("sqrt(%d)" % self.d if not self.w_trace else "w")
        if z.y == 0:
            return str(z.x)
        ys = "" if z.y == 1 else ("-" if z.y == -1 else f"{z.y}*")
        if z.x == 0:
            return f"{ys}{w}"
        sgn = "+" if z.y > 0 else "-"
        ya = abs(z.y)
        ys = "" if ya == 1 else f"{ya}*"
        return f"{z.x} {sgn} {ys}{w}"

    # -- ideals ------------------------------------------------------------
    def _from_hnf(self, A: int, B: int, C: int) -> Ideal:
        if A % C or B % C:
            raise AssertionError(f"lattice ({A},{B},{C}) is not an ideal")
        a, b = A // C, B // C
        if (b * b + self.w_trace * b + self.w_norm) % a:
            raise AssertionError(f"lattice ({A},{B},{C}) not closed under w")
        return Ideal(self, C, a, b)

    @staticmethod
    def _basis(I: Ideal) -> tuple[tuple[int, int], tuple[int, int]]:
        return (I.c * I.a, 0), (I.c * I.b, I.c)

    def ideal(self, c=1, a=1, b=0) -> Ideal:
        c, a, b = int(c), int(a), int(b)
        if c < 1 or a < 1 or not 0 <= b < a:
            raise InputError(f"({c},{a},{b}) is not a canonical ideal triple")
        if (b * b + self.w_trace * b + self.w_norm) % a:
            raise InputError(f"a = {a} does not divide N(b + w) for b = {b}")
        return Ideal(self, c, a, b)

    def ideal_from_elements(self, elements) -> Ideal:
        vecs = []
        for z in elements:
            if not z.is_integral():
                raise InputError(f"{z} is not integral")
            u, v = int(z.x), int(z.y)
            zw = z * self.element(0, 1)
            vecs.append((u, v))
            vecs.append((int(zw.x), int(zw.y)))
        return self._from_hnf(*hnf2(vecs))

    def principal_ideal(self, z: FieldElement) -> Ideal:
        return self.ideal_from_elements([z])

    def _mul_vec(self, p, q):
        t, n = self.w_trace, self.w_norm
        (x1, y1), (x2, y2) = p, q
        yy = y1 * y2
        return (x1 * x2 - n * yy, x1 * y2 + x2 * y1 + t * yy)

    def ideal_mul(self, I, J):
        if I.is_one():
            return J
        if J.is_one():
            return I
        bi, bj = self._basis(I), self._basis(J)
        return self._from_hnf(*hnf2([self._mul_vec(p, q) for p in bi for q in bj]))

    def ideal_add(self, I, J):
        return self._from_hnf(*hnf2(list(self._basis(I)) + list(self._basis(J))))

    def ideal_norm(self, I):
        return I.c * I.c * I.a

    def ideal_conj(self, I):
        (A, _), (B, C) = self._basis(I)
        return self._from_hnf(*hnf2([(A, 0), (B + C * self.w_trace, -C)]))

    def _lattice_contains(self, I: Ideal, u: int, v: int) -> bool:
        (A, _), (B, C) = self._basis(I)
        if v % C:
            return False
        return (u - (v // C) * B) % A == 0

    def ideal_contains(self, I, z):
        if not z.is_integral():
            return False
        return self._lattice_contains(I, int(z.x), int(z.y))

    def ideal_divides(self, J, I):
        return all(self._lattice_contains(J, u, v) for u, v in self._basis(I))

    def ideal_div_exact(self, I, J):
        if J.is_one():
            return I
        if not self.ideal_divides(J, I):
            raise InputError(f"{J} does not divide {I}")
        n = J.norm()
        prod = self.ideal_mul(I, self.ideal_conj(J))
        (A, _), (B, C) = self._basis(prod)
        return self._from_hnf(A // n, B // n, C // n)

    def reduce_mod(self, I, z):
        (A, _), (B, C) = self._basis(I)
        u, v = int(z.x), int(z.y)
        q = v // C
        u, v = u - q * B, v - q * C
        return (u % A, v)

    def _roots_mod(self, p: int) -> list[int]:
        t, n = self.w_trace, self.w_norm
        if p == 2:
            return [r for r in (0, 1) if (r * r - t * r + n) % 2 == 0]
        D = self.discriminant % p
        roots = sqrt_mod(D, p, all_roots=True) or []
        inv2 = pow(2, -1, p)
        return sorted({((t + s) * inv2) % p for s in roots})

    def factor_rational_prime(self, p: int):
        p = int(p)
        return list(_factor_prime_cached(self, p))

    def prime_to_ideal(self, P):
        if P.kind == INERT:
            return Ideal(self, P.p, 1, 0)
        return self.ideal(1, P.p, (-P.root) % P.p)

    # -- principality --------------------------------------------------------
    def is_principal(self, I):
        gen = _principal_cached(self, I)
        return gen

    def _primitive_generator(self, a: int, b: int) -> Optional[FieldElement]:
        """Generator of Z*a + Z*(b + w), or None."""
        if a == 1:
            return self.one()
        B = 2 * b + self.w_trace
        D = self.discriminant
        # 4a*Q(u, v) = (2au + Bv)^2 - D v^2 must equal +-4a
        targets = (4 * a,) if D < 0 else (4 * a, -4 * a)
        if D < 0:
            vmax = isqrt(4 * a // (-D))
        else:
            eps = self.unit_group().fundamental_unit
            E = self.floor_real(eps) + 2
            vmax = isqrt(E * E * a // D) + 1
        for v in sorted(range(-vmax, vmax + 1), key=abs):
            for tgt in targets:
                sq = tgt + D * v * v
                if sq < 0:
                    continue
                s = isqrt(sq)
                if s * s != sq:
                    continue
                for root in {s, -s}:
                    num = root - B * v
                    if num % (2 * a) == 0:
                        u = num // (2 * a)
                        return self.element(u * a + v * b, v)
        return None

    def unit_group(self):
        return _unit_group_cached(self)

    def minkowski_bound(self) -> int:
        D = abs(self.discriminant)
        if self.d > 0:
            return isqrt(D // 4) + 1
        # 2/pi < 0.6367
        return isqrt(D * 6367 * 6367 // 10 ** 8) + 1

    def format_ideal(self, I):
        if I.a == 1:
            return f"({I.c})"
        w = "i" if self.d == -1 else ("w" if self.w_trace else f"sqrt({self.d})")
        gen = f"{I.b}+{w}" if I.b else w
        return f"[{I.a}, {gen}]" if I.c == 1 else f"{I.c}*[{I.a}, {gen}]"

    def format_prime(self, P):
        if P.kind == INERT:
            return f"P({P.p})"
        return f"P({P.p},{P.root})"


@lru_cache(maxsize=None)
def _factor_prime_cached(K: QuadraticField, p: int):
    roots = K._roots_mod(p)
    if K.discriminant % p == 0:
        return ((PrimeIdeal(K, p, RAMIFIED, roots[0]), 2),)
    if len(roots) == 2:
        return tuple((PrimeIdeal(K, p, SPLIT, r), 1) for r in roots)
    return ((PrimeIdeal(K, p, INERT, None), 1),)


@lru_cache(maxsize=65536)
def _principal_cached(K: QuadraticField, I: Ideal) -> Optional[FieldElement]:
    g = K._primitive_generator(I.a, I.b)
    if g is None:
        return None
    return g * I.c


@lru_cache(maxsize=None)
def _unit_group_cached(K: QuadraticField) -> UnitGroup:
    if K.d == -1:
        return UnitGroup(K, K.element(0, 1), 4, None)
    if K.d == -3:
        return UnitGroup(K, K.element(0, 1), 6, None)
    if K.d < 0:
        return UnitGroup(K, K.element(-1), 2, None)
    return UnitGroup(K, K.element(-1), 2, _fundamental_unit(K))


def _fundamental_unit(K: QuadraticField, max_steps: int = 100000) -> FieldElement:
    """Smallest unit > 1 (first real embedding), from the continued fraction of w."""
    d = K.d
    P, Q = (1, 2) if K.w_trace else (0, 1)
    s = isqrt(d)
    h_prev, h = 0, 1
    k_prev, k = 1, 0
    one = K.one()
    for _ in range(max_steps):
        if Q > 0:
            a = (P + s) // Q
        else:
            a = -((P + s) // (-Q) + 1)
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
        eta = K.element(h, -k)
        if abs(eta.norm()) == 1:
            for cand in (eta, -eta, eta.inverse(), -eta.inverse()):
                if K.sign(cand - one, 1) > 0:
                    return cand
        P = a * Q - P
        Q = (d - P * P) // Q
    raise AssertionError("continued fraction did not reach a unit")


def make_field(spec) -> NumberField:
    """Parse 'Q', 'Q(i)', 'Q(sqrt -5)', 'Q(sqrt(2))' or an integer d."""
    if isinstance(spec, NumberField):
        return spec
    if isinstance(spec, int):
        return QuadraticField(spec)
    if isinstance(spec, dict):
        if spec.get("d") in (None, "1", 1):
            return RationalField()
        return QuadraticField(int(spec["d"]))
    text = str(spec).replace(" ", "")
    if text in ("Q", "QQ"):
        return RationalField()
    if text == "Q(i)":
        return QuadraticField(-1)
    for prefix in ("Q(sqrt(", "Q(sqrt"):
        if text.startswith(prefix):
            body = text[len(prefix):].rstrip(")")
            try:
                return QuadraticField(int(body))
            except ValueError:
                break
    raise InputError(f"cannot parse field {spec!r}")
