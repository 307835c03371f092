"""f-equivalence of ideals, the relation defining Deligne-Ribet monoids.

Two nonzero ideals a, b are f-equivalent when x*a = b for some x in K* that is
positive at the real places of f and satisfies

    ord_P(x - 1) + ord_P(a) >= ord_P(f)

at every finite prime P of f.  Such an x generates b/a, so it is u*g for a
fixed generator g and a unit u.  If eta is a unit with eta = 1 mod f_fin and
eta positive at the marked places, then x and eta*x satisfy the conditions
together, so only units modulo that subgroup need to be tried.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .cycle import Cycle
from .field import FieldElement, Ideal

NOT_PRINCIPAL = "not principal"
NO_UNIT = "principal but no unit satisfies the congruence/sign conditions"
EQUIVALENT = "equivalent"


@dataclass(frozen=True)
class EquivalenceResult:
    equivalent: bool
    witness: Optional[FieldElement]
    reason: str

    def __bool__(self):
        return self.equivalent


def quotient_generator(a: Ideal, b: Ideal) -> Optional[FieldElement]:
    """Some x in K* with x*a = b, or None when b/a is not principal."""
    K = a.field
    if K.degree == 1:
        return K.element(b.c) / a.c
    g = K.is_principal(K.ideal_mul(b, K.ideal_conj(a)))
    if g is None:
        return None
    return g / a.norm()


def satisfies_conditions(x: FieldElement, a: Ideal, f: Cycle) -> bool:
    """Sign and congruence conditions for x*a to be f-equivalent to a."""
    K = a.field
    for s in f.real_places:
        if K.sign(x, s) <= 0:
            return False
    if f.finite:
        y = x - 1
        if y.is_zero():
            return True
        for P, n in f.finite:
            if K.valuation(P, y) + K.ideal_valuation(P, a) < n:
                return False
    return True


def residue_signature(u: FieldElement, f: Cycle) -> tuple:
    """Image of an integral unit in (O/f_fin)* x {signs at marked places}."""
    K = f.field
    res = K.reduce_mod(f.finite_ideal, u) if f.finite else (0, 0)
    return res, tuple(K.sign(u, s) for s in sorted(f.real_places))


@lru_cache(maxsize=4096)
def unit_candidates(f: Cycle) -> tuple[FieldElement, ...]:
    """Units covering U modulo {eta = 1 mod f_fin, eta >> 0 at marked places}."""
    K = f.field
    U = K.unit_group()
    torsion = [U.torsion_generator ** k for k in range(U.torsion_order)]
    eps = U.fundamental_unit
    if eps is None:
        return tuple(torsion)
    one_sig = residue_signature(K.one(), f)
    order = 1
    power = eps
    while residue_signature(power, f) != one_sig:
        power = power * eps
        order += 1
    out = []
    e = K.one()
    for _ in range(order):
        out.extend(t * e for t in torsion)
        e = e * eps
    return tuple(out)


def is_f_equivalent(a: Ideal, b: Ideal, f: Cycle) -> EquivalenceResult:
    if a == b:
        return EquivalenceResult(True, a.field.one(), EQUIVALENT)
    g = quotient_generator(a, b)
    if g is None:
        return EquivalenceResult(False, None, NOT_PRINCIPAL)
    for u in unit_candidates(f):
        x = u * g
        if satisfies_conditions(x, a, f):
            return EquivalenceResult(True, x, EQUIVALENT)
    return EquivalenceResult(False, None, NO_UNIT)


def unit_image_order(f: Cycle) -> int:
    """|image of U in (O/f_fin)* x signs|."""
    K = f.field
    U = K.unit_group()
    gens = [U.torsion_generator] + ([U.fundamental_unit] if U.fundamental_unit is not None else [])
    seen = {residue_signature(K.one(), f)}
    frontier = [K.one()]
    while frontier:
        nxt = []
        for z in frontier:
            for g in gens:
                w = z * g
                sig = residue_signature(w, f)
                if sig not in seen:
                    seen.add(sig)
                    nxt.append(w)
        frontier = nxt
    return len(seen)


def euler_phi(f: Cycle) -> int:
    """|(O/f_fin)*|."""
    out = 1
    for P, e in f.finite:
        q = P.norm()
        out *= (q - 1) * q ** (e - 1)
    return out
