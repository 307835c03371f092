"""Ray class groups Cl(f), projections between them, conductors of actions.

Cl(f) is built by inserting prime ideals coprime to f in order of increasing
norm.  A prime already f-equivalent to a known class is skipped; otherwise it
becomes a generator, and its first power landing in the known subgroup gives a
relation.  Enumeration stops once the group reaches the order predicted by

    |Cl(f)| = h * |(O/f)*| * 2^(marked real places) / |image of units|,

where h = |Cl(1)| comes from scanning every prime up to the Minkowski bound.
Reaching that order is a proof that every class has been found.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from typing import Mapping, Sequence

from .abelian import AbelianGroup, Presentation
from .arith.cycle import Cycle
from .arith.equivalence import euler_phi, is_f_equivalent, unit_image_order
from .arith.field import Ideal, NumberField, PrimeIdeal
from .errors import BudgetExceeded, InputError, ValidationError
from .kernels import compose, identity_map

log = logging.getLogger(__name__)

DEFAULT_NORM_BOUND = 1000


class RayClassGroup:
    """Cl(f) with one representative ideal per class, each coprime to f."""

    def __init__(self, field: NumberField, cycle: Cycle, presentation: Presentation,
                 reps: Mapping[tuple, Ideal], generators: Sequence[PrimeIdeal]):
        self.field = field
        self.cycle = cycle
        self.presentation = presentation
        self.group: AbelianGroup = presentation.group
        self._reps = dict(sorted(reps.items()))
        self.generators = tuple(generators)
        self._class_cache: dict[Ideal, tuple] = {rep: v for v, rep in self._reps.items()}

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def divisors(self) -> tuple[int, ...]:
        return self.group.divisors

    def elements(self) -> list[tuple]:
        return list(self._reps)

    def rep(self, v) -> Ideal:
        return self._reps[self.group.reduce(v)]

    def representatives(self) -> list[Ideal]:
        return list(self._reps.values())

    def basis_reps(self) -> list[Ideal]:
        return [self.rep(e) for e in self.group.basis()]

    def class_of(self, ideal: Ideal) -> tuple:
        hit = self._class_cache.get(ideal)
        if hit is not None:
            return hit
        if not ideal.coprime(self.cycle.finite_ideal):
            raise InputError(f"{ideal} is not coprime to {self.cycle}")
        for v, rep in self._reps.items():
            if is_f_equivalent(ideal, rep, self.cycle):
                self._class_cache[ideal] = v
                return v
        raise AssertionError(f"{ideal} matches no class of Cl({self.cycle})")

    def __repr__(self):
        return f"Cl({self.cycle}) ~ {self.divisors or '(trivial)'}"


class GroupHom:
    """Homomorphism between ray class groups, given on the Smith basis."""

    def __init__(self, source: RayClassGroup, target: RayClassGroup, images: Sequence[tuple]):
        self.source = source
        self.target = target
        self.images = tuple(images)

    def __call__(self, v) -> tuple:
        out = self.target.group.zero()
        for coeff, img in zip(v, self.images):
            out = self.target.group.add(out, self.target.group.scale(coeff, img))
        return out

    def kernel(self) -> list[tuple]:
        zero = self.target.group.zero()
        return [v for v in self.source.elements() if self(v) == zero]

    def is_surjective(self) -> bool:
        return len({self(v) for v in self.source.elements()}) == self.target.order


@lru_cache(maxsize=None)
def _primes_cached(field: NumberField, bound: int) -> tuple[PrimeIdeal, ...]:
    return tuple(field.primes_up_to(bound))


def expected_order(field: NumberField, f: Cycle) -> int:
    h = ray_class_group(field, Cycle.one(field)).order
    num = h * euler_phi(f) * 2 ** len(f.real_places)
    den = unit_image_order(f)
    if num % den:
        raise AssertionError(f"order formula for Cl({f}) is not integral")
    return num // den


@lru_cache(maxsize=None)
def ray_class_group(field: NumberField, f: Cycle, norm_bound: int = DEFAULT_NORM_BOUND) -> RayClassGroup:
    if f.field != field:
        raise InputError("cycle belongs to a different field")
    if f.is_one():
        expected = None
        bound = field.minkowski_bound()
    else:
        expected = expected_order(field, f)
        bound = max(field.minkowski_bound(), norm_bound)
    fin = f.finite_ideal
    one = field.unit_ideal()

    def find(ideal, pool):
        for raw, r in pool:
            if is_f_equivalent(ideal, r, f):
                return raw
        return None

    gens: list[PrimeIdeal] = []
    relations: list[list[int]] = []
    elems: list[tuple[tuple, Ideal]] = [((), one)]
    for P in _primes_cached(field, bound):
        if expected is not None and len(elems) == expected:
            break
        PI = P.ideal
        if not PI.coprime(fin) or find(PI, elems) is not None:
            continue
        power, k = PI, 1
        while (hit := find(power, elems)) is None:
            power = power * PI
            k += 1
        gens.append(P)
        relations = [r + [0] for r in relations] + [[-h for h in hit] + [k]]
        powers = [one]
        for _ in range(1, k):
            powers.append(powers[-1] * PI)
        elems = [(raw + (j,), r * powers[j]) for j in range(k) for raw, r in elems]
    if expected is not None and len(elems) != expected:
        raise BudgetExceeded(
            f"Cl({f}): primes up to norm {bound} give {len(elems)} of {expected} classes"
        )
    pres = Presentation.from_relations(len(gens), relations)
    reps = {pres.canonical(raw): r for raw, r in elems}
    if len(reps) != len(elems) or pres.group.order != len(elems):
        raise AssertionError(f"inconsistent presentation for Cl({f})")
    log.debug("Cl(%s) = %s from generators %s", f, pres.group.divisors, gens)
    return RayClassGroup(field, f, pres, reps, gens)


def class_group(field: NumberField) -> RayClassGroup:
    return ray_class_group(field, Cycle.one(field))


@lru_cache(maxsize=None)
def _projection_cached(source: RayClassGroup, target_cycle: Cycle) -> GroupHom:
    target = ray_class_group(source.field, target_cycle)
    if target_cycle == source.cycle:
        return GroupHom(source, target, source.group.basis())
    return GroupHom(source, target, [target.class_of(r) for r in source.basis_reps()])


def projection(source: RayClassGroup, target_cycle: Cycle) -> GroupHom:
    if not target_cycle.divides(source.cycle):
        raise InputError(f"{target_cycle} does not divide {source.cycle}")
    return _projection_cached(source, target_cycle)


def check_class_action(rcg: RayClassGroup, action: Mapping[tuple, Sequence[int]]) -> None:
    """Raise ValidationError unless ``action`` is a homomorphism Cl(f) -> Sym(S)."""
    G = rcg.group
    elements = rcg.elements()
    if set(action) != set(elements):
        raise ValidationError("action is not defined on every class")
    n = len(action[G.zero()])
    if list(action[G.zero()]) != identity_map(n):
        raise ValidationError("identity class does not act trivially")
    for v in elements:
        if sorted(action[v]) != list(range(n)):
            raise ValidationError(f"class {v} does not act by a permutation")
        for g in G.basis():
            if list(action[G.add(v, g)]) != compose(action[g], action[v]):
                raise ValidationError(f"action is not a homomorphism at classes {v}, {g}")


def action_factors(hom: GroupHom, action: Mapping[tuple, Sequence[int]]) -> bool:
    """True iff the action is trivial on the kernel of ``hom``."""
    n = len(next(iter(action.values())))
    ident = identity_map(n)
    return all(list(action[v]) == ident for v in hom.kernel())


def conductor_of_action(rcg: RayClassGroup, action: Mapping[tuple, Sequence[int]]) -> Cycle:
    """Smallest divisor f0 of the modulus such that the action factors via Cl(f0)."""
    check_class_action(rcg, action)
    working = [f0 for f0 in rcg.cycle.divisors() if action_factors(projection(rcg, f0), action)]
    best = working[0]
    if not all(best.divides(f0) for f0 in working):
        raise AssertionError(f"conductors of the action are not meet-closed: {working}")
    return best
