"""Deligne-Ribet monoids DR(f): all nonzero ideals modulo f-equivalence.

Two constructions are provided and must agree:

* ``dr_bruteforce`` enumerates every ideal up to a norm budget, partitions
  them by f-equivalence and multiplies representatives.
* ``dr_structured`` uses the decomposition of DR(f) as the disjoint union of
  Cl(f/d) over d | f_fin, with the multiplication

      (d1, c1) * (d2, c2) = (d3, pi(c1) + pi(c2) + [e]),
      d3 = gcd(d1*d2, f_fin),  e = d1*d2/d3,

  where pi projects Cl(f/d_i) onto Cl(f/d3).  This rule is derived rather
  than quoted, so ``dr_isomorphic`` against the brute force is the gate.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Callable, Optional, Sequence

from .arith.cycle import Cycle
from .arith.equivalence import is_f_equivalent
from .arith.field import Ideal, NumberField
from .errors import BijectionMismatch, BudgetExceeded, InputError
from .kernels import table_hom_failure
from .rayclass import RayClassGroup, projection, ray_class_group


@dataclass(frozen=True)
class DRElement:
    """Element i_d(c): the class of a*d for any ideal a with class c in Cl(f/d)."""

    d: Ideal
    cls: tuple[int, ...]

    def key(self) -> tuple:
        return (self.d.key(), self.cls)

    def __repr__(self):
        return f"({self.d!r}, {list(self.cls)})"


@dataclass
class DRMonoid:
    field: NumberField
    cycle: Cycle
    elements: tuple[DRElement, ...]
    reps: tuple[Ideal, ...]
    table: tuple[tuple[int, ...], ...]
    identity: int
    construction: str
    _index: dict = dc_field(default_factory=dict, repr=False)
    _classifier: Optional[Callable[[Ideal], int]] = dc_field(default=None, repr=False)

    def __post_init__(self):
        self._index = {e: i for i, e in enumerate(self.elements)}

    def __len__(self):
        return len(self.elements)

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def index(self, element: DRElement) -> int:
        return self._index[element]

    def index_of(self, ideal: Ideal) -> int:
        """Index of the class of an arbitrary nonzero ideal."""
        if self._classifier is not None:
            return self._classifier(ideal)
        return self._index[dr_class_of(self, ideal)]

    @property
    def units(self) -> list[int]:
        e = self.identity
        return [i for i, row in enumerate(self.table) if e in row]

    @property
    def idempotents(self) -> list[int]:
        return dr_idempotents(self)

    def unit_table(self) -> list[list[int]]:
        u = self.units
        pos = {x: k for k, x in enumerate(u)}
        return [[pos[self.table[x][y]] for y in u] for x in u]


# ---------------------------------------------------------------------------
# structured construction
# ---------------------------------------------------------------------------


def _sort_elements(elements):
    return sorted(elements, key=DRElement.key)


@lru_cache(maxsize=None)
def dr_structured(field: NumberField, f: Cycle) -> DRMonoid:
    if f.field != field:
        raise InputError("cycle belongs to a different field")
    fin = f.finite_ideal
    divisors = f.ideal_divisors()
    groups: dict[Ideal, RayClassGroup] = {d: ray_class_group(field, f / d) for d in divisors}
    elements = _sort_elements(DRElement(d, v) for d in divisors for v in groups[d].elements())
    index = {e: i for i, e in enumerate(elements)}

    def product(x: DRElement, y: DRElement) -> DRElement:
        dd = x.d * y.d
        d3 = dd.gcd(fin)
        e = dd / d3
        G3 = groups[d3]
        c = G3.group.add(projection(groups[x.d], G3.cycle)(x.cls), projection(groups[y.d], G3.cycle)(y.cls))
        c = G3.group.add(c, G3.class_of(e))
        return DRElement(d3, c)

    n = len(elements)
    table = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            k = index[product(elements[i], elements[j])]
            table[i][j] = table[j][i] = k
    reps = tuple(e.d * groups[e.d].rep(e.cls) for e in elements)
    ident = index[DRElement(field.unit_ideal(), groups[field.unit_ideal()].group.zero())]
    return DRMonoid(field, f, tuple(elements), reps, tuple(map(tuple, table)), ident, "structured")


def dr_class_of(M: DRMonoid, a: Ideal) -> DRElement:
    """(d, [a/d]) with d the part of a shared with f_fin, exponentwise min."""
    f = M.cycle
    K = M.field
    d = K.unit_ideal()
    for P, n in f.finite:
        k = min(K.ideal_valuation(P, a), n)
        if k:
            d = d * P.ideal ** k
    G = ray_class_group(K, f / d)
    return DRElement(d, G.class_of(a / d))


# ---------------------------------------------------------------------------
# brute force
# ---------------------------------------------------------------------------


def structured_count(field: NumberField, f: Cycle) -> int:
    return sum(ray_class_group(field, f / d).order for d in f.ideal_divisors())


def default_budget(field: NumberField, f: Cycle) -> int:
    env = os.environ.get("DR_NORM_BUDGET")
    if env:
        return int(env)
    h = ray_class_group(field, Cycle.one(field)).order
    return max(4 * f.norm() * h, 16)


def dr_bruteforce(field: NumberField, f: Cycle, norm_budget: Optional[int] = None,
                  check_count: bool = True) -> DRMonoid:
    """Partition all ideals of norm <= budget by f-equivalence and build the table."""
    if f.field != field:
        raise InputError("cycle belongs to a different field")
    budget = default_budget(field, f) if norm_budget is None else int(norm_budget)
    reps: list[Ideal] = []
    for ideal in field.ideals_up_to(budget):
        if not any(is_f_equivalent(ideal, r, f) for r in reps):
            reps.append(ideal)
    if check_count:
        expected = structured_count(field, f)
        if len(reps) < expected:
            raise BudgetExceeded(
                f"DR({f}): norm budget {budget} exhibits {len(reps)} classes, "
                f"missing {expected - len(reps)} of {expected}"
            )
        if len(reps) > expected:
            raise BijectionMismatch(f"DR({f}): brute force finds {len(reps)} classes, decomposition gives {expected}")

    def classify(ideal: Ideal) -> int:
        for i, r in enumerate(reps):
            if is_f_equivalent(ideal, r, f):
                return i
        raise BudgetExceeded(f"DR({f}): {ideal} is equivalent to no class found within norm {budget}")

    if check_count:
        labels = [_label(field, f, r) for r in reps]
        order = sorted(range(len(reps)), key=lambda i: labels[i].key())
        reps = [reps[i] for i in order]
        labels = [labels[i] for i in order]
    else:
        labels = [DRElement(r, ()) for r in reps]
    n = len(reps)
    table = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            table[i][j] = table[j][i] = classify(reps[i] * reps[j])
    ident = classify(field.unit_ideal())
    labels = tuple(labels)
    M = DRMonoid(field, f, labels, tuple(reps), tuple(map(tuple, table)), ident, "bruteforce")
    M._classifier = classify
    return M


def _label(field: NumberField, f: Cycle, rep: Ideal) -> DRElement:
    d = rep.gcd(f.finite_ideal)
    return DRElement(d, ray_class_group(field, f / d).class_of(rep / d))


# ---------------------------------------------------------------------------
# structure
# ---------------------------------------------------------------------------


class MonoidHom:
    def __init__(self, source: DRMonoid, target: DRMonoid, images: Sequence[int]):
        self.source = source
        self.target = target
        self.images = tuple(images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def is_homomorphism(self) -> bool:
        return (
            self.images[self.source.identity] == self.target.identity
            and table_hom_failure(self.source.table, self.target.table, self.images) is None
        )

    def is_surjective(self) -> bool:
        return len(set(self.images)) == len(self.target)


def dr_projection(M: DRMonoid, target: Cycle) -> MonoidHom:
    if not target.divides(M.cycle):
        raise InputError(f"{target} does not divide {M.cycle}")
    T = dr_structured(M.field, target)
    return MonoidHom(M, T, [T.index_of(r) for r in M.reps])


def dr_idempotents(M: DRMonoid) -> list[int]:
    return [i for i in range(len(M)) if M.table[i][i] == i]


def _signature(table, identity, x) -> tuple:
    """Isomorphism-invariant data of an element."""
    n = len(table)
    is_unit = identity in table[x]
    orbit = []
    seen = {}
    cur = x
    while cur not in seen:
        seen[cur] = len(orbit)
        orbit.append(cur)
        cur = table[cur][x]
    index, period = seen[cur], len(orbit) - seen[cur]
    return (is_unit, table[x][x] == x, len(set(table[x])), index, period, n)


def _generators(table, identity) -> list[int]:
    """Greedy generating set, preferring elements with long cyclic orbits."""
    n = len(table)
    covered = {identity}
    gens: list[int] = []

    def orbit_length(x):
        sig = _signature(table, identity, x)
        return sig[3] + sig[4]

    for x in sorted(range(n), key=lambda x: (-orbit_length(x), x)):
        if x in covered:
            continue
        gens.append(x)
        stack = list(covered)
        while stack:
            y = stack.pop()
            for g in gens:
                z = table[y][g]
                if z not in covered:
                    covered.add(z)
                    stack.append(z)
    return gens


def monoid_isomorphism(t1, id1: int, t2, id2: int) -> Optional[list[int]]:
    """Bijection phi with phi(x*y) = phi(x)*phi(y), or None. Tables are commutative."""
    n = len(t1)
    if n != len(t2):
        return None
    sig1 = [_signature(t1, id1, x) for x in range(n)]
    sig2 = [_signature(t2, id2, x) for x in range(n)]
    if sorted(sig1) != sorted(sig2):
        return None
    gens = _generators(t1, id1)
    candidates = {g: [y for y in range(n) if sig2[y] == sig1[g]] for g in gens}

    def extend(phi: dict, used: set, k: int):
        if k == len(gens):
            return phi
        g = gens[k]
        for img in candidates[g]:
            new_phi = dict(phi)
            new_used = set(used)
            if g in new_phi:
                if new_phi[g] != img:
                    continue
            elif img in new_used:
                continue
            else:
                new_phi[g] = img
                new_used.add(img)
            # close the domain under multiplication by the chosen generators
            ok = True
            stack = list(new_phi)
            while stack and ok:
                x = stack.pop()
                for h in gens[: k + 1]:
                    y = t1[x][h]
                    im = t2[new_phi[x]][new_phi[h]]
                    if y in new_phi:
                        if new_phi[y] != im:
                            ok = False
                            break
                    elif im in new_used:
                        ok = False
                        break
                    else:
                        new_phi[y] = im
                        new_used.add(im)
                        stack.append(y)
            if ok:
                out = extend(new_phi, new_used, k + 1)
                if out is not None:
                    return out
        return None

    phi0 = {id1: id2}
    found = extend(phi0, {id2}, 0)
    if found is None or len(found) != n:
        return None
    phi = [found[x] for x in range(n)]
    if table_hom_failure(t1, t2, phi) is not None:
        return None
    return phi


def same_labelled_table(M1: DRMonoid, M2: DRMonoid) -> bool:
    """True iff matching elements by their (d, class) labels preserves the tables."""
    if set(M1.elements) != set(M2.elements):
        return False
    phi = [M2.index(e) for e in M1.elements]
    return table_hom_failure(M1.table, M2.table, phi) is None


def dr_isomorphic(M1: DRMonoid, M2: DRMonoid) -> Optional[list[int]]:
    if len(M1) != len(M2) or len(M1.units) != len(M2.units):
        return None
    return monoid_isomorphism(M1.table, M1.identity, M2.table, M2.identity)


def cyclic_monoid_table(m: int) -> list[list[int]]:
    """Multiplicative monoid Z/m."""
    return [[(x * y) % m for y in range(m)] for x in range(m)]


def signed_quotient_table(m: int) -> tuple[list[list[int]], list[int]]:
    """(Z/m, *) modulo x ~ -x; returns (table, class representatives)."""
    classes = sorted({min(x % m, (-x) % m) for x in range(m)})
    pos = {c: i for i, c in enumerate(classes)}
    table = [[pos[min((x * y) % m, (-x * y) % m)] for y in classes] for x in classes]
    return table, classes
