"""Independent oracles used by the tests.

Nothing here calls the library's equivalence, ray-class or checker code.
Elements are plain integer pairs (u, v) meaning u + v*w, and the only library
pieces used are the field's w data and canonical ideal triples.
"""

from __future__ import annotations

from itertools import permutations, product
from math import gcd, isqrt


# -- Q ----------------------------------------------------------------------


def residue_equivalent(a: int, b: int, m: int, infinite: bool) -> bool:
    """(a) ~ (b) modulo m (times inf when ``infinite``) for positive a, b."""
    if infinite:
        return (a - b) % m == 0
    return (a - b) % m == 0 or (a + b) % m == 0


def euler_phi(m: int) -> int:
    return sum(1 for k in range(1, m + 1) if gcd(k, m) == 1)


def residue_ray_class_order(m: int, infinite: bool) -> int:
    units = [k for k in range(m) if gcd(k, m) == 1] if m > 1 else [0]
    if infinite:
        return len(units)
    return len({min(k, (-k) % m) for k in units})


def residue_dr_size(m: int, infinite: bool) -> int:
    """Number of classes of positive integers under residue_equivalent."""
    reps: list[int] = []
    for a in range(1, 4 * m + 2):
        if not any(residue_equivalent(a, r, m, infinite) for r in reps):
            reps.append(a)
    return len(reps)


# -- quadratic orders by hand ------------------------------------------------


def w_data(d: int) -> tuple[int, int]:
    """(trace, norm) of w for Q(sqrt d)."""
    if d % 4 == 1:
        return 1, (1 - d) // 4
    return 0, -d


def norm_form(d: int, u: int, v: int) -> int:
    t, n = w_data(d)
    return u * u + t * u * v + n * v * v


def mul(d: int, p, q):
    t, n = w_data(d)
    (x1, y1), (x2, y2) = p, q
    return (x1 * x2 - n * y1 * y2, x1 * y2 + x2 * y1 + t * y1 * y2)


def split_type(d: int, p: int) -> str:
    """Splitting of p read off x^2 - t x + n mod p by trial."""
    t, n = w_data(d)
    disc = d if d % 4 == 1 else 4 * d
    if disc % p == 0:
        return "ramified"
    roots = [r for r in range(p) if (r * r - t * r + n) % p == 0]
    return "split" if len(roots) == 2 else "inert"


def elements_of_norm(d: int, target: int):
    """All (u, v) with N(u + v w) = target, for d < 0 (positive definite form)."""
    assert d < 0
    t, n = w_data(d)
    # 4N = (2u + t v)^2 + (4n - t^2) v^2 and 4n - t^2 = -disc > 0
    disc = -(4 * n - t * t)
    vmax = isqrt(4 * target // -disc) + 1
    out = []
    for v in range(-vmax, vmax + 1):
        rest = 4 * target + disc * v * v
        if rest < 0:
            continue
        s = isqrt(rest)
        if s * s != rest:
            continue
        for root in {s, -s}:
            if (root - t * v) % 2 == 0:
                out.append(((root - t * v) // 2, v))
    return sorted(set(out))


def units_by_search(d: int):
    """Units of an imaginary quadratic order by direct search."""
    return elements_of_norm(d, 1)


def lattice_basis(I):
    return [(I.c * I.a, 0), (I.c * I.b, I.c)]


def in_lattice(I, z) -> bool:
    """Membership test by solving the 2x2 triangular system."""
    (A, _), (B, C) = lattice_basis(I)
    u, v = z
    if v % C:
        return False
    return (u - (v // C) * B) % A == 0


def imag_equivalent(d: int, I, J, fin, places=()) -> bool:
    """I ~ J modulo fin for an imaginary quadratic field, straight from the definition.

    x I = J means x = gamma / N(I) with gamma in J * conj(I) of norm N(I) N(J).
    The congruence condition ord_P(x - 1) + ord_P(I) >= ord_P(fin) for all P is
    equivalent to (x - 1) alpha in fin for the two basis elements alpha of I,
    since (x - 1) alpha = x alpha - alpha is integral.
    """
    assert d < 0 and not places
    nI = I.c * I.c * I.a
    nJ = J.c * J.c * J.a
    for gamma in elements_of_norm(d, nI * nJ):
        # x = gamma / nI; x*alpha must lie in J for the basis of I
        good = True
        diffs = []
        for alpha in lattice_basis(I):
            g = mul(d, gamma, alpha)
            if g[0] % nI or g[1] % nI:
                good = False
                break
            xa = (g[0] // nI, g[1] // nI)
            if not in_lattice(J, xa):
                good = False
                break
            diffs.append((xa[0] - alpha[0], xa[1] - alpha[1]))
        if not good:
            continue
        # x I is contained in J with equal norms, hence x I = J
        if all(in_lattice(fin, z) for z in diffs):
            return True
    return False


# -- local criterion by definition --------------------------------------------


def compose(f, g):
    return tuple(f[x] for x in g)


def group_closure(gens, n):
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(tuple(g), x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def periodic_points(psi):
    """Points on a psi-cycle; this is the intersection of all psi^k(S)."""
    n = len(psi)
    out = set()
    for s in range(n):
        x = psi[s]
        for _ in range(n):
            if x == s:
                out.add(s)
                break
            x = psi[x]
    return out


def local_oracle(n, psi, frobenius, generators, inertia) -> tuple[bool, int | None]:
    """(answer, first failing condition) by brute force over I and the coset F*I."""
    unr = periodic_points(psi)
    I = group_closure(inertia, n)
    for h in I:
        if any(h[s] != s for s in unr):
            return False, 1
    for h in I:
        fh = compose(tuple(frobenius), h)
        if any(fh[s] != psi[s] for s in unr):
            return False, 2
    return True, None


def is_valid_local(n, psi, frobenius, generators, inertia) -> bool:
    gens = list(generators) + list(inertia) + [frobenius]
    for g in gens:
        if any(psi[g[i]] != g[psi[i]] for i in range(n)):
            return False
    I = group_closure(inertia, n)
    for g in gens:
        inv = [0] * n
        for i, x in enumerate(g):
            inv[x] = i
        for h in inertia:
            if compose(compose(tuple(g), tuple(h)), tuple(inv)) not in I:
                return False
    return True


def all_maps(n):
    return list(product(range(n), repeat=n))


def all_perms(n):
    return list(permutations(range(n)))
