"""Pure-Python finite-map and table kernels (fallback for the compiled core).

Maps on {0, ..., n-1} are sequences m with m[i] the image of i.  Composition
compose(f, g) applies g first.
"""

from __future__ import annotations


def identity_map(n):
    return list(range(n))


def compose(f, g):
    return [f[x] for x in g]


def commutes(f, g):
    return all(f[g[i]] == g[f[i]] for i in range(len(f)))


def image(f, subset):
    return sorted({f[s] for s in subset})


def stable_image(f):
    """Return (eventual image of f as a sorted list, number of strict steps)."""
    current = set(range(len(f)))
    steps = 0
    while True:
        nxt = {f[s] for s in current}
        if nxt == current:
            return sorted(current), steps
        current = nxt
        steps += 1


def map_power(f, k):
    out = list(range(len(f)))
    for _ in range(k):
        out = [f[x] for x in out]
    return out


def action_hom_failure(table, rho):
    """First (x, y) with rho[x*y] != rho[x] o rho[y], or None."""
    n = len(table)
    for x in range(n):
        rx = rho[x]
        row = table[x]
        for y in range(n):
            rxy = rho[row[y]]
            ry = rho[y]
            for s in range(len(rx)):
                if rxy[s] != rx[ry[s]]:
                    return (x, y)
    return None


def table_hom_failure(t1, t2, phi):
    """First (x, y) with phi[x*y] != phi[x]*phi[y], or None."""
    n = len(t1)
    for x in range(n):
        row = t1[x]
        px = t2[phi[x]]
        for y in range(n):
            if phi[row[y]] != px[phi[y]]:
                return (x, y)
    return None
