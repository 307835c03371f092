"""Integral-model criterion over a complete discrete valuation ring.

A local datum is a finite set S = {0, ..., n-1} with a permutation action of
a finite group G (the image of the absolute Galois group), a normal subgroup
I (the image of inertia), a Frobenius representative F in G, and a self-map
psi of S giving the action of the maximal ideal.  An integral model exists
iff on S_unr = intersection of psi^k(S):

1. I acts trivially, and
2. psi and F agree.

The constructions below mirror the existence proof: the filtration
S_0 = S_unr, S_i = {s : psi(s) in S_{i-1}} \\ S_{<i}, the retraction
s -> psi|S_0^{-i}(psi^i(s)) for s in S_i, and the model with ideals p^i R_i
on the layers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..errors import ValidationError
from ..kernels import commutes, compose, identity_map, stable_image
from .verdict import Verdict


@dataclass(frozen=True)
class LocalActionSpec:
    n: int
    generators: tuple[tuple[int, ...], ...]
    inertia: tuple[tuple[int, ...], ...]
    frobenius: tuple[int, ...]
    psi: tuple[int, ...]

    @classmethod
    def make(cls, n, psi, frobenius=None, generators=(), inertia=()):
        return cls(
            int(n),
            tuple(tuple(g) for g in generators),
            tuple(tuple(h) for h in inertia),
            tuple(frobenius) if frobenius is not None else tuple(range(int(n))),
            tuple(psi),
        )

    @property
    def group_generators(self) -> list[tuple[int, ...]]:
        return list(self.generators) + list(self.inertia) + [self.frobenius]


def _is_perm(p, n) -> bool:
    return len(p) == n and sorted(p) == list(range(n))


def _inverse(p) -> list[int]:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return inv


def closure(gens: Sequence[Sequence[int]], n: int, limit: int = 200000) -> set[tuple[int, ...]]:
    """The permutation group generated by ``gens``."""
    ident = tuple(range(n))
    seen = {ident}
    stack = [ident]
    gens = [tuple(g) for g in gens]
    while stack:
        x = stack.pop()
        for g in gens:
            y = tuple(compose(g, x))
            if y not in seen:
                seen.add(y)
                stack.append(y)
                if len(seen) > limit:
                    raise ValidationError("generated group is too large to enumerate")
    return seen


def validate_local(spec: LocalActionSpec) -> LocalActionSpec:
    n = spec.n
    if n < 0:
        raise ValidationError("set size must be nonnegative")
    if len(spec.psi) != n or any(not 0 <= x < n for x in spec.psi):
        raise ValidationError("psi is not a self-map of S")
    for name, perms in (("generator", spec.generators), ("inertia generator", spec.inertia),
                        ("frobenius", (spec.frobenius,))):
        for k, p in enumerate(perms):
            if not _is_perm(p, n):
                raise ValidationError(f"{name} {k} is not a permutation of S")
    for k, g in enumerate(spec.group_generators):
        if not commutes(spec.psi, g):
            raise ValidationError(f"psi does not commute with group generator {k}")
    inertia = closure(spec.inertia, n)
    for k, g in enumerate(spec.group_generators):
        ginv = _inverse(g)
        for j, h in enumerate(spec.inertia):
            if tuple(compose(g, compose(h, ginv))) not in inertia:
                raise ValidationError(f"inertia is not normal: conjugate of inertia generator {j} by generator {k}")
    return spec


def stabilized_subset(n: int, psis: Sequence[Sequence[int]]) -> list[int]:
    """S_unr: eventual image of the product of the (commuting) maps."""
    prod = identity_map(n)
    for p in psis:
        prod = compose(p, prod)
    return stable_image(prod)[0]


def check_local(spec: LocalActionSpec) -> Verdict:
    validate_local(spec)
    unr = stabilized_subset(spec.n, [spec.psi])
    for k, h in enumerate(spec.inertia):
        for s in unr:
            if h[s] != s:
                return Verdict(False, witness={
                    "condition": 1,
                    "reason": "inertia acts nontrivially on S_unr",
                    "point": s,
                    "inertia_generator": k,
                    "image": h[s],
                })
    for s in unr:
        if spec.psi[s] != spec.frobenius[s]:
            return Verdict(False, witness={
                "condition": 2,
                "reason": "psi and Frobenius differ on S_unr",
                "point": s,
                "psi": spec.psi[s],
                "frobenius": spec.frobenius[s],
            })
    return Verdict(True, certificate={
        "S_unr": unr,
        "filtration": local_filtration(spec.n, spec.psi),
        "splitting": splitting_map(spec.n, spec.psi),
    })


def _depths(n: int, psi: Sequence[int]) -> list[int]:
    base = set(stable_image(psi)[0])
    depth = [0] * n
    for s in range(n):
        k, x = 0, s
        while x not in base:
            x = psi[x]
            k += 1
        depth[s] = k
    return depth


def local_filtration(n: int, psi: Sequence[int]) -> list[list[int]]:
    """Layers S_0, ..., S_m; S_i holds the points that need i steps to reach S_unr."""
    depth = _depths(n, psi)
    if n == 0:
        return [[]]
    layers = [[] for _ in range(max(depth) + 1)]
    for s, k in enumerate(depth):
        layers[k].append(s)
    return layers


def splitting_map(n: int, psi: Sequence[int]) -> list[int]:
    """Retraction S -> S_0 sending s in S_i to psi|S_0^{-i}(psi^i(s))."""
    depth = _depths(n, psi)
    base = [s for s in range(n) if depth[s] == 0]
    inv = {psi[s]: s for s in base}
    out = []
    for s in range(n):
        x = s
        for _ in range(depth[s]):
            x = psi[x]
        for _ in range(depth[s]):
            x = inv[x]
        out.append(x)
    return out


@dataclass(frozen=True)
class LocalModel:
    """Set-level description of the integral model A = i(R_0) + (0 x p R_1 x ... x p^m R_m).

    ``chain_maps[0]`` is psi on S_0 (an automorphism); ``chain_maps[i]`` for i >= 1
    sends each point of S_i to its psi-image in S_{i-1}, inducing f_i: E_{i-1} -> E_i.
    ``exponents[i] = i`` means the ideal on layer i is p^i R_i.
    """

    layers: tuple[tuple[int, ...], ...]
    chain_maps: tuple[dict, ...]
    exponents: tuple[int, ...]
    splitting: tuple[int, ...]

    def as_dict(self) -> dict:
        return {
            "layers": [list(x) for x in self.layers],
            "chain_maps": [{str(k): v for k, v in m.items()} for m in self.chain_maps],
            "exponents": list(self.exponents),
            "splitting": list(self.splitting),
            "model": " + ".join(["i(R_0)"] + [f"p^{i} R_{i}" for i in self.exponents[1:]]),
        }


def local_model_description(spec: LocalActionSpec) -> LocalModel:
    verdict = check_local(spec)
    if not verdict.answer:
        raise ValidationError(f"no integral model: {verdict.witness['reason']}")
    return model_from_psi(spec.n, spec.psi)


def model_from_psi(n: int, psi: Sequence[int]) -> LocalModel:
    layers = local_filtration(n, psi)
    chain = tuple({s: psi[s] for s in layer} for layer in layers)
    return LocalModel(
        tuple(tuple(x) for x in layers),
        chain,
        tuple(range(len(layers))),
        tuple(splitting_map(n, psi)),
    )
