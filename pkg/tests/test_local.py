import random
from itertools import product

import pytest

from lambdaring.checker import (
    LocalActionSpec,
    check_local,
    local_filtration,
    local_model_description,
    model_from_psi,
    splitting_map,
    stabilized_subset,
    validate_local,
)
from lambdaring.errors import ValidationError

import oracles

A, B, C = 0, 1, 2
SWAP = [1, 0]


def spec(n, psi, frob=None, gens=(), inertia=()):
    return LocalActionSpec.make(n, psi, frobenius=frob, generators=gens, inertia=inertia)


# -- stabilized subset -------------------------------------------------------------


def test_stabilized_examples():
    assert stabilized_subset(4, [[0, 2, 0, 2]]) == [0]
    assert stabilized_subset(3, [[1, 2, 0]]) == [0, 1, 2]
    assert stabilized_subset(3, [[B, A, A]]) == [A, B]
    assert stabilized_subset(4, [[1, 0, 3, 3], [0, 1, 3, 3]]) == [0, 1, 3]


# -- verdicts ------------------------------------------------------------------------


def test_check_local_examples():
    assert check_local(spec(2, SWAP, SWAP)).answer
    v = check_local(spec(2, SWAP, [0, 1]))
    assert not v.answer and v.witness["condition"] == 2 and v.witness["point"] == A
    v = check_local(spec(4, [0, 2, 0, 2], [0, 3, 2, 1], inertia=[[0, 3, 2, 1]]))
    assert v.answer and v.certificate["S_unr"] == [0]


def test_condition_one_witness():
    # inertia swaps the two periodic points
    v = check_local(spec(2, [0, 1], [0, 1], inertia=[SWAP]))
    assert not v.answer and v.witness["condition"] == 1


def test_validation_errors():
    with pytest.raises(ValidationError):
        validate_local(spec(4, [1, 2, 3, 0], gens=[[1, 0, 2, 3]]))
    with pytest.raises(ValidationError):
        validate_local(spec(2, [0, 2]))
    with pytest.raises(ValidationError):
        validate_local(spec(2, [0, 1], frob=[0, 0]))
    # <(0 1)> is not normal in S_3
    with pytest.raises(ValidationError):
        validate_local(spec(3, [0, 1, 2], gens=[[1, 2, 0]], inertia=[[1, 0, 2]]))


# -- filtration, splitting, model ------------------------------------------------------


def test_filtration_examples():
    assert local_filtration(3, [0, 0, 1]) == [[0], [1], [2]]
    assert local_filtration(3, [1, 2, 0]) == [[0, 1, 2]]
    assert local_filtration(3, [B, A, A]) == [[A, B], [C]]


def test_splitting_examples():
    assert splitting_map(3, [B, A, A]) == [A, B, B]
    assert splitting_map(4, [0, 2, 0, 2]) == [0, 0, 0, 0]
    assert splitting_map(3, [1, 2, 0]) == [0, 1, 2]


def test_model_examples():
    m = local_model_description(spec(3, [0, 0, 1]))
    assert [len(x) for x in m.layers] == [1, 1, 1] and m.exponents == (0, 1, 2)
    m = local_model_description(spec(3, [1, 2, 0], [1, 2, 0]))
    assert m.layers == ((0, 1, 2),) and m.exponents == (0,)
    assert m.as_dict()["model"] == "i(R_0)"
    m = model_from_psi(3, [B, A, A])
    assert m.exponents == (0, 1) and m.chain_maps[1] == {C: A}


def test_model_refused_on_no():
    with pytest.raises(ValidationError):
        local_model_description(spec(2, SWAP, [0, 1]))


# -- oracle equivalence -----------------------------------------------------------------


def _family(n, perms):
    for psi in oracles.all_maps(n):
        for frob in perms:
            for h in perms:
                inertia = [] if h == tuple(range(n)) else [h]
                if oracles.is_valid_local(n, psi, frob, (), inertia):
                    yield psi, frob, inertia


@pytest.mark.parametrize("n", [1, 2, 3])
def test_matches_oracle_exhaustive(n):
    count = 0
    for psi, frob, inertia in _family(n, oracles.all_perms(n)):
        v = check_local(spec(n, psi, frob, inertia=inertia))
        ok, cond = oracles.local_oracle(n, psi, frob, (), inertia)
        assert v.answer == ok
        if not ok:
            assert v.witness["condition"] == cond
        count += 1
    assert count > 0


def _random_passing(rng, n):
    while True:
        psi = [rng.randrange(n) for _ in range(n)]
        cent = [p for p in oracles.all_perms(n) if all(psi[p[i]] == p[psi[i]] for i in range(n))]
        unr = oracles.periodic_points(psi)
        frobs = [p for p in cent if all(p[s] == psi[s] for s in unr)]
        hs = [p for p in cent if all(p[s] == s for s in unr)]
        if not frobs:
            continue
        frob = rng.choice(frobs)
        h = rng.choice(hs)
        gens = [rng.choice(cent)]
        if oracles.is_valid_local(n, psi, frob, gens, [h]):
            s = spec(n, psi, frob, gens=gens, inertia=[h])
            if check_local(s).answer:
                return s


def test_splitting_is_equivariant_retraction():
    rng = random.Random(3)
    for _ in range(40):
        s = _random_passing(rng, rng.randint(1, 6))
        sp = splitting_map(s.n, s.psi)
        unr = set(stabilized_subset(s.n, [s.psi]))
        assert set(sp) <= unr and all(sp[x] == x for x in unr)
        for g in [s.psi] + s.group_generators:
            assert all(sp[g[x]] == g[sp[x]] for x in range(s.n))


def test_filtration_is_partition():
    for psi in product(range(4), repeat=4):
        layers = local_filtration(4, list(psi))
        flat = sorted(x for layer in layers for x in layer)
        assert flat == [0, 1, 2, 3]
        for i, layer in enumerate(layers[1:], 1):
            assert all(psi[x] in layers[i - 1] for x in layer)
