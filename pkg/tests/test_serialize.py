import json

import pytest

from lambdaring.arith import Cycle, make_field
from lambdaring.dr import dr_structured
from lambdaring.errors import InputError
from lambdaring.rayclass import ray_class_group
from lambdaring.serialize import (
    cycle_from_json,
    cycle_to_json,
    global_spec_from_json,
    group_to_json,
    ideal_from_json,
    ideal_to_json,
    local_spec_from_json,
    monoid_from_json,
    monoid_to_json,
    parse_cycle,
    prime_from_json,
    prime_to_json,
)

FIELDS = ["Q", "Q(i)", "Q(sqrt -5)", "Q(sqrt 2)", "Q(sqrt -3)", "Q(sqrt 13)"]


@pytest.mark.parametrize("name", FIELDS)
def test_prime_round_trip(name):
    K = make_field(name)
    for P in K.primes_up_to(60):
        obj = prime_to_json(P)
        assert all(isinstance(v, str) for v in obj.values())
        assert prime_from_json(K, json.loads(json.dumps(obj))) == P
        assert ("root" in obj) == (P.kind == "split")


@pytest.mark.parametrize("name", FIELDS)
def test_ideal_and_cycle_round_trip(name):
    K = make_field(name)
    for I in K.ideals_up_to(40):
        assert ideal_from_json(K, ideal_to_json(I)) == I
        f = Cycle.from_ideal(I, K.real_places[:1])
        assert cycle_from_json(K, cycle_to_json(f)) == f
        assert parse_cycle(K, str(f)) == f


def test_cycle_grammar():
    Q = make_field("Q")
    assert parse_cycle(Q, "12*inf") == Cycle.from_ideal(Q.ideal(12), [1])
    assert parse_cycle(Q, "1") == Cycle.one(Q)
    K = make_field("Q(sqrt 2)")
    f = parse_cycle(K, "[P(7,3)^2, P(2,0)]*inf1*inf2")
    assert f.real_places == {1, 2} and f.norm() == 49 * 2
    assert parse_cycle(K, "[P(7,3)^2, P(2)]*inf") == f
    assert parse_cycle(K, "P(7,3)^2*P(2,0)*inf1*inf2") == f
    assert parse_cycle(K, "14*inf2") == Cycle.from_ideal(K.ideal(14, 1, 0), [2])
    assert parse_cycle(K, "[]") == Cycle.one(K)


@pytest.mark.parametrize("field, text", [
    ("Q", "12*infx"),
    ("Q", "0"),
    ("Q", "inf"),
    ("Q(i)", "5*inf"),
    ("Q(sqrt -5)", "[P(3)]"),  # 3 splits, root needed
    ("Q(sqrt -5)", "[P(3,0)]"),
    ("Q", "[P(4)]"),
    ("Q", "inf*4"),
    ("Q(sqrt 2)", "[P(7,3)"),
])
def test_cycle_grammar_errors(field, text):
    with pytest.raises(InputError):
        parse_cycle(make_field(field), text)


def test_group_dump():
    Q = make_field("Q")
    G = ray_class_group(Q, parse_cycle(Q, "8*inf"))
    obj = group_to_json(G)
    assert obj["divisors"] == [2, 2] and len(obj["reps"]) == 4


def test_monoid_dump_round_trip():
    K = make_field("Q(sqrt -5)")
    M = dr_structured(K, parse_cycle(K, "2"))
    obj = json.loads(json.dumps(monoid_to_json(M)))
    K2, f, labels, table = monoid_from_json(obj)
    assert K2 == K and f == M.cycle
    assert labels == [(e.d, e.cls) for e in M.elements]
    assert table == [list(r) for r in M.table]
    assert set(obj) >= {"cycle", "elements", "table", "units", "idempotents"}


def test_monoid_dump_rejects_bad_table():
    K = make_field("Q")
    obj = monoid_to_json(dr_structured(K, parse_cycle(K, "3*inf")))
    obj["table"][0][0] = 99
    with pytest.raises(InputError):
        monoid_from_json(obj)


def test_spec_parsing_accepts_ints_and_strings():
    spec = global_spec_from_json({
        "field": "Q",
        "modulus": {"finite": [[{"p": 2, "type": "inert"}, 2]], "real_places": ["s1"]},
        "set_size": "4",
        "galois": {"generators": [{"class_rep": 3, "perm": [0, 3, 2, 1]}]},
        "psi": [{"prime": {"p": "2"}, "map": [0, 2, 0, 2]}],
    })
    assert spec.n == 4 and spec.modulus.norm() == 4 and spec.modulus.real_places == {1}


@pytest.mark.parametrize("bad", [
    {"field": "Q", "set_size": 2, "psi": [{"prime": {"p": "2"}, "map": [0, 5]}]},
    {"field": "Q", "set_size": 2, "psi": [{"prime": {"p": "4"}, "map": [0, 1]}]},
    {"field": "Q", "set_size": 2, "galois": {"generators": [{"perm": [1, 0]}]}},
    {"set_size": 2},
    {"field": "Q(sqrt 4)", "set_size": 1},
])
def test_bad_global_specs(bad):
    with pytest.raises((InputError, ValueError)):
        global_spec_from_json(bad)


def test_local_spec():
    s = local_spec_from_json({"set_size": 2, "psi": [1, 0], "frobenius": [1, 0], "inertia_generators": [[0, 1]]})
    assert s.psi == (1, 0) and s.inertia == ((0, 1),)
    with pytest.raises(InputError):
        local_spec_from_json({"set_size": 2})
