"""JSON formats and the cycle grammar.

Integers that describe field data (primes, roots, ideal triples) are written
as decimal strings; indices, class vectors and permutations stay plain ints.

Cycle grammar::

    cycle       = ideal-part { "*" place } ;
    ideal-part  = integer | prime-list | prime-power { "*" prime-power } ;
    prime-list  = "[" [ prime-power { "," prime-power } ] "]" ;
    prime-power = prime [ "^" integer ] ;
    prime       = "P(" integer [ "," integer ] ")" ;
    place       = "inf" | "inf1" | "inf2" ;

``inf`` marks every real place of the field.
"""

from __future__ import annotations

import json
import re
from typing import Any, Iterable

from .arith.cycle import Cycle
from .arith.field import INERT, RAMIFIED, SPLIT, Ideal, NumberField, PrimeIdeal, make_field
from .checker.global_check import GlobalActionSpec
from .checker.local import LocalActionSpec
from .checker.verdict import Verdict
from .dr import DRMonoid
from .errors import InputError
from .rayclass import RayClassGroup

# -- scalars -----------------------------------------------------------------


def _int(value, what: str) -> int:
    if isinstance(value, bool):
        raise InputError(f"{what}: expected an integer, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, str) and re.fullmatch(r"\s*-?\d+\s*", value):
        return int(value)
    raise InputError(f"{what}: expected an integer, got {value!r}")


def _map(value, n: int, what: str) -> tuple[int, ...]:
    if not isinstance(value, list) or len(value) != n:
        raise InputError(f"{what}: expected a list of {n} points")
    out = tuple(_int(x, what) for x in value)
    if any(not 0 <= x < n for x in out):
        raise InputError(f"{what}: point outside 0..{n - 1}")
    return out


def field_to_json(K: NumberField) -> str:
    return K.name


def field_from_json(value) -> NumberField:
    return make_field(value)


# -- primes, ideals, cycles ------------------------------------------------


def prime_to_json(P: PrimeIdeal) -> dict:
    out = {"p": str(P.p), "type": "inert" if P.field.degree == 1 else P.kind}
    if P.kind == SPLIT:
        out["root"] = str(P.root)
    return out


def prime_from_parts(K: NumberField, p: int, root=None, kind=None) -> PrimeIdeal:
    from sympy import isprime

    if not isprime(p):
        raise InputError(f"{p} is not prime")
    primes = [P for P, _ in K.factor_rational_prime(p)]
    if kind is not None and kind not in (SPLIT, INERT, RAMIFIED):
        raise InputError(f"unknown prime type {kind!r}")
    if kind is not None and K.degree == 2 and primes[0].kind != kind:
        raise InputError(f"{p} is {primes[0].kind} in {K.name}, not {kind}")
    if root is None:
        if len(primes) > 1:
            raise InputError(f"{p} splits in {K.name}; a root is required")
        return primes[0]
    r = root % p
    for P in primes:
        if P.root is not None and P.root % p == r:
            return P
    raise InputError(f"no prime of {K.name} above {p} with root {root}")


def prime_from_json(K: NumberField, obj) -> PrimeIdeal:
    if isinstance(obj, (int, str)) and not isinstance(obj, bool):
        if isinstance(obj, str) and obj.strip().startswith("P("):
            return parse_prime(K, obj)
        return prime_from_parts(K, _int(obj, "prime"))
    if not isinstance(obj, dict) or "p" not in obj:
        raise InputError(f"bad prime {obj!r}")
    root = obj.get("root")
    return prime_from_parts(K, _int(obj["p"], "prime p"), None if root is None else _int(root, "prime root"),
                            obj.get("type"))


def ideal_to_json(I: Ideal) -> dict:
    return {"c": str(I.c), "a": str(I.a), "b": str(I.b)}


def ideal_from_json(K: NumberField, obj) -> Ideal:
    """An ideal triple, an integer n (the ideal (n)), or a prime object."""
    if isinstance(obj, dict) and "p" in obj:
        return prime_from_json(K, obj).ideal
    if isinstance(obj, dict):
        c = _int(obj.get("c", 1), "ideal c")
        if K.degree == 1:
            return K.ideal(c)
        return K.ideal(c, _int(obj.get("a", 1), "ideal a"), _int(obj.get("b", 0), "ideal b"))
    if isinstance(obj, str) and obj.strip().startswith(("P(", "[")):
        return parse_cycle(K, obj).finite_ideal
    n = _int(obj, "ideal")
    if n == 0:
        raise InputError("zero ideal")
    return K.ideal(abs(n)) if K.degree == 1 else K.ideal(abs(n), 1, 0)


def _place_name(s: int) -> str:
    return f"s{s}"


def cycle_to_json(f: Cycle) -> dict:
    return {
        "finite": [[prime_to_json(P), str(e)] for P, e in f.finite],
        "real_places": [_place_name(s) for s in sorted(f.real_places)],
    }


def _place_from(value) -> int:
    text = str(value).strip().lower()
    m = re.fullmatch(r"(?:s|inf)?([12])", text)
    if not m:
        raise InputError(f"bad real place {value!r}")
    return int(m.group(1))


def cycle_from_json(K: NumberField, obj) -> Cycle:
    if isinstance(obj, str):
        return parse_cycle(K, obj)
    if isinstance(obj, int) and not isinstance(obj, bool):
        return parse_cycle(K, str(obj))
    if not isinstance(obj, dict):
        raise InputError(f"bad cycle {obj!r}")
    finite = []
    for item in obj.get("finite", []):
        if not isinstance(item, (list, tuple)) or len(item) != 2:
            raise InputError(f"bad cycle entry {item!r}")
        finite.append((prime_from_json(K, item[0]), _int(item[1], "exponent")))
    return Cycle.make(K, finite, [_place_from(s) for s in obj.get("real_places", [])])


_PRIME_RE = re.compile(r"P\(\s*(-?\d+)\s*(?:,\s*(-?\d+)\s*)?\)(?:\^(\d+))?$")


def parse_prime(K: NumberField, text: str) -> PrimeIdeal:
    P, e = _parse_prime_power(K, text)
    if e != 1:
        raise InputError(f"expected a prime, got the power {text!r}")
    return P


def _parse_prime_power(K: NumberField, text: str) -> tuple[PrimeIdeal, int]:
    m = _PRIME_RE.match(text.strip())
    if not m:
        raise InputError(f"bad prime power {text!r}")
    p = int(m.group(1))
    root = None if m.group(2) is None else int(m.group(2))
    P = prime_from_parts(K, p, root)
    return P, int(m.group(3) or 1)


def _split_top(text: str, sep: str) -> list[str]:
    """Split on ``sep`` outside parentheses and brackets."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == sep and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return out


def parse_cycle(K: NumberField, text: str) -> Cycle:
    """Parse the cycle grammar in the module docstring."""
    raw = str(text).replace(" ", "")
    if not raw:
        raise InputError("empty cycle")
    parts = _split_top(raw, "*")
    places: set[int] = set()
    finite: list[tuple[PrimeIdeal, int]] = []
    ideal_parts = []
    for part in parts:
        low = part.lower()
        if low == "inf":
            if not K.real_places:
                raise InputError(f"{K.name} has no real places")
            places |= set(K.real_places)
        elif low in ("inf1", "inf2"):
            places.add(int(low[-1]))
        elif places:
            raise InputError(f"real places must come last in {text!r}")
        else:
            ideal_parts.append(part)
    if not ideal_parts:
        raise InputError(f"cycle {text!r} has no ideal part")
    if len(ideal_parts) == 1 and re.fullmatch(r"\d+", ideal_parts[0]):
        n = int(ideal_parts[0])
        if n == 0:
            raise InputError("zero ideal in cycle")
        finite = list(ideal_from_json(K, n).factor())
    elif len(ideal_parts) == 1 and ideal_parts[0].startswith("["):
        body = ideal_parts[0]
        if not body.endswith("]"):
            raise InputError(f"unbalanced brackets in {text!r}")
        inner = body[1:-1]
        if inner:
            finite = [_parse_prime_power(K, t) for t in _split_top(inner, ",")]
    else:
        finite = [_parse_prime_power(K, t) for t in ideal_parts]
    return Cycle.make(K, finite, places)


# -- groups, monoids, verdicts ----------------------------------------------


def group_to_json(G: RayClassGroup) -> dict:
    return {
        "field": field_to_json(G.field),
        "cycle": cycle_to_json(G.cycle),
        "divisors": list(G.divisors),
        "classes": [list(v) for v in G.elements()],
        "reps": [ideal_to_json(r) for r in G.representatives()],
        "generators": [prime_to_json(P) for P in G.generators],
    }


def action_to_json(action: dict) -> dict:
    keys = sorted(action)
    return {"classes": [list(v) for v in keys], "perms": [list(action[v]) for v in keys]}


def monoid_to_json(M: DRMonoid) -> dict:
    return {
        "field": field_to_json(M.field),
        "cycle": cycle_to_json(M.cycle),
        "construction": M.construction,
        "elements": [
            {"d": ideal_to_json(e.d), "class": list(e.cls), "rep": ideal_to_json(r)}
            for e, r in zip(M.elements, M.reps)
        ],
        "identity": M.identity,
        "table": [list(row) for row in M.table],
        "units": M.units,
        "idempotents": M.idempotents,
    }


def monoid_from_json(obj: dict) -> tuple[NumberField, Cycle, list[tuple[Ideal, tuple[int, ...]]], list[list[int]]]:
    """(field, cycle, element labels, table) from a monoid dump."""
    try:
        K = field_from_json(obj["field"])
        f = cycle_from_json(K, obj["cycle"])
        labels = [(ideal_from_json(K, e["d"]), tuple(_int(x, "class") for x in e["class"])) for e in obj["elements"]]
        table = [[_int(x, "table") for x in row] for row in obj["table"]]
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed monoid dump: {exc}") from exc
    n = len(labels)
    if len(table) != n or any(len(row) != n or any(not 0 <= x < n for x in row) for row in table):
        raise InputError("malformed monoid dump: table shape")
    return K, f, labels, table


def _jsonable(value: Any) -> Any:
    if isinstance(value, Ideal):
        return ideal_to_json(value)
    if isinstance(value, PrimeIdeal):
        return prime_to_json(value)
    if isinstance(value, Cycle):
        return cycle_to_json(value)
    if isinstance(value, dict):
        return {(_key(k)): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _key(k) -> str:
    if isinstance(k, PrimeIdeal):
        return repr(k)
    return str(k)


def verdict_to_json(v: Verdict) -> dict:
    out: dict[str, Any] = {"answer": "yes" if v.answer else "no"}
    if v.cycle is not None:
        out["f"] = cycle_to_json(v.cycle)
    if v.answer:
        if v.monoid is not None:
            out["monoid"] = {
                "elements": [{"d": ideal_to_json(e.d), "class": list(e.cls)} for e in v.monoid.elements],
                "reps": [ideal_to_json(r) for r in v.monoid.reps],
            }
        if v.rho is not None:
            out["rho"] = [list(r) for r in v.rho]
        out["certificate"] = _jsonable(v.certificate)
    else:
        out["witness"] = _jsonable(v.witness)
    return out


def dumps(obj) -> str:
    """Deterministic JSON text."""
    return json.dumps(obj, indent=2, sort_keys=False, ensure_ascii=False) + "\n"


# -- spec files ---------------------------------------------------------------


def load_json(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from exc
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc


def _perm_list(items: Iterable, n: int, what: str) -> list[tuple[int, ...]]:
    return [_map(p, n, what) for p in items]


def global_spec_from_json(obj: dict) -> GlobalActionSpec:
    if not isinstance(obj, dict):
        raise InputError("spec must be a JSON object")
    try:
        K = field_from_json(obj["field"])
        n = _int(obj["set_size"], "set_size")
        f = cycle_from_json(K, obj.get("modulus", "1"))
    except KeyError as exc:
        raise InputError(f"spec is missing {exc}") from exc
    if n < 0:
        raise InputError("set_size must be nonnegative")
    galois_obj = obj.get("galois", {})
    gens = galois_obj.get("generators", []) if isinstance(galois_obj, dict) else galois_obj
    galois = []
    for g in gens:
        if "class_rep" not in g or "perm" not in g:
            raise InputError("Galois generator needs class_rep and perm")
        galois.append((ideal_from_json(K, g["class_rep"]), _map(g["perm"], n, "Galois perm")))
    psi = []
    for item in obj.get("psi", []):
        if "prime" not in item or "map" not in item:
            raise InputError("psi entry needs prime and map")
        psi.append((prime_from_json(K, item["prime"]), _map(item["map"], n, "psi map")))
    return GlobalActionSpec.make(K, f, n, galois, psi)


def local_spec_from_json(obj: dict) -> LocalActionSpec:
    if not isinstance(obj, dict):
        raise InputError("spec must be a JSON object")
    try:
        n = _int(obj["set_size"], "set_size")
        psi = _map(obj["psi"], n, "psi")
    except KeyError as exc:
        raise InputError(f"local spec is missing {exc}") from exc
    if n < 0:
        raise InputError("set_size must be nonnegative")
    frob = obj.get("frobenius")
    return LocalActionSpec.make(
        n,
        psi,
        frobenius=None if frob is None else _map(frob, n, "frobenius"),
        generators=_perm_list(obj.get("generators", []), n, "generator"),
        inertia=_perm_list(obj.get("inertia_generators", []), n, "inertia generator"),
    )
