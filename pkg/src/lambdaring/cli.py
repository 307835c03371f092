"""Command-line interface.

Exit codes: 0 computed (a "no" verdict included), 2 parse error,
3 validation error, 4 enumeration budget exhausted, 5 the two DR
constructions disagree.
"""

from __future__ import annotations

import argparse
import sys
from typing import Callable, Optional, Sequence

from .arith.field import NumberField, make_field
from .checker import (
    check_global,
    check_local,
    local_model_description,
    model_from_psi,
    compute_f,
    compute_r,
    validate,
    validate_local,
)
from .dr import DRMonoid, dr_bruteforce, dr_isomorphic, dr_structured, same_labelled_table, structured_count
from .errors import BijectionMismatch, BudgetExceeded, InputError, ValidationError
from .rayclass import class_group, ray_class_group
from . import serialize as ser

EXIT_OK, EXIT_PARSE, EXIT_VALIDATION, EXIT_BUDGET, EXIT_MISMATCH = 0, 2, 3, 4, 5
TABLE_CAP = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # keep argparse's exit status 2, with our prefix
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"lambdaring: error: {message}\n")


# -- text rendering ---------------------------------------------------------


def _render_table(rows: Sequence[Sequence[object]], header: Optional[Sequence[object]] = None) -> str:
    cells = [[str(x) for x in r] for r in ([header] if header else []) + list(rows)]
    if not cells:
        return ""
    widths = [max(len(r[j]) for r in cells) for j in range(len(cells[0]))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    if header:
        lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _monoid_text(M: DRMonoid) -> str:
    K = M.field
    out = [f"DR({M.cycle}) over {K.name}: {len(M)} elements ({M.construction})"]
    rows = [[i, K.format_ideal(e.d), list(e.cls), K.format_ideal(r)] for i, (e, r) in enumerate(zip(M.elements, M.reps))]
    out.append(_render_table(rows, ["#", "d", "class", "rep"]))
    out.append(f"identity: {M.identity}")
    out.append(f"units ({len(M.units)}): {M.units}")
    out.append(f"idempotents ({len(M.idempotents)}): {M.idempotents}")
    n = len(M)
    if n <= TABLE_CAP:
        out.append("multiplication table:")
        out.append(_render_table([[i] + list(row) for i, row in enumerate(M.table)], ["*"] + list(range(n))))
    else:
        out.append(f"multiplication table omitted ({n}x{n} exceeds {TABLE_CAP}x{TABLE_CAP}); use --format json")
    return "\n".join(out)


def _emit(args, payload, text: Callable[[], str]) -> None:
    if args.format == "json":
        sys.stdout.write(ser.dumps(payload))
    else:
        sys.stdout.write(text() + "\n")


# -- commands -----------------------------------------------------------------


def _field(args) -> NumberField:
    return make_field(args.field)


def cmd_field_info(args) -> int:
    K = _field(args)
    U = K.unit_group()
    h = class_group(K).order
    info = {
        "field": K.name,
        "d": str(getattr(K, "d", 1)),
        "discriminant": str(K.discriminant),
        "signature": list(K.signature),
        "omega": ("sqrt(d)" if not K.w_trace else "(1+sqrt(d))/2") if K.degree == 2 else "1",
        "torsion_order": U.torsion_order,
        "fundamental_unit": None if U.fundamental_unit is None else K.format_element(U.fundamental_unit),
        "minkowski_bound": K.minkowski_bound(),
        "class_number": h,
    }
    _emit(args, info, lambda: _render_table([[k, "-" if v is None else v] for k, v in info.items()]))
    return EXIT_OK


def _group_text(G) -> str:
    K = G.field
    out = [f"Cl({G.cycle}) over {K.name}: order {G.order}, type {list(G.divisors) or '(trivial)'}"]
    rows = [[list(v), K.format_ideal(r)] for v, r in zip(G.elements(), G.representatives())]
    if len(rows) <= TABLE_CAP:
        out.append(_render_table(rows, ["class", "rep"]))
    else:
        out.append(f"{len(rows)} classes; representatives omitted, use --format json")
    return "\n".join(out)


def cmd_classgroup(args) -> int:
    G = class_group(_field(args))
    _emit(args, ser.group_to_json(G), lambda: _group_text(G))
    return EXIT_OK


def cmd_rayclassgroup(args) -> int:
    K = _field(args)
    G = ray_class_group(K, ser.parse_cycle(K, args.cycle))
    _emit(args, ser.group_to_json(G), lambda: _group_text(G))
    return EXIT_OK


def _build(K, f, construction: str, budget) -> DRMonoid:
    if construction == "bruteforce":
        return dr_bruteforce(K, f, budget)
    return dr_structured(K, f)


def cmd_dr(args) -> int:
    K = _field(args)
    f = ser.parse_cycle(K, args.cycle)
    M = _build(K, f, args.construction, args.budget)
    _emit(args, ser.monoid_to_json(M), lambda: _monoid_text(M))
    return EXIT_OK


def cmd_dr_verify(args) -> int:
    dumped = None
    if args.dump:
        K, f, labels, table = ser.monoid_from_json(ser.load_json(args.dump))
        dumped = (labels, table)
    else:
        if not (args.field and args.cycle):
            raise InputError("dr-verify needs --field and --cycle, or --dump")
        K = _field(args)
        f = ser.parse_cycle(K, args.cycle)
    S = dr_structured(K, f)
    B = dr_bruteforce(K, f, args.budget)
    iso = dr_isomorphic(S, B)
    report = {
        "field": K.name,
        "cycle": ser.cycle_to_json(f),
        "structured": len(S),
        "bruteforce": len(B),
        "expected": structured_count(K, f),
        "isomorphic": iso is not None,
        "same_labels": same_labelled_table(S, B),
    }
    if dumped is not None:
        labels, table = dumped
        mine = [(e.d, e.cls) for e in S.elements]
        report["dump_matches"] = labels == mine and table == [list(r) for r in S.table]
    ok = report["isomorphic"] and report["same_labels"] and report.get("dump_matches", True)
    report["verified"] = ok

    def text():
        return "\n".join(
            [f"DR({f}) over {K.name}"] + [f"  {k}: {v}" for k, v in report.items() if k not in ("field", "cycle")]
        )

    _emit(args, report, text)
    return EXIT_OK if ok else EXIT_MISMATCH


def _verdict_text(v, extra: str = "") -> str:
    out = [f"answer: {'yes' if v.answer else 'no'}"]
    if v.cycle is not None:
        out.append(f"f: {v.cycle}")
    if extra:
        out.append(extra)
    if v.answer:
        if v.monoid is not None and v.rho is not None:
            M = v.monoid
            K = M.field
            rows = [[i, K.format_ideal(r), v.rho[i]] for i, r in enumerate(M.reps)]
            if len(rows) <= TABLE_CAP:
                out.append("rho on DR(f):")
                out.append(_render_table(rows, ["#", "rep", "action"]))
            else:
                out.append(f"rho on {len(rows)} elements omitted; use --format json")
        for k, val in v.certificate.items():
            if k in ("local_models",):
                for P, model in val.items():
                    out.append(f"local model at {P!r}: {model['model']} with layers {model['layers']}")
            else:
                out.append(f"{k}: {val}")
    else:
        w = v.witness
        out.append(f"failed condition: {w['condition']}")
        for k, val in w.items():
            if k != "condition":
                out.append(f"  {k}: {val}")
    return "\n".join(out)


def cmd_check_local(args) -> int:
    spec = ser.local_spec_from_json(ser.load_json(args.spec))
    v = check_local(spec)
    _emit(args, ser.verdict_to_json(v), lambda: _verdict_text(v))
    return EXIT_OK


def cmd_check_global(args) -> int:
    spec = ser.global_spec_from_json(ser.load_json(args.spec))
    v = check_global(spec)
    _emit(args, ser.verdict_to_json(v), lambda: _verdict_text(v))
    return EXIT_OK


def cmd_model(args) -> int:
    obj = ser.load_json(args.spec)
    if isinstance(obj, dict) and "field" in obj:
        A = validate(ser.global_spec_from_json(obj))
        payload = {
            "r": ser.ideal_to_json(compute_r(A)),
            "f": ser.cycle_to_json(compute_f(A)),
            "local_models": {repr(P): model_from_psi(A.n, A.psi[P]).as_dict() for P in A.listed},
        }

        def text():
            lines = [f"r = {A.field.format_ideal(compute_r(A))}", f"f = {compute_f(A)}"]
            for P in A.listed:
                m = model_from_psi(A.n, A.psi[P]).as_dict()
                lines.append(f"at {P!r}: {m['model']}; layers {m['layers']}; splitting {m['splitting']}")
            return "\n".join(lines)

        _emit(args, payload, text)
        return EXIT_OK
    spec = validate_local(ser.local_spec_from_json(obj))
    model = local_model_description(spec)
    d = model.as_dict()
    _emit(args, d, lambda: "\n".join(f"{k}: {v}" for k, v in d.items()))
    return EXIT_OK


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lambdaring", description="Ray class groups, Deligne-Ribet monoids and integral model checks.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.set_defaults(func=func)
        return sp

    sp = add("field-info", cmd_field_info, "discriminant, signature, units and class number")
    sp.add_argument("--field", required=True, help='e.g. "Q", "Q(i)", "Q(sqrt -5)"')

    sp = add("classgroup", cmd_classgroup, "class group Cl(1)")
    sp.add_argument("--field", required=True)

    sp = add("rayclassgroup", cmd_rayclassgroup, "ray class group Cl(f)")
    sp.add_argument("--field", required=True)
    sp.add_argument("--cycle", required=True, help='e.g. "12*inf", "[P(2,1)^2]*inf1"')

    sp = add("dr", cmd_dr, "Deligne-Ribet monoid DR(f)")
    sp.add_argument("--field", required=True)
    sp.add_argument("--cycle", required=True)
    sp.add_argument("--construction", choices=("structured", "bruteforce"), default="structured")
    sp.add_argument("--budget", type=int, default=None, help="norm budget for the brute force")

    sp = add("dr-verify", cmd_dr_verify, "compare both DR constructions")
    sp.add_argument("--field")
    sp.add_argument("--cycle")
    sp.add_argument("--dump", help="monoid dump from `dr --format json` to re-check")
    sp.add_argument("--budget", type=int, default=None)

    sp = add("check-local", cmd_check_local, "local integral-model criterion")
    sp.add_argument("spec")

    sp = add("check-global", cmd_check_global, "global integral-model criterion")
    sp.add_argument("spec")

    sp = add("model", cmd_model, "filtration, splitting map and model recipe")
    sp.add_argument("spec")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"lambdaring: input error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValidationError as exc:
        print(f"lambdaring: validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except BudgetExceeded as exc:
        print(f"lambdaring: budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except BijectionMismatch as exc:
        print(f"lambdaring: constructions disagree: {exc}", file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())

__all__ = ["build_parser", "main"]
