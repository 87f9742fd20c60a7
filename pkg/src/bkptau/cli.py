"""Command-line front end: build tau-functions, run verifiers, emit reports.

Exit codes: 0 identity holds / success, 1 identity verified false,
2 malformed input.  All output is deterministic; randomized verifiers take
an explicit --seed.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .fock import (
    FermionWord,
    ModeSum,
    oracle_tau_bkp,
    oracle_tau_kp_square,
    parse_mode,
    wick_vev,
)
from .hierarchy import bkp_defect, kp_defect
from .pfaffian import assemble_block, caianiello_expand, pfaffian, random_rect, random_upper_tri
from .ring import Poly, parse_poly
from .schur import ExtendedStrictPartition, Partition, character_check, q_schur, schur_lambda
from .tau import TauSpec, kdv_half, kdv_tau, tau_bkp, tau_kp_square

ORACLE_MAX_PART = 4
ORACLE_MAX_LENGTH = 4


class InputError(ValueError):
    pass


def _parse_lambda(text: str) -> tuple:
    try:
        return tuple(int(v) for v in text.split(",") if v.strip() != "")
    except ValueError as exc:
        raise InputError(f"bad --lambda {text!r}: {exc}") from exc


def _load_spec(args) -> TauSpec:
    if getattr(args, "spec", None):
        try:
            with open(args.spec, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read spec file: {exc}") from exc
        return TauSpec.from_json(data)
    if not getattr(args, "lam", None):
        raise InputError("need --lambda or --spec")
    lam = _parse_lambda(args.lam)
    constants = None
    if getattr(args, "constants", None):
        try:
            raw = json.loads(args.constants)
        except json.JSONDecodeError as exc:
            raise InputError(f"bad --constants JSON: {exc}") from exc
        constants = [[str(v) for v in row] for row in raw]
        if len(constants) == len(lam):
            pass
        elif len(constants) == len(ExtendedStrictPartition(lam).parts) - 1:
            constants.append([])
        else:
            raise InputError("--constants needs one sequence per part")
    try:
        return TauSpec(lam, constants)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _emit(args, text: str, payload=None) -> None:
    if getattr(args, "json", False) and payload is not None:
        text = json.dumps(payload)
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# ---------------------------------------------------------------------------
# Subcommands


def cmd_tau(args) -> int:
    kind = args.kind
    if kind in ("bkp", "kp-square"):
        spec = _load_spec(args)
        poly = tau_bkp(spec) if kind == "bkp" else tau_kp_square(spec)
    elif kind in ("kdv", "kdv-half"):
        if args.k is None:
            raise InputError("need --k")
        poly = kdv_tau(args.k) if kind == "kdv" else kdv_half(args.k)
    elif kind == "schur":
        if not args.lam:
            raise InputError("need --lambda")
        poly = schur_lambda(Partition(_parse_lambda(args.lam)))
    elif kind == "qschur":
        if not args.lam:
            raise InputError("need --lambda")
        poly = q_schur(ExtendedStrictPartition(_parse_lambda(args.lam)))
    else:  # pragma: no cover - argparse restricts choices
        raise InputError(f"unknown tau kind {kind!r}")
    text = poly.canonical()
    _emit(args, text, {"poly": text, "degree": poly.degree()})
    return 0


def _verify_defect(args, report) -> int:
    payload = report.to_json()
    if report.is_zero:
        _emit(args, "identity holds exactly (defect = 0)", payload)
        return 0
    _emit(args, f"identity FAILS; witness monomial: {payload['witness']}", payload)
    return 1


def cmd_verify(args) -> int:
    kind = args.kind
    if kind == "kp":
        if args.poly:
            tau_k = parse_poly(args.poly)
            tau_l = parse_poly(args.poly2) if args.poly2 else tau_k
        else:
            spec = _load_spec(args)
            tau_k = tau_l = tau_kp_square(spec)
        return _verify_defect(args, kp_defect(tau_k, tau_l, args.d))
    if kind == "bkp":
        if args.poly:
            tau = parse_poly(args.poly)
        else:
            tau = tau_bkp(_load_spec(args))
        return _verify_defect(args, bkp_defect(tau))
    if kind == "square":
        spec = _load_spec(args)
        lhs = tau_bkp(spec)
        lhs = lhs * lhs
        rhs = tau_kp_square(spec).restrict_even_zero()
        holds = lhs == rhs
        payload = {
            "holds": holds,
            "bkp_squared": lhs.canonical(),
            "kp_restricted": rhs.canonical(),
        }
        _emit(args, "square identity holds exactly" if holds
              else "square identity FAILS", payload)
        return 0 if holds else 1
    if kind == "caianiello":
        rng = random.Random(args.seed)
        failures = 0
        for _ in range(args.trials):
            x = random_upper_tri(rng, args.m)
            yy = random_upper_tri(rng, args.k)
            w = random_rect(rng, args.m, args.k)
            if caianiello_expand(x, yy, w) != pfaffian(assemble_block(x, yy, w)):
                failures += 1
        payload = {"trials": args.trials, "failures": failures}
        _emit(args, f"caianiello identity: {args.trials - failures}/{args.trials} "
              f"instances match", payload)
        return 0 if failures == 0 else 1
    if kind == "character":
        ok = character_check(args.order)
        _emit(args, f"character identity to order {args.order}: "
              f"{'holds' if ok else 'FAILS'}", {"order": args.order, "equal": ok})
        return 0 if ok else 1
    raise InputError(f"unknown verify kind {kind!r}")  # pragma: no cover


def cmd_oracle(args) -> int:
    if args.kind == "vev":
        if not args.word:
            raise InputError("need --word")
        try:
            modes = [parse_mode(tok) for tok in args.word.split()]
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        value = wick_vev(FermionWord([ModeSum.of(m) for m in modes]))
        _emit(args, value.canonical(), {"vev": value.canonical()})
        return 0
    # cross-check
    spec = _load_spec(args)
    if spec.lam.max_part() > ORACLE_MAX_PART or spec.lam.length() > ORACLE_MAX_LENGTH:
        raise InputError(
            f"oracle size limit: max part {ORACLE_MAX_PART}, length {ORACLE_MAX_LENGTH}"
        )
    checks = []
    if args.which in ("bkp", "both"):
        checks.append(("bkp", tau_bkp(spec),
                       oracle_tau_bkp(spec.lam.parts, spec.constants)))
    if args.which in ("kp-square", "both"):
        checks.append(("kp-square", tau_kp_square(spec),
                       oracle_tau_kp_square(spec.lam.parts, spec.constants)))
    all_match = True
    lines = []
    payload = {}
    for name, constructed, oracled in checks:
        match = constructed == oracled
        all_match &= match
        lines.append(f"{name} constructor: {constructed.canonical()}")
        lines.append(f"{name} oracle:      {oracled.canonical()}")
        payload[name] = {
            "constructor": constructed.canonical(),
            "oracle": oracled.canonical(),
            "match": match,
        }
    lines.append("MATCH" if all_match else "MISMATCH")
    payload["match"] = all_match
    _emit(args, "\n".join(lines), payload)
    return 0 if all_match else 1


# ---------------------------------------------------------------------------
# Argument parsing


def _add_spec_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--lambda", dest="lam", help="comma-separated parts, e.g. 2,1")
    p.add_argument("--constants", help='JSON rationals, e.g. [["1/2","0"],["1"]]')
    p.add_argument("--spec", help="path to a tau-spec JSON file")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--out", help="write output to this path instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bkptau",
        description="Exact polynomial tau-functions of the KP/BKP hierarchies",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_tau = sub.add_parser("tau", help="construct a tau-function")
    p_tau.add_argument("kind",
                       choices=["bkp", "kp-square", "kdv", "kdv-half", "schur", "qschur"])
    _add_spec_options(p_tau)
    p_tau.add_argument("--k", type=int, help="staircase size for kdv/kdv-half")
    _add_common(p_tau)
    p_tau.set_defaults(func=cmd_tau)

    p_ver = sub.add_parser("verify", help="verify an identity exactly")
    p_ver.add_argument("kind",
                       choices=["kp", "bkp", "square", "caianiello", "character"])
    _add_spec_options(p_ver)
    p_ver.add_argument("--poly", help="polynomial text, e.g. 't1^2'")
    p_ver.add_argument("--poly2", help="second polynomial for the modified-KP pair")
    p_ver.add_argument("--d", type=int, default=0, help="modified-KP index (default 0)")
    p_ver.add_argument("--m", type=int, default=2)
    p_ver.add_argument("--k", type=int, default=2)
    p_ver.add_argument("--trials", type=int, default=50)
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.add_argument("--order", type=int, default=20)
    _add_common(p_ver)
    p_ver.set_defaults(func=cmd_verify)

    p_or = sub.add_parser("oracle", help="free-fermion oracle commands")
    p_or.add_argument("kind", choices=["cross-check", "vev"])
    _add_spec_options(p_or)
    p_or.add_argument("--which", choices=["bkp", "kp-square", "both"], default="both")
    p_or.add_argument("--word", help='mode word, e.g. "phi:2 phi:1 phi:-1 phi:-2"')
    _add_common(p_or)
    p_or.set_defaults(func=cmd_oracle)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
