"""Command-line front end.

One executable, fifteen subcommands, every verifier and constructor in the
package behind reproducible seeds. Reports go to standard output (JSON with
--json, plain text otherwise), diagnostics to standard error. Exit status:
0 for success/pass, 1 for a verification failure (the report carries a
witness), 2 for usage or domain errors, including inputs beyond the
configured resource ceilings.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, fields as dc_fields
from fractions import Fraction

import numpy as np

from .errors import DomainError, IntegrityError, ResourceLimitError
from .finite import (
    FiniteField,
    SUPPORTED_FIELDS,
    addition_from_exponent,
    check_isomorphic_additions,
    enumerate_additions,
    make_field,
    modnear_ring_check,
    native_addition,
)
from .induced import DEFAULT_SUM_NORM_CEILING, exotic_add_q
from .maps import (
    EndoBijectionSpecQ,
    check_qmc_equivalence,
    default_correspondence,
    endo_q_apply,
    epsilon_inverse_param,
    eval_epsilon,
    sigma_apply,
    sigma_invert,
)
from .nvs import build_elementary, check_elementary_box1, verify_nvs_axioms
from .quadratic import QuadInt, QuadRat, factor_quad
from .rationals import factor_int, factor_rat
from .rho import char_map, field_carrier, rational_carrier, rho_from_add, verify_rho_axioms

__all__ = ["RunConfig", "main"]

CONFIG_ENV = "NEARFIELDS_CONFIG"

_FIELDS = {f"f{p**n}": (p, n) for p, n in SUPPORTED_FIELDS}


@dataclass
class RunConfig:
    seed: int = 0
    height_bound: int = 10**6
    norm_ceiling: int = DEFAULT_SUM_NORM_CEILING
    trials: int = 300
    output: str = "text"

    def __post_init__(self):
        if self.height_bound < 1 or self.norm_ceiling < 1 or self.trials < 1:
            raise DomainError("bounds and trial counts must be positive")
        if self.output not in ("text", "json"):
            raise DomainError(f"unknown output mode {self.output!r}")


def _load_config(args) -> RunConfig:
    """Defaults, then the config file named by the environment, then flags."""
    values = {}
    path = os.environ.get(CONFIG_ENV)
    if path:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
        allowed = {f.name for f in dc_fields(RunConfig)}
        unknown = set(raw) - allowed
        if unknown:
            raise DomainError(f"unknown config keys: {sorted(unknown)}")
        values.update(raw)
    for key in ("seed", "height_bound", "norm_ceiling", "trials"):
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag
    if getattr(args, "json", False):
        values["output"] = "json"
    return RunConfig(**values)


def _field_arg(name: str) -> FiniteField:
    if name not in _FIELDS:
        raise DomainError(f"unknown field {name!r}; choose from {sorted(_FIELDS)}")
    return make_field(*_FIELDS[name])


def _map_arg(field: FiniteField, spec: str) -> np.ndarray:
    """Index-table grammar: id, pow:K, scale:K, or table:i,j,..."""
    if spec == "id":
        return np.arange(field.m, dtype=np.int64)
    kind, _, rest = spec.partition(":")
    if kind == "pow" and rest:
        return field.power_table(int(rest))
    if kind == "scale" and rest:
        c = int(rest)
        if not 0 <= c < field.m:
            raise DomainError(f"scale index {c} outside the carrier")
        return field.scale_table(c)
    if kind == "table" and rest:
        t = np.array([int(x) for x in rest.split(",")], dtype=np.int64)
        if len(t) != field.m:
            raise DomainError(f"table needs {field.m} entries, got {len(t)}")
        return t
    raise DomainError(f"bad map spec {spec!r}; use id, pow:K, scale:K or table:...")


def _prime_dict(spec: str | None) -> dict[int, int]:
    if not spec:
        return {}
    out = {}
    for part in spec.split(","):
        k, _, v = part.partition(":")
        out[int(k)] = int(v)
    return out


def _gate_height(q: Fraction, bound: int) -> Fraction:
    if max(abs(q.numerator), q.denominator) > bound:
        raise DomainError(
            f"operand height {max(abs(q.numerator), q.denominator)} exceeds the bound {bound}"
        )
    return q


def _carrier_and_add(args, cfg: RunConfig):
    """Shared --carrier/--addition plumbing for verify-rho and char-map."""
    name = args.carrier
    if name in _FIELDS:
        F = _field_arg(name)
        spec = args.addition or "native"
        if spec == "native":
            table = native_addition(F).table
        elif spec.startswith("a="):
            table = addition_from_exponent(F, int(spec[2:])).table
        elif spec.startswith("table:"):
            vals = [int(x) for x in spec[6:].split(",")]
            if len(vals) != F.m * F.m:
                raise DomainError(f"addition table needs {F.m * F.m} entries, got {len(vals)}")
            table = np.array(vals, dtype=np.int64).reshape(F.m, F.m)
            if table.min() < 0 or table.max() >= F.m:
                raise DomainError("addition table entries must index the carrier")
        else:
            raise DomainError(f"bad addition {spec!r} for a finite carrier")
        return field_carrier(F), (lambda a, b: int(table[a, b])), None
    if name == "q":
        spec = args.addition or "native"
        if spec == "native":
            add = lambda a, b: a + b
        elif spec == "exotic":
            add = lambda a, b: exotic_add_q(a, b, norm_ceiling=cfg.norm_ceiling)
        else:
            raise DomainError(f"bad addition {spec!r} for the rational carrier")
        h = min(60, cfg.height_bound)
        sampler = lambda rng: Fraction(
            int(rng.integers(-h, h + 1)), int(rng.integers(1, h + 1))
        )
        return rational_carrier(), add, sampler
    raise DomainError(f"unknown carrier {name!r}; choose from {sorted(_FIELDS) + ['q']}")


def _cmd_factor_int(args, cfg):
    f = factor_int(int(args.n))
    return {"input": args.n, "result": f.to_json()}, True


def _cmd_factor_rat(args, cfg):
    f = factor_rat(Fraction(args.q))
    return {"input": args.q, "result": f.to_json()}, True


def _cmd_factor_quad(args, cfg):
    x = QuadRat(QuadInt(int(args.a), int(args.b)), int(args.den))
    f = factor_quad(x)
    return {"input": x.to_json(), "result": f.to_json()}, True


def _cmd_sigma(args, cfg):
    q = _gate_height(Fraction(args.q), cfg.height_bound)
    img = sigma_apply(default_correspondence(), q)
    return {"input": str(q), "result": img.to_json(), "pretty": str(img)}, True


def _cmd_sigma_inv(args, cfg):
    x = QuadRat(QuadInt(int(args.a), int(args.b)), int(args.den))
    q = sigma_invert(default_correspondence(), x)
    return {"input": x.to_json(), "result": str(q)}, True


def _cmd_exotic_add(args, cfg):
    a = _gate_height(Fraction(args.a), cfg.height_bound)
    b = _gate_height(Fraction(args.b), cfg.height_bound)
    s = exotic_add_q(a, b, norm_ceiling=cfg.norm_ceiling)
    return {"input": [str(a), str(b)], "result": str(s)}, True


def _cmd_endoq(args, cfg):
    spec = EndoBijectionSpecQ(
        perm=_prime_dict(args.perm), eta=_prime_dict(args.eta), nu=_prime_dict(args.nu)
    )
    q = Fraction(args.q)
    return {"input": str(q), "result": str(endo_q_apply(spec, q))}, True


def _cmd_verify_rho(args, cfg):
    carrier, add, sampler = _carrier_and_add(args, cfg)
    rho = rho_from_add(carrier, add)
    rep = verify_rho_axioms(
        rho, sampler=sampler, trials=cfg.trials, rng=np.random.default_rng(cfg.seed)
    )
    return {"report": rep.to_json()}, rep.ok


def _cmd_char_map(args, cfg):
    carrier, add, sampler = _carrier_and_add(args, cfg)
    rho = rho_from_add(carrier, add)
    res = char_map(rho, args.bound, seed=cfg.seed)
    payload = {
        "characteristic": res.characteristic,
        "evidence_bounded": res.evidence_bounded,
        "chi": [[n, str(v)] for n, v in res.table],
        "prime_subfield": [str(v) for v in res.prime_subfield],
        "report": res.report.to_json(),
    }
    return payload, res.report.ok


def _cmd_enumerate_additions(args, cfg):
    F = _field_arg(args.field)
    res = enumerate_additions(F, triples=args.triples, seed=cfg.seed)
    payload = res.to_json()
    payload["report"] = res.report.to_json()
    return payload, res.report.ok


def _cmd_isom_check(args, cfg):
    F = _field_arg(args.field)
    def table(spec):
        return native_addition(F) if spec == "native" else addition_from_exponent(F, int(spec))
    t1, t2 = table(args.a1), table(args.a2)
    k = check_isomorphic_additions(F, t1, t2)
    return {
        "field": args.field,
        "tables": [t1.provenance, t2.provenance],
        "witness_exponent": k,
    }, True


def _cmd_modnear_check(args, cfg):
    rep = modnear_ring_check()
    return {"report": rep.to_json()}, rep.ok


def _cmd_nvs_verify(args, cfg):
    F = _field_arg(args.field)
    s = build_elementary(F, _map_arg(F, args.psi), _map_arg(F, args.phi))
    rep = verify_nvs_axioms(s)
    box1 = check_elementary_box1(s)
    return {
        "report": rep.to_json(),
        "box1_report": box1.to_json(),
    }, rep.ok and box1.ok


def _cmd_qmc_check(args, cfg):
    F = _field_arg(args.field)
    res = check_qmc_equivalence(F, _map_arg(F, args.map))
    return {
        "conditions": res.conditions,
        "is_quasi_multiplicative": res.is_quasi_multiplicative,
        "lam": res.lam,
        "gamma": res.gamma,
        "report": res.report.to_json(),
    }, res.report.ok


def _cmd_epsilon(args, cfg):
    alpha = complex(args.alpha)
    z = complex(args.z)
    w = eval_epsilon(alpha, z, conjugate=args.conjugate)
    beta = epsilon_inverse_param(alpha, conjugate=args.conjugate)
    back = eval_epsilon(beta, w, conjugate=args.conjugate)
    return {
        "input": {"alpha": str(alpha), "z": str(z), "conjugate": args.conjugate},
        "result": str(w),
        "inverse_param": str(beta),
        "round_trip_error": f"{abs(back - z):.3e}",
    }, True


def _render_text(payload: dict, out) -> None:
    def walk(obj, indent):
        pad = "  " * indent
        if isinstance(obj, dict):
            if set(obj) >= {"title", "ok", "checks"}:
                print(f"{pad}{obj['title']}: {'ok' if obj['ok'] else 'FAILED'}", file=out)
                for c in obj["checks"]:
                    mark = "ok  " if c["ok"] else "FAIL"
                    extra = f"  witness={c['witness']}" if c["witness"] is not None else ""
                    print(f"{pad}  [{mark}] {c['name']}{extra}", file=out)
                if obj["counts"]:
                    print(f"{pad}  counts: {obj['counts']}", file=out)
                return
            for k in sorted(obj):
                v = obj[k]
                if isinstance(v, (dict, list)) and v and not isinstance(v, str):
                    print(f"{pad}{k}:", file=out)
                    walk(v, indent + 1)
                else:
                    print(f"{pad}{k}: {v}", file=out)
        elif isinstance(obj, list):
            for v in obj:
                if isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v):
                    print(f"{pad}- {v}", file=out)
                elif isinstance(v, (dict, list)):
                    walk(v, indent + 1)
                else:
                    print(f"{pad}- {v}", file=out)

    walk(payload, 0)


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="PRNG seed")
    common.add_argument("--trials", type=int, default=None, help="sample count for sampled checks")
    common.add_argument("--height-bound", type=int, default=None, dest="height_bound",
                        help="largest accepted numerator/denominator")
    common.add_argument("--norm-ceiling", type=int, default=None, dest="norm_ceiling",
                        help="largest image norm the exotic addition will factor")
    common.add_argument("--json", action="store_true", help="emit a JSON report")

    p = argparse.ArgumentParser(
        prog="nearfields",
        description="Exact constructions and verifiers for exotic additions on scalar groups.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("factor-int", parents=[common], help="factor a nonzero integer")
    sp.add_argument("n")
    sp.set_defaults(handler=_cmd_factor_int)

    sp = sub.add_parser("factor-rat", parents=[common], help="factor a nonzero rational")
    sp.add_argument("q")
    sp.set_defaults(handler=_cmd_factor_rat)

    sp = sub.add_parser("factor-quad", parents=[common],
                        help="factor a nonzero quadratic integer (a + b*w)/den")
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("--den", default="1")
    sp.set_defaults(handler=_cmd_factor_quad)

    sp = sub.add_parser("sigma", parents=[common], help="image of a rational under sigma")
    sp.add_argument("q")
    sp.set_defaults(handler=_cmd_sigma)

    sp = sub.add_parser("sigma-inv", parents=[common],
                        help="rational preimage of (a + b*w)/den under sigma")
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("--den", default="1")
    sp.set_defaults(handler=_cmd_sigma_inv)

    sp = sub.add_parser("exotic-add", parents=[common], help="exotic sum of two rationals")
    sp.add_argument("a")
    sp.add_argument("b")
    sp.set_defaults(handler=_cmd_exotic_add)

    sp = sub.add_parser("endoq", parents=[common],
                        help="apply a prime-twist multiplicative endobijection")
    sp.add_argument("q")
    sp.add_argument("--perm", help="prime permutation, e.g. 2:3,3:2")
    sp.add_argument("--eta", help="sign twists, e.g. 5:-1")
    sp.add_argument("--nu", help="inversion twists, e.g. 7:-1")
    sp.set_defaults(handler=_cmd_endoq)

    carrier = argparse.ArgumentParser(add_help=False)
    carrier.add_argument("--carrier", required=True,
                         help=f"one of {sorted(_FIELDS)} or q")
    carrier.add_argument("--addition", default=None,
                         help="native (default), a=K for finite fields, exotic for q")

    sp = sub.add_parser("verify-rho", parents=[common, carrier],
                        help="check the near-field-addition-map axioms")
    sp.set_defaults(handler=_cmd_verify_rho)

    sp = sub.add_parser("char-map", parents=[common, carrier],
                        help="characteristic map and prime subfield")
    sp.add_argument("--bound", type=int, default=20)
    sp.set_defaults(handler=_cmd_char_map)

    sp = sub.add_parser("enumerate-additions", parents=[common],
                        help="all exponent additions on a finite field")
    sp.add_argument("--field", required=True)
    sp.add_argument("--triples", type=int, default=None,
                    help="sample size for the cubic axiom sweeps (default: exhaustive)")
    sp.set_defaults(handler=_cmd_enumerate_additions)

    sp = sub.add_parser("isom-check", parents=[common],
                        help="power-map isomorphism between two additions")
    sp.add_argument("--field", required=True)
    sp.add_argument("--a1", required=True, help="exponent or 'native'")
    sp.add_argument("--a2", required=True, help="exponent or 'native'")
    sp.set_defaults(handler=_cmd_isom_check)

    sp = sub.add_parser("modnear-check", parents=[common],
                        help="right modnear-ring axioms for Hom((F9,+),(F9,+3))")
    sp.set_defaults(handler=_cmd_modnear_check)

    sp = sub.add_parser("nvs-verify", parents=[common],
                        help="elementary near-vector-space axioms")
    sp.add_argument("--field", required=True)
    sp.add_argument("--psi", required=True, help="id, pow:K, scale:K or table:...")
    sp.add_argument("--phi", required=True, help="id, pow:K, scale:K or table:...")
    sp.set_defaults(handler=_cmd_nvs_verify)

    sp = sub.add_parser("qmc-check", parents=[common],
                        help="five-way quasi-multiplicative equivalence")
    sp.add_argument("--field", required=True)
    sp.add_argument("--map", required=True, help="id, pow:K, scale:K or table:...")
    sp.set_defaults(handler=_cmd_qmc_check)

    sp = sub.add_parser("epsilon", parents=[common],
                        help="evaluate the complex epsilon map")
    sp.add_argument("--alpha", required=True)
    sp.add_argument("--z", required=True)
    sp.add_argument("--conjugate", action="store_true")
    sp.set_defaults(handler=_cmd_epsilon)

    return p


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _load_config(args)
        payload, ok = args.handler(args, cfg)
    except (DomainError, ResourceLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except IntegrityError as exc:
        print(f"integrity failure: {exc}", file=sys.stderr)
        return 1
    payload = {"schema": 1, "command": args.command, "ok": ok, **payload}
    if cfg.output == "json":
        print(json.dumps(payload, sort_keys=True, separators=(",", ":")))
    else:
        _render_text(payload, sys.stdout)
    return 0 if ok else 1
