"""Command line entry point: ``yangyang <subcommand> ...``; JSON on stdout.

Exit codes: 0 when every requested check passes, 1 when a verification
fails, 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import bethe, braid, monodromy
from .liedata import LieType, WeightIndex, weight_table

SUITES = ("ybe", "eigen", "markov", "minpoly", "blocks")


class UsageError(Exception):
    pass


def _lie(args) -> LieType:
    try:
        return LieType(args.family, args.rank)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _complex(text: str) -> complex:
    """``"re,im"`` or a Python complex literal."""
    try:
        if "," in text:
            re_, im = text.split(",")
            return complex(float(re_), float(im))
        return complex(text.replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot read {text!r} as a complex number") from None


def _pair(t: LieType, text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"expected a pair like '3p,2', got {text!r}")
    tab = weight_table(t)
    try:
        return tuple(tab.position(WeightIndex.parse(p)) for p in parts)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# -- subcommands ----------------------------------------------------------------

def cmd_rmatrix(args) -> tuple[dict, int]:
    t = _lie(args)
    R = monodromy.build_monodromy(t)
    out = R.to_json()
    if args.src:
        src = _pair(t, args.src)
        labels = weight_table(t).labels
        want = [labels[src[0]].to_json(), labels[src[1]].to_json()]
        out["entries"] = [e for e in out["entries"] if e["src"] == want]
    return out, 0


def cmd_invariant(args) -> tuple[dict, int]:
    t = _lie(args)
    try:
        beta = braid.parse_braid(args.braid, args.strands)
        inv = braid.knot_invariant(t, beta)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out = inv.to_json()
    out.update({"type": str(t), "braid": str(beta), "strands": beta.strands})
    return out, 0


def _random_word(rng: random.Random, max_strands: int = 4, max_len: int = 8) -> braid.BraidWord:
    m = rng.randint(2, max_strands)
    length = rng.randint(1, max_len)
    return braid.BraidWord(m, tuple(rng.choice((1, -1)) * rng.randint(1, m - 1) for _ in range(length)))


def markov_suite(t: LieType, samples: int, seed: int) -> dict:
    rng = random.Random(seed)
    failures = []
    for _ in range(samples):
        beta = _random_word(rng)
        base = braid.knot_invariant(t, beta).normalized
        variants = {
            "conjugate": beta.rotate(rng.randint(1, len(beta))),
            "stabilize+": beta.stabilize(1),
            "stabilize-": beta.stabilize(-1),
        }
        for name, other in variants.items():
            if braid.knot_invariant(t, other).normalized != base:
                failures.append({"braid": str(beta), "strands": beta.strands, "move": name})
    return {"pass": not failures, "samples": samples, "seed": seed, "failures": failures[:10]}


def cmd_verify(args) -> tuple[dict, int]:
    t = _lie(args)
    suite = args.suite
    out: dict = {"suite": suite, "type": str(t)}
    R = monodromy.build_monodromy(t)
    if suite == "ybe":
        report: list = []
        ok = monodromy.verify_yang_baxter(R, report)
        out.update({"pass": ok, "counterexamples": report})
    elif suite == "eigen":
        try:
            p = monodromy.build_pairing(t)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        ok = monodromy.verify_pairing_eigenvector(t)
        out.update({"pass": ok, "twist": p.twist.to_triples()})
    elif suite == "minpoly":
        poly = monodromy.minimal_polynomial(R)
        inv = monodromy.inverse(R, poly)
        ok = poly[0].is_unit() and (R @ inv) == monodromy.RMatrix.identity(t)
        out.update({"pass": ok, "degree": len(poly) - 1, "coefficients": [c.to_triples() for c in poly]})
    elif suite == "blocks":
        bad = monodromy.weight_conservation_violations(R)
        swaps = monodromy.pure_swap_violations(R)
        ok = not bad and not swaps
        out.update({"pass": ok,
                    "weight_violations": [[list(s), list(d)] for s, d in bad],
                    "swap_violations": [list(s) for s in swaps]})
    else:
        try:
            monodromy.build_pairing(t)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        res = markov_suite(t, args.samples, args.seed)
        out.update(res)
        ok = res["pass"]
    return out, 0 if ok else 1


def cmd_critical(args) -> tuple[dict, int]:
    t = _lie(args)
    try:
        sol = bethe.closed_form_one_point(t, args.l, args.c, args.z, check=False)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out = sol.to_json()
    ordering = bethe.verify_ordering(sol) if args.z == 0 else None
    ok = sol.relative_residual < bethe.RESIDUAL_TOL and ordering is not False
    out.update({"type": str(t), "level": str(args.l), "c": args.c, "ordering_ok": ordering})
    return out, 0 if ok else 1


def cmd_critical2(args) -> tuple[dict, int]:
    t = _lie(args)
    try:
        sol = bethe.closed_form_two_point_c0(t, args.z1, args.z2, check=False)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out = sol.to_json()
    out.update({"type": str(t), "c": 0.0, "ordering_ok": None})
    return out, 0 if sol.relative_residual < bethe.RESIDUAL_TOL else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="yangyang", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def typed(p):
        p.add_argument("--family", required=True, choices=list("ABCD"), type=str.upper)
        p.add_argument("--rank", required=True, type=int)
        return p

    p = typed(sub.add_parser("rmatrix", help="dump the monodromy matrix"))
    p.add_argument("--format", choices=["json"], default="json")
    p.add_argument("--src", help="restrict to one source pair, e.g. '3p,2'")
    p.set_defaults(func=cmd_rmatrix)

    p = typed(sub.add_parser("invariant", help="normalised invariant of a braid closure"))
    p.add_argument("--braid", required=True)
    p.add_argument("--strands", type=int)
    p.set_defaults(func=cmd_invariant)

    p = typed(sub.add_parser("verify", help="run an invariant suite"))
    p.add_argument("--suite", required=True, choices=SUITES)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = typed(sub.add_parser("critical", help="one-point closed-form critical point"))
    p.add_argument("--l", required=True, help="level, e.g. 5 or '2p' for the primed D level")
    p.add_argument("--c", required=True, type=float)
    p.add_argument("--z", type=_complex, default=0)
    p.set_defaults(func=cmd_critical)

    p = typed(sub.add_parser("critical2", help="two-point critical point at c = 0"))
    p.add_argument("--z1", required=True, type=_complex)
    p.add_argument("--z2", required=True, type=_complex)
    p.set_defaults(func=cmd_critical2)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out, code = args.func(args)
    except UsageError as exc:
        print(json.dumps({"error": str(exc)}, sort_keys=True), file=sys.stderr)
        return 2
    print(json.dumps(out, sort_keys=True))
    return code


run = main

if __name__ == "__main__":
    sys.exit(main())
