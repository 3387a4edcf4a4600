"""Command-line front end.

Every subcommand prints one JSON document (to stdout or ``--output``).  Exit
status: 0 on success, 1 on a domain error, 2 on malformed input.  Errors are
reported as ``{"error": <class name>, "message": ...}``.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import encoding as enc
from . import numerics as nm
from . import selftest as st
from .components import (
    GeneralCoord,
    ParabolicCoord,
    TraceClass,
    base_point_sl,
    chart_general,
    chart_general_inv,
    chart_parabolic,
    chart_parabolic_inv,
    component_of_psl,
    component_of_sl,
    conjugator_to_base,
)
from .decompose import decompose_in_Xt, decompose_UL
from .errors import MalformedJSON, QuandleError, UnknownSubcommand
from .kleinian import (
    PRESETS,
    avatar_correspondence,
    build_quandle,
    centralizer_type,
    discreteness_report,
    preset,
    quandle_hom_check,
    theorem_scope,
)
from .moebius import PSL2Element, classify, random_sl2
from .numerics import QuadraticField
from .quandle import DEFAULT_CAP, check_axioms, conjugation_sample, inner_orbit

SUBCOMMANDS = (
    "classify", "component", "chart", "conjugator", "decompose",
    "axioms", "orbit", "kleinian", "selftest",
)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


# -- helpers ------------------------------------------------------------------

def _field(args):
    if args.exact is None:
        return None
    try:
        return QuadraticField(args.exact)
    except ValueError as e:
        raise MalformedJSON(str(e)) from None


def _read_json(text: str | None):
    if text is None or text == "-":
        text = sys.stdin.read()
    elif text.startswith("@"):
        try:
            text = Path(text[1:]).read_text()
        except OSError as e:
            raise MalformedJSON(f"cannot read {text[1:]}: {e.strerror}") from None
    return enc.loads(text)


def _matrix(args):
    return enc.decode_matrix(_read_json(args.matrix), _field(args), args.eps)


def _tc(t, eps) -> str:
    return str(TraceClass.of(t, eps))


# -- subcommands -----------------------------------------------------------

def cmd_classify(args) -> dict:
    A = _matrix(args)
    return {"class": classify(A, args.eps).value, "trace_class": _tc(A.trace(), args.eps)}


def cmd_component(args) -> dict:
    A = _matrix(args)
    c = component_of_psl(A, args.eps)
    return {
        "sl": str(component_of_sl(A, args.eps)),
        "psl": str(c),
        "trace_class": None if isinstance(c, str) else enc.encode_scalar(c.rep),
    }


def cmd_chart(args) -> dict:
    eps = args.eps
    if args.inverse:
        obj = _read_json(args.matrix)
        if not isinstance(obj, dict):
            raise MalformedJSON("chart --inverse expects an object of coordinates")
        F = _field(args)
        if "gamma" in obj:
            t = enc.decode_scalar(obj.get("trace", 3), F)
            q = GeneralCoord(*(enc.decode_scalar(obj[k], F) for k in ("alpha", "beta", "gamma")))
            return {"chart": "general", "trace": enc.encode_scalar(t),
                    "matrix": enc.encode_matrix(chart_general(q, t, eps))}
        try:
            p = ParabolicCoord(*(enc.decode_scalar(obj[k], F) for k in ("alpha", "beta")))
        except KeyError as e:
            raise MalformedJSON(f"missing coordinate {e}") from None
        return {"chart": "parabolic", "matrix": enc.encode_matrix(chart_parabolic(p))}
    A = _matrix(args)
    if nm.scalar_eq(A.trace(), 2, eps):
        p = chart_parabolic_inv(A, eps)
        return {"chart": "parabolic", "alpha": enc.encode_scalar(p.alpha),
                "beta": enc.encode_scalar(p.beta)}
    q = chart_general_inv(A, eps=eps)
    return {
        "chart": "general",
        "trace": enc.encode_scalar(A.trace()),
        "alpha": enc.encode_scalar(q.alpha),
        "beta": enc.encode_scalar(q.beta),
        "gamma": enc.encode_scalar(q.gamma),
    }


def cmd_conjugator(args) -> dict:
    A = _matrix(args)
    t, g = conjugator_to_base(A, args.eps)
    ok = base_point_sl(t, args.eps).conj_right(g).equals(A, 100 * args.eps)
    return {"trace": enc.encode_scalar(t), "conjugator": enc.encode_matrix(g), "verified": ok}


def cmd_decompose(args) -> dict:
    A = _matrix(args)
    F = A.field
    t = enc.parse_scalar_text(args.trace, F if F.exact else None)
    if not F.exact and nm.is_exact(t):
        t = complex(t)
    w = decompose_in_Xt(A, t, args.eps)
    return {
        "trace": enc.encode_scalar(t),
        "transvections": [
            {"kind": T.kind, "z": enc.encode_scalar(T.z)} for T in decompose_UL(A, args.eps).factors
        ],
        "factors": [enc.encode_matrix(f) for f in w.factors],
        "count": len(w),
        "verified": w.verify(args.eps),
    }


def _group(name: str):
    if name in PRESETS:
        return preset(name)
    path = Path(name)
    if path.suffix == ".json" or path.exists():
        try:
            obj = enc.loads(path.read_text())
        except OSError as e:
            raise MalformedJSON(f"cannot read {name}: {e.strerror}") from None
        return enc.decode_group(obj)
    raise MalformedJSON(f"unknown group {name!r}; presets are {sorted(PRESETS)}")


def cmd_axioms(args) -> dict:
    rng = random.Random(args.seed)
    if args.group == "random":
        F = _field(args) or nm.CC
        els = [random_sl2(rng, F, 3 if F.exact else 1) for _ in range(args.size)]
        source = {"random": args.size, "field": "float" if not F.exact else F.d}
    else:
        G = _group(args.group)
        ball = build_quandle(G, G.names[0], args.radius, args.cap, args.eps).ball
        els = [m.value.rep for m in ball]
        source = {"group": G.name, "radius": args.radius, "size": len(els)}
    if args.psl:
        els = [PSL2Element(A, args.eps) for A in els]
    tol = 0.0 if els[0].exact else 10 * args.eps
    rep = check_axioms(conjugation_sample(els, tol), args.triples, rng)
    out = {"seed": args.seed, "quandle": "Conj(PSL2)" if args.psl else "Conj(SL2)"}
    out.update(source)
    out.update(rep.as_dict(lambda x: enc.encode_matrix(x)))
    return out


def cmd_orbit(args) -> dict:
    obj = _read_json(args.matrix)
    if not isinstance(obj, dict) or "seeds" not in obj or "symmetries" not in obj:
        raise MalformedJSON("orbit expects {\"seeds\": [...], \"symmetries\": [...]}")
    F = _field(args)
    mats = obj["seeds"] + obj["symmetries"]
    if F is None:
        F = enc.infer_field([e for m in mats for e in enc.matrix_entries(m)])
    wrap = (lambda A: PSL2Element(A, args.eps)) if args.psl else (lambda A: A)
    seeds = [wrap(enc.decode_matrix(m, F, args.eps)) for m in obj["seeds"]]
    syms = [wrap(enc.decode_matrix(m, F, args.eps)) for m in obj["symmetries"]]
    orbit = inner_orbit(seeds, syms, args.radius, args.cap)
    comp = component_of_psl if args.psl else component_of_sl
    return {
        "radius": args.radius,
        "size": len(orbit),
        "elements": [
            {"matrix": enc.encode_matrix(x), "component": str(comp(x, args.eps))} for x in orbit
        ],
    }


def cmd_kleinian(args) -> dict:
    G = _group(args.group)
    if args.radius < 1:
        raise MalformedJSON("--radius must be at least 1")
    Q = build_quandle(G, args.gamma, args.radius, args.cap, args.eps)
    ctype, ccounts = centralizer_type(G, args.gamma, args.radius, args.eps, ball=Q.ball)
    scope = theorem_scope(G, Q.gamma, ctype, args.eps)
    rep = discreteness_report(Q, args.window, scope=scope)
    hom = quandle_hom_check(Q, args.samples, random.Random(args.seed))
    corr = avatar_correspondence(Q) if args.correspondence else None
    comps = sorted({str(component_of_psl(a, args.eps)) for a in Q.avatars})
    out = {
        "group": G.name,
        "gamma": G.format_word(Q.gamma_word),
        "radius": args.radius,
        "eps": args.eps,
        "seed": args.seed,
        "window": args.window,
        "relators_hold": G.check_relators(args.eps),
        "ball_size": len(Q.ball),
        "counts": Q.counts,
        "min_separation": [
            {"radius": r, "count": c, "window_count": w,
             "min_separation": s if s != float("inf") else None, "witness": wit}
            for r, c, w, s, wit in zip(rep.radii, rep.counts, rep.window_counts,
                                        rep.min_separation, rep.witnesses)
        ],
        "component": str(Q.component()),
        "image_components": comps,
        "centralizer_type": ctype.value,
        "centralizer_counts": ccounts,
        "verdict": rep.verdict,
        "scope": scope,
        "hypotheses": G.hypotheses,
        "hom_check": hom,
        "note": rep.note,
    }
    if corr is not None:
        out["correspondence"] = corr
    return out


def cmd_selftest(args) -> dict:
    rows = st.run(args.seed, args.eps)
    width = max(len(r["name"]) for r in rows)
    for r in rows:
        print(f"{'PASS' if r['passed'] else 'FAIL'}  {r['name']:<{width}}  {r['detail']}",
              file=sys.stderr)
    return {
        "seed": args.seed,
        "checks": [{k: r[k] for k in ("name", "passed", "detail")} for r in rows],
        "passed": all(r["passed"] for r in rows),
    }


# -- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--eps", type=float, default=nm.EPS, help="float tolerance (default 1e-9)")
    common.add_argument("--exact", type=int, metavar="D", default=None,
                        help="read plain numbers in Q(sqrt D) instead of as floats")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--cap", type=int, default=DEFAULT_CAP)
    common.add_argument("--output", "-o", default=None, help="write JSON here instead of stdout")

    p = _Parser(prog="kleinquandle", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command")

    def matrix_cmd(name, fn, help_):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.add_argument("matrix", nargs="?", default=None,
                       help="JSON text, @file, or - for stdin (the default)")
        s.set_defaults(fn=fn)
        return s

    matrix_cmd("classify", cmd_classify, "elliptic/parabolic/loxodromic and trace class")
    matrix_cmd("component", cmd_component, "connected component in SL2 and PSL2")
    s = matrix_cmd("chart", cmd_chart, "chart coordinates of a matrix")
    s.add_argument("--inverse", action="store_true", help="coordinates -> matrix")
    matrix_cmd("conjugator", cmd_conjugator, "g with g^-1 A_t g = A")
    s = matrix_cmd("decompose", cmd_decompose, "product of trace-t factors")
    s.add_argument("--trace", required=True, help="target trace, e.g. -2, 3, 1+i")

    s = sub.add_parser("axioms", parents=[common], help="check the quandle axioms on a sample")
    s.add_argument("--group", default="random", help="'random' or a preset / group JSON file")
    s.add_argument("--size", type=int, default=50, help="random sample size")
    s.add_argument("--radius", type=int, default=2, help="ball radius for a group sample")
    s.add_argument("--triples", type=int, default=10_000)
    s.add_argument("--psl", action="store_true")
    s.set_defaults(fn=cmd_axioms)

    s = matrix_cmd("orbit", cmd_orbit, "inner orbit of seeds under point symmetries")
    s.add_argument("--radius", type=int, default=2)
    s.add_argument("--psl", action="store_true")

    s = sub.add_parser("kleinian", parents=[common], help="report on Q(Gamma, gamma)")
    s.add_argument("--group", default="figure8", help="preset name or group JSON file")
    s.add_argument("--gamma", default="A", help="word for gamma, e.g. A or aB")
    s.add_argument("--radius", type=int, default=5)
    s.add_argument("--window", type=float, default=20.0)
    s.add_argument("--samples", type=int, default=500, help="homomorphism check pairs")
    s.add_argument("--correspondence", action="store_true",
                   help="also run the exhaustive coset/avatar comparison")
    s.add_argument("--report", default=None, help="also write the report to this file")
    s.set_defaults(fn=cmd_kleinian)

    s = sub.add_parser("selftest", parents=[common], help="run the invariant suite")
    s.set_defaults(fn=cmd_selftest)
    return p


def _emit(obj, path):
    text = json.dumps(obj, indent=2, ensure_ascii=False) + "\n"
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def run(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    out_path = None
    try:
        if argv and not argv[0].startswith("-") and argv[0] not in SUBCOMMANDS:
            raise UnknownSubcommand(f"unknown subcommand {argv[0]!r}; choose from {list(SUBCOMMANDS)}")
        try:
            args = build_parser().parse_args(argv)
        except _UsageError as e:
            raise MalformedJSON(str(e)) from None
        if args.command is None:
            raise UnknownSubcommand(f"a subcommand is required: {list(SUBCOMMANDS)}")
        out_path = args.output
        if not args.eps > 0:
            raise MalformedJSON("--eps must be positive")
        result = args.fn(args)
        if getattr(args, "report", None):
            _emit(result, args.report)
        _emit(result, out_path)
        if args.command == "selftest" and not result["passed"]:
            return 1
        return 0
    except (MalformedJSON, UnknownSubcommand) as e:
        _emit({"error": e.name, "message": str(e)}, out_path)
        return 2
    except QuandleError as e:
        _emit({"error": e.name, "message": str(e)}, out_path)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
