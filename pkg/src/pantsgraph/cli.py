"""Command-line front end.

Every subcommand prints (or writes) a JSON report and exits with status 0 iff
all invariants it checks hold.  Relative output paths, and the default report
location when ``--output`` is omitted but ``PANTSGRAPH_OUTPUT_DIR`` is set,
resolve against that directory.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from pathlib import Path

from pantsgraph import __version__
from pantsgraph.autos import (
    GENERATORS,
    from_word,
    induced_automorphism,
    phi,
    signature,
    witness,
    witnesses,
)
from pantsgraph.circuits import census, enumerate_circuits, type3_membership
from pantsgraph.graphs import SCHEMA_VERSION, ball
from pantsgraph.homotopy import ContractionCertificate, apply_move, contract_loop, random_loop, verify_certificate
from pantsgraph.loops import to_closed, to_cycle
from pantsgraph.models import CurveN3, MODELS, N3Oracle, get_model, parse_vertex
from pantsgraph.structure import BudgetExhausted, classify_edge

OUTPUT_ENV = "PANTSGRAPH_OUTPUT_DIR"
EXPECTED_SIGNATURE = {"n3": (3, 0), "fan": (2, 1), "n12": (1, 2)}


class CliError(Exception):
    pass


def _out_path(args, default_name: str) -> Path | None:
    root = os.environ.get(OUTPUT_ENV)
    if args.output:
        p = Path(args.output)
        return Path(root) / p if root and not p.is_absolute() else p
    if root:
        return Path(root) / default_name
    return None


def _figure_path(args) -> Path | None:
    if not getattr(args, "figure", None):
        return None
    p = Path(args.figure)
    root = os.environ.get(OUTPUT_ENV)
    return Path(root) / p if root and not p.is_absolute() else p


def _emit(args, text: str, default_name: str) -> None:
    path = _out_path(args, default_name)
    if path is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text if text.endswith("\n") else text + "\n")


def _report(args, command: str, body: dict, ok: bool) -> int:
    report = {"schema": SCHEMA_VERSION, "command": command, "ok": ok, **body}
    fig = _figure_path(args)
    if fig is not None:
        report["figure"] = str(fig)
    _emit(args, json.dumps(report, indent=2, sort_keys=True), f"{command}.json")
    return 0 if ok else 1


def _base(oracle, text: str | None):
    if text is None:
        return oracle.default_base()
    try:
        return oracle.parse_vertex(text)
    except (ValueError, KeyError) as exc:
        raise CliError(f"invalid base vertex {text!r}: {exc}") from None


def _bases(oracle, args) -> list:
    bases = [_base(oracle, args.base)]
    rng = random.Random(args.seed)
    while len(bases) < 1 + args.extra_bases:
        v = oracle.sample_vertex(rng)
        if v not in bases:
            bases.append(v)
    return bases


# -- subcommands --------------------------------------------------------------

def cmd_ball(args) -> int:
    oracle = get_model(args.model)
    g = ball(oracle, _base(oracle, args.base), args.radius, args.width)
    fig = _figure_path(args)
    if fig is not None:
        from pantsgraph.plotting import plot_ball

        plot_ball(g, fig, title=f"{args.model} ball, radius {args.radius}")
    text = g.to_dot() if args.format == "dot" else g.to_json(indent=2)
    _emit(args, text, f"ball.{args.format}")
    return 0


def cmd_census(args) -> int:
    oracle = get_model(args.model)
    t0 = time.perf_counter()
    runs = []
    total: dict[str, int] = {}
    ok = True
    for base in _bases(oracle, args):
        g = ball(oracle, base, args.radius, args.width)
        res = census(g, args.max_len, oracle)
        tri = [c for c in enumerate_circuits(g, 3) if len(c) == 3]
        member = type3_membership(g, oracle, tri)
        ok = ok and not res["violations"] and not member["violations"]
        for k, n in res["counts"].items():
            total[k] = total.get(k, 0) + n
        runs.append({
            "base": str(base),
            "vertices": len(g),
            "counts": res["counts"],
            "violations": res["violations"],
            "type3_membership": member,
        })
    total = dict(sorted(total.items()))
    fig = _figure_path(args)
    if fig is not None:
        from pantsgraph.plotting import plot_census

        plot_census(total, fig, title=f"{args.model} circuits up to length {args.max_len}")
    body = {
        "model": args.model,
        "radius": args.radius,
        "width": args.width,
        "max_len": args.max_len,
        "runs": runs,
        "counts": total,
        "unclassifiable_triangles": total.get("3:unclassifiable", 0),
    }
    if args.timing:
        body["seconds"] = round(time.perf_counter() - t0, 3)
    return _report(args, "census", body, ok)


def classify_report(oracle, g, budget: int) -> dict:
    rows = []
    for e in g.edges():
        if not (g.is_interior(e.source) or g.is_interior(e.target)):
            continue
        truth = e.move_type
        try:
            c = classify_edge(oracle, (e.source, e.target), budget)
            predicted, agree = c.predicted, c.agrees(e)
            if truth == 4:
                predicted += f" {c.tail}->{c.head}"
        except BudgetExhausted:
            predicted, agree = "budget", False
        t = str(truth) if truth != 4 else f"4 {e.tail}->{e.head}"
        rows.append({"edge": str(e), "predicted": predicted, "truth": t, "agree": agree})
    return {"edges": rows, "agreement": sum(r["agree"] for r in rows) / len(rows) if rows else 1.0}


def cmd_classify(args) -> int:
    oracle = get_model(args.model)
    g = ball(oracle, _base(oracle, args.base), args.radius, args.width)
    rep = classify_report(oracle, g, args.budget)
    body = {"model": args.model, "radius": args.radius, "width": args.width, **rep}
    return _report(args, "classify", body, rep["agreement"] == 1.0)


def cmd_contract(args) -> int:
    oracle = N3Oracle()
    if args.loop:
        loop = [parse_vertex(x.strip()) for x in args.loop.split(";") if x.strip()]
        loop = to_closed(loop) if loop[0] != loop[-1] or len(loop) == 1 else loop
    else:
        loop = random_loop(random.Random(args.seed), args.length, args.radius, args.width)
    try:
        cert = contract_loop(loop, oracle)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    # verify a JSON round-trip so the reported certificate is what was checked
    cert = ContractionCertificate.from_dict(json.loads(cert.to_json()))
    verdict = verify_certificate(cert, oracle)
    fig = _figure_path(args)
    if fig is not None:
        from pantsgraph.plotting import plot_contraction

        cyc = to_cycle(list(cert.loop))
        lengths = [len(cyc) if len(cyc) > 1 else 0]
        for m in cert.moves:
            cyc = apply_move(cyc, m)
            lengths.append(len(cyc) if len(cyc) > 1 else 0)
        plot_contraction(lengths, [m.kind for m in cert.moves], fig)
    body = {
        "seed": args.seed,
        "certificate": cert.to_dict(),
        "verified": verdict.ok,
        "failed_move": verdict.index,
        "reason": verdict.reason,
    }
    return _report(args, "contract-loop", body, verdict.ok)


def cmd_signature(args) -> int:
    oracle = get_model(args.model)
    sig = signature(oracle, args.radius, args.width, args.budget)
    want = EXPECTED_SIGNATURE[args.model]
    body = {"model": args.model, **sig, "expected": {"g": want[0], "b": want[1]}}
    return _report(args, "signature", body, (sig["g"], sig["b"]) == want)


def cmd_phi(args) -> int:
    try:
        m = from_word(args.word)
        c = CurveN3.parse(args.curve)
        X = parse_vertex(args.witness) if args.witness else witness(c)
    except (ValueError, KeyError) as exc:
        raise CliError(str(exc)) from None
    A = induced_automorphism(m)
    oracle = N3Oracle()
    image = phi(A, c, X, oracle)
    expected = m.curve(c)
    alt = [phi(A, c, W, oracle) for W in witnesses(c)]
    body = {
        "word": args.word,
        "matrix": [list(r) for r in m.rows],
        "curve": str(c),
        "witness": str(X),
        "image": str(image),
        "slope_action": str(expected),
        "witness_independent": all(b == image for b in alt),
    }
    return _report(args, "phi", body, image == expected and body["witness_independent"])


def cmd_fixtures(args) -> int:
    from pantsgraph.fixtures import evaluate, load_fixture, names

    wanted = [args.name] if args.name else names()
    rows = []
    ok = True
    for n in wanted:
        try:
            fx = load_fixture(n)
        except KeyError as exc:
            raise CliError(str(exc.args[0])) from None
        got = evaluate(fx)
        mism = {k: {"expected": v, "got": got[k]} for k, v in fx.expect.items() if got[k] != v}
        ok = ok and not mism
        rows.append({"name": n, "circuit": str(fx.circuit), "result": got, "mismatches": mism})
    return _report(args, "fixtures", {"fixtures": rows}, ok)


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pantsgraph", description="Pants graph experiments on small non-orientable surfaces.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, model=True, base=True, radius=2, width=8):
        if model:
            sp.add_argument("--model", choices=sorted(MODELS), default="n3")
        if base:
            sp.add_argument("--base", help="base vertex, e.g. V3:0/1,1/1,1/2, centre, rim:2, n12:0")
        sp.add_argument("--radius", type=int, default=radius)
        sp.add_argument("--width", type=int, default=width, help="neighbours kept per infinite-degree vertex")
        sp.add_argument("--output", "-o", help="report path (default: stdout)")

    sp = sub.add_parser("ball", help="export a ball of a model graph")
    common(sp)
    sp.add_argument("--format", choices=["json", "dot"], default="json")
    sp.add_argument("--figure", help="also render the ball to this image file")
    sp.set_defaults(func=cmd_ball)

    sp = sub.add_parser("census", help="classify all short circuits in balls")
    common(sp)
    sp.add_argument("--max-len", type=int, default=5)
    sp.add_argument("--extra-bases", type=int, default=0, help="number of additional seeded random bases")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--timing", action="store_true", help="include wall time (breaks byte-identical output)")
    sp.add_argument("--figure", help="bar chart of the circuit counts")
    sp.set_defaults(func=cmd_census)

    sp = sub.add_parser("classify", help="compare label-free edge classification with the labels")
    common(sp)
    sp.add_argument("--budget", type=int, default=24, help="stream items probed per endpoint")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("contract-loop", help="contract a loop of the N_3 model and verify the certificate")
    common(sp, model=False, base=False, radius=3, width=6)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--length", type=int, default=20)
    sp.add_argument("--loop", help="explicit loop, vertices separated by ';'")
    sp.add_argument("--figure", help="plot the loop length after each move")
    sp.set_defaults(func=cmd_contract)

    sp = sub.add_parser("signature", help="recover (g, b) from the graph alone")
    common(sp, base=False)
    sp.add_argument("--budget", type=int, default=24)
    sp.set_defaults(func=cmd_signature)

    sp = sub.add_parser("phi", help="image of a curve under the map induced by a slope symmetry")
    sp.add_argument("--word", default="", help=f"word over {''.join(GENERATORS)}")
    sp.add_argument("--curve", required=True, help="A0, T:p/q or O:p/q")
    sp.add_argument("--witness", help="vertex containing the curve")
    sp.add_argument("--output", "-o")
    sp.set_defaults(func=cmd_phi)

    sp = sub.add_parser("fixtures", help="evaluate the bundled labeled fixtures")
    sp.add_argument("--name")
    sp.add_argument("--output", "-o")
    sp.set_defaults(func=cmd_fixtures)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "radius", 0) < 0:
        parser.error("--radius must be >= 0")
    if getattr(args, "width", 1) < 1:
        parser.error("--width must be >= 1")
    try:
        return args.func(args)
    except CliError as exc:
        print(f"pantsgraph: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"pantsgraph: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
