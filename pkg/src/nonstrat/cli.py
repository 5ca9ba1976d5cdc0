"""Command-line interface.

Exit status: 0 on success, 1 on usage or input errors, 2 when ``--strict``
is given and a solve did not converge or a probe was inconclusive.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict, dataclass, field

import numpy as np

from . import classify as cl
from .aggregate import aggregation_counterexample
from .catalog import prisoners_dilemma
from .elementary import BUILTINS
from .game import EPS_DIFF, EPS_TIE, GameError
from .gameio import (RNG_ALGORITHM, SCHEMA, format_shape, game_to_dict, load_game, parse_shape,
                     random_game, serialize_game)
from .modelspec import ModelSpecError, parse_model
from .strategic import QuantalResponseModel, make_qbr_model, qre_solve

EXIT_OK, EXIT_USAGE, EXIT_STRICT = 0, 1, 2


@dataclass
class RunConfig:
    seed: int = 0
    budget: int = cl.DEFAULT_BUDGET
    shapes: tuple = cl.DEFAULT_SHAPES
    tie: float = EPS_TIE
    diff: float = EPS_DIFF
    qre_tol: float = 1e-10
    output: str = "table"

    def __post_init__(self):
        if self.budget <= 0:
            raise ValueError("budget must be positive")
        if min(self.tie, self.diff, self.qre_tol) <= 0:
            raise ValueError("tolerances must be positive")
        if self.output not in ("table", "json"):
            raise ValueError(f"unknown output format {self.output!r}")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _default_seed() -> int:
    raw = os.environ.get("NONSTRAT_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"NONSTRAT_SEED must be an integer, got {raw!r}")


def _shapes(text: str):
    return tuple(parse_shape(s) for s in text.split(","))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "json"), default="table",
                        help="output format (default: %(default)s)")
    common.add_argument("--strict", action="store_true",
                        help="exit 2 on non-convergence or inconclusive results")

    probe = argparse.ArgumentParser(add_help=False)
    probe.add_argument("--model", required=True, help="model spec, e.g. maxmax or qbr:uniform:1")
    probe.add_argument("--player", type=int, default=0)
    probe.add_argument("--budget", type=int, default=cl.DEFAULT_BUDGET)
    probe.add_argument("--seed", type=int, default=None,
                       help="random seed (default: $NONSTRAT_SEED or 0)")
    probe.add_argument("--shapes", type=_shapes, default=cl.DEFAULT_SHAPES,
                       help="comma-separated shapes PxA1x..xAP (default: 2x2x2,2x3x3,2x4x4)")

    parser = _Parser(prog="nonstrat", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("predict", parents=[common], help="evaluate a model on a game")
    p.add_argument("--model", required=True)
    p.add_argument("--game", required=True, help="game document (JSON)")
    p.add_argument("--player", type=int, default=0)

    p = sub.add_parser("solve-qre", parents=[common], help="solve for a logit QRE")
    p.add_argument("--game", required=True)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--damping", type=float, default=0.5)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--max-iter", type=int, default=100_000)

    sub.add_parser("classify", parents=[common, probe],
                   help="classify a model as strategic or nonstrategic")

    p = sub.add_parser("witness", parents=[common, probe], help="run a single probe")
    p.add_argument("kind", choices=("other", "dominance", "self"))
    p.add_argument("--game", help="game for the self probe (default: random game)")
    p.add_argument("--shape", type=parse_shape, default=(2, 2),
                   help="shape of the random game for the self probe")

    p = sub.add_parser("demo", parents=[common], help="worked constructions")
    p.add_argument("which", choices=("theorem1", "theorem3", "aggregation"))
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--budget", type=int, default=cl.DEFAULT_BUDGET)
    p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("gen", help="emit a random game document")
    p.add_argument("--shape", type=parse_shape, required=True, help="PxA1x..xAP, e.g. 2x3x3")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--description", default=None)
    return parser


def _dist(game, player, probs) -> dict:
    return {a: float(p) for a, p in zip(game.action_names[player], probs)}


def _emit(doc: dict, fmt: str, table_lines) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        sys.stdout.write("\n".join(table_lines(doc)) + "\n")


def _dist_lines(dist: dict, indent: str = "  "):
    return [f"{indent}{a}\t{p:.6f}" for a, p in dist.items()]


def cmd_predict(args) -> int:
    game = load_game(args.game)
    model = parse_model(args.model)
    probs = model(game, args.player)
    doc = {"model": args.model, "player": args.player,
           "distribution": _dist(game, args.player, probs)}
    _emit(doc, args.format,
          lambda d: [f"model {d['model']}, player {d['player']}"] + _dist_lines(d["distribution"]))
    return EXIT_OK


def cmd_solve_qre(args) -> int:
    game = load_game(args.game)
    sol = qre_solve(game, args.lam, damping=args.damping, tol=args.tol, max_iter=args.max_iter)
    doc = {
        "lambda": args.lam,
        "converged": sol.converged,
        "residual": sol.residual,
        "iterations": sol.iterations,
        "profile": [_dist(game, j, s) for j, s in enumerate(sol.profile)],
    }

    def lines(d):
        out = [f"converged {d['converged']}  residual {d['residual']:.3e}  "
               f"iterations {d['iterations']}"]
        for j, dist in enumerate(d["profile"]):
            out.append(f"player {j}")
            out.extend(_dist_lines(dist))
        return out

    _emit(doc, args.format, lines)
    return EXIT_STRICT if args.strict and not sol.converged else EXIT_OK


def _config(args) -> RunConfig:
    seed = args.seed if args.seed is not None else _default_seed()
    return RunConfig(seed=seed, budget=args.budget, shapes=args.shapes, output=args.format)


def _config_doc(cfg: RunConfig) -> dict:
    doc = asdict(cfg)
    doc["shapes"] = [format_shape(s) for s in cfg.shapes]
    doc["schema"] = SCHEMA
    doc["rng"] = RNG_ALGORITHM
    return doc


def _report_lines(doc):
    yield f"{doc['probe']}: {doc['verdict']} (budget used {doc['budget_used']}, method {doc['method']})"
    for g, out in zip(doc["witness_games"], doc["outputs"]):
        yield f"  game utilities {g['utilities']}  -> output {[round(v, 6) for v in out]}"
    for k, v in doc.get("details", {}).items():
        yield f"  {k}: {v}"


def cmd_classify(args) -> int:
    cfg = _config(args)
    model = parse_model(args.model)
    report = cl.classify_model(model, args.player, cfg.shapes, cfg.budget, cfg.seed)
    doc = report.to_dict()
    doc["config"] = _config_doc(cfg)

    def lines(d):
        out = [f"model {d['model']}  player {d['player']}  verdict {d['verdict']}"]
        for k, v in d["flags"].items():
            out.append(f"  {k}: {v}")
        for probe in d["probes"].values():
            out.extend(_report_lines(probe))
        return out

    _emit(doc, cfg.output, lines)
    inconclusive = report.verdict is cl.Classification.INCONCLUSIVE
    return EXIT_STRICT if args.strict and inconclusive else EXIT_OK


def cmd_witness(args) -> int:
    cfg = _config(args)
    model = parse_model(args.model)
    if args.kind == "other":
        report = cl.other_responsiveness_witness(model, args.player, cfg.shapes, cfg.budget, cfg.seed)
    elif args.kind == "dominance":
        report = cl.dominance_responsiveness_falsifier(model, args.player, cfg.shapes,
                                                       cfg.budget, cfg.seed)
    else:
        game = load_game(args.game) if args.game else random_game(args.shape, cfg.seed)
        _, report = cl.self_responsiveness_construction(model, args.player, game)
    doc = report.to_dict()
    doc["model"] = args.model
    doc["config"] = _config_doc(cfg)
    _emit(doc, cfg.output, lambda d: list(_report_lines(d)))
    return EXIT_STRICT if args.strict and not report.found else EXIT_OK


def demo_theorem1(budget: int, seed: int) -> dict:
    pd = prisoners_dilemma()
    level1 = make_qbr_model(BUILTINS["uniform"](), 1.0)
    level2 = QuantalResponseModel(level1, 1.0)
    _, self_rep = cl.self_responsiveness_construction(level1, 0, pd)
    return {
        "self_responsiveness": {"model": level1.name, **self_rep.to_dict()},
        "level1_other": {"model": level1.name,
                         **cl.other_responsiveness_witness(level1, 0, budget=100,
                                                           seed=seed).to_dict()},
        "level2_other": {"model": level2.name,
                         **cl.other_responsiveness_witness(level2, 0, budget=100,
                                                           seed=seed).to_dict()},
        "level2_dominance": {"model": level2.name,
                             **cl.dominance_responsiveness_falsifier(level2, 0, budget=budget,
                                                                     seed=seed).to_dict()},
    }


def demo_theorem3() -> dict:
    g1, g2 = cl.theorem3_game_pair([1.0, 2.0], [2.0, 1.0], 0)
    outputs = {}
    for name, make in BUILTINS.items():
        m = make()
        outputs[name] = [_dist(g1, 0, m(g1, 0)), _dist(g2, 0, m(g2, 0))]
    return {"x": [1.0, 2.0], "x_prime": [2.0, 1.0],
            "games": [game_to_dict(g1), game_to_dict(g2)], "outputs": outputs}


def demo_aggregation(alpha: float) -> dict:
    ce = aggregation_counterexample(alpha)
    got3, got4 = ce.model(ce.g3, 0), ce.model(ce.g4, 0)
    return {
        "alpha": alpha,
        "model": ce.model.name,
        "games": [game_to_dict(ce.g3), game_to_dict(ce.g4)],
        "outputs": [_dist(ce.g3, 0, got3), _dist(ce.g4, 0, got4)],
        "expected": [_dist(ce.g3, 0, ce.expected_g3), _dist(ce.g4, 0, ce.expected_g4)],
        "matches": bool(np.array_equal(got3, ce.expected_g3) and np.array_equal(got4, ce.expected_g4)),
    }


def _generic_lines(doc, indent=""):
    for k, v in doc.items():
        if isinstance(v, dict):
            yield f"{indent}{k}:"
            yield from _generic_lines(v, indent + "  ")
        else:
            yield f"{indent}{k}: {json.dumps(v)}"


def cmd_demo(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    if args.which == "theorem1":
        doc = demo_theorem1(args.budget, seed)
    elif args.which == "theorem3":
        doc = demo_theorem3()
    else:
        doc = demo_aggregation(args.alpha)
    _emit(doc, args.format, lambda d: list(_generic_lines(d)))
    return EXIT_OK


def cmd_gen(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    meta = {"seed": seed, "rng": RNG_ALGORITHM}
    if args.description:
        meta["description"] = args.description
    sys.stdout.write(serialize_game(random_game(args.shape, seed), meta))
    return EXIT_OK


COMMANDS = {
    "predict": cmd_predict,
    "solve-qre": cmd_solve_qre,
    "classify": cmd_classify,
    "witness": cmd_witness,
    "demo": cmd_demo,
    "gen": cmd_gen,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (GameError, ModelSpecError, ValueError, OSError) as exc:
        print(f"nonstrat: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
