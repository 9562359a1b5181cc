"""Command line driver: replay, compute, cards, serve, plot-data.

Failures print one JSON object to stderr and exit with 2 (validation),
3 (protocol) or 4 (internal), so scripts can branch on both the code and
the structured payload.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .cards import (
    approximate_with_cards,
    cards_from_values,
    format_fraction,
    parse_fraction,
)
from .errors import Docit2Error, InternalError, ProtocolError, ValidationError
from .fuzzy import knots
from .it2 import IT2MF, ORDERS, it2_add, it2_scale, it2_weighted_average
from .mcdm import DecisionProblem, rank, ranking_csv, score_knots_csv
from .session import SessionConfig, linguistic_scale
from .session_io import (
    SessionDocument,
    events_from_jsonl,
    load,
    replay,
    save,
    scale_knots_csv,
)

RELATIONS = {-1: "less", 0: "equal", 1: "greater"}


def _read_json(path: str) -> dict:
    return json.loads(Path(path).read_text())


def _emit(data, output: str | None) -> None:
    text = data if isinstance(data, str) else json.dumps(data, indent=2, sort_keys=True)
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _replay_input(args) -> SessionDocument:
    raw = Path(args.input).read_bytes()
    if args.input.endswith(".jsonl"):
        if not args.config:
            raise ValidationError(
                "an event log needs --config with the session configuration",
                field="config",
            )
        config = SessionConfig.from_json(_read_json(args.config))
        events = events_from_jsonl(raw.decode("utf-8"))
        return SessionDocument.of(replay(config, events))
    doc = load(raw)
    return SessionDocument.of(replay(doc.config, doc.events))


def cmd_replay(args) -> int:
    doc = _replay_input(args)
    state = doc.state
    if args.output:
        Path(args.output).write_bytes(save(doc))
    report = {
        "phase": state.phase,
        "events": len(state.audit_log),
        "value_scale": None if state.value_scale is None else state.value_scale.to_json(),
        "sides": {
            f"{state.config.labels[index]}/{side}": {
                "fractions": [
                    [format_fraction(v) for v in variant]
                    for variant in record.variants
                ],
                "decimals": [
                    [float(v) for v in variant] for variant in record.variants
                ],
                "reviewed": record.reviewed,
            }
            for (index, side), record in sorted(state.sides.items())
        },
        "labels": {
            label: mf.to_dict() for label, mf in sorted(state.memberships.items())
        },
    }
    sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    return 0


def _parse_it2(data: dict) -> IT2MF:
    return IT2MF.from_dict(data)


def cmd_compute(args) -> int:
    expr = _read_json(args.input)
    op = expr.get("op")
    order_name = f"order_{args.order}" if args.order else expr.get("order", "order_1")
    if order_name not in ORDERS:
        raise ValidationError(f"unknown order {order_name!r}", field="order")
    if op == "add":
        result = it2_add(_parse_it2(expr["a"]), _parse_it2(expr["b"])).to_dict()
        out = {"op": op, "result": result}
    elif op == "scale":
        result = it2_scale(
            float(parse_fraction(expr["factor"])), _parse_it2(expr["operand"])
        ).to_dict()
        out = {"op": op, "result": result}
    elif op == "wa":
        operands = [_parse_it2(o) for o in expr["operands"]]
        weights = [float(parse_fraction(w)) for w in expr["weights"]]
        out = {"op": op, "result": it2_weighted_average(operands, weights).to_dict()}
    elif op == "order":
        value = ORDERS[order_name](_parse_it2(expr["a"]), _parse_it2(expr["b"]))
        out = {
            "op": op,
            "order": order_name,
            "result": value,
            "relation": RELATIONS[value],
        }
    elif op == "rank":
        problem = DecisionProblem.from_dict(expr["problem"])
        ranking = rank(problem, order_name)
        out = {
            "op": op,
            "order": order_name,
            "ranking": ranking.to_dict(),
            "csv": ranking_csv(ranking),
        }
        if args.knots_output:
            Path(args.knots_output).write_text(score_knots_csv(ranking))
    else:
        raise ValidationError(
            f"unknown op {op!r}, expected add|scale|wa|order|rank", field="op"
        )
    _emit(out, args.output)
    return 0


def cmd_cards(args) -> int:
    values = [parse_fraction(v) for v in args.values.split(",")]
    if (args.digits is None) == (args.h_max is None):
        raise ValidationError("choose exactly one of --digits or --h-max")
    if args.digits is not None:
        counts = approximate_with_cards(values, args.digits)
        _emit(",".join(str(c) for c in counts), args.output)
        return 0
    chain, _ = cards_from_values(values, args.h_max)
    _emit(",".join(str(gap.lo) for gap in chain.gaps), args.output)
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(default_enumeration_cap=args.enumeration_cap)
    uvicorn.run(app, host=args.bind, port=args.port, log_level="warning")
    return 0


def cmd_plot_data(args) -> int:
    raw = Path(args.input).read_bytes()
    if args.input.endswith(".docit2.json"):
        doc = load(raw)
        _emit(scale_knots_csv(linguistic_scale(doc.state)), args.output)
        return 0
    data = json.loads(raw.decode("utf-8"))
    mf = _parse_it2(data)
    lines = ["component,x,membership"]
    for component, curve in (("lower", mf.lower), ("upper", mf.upper)):
        for x, degree in knots(curve):
            lines.append(f"{component},{x!r},{degree!r}")
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="docit2",
        description="Card-based fuzzy scale elicitation: replay, compute, serve.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_replay = sub.add_parser("replay", help="fold an event log or document")
    p_replay.add_argument("--input", required=True, help=".docit2.json or .events.jsonl")
    p_replay.add_argument("--config", help="config JSON (required for .jsonl input)")
    p_replay.add_argument("--output", help="write the replayed document here")
    p_replay.set_defaults(func=cmd_replay)

    p_compute = sub.add_parser("compute", help="run one expression file")
    p_compute.add_argument("--input", required=True)
    p_compute.add_argument("--output")
    p_compute.add_argument("--order", choices=("1", "2"))
    p_compute.add_argument("--knots-output", help="score knot CSV for rank")
    p_compute.set_defaults(func=cmd_compute)

    p_cards = sub.add_parser("cards", help="values to card counts")
    p_cards.add_argument("--values", required=True, help="comma-separated numbers")
    p_cards.add_argument("--digits", type=int, help="decimal precision mode")
    p_cards.add_argument("--h-max", type=int, dest="h_max", help="inverse chain mode")
    p_cards.add_argument("--output")
    p_cards.set_defaults(func=cmd_cards)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument(
        "--port", type=int, default=int(os.environ.get("DOCIT2_PORT", "8714"))
    )
    p_serve.add_argument(
        "--bind", default=os.environ.get("DOCIT2_BIND", "127.0.0.1")
    )
    p_serve.add_argument(
        "--enumeration-cap",
        type=int,
        dest="enumeration_cap",
        default=int(os.environ.get("DOCIT2_ENUMERATION_CAP", "10000")),
    )
    p_serve.set_defaults(func=cmd_serve)

    p_plot = sub.add_parser("plot-data", help="knot-table CSV from MF or document")
    p_plot.add_argument("--input", required=True)
    p_plot.add_argument("--output")
    p_plot.set_defaults(func=cmd_plot_data)

    return parser


def _failure(kind: str, err: Exception, extras: dict) -> dict:
    payload = {"error": kind, "type": type(err).__name__, "message": str(err)}
    for key, value in extras.items():
        if value is not None:
            payload[key] = value
    return payload


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ProtocolError as err:
        payload = _failure(
            "protocol", err, {"phase": err.phase, "expected": list(err.expected or ())}
        )
        code = 3
    except ValidationError as err:
        payload = _failure("validation", err, {"field": getattr(err, "field", None)})
        code = 2
    except Docit2Error as err:
        if isinstance(err, InternalError):
            payload = _failure("internal", err, {})
            code = 4
        else:
            payload = _failure(
                "validation", err, {"offset": getattr(err, "offset", None)}
            )
            code = 2
    except (OSError, json.JSONDecodeError, UnicodeDecodeError) as err:
        payload = _failure("validation", err, {})
        code = 2
    except Exception as err:  # anything unplanned is an internal failure
        payload = _failure("internal", err, {})
        code = 4
    sys.stderr.write(json.dumps(payload, sort_keys=True) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
