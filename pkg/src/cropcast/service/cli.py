"""Command line entry points.

Subcommands:
    bench     run the full classifier suite, write report files
    train     fit one classifier on the train split, save the model
    serve     run the HTTP service
    simulate  emit simulated sensor messages at a target service
    chain     offline chain inspection (verify | show)
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from ..dataset import SplitSpec, content_fingerprint, load_dataset, stratified_split
from ..errors import CropcastError
from ..models import (
    ClassifierSpec,
    benchmark_suite,
    default_specs,
    evaluate,
    fit,
    format_table,
    save_model,
)
from ..models.base import KINDS
from ..models.benchmark import write_report_files
from ..telemetry import SimConfig, generate_message

DEFAULT_DATA = "data/crop_recommendation.csv"


def _add_split_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--data", default=DEFAULT_DATA, help="dataset CSV path")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--test-fraction", type=float, default=0.25)
    p.add_argument("--no-stratify", action="store_true")


def _split_spec(args) -> SplitSpec:
    return SplitSpec(
        test_fraction=args.test_fraction, seed=args.seed, stratified=not args.no_stratify
    )


def cmd_bench(args) -> int:
    data = load_dataset(args.data)
    fingerprint = content_fingerprint(args.data)
    if args.models == "all":
        specs = default_specs(seed=args.seed)
    else:
        specs = [ClassifierSpec(kind=k.strip(), seed=args.seed) for k in args.models.split(",")]
    report = benchmark_suite(data, _split_spec(args), specs, dataset_fingerprint=fingerprint)
    paths = write_report_files(report, args.out_dir)
    print(format_table(report), end="")
    print(f"report: {paths['json']}")
    return 0


def cmd_train(args) -> int:
    data = load_dataset(args.data)
    train, test = stratified_split(data, _split_spec(args))
    spec = ClassifierSpec(kind=args.model, seed=args.seed)
    model = fit(spec, train)
    report = evaluate(model, test)
    save_model(model, args.out)
    print(
        f"{report.algorithm}: accuracy {report.accuracy:.2f}%  "
        f"precision {report.precision:.2f}%  recall {report.recall:.2f}%  "
        f"f1 {report.f1:.2f}%  -> {args.out}"
    )
    return 0


SERVE_DEFAULTS = {
    "model": "model.json",
    "chain": "chain.jsonl",
    "host": "127.0.0.1",
    "port": 8000,
    "k": 3,
    "static": "webui/dist",
    "report": "reports/report.json",
}


def resolve_serve_settings(args) -> dict:
    """Built-in defaults, overridden by the config file, overridden by flags."""
    from ..errors import ServiceError

    settings = dict(SERVE_DEFAULTS)
    if args.config:
        try:
            loaded = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ServiceError(f"config file {args.config}: {exc}") from None
        unknown = set(loaded) - set(SERVE_DEFAULTS)
        if unknown:
            raise ServiceError(f"config file {args.config}: unknown key {sorted(unknown)[0]!r}")
        settings.update(loaded)
    for name in SERVE_DEFAULTS:
        flag = getattr(args, name)
        if flag is not None:
            settings[name] = flag
    return settings


def cmd_serve(args) -> int:
    import uvicorn

    from .app import ServiceConfig, create_app

    settings = resolve_serve_settings(args)
    app = create_app(
        ServiceConfig(
            model_path=settings["model"],
            chain_path=settings["chain"],
            default_k=int(settings["k"]),
            static_dir=settings["static"],
            report_path=settings["report"],
        )
    )
    uvicorn.run(app, host=settings["host"], port=int(settings["port"]), log_level="warning")
    return 0


def cmd_simulate(args) -> int:
    import requests

    data = load_dataset(args.data)
    cfg = SimConfig(
        mode=args.mode,
        rate=args.rate,
        seed=args.seed,
        device_count=args.devices,
        dataset=data,
    )
    url = args.target.rstrip("/") + "/api/v1/ingest"
    accepted = rejected = 0
    for step in range(args.count):
        msg = generate_message(cfg, step)
        response = requests.post(url, json=msg.to_payload(), timeout=10)
        if response.status_code == 200:
            accepted += 1
        else:
            rejected += 1
        if args.rate > 0 and step + 1 < args.count and not args.no_wait:
            time.sleep(1.0 / args.rate)
    print(f"sent {args.count} message(s): {accepted} accepted, {rejected} rejected")
    return 0 if rejected == 0 else 1


def cmd_chain(args) -> int:
    from ..ledger.store import load_chain
    from ..ledger.chain import to_hex, verify_chain

    chain = load_chain(args.file)
    if args.action == "verify":
        result = verify_chain(chain)
        if result.ok:
            print(f"ok: {len(chain.blocks)} block(s), {len(chain.contract_state)} prediction(s)")
            return 0
        print(f"violation at block {result.block_number}: {result.reason}")
        return 1
    # show
    limit = args.limit if args.limit is not None else len(chain.blocks)
    for block in reversed(chain.blocks[-limit:]):
        print(
            json.dumps(
                {
                    "number": block.number,
                    "timestamp": block.timestamp,
                    "hash": to_hex(block.hash),
                    "gas_used": block.gas_used,
                    "gas_limit": block.gas_limit,
                    "tx_count": len(block.transactions),
                }
            )
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cropcast")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bench", help="benchmark the classifier suite")
    _add_split_flags(p)
    p.add_argument("--models", default="all", help="comma-separated kinds or 'all'")
    p.add_argument("--out-dir", default="reports")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("train", help="fit one classifier and save it")
    _add_split_flags(p)
    p.add_argument("--model", default="rf", choices=KINDS)
    p.add_argument("--out", default="model.json")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--config", default=None, help="JSON config file; explicit flags override")
    p.add_argument("--model", default=None)
    p.add_argument("--chain", default=None)
    p.add_argument("--host", default=None)
    p.add_argument("--port", type=int, default=None)
    p.add_argument("--k", type=int, default=None, help="default rank depth")
    p.add_argument("--static", default=None, help="web console asset directory")
    p.add_argument("--report", default=None)
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("simulate", help="send simulated sensor readings to a service")
    p.add_argument("--target", default="http://127.0.0.1:8000")
    p.add_argument("--data", default=DEFAULT_DATA)
    p.add_argument("--mode", default="replay", choices=("replay", "synthetic"))
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--rate", type=float, default=5.0, help="messages per second")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--devices", type=int, default=1)
    p.add_argument("--no-wait", action="store_true", help="do not sleep between messages")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("chain", help="offline chain inspection")
    p.add_argument("action", choices=("verify", "show"))
    p.add_argument("--file", default="chain.jsonl")
    p.add_argument("--limit", type=int, default=None)
    p.set_defaults(func=cmd_chain)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CropcastError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
