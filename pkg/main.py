import argparse
import copy
import json
import logging
import os
import sys
import time
from datetime import datetime, timezone

from app.errors import LabError
from app.models import RunRecord
from app.routes import RunContext, router
from app.utils import DEFAULT_CONFIG, append_ledger, content_hash, format_table, load_config

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


class LabArgumentParser(argparse.ArgumentParser):
    """Reports malformed flags with the usage text and exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = LabArgumentParser(
        prog="geodesic-variance-lab",
        description="Numerical experiments on geodesic variance over the modular surface. "
        "All radii and lengths are hyperbolic.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="command")
    router.add_parsers(subparsers)
    return parser


def setup_config(path: str) -> dict:
    if not os.path.exists(path):
        return copy.deepcopy(DEFAULT_CONFIG)
    return load_config(path)


def render(result, record: RunRecord, fmt: str | None) -> str:
    fmt = fmt or ("csv" if result.kind == "table" else "json")
    if fmt == "json":
        return json.dumps(record.model_dump(exclude={"wall_time", "timestamp"}), indent=2) + "\n"
    if result.kind == "table":
        return format_table(result.payload, "csv")
    row = {key: value for key, value in result.payload.items() if key != "extras"}
    row.update(result.payload.get("extras", {}))
    return format_table([row], "csv")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = setup_config(args.config)
    except (OSError, ValueError) as e:
        print(f"error: could not load configuration {args.config}: {e}", file=sys.stderr)
        return 1
    logging.basicConfig(level=config["logging"]["level"].upper(), format=LOG_FORMAT)
    logger.info(f"Configuration loaded from {args.config if os.path.exists(args.config) else 'defaults'}")

    try:
        started = time.perf_counter()
        result = router.dispatch(args.command, args, RunContext(config))
        record = RunRecord(
            command=args.command,
            config=result.settings,
            input_hash=content_hash({"command": args.command, "config": result.settings}),
            payload=result.payload,
            passed=result.passed,
            wall_time=time.perf_counter() - started,
            timestamp=datetime.now(timezone.utc).isoformat(),
        )
        append_ledger(config["results"]["ledger"], record.model_dump())
        text = render(result, record, args.fmt)
        if args.out and result.kind != "file":
            with open(args.out, "w") as file:
                file.write(text)
        else:
            sys.stdout.write(text)
    except (LabError, ValueError, OSError) as e:
        logger.error(f"Command {args.command} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return 1

    logger.info(f"{args.command} finished in {record.wall_time:.2f}s")
    if args.assert_mode and result.passed is False:
        logger.error(f"{args.command}: check failed")
        return 2
    return 0
