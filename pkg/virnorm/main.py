"""Command-line entry point: ``virnorm <command> [flags]``."""
import argparse
import sys
from pathlib import Path
from typing import List, Optional, Sequence, TextIO

from pydantic import ValidationError as PydanticValidationError

from .cli.commands import CommandContext, registry
from .cli.render import render
from .core.config import get_settings
from .core.exceptions import UsageError, VirnormError
from .core.logging import generate_run_id, get_logger, log_error, set_run_id, setup_logging
from .schemas.errors import ErrorResponse
from .schemas.report import OutputFormat, RunConfig

logger = get_logger(__name__)


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting on bad input."""

    def error(self, message: str):  # type: ignore[override]
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    settings = get_settings()
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--level", type=int, help="Level n (or instanton number)")
    common.add_argument("--r", type=int, help="Row index r of the pair (r, s)")
    common.add_argument("--s", type=int, help="Column index s of the pair (r, s)")
    common.add_argument("--max-level", type=int, help="Upper bound on rs, degree or n")
    common.add_argument("--samples", type=int, default=settings.sample_count)
    common.add_argument("--seed", type=int, default=settings.sample_seed)
    common.add_argument(
        "--format", choices=[f.value for f in OutputFormat], default=OutputFormat.TEXT.value
    )
    common.add_argument("--out", help="Write the report to this file instead of stdout")
    common.add_argument("--time-budget-secs", type=float, default=settings.time_budget_secs)
    common.add_argument(
        "--method", choices=["annihilator", "kac"], default=settings.singular_method
    )
    common.add_argument("--partition", help="Partition such as '(2,1)'")
    common.add_argument(
        "--timings", action="store_true", help="Include per-record wall times in JSON output"
    )
    common.add_argument(
        "--word", help="Virasoro word such as '2,-2'; write --word=-1,1 for a leading minus"
    )

    parser = _Parser(
        prog="virnorm",
        description="Exact Virasoro, Jack and Nekrasov computations with verification reports",
    )
    subparsers = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    subparsers.required = True
    for command in registry:
        subparsers.add_parser(command.name, help=command.help, parents=[common])
    return parser


def parse_config(argv: Sequence[str]) -> RunConfig:
    args = build_parser().parse_args(list(argv))
    try:
        return RunConfig(
            command=args.command,
            level=args.level,
            r=args.r,
            s=args.s,
            max_level=args.max_level,
            samples=args.samples,
            seed=args.seed,
            format=OutputFormat(args.format),
            out=args.out,
            time_budget_secs=args.time_budget_secs,
            method=args.method,
            partition=args.partition,
            word=args.word,
            timings=args.timings,
        )
    except PydanticValidationError as exc:
        problems = "; ".join(
            f"--{'-'.join(str(p) for p in error['loc']).replace('_', '-')}: {error['msg']}"
            for error in exc.errors()
        )
        raise UsageError(f"{args.command}: {problems}") from exc


def _emit(text: str, out: Optional[str], stdout: TextIO) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        stdout.write(text)


def _wants_json(argv: Sequence[str]) -> bool:
    argv = list(argv)
    if "--format=json" in argv:
        return True
    return any(a == "--format" and b == "json" for a, b in zip(argv, argv[1:]))


def run(
    argv: Optional[Sequence[str]] = None,
    stdout: Optional[TextIO] = None,
    stderr: Optional[TextIO] = None,
) -> int:
    """
    Execute one command and write its report.

    Args:
        argv: Arguments after the program name; defaults to sys.argv[1:]
        stdout: Stream for the report
        stderr: Stream for usage and error messages

    Returns:
        int: 0 when every check passes, 1 on a failed check or internal error,
        2 on a usage error
    """
    argv = list(sys.argv[1:] if argv is None else argv)
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    set_run_id(generate_run_id())

    try:
        config = parse_config(argv)
        result = registry.execute(CommandContext(config=config, argv=argv))
        if isinstance(result, str):
            _emit(result, config.out, stdout)
            return 0
        _emit(render(result, config.format, timings=config.timings), config.out, stdout)
        logger.info(
            "Run finished",
            extra={"event": "run_finished", "command": config.command, **result.counts()},
        )
        return result.exit_code
    except VirnormError as exc:
        if not isinstance(exc, UsageError):
            log_error(exc, {"argv": argv})
        return _write_error(exc, argv, stderr)
    except Exception as exc:
        log_error(exc, {"argv": argv})
        internal = VirnormError(
            "Internal error",
            details={"exception_type": type(exc).__name__, "exception_detail": str(exc)},
        )
        return _write_error(internal, argv, stderr)


def _write_error(exc: VirnormError, argv: Sequence[str], stderr: TextIO) -> int:
    if _wants_json(argv):
        stderr.write(ErrorResponse.from_exception(exc).model_dump_json() + "\n")
    else:
        stderr.write(f"error: {exc.message}\n")
    return exc.exit_code


def main() -> None:
    setup_logging()
    sys.exit(run())


if __name__ == "__main__":
    main()
