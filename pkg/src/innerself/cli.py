"""Command line entry points.

    innerself serve    [--config FILE] [--host H] [--port P] [--data-dir D]
    innerself simulate SCRIPT [--out FILE] [--data-dir D]
    innerself enroll   --data-dir D --session S --audio F --text T [...]
    innerself export   --data-dir D --session S [--include-audio] [--out FILE]
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from innerself.errors import InnerSelfError, ScriptParseError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="innerself",
        description="Emotion-aware dialogue in the user's own cloned voice.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the HTTP/WS service")
    serve.add_argument("--config", help="path to a JSON config file")
    serve.add_argument("--host", help="bind address override")
    serve.add_argument("--port", type=int, help="bind port override")
    serve.add_argument("--data-dir", help="session store root override")

    simulate = sub.add_parser(
        "simulate", help="run a scripted session offline and print outcomes"
    )
    simulate.add_argument("script", help="JSON-lines session script")
    simulate.add_argument("--out", help="write outcomes here instead of stdout")
    simulate.add_argument(
        "--data-dir",
        help="persist session data here (default: a fresh temp directory)",
    )

    enroll = sub.add_parser("enroll", help="enroll a voice from WAV samples")
    enroll.add_argument("--data-dir", required=True)
    enroll.add_argument("--session", required=True)
    enroll.add_argument("--user", default=None, help="user name for a new session")
    enroll.add_argument(
        "--audio", action="append", required=True, help="WAV file (repeatable)"
    )
    enroll.add_argument(
        "--text", action="append", required=True, help="transcript (repeatable)"
    )

    export = sub.add_parser("export", help="dump a session document as JSON")
    export.add_argument("--data-dir", required=True)
    export.add_argument("--session", required=True)
    export.add_argument("--include-audio", action="store_true")
    export.add_argument("--out", help="write the document here instead of stdout")

    return parser


def _cmd_serve(args) -> int:
    import uvicorn

    from innerself.service.api import create_app
    from innerself.service.config import load_config

    config = load_config(args.config)
    if args.host:
        config.host = args.host
    if args.port:
        config.port = args.port
    if args.data_dir:
        config.data_dir = args.data_dir
    uvicorn.run(create_app(config), host=config.host, port=config.port)
    return 0


def _cmd_simulate(args) -> int:
    from innerself.service.simulate import run_simulation

    result = run_simulation(args.script, data_dir=args.data_dir)
    output = result.to_jsonl()
    if args.out:
        Path(args.out).write_text(output, encoding="utf-8")
    else:
        sys.stdout.write(output)
    return 0 if result.all_pass else 1


def _cmd_enroll(args) -> int:
    from innerself.audio import read_wav
    from innerself.service.config import ServiceConfig
    from innerself.service.engine import TurnEngine

    if len(args.audio) != len(args.text):
        print("error: --audio and --text counts differ", file=sys.stderr)
        return 2
    config = ServiceConfig(data_dir=args.data_dir)
    engine = TurnEngine(config)
    if not engine.store.session_exists(args.session):
        engine.create_session(user_name=args.user, session_id=args.session)
    pairs = [(read_wav(p), t) for p, t in zip(args.audio, args.text)]
    profile, warnings = engine.enroll_voice(args.session, pairs)
    print(
        json.dumps(
            {
                "session_id": args.session,
                "sample_count": profile.sample_count,
                "warnings": warnings,
            },
            indent=2,
        )
    )
    return 0


def _cmd_export(args) -> int:
    from innerself.service.config import ServiceConfig
    from innerself.service.engine import TurnEngine

    config = ServiceConfig(data_dir=args.data_dir)
    engine = TurnEngine(config)
    document = engine.export(args.session, include_audio=args.include_audio)
    output = json.dumps(document, indent=2, ensure_ascii=False)
    if args.out:
        Path(args.out).write_text(output + "\n", encoding="utf-8")
    else:
        print(output)
    return 0


_COMMANDS = {
    "serve": _cmd_serve,
    "simulate": _cmd_simulate,
    "enroll": _cmd_enroll,
    "export": _cmd_export,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ScriptParseError as exc:
        print(f"error: line {exc.line}: {exc}", file=sys.stderr)
        return 2
    except InnerSelfError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
