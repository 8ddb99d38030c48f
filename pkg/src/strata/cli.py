"""``strata`` command line: run session files and write reports."""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources

from .session import SessionError, elaborate, exit_code, format_session, parse_session, run_session

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


def shipped_sessions() -> list[str]:
    """Names of the regression sessions bundled with the package."""
    root = resources.files("strata") / "sessions"
    return sorted(p.name for p in root.iterdir() if p.name.endswith(".strata"))


def shipped_session_text(name: str) -> str:
    return (resources.files("strata") / "sessions" / name).read_text(encoding="utf-8")


def _window(text: str):
    lo, _, hi = text.partition("..")
    try:
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"window must be lo..hi, got {text!r}") from None


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="strata", description="Support and build-verdict checks for DG-modules.")
    sub = p.add_subparsers(dest="cmd", required=True)
    run = sub.add_parser("run", help="run a session file")
    run.add_argument("session", help="session file, or shipped:<name> for a bundled session")
    run.add_argument("--json", metavar="OUT", help="write the JSON report here ('-' for stdout)")
    run.add_argument("--seed", type=int)
    run.add_argument("--spair-budget", type=int, dest="spair_budget")
    run.add_argument("--window", type=_window)
    run.add_argument("--depth", type=int)
    run.add_argument("--jobs", type=int, default=1, help="run commands on this many threads")
    run.add_argument("--quiet", action="store_true", help="no text output")
    fmt = sub.add_parser("format", help="print a session in canonical form")
    fmt.add_argument("session")
    sub.add_parser("list", help="list bundled sessions")
    return p


def _read(path: str) -> str:
    if path.startswith("shipped:"):
        return shipped_session_text(path.split(":", 1)[1])
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _text_report(report: dict, out) -> None:
    for r in report["commands"]:
        tag = {"pass": "PASS", "fail": "FAIL", "error": "ERROR", "budget": "BUDGET"}[r["status"]]
        desc = " ".join([r["command"], *r["args"]])
        detail = ""
        res = r.get("result")
        if isinstance(res, dict):
            if "answer" in res:
                detail = res["answer"]
            elif "ideal" in res:
                detail = "(" + ", ".join(res["ideal"]) + ")"
            elif "holds" in res:
                detail = "holds" if res["holds"] else "fails"
            elif "dims" in res and res["dims"] is not None:
                detail = "dims " + ",".join(str(d) for _, d in res["dims"])
            elif "nonzero_degrees" in res:
                detail = "nonzero in " + (",".join(map(str, res["nonzero_degrees"])) or "no degree")
            elif "ok" in res:
                detail = "ok" if res["ok"] else "invalid"
        if "error" in r:
            detail = r["error"]
        print(f"[{tag}] line {r['line']}: {desc}" + (f" -> {detail}" if detail else ""), file=out)
    s = report["summary"]
    print(f"{s['pass']} passed, {s['fail']} failed, {s['error']} errors, {s['budget']} over budget", file=out)


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.cmd == "list":
        for name in shipped_sessions():
            print(name)
        return EXIT_OK
    try:
        text = _read(args.session)
    except OSError as exc:
        print(f"strata: cannot read {args.session}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        session = parse_session(text)
        if args.cmd == "format":
            sys.stdout.write(format_session(session))
            return EXIT_OK
        env = elaborate(session)
    except SessionError as exc:
        print(f"{args.session}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = run_session(
        session,
        env,
        seed=args.seed,
        spair_budget=args.spair_budget,
        window=args.window,
        depth=args.depth,
        jobs=args.jobs,
    )
    if not args.quiet:
        _text_report(report, sys.stdout if args.json != "-" else sys.stderr)
    if args.json:
        data = json.dumps(report, sort_keys=True, indent=2) + "\n"
        if args.json == "-":
            sys.stdout.write(data)
        else:
            with open(args.json, "w", encoding="utf-8") as fh:
                fh.write(data)
    return exit_code(report)


if __name__ == "__main__":
    sys.exit(main())
