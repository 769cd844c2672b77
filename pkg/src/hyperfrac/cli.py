"""Command-line client for the exact-set service.

By default commands run in-process against the same operations the HTTP
service exposes; with ``--server URL`` the CLI becomes a thin HTTP client of
a running instance, sending the textual file formats over the wire and
writing the returned artifacts locally.

Exit codes: 0 success (or all checks passed), 1 verification failure,
2 usage or parse error, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import asdict
from typing import Dict, Optional

from .errors import (
    HyperfracError,
    IterationCapExceeded,
    LevelCapError,
    MaterializationError,
    ParseError,
    UnrepresentableError,
)
from .service import ops

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_RESOURCE_CAP = 3


class CliFailure(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _read_file(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliFailure(EXIT_USAGE, f"cannot read {path}: {exc}") from exc


def _write_file(path: str, content: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(content)
    except OSError as exc:
        raise CliFailure(EXIT_USAGE, f"cannot write {path}: {exc}") from exc


def _call(server: Optional[str], endpoint: str, payload: Dict) -> Dict:
    """Run an operation locally or against a remote server."""
    if server is None:
        try:
            if endpoint == "attractor":
                return asdict(ops.attractor_op(payload["ifs_text"], payload["tolerance"], payload.get("cap")))
            if endpoint == "reduce":
                return asdict(ops.reduce_op(payload["gridset_text"], payload["levels"], payload["depth"]))
            if endpoint == "hausdorff":
                return asdict(ops.hausdorff_op(payload["cover_a"], payload["cover_b"]))
            if endpoint == "render":
                return asdict(
                    ops.render_op(
                        payload["cover_text"],
                        payload["height"],
                        payload["width"],
                        payload.get("embed_dim"),
                    )
                )
            if endpoint == "verify":
                outcome = ops.verify_op(payload["suite"], payload.get("options"))
                return {
                    "lines": [asdict(line) for line in outcome.lines],
                    "all_passed": outcome.all_passed,
                }
            raise AssertionError(f"unknown endpoint {endpoint}")
        except (ParseError, UnrepresentableError, ValueError) as exc:
            raise CliFailure(EXIT_USAGE, str(exc)) from exc
        except (IterationCapExceeded, LevelCapError, MaterializationError) as exc:
            raise CliFailure(EXIT_RESOURCE_CAP, str(exc)) from exc

    import httpx

    try:
        response = httpx.post(f"{server.rstrip('/')}/{endpoint}", json=payload, timeout=600.0)
    except httpx.HTTPError as exc:
        raise CliFailure(EXIT_USAGE, f"cannot reach server {server}: {exc}") from exc
    if response.status_code == 400:
        raise CliFailure(EXIT_USAGE, response.json().get("detail", response.text))
    if response.status_code == 409:
        raise CliFailure(EXIT_RESOURCE_CAP, response.json().get("detail", response.text))
    if response.status_code == 422:
        raise CliFailure(EXIT_USAGE, response.text)
    if response.status_code != 200:
        raise CliFailure(EXIT_VERIFY_FAILED, f"server error {response.status_code}: {response.text}")
    return response.json()


def _cmd_attractor(args) -> int:
    payload = {
        "ifs_text": _read_file(args.ifs_file),
        "tolerance": args.tol,
        "cap": args.cap,
    }
    result = _call(args.server, "attractor", payload)
    _write_file(args.out, result["cover_text"])
    flag = "certified" if result["certified"] else "heuristic"
    print(f"iterations={result['iterations']} error_bound={result['error_bound']} {flag}")
    return EXIT_OK


def _cmd_reduce(args) -> int:
    payload = {
        "gridset_text": _read_file(args.gridset_file),
        "levels": args.levels,
        "depth": args.depth,
    }
    result = _call(args.server, "reduce", payload)
    _write_file(args.out, result["cover_text"])
    _write_file(args.out + ".plan", result["plan_text"])
    # exact values are in the set-file header and the plan dump; the summary
    # line stays readable
    from .ratio import decimal_approx, parse_rational

    res = decimal_approx(parse_rational(result["resolution"]), 6)
    lo = decimal_approx(parse_rational(result["x_lower"]), 12)
    hi = decimal_approx(parse_rational(result["x_upper"]), 12)
    print(f"resolution~={res} span=[{lo}, {hi}] (exact values in output files)")
    return EXIT_OK


def _cmd_hausdorff(args) -> int:
    payload = {"cover_a": _read_file(args.file_a), "cover_b": _read_file(args.file_b)}
    result = _call(args.server, "hausdorff", payload)
    print(result["distance"])
    print(f"ideal-distance within ±{result['ideal_within']} (sum of resolutions)")
    return EXIT_OK


def _cmd_render(args) -> int:
    payload = {
        "cover_text": _read_file(args.set_file),
        "height": args.height,
        "width": args.width,
        "embed_dim": args.embed_dim,
    }
    result = _call(args.server, "render", payload)
    _write_file(args.out, result["svg"])
    return EXIT_OK


def _parse_ktilde_range(text: str) -> Dict[str, int]:
    try:
        if ".." in text:
            lo_s, hi_s = text.split("..", 1)
            lo, hi = int(lo_s), int(hi_s)
        else:
            lo, hi = 2, int(text)
        if not 2 <= lo <= hi:
            raise ValueError
    except ValueError:
        raise CliFailure(EXIT_USAGE, f"bad --ktilde range {text!r} (expected A..B)") from None
    return {"kt_lo": lo, "kt_hi": hi, "kt_max": hi}


def _cmd_verify(args) -> int:
    options: Dict[str, int] = {}
    if args.ktilde:
        options.update(_parse_ktilde_range(args.ktilde))
    if args.maxlen is not None:
        options["maxlen"] = args.maxlen
    if args.random is not None:
        options["random_count"] = args.random
        options["triples"] = args.random
    if args.seed is not None:
        options["seed"] = args.seed
    if args.levels is not None:
        options["levels"] = args.levels
    if args.depth is not None:
        options["depth"] = args.depth
    if args.pairs is not None:
        options["pairs"] = args.pairs
    result = _call(args.server, "verify", {"suite": args.suite, "options": options})
    for line in result["lines"]:
        status = "PASS" if line["passed"] else "FAIL"
        detail = f" {line['detail']}" if line.get("detail") else ""
        print(f"{line['name']} {status}{detail}")
    return EXIT_OK if result["all_passed"] else EXIT_VERIFY_FAILED


def _cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("hyperfrac.service.app:app", host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperfrac",
        description="Exact covers of compact subsets of [0,1]: attractors, "
        "distorted section constructions, grid-set reductions, verification "
        "suites, SVG renders.",
    )
    parser.add_argument(
        "--server",
        default=None,
        help="base URL of a running service; when absent, ops run in-process",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("attractor", help="solve an IFS attractor with an error certificate")
    p.add_argument("ifs_file")
    p.add_argument("--tol", required=True, help="tolerance p/q")
    p.add_argument("--cap", type=int, default=None, help="iteration cap (env HYPERFRAC_CAP)")
    p.add_argument("--out", required=True, help="output set-file path")
    p.set_defaults(func=_cmd_attractor)

    p = sub.add_parser("reduce", help="build the reduction image of a grid set")
    p.add_argument("gridset_file")
    p.add_argument("--levels", type=int, default=2)
    p.add_argument("--depth", type=int, default=5)
    p.add_argument("--out", required=True, help="output set-file path (.plan written beside)")
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("hausdorff", help="exact distance between two set files")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.set_defaults(func=_cmd_hausdorff)

    p = sub.add_parser("render", help="render a set file as deterministic SVG")
    p.add_argument("set_file")
    p.add_argument("--out", required=True)
    p.add_argument("--height", type=int, default=40)
    p.add_argument("--width", type=int, default=800)
    p.add_argument("--embed-dim", type=int, default=None, dest="embed_dim")
    p.set_defaults(func=_cmd_render)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", help="suite name (see docs) or 'all' / 'acceptance'")
    p.add_argument("--maxlen", type=int, default=None)
    p.add_argument("--ktilde", default=None, help="range A..B")
    p.add_argument("--random", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--levels", type=int, default=None)
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--pairs", type=int, default=None)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8787)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliFailure as failure:
        print(f"error: {failure}", file=sys.stderr)
        return failure.code
    except HyperfracError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
