"""Command-line driver: extract, mask, serve, plot."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import ConfigError, load_config, load_plan
from .microdata import MicrofileParseError
from .pipeline import build_context, run_mask, write_extract_bundle, write_mask_bundle
from .service import make_server
from .sigio import read_signal
from .svgchart import bar_chart

__all__ = ["main"]


def _cmd_extract(args) -> int:
    config = load_config(args.config)
    extraction = build_context(config)
    written = write_extract_bundle(extraction, args.out)
    for path in written:
        print(path)
    print("top extremums of the concentration difference:")
    for rank, (index, value) in enumerate(extraction.extremums, start=1):
        print(f"  {rank}. index {index}: {value:.4f}")
    return 0


def _cmd_mask(args) -> int:
    config = load_config(args.config)
    plan = load_plan(args.plan)
    extraction = build_context(config)
    result = run_mask(extraction, plan)
    paths = write_mask_bundle(extraction, plan, result, args.out)
    print(f"scale coefficients: main {result.scale1:.4f}, subordinate {result.scale2:.4f}")
    print(f"bundle written to {paths['bundle']}")
    return 0


def _cmd_serve(args) -> int:
    config = load_config(args.config)
    extraction = build_context(config)
    try:
        server = make_server(extraction, args.port, args.out, args.assets)
    except OSError as exc:
        print(f"cannot bind port {args.port}: {exc}", file=sys.stderr)
        return 1
    host, port = server.server_address
    print(f"session service listening on http://{host}:{port}/ (Ctrl-C to stop)")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0


def _cmd_plot(args) -> int:
    single = len(args.inputs) == 1
    for source in args.inputs:
        values = read_signal(source)
        if args.out and single:
            target = Path(args.out)
        elif args.out:
            base = Path(args.out)
            base.mkdir(parents=True, exist_ok=True)
            target = (base / Path(source).name).with_suffix(".svg")
        else:
            target = Path(source).with_suffix(".svg")
        target.write_text(
            bar_chart(values, title=args.title or Path(source).stem), encoding="utf-8"
        )
        print(target)
    return 0


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="groupmask",
        description="Group-anonymity masking of concentration-difference signals",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="derive quantity/concentration/difference signals")
    p.add_argument("--config", required=True, help="extraction config (JSON)")
    p.add_argument("--out", required=True, help="output directory for signal CSVs")
    p.set_defaults(func=_cmd_extract)

    p = sub.add_parser("mask", help="run the masking pipeline and rewrite the microfile")
    p.add_argument("--config", required=True, help="extraction config (JSON)")
    p.add_argument("--plan", required=True, help="masking plan (JSON)")
    p.add_argument("--out", required=True, help="output directory for the bundle")
    p.set_defaults(func=_cmd_mask)

    p = sub.add_parser("serve", help="start the local tuning session service")
    p.add_argument("--config", required=True, help="extraction config (JSON)")
    p.add_argument("--port", type=int, required=True)
    p.add_argument("--out", default="masked-out", help="bundle directory used by commit")
    p.add_argument("--assets", default=None, help="directory of static UI assets")
    p.set_defaults(func=_cmd_serve)

    p = sub.add_parser("plot", help="render signal CSVs as SVG bar charts")
    p.add_argument("--in", dest="inputs", required=True, nargs="+", help="signal CSV file(s)")
    p.add_argument("--out", default=None, help="output SVG file (or directory for several inputs)")
    p.add_argument("--title", default=None)
    p.set_defaults(func=_cmd_plot)
    return parser


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, MicrofileParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
