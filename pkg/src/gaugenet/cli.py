"""
Command-line front end.

    gaugenet --suite all --seed 7 --format records

Exit status is 0 when every check passes, 1 when any check fails and 2 on a
configuration error.
"""

import argparse
import sys
from dataclasses import replace

from .config import SUITES, ConfigError, SuiteConfig, parse_config_text, parse_group, parse_sites
from .suites import emit_report, run_suite


def build_parser():
    p = argparse.ArgumentParser(prog="gaugenet", description="Run gauge-net verification suites.")
    p.add_argument("--suite", default="all", choices=list(SUITES) + ["all"])
    p.add_argument("--config", metavar="PATH", help="flat key = value file")
    p.add_argument("--seed", type=int)
    p.add_argument("--epsilon", type=float, help="radius of the N_0 neighbourhood")
    p.add_argument("--sites", help="site counts, e.g. 32 (circle) or 8x8 (torus)")
    p.add_argument("--group", help="su2 or su3")
    p.add_argument("--region", help="region descriptor, e.g. 0-7 or 0,3,5")
    p.add_argument("--format", default="table", choices=["table", "records"])
    p.add_argument("--mc-samples", type=int, dest="mc_samples")
    return p


def load_config(args):
    """Defaults, then the config file, then command-line flags."""
    cfg = SuiteConfig()
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigError(f"cannot read config file ({exc.strerror})", "config") from None
        cfg = parse_config_text(text, cfg)
    updates = {}
    try:
        if args.sites is not None:
            updates["sites"] = parse_sites(args.sites)
            updates["topology"] = "circle" if len(updates["sites"]) == 1 else "torus"
        if args.group is not None:
            updates["group"] = parse_group(args.group)
    except ValueError as exc:
        raise ConfigError(str(exc), "sites" if "sites" not in updates else "group") from None
    for key in ("seed", "epsilon", "region", "mc_samples"):
        value = getattr(args, key)
        if value is not None:
            updates[key] = value
    return replace(cfg, **updates) if updates else cfg


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args)
    except ConfigError as exc:
        print(f"gaugenet: config error: {exc}", file=sys.stderr)
        return 2
    report = run_suite(args.suite, cfg)
    sys.stdout.write(emit_report(report, args.format))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
