"""Batch command-line front end: sweeps, figure presets, and verification.

Exit codes: 0 on success, 1 when a verification check fails, 2 on usage
errors.
"""
from __future__ import annotations

import argparse
import json
import sys

from .sweeps import PRESETS, SweepSpec, TARGETS, format_table, preset_spec, run_sweep

_GROUPS = {
    "coupler": ("coupler.",),
    "criteria": ("criteria.",),
    "zeno": ("zeno.",),
    "qpd": ("qpd.",),
    "tomogram": ("tomogram.",),
    "channels": ("channels.",),
    "crypto": ("crypto.",),
}


def _parse_value(text):
    for caster in (int, float, complex):
        try:
            return caster(text)
        except ValueError:
            continue
    return text


def _parse_set(items):
    out = {}
    for item in items or ():
        if "=" not in item:
            raise argparse.ArgumentTypeError(f"--set expects key=value, got {item!r}")
        key, _, val = item.partition("=")
        out[key.strip()] = _parse_value(val.strip())
    return out


def _parse_axis(text):
    try:
        name, rng = text.split("=", 1)
        start, stop, steps = rng.split(":")
        return (name.strip(), float(start), float(stop), int(steps))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"--axis expects name=start:stop:steps, got {text!r}") from None


def _add_sweep_options(sp):
    sp.add_argument("--op", required=True, help="target operation within this group")
    sp.add_argument("--set", action="append", metavar="KEY=VAL", dest="fixed",
                    help="fix a parameter (repeatable)")
    sp.add_argument("--axis", action="append", type=_parse_axis, metavar="NAME=START:STOP:STEPS",
                    help="swept axis (repeatable, up to two)")
    _add_common_options(sp)


def _add_common_options(sp):
    sp.add_argument("--out", default="-", help="output path, '-' for stdout")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--threads", type=int, default=1)
    sp.add_argument("--tol", action="append", metavar="KEY=VAL", default=None,
                    help="tolerance override for verify checks (repeatable)")


def _emit(text, out):
    if out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _run_sweep_command(group, args):
    target = args.op if "." in args.op else f"{group}.{args.op}"
    if target not in TARGETS or not target.startswith(_GROUPS[group]):
        known = sorted(t.split(".", 1)[1] for t in TARGETS if t.startswith(_GROUPS[group]))
        print(f"error: unknown op {args.op!r} for {group}; known: {', '.join(known)}",
              file=sys.stderr)
        return 2
    spec = SweepSpec(target, _parse_set(args.fixed), tuple(args.axis or ()))
    columns, rows = run_sweep(spec, threads=args.threads)
    meta = {"spec": {"target": spec.target, "fixed": {k: repr(v) for k, v in spec.fixed.items()},
                     "axes": list(spec.axes)}, "version": _version()}
    _emit(format_table(columns, rows, args.format, meta), args.out)
    return 0


def _version():
    from . import __version__

    return __version__


def _run_preset(args):
    try:
        spec = preset_spec(args.name)
    except KeyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    columns, rows = run_sweep(spec, threads=args.threads)
    meta = {"spec": {"preset": args.name, "target": spec.target,
                     "fixed": {k: repr(v) for k, v in spec.fixed.items()},
                     "axes": list(spec.axes)}, "version": _version()}
    _emit(format_table(columns, rows, args.format, meta), args.out)
    return 0


def _run_verify(args):
    from .verify import CHECKS, verify_all

    overrides = {}
    for item in args.tol or ():
        key, _, val = item.partition("=")
        if key not in CHECKS:
            print(f"error: unknown check {key!r} in --tol", file=sys.stderr)
            return 2
        overrides[key] = float(val)
    report = verify_all(tol_overrides=overrides,
                        names=args.only or None)
    text = json.dumps(report, indent=1) + "\n"
    _emit(text, args.out)
    if args.out != "-":
        for c in report["checks"]:
            mark = "PASS" if c["passed"] else "FAIL"
            print(f"{mark} {c['name']} residual={c['residual']:.3e} "
                  f"tol={c['tolerance']:.3e} ({c['seconds']}s)")
    return 0 if report["passed"] else 1


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="qoclab",
        description="Coupler nonclassicality, spin quasiprobabilities, noisy "
                    "channels, and protocol fidelities as reproducible tables.")
    sub = parser.add_subparsers(dest="command", required=True)

    for group in _GROUPS:
        sp = sub.add_parser(group, help=f"sweeps over the {group} operations")
        _add_sweep_options(sp)

    pp = sub.add_parser("preset", help="run a registered figure-family preset")
    pp.add_argument("name", help=f"one of: {', '.join(sorted(PRESETS))}")
    _add_common_options(pp)

    vp = sub.add_parser("verify", help="run every oracle cross-check and report")
    vp.add_argument("--only", action="append", help="restrict to named checks (repeatable)")
    _add_common_options(vp)

    args = parser.parse_args(argv)
    try:
        if args.command == "preset":
            return _run_preset(args)
        if args.command == "verify":
            return _run_verify(args)
        return _run_sweep_command(args.command, args)
    except (ValueError, KeyError, argparse.ArgumentTypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
