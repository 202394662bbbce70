"""``repetilab`` command line.

Exit codes: 0 success, 1 verification failure or invalid system, 2 usage
error, 3 resource cap hit.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import io as sysio
from .engine import ExpansionError, extract, generate
from .exact import SearchLimitExceeded, bounded_smallest_lsystem, smallest_bms
from .experiments import (ALL_MEASURES, EXPERIMENTS, ExperimentSpec, header_lines,
                          measure_report, rows_to_csv, run_experiment)
from .families import FAMILY_NAMES, family_iter
from .model import LSystem, NUSystem, classify, nu_size, system_size, validate_lsystem
from .nu import find_extraction_cycle, nu_generate, validate_nu

EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 1, 2, 3


class UsageError(Exception):
    pass


def parse_kv(text: str) -> dict:
    """``"n=16,seed=7"`` -> ``{"n": 16, "seed": 7}``; ``a:b`` gives a range."""
    out = {}
    if not text:
        return out
    for item in text.split(","):
        if "=" not in item:
            raise UsageError(f"expected key=value, got {item!r}")
        k, v = item.split("=", 1)
        k = k.strip()
        try:
            if ":" in v:
                lo, hi = v.split(":", 1)
                out[k] = list(range(int(lo), int(hi) + 1))
            else:
                out[k] = int(v)
        except ValueError:
            raise UsageError(f"bad integer in {item!r}") from None
    return out


def _escape(s: str) -> str:
    return "".join(c if c.isprintable() else f"\\x{ord(c):02x}" for c in s)


def _emit(args, text: str) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _load(path):
    try:
        return sysio.load(path)
    except sysio.FormatError as e:
        raise UsageError(str(e)) from None


def cmd_expand(args):
    system = _load(args.system)
    if isinstance(system, NUSystem):
        if args.slice or args.prefix:
            raise UsageError("--slice and --prefix are only supported for L-systems")
        out = nu_generate(system)
    elif args.slice:
        try:
            a, t, i, j = args.slice.split(",")
            out = extract(system, a, int(t), int(i), int(j))
        except ValueError as e:
            if isinstance(e, ExpansionError):
                raise
            raise UsageError(f"bad --slice {args.slice!r}: expected a,t,i,j") from None
    elif args.prefix:
        out = generate(system.replace(length=args.prefix))
    else:
        out = generate(system)
    _emit(args, (_escape(out) if args.hex else out) + "\n")
    return 0


def cmd_validate(args):
    system = _load(args.system)
    if isinstance(system, NUSystem):
        errs = validate_nu(system)
        cycle = (find_extraction_cycle(system)
                 if any(e.startswith("extraction cycle") for e in errs) else None)
    else:
        errs, cycle = validate_lsystem(system), None
    if args.format == "json":
        _emit(args, json.dumps({"ok": not errs, "violations": errs,
                                "cycle": None if cycle is None else [str(t) for t in cycle]}) + "\n")
    else:
        _emit(args, "ok\n" if not errs else "".join(f"violation: {e}\n" for e in errs))
    return EXIT_FAIL if errs else 0


def cmd_classify(args):
    system = _load(args.system)
    if not isinstance(system, LSystem):
        raise UsageError("classify needs an L-system")
    errs = validate_lsystem(system)
    if errs:
        _emit(args, "".join(f"violation: {e}\n" for e in errs))
        return EXIT_FAIL
    _emit(args, str(classify(system)) + "\n")
    return 0


def _family_objects(spec: str):
    name, _, params = spec.partition(":")
    return list(family_iter(name, parse_kv(params)))


def _as_string(obj) -> str:
    if isinstance(obj, LSystem):
        return generate(obj)
    if isinstance(obj, NUSystem):
        return nu_generate(obj)
    return obj


def cmd_measure(args):
    if bool(args.input) == bool(args.family):
        raise UsageError("give exactly one of --input and --family")
    measures = tuple(m.strip() for m in args.measures.split(",")) if args.measures else ALL_MEASURES
    if set(measures) - set(ALL_MEASURES):
        raise UsageError(f"unknown measures; choose from {','.join(ALL_MEASURES)}")
    if args.input:
        with open(args.input, encoding="utf-8") as f:
            items = [(args.input, f.read().rstrip("\n"))]
    else:
        items = [(label, _as_string(obj)) for label, obj in _family_objects(args.family)]
    rows = [measure_report(w, label, measures, args.bwt_mode).row() for label, w in items]
    if args.format == "json":
        _emit(args, json.dumps(rows if len(rows) > 1 else rows[0]) + "\n")
    else:
        _emit(args, rows_to_csv(rows))
    return 0


def cmd_family(args):
    params = {}
    for p in args.param or []:
        params.update(parse_kv(p))
    items = list(family_iter(args.name, params))
    chunks = []
    for label, obj in items:
        if args.emit == "system":
            if isinstance(obj, str):
                raise UsageError(f"family {args.name} produces strings, not systems")
            chunks.append(sysio.dumps(obj))
        else:
            chunks.append(_as_string(obj))
    _emit(args, "\n".join(chunks) + "\n")
    return 0


def cmd_bruteforce(args):
    with open(args.input, encoding="utf-8") as f:
        w = f.read().rstrip("\n")
    budget = parse_kv(args.budget) if args.budget else {}
    if args.what == "bms":
        unknown = set(budget) - {"limit"}
        if unknown:
            raise UsageError(f"unknown budget keys {sorted(unknown)}")
        witness = smallest_bms(w, **budget)
        out = witness.to_json()
    else:
        keys = {"sigma_max", "size_max", "d_max", "node_cap"}
        if set(budget) - keys:
            raise UsageError(f"unknown budget keys {sorted(set(budget) - keys)}; use {sorted(keys)}")
        found = bounded_smallest_lsystem(w, **budget)
        out = {"text": w, "found": found is not None}
        if found:
            out["size"] = found[1]
            out["system"] = sysio.to_dict(found[0])
    _emit(args, json.dumps(out, ensure_ascii=False) + "\n")
    return 0


def cmd_experiment(args):
    grid = []
    if args.grid:
        grid = parse_kv("v=" + args.grid)["v"]
        grid = grid if isinstance(grid, list) else [grid]
    measures = tuple(args.measures.split(",")) if args.measures else ALL_MEASURES
    spec = ExperimentSpec(args.name, grid, measures, args.output, args.seed, args.jobs,
                          args.timeout, args.bwt_mode)
    rows = run_experiment(spec)
    if args.format == "json":
        text = json.dumps({"experiment": spec.name, "seed": spec.seed,
                           "bwt_mode": spec.bwt_mode, "rows": rows}) + "\n"
    else:
        text = rows_to_csv(rows, header_lines(spec, timestamp=not args.no_timestamp))
    _emit(args, text)
    return 0


def cmd_verify(args):
    from .acceptance import verify

    lines = []

    def report(line):
        lines.append(line)
        print(line, flush=True)

    ok = verify(args.level, report)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as f:
            f.write("\n".join(lines) + "\n")
    return 0 if ok else EXIT_FAIL


def cmd_size(args):
    system = _load(args.system)
    size = nu_size(system) if isinstance(system, NUSystem) else system_size(system)
    _emit(args, f"{size}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--output", "-o", default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--timeout", type=float, default=60.0)

    p = argparse.ArgumentParser(prog="repetilab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("expand", parents=[common], help="print the string a system generates")
    s.add_argument("--system", required=True)
    s.add_argument("--prefix", type=int)
    s.add_argument("--slice", help="a,t,i,j: tau(phi^t(a))[i:j], 1-based")
    s.add_argument("--hex", action="store_true", help="escape non-printable symbols")
    s.set_defaults(func=cmd_expand)

    s = sub.add_parser("validate", parents=[common])
    s.add_argument("--system", required=True)
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("classify", parents=[common])
    s.add_argument("--system", required=True)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("size", parents=[common], help="print system_size / nu_size")
    s.add_argument("--system", required=True)
    s.set_defaults(func=cmd_size)

    s = sub.add_parser("measure", parents=[common])
    s.add_argument("--input")
    s.add_argument("--family", help="name:key=value,... e.g. kociumaka:n=1024,seed=3")
    s.add_argument("--measures", help=",".join(ALL_MEASURES))
    s.add_argument("--bwt-mode", choices=("rotations", "sentinel"), default="rotations")
    s.set_defaults(func=cmd_measure)

    s = sub.add_parser("family", parents=[common])
    s.add_argument("--name", required=True, choices=FAMILY_NAMES)
    s.add_argument("--param", action="append", help="key=value[,key=value]; lo:hi for ranges")
    s.add_argument("--emit", choices=("string", "system"), default="string")
    s.set_defaults(func=cmd_family)

    s = sub.add_parser("bruteforce", parents=[common])
    s.add_argument("--what", choices=("bms", "lsystem"), required=True)
    s.add_argument("--input", required=True)
    s.add_argument("--budget", help="k=v,... (bms: limit; lsystem: sigma_max,size_max,d_max,node_cap)")
    s.set_defaults(func=cmd_bruteforce)

    s = sub.add_parser("experiment", parents=[common])
    s.add_argument("--name", required=True, choices=list(EXPERIMENTS))
    s.add_argument("--grid", help="single value or lo:hi range of the experiment parameter")
    s.add_argument("--measures")
    s.add_argument("--bwt-mode", choices=("rotations", "sentinel"), default="rotations")
    s.add_argument("--no-timestamp", action="store_true")
    s.set_defaults(func=cmd_experiment)

    s = sub.add_parser("verify", parents=[common])
    s.add_argument("--level", choices=("quick", "full"), default="quick")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"repetilab: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SearchLimitExceeded as e:
        print(f"repetilab: resource cap: {e}", file=sys.stderr)
        return EXIT_CAP
    except ExpansionError as e:
        print(f"repetilab: {e}", file=sys.stderr)
        return EXIT_CAP if "too large" in str(e) else EXIT_FAIL
    except (ValueError, OSError) as e:
        print(f"repetilab: error: {e}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
