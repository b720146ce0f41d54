"""``setlab`` command line.

Exit codes: 0 all checks pass, 1 some check failed, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
from pathlib import Path

from . import suites
from .cohomology import GroupError
from .gcrossed import SchemaError
from .lattice import LatticeError, build_patch, build_torus, lattice_from_spec


def _dims(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"\s*(\d+)\s*[xX]\s*(\d+)\s*", text)
    if not m:
        raise argparse.ArgumentTypeError(f"expected AxB, got {text!r}")
    a, b = int(m.group(1)), int(m.group(2))
    if a < 1 or b < 1:
        raise argparse.ArgumentTypeError("sizes must be at least 1")
    return a, b


def _default_seed() -> int:
    raw = os.environ.get("SETLAB_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"setlab: SETLAB_SEED must be an integer, got {raw!r}")


def _add_common(p: argparse.ArgumentParser, lattice: bool = False) -> None:
    p.add_argument("--out", help="write the JSON report to this file")
    p.add_argument("--json", action="store_true", help="print the JSON report instead of a summary")
    p.add_argument("--seed", type=int, default=None, help="RNG seed (default: $SETLAB_SEED or 0)")
    p.add_argument("--timing", action="store_true", help="record runtimes in the JSON report")
    if lattice:
        g = p.add_mutually_exclusive_group()
        g.add_argument("--cells", type=_dims, help="torus of AxB unit cells (default 2x2)")
        g.add_argument("--patch", type=_dims, help="open patch of WxH hexagons")
        g.add_argument("--lattice", help="lattice JSON file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="setlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-algebra", help="flip-and-phase operator algebra suite")
    _add_common(p)
    p.add_argument("--fuzz", type=int, default=1000, help="number of random group-law triples")

    p = sub.add_parser("verify-model", help="symbolic checks of the lattice model")
    _add_common(p, lattice=True)

    p = sub.add_parser("omega", help="fractionalization tables")
    _add_common(p, lattice=True)
    p.add_argument("--path", help="X-string steps from B(0,0), e.g. zxyz")

    p = sub.add_parser("cohomology", help="cocycle, class and H^2 checks")
    _add_common(p)
    p.add_argument("--group", default="z2z2", help="z2z2 or zN")
    p.add_argument("--coeff", type=int, default=2, help="coefficient order n of Z_n")
    p.add_argument("--h2", action="store_true", help="compute H^2(G, Z_n) two ways")
    p.add_argument("--file", help="cochain JSON file (default: the lattice model's table)")

    p = sub.add_parser("checkdata", help="consistency checks on anyon/symmetry data")
    _add_common(p)
    p.add_argument("file", nargs="?", help="data JSON file (default: bundled example)")

    p = sub.add_parser("oracle", help="dense state-vector checks")
    _add_common(p, lattice=True)
    p.add_argument("--max-qubits", type=int, default=24)
    p.add_argument("--observables", type=int, default=100)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--dump", help="write the entangled ground state to this file")
    return parser


def _lattice(args):
    if getattr(args, "lattice", None):
        return lattice_from_spec(json.loads(Path(args.lattice).read_text()))
    if getattr(args, "patch", None):
        return build_patch(*args.patch)
    return build_torus(*(args.cells or (2, 2)))


def run(argv=None) -> tuple[int, str]:
    parser = build_parser()
    args = parser.parse_args(argv)
    seed = args.seed if args.seed is not None else _default_seed()
    extra = None
    try:
        if args.command == "verify-algebra":
            report = suites.suite_algebra(seed, args.fuzz)
        elif args.command == "verify-model":
            report = suites.suite_model(_lattice(args), seed)
        elif args.command == "omega":
            report, signs = suites.suite_omega(_lattice(args), args.path)
            extra = {a: [list(r) for r in t] for a, t in signs.items()}
        elif args.command == "cohomology":
            if args.coeff < 1:
                raise ValueError("--coeff must be positive")
            report = suites.suite_cohomology(args.group, args.coeff, args.h2, args.file, seed)
        elif args.command == "checkdata":
            report = suites.suite_checkdata(args.file)
        else:
            report = suites.suite_oracle(_lattice(args), seed, args.max_qubits, args.observables,
                                         args.samples, args.dump)
    except (LatticeError, SchemaError, GroupError, OSError, ValueError) as exc:
        return 2, f"setlab {args.command}: error: {exc}\n"

    text = report.to_json(args.timing)
    if extra is not None:
        obj = json.loads(text)
        obj["tables"] = extra
        text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    out = text if args.json else report.summary()
    if extra is not None and not args.json:
        for a, t in extra.items():
            out += f"omega^({a}) = {t}\n"
    return report.exit_code(), out


def main(argv=None) -> int:
    code, text = run(argv)
    (sys.stdout if code != 2 else sys.stderr).write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
