"""Command-line front end.

Instance files are line oriented, with ``#`` comments::

    ring z1 z2
    bracket z1 z2 : z1*z2
    dedata
    q11 : 1
    alpha 1 2 z1 : z2
    nu 2 z1 : 1
    w0 : z1
    end

An ``ore`` ... ``end`` section (keys ``alpha GEN`` and ``nu GEN``) declares a
single extension instead.  Extension variables are ``x1, x2`` (or ``x``).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Sequence

from .envelope import EnvAlgebra, EnvelopeError, build_envelope
from .extensions import (
    DEDataPoisson,
    ExtensionError,
    PoissonOreData,
    build_double_poisson_ore,
    build_poisson_ore_single,
    check_dedata,
    check_ore_data,
)
from .parse import ParseError, parse_poly
from .poisson import PoissonAlgebra, check_jacobi
from .poly import VarTable
from .report import Verdict, emit_report
from .verify import SUITES, SuiteConfig, run_suite

DOUBLE_X = ("x1", "x2")
SINGLE_X = "x"


class InstanceError(ValueError):
    def __init__(self, msg: str, line: int | None = None):
        super().__init__(f"line {line}: {msg}" if line is not None else msg)
        self.line = line


@dataclass
class Instance:
    base: PoissonAlgebra
    extension: DEDataPoisson | PoissonOreData | None = None


def resolve_path(name: str | Path) -> Path:
    """A filesystem path, or the name of a bundled instance."""
    p = Path(name)
    if p.exists():
        return p
    bundled = resources.files("poisson_env") / "instances" / p.name
    if bundled.is_file():
        return Path(str(bundled))
    raise InstanceError(f"no such instance file: {name}")


def bundled_instances() -> list[str]:
    root = resources.files("poisson_env") / "instances"
    return sorted(f.name for f in root.iterdir() if f.name.endswith((".pois", ".dpe")))


def load_instance(path: str | Path) -> Instance:
    text = resolve_path(path).read_text()
    return parse_instance(text)


def _split_kv(line: str, lineno: int) -> tuple[list[str], str]:
    if ":" not in line:
        raise InstanceError(f"expected 'key : value', got {line!r}", lineno)
    head, _, value = line.partition(":")
    value = value.strip()
    if not value:
        raise InstanceError("missing value after ':'", lineno)
    return head.split(), value


def parse_instance(text: str) -> Instance:
    ring: VarTable | None = None
    brackets: dict[tuple[str, str], object] = {}
    seen_pairs: set[frozenset] = set()
    section: str | None = None
    dedata: dict | None = None
    ore: dict | None = None

    def poly(value: str, lineno: int):
        try:
            return parse_poly(value, ring)
        except ParseError as exc:
            raise InstanceError(str(exc), lineno) from None

    def gen(name: str, lineno: int) -> str:
        if name not in ring:
            raise InstanceError(f"undeclared generator {name!r}", lineno)
        return name

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        if section is None:
            if words[0] == "ring":
                if ring is not None:
                    raise InstanceError("ring declared twice", lineno)
                names = words[1:]
                if len(set(names)) != len(names):
                    raise InstanceError("repeated generator name", lineno)
                clash = [n for n in names if n in DOUBLE_X or n == SINGLE_X]
                if clash:
                    raise InstanceError(f"generator name {clash[0]!r} is reserved for extension variables", lineno)
                ring = VarTable(tuple(names))
                continue
            if ring is None:
                raise InstanceError("'ring' must come first", lineno)
            if words[0] == "bracket":
                head, value = _split_kv(line, lineno)
                if len(head) != 3:
                    raise InstanceError("expected 'bracket A B : value'", lineno)
                a, b = gen(head[1], lineno), gen(head[2], lineno)
                if a == b:
                    raise InstanceError(f"diagonal bracket pair ({a}, {b})", lineno)
                if frozenset((a, b)) in seen_pairs:
                    raise InstanceError(f"duplicate bracket pair ({a}, {b})", lineno)
                seen_pairs.add(frozenset((a, b)))
                brackets[(a, b)] = poly(value, lineno)
                continue
            if words == ["dedata"] or words == ["ore"]:
                if dedata is not None or ore is not None:
                    raise InstanceError("at most one of 'dedata' and 'ore' may appear", lineno)
                section = words[0]
                if section == "dedata":
                    dedata = {"q": [0, 0], "alpha": {}, "nu": {}, "w": [0, 0, 0]}
                else:
                    ore = {"alpha": {}, "nu": {}}
                continue
            raise InstanceError(f"unknown directive {words[0]!r}", lineno)
        if words == ["end"]:
            section = None
            continue
        head, value = _split_kv(line, lineno)
        if section == "dedata":
            _dedata_line(dedata, head, value, lineno, poly, gen)
        else:
            _ore_line(ore, head, value, lineno, poly, gen)
    if section is not None:
        raise InstanceError(f"unterminated '{section}' section")
    if ring is None:
        raise InstanceError("missing 'ring' line")

    base = PoissonAlgebra(ring, brackets)
    if dedata is not None:
        ext = DEDataPoisson.build(ring, q=tuple(dedata["q"]), alpha=dedata["alpha"], nu=dedata["nu"], w=tuple(dedata["w"]))
        return Instance(base, ext)
    if ore is not None:
        return Instance(base, PoissonOreData.build(ring, alpha=ore["alpha"], nu=ore["nu"]))
    return Instance(base)


def _dedata_line(d: dict, head: list[str], value: str, lineno: int, poly, gen) -> None:
    key = head[0] if head else ""
    if key in ("q11", "q12") and len(head) == 1:
        try:
            d["q"][0 if key == "q11" else 1] = Fraction(value)
        except ValueError:
            raise InstanceError(f"{key} must be a rational number", lineno) from None
    elif key in ("w1", "w2", "w0") and len(head) == 1:
        d["w"][{"w1": 0, "w2": 1, "w0": 2}[key]] = poly(value, lineno)
    elif key == "alpha" and len(head) == 4:
        k, l = _index(head[1], lineno), _index(head[2], lineno)
        slot = d["alpha"].setdefault((k, l), {})
        _assign(slot, gen(head[3], lineno), poly(value, lineno), lineno)
    elif key == "nu" and len(head) == 3:
        slot = d["nu"].setdefault(_index(head[1], lineno), {})
        _assign(slot, gen(head[2], lineno), poly(value, lineno), lineno)
    else:
        raise InstanceError(f"unknown dedata key {' '.join(head)!r}", lineno)


def _ore_line(d: dict, head: list[str], value: str, lineno: int, poly, gen) -> None:
    if len(head) == 2 and head[0] in ("alpha", "nu"):
        _assign(d[head[0]], gen(head[1], lineno), poly(value, lineno), lineno)
    else:
        raise InstanceError(f"unknown ore key {' '.join(head)!r}", lineno)


def _index(text: str, lineno: int) -> int:
    if text not in ("1", "2"):
        raise InstanceError(f"index must be 1 or 2, got {text!r}", lineno)
    return int(text)


def _assign(slot: dict, name: str, value, lineno: int) -> None:
    if name in slot:
        raise InstanceError(f"duplicate entry for {name!r}", lineno)
    slot[name] = value


# building


def gate_verdicts(inst: Instance) -> list[Verdict]:
    """Jacobi on the base, then the extension's conditions when present."""
    verdicts = [check_jacobi(inst.base)]
    if not verdicts[0].passed:
        return verdicts
    if isinstance(inst.extension, DEDataPoisson):
        verdicts += check_dedata(inst.base, inst.extension, DOUBLE_X)
    elif isinstance(inst.extension, PoissonOreData):
        verdicts += check_ore_data(inst.base, inst.extension)
    return verdicts


def build_algebra(inst: Instance) -> PoissonAlgebra:
    """The (possibly extended) Poisson algebra; raises if a gate fails."""
    failed = [v for v in gate_verdicts(inst) if not v.passed]
    if failed:
        raise ExtensionError(f"check {failed[0].name} failed: {failed[0].witness}")
    if isinstance(inst.extension, DEDataPoisson):
        A = build_double_poisson_ore(inst.base, inst.extension, DOUBLE_X)
    elif isinstance(inst.extension, PoissonOreData):
        A = build_poisson_ore_single(inst.base, inst.extension, SINGLE_X)
    else:
        return inst.base
    v = check_jacobi(A, "jacobi.extension")
    if not v.passed:
        raise ExtensionError(f"extended bracket fails Jacobi: {v.witness}")
    return A


def envelope_of(path: str | Path) -> EnvAlgebra:
    return build_envelope(build_algebra(load_instance(path)))


# commands


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="poisson-env", description="Exact checks for Poisson enveloping algebras.")
    sub = ap.add_subparsers(dest="cmd", required=True)
    for name in ("check-jacobi", "check-dedata"):
        p = sub.add_parser(name)
        p.add_argument("file")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--no-timing", action="store_true", help="report 0 ms for byte-identical output")
    p = sub.add_parser("nf", help="normal form of an expression in the enveloping algebra")
    p.add_argument("file")
    p.add_argument("expr")
    p = sub.add_parser("verify")
    p.add_argument("file")
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--degree", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--no-timing", action="store_true", help="report 0 ms for byte-identical output")
    sub.add_parser("list", help="names of bundled instances")
    return ap


def _emit(verdicts: list[Verdict], args) -> int:
    out = emit_report(verdicts, format=args.format, timing=not args.no_timing)
    if out:
        sys.stdout.write(out if out.endswith("\n") else out + "\n")
    return 0 if all(v.passed for v in verdicts) else 1


def run_command(argv: Sequence[str] | None = None) -> int:
    ap = _parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        if args.cmd == "list":
            print("\n".join(bundled_instances()))
            return 0
        inst = load_instance(args.file)
        if args.cmd == "check-jacobi":
            return _emit([check_jacobi(inst.base)], args)
        if args.cmd == "check-dedata":
            if inst.extension is None:
                raise InstanceError("instance has no dedata or ore section")
            return _emit(gate_verdicts(inst), args)
        failed = [v for v in gate_verdicts(inst) if not v.passed]
        if failed:
            if args.cmd == "verify":
                return _emit(failed, args)
            print(f"error: check {failed[0].name} failed: {failed[0].witness}", file=sys.stderr)
            return 1
        E = build_envelope(build_algebra(inst))
        if args.cmd == "nf":
            print(E.render(E.parse(args.expr)))
            return 0
        cfg = SuiteConfig(samples=args.samples, degree=args.degree, seed=args.seed)
        return _emit(run_suite(E, args.suite, cfg), args)
    except (InstanceError, ParseError, ExtensionError, EnvelopeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_command())
