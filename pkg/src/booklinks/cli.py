"""Command-line front end: ``booklinks <command> ...``.

Exit codes: 0 success, 1 validation or parse failure, 2 search budget exhausted
(or no certificate found within it).  Every flag also reads a
``BOOKLINKS_<FLAG>`` environment variable; an explicit flag wins.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import diagram, moves, spectrum, tiles
from .words import ParseError, WordError, bridge_index, components, format_word, geometric_braid_index, parse_word, strand_profile, validate

EXIT_OK, EXIT_INVALID, EXIT_BUDGET = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with the validation code, keeping 2 for budget exhaustion."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise CliError(f"{self.prog}: {message}")


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_INVALID):
        super().__init__(message)
        self.code = code


def _env(name: str, default, cast=str):
    raw = os.environ.get(f"BOOKLINKS_{name.upper()}")
    if raw is None:
        return default
    try:
        return cast(raw)
    except ValueError:
        raise CliError(f"bad value for BOOKLINKS_{name.upper()}: {raw!r}") from None


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _read_text(arg: str) -> tuple[str, str]:
    if arg == "-":
        return sys.stdin.read(), "<stdin>"
    p = Path(arg)
    if p.exists():
        return p.read_text(), arg
    if arg.lstrip().startswith("base"):
        return arg, "<inline>"
    raise CliError(f"{arg}: no such file")


def load_word(arg: str):
    text, name = _read_text(arg)
    try:
        w = parse_word(text)
    except ParseError as exc:
        raise CliError(f"{name}:{exc.line}:{exc.column}: {exc.args[0].split(': ', 1)[-1]}") from None
    rep = validate(w)
    if not rep:
        raise CliError(f"{name}: {rep}")
    return w


def load_complex(arg: str) -> tiles.TileComplex:
    text, name = _read_text(arg)
    try:
        return tiles.from_json(text)
    except (ValueError, KeyError, TypeError) as exc:
        raise CliError(f"{name}: cannot read complex: {exc}") from None


def _emit(out, args, pairs: list[tuple[str, object]], text_line: str | None = None) -> None:
    if args.format == "machine" or text_line is None:
        for k, v in pairs:
            print(f"{k}={v}", file=out)
    else:
        print(text_line, file=out)


# -- commands -----------------------------------------------------------


def cmd_validate(args, out) -> int:
    text, name = _read_text(args.word)
    try:
        w = parse_word(text)
    except ParseError as exc:
        raise CliError(f"{name}:{exc.line}:{exc.column}: {exc.args[0].split(': ', 1)[-1]}") from None
    rep = validate(w)
    if not rep:
        raise CliError(f"{name}: {rep}")
    print("ok", file=out)
    return EXIT_OK


def cmd_invariants(args, out) -> int:
    w = load_word(args.word)
    cm = components(w)
    prof = ",".join(map(str, strand_profile(w)))
    per = " ".join(f"{mx}/{mn}/{wd}" for mx, mn, wd in zip(cm.maxima, cm.minima, cm.winding))
    pairs = [
        ("braid", geometric_braid_index(w)),
        ("bridge", bridge_index(w)),
        ("components", cm.n_components),
        ("lk_axis", diagram.linking_with_axis(w)),
        ("profile", prof),
        ("per_component", per.replace(" ", ";")),
    ]
    line = " ".join(f"{k}={v}" for k, v in pairs[:4]) + f"\nprofile={prof}\nper_component(max/min/winding)={per}"
    _emit(out, args, pairs, line)
    return EXIT_OK


def cmd_jones(args, out) -> int:
    w = load_word(args.word)
    try:
        p = diagram.jones_with_axis(w, args.cap) if args.with_axis else diagram.jones(w, args.cap)
    except diagram.CrossingCapExceeded as exc:
        raise CliError(str(exc)) from None
    _emit(out, args, [("jones_axis" if args.with_axis else "jones", p)], str(p))
    return EXIT_OK


def cmd_equiv(args, out) -> int:
    w1, w2 = load_word(args.word1), load_word(args.word2)
    res = moves.equivalence_search(w1, w2, args.budget, args.allow_stab)
    if res.path is None:
        why = "budget exhausted" if res.exhausted else "search space exhausted"
        print(f"no path found ({why}, expanded={res.expanded}); this does not show inequivalence", file=sys.stderr)
        _emit(out, args, [("found", "false"), ("expanded", res.expanded)], "not found")
        return EXIT_BUDGET
    if args.format == "machine":
        print("found=true", file=out)
        print(f"expanded={res.expanded}", file=out)
        print(f"length={len(res.path)}", file=out)
        for i, m in enumerate(res.path):
            print(f"move{i}={m}", file=out)
    else:
        print(f"path length {len(res.path)}", file=out)
        for m in res.path:
            print(f"  {m}", file=out)
    return EXIT_OK


def cmd_spectrum(args, out) -> int:
    w = load_word(args.word)
    b = spectrum.spectrum_upper_bounds(w, args.dmax, args.budget)
    names = []
    wdir = Path(args.witness_dir) if args.witness_dir else None
    if wdir is not None:
        wdir.mkdir(parents=True, exist_ok=True)
    for e in b.entries:
        if wdir is None or e.witness is None:
            names.append("-")
            continue
        f = wdir / f"witness_d{e.d}.blw"
        f.write_text(format_word(e.witness))
        names.append(str(f))
    if args.format == "machine":
        out.write(spectrum.format_machine(b))
    else:
        out.write(spectrum.format_report(b, names))
        if b.certified_as:
            print(f"exact values certified for the {b.certified_as}", file=out)
    mono = spectrum.check_monotone(b)
    if not mono:
        print(f"monotonicity check: {mono.message}", file=sys.stderr)
    if b.exhausted:
        print(f"budget of {b.budget} node expansions exhausted; bounds may be weak", file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK


def cmd_annulus(args, out) -> int:
    if args.action == "generate":
        try:
            c = tiles.generate_annulus(args.d, args.extra, args.seed)
        except tiles.ComplexError as exc:
            raise CliError(str(exc)) from None
        out.write(tiles.to_json(c))
        return EXIT_OK
    c = load_complex(args.complex)
    rep = tiles.check_complex(c)
    if args.action == "check":
        if not rep:
            raise CliError(f"{args.complex}: {rep}")
        st = tiles.annulus_status(c) if c.surface == "annulus" and c.is_boundary_h_only() else None
        pairs = [("status", "ok")]
        if st is not None:
            pairs += [
                ("cycle_length", len(st["cycle"])),
                ("off_cycle", len(st["off_cycle"])),
                ("not_good", len(st["not_good"])),
                ("choker", str(st["choker"]).lower()),
            ]
        _emit(out, args, pairs)
        return EXIT_OK
    # normalize
    if not rep:
        raise CliError(f"{args.complex}: {rep}")
    try:
        result, trace = tiles.normalize_annulus(c)
    except tiles.ComplexError as exc:
        raise CliError(str(exc)) from None
    if args.trace:
        Path(args.trace).write_text(trace.to_json() + "\n")
    text = tiles.to_json(result)
    if args.output:
        Path(args.output).write_text(text)
    else:
        out.write(text)
    print(f"normalized in {len(trace)} rotations (bound {tiles.step_bound(c)})", file=sys.stderr)
    return EXIT_OK


def cmd_render(args, out) -> int:
    text, name = _read_text(args.input)
    if text.lstrip().startswith("{"):
        c = load_complex(args.input)
        out.write(tiles.to_dot(c))
        return EXIT_OK
    w = load_word(args.input)
    d = diagram.to_diagram(w, include_axis=args.with_axis)
    if args.pd:
        out.write(diagram.format_pd(d))
    else:
        out.write(diagram_dot(d))
    return EXIT_OK


def diagram_dot(d: diagram.PlanarDiagram) -> str:
    """The 4-valent graph of a diagram: one node per crossing, one edge per arc."""
    ends: dict[int, list[int]] = {}
    for k, x in enumerate(d.crossings):
        for label in x:
            ends.setdefault(label, []).append(k)
    lines = ["graph G {"]
    for k in range(len(d.crossings)):
        sign = "+" if d.signs[k] > 0 else "-"
        lines.append(f'  c{k} [shape=point, xlabel="{sign}"];')
    for label in sorted(ends):
        a, b = ends[label]
        lines.append(f'  c{a} -- c{b} [label="{label}"];')
    if d.free_loops:
        lines.append(f'  loops [shape=plaintext, label="{d.free_loops} free loop(s)"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "machine"), default=_env("format", "text"))
    common.add_argument("--threads", type=_positive, default=_env("threads", 1, int), help="worker cap (the library runs sequentially)")
    common.add_argument("--seed", type=int, default=_env("seed", 0, int))
    common.add_argument("--cap", type=_positive, default=_env("cap", diagram.DEFAULT_CROSSING_CAP, int), help="crossing cap for the bracket")

    p = _Parser(prog="booklinks", description="Book-link words, invariants, spectrum bounds and tile complexes.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check a word file")
    s.add_argument("word")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("invariants", parents=[common], help="indices, components, linking with the binding")
    s.add_argument("word")
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("jones", parents=[common], help="Jones polynomial of the closure")
    s.add_argument("word")
    s.add_argument("--with-axis", action="store_true", default=_env("with_axis", False, _flag))
    s.set_defaults(func=cmd_jones)

    s = sub.add_parser("equiv", parents=[common], help="bounded search for a move path")
    s.add_argument("word1")
    s.add_argument("word2")
    s.add_argument("--budget", type=_positive, default=_env("budget", 10_000, int))
    s.add_argument("--allow-stab", action="store_true", default=_env("allow_stab", False, _flag))
    s.set_defaults(func=cmd_equiv)

    s = sub.add_parser("spectrum", parents=[common], help="upper bounds on the book index spectrum")
    s.add_argument("word")
    s.add_argument("--dmax", type=int, default=_env("dmax", 3, int))
    s.add_argument("--budget", type=_positive, default=_env("budget", 1_000_000, int))
    s.add_argument("--witness-dir", default=_env("witness_dir", None))
    s.set_defaults(func=cmd_spectrum)

    s = sub.add_parser("annulus", help="annulus tile complexes")
    acts = s.add_subparsers(dest="action", required=True)
    for name, text in (("check", "validate a complex"), ("normalize", "rotate to the choker normal form")):
        a = acts.add_parser(name, parents=[common], help=text)
        a.add_argument("complex")
        if name == "normalize":
            a.add_argument("--trace", default=_env("trace", None))
            a.add_argument("--output", "-o", default=None)
        a.set_defaults(func=cmd_annulus)
    a = acts.add_parser("generate", parents=[common], help="random valid complex, deterministic in --seed")
    a.add_argument("--d", type=_positive, default=_env("d", 1, int), help="bridge index")
    a.add_argument("--extra", type=int, default=_env("extra", 0, int), help="h-tiles off the cycle")
    a.set_defaults(func=cmd_annulus)

    s = sub.add_parser("render", parents=[common], help="DOT or PD rendering of a word or complex")
    s.add_argument("input")
    s.add_argument("--dot", action="store_true", default=True)
    s.add_argument("--pd", action="store_true", help="print the PD code instead of DOT (words only)")
    s.add_argument("--with-axis", action="store_true")
    s.set_defaults(func=cmd_render)
    return p


def _flag(text: str) -> bool:
    return text.strip().lower() in ("1", "true", "yes", "on")


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    try:
        parser = build_parser()
        args = parser.parse_args(argv)
        return args.func(args, out)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (WordError, moves.MoveError, tiles.ComplexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
