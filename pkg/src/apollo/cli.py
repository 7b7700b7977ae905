"""Command line interface: ``apollo classify|enumerate|missing|sporadic|verify|diffplot``.

Exit codes: 0 success, 1 usage or parse error, 2 invalid input quadruple or
mismatched inputs, 3 verification failure, 4 I/O error.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
import time
from decimal import Decimal, InvalidOperation
from pathlib import Path

import numpy as np

from apollo import __version__
from apollo.classify import (
    ObstructionReport,
    PackingType,
    admissible_residues,
    extended_type,
    obstructions_for,
)
from apollo.enumeration import (
    MAX_BOUND,
    BitmapFormatError,
    CurvatureBitmap,
    MissingReport,
    SporadicReport,
    cooccurrence_check,
    enumerate_curvatures,
    missing_curvatures,
    obstruction_members,
    sample_quadruples,
    sporadic_set,
    successive_differences,
)
from apollo.packing import InvalidQuadrupleError, Quadruple, reduce_to_root, validate

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_VERIFY, EXIT_IO = 0, 1, 2, 3, 4

DEFAULT_MAX_BOUND = 10**9  # 125 MB of bitmap
CHI4_NOTE = (
    "chi4 is reported up to complex conjugation: 1, -1, or i* for the class {i, -i}; "
    "the sign of an imaginary value depends on the orientation of the packing"
)


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_quad(text: str) -> tuple[int, ...]:
    try:
        vals = tuple(int(x) for x in text.replace(" ", "").split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse quadruple {text!r}; expected a,b,c,d") from None
    if len(vals) != 4:
        raise argparse.ArgumentTypeError(f"expected four comma-separated integers, got {text!r}")
    return vals


def parse_bound(text: str) -> int:
    """Accept plain integers and scientific notation such as 1e6 or 2.5e7."""
    try:
        d = Decimal(text)
    except InvalidOperation:
        raise argparse.ArgumentTypeError(f"cannot parse bound {text!r}") from None
    if d != d.to_integral_value() or d < 1:
        raise argparse.ArgumentTypeError(f"bound must be a positive integer, got {text!r}")
    return int(d)


def max_bound() -> int:
    env = os.environ.get("APOLLO_MAX_BOUND")
    if env is None:
        return DEFAULT_MAX_BOUND
    try:
        return min(parse_bound(env), MAX_BOUND)
    except argparse.ArgumentTypeError:
        raise CliError(f"APOLLO_MAX_BOUND={env!r} is not a positive integer", EXIT_USAGE) from None


def _check_bound(N: int) -> None:
    ceiling = max_bound()
    if N > ceiling:
        raise CliError(
            f"bound {N} exceeds the ceiling {ceiling} (the bitmap needs {(N + 7) // 8} bytes); "
            "set APOLLO_MAX_BOUND to raise it",
            EXIT_USAGE,
        )


def _quadruple(args) -> Quadruple:
    try:
        return validate(args.quad)
    except InvalidQuadrupleError as exc:
        raise CliError(str(exc), EXIT_INPUT) from None


def _bitmap_for(args) -> CurvatureBitmap:
    """Load --bitmap or enumerate --quad up to --bound; cross-check when both are given."""
    if args.bitmap is not None:
        try:
            bm = CurvatureBitmap.load(args.bitmap)
        except BitmapFormatError as exc:
            raise CliError(str(exc), EXIT_IO) from None
        except InvalidQuadrupleError as exc:
            raise CliError(f"{args.bitmap}: {exc}", EXIT_INPUT) from None
        except OSError as exc:
            raise CliError(str(exc), EXIT_IO) from None
        if args.quad is not None and reduce_to_root(_quadruple(args)) != bm.root:
            raise CliError(
                f"bitmap root {tuple(bm.root)} does not match the packing of {tuple(args.quad)}", EXIT_INPUT
            )
        if args.bound is not None and args.bound != bm.N:
            raise CliError(f"bitmap bound {bm.N} does not match --bound {args.bound}", EXIT_INPUT)
        return bm
    if args.quad is None or args.bound is None:
        raise CliError("need --quad and --bound, or --bitmap", EXIT_USAGE)
    _check_bound(args.bound)
    return enumerate_curvatures(_quadruple(args), args.bound, threads=args.threads)


def _write(text: str, out) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text)
    except OSError as exc:
        raise CliError(str(exc), EXIT_IO) from None


def type_json(t: PackingType) -> dict:
    return {
        "label": str(t),
        "size": t.size,
        "k": t.k,
        "chi2": t.chi2,
        "chi4": t.chi4.value,
    }


def _header(root: Quadruple, N: int | None, t: PackingType, obs: ObstructionReport) -> dict:
    head = {"tool": "apollo", "version": __version__, "root": list(root)}
    if N is not None:
        head["N"] = N
    head["type"] = type_json(t)
    head["chi4_note"] = CHI4_NOTE
    head["families"] = [str(f) for f in obs.families]
    return head


def classify_report(q: Quadruple) -> dict:
    root = reduce_to_root(q)
    t = extended_type(root)
    obs = obstructions_for(t)
    report = _header(root, None, t, obs)
    report["input"] = list(q)
    report["admissible_residues"] = sorted(admissible_residues(t.size, t.k))
    report["false_classes"] = list(obs.false_classes)
    report["open_classes"] = list(obs.open_classes)
    return report


def _classes_json(classes: dict[int, tuple[int, ...]]) -> dict[str, list[int]]:
    return {str(r): list(v) for r, v in classes.items()}


def render_report(mr: MissingReport, sr: SporadicReport | None, obs: ObstructionReport, fmt: str) -> str:
    """Serialize missing (and optionally sporadic) curvatures; output is deterministic."""
    head = _header(mr.root, mr.N, mr.type, obs)
    if fmt == "json":
        doc = dict(head)
        doc["missing"] = _classes_json(mr.classes)
        doc["missing_count"] = sum(len(v) for v in mr.classes.values())
        if sr is not None:
            doc["sporadic"] = _classes_json(sr.classes)
            doc["sporadic_count"] = sr.count
            doc["sporadic_max"] = sr.max
        return json.dumps(doc, indent=2) + "\n"

    buf = io.StringIO()
    buf.write(f"# tool=apollo version={__version__}\n")
    buf.write("# root={} N={} type={} families={}\n".format(
        ",".join(map(str, mr.root)), mr.N, mr.type, ";".join(head["families"]) or "none"))
    sections = [("missing", mr.classes)]
    if sr is not None:
        sections.append(("sporadic", sr.classes))
    for kind, classes in sections:
        for r, vals in classes.items():
            buf.write(f"# {kind} {r}\n")
            for m in vals:
                buf.write(f"{m}\n")
    return buf.getvalue()


def read_csv_sections(text: str) -> dict[str, dict[int, list[int]]]:
    """Parse the CSV report layout back into {kind: {residue: values}}."""
    out: dict[str, dict[int, list[int]]] = {}
    current = None
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if len(parts) == 2 and parts[0] in ("missing", "sporadic"):
                current = out.setdefault(parts[0], {}).setdefault(int(parts[1]), [])
            continue
        if current is None:
            raise ValueError(f"value {line!r} outside of a section")
        current.append(int(line))
    return out


def cmd_classify(args) -> int:
    _write(json.dumps(classify_report(_quadruple(args)), indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    if args.out is None:
        raise CliError("enumerate needs --out PATH for the bitmap file", EXIT_USAGE)
    q = _quadruple(args)
    _check_bound(args.bound)
    t0 = time.perf_counter()
    bm = enumerate_curvatures(q, args.bound, threads=args.threads)
    wall = time.perf_counter() - t0
    try:
        bm.save(args.out)
    except OSError as exc:
        raise CliError(str(exc), EXIT_IO) from None
    print(f"root={','.join(map(str, bm.root))} N={bm.N} nodes={bm.nodes} set_bits={bm.count()} wall={wall:.2f}s")
    return EXIT_OK


def _reports(args, with_sporadic: bool):
    bm = _bitmap_for(args)
    t = extended_type(bm.root)
    obs = obstructions_for(t)
    mr = missing_curvatures(bm, t)
    sr = sporadic_set(mr, obs) if with_sporadic else None
    return mr, sr, obs


def cmd_missing(args) -> int:
    mr, _, obs = _reports(args, with_sporadic=False)
    _write(render_report(mr, None, obs, args.format), args.out)
    return EXIT_OK


def cmd_sporadic(args) -> int:
    mr, sr, obs = _reports(args, with_sporadic=True)
    _write(render_report(mr, sr, obs, args.format), args.out)
    return EXIT_OK


def run_checks(bm: CurvatureBitmap, samples: int = 2000) -> list[tuple[str, str | None]]:
    """Run every verification on a bitmap; each entry is (check name, counterexample or None)."""
    t = extended_type(bm.root)
    obs = obstructions_for(t)
    adm = admissible_residues(t.size, t.k)
    results = []

    for fam in obs.families:
        hit = next((m for m in obstruction_members(fam, bm.N, adm) if m in bm), None)
        results.append((f"no curvature in {fam}", None if hit is None else f"curvature {hit} occurs"))

    values = bm.values()
    bad = values[~np.isin(values % 24, sorted(adm))]
    results.append(("admissible residues mod 24",
                    None if bad.size == 0 else f"curvature {int(bad[0])} is {int(bad[0]) % 24} mod 24"))

    offender = None
    for q in sample_quadruples(bm.root, bm.N, samples):
        for i in range(4):
            for j in range(i + 1, 4):
                if (q[i] + q[j]) % 8 in (3, 6, 7):
                    offender = offender or f"tangent pair ({q[i]}, {q[j]}) in {q}"
    results.append(("tangent sums avoid 3, 6, 7 mod 8", offender))

    verdict = cooccurrence_check(bm)
    results.append(("24m^2 and 8n^2 never coexist",
                    None if verdict.passed else
                    f"24*{verdict.square24[0]}^2 and 8*{verdict.square8[0]}^2 both occur"))
    return results


def cmd_verify(args) -> int:
    bm = _bitmap_for(args)
    results = run_checks(bm)
    print(f"verify root={','.join(map(str, bm.root))} N={bm.N} type={extended_type(bm.root)}")
    failed = False
    for name, problem in results:
        print(f"{'PASS' if problem is None else 'FAIL'}  {name}" + ("" if problem is None else f": {problem}"))
        failed |= problem is not None
    print("FAIL" if failed else "PASS")
    return EXIT_VERIFY if failed else EXIT_OK


def load_values(path, kind: str) -> list[int]:
    """Values from a JSON/CSV report (all classes merged), or a plain list of integers."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliError(str(exc), EXIT_IO) from None
    try:
        stripped = text.lstrip()
        if stripped.startswith("{"):
            doc = json.loads(text)
            classes = doc[kind]
            return sorted(m for vals in classes.values() for m in vals)
        if stripped.startswith("["):
            return [int(x) for x in json.loads(text)]
        if stripped.startswith("#"):
            sections = read_csv_sections(text).get(kind, {})
            return sorted(m for vals in sections.values() for m in vals)
        return [int(x) for x in text.split()]
    except (ValueError, KeyError, TypeError, AttributeError) as exc:
        raise CliError(f"{path}: malformed report ({exc})", EXIT_IO) from None


def cmd_diffplot(args) -> int:
    values = load_values(args.report, args.kind)
    try:
        diffs = successive_differences(values)
    except ValueError as exc:
        raise CliError(f"{args.report}: {exc}", EXIT_IO) from None
    lines = ["index,difference"] + [f"{i},{d}" for i, d in enumerate(diffs, start=1)]
    _write("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="apollo", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"apollo {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, bound=True, bitmap=True, fmt=True, threads=True):
        p.add_argument("--quad", type=parse_quad, help="Descartes quadruple a,b,c,d")
        if bound:
            p.add_argument("--bound", type=parse_bound, help="curvature bound N, e.g. 1e6")
        p.add_argument("--out", help="output path (stdout when omitted)")
        if fmt:
            p.add_argument("--format", choices=("json", "csv"), default="json")
        if threads:
            p.add_argument("--threads", type=int, default=1, help="enumeration workers (default 1)")
        if bitmap:
            p.add_argument("--bitmap", help="APBM bitmap file from `apollo enumerate`")

    p = sub.add_parser("classify", help="extended type and predicted obstructions")
    common(p, bound=False, bitmap=False, fmt=False, threads=False)
    p.set_defaults(func=cmd_classify, needs_quad=True)

    p = sub.add_parser("enumerate", help="write the curvature bitmap up to N")
    common(p, bitmap=False, fmt=False)
    p.set_defaults(func=cmd_enumerate, needs_quad=True, needs_bound=True)

    p = sub.add_parser("missing", help="missing curvatures per admissible class")
    common(p)
    p.set_defaults(func=cmd_missing)

    p = sub.add_parser("sporadic", help="missing and sporadic curvatures")
    common(p)
    p.set_defaults(func=cmd_sporadic)

    p = sub.add_parser("verify", help="check predicted obstructions against an enumeration")
    common(p, fmt=False)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("diffplot", help="successive differences of a report's values as CSV")
    p.add_argument("report", help="JSON/CSV report from `missing`/`sporadic`, or a list of integers")
    p.add_argument("--out", help="output CSV path (stdout when omitted)")
    p.add_argument("--kind", choices=("missing", "sporadic"), default="missing",
                   help="which value list of a report to difference (default missing)")
    p.set_defaults(func=cmd_diffplot)
    return parser


def _glue_quad(argv: list[str]) -> list[str]:
    # "--quad -1,2,2,3" would otherwise read the value as an option
    out = []
    it = iter(argv)
    for tok in it:
        if tok == "--quad":
            nxt = next(it, None)
            out.append(tok if nxt is None else f"--quad={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(_glue_quad(sys.argv[1:] if argv is None else list(argv)))
        if getattr(args, "needs_quad", False) and args.quad is None:
            parser.error(f"{args.command} needs --quad")
        if getattr(args, "needs_bound", False) and args.bound is None:
            parser.error(f"{args.command} needs --bound")
        if getattr(args, "threads", 1) < 1:
            parser.error("--threads must be >= 1")
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except CliError as exc:
        print(f"apollo: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
