"""Command-line front end.

Subcommands: smooth, cup, massey, search, experiment, verify-paper.
Output is machine readable: JSON documents carry a manifest (command,
input digest, version, seed, timestamp) so identical runs are byte
identical; experiment emits CSV rows with exact rational ratios.

Exit codes: 0 success, 2 invalid input, 3 singular curve, 4 undefined
triple product, 5 attempt budget exhausted.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
import time
from fractions import Fraction

from . import __version__
from .curve import CurveContext, SingularCurveError, build_context, quotient_dimensions
from .linalg import monomial_basis
from .massey import (
    DecompWitness,
    UndefinedMasseyProductError,
    big_ideal_det,
    decompose_cup,
    massey_triple,
    massey_triple_with_witnesses,
)
from .poly import HomogeneousPoly, ParseError, format_poly, parse_poly
from .search import (
    BudgetExhaustedError,
    SearchConfig,
    find_triple,
    m_counts,
    vanishing_ratio_experiment,
)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_SINGULAR = 3
EXIT_UNDEFINED = 4
EXIT_BUDGET = 5


class CliError(Exception):
    """Invalid input surfaced to the user; carries the exit code."""

    def __init__(self, message: str, code: int = EXIT_INVALID):
        super().__init__(message)
        self.code = code


def _read_poly_arg(value: str, what: str) -> str:
    """A polynomial argument is inline text unless it names a file, in
    which case the first non-comment line of the file is used."""
    if os.path.isfile(value):
        lines = _poly_lines(value)
        if not lines:
            raise CliError(f"{what}: file {value!r} contains no polynomial")
        if len(lines) > 1:
            raise CliError(f"{what}: file {value!r} holds {len(lines)} polynomials, expected one")
        return lines[0]
    return value


def _poly_lines(path: str) -> list[str]:
    try:
        with open(path, encoding="utf-8") as handle:
            raw = handle.read()
    except OSError as exc:
        raise CliError(f"cannot read {path!r}: {exc}") from exc
    lines = []
    for line in raw.splitlines():
        stripped = line.split("#", 1)[0].strip()
        if stripped:
            lines.append(stripped)
    return lines


def _parse(text: str, what: str, expected_degree: int | None = None) -> HomogeneousPoly:
    try:
        return parse_poly(text, expected_degree=expected_degree)
    except ParseError as exc:
        raise CliError(f"{what}: {exc}") from exc
    except ValueError as exc:
        raise CliError(f"{what}: {exc}") from exc


def _load_context(curve_arg: str) -> tuple[CurveContext, str]:
    text = _read_poly_arg(curve_arg, "curve")
    G = _parse(text, "curve")
    try:
        ctx = build_context(G)
    except SingularCurveError as exc:
        raise CliError(str(exc), code=EXIT_SINGULAR) from exc
    except ValueError as exc:
        raise CliError(f"curve: {exc}") from exc
    return ctx, format_poly(G)


def _timestamp() -> str:
    pinned = os.environ.get("SOURCE_DATE_EPOCH")
    moment = int(pinned) if pinned else int(time.time())
    return time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime(moment))


def _manifest(command: str, canonical_input: str, seed: int | None = None) -> dict:
    digest = hashlib.sha256(canonical_input.encode("utf-8")).hexdigest()
    return {
        "command": command,
        "input_digest": digest,
        "version": __version__,
        "seed": seed,
        "timestamp": _timestamp(),
    }


def _curve_info(ctx: CurveContext) -> dict:
    return {"degree": ctx.n, "genus": ctx.genus, "smooth": True}


def _emit_json(document: dict, out) -> None:
    json.dump(document, out, indent=2, sort_keys=True)
    out.write("\n")


def _frac(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


# ---------------------------------------------------------------------------
# smooth


def cmd_smooth(args, out) -> int:
    text = _read_poly_arg(args.curve, "curve")
    G = _parse(text, "curve")
    if G.degree < 3 or not G.terms:
        raise CliError("curve: degree must be at least 3 and the polynomial nonzero")
    n = G.degree
    degrees = list(range(0, 3 * n - 4))
    dims = quotient_dimensions(G, degrees)
    smooth = dims[3 * n - 5] == 0
    genus = (n - 1) * (n - 2) // 2
    manifest = _manifest("smooth", format_poly(G))
    if args.json:
        document = {
            "schema": 1,
            "manifest": manifest,
            "curve": {"degree": n, "genus": genus, "smooth": smooth},
            "result": {
                "smooth": smooth,
                "hilbert": {str(d): dims[d] for d in degrees},
            },
        }
        _emit_json(document, out)
    else:
        verdict = "smooth" if smooth else "singular"
        out.write(f"curve: {format_poly(G)}\n")
        out.write(f"degree {n}, {verdict}, genus {genus}\n")
        row = " ".join(str(dims[d]) for d in degrees)
        out.write(f"quotient dimensions 0..{3 * n - 5}: {row}\n")
    return EXIT_OK if smooth else EXIT_SINGULAR


# ---------------------------------------------------------------------------
# cup


def cmd_cup(args, out) -> int:
    ctx, curve_text = _load_context(args.curve)
    Ua = _parse(_read_poly_arg(args.u0, "u0"), "u0")
    Ub = _parse(_read_poly_arg(args.u1, "u1"), "u1")
    if Ua.degree + Ub.degree != ctx.top_degree:
        raise CliError(
            "cup: factor degrees must sum to "
            f"{ctx.top_degree}, got {Ua.degree}+{Ub.degree}"
        )
    witness = decompose_cup(ctx, Ua, Ub)
    manifest = _manifest("cup", "\n".join([curve_text, format_poly(Ua), format_poly(Ub)]))
    if witness is not None:
        result = {
            "vanishing": True,
            "witness": witness.to_dict(),
        }
        human = "vanishing\nwitness: " + ", ".join(format_poly(p) for p in witness)
    else:
        pairing = ctx.cup_pairing(Ua, Ub)
        result = {"vanishing": False, "pairing": _frac(pairing)}
        human = f"nonvanishing\npairing: {_frac(pairing)}"
    if args.json:
        document = {
            "schema": 1,
            "manifest": manifest,
            "curve": _curve_info(ctx),
            "result": result,
        }
        _emit_json(document, out)
    else:
        out.write(human + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# massey


def _load_witness_file(path: str, ctx: CurveContext) -> tuple[DecompWitness, DecompWitness]:
    lines = _poly_lines(path)
    if len(lines) != 6:
        raise CliError(
            f"witness file {path!r} must hold six polynomials "
            "(first decomposition then second), got "
            f"{len(lines)}"
        )
    polys = [_parse(line, f"witness line {i + 1}") for i, line in enumerate(lines)]
    return DecompWitness(tuple(polys[:3])), DecompWitness(tuple(polys[3:]))


def cmd_massey(args, out) -> int:
    ctx, curve_text = _load_context(args.curve)
    U0 = _parse(_read_poly_arg(args.u0, "u0"), "u0")
    U1 = _parse(_read_poly_arg(args.u1, "u1"), "u1")
    U2 = _parse(_read_poly_arg(args.u2, "u2"), "u2")
    canonical = "\n".join(
        [curve_text, format_poly(U0), format_poly(U1), format_poly(U2)]
    )
    try:
        if args.witness_file:
            w01, w12 = _load_witness_file(args.witness_file, ctx)
            result = massey_triple_with_witnesses(ctx, U0, U1, U2, w01, w12)
        else:
            result = massey_triple(ctx, U0, U1, U2)
    except UndefinedMasseyProductError as exc:
        document = {
            "schema": 1,
            "manifest": _manifest("massey", canonical),
            "curve": _curve_info(ctx),
            "result": {"defined": False, "obstruction": exc.to_dict()},
        }
        _emit_json(document, out)
        return EXIT_UNDEFINED
    except ValueError as exc:
        raise CliError(f"massey: {exc}") from exc
    document = {
        "schema": 1,
        "manifest": _manifest("massey", canonical),
        "curve": _curve_info(ctx),
        "result": {"defined": True, **result.to_dict()},
    }
    _emit_json(document, out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# search


def cmd_search(args, out) -> int:
    ctx, curve_text = _load_context(args.curve)
    config = SearchConfig(
        n=ctx.n,
        max_terms_u0=args.max_terms,
        max_terms_u1=args.max_terms,
        max_terms_u2=args.max_terms,
        seed=args.seed,
        attempt_budget=args.budget,
    )
    try:
        config.validate()
    except ValueError as exc:
        raise CliError(f"search: {exc}") from exc
    try:
        U0, U1, U2, attempt = find_triple(ctx, config)
    except BudgetExhaustedError as exc:
        raise CliError(str(exc), code=EXIT_BUDGET) from exc
    result = massey_triple(ctx, U0, U1, U2)
    document = {
        "schema": 1,
        "manifest": _manifest("search", curve_text, seed=args.seed),
        "curve": _curve_info(ctx),
        "result": {
            "u0": format_poly(U0),
            "u1": format_poly(U1),
            "u2": format_poly(U2),
            "attempts": attempt,
            "massey": result.to_dict(),
        },
    }
    _emit_json(document, out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# experiment


def _parse_n_range(text: str) -> list[int]:
    values: list[int] = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if ".." in chunk:
            lo_text, hi_text = chunk.split("..", 1)
            try:
                lo, hi = int(lo_text), int(hi_text)
            except ValueError as exc:
                raise CliError(f"bad n range {chunk!r}") from exc
            if lo > hi:
                raise CliError(f"empty n range {chunk!r}")
            values.extend(range(lo, hi + 1))
        else:
            try:
                values.append(int(chunk))
            except ValueError as exc:
                raise CliError(f"bad n value {chunk!r}") from exc
    for n in values:
        if n < 3:
            raise CliError(f"curve degree must be at least 3, got {n}")
    return values


def _parse_ell_list(text: str | None) -> list[object]:
    # None in the returned list means "default caps" (no ell); the token
    # inf forces single-monomial caps regardless of n.
    if text is None:
        return [None]
    values: list[object] = []
    for chunk in text.split(","):
        chunk = chunk.strip().lower()
        if chunk == "inf":
            values.append("inf")
            continue
        try:
            ell = int(chunk)
        except ValueError as exc:
            raise CliError(f"bad ell value {chunk!r}") from exc
        if ell < 1:
            raise CliError(f"ell must be positive, got {ell}")
        values.append(ell)
    return values


CSV_COLUMNS = [
    "n",
    "ell",
    "samples",
    "vanish_count",
    "ratio_num",
    "ratio_den",
    "seed",
    "elapsed_ms",
]


def _fermat_context(n: int) -> CurveContext:
    terms = {
        (n, 0, 0): Fraction(1),
        (0, n, 0): Fraction(1),
        (0, 0, n): Fraction(1),
    }
    return build_context(HomogeneousPoly(n, terms))


def cmd_experiment(args, out) -> int:
    ns = _parse_n_range(args.n_range)
    ells = _parse_ell_list(args.ell)
    if args.samples < 1:
        raise CliError(f"samples must be positive, got {args.samples}")
    reports = []
    for n in ns:
        ctx = _fermat_context(n)
        for ell in ells:
            effective = ell
            if ell == "inf":
                # smallest divisor forcing both caps to one monomial
                effective = max(m_counts(n))
            config = SearchConfig(n=n, ell=effective, samples=args.samples, seed=args.seed)
            config.validate()
            report = vanishing_ratio_experiment(ctx, config, threads=args.threads)
            if not args.timing:
                report = report.without_timing()
            reports.append(report)
    target = out
    if args.out:
        target = io.StringIO()
    if args.json:
        document = {
            "schema": 1,
            "manifest": _manifest(
                "experiment",
                f"n={args.n_range} ell={args.ell} samples={args.samples}",
                seed=args.seed,
            ),
            "curve": None,
            "result": {"rows": [r.to_dict() for r in reports]},
        }
        _emit_json(document, target)
    else:
        writer = csv.writer(target, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for r in reports:
            writer.writerow(
                [
                    r.n,
                    "" if r.ell is None else r.ell,
                    r.samples,
                    r.vanish_count,
                    r.ratio.numerator,
                    r.ratio.denominator,
                    r.seed,
                    r.elapsed_ms,
                ]
            )
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(target.getvalue())
    if args.plot:
        from .plotting import save_ratio_plot

        save_ratio_plot(reports, args.plot)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify-paper

QUINTIC = "x0^5 + x1^5 + x2^5"

FIXTURE_NONZERO = {
    "u0": "-1/6*x0^3*x1^2*x2^2",
    "u1": "x2^2",
    "u2": "2/9*x0^4*x2^3",
    "value": Fraction(1, 8640000),
}

FIXTURE_ZERO = {
    "u0": "x0^3*x1^4 + x1^5*x2^2",
    "u1": "1/4*x2^2",
    "u2": "1/3*x0^4*x1*x2^2",
    "value": Fraction(0),
    "w01": ("0", "1/20*x0^3*x2^2", "1/20*x1^5"),
    "w12": ("0", "0", "1/60*x0^4*x1"),
}

DET_QUINTIC = "8000000*x0^7*x1^7*x2^7"


def cmd_verify_paper(args, out) -> int:
    checks: list[tuple[str, bool, str]] = []

    def record(name: str, passed: bool, detail: str = "") -> None:
        checks.append((name, passed, detail))

    ctx = _fermat_context(5)
    expected_value = FIXTURE_NONZERO["value"]
    if args.corrupt:
        expected_value += 1

    res = massey_triple(
        ctx,
        _parse(FIXTURE_NONZERO["u0"], "fixture"),
        _parse(FIXTURE_NONZERO["u1"], "fixture"),
        _parse(FIXTURE_NONZERO["u2"], "fixture"),
    )
    record(
        "nonzero triple value",
        res.value == expected_value,
        f"got {_frac(res.value)}, want {_frac(expected_value)}",
    )
    record(
        "determinant generator",
        format_poly(big_ideal_det(ctx)) == DET_QUINTIC,
        format_poly(big_ideal_det(ctx)),
    )
    squares = [p * p for p in ctx.partials]
    combo = HomogeneousPoly.zero(6 * ctx.n - 9)
    for v, sq in zip(res.residue_witnesses.witness, squares):
        combo = combo + v * sq
    combo = combo + res.value * big_ideal_det(ctx)
    record(
        "residue identity",
        combo == ctx.n * (res.a - res.b),
        "deg G * (A - B) recombines exactly",
    )

    zres = massey_triple(
        ctx,
        _parse(FIXTURE_ZERO["u0"], "fixture"),
        _parse(FIXTURE_ZERO["u1"], "fixture"),
        _parse(FIXTURE_ZERO["u2"], "fixture"),
    )
    record("zero triple value", zres.value == FIXTURE_ZERO["value"], f"got {_frac(zres.value)}")
    got_w01 = tuple(format_poly(p) for p in zres.witnesses01)
    got_w12 = tuple(format_poly(p) for p in zres.witnesses12)
    record("first decomposition", got_w01 == FIXTURE_ZERO["w01"], ", ".join(got_w01))
    record("second decomposition", got_w12 == FIXTURE_ZERO["w12"], ", ".join(got_w12))
    for label, witness, u_a, u_b in (
        ("first", zres.witnesses01, FIXTURE_ZERO["u0"], FIXTURE_ZERO["u1"]),
        ("second", zres.witnesses12, FIXTURE_ZERO["u1"], FIXTURE_ZERO["u2"]),
    ):
        product = _parse(u_a, "fixture") * _parse(u_b, "fixture")
        record(
            f"{label} witness identity",
            witness.combination(ctx.partials) == product,
            "re-multiplication",
        )

    width = max(len(name) for name, _, _ in checks)
    all_passed = True
    for name, passed, detail in checks:
        verdict = "pass" if passed else "FAIL"
        all_passed &= passed
        out.write(f"{verdict}  {name.ljust(width)}  {detail}\n")
    out.write(("all fixtures pass" if all_passed else "FIXTURE FAILURES") + "\n")
    return EXIT_OK if all_passed else 1


# ---------------------------------------------------------------------------
# wiring


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="masseycurve",
        description="Triple Massey products on smooth plane curves, exactly.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_curve(p):
        p.add_argument("--curve", required=True, help="defining polynomial, inline or a file path")

    p_smooth = sub.add_parser("smooth", help="smoothness, genus and quotient dimensions")
    add_curve(p_smooth)
    p_smooth.add_argument("--json", action="store_true", help="emit a JSON report")

    p_cup = sub.add_parser("cup", help="decide whether a cup product vanishes")
    add_curve(p_cup)
    p_cup.add_argument("--u0", required=True, help="first factor")
    p_cup.add_argument("--u1", required=True, help="second factor")
    p_cup.add_argument("--json", action="store_true", help="emit a JSON report")

    p_massey = sub.add_parser("massey", help="evaluate a triple product")
    add_curve(p_massey)
    p_massey.add_argument("--u0", required=True)
    p_massey.add_argument("--u1", required=True)
    p_massey.add_argument("--u2", required=True)
    p_massey.add_argument(
        "--witness-file",
        help="six polynomials, one per line: both decompositions to evaluate against",
    )

    p_search = sub.add_parser("search", help="find a valid triple by rejection sampling")
    add_curve(p_search)
    p_search.add_argument("--seed", type=int, default=0)
    p_search.add_argument("--max-terms", type=int, default=3)
    p_search.add_argument("--budget", type=int, default=1_000_000)

    p_exp = sub.add_parser(
        "experiment",
        help="vanishing-ratio sweep over Fermat curves x0^n + x1^n + x2^n",
    )
    p_exp.add_argument("--n-range", default="5", help="e.g. 5, 3..6, or 4,6,8")
    p_exp.add_argument(
        "--ell",
        help="comma list of cap divisors; inf forces single-monomial caps; omit for 3-term caps",
    )
    p_exp.add_argument("--samples", type=int, default=1000)
    p_exp.add_argument("--seed", type=int, default=0)
    p_exp.add_argument("--threads", type=int, default=1)
    p_exp.add_argument("--json", action="store_true", help="JSON rows instead of CSV")
    p_exp.add_argument("--out", help="write the report to a file instead of stdout")
    p_exp.add_argument(
        "--timing", action="store_true", help="record wall-clock times (breaks byte determinism)"
    )
    p_exp.add_argument("--plot", help="also render the ratio curves to this image file")

    p_verify = sub.add_parser("verify-paper", help="run the built-in worked examples")
    p_verify.add_argument("--corrupt", action="store_true", help=argparse.SUPPRESS)

    return parser


HANDLERS = {
    "smooth": cmd_smooth,
    "cup": cmd_cup,
    "massey": cmd_massey,
    "search": cmd_search,
    "experiment": cmd_experiment,
    "verify-paper": cmd_verify_paper,
}


def main(argv: list[str] | None = None, out=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    stream = out if out is not None else sys.stdout
    try:
        return HANDLERS[args.command](args, stream)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except BudgetExhaustedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET


def app() -> None:
    sys.exit(main())


if __name__ == "__main__":
    app()
