"""Command line interface.

Exit codes: 0 success, 1 usage error, 2 computation aborted, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import corpus as corpus_mod
from . import densities
from .errors import (
    CorpusRejected,
    FactorizationTimeout,
    InconsistentResult,
    InvalidInput,
    IrregularSplitting,
    PrecisionTooLow,
    QuinticGenusError,
    SearchExhausted,
    UnsupportedPrime,
)
from .genus import DEFAULT_SAMPLE_BOUND, genus_number
from .localfields.etale import (
    LocalConditionSet,
    admitted_classes,
    etale_quintic_classes,
    local_density_factor,
    mass_subset,
    total_mass,
)
from .localfields.splitting import is_inert, is_totally_ramified, splitting_type
from .localfields.wild import enumerate_wild_quintic_q5
from .polycore.arith import DEFAULT_SEED, is_prime, set_default_seed
from .polycore.intpoly import format_poly, parse_poly

EXIT_OK, EXIT_USAGE, EXIT_ABORT, EXIT_IO = 0, 1, 2, 3
ABORTS = (FactorizationTimeout, IrregularSplitting, InconsistentResult, SearchExhausted, PrecisionTooLow)


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


class Output:
    """Collects lines and writes them once."""

    def __init__(self, fmt: str):
        self.fmt = fmt
        self.lines: list[str] = []

    def text(self, line: str = ""):
        if self.fmt == "text":
            self.lines.append(line)

    def record(self, obj: dict):
        if self.fmt == "records":
            self.lines.append(json.dumps(obj, sort_keys=True))

    def flush(self, stream):
        if self.lines:
            stream.write("\n".join(self.lines) + "\n")
        stream.flush()


def _poly(text: str):
    try:
        return parse_poly(text)
    except InvalidInput as exc:
        raise UsageError(str(exc)) from exc


def _prime(text: str) -> int:
    try:
        p = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from exc
    if not is_prime(p):
        raise argparse.ArgumentTypeError(f"{p} is not prime")
    return p


def _nonneg(text: str) -> int:
    try:
        n = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from exc
    if n < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return n


def _positive(text: str) -> int:
    n = _nonneg(text)
    if n == 0:
        raise argparse.ArgumentTypeError("must be positive")
    return n


# ---------------------------------------------------------------- commands


def cmd_genus(args, out: Output):
    f = _poly(args.poly)
    cert = genus_number(f, sample_bound=args.sample_bound)
    for line in cert.lines():
        out.text(line)
    out.record(cert.as_record())


def cmd_enumerate_q5(args, out: Output):
    classes = enumerate_wild_quintic_q5()
    width = max(len(format_poly(c.representative)) for c in classes)
    out.text(f"{'representative'.ljust(width)}  disc  aut  galois  star")
    for c in classes:
        out.text(
            f"{format_poly(c.representative).ljust(width)}  5^{c.disc_exponent}  {c.aut_count:>3}  "
            f"{str(c.is_galois).lower():>6}  {str(c.satisfies_star).lower():>4}"
        )
        out.record(c.as_record())
    out.text(f"{len(classes)} classes, {sum(c.is_galois for c in classes)} Galois")


def cmd_mass(args, out: Output):
    p = args.p
    cond = LocalConditionSet.from_name(p, args.condition)
    mass = mass_subset(p, cond)
    closed = total_mass(p)
    try:
        pool = etale_quintic_classes(p)
        enumerated = mass_subset(p, LocalConditionSet.everything(p))
        summary = f"{len(pool)} etale classes enumerated, total mass {enumerated}"
        verified = enumerated == closed
    except UnsupportedPrime:
        summary = "full enumeration unsupported at this prime; unramified algebras only"
        verified = None
    admitted = len(admitted_classes(p, cond))
    factor = local_density_factor(p, cond)
    out.text(f"p = {p}, condition: {cond.name}")
    out.text(f"mass           {mass}")
    out.text(f"m(p)           {closed}")
    out.text(f"density factor {factor}")
    out.text(f"admitted       {admitted} classes")
    out.text(f"check          {summary}" + ("" if verified is None else f" ({'matches' if verified else 'DIFFERS FROM'} closed form)"))
    out.record(
        {
            "p": p,
            "condition": cond.name,
            "mass": str(mass),
            "m": str(closed),
            "density_factor": str(factor),
            "admitted": admitted,
            "verified": verified,
        }
    )
    if verified is False:
        raise InconsistentResult("enumerated mass differs from the closed form")


def cmd_split(args, out: Output):
    f = _poly(args.poly)
    p = args.p
    st = splitting_type(f, p)
    tr = is_totally_ramified(f, p)
    inert = is_inert(f, p)
    out.text(f"p = {p}: {st}  totally ramified: {str(tr).lower()}  inert: {str(inert).lower()}")
    out.record({"poly": format_poly(f), "p": p, "splitting_type": [list(x) for x in st.parts], "totally_ramified": tr, "inert": inert})


def _leading_zeros(v: densities.CertifiedValue) -> int:
    """Zeros between the decimal point and the first significant digit of v.high."""
    k, x = 0, v.high
    while 0 < x < Fraction(1, 10) and k < 60:
        x *= 10
        k += 1
    return k


def _emit_value(out: Output, v: densities.CertifiedValue, digits: int, extra: dict | None = None):
    # tail brackets are relative, so small constants keep ``digits`` significant figures
    places = digits + _leading_zeros(v)
    lo, hi = v.bounds_str(places + 2)
    shown = v.rounded(places) or v.midpoint_str(places)
    out.text(f"{v.label}")
    out.text(f"value     {shown}")
    out.text(f"interval  [{lo}, {hi}]")
    out.text(f"cutoff    {v.cutoff}")
    for k, val in (extra or {}).items():
        out.text(f"{k.ljust(9)} {val}")
    rec = v.as_record(places + 2)
    rec["value"] = shown
    rec.update(extra or {})
    out.record(rec)


def cmd_density(args, out: Output):
    kind = args.kind
    digits = args.digits
    if kind == "genus-one":
        v = densities.genus_one_density(digits, args.cutoff)
    elif kind == "average":
        v = densities.average_genus_constant(digits, args.cutoff)
    elif kind == "lower-bound":
        v = densities.lower_bound_5k(args.k, digits, args.cutoff)
    elif kind == "screen":
        v = densities.screen_density(digits, args.cutoff)
        factors = densities.screen_local_factors()
        _emit_value(out, v, digits, {f"C_{p}": str(c) for p, c in factors.items()})
        return
    elif kind == "bhargava":
        v = densities.bhargava_constant(args.i, digits, args.cutoff)
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(kind)
    _emit_value(out, v, digits)


def cmd_sieve(args, out: Output):
    sp = densities.sieve_prediction(args.Y)
    places = args.digits
    v = densities.CertifiedValue(
        sp.value.numerator, sp.value.denominator, Fraction(1), Fraction(1), args.Y, "truncated sieve"
    )
    low = densities.CertifiedValue(sp.low.numerator, sp.low.denominator, Fraction(1), Fraction(1), args.Y)
    high = densities.CertifiedValue(sp.high.numerator, sp.high.denominator, Fraction(1), Fraction(1), args.Y)
    value = v.midpoint_str(places)
    lo = low.bounds_str(places + 2)[0]
    hi = high.bounds_str(places + 2)[1]
    out.text(f"truncated sieve, Y = {args.Y}")
    out.text(f"value     {value}")
    out.text(f"majorant  {float(sp.majorant):.3e}")
    out.text(f"interval  [{lo}, {hi}]")
    out.record({"Y": args.Y, "value": value, "exact": str(sp.value), "majorant": str(sp.majorant), "low": lo, "high": hi})


def _load_certified(args):
    path = args.input
    if corpus_mod.looks_like_records(path):
        return corpus_mod.load_records(path), []
    ing = corpus_mod.ingest(path)
    return corpus_mod.run_pipeline(ing, workers=args.workers, sample_bound=args.sample_bound), ing


def cmd_corpus_run(args, out: Output):
    ing = corpus_mod.ingest(args.input)
    records = corpus_mod.run_pipeline(ing, workers=args.workers, sample_bound=args.sample_bound)
    if args.output:
        corpus_mod.save_records(records, args.output)
    for where, text, reason in ing.rejected:
        out.text(f"rejected {where}: {text.strip()} ({reason})")
    for note in ing.notes:
        out.text(f"note {note}")
    for r in records:
        g = r.genus if r.certificate else r.error
        out.text(f"{format_poly(r.poly)}  disc={r.disc}  i={r.signature_i}  g={g}")
        out.record(r.to_json())
    failed = sum(r.certificate is None for r in records)
    out.text(f"{len(records)} fields, {failed} aborted" + (f", written to {args.output}" if args.output else ""))


def cmd_corpus_stats(args, out: Output):
    records, _ = _load_certified(args)
    rep = corpus_mod.stats(records, args.x_cap)
    for line in rep.lines():
        out.text(line)
    for rec in rep.as_records():
        out.record(rec)


def cmd_corpus_screen(args, out: Output):
    records, _ = _load_certified(args)
    passed = corpus_mod.screen(records)
    for r in passed:
        out.text(f"{format_poly(r.poly)}  disc={r.disc}  g={r.genus}")
        out.record(r.to_json())
    out.text(f"{len(passed)} of {len(records)} fields pass the screen")


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = Parser(add_help=False)
    common.add_argument("--format", choices=("text", "records"), default="text", help="aligned text or JSON lines")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"seed for randomized internals (default {DEFAULT_SEED})")

    parser = Parser(prog="quintic-genus", description="Genus numbers of quintic fields and related constants.", parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=Parser)

    g = sub.add_parser("genus", parents=[common], help="genus certificate of one field")
    g.add_argument("--poly", required=True, help='"x^5 - x - 1" or "c0,c1,c2,c3,c4,c5"')
    g.add_argument("--sample-bound", type=_positive, default=DEFAULT_SAMPLE_BOUND, help="primes sampled for cyclicity")
    g.set_defaults(func=cmd_genus)

    loc = sub.add_parser("local", parents=[common], help="p-adic computations")
    lsub = loc.add_subparsers(dest="local_command", required=True, parser_class=Parser)
    e = lsub.add_parser("enumerate-q5", parents=[common], help="the totally ramified quintic extensions of Q_5")
    e.set_defaults(func=cmd_enumerate_q5)
    ms = lsub.add_parser("mass", parents=[common], help="mass of a set of quintic etale algebras")
    ms.add_argument("-p", type=_prime, required=True, help="the prime")
    ms.add_argument(
        "--condition",
        default="all",
        help="all, tr, tr-galois, tr-nongalois, not-tr, inert, or a splitting type like '(1,2),(1,3)'",
    )
    ms.set_defaults(func=cmd_mass)
    sp = lsub.add_parser("split", parents=[common], help="splitting type of p in Q[x]/(f)")
    sp.add_argument("--poly", required=True, help="monic quintic")
    sp.add_argument("-p", type=_prime, required=True, help="the prime")
    sp.set_defaults(func=cmd_split)

    den = sub.add_parser("density", parents=[common], help="certified density constants")
    dsub = den.add_subparsers(dest="kind", required=True, parser_class=Parser)
    for name, helptext in (
        ("genus-one", "proportion of genus number one"),
        ("average", "average genus number"),
        ("lower-bound", "constant for exactly the first k primes 1 mod 5 ramified"),
        ("screen", "density of the norm-Euclidean screen"),
        ("bhargava", "Bhargava's constant for signature i"),
    ):
        d = dsub.add_parser(name, parents=[common], help=helptext)
        d.add_argument("--digits", type=_nonneg, default=10, help="requested decimal digits")
        d.add_argument("--cutoff", type=_positive, default=None, help="prime cutoff (overrides --digits)")
        if name == "lower-bound":
            d.add_argument("--k", type=_nonneg, required=True, help="number of primes, at most 20")
        if name == "bhargava":
            d.add_argument("--i", type=int, choices=(0, 1, 2), required=True, help="number of complex places")
        d.set_defaults(func=cmd_density)
    sv = dsub.add_parser("sieve", parents=[common], help="truncated inclusion-exclusion sum")
    sv.add_argument("--Y", type=_positive, required=True, help="truncation, at most 10^6")
    sv.add_argument("--digits", type=_nonneg, default=12, help="decimal places printed")
    sv.set_defaults(func=cmd_sieve)

    cor = sub.add_parser("corpus", parents=[common], help="field tables")
    csub = cor.add_subparsers(dest="corpus_command", required=True, parser_class=Parser)
    for name, func, helptext in (
        ("run", cmd_corpus_run, "certify every field of a corpus file"),
        ("stats", cmd_corpus_stats, "counts and means against the predictions"),
        ("screen", cmd_corpus_screen, "fields passing the norm-Euclidean screen"),
    ):
        c = csub.add_parser(name, parents=[common], help=helptext)
        c.add_argument("--input", required=True, help="corpus file, or JSON-lines results for stats/screen")
        c.add_argument("--workers", type=_positive, default=1, help="worker processes")
        c.add_argument("--sample-bound", type=_positive, default=DEFAULT_SAMPLE_BOUND, help="primes sampled for cyclicity")
        if name == "run":
            c.add_argument("--output", help="write JSON-lines results here")
        if name == "stats":
            c.add_argument("--x-cap", type=_positive, default=None, help="only fields with |disc| <= X")
        c.set_defaults(func=func)
    return parser


def dispatch(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    set_default_seed(args.seed)
    out = Output(args.format)
    try:
        args.func(args, out)
    except UsageError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        stderr.write(f"I/O error: {exc}\n")
        return EXIT_IO
    except CorpusRejected as exc:
        stderr.write(f"corpus rejected: {exc}\n")
        for where, text, reason in exc.problems[:20]:
            stderr.write(f"  {where}: {text.strip()} ({reason})\n")
        return EXIT_IO
    except ABORTS as exc:
        out.flush(stdout)
        stderr.write(f"aborted: {exc}\n")
        return EXIT_ABORT
    except (InvalidInput, UnsupportedPrime) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except QuinticGenusError as exc:
        stderr.write(f"aborted: {exc}\n")
        return EXIT_ABORT
    out.flush(stdout)
    return EXIT_OK


def main(argv=None) -> None:
    raise SystemExit(dispatch(argv))
