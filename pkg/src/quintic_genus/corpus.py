"""Run the genus pipeline over tables of quintic fields and summarize the results."""

from __future__ import annotations

import io
import json
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, TextIO

from . import densities
from .errors import (
    CorpusRejected,
    FactorizationTimeout,
    InconsistentResult,
    InvalidInput,
    IrregularSplitting,
    QuinticGenusError,
)
from .genus import CyclicityVerdict, GenusCertificate, genus_number, norm_euclidean_screen
from .localfields.splitting import splitting_fingerprint
from .polycore.arith import default_seed, set_default_seed
from .polycore.intpoly import IntPoly, discriminant, format_poly, parse_poly
from .polycore.irreducible import is_irreducible_over_q
from .polycore.sturm import sturm_real_root_count

FINGERPRINT_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29)

ERROR_MARKERS = (
    (FactorizationTimeout, "factorization-timeout"),
    (IrregularSplitting, "irregular-splitting"),
    (InconsistentResult, "inconsistent-result"),
    (InvalidInput, "invalid-input"),
    (QuinticGenusError, "computation-error"),
)


def error_marker(exc: BaseException) -> str:
    for cls, name in ERROR_MARKERS:
        if isinstance(exc, cls):
            return name
    raise exc


@dataclass(frozen=True)
class FieldRecord:
    poly: IntPoly
    disc: int
    signature_i: int
    source_line: str
    certificate: GenusCertificate | None = None
    error: str | None = None
    error_detail: str | None = None
    flags: tuple[str, ...] = field(default=())

    @property
    def sort_key(self):
        return (abs(self.disc), self.poly.coeffs)

    @property
    def genus(self) -> int | None:
        return self.certificate.genus_number if self.certificate else None

    def to_json(self) -> dict:
        rec: dict = {
            "poly": format_poly(self.poly),
            "coeffs": list(self.poly.coeffs),
            "disc": self.disc,
            "i": self.signature_i,
            "source": self.source_line,
            "flags": list(self.flags),
            "error": self.error,
        }
        if self.error_detail is not None:
            rec["error_detail"] = self.error_detail
        c = self.certificate
        if c is not None:
            v = c.cyclic
            rec.update(
                {
                    "t": c.t,
                    "ramification_product": list(c.ramification_product),
                    "star_at_5": c.star_at_5,
                    "cyclic": v.cyclic,
                    "cyclicity": {
                        "evidence": v.evidence,
                        "witness_prime": v.witness_prime,
                        "witness_shape": list(v.witness_shape) if v.witness_shape else None,
                        "sample_bound": v.sample_bound,
                        "disc_fourth_power": v.disc_fourth_power,
                    },
                    "genus": c.genus_number,
                }
            )
        return rec

    @classmethod
    def from_json(cls, rec: dict) -> "FieldRecord":
        poly = IntPoly(rec["coeffs"])
        cert = None
        if rec.get("genus") is not None:
            cy = rec["cyclicity"]
            verdict = CyclicityVerdict(
                cyclic=rec["cyclic"],
                witness_prime=cy["witness_prime"],
                witness_shape=tuple(cy["witness_shape"]) if cy["witness_shape"] else None,
                sample_bound=cy["sample_bound"],
                disc_fourth_power=cy["disc_fourth_power"],
            )
            cert = GenusCertificate(
                poly=poly,
                disc=rec["disc"],
                signature_i=rec["i"],
                ramification_product=tuple(rec["ramification_product"]),
                star_at_5=rec["star_at_5"],
                cyclic=verdict,
                genus_number=rec["genus"],
            )
            if len(cert.ramification_product) != rec["t"]:
                raise InvalidInput(f"record for {rec['poly']} has inconsistent t")
        return cls(
            poly=poly,
            disc=rec["disc"],
            signature_i=rec["i"],
            source_line=rec["source"],
            certificate=cert,
            error=rec.get("error"),
            error_detail=rec.get("error_detail"),
            flags=tuple(rec.get("flags", ())),
        )


# ---------------------------------------------------------------- ingestion


@dataclass
class IngestResult:
    """Accepted records plus per-line rejections and notes."""

    records: list[FieldRecord]
    rejected: list[tuple[str, str, str]] = field(default_factory=list)  # (where, text, reason)
    notes: list[str] = field(default_factory=list)

    def __iter__(self):
        return iter(self.records)

    def __len__(self):
        return len(self.records)

    def __getitem__(self, k):
        return self.records[k]


def _read_lines(source) -> tuple[str, list[str]]:
    if isinstance(source, (str, os.PathLike)):
        with open(source, encoding="utf-8") as fh:
            return os.fspath(source), fh.read().splitlines()
    if isinstance(source, io.TextIOBase) or hasattr(source, "read"):
        name = getattr(source, "name", "<stream>")
        return str(name), source.read().splitlines()
    # an iterable of lines
    return "<lines>", [str(x).rstrip("\n") for x in source]


def parse_line(text: str) -> IntPoly | None:
    """A polynomial, or None for blank and comment-only lines."""
    body = text.split("#", 1)[0].strip()
    if not body:
        return None
    return parse_poly(body)


def validate(poly: IntPoly) -> list[str]:
    """Raise InvalidInput for unusable polynomials; return warning flags otherwise."""
    if poly.degree != 5 or poly.lc != 1:
        raise InvalidInput("not a monic quintic")
    irr = is_irreducible_over_q(poly)
    if irr.status == "reducible":
        raise InvalidInput(f"reducible ({irr.certificate})")
    if irr.status != "irreducible":
        return ["irreducibility-inconclusive"]
    return []


def ingest(source) -> IngestResult:
    """Parse a corpus of one 'c0,c1,c2,c3,c4,c5' polynomial per line.

    Comments start with '#'.  Identical polynomials are merged with a note;
    distinct polynomials with equal discriminant and equal factorization
    shapes at the first ten primes are flagged 'duplicate-suspect'.
    """
    name, lines = _read_lines(source)
    result = IngestResult(records=[])
    seen: dict[tuple, int] = {}
    content_lines = 0
    for lineno, text in enumerate(lines, 1):
        where = f"{name}:{lineno}"
        try:
            poly = parse_line(text)
        except InvalidInput as exc:
            content_lines += 1
            result.rejected.append((where, text, str(exc)))
            continue
        if poly is None:
            continue
        content_lines += 1
        try:
            flags = validate(poly)
        except InvalidInput as exc:
            result.rejected.append((where, text, str(exc)))
            continue
        if poly.coeffs in seen:
            first = result.records[seen[poly.coeffs]].source_line
            result.notes.append(f"{where}: duplicate of {first}, dropped")
            continue
        disc = discriminant(poly)
        i = (5 - sturm_real_root_count(poly)) // 2
        seen[poly.coeffs] = len(result.records)
        result.records.append(FieldRecord(poly, disc, i, where, flags=tuple(flags)))
    if content_lines and 2 * len(result.rejected) > content_lines:
        raise CorpusRejected(len(result.rejected), content_lines, result.rejected)
    _flag_suspects(result)
    return result


def _flag_suspects(result: IngestResult) -> None:
    groups: dict[tuple, list[int]] = {}
    for k, rec in enumerate(result.records):
        key = (rec.disc, splitting_fingerprint(rec.poly, FINGERPRINT_PRIMES))
        groups.setdefault(key, []).append(k)
    for members in groups.values():
        if len(members) < 2:
            continue
        for k in members:
            rec = result.records[k]
            others = [result.records[j].source_line for j in members if j != k]
            result.records[k] = replace(rec, flags=rec.flags + ("duplicate-suspect",))
            result.notes.append(f"{rec.source_line}: possibly the same field as {', '.join(others)}")


# ---------------------------------------------------------------- pipeline


def _certify(task):
    coeffs, sample_bound, seed = task
    set_default_seed(seed)
    try:
        return genus_number(IntPoly(coeffs), sample_bound=sample_bound, check_irreducible=False), None, None
    except QuinticGenusError as exc:
        return None, error_marker(exc), str(exc)


def run_pipeline(records: Iterable[FieldRecord], workers: int = 1, sample_bound: int | None = None) -> list[FieldRecord]:
    """Attach a genus certificate (or an error marker) to every record.

    Output is sorted by (|disc|, coefficients), independent of ``workers``.
    """
    from .genus import DEFAULT_SAMPLE_BOUND

    records = list(records)
    bound = DEFAULT_SAMPLE_BOUND if sample_bound is None else sample_bound
    seed = default_seed()
    tasks = [(r.poly.coeffs, bound, seed) for r in records]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_certify, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    else:
        results = [_certify(t) for t in tasks]
    out = []
    for rec, (cert, marker, detail) in zip(records, results):
        out.append(replace(rec, certificate=cert, error=marker, error_detail=detail))
    out.sort(key=lambda r: r.sort_key)
    return out


# ---------------------------------------------------------------- persistence


def dumps_records(records: Iterable[FieldRecord]) -> str:
    return "".join(json.dumps(r.to_json(), sort_keys=True) + "\n" for r in records)


def save_records(records: Iterable[FieldRecord], target) -> None:
    text = dumps_records(records)
    if isinstance(target, (str, os.PathLike)):
        with open(target, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        target.write(text)


def load_records(source) -> list[FieldRecord]:
    _, lines = _read_lines(source)
    return [FieldRecord.from_json(json.loads(line)) for line in lines if line.strip()]


def looks_like_records(path) -> bool:
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                return line.lstrip().startswith("{")
    return False


# ---------------------------------------------------------------- statistics


@dataclass(frozen=True)
class SignatureStats:
    signature_i: int
    total: int
    genus_one: int
    histogram: dict[int, int]
    mean: Fraction

    @property
    def genus_one_fraction(self) -> Fraction:
        return Fraction(self.genus_one, self.total)


@dataclass(frozen=True)
class StatsReport:
    rows: tuple[SignatureStats, ...]
    failed: int
    x_cap: int | None
    predicted_density: densities.CertifiedValue
    predicted_average: densities.CertifiedValue

    @property
    def empty(self) -> bool:
        return not self.rows

    def row(self, i: int) -> SignatureStats | None:
        for r in self.rows:
            if r.signature_i == i:
                return r
        return None

    def lines(self) -> list[str]:
        dens = self.predicted_density.rounded(6) or self.predicted_density.midpoint_str(6)
        avg = self.predicted_average.rounded(5) or self.predicted_average.midpoint_str(5)
        head = f"fields with |disc| <= {self.x_cap}" if self.x_cap is not None else "all fields"
        if self.empty:
            return [f"{head}: empty report (no certified fields)", f"failed records: {self.failed}"]
        table = [("i", "N", "N_g=1", "g=1 frac", "pred", "mean g", "pred avg", "histogram")]
        for r in self.rows:
            hist = " ".join(f"{g}:{n}" for g, n in sorted(r.histogram.items()))
            table.append(
                (
                    str(r.signature_i),
                    str(r.total),
                    str(r.genus_one),
                    f"{float(r.genus_one_fraction):.6f}",
                    dens,
                    f"{float(r.mean):.5f}",
                    avg,
                    hist,
                )
            )
        widths = [max(len(row[k]) for row in table) for k in range(len(table[0]))]
        out = [head]
        out += ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in table]
        out.append(f"failed records: {self.failed}")
        return out

    def as_records(self) -> list[dict]:
        pred = {
            "predicted_density": self.predicted_density.as_record(12),
            "predicted_average": self.predicted_average.as_record(12),
        }
        if self.empty:
            return [{"empty": True, "failed": self.failed, "x_cap": self.x_cap, **pred}]
        return [
            {
                "i": r.signature_i,
                "total": r.total,
                "genus_one": r.genus_one,
                "genus_one_fraction": str(r.genus_one_fraction),
                "mean": str(r.mean),
                "histogram": {str(g): n for g, n in sorted(r.histogram.items())},
                "x_cap": self.x_cap,
                **pred,
            }
            for r in self.rows
        ]


def stats(records: Iterable[FieldRecord], x_cap: int | None = None) -> StatsReport:
    """Exact per-signature counts, genus histogram and mean, beside the predicted constants.

    The mean runs over all certified fields, not only those of genus one.
    """
    by_i: dict[int, Counter] = {}
    failed = 0
    for r in records:
        if x_cap is not None and abs(r.disc) > x_cap:
            continue
        if r.certificate is None:
            failed += 1
            continue
        by_i.setdefault(r.signature_i, Counter())[r.certificate.genus_number] += 1
    rows = []
    for i in sorted(by_i):
        hist = dict(sorted(by_i[i].items()))
        total = sum(hist.values())
        mean = Fraction(sum(g * n for g, n in hist.items()), total)
        rows.append(SignatureStats(i, total, hist.get(1, 0), hist, mean))
    return StatsReport(
        rows=tuple(rows),
        failed=failed,
        x_cap=x_cap,
        predicted_density=densities.genus_one_density(10),
        predicted_average=densities.average_genus_constant(10),
    )


def screen(records: Iterable[FieldRecord]) -> list[FieldRecord]:
    """Certified records passing the norm-Euclidean screen; each must have genus number 1."""
    out = []
    for r in records:
        if r.certificate is None:
            continue
        if norm_euclidean_screen(r.poly):
            if r.certificate.genus_number != 1:
                raise InconsistentResult(f"{format_poly(r.poly)} passes the screen but has genus {r.genus}")
            out.append(r)
    return out


def write_corpus(polys: Iterable[IntPoly], target: TextIO) -> None:
    """Write polynomials in the corpus line format."""
    for f in polys:
        target.write(",".join(map(str, f.coeffs)) + "\n")
