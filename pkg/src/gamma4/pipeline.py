"""End-to-end classification: dataset + certificate ledger -> report.

Per knot with a diagram: Goeritz data, homology of the double branched
cover, linking form, and the applicable obstruction verdicts.  Cross-checks
run along the way: |det G| must equal the ingested determinant and the
Gordon-Litherland signature must equal the ingested signature whenever both
sides exist.  A failed cross-check is an inconsistency (bad data or a
miscalibrated convention), not a warning.

Certificates are folded in by a fixed-point pass: a certificate whose
target lives in the dataset uses the target's classified upper bound from
the current sweep, so chains (a band move onto a knot that itself needs a
band move) resolve in a couple of iterations.

The report is fully deterministic: entries are sorted by knot name, all
values are exact (fractions rendered as strings), and the metadata block
records the convention calibration and input digests, so re-running on the
same inputs reproduces the same bytes.
"""

import hashlib
import json
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import exactalg, planar
from .bounds import classify
from .errors import InconsistencyError
from .knotio import load_certificates, load_dataset
from .linkform import (INAPPLICABLE, definiteness_consistency, homology,
                       klein_discriminant, linking_form,
                       mobius_obstruction_cyclic, mobius_obstruction_p2q)

SIGN_AUTO = "auto"
SIGN_PLUS = "fixed+"
SIGN_MINUS = "fixed-"


def natural_key(name):
    """Sort key splitting digit runs: 11n2 < 11n10 < 11n100."""
    return tuple(int(tok) if tok.isdigit() else tok
                 for tok in re.split(r"(\d+)", name))


def _factorization(n):
    out = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass
class DiagramAnalysis:
    """Everything computed from one knot's diagram."""

    goeritz: object
    group: object
    form: object            # sign-fixed linking form
    verdicts: list
    det: int
    signature: int

    @property
    def fraction(self):
        if self.group.is_cyclic and not self.group.is_trivial:
            return self.form.self_value()
        return None


def analyze_diagram(rec, sign, enable_klein=False):
    """Goeritz -> homology -> linking form -> verdicts for one record."""
    gd = planar.goeritz(rec.pd)
    det_g = exactalg.det(gd.g)
    sig = planar.signature_via_goeritz(gd)
    if rec.determinant is not None and abs(det_g) != rec.determinant:
        raise InconsistencyError(
            f"{rec.name}: |det G| = {abs(det_g)} but the table says "
            f"{rec.determinant}")
    if rec.signature is not None and sig != rec.signature:
        raise InconsistencyError(
            f"{rec.name}: Goeritz signature {sig} disagrees with the ingested "
            f"signature {rec.signature}; convention or data error")
    group = homology(gd)
    raw_form = linking_form(gd)
    form = raw_form.fix_sign(sign)
    verdicts = [mobius_obstruction_cyclic(form)]
    if group.is_cyclic and not group.is_trivial:
        fac = _factorization(group.order)
        squares = [p for p, e in fac.items() if e == 2]
        if len(squares) == 1 and all(e == 1 for p, e in fac.items()
                                     if p != squares[0]):
            p = squares[0]
            verdicts.append(mobius_obstruction_p2q(form, p, group.order // (p * p)))
    if rec.definiteness is not None:
        verdicts.append(definiteness_consistency(form, rec.definiteness))
    if enable_klein:
        factors = group.invariant_factors
        if len(factors) == 2 and factors[0] == factors[1]:
            verdicts.append(klein_discriminant(form, factors[0]))
    return DiagramAnalysis(goeritz=gd, group=group, form=form,
                           verdicts=verdicts, det=abs(det_g), signature=sig)


def resolve_sign_convention(records, requested):
    """Pick the global sign of the linking form (lambda = s * G^{-1}).

    ``fixed+``/``fixed-`` force it.  ``auto`` keeps +1 unless every knot
    carrying a definiteness column resolves inconsistently under +1 while
    all resolving consistently under -1, in which case the convention is
    flipped (a uniform flip is a convention artifact; a mixed pattern is
    genuine data and is left alone).
    """
    if requested == SIGN_PLUS:
        return 1, "forced +G^-1"
    if requested == SIGN_MINUS:
        return -1, "forced -G^-1"
    votes = []
    for rec in records:
        if rec.pd is None or rec.definiteness is None:
            continue
        for sign in (1, -1):
            analysis = analyze_diagram(rec, sign)
            verdict = next((v for v in analysis.verdicts
                            if v.rule == "definiteness"), None)
            if verdict is not None and verdict.result != INAPPLICABLE:
                votes.append((rec.name, sign, verdict.obstructed))
    under_plus = [obstructed for _n, s, obstructed in votes if s == 1]
    under_minus = [obstructed for _n, s, obstructed in votes if s == -1]
    if under_plus and all(under_plus) and not all(under_minus):
        return -1, "auto: flipped, every definiteness row contradicted +G^-1"
    return 1, "auto: +G^-1 consistent with the definiteness column"


@dataclass
class ReportEntry:
    name: str
    record: object
    analysis: object
    bounds: object


def run_classification(dataset_path, certificates_path, enable_klein=False,
                       sign_convention=SIGN_AUTO):
    """Classify every knot in the dataset; returns (entries, metadata).

    Raises InconsistencyError when any cross-check or bound contradiction
    fires; the CLI maps that onto exit code 4.
    """
    records = load_dataset(dataset_path)
    certs = load_certificates(certificates_path)
    by_name = {}
    for rec in records:
        if rec.name in by_name:
            raise InconsistencyError(f"duplicate knot name {rec.name}")
        by_name[rec.name] = rec

    sign, sign_note = resolve_sign_convention(records, sign_convention)

    analyses = {}
    for rec in records:
        if rec.pd is not None:
            analyses[rec.name] = analyze_diagram(rec, sign, enable_klein)

    certs_by_source = {}
    for cert in certs:
        certs_by_source.setdefault(cert.source, []).append(cert)

    # Fixed-point sweep: uppers only ever decrease, so this terminates.
    bounds = {}
    for _ in range(len(records) + 1):
        changed = False
        for rec in records:
            def resolve(cert):
                target = by_name.get(cert.target)
                if target is None:
                    return 1 if cert.target_gamma4 == 1 else None
                prior = bounds.get(cert.target)
                if prior is not None and prior.upper is not None:
                    return prior.upper
                return None
            verdicts = analyses[rec.name].verdicts if rec.name in analyses else []
            new = classify(rec, verdicts, certs_by_source.get(rec.name, ()),
                           resolve)
            old = bounds.get(rec.name)
            if old is None or (new.lower, new.upper) != (old.lower, old.upper):
                changed = True
            bounds[rec.name] = new
        if not changed:
            break

    # Certificates claiming gamma4 = 1 for an in-dataset target must agree
    # with what the run itself determined for that target.
    for cert in certs:
        target = by_name.get(cert.target)
        if target is not None and cert.target_gamma4 == 1:
            got = bounds[cert.target]
            if got.determined and got.lower != 1:
                raise InconsistencyError(
                    f"certificate {cert.source} -> {cert.target} claims the "
                    f"target has gamma4 = 1 but the run determined "
                    f"{got.lower}")

    entries = [ReportEntry(name=rec.name, record=rec,
                           analysis=analyses.get(rec.name),
                           bounds=bounds[rec.name])
               for rec in sorted(records, key=lambda r: natural_key(r.name))]
    metadata = {
        "calibration": planar.calibration(),
        "linking_sign": {"value": sign, "note": sign_note,
                         "requested": sign_convention},
        "dataset_sha256": _digest(dataset_path),
        "certificates_sha256": _digest(certificates_path),
        "dataset_path": str(dataset_path),
        "certificates_path": str(certificates_path),
        "knots": len(records),
        "certificates": len(certs),
        "klein_enabled": enable_klein,
    }
    return entries, metadata


def _digest(path):
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def summarize(entries):
    """Counts by outcome, plus the slice sanity tally."""
    determined = {}
    undetermined = 0
    for e in entries:
        if e.bounds.determined:
            determined[e.bounds.lower] = determined.get(e.bounds.lower, 0) + 1
        else:
            undetermined += 1
    slice_ok = all(e.bounds.determined and e.bounds.lower == 1
                   for e in entries if e.record.slice)
    return {
        "total": len(entries),
        "determined": {str(k): v for k, v in sorted(determined.items())},
        "undetermined": undetermined,
        "slice_knots": sum(1 for e in entries if e.record.slice),
        "slice_all_at_1": slice_ok,
    }


def _fraction_str(x):
    if x is None:
        return None
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def entry_dict(e):
    """JSON-ready view of one report entry."""
    rec, analysis, b = e.record, e.analysis, e.bounds
    out = {
        "name": e.name,
        "bounds": {"lower": b.lower, "upper": b.upper,
                   "gamma_bar_upper": b.gamma_bar_upper},
        "status": b.status,
        "reasons": [{"rule": r.rule, "citation": r.citation, "detail": r.detail}
                    for r in b.reasons],
        "slice": rec.slice,
    }
    if analysis is not None:
        out["homology"] = list(analysis.group.invariant_factors)
        out["determinant"] = analysis.det
        out["signature"] = analysis.signature
        out["linking_fraction"] = _fraction_str(analysis.fraction)
        if analysis.fraction is None and not analysis.group.is_trivial:
            out["linking_matrix"] = [[_fraction_str(x) for x in row]
                                     for row in analysis.form.values]
        out["verdicts"] = [{"rule": v.rule, "result": v.result,
                            "witness": v.witness}
                           for v in analysis.verdicts]
    return out


def report_json(entries, metadata):
    """Canonical report serialization (stable bytes for stable inputs)."""
    doc = {
        "metadata": metadata,
        "summary": summarize(entries),
        "knots": [entry_dict(e) for e in entries],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def summary_csv(entries):
    lines = ["name,lower,upper,status,rules"]
    for e in entries:
        rules = ";".join(sorted({r.rule for r in e.bounds.reasons}))
        upper = "" if e.bounds.upper is None else e.bounds.upper
        lines.append(f"{e.name},{e.bounds.lower},{upper},"
                     f"{'determined' if e.bounds.determined else 'range'},{rules}")
    return "\n".join(lines) + "\n"
