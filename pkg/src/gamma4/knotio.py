"""Knot notation parsing and ingestion of invariant / certificate tables.

PD convention
-------------
A planar diagram code is a list of crossings ``X[a,b,c,d]`` over edge
labels 1..2n.  Each quadruple lists the four edge-ends counterclockwise
starting from the incoming under-strand, and edge labels increase by one
along the knot's orientation (with wraparound 2n -> 1).  This matches the
convention of the public knot tables, so rows copied from them parse
directly.

Ingested tables
---------------
``knots.csv`` carries one row per knot: name, crossing number, optional PD
code, and the invariant columns (signature, Arf, smooth 4-genus, unknotting
and slicing ranges, clasp range, crosscap bound, slice flag, determinant,
required definiteness).  Cells may be empty; an absent invariant simply
makes the rules that would consume it inapplicable.  ``certificates.csv``
is the ledger of non-oriented band moves ``source --h--> target``.
"""

import csv
import re
from dataclasses import dataclass
from pathlib import Path

from .errors import DataError, PDSemanticError, PDSyntaxError


@dataclass(frozen=True)
class PDCode:
    """Combinatorial planar diagram: a tuple of crossing quadruples."""

    crossings: tuple

    def __len__(self):
        return len(self.crossings)

    @property
    def edge_count(self):
        return 2 * len(self.crossings)


_PD_RE = re.compile(r"^PD\[(.*)\]$")
_X_RE = re.compile(r"X\[(\d+),(\d+),(\d+),(\d+)\]")


def parse_pd(text):
    """Parse ``PD[X[a,b,c,d], ...]`` (or ``PD[]`` for the unknot).

    Raises :class:`PDSyntaxError` on malformed tokens and
    :class:`PDSemanticError` (with the crossing index) when the quadruples
    violate a diagram invariant.
    """
    squeezed = re.sub(r"\s+", "", text)
    m = _PD_RE.match(squeezed)
    if not m:
        raise PDSyntaxError(f"not a PD expression: {text!r}")
    body = m.group(1)
    if body == "":
        return PDCode(crossings=())
    crossings = []
    pos = 0
    while pos < len(body):
        xm = _X_RE.match(body, pos)
        if not xm:
            raise PDSyntaxError(f"malformed crossing token at {body[pos:pos+24]!r}")
        crossings.append(tuple(int(g) for g in xm.groups()))
        pos = xm.end()
        if pos < len(body):
            if body[pos] != ",":
                raise PDSyntaxError(f"expected ',' between crossings at {body[pos:pos+8]!r}")
            pos += 1
    pd = PDCode(crossings=tuple(crossings))
    validate_pd(pd)
    return pd


def render_pd(pd):
    """Inverse of :func:`parse_pd`: ``parse_pd(render_pd(pd)) == pd``."""
    inner = ", ".join("X[%d,%d,%d,%d]" % c for c in pd.crossings)
    return f"PD[{inner}]"


def _successor(label, edges):
    return label % edges + 1


def validate_pd(pd):
    """Check all PDCode invariants; raise PDSemanticError otherwise."""
    n = len(pd)
    if n == 0:
        return
    edges = 2 * n
    counts = {}
    for i, quad in enumerate(pd.crossings):
        for label in quad:
            if not 1 <= label <= edges:
                raise PDSemanticError(
                    f"edge label {label} out of range 1..{edges}", crossing=i)
            counts[label] = counts.get(label, 0) + 1
    for label in range(1, edges + 1):
        if counts.get(label, 0) != 2:
            bad = next((i for i, q in enumerate(pd.crossings) if label in q),
                       None)
            raise PDSemanticError(
                f"edge label {label} occurs {counts.get(label, 0)} times, expected 2",
                crossing=bad)
    for i, (a, b, c, d) in enumerate(pd.crossings):
        if c != _successor(a, edges):
            raise PDSemanticError(
                f"under-strand exits at {c}, expected successor of {a}", crossing=i)
    over_directions(pd)  # raises if over-strand orientation cannot be resolved


def over_directions(pd):
    """Per-crossing over-strand direction: +1 if the over-strand runs
    b -> d, -1 if it runs d -> b (labels increase along the orientation).

    When n = 1 both readings satisfy the label-successor test mod 2; the
    ambiguity is resolved by requiring every edge to leave exactly one
    crossing and enter exactly one.
    """
    n = len(pd)
    edges = 2 * n
    candidates = []
    for i, (_a, b, c, d) in enumerate(pd.crossings):
        cand = []
        if d == _successor(b, edges):
            cand.append(+1)
        if b == _successor(d, edges):
            cand.append(-1)
        if not cand:
            raise PDSemanticError(
                f"over-strand pair ({b},{d}) not consecutive along orientation",
                crossing=i)
        candidates.append(cand)

    def consistent(choice):
        heads = {}
        tails = {}
        for (a, b, c, d), dirn in zip(pd.crossings, choice):
            over_in, over_out = (b, d) if dirn == +1 else (d, b)
            for lbl in (a, over_in):
                heads[lbl] = heads.get(lbl, 0) + 1
            for lbl in (c, over_out):
                tails[lbl] = tails.get(lbl, 0) + 1
        return (all(heads.get(l, 0) == 1 for l in range(1, edges + 1))
                and all(tails.get(l, 0) == 1 for l in range(1, edges + 1)))

    # Ambiguity only happens for n = 1, so the product space is tiny.
    from itertools import product
    for choice in product(*candidates):
        if consistent(choice):
            return list(choice)
    raise PDSemanticError(
        "no orientation assignment makes every edge enter and leave exactly one crossing")


# ---------------------------------------------------------------------------
# dataset records


@dataclass
class KnotRecord:
    """Ingested invariants for one knot.

    ``None`` means the table did not provide the value; classification
    rules that would need it are then simply not applied to this knot.
    """

    name: str
    crossings: int
    pd: PDCode | None = None
    signature: int | None = None
    arf: int | None = None
    g4: int | None = None
    u_lo: int | None = None
    u_hi: int | None = None
    us_lo: int | None = None
    us_hi: int | None = None
    c4_lo: int | None = None
    c4_hi: int | None = None
    crosscap_hi: int | None = None
    slice: bool = False
    determinant: int | None = None
    definiteness: int | None = None

    def check(self):
        """Validate the record's internal invariants; returns error strings."""
        problems = []
        if self.crossings < 0:
            problems.append("negative crossing number")
        if self.signature is not None and self.signature % 2 != 0:
            problems.append(f"odd signature {self.signature}")
        if self.arf is not None and self.arf not in (0, 1):
            problems.append(f"arf {self.arf} not in {{0,1}}")
        if self.determinant is not None:
            if self.determinant <= 0 or self.determinant % 2 == 0:
                problems.append(f"determinant {self.determinant} not an odd positive integer")
        if self.slice:
            if self.g4 not in (None, 0):
                problems.append("slice knot with g4 != 0")
            if self.signature not in (None, 0):
                problems.append("slice knot with nonzero signature")
        if self.definiteness not in (None, 1, -1):
            problems.append(f"definiteness {self.definiteness} not +-1")
        for lo, hi, what in ((self.u_lo, self.u_hi, "u"),
                             (self.us_lo, self.us_hi, "us"),
                             (self.c4_lo, self.c4_hi, "c4")):
            if lo is not None and hi is not None and lo > hi:
                problems.append(f"empty {what} range [{lo},{hi}]")
        # ladder g4 <= c4 <= us <= u, checked pairwise on available bounds
        ladder = (("g4", self.g4, self.g4), ("c4", self.c4_lo, self.c4_hi),
                  ("us", self.us_lo, self.us_hi), ("u", self.u_lo, self.u_hi))
        for i in range(len(ladder)):
            for j in range(i + 1, len(ladder)):
                lo_name, lo, _ = ladder[i]
                hi_name, _, hi = ladder[j]
                if lo is not None and hi is not None and lo > hi:
                    problems.append(f"ladder violation: {lo_name} {lo} > {hi_name} {hi}")
        return problems


DATASET_COLUMNS = ["name", "crossings", "pd", "signature", "arf", "g4",
                   "u_lo", "u_hi", "us_lo", "us_hi", "c4_lo", "c4_hi",
                   "crosscap_hi", "slice", "determinant", "definiteness"]


def _parse_int(cell, what, allow_sign=True):
    cell = cell.strip()
    if not re.fullmatch(r"[+-]?\d+" if allow_sign else r"\d+", cell):
        raise ValueError(f"non-integer {what}: {cell!r}")
    return int(cell)


def _parse_bool(cell, what):
    lowered = cell.strip().lower()
    if lowered in ("1", "true", "yes"):
        return True
    if lowered in ("0", "false", "no", ""):
        return False
    raise ValueError(f"bad boolean {what}: {cell!r}")


def load_dataset(path):
    """Load ``knots.csv`` and return the records sorted by table order.

    Rows violating the record invariants are collected and reported
    together in a single :class:`DataError` with their row numbers.
    """
    path = Path(path)
    records = []
    failures = []
    with path.open(newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise DataError(f"{path}: empty file, header required")
        missing = [c for c in DATASET_COLUMNS if c not in reader.fieldnames]
        if missing:
            raise DataError(f"{path}: missing mandatory columns {missing}")
        for lineno, row in enumerate(reader, start=2):
            try:
                records.append(_record_from_row(row))
            except (ValueError, PDSyntaxError, PDSemanticError) as exc:
                failures.append((lineno, str(exc)))
                continue
            problems = records[-1].check()
            if problems:
                records.pop()
                failures.append((lineno, "; ".join(problems)))
    if failures:
        listing = "; ".join(f"row {ln}: {msg}" for ln, msg in failures)
        raise DataError(f"{path}: rejected rows: {listing}",
                        rows=[ln for ln, _ in failures])
    return records


def _record_from_row(row):
    def opt(col, allow_sign=True):
        cell = (row.get(col) or "").strip()
        if cell == "":
            return None
        return _parse_int(cell, col, allow_sign)

    name = (row.get("name") or "").strip()
    if not name:
        raise ValueError("empty knot name")
    pd_cell = (row.get("pd") or "").strip()
    return KnotRecord(
        name=name,
        crossings=_parse_int(row["crossings"], "crossings", allow_sign=False),
        pd=parse_pd(pd_cell) if pd_cell else None,
        signature=opt("signature"),
        arf=opt("arf"),
        g4=opt("g4"),
        u_lo=opt("u_lo"), u_hi=opt("u_hi"),
        us_lo=opt("us_lo"), us_hi=opt("us_hi"),
        c4_lo=opt("c4_lo"), c4_hi=opt("c4_hi"),
        crosscap_hi=opt("crosscap_hi"),
        slice=_parse_bool(row.get("slice") or "", "slice"),
        determinant=opt("determinant"),
        definiteness=opt("definiteness"),
    )


# ---------------------------------------------------------------------------
# band-move certificates


SLICE = "slice"


@dataclass(frozen=True)
class BandMoveCertificate:
    """One non-oriented band move ``source --h--> target``.

    ``target_gamma4`` is the ledger's claim about the target: the integer 1
    or the literal ``"slice"``.  Dangling target names are allowed at load
    time; they are resolved (or trusted) during classification.
    """

    source: str
    h: int
    target: str
    target_gamma4: object  # 1 or SLICE
    figure_ref: str = ""


CERTIFICATE_COLUMNS = ["source", "h", "target", "target_gamma4", "figure_ref"]


def load_certificates(path):
    """Load ``certificates.csv``; certificates with h outside {-1,0,1} or a
    target_gamma4 outside {1, slice} are rejected with their row numbers."""
    path = Path(path)
    certs = []
    failures = []
    with path.open(newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise DataError(f"{path}: empty file, header required")
        missing = [c for c in CERTIFICATE_COLUMNS if c not in reader.fieldnames]
        if missing:
            raise DataError(f"{path}: missing mandatory columns {missing}")
        for lineno, row in enumerate(reader, start=2):
            try:
                certs.append(_certificate_from_row(row))
            except ValueError as exc:
                failures.append((lineno, str(exc)))
    if failures:
        listing = "; ".join(f"row {ln}: {msg}" for ln, msg in failures)
        raise DataError(f"{path}: rejected rows: {listing}",
                        rows=[ln for ln, _ in failures])
    return certs


def _certificate_from_row(row):
    source = (row.get("source") or "").strip()
    target = (row.get("target") or "").strip()
    if not source:
        raise ValueError("empty source name")
    h = _parse_int(row.get("h") or "", "h")
    if h not in (-1, 0, 1):
        raise ValueError(f"band twist h={h} not in {{-1,0,1}}")
    tg_cell = (row.get("target_gamma4") or "").strip().lower()
    if tg_cell == SLICE:
        tg = SLICE
    else:
        tg = _parse_int(tg_cell, "target_gamma4")
        if tg != 1:
            raise ValueError(f"target_gamma4 {tg} must be 1 or 'slice'")
    return BandMoveCertificate(source=source, h=h, target=target,
                               target_gamma4=tg,
                               figure_ref=(row.get("figure_ref") or "").strip())
