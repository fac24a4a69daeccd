"""Point sequences, their validators, and exact JSON round-trip I/O.

Two shapes of data flow through the package:

* ``PlanarSequence``: points (t_i, h_i) with strictly increasing t, the raw
  material for divided differences and for moment-curve lifts.
* ``LiftedSequence``: points x_i = (z_i, h_i) in R^d where z_i in R^(d-1) is
  the projection and h_i the height (stored flat, height last).

A lifted sequence is *cyclically ordered* when every increasing d-tuple of
projections spans a positively oriented simplex with a row of ones on top;
validators below check that, plus the nondegeneracy conditions the coloring
oracles rely on.

Wire format (UTF-8 JSON, all rationals as "p/q" or "p" strings):

    {"kind": "planar", "points": [["0/1", "5/1"], ...]}
    {"kind": "lifted", "dimension": d, "points": [[z_1, ..., z_{d-1}, h], ...]}

Unknown fields are rejected rather than ignored.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations

from .errors import InvariantError, ParseError, TooFewPointsError
from .linalg import Matrix, as_fraction, det, format_rational, parse_rational

VALID = "valid"
INVALID = "invalid"
UNVERIFIED = "unverified"

ZERO_DETERMINANT = "zero_determinant"
NEGATIVE_DETERMINANT = "negative_determinant"
WRONG_ORIENTATION = "wrong_orientation"
ZERO_DIVIDED_DIFFERENCE = "zero_divided_difference"


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of an exhaustive (or budget-limited) tuple scan.

    ``status`` is one of "valid", "invalid", "unverified"; "unverified" means
    the tuple budget ran out before any violation was found and is never a
    silent pass.  ``failures`` holds (index_tuple, reason) pairs, capped at
    the bound the validator was given; ``checked`` counts examined tuples.
    """

    status: str
    failures: tuple
    checked: int

    @property
    def valid(self):
        return self.status == VALID

    @property
    def wrong_orientation(self):
        return any(reason == WRONG_ORIENTATION for _, reason in self.failures)


@dataclass(frozen=True)
class PlanarSequence:
    """Finite sequence of (t, h) pairs with strictly increasing t."""

    points: tuple

    def __post_init__(self):
        pts = []
        for entry in self.points:
            pair = tuple(entry)
            if len(pair) != 2:
                raise InvariantError(f"planar point {entry!r} must have exactly 2 coordinates")
            pts.append((as_fraction(pair[0]), as_fraction(pair[1])))
        if not pts:
            raise InvariantError("sequence must contain at least one point")
        for a, b in zip(pts, pts[1:]):
            if a[0] >= b[0]:
                raise InvariantError(
                    f"t values must strictly increase; got {a[0]} then {b[0]}"
                )
        object.__setattr__(self, "points", tuple(pts))

    def __len__(self):
        return len(self.points)

    @property
    def ts(self):
        return tuple(t for t, _ in self.points)

    @property
    def heights(self):
        return tuple(h for _, h in self.points)


@dataclass(frozen=True)
class LiftedSequence:
    """Finite sequence of points in R^dimension, height stored last."""

    dimension: int
    points: tuple

    def __post_init__(self):
        if not isinstance(self.dimension, int) or isinstance(self.dimension, bool):
            raise InvariantError("dimension must be an int")
        if self.dimension < 2:
            raise InvariantError(f"dimension must be >= 2, got {self.dimension}")
        pts = []
        for entry in self.points:
            coords = tuple(as_fraction(x) for x in entry)
            if len(coords) != self.dimension:
                raise InvariantError(
                    f"point {entry!r} has {len(coords)} coordinates, expected {self.dimension}"
                )
            pts.append(coords)
        if not pts:
            raise InvariantError("sequence must contain at least one point")
        object.__setattr__(self, "points", tuple(pts))

    def __len__(self):
        return len(self.points)

    def z(self, i):
        """Projection of point i (all coordinates but the height)."""
        return self.points[i][:-1]

    def height(self, i):
        return self.points[i][-1]

    def reversed(self):
        """Same points in the opposite order (orientation repair)."""
        return LiftedSequence(self.dimension, self.points[::-1])


def moment_lift(p, d):
    """Lift a planar sequence onto the d-dimensional moment curve.

    (t, h) becomes (t, t^2, ..., t^(d-1), h).  Distinct increasing t makes
    every projected d-tuple a Vandermonde matrix with positive determinant,
    so the lift always has cyclically ordered projections.
    """
    if not isinstance(d, int) or d < 2:
        raise InvariantError(f"lift dimension must be an int >= 2, got {d!r}")
    pts = [tuple(t ** e for e in range(1, d)) + (h,) for t, h in p.points]
    return LiftedSequence(d, pts)


def _projection_matrix(s, tup):
    d = s.dimension
    rows = [tuple(1 for _ in tup)]
    for coord in range(d - 1):
        rows.append(tuple(s.points[i][coord] for i in tup))
    return Matrix(tuple(rows))


def _lifted_matrix(s, tup):
    d = s.dimension
    rows = [tuple(1 for _ in tup)]
    for coord in range(d):
        rows.append(tuple(s.points[i][coord] for i in tup))
    return Matrix(tuple(rows))


def validate_cyclic_projections(s, *, max_failures=16, max_tuples=None):
    """Check that every increasing d-tuple of projections is positively
    oriented.

    Collects up to ``max_failures`` violations (zero or negative
    determinant).  If every checked tuple came out negative the reasons are
    rewritten to "wrong_orientation": the sequence is fine backwards.
    ``max_tuples`` bounds the scan; hitting it without a violation yields
    status "unverified".
    """
    d = s.dimension
    if len(s) < d:
        raise TooFewPointsError(f"need at least {d} points, got {len(s)}")
    failures = []
    checked = 0
    positive = negative = zero = 0
    for tup in combinations(range(len(s)), d):
        if max_tuples is not None and checked >= max_tuples:
            if failures:
                break
            return ValidationReport(UNVERIFIED, (), checked)
        checked += 1
        value = det(_projection_matrix(s, tup))
        if value > 0:
            positive += 1
        elif value == 0:
            zero += 1
            failures.append((tup, ZERO_DETERMINANT))
        else:
            negative += 1
            failures.append((tup, NEGATIVE_DETERMINANT))
        if len(failures) >= max_failures:
            break
    if not failures:
        return ValidationReport(VALID, (), checked)
    if zero == 0 and positive == 0:
        failures = [(tup, WRONG_ORIENTATION) for tup, _ in failures]
    return ValidationReport(INVALID, tuple(failures), checked)


def validate_general_position(s, *, max_failures=16, max_tuples=None):
    """Check that no increasing (d+1)-tuple of lifted points is affinely
    degenerate (zero determinant with a row of ones on top)."""
    d = s.dimension
    if len(s) < d + 1:
        raise TooFewPointsError(f"need at least {d + 1} points, got {len(s)}")
    failures = []
    checked = 0
    for tup in combinations(range(len(s)), d + 1):
        if max_tuples is not None and checked >= max_tuples:
            if failures:
                break
            return ValidationReport(UNVERIFIED, (), checked)
        checked += 1
        if det(_lifted_matrix(s, tup)) == 0:
            failures.append((tup, ZERO_DETERMINANT))
            if len(failures) >= max_failures:
                break
    if not failures:
        return ValidationReport(VALID, (), checked)
    return ValidationReport(INVALID, tuple(failures), checked)


def validate_d_general_position(p, d, *, max_failures=16, max_tuples=None):
    """Check that every increasing (d+1)-tuple of a planar sequence has a
    nonzero order-d divided difference (no d+1 points on one polynomial
    graph of degree < d)."""
    from .coloring import divided_difference

    if not isinstance(d, int) or d < 1:
        raise InvariantError(f"order must be a positive int, got {d!r}")
    if len(p) < d + 1:
        raise TooFewPointsError(f"need at least {d + 1} points, got {len(p)}")
    failures = []
    checked = 0
    for tup in combinations(range(len(p)), d + 1):
        if max_tuples is not None and checked >= max_tuples:
            if failures:
                break
            return ValidationReport(UNVERIFIED, (), checked)
        checked += 1
        if divided_difference([p.points[i] for i in tup]) == 0:
            failures.append((tup, ZERO_DIVIDED_DIFFERENCE))
            if len(failures) >= max_failures:
                break
    if not failures:
        return ValidationReport(VALID, (), checked)
    return ValidationReport(INVALID, tuple(failures), checked)


_PLANAR_FIELDS = {"kind", "points"}
_LIFTED_FIELDS = {"kind", "dimension", "points"}


def parse_sequence(data):
    """Parse a sequence from JSON text (str or UTF-8 bytes).

    Raises ParseError for syntax/schema problems (with line/column when the
    JSON decoder reports them) and InvariantError for structural violations
    such as non-increasing t or ragged point dimensions.
    """
    if isinstance(data, (bytes, bytearray)):
        try:
            data = bytes(data).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not UTF-8: {exc}") from exc
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, column=exc.colno) from exc
    if not isinstance(obj, dict):
        raise ParseError("top-level JSON value must be an object")
    kind = obj.get("kind")
    if kind == "planar":
        allowed = _PLANAR_FIELDS
    elif kind == "lifted":
        allowed = _LIFTED_FIELDS
    else:
        raise ParseError(f"kind must be 'planar' or 'lifted', got {kind!r}")
    unknown = set(obj) - allowed
    if unknown:
        raise ParseError(f"unknown field {sorted(unknown)[0]!r} for kind {kind!r}")
    missing = allowed - set(obj)
    if missing:
        raise ParseError(f"missing field {sorted(missing)[0]!r} for kind {kind!r}")
    raw_points = obj["points"]
    if not isinstance(raw_points, list):
        raise ParseError("'points' must be an array")
    points = []
    for i, entry in enumerate(raw_points):
        if not isinstance(entry, list):
            raise ParseError(f"point {i} must be an array of rational strings")
        try:
            points.append(tuple(parse_rational(x) for x in entry))
        except ParseError as exc:
            raise ParseError(f"point {i}: {exc}") from exc
    if kind == "planar":
        return PlanarSequence(tuple(points))
    dimension = obj["dimension"]
    if not isinstance(dimension, int) or isinstance(dimension, bool):
        raise ParseError(f"dimension must be an integer, got {dimension!r}")
    return LiftedSequence(dimension, tuple(points))


def serialize_sequence(s):
    """Serialize a sequence to canonical JSON bytes (stable key order, no
    whitespace, trailing newline); parse_sequence round-trips exactly."""
    if isinstance(s, PlanarSequence):
        obj = {
            "kind": "planar",
            "points": [[format_rational(t), format_rational(h)] for t, h in s.points],
        }
    elif isinstance(s, LiftedSequence):
        obj = {
            "kind": "lifted",
            "dimension": s.dimension,
            "points": [[format_rational(x) for x in pt] for pt in s.points],
        }
    else:
        raise InvariantError(f"cannot serialize {type(s).__name__}")
    return (json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n").encode("utf-8")
