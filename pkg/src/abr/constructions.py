"""Instance generators.

Three families:

* ``build_cluster_parabola`` / ``cluster_parabola_sequence``: the
  doubly-exponential planar construction whose order-3 divided-difference
  coloring has no monochromatic subsequence longer than 2m.  Level 1 is two
  points at height zero; each later level replaces every point by a tiny
  horizontally shrunk copy of the whole previous level and bends the copies
  upward along a steep parabola.  The copy widths, parabola coefficients,
  and vertical copy scales are powers of an integer base B; nothing is
  assumed about B except what the verification loop confirms, so the public
  entry point doubles B until an exhaustive search certifies the property.

* ``cupcap_extremal``: the classical two-block recursion giving
  C(2k-4, k-2) points with no k-point cup and no k-point cap.

* ``random_cyclic_instance``: seeded random moment-curve instances that are
  guaranteed nondegenerate by redraw, for property suites.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

from .coloring import LazyDivdiffColors, divdiff_color_table
from .errors import (
    DegenerateInputError,
    GenerationFailedError,
    InvariantError,
    ParameterSearchFailedError,
)
from .linalg import format_rational
from .sequences import PlanarSequence, moment_lift, validate_general_position
from .tables import MAX_DENSE_CELLS, longest_monochromatic

MAX_BASE = 2 ** 64


@dataclass(frozen=True)
class ClusterParabolaParams:
    """Parameters that produced one cluster-parabola instance.

    Per refinement step k (level k to level k+1): ``x_scale[k]`` is the
    horizontal shrink factor of the copies, ``steepness[k]`` the parabola
    coefficient, ``h_scale[k]`` the vertical shrink of the copied heights.
    All are powers of ``base``."""

    depth: int
    base: int
    x_scale: tuple
    steepness: tuple
    h_scale: tuple

    def to_json_obj(self):
        return {
            "m": self.depth,
            "base": self.base,
            "x_scale": [format_rational(x) for x in self.x_scale],
            "steepness": [format_rational(x) for x in self.steepness],
            "h_scale": [format_rational(x) for x in self.h_scale],
        }


@dataclass(frozen=True)
class ClusterParabolaReport:
    """Outcome of checking one instance for long monochromatic runs."""

    depth: int
    n: int
    max_monotone: int
    exhaustive: bool
    witness: tuple
    nodes_visited: int

    @property
    def within_bound(self):
        """Whether no monochromatic subsequence longer than 2m was found
        (conclusive only together with ``exhaustive``)."""
        return self.max_monotone <= 2 * self.depth

    def to_json_obj(self):
        return {
            "m": self.depth,
            "n": self.n,
            "max_monotone": self.max_monotone,
            "exhaustive": self.exhaustive,
            "witness": list(self.witness),
        }


def _exponent_schedule(steps):
    """Exponents (of the base) for the shrink, steepness, and copy-height
    scales of each refinement step.

    The horizontal shrink must beat the previous level's minimum gap cubed
    (so that cluster-local geometry dominates every mixed quadruple), the
    steepness must beat the previous level's maximum slope, and the copy
    heights must stay below the noise floor of the steepness terms.  Gaps
    shrink by B^-sigma per level, slopes grow by B^kappa, which forces
    sigma to triple (plus the kappa increment) and nu to track 2*sigma.
    """
    sigmas, kappas, nus = [], [], []
    sigma, kappa = 4, 1
    for _ in range(steps):
        nu = 2 * sigma + sigmas[-1] + 4 if sigmas else 4
        sigmas.append(sigma)
        kappas.append(kappa)
        nus.append(nu)
        sigma = 3 * sigma + 6
        kappa = kappa + 3
    return sigmas, kappas, nus


def build_cluster_parabola(m, base):
    """Build the depth-m instance at a fixed integer base (no verification).

    Returns (PlanarSequence of 2^(2^(m-1)) points, ClusterParabolaParams).
    """
    if not isinstance(m, int) or m < 1:
        raise InvariantError(f"depth must be an integer >= 1, got {m!r}")
    if not isinstance(base, int) or base < 2:
        raise InvariantError(f"base must be an integer >= 2, got {base!r}")
    sigmas, kappas, nus = _exponent_schedule(m - 1)
    x_scale = tuple(Fraction(1, base ** e) for e in sigmas)
    steepness = tuple(Fraction(base ** e) for e in kappas)
    h_scale = tuple(Fraction(1, base ** e) for e in nus)

    ts = [Fraction(1), Fraction(2)]
    hs = [Fraction(0), Fraction(0)]
    for s, big_k, v in zip(x_scale, steepness, h_scale):
        width = s * (ts[-1] - 1)
        min_gap = min(b - a for a, b in zip(ts, ts[1:]))
        if not width < min_gap:
            raise GenerationFailedError(
                f"copy width {width} does not fit below the cluster gap {min_gap}"
            )
        new_t, new_h = [], []
        for anchor_t, anchor_h in zip(ts, hs):
            lift = anchor_h + big_k * anchor_t * anchor_t
            for t, h in zip(ts, hs):
                new_t.append(anchor_t + s * (t - 1))
                new_h.append(lift + v * h)
        ts, hs = new_t, new_h

    seq = PlanarSequence(tuple(zip(ts, hs)))
    params = ClusterParabolaParams(m, base, x_scale, steepness, h_scale)
    return seq, params


def verify_cluster_parabola(p, m, *, budget=None):
    """Search the order-3 coloring of p for its longest monochromatic
    subsequence and report whether it stays within the 2m bound.

    Raises DegenerateInputError if some quadruple has a vanishing third
    divided difference (no color is defined there), and InvariantError if p
    does not have the depth-m size 2^(2^(m-1)).
    """
    if not isinstance(m, int) or m < 1:
        raise InvariantError(f"depth must be an integer >= 1, got {m!r}")
    expected = 2 ** (2 ** (m - 1))
    if len(p) != expected:
        raise InvariantError(f"depth {m} means {expected} points, got {len(p)}")
    n = len(p)
    if n < 4:
        return ClusterParabolaReport(m, n, n, True, tuple(range(n)), 0)
    if comb(n, 4) <= MAX_DENSE_CELLS:
        table = divdiff_color_table(p, 3)
    else:
        table = LazyDivdiffColors(p, 3)
    result = longest_monochromatic(table, budget=budget)
    return ClusterParabolaReport(
        m, n, result.size, result.exhaustive, result.witness, result.nodes_visited
    )


def cluster_parabola_sequence(m, *, start_base=2, max_base=MAX_BASE, budget=None):
    """Verified depth-m instance: doubles the base until the no-long-run
    property is certified exhaustively.

    Returns (sequence, params, report).  Raises ParameterSearchFailedError
    with per-base diagnostics when no base up to ``max_base`` works, e.g.
    because a search budget keeps verification from finishing.
    """
    if not isinstance(start_base, int) or start_base < 2:
        raise InvariantError(f"start_base must be an integer >= 2, got {start_base!r}")
    if not isinstance(max_base, int) or max_base < start_base:
        raise InvariantError("max_base must be an integer >= start_base")
    attempts = []
    base = start_base
    while base <= max_base:
        seq, params = build_cluster_parabola(m, base)
        try:
            report = verify_cluster_parabola(seq, m, budget=budget)
        except DegenerateInputError as exc:
            attempts.append((base, f"degenerate quadruple {exc.witness}"))
        else:
            if report.exhaustive and report.within_bound:
                return seq, params, report
            if not report.exhaustive:
                attempts.append((
                    base,
                    f"verification not exhaustive within budget "
                    f"(best bound found: {report.max_monotone})",
                ))
            else:
                attempts.append((
                    base,
                    f"monochromatic subsequence of size {report.max_monotone} "
                    f"at {report.witness}",
                ))
        base *= 2
    raise ParameterSearchFailedError(
        f"no base in [{start_base}, {max_base}] yields a verified depth-{m} instance",
        attempts=tuple(attempts),
    )


def _strictly_convex(count, flip=False):
    sign = -1 if flip else 1
    return [(Fraction(i), Fraction(sign * i * i)) for i in range(count)]


def _no_cup_no_cap(a, b):
    """Points with no a-point cup and no b-point cap; size C(a+b-4, a-2)."""
    if a == 3:
        return _strictly_convex(b - 1, flip=True)
    if b == 3:
        return _strictly_convex(a - 1)
    left = _no_cup_no_cap(a - 1, b)
    right = _no_cup_no_cap(a, b - 1)
    # Shift the right block past the left one, then raise it until every
    # left-to-right slope strictly exceeds every slope inside a block: a cup
    # then cannot keep more than one right point, a cap more than one left.
    dt = left[-1][0] + 1 - right[0][0]
    right = [(t + dt, h) for t, h in right]
    slope_cap = Fraction(0)
    for block in (left, right):
        for (t1, h1), (t2, h2) in combinations(block, 2):
            slope_cap = max(slope_cap, (h2 - h1) / (t2 - t1))
    span = right[-1][0] - left[0][0]
    top_left = max(h for _, h in left)
    dh = top_left + slope_cap * span + 1 - min(h for _, h in right)
    return left + [(t, h + dh) for t, h in right]


def cupcap_extremal(k):
    """The classical C(2k-4, k-2)-point sequence with no k-point second-order
    monotone subsequence (neither a k-cup nor a k-cap)."""
    if not isinstance(k, int) or k < 3:
        raise InvariantError(f"k must be an integer >= 3, got {k!r}")
    return PlanarSequence(tuple(_no_cup_no_cap(k, k)))


def _random_rational(rng, bits, *, signed=False):
    top = 1 << bits
    numerator = rng.randrange(-top + 1, top) if signed else rng.randrange(top)
    return Fraction(numerator, rng.randrange(1, top))


def _increasing_rationals(rng, n, bits):
    seen = set()
    for _ in range(64 * n + 64):
        seen.add(_random_rational(rng, bits))
        if len(seen) == n:
            return sorted(seen)
    raise GenerationFailedError(
        f"could not draw {n} distinct {bits}-bit rationals; raise the bit budget"
    )


def random_cyclic_instance(d, n, seed, *, bits=16, max_retries=64):
    """Seeded random lifted sequence with cyclically ordered projections.

    Projections sit on the moment curve at n distinct random rationals (so
    every projected d-tuple is automatically positively oriented); heights
    are independent random rationals.  Draws are rejected wholesale until
    no (d+1)-tuple is affinely degenerate, so the output passes both
    validators.  Identical seeds give identical sequences.
    """
    if not isinstance(d, int) or d < 2:
        raise InvariantError(f"dimension must be an integer >= 2, got {d!r}")
    if not isinstance(n, int) or n < d + 1:
        raise InvariantError(f"need n >= d+1 points, got n={n!r}")
    if not isinstance(seed, int):
        raise InvariantError(f"seed must be an integer, got {seed!r}")
    rng = random.Random(seed)
    for _ in range(max_retries):
        ts = _increasing_rationals(rng, n, bits)
        heights = [_random_rational(rng, bits, signed=True) for _ in range(n)]
        lifted = moment_lift(PlanarSequence(tuple(zip(ts, heights))), d)
        if validate_general_position(lifted).valid:
            return lifted
    raise GenerationFailedError(
        f"no nondegenerate instance in {max_retries} redraws (d={d}, n={n}, seed={seed})"
    )
