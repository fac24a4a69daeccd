"""Ordered two-colorings of r-tuples: storage, structure tests, searches.

A coloring assigns + or - to every increasing r-tuple over {0, ..., n-1}.
Tables are stored densely, one bit per tuple, indexed by the colexicographic
rank sum(C(c_i, i+1)); a size guard refuses tables beyond the dense budget.

Structure predicates:

* transitive: inside every (r+1)-tuple, if the two consecutive r-subtuples
  (drop-last and drop-first) share a color, all r-subtuples have it.
* monotone: inside every (r+1)-tuple, the colors of its r-subtuples listed
  in lexicographic order switch at most once.  Monotone implies transitive
  because drop-last is the lexicographically first subtuple and drop-first
  the last.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations
from math import comb

from .errors import InvariantError, ParseError, TooLargeError

MAX_DENSE_CELLS = 1 << 24


class Color(enum.Enum):
    """Two-valued tuple color."""

    POSITIVE = "+"
    NEGATIVE = "-"

    def flipped(self):
        return Color.NEGATIVE if self is Color.POSITIVE else Color.POSITIVE

    def __str__(self):
        return self.value


def _colex_rank(tup):
    rank = 0
    for pos, c in enumerate(tup):
        rank += comb(c, pos + 1)
    return rank


def _check_tuple(tup, n, r):
    if len(tup) != r or any(b <= a for a, b in zip(tup, tup[1:])) \
            or tup[0] < 0 or tup[-1] >= n:
        raise InvariantError(
            f"need a strictly increasing {r}-tuple of indices below {n}, got {tup!r}"
        )


def _switches(colors):
    return sum(1 for a, b in zip(colors, colors[1:]) if a != b)


def _lex_subtuples(tup):
    """The r-subtuples of an (r+1)-tuple in lexicographic order: dropping
    the last element comes first, dropping the first comes last."""
    return [tup[:j] + tup[j + 1:] for j in range(len(tup) - 1, -1, -1)]


@dataclass(frozen=True)
class ColoringTable:
    """Dense coloring of all increasing r-tuples over {0, ..., n-1}."""

    n: int
    r: int
    bits: bytes

    def __post_init__(self):
        if not isinstance(self.n, int) or not isinstance(self.r, int):
            raise InvariantError("n and r must be ints")
        if not (self.n >= self.r >= 2):
            raise InvariantError(f"need n >= r >= 2, got n={self.n}, r={self.r}")
        cells = comb(self.n, self.r)
        if cells > MAX_DENSE_CELLS:
            raise TooLargeError(f"{cells} tuples exceed the dense-table guard")
        if len(self.bits) != (cells + 7) // 8:
            raise InvariantError("bit storage has the wrong length")

    @property
    def total(self):
        return comb(self.n, self.r)

    @classmethod
    def from_function(cls, n, r, fn):
        """Build by evaluating fn(tuple) -> Color on every increasing tuple."""
        if not (isinstance(n, int) and isinstance(r, int) and n >= r >= 2):
            raise InvariantError(f"need integer n >= r >= 2, got n={n!r}, r={r!r}")
        cells = comb(n, r)
        if cells > MAX_DENSE_CELLS:
            raise TooLargeError(f"{cells} tuples exceed the dense-table guard")
        store = bytearray((cells + 7) // 8)
        for tup in combinations(range(n), r):
            color = fn(tup)
            if color is Color.POSITIVE:
                rank = _colex_rank(tup)
                store[rank >> 3] |= 1 << (rank & 7)
            elif color is not Color.NEGATIVE:
                raise InvariantError(f"colorer returned {color!r} for {tup}")
        return cls(n, r, bytes(store))

    @classmethod
    def from_colors(cls, n, r, colors):
        """Build from colors listed in lexicographic tuple order; accepts
        Color values or '+'/'-' characters."""
        seq = [Color(c) if not isinstance(c, Color) else c for c in colors]
        if len(seq) != comb(n, r):
            raise InvariantError(f"expected {comb(n, r)} colors, got {len(seq)}")
        it = iter(seq)
        return cls.from_function(n, r, lambda tup: next(it))

    def color(self, tup):
        """Color of one increasing tuple (colex-ranked O(r) lookup)."""
        _check_tuple(tup, self.n, self.r)
        rank = _colex_rank(tup)
        if self.bits[rank >> 3] >> (rank & 7) & 1:
            return Color.POSITIVE
        return Color.NEGATIVE

    def __iter__(self):
        for tup in combinations(range(self.n), self.r):
            yield tup, self.color(tup)

    def counts(self):
        positive = sum(1 for _, c in self if c is Color.POSITIVE)
        return positive, self.total - positive

    def to_csv(self):
        header = ",".join(f"i{k}" for k in range(self.r)) + ",color"
        lines = [header]
        for tup, color in self:
            lines.append(",".join(str(i) for i in tup) + "," + color.value)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_csv(cls, text):
        lines = [line for line in text.splitlines() if line.strip()]
        if not lines:
            raise ParseError("empty CSV table")
        header = lines[0].split(",")
        if len(header) < 3 or header[-1] != "color":
            raise ParseError(f"bad CSV header {lines[0]!r}")
        r = len(header) - 1
        if header != [f"i{k}" for k in range(r)] + ["color"]:
            raise ParseError(f"bad CSV header {lines[0]!r}")
        entries = {}
        top = -1
        for line_no, line in enumerate(lines[1:], start=2):
            parts = line.split(",")
            if len(parts) != r + 1:
                raise ParseError(f"row has {len(parts)} fields, expected {r + 1}", line=line_no)
            try:
                tup = tuple(int(x) for x in parts[:r])
            except ValueError as exc:
                raise ParseError(f"bad index in row {line_no}: {exc}") from exc
            if any(i < 0 for i in tup) or list(tup) != sorted(set(tup)):
                raise ParseError(f"indices {tup} must be strictly increasing", line=line_no)
            if parts[r] not in ("+", "-"):
                raise ParseError(f"bad color {parts[r]!r}", line=line_no)
            if tup in entries:
                raise ParseError(f"tuple {tup} listed twice", line=line_no)
            entries[tup] = Color(parts[r])
            top = max(top, tup[-1])
        n = top + 1
        if len(entries) != comb(n, r):
            raise ParseError(
                f"table has {len(entries)} rows but {comb(n, r)} tuples exist for n={n}, r={r}"
            )
        return cls.from_function(n, r, lambda tup: entries[tup])

    def to_json_obj(self):
        return {
            "n": self.n,
            "r": self.r,
            "colors": "".join(color.value for _, color in self),
        }

    @classmethod
    def from_json_obj(cls, obj):
        if not isinstance(obj, dict):
            raise ParseError("table JSON must be an object")
        unknown = set(obj) - {"n", "r", "colors"}
        if unknown:
            raise ParseError(f"unknown table field {sorted(unknown)[0]!r}")
        try:
            n, r, colors = obj["n"], obj["r"], obj["colors"]
        except KeyError as exc:
            raise ParseError(f"missing table field {exc.args[0]!r}") from exc
        if not isinstance(colors, str) or any(c not in "+-" for c in colors):
            raise ParseError("'colors' must be a string of '+'/'-'")
        if not isinstance(n, int) or not isinstance(r, int):
            raise ParseError("'n' and 'r' must be integers")
        if len(colors) != comb(n, r):
            raise ParseError(f"expected {comb(n, r)} colors, got {len(colors)}")
        return cls.from_colors(n, r, colors)


def is_transitive(table):
    """(True, None) or (False, witness (r+1)-tuple)."""
    r = table.r
    for big in combinations(range(table.n), r + 1):
        if table.color(big[:-1]) == table.color(big[1:]):
            want = table.color(big[:-1])
            for sub in combinations(big, r):
                if table.color(sub) != want:
                    return False, big
    return True, None


def is_monotone(table):
    """(True, None) or (False, witness (r+1)-tuple)."""
    for big in combinations(range(table.n), table.r + 1):
        colors = [table.color(sub) for sub in _lex_subtuples(big)]
        if _switches(colors) > 1:
            return False, big
    return True, None


def monotone_implies_transitive_check(table):
    """For a monotone table, assert transitivity; returns True when both
    predicates hold.  Raises on a monotone-but-not-transitive table, which
    would contradict the subtuple ordering argument."""
    mono, _ = is_monotone(table)
    if not mono:
        raise InvariantError("table is not monotone; implication check needs a monotone table")
    trans, witness = is_transitive(table)
    if not trans:
        raise InvariantError(f"monotone table failed transitivity at {witness}")
    return True


@dataclass(frozen=True)
class SearchResult:
    """Longest monochromatic subset found: its size, the lexicographically
    least witness of that size, its color, whether the search completed, and
    the number of search-tree nodes visited."""

    size: int
    witness: tuple
    color: Color
    exhaustive: bool
    nodes_visited: int

    def to_json_obj(self):
        return {
            "size": self.size,
            "witness": list(self.witness),
            "color": self.color.value,
            "exhaustive": self.exhaustive,
            "nodes_visited": self.nodes_visited,
        }


def longest_monochromatic(table, *, budget=None, assume_transitive=False):
    """Largest index set whose r-subtuples all share one color.

    Depth-first branch and bound over increasing index stacks; a candidate
    element must keep every newly completed r-subtuple on the target color.
    With ``assume_transitive`` only the newest consecutive window is checked,
    which is equivalent for transitive tables and much cheaper.

    ``budget`` caps visited nodes deterministically; when it runs out the
    best subset found so far is returned with exhaustive=False.  Ties between
    equal-size subsets resolve to the lexicographically least witness.
    """
    n, r = table.n, table.r
    if n < r:
        return SearchResult(n, tuple(range(n)), Color.POSITIVE, True, 0)

    best_size = 0
    best_wit = None
    best_color = Color.POSITIVE
    nodes = 0
    budget_hit = False

    def feasible(stack, e, color):
        if len(stack) < r - 1:
            return True
        if assume_transitive and len(stack) >= r - 1:
            window = tuple(stack[-(r - 1):]) + (e,)
            return table.color(window) == color
        for sub in combinations(stack, r - 1):
            if table.color(sub + (e,)) != color:
                return False
        return True

    def extend(stack, color):
        nonlocal nodes, budget_hit, best_size, best_wit, best_color
        nodes += 1
        if budget is not None and nodes > budget:
            budget_hit = True
            return
        if len(stack) >= r:
            snap = tuple(stack)
            if len(snap) > best_size or (
                len(snap) == best_size and (best_wit is None or snap < best_wit)
            ):
                best_size, best_wit, best_color = len(snap), snap, color
        start = stack[-1] + 1 if stack else 0
        for e in range(start, n):
            if len(stack) + 1 + (n - 1 - e) < best_size:
                break
            if feasible(stack, e, color):
                stack.append(e)
                extend(stack, color)
                stack.pop()
                if budget_hit:
                    return

    for color in (Color.POSITIVE, Color.NEGATIVE):
        extend([], color)
        if budget_hit:
            break

    return SearchResult(best_size, best_wit or (), best_color, not budget_hit, nodes)


def ramsey_search_tiny(r, k, n_max, cls="monotone", *, max_tuples=64):
    """Least n <= n_max such that every coloring in the class forces a
    monochromatic k-subset; None when n_max is not enough (unknown).

    Exhaustive search over class colorings by depth-first assignment in
    colexicographic tuple order, pruning branches that already violate the
    class property or already contain a monochromatic k-subset.  Ordered
    colorings admit no vertex relabeling, so the only symmetry used is the
    global color swap (the first tuple is pinned to +).  Refuses when
    C(n, r) exceeds ``max_tuples``.
    """
    if cls not in ("monotone", "transitive"):
        raise InvariantError(f"unknown class {cls!r}")
    if not (isinstance(r, int) and isinstance(k, int) and r >= 2 and k >= r):
        raise InvariantError(f"need integers k >= r >= 2, got r={r!r}, k={k!r}")
    if not isinstance(n_max, int) or n_max < k:
        raise InvariantError(f"n_max must be an int >= k, got {n_max!r}")
    for n in range(k, n_max + 1):
        if comb(n, r) > max_tuples:
            raise TooLargeError(
                f"C({n},{r}) = {comb(n, r)} tuples exceed the enumeration guard {max_tuples}"
            )
        if _forces(n, r, k, cls):
            return n
    return None


def _forces(n, r, k, cls):
    order = sorted(combinations(range(n), r), key=lambda t: t[::-1])
    rank = {t: i for i, t in enumerate(order)}
    colors = [None] * len(order)
    monotone = cls == "monotone"

    def class_ok(tup):
        # (r+1)-sets completed by tup: those where tup is the colex-largest
        # r-subtuple, i.e. tup plus one element below its minimum.
        for x in range(tup[0]):
            big = (x,) + tup
            seq = [colors[rank[sub]] for sub in _lex_subtuples(big)]
            if monotone:
                if _switches(seq) > 1:
                    return False
            else:
                if seq[0] == seq[-1] and any(c != seq[0] for c in seq):
                    return False
        return True

    def mono_k_completed(tup):
        # k-sets completed by tup: tup plus k-r elements below its minimum.
        for lower in combinations(range(tup[0]), k - r):
            big = lower + tup
            first = None
            for sub in combinations(big, r):
                c = colors[rank[sub]]
                if first is None:
                    first = c
                elif c is not first:
                    break
            else:
                return True
        return False

    def dfs(i):
        if i == len(order):
            return True
        tup = order[i]
        choices = (Color.POSITIVE,) if i == 0 else (Color.POSITIVE, Color.NEGATIVE)
        for c in choices:
            colors[i] = c
            if class_ok(tup) and not mono_k_completed(tup):
                if dfs(i + 1):
                    return True
        colors[i] = None
        return False

    # n forces exactly when no class coloring avoids a monochromatic k-set.
    return not dfs(0)
