"""Bars, barcodes, and exact interleaving/bottleneck distances.

A bar is a half-open interval [a, b) with rational a and b rational or
+inf.  The bottleneck distance is computed exactly: the optimum is one of
the finitely many pairwise interval distances, and feasibility at a
candidate threshold is a bipartite perfect-matching test.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .exact import INF, ExtRational, is_inf


@dataclass(frozen=True, order=False)
class Bar:
    """Half-open interval [left, right); right may be INF."""

    left: Fraction
    right: ExtRational

    def __post_init__(self):
        if not isinstance(self.left, Fraction):
            object.__setattr__(self, "left", Fraction(self.left))
        if not is_inf(self.right) and not isinstance(self.right, Fraction):
            object.__setattr__(self, "right", Fraction(self.right))
        if not self.left < self.right:
            raise ValueError(f"empty or inverted bar [{self.left}, {self.right})")

    @property
    def finite(self) -> bool:
        return not is_inf(self.right)

    @property
    def length(self) -> ExtRational:
        return INF if not self.finite else self.right - self.left

    def translate(self, c: Fraction) -> "Bar":
        return Bar(self.left + c, self.right if not self.finite else self.right + c)

    def __repr__(self):
        return f"[{self.left},{'inf' if not self.finite else self.right})"

    def sort_key(self):
        return (self.left, is_inf(self.right), self.right if self.finite else Fraction(0))


class Barcode:
    """Finite multiset of bars; duplicates are significant."""

    def __init__(self, bars: Iterable[Bar] = ()):
        bars = [b if isinstance(b, Bar) else Bar(*b) for b in bars]
        self.bars = tuple(sorted(bars, key=Bar.sort_key))

    def __iter__(self):
        return iter(self.bars)

    def __len__(self):
        return len(self.bars)

    def __eq__(self, other):
        return isinstance(other, Barcode) and self.bars == other.bars

    def __hash__(self):
        return hash(self.bars)

    def __repr__(self):
        return "{" + ", ".join(map(repr, self.bars)) + "}"

    def translate(self, c) -> "Barcode":
        c = Fraction(c)
        return Barcode(b.translate(c) for b in self.bars)

    def finite_bars(self):
        return [b for b in self.bars if b.finite]

    def infinite_bars(self):
        return [b for b in self.bars if not b.finite]

    def max_length(self) -> ExtRational:
        """Length of the longest bar; 0 for an empty barcode."""
        if not self.bars:
            return Fraction(0)
        return max((b.length for b in self.bars), default=Fraction(0))


def interval_distance(j: Optional[Bar], j2: Optional[Bar]) -> ExtRational:
    """Interleaving distance between two interval modules (None = empty)."""
    if j is None and j2 is None:
        return Fraction(0)
    if j is None or j2 is None:
        bar = j if j is not None else j2
        if not bar.finite:
            return INF
        return (bar.right - bar.left) / 2
    if j.finite != j2.finite:
        return INF
    if not j.finite:
        return abs(j.left - j2.left)
    a, b, a2, b2 = j.left, j.right, j2.left, j2.right
    return min(max(abs(a - a2), abs(b - b2)),
               max((b - a) / 2, (b2 - a2) / 2))


def _deletion_cost(bar: Bar) -> Fraction:
    return (bar.right - bar.left) / 2


def _sorted_pairing_value(xs, ys) -> Fraction:
    """Min-max |x - f(x)| over bijections of two equal-size multisets on a line."""
    xs = sorted(xs)
    ys = sorted(ys)
    best = Fraction(0)
    for x, y in zip(xs, ys):
        d = abs(x - y)
        if d > best:
            best = d
    return best


def _matching_feasible(fs, ft, eps: Fraction) -> bool:
    """Perfect matching test for finite bars at threshold eps.

    Left vertices: bars of S plus one diagonal slot per bar of T.  Right
    vertices: bars of T plus one diagonal slot per bar of S.  An S bar can
    pair with a T bar at distance <= eps or with its own slot if its
    deletion cost is <= eps; T slots pair with S slots freely.
    """
    ns, nt = len(fs), len(ft)
    n = ns + nt
    adj = [[] for _ in range(n)]
    for i, s in enumerate(fs):
        for j, t in enumerate(ft):
            if interval_distance(s, t) <= eps:
                adj[i].append(j)
        if _deletion_cost(s) <= eps:
            adj[i].append(nt + i)
    for k, t in enumerate(ft):
        if _deletion_cost(t) <= eps:
            adj[ns + k].append(k)
        adj[ns + k].extend(range(nt, nt + ns))

    match_right = [-1] * n

    def augment(u, seen):
        for v in adj[u]:
            if v in seen:
                continue
            seen.add(v)
            if match_right[v] == -1 or augment(match_right[v], seen):
                match_right[v] = u
                return True
        return False

    matched = 0
    for u in range(n):
        if augment(u, set()):
            matched += 1
        else:
            return False
    return matched == n


def bottleneck_distance(s: Barcode, t: Barcode) -> ExtRational:
    """Exact bottleneck distance between two barcodes."""
    inf_s = [b.left for b in s.infinite_bars()]
    inf_t = [b.left for b in t.infinite_bars()]
    if len(inf_s) != len(inf_t):
        return INF
    v_inf = _sorted_pairing_value(inf_s, inf_t) if inf_s else Fraction(0)

    fs, ft = s.finite_bars(), t.finite_bars()
    if not fs and not ft:
        return v_inf
    candidates = set()
    for b in fs:
        candidates.add(_deletion_cost(b))
    for b in ft:
        candidates.add(_deletion_cost(b))
    for b1 in fs:
        for b2 in ft:
            candidates.add(interval_distance(b1, b2))
    candidates.add(Fraction(0))
    ordered = sorted(candidates)
    lo, hi = 0, len(ordered) - 1
    # largest candidate is always feasible (delete everything)
    while lo < hi:
        mid = (lo + hi) // 2
        if _matching_feasible(fs, ft, ordered[mid]):
            hi = mid
        else:
            lo = mid + 1
    v_fin = ordered[lo]
    return max(v_inf, v_fin)


def bottleneck_bruteforce(s: Barcode, t: Barcode) -> ExtRational:
    """Oracle: enumerate all padded bijections.  Requires |S| + |T| <= 8."""
    n = len(s) + len(t)
    if n > 8:
        raise ValueError("brute-force bottleneck limited to 8 bars total")
    left = list(s.bars) + [None] * len(t)
    right = list(t.bars) + [None] * len(s)
    best: ExtRational = INF
    found = False
    for perm in itertools.permutations(range(n)):
        cost: ExtRational = Fraction(0)
        ok = True
        for i, j in enumerate(perm):
            d = interval_distance(left[i], right[j])
            if d > cost:
                cost = d
            if is_inf(cost) and found:
                ok = False
                break
        if not ok:
            continue
        found = True
        if cost < best:
            best = cost
    return best if found else Fraction(0)


def is_interleaved(s: Barcode, t: Barcode, eps) -> bool:
    """Whether the interval-decomposable modules of s and t are eps-interleaved."""
    eps = Fraction(eps)
    if eps < 0:
        raise ValueError("negative interleaving parameter")
    return bottleneck_distance(s, t) <= eps
