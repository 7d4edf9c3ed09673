"""Gauss diagrams, weak Gauss diagram patterns and their pairing.

Positions on the based circle are integers ``0..2n-1`` counted from the base
point in the direction of the circle.  An arrow is ``(tail, head, sign)`` and
runs from the over-passage to the under-passage of its crossing.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache

from .diagram import PlanarDiagram
from .errors import DisconnectedInput, NotAKnot, ResourceLimit
from .kernels import pairing_count

MAX_CONWAY_N = 2


@dataclass(frozen=True)
class GaussDiagram:
    arrows: tuple[tuple[int, int, int], ...] = ()

    @property
    def n(self) -> int:
        return len(self.arrows)

    def mirror(self) -> "GaussDiagram":
        """Reverse every arrow and negate every sign."""
        return GaussDiagram(tuple((h, t, -s) for t, h, s in self.arrows))

    def rotate(self, k: int) -> "GaussDiagram":
        """Move the base point forward past ``k`` endpoints."""
        m = 2 * self.n
        return GaussDiagram(tuple(((t - k) % m, (h - k) % m, s) for t, h, s in self.arrows))

    def crossing_counts(self) -> list[int]:
        """For every arrow, how many other arrows it intersects."""
        out = []
        for i, (t, h, _) in enumerate(self.arrows):
            lo, hi = min(t, h), max(t, h)
            cnt = 0
            for j, (u, v, _) in enumerate(self.arrows):
                if i != j and (lo < u < hi) != (lo < v < hi):
                    cnt += 1
            out.append(cnt)
        return out

    def left_right(self) -> tuple[int, int]:
        """(left, right) arrow counts: a right arrow has tail before head."""
        right = sum(1 for t, h, _ in self.arrows if t < h)
        return self.n - right, right


def gauss_of(D: PlanarDiagram, basepoint_arc: int | None = None) -> GaussDiagram:
    """Gauss diagram of a knot diagram with the base point on ``basepoint_arc``."""
    if D.c == 0:
        return GaussDiagram(())
    if not D.is_knot:
        raise NotAKnot("Gauss diagrams are built for knot diagrams only")
    seq = D.components[0]
    if basepoint_arc is not None:
        k = seq.index(basepoint_arc)
        seq = seq[k:] + seq[:k]
    ent = D.entering
    over: dict[int, int] = {}
    under: dict[int, int] = {}
    for pos, arc in enumerate(seq):
        i, slot = ent[arc]
        (under if slot == 0 else over)[i] = pos
    return GaussDiagram(tuple((over[i], under[i], D.signs[i]) for i in range(D.c)))


# ------------------------------------------------------------------ patterns


@dataclass(frozen=True)
class WeakGaussDiagram:
    """Pattern arrows ``(p, q, directed, sign)`` with positions ``0..2k-1``.

    A directed arrow runs ``p -> q``; an undirected chord ignores order.
    ``sign`` is +1, -1 or None (unsigned).
    """

    arrows: tuple[tuple[int, int, bool, int | None], ...]

    @property
    def k(self) -> int:
        return len(self.arrows)

    def reversed(self) -> "WeakGaussDiagram":
        return WeakGaussDiagram(tuple((q, p, d, s) for p, q, d, s in self.arrows))

    def kernel_key(self) -> tuple[int, int, int, int, int]:
        k = self.k
        firsts = sorted(range(k), key=lambda j: min(self.arrows[j][:2]))
        rank = {j: r for r, j in enumerate(firsts)}
        owner = {}
        for j, (p, q, _, _) in enumerate(self.arrows):
            owner[p] = owner[q] = rank[j]
        word = 0
        for pos in range(2 * k):
            word = word * k + owner[pos]
        dmask = dbits = smask = sbits = 0
        for j, (p, q, directed, sign) in enumerate(self.arrows):
            bit = 1 << rank[j]
            if directed:
                dmask |= bit
                if p < q:
                    dbits |= bit
            if sign is not None:
                smask |= bit
                if sign > 0:
                    sbits |= bit
        return word, dmask, dbits, smask, sbits

    def to_json(self) -> dict:
        return {
            "positions": [[p, q] for p, q, _, _ in self.arrows],
            "directed": [bool(d) for _, _, d, _ in self.arrows],
            "sign": [s for _, _, _, s in self.arrows],
        }

    @classmethod
    def from_json(cls, obj) -> "WeakGaussDiagram":
        return cls(tuple(
            (p, q, bool(d), s) for (p, q), d, s in zip(obj["positions"], obj["directed"], obj["sign"])
        ))

    @classmethod
    def from_word(cls, word: str, signs=None) -> "WeakGaussDiagram":
        """Compact form: ``"T0 H1 H0 T1"``-style tokens, ``C`` for a chord end.

        Tokens are read along the circle from the base point; the digit names
        the arrow.
        """
        ends: dict[int, list[tuple[int, str]]] = {}
        for pos, tok in enumerate(word.split()):
            ends.setdefault(int(tok[1:]), []).append((pos, tok[0]))
        arrows = []
        for j in sorted(ends):
            (p, kp), (q, kq) = ends[j]
            sign = None if signs is None else signs[j]
            if kp == "C":
                arrows.append((p, q, False, sign))
            elif kp == "T":
                arrows.append((p, q, True, sign))
            else:
                arrows.append((q, p, True, sign))
        return cls(tuple(arrows))


@dataclass(frozen=True)
class PatternCombination:
    terms: tuple[tuple[int, WeakGaussDiagram], ...]

    def __add__(self, other: "PatternCombination") -> "PatternCombination":
        return PatternCombination(self.terms + other.terms)

    def reversed(self) -> "PatternCombination":
        return PatternCombination(tuple((c, p.reversed()) for c, p in self.terms))

    def to_json(self) -> list[dict]:
        return [dict(p.to_json(), coefficient=c) for c, p in self.terms]

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def pairing(comb: PatternCombination, G: GaussDiagram, backend: str | None = None) -> int:
    """Signed count of sub-diagrams of G equal to each pattern."""
    by_k: dict[int, list] = {}
    for coef, pat in comb.terms:
        by_k.setdefault(pat.k, []).append(pat.kernel_key() + (coef,))
    if not G.arrows:
        return 0
    tails = [t for t, _, _ in G.arrows]
    heads = [h for _, h, _ in G.arrows]
    signs = [s for _, _, s in G.arrows]
    return sum(pairing_count(tails, heads, signs, k, pats, backend) for k, pats in by_k.items())


# -------------------------------------------------------------- chord diagrams


@dataclass(frozen=True)
class ChordDiagram:
    chords: tuple[tuple[int, int], ...]

    @property
    def n(self) -> int:
        return len(self.chords)

    def partner(self) -> dict[int, int]:
        out = {}
        for p, q in self.chords:
            out[p] = q
            out[q] = p
        return out


def all_chord_diagrams(n: int):
    """Every perfect matching of 0..2n-1, chords sorted, as ChordDiagrams."""

    def rec(points):
        if not points:
            yield ()
            return
        p = points[0]
        for j in range(1, len(points)):
            q = points[j]
            rest = points[1:j] + points[j + 1:]
            for tail in rec(rest):
                yield ((p, q),) + tail

    for m in rec(list(range(2 * n))):
        yield ChordDiagram(m)


def _walk_doubled(C: ChordDiagram):
    """Trace the doubled curve from the base point.

    At endpoint p the circle is cut into p- (incoming side) and p+ (outgoing
    side); the doubled chord joins p- to q+ and p+ to q-.  Returns the list
    of strands traversed as (from, to) endpoint pairs on the component of
    the base point, and the number of components.
    """
    m = 2 * C.n
    partner = C.partner()
    # component containing the base point
    strands = []
    visited = set()
    pos = 0  # arriving at 0- from the base point
    if m == 0:
        return strands, 1
    while True:
        q = partner[pos]
        # arrive at pos-, take the strand to q+
        strands.append((pos, q))
        visited.add((pos, "-"))
        visited.add((q, "+"))
        nxt = q + 1
        if nxt == m:
            break  # back at the base point
        pos = nxt
    # remaining circle arcs give further components
    comps = 1
    for start in range(m):
        if (start, "-") in visited:
            continue
        comps += 1
        p = start
        while (p, "-") not in visited:
            visited.add((p, "-"))
            q = partner[p]
            visited.add((q, "+"))
            p = (q + 1) % m
    return strands, comps


def doubled_components(C: ChordDiagram) -> int:
    """Number of components of the doubled curve X_C."""
    return _walk_doubled(C)[1]


def is_connected(C: ChordDiagram) -> bool:
    return doubled_components(C) == 1


def interlacement_connected(C: ChordDiagram) -> bool:
    """Connectivity of the chord intersection graph (a weaker notion)."""
    if C.n <= 1:
        return True
    adj = {i: set() for i in range(C.n)}
    for i, j in itertools.combinations(range(C.n), 2):
        (a, b), (c, d) = C.chords[i], C.chords[j]
        if (a < c < b) != (a < d < b):
            adj[i].add(j)
            adj[j].add(i)
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for v in adj[u] - seen:
            seen.add(v)
            stack.append(v)
    return len(seen) == C.n


def connected_chord_diagrams(n: int, max_chords: int = 8) -> list[ChordDiagram]:
    """Based chord diagrams with n chords whose doubled curve is one circle."""
    if n < 1:
        raise ValueError("need at least one chord")
    if n > max_chords:
        raise ResourceLimit(f"chord enumeration capped at {max_chords} chords")
    return [C for C in all_chord_diagrams(n) if is_connected(C)]


def direct_chords(C: ChordDiagram) -> WeakGaussDiagram:
    """Orient each chord by the first pass along the doubled curve."""
    strands, comps = _walk_doubled(C)
    if comps != 1:
        raise DisconnectedInput("doubled curve of the chord diagram is not connected")
    direction = {}
    for p, q in strands:
        key = (min(p, q), max(p, q))
        direction.setdefault(key, (p, q))
    arrows = tuple((p, q, True, None) for p, q in (direction[ch] for ch in C.chords))
    return WeakGaussDiagram(arrows)


@lru_cache(maxsize=None)
def conway_patterns(n: int) -> PatternCombination:
    """Sum of A_C over connected chord diagrams with 2n chords."""
    return PatternCombination(tuple((1, direct_chords(C)) for C in connected_chord_diagrams(2 * n)))


def a2n_gauss(G: GaussDiagram, n: int, max_n: int = MAX_CONWAY_N, backend: str | None = None) -> int:
    """Coefficient of z^(2n) in the Conway polynomial from a Gauss diagram."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > max_n:
        raise ResourceLimit(f"a_(2n) limited to n <= {max_n}")
    return pairing(conway_patterns(n), G, backend)


# degree 2: the pattern from the crossing chord pair, and its reversal
A2_PATTERN = WeakGaussDiagram.from_word("T0 H1 H0 T1")
A2_REVERSED = WeakGaussDiagram.from_word("H0 T1 T0 H1")

# degree 3: four unsigned three-arrow pictures plus the signed degree-2 pair
V3_CA = PatternCombination((
    (1, WeakGaussDiagram.from_word("H0 C1 T2 T0 C1 H2")),
    (1, WeakGaussDiagram.from_word("H0 H1 T2 T1 T0 H2")),
    (1, WeakGaussDiagram.from_word("H0 T1 T2 T0 H2 H1")),
    (1, WeakGaussDiagram.from_word("H0 H1 T0 T2 T1 H2")),
))
V3_CB = PatternCombination((
    (1, WeakGaussDiagram.from_word("H0 T1 T0 H1", signs=(1, 1))),
    (-1, WeakGaussDiagram.from_word("H0 T1 T0 H1", signs=(-1, -1))),
))
V3_PATTERNS = V3_CA + V3_CB


def v3_gauss(G: GaussDiagram, backend: str | None = None) -> int:
    """4 v_3 from the degree-3 Gauss diagram formula."""
    return pairing(V3_PATTERNS, G, backend)
