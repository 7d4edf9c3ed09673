"""Oriented planar diagrams: signs, mirror, smoothings, Seifert circles,
checkerboard (Tait) graphs and the alternating/positive/reduced predicates.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .codec import (
    Crossing,
    PdCode,
    _check_connected,
    _slots,
    canonical_pd,
    crossing_signs,
    face_cycles,
)
from .errors import NonPlanarInput, NotAKnot
from .linalg import bareiss_det


@dataclass(frozen=True)
class PlanarDiagram:
    """Oriented link diagram.

    ``crossings`` use the PD slot convention; the under-strand runs slot 0 ->
    slot 2 and the over-strand runs 3 -> 1 when ``signs[i] == +1`` and 1 -> 3
    otherwise.  ``free_loops`` counts crossingless unknotted components.
    ``twist_color`` optionally fixes the checkerboard class whose bigons
    chain crossings into twist regions (see ``twist.twist_regions``).
    """

    crossings: tuple[Crossing, ...] = ()
    signs: tuple[int, ...] = ()
    free_loops: int = 0
    twist_color: int | None = field(default=None, compare=False)

    @property
    def c(self) -> int:
        return len(self.crossings)

    @property
    def writhe(self) -> int:
        return sum(self.signs)

    @cached_property
    def successor(self) -> dict[int, int]:
        nxt = {}
        for (a, b, c, d), s in zip(self.crossings, self.signs):
            nxt[a] = c
            if s > 0:
                nxt[d] = b
            else:
                nxt[b] = d
        return nxt

    @cached_property
    def components(self) -> list[list[int]]:
        nxt = self.successor
        seen: set[int] = set()
        comps = []
        for start in sorted(nxt):
            if start in seen:
                continue
            comp = []
            arc = start
            while arc not in seen:
                seen.add(arc)
                comp.append(arc)
                arc = nxt[arc]
            comps.append(comp)
        return comps

    @property
    def n_components(self) -> int:
        return len(self.components) + self.free_loops

    @property
    def is_knot(self) -> bool:
        return self.n_components == 1

    @cached_property
    def entering(self) -> dict[int, tuple[int, int]]:
        """arc label -> (crossing, slot) where the arc ends."""
        out = {}
        for i, ((a, b, c, d), s) in enumerate(zip(self.crossings, self.signs)):
            out[a] = (i, 0)
            if s > 0:
                out[d] = (i, 3)
            else:
                out[b] = (i, 1)
        return out

    def pd(self) -> PdCode:
        return PdCode(self.crossings)

    def __str__(self) -> str:
        return " ".join("X[{},{},{},{}]".format(*x) for x in self.crossings)


def relabel(crossings, signs, free_loops: int = 0) -> PlanarDiagram:
    """Renumber arcs 1..2c along components, keeping the given orientation."""
    crossings = [tuple(x) for x in crossings]
    signs = tuple(signs)
    tmp = PlanarDiagram(tuple(crossings), signs, free_loops)
    mapping = {}
    for comp in tmp.components:
        for arc in comp:
            mapping[arc] = len(mapping) + 1
    return PlanarDiagram(
        tuple(tuple(mapping[v] for v in x) for x in crossings), signs, free_loops
    )


def from_crossings(crossings, *, check_planar: bool = True) -> PlanarDiagram:
    """Diagram from a raw crossing list, orientation inferred from the labels."""
    pd = canonical_pd(crossings)
    return build_diagram(pd, check_planar=check_planar)


def build_diagram(pd: PdCode, *, check_planar: bool = True) -> PlanarDiagram:
    crossings = tuple(tuple(x) for x in pd.crossings)
    if not crossings:
        return PlanarDiagram((), (), 1)
    if check_planar and len(face_cycles(crossings)) != len(crossings) + 2:
        raise NonPlanarInput("PD code fails the genus-0 face count V - E + F = 2")
    signs = tuple(crossing_signs(crossings))
    return relabel(crossings, signs)


UNKNOT = PlanarDiagram((), (), 1)


# ------------------------------------------------------------- orientation


def _flip_crossing(x: Crossing, s: int) -> tuple[Crossing, int]:
    a, b, c, d = x
    if s > 0:
        return (d, a, b, c), -1
    return (b, c, d, a), 1


def mirror(D: PlanarDiagram) -> PlanarDiagram:
    """Swap over/under everywhere; signs negate and labels are kept."""
    pairs = [_flip_crossing(x, s) for x, s in zip(D.crossings, D.signs)]
    # every crossing rotates by one slot, so the two checkerboard classes swap
    color = None if D.twist_color is None else 1 - D.twist_color
    return PlanarDiagram(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs), D.free_loops, color)


def crossing_change(D: PlanarDiagram, i: int) -> PlanarDiagram:
    x, s = _flip_crossing(D.crossings[i], D.signs[i])
    crossings = list(D.crossings)
    signs = list(D.signs)
    crossings[i] = x
    signs[i] = s
    return PlanarDiagram(tuple(crossings), tuple(signs), D.free_loops)


def reorient(crossings, free_loops: int = 0) -> PlanarDiagram:
    """Orient an unoriented crossing list.

    Input tuples only need the under-strand on slots 0/2 (either direction)
    and counterclockwise slot order.  Each component is walked starting from
    its smallest label.
    """
    crossings = [tuple(x) for x in crossings]
    where = _slots(crossings)
    under_in: dict[int, int] = {}
    over_in: dict[int, int] = {}
    seen_slots = set()
    for label in sorted(where):
        i, p = where[label][0]
        if (i, p) in seen_slots:
            continue
        # walk entering the crossing at (i, p)
        cur = (i, p)
        while cur not in seen_slots:
            seen_slots.add(cur)
            j, q = cur
            if q in (0, 2):
                under_in[j] = q
            else:
                over_in[j] = q
            out = (j, (q + 2) % 4)
            seen_slots.add(out)
            a, b = where[crossings[j][out[1]]]
            cur = b if a == out else a
    new = []
    signs = []
    for j, x in enumerate(crossings):
        if under_in[j] == 2:
            x = (x[2], x[3], x[0], x[1])
            ov = (over_in[j] + 2) % 4
        else:
            ov = over_in[j]
        new.append(x)
        signs.append(1 if ov == 3 else -1)
    return relabel(new, signs, free_loops)


# ---------------------------------------------------------------- predicates


def passages(D: PlanarDiagram) -> list[list[tuple[int, str]]]:
    """Per component, the (crossing, 'O'|'U') sequence along the orientation."""
    ent = D.entering
    out = []
    for comp in D.components:
        out.append([(ent[arc][0], "U" if ent[arc][1] == 0 else "O") for arc in comp])
    return out


def is_alternating(D: PlanarDiagram) -> bool:
    for seq in passages(D):
        for k in range(len(seq)):
            if seq[k][1] == seq[k - 1][1]:
                return False
    return True


def is_positive(D: PlanarDiagram) -> bool:
    return all(s > 0 for s in D.signs)


def special_alternating(D: PlanarDiagram) -> str | None:
    """'diagram' if D is alternating and positive, 'mirror' if its mirror is, else None."""
    if not is_alternating(D):
        return None
    if all(s > 0 for s in D.signs):
        return "diagram"
    if all(s < 0 for s in D.signs):
        return "mirror"
    return None


def is_special_alternating(D: PlanarDiagram) -> bool:
    return special_alternating(D) is not None


@dataclass(frozen=True)
class FaceData:
    faces: tuple[tuple[tuple[int, int], ...], ...]
    face_of: dict = field(compare=False)
    color: tuple[int, ...] = ()


def face_data(D: PlanarDiagram) -> FaceData:
    """Faces with a checkerboard coloring.

    Wedge (i, p) lies between slots p and p+1; color 0 is the class of wedge
    (0, 0).  Wedges (i, 1) and (i, 3) are the A-regions of crossing i.
    """
    faces = face_cycles(D.crossings)
    face_of = {}
    for f, cyc in enumerate(faces):
        for w in cyc:
            face_of[w] = f
    color = [-1] * len(faces)
    if faces:
        color[face_of[(0, 0)]] = 0
        stack = [face_of[(0, 0)]]
        while stack:
            f = stack.pop()
            for i, p in faces[f]:
                for q in ((p + 1) % 4, (p + 3) % 4):
                    g = face_of[(i, q)]
                    want = 1 - color[f]
                    if color[g] == -1:
                        color[g] = want
                        stack.append(g)
                    elif color[g] != want:
                        raise NonPlanarInput("faces are not 2-colorable")
    return FaceData(tuple(tuple(f) for f in faces), face_of, tuple(color))


def nugatory_crossings(D: PlanarDiagram) -> list[int]:
    fd = face_data(D)
    return [
        i
        for i in range(D.c)
        if fd.face_of[(i, 0)] == fd.face_of[(i, 2)] or fd.face_of[(i, 1)] == fd.face_of[(i, 3)]
    ]


def is_reduced(D: PlanarDiagram) -> bool:
    """No nugatory crossing, i.e. no loop edge in either Tait graph."""
    return not nugatory_crossings(D)


# ---------------------------------------------------------------- smoothings


def _merge_and_remove(crossings, removed, joins):
    """Delete crossings in ``removed`` and glue arc labels pairwise.

    Returns (remaining crossings, number of new free loops).  Gluing happens
    on a union-find over labels; a glued class whose labels no longer occur
    in any remaining crossing is a crossingless loop.
    """
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    involved = set()
    for u, v in joins:
        involved.update((u, v))
        parent[find(u)] = find(v)
    rest = [x for k, x in enumerate(crossings) if k not in removed]
    new = [tuple(find(v) for v in x) for x in rest]
    used = {v for x in new for v in x}
    classes = {find(v) for v in involved}
    loops = sum(1 for r in classes if r not in used)
    return new, loops


def remove_kinks(D: PlanarDiagram) -> PlanarDiagram:
    """Undo Reidemeister-I kinks until none are left."""
    crossings = list(D.crossings)
    signs = list(D.signs)
    loops = D.free_loops
    changed = True
    while changed:
        changed = False
        for i, x in enumerate(crossings):
            for p in range(4):
                if x[p] == x[(p + 1) % 4]:
                    m, n = x[(p + 2) % 4], x[(p + 3) % 4]
                    rest, extra = _merge_and_remove(crossings, {i}, [(m, n)])
                    signs.pop(i)
                    crossings = rest
                    loops += extra
                    changed = True
                    break
            if changed:
                break
    if len(crossings) == D.c:
        return D
    return relabel(crossings, signs, loops) if crossings else PlanarDiagram((), (), loops)


def smooth_crossing(D: PlanarDiagram, i: int, mode: str = "zero", *, kinks: bool = True) -> PlanarDiagram:
    """Resolve crossing ``i``.

    ``zero`` is the orientation-respecting smoothing (orientation kept);
    ``infinity`` is the other one, after which the result is re-oriented and,
    with ``kinks=True``, Reidemeister-I kinks are removed.
    """
    a, b, c, d = D.crossings[i]
    positive = D.signs[i] > 0
    if mode == "zero":
        pairs = [(a, b), (c, d)] if positive else [(a, d), (b, c)]
    elif mode == "infinity":
        pairs = [(a, d), (b, c)] if positive else [(a, b), (c, d)]
    else:
        raise ValueError(f"unknown smoothing mode {mode!r}")
    crossings, loops = _merge_and_remove(D.crossings, {i}, pairs)
    loops += D.free_loops
    if mode == "zero":
        signs = [s for k, s in enumerate(D.signs) if k != i]
        if not crossings:
            return PlanarDiagram((), (), loops)
        return relabel(crossings, signs, loops)
    if not crossings:
        return PlanarDiagram((), (), loops)
    out = reorient(crossings, loops)
    return remove_kinks(out) if kinks else out


# ------------------------------------------------------------------- Seifert


@dataclass(frozen=True)
class SeifertData:
    s: int
    genus: Fraction
    upper_bound_only: bool


def seifert_circles(D: PlanarDiagram) -> int:
    if not D.crossings:
        return D.free_loops
    pairs = []
    for (a, b, c, d), s in zip(D.crossings, D.signs):
        pairs += [(a, b), (c, d)] if s > 0 else [(a, d), (b, c)]
    _, loops = _merge_and_remove(D.crossings, set(range(D.c)), pairs)
    return loops + D.free_loops


def seifert_data(D: PlanarDiagram) -> SeifertData:
    s = seifert_circles(D)
    g = Fraction(D.c - s + D.n_components, 2)
    exact = is_alternating(D) or is_positive(D) or all(x < 0 for x in D.signs)
    return SeifertData(s, g, not exact)


def genus(D: PlanarDiagram) -> int:
    if not D.is_knot:
        raise NotAKnot("genus is defined here for knots only")
    g = seifert_data(D).genus
    return int(g)


# ---------------------------------------------------------------- Tait graph


@dataclass(frozen=True)
class TaitGraph:
    """Checkerboard graph: one vertex per face of ``color``, one edge per crossing.

    Edges are ``(u, v, crossing, sign)``; sign +1 when the two faces are the
    A-regions of the crossing.
    """

    n_vertices: int
    edges: tuple[tuple[int, int, int, int], ...]
    color: int
    faces: tuple[int, ...] = ()

    def has_loop(self) -> bool:
        return any(u == v for u, v, _, _ in self.edges)

    def laplacian(self, signed: bool = True) -> list[list[int]]:
        n = self.n_vertices
        L = [[0] * n for _ in range(n)]
        for u, v, _, s in self.edges:
            if u == v:
                continue
            w = s if signed else 1
            L[u][u] += w
            L[v][v] += w
            L[u][v] -= w
            L[v][u] -= w
        return L

    def spanning_tree_count(self) -> int:
        """Matrix-Tree theorem on the unsigned multigraph."""
        if self.n_vertices <= 1:
            return 1
        L = self.laplacian(signed=False)
        return bareiss_det([row[1:] for row in L[1:]])

    def is_connected(self) -> bool:
        n = self.n_vertices
        adj = {v: set() for v in range(n)}
        for u, v, _, _ in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        seen = {0} if n else set()
        stack = list(seen)
        while stack:
            u = stack.pop()
            for w in adj[u] - seen:
                seen.add(w)
                stack.append(w)
        return len(seen) == n


def tait_graph(D: PlanarDiagram, color: int = 0, fd: FaceData | None = None) -> TaitGraph:
    if not D.crossings:
        return TaitGraph(1, (), color, ())
    fd = fd or face_data(D)
    vertex_faces = [f for f, col in enumerate(fd.color) if col == color]
    index = {f: k for k, f in enumerate(vertex_faces)}
    edges = []
    for i in range(D.c):
        if fd.color[fd.face_of[(i, 1)]] == color:
            u, v, s = fd.face_of[(i, 1)], fd.face_of[(i, 3)], 1
        else:
            u, v, s = fd.face_of[(i, 0)], fd.face_of[(i, 2)], -1
        edges.append((index[u], index[v], i, s))
    return TaitGraph(len(vertex_faces), tuple(edges), color, tuple(vertex_faces))


def check_connected(D: PlanarDiagram) -> None:
    if D.crossings:
        _check_connected(D.crossings)
