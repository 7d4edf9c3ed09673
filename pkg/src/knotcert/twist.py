"""Twist regions, twist numbers, density and coherence.

A twist region is a maximal row of crossings joined end to end by bigon
faces of one checkerboard class.  A crossing on no bigon is a region on its
own.  A diagram may fix a *twist color*, in which case only bigons of that
class join crossings (a pretzel drawing reads its columns this way).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .diagram import PlanarDiagram, face_data, is_alternating, is_reduced, tait_graph
from .errors import NotAlternating, NotReduced


@dataclass(frozen=True)
class TwistRegion:
    crossings: tuple[int, ...]
    coherent: bool | None  # None for a single crossing
    sides: tuple[int, int] | None = None  # faces on either side of the row

    @property
    def c_R(self) -> int:
        return len(self.crossings)


@dataclass(frozen=True)
class TwistProfile:
    regions: tuple[TwistRegion, ...]
    color: int | None  # forced twist color, None when rows of both colors count
    c: int
    classes: tuple[tuple[int, ...], ...] | None = None

    @property
    def tw(self) -> int:
        return len(self.regions)

    @property
    def tw_bar(self) -> int | None:
        return None if self.classes is None else len(self.classes)

    @property
    def max_region(self) -> int:
        best = max(r.c_R for r in self.regions)
        return next(k for k, r in enumerate(self.regions) if r.c_R == best)

    @property
    def max_c_R(self) -> int:
        return self.regions[self.max_region].c_R

    @property
    def density(self) -> Fraction:
        return Fraction(self.max_c_R, self.c)

    @property
    def twist_reduced(self) -> bool | None:
        return None if self.classes is None else self.tw_bar == self.tw

    def to_json(self) -> dict:
        out = {
            "tw": self.tw,
            "tw_bar": self.tw_bar,
            "density": str(self.density),
            "max_region": self.max_region,
            "color": self.color,
            "regions": [
                {"crossings": list(r.crossings), "c_R": r.c_R, "coherent": r.coherent}
                for r in self.regions
            ],
        }
        if self.classes is not None:
            out["classes"] = [list(c) for c in self.classes]
        return out


def _bigon_rows(D: PlanarDiagram, fd, colors):
    """Regions as rows of bigons of the given colors.

    A crossing that lies in rows of both colors joins the longer row (ties
    go to the lower color); what is left of the other row is split into its
    contiguous pieces.  Returns ``(order, bigon_color, nbrs)`` triples.
    """
    nbrs: dict[int, dict[int, list[tuple[int, int]]]] = {k: {i: [] for i in range(D.c)} for k in colors}
    for f, wedges in enumerate(fd.faces):
        k = fd.color[f]
        if k not in nbrs or len(wedges) != 2:
            continue
        (i, _), (j, _) = wedges
        if i != j:
            nbrs[k][i].append((j, f))
            nbrs[k][j].append((i, f))

    def components(k, allowed):
        seen = set()
        out = []
        for start in sorted(allowed):
            if start in seen:
                continue
            comp = {start}
            stack = [start]
            while stack:
                u = stack.pop()
                for v, _ in nbrs[k][u]:
                    if v in allowed and v not in comp:
                        comp.add(v)
                        stack.append(v)
            seen |= comp
            out.append(comp)
        return out

    rows = [(len(comp), -k, min(comp), k, comp) for k in colors for comp in components(k, set(range(D.c)))
            if len(comp) > 1]
    rows.sort(key=lambda r: (-r[0], -r[1], r[2]))
    assigned: set[int] = set()
    result = []
    for _, _, _, k, comp in rows:
        free = comp - assigned
        for piece in components(k, free):
            if len(piece) > 1:
                result.append((_order(piece, nbrs[k]), k))
                assigned |= piece
    for i in range(D.c):
        if i not in assigned:
            result.append(((i,), None))
    return [(order, k, nbrs[k] if k is not None else None) for order, k in result]


def _order(piece, nb) -> tuple[int, ...]:
    """Walk a row from one end (or from its smallest crossing if it closes up)."""
    deg = {u: len({v for v, _ in nb[u] if v in piece}) for u in piece}
    ends = sorted(u for u in piece if deg[u] <= 1)
    cur = ends[0] if ends else min(piece)
    order = [cur]
    while True:
        nxt = sorted(v for v, _ in nb[cur] if v in piece and v not in order)
        if not nxt:
            break
        cur = nxt[0]
        order.append(cur)
    return tuple(order)


def _coherent(D: PlanarDiagram, fd, order, nbrs) -> bool | None:
    if len(order) < 2:
        return None
    i, j = order[0], order[1]
    f = next(f for v, f in nbrs[i] if v == j)
    labels = set(D.crossings[i]) & set(D.crossings[j])
    # the two arcs bounding the bigon
    arcs = [lab for lab in labels if _arc_on_face(D, fd, lab, f)]
    ends = {D.entering[lab][0] for lab in arcs}
    return len(ends) == 1


def _arc_on_face(D, fd, label, f) -> bool:
    for (i, p) in fd.faces[f]:
        x = D.crossings[i]
        if x[p] == label or x[(p + 1) % 4] == label:
            return True
    return False


def _sides(fd, color, crossing) -> tuple[int, int]:
    faces = sorted({fd.face_of[(crossing, p)] for p in range(4) if fd.color[fd.face_of[(crossing, p)]] != color})
    return tuple(faces) if len(faces) == 2 else (faces[0], faces[0])


def _regions(D: PlanarDiagram, fd, colors) -> list[TwistRegion]:
    out = []
    for order, k, nb in _bigon_rows(D, fd, colors):
        coherent = None if k is None else _coherent(D, fd, order, nb)
        sides = None if k is None else _sides(fd, k, order[0])
        out.append(TwistRegion(order, coherent, sides))
    out.sort(key=lambda r: min(r.crossings))
    return out


def twist_regions(D: PlanarDiagram, color: int | None = None, *, classes: bool = True) -> TwistProfile:
    """Twist regions of a reduced knot diagram.

    ``color`` (or the diagram's own ``twist_color``) restricts rows to bigons
    of that checkerboard class.  With ``classes=True`` and an alternating
    diagram the equivalence classes are filled in as well.
    """
    if D.c == 0:
        return TwistProfile((), None, 0, ())
    if not is_reduced(D):
        raise NotReduced("twist regions need a reduced diagram")
    fd = face_data(D)
    if color is None:
        color = D.twist_color
    colors = (0, 1) if color is None else (color,)
    prof = TwistProfile(tuple(_regions(D, fd, colors)), color, D.c)
    if classes and is_alternating(D):
        prof = TwistProfile(prof.regions, color, D.c, twist_equivalence_classes(D, prof))
    return prof


def _two_edge_cuts(n_vertices: int, edges) -> set[frozenset[int]]:
    """All pairs of edges whose removal disconnects the graph."""
    cuts = set()
    m = len(edges)
    for skip in range(m):
        for e in _bridges(n_vertices, edges, skip):
            cuts.add(frozenset((skip, e)))
    return cuts


def _bridges(n: int, edges, skip: int) -> list[int]:
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for k, (u, v) in enumerate(edges):
        if k == skip or u == v:
            continue
        adj[u].append((v, k))
        adj[v].append((u, k))
    disc = [-1] * n
    low = [0] * n
    out = []
    timer = 0
    for root in range(n):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = timer
        timer += 1
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            u, pe, it = stack[-1]
            advanced = False
            for v, k in it:
                if k == pe:
                    continue
                if disc[v] < 0:
                    disc[v] = low[v] = timer
                    timer += 1
                    stack.append((v, k, iter(adj[v])))
                    advanced = True
                    break
                low[u] = min(low[u], disc[v])
            if not advanced:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    low[p] = min(low[p], low[u])
                    if low[u] > disc[p]:
                        out.append(pe)
    return out


def twist_equivalence_classes(D: PlanarDiagram, profile: TwistProfile) -> tuple[tuple[int, ...], ...]:
    """Partition of region indices into equivalence classes.

    Two regions are equivalent when, in the Tait graph of the twist color,
    some edge of one is parallel to some edge of the other in the color-0
    Tait graph, or the two edges form a 2-edge cut there; the relation is
    closed transitively.
    """
    if not is_alternating(D):
        raise NotAlternating("the Tait-graph equivalence test is used for alternating diagrams only")
    T = tait_graph(D, 0)
    ends = {i: (u, v) for u, v, i, _ in T.edges}
    region_of = {i: k for k, r in enumerate(profile.regions) for i in r.crossings}
    parent = list(range(len(profile.regions)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        parent[find(a)] = find(b)

    by_pair: dict[frozenset, list[int]] = {}
    for i, (u, v) in ends.items():
        if u != v:
            by_pair.setdefault(frozenset((u, v)), []).append(i)
    for group in by_pair.values():
        for i in group[1:]:
            union(region_of[group[0]], region_of[i])
    edge_list = [ends[i] for i in range(D.c)]
    for cut in _two_edge_cuts(T.n_vertices, edge_list):
        a, b = tuple(cut)
        union(region_of[a], region_of[b])
    classes: dict[int, list[int]] = {}
    for k in range(len(profile.regions)):
        classes.setdefault(find(k), []).append(k)
    return tuple(sorted(tuple(v) for v in classes.values()))


def knot_twist_number(D: PlanarDiagram) -> int:
    """t̄w of a reduced alternating diagram, taken as the twist number of the knot.

    This relies on t̄w being unchanged by flypes, so any reduced alternating
    diagram of the knot gives the same value.
    """
    if not is_alternating(D):
        raise NotAlternating("knot twist number is read from an alternating diagram")
    if D.c == 0:
        return 0
    return twist_regions(D).tw_bar


def region_arrows_cross(D: PlanarDiagram, region: TwistRegion) -> bool | None:
    """True if the region's Gauss arrows pairwise cross, False if pairwise parallel."""
    from .gauss import gauss_of

    if region.c_R < 2:
        return None
    G = gauss_of(D)
    arrows = [G.arrows[i] for i in region.crossings]
    states = set()
    for a in range(len(arrows)):
        for b in range(a + 1, len(arrows)):
            t, h, _ = arrows[a]
            lo, hi = min(t, h), max(t, h)
            u, v, _ = arrows[b]
            states.add((lo < u < hi) != (lo < v < hi))
    return states.pop() if len(states) == 1 else None
