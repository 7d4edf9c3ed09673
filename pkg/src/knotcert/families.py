"""Diagram families: (2,p) torus knots, pretzels and large synthetic
alternating diagrams.

All of them are built the same way: an embedded plane graph (a rotation
system) is turned into the alternating diagram whose checkerboard graph it
is.  Every edge becomes a crossing; the arcs of the diagram run through the
corners between consecutive edges around a vertex.
"""
from __future__ import annotations

from dataclasses import replace

from .diagram import PlanarDiagram, mirror, reorient
from .errors import DegenerateDenominator


def diagram_from_plane_graph(edges, rotation) -> PlanarDiagram:
    """Alternating diagram with checkerboard graph ``(edges, rotation)``.

    ``edges`` is a list of vertex pairs; ``rotation[v]`` lists the ids of the
    edges at ``v`` in counterclockwise order (a loop edge appears twice).
    """
    corner = {}
    for v, rot in rotation.items():
        for k in range(len(rot)):
            corner[(v, k)] = len(corner) + 1
    slot_of: dict[tuple[int, int], list[int]] = {}
    for v, rot in rotation.items():
        for k, e in enumerate(rot):
            slot_of.setdefault((v, e), []).append(k)
    raw = []
    for e, (u, v) in enumerate(edges):
        ku = slot_of[(u, e)].pop(0)
        kv = slot_of[(v, e)].pop(0) if (u != v or slot_of[(v, e)]) else ku
        du, dv = len(rotation[u]), len(rotation[v])
        lower_left = corner[(u, ku)]
        lower_right = corner[(u, (ku - 1) % du)]
        upper_right = corner[(v, kv)]
        upper_left = corner[(v, (kv - 1) % dv)]
        raw.append((lower_left, lower_right, upper_right, upper_left))
    return reorient(raw)


def _theta_paths(lengths):
    """Two poles joined by paths of the given edge counts, drawn left to right."""
    top, bottom = 0, 1
    edges = []
    rotation: dict[int, list[int]] = {top: [], bottom: []}
    nxt = 2
    for n in lengths:
        prev = top
        path = []
        for step in range(n):
            if step == n - 1:
                cur = bottom
            else:
                cur = nxt
                nxt += 1
                rotation[cur] = []
            edges.append((prev, cur))
            path.append(len(edges) - 1)
            prev = cur
        rotation[top].append(path[0])
        rotation[bottom].insert(0, path[-1])
        for a, b in zip(path, path[1:]):
            mid = edges[a][1]
            rotation[mid] = [a, b]
    return edges, rotation


def _positive(D: PlanarDiagram) -> PlanarDiagram:
    return mirror(D) if sum(D.signs) < 0 else D


def torus_2p(p: int) -> PlanarDiagram:
    """Standard positive diagram of T(2, p), p odd."""
    if p < 1 or p % 2 == 0:
        raise ValueError("p must be a positive odd integer")
    return _positive(diagram_from_plane_graph(*_theta_paths([1] * p)))


def pretzel(*twists: int) -> PlanarDiagram:
    """Alternating pretzel diagram P(a1, ..., an) with all ai > 0.

    The columns are recorded as the twist direction, so P(1, 1, 1) has
    three single-crossing twist regions rather than one.
    """
    if not twists or any(a < 1 for a in twists):
        raise ValueError("pretzel twists must be positive")
    # color 0 holds the corners of the plane graph's vertices
    return replace(diagram_from_plane_graph(*_theta_paths(twists)), twist_color=0)


def cylinder_grid(cycle: int, layers: int, bundles=None, inner_hub=None, outer_hub=None, omit=(),
                  paths=None):
    """Rotation system of C_cycle x P_layers, optionally with hub vertices.

    A hub sits inside the innermost (or outside the outermost) circle and is
    joined to the circle vertices whose index has the given parity.
    ``bundles`` maps an edge id of the simple graph to a multiplicity: the
    edge is replaced by that many parallel edges, i.e. a twist region.
    ``paths`` does the same with a path of that many edges, which gives a
    twist region of the other checkerboard color.  Edge ids in ``omit`` are
    left out.  Returns (edges, rotation).
    """
    bundles = bundles or {}
    paths = paths or {}
    vid = lambda layer, k: layer * cycle + (k % cycle)
    simple = []
    for layer in range(layers):
        for k in range(cycle):
            simple.append((vid(layer, k), vid(layer, k + 1)))
    for layer in range(layers - 1):
        for k in range(cycle):
            simple.append((vid(layer, k), vid(layer + 1, k)))
    spokes_in = {}
    spokes_out = {}
    hub_in, hub_out = layers * cycle, layers * cycle + 1
    if inner_hub is not None:
        for k in range(inner_hub % 2, cycle, 2):
            spokes_in[k] = len(simple)
            simple.append((hub_in, vid(0, k)))
    if outer_hub is not None:
        for k in range(outer_hub % 2, cycle, 2):
            spokes_out[k] = len(simple)
            simple.append((vid(layers - 1, k), hub_out))
    edges = []
    at_u, at_v = [], []  # edge ids seen from the first / second endpoint
    rotation = {}
    nxt_vertex = layers * cycle + 2
    for s, (u, v) in enumerate(simple):
        if s in omit:
            at_u.append([])
            at_v.append([])
        elif s in paths:
            chain = [u] + list(range(nxt_vertex, nxt_vertex + paths[s] - 1)) + [v]
            nxt_vertex += paths[s] - 1
            first = len(edges)
            edges.extend(zip(chain, chain[1:]))
            for j, w in enumerate(chain[1:-1]):
                rotation[w] = [first + j, first + j + 1]
            at_u.append([first])
            at_v.append([len(edges) - 1])
        else:
            m = bundles.get(s, 1)
            ids = list(range(len(edges), len(edges) + m))
            edges.extend([(u, v)] * m)
            at_u.append(ids)
            at_v.append(ids)
    # layer 0 is the inner circle; directions around a vertex in ccw order:
    # along the cycle forward, inward rung, cycle backward, outward rung.
    nring = layers * cycle
    for layer in range(layers):
        for k in range(cycle):
            v = vid(layer, k)
            rot = list(at_u[layer * cycle + k])
            if layer > 0:
                rot += list(reversed(at_v[nring + (layer - 1) * cycle + k]))
            elif k in spokes_in:
                rot += list(reversed(at_v[spokes_in[k]]))
            rot += list(reversed(at_v[layer * cycle + (k - 1) % cycle]))
            if layer < layers - 1:
                rot += at_u[nring + layer * cycle + k]
            elif k in spokes_out:
                rot += at_u[spokes_out[k]]
            rotation[v] = rot
    if spokes_in:
        rotation[hub_in] = [e for k in sorted(spokes_in) for e in at_u[spokes_in[k]]]
    if spokes_out:
        rotation[hub_out] = [e for k in sorted(spokes_out, reverse=True) for e in reversed(at_v[spokes_out[k]])]
    return edges, rotation


def grid_diagram(cycle: int, layers: int, bundles=None, inner_hub=None, outer_hub=None,
                 omit=(), paths=None) -> PlanarDiagram:
    return diagram_from_plane_graph(*cylinder_grid(cycle, layers, bundles, inner_hub, outer_hub, omit, paths))


_GRID70_OMIT = frozenset({18, 23, 56, 70, 73})


def special_alternating_70() -> PlanarDiagram:
    """Special alternating knot diagram with 70 crossings and 70 twist regions.

    A 10 x 4 cylinder grid with an inner hub and five edges removed; every
    twist region is a single crossing, so d = 1/70.
    """
    return _positive(grid_diagram(10, 4, inner_hub=0, omit=_GRID70_OMIT))


def dense_special_alternating(m: int = 401, *, coherent: bool = True) -> PlanarDiagram:
    """The 70-region diagram with one crossing grown into a twist region of m.

    Parallel edges in the checkerboard graph give a coherent region, a
    subdivided edge an incoherent one.  m must be odd to keep one component.
    """
    if m < 1 or m % 2 == 0:
        raise ValueError("m must be a positive odd integer")
    extra = {"bundles": {0: m}} if coherent else {"paths": {0: m}}
    return _positive(grid_diagram(10, 4, inner_hub=0, omit=_GRID70_OMIT, **extra))


_GRID160_OMIT = frozenset({14, 19, 27, 37, 42, 86, 91, 96, 123, 128, 129})
_GRID160_TRIPLES = (0, 6, 12, 20, 26, 33, 40, 47, 53, 59, 65, 71, 77, 83, 90, 98, 104, 110, 116, 122)


def alternating_knot_160() -> PlanarDiagram:
    """Reduced, twist-reduced alternating knot diagram: c = 160, tw = 120."""
    return grid_diagram(13, 5, inner_hub=0, outer_hub=0, omit=_GRID160_OMIT,
                        bundles={e: 3 for e in _GRID160_TRIPLES})


def coherent_twist_knot(m: int) -> PlanarDiagram:
    """7 x 2 grid with one edge replaced by a coherent twist region of m crossings.

    c = m + 20; with m = 45 the region has density 9/13 > 2/3.
    """
    if m < 1 or m % 2 == 0:
        raise ValueError("m must be a positive odd integer")
    return grid_diagram(7, 2, bundles={14: m})


def torus_slope_pairs(p: int, m: int):
    """The two surgery slopes on T(2, p) conjectured to be chirally cosmetic."""
    from fractions import Fraction

    if p < 3 or p % 2 == 0:
        raise ValueError("p must be odd and at least 3")
    num = 2 * p * p * (2 * m + 1)
    d1 = p * (2 * m + 1) + 1
    d2 = p * (2 * m + 1) - 1
    if d1 == 0 or d2 == 0:
        raise DegenerateDenominator("slope denominator vanishes")
    return Fraction(num, d1), Fraction(num, d2)
