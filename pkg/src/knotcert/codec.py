"""Text codecs for knot diagrams: PD codes, signed Gauss codes, DT codes and
the JSON-lines corpus format.

PD convention: each ``X[a,b,c,d]`` lists the four arc labels met going
counterclockwise around the crossing, starting with the incoming under-strand.
So ``a -> c`` is the under-strand and the over-strand runs ``d -> b`` on a
positive crossing and ``b -> d`` on a negative one.
"""
from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from typing import Iterator

from .errors import (
    DisconnectedTrace,
    LabelCountError,
    MalformedToken,
    NonPlanarInput,
    NotAKnot,
    ResourceLimit,
)

Crossing = tuple[int, int, int, int]

_PD_ENTRY = re.compile(r"X\[\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\]")
_PD_ANY = re.compile(r"X\[[^\]]*\]")
_GAUSS_TOKEN = re.compile(r"([OU])(\d+)([+-])")


@dataclass(frozen=True)
class PdCode:
    """Crossing list in the counterclockwise-from-incoming-under convention.

    Instances built by :func:`parse_pd` / :func:`canonical_pd` carry
    consecutive labels ``1..2c`` numbered along each component.
    """

    crossings: tuple[Crossing, ...] = ()

    @property
    def c(self) -> int:
        return len(self.crossings)

    def __len__(self) -> int:
        return len(self.crossings)


@dataclass(frozen=True)
class GaussCode:
    """Signed Gauss code: tokens ``(kind, crossing id, sign)`` along the knot."""

    tokens: tuple[tuple[str, int, int], ...] = ()

    def __str__(self) -> str:
        return serialize_gauss(self)


@dataclass(frozen=True)
class CorpusRecord:
    name: str
    pd: PdCode
    expected: dict = field(default_factory=dict, compare=False)
    line: int = 0


@dataclass(frozen=True)
class CorpusError:
    """A corpus line that could not be turned into a record."""

    line: int
    message: str
    name: str | None = None


# ---------------------------------------------------------------- PD codes


def _slots(crossings) -> dict[int, list[tuple[int, int]]]:
    where: dict[int, list[tuple[int, int]]] = {}
    for i, x in enumerate(crossings):
        for p, label in enumerate(x):
            where.setdefault(label, []).append((i, p))
    return where


def over_directions(crossings) -> list[bool]:
    """For each crossing, True when the over-strand runs from slot 3 to slot 1.

    Under-strands are oriented by the convention; over-strands are oriented by
    propagating "every arc leaves one crossing and enters another" along the
    strands.  Components that never pass under anything are oriented so that
    labels increase.
    """
    crossings = list(crossings)
    where = _slots(crossings)
    for label, slots in where.items():
        if len(slots) != 2:
            raise LabelCountError(f"arc label {label} used {len(slots)} times, expected 2")
    # slot direction: +1 = arc enters the crossing here, -1 = leaves
    direction: dict[tuple[int, int], int] = {}
    forward: list[bool | None] = [None] * len(crossings)
    stack: list[tuple[int, int]] = []

    def assign(slot, d):
        old = direction.get(slot)
        if old is not None:
            if old != d:
                label = crossings[slot[0]][slot[1]]
                raise DisconnectedTrace(f"inconsistent strand orientation on arc {label}")
            return
        direction[slot] = d
        stack.append(slot)
        i, p = slot
        if p in (1, 3) and forward[i] is None:
            # slot 3 entering <=> forward
            forward[i] = (p == 3) == (d == 1)
            other = (i, 4 - p)
            assign(other, -d)

    def drain():
        while stack:
            i, p = stack.pop()
            label = crossings[i][p]
            a, b = where[label]
            other = b if a == (i, p) else a
            assign(other, -direction[(i, p)])

    for i in range(len(crossings)):
        assign((i, 0), 1)
        assign((i, 2), -1)
    drain()
    for i, x in enumerate(crossings):
        if forward[i] is None:
            b, d = x[1], x[3]
            fwd = not (d == b + 1)
            assign((i, 3), 1 if fwd else -1)
            drain()
    return [bool(f) for f in forward]


def trace_components(crossings) -> list[list[int]]:
    """Arc labels of each component in orientation order.

    Each component starts at its smallest label; components are ordered by
    that label.
    """
    crossings = list(crossings)
    if not crossings:
        return []
    fwd = over_directions(crossings)
    nxt: dict[int, int] = {}
    for i, (a, b, c, d) in enumerate(crossings):
        nxt[a] = c
        if fwd[i]:
            nxt[d] = b
        else:
            nxt[b] = d
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


def _check_connected(crossings) -> None:
    n = len(crossings)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for label, slots in _slots(crossings).items():
        (i, _), (j, _) = slots
        parent[find(i)] = find(j)
    if len({find(i) for i in range(n)}) > 1:
        raise DisconnectedTrace("diagram is split: crossing graph is disconnected")


def canonical_pd(crossings) -> PdCode:
    """Validate a crossing list and renumber arcs ``1..2c`` along the components."""
    crossings = [tuple(int(v) for v in x) for x in crossings]
    for x in crossings:
        if len(x) != 4:
            raise MalformedToken(f"crossing {x} does not have 4 labels")
    if not crossings:
        return PdCode(())
    comps = trace_components(crossings)
    _check_connected(crossings)
    relabel = {}
    for comp in comps:
        for arc in comp:
            relabel[arc] = len(relabel) + 1
    return PdCode(tuple(tuple(relabel[v] for v in x) for x in crossings))


def parse_pd(text: str) -> PdCode:
    """Parse whitespace separated ``X[a,b,c,d]`` entries into a canonical PdCode."""
    crossings = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _PD_ENTRY.match(text, pos)
        if m is None:
            bad = _PD_ANY.match(text, pos)
            if bad is not None:
                raise MalformedToken(f"crossing entry {bad.group(0)!r} needs exactly 4 labels", pos)
            raise MalformedToken(f"unexpected text {text[pos:pos + 12]!r}", pos)
        labels = tuple(int(g) for g in m.groups())
        if min(labels) < 1:
            raise MalformedToken("arc labels must be positive integers", pos)
        crossings.append(labels)
        pos = m.end()
    return canonical_pd(crossings)


def serialize_pd(pd: PdCode) -> str:
    return " ".join("X[{},{},{},{}]".format(*x) for x in pd.crossings)


def crossing_signs(crossings) -> list[int]:
    return [1 if f else -1 for f in over_directions(crossings)]


def face_cycles(crossings) -> list[list[tuple[int, int]]]:
    """Faces of the projection as cycles of (crossing, slot) corners.

    The corner ``(i, p)`` is the face wedge between slots ``p`` and ``p+1``
    (counterclockwise) at crossing ``i``.
    """
    where = _slots(crossings)
    seen = set()
    faces = []
    for i in range(len(crossings)):
        for p in range(4):
            if (i, p) in seen:
                continue
            face = []
            cur = (i, p)
            while cur not in seen:
                seen.add(cur)
                face.append(cur)
                # leave along slot p+1 with the face on the right; on arrival
                # at slot r the face is the wedge between r and r+1
                j, q = cur
                out = (j, (q + 1) % 4)
                a, b = where[crossings[j][(q + 1) % 4]]
                cur = b if a == out else a
            faces.append(face)
    return faces


def is_planar(crossings) -> bool:
    if not crossings:
        return True
    return len(face_cycles(crossings)) == len(crossings) + 2


# ------------------------------------------------------------- Gauss codes


def parse_gauss(text: str) -> GaussCode:
    tokens = []
    pos = 0
    for raw in text.split():
        m = _GAUSS_TOKEN.fullmatch(raw)
        if m is None:
            raise MalformedToken(f"bad Gauss token {raw!r}", text.index(raw, pos))
        pos = text.index(raw, pos) + len(raw)
        tokens.append((m.group(1), int(m.group(2)), 1 if m.group(3) == "+" else -1))
    g = GaussCode(tuple(tokens))
    _validate_gauss(g)
    return g


def serialize_gauss(g: GaussCode) -> str:
    return " ".join(f"{k}{i}{'+' if s > 0 else '-'}" for k, i, s in g.tokens)


def _validate_gauss(g: GaussCode) -> None:
    seen: dict[int, dict[str, int]] = {}
    for kind, cid, sign in g.tokens:
        entry = seen.setdefault(cid, {})
        if kind in entry:
            raise LabelCountError(f"crossing {cid} appears twice as {kind}")
        entry[kind] = sign
    for cid, entry in seen.items():
        if set(entry) != {"O", "U"}:
            raise LabelCountError(f"crossing {cid} needs one O and one U token")
        if entry["O"] != entry["U"]:
            raise LabelCountError(f"crossing {cid} has inconsistent signs")


def pd_to_gauss(pd: PdCode) -> GaussCode:
    """Walk the knot from arc 1 and record each crossing passage."""
    crossings = list(pd.crossings)
    if not crossings:
        return GaussCode(())
    comps = trace_components(crossings)
    if len(comps) != 1:
        raise NotAKnot(f"diagram has {len(comps)} components")
    signs = crossing_signs(crossings)
    fwd = [s > 0 for s in signs]
    enters: dict[int, tuple[int, str]] = {}
    for i, (a, b, c, d) in enumerate(crossings):
        enters[a] = (i, "U")
        enters[d if fwd[i] else b] = (i, "O")
    ids: dict[int, int] = {}
    tokens = []
    for arc in comps[0]:
        i, kind = enters[arc]
        cid = ids.setdefault(i, len(ids) + 1)
        tokens.append((kind, cid, signs[i]))
    return GaussCode(tuple(tokens))


def _gauss_crossings(tokens) -> list[Crossing]:
    n = len(tokens)
    by_id: dict[int, dict[str, int]] = {}
    for t, (kind, cid, _) in enumerate(tokens):
        by_id.setdefault(cid, {})[kind] = t
    sign_of = {cid: s for _, cid, s in tokens}
    arc_in = lambda t: t % n + 1  # noqa: E731
    arc_out = lambda t: (t + 1) % n + 1  # noqa: E731
    out = []
    for cid in sorted(by_id):
        u, o = by_id[cid]["U"], by_id[cid]["O"]
        if sign_of[cid] > 0:
            out.append((arc_in(u), arc_out(o), arc_out(u), arc_in(o)))
        else:
            out.append((arc_in(u), arc_in(o), arc_out(u), arc_out(o)))
    return out


def gauss_to_pd(g: GaussCode) -> PdCode:
    """Inverse of :func:`pd_to_gauss` (crossings ordered by Gauss id)."""
    _validate_gauss(g)
    if not g.tokens:
        return PdCode(())
    crossings = _gauss_crossings(g.tokens)
    if not is_planar(crossings):
        raise NonPlanarInput("signed Gauss code has no planar realisation")
    return canonical_pd(crossings)


# ---------------------------------------------------------------- DT codes


def parse_dt(text: str, max_crossings: int = 16) -> PdCode:
    """DT code of a knot (even labels paired with 1, 3, 5, ...).

    A positive even entry means the odd-numbered passage is the over-strand.
    The planar embedding is found by searching crossing orientations, so the
    cost grows like ``2**c``; the diagram is returned up to mirror image.
    """
    cleaned = text.strip().strip("[]()")
    try:
        evens = [int(v) for v in re.split(r"[\s,]+", cleaned) if v]
    except ValueError as exc:
        raise MalformedToken(f"bad DT code {text!r}") from exc
    n = len(evens)
    if n == 0:
        return PdCode(())
    if sorted(abs(e) for e in evens) != list(range(2, 2 * n + 1, 2)):
        raise LabelCountError("DT code must use each even number 2..2n exactly once")
    if n > max_crossings:
        raise ResourceLimit(f"DT embedding search limited to {max_crossings} crossings")
    visit_kind: dict[int, tuple[int, str]] = {}
    for i, e in enumerate(evens):
        odd = 2 * i + 1
        odd_over = e > 0
        visit_kind[odd] = (i + 1, "O" if odd_over else "U")
        visit_kind[abs(e)] = (i + 1, "U" if odd_over else "O")
    order = [visit_kind[k] for k in range(1, 2 * n + 1)]
    for rest in itertools.product((1, -1), repeat=n - 1):
        signs = (1,) + rest
        tokens = tuple((kind, cid, signs[cid - 1]) for cid, kind in order)
        crossings = _gauss_crossings(tokens)
        if is_planar(crossings):
            return canonical_pd(crossings)
    raise NonPlanarInput("DT code is not realisable by a planar diagram")


# ------------------------------------------------------------------ corpus


def parse_record(obj: dict, line: int = 0) -> CorpusRecord:
    if not isinstance(obj, dict) or "name" not in obj or "pd" not in obj:
        raise MalformedToken("record needs 'name' and 'pd' fields")
    pd = canonical_pd(obj["pd"])
    expected = {k: v for k, v in obj.items() if k not in ("name", "pd")}
    return CorpusRecord(str(obj["name"]), pd, expected, line)


def read_corpus(path) -> Iterator[CorpusRecord | CorpusError]:
    """Stream records from a JSON-lines file.

    Bad lines come through as :class:`CorpusError` items so callers can
    report them and keep going.
    """
    with open(path, encoding="utf-8") as fh:
        yield from parse_corpus_lines(fh)


def parse_corpus_lines(lines) -> Iterator[CorpusRecord | CorpusError]:
    """Like :func:`read_corpus`, over any iterable of lines."""
    for lineno, raw in enumerate(lines, start=1):
        if not raw.strip():
            continue
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError as exc:
            yield CorpusError(lineno, f"malformed JSON: {exc.msg}")
            continue
        try:
            yield parse_record(obj, lineno)
        except (ValueError, KeyError, TypeError) as exc:
            name = obj.get("name") if isinstance(obj, dict) else None
            yield CorpusError(lineno, f"{type(exc).__name__}: {exc}", name)


def record_to_json(rec: CorpusRecord) -> str:
    obj = {"name": rec.name, "pd": [list(x) for x in rec.pd.crossings]}
    obj.update(rec.expected)
    return json.dumps(obj, separators=(",", ":"))
