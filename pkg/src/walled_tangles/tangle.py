"""Oriented tangle diagrams in a rectangle, presented as slice words.

A diagram lives in a rectangle with labelled boundary points on the top and
bottom edge, each carrying an orientation: DOWN means the strand runs
downward through that point, UP means upward.  The diagram itself is stored
as a word of elementary slices read top to bottom:

* ``Cross(p, hand)``   -- the strands at positions p, p+1 cross once,
* ``Min(p)``           -- a valley joining positions p, p+1 (two points gone),
* ``Max(p, sweep)``    -- a peak creating two new points at positions p, p+1.

Positions are 1-based within the current horizontal level.  A strand starts
at a top DOWN point or a bottom UP point and ends at a top UP point or a
bottom DOWN point; closed loops are allowed and arise from Max/Min pairs.

This module knows nothing about coefficients: it provides the combinatorial
layer (validation, strand tracing, connectors, canonical diagram for a
connector, and the textual word syntax) that the skein and matrix layers
build on.
"""

from __future__ import annotations

import dataclasses
import enum
import functools
import itertools
import re
from typing import Iterable, Sequence, Union


class Orientation(enum.Enum):
    """Direction a strand travels through a boundary point or level slot."""

    DOWN = "v"
    UP = "^"

    def flipped(self) -> Orientation:
        return Orientation.UP if self is Orientation.DOWN else Orientation.DOWN

    def __repr__(self) -> str:
        return self.name


class Hand(enum.Enum):
    """Which strand of a crossing passes over.

    FIRST_OVER means the arc entering the crossing from the upper-left slot
    (position p above, leaving at position p+1 below) is the over strand;
    FIRST_UNDER means that arc passes under instead.
    """

    FIRST_OVER = "+"
    FIRST_UNDER = "-"

    def flipped(self) -> Hand:
        return Hand.FIRST_UNDER if self is Hand.FIRST_OVER else Hand.FIRST_OVER

    def __repr__(self) -> str:
        return self.name


class Sweep(enum.Enum):
    """Travel direction over a peak: which way the strand sweeps across."""

    LEFT_TO_RIGHT = ">"
    RIGHT_TO_LEFT = "<"

    def __repr__(self) -> str:
        return self.name


DOWN = Orientation.DOWN
UP = Orientation.UP


@dataclasses.dataclass(frozen=True)
class Cross:
    pos: int
    hand: Hand


@dataclasses.dataclass(frozen=True)
class Min:
    pos: int


@dataclasses.dataclass(frozen=True)
class Max:
    pos: int
    sweep: Sweep


Slice = Union[Cross, Min, Max]

#: A peak traversed left to right rises on the left and descends on the
#: right, so the created slots read (UP, DOWN); right to left is the mirror.
_MAX_CREATES = {
    Sweep.LEFT_TO_RIGHT: (UP, DOWN),
    Sweep.RIGHT_TO_LEFT: (DOWN, UP),
}


@dataclasses.dataclass(frozen=True)
class TangleType:
    """Boundary data: orientations of the top and bottom points."""

    top: tuple[Orientation, ...]
    bottom: tuple[Orientation, ...]

    def __post_init__(self) -> None:
        for half in (self.top, self.bottom):
            if not all(isinstance(o, Orientation) for o in half):
                raise TypeError("boundary halves must contain Orientation values")

    def is_balanced(self) -> bool:
        """True when the type admits tangles at all: the number of strand
        starts (top DOWN plus bottom UP) matches the number of ends."""
        starts = self.top.count(DOWN) + self.bottom.count(UP)
        ends = self.top.count(UP) + self.bottom.count(DOWN)
        return starts == ends

    def __str__(self) -> str:
        return render_type(self)


def algebra_type(r: int, s: int) -> TangleType:
    """The walled type with r DOWN then s UP points on both edges.

    >>> str(algebra_type(2, 1))
    'vv^|vv^'
    """
    if r < 0 or s < 0:
        raise ValueError("strand counts must be nonnegative")
    half = (DOWN,) * r + (UP,) * s
    return TangleType(half, half)


def all_down_type(m: int) -> TangleType:
    """The type with m DOWN points on both edges (the braid-like case)."""
    return algebra_type(m, 0)


class SliceError(ValueError):
    """A slice that does not fit the level it is applied to."""

    def __init__(self, index: int, message: str):
        super().__init__(f"slice {index}: {message}")
        self.index = index
        self.message = message


def apply_slice(level: tuple[Orientation, ...], s: Slice, index: int = 0) -> tuple[Orientation, ...]:
    """The level below slice ``s`` given the level above it."""
    w = len(level)
    if isinstance(s, Cross):
        if not 1 <= s.pos <= w - 1:
            raise SliceError(index, f"crossing position {s.pos} needs width >= {s.pos + 1}, level has {w}")
        out = list(level)
        out[s.pos - 1], out[s.pos] = out[s.pos], out[s.pos - 1]
        return tuple(out)
    if isinstance(s, Min):
        if not 1 <= s.pos <= w - 1:
            raise SliceError(index, f"valley position {s.pos} needs width >= {s.pos + 1}, level has {w}")
        a, b = level[s.pos - 1], level[s.pos]
        if a is b:
            raise SliceError(index, f"valley at {s.pos} needs opposite orientations, got ({a.value}, {b.value})")
        return level[: s.pos - 1] + level[s.pos + 1 :]
    if isinstance(s, Max):
        if not 1 <= s.pos <= w + 1:
            raise SliceError(index, f"peak position {s.pos} out of range for width {w}")
        return level[: s.pos - 1] + _MAX_CREATES[s.sweep] + level[s.pos - 1 :]
    raise TypeError(f"not a slice: {s!r}")


@dataclasses.dataclass(init=False, eq=True, unsafe_hash=True)
class TangleWord:
    """A validated slice word together with its boundary type.

    Construction simulates the word level by level and rejects any slice
    that does not fit, or a final level that disagrees with the declared
    bottom boundary.
    """

    ty: TangleType
    slices: tuple[Slice, ...]

    def __init__(self, ty: TangleType, slices: Iterable[Slice]):
        slices = tuple(slices)
        level = ty.top
        levels = [level]
        for i, s in enumerate(slices):
            level = apply_slice(level, s, i)
            levels.append(level)
        if level != ty.bottom:
            raise SliceError(
                len(slices),
                f"word ends at level {''.join(o.value for o in level)} "
                f"but the type bottom is {''.join(o.value for o in ty.bottom)}",
            )
        self.ty = ty
        self.slices = slices
        self._levels = tuple(levels)

    @property
    def levels(self) -> tuple[tuple[Orientation, ...], ...]:
        """Levels between slices: levels[i] is the level above slices[i],
        levels[-1] is the bottom boundary."""
        return self._levels

    def replace_slice(self, index: int, replacement: Sequence[Slice]) -> TangleWord:
        """A new word with slices[index] substituted by the given slices."""
        return TangleWord(self.ty, self.slices[:index] + tuple(replacement) + self.slices[index + 1 :])

    def with_hand(self, index: int, hand: Hand) -> TangleWord:
        s = self.slices[index]
        if not isinstance(s, Cross):
            raise ValueError(f"slice {index} is not a crossing")
        return self.replace_slice(index, (Cross(s.pos, hand),))

    def __str__(self) -> str:
        return f"{render_type(self.ty)} : {render_word(self)}"


def stack(upper: TangleWord, lower: TangleWord) -> TangleWord:
    """Vertical composition: ``upper`` drawn above ``lower``.

    >>> w = TangleWord(all_down_type(2), [Cross(1, Hand.FIRST_OVER)])
    >>> len(stack(w, w).slices)
    2
    """
    if upper.ty.bottom != lower.ty.top:
        raise ValueError("cannot stack: boundary mismatch between upper bottom and lower top")
    return TangleWord(TangleType(upper.ty.top, lower.ty.bottom), upper.slices + lower.slices)


def shifted_slices(slices: Iterable[Slice], offset: int) -> tuple[Slice, ...]:
    """The same slices with every position moved right by ``offset``."""
    out: list[Slice] = []
    for s in slices:
        if isinstance(s, Cross):
            out.append(Cross(s.pos + offset, s.hand))
        elif isinstance(s, Min):
            out.append(Min(s.pos + offset))
        else:
            out.append(Max(s.pos + offset, s.sweep))
    return tuple(out)


# -- boundary vertices and connectors ----------------------------------------

#: A boundary vertex: ("T", k) or ("B", k) with 1-based position k.
Vertex = tuple[str, int]


def vertex_name(v: Vertex) -> str:
    """
    >>> vertex_name(("T", 3))
    'T3'
    """
    return f"{v[0]}{v[1]}"


def parse_vertex(name: str) -> Vertex:
    """
    >>> parse_vertex("B12")
    ('B', 12)
    """
    m = re.fullmatch(r"([TB])([0-9]+)", name)
    if not m:
        raise ValueError(f"not a boundary vertex name: {name!r}")
    return (m.group(1), int(m.group(2)))


def _vertex_key(v: Vertex) -> tuple[int, int]:
    return (0 if v[0] == "T" else 1, v[1])


def start_vertices(ty: TangleType) -> tuple[Vertex, ...]:
    """Strand starts in canonical order: top left-to-right, then bottom."""
    tops = tuple(("T", k) for k, o in enumerate(ty.top, 1) if o is DOWN)
    bots = tuple(("B", k) for k, o in enumerate(ty.bottom, 1) if o is UP)
    return tops + bots


def end_vertices(ty: TangleType) -> tuple[Vertex, ...]:
    """Strand ends in canonical order: top left-to-right, then bottom."""
    tops = tuple(("T", k) for k, o in enumerate(ty.top, 1) if o is UP)
    bots = tuple(("B", k) for k, o in enumerate(ty.bottom, 1) if o is DOWN)
    return tops + bots


@dataclasses.dataclass(init=False, eq=True, unsafe_hash=True)
class Connector:
    """The matching of boundary vertices cut out by a diagram's open strands.

    Edges run from a start vertex to an end vertex and are kept sorted by
    the canonical order of their starts, so equal matchings compare equal.
    """

    ty: TangleType
    edges: tuple[tuple[Vertex, Vertex], ...]

    def __init__(self, ty: TangleType, edges: Iterable[tuple[Vertex, Vertex]]):
        edges = tuple(sorted(edges, key=lambda e: _vertex_key(e[0])))
        starts = start_vertices(ty)
        ends = end_vertices(ty)
        if len(starts) != len(ends):
            raise ValueError(f"type {render_type(ty)} is unbalanced: {len(starts)} starts, {len(ends)} ends")
        if tuple(e[0] for e in edges) != starts:
            raise ValueError("edges must cover each start vertex exactly once")
        if sorted(e[1] for e in edges) != sorted(ends):
            raise ValueError("edges must cover each end vertex exactly once")
        self.ty = ty
        self.edges = edges

    def end_of(self, start: Vertex) -> Vertex:
        for s, e in self.edges:
            if s == start:
                return e
        raise KeyError(start)

    def is_totally_propagating(self) -> bool:
        """True when every strand joins the top edge to the bottom edge."""
        return all(s[0] != e[0] for s, e in self.edges)

    def __str__(self) -> str:
        pairs = ",".join(f"{vertex_name(s)}-{vertex_name(e)}" for s, e in self.edges)
        return f"{render_type(self.ty)} : {pairs}"


def enumerate_connectors(ty: TangleType) -> list[Connector]:
    """All matchings of starts to ends, in lexicographic end order.

    >>> len(enumerate_connectors(algebra_type(1, 1)))
    2
    """
    starts = start_vertices(ty)
    ends = end_vertices(ty)
    if len(starts) != len(ends):
        raise ValueError(f"type {render_type(ty)} is unbalanced")
    return [Connector(ty, zip(starts, perm)) for perm in itertools.permutations(ends)]


# -- strand tracing -----------------------------------------------------------

#: Travel direction vectors (x right, y up) for the two arcs of a crossing,
#: keyed by the orientation of the arc's upper end.  Arc A runs upper-left to
#: lower-right, arc B upper-right to lower-left.
_DIR_A = {DOWN: (1, -1), UP: (-1, 1)}
_DIR_B = {DOWN: (-1, -1), UP: (1, 1)}


def crossing_sign(entry: tuple[Orientation, Orientation], hand: Hand) -> int:
    """Writhe sign: +1 when (over direction, under direction) is a positively
    oriented frame of the plane, -1 otherwise."""
    da = _DIR_A[entry[0]]
    db = _DIR_B[entry[1]]
    over, under = (da, db) if hand is Hand.FIRST_OVER else (db, da)
    det = over[0] * under[1] - over[1] * under[0]
    return 1 if det > 0 else -1


@dataclasses.dataclass(frozen=True)
class CrossingInfo:
    """One crossing of a traced diagram.

    Components are numbered with open strands first (canonical start order)
    and loops after (by creating peak); ``time_a``/``time_b`` say at which
    step of its component's traversal each arc is walked.
    """

    slice_index: int
    hand: Hand
    entry: tuple[Orientation, Orientation]
    sign: int
    component_a: int
    time_a: int
    component_b: int
    time_b: int

    @property
    def over_component(self) -> int:
        return self.component_a if self.hand is Hand.FIRST_OVER else self.component_b

    @property
    def under_component(self) -> int:
        return self.component_b if self.hand is Hand.FIRST_OVER else self.component_a

    def is_self_crossing(self) -> bool:
        return self.component_a == self.component_b


@dataclasses.dataclass(frozen=True)
class LoopInfo:
    creating_slice: int
    orientation: Orientation
    writhe: int


@dataclasses.dataclass(frozen=True)
class StrandGeometry:
    """Traced strands, loops and crossings of a tangle word."""

    word: TangleWord
    starts: tuple[Vertex, ...]
    ends: tuple[Vertex, ...]
    strand_writhes: tuple[int, ...]
    loops: tuple[LoopInfo, ...]
    crossings: tuple[CrossingInfo, ...]

    @property
    def connector(self) -> Connector:
        return Connector(self.word.ty, zip(self.starts, self.ends))

    def component_count(self) -> int:
        return len(self.starts) + len(self.loops)


@functools.cache
def strand_graph(word: TangleWord) -> StrandGeometry:
    """Trace every strand and loop of the word.

    Each edge segment between two events (boundary, crossing, valley, peak)
    gets an id; traversal follows strand orientation, flipping vertical
    direction at valleys and peaks.
    """
    counter = itertools.count()
    orient: dict[int, Orientation] = {}
    up_event: dict[int, tuple] = {}
    down_event: dict[int, tuple] = {}
    cross_at: dict[int, tuple[int, int, int, int]] = {}
    min_at: dict[int, tuple[int, int]] = {}
    max_at: dict[int, tuple[int, int]] = {}

    level: list[int] = []
    for k, o in enumerate(word.ty.top, 1):
        e = next(counter)
        orient[e] = o
        up_event[e] = ("T", k)
        level.append(e)
    top_edges = tuple(level)

    for i, s in enumerate(word.slices):
        if isinstance(s, Cross):
            a, b = level[s.pos - 1], level[s.pos]
            c, d = next(counter), next(counter)
            orient[c], orient[d] = orient[b], orient[a]
            down_event[a] = down_event[b] = ("X", i)
            up_event[c] = up_event[d] = ("X", i)
            cross_at[i] = (a, b, c, d)
            level[s.pos - 1 : s.pos + 1] = [c, d]
        elif isinstance(s, Min):
            a, b = level[s.pos - 1], level[s.pos]
            down_event[a] = down_event[b] = ("U", i)
            min_at[i] = (a, b)
            del level[s.pos - 1 : s.pos + 1]
        else:
            c, d = next(counter), next(counter)
            orient[c], orient[d] = _MAX_CREATES[s.sweep]
            up_event[c] = up_event[d] = ("N", i)
            max_at[i] = (c, d)
            level[s.pos - 1 : s.pos - 1] = [c, d]

    for k, e in enumerate(level, 1):
        down_event[e] = ("B", k)

    def crossing_partner(i: int, e: int) -> tuple[int, str]:
        a, b, c, d = cross_at[i]
        if e == a:
            return d, "A"
        if e == d:
            return a, "A"
        if e == b:
            return c, "B"
        return b, "B"

    arc_visit: dict[tuple[int, str], tuple[int, int]] = {}
    edge_component: dict[int, int] = {}

    def walk(start_edge: int, going_down: bool, component: int):
        """Follow a strand from one of its segments; returns the boundary
        vertex reached, or None when the walk closes up (a loop)."""
        e, down = start_edge, going_down
        time = 0
        while True:
            edge_component[e] = component
            event = down_event[e] if down else up_event[e]
            kind = event[0]
            if kind in ("T", "B"):
                return (kind, event[1])
            if kind == "X":
                partner, arc = crossing_partner(event[1], e)
                arc_visit[(event[1], arc)] = (component, time)
                time += 1
                e = partner
            elif kind == "U":
                a, b = min_at[event[1]]
                e = a if e == b else b
                down = not down
            else:
                c, d = max_at[event[1]]
                e = c if e == d else d
                down = not down
            if e == start_edge and (down == going_down):
                return None

    starts = start_vertices(word.ty)
    ends = []
    for comp, v in enumerate(starts):
        if v[0] == "T":
            first, going_down = top_edges[v[1] - 1], True
        else:
            first, going_down = level[v[1] - 1], False
        ends.append(walk(first, going_down, comp))

    # Remaining edges belong to closed loops.  Find each loop's earliest peak
    # (the slice that creates it), then traverse from there with orientation.
    loop_seeds = []
    seen: set[int] = set(edge_component)
    for e in sorted(orient):
        if e in seen:
            continue
        cluster = [e]
        seen.add(e)
        frontier = [e]
        while frontier:
            x = frontier.pop()
            for event in (up_event[x], down_event[x]):
                kind, idx = event
                if kind == "X":
                    nxt = crossing_partner(idx, x)[0]
                elif kind == "U":
                    a, b = min_at[idx]
                    nxt = a if x == b else b
                else:
                    c, d = max_at[idx]
                    nxt = c if x == d else d
                if nxt not in seen:
                    seen.add(nxt)
                    cluster.append(nxt)
                    frontier.append(nxt)
        creating = min(up_event[x][1] for x in cluster if up_event[x][0] == "N")
        loop_seeds.append((creating, cluster))
    loop_seeds.sort(key=lambda seed: seed[0])

    loops = []
    for li, (creating, cluster) in enumerate(loop_seeds):
        comp = len(starts) + li
        c, d = max_at[creating]
        first = c if orient[c] is DOWN else d
        closed = walk(first, True, comp)
        assert closed is None, "loop traversal must close up"
        loops.append((creating, orient[c]))

    crossings = []
    for i in sorted(cross_at):
        a, b, _, _ = cross_at[i]
        entry = (orient[a], orient[b])
        s = word.slices[i]
        comp_a, time_a = arc_visit[(i, "A")]
        comp_b, time_b = arc_visit[(i, "B")]
        crossings.append(
            CrossingInfo(
                slice_index=i,
                hand=s.hand,
                entry=entry,
                sign=crossing_sign(entry, s.hand),
                component_a=comp_a,
                time_a=time_a,
                component_b=comp_b,
                time_b=time_b,
            )
        )

    writhes = [0] * (len(starts) + len(loops))
    for c in crossings:
        if c.is_self_crossing():
            writhes[c.component_a] += c.sign

    loop_infos = tuple(
        LoopInfo(creating, tag, writhes[len(starts) + li]) for li, (creating, tag) in enumerate(loops)
    )
    return StrandGeometry(
        word=word,
        starts=starts,
        ends=tuple(ends),
        strand_writhes=tuple(writhes[: len(starts)]),
        loops=loop_infos,
        crossings=tuple(crossings),
    )


def connector_of(word: TangleWord) -> Connector:
    """The boundary matching cut out by the word's open strands."""
    return strand_graph(word).connector


# -- canonical diagram of a connector ----------------------------------------


def canonical_basis_word(connector: Connector) -> TangleWord:
    """A canonical crossing-minimal diagram for a connector.

    Layout: top-to-top strands close first (each right endpoint walks left
    to meet its partner), the remaining through strands sort themselves into
    bottom order, and bottom-to-bottom strands open last (each right
    endpoint walks right into place).  Every crossing then gets its hand
    from the rule that the strand with the earlier start passes over.
    """
    ty = connector.ty
    tokens: list[tuple] = []  # ("cap", edge_index, "L"/"R") or ("through", bottom_pos)
    caps: dict[int, tuple[int, int]] = {}
    cups: list[tuple[int, int]] = []
    tok_of_top: dict[int, tuple] = {}
    for idx, (s, e) in enumerate(connector.edges):
        if s[0] == "T" and e[0] == "T":
            caps[idx] = (min(s[1], e[1]), max(s[1], e[1]))
            tok_of_top[s[1]] = ("cap", idx)
            tok_of_top[e[1]] = ("cap", idx)
        elif s[0] == "T":
            tok_of_top[s[1]] = ("through", e[1])
        elif e[0] == "T":
            tok_of_top[e[1]] = ("through", s[1])
        else:
            lo, hi = min(s[1], e[1]), max(s[1], e[1])
            cups.append((hi, lo))
    tokens = [tok_of_top[k] for k in range(1, len(ty.top) + 1)]

    slices: list[Slice] = []

    def emit_cross(p: int) -> None:
        slices.append(Cross(p, Hand.FIRST_OVER))
        tokens[p - 1], tokens[p] = tokens[p], tokens[p - 1]

    # Close caps, always the one whose right endpoint is leftmost.
    while caps:
        best = None
        for idx in caps:
            positions = [i + 1 for i, t in enumerate(tokens) if t == ("cap", idx)]
            if best is None or positions[1] < best[1][1]:
                best = (idx, positions)
        idx, (a, b) = best
        for p in range(b - 1, a, -1):
            emit_cross(p)
        slices.append(Min(a))
        del tokens[a - 1 : a + 1]
        del caps[idx]

    # Sort through strands into the relative order of their bottom targets.
    changed = True
    while changed:
        changed = False
        for i in range(len(tokens) - 1):
            if tokens[i][1] > tokens[i + 1][1]:
                emit_cross(i + 1)
                changed = True

    # Open cups, rightmost right-endpoint first.
    for hi, lo in sorted(cups, reverse=True):
        p = sum(1 for t in tokens if t[1] < lo) + 1
        pair = (ty.bottom[lo - 1], ty.bottom[hi - 1])
        sweep = Sweep.LEFT_TO_RIGHT if pair == (UP, DOWN) else Sweep.RIGHT_TO_LEFT
        slices.append(Max(p, sweep))
        tokens[p - 1 : p - 1] = [("through", lo), ("through", hi)]
        between = sum(1 for t in tokens if lo < t[1] < hi)
        for k in range(between):
            emit_cross(p + 1 + k)

    assert [t[1] for t in tokens] == sorted(t[1] for t in tokens)
    draft = TangleWord(ty, slices)
    if not draft.slices or not any(isinstance(s, Cross) for s in draft.slices):
        return draft

    # Assign hands: at every crossing the strand with the earlier start
    # (canonical order, then earlier traversal time) passes over.  Hands do
    # not change strand paths, so one trace of the draft suffices.
    geometry = strand_graph(draft)
    fixed = list(draft.slices)
    for c in geometry.crossings:
        a_first = (c.component_a, c.time_a) < (c.component_b, c.time_b)
        fixed[c.slice_index] = Cross(draft.slices[c.slice_index].pos, Hand.FIRST_OVER if a_first else Hand.FIRST_UNDER)
    return TangleWord(ty, fixed)


# -- textual syntax -----------------------------------------------------------


class DslError(ValueError):
    """A syntax or validation error in the textual tangle language, carrying
    the character offset where it was detected."""

    def __init__(self, message: str, position: int):
        super().__init__(f"column {position + 1}: {message}")
        self.position = position
        self.message = message


def render_type(ty: TangleType) -> str:
    """
    >>> render_type(TangleType((DOWN, UP), (UP, DOWN)))
    'v^|^v'
    """
    return "".join(o.value for o in ty.top) + "|" + "".join(o.value for o in ty.bottom)


def parse_type(text: str) -> TangleType:
    """Parse a boundary type: DOWN is ``v``, UP is ``^``, halves split by
    ``|``, and a character may carry a repetition count.

    >>> parse_type("v2^|vv^") == parse_type("vv^|vv^")
    True
    """
    if text.count("|") != 1:
        raise DslError("type needs exactly one '|' separating top and bottom", text.find("|", text.find("|") + 1) if text.count("|") > 1 else len(text))
    bar = text.index("|")
    halves = []
    for base, chunk in ((0, text[:bar]), (bar + 1, text[bar + 1 :])):
        out: list[Orientation] = []
        pos = 0
        while pos < len(chunk):
            ch = chunk[pos]
            if ch.isspace():
                pos += 1
                continue
            if ch not in "v^":
                raise DslError(f"expected 'v' or '^', got {ch!r}", base + pos)
            m = re.match(r"[0-9]+", chunk[pos + 1 :])
            count = int(m.group(0)) if m else 1
            if count == 0:
                raise DslError("repetition count must be positive", base + pos + 1)
            out.extend([Orientation(ch)] * count)
            pos += 1 + (m.end() if m else 0)
        halves.append(tuple(out))
    return TangleType(halves[0], halves[1])


_TOKEN_RE = re.compile(r"(X\+|X-|S\+|S-|N>|N<|U|E)\(([0-9]+)\)")


def render_word(word: TangleWord) -> str:
    """
    >>> w = TangleWord(algebra_type(1, 1), [Min(1), Max(1, Sweep.RIGHT_TO_LEFT)])
    >>> render_word(w)
    'U(1) N<(1)'
    """
    out = []
    for s in word.slices:
        if isinstance(s, Cross):
            out.append(f"X{s.hand.value}({s.pos})")
        elif isinstance(s, Min):
            out.append(f"U({s.pos})")
        else:
            out.append(f"N{s.sweep.value}({s.pos})")
    return " ".join(out)


def parse_word(text: str, ty: TangleType) -> TangleWord:
    """Parse a slice word against a boundary type.

    Tokens: ``X+(p)``/``X-(p)`` crossings (``S+``/``S-`` are synonyms),
    ``U(p)`` valley, ``N>(p)``/``N<(p)`` peaks, and the macro ``E(p)``
    expanding to the valley-peak turnback for the two orientations at p.

    >>> parse_word("E(1)", algebra_type(1, 1)).slices
    (Min(pos=1), Max(pos=1, sweep=RIGHT_TO_LEFT))
    """
    level = ty.top
    slices: list[Slice] = []

    def extend(new_slices: Sequence[Slice], offset: int) -> None:
        nonlocal level
        for s in new_slices:
            try:
                level = apply_slice(level, s, len(slices))
            except SliceError as err:
                raise DslError(err.message, offset) from None
            slices.append(s)

    for m in re.finditer(r"\S+", text):
        token, offset = m.group(0), m.start()
        tm = _TOKEN_RE.fullmatch(token)
        if not tm:
            raise DslError(f"unrecognized token {token!r}", offset)
        name, pos = tm.group(1), int(tm.group(2))
        if name in ("X+", "S+"):
            extend([Cross(pos, Hand.FIRST_OVER)], offset)
        elif name in ("X-", "S-"):
            extend([Cross(pos, Hand.FIRST_UNDER)], offset)
        elif name == "U":
            extend([Min(pos)], offset)
        elif name == "N>":
            extend([Max(pos, Sweep.LEFT_TO_RIGHT)], offset)
        elif name == "N<":
            extend([Max(pos, Sweep.RIGHT_TO_LEFT)], offset)
        else:
            if not 1 <= pos <= len(level) - 1:
                raise DslError(f"turnback position {pos} out of range for width {len(level)}", offset)
            pair = (level[pos - 1], level[pos])
            if pair == (DOWN, UP):
                extend([Min(pos), Max(pos, Sweep.RIGHT_TO_LEFT)], offset)
            elif pair == (UP, DOWN):
                extend([Min(pos), Max(pos, Sweep.LEFT_TO_RIGHT)], offset)
            else:
                raise DslError(f"turnback needs opposite orientations, got ({pair[0].value}, {pair[1].value})", offset)

    if level != ty.bottom:
        raise DslError(
            f"word ends at level {''.join(o.value for o in level)} "
            f"but the type bottom is {''.join(o.value for o in ty.bottom)}",
            len(text),
        )
    return TangleWord(ty, slices)
