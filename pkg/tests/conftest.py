from __future__ import annotations

import itertools
import random

from walled_tangles.tangle import (
    DOWN,
    UP,
    Connector,
    Cross,
    Hand,
    Max,
    Min,
    Sweep,
    TangleType,
    TangleWord,
    all_down_type,
    apply_slice,
    start_vertices,
)


def random_word(
    rng: random.Random,
    top: tuple | None = None,
    max_boundary: int = 3,
    max_width: int = 5,
    max_crossings: int = 5,
    max_slices: int = 8,
) -> TangleWord:
    """A random valid tangle word, built forward one admissible slice at a
    time.  The bottom boundary is whatever level the walk ends at."""
    if top is None:
        top = tuple(rng.choice((DOWN, UP)) for _ in range(rng.randint(0, max_boundary)))
    level = top
    slices = []
    crossings = 0
    for _ in range(rng.randint(0, max_slices)):
        w = len(level)
        choices = []
        if crossings < max_crossings:
            for p in range(1, w):
                for hand in (Hand.FIRST_OVER, Hand.FIRST_UNDER):
                    choices.append(Cross(p, hand))
        for p in range(1, w):
            if level[p - 1] is not level[p]:
                choices.append(Min(p))
        if w + 2 <= max_width:
            for p in range(1, w + 2):
                for sweep in (Sweep.LEFT_TO_RIGHT, Sweep.RIGHT_TO_LEFT):
                    choices.append(Max(p, sweep))
        if not choices:
            break
        s = rng.choice(choices)
        if isinstance(s, Cross):
            crossings += 1
        level = apply_slice(level, s)
        slices.append(s)
    return TangleWord(TangleType(top, level), slices)


def random_word_pair(rng: random.Random, **kwargs) -> tuple[TangleWord, TangleWord]:
    """Two stackable words: the second starts where the first ends."""
    upper = random_word(rng, **kwargs)
    lower = random_word(rng, top=upper.ty.bottom, **{k: v for k, v in kwargs.items() if k != "top"})
    return upper, lower


def permutation_words(m: int) -> dict:
    """One positive braid word per permutation, keyed by its one-line form."""
    ty = all_down_type(m)
    out = {}
    for perm in itertools.permutations(range(1, m + 1)):
        values = list(perm)
        slices = []
        for limit in range(m - 1, 0, -1):
            for pos in range(limit):
                if values[pos] > values[pos + 1]:
                    values[pos], values[pos + 1] = values[pos + 1], values[pos]
                    slices.append(Cross(pos + 1, Hand.FIRST_OVER))
        out[perm] = TangleWord(ty, slices)
    return out


def compose_brauer(c1: Connector, c2: Connector) -> tuple[Connector, int]:
    """Compose two matchings of the same walled type by path following.

    The bottom row of the first is glued to the top row of the second;
    open paths give the edges of the composite and closed paths are counted
    as loops.  No skein machinery is involved.
    """
    assert c1.ty == c2.ty

    def relabel(edge, layer):
        out = []
        for side, pos in edge:
            if layer == 1:
                out.append(("A", pos) if side == "T" else ("M", pos))
            else:
                out.append(("M", pos) if side == "T" else ("C", pos))
        return tuple(out)

    partner = {1: {}, 2: {}}
    for layer, conn in ((1, c1), (2, c2)):
        for edge in conn.edges:
            a, b = relabel(edge, layer)
            partner[layer][a] = b
            partner[layer][b] = a

    def walk(vertex, layer):
        seen = []
        while True:
            vertex = partner[layer][vertex]
            seen.append(vertex)
            if vertex[0] != "M":
                return vertex, seen
            layer = 3 - layer

    visited = set()
    composite = {}
    for tier, layer in (("A", 1), ("C", 2)):
        for pos in range(1, len(c1.ty.top) + 1):
            end, seen = walk((tier, pos), layer)
            visited.update(v for v in seen if v[0] == "M")
            composite[(tier, pos)] = end

    loops = 0
    middles = {v for v in partner[1] if v[0] == "M"}
    while middles - visited:
        start = min(middles - visited)
        vertex, layer = start, 1
        while True:
            vertex = partner[layer][vertex]
            visited.add(vertex)
            layer = 3 - layer
            if vertex == start:
                break
        loops += 1

    def outer(vertex):
        tier, pos = vertex
        return ("T", pos) if tier == "A" else ("B", pos)

    edges = []
    for start in start_vertices(c1.ty):
        side, pos = start
        tier = "A" if side == "T" else "C"
        edges.append((start, outer(composite[(tier, pos)])))
    return Connector(c1.ty, edges), loops
