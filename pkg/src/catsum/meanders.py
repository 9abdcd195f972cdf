"""Meanders, their face structure, the associated forest and exact shape
probabilities.

A meander of size k is a single closed curve crossing the horizontal line
at the points 0..2k-1, encoded by the pair of non-crossing perfect
matchings its arcs draw above and below the line.  The bounded regions of
the picture (the faces) each own the set of unit segments [i, i+1] on
their boundary; faces and shared segments form a forest of trees with
half-edges, and the probability that the component of 0 in the arrow
percolation model has this exact shape is

    2^(1-4k) * k * prod over trees of the forest of S(T)(1/4),

an exact polynomial in 1/pi.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .algebra import PiPoly
from .engine import Engine
from .trees import PlainTree, canonical_decorate, centroid_rooted

UPPER, LOWER = "upper", "lower"


class MeanderError(ValueError):
    pass


class NotAMatching(MeanderError):
    pass


class CrossingArcs(MeanderError):
    pass


class MultipleLoops(MeanderError):
    pass


class MeanderSyntaxError(MeanderError):
    pass


Matching = tuple[tuple[int, int], ...]


def _normalize_matching(pairs, n: int, side: str) -> Matching:
    seen: set[int] = set()
    out = []
    for a, b in pairs:
        if a == b:
            raise NotAMatching(f"{side} arc {a}-{b} joins a point to itself")
        a, b = min(a, b), max(a, b)
        out.append((a, b))
        for p in (a, b):
            if not 0 <= p < n:
                raise NotAMatching(f"{side} point {p} out of range 0..{n - 1}")
            if p in seen:
                raise NotAMatching(f"{side} point {p} used twice")
            seen.add(p)
    if len(seen) != n:
        raise NotAMatching(f"{side} matching misses points {sorted(set(range(n)) - seen)}")
    for (a, b), (c, d) in combinations(out, 2):
        lo, hi = sorted([(a, b), (c, d)])
        if lo[0] < hi[0] < lo[1] < hi[1]:
            raise CrossingArcs(f"{side} arcs {lo} and {hi} cross")
    return tuple(sorted(out))


@dataclass(frozen=True)
class Meander:
    size: int
    upper: Matching
    lower: Matching

    def __post_init__(self):
        n = 2 * self.size
        object.__setattr__(self, "upper", _normalize_matching(self.upper, n, UPPER))
        object.__setattr__(self, "lower", _normalize_matching(self.lower, n, LOWER))
        if not self._single_loop():
            raise MultipleLoops("the two matchings do not form a single loop")

    def _single_loop(self) -> bool:
        up = {}
        low = {}
        for a, b in self.upper:
            up[a], up[b] = b, a
        for a, b in self.lower:
            low[a], low[b] = b, a
        point, above = 0, True
        visited = 0
        while True:
            point = up[point] if above else low[point]
            above = not above
            visited += 1
            if point == 0 and above:
                break
        return visited == 2 * self.size

    def reflected(self) -> "Meander":
        """Left-right mirror image: relabel i -> 2k-1-i."""
        n = 2 * self.size - 1
        return Meander(
            self.size,
            tuple((n - b, n - a) for a, b in self.upper),
            tuple((n - b, n - a) for a, b in self.lower),
        )


_ARC_RE = re.compile(r"^\s*(\d+)\s*-\s*(\d+)\s*$")


def _parse_side(text: str, side: str) -> list[tuple[int, int]]:
    pairs = []
    for chunk in text.split(","):
        if not chunk.strip():
            continue
        m = _ARC_RE.match(chunk)
        if not m:
            raise MeanderSyntaxError(f"bad {side} arc {chunk.strip()!r}; expected 'a-b'")
        pairs.append((int(m.group(1)), int(m.group(2))))
    if not pairs:
        raise MeanderSyntaxError(f"empty {side} matching")
    return pairs


def parse_meander(text: str) -> Meander:
    """Parse `upper: a-b, c-d, ...; lower: ...` into a validated meander."""
    parts = text.split(";")
    if len(parts) != 2:
        raise MeanderSyntaxError("expected 'upper: ...; lower: ...'")
    sides = {}
    for part in parts:
        name, _, arcs = part.partition(":")
        name = name.strip().lower()
        if name not in (UPPER, LOWER) or not _:
            raise MeanderSyntaxError(f"expected side name 'upper' or 'lower', got {name!r}")
        sides[name] = _parse_side(arcs, name)
    if set(sides) != {UPPER, LOWER}:
        raise MeanderSyntaxError("need exactly one upper and one lower matching")
    n_points = 2 * len(sides[UPPER])
    size, rem = divmod(n_points, 2)
    if rem:
        raise NotAMatching("odd number of points")
    return Meander(size, tuple(sides[UPPER]), tuple(sides[LOWER]))


def arcs_from_sequence(seq) -> Matching:
    return tuple(tuple(p) for p in seq)


@dataclass(frozen=True)
class Face:
    """A bounded region: the arc that bounds it and its segment index set.

    Segment i is [i, i+1] for 0 <= i <= 2k-2; the owning arc of segment i on
    one side of the line is the innermost arc of that side covering the
    midpoint i + 1/2.  Interior faces touch only even-indexed segments,
    exterior faces only odd-indexed ones.
    """

    side: str
    arc: tuple[int, int]
    indices: tuple[int, ...]
    interior: bool


def faces(meander: Meander) -> list[Face]:
    """One face per arc; every unit segment belongs to at most one face per side."""
    out = []
    for side, matching in ((UPPER, meander.upper), (LOWER, meander.lower)):
        owner: dict[tuple[int, int], list[int]] = {arc: [] for arc in matching}
        for i in range(2 * meander.size - 1):
            arc = _innermost_cover(matching, i)
            if arc is not None:
                owner[arc].append(i)
        for arc in matching:
            indices = tuple(owner[arc])
            assert indices, f"face of arc {arc} owns no segment"
            parities = {i % 2 for i in indices}
            assert len(parities) == 1, f"face of arc {arc} mixes parities"
            out.append(Face(side, arc, indices, interior=(indices[0] % 2 == 0)))
    uncovered = set(range(2 * meander.size - 1))
    for face in out:
        uncovered -= set(face.indices)
    assert not uncovered, f"segments {sorted(uncovered)} touch no bounded face"
    return out


def _innermost_cover(matching: Matching, segment: int):
    """The innermost arc (a,b) with a <= segment < b, or None."""
    best = None
    for a, b in matching:
        if a <= segment < b:
            if best is None or b - a < best[1] - best[0]:
                best = (a, b)
    return best


def forest(meander: Meander) -> list[PlainTree]:
    """Faces become vertices; each segment joins its two incident faces, or
    contributes a half-edge when one side of it is unbounded.

    The interior faces always form a single tree without half-edge; every
    other component carries exactly one half-edge and is rooted at its
    extremity.
    """
    all_faces = faces(meander)
    by_side_segment: dict[tuple[str, int], int] = {}
    for idx, face in enumerate(all_faces):
        for i in face.indices:
            by_side_segment[(face.side, i)] = idx

    n = len(all_faces)
    adjacency: list[list[int]] = [[] for _ in range(n)]
    half_edges = [0] * n
    for i in range(2 * meander.size - 1):
        up = by_side_segment.get((UPPER, i))
        low = by_side_segment.get((LOWER, i))
        assert up is not None or low is not None
        if up is not None and low is not None:
            adjacency[up].append(low)
            adjacency[low].append(up)
        else:
            half_edges[up if up is not None else low] += 1

    components: list[PlainTree] = []
    seen = [False] * n
    interior_components = 0
    for start in range(n):
        if seen[start]:
            continue
        comp = []
        stack = [start]
        seen[start] = True
        while stack:
            v = stack.pop()
            comp.append(v)
            for u in adjacency[v]:
                if not seen[u]:
                    seen[u] = True
                    stack.append(u)
        n_half = sum(half_edges[v] for v in comp)
        n_edges = sum(len(adjacency[v]) for v in comp) // 2
        assert n_edges == len(comp) - 1, "a component of the face graph has a cycle"
        is_interior = all_faces[comp[0]].interior
        if is_interior:
            assert n_half == 0, "interior component with a half-edge"
            assert all(all_faces[v].interior for v in comp)
            interior_components += 1
            # rooted at a canonical centroid for reproducible output
            components.append(centroid_rooted(_component_tree(adjacency, comp[0], False)))
        else:
            assert n_half == 1, "exterior component without exactly one half-edge"
            root = next(v for v in comp if half_edges[v])
            components.append(_component_tree(adjacency, root, True))
    assert interior_components == 1, "interior faces split into several trees"
    return components


def _component_tree(adjacency: list[list[int]], root: int, half_edge: bool) -> PlainTree:
    parents: list[int] = []

    def build(v: int, parent_vertex: int, parent_idx: int):
        idx = len(parents)
        parents.append(parent_idx)
        for u in adjacency[v]:
            if u != parent_vertex:
                build(u, v, idx)

    build(root, -1, -1)
    return PlainTree(tuple(parents), half_edge)


def probability(meander: Meander, engine: Engine | None = None) -> PiPoly:
    """Exact P(component of 0 has this shape) = 2^(1-4k) k prod S(T_i)(1/4)."""
    engine = engine or Engine()
    k = meander.size
    value = PiPoly.const(Fraction(2) ** (1 - 4 * k) * k)
    for tree in forest(meander):
        value = value * engine.reduce(canonical_decorate(tree)).eval_quarter()
    return value


def enumerate_meanders(k: int) -> list[Meander]:
    """All meanders of size k (pairs of non-crossing matchings forming one loop)."""
    matchings = noncrossing_matchings(2 * k)
    out = []
    for up in matchings:
        for low in matchings:
            try:
                out.append(Meander(k, up, low))
            except MultipleLoops:
                continue
    return out


def noncrossing_matchings(n: int) -> list[Matching]:
    """All non-crossing perfect matchings of 0..n-1 (Catalan(n/2) of them)."""
    if n % 2:
        return []

    def rec(points: tuple[int, ...]) -> list[tuple[tuple[int, int], ...]]:
        if not points:
            return [()]
        first = points[0]
        out = []
        for idx in range(1, len(points), 2):
            partner = points[idx]
            inside = points[1:idx]
            outside = points[idx + 1 :]
            for m1 in rec(inside):
                for m2 in rec(outside):
                    out.append(((first, partner),) + m1 + m2)
        return out

    return [tuple(sorted(m)) for m in rec(tuple(range(n)))]
