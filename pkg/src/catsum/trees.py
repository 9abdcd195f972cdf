"""Rooted plain and decorated trees, parsers and structural operations.

Trees are stored as parent arrays in preorder (index 0 is the root and
every parent precedes its children).  A decorated tree attaches to each
vertex a triple (color, relation, shift):

  color     white (+1), gray (0) or black (-1); white/black vertices carry
            a summation variable, gray ones only a condition
  relation  one of "eq", "le", "ge", "none"
  shift     a signed integer added to the right-hand side of the condition

The sum attached to a decorated tree does not depend on the order of
siblings, so the memoization key sorts children encodings recursively.
Trees are immutable; every structural edit returns a new tree.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import product

WHITE, GRAY, BLACK = 1, 0, -1

REL_EQ, REL_LE, REL_GE, REL_NONE = "eq", "le", "ge", "none"
RELATIONS = (REL_EQ, REL_LE, REL_GE, REL_NONE)

COLOR_NAMES = {WHITE: "white", GRAY: "gray", BLACK: "black"}
COLOR_VALUES = {name: value for value, name in COLOR_NAMES.items()}

_FLIP_REL = {REL_EQ: REL_EQ, REL_NONE: REL_NONE, REL_LE: REL_GE, REL_GE: REL_LE}


class TreeSyntaxError(ValueError):
    """Malformed tree text; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class TreeSchemaError(ValueError):
    """Malformed decorated-tree JSON."""


class NotHeightTwoError(ValueError):
    """The fringe subtree does not have height exactly 2."""


class NotGoodTreeError(ValueError):
    """The tree is not in the normalized (good) class."""


class PatternMismatchError(ValueError):
    """A height-2 fringe does not match any long-star pattern."""


@dataclass(frozen=True)
class Decoration:
    color: int
    rel: str
    shift: int

    def __post_init__(self):
        if self.color not in (WHITE, GRAY, BLACK):
            raise ValueError(f"invalid color {self.color}")
        if self.rel not in RELATIONS:
            raise ValueError(f"invalid relation {self.rel!r}")

    def flipped(self) -> "Decoration":
        return Decoration(-self.color, _FLIP_REL[self.rel], -self.shift)

    def __str__(self):
        return f"{COLOR_NAMES[self.color]}({self.rel},{self.shift})"


NULL_DECO_WHITE = Decoration(WHITE, REL_NONE, 0)
NULL_DECO_BLACK = Decoration(BLACK, REL_NONE, 0)


@dataclass(frozen=True)
class PlainTree:
    """Undecorated rooted tree, optionally carrying one half-edge at the root."""

    parents: tuple[int, ...]
    half_edge: bool = False

    def __post_init__(self):
        _check_parent_array(self.parents)

    def __len__(self):
        return len(self.parents)

    @cached_property
    def children(self) -> tuple[tuple[int, ...], ...]:
        return _children_of(self.parents)


@dataclass(frozen=True)
class DecoratedTree:
    parents: tuple[int, ...]
    decos: tuple[Decoration, ...]

    def __post_init__(self):
        _check_parent_array(self.parents)
        if len(self.decos) != len(self.parents):
            raise ValueError("decoration count does not match vertex count")

    def __len__(self):
        return len(self.parents)

    @cached_property
    def children(self) -> tuple[tuple[int, ...], ...]:
        return _children_of(self.parents)

    @cached_property
    def depths(self) -> tuple[int, ...]:
        out = [0] * len(self.parents)
        for v in range(1, len(self.parents)):
            out[v] = out[self.parents[v]] + 1
        return tuple(out)

    @cached_property
    def height(self) -> int:
        return max(self.depths)

    @cached_property
    def path_length(self) -> int:
        """Total path length: sum over vertices of the distance to the root."""
        return sum(self.depths)

    @cached_property
    def nongray_count(self) -> int:
        return sum(1 for d in self.decos if d.color != GRAY)

    def is_leaf(self, v: int) -> bool:
        return not self.children[v]

    def subtree(self, v: int) -> list[int]:
        """Vertices of the fringe subtree at v, in preorder."""
        out = [v]
        i = 0
        while i < len(out):
            out.extend(self.children[out[i]])
            i += 1
        return out

    def fringe_height(self, v: int) -> int:
        base = self.depths[v]
        return max(self.depths[u] for u in self.subtree(v)) - base

    def postorder(self) -> list[int]:
        out: list[int] = []

        def walk(v: int):
            for c in self.children[v]:
                walk(c)
            out.append(v)

        walk(0)
        return out

    def shift_sums(self) -> tuple[int, ...]:
        """For each vertex, the sum of the shifts over its fringe subtree."""
        out = [d.shift for d in self.decos]
        for v in reversed(range(len(self.parents))):
            if self.parents[v] >= 0:
                out[self.parents[v]] += out[v]
        return tuple(out)


def _check_parent_array(parents):
    if not parents:
        raise ValueError("a tree needs at least one vertex")
    if parents[0] != -1:
        raise ValueError("vertex 0 must be the root (parent -1)")
    for v, p in enumerate(parents):
        if v and not 0 <= p < v:
            raise ValueError(f"vertex {v} has invalid parent {p}; parents must precede children")


def _children_of(parents) -> tuple[tuple[int, ...], ...]:
    out: list[list[int]] = [[] for _ in parents]
    for v in range(1, len(parents)):
        out[parents[v]].append(v)
    return tuple(tuple(c) for c in out)


# ---------------------------------------------------------------------------
# Parsing and rendering
# ---------------------------------------------------------------------------

HALF_EDGE_PREFIX = "halfedge:"


def parse_plain(text: str) -> PlainTree:
    """Parse the grammar `tree := "(" tree* ")"`, optional `halfedge:` prefix."""
    stripped = "".join(text.split())
    half_edge = False
    offset = 0
    if stripped.startswith(HALF_EDGE_PREFIX):
        half_edge = True
        offset = len(HALF_EDGE_PREFIX)
        stripped = stripped[offset:]
    parents: list[int] = []
    stack: list[int] = []
    for i, ch in enumerate(stripped):
        if ch == "(":
            parents.append(stack[-1] if stack else -1)
            if len(parents) > 1 and not stack:
                raise TreeSyntaxError("more than one root", offset + i)
            stack.append(len(parents) - 1)
        elif ch == ")":
            if not stack:
                raise TreeSyntaxError("unmatched ')'", offset + i)
            stack.pop()
        else:
            raise TreeSyntaxError(f"unexpected character {ch!r}", offset + i)
    if stack:
        raise TreeSyntaxError("unclosed '('", offset + len(stripped))
    if not parents:
        raise TreeSyntaxError("empty tree", offset)
    return PlainTree(tuple(parents), half_edge)


def plain_to_text(tree: PlainTree) -> str:
    parts: list[str] = []

    def walk(v: int):
        parts.append("(")
        for c in tree.children[v]:
            walk(c)
        parts.append(")")

    walk(0)
    body = "".join(parts)
    return HALF_EDGE_PREFIX + body if tree.half_edge else body


def parse_decorated(data) -> DecoratedTree:
    """Validate the decorated-tree JSON schema (a string, bytes or parsed dict)."""
    if isinstance(data, (str, bytes)):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise TreeSchemaError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict) or "vertices" not in data:
        raise TreeSchemaError("expected an object with a 'vertices' array")
    vertices = data["vertices"]
    if not isinstance(vertices, list) or not vertices:
        raise TreeSchemaError("'vertices' must be a nonempty array")
    parents: list[int] = []
    decos: list[Decoration] = []
    for i, entry in enumerate(vertices):
        if not isinstance(entry, dict):
            raise TreeSchemaError(f"vertex {i} is not an object")
        try:
            parent = entry["parent"]
            color = entry["color"]
            rel = entry["rel"]
            shift = entry["k"]
        except KeyError as exc:
            raise TreeSchemaError(f"vertex {i} is missing field {exc}") from exc
        if not isinstance(parent, int):
            raise TreeSchemaError(f"vertex {i}: parent must be an integer")
        if i == 0:
            if parent != -1:
                raise TreeSchemaError("vertex 0 must have parent -1")
        elif not 0 <= parent < i:
            raise TreeSchemaError(
                f"vertex {i}: parent {parent} must be a smaller index (children after parents)"
            )
        if color not in COLOR_VALUES:
            raise TreeSchemaError(f"vertex {i}: unknown color {color!r}")
        if rel not in RELATIONS:
            raise TreeSchemaError(f"vertex {i}: unknown relation {rel!r}")
        if isinstance(shift, str):
            try:
                shift = int(shift)
            except ValueError as exc:
                raise TreeSchemaError(f"vertex {i}: k is not an integer: {shift!r}") from exc
        if not isinstance(shift, int) or isinstance(shift, bool):
            raise TreeSchemaError(f"vertex {i}: k must be an integer or decimal string")
        parents.append(parent)
        decos.append(Decoration(COLOR_VALUES[color], rel, shift))
    return DecoratedTree(tuple(parents), tuple(decos))


def decorated_to_json(tree: DecoratedTree) -> dict:
    return {
        "vertices": [
            {
                "parent": tree.parents[v],
                "color": COLOR_NAMES[tree.decos[v].color],
                "rel": tree.decos[v].rel,
                "k": str(tree.decos[v].shift),
            }
            for v in range(len(tree))
        ]
    }


# ---------------------------------------------------------------------------
# Canonical decoration, keys, involutions
# ---------------------------------------------------------------------------


def canonical_decorate(tree: PlainTree) -> DecoratedTree:
    """Proper 2-coloring by depth parity plus the standard decorations.

    The root gets ("eq", 0), or ("ge", 0) when the tree carries a half-edge;
    every other white vertex gets ("ge", 0) and every black vertex ("le", 0).
    """
    depths = [0] * len(tree)
    for v in range(1, len(tree)):
        depths[v] = depths[tree.parents[v]] + 1
    decos = []
    for v in range(len(tree)):
        color = WHITE if depths[v] % 2 == 0 else BLACK
        if v == 0:
            rel = REL_GE if tree.half_edge else REL_EQ
        else:
            rel = REL_GE if color == WHITE else REL_LE
        decos.append(Decoration(color, rel, 0))
    return DecoratedTree(tuple(tree.parents), tuple(decos))


def canonical_key(tree: DecoratedTree) -> bytes:
    """Memoization key, invariant under sibling permutation."""

    def encode(v: int) -> bytes:
        d = tree.decos[v]
        head = f"({d.color}{d.rel}{d.shift}".encode()
        kids = sorted(encode(c) for c in tree.children[v])
        return head + b"".join(kids) + b")"

    return encode(0)


def swap_colors(tree: DecoratedTree) -> DecoratedTree:
    """Exchange white and black everywhere, flipping relations and negating shifts.

    This renames the two families of summation variables into each other, so
    the associated sum is unchanged.  It is an involution.
    """
    return DecoratedTree(tree.parents, tuple(d.flipped() for d in tree.decos))


# ---------------------------------------------------------------------------
# Structural edits (all return new trees; indices refer to the input tree)
# ---------------------------------------------------------------------------


class _Node:
    __slots__ = ("deco", "kids")

    def __init__(self, deco: Decoration):
        self.deco = deco
        self.kids: list["_Node"] = []


def _to_nodes(tree: DecoratedTree) -> list[_Node]:
    nodes = [_Node(d) for d in tree.decos]
    for v in range(1, len(tree)):
        nodes[tree.parents[v]].kids.append(nodes[v])
    return nodes


def _from_node(root: _Node) -> DecoratedTree:
    parents: list[int] = []
    decos: list[Decoration] = []

    def walk(node: _Node, parent: int):
        idx = len(parents)
        parents.append(parent)
        decos.append(node.deco)
        for kid in node.kids:
            walk(kid, idx)

    walk(root, -1)
    return DecoratedTree(tuple(parents), tuple(decos))


def with_decoration(tree: DecoratedTree, v: int, deco: Decoration) -> DecoratedTree:
    decos = list(tree.decos)
    decos[v] = deco
    return DecoratedTree(tree.parents, tuple(decos))


def with_relation(tree: DecoratedTree, v: int, rel: str) -> DecoratedTree:
    d = tree.decos[v]
    return with_decoration(tree, v, Decoration(d.color, rel, d.shift))


def with_shift(tree: DecoratedTree, v: int, shift: int) -> DecoratedTree:
    d = tree.decos[v]
    return with_decoration(tree, v, Decoration(d.color, d.rel, shift))


def with_shift_added(tree: DecoratedTree, v: int, delta: int) -> DecoratedTree:
    return with_shift(tree, v, tree.decos[v].shift + delta)


def subtree_at(tree: DecoratedTree, v: int) -> DecoratedTree:
    """The fringe subtree at v as a tree of its own."""
    nodes = _to_nodes(tree)
    return _from_node(nodes[v])


def without_subtree(tree: DecoratedTree, v: int) -> DecoratedTree:
    """Remove v together with all its descendants (v must not be the root)."""
    if v == 0:
        raise ValueError("cannot remove the root subtree")
    nodes = _to_nodes(tree)
    nodes[tree.parents[v]].kids.remove(nodes[v])
    return _from_node(nodes[0])


def without_leaves(tree: DecoratedTree, leaves: tuple[int, ...]) -> DecoratedTree:
    nodes = _to_nodes(tree)
    for v in leaves:
        if nodes[v].kids:
            raise ValueError(f"vertex {v} is not a leaf")
        nodes[tree.parents[v]].kids.remove(nodes[v])
    return _from_node(nodes[0])


def with_children_reattached(tree: DecoratedTree, v: int) -> DecoratedTree:
    """Move all children of the nonroot vertex v to v's parent; v becomes a leaf."""
    if v == 0:
        raise ValueError("the root has no parent to reattach to")
    nodes = _to_nodes(tree)
    parent = nodes[tree.parents[v]]
    node = nodes[v]
    pos = parent.kids.index(node)
    parent.kids[pos + 1 : pos + 1] = node.kids
    node.kids = []
    return _from_node(nodes[0])


def with_absorbed_leaf(tree: DecoratedTree, parent: int, leaf: int) -> DecoratedTree:
    """Delete a relation-free leaf and give its color to its gray parent."""
    pd = tree.decos[parent]
    nodes = _to_nodes(tree)
    nodes[parent].kids.remove(nodes[leaf])
    nodes[parent].deco = Decoration(tree.decos[leaf].color, pd.rel, pd.shift)
    return _from_node(nodes[0])


def with_pulled_down_variable(tree: DecoratedTree, v: int, leaf: int) -> DecoratedTree:
    """Inverse of leaf absorption: v turns gray and its variable moves into a
    fresh relation-free middle vertex that adopts the given leaf child."""
    d = tree.decos[v]
    if d.color == GRAY:
        raise ValueError("vertex is already gray")
    nodes = _to_nodes(tree)
    middle = _Node(Decoration(d.color, REL_NONE, 0))
    leaf_node = nodes[leaf]
    nodes[v].kids.remove(leaf_node)
    middle.kids.append(leaf_node)
    nodes[v].kids.append(middle)
    nodes[v].deco = Decoration(GRAY, d.rel, d.shift)
    return _from_node(nodes[0])


def with_branch_colors_swapped(tree: DecoratedTree, middle: int, leaf: int) -> DecoratedTree:
    """Swap the colors of a vertex and its single child, decorations unchanged."""
    md, ld = tree.decos[middle], tree.decos[leaf]
    decos = list(tree.decos)
    decos[middle] = Decoration(ld.color, md.rel, md.shift)
    decos[leaf] = Decoration(md.color, ld.rel, ld.shift)
    return DecoratedTree(tree.parents, tuple(decos))


def with_merged_twins(
    tree: DecoratedTree, w1: int, w2: int, merged_deco: Decoration
) -> DecoratedTree:
    """Replace the twin leaves w1, w2 by a single leaf with the given decoration."""
    nodes = _to_nodes(tree)
    parent = nodes[tree.parents[w1]]
    parent.kids.remove(nodes[w2])
    nodes[w1].deco = merged_deco
    return _from_node(nodes[0])


def with_replaced_fringe(
    tree: DecoratedTree,
    v: int,
    center: Decoration,
    branches: tuple[int, int, int],
) -> DecoratedTree:
    """Replace the fringe at v by a long star: center decoration plus
    i/j/k branches whose white middles carry (ge,0)/(le,0)/(none,0) over a
    relation-free black leaf."""
    i, j, k = branches
    nodes = _to_nodes(tree)
    node = nodes[v]
    node.deco = center
    node.kids = []
    for rel, count in ((REL_GE, i), (REL_LE, j), (REL_NONE, k)):
        for _ in range(count):
            mid = _Node(Decoration(WHITE, rel, 0))
            mid.kids.append(_Node(NULL_DECO_BLACK))
            node.kids.append(mid)
    return _from_node(nodes[0])


# ---------------------------------------------------------------------------
# Goodness and long-star classification
# ---------------------------------------------------------------------------


def is_good_tree(tree: DecoratedTree) -> bool:
    """Normalized class on which only long-star reductions remain.

    (i) no nonroot vertex carries "eq"; (ii) "le"/"ge" vertices have shift 0;
    (iii) every nonroot leaf is non-gray with decoration (none, 0); (iv) no
    two same-colored leaf siblings; (v) no leaf shares its parent's color;
    (vi) no leaf has a gray parent.
    """
    for v in range(len(tree)):
        d = tree.decos[v]
        if v and d.rel == REL_EQ:
            return False
        if d.rel in (REL_LE, REL_GE) and d.shift != 0:
            return False
    for v in range(1, len(tree)):
        if tree.is_leaf(v):
            d = tree.decos[v]
            if d.color == GRAY or d.rel != REL_NONE or d.shift != 0:
                return False
            pcolor = tree.decos[tree.parents[v]].color
            if pcolor == d.color or pcolor == GRAY:
                return False
    for v in range(len(tree)):
        leaf_colors = [tree.decos[c].color for c in tree.children[v] if tree.is_leaf(c)]
        if len(leaf_colors) != len(set(leaf_colors)):
            return False
    return True


_PATTERN_KIND = {GRAY: "GrayLongStar", WHITE: "WhiteLongStar", BLACK: "BlackLongStar"}


@dataclass(frozen=True)
class LongStarPattern:
    """A height-2 fringe recognized as a long star.

    i, j, k count the branches whose middle carries (ge,0), (le,0) and
    (none,0); extra_leaf records a single leaf hanging directly off the
    center (possible only for white or black centers); middles holds, per
    branch, the (middle, leaf) vertex pair in the original indexing.
    """

    center_color: int
    i: int
    j: int
    k: int
    extra_leaf: int | None
    middles: tuple[tuple[int, int], ...]

    @property
    def kind(self) -> str:
        name = _PATTERN_KIND[self.center_color]
        return name + ("PlusLeaf" if self.extra_leaf is not None else "")

    @property
    def size(self) -> int:
        return self.i + self.j + self.k


def classify_fringe(tree: DecoratedTree, v: int) -> LongStarPattern:
    """Identify the height-2 fringe at v as a long-star pattern.

    Branch middles are counted by their relation, which is unchanged by the
    local color swap that puts the white vertex on top of each pair.
    """
    if not is_good_tree(tree):
        raise NotGoodTreeError("long-star classification requires a good tree")
    if tree.fringe_height(v) != 2:
        raise NotHeightTwoError(f"fringe at vertex {v} does not have height 2")
    counts = {REL_GE: 0, REL_LE: 0, REL_NONE: 0}
    extra_leaf = None
    middles = []
    for c in tree.children[v]:
        if tree.is_leaf(c):
            extra_leaf = c  # goodness permits at most one
            continue
        kids = tree.children[c]
        if len(kids) != 1 or not tree.is_leaf(kids[0]):
            raise PatternMismatchError(f"child {c} is not a two-vertex branch")
        d = tree.decos[c]
        if d.rel == REL_EQ or d.shift != 0:
            raise PatternMismatchError(f"branch middle {c} carries {d.rel},{d.shift}")
        counts[d.rel] += 1
        middles.append((c, kids[0]))
    if extra_leaf is not None and tree.decos[v].color == GRAY:
        raise PatternMismatchError("gray center with a direct leaf child")
    return LongStarPattern(
        tree.decos[v].color,
        counts[REL_GE],
        counts[REL_LE],
        counts[REL_NONE],
        extra_leaf,
        tuple(middles),
    )


# ---------------------------------------------------------------------------
# Enumeration of small free trees (used by the golden table and tests)
# ---------------------------------------------------------------------------


def _pruefer_to_parents(seq: tuple[int, ...], n: int) -> list[list[int]]:
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    adj: list[list[int]] = [[] for _ in range(n)]
    leaves = sorted(v for v in range(n) if degree[v] == 1)
    seq_list = list(seq)
    import heapq

    heap = leaves[:]
    heapq.heapify(heap)
    for x in seq_list:
        leaf = heapq.heappop(heap)
        adj[leaf].append(x)
        adj[x].append(leaf)
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(heap, x)
    u = heapq.heappop(heap)
    w = heapq.heappop(heap)
    adj[u].append(w)
    adj[w].append(u)
    return adj


def _rooted_encoding(adj: list[list[int]], root: int) -> str:
    def enc(v: int, parent: int) -> str:
        kids = sorted(enc(c, v) for c in adj[v] if c != parent)
        return "(" + "".join(kids) + ")"

    return enc(root, -1)


def _centroids(adj: list[list[int]], n: int) -> list[int]:
    size = [1] * n
    order: list[int] = []
    parent = [-1] * n
    stack = [0]
    seen = [False] * n
    while stack:
        v = stack.pop()
        seen[v] = True
        order.append(v)
        for u in adj[v]:
            if not seen[u]:
                parent[u] = v
                stack.append(u)
    for v in reversed(order):
        if parent[v] >= 0:
            size[parent[v]] += size[v]
    best, out = None, []
    for v in range(n):
        heaviest = max(
            [size[u] for u in adj[v] if u != parent[v]] + ([n - size[v]] if parent[v] >= 0 else []),
            default=0,
        )
        if best is None or heaviest < best:
            best, out = heaviest, [v]
        elif heaviest == best:
            out.append(v)
    return out


def _rooted_plain(adj: list[list[int]], root: int) -> PlainTree:
    parents: list[int] = []

    def build(v: int, parent_vertex: int, parent_idx: int):
        idx = len(parents)
        parents.append(parent_idx)
        kids = sorted(
            (c for c in adj[v] if c != parent_vertex),
            key=lambda c: _rooted_encoding_sub(adj, c, v),
        )
        for c in kids:
            build(c, v, idx)

    build(root, -1, -1)
    return PlainTree(tuple(parents))


def _rooted_encoding_sub(adj: list[list[int]], v: int, parent: int) -> str:
    kids = sorted(_rooted_encoding_sub(adj, c, v) for c in adj[v] if c != parent)
    return "(" + "".join(kids) + ")"


def enumerate_free_trees(n: int) -> list[PlainTree]:
    """All free trees on n vertices up to isomorphism, rooted at a canonical
    centroid with children in canonical order."""
    if n < 1:
        raise ValueError("need at least one vertex")
    if n == 1:
        return [PlainTree((-1,))]
    if n == 2:
        return [PlainTree((-1, 0))]
    seen: dict[str, PlainTree] = {}
    for seq in product(range(n), repeat=n - 2):
        adj = _pruefer_to_parents(seq, n)
        cands = _centroids(adj, n)
        best_root = min(cands, key=lambda r: _rooted_encoding(adj, r))
        key = _rooted_encoding(adj, best_root)
        if key not in seen:
            seen[key] = _rooted_plain(adj, best_root)
    return [seen[k] for k in sorted(seen)]


def centroid_rooted(tree: PlainTree) -> PlainTree:
    """The same free tree rerooted at its canonical centroid, children in
    canonical order (only meaningful for trees without half-edge)."""
    if tree.half_edge:
        raise ValueError("half-edge trees are rooted at the half-edge extremity")
    n = len(tree)
    adj: list[list[int]] = [[] for _ in range(n)]
    for v in range(1, n):
        adj[v].append(tree.parents[v])
        adj[tree.parents[v]].append(v)
    best_root = min(_centroids(adj, n), key=lambda r: _rooted_encoding(adj, r))
    return _rooted_plain(adj, best_root)


def reroot(tree: PlainTree, new_root: int, half_edge: bool = False) -> PlainTree:
    """The same free tree rooted at the given vertex."""
    n = len(tree)
    adj: list[list[int]] = [[] for _ in range(n)]
    for v in range(1, n):
        adj[v].append(tree.parents[v])
        adj[tree.parents[v]].append(v)
    parents: list[int] = []

    def build(v: int, parent_vertex: int, parent_idx: int):
        idx = len(parents)
        parents.append(parent_idx)
        for c in adj[v]:
            if c != parent_vertex:
                build(c, v, idx)

    build(new_root, -1, -1)
    return PlainTree(tuple(parents), half_edge)
