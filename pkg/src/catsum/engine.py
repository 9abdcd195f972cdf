"""Exact reduction of decorated-tree sums to algebra normal forms.

The driver turns an arbitrary decorated tree into its sum S(T) by
repeatedly rewriting it into combinations of strictly simpler trees:

  1. trees of height 0 have closed forms;
  2. a fixed priority list of local rewrites (factor out equalities, move
     shifts toward zero, simplify leaves, merge twin or parent/child
     Catalan variables, absorb leaves into gray vertices) normalizes the
     tree into the "good" class;
  3. good trees of height 1 are the two-vertex base sums;
  4. taller good trees are attacked at a height-2 fringe, which is always
     a long star; the star relations, a tridiagonal linear system and, for
     equality-decorated roots, a finite enumeration finish the job.

Every rewrite identity used here is an exact equality of formal sums, so
the result is the exact normal form of S(T).  Reductions are memoized on
the sibling-order-invariant canonical key.  Black-centered stars are
routed through the global color swap and the white-center code path.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebra import (
    ONE,
    ZERO,
    AlgebraElement,
    Laurent,
    catalan_gf,
    hypergeom_hk,
)
from .series import catalan
from .trees import (
    BLACK,
    GRAY,
    WHITE,
    Decoration,
    DecoratedTree,
    LongStarPattern,
    PatternMismatchError,
    REL_EQ,
    REL_GE,
    REL_LE,
    REL_NONE,
    canonical_key,
    classify_fringe,
    is_good_tree,
    subtree_at,
    swap_colors,
    with_absorbed_leaf,
    with_branch_colors_swapped,
    with_children_reattached,
    with_decoration,
    with_merged_twins,
    with_pulled_down_variable,
    with_relation,
    with_replaced_fringe,
    with_shift,
    with_shift_added,
    without_leaves,
    without_subtree,
)

# A sum expression: list of (coefficient, tree factors); its value is
# sum(coeff * prod(S(tree) for tree in factors)).
SumExpr = list[tuple[AlgebraElement, tuple[DecoratedTree, ...]]]

T_INV = ONE.shift_t(-1)
T_INV2 = ONE.shift_t(-2)
MINUS_ONE = ONE.scale(-1)


class NoRuleApplies(Exception):
    """No generic rewrite matches: the tree is good (or height <= 1)."""


class DepthGuardExceeded(RuntimeError):
    """Safety bound hit; reduction of any tree provably terminates, so this
    signals an implementation bug rather than a hard instance."""


@dataclass(frozen=True)
class RewriteStep:
    rule: str
    site: int
    expr: tuple[tuple[AlgebraElement, tuple[DecoratedTree, ...]], ...]


def _holds(lhs: int, rel: str, rhs: int) -> bool:
    if rel == REL_EQ:
        return lhs == rhs
    if rel == REL_LE:
        return lhs <= rhs
    if rel == REL_GE:
        return lhs >= rhs
    return True


def _partial_catalan(m: int) -> AlgebraElement:
    """sum_{l=0}^{m} Cat_l t^l (zero for m < 0)."""
    if m < 0:
        return ZERO
    return AlgebraElement.from_laurent(Laurent({l: catalan(l) for l in range(m + 1)}))


def height_zero_sum(deco: Decoration) -> AlgebraElement:
    """Closed form for a single-vertex tree.

    A gray vertex is just the indicator of its own condition.  A white
    vertex sums Cat_l t^l over the l satisfying `l rel K`; a black vertex
    is the mirror image (its variable enters the condition negated).
    """
    rel, k = deco.rel, deco.shift
    if deco.color == GRAY:
        return ONE if _holds(0, rel, k) else ZERO
    if deco.color == BLACK:
        flipped = deco.flipped()
        rel, k = flipped.rel, flipped.shift
    if rel == REL_NONE:
        return catalan_gf()
    if rel == REL_EQ:
        if k < 0:
            return ZERO
        return AlgebraElement.from_laurent(Laurent.t_power(k, catalan(k)))
    if rel == REL_GE:
        return catalan_gf() - _partial_catalan(k - 1)
    return _partial_catalan(k)  # le


@lru_cache(maxsize=None)
def base_sum(rel: str, k: int) -> AlgebraElement:
    """The two-vertex sum S_{rel,K} = sum_{a,b>=0} Cat_a Cat_b t^{a+b} [a rel b+K].

    S_{none,K} = C(t)^2;  S_{eq,K} = (H^(|K|) - 1)/alpha_|K| with
    alpha_M = -4(2M-1) t^{2-M} / ((M+1) Cat_M);  S_{ge,0} is the average of
    the two, and general shifts peel off equality layers:
    S_{ge,K} = S_{ge,0} - sum_{r<K} S_{eq,r} and
    S_{ge,-K} = S_{ge,0} + sum_{0<r<=K} S_{eq,r}.  S_{le,K} = S_{ge,-K}.
    """
    if rel == REL_NONE:
        c = catalan_gf()
        return c * c
    if rel == REL_EQ:
        m = abs(k)
        inv_alpha = Fraction((m + 1) * catalan(m), -4 * (2 * m - 1))
        return (hypergeom_hk(m) - ONE).scale(inv_alpha).shift_t(m - 2)
    if rel == REL_LE:
        return base_sum(REL_GE, -k)
    if rel != REL_GE:
        raise ValueError(f"unknown relation {rel!r}")
    if k == 0:
        return (base_sum(REL_NONE, 0) + base_sum(REL_EQ, 0)).scale(Fraction(1, 2))
    if k > 0:
        total = base_sum(REL_GE, 0)
        for r in range(k):
            total = total - base_sum(REL_EQ, r)
        return total
    total = base_sum(REL_GE, 0)
    for r in range(1, -k + 1):
        total = total + base_sum(REL_EQ, r)
    return total


def _compositions(total: int, parts: int):
    """All tuples of `parts` nonnegative integers summing to `total`."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def tridiagonal_inverse(n: int) -> list[list[Fraction]]:
    """Exact inverse of the n x n matrix 2I - J (diagonal 2, off-diagonals 1)."""
    aug = [
        [Fraction(2 if r == c else (1 if abs(r - c) == 1 else 0)) for c in range(n)]
        + [Fraction(1 if r == c else 0) for c in range(n)]
        for r in range(n)
    ]
    for col in range(n):
        pivot = next(r for r in range(col, n) if aug[r][col])
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv_p = 1 / aug[col][col]
        aug[col] = [x * inv_p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def tridiagonal_determinant(n: int) -> Fraction:
    """Determinant of 2I - J by the cofactor recurrence d_n = 2 d_{n-1} - d_{n-2}."""
    prev, cur = Fraction(1), Fraction(2)
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, 2 * cur - prev
    return cur


class Engine:
    """Reduces decorated trees to exact normal forms, memoized per instance.

    An instance owns a mutable memo cache and cycle counter, so it is a
    single-owner object; distinct instances are fully independent and the
    rule functions themselves are pure.
    """

    def __init__(self, memoize: bool = True, max_cycles: int = 10**5, trace=None):
        self.memoize = memoize
        self.max_cycles = max_cycles
        self.trace = trace
        self.memo: dict[bytes, AlgebraElement] = {}
        self.cycles = 0
        # Cycle detection keys on the exact indexed tree: a color-symmetric
        # tree shares its canonical key with its own color swap, which the
        # driver may legitimately visit while the original is on the stack.
        self._in_progress: set[DecoratedTree] = set()

    # -- public entry points ----------------------------------------------

    def reduce(self, tree: DecoratedTree) -> AlgebraElement:
        key = canonical_key(tree)
        if self.memoize and key in self.memo:
            return self.memo[key]
        if tree in self._in_progress:
            raise DepthGuardExceeded("reduction revisited a tree already on the stack")
        self.cycles += 1
        if self.cycles > self.max_cycles:
            raise DepthGuardExceeded(f"more than {self.max_cycles} driver cycles")
        self._in_progress.add(tree)
        try:
            rule, site, expr = self._dispatch(tree)
            if self.trace is not None:
                self.trace(f"RULE {rule} AT {site} -> {len(expr)} subproblems")
            total = ZERO
            for coeff, factors in expr:
                term = coeff
                for factor in factors:
                    term = term * self.reduce(factor)
                total = total + term
        finally:
            self._in_progress.discard(tree)
        if self.memoize:
            self.memo[key] = total
        return total

    def rewrite_once(self, tree: DecoratedTree) -> RewriteStep:
        """Apply the highest-priority generic rewrite at its least site."""
        if tree.height == 0:
            raise NoRuleApplies("height-0 trees have closed forms")
        found = self._find_generic_rewrite(tree)
        if found is None:
            raise NoRuleApplies("tree is good; long-star handling applies")
        rule, site, expr = found
        return RewriteStep(rule, site, tuple(expr))

    def long_star_reduce(self, tree: DecoratedTree, v: int) -> SumExpr:
        """Rewrite at a classified height-2 fringe whose center carries
        (ge,0), (le,0), or (eq,K) at the root.  Black centers route through
        the color swap, a direct leaf child is pulled down first."""
        tree = self._normalize_branches(tree, v)
        pattern = classify_fringe(tree, v)
        deco = tree.decos[v]
        if deco.rel == REL_NONE:
            raise PatternMismatchError("relation-free centers dissolve by factorization")
        if deco.rel == REL_EQ and v != 0:
            raise PatternMismatchError("equality decorations occur only at the root")
        if pattern.center_color == BLACK:
            return [(ONE, (swap_colors(tree),))]
        if pattern.extra_leaf is not None:
            return [(ONE, (with_pulled_down_variable(tree, v, pattern.extra_leaf),))]
        _, _, expr = self._long_star_step(tree, v, pattern)
        return expr

    def long_star_solve(self, tree: DecoratedTree, v: int, d: int) -> list[AlgebraElement]:
        """Solve the (d-1)x(d-1) system 2I - J for the mixed gray stars
        V_{r,d-r,0}, r = 1..d-1, grafted at v; returns the solution list."""
        deco = tree.decos[v]

        def graft(i: int, j: int, k: int) -> DecoratedTree:
            return with_replaced_fringe(tree, v, Decoration(GRAY, deco.rel, deco.shift), (i, j, k))

        s0 = base_sum(REL_EQ, 0)
        s0_sq = s0 * s0
        rhs = []
        for r in range(1, d):
            x = (
                self.reduce(graft(r - 1, d - 1 - r, 2))
                + self.reduce(graft(r - 1, d - 1 - r, 1)) * s0.scale(2)
                + self.reduce(graft(r - 1, d - 1 - r, 0)) * s0_sq
            )
            rhs.append(x)
        rhs[0] = rhs[0] - self.reduce(graft(0, d, 0))
        rhs[-1] = rhs[-1] - self.reduce(graft(d, 0, 0))
        inverse = tridiagonal_inverse(d - 1)
        solution = []
        for r in range(d - 1):
            acc = ZERO
            for c in range(d - 1):
                if inverse[r][c]:
                    acc = acc + rhs[c].scale(inverse[r][c])
            solution.append(acc)
        if self.memoize:
            for r in range(1, d):
                self.memo[canonical_key(graft(r, d - r, 0))] = solution[r - 1]
        return solution

    # -- driver --------------------------------------------------------------

    def _dispatch(self, tree: DecoratedTree):
        if tree.height == 0:
            return "height-zero", 0, [(height_zero_sum(tree.decos[0]), ())]
        found = self._find_generic_rewrite(tree)
        if found is not None:
            return found
        assert is_good_tree(tree), "generic rules exhausted on a non-good tree"
        if tree.height == 1:
            deco = tree.decos[0]
            return "two-vertex-base", 0, [(base_sum(deco.rel, deco.shift), ())]
        v = min(u for u in range(len(tree)) if tree.fringe_height(u) == 2)
        tree = self._normalize_branches(tree, v)
        deco = tree.decos[v]
        if deco.rel == REL_NONE:
            if v == 0:
                gen = ONE if deco.color == GRAY else catalan_gf()
                parts = tuple(subtree_at(tree, c) for c in tree.children[0])
                return "factor-free-root", 0, [(gen, parts)]
            return "dissolve-free-center", v, [(ONE, (with_children_reattached(tree, v),))]
        pattern = classify_fringe(tree, v)
        if pattern.center_color == BLACK:
            return "swap-colors", v, [(ONE, (swap_colors(tree),))]
        if pattern.extra_leaf is not None:
            pulled = with_pulled_down_variable(tree, v, pattern.extra_leaf)
            return "pull-down-center-variable", v, [(ONE, (pulled,))]
        return self._long_star_step(tree, v, pattern)

    def _normalize_branches(self, tree: DecoratedTree, v: int) -> DecoratedTree:
        """Put the white vertex on top of every two-vertex branch under v."""
        for c in tree.children[v]:
            kids = tree.children[c]
            if kids and tree.decos[c].color == BLACK:
                tree = with_branch_colors_swapped(tree, c, kids[0])
        return tree

    # -- generic rewrites, in driver priority order ---------------------------

    def _find_generic_rewrite(self, tree: DecoratedTree):
        n = len(tree)
        # Factor at a nonroot equality: the fringe splits off as an
        # independent factor and its shift sum replaces the variables above.
        for v in range(1, n):
            if tree.decos[v].rel == REL_EQ:
                parts = (without_subtree(tree, v), subtree_at(tree, v))
                return "factor-equality", v, [(ONE, parts)]
        # Move a nonzero shift on an inequality one step toward zero,
        # peeling off an equality term.
        for v in range(n):
            deco = tree.decos[v]
            if deco.rel in (REL_LE, REL_GE) and deco.shift != 0:
                return "shift-toward-zero", v, self._shift_step(tree, v)
        # A gray leaf is a bare indicator on its shift.
        for v in range(1, n):
            if tree.is_leaf(v) and tree.decos[v].color == GRAY:
                deco = tree.decos[v]
                if not _holds(0, deco.rel, deco.shift):
                    return "drop-gray-leaf", v, []
                smaller = without_leaves(
                    with_shift_added(tree, tree.parents[v], deco.shift), (v,)
                )
                return "drop-gray-leaf", v, [(ONE, (smaller,))]
        # A leaf inequality is void or forces the variable to zero.
        for v in range(1, n):
            if tree.is_leaf(v):
                deco = tree.decos[v]
                if deco.color != GRAY and deco.rel in (REL_LE, REL_GE):
                    void = (deco.color == WHITE) == (deco.rel == REL_GE)
                    new_rel = REL_NONE if void else REL_EQ
                    return "relax-leaf", v, [(ONE, (with_relation(tree, v, new_rel),))]
        # Shifts under a void relation transfer to the parent.
        for v in range(n):
            deco = tree.decos[v]
            if deco.rel == REL_NONE and deco.shift != 0:
                if v == 0:
                    smaller = with_shift(tree, 0, 0)
                else:
                    smaller = with_shift(with_shift_added(tree, tree.parents[v], deco.shift), v, 0)
                return "push-free-shift", v, [(ONE, (smaller,))]
        # Twin relation-free leaves merge through the Catalan convolution.
        best_pair = None
        for v in range(1, n):
            if not tree.is_leaf(v):
                continue
            for w in range(v + 1, n):
                if (
                    tree.is_leaf(w)
                    and tree.parents[w] == tree.parents[v]
                    and tree.decos[w].color == tree.decos[v].color
                ):
                    if best_pair is None or (v, w) < best_pair:
                        best_pair = (v, w)
                    break
        if best_pair is not None:
            return "merge-twin-leaves", best_pair[0], self._twin_step(tree, *best_pair)
        # A relation-free leaf under a same-colored parent merges with it.
        for v in range(1, n):
            if tree.is_leaf(v):
                color = tree.decos[v].color
                if color != GRAY and color == tree.decos[tree.parents[v]].color:
                    return "merge-leaf-into-parent", v, self._consecutive_step(tree, v)
        # A relation-free leaf under a gray parent hands it its variable.
        for v in range(1, n):
            if tree.is_leaf(v) and tree.decos[tree.parents[v]].color == GRAY:
                merged = with_absorbed_leaf(tree, tree.parents[v], v)
                return "absorb-leaf-into-gray", v, [(ONE, (merged,))]
        return None

    def _shift_step(self, tree: DecoratedTree, v: int) -> SumExpr:
        """Split `x rel kappa` into the same relation with kappa one closer to
        the vertex shift being zero, plus/minus an equality term.  Changing the
        stored shift is compensated at the parent so all other conditions keep
        their right-hand sides."""
        deco = tree.decos[v]
        k = deco.shift

        def variant(rel: str, new_k: int) -> DecoratedTree:
            out = with_decoration(tree, v, Decoration(deco.color, rel, new_k))
            if v != 0 and new_k != k:
                out = with_shift_added(out, tree.parents[v], k - new_k)
            return out

        if deco.rel == REL_GE:
            if k > 0:
                return [(ONE, (variant(REL_GE, k - 1),)), (MINUS_ONE, (variant(REL_EQ, k - 1),))]
            return [(ONE, (variant(REL_GE, k + 1),)), (ONE, (variant(REL_EQ, k),))]
        if k > 0:
            return [(ONE, (variant(REL_LE, k - 1),)), (ONE, (variant(REL_EQ, k),))]
        return [(ONE, (variant(REL_LE, k + 1),)), (MINUS_ONE, (variant(REL_EQ, k + 1),))]

    def _twin_step(self, tree: DecoratedTree, w1: int, w2: int) -> SumExpr:
        """sum_{a+b=L-1} Cat_a Cat_b = Cat_L: two same-colored relation-free
        leaves become one leaf carrying a +-1 shift, minus the tree where the
        pair is dropped and the parent absorbs the shift."""
        color = tree.decos[w1].color
        delta = 1 if color == WHITE else -1
        merged = with_merged_twins(tree, w1, w2, Decoration(color, REL_NONE, delta))
        dropped = without_leaves(with_shift_added(tree, tree.parents[w1], delta), (w1, w2))
        return [(T_INV, (merged,)), (T_INV.scale(-1), (dropped,))]

    def _consecutive_step(self, tree: DecoratedTree, leaf: int) -> SumExpr:
        """Same Catalan merge for a relation-free leaf and its same-colored
        parent; the dropped-variable term leaves a gray vertex carrying the
        parent's condition."""
        parent = tree.parents[leaf]
        deco = tree.decos[parent]
        delta = 1 if tree.decos[leaf].color == WHITE else -1
        merged = without_leaves(with_shift_added(tree, parent, delta), (leaf,))
        grayed = without_leaves(
            with_decoration(tree, parent, Decoration(GRAY, deco.rel, deco.shift + delta)),
            (leaf,),
        )
        return [(T_INV, (merged,)), (T_INV.scale(-1), (grayed,))]

    # -- long stars ------------------------------------------------------------

    def _long_star_step(self, tree: DecoratedTree, v: int, pattern: LongStarPattern):
        assert pattern.center_color in (WHITE, GRAY) and pattern.extra_leaf is None
        deco = tree.decos[v]
        rel, k_shift = deco.rel, deco.shift
        i, j, k = pattern.i, pattern.j, pattern.k
        s0 = base_sum(REL_EQ, 0)

        def graft(color: int, new_rel: str, new_shift: int, bi: int, bj: int, bk: int):
            return with_replaced_fringe(tree, v, Decoration(color, new_rel, new_shift), (bi, bj, bk))

        if pattern.center_color == WHITE:
            if k >= 1:
                # Catalan merge of the center with a free branch middle.
                return (
                    "ustar-merge-free-branch",
                    v,
                    [
                        (T_INV, (graft(GRAY, rel, k_shift + 1, i, j, k),)),
                        (T_INV.scale(-1), (graft(BLACK, rel, k_shift + 1, i, j, k - 1),)),
                    ],
                )
            if j >= 1:
                # Reverse one le-branch: le + ge = free + equality.
                return (
                    "ustar-reverse-branch",
                    v,
                    [
                        (ONE, (graft(WHITE, rel, k_shift, i, j - 1, 1),)),
                        (s0, (graft(WHITE, rel, k_shift, i, j - 1, 0),)),
                        (MINUS_ONE, (graft(WHITE, rel, k_shift, i + 1, j - 1, 0),)),
                    ],
                )
            d = i
            if rel == REL_GE:
                # The center condition follows from the branch conditions.
                return "ustar-drop-implied-center", v, [(ONE, (with_relation(tree, v, REL_NONE),))]
            if rel == REL_LE:
                # Everything is pinched: center variable 0, branches equal.
                assert k_shift == 0
                value = s0**d
                if v == 0:
                    return "ustar-forced-equalities", v, [(value, ())]
                return "ustar-forced-equalities", v, [(value, (without_subtree(tree, v),))]
            assert rel == REL_EQ and v == 0
            return "ustar-finite-enumeration", v, [(self._u_star_eq_value(d, k_shift), ())]

        # gray center
        if k >= 2:
            return (
                "vstar-double-merge",
                v,
                [
                    (T_INV2, (graft(GRAY, rel, k_shift, i, j, k - 1),)),
                    (T_INV2, (graft(GRAY, rel, k_shift, i, j, k - 2),)),
                    (T_INV2.scale(-1), (graft(WHITE, rel, k_shift, i, j, k - 2),)),
                    (T_INV2.scale(-1), (graft(BLACK, rel, k_shift, i, j, k - 2),)),
                ],
            )
        if k == 1:
            return (
                "vstar-reverse-free-branch",
                v,
                [
                    (ONE, (graft(GRAY, rel, k_shift, i + 1, j, 0),)),
                    (ONE, (graft(GRAY, rel, k_shift, i, j + 1, 0),)),
                    (s0.scale(-1), (graft(GRAY, rel, k_shift, i, j, 0),)),
                ],
            )
        if i > 0 and j > 0:
            solution = self.long_star_solve(tree, v, i + j)
            return "vstar-linear-system", v, [(solution[i - 1], ())]
        d = i + j
        if (i and rel == REL_GE) or (j and rel == REL_LE):
            return "vstar-drop-implied-center", v, [(ONE, (with_relation(tree, v, REL_NONE),))]
        if (i and rel == REL_LE) or (j and rel == REL_GE):
            assert k_shift == 0
            value = s0**d
            if v == 0:
                return "vstar-forced-equalities", v, [(value, ())]
            return "vstar-forced-equalities", v, [(value, (without_subtree(tree, v),))]
        assert rel == REL_EQ and v == 0
        return "vstar-finite-enumeration", v, [(self._v_star_eq_value(i, j, k_shift), ())]

    def _v_star_eq_value(self, i: int, j: int, k_shift: int) -> AlgebraElement:
        """Equality-rooted one-sided gray star: the branch differences are
        nonnegative integers with a fixed finite total, so the sum is a finite
        combination of products of two-vertex equality sums."""
        d, total = (i, k_shift) if i else (j, -k_shift)
        if total < 0:
            return ZERO
        value = ZERO
        for comp in _compositions(total, d):
            term = ONE
            for x in comp:
                term = term * base_sum(REL_EQ, x)
            value = value + term
        return value

    def _u_star_eq_value(self, d: int, k_shift: int) -> AlgebraElement:
        """Equality-rooted white star: same enumeration with the root variable
        r >= 0 contributing Cat_r t^r toward the total."""
        if k_shift < 0:
            return ZERO
        value = ZERO
        for r in range(k_shift + 1):
            inner = ZERO
            for comp in _compositions(k_shift - r, d):
                term = ONE
                for x in comp:
                    term = term * base_sum(REL_EQ, x)
                inner = inner + term
            value = value + inner.mul_laurent(Laurent.t_power(r, catalan(r)))
        return value


def reduce_tree(tree: DecoratedTree, **kwargs) -> AlgebraElement:
    """One-shot reduction with a fresh engine."""
    return Engine(**kwargs).reduce(tree)
