"""The reduction engine: base cases, rewrite rules, long stars, soundness."""

import random
from fractions import Fraction

import pytest

from catsum.algebra import H1, H2, ONE, AlgebraElement, Laurent, PiPoly, catalan_gf
from catsum.engine import (
    DepthGuardExceeded,
    Engine,
    NoRuleApplies,
    base_sum,
    height_zero_sum,
    reduce_tree,
    tridiagonal_determinant,
    tridiagonal_inverse,
)
from catsum.series import brute_force_decorated, series_expand
from catsum.trees import (
    BLACK,
    GRAY,
    REL_EQ,
    REL_GE,
    REL_LE,
    REL_NONE,
    WHITE,
    Decoration,
    DecoratedTree,
    PatternMismatchError,
    canonical_decorate,
    canonical_key,
    parse_plain,
)

from conftest import long_star_tree, random_decorated_tree, sumexpr_series

S0 = base_sum(REL_EQ, 0)


def two_vertex(rel, shift, root_color=WHITE):
    leaf_color = BLACK if root_color == WHITE else WHITE
    return DecoratedTree(
        (-1, 0), (Decoration(root_color, rel, shift), Decoration(leaf_color, REL_NONE, 0))
    )


# -- base cases ----------------------------------------------------------------


def test_base_sum_closed_forms():
    assert S0 == (H1 - ONE).shift_t(-2).scale(Fraction(1, 4))
    assert base_sum(REL_EQ, 1) == (ONE - H2).shift_t(-1).scale(Fraction(1, 2))
    assert base_sum(REL_EQ, -1) == base_sum(REL_EQ, 1)
    assert base_sum(REL_GE, 0).eval_quarter() == PiPoly({1: 8})
    free = base_sum(REL_NONE, 0)
    assert free == base_sum(REL_NONE, 7)  # independent of the shift
    assert free == catalan_gf() ** 2
    assert base_sum(REL_LE, 2) == base_sum(REL_GE, -2)


def test_base_sums_match_oracle():
    for rel in (REL_EQ, REL_LE, REL_GE, REL_NONE):
        for k in range(-3, 4):
            series = series_expand(base_sum(rel, k), 8)
            assert series == brute_force_decorated(two_vertex(rel, k), 8), (rel, k)
            # black-rooted orientation gives the same sums
            assert series == brute_force_decorated(
                two_vertex(rel, k, root_color=BLACK), 8
            ), (rel, k)


def test_base_sum_degree_bound():
    for rel in (REL_EQ, REL_LE, REL_GE, REL_NONE):
        for k in range(-3, 4):
            value = base_sum(rel, k)
            assert value.degree() is not None and value.degree() <= 2


def test_height_zero_table():
    assert height_zero_sum(Decoration(WHITE, REL_NONE, 0)) == catalan_gf()
    assert height_zero_sum(Decoration(WHITE, REL_LE, 2)) == AlgebraElement.from_laurent(
        Laurent({0: 1, 1: 1, 2: 2})
    )
    assert height_zero_sum(Decoration(GRAY, REL_EQ, 1)).is_zero()
    assert height_zero_sum(Decoration(GRAY, REL_GE, -2)) == ONE
    assert height_zero_sum(Decoration(WHITE, REL_EQ, 2)) == AlgebraElement.from_laurent(
        Laurent.t_power(2, 2)
    )
    assert height_zero_sum(Decoration(WHITE, REL_EQ, -1)).is_zero()
    assert height_zero_sum(Decoration(BLACK, REL_EQ, -2)) == AlgebraElement.from_laurent(
        Laurent.t_power(2, 2)
    )
    assert height_zero_sum(Decoration(BLACK, REL_GE, 1)).is_zero()
    assert height_zero_sum(Decoration(BLACK, REL_LE, 0)) == catalan_gf()
    # oracle comparison across the full table
    for color in (WHITE, BLACK, GRAY):
        for rel in (REL_EQ, REL_LE, REL_GE, REL_NONE):
            for k in range(-3, 4):
                tree = DecoratedTree((-1,), (Decoration(color, rel, k),))
                assert series_expand(height_zero_sum(tree.decos[0]), 7) == (
                    brute_force_decorated(tree, 7)
                ), (color, rel, k)


# -- named reductions ------------------------------------------------------------


def test_reduce_golden_small_trees(shared_engine):
    p2 = shared_engine.reduce(canonical_decorate(parse_plain("(())")))
    assert p2 == S0
    assert p2.eval_quarter() == PiPoly({1: 16, 0: -4})
    assert p2.eval_quarter().to_decimal(6) == "1.092958"

    p4 = shared_engine.reduce(canonical_decorate(parse_plain("((())())")))
    expected = (H1 * H1 + 2 * H1 - 16 * AlgebraElement.from_laurent(Laurent.t_power(2)) - 3) / (
        32 * AlgebraElement.from_laurent(Laurent.t_power(4))
    )
    assert p4 == expected
    assert p4.eval_quarter() == PiPoly({2: 128, 1: 64, 0: -32})

    p1h = shared_engine.reduce(canonical_decorate(parse_plain("halfedge:()")))
    assert p1h == catalan_gf()
    assert p1h.eval_quarter() == PiPoly({0: 2})


def test_reduce_eight_vertex_example(shared_engine):
    tree = canonical_decorate(parse_plain("((()())(()())())"))
    value = shared_engine.reduce(tree)
    assert value.eval_quarter() == PiPoly(
        {
            3: Fraction(2**16, 9),
            2: Fraction(2**16, 9),
            1: Fraction(-(2**13), 35),
            0: -7 * 2**7,
        }
    )
    series = series_expand(value, 10)
    assert [series.coeffs[2 * i] for i in range(6)] == [1, 7, 58, 542, 5508, 59508]


def test_rewrite_once_equality_factor():
    tree = DecoratedTree(
        (-1, 0, 1),
        (
            Decoration(WHITE, REL_EQ, 0),
            Decoration(BLACK, REL_EQ, 0),
            Decoration(WHITE, REL_NONE, 0),
        ),
    )
    step = Engine().rewrite_once(tree)
    assert step.rule == "factor-equality" and step.site == 1
    (coeff, parts), = step.expr
    assert coeff == ONE and len(parts) == 2
    assert len(parts[0]) == 1 and len(parts[1]) == 2


def test_rewrite_once_leaf_rules():
    tree = DecoratedTree(
        (-1, 0),
        (Decoration(WHITE, REL_NONE, 0), Decoration(BLACK, REL_GE, 0)),
    )
    step = Engine().rewrite_once(tree)
    assert step.rule == "relax-leaf"
    ((_, (after,)),) = step.expr
    assert after.decos[1].rel == REL_EQ  # black (ge,0) forces the variable to 0

    tree = DecoratedTree(
        (-1, 0),
        (Decoration(WHITE, REL_NONE, 0), Decoration(BLACK, REL_LE, 0)),
    )
    ((_, (after,)),) = Engine().rewrite_once(tree).expr
    assert after.decos[1].rel == REL_NONE


def test_rewrite_once_twin_merge():
    tree = DecoratedTree(
        (-1, 0, 0),
        (
            Decoration(WHITE, REL_EQ, 0),
            Decoration(WHITE, REL_NONE, 0),
            Decoration(WHITE, REL_NONE, 0),
        ),
    )
    step = Engine().rewrite_once(tree)
    assert step.rule == "merge-twin-leaves"
    (c1, (merged,)), (c2, (dropped,)) = step.expr
    assert c1 == ONE.shift_t(-1) and c2 == ONE.shift_t(-1).scale(-1)
    assert len(merged) == 2 and merged.decos[1] == Decoration(WHITE, REL_NONE, 1)
    assert len(dropped) == 1 and dropped.decos[0].shift == 1


def test_rewrite_once_no_rule():
    good = long_star_tree(1, 1, 0, REL_LE, 0)
    with pytest.raises(NoRuleApplies):
        Engine().rewrite_once(good)
    with pytest.raises(NoRuleApplies):
        Engine().rewrite_once(DecoratedTree((-1,), (Decoration(WHITE, REL_NONE, 0),)))


RULES_TO_COVER = {
    "factor-equality",
    "shift-toward-zero",
    "drop-gray-leaf",
    "relax-leaf",
    "push-free-shift",
    "merge-twin-leaves",
    "merge-leaf-into-parent",
    "absorb-leaf-into-gray",
}


def _twin_leaf_tree(color, extra=()):
    decos = (Decoration(WHITE if color == BLACK else BLACK, REL_EQ, 0),) + (
        Decoration(color, REL_NONE, 0),
    ) * 2 + extra
    return DecoratedTree((-1, 0, 0) + (0,) * len(extra), decos)


def test_generic_rules_locally_sound():
    """For every generic rewrite: the oracle series of the input equals the
    oracle evaluation of the produced expression (order 8)."""
    rng = random.Random(42)
    engine = Engine()
    covered = set()
    crafted = [
        _twin_leaf_tree(WHITE),
        _twin_leaf_tree(BLACK),
        _twin_leaf_tree(BLACK, extra=(Decoration(WHITE, REL_GE, 0),)),
        # relation-free leaf under a same-colored parent
        DecoratedTree(
            (-1, 0), (Decoration(WHITE, REL_EQ, 0), Decoration(WHITE, REL_NONE, 0))
        ),
        DecoratedTree(
            (-1, 0, 0),
            (
                Decoration(BLACK, REL_GE, 0),
                Decoration(BLACK, REL_NONE, 0),
                Decoration(WHITE, REL_NONE, 0),
            ),
        ),
        # relation-free leaf under a gray parent
        DecoratedTree(
            (-1, 0), (Decoration(GRAY, REL_LE, 0), Decoration(WHITE, REL_NONE, 0))
        ),
        DecoratedTree(
            (-1, 0, 1),
            (
                Decoration(WHITE, REL_EQ, 0),
                Decoration(GRAY, REL_GE, 0),
                Decoration(BLACK, REL_NONE, 0),
            ),
        ),
    ]
    trees = crafted + [
        random_decorated_tree(rng, max_vertices=6, max_nongray=5) for _ in range(400)
    ]
    for tree in trees:
        try:
            step = engine.rewrite_once(tree)
        except NoRuleApplies:
            continue
        covered.add(step.rule)
        lhs = brute_force_decorated(tree, 8)
        rhs = sumexpr_series(list(step.expr), 8)
        assert lhs == rhs, (step.rule, tree)
    assert RULES_TO_COVER <= covered, RULES_TO_COVER - covered


LONG_STAR_RULES = {
    "ustar-merge-free-branch",
    "ustar-reverse-branch",
    "ustar-drop-implied-center",
    "ustar-forced-equalities",
    "ustar-finite-enumeration",
    "vstar-double-merge",
    "vstar-reverse-free-branch",
    "vstar-linear-system",
    "vstar-drop-implied-center",
    "vstar-forced-equalities",
    "vstar-finite-enumeration",
}


def test_long_star_rules_locally_sound():
    engine = Engine()
    covered = set()
    cases = []
    for rel in (REL_GE, REL_LE):
        for color in (GRAY, WHITE):
            cases += [
                (2, 0, 0, rel, 0, color),
                (0, 2, 0, rel, 0, color),
                (1, 1, 0, rel, 0, color),
                (1, 0, 1, rel, 0, color),
                (1, 1, 2, rel, 0, color),
            ]
    for k_shift in (-1, 0, 2):
        for color in (GRAY, WHITE):
            cases += [(2, 0, 0, REL_EQ, k_shift, color), (1, 1, 1, REL_EQ, k_shift, color)]
    for i, j, k, rel, shift, color in cases:
        tree = long_star_tree(i, j, k, rel, shift, center_color=color)
        expr = engine.long_star_reduce(tree, 0)
        lhs = brute_force_decorated(tree, 8)
        assert lhs == sumexpr_series(expr, 8), (i, j, k, rel, shift, color)
    # collect rule names through traces for coverage
    lines = []
    traced = Engine(trace=lines.append)
    for i, j, k, rel, shift, color in cases:
        traced.reduce(long_star_tree(i, j, k, rel, shift, center_color=color))
    for line in lines:
        name = line.split()[1]
        covered.add(name)
    assert LONG_STAR_RULES <= covered, LONG_STAR_RULES - covered


def test_long_star_reduce_preconditions():
    engine = Engine()
    free_center = long_star_tree(1, 0, 1, REL_NONE, 0)
    with pytest.raises(PatternMismatchError):
        engine.long_star_reduce(free_center, 0)


def test_long_star_examples(shared_engine):
    # equality-rooted gray star with two ge-branches: forced equalities
    assert shared_engine.reduce(long_star_tree(2, 0, 0, REL_EQ, 0)) == S0 * S0
    # white (ge,0) star over d branches: free root times one ge-branch each
    for d in (1, 2, 3):
        value = shared_engine.reduce(long_star_tree(d, 0, 0, REL_GE, 0, center_color=WHITE))
        assert value == catalan_gf() * base_sum(REL_GE, 0) ** d
    # the 6-vertex worked example
    t6c = shared_engine.reduce(canonical_decorate(parse_plain("((())(())())")))
    assert t6c.eval_quarter() == PiPoly(
        {3: Fraction(4096, 3), 2: 1024, 1: Fraction(-512, 9), 0: -128}
    )


def test_long_star_solve_small_systems():
    engine = Engine()
    tree = long_star_tree(1, 1, 0, REL_LE, 0)
    solution = engine.long_star_solve(tree, 0, 2)
    assert len(solution) == 1
    assert series_expand(solution[0], 8) == brute_force_decorated(tree, 8)

    tree3 = long_star_tree(2, 1, 0, REL_EQ, 0)
    solution = engine.long_star_solve(tree3, 0, 3)
    assert len(solution) == 2
    assert series_expand(solution[1], 8) == brute_force_decorated(tree3, 8)
    assert series_expand(solution[0], 8) == brute_force_decorated(
        long_star_tree(1, 2, 0, REL_EQ, 0), 8
    )


def test_tridiagonal_solver_exact():
    assert tridiagonal_determinant(5) == 6
    for n in range(1, 7):
        inv = tridiagonal_inverse(n)
        # check M * inv = I
        for r in range(n):
            for c in range(n):
                entry = sum(
                    (2 if r == m else 1 if abs(r - m) == 1 else 0) * inv[m][c] for m in range(n)
                )
                assert entry == (1 if r == c else 0)
        # determinant via elimination equals the cofactor recurrence
        det = Fraction(1)
        matrix = [
            [Fraction(2 if r == c else 1 if abs(r - c) == 1 else 0) for c in range(n)]
            for r in range(n)
        ]
        for col in range(n):
            det *= matrix[col][col]
            for r in range(col + 1, n):
                if matrix[r][col]:
                    f = matrix[r][col] / matrix[col][col]
                    matrix[r] = [a - f * b for a, b in zip(matrix[r], matrix[col])]
        assert det == tridiagonal_determinant(n)


# -- global soundness and structure ---------------------------------------------


def test_oracle_soundness_randomized():
    rng = random.Random(99)
    for _ in range(120):
        tree = random_decorated_tree(rng, max_vertices=7, max_nongray=6)
        value = Engine().reduce(tree)
        assert series_expand(value, 8) == brute_force_decorated(tree, 8)


def test_engine_on_all_small_half_edge_trees(shared_engine):
    """Every rooting of every free tree with <= 6 vertices, with the
    half-edge at the root: engine equals the edge-variable oracle, and the
    root inequality keeps the value inside the extended algebra."""
    from catsum.series import brute_force_edge
    from catsum.trees import enumerate_free_trees, reroot

    for n in range(1, 7):
        for tree in enumerate_free_trees(n):
            for root in range(n):
                half = reroot(tree, root, half_edge=True)
                decorated = canonical_decorate(half)
                value = shared_engine.reduce(decorated)
                assert series_expand(value, 8) == brute_force_edge(half, 8), (n, root)
                if not value.is_zero():
                    assert value.degree() <= n


def test_equality_root_stays_in_base_algebra():
    rng = random.Random(100)
    checked = 0
    while checked < 60:
        tree = random_decorated_tree(rng)
        if tree.decos[0].rel != REL_EQ:
            continue
        checked += 1
        value = Engine().reduce(tree)
        assert value.s_component().is_zero(), tree


def test_degree_bounds_randomized():
    rng = random.Random(101)
    for _ in range(100):
        tree = random_decorated_tree(rng)
        value = Engine().reduce(tree)
        if value.is_zero():
            continue
        assert value.degree() <= tree.nongray_count
        evaluation = value.eval_quarter()
        if not evaluation.is_zero():
            assert evaluation.degree() <= tree.nongray_count // 2


def test_degree_tightness_witnesses():
    engine = Engine()
    for d in range(1, 6):
        gray = engine.reduce(long_star_tree(d, 0, 0, REL_LE, 0))
        assert gray == S0**d
        assert gray.degree() == 2 * d
        assert gray.eval_quarter().degree() == d
        white = engine.reduce(long_star_tree(d, 0, 0, REL_GE, 0, center_color=WHITE))
        assert white.degree() == 2 * d + 1
        assert white.eval_quarter().degree() == d


def test_memo_transparency():
    rng = random.Random(102)
    for _ in range(25):
        tree = random_decorated_tree(rng, max_vertices=6)
        assert Engine(memoize=True).reduce(tree) == Engine(memoize=False).reduce(tree)


def test_memo_reuse_and_determinism():
    engine = Engine()
    tree = canonical_decorate(parse_plain("((())(())())"))
    first = engine.reduce(tree)
    cycles_after_first = engine.cycles
    assert engine.reduce(tree) == first
    assert engine.cycles == cycles_after_first  # memo hit, no extra work
    assert canonical_key(tree) in engine.memo


def test_depth_guard():
    tree = canonical_decorate(parse_plain("((())(())())"))
    with pytest.raises(DepthGuardExceeded):
        Engine(max_cycles=5).reduce(tree)


def test_color_symmetric_tree_survives_swap():
    """A tree isomorphic to its own color swap shares the swap's canonical
    key; the driver's black-center swap must not be mistaken for a cycle."""
    from catsum.trees import canonical_key, swap_colors

    tree = DecoratedTree(
        (-1, 0, 1, 2, 0, 4, 5),
        (
            Decoration(GRAY, REL_NONE, 0),
            Decoration(BLACK, REL_LE, 0),
            Decoration(WHITE, REL_GE, 0),
            Decoration(BLACK, REL_NONE, 0),
            Decoration(WHITE, REL_GE, 0),
            Decoration(BLACK, REL_LE, 0),
            Decoration(WHITE, REL_NONE, 0),
        ),
    )
    assert canonical_key(tree) == canonical_key(swap_colors(tree))
    value = Engine().reduce(tree)
    assert series_expand(value, 8) == brute_force_decorated(tree, 8)


def test_trace_walkthrough_of_six_vertex_example():
    """The classic 6-vertex reduction pulls the root variable down into a
    fresh branch and then solves the mixed-star linear system."""
    lines = []
    Engine(trace=lines.append).reduce(canonical_decorate(parse_plain("((())(())())")))
    text = "\n".join(lines)
    assert "pull-down-center-variable" in text
    assert "vstar-linear-system" in text
    assert "vstar-reverse-free-branch" in text


def test_trace_format():
    lines = []
    Engine(trace=lines.append).reduce(canonical_decorate(parse_plain("(())")))
    assert lines, "no trace emitted"
    for line in lines:
        parts = line.split()
        assert parts[0] == "RULE" and parts[2] == "AT" and parts[4] == "->"
        assert parts[6] == "subproblems"


def test_reduce_tree_helper():
    assert reduce_tree(canonical_decorate(parse_plain("(())"))) == S0
