"""Upper envelopes of piecewise-linear functions, exact arithmetic."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matroid_interdiction.envelope import (
    NEG_INF,
    POS_INF,
    Changepoint,
    Line,
    Piece,
    PiecewiseLinearFunction,
    classify_changepoints,
    concatenate,
    envelope_of_lines,
    interior_point,
    upper_envelope,
)

F = Fraction

small_fracs = st.fractions(min_value=-20, max_value=20, max_denominator=5)
lines = st.tuples(small_fracs, small_fracs).map(lambda sl: Line(sl[0], sl[1]))


def sample_points(lo, hi, n, seed):
    rng = random.Random(seed)
    out = [lo, hi]
    for _ in range(n):
        out.append(lo + (hi - lo) * F(rng.randint(0, 10**6), 10**6))
    return out


# ---------------------------------------------------------------------------
# primitives


def test_interior_point_variants():
    assert interior_point(F(1), F(3)) == F(2)
    assert interior_point(NEG_INF, F(3)) == F(2)
    assert interior_point(F(3), POS_INF) == F(4)
    assert interior_point(NEG_INF, POS_INF) == F(0)


def test_line_value_exact():
    assert Line(F(2, 3), F(-1)).value_at(F(9, 2)) == F(2)


def test_from_line_and_evaluate():
    f = PiecewiseLinearFunction.from_line(F(0), F(4), Line(F(1), F(0)), label="x")
    assert f.evaluate(F(3)) == 3
    assert f.piece_at(F(3)).label == "x"
    with pytest.raises(ValueError):
        f.evaluate(F(5))


def test_infinite_function():
    f = PiecewiseLinearFunction.infinite(F(0), F(1), label="dead")
    assert f.evaluate(F(1, 2)) == POS_INF
    assert f.pieces[0].line is None


# ---------------------------------------------------------------------------
# envelopes of whole functions


@settings(max_examples=60, deadline=None)
@given(st.lists(lines, min_size=1, max_size=8), st.integers(0, 10**6))
def test_upper_envelope_equals_pointwise_max(ls, grid):
    lo, hi = F(-6), F(6)
    fs = [PiecewiseLinearFunction.from_line(lo, hi, l, label=i) for i, l in enumerate(ls)]
    env = upper_envelope(fs)
    lam = lo + (hi - lo) * F(grid, 10**6)
    expect = max(l.value_at(lam) for l in ls)
    assert env.evaluate(lam) == expect
    # the winning label's line attains the value
    piece = env.piece_at(lam)
    assert ls[piece.label].value_at(lam) == expect


def test_upper_envelope_domain_mismatch_raises():
    a = PiecewiseLinearFunction.from_line(F(0), F(1), Line(F(0), F(0)))
    b = PiecewiseLinearFunction.from_line(F(0), F(2), Line(F(0), F(0)))
    with pytest.raises(ValueError):
        upper_envelope([a, b])


def test_upper_envelope_with_infinite_member():
    lo, hi = F(0), F(2)
    fin = PiecewiseLinearFunction.from_line(lo, hi, Line(F(1), F(0)), label="fin")
    inf = PiecewiseLinearFunction.infinite(lo, hi, label="inf")
    env = upper_envelope([fin, inf])
    assert env.evaluate(F(1)) == POS_INF
    assert [p.label for p in env.pieces] == ["inf"]


def test_upper_envelope_label_tie_prefers_smaller_label():
    lo, hi = F(0), F(2)
    same = Line(F(0), F(5))
    a = PiecewiseLinearFunction.from_line(lo, hi, same, label="b")
    b = PiecewiseLinearFunction.from_line(lo, hi, same, label="a")
    env = upper_envelope([a, b])
    assert [p.label for p in env.pieces] == ["a"]


def test_upper_envelope_multi_piece_inputs():
    lo, hi = F(-2), F(2)
    vee = PiecewiseLinearFunction(
        lo,
        hi,
        (
            Piece(lo, F(0), Line(F(-1), F(0)), "v"),
            Piece(F(0), hi, Line(F(1), F(0)), "v"),
        ),
    )
    flat = PiecewiseLinearFunction.from_line(lo, hi, Line(F(0), F(1)), "f")
    env = upper_envelope([vee, flat])
    for lam in sample_points(lo, hi, 40, 11):
        assert env.evaluate(lam) == max(vee.evaluate(lam), flat.evaluate(lam))
    assert [p.label for p in env.pieces] == ["v", "f", "v"]
    assert env.breakpoints() == [F(-1), F(1)]


# ---------------------------------------------------------------------------
# envelopes of plain lines (the solvers' fast path)


@settings(max_examples=60, deadline=None)
@given(st.lists(lines, min_size=1, max_size=50), st.integers(0, 10**6))
def test_envelope_of_lines_matches_upper_envelope(ls, grid):
    lo, hi = F(-5), F(5)
    entries = [(l, i) for i, l in enumerate(ls)]
    fast = envelope_of_lines(entries, lo, hi)
    slow = upper_envelope(
        [PiecewiseLinearFunction.from_line(lo, hi, l, label=i) for i, l in enumerate(ls)]
    )
    assert fast.pieces == slow.pieces
    lam = lo + (hi - lo) * F(grid, 10**6)
    assert fast.evaluate(lam) == max(l.value_at(lam) for l in ls)


def test_envelope_of_lines_with_none_line():
    env = envelope_of_lines([(Line(F(1), F(0)), "a"), (None, "dead")], F(0), F(1))
    assert env.evaluate(F(1, 2)) == POS_INF
    assert [p.label for p in env.pieces] == ["dead"]


def test_envelope_slopes_increase_left_to_right():
    rng = random.Random(5)
    for _ in range(20):
        ls = [Line(F(rng.randint(-9, 9)), F(rng.randint(-9, 9))) for _ in range(12)]
        env = envelope_of_lines([(l, i) for i, l in enumerate(ls)], F(-4), F(4))
        slopes = [p.line.slope for p in env.pieces]
        assert slopes == sorted(slopes), "an upper envelope of lines is convex"


# ---------------------------------------------------------------------------
# concatenation


def test_concatenate_merges_equal_boundary_runs():
    l = Line(F(1), F(0))
    a = PiecewiseLinearFunction.from_line(F(0), F(1), l, label="x")
    b = PiecewiseLinearFunction.from_line(F(1), F(2), l, label="x")
    c = PiecewiseLinearFunction.from_line(F(2), F(3), Line(F(2), F(-2)), label="y")
    joined = concatenate([a, b, c])
    assert joined.lo == F(0) and joined.hi == F(3)
    assert len(joined.pieces) == 2  # the two x-pieces fuse
    assert joined.breakpoints() == [F(2)]


def test_concatenate_rejects_gaps():
    a = PiecewiseLinearFunction.from_line(F(0), F(1), Line(F(0), F(0)))
    b = PiecewiseLinearFunction.from_line(F(2), F(3), Line(F(0), F(0)))
    with pytest.raises(ValueError):
        concatenate([a, b])


def test_concatenate_empty_rejected():
    with pytest.raises(ValueError):
        concatenate([])


# ---------------------------------------------------------------------------
# changepoint classification


def test_classify_kinds():
    pieces = (
        Piece(F(0), F(1), Line(F(2), F(0)), "A"),
        Piece(F(1), F(2), Line(F(1), F(1)), "A"),
        Piece(F(2), F(3), Line(F(-1), F(5)), "B"),
    )
    env = PiecewiseLinearFunction(F(0), F(3), pieces)
    marks = classify_changepoints(env)
    assert marks == [
        Changepoint(F(1), "breakpoint", "A", "A"),
        Changepoint(F(2), "interdiction-point", "A", "B"),
    ]


def test_classify_with_projection_key():
    pieces = (
        Piece(F(0), F(1), Line(F(2), F(0)), ("F", "b1")),
        Piece(F(1), F(2), Line(F(1), F(1)), ("F", "b2")),
    )
    env = PiecewiseLinearFunction(F(0), F(2), pieces)
    # full labels differ, but the projected winner is the same set
    assert classify_changepoints(env)[0].kind == "interdiction-point"
    projected = classify_changepoints(env, key=lambda lab: lab[0])
    assert projected[0].kind == "breakpoint"
    # equal line and equal projected label: not a changepoint at all
    flat = PiecewiseLinearFunction(
        F(0),
        F(2),
        (
            Piece(F(0), F(1), Line(F(1), F(0)), ("F", "b1")),
            Piece(F(1), F(2), Line(F(1), F(0)), ("F", "b2")),
        ),
    )
    assert classify_changepoints(flat, key=lambda lab: lab[0]) == []


@settings(max_examples=40, deadline=None)
@given(st.lists(lines, min_size=2, max_size=20))
def test_classification_matches_label_diff_oracle(ls):
    env = envelope_of_lines([(l, i) for i, l in enumerate(ls)], F(-5), F(5))
    marks = {c.lam: c.kind for c in classify_changepoints(env)}
    expect = {}
    for left, right in zip(env.pieces, env.pieces[1:]):
        if left.label != right.label:
            expect[left.hi] = "interdiction-point"
        elif left.line != right.line:
            expect[left.hi] = "breakpoint"
    assert marks == expect
