"""Three exact solvers for the parametric matroid interdiction problem.

All three compute the same object: the upper envelope y over all
deletions F of ell elements of the parametric min-basis value functions
y_F, each envelope segment labeled with its optimal deletion set and
interdicted basis.

* solve_brute sweeps every one of the C(m, ell) deleted matroids.
* solve_uset tracks layered bases whose union confines all relevant
  deletion sets, updating them with a few oracle calls per crossing and
  falling back to scratch recomputation when a crossing ripples.
* solve_tree regrows a candidate search tree of replacement chains in
  every cell between consecutive crossings.

A deletion that kills the matroid rank makes y identically +inf; the
reported witness is then always the lexicographically smallest killing
set, so the three solvers agree exactly.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Any, NamedTuple, Sequence

from .envelope import (
    Changepoint,
    Line,
    PiecewiseLinearFunction,
    Piece,
    classify_changepoints,
    concatenate,
    envelope_of_lines,
    interior_point,
    upper_envelope,
)
from .matroid import Matroid
from .parametric import (
    EqualityPoint,
    Interval,
    MatroidInstance,
    ParametricWeight,
    all_equality_points,
    basis_line,
    greedy_min_basis,
    parametric_sweep,
    replacement_element,
)

DEFAULT_ENUM_CAP = 200_000
ENUM_CAP_ENV = "INTERDICTION_ENUM_CAP"


def enumeration_cap() -> int:
    raw = os.environ.get(ENUM_CAP_ENV)
    return int(raw) if raw else DEFAULT_ENUM_CAP


class EnumerationCapExceeded(Exception):
    def __init__(self, subsets: int, cap: int):
        super().__init__(f"C(m, ell) = {subsets} exceeds the enumeration cap {cap}")
        self.subsets = subsets
        self.cap = cap


class SegmentLabel(NamedTuple):
    """Envelope label: the deletion set and its interdicted basis."""

    f_star: tuple[int, ...]
    basis: tuple[int, ...]


@dataclass(frozen=True)
class InterdictionSolution:
    envelope: PiecewiseLinearFunction
    changepoints: tuple[Changepoint, ...]
    algorithm: str
    oracle_calls: int

    @property
    def segments(self) -> tuple[Piece, ...]:
        return self.envelope.pieces

    def value_at(self, lam):
        return self.envelope.evaluate(lam)

    def f_star_at(self, lam) -> tuple[int, ...]:
        return self.envelope.piece_at(lam).label.f_star


def changepoint_bound(m: int, k: int, l: int) -> int:
    """Worst-case changepoint count of y via the candidate-chain count."""
    return comb(m, 2) * comb(k + l - 2, l - 1) * k


def changepoint_bound_secondary(m: int, k: int, l: int) -> int:
    """Alternative worst-case bound via subsets of the layered-bases union."""
    return comb(m, 2) * comb(k * (l - 1), l - 1) * k


def _winning_set(label):
    # breakpoint vs interdiction point hinges on the deletion set only;
    # the carried basis may swap inside one winner's reign
    return label.f_star if isinstance(label, SegmentLabel) else label


def _classify(env: PiecewiseLinearFunction) -> tuple[Changepoint, ...]:
    return tuple(classify_changepoints(env, key=_winning_set))


# ---------------------------------------------------------------------------
# layered bases


@dataclass(frozen=True)
class LayeredBases:
    """Disjoint greedy bases: layer i is optimal after deleting layers < i.

    Layers keep the requested depth; once the rank is exhausted the
    remaining layers are smaller or empty (the truncated regime).
    """

    layers: tuple[frozenset[int], ...]

    @property
    def depth(self) -> int:
        return len(self.layers)

    @property
    def union(self) -> frozenset[int]:
        out: set[int] = set()
        for layer in self.layers:
            out |= layer
        return frozenset(out)

    @property
    def truncated(self) -> bool:
        top = len(self.layers[0])
        return any(len(layer) < top for layer in self.layers)

    def layer_of(self, e: int) -> int | None:
        for i, layer in enumerate(self.layers):
            if e in layer:
                return i
        return None


def layered_bases(
    matroid: Matroid,
    weights: Sequence[ParametricWeight],
    lam: Fraction,
    depth: int,
) -> LayeredBases:
    if depth < 1:
        raise ValueError("layered bases need depth >= 1")
    layers: list[frozenset[int]] = []
    cur = matroid
    for _ in range(depth):
        if layers and not layers[-1]:
            layers.append(frozenset())  # rank exhausted, stays empty
            continue
        basis = greedy_min_basis(cur, weights, lam)
        layers.append(basis)
        cur = cur.delete(basis)
    return LayeredBases(tuple(layers))


def update_u(
    matroid: Matroid,
    weights: Sequence[ParametricWeight],
    lb: LayeredBases,
    event: EqualityPoint,
    next_probe: Fraction,
) -> LayeredBases:
    """Layered bases valid right of the event, from those valid left of it.

    A lone crossing is an adjacent transposition of the weight order, so
    each layer either keeps its basis or trades e for f, and one
    independence test at e's layer decides which.  When the trade fires
    on the last layer the union simply absorbs f for e.  When it fires
    higher up, every deeper layer is the greedy basis of a minor that
    just changed (f left it, e returned), and a single trade can ripple
    through them arbitrarily, so they are recomputed at next_probe.  In
    the truncated regime the whole structure is recomputed.
    """
    e, f = event.leaving, event.entering
    je = lb.layer_of(e)
    if je is None:  # an outside element got cheaper: nothing can change
        return lb
    jf = lb.layer_of(f)
    if jf is not None and jf <= je:  # f already preferred, or same layer
        return lb
    if lb.truncated:
        return layered_bases(matroid, weights, next_probe, lb.depth)
    layers = lb.layers
    if not matroid.is_independent(layers[je] - {e} | {f}):
        return lb  # swap refused: e keeps its slot and nothing deeper moves
    prefix = list(layers[:je])
    prefix.append(layers[je] - {e} | {f})
    if je == len(layers) - 1:
        return LayeredBases(tuple(prefix))
    deleted: set[int] = set()
    for layer in prefix:
        deleted |= layer
    suffix = layered_bases(
        matroid.delete(deleted), weights, next_probe, len(layers) - je - 1
    )
    return LayeredBases(tuple(prefix) + suffix.layers)


def update_interdicted_set(
    matroid: Matroid,
    F: frozenset[int],
    basis: frozenset[int],
    event: EqualityPoint,
    u1: frozenset[int],
    u2: frozenset[int],
) -> tuple[frozenset[int], frozenset[int]]:
    """Deletion set and interdicted basis right of the event.

    When the union update renamed e to f and e was deleted, the deletion
    set follows the rename; the basis swaps back e for f exactly when f
    was serving as e's replacement (f in basis).  With f absent the
    basis stays put: e only ever entered the picture through f, so a
    basis that never needed f cannot profit from e's return.  Without a
    rename the basis obeys the usual one-test sweep update.
    """
    e, f = event.leaving, event.entering
    if u2 != u1 and e in F:
        new_f = F - {e} | {f}
        if f in basis:
            return new_f, basis - {f} | {e}
        return new_f, basis
    if e in basis and f not in basis and f not in F:
        swapped = basis - {e} | {f}
        if matroid.is_independent(swapped):
            return F, swapped
    return F, basis


# ---------------------------------------------------------------------------
# shared solver plumbing


def _distinct_lams(events: Sequence[EqualityPoint]) -> list[Fraction]:
    out: list[Fraction] = []
    for ev in events:
        if not out or ev.lam != out[-1]:
            out.append(ev.lam)
    return out


def _has_rank(matroid: Matroid, k: int) -> bool:
    if k == 0:
        return True
    chosen: set[int] = set()
    for e in matroid.available:
        chosen.add(e)
        if matroid.is_independent(chosen):
            if len(chosen) == k:
                return True
        else:
            chosen.discard(e)
    return False


def canonical_infinite_label(matroid: Matroid, k: int, ell: int) -> tuple[int, ...]:
    """Lexicographically smallest ell-subset whose deletion kills the rank."""
    for F in combinations(matroid.available, ell):
        if not _has_rank(matroid.delete(F), k):
            return F
    raise ValueError("no deletion of the given size kills the rank")


def _infinite_solution(mat: Matroid, instance: MatroidInstance, algorithm: str) -> InterdictionSolution:
    label = SegmentLabel(canonical_infinite_label(mat, instance.rank, instance.ell), ())
    env = PiecewiseLinearFunction.infinite(instance.interval.lo, instance.interval.hi, label)
    return InterdictionSolution(env, (), algorithm, mat.oracle_calls)


def _zero_rank_solution(mat: Matroid, instance: MatroidInstance, algorithm: str) -> InterdictionSolution:
    # every basis is empty, so every deletion attains the same value 0
    label = SegmentLabel(tuple(mat.available[: instance.ell]), ())
    env = PiecewiseLinearFunction.from_line(
        instance.interval.lo, instance.interval.hi, Line(Fraction(0), Fraction(0)), label
    )
    return InterdictionSolution(env, (), algorithm, mat.oracle_calls)


# ---------------------------------------------------------------------------
# algorithm 1: full enumeration


def solve_brute(instance: MatroidInstance, cap: int | None = None) -> InterdictionSolution:
    """Sweep every deletion set of size ell and take the upper envelope."""
    cap = enumeration_cap() if cap is None else cap
    m = instance.ground_size
    subsets = comb(m, instance.ell)
    if subsets > cap:
        raise EnumerationCapExceeded(subsets, cap)
    mat = instance.matroid.with_fresh_counter()
    k = instance.rank
    if k == 0:
        return _zero_rank_solution(mat, instance, "brute")
    weights, interval = instance.weights, instance.interval
    events = all_equality_points(weights, interval, mat.available)
    funcs = []
    for F in combinations(mat.available, instance.ell):
        sweep = parametric_sweep(mat.delete(F), weights, interval, events=events)
        if len(sweep.cells[0].basis) < k:
            # first killing set in enumeration order is the smallest one
            label = SegmentLabel(F, ())
            env = PiecewiseLinearFunction.infinite(interval.lo, interval.hi, label)
            return InterdictionSolution(env, (), "brute", mat.oracle_calls)
        pieces = tuple(
            Piece(c.lo, c.hi, c.line, SegmentLabel(F, tuple(sorted(c.basis))))
            for c in sweep.cells
        )
        funcs.append(PiecewiseLinearFunction(interval.lo, interval.hi, pieces))
    env = upper_envelope(funcs)
    return InterdictionSolution(env, _classify(env), "brute", mat.oracle_calls)


# ---------------------------------------------------------------------------
# algorithm 2: tracked subsets of the layered-bases union


def solve_uset(instance: MatroidInstance) -> InterdictionSolution:
    """Track all deletion sets inside the layered-bases union across cells.

    Per lone crossing, the union and every tracked (F, basis) pair
    update in a few independence tests each; coincident crossings and
    crossings that reshape the union rebuild the tracked family from
    scratch.  Per cell the envelope of the tracked value lines is
    taken, and the cells concatenate to y.
    """
    mat = instance.matroid.with_fresh_counter()
    k = instance.rank
    ell = instance.ell
    if k == 0:
        return _zero_rank_solution(mat, instance, "uset")
    weights, interval = instance.weights, instance.interval
    events = all_equality_points(weights, interval, mat.available)
    lams = _distinct_lams(events)

    probe = interior_point(interval.lo, lams[0] if lams else interval.hi)
    lb = layered_bases(mat, weights, probe, ell)
    if len(lb.union) < ell:
        # everything outside the union is a loop; deleting the union kills
        return _infinite_solution(mat, instance, "uset")
    tracked = _track_family(mat, weights, probe, lb.union, ell, k)
    if tracked is None:
        return _infinite_solution(mat, instance, "uset")

    cell_envs: list[PiecewiseLinearFunction] = []
    cur_lo = interval.lo
    ev_idx = 0
    for i, lam in enumerate(lams):
        cell_envs.append(_tracked_envelope(tracked, cur_lo, lam))
        next_probe = interior_point(lam, lams[i + 1] if i + 1 < len(lams) else interval.hi)
        group_end = ev_idx
        while group_end < len(events) and events[group_end].lam == lam:
            group_end += 1
        # the one-test updates assume the crossing is a lone adjacent
        # transposition of the weight order; coincident crossings (or a
        # union update that is neither a rename nor a no-op) rebuild
        rebuild = group_end - ev_idx > 1
        if not rebuild:
            ev = events[ev_idx]
            new_lb = update_u(mat, weights, lb, ev, next_probe)
            u1, u2 = lb.union, new_lb.union
            if u2 == u1 or u2 == u1 - {ev.leaving} | {ev.entering}:
                new_tracked = {}
                for F, (basis, line) in tracked.items():
                    F2, B2 = update_interdicted_set(mat, F, basis, ev, u1, u2)
                    new_tracked[F2] = (B2, _shift_line(weights, line, basis, B2))
                tracked = new_tracked
                lb = new_lb
            else:
                rebuild = True
        if rebuild:
            lb = layered_bases(mat, weights, next_probe, ell)
            if len(lb.union) < ell:
                return _infinite_solution(mat, instance, "uset")
            tracked = _track_family(mat, weights, next_probe, lb.union, ell, k)
            if tracked is None:
                return _infinite_solution(mat, instance, "uset")
        ev_idx = group_end
        cur_lo = lam
    cell_envs.append(_tracked_envelope(tracked, cur_lo, interval.hi))
    env = concatenate(cell_envs)
    return InterdictionSolution(env, _classify(env), "uset", mat.oracle_calls)


def _track_family(mat, weights, probe, union, ell, k):
    """Greedy bases for every ell-subset of the union; None on rank kill."""
    tracked: dict[frozenset[int], tuple[frozenset[int], Line]] = {}
    for F in combinations(sorted(union), ell):
        basis = greedy_min_basis(mat.delete(F), weights, probe)
        if len(basis) < k:
            return None
        tracked[frozenset(F)] = (basis, basis_line(weights, basis))
    return tracked


def _shift_line(weights, line: Line, old_basis: frozenset[int], new_basis: frozenset[int]) -> Line:
    if new_basis == old_basis:
        return line
    slope, intercept = line.slope, line.intercept
    for e in old_basis - new_basis:
        slope -= weights[e].b
        intercept -= weights[e].a
    for e in new_basis - old_basis:
        slope += weights[e].b
        intercept += weights[e].a
    return Line(slope, intercept)


def _tracked_envelope(tracked, lo, hi) -> PiecewiseLinearFunction:
    entries = [
        (line, SegmentLabel(tuple(sorted(F)), tuple(sorted(basis))))
        for F, (basis, line) in tracked.items()
    ]
    return envelope_of_lines(entries, lo, hi)


# ---------------------------------------------------------------------------
# algorithm 3: candidate search tree per cell


def candidate_tree(
    matroid: Matroid,
    weights: Sequence[ParametricWeight],
    lam: Fraction,
    ell: int,
) -> list[tuple[frozenset[int], Line | None, frozenset[int]]]:
    """All relevant deletion candidates at lam, with multiplicity.

    Returns (F, value line, interdicted basis) triples; a missing
    replacement yields a +inf candidate (line None).  On a full-rank
    instance the count is exactly k * C(k + ell - 2, ell - 1): each of
    the C(k + ell - 2, ell - 1) leaves expands by all k basis elements.
    """
    root = layered_bases(matroid, weights, lam, ell + 1)
    k = len(root.layers[0])
    out: list[tuple[frozenset[int], Line | None, frozenset[int]]] = []
    if k == 0:
        return out
    nodes: list[tuple[frozenset[int], frozenset[int], tuple[frozenset[int], ...]]] = [
        (frozenset(), frozenset(), root.layers)
    ]
    for _level in range(ell - 1):
        nxt = []
        for F, forbidden, layers in nodes:
            taken: set[int] = set(forbidden)
            for e in sorted(layers[0] - forbidden):
                child = _tree_child(matroid, weights, lam, F, frozenset(taken), layers, e)
                taken.add(e)
                if child is None:
                    out.append((F | {e}, None, frozenset()))
                else:
                    nxt.append(child)
        nodes = nxt
    for F, _forbidden, layers in nodes:
        t0, t1 = layers[0], layers[1]
        for e in sorted(t0):
            r = _tree_replacement(matroid, weights, lam, F, (), layers, 0, e)
            if r is None:
                out.append((F | {e}, None, frozenset()))
            else:
                new_basis = t0 - {e} | {r}
                out.append((F | {e}, basis_line(weights, new_basis), new_basis))
    return out


def _tree_replacement(matroid, weights, lam, F, child_layers, parent_layers, p, x):
    """Replacement of x w.r.t. parent layer p, preferring the next layer.

    When the next layer is as large as the current one it must contain
    the replacement (replacement elements fall through exactly one
    layer), so the search is restricted to it; otherwise the search
    falls back to every element below the repaired layers.
    """
    layer = parent_layers[p]
    nxt = parent_layers[p + 1] if p + 1 < len(parent_layers) else frozenset()
    if nxt and len(nxt) == len(layer):
        return replacement_element(matroid, weights, layer, x, lam, among=nxt)
    pool = set(matroid.available) - F - layer
    for q in range(p):
        pool -= child_layers[q]
    return replacement_element(matroid, weights, layer, x, lam, among=pool)


def _tree_child(matroid, weights, lam, F, forbidden, layers, e):
    """Build the child reached by deleting e, repairing layers by chains.

    Each repaired layer loses its replaced element to the layer above
    and steals the next replacement from below; a replacement found
    outside the maintained layers ends the chain early.  Returns None
    when e has no replacement at all (F + e kills the rank).
    """
    child_depth = len(layers) - 1
    child_layers = list(layers[:child_depth])
    new_f = F | {e}
    p, x = 0, e
    while p < child_depth:
        r = _tree_replacement(matroid, weights, lam, new_f, child_layers, layers, p, x)
        if r is None:
            if p == 0:
                return None
            child_layers[p] = layers[p] - {x}
            break
        child_layers[p] = layers[p] - {x} | {r}
        home = None
        for t in range(p + 1, len(layers)):
            if r in layers[t]:
                home = t
                break
        if home is None or home >= child_depth:
            break
        p, x = home, r
    return (new_f, forbidden, tuple(child_layers))


def solve_tree(instance: MatroidInstance) -> InterdictionSolution:
    """Per cell, grow the candidate tree and take the envelope of its lines."""
    mat = instance.matroid.with_fresh_counter()
    k = instance.rank
    if k == 0:
        return _zero_rank_solution(mat, instance, "tree")
    weights, interval = instance.weights, instance.interval
    events = all_equality_points(weights, interval, mat.available)
    lams = _distinct_lams(events)
    boundaries = [interval.lo, *lams, interval.hi]

    cell_envs: list[PiecewiseLinearFunction] = []
    for lo, hi in zip(boundaries, boundaries[1:]):
        probe = interior_point(lo, hi)
        candidates = candidate_tree(mat, weights, probe, instance.ell)
        if any(line is None for _F, line, _b in candidates):
            return _infinite_solution(mat, instance, "tree")
        unique: dict[frozenset[int], tuple[Line, frozenset[int]]] = {}
        for F, line, basis in candidates:
            unique.setdefault(F, (line, basis))
        entries = [
            (line, SegmentLabel(tuple(sorted(F)), tuple(sorted(basis))))
            for F, (line, basis) in unique.items()
        ]
        cell_envs.append(envelope_of_lines(entries, lo, hi))
    env = concatenate(cell_envs)
    return InterdictionSolution(env, _classify(env), "tree", mat.oracle_calls)


ALGORITHMS = {
    "brute": solve_brute,
    "uset": solve_uset,
    "tree": solve_tree,
}


def solve(instance: MatroidInstance, algorithm: str = "brute") -> InterdictionSolution:
    try:
        fn = ALGORITHMS[algorithm]
    except KeyError:
        raise ValueError(f"unknown algorithm {algorithm!r}; pick one of {sorted(ALGORITHMS)}")
    return fn(instance)
