"""Shared fixtures: the seeded random corpus and its solved form.

The corpus stays inside the documented size caps (graphic <= 7 vertices
and <= 12 edges, uniform and partition m <= 10) so the brute-force
solver remains a usable oracle on every instance. Solutions are
computed once per session and reused by the cross-checking tests.
"""

import time

import pytest

from matroid_interdiction.cli import generate_random, instance_from_dict
from matroid_interdiction.interdiction import ALGORITHMS, solve


# (family, m, k_or_vertices, ell) combos; every generated instance is
# finite-valued by construction, the killed cases live in unit tests.
_GRAPHIC = [
    ("graphic", 12, v, 1) for v in (4, 5, 6, 7)
] + [
    ("graphic", 12, v, 2) for v in (4, 5)
] + [
    ("graphic", 12, v, 3) for v in (3, 4)
]
_UNIFORM = [
    ("uniform", m, k, ell)
    for (m, k) in ((6, 2), (8, 3), (10, 4), (7, 3), (9, 2))
    for ell in (1, 2, 3)
]
_PARTITION = [
    ("partition", m, k, ell)
    for ell in (1, 2)
    for (m, k) in ((9, 3), (10, 3), (8, 2))
] + [
    ("partition", m, k, 3)
    for (m, k) in ((8, 2), (10, 2))
]

_SEEDS = {"graphic": (0, 1, 2, 3), "uniform": (0, 1, 2), "partition": (0, 1, 2)}

CORPUS_SPECS = [
    (family, m, kv, ell, seed)
    for (family, m, kv, ell) in _GRAPHIC + _UNIFORM + _PARTITION
    for seed in _SEEDS[family]
]


def corpus_ids():
    return [f"{f}-m{m}-kv{kv}-l{ell}-s{s}" for (f, m, kv, ell, s) in CORPUS_SPECS]


@pytest.fixture(scope="session")
def corpus():
    instances = []
    for family, m, kv, ell, seed in CORPUS_SPECS:
        data = generate_random(family, m, kv, ell, seed)
        instances.append((f"{family}-m{m}-kv{kv}-l{ell}-s{seed}", instance_from_dict(data)))
    assert len(instances) >= 100
    return instances


@pytest.fixture(scope="session")
def solved_corpus(corpus):
    """{name: {algorithm: solution}} plus per-algorithm wall time totals."""
    solutions = {}
    elapsed = {name: 0.0 for name in ALGORITHMS}
    for name, instance in corpus:
        per = {}
        for algorithm in ALGORITHMS:
            start = time.perf_counter()
            per[algorithm] = solve(instance, algorithm)
            elapsed[algorithm] += time.perf_counter() - start
        solutions[name] = per
    return {"solutions": solutions, "elapsed": elapsed}
