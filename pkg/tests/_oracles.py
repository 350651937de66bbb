"""Independent reference implementations used only by the tests.

Everything here is deliberately naive: brute-force sums over all index
tuples, all-permutations searches, and direct surface intersection counts.
None of it shares code with the package beyond the public data types, so
agreement is meaningful.
"""

from __future__ import annotations

import itertools
import random

from blowups import IntersectionTensor, MarkedPartition, Point, ProximityForest


def oracle_tensor(forest: ProximityForest) -> IntersectionTensor:
    """Entry-by-entry expansion into total transforms, m^d tuples per entry."""
    d, m = forest.dimension, len(forest)
    # coeff[i][k] of the k-th total transform in the i-th strict transform
    coeff = [[0] * (m + 1) for _ in range(m + 1)]
    for i in range(1, m + 1):
        coeff[i][i] = 1
    for k in range(1, m + 1):
        for i in forest.targets(k):
            coeff[i][k] = -1
    sign = (-1) ** (d - 1)
    entries = {}
    for key in itertools.combinations_with_replacement(range(1, m + 1), d):
        total = 0
        for ks in itertools.product(range(1, m + 1), repeat=d):
            if len(set(ks)) != 1:
                continue
            term = sign * forest.degree(ks[0])
            for slot, i in enumerate(key):
                term *= coeff[i][ks[slot]]
            total += term
        if total:
            entries[key] = total
    return IntersectionTensor(d, m, entries)


def oracle_surface_intersection(forest: ProximityForest, i: int, j: int) -> int:
    """Intersection number of strict transforms on a surface, from proximities alone.

    For a < b this is deg(b) when b is proximate to a (else 0), minus the
    degrees of all points proximate to both.
    """
    a, b = min(i, j), max(i, j)
    direct = forest.degree(b) if a in forest.targets(b) else 0
    shared = sum(
        forest.degree(k) for k in range(1, len(forest) + 1) if {a, b} <= forest.targets(k)
    )
    return direct - shared


def apply_permutation(tensor: IntersectionTensor, perm: tuple[int, ...]) -> IntersectionTensor:
    entries = {
        tuple(sorted(perm[i - 1] for i in key)): value for key, value in tensor.entries.items()
    }
    return IntersectionTensor(tensor.dimension, tensor.size, entries)


def brute_force_tensor_equivalent(t1: IntersectionTensor, t2: IntersectionTensor) -> tuple[int, ...] | None:
    """All m! permutations, first match wins."""
    if t1.size != t2.size:
        return None
    for perm in itertools.permutations(range(1, t1.size + 1)):
        if apply_permutation(t1, perm).entries == t2.entries:
            return perm
    return None


def brute_force_forest_isomorphic(f1: ProximityForest, f2: ProximityForest) -> tuple[int, ...] | None:
    if len(f1) != len(f2):
        return None
    m = len(f1)
    for perm in itertools.permutations(range(1, m + 1)):
        if all(
            f2.degree(perm[i - 1]) == f1.degree(i)
            and {perm[j - 1] for j in f1.targets(i)} == f2.targets(perm[i - 1])
            for i in range(1, m + 1)
        ):
            return perm
    return None


def brute_force_orbits(automorphism_test, size: int) -> tuple[tuple[int, ...], ...]:
    """Orbits under all permutations passing ``automorphism_test``."""
    parent = list(range(size + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for perm in itertools.permutations(range(1, size + 1)):
        if automorphism_test(perm):
            for i in range(1, size + 1):
                a, b = find(i), find(perm[i - 1])
                if a != b:
                    parent[a] = b
    groups: dict[int, list[int]] = {}
    for i in range(1, size + 1):
        groups.setdefault(find(i), []).append(i)
    return tuple(tuple(sorted(g)) for g in sorted(groups.values(), key=min))


def brute_force_tensor_orbits(tensor: IntersectionTensor) -> tuple[tuple[int, ...], ...]:
    return brute_force_orbits(
        lambda perm: apply_permutation(tensor, perm).entries == tensor.entries, tensor.size
    )


def brute_force_forest_orbits(forest: ProximityForest) -> tuple[tuple[int, ...], ...]:
    def is_automorphism(perm: tuple[int, ...]) -> bool:
        return all(
            forest.degree(perm[i - 1]) == forest.degree(i)
            and {perm[j - 1] for j in forest.targets(i)} == forest.targets(perm[i - 1])
            for i in range(1, len(forest) + 1)
        )

    return brute_force_orbits(is_automorphism, len(forest))


def random_relabel(forest: ProximityForest, rng: random.Random) -> tuple[ProximityForest, tuple[int, ...]]:
    """Relabel along a random linear extension of the proximity order.

    Returns the relabelled forest and the permutation sending old indices
    to new ones; the result is a valid forest isomorphic to the input.
    """
    m = len(forest)
    placed: dict[int, int] = {}
    ready = [i for i in range(1, m + 1) if not forest.targets(i)]
    while ready:
        pick = ready.pop(rng.randrange(len(ready)))
        placed[pick] = len(placed) + 1
        for i in range(1, m + 1):
            if i not in placed and i not in ready and forest.targets(i) <= placed.keys():
                ready.append(i)
    points = [None] * m
    for old, new in placed.items():
        points[new - 1] = Point(forest.degree(old), frozenset(placed[j] for j in forest.targets(old)))
    perm = tuple(placed[i] for i in range(1, m + 1))
    return ProximityForest(forest.dimension, tuple(points)), perm


def random_partition(size: int, rng: random.Random) -> MarkedPartition:
    """A uniform-ish random partition of 1..size."""
    blocks: list[set[int]] = []
    for i in range(1, size + 1):
        if blocks and rng.random() < 0.6:
            rng.choice(blocks).add(i)
        else:
            blocks.append({i})
    rng.shuffle(blocks)
    return MarkedPartition(tuple(frozenset(b) for b in blocks))


def random_partition_inside(orbits: tuple[tuple[int, ...], ...], rng: random.Random) -> MarkedPartition:
    """A random partition refining the given orbit partition."""
    blocks: list[frozenset[int]] = []
    for orbit in orbits:
        members = list(orbit)
        rng.shuffle(members)
        while members:
            cut = rng.randint(1, len(members))
            blocks.append(frozenset(members[:cut]))
            members = members[cut:]
    rng.shuffle(blocks)
    return MarkedPartition(tuple(blocks))


def enumerate_forests(dimension: int, size: int, max_degree: int):
    """Every valid forest with exactly ``size`` points and degrees up to ``max_degree``."""
    target_choices = []
    for i in range(1, size + 1):
        earlier = range(1, i)
        choices = [
            frozenset(c)
            for t in range(0, min(dimension, i - 1) + 1)
            for c in itertools.combinations(earlier, t)
        ]
        target_choices.append(choices)
    degree_choices = itertools.product(range(1, max_degree + 1), repeat=size)
    all_targets = list(itertools.product(*target_choices)) if size else [()]
    for degrees in degree_choices:
        for targets in all_targets:
            yield ProximityForest(
                dimension, tuple(Point(d, t) for d, t in zip(degrees, targets))
            )
