"""Recovering a blow-up sequence from its intersection form.

The last blown-up point leaves a *final* component: one whose pure power
and mixed products with every neighbour satisfy the rigid sign pattern
``T(i^d) = (-1)^r T(i^s j^r)`` with ``T(i j^{d-1}) > 0``.  Blowing that
point back down transforms the form by substituting ``e_j + e_i`` for
``e_j`` at every neighbour ``j`` of the final component ``i`` and dropping
``i``.  Iterating numerical contraction recovers the whole sequence: the
degree of the contracted point is ``(-1)^{d-1} T(i^d)`` and its proximity
targets are exactly the components it intersected when it was contracted.

Neighbourhood is decided purely numerically: components ``i`` and ``j``
are disjoint iff every mixed product ``T(i^s j^r)`` with ``r, s >= 1``
vanishes.  Individual mixed products of disjoint-looking supports can
cancel, so emptiness is never inferred from the sparsity pattern alone.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import NotContractibleError, SearchLimitError
from .forest import Point, ProximityForest
from .tensor import IntersectionTensor

__all__ = [
    "ContractionStep",
    "ContractionTrace",
    "empty_intersection",
    "is_final",
    "final_set",
    "contract",
    "recover_sequence",
    "recover_all_orders",
]

DEFAULT_ORDER_LIMIT = 1000


@dataclass(frozen=True)
class ContractionStep:
    """One numerical blow-down, in the index labels current at its stage.

    ``index_map[old - 1]`` is the renumbered index of a surviving
    component (``None`` at the contracted one); survivors keep their
    relative order.
    """

    contracted: int
    degree: int
    proximate_to_current: tuple[int, ...]
    index_map: tuple[int | None, ...]


@dataclass(frozen=True)
class ContractionTrace:
    """A full contraction history.

    ``index_maps[t]`` lists, after ``t + 1`` steps, the original indices
    of the surviving components in their current order; the last entry is
    empty.
    """

    steps: tuple[ContractionStep, ...]
    index_maps: tuple[tuple[int, ...], ...]

    def original_order(self) -> tuple[int, ...]:
        """Original indices in the order they were contracted."""
        order = []
        alive = tuple(range(1, len(self.steps) + 1))
        for step, survivors in zip(self.steps, self.index_maps):
            order.append(alive[step.contracted - 1])
            alive = survivors
        return tuple(order)

    def creation_indices(self) -> dict[int, int]:
        """Map original tensor indices to creation order in the recovered forest."""
        order = self.original_order()
        m = len(order)
        return {orig: m - t for t, orig in enumerate(order)}


def _check_index(tensor: IntersectionTensor, i: int) -> None:
    if not 1 <= i <= tensor.size:
        raise ValueError(f"index {i} out of range 1..{tensor.size}")


def _mixed_key(i: int, s: int, j: int, r: int) -> tuple[int, ...]:
    if i < j:
        return (i,) * s + (j,) * r
    return (j,) * r + (i,) * s


def empty_intersection(tensor: IntersectionTensor, i: int, j: int) -> bool:
    """Whether components ``i`` and ``j`` are disjoint: all mixed products vanish."""
    _check_index(tensor, i)
    _check_index(tensor, j)
    if i == j:
        raise ValueError("indices must differ")
    d = tensor.dimension
    entries = tensor.entries
    return all(entries.get(_mixed_key(i, d - r, j, r), 0) == 0 for r in range(1, d))


def _neighbours(tensor: IntersectionTensor, i: int) -> list[int]:
    return [j for j in range(1, tensor.size + 1) if j != i and not empty_intersection(tensor, i, j)]


def is_final(tensor: IntersectionTensor, i: int) -> bool:
    """Whether component ``i`` can be blown down at this stage.

    Against every neighbour ``j`` the mixed products must satisfy
    ``T(i^d) = (-1)^r T(i^s j^r)`` for all ``r, s >= 1`` with
    ``r + s = d``, with ``T(i j^{d-1}) > 0``.  A component with no
    neighbours is final iff its pure power has the sign of an isolated
    point, ``(-1)^{d-1} T(i^d) > 0``.
    """
    _check_index(tensor, i)
    d = tensor.dimension
    diag = tensor.entries.get((i,) * d, 0)
    neighbours = _neighbours(tensor, i)
    if not neighbours:
        return (diag if d % 2 else -diag) > 0
    for j in neighbours:
        if tensor.entries.get(_mixed_key(i, 1, j, d - 1), 0) <= 0:
            return False
        for r in range(1, d):
            mixed = tensor.entries.get(_mixed_key(i, d - r, j, r), 0)
            if diag != (mixed if r % 2 == 0 else -mixed):
                return False
    return True


def final_set(tensor: IntersectionTensor) -> frozenset[int]:
    return frozenset(i for i in range(1, tensor.size + 1) if is_final(tensor, i))


def contract(tensor: IntersectionTensor, i: int) -> tuple[IntersectionTensor, ContractionStep]:
    """Blow down the final component ``i`` and renumber the survivors.

    The contracted form is the pull-back along ``e_j -> e_j + e_i`` at
    every neighbour ``j`` of ``i``; each new entry expands into at most
    ``2^d`` old entries.
    """
    if not is_final(tensor, i):
        raise ValueError(f"component {i} is not final")
    d, m = tensor.dimension, tensor.size
    neighbours = frozenset(_neighbours(tensor, i))
    alive = [a for a in range(1, m + 1) if a != i]
    renumber = {a: a if a < i else a - 1 for a in alive}
    entries: dict[tuple[int, ...], int] = {}
    for key in itertools.combinations_with_replacement(alive, d):
        options = [(a, i) if a in neighbours else (a,) for a in key]
        value = 0
        for combo in itertools.product(*options):
            value += tensor.entries.get(tuple(sorted(combo)), 0)
        if value:
            entries[tuple(renumber[a] for a in key)] = value
    diag = tensor.entries.get((i,) * d, 0)
    step = ContractionStep(
        contracted=i,
        degree=diag if d % 2 else -diag,
        proximate_to_current=tuple(sorted(neighbours)),
        index_map=tuple(renumber.get(a) for a in range(1, m + 1)),
    )
    return IntersectionTensor(d, m - 1, entries), step


def _assemble(dimension: int, size: int, events: list[tuple[int, int, frozenset[int]]]) -> ProximityForest:
    """Rebuild the forest from ``(original index, degree, original proximities)`` per step."""
    creation = {orig: size - t for t, (orig, _, _) in enumerate(events)}
    points: list[Point | None] = [None] * size
    for orig, degree, proximities in events:
        points[creation[orig] - 1] = Point(degree, frozenset(creation[p] for p in proximities))
    return ProximityForest(dimension, tuple(points))  # type: ignore[arg-type]


def recover_sequence(tensor: IntersectionTensor) -> tuple[ProximityForest, ContractionTrace]:
    """Recover the blow-up sequence of a tensor by iterated contraction.

    At every stage the smallest final index is contracted; the point
    contracted at step ``t`` of ``m`` receives creation index
    ``m + 1 - t``.  Raises :class:`NotContractibleError` when a nonempty
    stage has no final component, i.e. the input is not the intersection
    form of any blow-up sequence.
    """
    current = tensor
    alive = list(range(1, tensor.size + 1))
    steps: list[ContractionStep] = []
    maps: list[tuple[int, ...]] = []
    events: list[tuple[int, int, frozenset[int]]] = []
    while current.size:
        finals = final_set(current)
        if not finals:
            raise NotContractibleError(f"no final component at stage {len(steps) + 1}")
        chosen = min(finals)
        current, step = contract(current, chosen)
        events.append((alive[chosen - 1], step.degree, frozenset(alive[j - 1] for j in step.proximate_to_current)))
        del alive[chosen - 1]
        steps.append(step)
        maps.append(tuple(alive))
    forest = _assemble(tensor.dimension, tensor.size, events)
    return forest, ContractionTrace(tuple(steps), tuple(maps))


def recover_all_orders(
    tensor: IntersectionTensor, limit: int = DEFAULT_ORDER_LIMIT
) -> list[tuple[ProximityForest, ContractionTrace]]:
    """Every contraction order of a tensor, depth first by ascending index.

    Results are in lexicographic order of the contracted index sequences.
    Raises :class:`SearchLimitError` if more than ``limit`` complete
    orders exist and :class:`NotContractibleError` if any branch reaches a
    nonempty stage with no final component.
    """
    if limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    results: list[tuple[ProximityForest, ContractionTrace]] = []

    def walk(
        current: IntersectionTensor,
        alive: list[int],
        steps: list[ContractionStep],
        maps: list[tuple[int, ...]],
        events: list[tuple[int, int, frozenset[int]]],
    ) -> None:
        if not current.size:
            if len(results) >= limit:
                raise SearchLimitError(f"more than {limit} contraction orders")
            results.append(
                (_assemble(tensor.dimension, tensor.size, events), ContractionTrace(tuple(steps), tuple(maps)))
            )
            return
        finals = final_set(current)
        if not finals:
            raise NotContractibleError(f"no final component at stage {len(steps) + 1}")
        for chosen in sorted(finals):
            nxt, step = contract(current, chosen)
            survivors = alive[: chosen - 1] + alive[chosen:]
            walk(
                nxt,
                survivors,
                steps + [step],
                maps + [tuple(survivors)],
                events + [(alive[chosen - 1], step.degree, frozenset(alive[j - 1] for j in step.proximate_to_current))],
            )

    walk(tensor, list(range(1, tensor.size + 1)), [], [], [])
    return results
