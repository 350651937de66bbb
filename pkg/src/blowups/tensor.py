"""The d-ary intersection form of the exceptional components.

After a sequence of point blow-ups in ambient dimension ``d`` the
exceptional components span a free abelian group on which the degree-zero
intersection products ``H_{i_1} ... H_{i_d}`` define a symmetric d-linear
integer form.  The form is determined by the proximity data through the
total transforms ``H_i^*``: distinct total transforms have vanishing mixed
products, the pure power satisfies ``(H_k^*)^d = (-1)^{d-1} deg(k)``, and
the strict transform expands as ``H_i = H_i^* - sum(H_b^* for b proximate
to i)``.  Writing ``C`` for that strict-to-total change of basis,

    T(i_1, ..., i_d) = (-1)^{d-1} * sum_k C[i_1][k] * ... * C[i_d][k] * deg(k).

Entries are stored sparsely, keyed by nondecreasing index tuples; every
absent entry is zero.  All arithmetic is exact integer arithmetic.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .forest import MarkedPartition, ProximityForest

__all__ = [
    "IntersectionTensor",
    "TotalTransformMatrix",
    "total_transform_matrix",
    "tensor_from_forest",
    "evaluate",
    "quotient_tensor",
    "diagonal",
]


@dataclass(frozen=True)
class TotalTransformMatrix:
    """Strict transforms expanded in the total-transform basis.

    ``rows[i-1][k-1]`` is the coefficient of ``H_k^*`` in ``H_i``: 1 on the
    diagonal, -1 at columns ``k`` proximate to ``i`` (all with ``k > i``),
    0 elsewhere.  The matrix is unit upper triangular.
    """

    rows: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.rows)

    def row(self, i: int) -> tuple[int, ...]:
        return self.rows[i - 1]

    def inverse(self) -> tuple[tuple[int, ...], ...]:
        """Rows of the inverse matrix: total transforms in component coordinates.

        Row ``i`` expresses ``H_i^*`` as a nonnegative integer combination
        of strict transforms, by back substitution in
        ``H_i^* = H_i + sum(H_b^* for b proximate to i)``.
        """
        m = self.size
        inv: list[list[int]] = [[0] * m for _ in range(m)]
        for i in range(m - 1, -1, -1):
            row = list(e_basis(m, i))
            for k in range(i + 1, m):
                if self.rows[i][k] == -1:
                    for c in range(m):
                        row[c] += inv[k][c]
            inv[i] = row
        return tuple(tuple(r) for r in inv)


def e_basis(m: int, i: int) -> tuple[int, ...]:
    """The ``i``-th (0-based) standard basis vector of length ``m``."""
    return tuple(1 if c == i else 0 for c in range(m))


@dataclass(frozen=True, eq=True)
class IntersectionTensor:
    """A symmetric d-linear integer form on ``size`` components.

    ``entries`` maps nondecreasing index tuples of length ``dimension``
    (1-based indices) to nonzero integers; missing keys are zero.  Keys are
    normalized and zero values dropped at construction.  Instances are
    treated as immutable.
    """

    dimension: int
    size: int
    entries: Mapping[tuple[int, ...], int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean: dict[tuple[int, ...], int] = {}
        for key, value in self.entries.items():
            if len(key) != self.dimension:
                raise ValueError(f"index {key} does not have length {self.dimension}")
            if any(not 1 <= i <= self.size for i in key):
                raise ValueError(f"index {key} out of range 1..{self.size}")
            if value:
                clean[tuple(sorted(key))] = value
        object.__setattr__(self, "entries", clean)

    def value(self, index: Iterable[int]) -> int:
        """The entry at a multi-index, in any order; zero if absent."""
        return self.entries.get(tuple(sorted(index)), 0)


def total_transform_matrix(forest: ProximityForest) -> TotalTransformMatrix:
    m = len(forest)
    rows = []
    for i in range(1, m + 1):
        row = [0] * m
        row[i - 1] = 1
        for k in forest.children(i):
            row[k - 1] = -1
        rows.append(tuple(row))
    return TotalTransformMatrix(tuple(rows))


def tensor_from_forest(forest: ProximityForest) -> IntersectionTensor:
    """The intersection form of a valid forest.

    Column ``k`` of the change-of-basis matrix is supported on ``k`` itself
    (coefficient 1) and the targets of ``k`` (coefficient -1), so at most
    ``d + 1`` components interact through any one total transform; the
    tensor is assembled column by column over those supports.
    """
    d = forest.dimension
    sign = -1 if d % 2 == 0 else 1
    acc: dict[tuple[int, ...], int] = {}
    for k in range(1, len(forest) + 1):
        support = sorted(forest.targets(k) | {k})
        weight = sign * forest.degree(k)
        for key in itertools.combinations_with_replacement(support, d):
            coeff = -1 if (d - key.count(k)) % 2 else 1
            acc[key] = acc.get(key, 0) + weight * coeff
    return IntersectionTensor(d, len(forest), {k: v for k, v in acc.items() if v})


def evaluate(tensor: IntersectionTensor, vectors: Sequence[Sequence[int]]) -> int:
    """The multilinear form applied to ``dimension`` integer vectors.

    Each vector has one coordinate per component (position ``i-1`` is the
    coefficient of component ``i``).  Evaluation sums over either the
    stored entries or the support product of the vectors, whichever is
    cheaper; both routes are exact.
    """
    d, m = tensor.dimension, tensor.size
    if len(vectors) != d:
        raise ValueError(f"expected {d} vectors, got {len(vectors)}")
    supports: list[dict[int, int]] = []
    for v in vectors:
        if len(v) != m:
            raise ValueError(f"expected vectors of length {m}")
        s = {i: int(x) for i, x in enumerate(v, 1) if x}
        if not s:
            return 0
        supports.append(s)
    product_cost = math.prod(len(s) for s in supports)
    if product_cost <= len(tensor.entries) * math.factorial(d):
        total = 0
        for combo in itertools.product(*(tuple(s.items()) for s in supports)):
            value = tensor.entries.get(tuple(sorted(i for i, _ in combo)))
            if value:
                for _, x in combo:
                    value *= x
                total += value
        return total
    union = set().union(*supports)
    total = 0
    for key, value in tensor.entries.items():
        if any(i not in union for i in key):
            continue
        spread = 0
        for arrangement in set(itertools.permutations(key)):
            w = 1
            for slot, i in enumerate(arrangement):
                x = supports[slot].get(i, 0)
                if not x:
                    w = 0
                    break
                w *= x
            spread += w
        total += value * spread
    return total


def quotient_tensor(tensor: IntersectionTensor, partition: MarkedPartition) -> IntersectionTensor:
    """The form induced on the blocks of a partition.

    Block divisors are the sums of their components, so the entry at a
    block multi-index is the evaluation of the form on the corresponding
    indicator vectors.
    """
    partition.check(tensor.size)
    blocks = len(partition)
    indicators = []
    for block in partition.blocks:
        v = [0] * tensor.size
        for i in block:
            v[i - 1] = 1
        indicators.append(v)
    entries: dict[tuple[int, ...], int] = {}
    for key in itertools.combinations_with_replacement(range(1, blocks + 1), tensor.dimension):
        value = evaluate(tensor, [indicators[b - 1] for b in key])
        if value:
            entries[key] = value
    return IntersectionTensor(tensor.dimension, blocks, entries)


def diagonal(tensor: IntersectionTensor) -> list[int]:
    """Pure powers ``T(i, ..., i)`` for every component, in index order."""
    d = tensor.dimension
    return [tensor.value((i,) * d) for i in range(1, tensor.size + 1)]
