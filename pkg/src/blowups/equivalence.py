"""Deciding combinatorial equivalence of forests, tensors, and markings.

Two sequences are combinatorially equivalent when some bijection of their
points preserves degrees and proximity; two intersection tensors are
equivalent when some index permutation carries one onto the other entry by
entry.  For genuine blow-up tensors the two notions coincide, and this
module exploits that: :func:`tensor_equivalent` first recovers the
sequences by numerical contraction and decides isomorphism on the cheap
degree-labelled proximity DAGs, then verifies the induced permutation on
every stored entry.  A direct backtracking matcher on tensors
(:func:`tensor_equivalent_direct`) is implemented independently and serves
as an oracle for the recovery route; the two are cross-checked in the test
suite and never merged.

Both routes share one canonical-labelling search: iterative colour
refinement (seeded with degrees, diagonal values, and for forests the
proximity depth) followed by lexicographically minimal relabelling, with
discovered automorphisms pruning symmetric branches.  Canonical hashes are
SHA-256 over the canonical JSON serialization of the relabelled object;
equivalent inputs produce byte-identical hashes.  Permutations are plain
tuples ``p`` with ``p[i-1]`` the image of index ``i``; every permutation
returned by this module has been verified exhaustively against its inputs.
"""

from __future__ import annotations

import hashlib
from collections import Counter
from dataclasses import dataclass

from . import io
from .contraction import recover_sequence
from .errors import NotContractibleError, SearchLimitError
from .forest import MarkedPartition, Point, ProximityForest, block_degree, block_proximity
from .tensor import IntersectionTensor, diagonal, quotient_tensor

__all__ = [
    "CanonicalForm",
    "canonical_form",
    "forest_isomorphic",
    "tensor_equivalent",
    "tensor_equivalent_direct",
    "marked_forest_equivalent",
    "marked_tensor_equivalent",
    "automorphism_orbits",
    "partition_compatible_morphism",
    "partition_compatible_sequence",
]

DEFAULT_NODE_LIMIT = 200_000


@dataclass(frozen=True)
class CanonicalForm:
    """A canonical relabelling, the relabelled object, and its hash.

    ``relabeling[i-1]`` is the canonical label of input index ``i``;
    ``hash`` is the lowercase hex SHA-256 digest of the canonical
    serialization of ``relabeled``.
    """

    relabeling: tuple[int, ...]
    relabeled: "ProximityForest | IntersectionTensor"
    hash: str


def _ranks(keys: list) -> list[int]:
    order = {key: rank for rank, key in enumerate(sorted(set(keys)))}
    return [order[key] for key in keys]


class _ForestStructure:
    """Vertex-coloured view of a forest for the canonical search.

    Initial colours carry the proximity depth first, so every refinement
    stays compatible with creation order and the canonical relabelling is
    itself a valid forest.
    """

    def __init__(self, forest: ProximityForest):
        self.forest = forest
        self.n = len(forest)
        self.targets = [sorted(j - 1 for j in p.proximate_to) for p in forest.points]
        self.children: list[list[int]] = [[] for _ in range(self.n)]
        for v, ts in enumerate(self.targets):
            for u in ts:
                self.children[u].append(v)
        self.degrees = [p.degree for p in forest.points]
        self.depth = [0] * self.n
        for v in range(self.n):
            self.depth[v] = 1 + max((self.depth[u] for u in self.targets[v]), default=-1)

    def initial_colors(self) -> list:
        return [(self.depth[v], self.degrees[v]) for v in range(self.n)]

    def fingerprint(self, v: int, colors: list[int]):
        return (
            tuple(sorted(colors[u] for u in self.targets[v])),
            tuple(sorted(colors[u] for u in self.children[v])),
        )

    def relabel(self, labels: list[int]) -> ProximityForest:
        inverse = [0] * self.n
        for v, label in enumerate(labels):
            inverse[label - 1] = v
        points = []
        for new in range(self.n):
            old = inverse[new]
            points.append(Point(self.degrees[old], frozenset(labels[u] for u in self.targets[old])))
        return ProximityForest(self.forest.dimension, tuple(points))

    def serialize(self, labels: list[int]) -> bytes:
        return io.canonical_json(io.forest_to_dict(self.relabel(labels))).encode()

    def is_automorphism(self, sigma: tuple[int, ...]) -> bool:
        for v in range(self.n):
            if self.degrees[sigma[v]] != self.degrees[v]:
                return False
            if {sigma[u] for u in self.targets[v]} != set(self.targets[sigma[v]]):
                return False
        return True


class _TensorStructure:
    """Index-coloured view of a tensor for the canonical search."""

    def __init__(self, tensor: IntersectionTensor):
        self.tensor = tensor
        self.n = tensor.size
        self.diag = diagonal(tensor)
        self.incidence: list[list[tuple[int, int, tuple[tuple[int, int], ...]]]] = [[] for _ in range(self.n)]
        for key, value in tensor.entries.items():
            counts = Counter(key)
            for i, mult in counts.items():
                others = tuple(sorted((j - 1, c) for j, c in counts.items() if j != i))
                self.incidence[i - 1].append((mult, value, others))

    def initial_colors(self) -> list:
        return [(self.diag[v],) for v in range(self.n)]

    def fingerprint(self, v: int, colors: list[int]):
        items = []
        for mult, value, others in self.incidence[v]:
            items.append((mult, value, tuple(sorted((colors[u], c) for u, c in others))))
        return tuple(sorted(items))

    def relabel(self, labels: list[int]) -> IntersectionTensor:
        entries = {
            tuple(sorted(labels[i - 1] for i in key)): value
            for key, value in self.tensor.entries.items()
        }
        return IntersectionTensor(self.tensor.dimension, self.n, entries)

    def serialize(self, labels: list[int]) -> bytes:
        return io.canonical_json(io.tensor_to_dict(self.relabel(labels))).encode()

    def is_automorphism(self, sigma: tuple[int, ...]) -> bool:
        entries = self.tensor.entries
        for key, value in entries.items():
            image = tuple(sorted(sigma[i - 1] + 1 for i in key))
            if entries.get(image, 0) != value:
                return False
        return True


class _BlockGraphStructure:
    """Degree-labelled block-proximity digraph (loops and 2-cycles allowed)."""

    def __init__(self, degrees: tuple[int, ...], edges: frozenset[tuple[int, int]]):
        self.degrees = degrees
        self.edges = edges
        self.n = len(degrees)
        self.out: list[list[int]] = [[] for _ in range(self.n)]
        self.inn: list[list[int]] = [[] for _ in range(self.n)]
        for a, b in edges:
            self.out[a].append(b)
            self.inn[b].append(a)

    def initial_colors(self) -> list:
        return [(self.degrees[v], 1 if (v, v) in self.edges else 0) for v in range(self.n)]

    def fingerprint(self, v: int, colors: list[int]):
        return (
            tuple(sorted(colors[u] for u in self.out[v])),
            tuple(sorted(colors[u] for u in self.inn[v])),
        )

    def serialize(self, labels: list[int]) -> bytes:
        degrees = [0] * self.n
        for v in range(self.n):
            degrees[labels[v] - 1] = self.degrees[v]
        edges = sorted([labels[a], labels[b]] for a, b in self.edges)
        return io.canonical_json({"degrees": degrees, "edges": edges}).encode()

    def is_automorphism(self, sigma: tuple[int, ...]) -> bool:
        if any(self.degrees[sigma[v]] != self.degrees[v] for v in range(self.n)):
            return False
        return {(sigma[a], sigma[b]) for a, b in self.edges} == set(self.edges)


@dataclass
class _SearchOutcome:
    labels: tuple[int, ...]
    data: bytes
    automorphisms: list[tuple[int, ...]]
    orbit_parent: list[int]


def _search(struct, node_limit: int = DEFAULT_NODE_LIMIT) -> _SearchOutcome:
    """Canonical-labelling backtracking over colour refinements.

    Returns the lexicographically minimal serialization over all discrete
    refinements of the initial colouring, the relabelling achieving it,
    and the automorphisms discovered along the way (any two labellings
    with equal serializations differ by one).  Branches whose chosen
    vertex is already known to lie in the orbit of a tried sibling, under
    automorphisms fixing the current individualization path, are pruned.
    """
    n = struct.n
    if n == 0:
        return _SearchOutcome((), struct.serialize([]), [], [])
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    best: list = [None, None]
    leaves: dict[bytes, list[int]] = {}
    automorphisms: list[tuple[int, ...]] = []
    nodes = 0

    def refine(colors: list[int]) -> list[int]:
        while True:
            keys = [(colors[v], struct.fingerprint(v, colors)) for v in range(n)]
            refined = _ranks(keys)
            if refined == colors:
                return refined
            colors = refined

    def handle_leaf(colors: list[int]) -> None:
        labels = [c + 1 for c in colors]
        data = struct.serialize(labels)
        previous = leaves.get(data)
        if previous is None:
            leaves[data] = labels
        else:
            inverse_prev = [0] * n
            for v, label in enumerate(previous):
                inverse_prev[label - 1] = v
            sigma = tuple(inverse_prev[labels[v] - 1] for v in range(n))
            if any(sigma[v] != v for v in range(n)) and struct.is_automorphism(sigma):
                automorphisms.append(sigma)
                for v in range(n):
                    union(v, sigma[v])
        if best[0] is None or data < best[0]:
            best[0], best[1] = data, labels

    def linked(v: int, tried: list[int], path: tuple[int, ...]) -> bool:
        stabilizer = [s for s in automorphisms if all(s[w] == w for w in path)]
        if not stabilizer:
            return False
        local = list(range(n))

        def lfind(x: int) -> int:
            while local[x] != x:
                local[x] = local[local[x]]
                x = local[x]
            return x

        for s in stabilizer:
            for u in range(n):
                ru, rs = lfind(u), lfind(s[u])
                if ru != rs:
                    local[ru] = rs
        rv = lfind(v)
        return any(lfind(u) == rv for u in tried)

    def descend(colors: list[int], path: tuple[int, ...]) -> None:
        nonlocal nodes
        nodes += 1
        if nodes > node_limit:
            raise SearchLimitError(f"canonical search exceeded {node_limit} nodes")
        colors = refine(colors)
        counts = Counter(colors)
        cell = min((c for c, k in counts.items() if k > 1), default=None)
        if cell is None:
            handle_leaf(colors)
            return
        members = sorted(v for v in range(n) if colors[v] == cell)
        tried: list[int] = []
        for v in members:
            if tried and linked(v, tried, path):
                continue
            tried.append(v)
            child = [2 * c + 1 for c in colors]
            child[v] = 2 * cell
            descend(child, path + (v,))

    descend(_ranks(struct.initial_colors()), ())
    return _SearchOutcome(tuple(best[1]), best[0], automorphisms, parent)


def _structure_for(obj):
    if isinstance(obj, ProximityForest):
        return _ForestStructure(obj)
    if isinstance(obj, IntersectionTensor):
        return _TensorStructure(obj)
    raise TypeError(f"expected a forest or a tensor, got {type(obj).__name__}")


def canonical_form(obj: "ProximityForest | IntersectionTensor") -> CanonicalForm:
    """Canonical relabelling and hash; equal hashes characterize equivalence."""
    struct = _structure_for(obj)
    outcome = _search(struct)
    relabeled = struct.relabel(list(outcome.labels)) if struct.n else obj
    return CanonicalForm(outcome.labels, relabeled, hashlib.sha256(outcome.data).hexdigest())


def _orbits_from_parent(parent: list[int]) -> tuple[tuple[int, ...], ...]:
    groups: dict[int, list[int]] = {}
    for v in range(len(parent)):
        root = v
        while parent[root] != root:
            root = parent[root]
        groups.setdefault(root, []).append(v + 1)
    return tuple(tuple(sorted(g)) for g in sorted(groups.values(), key=min))


def automorphism_orbits(obj: "ProximityForest | IntersectionTensor") -> tuple[tuple[int, ...], ...]:
    """Orbits of the automorphism group on indices, as a sorted partition."""
    outcome = _search(_structure_for(obj))
    return _orbits_from_parent(outcome.orbit_parent)


def _compose(labels1: tuple[int, ...], labels2: tuple[int, ...]) -> tuple[int, ...]:
    """The map sending index ``i`` of object 1 to the index of object 2 with the same canonical label."""
    inverse2 = [0] * len(labels2)
    for v, label in enumerate(labels2):
        inverse2[label - 1] = v + 1
    return tuple(inverse2[labels1[i] - 1] for i in range(len(labels1)))


def _forest_map_ok(f1: ProximityForest, f2: ProximityForest, perm: tuple[int, ...]) -> bool:
    if sorted(perm) != list(range(1, len(f1) + 1)):
        return False
    for i, p in enumerate(f1.points, 1):
        if f2.degree(perm[i - 1]) != p.degree:
            return False
        if {perm[j - 1] for j in p.proximate_to} != f2.targets(perm[i - 1]):
            return False
    return sum(len(p.proximate_to) for p in f1.points) == sum(len(p.proximate_to) for p in f2.points)


def _tensor_map_ok(t1: IntersectionTensor, t2: IntersectionTensor, perm: tuple[int, ...]) -> bool:
    if len(t1.entries) != len(t2.entries):
        return False
    for key, value in t1.entries.items():
        if t2.entries.get(tuple(sorted(perm[i - 1] for i in key)), 0) != value:
            return False
    return True


def forest_isomorphic(f1: ProximityForest, f2: ProximityForest) -> tuple[int, ...] | None:
    """A degree- and proximity-preserving bijection of points, or ``None``."""
    if f1.dimension != f2.dimension:
        raise ValueError(f"dimension mismatch: {f1.dimension} vs {f2.dimension}")
    if len(f1) != len(f2):
        return None
    if sorted(p.degree for p in f1.points) != sorted(p.degree for p in f2.points):
        return None
    c1 = canonical_form(f1)
    c2 = canonical_form(f2)
    if c1.hash != c2.hash:
        return None
    perm = _compose(c1.relabeling, c2.relabeling)
    if not _forest_map_ok(f1, f2, perm):
        raise RuntimeError("canonical relabelling failed verification")
    return perm


def tensor_equivalent_direct(t1: IntersectionTensor, t2: IntersectionTensor) -> tuple[int, ...] | None:
    """Backtracking tensor matcher, independent of sequence recovery."""
    if t1.dimension != t2.dimension:
        raise ValueError(f"dimension mismatch: {t1.dimension} vs {t2.dimension}")
    if t1.size != t2.size or len(t1.entries) != len(t2.entries):
        return None
    if sorted(diagonal(t1)) != sorted(diagonal(t2)):
        return None
    c1 = canonical_form(t1)
    c2 = canonical_form(t2)
    if c1.hash != c2.hash:
        return None
    perm = _compose(c1.relabeling, c2.relabeling)
    if not _tensor_map_ok(t1, t2, perm):
        raise RuntimeError("canonical relabelling failed verification")
    return perm


def tensor_equivalent(t1: IntersectionTensor, t2: IntersectionTensor) -> tuple[int, ...] | None:
    """An index permutation carrying ``t1`` onto ``t2``, or ``None``.

    Both tensors are first contracted back to forests; when that succeeds
    the decision reduces to forest isomorphism and the induced permutation
    is verified on every stored entry.  Tensors that are not blow-up
    tensors (where recovery fails on both sides) fall back to the direct
    matcher.
    """
    if t1.dimension != t2.dimension:
        raise ValueError(f"dimension mismatch: {t1.dimension} vs {t2.dimension}")
    if t1.size != t2.size or len(t1.entries) != len(t2.entries):
        return None
    if sorted(diagonal(t1)) != sorted(diagonal(t2)):
        return None
    try:
        f1, trace1 = recover_sequence(t1)
    except NotContractibleError:
        f1, trace1 = None, None
    try:
        f2, trace2 = recover_sequence(t2)
    except NotContractibleError:
        f2, trace2 = None, None
    if (f1 is None) != (f2 is None):
        return None
    if f1 is None:
        return tensor_equivalent_direct(t1, t2)
    psi = forest_isomorphic(f1, f2)
    if psi is None:
        return None
    creation1 = trace1.creation_indices()
    original2 = {c: orig for orig, c in trace2.creation_indices().items()}
    perm = tuple(original2[psi[creation1[o] - 1]] for o in range(1, t1.size + 1))
    if _tensor_map_ok(t1, t2, perm):
        return perm
    return tensor_equivalent_direct(t1, t2)


def marked_forest_equivalent(
    f1: ProximityForest,
    p1: MarkedPartition,
    f2: ProximityForest,
    p2: MarkedPartition,
) -> tuple[int, ...] | None:
    """A block bijection preserving block degrees and block proximity, or ``None``."""
    if f1.dimension != f2.dimension:
        raise ValueError(f"dimension mismatch: {f1.dimension} vs {f2.dimension}")
    p1.check(len(f1))
    p2.check(len(f2))
    if len(p1) != len(p2):
        raise ValueError(f"block count mismatch: {len(p1)} vs {len(p2)}")
    g1 = _block_graph(f1, p1)
    g2 = _block_graph(f2, p2)
    if sorted(g1.degrees) != sorted(g2.degrees) or len(g1.edges) != len(g2.edges):
        return None
    o1 = _search(g1)
    o2 = _search(g2)
    if o1.data != o2.data:
        return None
    perm = _compose(o1.labels, o2.labels)
    if any(g2.degrees[perm[v] - 1] != g1.degrees[v] for v in range(g1.n)):
        raise RuntimeError("canonical relabelling failed verification")
    if {(perm[a] - 1, perm[b] - 1) for a, b in g1.edges} != set(g2.edges):
        raise RuntimeError("canonical relabelling failed verification")
    return perm


def _block_graph(forest: ProximityForest, partition: MarkedPartition) -> _BlockGraphStructure:
    degrees = tuple(block_degree(forest, partition, b) for b in range(1, len(partition) + 1))
    edges = frozenset((a - 1, b - 1) for a, b in block_proximity(forest, partition))
    return _BlockGraphStructure(degrees, edges)


def marked_tensor_equivalent(
    t1: IntersectionTensor,
    p1: MarkedPartition,
    t2: IntersectionTensor,
    p2: MarkedPartition,
) -> tuple[int, ...] | None:
    """Equivalence of the forms induced on blocks, as a block permutation."""
    if t1.dimension != t2.dimension:
        raise ValueError(f"dimension mismatch: {t1.dimension} vs {t2.dimension}")
    p1.check(t1.size)
    p2.check(t2.size)
    if len(p1) != len(p2):
        raise ValueError(f"block count mismatch: {len(p1)} vs {len(p2)}")
    return tensor_equivalent(quotient_tensor(t1, p1), quotient_tensor(t2, p2))


def partition_compatible_morphism(tensor: IntersectionTensor, partition: MarkedPartition) -> bool:
    """Whether every block lies inside one orbit of the tensor's automorphism group."""
    partition.check(tensor.size)
    return _blocks_inside_orbits(partition, automorphism_orbits(tensor))


def partition_compatible_sequence(forest: ProximityForest, partition: MarkedPartition) -> bool:
    """Whether every block lies inside one orbit of the forest's automorphism group."""
    partition.check(len(forest))
    return _blocks_inside_orbits(partition, automorphism_orbits(forest))


def _blocks_inside_orbits(partition: MarkedPartition, orbits: tuple[tuple[int, ...], ...]) -> bool:
    orbit_of: dict[int, int] = {}
    for o, orbit in enumerate(orbits):
        for i in orbit:
            orbit_of[i] = o
    return all(len({orbit_of[i] for i in block}) == 1 for block in partition.blocks)
