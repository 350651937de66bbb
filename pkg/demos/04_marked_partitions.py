"""
Marked partitions: components in blocks
=======================================

A marked partition groups components into blocks that must move
together, modelling points that are indistinguishable from the ground's
point of view.  Two conjugate degree-1 points, marked as one block,
carry exactly the same numerical data as a single degree-2 point.
"""

from blowups import (
    MarkedPartition,
    ProximityForest,
    automorphism_orbits,
    marked_forest_equivalent,
    marked_tensor_equivalent,
    partition_compatible_sequence,
    quotient_tensor,
    tensor_from_forest,
)

pair = ProximityForest.make(2, (1, []), (1, []))
fat = ProximityForest.make(2, (2, []))
merged = MarkedPartition((frozenset({1, 2}),))
single = MarkedPartition.singletons(1)

# The quotient tensor evaluates on sums of the block's components.
t_pair = tensor_from_forest(pair)
print("two conjugate points, separately:", dict(t_pair.entries))
print("merged into one block:          ", dict(quotient_tensor(t_pair, merged).entries))
print("one degree-2 point:             ", dict(tensor_from_forest(fat).entries))

print(
    "\nmarked-equivalent as forests:",
    marked_forest_equivalent(pair, merged, fat, single) is not None,
)
print(
    "marked-equivalent as tensors:",
    marked_tensor_equivalent(t_pair, merged, tensor_from_forest(fat), single) is not None,
)

# A block is only meaningful when its points are interchangeable: every
# block must sit inside one orbit of the automorphism group.
chain = ProximityForest.make(2, (1, []), (1, [1]), (3, [2]))
print("\norbits of the rigid chain:", automorphism_orbits(chain))
print(
    "merging points 2 and 3 of the chain is compatible:",
    partition_compatible_sequence(chain, MarkedPartition((frozenset({1}), frozenset({2, 3})))),
)
print(
    "merging the two conjugate points is compatible:",
    partition_compatible_sequence(pair, merged),
)
