"""
Two blow-up sequences with the same diagonal
============================================

Three points blown up in a row, each on the exceptional divisor of the
previous one.  The degrees (1, 1, 3) and (1, 2, 2) give intersection
tensors with the same diagonal multiset {-2, -3, -4}, yet no relabelling
of components carries one tensor onto the other: the diagonal alone does
not determine the sequence.
"""

from blowups import (
    ProximityForest,
    diagonal,
    tensor_equivalent,
    tensor_from_forest,
    total_transform_matrix,
)

# Each point is (degree, points it is proximate to); indices are creation order.
chain = ProximityForest.make(4, (1, []), (1, [1]), (3, [2]))
other = ProximityForest.make(4, (1, []), (2, [1]), (2, [2]))

# The proximity matrix has 1 on the diagonal and -1 below each proximity.
print("proximity matrix of the first chain:")
for row in total_transform_matrix(chain).rows:
    print("  ", row)

# Entries are stored sparsely over sorted index multisets; every absent
# multiset is an exact integer zero.
for name, forest in (("degrees (1,1,3)", chain), ("degrees (1,2,2)", other)):
    tensor = tensor_from_forest(forest)
    print(f"\n{name}: diagonal {diagonal(tensor)}")
    for key, value in sorted(tensor.entries.items()):
        print(f"  T{key} = {value}")

t1 = tensor_from_forest(chain)
t2 = tensor_from_forest(other)
print("\nsame diagonal multiset:", sorted(diagonal(t1)) == sorted(diagonal(t2)))
print("equivalent tensors:", tensor_equivalent(t1, t2) is not None)

# The same contrast survives on surfaces (2 slots instead of 4).
s1 = tensor_from_forest(ProximityForest.make(2, (1, []), (1, [1]), (3, [2])))
s2 = tensor_from_forest(ProximityForest.make(2, (1, []), (2, [1]), (2, [2])))
print("\non a surface, diagonals", diagonal(s1), "and", diagonal(s2))
print("equivalent surface forms:", tensor_equivalent(s1, s2) is not None)
