"""
All contraction orders agree
============================

Several components can be final at the same time, so a tensor may admit
many contraction orders.  They all recover isomorphic forests: the
choice made at each stage never matters in the end.
"""

from blowups import (
    ProximityForest,
    canonical_form,
    recover_all_orders,
    tensor_from_forest,
)

# Two independent chains of two points each; either chain can go first.
forest = ProximityForest.make(2, (1, []), (2, [1]), (1, []), (2, [3]))
tensor = tensor_from_forest(forest)

results = recover_all_orders(tensor)
print(f"{len(results)} contraction orders:")
for recovered, trace in results:
    print("  contracted original indices in order", trace.original_order())

hashes = {canonical_form(recovered).hash for recovered, _ in results}
print("distinct recovered forests up to isomorphism:", len(hashes))

# The recovered labelled forests can differ (creation order is not unique),
# but every one is a relabelling of every other.
distinct = {recovered for recovered, _ in results}
print("distinct labelled forests:", len(distinct))
for shape in sorted(
    [(p.degree, sorted(p.proximate_to)) for p in recovered.points]
    for recovered in distinct
):
    print("  ", shape)
