"""Walk a degree-eight weight up to its companions and back down.

The intermediate weight k'' sits outside the minimal cone.  Dividing by the
forced Hasse invariants one at a time brings it back to the starting weight;
the last division only becomes possible after the first three.
"""
import sys

from hmfweights import PlaceStructure, classify_residual, greedy_strip, intermediate_weight, strippable_set
from hmfweights.descent import expected_pattern, segment_values

p = int(sys.argv[1]) if len(sys.argv) > 1 else 3
k2 = int(sys.argv[2]) if len(sys.argv) > 2 else 3
ps = PlaceStructure(p, [8])
k = (1, 1, k2, 2, 2, 1, 2, 2)

kpp = intermediate_weight(ps, k)
print(f"k   = {k}")
print(f"k'' = {kpp.k}")

for case in classify_residual(ps, k):
    got = segment_values(ps, kpp.k, case)
    print(f"  {case.tau}: case {case.case}, s={case.s}, t={case.t}, {case.boundary.value}; "
          f"segment {got}, predicted {expected_pattern(case, p)}")

trace = greedy_strip(ps, kpp)
for tau, w in trace.steps:
    now = sorted(str(t) for t in strippable_set(ps, w))
    print(f"divide by Ha_{tau}: {w.k}   still forced: {now or 'nothing'}")
print("recovered k:", trace.final.k == k)
