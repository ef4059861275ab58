"""Count how often a bounded exponent vector has zero residue mod p^f - 1.

Every such vector except the all-(p-1) ones splits into zero runs and blocks
+-(-1, p-1, ..., p-1, p).  The script tallies both sides and the exceptions.
"""
import itertools

from hmfweights import ExponentVector, residue, string_decompose
from hmfweights.inertial import is_all_p_minus_one

for p in (3, 5):
    for f in range(1, 5):
        zero = decomposed = exceptions = 0
        for a in itertools.product(range(-p, p + 1), repeat=f):
            d = ExponentVector(p, a)
            if is_all_p_minus_one(d):
                exceptions += 1
                continue
            zero += residue(d) == 0
            decomposed += string_decompose(d) is not None
        print(f"p={p} f={f}: {zero} zero residues, {decomposed} decompositions, "
              f"{exceptions} all-(p-1) exceptions")
