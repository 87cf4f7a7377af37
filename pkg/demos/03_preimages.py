"""Invert psb: list preimages, then count permutations by how many preimages they have."""

from popsort.perms import format_permutation
from popsort.preimage import (brute_preimages, c0, c1, c2, c2_amended, in_C2, in_C2_amended,
                              preimage_histogram, preimages)

s = (3, 1, 5, 4, 2, 6, 7)
found = sorted(preimages(s))
print(f"preimages of {format_permutation(s, compact=True)} ({len(found)}):")
for p in found:
    print("   " + format_permutation(p, compact=True))
print(f"same as scanning S_7: {set(found) == brute_preimages(s)}")
print()

print("the 3 1 5 prefix has two preimages itself, which is why there are 14 and not 10:")
print("   ", sorted(format_permutation(p, compact=True) for p in preimages((3, 1, 5))))
print()

print(" n   c0 brute |  c1 brute |  c2 brute | c2 amended")
for n in range(1, 9):
    h = preimage_histogram(n)
    print(f"{n:>2} {c0(n):>5} {h[0]:>5} | {c1(n):>3} {h[1]:>5} | {c2(n):>3} {h[2]:>5} | {c2_amended(n):>5}")
print()

p = (2, 3, 1, 4)
print(f"{format_permutation(p, compact=True)} has preimages "
      f"{sorted(format_permutation(q, compact=True) for q in preimages(p))}; "
      f"in_C2 says {in_C2(p)}, in_C2_amended says {in_C2_amended(p)}")
