"""Pattern bases: preimages of principal classes and compositions with other sorting machines."""

from popsort.classes import (COMPOSITIONS, composition_basis, composition_machines, preimage_class,
                             stack_psb_amended)
from popsort.enumeration import composition_counts
from popsort.machines import psb_map
from popsort.perms import all_permutations, avoids, format_permutation

for rho in ((3, 1, 2), (2, 1, 3, 4), (1, 3, 2), (1, 2, 3)):
    v = preimage_class(rho)
    name = format_permutation(rho, compact=True)
    if v.is_class:
        print(f"psb^-1(Av({name})) = Av({', '.join(v.basis.lines())})")
    else:
        sigma, pi = (format_permutation(x, compact=True) for x in v.witness)
        print(f"psb^-1(Av({name})) is not a class: {sigma} is in it, {pi} contains it and is not "
              f"(checked: {v.verify()})")
print()

for name in COMPOSITIONS:
    run, basis = composition_machines(name), composition_basis(name)
    bad = sum(1 for n in range(1, 8) for p in all_permutations(n) if run(p).sorted != avoids(p, basis))
    counts = composition_counts(name, 7)[0].computed
    print(f"{name:<10} basis {', '.join(basis.lines()):<42} mismatches(n<=7) {bad:>3}  counts {list(counts)}")
print()

p = (5, 3, 2, 4, 1)
print(f"stack∘psb on {format_permutation(p, compact=True)}: psb gives "
      f"{format_permutation(psb_map(p), compact=True)}, which avoids 231, so it sorts;")
print(f"   but the listed basis rejects it: {not avoids(p, composition_basis('stack∘psb'))}")
bad = sum(1 for n in range(1, 8) for p in all_permutations(n)
          if composition_machines("stack∘psb")(p).sorted != stack_psb_amended(p))
print(f"   the amended membership test disagrees with the machine on {bad} permutations of size <= 7")
