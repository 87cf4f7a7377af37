"""Two pop stacks with bypass in parallel: the listed algorithm, a greedy process and exhaustive search."""

from popsort.classes import psbp_basis
from popsort.enumeration import PSBP_GF, conjecture_simple_psbp
from popsort.machines import PSBP, dfs_sortable, greedy_parallel, psbp
from popsort.perms import all_permutations, avoids, format_permutation

p = (1, 4, 2, 3)
for label, out in (("as listed", psbp(p, trace=True)), ("eager pops", psbp(p, trace=True, eager=True))):
    print(f"psbp {label} on 1423 -> {format_permutation(out.output, compact=True)}")
    for s in out.trace.steps:
        stacks = " | ".join(" ".join(map(str, c)) or "-" for c in s.stacks)
        print(f"   {s.op:<8} {'' if s.value is None else s.value!s:>2}   [{stacks}]")
print()

gf = PSBP_GF.expand(9)
print(" n  listed  eager  greedy    dfs  basis     GF")
for n in range(1, 9):
    perms = list(all_permutations(n))
    row = (sum(psbp(q).sorted for q in perms), sum(psbp(q, eager=True).sorted for q in perms),
           sum(greedy_parallel(q, 2, True).sorted for q in perms),
           sum(dfs_sortable(q, PSBP) for q in perms), sum(avoids(q, psbp_basis()) for q in perms), gf[n])
    print(f"{n:>2} " + " ".join(f"{v:>6}" for v in row))
print()

r = conjecture_simple_psbp(9)
print("simple sortable permutations against the conjectured values:")
for n, (a, b) in enumerate(zip(r.computed, r.reference)):
    print(f"   n={n}: {a:>4} {b:>4}")
