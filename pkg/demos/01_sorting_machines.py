"""Run the pop stack with bypass next to the classical machines and count what it sorts."""

from popsort.enumeration import count_sortable_by, fib
from popsort.machines import BUBBLE, POPSTACK, PSB, QUEUE, STACK, psb, run
from popsort.perms import format_permutation


def show_trace(p):
    out = psb(p, trace=True)
    print(f"psb({format_permutation(p, compact=True)}) = {format_permutation(out.output, compact=True)}")
    for s in out.trace.steps:
        stack = " ".join(map(str, s.stacks[0])) or "-"
        entry = "" if s.value is None else s.value
        print(f"   {s.op:<7} {entry!s:>2}   stack (top first): {stack}")
    print()


show_trace((3, 6, 5, 1, 4, 2))
show_trace((3, 1, 2, 7, 4, 6, 5))

p = (4, 2, 3, 1)
print(f"one input, five machines: {format_permutation(p, compact=True)}")
for config in (PSB, STACK, QUEUE, BUBBLE, POPSTACK):
    print(f"   {config.name:<15} -> {format_permutation(run(config, p).output, compact=True)}")
print()

print("how many permutations of size n does psb sort?")
for n in range(1, 9):
    print(f"   n={n}: {count_sortable_by(PSB, n):>4}   F_(2n-1) = {fib(2 * n - 1)}")
