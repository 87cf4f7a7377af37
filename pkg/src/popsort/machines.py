"""
Sorting machines built from pop stacks, stacks and queues.

Every deterministic algorithm returns a :class:`SortOutcome`; pass
``trace=True`` to also get the step-by-step :class:`Trace`. Inputs are
sequences of distinct integers and are compared by their actual values
(the push rule ``v == TOP - 1`` depends on them), so ``psb((5, 2))`` and
``psb((2, 1))`` may behave differently.

``dfs_sortable`` is the independent oracle: it explores every operation
sequence a device allows and never consults any of the greedy algorithms.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Callable, Sequence

__all__ = [
    "KINDS", "MachineConfig", "Step", "Trace", "SortOutcome",
    "psb", "psb_map", "stacksort", "queuesort", "bubblesort", "popstack_plain", "psbp",
    "greedy_parallel", "run", "image", "compose", "psbw", "is_regular_word",
    "dfs_sortable", "dfs_sortable_word",
    "PSB", "STACK", "QUEUE", "BUBBLE", "POPSTACK", "PSBP",
]

KINDS = ("psb", "classic-stack", "queue-bypass", "bubble", "popstack-plain", "parallel-pops")

_ALIASES = {
    "psb": "psb",
    "stack": "classic-stack", "classic-stack": "classic-stack",
    "queue": "queue-bypass", "que": "queue-bypass", "queue-bypass": "queue-bypass",
    "bubble": "bubble", "bub": "bubble",
    "popstack": "popstack-plain", "popstack-plain": "popstack-plain",
}


@dataclass(frozen=True)
class MachineConfig:
    """A sorting device. ``k`` and ``bypass`` only matter for parallel pop stacks."""
    kind: str
    k: int = 1
    bypass: bool = True

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown machine kind {self.kind!r}")
        if self.k < 1:
            raise ValueError("parallel-pops needs k >= 1")

    @property
    def name(self) -> str:
        if self.kind != "parallel-pops":
            return self.kind
        return f"parallel-{self.k}" + ("-bypass" if self.bypass else "-nobypass")

    @classmethod
    def parse(cls, text: str) -> "MachineConfig":
        """Accepts the kinds, short aliases, ``psbp`` and ``parallel-<k>[-bypass|-nobypass]``."""
        t = text.strip().lower()
        if t in _ALIASES:
            return cls(_ALIASES[t])
        if t == "psbp":
            return cls("parallel-pops", 2, True)
        if t.startswith("parallel-"):
            parts = t.split("-")[1:]
            if parts and parts[0].isdigit() and len(parts) <= 2:
                bypass = True
                if len(parts) == 2:
                    if parts[1] not in ("bypass", "nobypass"):
                        raise ValueError(f"unknown machine {text!r}")
                    bypass = parts[1] == "bypass"
                return cls("parallel-pops", int(parts[0]), bypass)
        raise ValueError(f"unknown machine {text!r}")

    def __str__(self) -> str:
        return self.name


PSB = MachineConfig("psb")
STACK = MachineConfig("classic-stack")
QUEUE = MachineConfig("queue-bypass")
BUBBLE = MachineConfig("bubble")
POPSTACK = MachineConfig("popstack-plain")
PSBP = MachineConfig("parallel-pops", 2, True)


@dataclass(frozen=True)
class Step:
    """One atomic operation. ``i`` is the 1-based index of the current input
    entry (None once the input is exhausted); ``stacks`` lists each
    container's contents after the step, top (or front) first."""
    i: int | None
    value: int | None
    op: str
    stacks: tuple[tuple[int, ...], ...]
    out_len: int

    def to_dict(self) -> dict:
        return {"i": self.i, "value": self.value, "op": self.op,
                "stacks": [list(s) for s in self.stacks], "out_len": self.out_len}


@dataclass(frozen=True)
class Trace:
    input: tuple[int, ...]
    config: MachineConfig
    steps: tuple[Step, ...]
    output: tuple[int, ...]

    @property
    def sorted(self) -> bool:
        return list(self.output) == sorted(self.output)

    def to_dict(self) -> dict:
        return {"input": list(self.input), "machine": self.config.name,
                "steps": [s.to_dict() for s in self.steps],
                "output": list(self.output), "sorted": self.sorted}

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d: dict) -> "Trace":
        steps = tuple(Step(s["i"], s["value"], s["op"],
                           tuple(tuple(x) for x in s["stacks"]), s["out_len"])
                      for s in d["steps"])
        return cls(tuple(d["input"]), MachineConfig.parse(d["machine"]), steps, tuple(d["output"]))

    def replay(self) -> tuple[int, ...]:
        """Re-execute the recorded operations from the empty state."""
        containers: list[list[int]] = [[] for _ in range(max(1, self.config.k))]
        out: list[int] = []
        queue_like = self.config.kind == "queue-bypass"
        for s in self.steps:
            name, _, idx = s.op.partition("_")
            j = int(idx) - 1 if idx else 0
            c = containers[j]
            if name == "PUSH":
                c.append(s.value)
            elif name == "BYPASS":
                out.append(s.value)
            elif name == "POP":
                if self.config.kind in ("classic-stack", "bubble"):
                    out.append(c.pop())
                elif queue_like:
                    out.append(c.pop(0))
                else:
                    out.extend(reversed(c))
                    c.clear()
            else:
                raise ValueError(f"unknown op {s.op!r}")
        return tuple(out)


@dataclass(frozen=True)
class SortOutcome:
    """``sorted`` is True iff ``output`` is the identity (weakly increasing for
    words). ``stuck`` marks a greedy process that ran out of legal moves;
    ``output`` then holds only what was emitted before the failure."""
    output: tuple[int, ...]
    sorted: bool
    trace: Trace | None = None
    stuck: bool = False


def _is_sorted(out: Sequence[int]) -> bool:
    return all(a <= b for a, b in zip(out, out[1:]))


class _Tape:
    """Records steps for a run; a no-op when tracing is off."""

    def __init__(self, containers: list, enabled: bool, front_first: bool = False):
        self.containers = containers
        self.steps: list[Step] | None = [] if enabled else None
        self.front_first = front_first

    def log(self, i, value, op, out_len):
        if self.steps is None:
            return
        if self.front_first:
            snap = tuple(tuple(c) for c in self.containers)
        else:
            snap = tuple(tuple(reversed(c)) for c in self.containers)
        self.steps.append(Step(i, value, op, snap, out_len))

    def finish(self, p, config, out) -> SortOutcome:
        out = tuple(out)
        trace = None
        if self.steps is not None:
            trace = Trace(tuple(p), config, tuple(self.steps), out)
        return SortOutcome(out, _is_sorted(out), trace)


# -- single-container algorithms -----------------------------------------------

def psb(p: Sequence[int], trace: bool = False) -> SortOutcome:
    """Pop stack with bypass: push when the stack is empty or the entry is
    TOP-1, bypass when it is smaller than TOP-1, otherwise pop then push."""
    stack: list[int] = []
    out: list[int] = []
    tape = _Tape([stack], trace)
    for i, v in enumerate(p, 1):
        if not stack or v == stack[-1] - 1:
            stack.append(v)
            tape.log(i, v, "PUSH", len(out))
        elif v < stack[-1] - 1:
            out.append(v)
            tape.log(i, v, "BYPASS", len(out))
        else:
            out.extend(reversed(stack))
            stack.clear()
            tape.log(i, None, "POP", len(out))
            stack.append(v)
            tape.log(i, v, "PUSH", len(out))
    if stack:
        out.extend(reversed(stack))
        stack.clear()
    tape.log(None, None, "POP", len(out))
    return tape.finish(p, PSB, out)


def psb_map(p: Sequence[int]) -> tuple[int, ...]:
    """The output of :func:`psb` alone, without building an outcome."""
    stack: list[int] = []
    out: list[int] = []
    for v in p:
        if not stack or v == stack[-1] - 1:
            stack.append(v)
        elif v < stack[-1] - 1:
            out.append(v)
        else:
            out.extend(reversed(stack))
            stack.clear()
            stack.append(v)
    out.extend(reversed(stack))
    return tuple(out)


def stacksort(p: Sequence[int], trace: bool = False) -> SortOutcome:
    """Knuth's right-greedy stack sort."""
    stack: list[int] = []
    out: list[int] = []
    tape = _Tape([stack], trace)
    for i, v in enumerate(p, 1):
        while stack and stack[-1] < v:
            out.append(stack.pop())
            tape.log(i, out[-1], "POP", len(out))
        stack.append(v)
        tape.log(i, v, "PUSH", len(out))
    while stack:
        out.append(stack.pop())
        tape.log(None, out[-1], "POP", len(out))
    return tape.finish(p, STACK, out)


def queuesort(p: Sequence[int], trace: bool = False) -> SortOutcome:
    """Queue with bypass: enqueue entries larger than the back, otherwise
    output the smaller of the entry and the front."""
    queue: deque[int] = deque()
    out: list[int] = []
    tape = _Tape([queue], trace, front_first=True)
    for i, v in enumerate(p, 1):
        while True:
            if not queue or v > queue[-1]:
                queue.append(v)
                tape.log(i, v, "PUSH", len(out))
                break
            if v < queue[0]:
                out.append(v)
                tape.log(i, v, "BYPASS", len(out))
                break
            out.append(queue.popleft())
            tape.log(i, out[-1], "POP", len(out))
    while queue:
        out.append(queue.popleft())
        tape.log(None, out[-1], "POP", len(out))
    return tape.finish(p, QUEUE, out)


def bubblesort(p: Sequence[int], trace: bool = False) -> SortOutcome:
    """A single left-to-right pass of adjacent swaps, run as a depth-1 container."""
    held: list[int] = []
    out: list[int] = []
    tape = _Tape([held], trace)
    for i, v in enumerate(p, 1):
        if held and v < held[-1]:
            out.append(v)
            tape.log(i, v, "BYPASS", len(out))
            continue
        if held:
            out.append(held.pop())
            tape.log(i, out[-1], "POP", len(out))
        held.append(v)
        tape.log(i, v, "PUSH", len(out))
    if held:
        out.append(held.pop())
        tape.log(None, out[-1], "POP", len(out))
    return tape.finish(p, BUBBLE, out)


def popstack_plain(p: Sequence[int], trace: bool = False) -> SortOutcome:
    """Single pop stack without bypass: pop everything whenever the next entry exceeds the top."""
    stack: list[int] = []
    out: list[int] = []
    tape = _Tape([stack], trace)
    for i, v in enumerate(p, 1):
        if stack and v > stack[-1]:
            out.extend(reversed(stack))
            stack.clear()
            tape.log(i, None, "POP", len(out))
        stack.append(v)
        tape.log(i, v, "PUSH", len(out))
    if stack:
        out.extend(reversed(stack))
        stack.clear()
    tape.log(None, None, "POP", len(out))
    return tape.finish(p, POPSTACK, out)


# -- parallel pop stacks ------------------------------------------------------

def psbp(p: Sequence[int], trace: bool = False, eager: bool = False) -> SortOutcome:
    """Two pop stacks in parallel with a bypass, following the fixed priority
    list: extend S1, extend S2, open S1, open S2, bypass, else pop the stack
    with the smaller top and push onto it.

    As written, the list never pops a stack whose top is the next value
    due, so 1423 fails. ``eager=True`` adds that pop before each entry and
    at the end; the plain version is the default.
    """
    s1: list[int] = []
    s2: list[int] = []
    out: list[int] = []
    tape = _Tape([s1, s2], trace)
    target = sorted(p)

    def pop(s, j, i):
        out.extend(reversed(s))
        s.clear()
        tape.log(i, None, f"POP_{j}", len(out))

    def pop_due(i):
        while len(out) < len(target):
            due = target[len(out)]
            if s1 and s1[-1] == due:
                pop(s1, 1, i)
            elif s2 and s2[-1] == due:
                pop(s2, 2, i)
            else:
                break

    for i, v in enumerate(p, 1):
        if eager:
            pop_due(i)
        if s1 and v == s1[-1] - 1:
            s1.append(v)
            tape.log(i, v, "PUSH_1", len(out))
        elif s2 and v == s2[-1] - 1:
            s2.append(v)
            tape.log(i, v, "PUSH_2", len(out))
        elif not s1:
            s1.append(v)
            tape.log(i, v, "PUSH_1", len(out))
        elif not s2:
            s2.append(v)
            tape.log(i, v, "PUSH_2", len(out))
        elif v < max(s1[-1] - 1, s2[-1] - 1):
            out.append(v)
            tape.log(i, v, "BYPASS", len(out))
        else:
            s, j = (s1, 1) if s1[-1] < s2[-1] else (s2, 2)
            pop(s, j, i)
            s.append(v)
            tape.log(i, v, f"PUSH_{j}", len(out))
    if eager:
        pop_due(None)
    if not s1 and not s2:
        tape.log(None, None, "POP_1", len(out))
    elif not s1:
        pop(s2, 2, None)
    elif not s2:
        pop(s1, 1, None)
    elif s1[-1] < s2[-1]:
        pop(s1, 1, None)
        pop(s2, 2, None)
    else:
        pop(s2, 2, None)
        pop(s1, 1, None)
    return tape.finish(p, PSBP, out)


def greedy_parallel(p: Sequence[int], k: int, bypass: bool = True,
                    trace: bool = False) -> SortOutcome:
    """k parallel pop stacks driven by the priority process: bypass the next
    needed value, pop a stack whose top is needed, extend a stack whose top
    is one more than the entry, open an empty stack, or give up."""
    if k < 1:
        raise ValueError("k must be >= 1")
    config = MachineConfig("parallel-pops", k, bypass)
    stacks: list[list[int]] = [[] for _ in range(k)]
    out: list[int] = []
    tape = _Tape(stacks, trace)
    target = sorted(p)
    i, n = 0, len(p)
    while i < n or any(stacks):
        v = p[i] if i < n else None
        need = target[len(out)]
        if bypass and v == need:
            out.append(v)
            i += 1
            tape.log(i, v, "BYPASS", len(out))
            continue
        hit = next((j for j, s in enumerate(stacks) if s and s[-1] == need), None)
        if hit is not None:
            s = stacks[hit]
            out.extend(reversed(s))
            s.clear()
            tape.log(i + 1 if v is not None else None, None, f"POP_{hit + 1}", len(out))
            continue
        if v is None:
            break
        ext = next((j for j, s in enumerate(stacks) if s and s[-1] - 1 == v), None)
        if ext is None:
            ext = next((j for j, s in enumerate(stacks) if not s), None)
        if ext is None:
            break
        stacks[ext].append(v)
        i += 1
        tape.log(i, v, f"PUSH_{ext + 1}", len(out))
    if i < n or any(stacks):
        outcome = tape.finish(p, config, out)
        return SortOutcome(outcome.output, False, outcome.trace, stuck=True)
    return tape.finish(p, config, out)


_RUNNERS: dict[str, Callable[..., SortOutcome]] = {
    "psb": psb, "classic-stack": stacksort, "queue-bypass": queuesort,
    "bubble": bubblesort, "popstack-plain": popstack_plain,
}


def run(config: MachineConfig, p: Sequence[int], trace: bool = False) -> SortOutcome:
    """The deterministic algorithm for a device: PSBP for two parallel pop
    stacks with bypass, the greedy process for other parallel devices."""
    if config.kind == "parallel-pops":
        if config.k == 2 and config.bypass:
            return psbp(p, trace)
        return greedy_parallel(p, config.k, config.bypass, trace)
    return _RUNNERS[config.kind](p, trace)


def image(config: MachineConfig, p: Sequence[int]) -> tuple[int, ...]:
    if config.kind == "psb":
        return psb_map(p)
    return run(config, p).output


def compose(machines: Sequence[MachineConfig]) -> Callable[[Sequence[int]], SortOutcome]:
    """Chain machines; the first listed runs first, so stack∘psb is ``compose([PSB, STACK])``."""
    machines = tuple(machines)
    if not machines:
        raise ValueError("compose needs at least one machine")

    def composed(p: Sequence[int]) -> SortOutcome:
        outcome = None
        for m in machines:
            outcome = run(m, p)
            if outcome.stuck:
                return outcome
            p = outcome.output
        return SortOutcome(outcome.output, outcome.sorted)

    composed.machines = machines
    return composed


# -- words ------------------------------------------------------------------------

def is_regular_word(w: Sequence[int], k: int) -> bool:
    """Every letter 0..n-1 occurs exactly k times."""
    if k < 1 or len(w) % k:
        return False
    n = len(w) // k
    counts = [0] * n
    for x in w:
        if not 0 <= x < n:
            return False
        counts[x] += 1
    return all(c == k for c in counts)


def _word(w: Sequence[int] | str) -> tuple[int, ...]:
    if isinstance(w, str):
        return tuple(int(c) for c in w.replace(" ", ""))
    return tuple(w)


def psbw(w: Sequence[int] | str, k: int) -> SortOutcome:
    """Pop stack with bypass for k-regular words over 0..n-1, with bypass
    taking priority whenever the letter is already due in the output."""
    w = _word(w)
    if not is_regular_word(w, k):
        raise ValueError(f"not a {k}-regular word: {w}")
    stack: list[int] = []
    out: list[int] = []
    j = 0
    for i, x in enumerate(w, 1):
        if x <= j // k:
            out.append(x)
            j += 1
        elif not stack or x <= stack[-1]:
            stack.append(x)
        else:
            out.extend(reversed(stack))
            stack.clear()
            j = i - 1
            if x <= j // k:
                out.append(x)
                j += 1
            else:
                stack.append(x)
    out.extend(reversed(stack))
    return SortOutcome(tuple(out), _is_sorted(out))


# -- exhaustive oracle ----------------------------------------------------------

def _pop_matches(stack: tuple[int, ...], target: tuple[int, ...], out: int) -> bool:
    # stack is bottom..top; a pop emits it top first
    size = len(stack)
    return target[out:out + size] == stack[::-1]


def _search(seq: tuple[int, ...], target: tuple[int, ...], config: MachineConfig) -> bool:
    n = len(seq)
    kind = config.kind
    pop_kind = kind in ("psb", "popstack-plain", "parallel-pops")
    if kind == "parallel-pops":
        slots, can_bypass = config.k, config.bypass
    else:
        slots = 1
        can_bypass = kind in ("psb", "queue-bypass", "bubble")

    start = (0, 0, ((),) * slots)
    seen = {start}
    todo = [start]
    while todo:
        i, out, conts = todo.pop()
        if out == n:
            return True
        need = target[out]
        v = seq[i] if i < n else None
        nxt = []
        if can_bypass and v == need:
            nxt.append((i + 1, out + 1, conts))
        for idx, c in enumerate(conts):
            if not c:
                continue
            if pop_kind:
                if c[-1] == need and _pop_matches(c, target, out):
                    nxt.append((i, out + len(c), conts[:idx] + ((),) + conts[idx + 1:]))
            elif kind == "queue-bypass":
                if c[0] == need:
                    nxt.append((i, out + 1, (c[1:],)))
            elif c[-1] == need:
                nxt.append((i, out + 1, (c[:-1],)))
        if v is not None:
            for idx, c in enumerate(conts):
                if pop_kind:
                    # a pop emits the stack top first, so only v == top or top-1 can ever leave sorted
                    ok = not c or v == c[-1] or v == c[-1] - 1
                elif kind == "classic-stack":
                    ok = not c or v <= c[-1]
                elif kind == "queue-bypass":
                    ok = not c or v >= c[-1]
                else:
                    ok = not c
                if ok:
                    nxt.append((i + 1, out, conts[:idx] + (c + (v,),) + conts[idx + 1:]))
        for st in nxt:
            if pop_kind and slots > 1:
                st = (st[0], st[1], tuple(sorted(st[2])))
            if st not in seen:
                seen.add(st)
                todo.append(st)
    return False


def dfs_sortable(p: Sequence[int], config: MachineConfig = PSB) -> bool:
    """True iff some sequence of legal operations of the device outputs p sorted."""
    p = tuple(p)
    return _search(p, tuple(sorted(p)), config)


def dfs_sortable_word(w: Sequence[int] | str, config: MachineConfig = PSB) -> bool:
    """Same search with repeated letters; the output must be weakly increasing."""
    w = _word(w)
    return _search(w, tuple(sorted(w)), config)
