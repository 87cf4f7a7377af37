from hypothesis import strategies as st

from popsort.perms import standardize


def perms(min_size: int = 0, max_size: int = 9):
    """Hypothesis strategy for permutations of 1..n."""
    return st.integers(min_size, max_size).flatmap(
        lambda n: st.permutations(list(range(1, n + 1))).map(tuple))


def sequences(min_size: int = 0, max_size: int = 9):
    """Distinct integers in arbitrary ranges (compared by relative order)."""
    return st.lists(st.integers(-50, 50), min_size=min_size, max_size=max_size, unique=True).map(tuple)


__all__ = ["perms", "sequences", "standardize", "ACCEPTANCE"]


# acceptance results: criterion number -> list of (part, passed, detail)
ACCEPTANCE: dict[int, list[tuple[str, bool, str]]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        parts = ACCEPTANCE[num]
        ok = all(p for _, p, _ in parts)
        failed = [f"{name}: {detail}" for name, p, detail in parts
                  if not p or name.startswith("report")]
        line = f"criterion {num:>2}: {'PASS' if ok else 'FAIL'}"
        if failed:
            line += "  (" + "; ".join(failed) + ")"
        terminalreporter.write_line(line)
