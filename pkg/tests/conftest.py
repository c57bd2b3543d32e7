"""Shared helpers for the test suite."""

from __future__ import annotations

import random

from gsbs.intlin import IntMatrix, det

# filled by test_acceptance.py: (number, label, passed)
ACCEPTANCE_RESULTS: list[tuple[int, str, bool]] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num, label, ok in sorted(ACCEPTANCE_RESULTS):
        verdict = "pass" if ok else "FAIL"
        terminalreporter.write_line(f"criterion {num:2d}: {verdict}  {label}")


def random_unimodular(rng: random.Random, r: int, steps: int = 10, bound: int = 60) -> IntMatrix:
    """Random element of GL_r(Z) with entries bounded, both det signs.

    Built as a product of elementary row operations on the identity; retries
    whenever an entry grows past the bound so test matrices stay small.
    """
    while True:
        rows = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
        for _ in range(steps):
            op = rng.randrange(3)
            i = rng.randrange(r)
            j = rng.randrange(r)
            if op == 0 and i != j:
                q = rng.choice((-2, -1, 1, 2))
                rows[i] = [a + q * b for a, b in zip(rows[i], rows[j])]
            elif op == 1 and i != j:
                rows[i], rows[j] = rows[j], rows[i]
            elif op == 2:
                rows[i] = [-a for a in rows[i]]
        if max(abs(v) for row in rows for v in row) <= bound:
            m = IntMatrix.from_rows(rows)
            assert det(m) in (1, -1)
            return m


def random_matrix(rng: random.Random, rows: int, cols: int, bound: int = 30) -> IntMatrix:
    return IntMatrix.from_rows(
        [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)]
    )
