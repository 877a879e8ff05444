"""Exact integer / rational linear algebra: Smith normal form, solves, inverses."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..errors import NonIntegralSolution, SingularMatrix

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(a))]


def smith_normal_form(a: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(S, U, V)`` with ``U·A·V = S`` diagonal, ``d_1 | d_2 | …``, ``d_i >= 0``.

    ``U`` and ``V`` are unimodular.  Works for any ``m × n`` integer matrix.
    """
    s = [list(map(int, row)) for row in a]
    m = len(s)
    n = len(s[0]) if m else 0
    u = identity(m)
    v = identity(n)

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        s[dst] = [x + q * y for x, y in zip(s[dst], s[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in s:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if s[i][j] and (best is None or abs(s[i][j]) < abs(s[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            clean = True
            for i in range(t + 1, m):
                if s[i][t]:
                    add_row(i, t, -(s[i][t] // s[t][t]))
                    clean = clean and s[i][t] == 0
            for j in range(t + 1, n):
                if s[t][j]:
                    add_col(j, t, -(s[t][j] // s[t][t]))
                    clean = clean and s[t][j] == 0
            if not clean:
                # move the smallest remaining entry of row/column t into the pivot
                cand = [(abs(s[i][t]), i, t) for i in range(t, m) if s[i][t]]
                cand += [(abs(s[t][j]), t, j) for j in range(t, n) if s[t][j]]
                _, i, j = min(cand)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if s[i][j] % s[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]
    return s, u, v


def determinant(a: Sequence[Sequence]) -> Fraction:
    """Exact determinant by fraction Gaussian elimination."""
    m = [[Fraction(x) for x in row] for row in a]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            if m[r][c]:
                f = m[r][c] / m[c][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return det


def rational_inverse(a: Sequence[Sequence]) -> list[list[Fraction]]:
    """Exact inverse over Q (Gauss–Jordan); raises SingularMatrix."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c]), None)
        if p is None:
            raise SingularMatrix("matrix is singular")
        m[c], m[p] = m[p], m[c]
        piv = m[c][c]
        m[c] = [x / piv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [row[n:] for row in m]


def solve_rational(a: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    inv = rational_inverse(a)
    return [sum((inv[i][j] * b[j] for j in range(len(b))), Fraction(0)) for i in range(len(inv))]


def solve_integer_linear(a: Sequence[Sequence[int]], b: Sequence[int]) -> list[int]:
    """Solve ``A·x = b`` over Q and insist the solution is integral."""
    x = solve_rational(a, b)
    if any(v.denominator != 1 for v in x):
        raise NonIntegralSolution(f"solution {[str(v) for v in x]} is not integral")
    return [int(v) for v in x]


def is_negative_definite(a: Sequence[Sequence[int]]) -> bool:
    """Sylvester's criterion: (-1)^k · (k-th leading minor) > 0 for all k."""
    n = len(a)
    for k in range(1, n + 1):
        d = determinant([row[:k] for row in a[:k]])
        if (d if k % 2 == 0 else -d) <= 0:
            return False
    return True


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group ``Z^free_rank ⊕ Z/d_1 ⊕ … ⊕ Z/d_k`` with ``d_1 | … | d_k``."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        tors = tuple(self.torsion)
        if any(d < 2 for d in tors):
            raise ValueError("torsion coefficients must be >= 2")
        if any(tors[i + 1] % tors[i] for i in range(len(tors) - 1)):
            raise ValueError("torsion coefficients must form a divisibility chain")
        object.__setattr__(self, "torsion", tors)

    @classmethod
    def cokernel(cls, a: Sequence[Sequence[int]], extra_free: int = 0) -> "AbelianGroup":
        """``Z^extra_free ⊕ coker(A)`` for an ``m × n`` integer matrix ``A`` (acting on columns)."""
        m = len(a)
        if m == 0:
            return cls(extra_free)
        s, _, _ = smith_normal_form(a)
        diag = [s[i][i] for i in range(min(m, len(s[0]) if s else 0))]
        nonzero = [d for d in diag if d]
        free = m - len(nonzero)
        return cls(extra_free + free, tuple(d for d in nonzero if d > 1))

    @property
    def order(self) -> int | None:
        """Group order, or ``None`` when infinite."""
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"
