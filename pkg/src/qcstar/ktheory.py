"""Exact integer linear algebra and K-groups of graph C*-algebras.

Smith normal form with explicit unimodular transforms drives everything:
cokernels give K0, kernels give K1.  All arithmetic uses Python integers
and fractions, never floats, so the results are exact.  Independent
oracles (rational rank by Gaussian elimination, torsion order by
determinantal divisors and by literal coset enumeration) are exposed for
cross-checking the SNF pipeline.
"""

from __future__ import annotations

import itertools
import math
import operator
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class IntegerMatrix:
    """Immutable integer matrix, entries row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimensions")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match dimensions")
        if any(not isinstance(e, int) for e in self.entries):
            object.__setattr__(self, "entries",
                               tuple(operator.index(e) for e in self.entries))

    @classmethod
    def from_rows(cls, rows) -> "IntegerMatrix":
        rows = [list(r) for r in rows]
        n = len(rows)
        m = len(rows[0]) if rows else 0
        if any(len(r) != m for r in rows):
            raise ValueError("ragged rows")
        return cls(n, m, tuple(operator.index(x) for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(n, n, tuple(1 if i == j else 0
                               for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntegerMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    def entry(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple[int, ...]:
        return self.entries[j::self.cols]

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix(self.cols, self.rows,
                             tuple(self.entry(i, j)
                                   for j in range(self.cols)
                                   for i in range(self.rows)))

    def multiply(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                out.append(sum(ri[k] * other.entry(k, j)
                               for k in range(self.cols)))
        return IntegerMatrix(self.rows, other.cols, tuple(out))

    def determinant(self) -> int:
        """Fraction-free Bareiss elimination; square matrices only."""
        if self.rows != self.cols:
            raise ValueError("determinant needs a square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = self.to_rows()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def is_unimodular(self) -> bool:
        return self.rows == self.cols and self.determinant() in (1, -1)

    def __str__(self):
        return "\n".join(" ".join(str(x) for x in self.row(i))
                         for i in range(self.rows)) or "(empty)"


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group in invariant-factor form."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        for d in self.torsion:
            if d < 2:
                raise ValueError("torsion invariants must be >= 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise ValueError("torsion invariants must form a divisibility chain")

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def torsion_order(self) -> int:
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z_{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class SNFResult:
    """U * M * V = S with U, V unimodular and S in Smith form."""

    u: IntegerMatrix
    s: IntegerMatrix
    v: IntegerMatrix

    def diagonal(self) -> tuple[int, ...]:
        n = min(self.s.rows, self.s.cols)
        return tuple(self.s.entry(i, i) for i in range(n))

    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(d for d in self.diagonal() if d != 0)

    def rank(self) -> int:
        return len(self.invariant_factors())


def _swap_rows(a, u, i, j):
    if i != j:
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]


def _swap_cols(a, v, i, j):
    if i != j:
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]


def _row_sub(a, u, i, t, f):
    if f:
        at = a[t]
        ai = a[i]
        for j in range(len(ai)):
            ai[j] -= f * at[j]
        ut = u[t]
        ui = u[i]
        for j in range(len(ui)):
            ui[j] -= f * ut[j]


def _col_sub(a, v, j, t, f):
    if f:
        for row in a:
            row[j] -= f * row[t]
        for row in v:
            row[j] -= f * row[t]


def _select_pivot(a, t, rows, cols):
    best = None
    for i in range(t, rows):
        ai = a[i]
        for j in range(t, cols):
            x = ai[j]
            if x:
                key = (abs(x), i, j)
                if best is None or key < best:
                    best = key
    if best is None:
        return None
    return best[1], best[2]


def smith_normal_form(m: IntegerMatrix) -> SNFResult:
    """Diagonalize by unimodular row and column operations.

    Pivot choice is the nonzero entry of least absolute value with
    (row, col) tie-break, which makes U, S, V fully deterministic.
    Diagonal entries come out nonnegative in a divisibility chain.
    """
    rows, cols = m.rows, m.cols
    a = m.to_rows()
    u = IntegerMatrix.identity(rows).to_rows()
    v = IntegerMatrix.identity(cols).to_rows()

    t = 0
    limit = min(rows, cols)
    while t < limit:
        if _select_pivot(a, t, rows, cols) is None:
            break
        while True:
            # clear row and column t, re-picking ever-smaller pivots
            while True:
                pi, pj = _select_pivot(a, t, rows, cols)
                _swap_rows(a, u, t, pi)
                _swap_cols(a, v, t, pj)
                clean = True
                for i in range(t + 1, rows):
                    if a[i][t]:
                        _row_sub(a, u, i, t, a[i][t] // a[t][t])
                        if a[i][t]:
                            clean = False
                for j in range(t + 1, cols):
                    if a[t][j]:
                        _col_sub(a, v, j, t, a[t][j] // a[t][t])
                        if a[t][j]:
                            clean = False
                if clean:
                    break
            # divisibility: the pivot must divide the remaining submatrix
            d = a[t][t]
            offender = None
            for i in range(t + 1, rows):
                ai = a[i]
                for j in range(t + 1, cols):
                    if ai[j] % d:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            # fold the offending row into row t and redo the clearing
            _row_sub(a, u, t, offender, -1)
        if a[t][t] < 0:
            for j in range(cols):
                a[t][j] = -a[t][j]
            for j in range(rows):
                u[t][j] = -u[t][j]
        t += 1

    return SNFResult(IntegerMatrix.from_rows(u) if rows else IntegerMatrix(0, 0, ()),
                     IntegerMatrix.from_rows(a) if rows else IntegerMatrix(0, cols, ()),
                     IntegerMatrix.from_rows(v) if cols else IntegerMatrix(0, 0, ()))


def cokernel(m: IntegerMatrix) -> AbelianGroup:
    """Z^rows / column span of m, in invariant-factor form."""
    snf = smith_normal_form(m)
    factors = snf.invariant_factors()
    return AbelianGroup(m.rows - len(factors),
                        tuple(d for d in factors if d > 1))


def kernel(m: IntegerMatrix) -> AbelianGroup:
    """Kernel of m as a map Z^cols -> Z^rows; always free."""
    snf = smith_normal_form(m)
    return AbelianGroup(m.cols - snf.rank())


def k_groups(g) -> tuple[AbelianGroup, AbelianGroup]:
    """K0 and K1 of the graph C*-algebra: cokernel and kernel of A_G."""
    from . import graphs
    a = graphs.build_ag(g)
    return cokernel(a), kernel(a)


# -- independent oracles -------------------------------------------------------

def rational_rank(m: IntegerMatrix) -> int:
    """Rank over Q by plain fraction Gaussian elimination."""
    a = [[Fraction(x) for x in m.row(i)] for i in range(m.rows)]
    rank = 0
    col = 0
    while rank < m.rows and col < m.cols:
        pivot_row = next((i for i in range(rank, m.rows) if a[i][col]), None)
        if pivot_row is None:
            col += 1
            continue
        a[rank], a[pivot_row] = a[pivot_row], a[rank]
        inv = 1 / a[rank][col]
        a[rank] = [x * inv for x in a[rank]]
        for i in range(m.rows):
            if i != rank and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
        col += 1
    return rank


def determinant_divisor(m: IntegerMatrix, r: int) -> int:
    """gcd of all r x r minors (0 when r exceeds the rank)."""
    if r == 0:
        return 1
    if r > min(m.rows, m.cols):
        return 0
    g = 0
    for rows_sel in itertools.combinations(range(m.rows), r):
        for cols_sel in itertools.combinations(range(m.cols), r):
            sub = IntegerMatrix.from_rows(
                [[m.entry(i, j) for j in cols_sel] for i in rows_sel])
            g = math.gcd(g, abs(sub.determinant()))
            if g == 1:
                return 1
    return g


def torsion_order_by_minors(m: IntegerMatrix) -> int:
    """|torsion of cokernel| = gcd of rank-sized minors.

    Uses only minor determinants and the rational rank, no SNF code, so
    it is a fully independent cross-check.
    """
    return determinant_divisor(m, rational_rank(m))


def image_size_mod(m: IntegerMatrix, modulus: int,
                   state_cap: int = 30000) -> int | None:
    """Size of the subgroup of (Z/modulus)^rows spanned by the columns.

    Literal breadth-first coset enumeration; returns None when the
    subgroup grows past state_cap states.
    """
    if modulus < 1:
        raise ValueError("modulus must be positive")
    gens = []
    for j in range(m.cols):
        g = tuple(x % modulus for x in m.column(j))
        if any(g):
            gens.append(g)
    zero = (0,) * m.rows
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for state in frontier:
            for g in gens:
                child = tuple((s + x) % modulus for s, x in zip(state, g))
                if child not in seen:
                    seen.add(child)
                    if len(seen) > state_cap:
                        return None
                    nxt.append(child)
        frontier = nxt
    return len(seen)


def torsion_order_by_cosets(m: IntegerMatrix, claimed_order: int,
                            state_cap: int = 30000) -> int | None:
    """Torsion order of the cokernel by coset enumeration mod 2*claimed.

    Any modulus that is a multiple of every invariant factor works; the
    column span S in (Z/mod)^rows then has size mod^rank / torsion, so
    the torsion order is mod^rank / |S|.  Returns None when enumeration
    would exceed state_cap.
    """
    modulus = 2 * max(claimed_order, 1)
    rank = rational_rank(m)
    size = image_size_mod(m, modulus, state_cap)
    if size is None:
        return None
    total = modulus ** rank
    if total % size:
        return -1  # impossible if claimed_order was a valid multiple
    return total // size
