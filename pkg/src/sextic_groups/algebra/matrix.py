"""Integer matrices and Smith normal form."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class IntegerMatrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entry grid does not match dimensions")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntegerMatrix":
        rows = [tuple(int(x) for x in r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, tuple(rows))

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        return IntegerMatrix.from_rows(
            [[sum(self.entries[i][k] * other.entries[k][j] for k in range(self.cols))
              for j in range(other.cols)] for i in range(self.rows)],
            other.cols,
        )

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def determinant(self) -> int:
        """Bareiss; exact over Z."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        a = self.tolist()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k]), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1] if n else 1


@dataclass(frozen=True)
class AbelianInvariants:
    """``Z_{t1} x ... x Z_{tk} x Z^free_rank`` with ``t1 | t2 | ...``."""

    torsion: tuple = ()
    free_rank: int = 0

    def __post_init__(self):
        if any(t < 2 for t in self.torsion):
            raise ValueError("torsion factors must be at least 2")
        if any(b % a for a, b in zip(self.torsion, self.torsion[1:])):
            raise ValueError("torsion factors must form a divisibility chain")
        if self.free_rank < 0:
            raise ValueError("negative free rank")

    @property
    def order(self) -> int | None:
        if self.free_rank:
            return None
        out = 1
        for t in self.torsion:
            out *= t
        return out

    def __str__(self):
        parts = [f"Z{t}" for t in self.torsion] + ["Z"] * self.free_rank
        return " x ".join(parts) if parts else "1"

    @classmethod
    def parse(cls, text: str) -> "AbelianInvariants":
        text = text.strip()
        if text in ("1", "0", ""):
            return cls()
        tors, free = [], 0
        for part in text.replace("×", "x").split("x"):
            part = part.strip()
            if part == "Z":
                free += 1
            else:
                tors.append(int(part[1:]))
        return cls.from_diagonal(tors, free)

    @classmethod
    def from_diagonal(cls, diag: Sequence[int], free: int = 0) -> "AbelianInvariants":
        """Normalise arbitrary cyclic orders (zero meaning Z) into invariant factors."""
        free += sum(1 for d in diag if d == 0)
        vals = [abs(d) for d in diag if abs(d) > 1]
        # rebuild the divisibility chain via prime-power splitting
        primes: dict[int, list[int]] = {}
        for v in vals:
            n, p = v, 2
            while p * p <= n:
                if n % p == 0:
                    e = 1
                    n //= p
                    while n % p == 0:
                        n //= p
                        e += 1
                    primes.setdefault(p, []).append(p ** e)
                p += 1
            if n > 1:
                primes.setdefault(n, []).append(n)
        length = max((len(v) for v in primes.values()), default=0)
        factors = [1] * length
        for powers in primes.values():
            powers.sort(reverse=True)
            for i, q in enumerate(powers):
                factors[length - 1 - i] *= q
        return cls(tuple(f for f in factors if f > 1), free)


@dataclass(frozen=True)
class SmithResult:
    invariants: AbelianInvariants
    diagonal: tuple
    U: IntegerMatrix
    V: IntegerMatrix


def smith_normal_form(m: IntegerMatrix | Sequence[Sequence[int]]) -> SmithResult:
    """Invariant factors of ``m`` with unimodular ``U``, ``V`` such that ``U m V``
    is diagonal. The cokernel of ``m`` (rows as relations on ``cols``
    generators) is described by ``invariants``."""
    if not isinstance(m, IntegerMatrix):
        m = IntegerMatrix.from_rows(m)
    rows, cols = m.rows, m.cols
    a = m.tolist()
    U = [[int(i == j) for j in range(rows)] for i in range(rows)]
    V = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, k):  # row dst += k * row src
        if k:
            a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
            U[dst] = [x + k * y for x, y in zip(U[dst], U[src])]

    def add_col(src, dst, k):
        if k:
            for r in a:
                r[dst] += k * r[src]
            for r in V:
                r[dst] += k * r[src]

    t = 0
    while t < min(rows, cols):
        # pivot: smallest nonzero |entry| in the trailing block
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            done = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(t, i, -(a[i][t] // a[t][t]))
                    if a[i][t]:
                        done = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(t, j, -(a[t][j] // a[t][t]))
                    if a[t][j]:
                        done = False
            if done:
                # enforce divisibility into the trailing block
                bad = next(
                    ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % a[t][t]),
                    None,
                )
                if bad is None:
                    break
                add_row(bad[0], t, 1)
                continue
            # move the smallest remaining entry of row/column t into the pivot
            best = (t, t)
            for i in range(t + 1, rows):
                if a[i][t] and abs(a[i][t]) < abs(a[best[0]][best[1]]):
                    best = (i, t)
            for j in range(t + 1, cols):
                if a[t][j] and abs(a[t][j]) < abs(a[best[0]][best[1]]):
                    best = (t, j)
            swap_rows(t, best[0])
            swap_cols(t, best[1])
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
        t += 1

    diag = tuple(a[i][i] for i in range(min(rows, cols)))
    nonzero = [d for d in diag if d]
    invariants = AbelianInvariants(
        tuple(d for d in nonzero if d > 1), cols - len(nonzero)
    )
    return SmithResult(
        invariants,
        diag,
        IntegerMatrix.from_rows(U, rows),
        IntegerMatrix.from_rows(V, cols),
    )
