"""Exact integer algebra of rank-two lattices.

A sublattice of the ambient lattice ``L`` is stored as a 2x2 integer matrix
whose *columns* are the coordinates of its basis vectors in the ambient basis.
Python ints are used throughout, so nothing overflows.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvalidPath, NotPrime, SingularMatrix

Matrix = tuple[tuple[int, int], tuple[int, int]]

IDENTITY: Matrix = ((1, 0), (0, 1))


def _as_matrix(m) -> Matrix:
    if isinstance(m, SublatticeBasis):
        return m.m
    rows = [list(r) for r in m]
    if len(rows) != 2 or any(len(r) != 2 for r in rows):
        raise ValueError(f"expected a 2x2 matrix, got {m!r}")
    out = []
    for r in rows:
        row = []
        for x in r:
            if isinstance(x, bool) or int(x) != x:
                raise ValueError(f"non-integer entry {x!r}")
            row.append(int(x))
        out.append(tuple(row))
    return (out[0], out[1])


def _det(m: Matrix) -> int:
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def _mul(a: Matrix, b: Matrix) -> Matrix:
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


def _adj(m: Matrix) -> Matrix:
    return ((m[1][1], -m[0][1]), (-m[1][0], m[0][0]))


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``g = s*a + t*b = gcd(a, b) >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


@dataclass(frozen=True)
class SublatticeBasis:
    """Full-rank sublattice given by its basis columns in ambient coordinates."""

    m: Matrix

    def __init__(self, m):
        mat = _as_matrix(m)
        if _det(mat) == 0:
            raise SingularMatrix(f"basis {mat} has zero determinant")
        object.__setattr__(self, "m", mat)

    @classmethod
    def identity(cls) -> "SublatticeBasis":
        return cls(IDENTITY)

    @property
    def det(self) -> int:
        return _det(self.m)

    def columns(self) -> tuple[tuple[int, int], tuple[int, int]]:
        m = self.m
        return (m[0][0], m[1][0]), (m[0][1], m[1][1])

    def canonical(self) -> "SublatticeBasis":
        return hermite_canonical(self)

    def scaled(self, k: int) -> "SublatticeBasis":
        m = self.m
        return SublatticeBasis(((k * m[0][0], k * m[0][1]), (k * m[1][0], k * m[1][1])))

    def to_json_obj(self) -> dict:
        return {"basis": [[str(x) for x in row] for row in self.m]}

    @classmethod
    def from_json_obj(cls, obj) -> "SublatticeBasis":
        if isinstance(obj, dict):
            obj = obj["basis"]
        return cls([[int(x) for x in row] for row in obj])

    def __repr__(self) -> str:
        return f"SublatticeBasis({[list(r) for r in self.m]})"


def hermite_canonical(m) -> SublatticeBasis:
    """Column Hermite normal form ``[[a, b], [0, d]]``, ``a, d > 0``, ``0 <= b < a``.

    Two bases span the same sublattice iff their canonical forms coincide.
    """
    mat = m.m if isinstance(m, SublatticeBasis) else _as_matrix(m)
    det = _det(mat)
    if det == 0:
        raise SingularMatrix(f"basis {mat} has zero determinant")
    c, d = mat[1]
    g, s, t = xgcd(c, d)
    # [c d] @ W = [0 g] with det W = 1
    w = ((d // g, s), (-c // g, t))
    h = _mul(mat, w)
    a, b = h[0]
    if a < 0:
        a = -a
    b %= a
    return SublatticeBasis(((a, b), (0, g)))


def index(m, outer=None) -> int:
    """Index ``|L : span(m)|``, or ``|outer : m|`` when ``outer`` is given."""
    inner = m if isinstance(m, SublatticeBasis) else SublatticeBasis(m)
    if outer is None:
        return abs(inner.det)
    outer = outer if isinstance(outer, SublatticeBasis) else SublatticeBasis(outer)
    if not contains(outer, inner):
        raise ValueError(f"{inner!r} is not contained in {outer!r}")
    return abs(inner.det) // abs(outer.det)


def relative_basis(outer, inner) -> SublatticeBasis:
    """Coordinates of ``inner``'s basis in ``outer``'s basis, i.e. ``outer^-1 @ inner``."""
    outer = outer if isinstance(outer, SublatticeBasis) else SublatticeBasis(outer)
    inner = inner if isinstance(inner, SublatticeBasis) else SublatticeBasis(inner)
    prod = _mul(_adj(outer.m), inner.m)
    d = outer.det
    if any(x % d for row in prod for x in row):
        raise ValueError(f"{inner!r} is not contained in {outer!r}")
    return SublatticeBasis(tuple(tuple(x // d for x in row) for row in prod))


def contains(outer, inner) -> bool:
    """True iff every column of ``inner`` lies in the lattice spanned by ``outer``."""
    outer = outer if isinstance(outer, SublatticeBasis) else SublatticeBasis(outer)
    inner = inner if isinstance(inner, SublatticeBasis) else SublatticeBasis(inner)
    d = outer.det
    prod = _mul(_adj(outer.m), inner.m)
    return all(x % d == 0 for row in prod for x in row)


def smith_normal_form(m) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(U, D, V)`` with ``U @ m @ V == D = diag(d1, d2)``, ``0 < d1 | d2``.

    ``U`` and ``V`` are unimodular.
    """
    mat = m.m if isinstance(m, SublatticeBasis) else _as_matrix(m)
    if _det(mat) == 0:
        raise SingularMatrix(f"basis {mat} has zero determinant")
    a = [list(r) for r in mat]
    u = [[1, 0], [0, 1]]
    v = [[1, 0], [0, 1]]

    def swap_rows():
        a.reverse()
        u.reverse()

    def swap_cols():
        for r in a:
            r.reverse()
        for r in v:
            r.reverse()

    def add_row(dst, src, k):
        for j in range(2):
            a[dst][j] += k * a[src][j]
            u[dst][j] += k * u[src][j]

    def add_col(dst, src, k):
        for i in range(2):
            a[i][dst] += k * a[i][src]
            v[i][dst] += k * v[i][src]

    while True:
        # move the smallest nonzero entry to the pivot
        i, j = min(
            ((i, j) for i in range(2) for j in range(2) if a[i][j]),
            key=lambda ij: abs(a[ij[0]][ij[1]]),
        )
        if i:
            swap_rows()
        if j:
            swap_cols()
        p = a[0][0]
        add_row(1, 0, -(a[1][0] // p))
        add_col(1, 0, -(a[0][1] // p))
        if a[1][0] or a[0][1]:
            continue
        if a[1][1] % p:
            add_row(0, 1, 1)
            continue
        break

    for i in range(2):
        if a[i][i] < 0:
            a[i] = [-x for x in a[i]]
            u[i] = [-x for x in u[i]]
    as_t = lambda x: (tuple(x[0]), tuple(x[1]))  # noqa: E731
    return as_t(u), as_t(a), as_t(v)


def _column_echelon(rows: list[list[int]]) -> tuple[list[list[int]], list[list[int]]]:
    """Column-reduce an integer matrix; return ``(H, T)`` with ``rows @ T == H``.

    Zero columns of ``H`` sit at the right end; the matching columns of ``T``
    span the integer kernel.
    """
    h = [list(r) for r in rows]
    n = len(h[0])
    t = [[int(i == j) for j in range(n)] for i in range(n)]
    pivot = 0
    for r in range(len(h)):
        if pivot >= n:
            break
        for c in range(pivot + 1, n):
            x, y = h[r][pivot], h[r][c]
            if y == 0:
                continue
            g, s, tt = xgcd(x, y)
            # [x y] @ [[s, -y/g], [tt, x/g]] = [g 0]
            cx, cy = -y // g, x // g
            for mat in (h, t):
                for row in mat:
                    p, q = row[pivot], row[c]
                    row[pivot], row[c] = s * p + tt * q, cx * p + cy * q
        if h[r][pivot]:
            pivot += 1
    return h, t


def intersect(a, b) -> SublatticeBasis:
    """Canonical basis of ``span(a) & span(b)`` via the integer kernel of ``[a | -b]``."""
    a = a if isinstance(a, SublatticeBasis) else SublatticeBasis(a)
    b = b if isinstance(b, SublatticeBasis) else SublatticeBasis(b)
    block = [
        [a.m[0][0], a.m[0][1], -b.m[0][0], -b.m[0][1]],
        [a.m[1][0], a.m[1][1], -b.m[1][0], -b.m[1][1]],
    ]
    h, t = _column_echelon(block)
    assert not any(h[i][c] for i in range(2) for c in (2, 3))
    vecs = []
    for c in (2, 3):
        s = (t[0][c], t[1][c])
        vecs.append((a.m[0][0] * s[0] + a.m[0][1] * s[1], a.m[1][0] * s[0] + a.m[1][1] * s[1]))
    basis = ((vecs[0][0], vecs[1][0]), (vecs[0][1], vecs[1][1]))
    return hermite_canonical(basis)


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
# the first twelve prime bases are a deterministic witness set below this bound
_MR_LIMIT = 318665857834031151167461


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin below ~3.2e23; trial division above that (slow)."""
    n = int(n)
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if n >= _MR_LIMIT:
        return all(n % f for f in range(41, math.isqrt(n) + 1, 2))
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    """Prime factors of ``n > 0`` with multiplicity, ascending."""
    n = abs(int(n))
    out = []
    f = 2
    while f * f <= n:
        while n % f == 0:
            out.append(f)
            n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


def enumerate_prime_sublattices(p: int) -> list[SublatticeBasis]:
    """All ``p + 1`` sublattices of prime index ``p``, sorted by canonical form.

    The classical list ``[[1, j], [0, p]]`` (j < p) and ``[[p, 0], [0, 1]]``
    lists basis vectors as rows; here they are transposed into columns.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    p = int(p)
    raw = [((1, 0), (j, p)) for j in range(p)] + [((p, 0), (0, 1))]
    return sorted({hermite_canonical(q) for q in raw}, key=lambda s: s.m)


@dataclass(frozen=True)
class PrimeFiltration:
    """Chain ``L = chain[0] > chain[1] > ...`` with prime step indices."""

    chain: tuple[SublatticeBasis, ...]
    primes: tuple[int, ...]

    def __post_init__(self):
        if len(self.chain) != len(self.primes) + 1:
            raise ValueError("chain must be one longer than primes")

    @property
    def length(self) -> int:
        return len(self.primes)

    @property
    def last(self) -> SublatticeBasis:
        return self.chain[-1]

    def to_json_obj(self) -> dict:
        return {
            "chain": [c.to_json_obj() for c in self.chain],
            "primes": [str(p) for p in self.primes],
        }

    @classmethod
    def from_json_obj(cls, obj) -> "PrimeFiltration":
        return cls(
            tuple(SublatticeBasis.from_json_obj(c) for c in obj["chain"]),
            tuple(int(p) for p in obj["primes"]),
        )


def prime_filtration(m) -> PrimeFiltration:
    """Filtration of ``L`` down to ``span(m)`` with prime consecutive indices.

    From ``U m V = diag(d1, d2)`` the target equals ``U^-1 diag(d1, d2)``; the
    chain multiplies in the primes of ``d1`` then those of ``d2``, ascending.
    """
    target = m if isinstance(m, SublatticeBasis) else SublatticeBasis(m)
    u, d, _ = smith_normal_form(target)
    u_inv = _adj(u) if _det(u) == 1 else tuple(tuple(-x for x in r) for r in _adj(u))
    e = [1, 1]
    chain = [SublatticeBasis.identity()]
    primes = []
    for slot in (0, 1):
        for p in prime_factors(d[slot][slot]):
            e[slot] *= p
            step = _mul(u_inv, ((e[0], 0), (0, e[1])))
            chain.append(hermite_canonical(step))
            primes.append(p)
    assert chain[-1] == hermite_canonical(target)
    return PrimeFiltration(tuple(chain), tuple(primes))


@dataclass(frozen=True)
class DecompositionTable:
    """Grid ``cells[k][j] = L_j & L^k`` of two prime filtrations.

    ``col_primes`` are the steps ``p_j`` of the star chain (columns), and
    ``row_primes`` the steps ``p^k`` of the costar chain (rows).
    """

    cells: tuple[tuple[SublatticeBasis, ...], ...]
    col_primes: tuple[int, ...]
    row_primes: tuple[int, ...]

    @property
    def r(self) -> int:
        return len(self.col_primes)

    @property
    def s(self) -> int:
        return len(self.row_primes)

    @property
    def corner(self) -> SublatticeBasis:
        return self.cells[self.s][self.r]

    def cell(self, k: int, j: int) -> SublatticeBasis:
        return self.cells[k][j]

    def horizontal_index(self, k: int, j: int) -> int:
        """``|L_{j-1}^k : L_j^k|``."""
        return index(self.cells[k][j], self.cells[k][j - 1])

    def vertical_index(self, k: int, j: int) -> int:
        """``|L_j^{k-1} : L_j^k|``."""
        return index(self.cells[k][j], self.cells[k - 1][j])

    def edge_report(self) -> list[dict]:
        edges = []
        for k in range(self.s + 1):
            for j in range(self.r + 1):
                if j:
                    idx = self.horizontal_index(k, j)
                    p = self.col_primes[j - 1]
                    edges.append({"from": [k, j], "to": [k, j - 1], "index": idx,
                                  "prime": p, "ok": idx in (1, p)})
                if k:
                    idx = self.vertical_index(k, j)
                    p = self.row_primes[k - 1]
                    edges.append({"from": [k, j], "to": [k - 1, j], "index": idx,
                                  "prime": p, "ok": idx in (1, p)})
        return edges

    def check(self) -> bool:
        """Check the grid identities and the edge-index memberships."""
        if self.cells[0][0] != SublatticeBasis.identity():
            return False
        for k in range(1, self.s + 1):
            for j in range(1, self.r + 1):
                if intersect(self.cells[k][j - 1], self.cells[k - 1][j]) != self.cells[k][j]:
                    return False
        return all(e["ok"] for e in self.edge_report())

    def to_json_obj(self) -> dict:
        return {
            "cells": [[c.to_json_obj() for c in row] for row in self.cells],
            "row_primes": [str(p) for p in self.row_primes],
            "col_primes": [str(p) for p in self.col_primes],
        }

    @classmethod
    def from_json_obj(cls, obj) -> "DecompositionTable":
        return cls(
            tuple(tuple(SublatticeBasis.from_json_obj(c) for c in row) for row in obj["cells"]),
            tuple(int(p) for p in obj["col_primes"]),
            tuple(int(p) for p in obj["row_primes"]),
        )


def build_table(star: PrimeFiltration, costar: PrimeFiltration) -> DecompositionTable:
    cells = tuple(
        tuple(intersect(lj, lk) for lj in star.chain)
        for lk in costar.chain
    )
    return DecompositionTable(cells, tuple(star.primes), tuple(costar.primes))


# Paths run from the corner (s, r) down to (0, 0).  A "J" step decrements the
# column j, a "K" step decrements the row k.

@dataclass(frozen=True)
class LatticePath:
    cells: tuple[tuple[int, int], ...]

    def __post_init__(self):
        cells = tuple(tuple(c) for c in self.cells)
        object.__setattr__(self, "cells", cells)
        if not cells or cells[-1] != (0, 0):
            raise InvalidPath("path must end at (0, 0)")
        for (k0, j0), (k1, j1) in zip(cells, cells[1:]):
            if (k0 - k1, j0 - j1) not in ((1, 0), (0, 1)):
                raise InvalidPath(f"step {(k0, j0)} -> {(k1, j1)} is not a unit decrement")
        if any(k < 0 or j < 0 for k, j in cells):
            raise InvalidPath("negative coordinate")

    @classmethod
    def from_steps(cls, steps: str, s: int, r: int) -> "LatticePath":
        k, j = s, r
        cells = [(k, j)]
        for c in steps:
            if c == "K":
                k -= 1
            elif c == "J":
                j -= 1
            else:
                raise InvalidPath(f"unknown step {c!r}")
            cells.append((k, j))
        return cls(tuple(cells))

    @classmethod
    def top_left(cls, s: int, r: int) -> "LatticePath":
        """Along the top row to the left, then down the left column."""
        return cls.from_steps("J" * r + "K" * s, s, r)

    @classmethod
    def bottom_right(cls, s: int, r: int) -> "LatticePath":
        """Down the right column, then along the bottom row."""
        return cls.from_steps("K" * s + "J" * r, s, r)

    @property
    def start(self) -> tuple[int, int]:
        return self.cells[0]

    @property
    def steps(self) -> str:
        return "".join("K" if a[0] != b[0] else "J" for a, b in zip(self.cells, self.cells[1:]))

    def fits(self, table: DecompositionTable) -> bool:
        return self.start == (table.s, table.r)


@dataclass(frozen=True)
class SquareMove:
    """Swap the two detours around one elementary square.

    ``corner`` is the cell ``(k, j)`` where both detours start; they meet
    again at ``(k - 1, j - 1)``.  ``vertical_first`` says which detour the
    path currently takes (through ``(k - 1, j)`` when True).
    """

    corner: tuple[int, int]
    vertical_first: bool

    def apply(self, path: LatticePath) -> LatticePath:
        k, j = self.corner
        old = (k - 1, j) if self.vertical_first else (k, j - 1)
        new = (k, j - 1) if self.vertical_first else (k - 1, j)
        cells = list(path.cells)
        for i in range(len(cells) - 2):
            if cells[i] == (k, j) and cells[i + 1] == old and cells[i + 2] == (k - 1, j - 1):
                cells[i + 1] = new
                return LatticePath(tuple(cells))
        raise InvalidPath(f"{self} does not apply to path {path.steps}")


def path_area(a: LatticePath, b: LatticePath) -> int:
    """Number of elementary squares enclosed between two paths."""
    if a.start != b.start:
        raise InvalidPath("paths start at different corners")

    def profile(path):
        # for each row k, the column at which the path leaves that row
        out = {}
        for (k0, j0), (k1, _) in zip(path.cells, path.cells[1:]):
            if k1 != k0:
                out[k0] = j0
        return out

    pa, pb = profile(a), profile(b)
    return sum(abs(pa[k] - pb[k]) for k in pa)


def path_deform(table: DecompositionTable, src: LatticePath, dst: LatticePath) -> list[SquareMove]:
    """Square moves turning ``src`` into ``dst``, one elementary square each.

    Sweeps the step words left to right: at the first disagreement the
    nearest matching step is bubbled back, flipping one square per swap.
    The move count equals the enclosed area.
    """
    for p in (src, dst):
        if not p.fits(table):
            raise InvalidPath(f"path {p.cells} does not start at the table corner")
    cur = list(src.steps)
    want = dst.steps
    moves = []
    for i, target in enumerate(want):
        if cur[i] == target:
            continue
        l = cur.index(target, i)
        for pos in range(l, i, -1):
            # cells before position pos-1 are fixed; compute the square corner
            k, j = table.s, table.r
            for c in cur[: pos - 1]:
                if c == "K":
                    k -= 1
                else:
                    j -= 1
            moves.append(SquareMove((k, j), vertical_first=cur[pos - 1] == "K"))
            cur[pos - 1], cur[pos] = cur[pos], cur[pos - 1]
    return moves


def iter_paths(s: int, r: int) -> Iterable[LatticePath]:
    """Every monotone path of an ``(s+1) x (r+1)`` table."""
    for ks in itertools.combinations(range(r + s), s):
        steps = ["J"] * (r + s)
        for i in ks:
            steps[i] = "K"
        yield LatticePath.from_steps("".join(steps), s, r)


def sublattices_of_index(n: int) -> list[SublatticeBasis]:
    """Canonical bases of every sublattice of index ``n``."""
    out = []
    for a in range(1, n + 1):
        if n % a:
            continue
        d = n // a
        out.extend(SublatticeBasis(((a, b), (0, d))) for b in range(a))
    return out


def as_basis(m: SublatticeBasis | Sequence[Sequence[int]]) -> SublatticeBasis:
    return m if isinstance(m, SublatticeBasis) else SublatticeBasis(m)
