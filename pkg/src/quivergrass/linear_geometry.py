"""Exact rational realizations of points, the automorphism action, and
one-parameter limits onto fixed points.

A point is a tuple of ``n*omega x k*omega`` matrices over Q, one per vertex,
whose columns span the subspace there.  Matrices are canonicalized to reduced
column echelon form, so equality of points is equality of subspaces.  The
one-parameter limit direction follows the weight convention wt(basis index j)
= j with the parameter going to 0: in echelon form every column is pivoted at
its minimal nonzero row and the pivot rows are the surviving basis indices.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction

from .core import JugglingPattern, Params, check_juggling_pattern

Row = tuple[Fraction, ...]


class RationalMatrix:
    """Immutable dense matrix with exact rational entries."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows):
        self.rows: tuple[Row, ...] = tuple(tuple(Fraction(x) for x in r) for r in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.ncols for r in self.rows):
            raise ValueError("ragged rows")

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "RationalMatrix":
        return cls([[0] * ncols for _ in range(nrows)])

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, nrows: int, columns) -> "RationalMatrix":
        cols = [tuple(c) for c in columns]
        if any(len(c) != nrows for c in cols):
            raise ValueError("column length mismatch")
        return cls([[c[i] for c in cols] for i in range(nrows)])

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self.rows)

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix([[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)])

    @classmethod
    def _raw(cls, rows) -> "RationalMatrix":
        """Internal constructor for rows already made of Fractions."""
        self = object.__new__(cls)
        self.rows = tuple(tuple(r) for r in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        return self

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.nrows}x{self.ncols} @ {other.nrows}x{other.ncols}")
        # iterate the sparse support of each right-hand column
        cols = [
            [(i, other.rows[i][j]) for i in range(other.nrows) if other.rows[i][j]]
            for j in range(other.ncols)
        ]
        zero = Fraction(0)
        return RationalMatrix._raw(
            [[sum((row[i] * v for i, v in col), zero) for col in cols] for row in self.rows]
        )

    def hstack(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch")
        return RationalMatrix([ra + rb for ra, rb in zip(self.rows, other.rows)])

    def rref(self) -> tuple["RationalMatrix", tuple[int, ...]]:
        """Reduced row echelon form and its pivot column indices."""
        rows = [list(r) for r in self.rows]
        pivots = []
        r = 0
        for c in range(self.ncols):
            pivot_row = next((i for i in range(r, self.nrows) if rows[i][c] != 0), None)
            if pivot_row is None:
                continue
            rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
            inv = Fraction(1) / rows[r][c]
            rows[r] = [x * inv for x in rows[r]]
            for i in range(self.nrows):
                if i != r and rows[i][c] != 0:
                    f = rows[i][c]
                    rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
            if r == self.nrows:
                break
        return RationalMatrix(rows), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def column_echelon(self) -> tuple["RationalMatrix", tuple[int, ...]]:
        """Reduced column echelon form and pivot row indices (minimal rows).

        The result is the canonical basis of the column span: transpose of the
        reduced row echelon form of the transpose, with zero columns dropped.
        """
        reduced, pivots = self.transpose().rref()
        kept = reduced.rows[: len(pivots)]
        return RationalMatrix._raw(kept).transpose(), pivots

    def pivot_rows(self) -> tuple[int, ...]:
        """Pivot row indices of the column span (forward elimination only)."""
        cols = [list(self.column(j)) for j in range(self.ncols)]
        pivots = []
        r = 0
        for r in range(self.nrows):
            live = next((c for c in cols if c[r] != 0), None)
            if live is None:
                continue
            pivots.append(r)
            cols.remove(live)
            inv = Fraction(1) / live[r]
            for c in cols:
                if c[r] != 0:
                    f = c[r] * inv
                    for i in range(r, self.nrows):
                        c[i] -= f * live[i]
            if not cols:
                break
        return tuple(pivots)

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self) -> str:
        return "RationalMatrix([" + ", ".join("[" + ", ".join(map(str, r)) + "]" for r in self.rows) + "])"


def shift_matrix(m: int) -> RationalMatrix:
    """Nilpotent shift on C^m: basis index j -> j + 1, index m -> 0.

    >>> shift_matrix(2).rows
    ((Fraction(0, 1), Fraction(0, 1)), (Fraction(1, 1), Fraction(0, 1)))
    """
    return RationalMatrix([[1 if r == c + 1 else 0 for c in range(m)] for r in range(m)])


# ---------------------------------------------------------------------------
# points


@dataclass(frozen=True)
class RepPoint:
    """Subspace tuple over the vertices, each spanned by matrix columns."""

    params: Params
    mats: tuple[RationalMatrix, ...]

    def __post_init__(self):
        p = self.params
        if len(self.mats) != p.n:
            raise ValueError(f"expected {p.n} matrices, got {len(self.mats)}")
        for mat in self.mats:
            if (mat.nrows, mat.ncols) != (p.nw, p.kw):
                raise ValueError(f"expected {p.nw}x{p.kw} matrices")
            if mat.rank() != p.kw:
                raise ValueError("matrix is not of full column rank")

    @classmethod
    def _make(cls, params: Params, mats) -> "RepPoint":
        """Internal constructor for matrices known to be full-rank spans."""
        self = object.__new__(cls)
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "mats", tuple(mats))
        return self

    def canonical(self) -> "RepPoint":
        return RepPoint._make(self.params, tuple(m.column_echelon()[0] for m in self.mats))


def coordinate_point(p: Params, jug: JugglingPattern) -> RepPoint:
    """Fixed point spanned by the basis vectors of a juggling pattern."""
    jug = check_juggling_pattern(p, jug)
    mats = []
    for ji in jug:
        cols = [[1 if r + 1 == j else 0 for r in range(p.nw)] for j in ji]
        mats.append(RationalMatrix.from_columns(p.nw, cols))
    return RepPoint(p, tuple(mats))


def is_subrep(x: RepPoint) -> bool:
    """True iff the shift maps each subspace into the next (cyclically)."""
    p = x.params
    tau = shift_matrix(p.nw)
    for i in range(p.n):
        shifted = tau @ x.mats[i]
        target = x.mats[(i + 1) % p.n]
        if target.hstack(shifted).rank() != p.kw:
            return False
    return True


POINT_SCHEMA = "quivergrass/rep-point/1"


def point_to_json(x: RepPoint) -> str:
    doc = {
        "schema": POINT_SCHEMA,
        "k": x.params.k,
        "n": x.params.n,
        "omega": x.params.omega,
        "matrices": [[[str(v) for v in row] for row in m.rows] for m in x.mats],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def point_from_json(text: str) -> RepPoint:
    doc = json.loads(text)
    if doc.get("schema") != POINT_SCHEMA:
        raise ValueError(f"unexpected schema {doc.get('schema')!r}")
    p = Params(doc["k"], doc["n"], doc["omega"])
    mats = tuple(
        RationalMatrix([[Fraction(v) for v in row] for row in m]) for m in doc["matrices"]
    )
    return RepPoint(p, mats)


# ---------------------------------------------------------------------------
# automorphism group


@dataclass(frozen=True)
class AutElement:
    """Automorphism parameters a[i][r] for residue i in Z_n and r in [1, nw].

    ``a[i][r-1]`` is the entry in row r of the first column of the matrix at
    vertex i; diagonal parameters a[i][0] must be nonzero.  Matrices at the
    other columns are determined by the intertwining with the shift.
    """

    params: Params
    a: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        p = self.params
        if len(self.a) != p.n or any(len(ai) != p.nw for ai in self.a):
            raise ValueError(f"expected {p.n} x {p.nw} parameters")
        if any(ai[0] == 0 for ai in self.a):
            raise ValueError("diagonal parameters must be nonzero")

    def param(self, i: int, r: int) -> Fraction:
        """Parameter with superscript i (mod n) and subscript r in [1, nw]."""
        return self.a[i % self.params.n][r - 1]


def identity_aut(p: Params) -> AutElement:
    a = tuple(tuple(Fraction(1 if r == 0 else 0) for r in range(p.nw)) for _ in range(p.n))
    return AutElement(p, a)


def random_aut(p: Params, rng: random.Random) -> AutElement:
    """Seeded automorphism with small rational parameters, nonzero diagonal."""
    rows = []
    for _ in range(p.n):
        diag = Fraction(rng.choice([x for x in range(-4, 5) if x != 0]), rng.randint(1, 3))
        rest = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(p.nw - 1)]
        rows.append((diag, *rest))
    return AutElement(p, tuple(rows))


def aut_matrix(A: AutElement, i: int) -> RationalMatrix:
    """Matrix of the automorphism at vertex i: entry (r, c) = a[i-c+1][r-c+1].

    Lower triangular; column c repeats the first column of the matrix at
    vertex i - c + 1 shifted down by c - 1 rows.
    """
    m = A.params.nw
    return RationalMatrix(
        [
            [A.param(i - c + 1, r - c + 1) if r >= c else Fraction(0) for c in range(1, m + 1)]
            for r in range(1, m + 1)
        ]
    )


def aut_act(A: AutElement, x: RepPoint) -> RepPoint:
    """Act vertexwise by the automorphism matrices; result is canonicalized."""
    p = x.params
    if A.params != p:
        raise ValueError("parameter mismatch")
    mats = (aut_matrix(A, i) @ x.mats[i - 1] for i in range(1, p.n + 1))
    return RepPoint._make(p, tuple(m.column_echelon()[0] for m in mats))


def aut_compose(A: AutElement, B: AutElement) -> AutElement:
    """Composition A after B, read off the first columns of the products."""
    if A.params != B.params:
        raise ValueError("parameter mismatch")
    p = A.params
    cols: list = [None] * p.n
    for i in range(1, p.n + 1):
        prod = aut_matrix(A, i) @ aut_matrix(B, i)
        cols[i % p.n] = prod.column(0)
    return AutElement(p, tuple(cols))


# ---------------------------------------------------------------------------
# limits


def bb_limit(x: RepPoint) -> JugglingPattern:
    """Fixed point reached by the one-parameter flow attracting the point.

    Per vertex, the column span is reduced to echelon form with pivots at
    minimal row indices; the pivot row sets form the limit pattern.

    >>> p = Params(1, 2, 1)
    >>> u1 = RationalMatrix.from_columns(2, [[1, 5]])
    >>> u2 = RationalMatrix.from_columns(2, [[0, 1]])
    >>> bb_limit(RepPoint(p, (u1, u2)))
    ((1,), (2,))
    """
    p = x.params
    sets = []
    for mat in x.mats:
        sets.append(tuple(r + 1 for r in mat.pivot_rows()))
    return check_juggling_pattern(p, tuple(sets))
