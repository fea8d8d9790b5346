"""Embedding of the fixed points into nested sequences of cofinite-below
integer sets (one per charge), the Weyl windows they determine, and the
polynomial-matrix form of the automorphism action.

A charge-c space is stored canonically as a threshold t plus finitely many
extras strictly above t, encoding the set ``Z_{<=t} union extras`` with
``t + #extras = c``.  A flag point stores the spaces of charges 0..n; charge
n must equal charge 0 shifted by n, which makes the periodicity of the whole
periodic extension independently checkable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    DEFAULT_MAX_SIZE,
    JugglingPattern,
    Params,
    Window,
    check_juggling_pattern,
    is_affine_window,
    lengths_to_jug,
    perm_length,
    shift_sum,
)
from .linear_geometry import AutElement, RationalMatrix
from .order import bruhat_lower_interval


@dataclass(frozen=True)
class SatoPoint:
    """Cofinite-below subset of Z in canonical (threshold, extras) form."""

    threshold: int
    extras: frozenset[int]

    @classmethod
    def make(cls, threshold: int, extras=()) -> "SatoPoint":
        """Canonicalize: absorb extras adjacent to the threshold."""
        extras = set(extras)
        if any(x <= threshold for x in extras):
            raise ValueError("extras must lie strictly above the threshold")
        while threshold + 1 in extras:
            threshold += 1
            extras.remove(threshold)
        return cls(threshold, frozenset(extras))

    @property
    def charge(self) -> int:
        return self.threshold + len(self.extras)

    def __contains__(self, x: int) -> bool:
        return x <= self.threshold or x in self.extras

    def shift(self, m: int) -> "SatoPoint":
        """The set translated by m (multiplication by the m-th power of t)."""
        return SatoPoint(self.threshold + m, frozenset(x + m for x in self.extras))

    def is_subset(self, other: "SatoPoint") -> bool:
        return self.threshold <= other.threshold and all(x in other for x in self.extras)

    def minus(self, other: "SatoPoint") -> list[int]:
        """Sorted finite difference self - other (other need not be a subset)."""
        out = [x for x in self.extras if x not in other]
        out.extend(
            x
            for x in range(other.threshold + 1, self.threshold + 1)
            if x not in other.extras
        )
        return sorted(out)

    def __str__(self) -> str:
        extras = ",".join(map(str, sorted(self.extras, reverse=True)))
        return "{" + (extras + "," if extras else "") + f"<= {self.threshold}" + "}"


@dataclass(frozen=True)
class FlagPoint:
    """Nested spaces for charges 0..n, one SatoPoint per charge."""

    params: Params
    points: tuple[SatoPoint, ...]

    def sato(self, i: int) -> SatoPoint:
        """Space of any charge i via the n-periodic extension."""
        n = self.params.n
        m, r = divmod(i, n)
        return self.points[r].shift(m * n)


@dataclass
class FlagReport:
    ok: bool
    violations: list[str]

    def __str__(self) -> str:
        return "ok" if self.ok else "FAIL: " + "; ".join(self.violations)


def check_flag_point(fp: FlagPoint) -> FlagReport:
    """Verify charges, nesting with singleton steps, and periodicity."""
    n = fp.params.n
    violations = []
    if len(fp.points) != n + 1:
        return FlagReport(False, [f"expected {n + 1} stored spaces, got {len(fp.points)}"])
    for i, s in enumerate(fp.points):
        if s.charge != i:
            violations.append(f"charge condition fails at index {i}: {s} has charge {s.charge}")
    for i in range(1, n + 1):
        prev, cur = fp.points[i - 1], fp.points[i]
        if not prev.is_subset(cur):
            violations.append(f"nesting fails: space {i - 1} not contained in space {i}")
        elif len(cur.minus(prev)) != 1:
            violations.append(
                f"difference of spaces {i} and {i - 1} has {len(cur.minus(prev))} elements"
            )
    if fp.points[n] != fp.points[0].shift(n):
        violations.append("periodicity fails: charge-n space is not the charge-0 space shifted by n")
    return FlagReport(not violations, violations)


def embed_fixed_point(p: Params, jug: JugglingPattern) -> FlagPoint:
    """Flag point of a fixed point: charge-i space {i - kw + nw + 1 - r : r in J_i}
    together with everything <= i - kw.

    >>> fp = embed_fixed_point(Params(1, 2, 2), ((2, 4), (1, 3)))
    >>> str(fp.points[1])
    '{2,<= 0}'
    """
    jug = check_juggling_pattern(p, jug)
    points = []
    for i in range(0, p.n + 1):
        ji = jug[(i - 1) % p.n]
        threshold = i - p.kw
        extras = {i - p.kw + p.nw + 1 - r for r in ji}
        points.append(SatoPoint.make(threshold, {x for x in extras if x > threshold}))
    return FlagPoint(p, tuple(points))


def sato_weyl(fp: FlagPoint) -> Window:
    """Weyl window of a flag point: w(i) is the unique new element at charge i.

    >>> p = Params(1, 2, 2)
    >>> sato_weyl(embed_fixed_point(p, ((2, 4), (1, 3))))
    (-1, 4)
    """
    report = check_flag_point(fp)
    if not report.ok:
        raise ValueError(f"invalid flag point: {report}")
    window = []
    for i in range(1, fp.params.n + 1):
        diff = fp.points[i].minus(fp.points[i - 1])
        if len(diff) != 1:
            raise ValueError(f"difference at charge {i} is not a singleton: {diff}")
        window.append(diff[0])
    window = tuple(window)
    if not is_affine_window(window) or shift_sum(window) != 0:
        raise ValueError(f"window {window} is not a shift-sum-0 affine permutation")
    return window


def w_of_subset(p: Params, subset) -> Window:
    """Weyl window attached to a k-subset: i - kw, plus nw exactly on the subset.

    >>> w_of_subset(Params(1, 2, 2), (2,))
    (-1, 4)
    >>> w_of_subset(Params(1, 2, 2), (1,))
    (3, 0)
    """
    subset = set(subset)
    if len(subset) != p.k or any(not (1 <= i <= p.n) for i in subset):
        raise ValueError(f"{sorted(subset)} is not a k-subset of [1, {p.n}]")
    window = tuple(i - p.kw + (p.nw if i in subset else 0) for i in range(1, p.n + 1))
    assert shift_sum(window) == 0
    return window


# ---------------------------------------------------------------------------
# the image as a union of Schubert cells


@dataclass
class SchubertReport:
    params: Params
    fixed_point_count: int
    union_count: int
    ok: bool
    missing: list[Window]
    extra: list[Window]
    violation: str | None = None

    def __str__(self) -> str:
        if self.ok:
            return (
                f"schubert union {self.params.k},{self.params.n},{self.params.omega}: ok; "
                f"both sides have {self.fixed_point_count} windows"
            )
        detail = self.violation or f"missing {self.missing[:3]}, extra {self.extra[:3]}"
        return f"schubert union {self.params.k},{self.params.n},{self.params.omega}: FAIL ({detail})"


def schubert_union_check(p: Params, max_size: int = DEFAULT_MAX_SIZE,
                         graph=None) -> SchubertReport:
    """Compare the embedded fixed-point windows with the union of the lower
    Bruhat intervals of the component windows, and the lengths with the
    moment-graph out-degrees of the corresponding cells.
    """
    from .moment_graph import build_graph

    g = graph if graph is not None else build_graph(p, max_size)
    tuples = g.vertices
    image = {}
    for idx, ell in enumerate(tuples):
        jug = lengths_to_jug(p, ell)
        w = sato_weyl(embed_fixed_point(p, jug))
        image[w] = ell
        if perm_length(w) != len(g.out_edges[idx]):
            return SchubertReport(
                p, len(image), 0, False, [], [],
                violation=f"length of {w} differs from the cell dimension of {ell}",
            )
    union: set[Window] = set()
    for subset in itertools.combinations(range(1, p.n + 1), p.k):
        union |= bruhat_lower_interval(w_of_subset(p, subset))
    missing = sorted(set(image) - union)
    extra = sorted(union - set(image))
    ok = not missing and not extra and len(image) == len(tuples)
    return SchubertReport(p, len(image), len(union), ok, missing, extra)


# ---------------------------------------------------------------------------
# the automorphism action in polynomial-matrix form


@dataclass(frozen=True)
class PolyMatrix:
    """Square matrix of one-variable polynomials, stored as coefficient tuples."""

    entries: tuple[tuple[tuple[Fraction, ...], ...], ...]

    @property
    def size(self) -> int:
        return len(self.entries)

    def __post_init__(self):
        if any(len(row) != self.size for row in self.entries):
            raise ValueError("matrix must be square")

    def eval_at(self, z) -> RationalMatrix:
        z = Fraction(z)
        return RationalMatrix(
            [
                [sum((c * z**d for d, c in enumerate(poly)), Fraction(0)) for poly in row]
                for row in self.entries
            ]
        )

    def entry_str(self, r: int, c: int) -> str:
        poly = self.entries[r][c]
        parts = [
            (str(co) if d == 0 else (f"{co}*z" if d == 1 else f"{co}*z^{d}"))
            for d, co in enumerate(poly)
            if co != 0
        ]
        return " + ".join(parts) or "0"


def aut_to_iwahori(A: AutElement) -> PolyMatrix:
    """Polynomial n x n matrix acting as the automorphism does on flag points.

    Entry (s, c) collects the parameters of superscript 1 - c: the subscripts
    run through s - c + 1 modulo n (shifted into range by one extra factor of
    z above the diagonal), so evaluation at z = 0 is lower triangular with the
    diagonal parameters a[1-s][1] on the diagonal.
    """
    p = A.params
    n, omega = p.n, p.omega
    entries = []
    for s in range(1, n + 1):
        row = []
        for c in range(1, n + 1):
            if s >= c:
                coeffs = [A.param(1 - c, s - c + 1 + n * l) for l in range(omega)]
            else:
                coeffs = [Fraction(0)] + [
                    A.param(1 - c, n + s - c + 1 + n * l) for l in range(omega)
                ]
            row.append(tuple(coeffs))
        entries.append(tuple(row))
    return PolyMatrix(tuple(entries))


def is_lower_triangular(mat: RationalMatrix) -> bool:
    return all(
        mat.rows[r][c] == 0 for r in range(mat.nrows) for c in range(r + 1, mat.ncols)
    )
