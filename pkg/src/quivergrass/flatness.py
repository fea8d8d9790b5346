"""Rank of the multilinear-degree slice of the coordinate ring of the
three-component degeneration of the projective plane.

The three irreducible components carry open cells parameterized by two free
parameters each; the cell matrices are hardcoded.  Column i of cell j's
matrix supplies the homogeneous coordinates (x_i, y_i, z_i) on that cell, and
a monomial that is linear in each of the three coordinate groups evaluates to
a triple of polynomials, one per cell.  The span of the 27 evaluation triples
has rank 10, matching the degree-3 slice of the coordinate ring of the plane.
"""

from __future__ import annotations

from fractions import Fraction

from .gkm import Polynomial
from .linear_geometry import RationalMatrix

#: Variable order of the six cell parameters.
PARAM_NAMES = ("a1", "b1", "a2", "b2", "a3", "b3")
NVARS = 6

GROUP_NAMES = ("x", "y", "z")


def _var(name: str) -> Polynomial:
    return Polynomial.variable(NVARS, PARAM_NAMES.index(name))


def _const(c) -> Polynomial:
    return Polynomial.constant(NVARS, c)


def cell_matrices() -> tuple[tuple[tuple[Polynomial, ...], ...], ...]:
    """The three open-cell matrices; rows are the x, y, z coordinate rows."""
    one, zero = _const(1), _const(0)
    a1, b1, a2, b2, a3, b3 = map(_var, PARAM_NAMES)
    m1 = ((one, zero, zero), (a1, one, zero), (b1, a1, one))
    m2 = ((zero, one, zero), (zero, a2, one), (one, b2, a2))
    m3 = ((zero, zero, one), (one, zero, a3), (a3, one, b3))
    return (m1, m2, m3)


TriDegMonomial = tuple[int, int, int]  # coordinate choice (0=x, 1=y, 2=z) per group


def all_monomials() -> list[TriDegMonomial]:
    """The 27 monomials of multidegree (1, 1, 1)."""
    return [(c1, c2, c3) for c1 in range(3) for c2 in range(3) for c3 in range(3)]


def monomial_name(mono: TriDegMonomial) -> str:
    return "".join(f"{GROUP_NAMES[c]}{i}" for i, c in enumerate(mono, start=1))


def eval_monomial(mono: TriDegMonomial) -> tuple[Polynomial, Polynomial, Polynomial]:
    """Value of the monomial on the three open cells.

    >>> poly_str(eval_monomial((1, 1, 2))[0])  # y1y2z3 on the first cell
    'a1'
    """
    values = []
    for matrix in cell_matrices():
        prod = _const(1)
        for i, c in enumerate(mono):
            prod = prod * matrix[c][i]
        values.append(prod)
    return tuple(values)


def basis_monomials() -> list[TriDegMonomial]:
    """Ten monomials whose evaluations span the multilinear slice."""
    names = [
        "y1y2z3", "y1z2y3", "y1z2z3",
        "z1y2y3", "z1y2z3", "z1z2y3",
        "z1z2z3",
        "x1y2z3", "z1x2y3", "y1z2x3",
    ]
    by_name = {monomial_name(m): m for m in all_monomials()}
    return [by_name[n] for n in names]


def _coefficient_vector(triple, basis_keys) -> list[Fraction]:
    row = []
    for cell_idx, poly in enumerate(triple):
        for exp in basis_keys[cell_idx]:
            row.append(poly.coefficient(exp))
    return row


def _basis_keys(triples):
    keys = [set(), set(), set()]
    for triple in triples:
        for cell_idx, poly in enumerate(triple):
            keys[cell_idx].update(poly.terms)
    return [sorted(k) for k in keys]


def evaluation_matrix() -> tuple[list[TriDegMonomial], RationalMatrix]:
    """All 27 monomials and their evaluations expanded over a monomial basis."""
    monos = all_monomials()
    triples = [eval_monomial(m) for m in monos]
    keys = _basis_keys(triples)
    rows = [_coefficient_vector(t, keys) for t in triples]
    return monos, RationalMatrix(rows)


def degree111_rank() -> int:
    """Exact rank of the 27 evaluation triples over Q.

    >>> degree111_rank()
    10
    """
    _, mat = evaluation_matrix()
    return mat.rank()


def basis_is_independent() -> bool:
    """The ten chosen monomials evaluate to linearly independent triples."""
    triples = [eval_monomial(m) for m in basis_monomials()]
    keys = _basis_keys(triples)
    mat = RationalMatrix([_coefficient_vector(t, keys) for t in triples])
    return mat.rank() == len(triples)


def classify_monomials() -> dict[str, str]:
    """Map each monomial to 'zero', 'basis', or the basis monomial it equals."""
    basis = basis_monomials()
    basis_values = {monomial_name(m): eval_monomial(m) for m in basis}
    out = {}
    for mono in all_monomials():
        name = monomial_name(mono)
        value = eval_monomial(mono)
        if all(poly.is_zero() for poly in value):
            out[name] = "zero"
        elif mono in basis:
            out[name] = "basis"
        else:
            match = next((bn for bn, bv in basis_values.items() if bv == value), None)
            out[name] = match if match else "UNMATCHED"
    return out


def poly_str(poly: Polynomial) -> str:
    """Render with the cell parameter names instead of generic variables."""
    if poly.is_zero():
        return "0"
    parts = []
    for exp, c in poly.sorted_terms():
        mono = "*".join(
            PARAM_NAMES[i] + (f"^{e}" if e > 1 else "") for i, e in enumerate(exp) if e
        )
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append(f"-{mono}")
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts).replace("+ -", "- ")


def evaluation_table_csv() -> str:
    """CSV with one row per monomial: name, the three cell values, class."""
    classes = classify_monomials()
    lines = ["monomial,cell1,cell2,cell3,classification"]
    for mono in all_monomials():
        name = monomial_name(mono)
        value = eval_monomial(mono)
        cells = ",".join(poly_str(p) for p in value)
        lines.append(f"{name},{cells},{classes[name]}")
    return "\n".join(lines) + "\n"
