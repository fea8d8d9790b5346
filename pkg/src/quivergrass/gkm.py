"""Equivariant cohomology checks over the exact polynomial ring
Q[eps_1, ..., eps_n, delta].

Polynomials are sparse maps from exponent vectors (n entries for the eps
variables followed by one for delta) to rationals.  An equivariant class is a
total assignment of a polynomial to every vertex of a moment graph; it
satisfies the GKM condition when the difference across every edge is
divisible by the (linear) edge label.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .core import LengthTuple, Params, perm_length, lengths_to_perm
from .moment_graph import Character, MomentGraph, rotate_tuple

Exponent = tuple[int, ...]


class Polynomial:
    """Immutable sparse polynomial with exact rational coefficients.

    Terms are kept in a dict from exponent vectors to nonzero Fractions; the
    canonical ordering used for display and iteration is graded lexicographic.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        clean: dict[Exponent, Fraction] = {}
        for exp, c in (terms or {}).items():
            c = Fraction(c)
            if c == 0:
                continue
            exp = tuple(exp)
            if len(exp) != nvars or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent vector {exp} for {nvars} variables")
            clean[exp] = clean.get(exp, Fraction(0)) + c
        self.terms = {e: c for e, c in clean.items() if c != 0}

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "Polynomial":
        """Internal constructor for term dicts already in canonical shape."""
        self = object.__new__(cls)
        self.nvars = nvars
        self.terms = {e: c for e, c in terms.items() if c != 0}
        return self

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, c) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: Fraction(c)})

    @classmethod
    def variable(cls, nvars: int, idx: int) -> "Polynomial":
        exp = [0] * nvars
        exp[idx] = 1
        return cls(nvars, {tuple(exp): Fraction(1)})

    @classmethod
    def from_character(cls, char: Character) -> "Polynomial":
        """Linear form of a torus character in Q[eps_1..eps_n, delta]."""
        nvars = len(char.eps) + 1
        terms = {}
        for i, c in enumerate(char.eps):
            if c:
                exp = [0] * nvars
                exp[i] = 1
                terms[tuple(exp)] = Fraction(c)
        if char.delta:
            exp = [0] * nvars
            exp[-1] = 1
            terms[tuple(exp)] = Fraction(char.delta)
        return cls(nvars, terms)

    # -- ring operations ---------------------------------------------------

    def _check(self, other: "Polynomial") -> None:
        if self.nvars != other.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return Polynomial._raw(self.nvars, terms)

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) - c
        return Polynomial._raw(self.nvars, terms)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        terms: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return Polynomial._raw(self.nvars, terms)

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        return Polynomial._raw(self.nvars, {e: c * v for e, v in self.terms.items()})

    def substitute(self, idx: int, value: "Polynomial") -> "Polynomial":
        """Replace variable ``idx`` by a polynomial of degree <= 1."""
        self._check(value)
        if value.degree() > 1:
            raise ValueError("substitution value must have degree <= 1")
        max_power = max((e[idx] for e in self.terms), default=0)
        powers = [Polynomial.constant(self.nvars, 1)]
        for _ in range(max_power):
            powers.append(powers[-1] * value)
        acc: dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            base = list(e)
            power = base[idx]
            base[idx] = 0
            for pe, pc in powers[power].terms.items():
                exp = tuple(a + b for a, b in zip(base, pe))
                acc[exp] = acc.get(exp, 0) + c * pc
        return Polynomial._raw(self.nvars, acc)

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def coefficient(self, exp: Exponent) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        names = [f"x{i}" for i in range(self.nvars)]
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"{names[i]}" + (f"^{p}" if p > 1 else "") for i, p in enumerate(e) if p
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

    __repr__ = __str__


def congruent_mod_linear(a: Polynomial, b: Polynomial, alpha: Character | Polynomial) -> bool:
    """True iff a - b is divisible by the linear form ``alpha``.

    The leading variable of ``alpha`` (one with unit coefficient) is solved
    for and substituted into a - b; divisibility is equivalent to the result
    being the zero polynomial.

    >>> a = Polynomial.from_character(Character((1, -1), 1))
    >>> congruent_mod_linear(a, Polynomial.zero(3), Character((1, -1), 1))
    True
    >>> congruent_mod_linear(Polynomial.variable(3, 2), Polynomial.zero(3), Character((1, -1), 1))
    False
    """
    if isinstance(alpha, Character):
        alpha = Polynomial.from_character(alpha)
    a._check(alpha)
    if alpha.is_zero() or alpha.degree() != 1 or alpha.coefficient((0,) * alpha.nvars) != 0:
        raise ValueError(f"modulus must be a nonzero homogeneous linear form, got {alpha}")
    diff = a - b
    if diff.is_zero():
        return True
    pivot = None
    for e, c in sorted(alpha.terms.items()):
        if abs(c) == 1:
            pivot = (e.index(1), c)
            break
    if pivot is None:
        raise ValueError(f"modulus {alpha} has no unit coefficient to solve for")
    # solve alpha = 0 for the pivot variable and substitute
    idx, coeff = pivot
    others = Polynomial._raw(alpha.nvars, {e: c for e, c in alpha.terms.items() if e[idx] == 0})
    value = others.scale(Fraction(-1) / coeff)
    return diff.substitute(idx, value).is_zero()


# ---------------------------------------------------------------------------
# classes on moment graphs

GkmClass = dict  # vertex length tuple -> Polynomial


@dataclass
class GkmReport:
    ok: bool
    checked: int = 0
    violations: list[str] = field(default_factory=list)

    def __str__(self) -> str:
        if self.ok:
            return f"ok ({self.checked} conditions)"
        return "FAIL: " + "; ".join(self.violations)


def check_gkm_class(cls: GkmClass, g: MomentGraph) -> GkmReport:
    """Check the congruence condition of ``cls`` along every edge of ``g``.

    The class must assign a polynomial to every vertex of the graph.
    """
    missing = [v for v in g.vertices if v not in cls]
    if missing:
        raise ValueError(f"class is not total over the vertex set; missing {missing[0]}")
    violations = []
    checked = 0
    for e in g.edges:
        src, tgt = g.vertices[e.source], g.vertices[e.target]
        checked += 1
        if not congruent_mod_linear(cls[src], cls[tgt], e.label):
            violations.append(f"edge {src} -> {tgt}: difference not divisible by {e.label}")
    inhomogeneous = [v for v in g.vertices if not cls[v].is_homogeneous()]
    for v in inhomogeneous:
        violations.append(f"entry at {v} is not homogeneous")
    return GkmReport(not violations, checked, violations)


def up_set(g: MomentGraph, v: LengthTuple) -> set[LengthTuple]:
    """Vertices from which ``v`` is reachable (including ``v`` itself)."""
    idx = g.index[v]
    preds: dict[int, list[int]] = {}
    for e in g.edges:
        preds.setdefault(e.target, []).append(e.source)
    seen = {idx}
    stack = [idx]
    while stack:
        u = stack.pop()
        for w in preds.get(u, ()):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return {g.vertices[i] for i in seen}


def kt_shape_check(cls: GkmClass, v: LengthTuple, g: MomentGraph) -> GkmReport:
    """Check the normalized-support shape of a class attached to vertex ``v``.

    Conditions: the support is contained in the up-set of ``v``; the entry at
    ``v`` equals the product of the labels of the edges leaving ``v``; every
    nonzero entry is homogeneous of polynomial degree equal to the length of
    ``v``'s permutation (degree-2 cohomological grading).
    """
    p = g.params
    violations = []
    support = {u for u, poly in cls.items() if not poly.is_zero()}
    allowed = up_set(g, v)
    for u in sorted(support - allowed):
        violations.append(f"support contains {u} outside the up-set of {v}")
    nvars = p.n + 1
    expected = Polynomial.constant(nvars, 1)
    for e in g.out_edges[g.index[v]]:
        expected = expected * Polynomial.from_character(e.label)
    if cls.get(v) != expected:
        violations.append(f"entry at {v} is {cls.get(v)}, expected out-edge product {expected}")
    deg = perm_length(lengths_to_perm(p, v))
    for u in sorted(support):
        poly = cls[u]
        if not poly.is_homogeneous() or poly.degree() != deg:
            violations.append(f"entry at {u} is not homogeneous of degree {deg}")
    return GkmReport(not violations, 2 + len(support), violations)


def rotate_polynomial(n: int, m: int, poly: Polynomial) -> Polynomial:
    """Apply the residue action eps_i -> eps_{i-m} (delta fixed) coefficientwise."""
    if poly.nvars != n + 1:
        raise ValueError(f"expected {n + 1} variables, got {poly.nvars}")
    terms = {}
    for e, c in poly.terms.items():
        eps = e[:n]
        rotated = tuple(eps[(i + m) % n] for i in range(n)) + (e[n],)
        terms[rotated] = terms.get(rotated, 0) + c
    return Polynomial._raw(poly.nvars, terms)


def zn_act_class(m: int, cls: GkmClass, p: Params) -> GkmClass:
    """Residue action on classes: entry at v is m applied to the entry at m.v."""
    return {v: rotate_polynomial(p.n, m, cls[rotate_tuple(m, v)]) for v in cls}


# ---------------------------------------------------------------------------
# point classes and the reference classes of the five-cell example


def point_class(g: MomentGraph, v: LengthTuple) -> GkmClass:
    """Class supported on {v} with entry the product of all labels at v.

    Divisible by every adjacent label, hence always a valid GKM class.
    """
    nvars = g.params.n + 1
    entry = Polynomial.constant(nvars, 1)
    for e in g.edges:
        if g.vertices[e.source] == v or g.vertices[e.target] == v:
            entry = entry * Polynomial.from_character(e.label)
    cls = {u: Polynomial.zero(nvars) for u in g.vertices}
    cls[v] = entry
    return cls


def constant_class(g: MomentGraph, c=1) -> GkmClass:
    nvars = g.params.n + 1
    return {u: Polynomial.constant(nvars, c) for u in g.vertices}


def moment_class(g: MomentGraph) -> GkmClass:
    """Degree-1 class ``sum_s l_s eps_s - (sum_s l_s^2)/2 delta``.

    Along the edge removing r boxes at i and adding them at j the difference
    is -r times the edge label, so the congruences hold on every edge.
    """
    n = g.params.n
    nvars = n + 1
    cls = {}
    for v in g.vertices:
        terms: dict[Exponent, Fraction] = {}
        for s, l in enumerate(v):
            if l:
                exp = [0] * nvars
                exp[s] = 1
                terms[tuple(exp)] = Fraction(l)
        exp = [0] * nvars
        exp[-1] = 1
        terms[tuple(exp)] = Fraction(-sum(l * l for l in v), 2)
        cls[v] = Polynomial(nvars, terms)
    return cls


def reference_classes_1_2_2() -> dict[LengthTuple, GkmClass]:
    """The normalized basis classes of the five-cell graph of X(1, 2, 2).

    Entries are written via a = eps_1 - eps_2 and d = delta; keys of the outer
    dict are the vertices the classes are attached to.
    """
    nvars = 3
    a = Polynomial(nvars, {(1, 0, 0): 1, (0, 1, 0): -1})
    d = Polynomial.variable(nvars, 2)
    zero = Polynomial.zero(nvars)
    one = Polynomial.constant(nvars, 1)
    vertices = [(0, 4), (1, 3), (2, 2), (3, 1), (4, 0)]

    def cls(entries: dict[LengthTuple, Polynomial]) -> GkmClass:
        return {v: entries.get(v, zero) for v in vertices}

    return {
        (2, 2): cls({v: one for v in vertices}),
        (3, 1): cls({(3, 1): -a + d, (4, 0): -a + d, (0, 4): a + d.scale(3)}),
        (1, 3): cls({(1, 3): a + d, (0, 4): a + d, (4, 0): -a + d.scale(3)}),
        (4, 0): cls({(4, 0): (-a + d) * (-a + d.scale(3))}),
        (0, 4): cls({(0, 4): (a + d) * (a + d.scale(3))}),
    }


# ---------------------------------------------------------------------------
# JSON interchange

CLASS_SCHEMA = "quivergrass/gkm-class/1"


def class_to_json(cls: GkmClass, p: Params) -> str:
    doc = {
        "schema": CLASS_SCHEMA,
        "k": p.k,
        "n": p.n,
        "omega": p.omega,
        "entries": {
            ",".join(map(str, v)): [[list(e), str(c)] for e, c in poly.sorted_terms()]
            for v, poly in cls.items()
        },
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def class_from_json(text: str) -> tuple[GkmClass, Params]:
    doc = json.loads(text)
    if doc.get("schema") != CLASS_SCHEMA:
        raise ValueError(f"unexpected schema {doc.get('schema')!r}")
    p = Params(doc["k"], doc["n"], doc["omega"])
    nvars = p.n + 1
    cls = {}
    for key, terms in doc["entries"].items():
        v = tuple(int(x) for x in key.split(","))
        cls[v] = Polynomial(nvars, {tuple(e): Fraction(c) for e, c in terms})
    return cls, p
