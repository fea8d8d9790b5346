"""Fixed-point combinatorics of the cyclic-quiver Grassmannians X(k, n, omega).

Three equivalent labellings of the torus fixed points are used throughout,
all represented by plain tuples:

- A *length tuple* is a tuple ``(l_1, ..., l_n)`` of integers in
  ``[0, n*omega]`` with ``sum(l) == k*n*omega`` such that the residues
  ``j + l_j mod n`` (j = 1..n) exhaust all of Z_n.  Length tuples are the
  canonical key: patterns and permutations convert through them.

- A *juggling pattern* is a tuple of n strictly increasing tuples, each a
  ``k*omega``-subset of ``[1, n*omega]``, satisfying the cyclic shift rule:
  adding 1 to every element of ``J_i`` except ``n*omega`` lands inside
  ``J_{i+1}``.

- An *affine permutation* is given by its window ``(f(1), ..., f(n))`` and
  extends to a bijection of Z by ``f(i + n) = f(i) + n``.  The window values
  must be pairwise distinct mod n.  A *bounded* window additionally satisfies
  ``i <= f(i) <= i + n*omega`` and has shift sum ``k*n*omega``.

Vertices of the cycle quiver are numbered 1..n and indexed cyclically; basis
vectors of the ambient ``n*omega``-dimensional space at each vertex are
numbered 1..n*omega.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

LengthTuple = tuple[int, ...]
JugglingPattern = tuple[tuple[int, ...], ...]
Window = tuple[int, ...]

#: Default ceiling on n*omega for the enumeration operations.
DEFAULT_MAX_SIZE = 10


class GuardExceeded(ValueError):
    """Raised when an enumeration would exceed the configured size guard."""

    def __init__(self, nw: int, max_size: int):
        self.nw = nw
        self.max_size = max_size
        super().__init__(
            f"parameter size n*omega = {nw} exceeds the enumeration guard "
            f"{max_size}; raise max_size explicitly to proceed"
        )


@dataclass(frozen=True)
class Params:
    """Parameter triple (k, n, omega) with 1 <= k <= n and omega >= 1."""

    k: int
    n: int
    omega: int

    def __post_init__(self):
        if not (isinstance(self.k, int) and isinstance(self.n, int) and isinstance(self.omega, int)):
            raise ValueError("k, n, omega must be integers")
        if not (1 <= self.k <= self.n):
            raise ValueError(f"need 1 <= k <= n, got k={self.k}, n={self.n}")
        if self.omega < 1:
            raise ValueError(f"need omega >= 1, got omega={self.omega}")

    @property
    def nw(self) -> int:
        """Ambient dimension n*omega at every vertex."""
        return self.n * self.omega

    @property
    def kw(self) -> int:
        """Subspace dimension k*omega at every vertex."""
        return self.k * self.omega

    @property
    def total(self) -> int:
        """Common value k*n*omega of the sum of a length tuple."""
        return self.k * self.n * self.omega

    def check_guard(self, max_size: int = DEFAULT_MAX_SIZE) -> None:
        if self.nw > max_size:
            raise GuardExceeded(self.nw, max_size)


# ---------------------------------------------------------------------------
# validation helpers


def is_length_tuple(p: Params, ell) -> bool:
    """True iff ``ell`` is a valid length tuple for the parameters ``p``."""
    if len(ell) != p.n:
        return False
    if any(not (0 <= l <= p.nw) for l in ell):
        return False
    if sum(ell) != p.total:
        return False
    residues = {(j + ell[j - 1]) % p.n for j in range(1, p.n + 1)}
    return len(residues) == p.n


def check_length_tuple(p: Params, ell) -> LengthTuple:
    ell = tuple(ell)
    if not is_length_tuple(p, ell):
        raise ValueError(f"{ell} is not a valid length tuple for {p}")
    return ell


def is_juggling_pattern(p: Params, jug) -> bool:
    """True iff ``jug`` is a valid juggling pattern for the parameters ``p``."""
    if len(jug) != p.n:
        return False
    for ji in jug:
        if len(ji) != p.kw or list(ji) != sorted(set(ji)):
            return False
        if any(not (1 <= x <= p.nw) for x in ji):
            return False
    for i in range(p.n):
        nxt = set(jug[(i + 1) % p.n])
        if any(x + 1 not in nxt for x in jug[i] if x != p.nw):
            return False
    return True


def check_juggling_pattern(p: Params, jug) -> JugglingPattern:
    jug = tuple(tuple(ji) for ji in jug)
    if not is_juggling_pattern(p, jug):
        raise ValueError(f"{jug} is not a valid juggling pattern for {p}")
    return jug


def is_affine_window(window) -> bool:
    """True iff the window values are pairwise distinct mod n and n >= 1."""
    n = len(window)
    return n >= 1 and len({v % n for v in window}) == n


def shift_sum(window: Window) -> int:
    """Sum of f(i) - i over a window; always a multiple of n for valid input."""
    return sum(v - i for i, v in enumerate(window, start=1))


def is_bounded_window(p: Params, window) -> bool:
    """True iff ``window`` lies in the bounded set for the parameters ``p``."""
    if len(window) != p.n or not is_affine_window(window):
        return False
    if shift_sum(window) != p.total:
        return False
    return all(i <= v <= i + p.nw for i, v in enumerate(window, start=1))


def check_bounded_window(p: Params, window) -> Window:
    window = tuple(window)
    if not is_bounded_window(p, window):
        raise ValueError(f"{window} is not a bounded affine permutation for {p}")
    return window


def window_value(window: Window, i: int) -> int:
    """Value f(i) for any integer i of the periodic extension of a window.

    >>> window_value((5, 2), 3)
    7
    >>> window_value((5, 2), 0)
    0
    """
    n = len(window)
    j = (i - 1) % n
    return window[j] + (i - 1 - j)


# ---------------------------------------------------------------------------
# enumeration


def enumerate_length_tuples(p: Params, max_size: int = DEFAULT_MAX_SIZE) -> list[LengthTuple]:
    """All length tuples for ``p`` in lexicographic order.

    >>> enumerate_length_tuples(Params(1, 2, 2))
    [(0, 4), (1, 3), (2, 2), (3, 1), (4, 0)]
    """
    p.check_guard(max_size)
    return _enumerate_from_prefix(p, ())


def _enumerate_from_prefix(p: Params, prefix: tuple[int, ...]) -> list[LengthTuple]:
    """Length tuples extending ``prefix``; used to partition enumeration work."""
    n, nw, total = p.n, p.nw, p.total
    out: list[LengthTuple] = []
    used0 = 0
    s0 = 0
    for j, l in enumerate(prefix, start=1):
        bit = 1 << ((j + l) % n)
        if used0 & bit:
            return out
        used0 |= bit
        s0 += l

    def rec(j: int, acc: list[int], s: int, used: int) -> None:
        if j > n:
            if s == total:
                out.append(tuple(acc))
            return
        remaining = n - j
        lo = max(0, total - s - remaining * nw)
        hi = min(nw, total - s)
        for l in range(lo, hi + 1):
            bit = 1 << ((j + l) % n)
            if used & bit:
                continue
            acc.append(l)
            rec(j + 1, acc, s + l, used | bit)
            acc.pop()

    if len(prefix) <= n and s0 <= total:
        rec(len(prefix) + 1, list(prefix), s0, used0)
    return out


# ---------------------------------------------------------------------------
# bijections


def jug_to_lengths(p: Params, jug) -> LengthTuple:
    """Length tuple of a juggling pattern.

    A pattern decomposes into maximal diagonal chains (index j at one vertex,
    j+1 at the next); the shift rule forces every chain to end at the top
    index n*omega, so chains correspond to the vertices whose set contains
    n*omega.  The chain entered from position j (the one starting at vertex
    j+1) is the indecomposable summand recorded by l_j, and its length is
    ``n*omega + 1 - x`` where x is the unique element of ``J_{j+1}`` not
    produced by shifting ``J_j``.  For a single vertex this is the classical
    throw-height rule of juggling patterns.

    >>> jug_to_lengths(Params(1, 2, 2), ((3, 4), (3, 4)))
    (2, 2)
    >>> jug_to_lengths(Params(1, 2, 2), ((2, 4), (1, 3)))
    (4, 0)
    >>> jug_to_lengths(Params(1, 3, 1), ((3,), (3,), (2,)))
    (1, 2, 0)
    """
    jug = check_juggling_pattern(p, jug)
    ell = []
    for j in range(1, p.n + 1):
        here, nxt = jug[j - 1], jug[j % p.n]
        if p.nw not in here:
            ell.append(0)
            continue
        new = set(nxt) - {x + 1 for x in here if x != p.nw}
        if len(new) != 1:
            raise ValueError(f"pattern {jug} has no unique new element after position {j}")
        ell.append(p.nw + 1 - new.pop())
    return check_length_tuple(p, tuple(ell))


def lengths_to_jug(p: Params, ell) -> JugglingPattern:
    """Juggling pattern of a length tuple (inverse of :func:`jug_to_lengths`).

    Each nonzero length l_j lays down one chain: index ``n*omega - l_j + s``
    at vertex ``j + s`` for s = 1..l_j, ending at the top index n*omega.

    >>> lengths_to_jug(Params(1, 2, 2), (3, 1))
    ((3, 4), (2, 4))
    >>> lengths_to_jug(Params(1, 2, 2), (0, 4))
    ((1, 3), (2, 4))
    >>> lengths_to_jug(Params(1, 3, 1), (1, 2, 0))
    ((3,), (3,), (2,))
    """
    ell = check_length_tuple(p, ell)
    sets: list[set[int]] = [set() for _ in range(p.n)]
    for j in range(1, p.n + 1):
        lj = ell[j - 1]
        for s in range(1, lj + 1):
            sets[(j + s - 1) % p.n].add(p.nw - lj + s)
    jug = tuple(tuple(sorted(si)) for si in sets)
    return check_juggling_pattern(p, jug)


def lengths_to_perm(p: Params, ell) -> Window:
    """Bounded window with f(j) = j + l_j.

    >>> lengths_to_perm(Params(1, 2, 2), (4, 0))
    (5, 2)
    """
    ell = check_length_tuple(p, ell)
    return tuple(j + l for j, l in enumerate(ell, start=1))


def perm_to_lengths(p: Params, window) -> LengthTuple:
    """Length tuple (f(j) - j) of a bounded window; rejects unbounded input.

    >>> perm_to_lengths(Params(1, 2, 2), (5, 2))
    (4, 0)
    """
    window = check_bounded_window(p, window)
    return tuple(v - j for j, v in enumerate(window, start=1))


# ---------------------------------------------------------------------------
# length function


def perm_length(window: Window) -> int:
    """Number of inversions (i, j) with i in [n], j > i and f(i) > f(j).

    Inversions are counted per residue class of j: for fixed classes i and c
    the positions j = c + m*n contribute exactly the integers m with
    ``c + m*n > i`` and ``f(c) + m*n < f(i)``, a finite range because the
    values in each class increase by n per step.

    >>> perm_length((1, 2))
    0
    >>> perm_length((5, 2))
    2
    >>> perm_length((4, 3))
    1
    """
    if not is_affine_window(window):
        raise ValueError(f"{window} is not an affine permutation window")
    n = len(window)
    count = 0
    for i in range(1, n + 1):
        fi = window[i - 1]
        for c in range(1, n + 1):
            if c == i:
                continue
            fc = window[c - 1]
            m_lo = (i - c) // n + 1
            m_hi = (fi - fc - 1) // n
            if m_hi >= m_lo:
                count += m_hi - m_lo + 1
    return count


# ---------------------------------------------------------------------------
# irreducible components


def component_fixed_point(p: Params, subset) -> JugglingPattern:
    """Pattern of the fixed point attached to a k-subset of the vertex set.

    The pattern is generated by placing basis index 1 at every vertex in
    ``subset`` and closing under the shift index j at vertex i -> index j+1 at
    vertex i+1, discarding indices above n*omega.

    >>> component_fixed_point(Params(1, 2, 2), (2,))
    ((2, 4), (1, 3))
    """
    subset = sorted(set(subset))
    if len(subset) != p.k or any(not (1 <= i <= p.n) for i in subset):
        raise ValueError(f"{subset} is not a k-subset of [1, {p.n}] for {p}")
    sets: list[set[int]] = [set() for _ in range(p.n)]
    for i in subset:
        vertex, index = i, 1
        while index <= p.nw:
            sets[(vertex - 1) % p.n].add(index)
            vertex += 1
            index += 1
    jug = tuple(tuple(sorted(si)) for si in sets)
    return check_juggling_pattern(p, jug)


def component_subsets(p: Params):
    """All k-subsets of [1, n] in lexicographic order."""
    return [tuple(c) for c in itertools.combinations(range(1, p.n + 1), p.k)]
