"""Partial orders on cells: componentwise pattern order, moment-graph
reachability, and Bruhat order on bounded affine permutations.

Bruhat comparison is implemented by downward cover chains.  A cover below a
window f is f composed with an affine transposition of positions a < b (swap
of the values there, repeated n-periodically) that drops the inversion count
by exactly one.  Every inversion (a, b) of f satisfies ``b - a < max_i(f(i)-i)
- min_i(f(i)-i)``, so sweeping transpositions up to that spread and validating
each candidate with an explicit length computation finds all covers.  This is
valid on lower order ideals, which is the only place Bruhat order is needed:
the bounded windows form a lower ideal and intervals are generated downward.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import (
    DEFAULT_MAX_SIZE,
    JugglingPattern,
    Params,
    Window,
    check_juggling_pattern,
    enumerate_length_tuples,
    is_affine_window,
    is_bounded_window,
    lengths_to_jug,
    lengths_to_perm,
    perm_length,
    window_value,
)
from .moment_graph import MomentGraph, build_graph

#: Above this vertex count, order relations are compared by the counting
#: strategy instead of materialized pair sets.
DIRECT_LIMIT = 2000


def jug_leq(a: JugglingPattern, b: JugglingPattern) -> bool:
    """True iff the pattern ``a`` is below ``b``: entrywise b <= a.

    Each set is sorted increasingly; ``a <= b`` holds when the r-th element of
    b's i-th set is <= the r-th element of a's i-th set for all i, r (larger
    cells have smaller indices).

    >>> jug_leq(((3, 4), (3, 4)), ((2, 4), (3, 4)))
    True
    >>> jug_leq(((2, 4), (1, 3)), ((1, 3), (2, 4)))
    False
    """
    if len(a) != len(b) or any(len(x) != len(y) for x, y in zip(a, b)):
        raise ValueError("patterns have mismatched parameters")
    return all(y <= x for sa, sb in zip(a, b) for x, y in zip(sa, sb))


# ---------------------------------------------------------------------------
# Bruhat covers


def _swap_positions(window: Window, a: int, b: int) -> Window:
    """Right-multiply by the affine transposition of positions a < b."""
    n = len(window)
    w = list(window)
    fa, fb = window_value(window, a), window_value(window, b)
    rb = (b - 1) % n + 1
    w[a - 1] = fb
    w[rb - 1] = fa - (b - rb)
    return tuple(w)


def affine_covers_below(window: Window) -> list[Window]:
    """All Bruhat covers below an affine permutation window.

    Sweeps affine transpositions of positions (a, b) with a in [1, n],
    a < b <= a + spread and validates each swapped window by an explicit
    length computation.

    >>> affine_covers_below((5, 2))
    [(2, 5), (4, 3)]
    >>> affine_covers_below((1, 2))
    []
    """
    if not is_affine_window(window):
        raise ValueError(f"{window} is not an affine permutation window")
    n = len(window)
    length = perm_length(window)
    shifts = [v - i for i, v in enumerate(window, start=1)]
    spread = max(shifts) - min(shifts)
    covers = set()
    for a in range(1, n + 1):
        fa = window[a - 1]
        for b in range(a + 1, a + spread + 1):
            if (b - a) % n == 0:
                continue
            if fa <= window_value(window, b):
                continue
            g = _swap_positions(window, a, b)
            if perm_length(g) == length - 1:
                covers.add(g)
    return sorted(covers)


def bruhat_covers_below(p: Params, window: Window) -> list[Window]:
    """Covers below a bounded window; each returned window verified bounded."""
    if not is_bounded_window(p, window):
        raise ValueError(f"{window} is not a bounded affine permutation for {p}")
    covers = affine_covers_below(window)
    for g in covers:
        if not is_bounded_window(p, g):
            raise AssertionError(
                f"lower-ideal property violated: cover {g} of {window} is unbounded"
            )
    return covers


def bruhat_lower_interval(window: Window) -> set[Window]:
    """Downward Bruhat closure of a window under cover chains.

    >>> sorted(bruhat_lower_interval((-1, 4)))
    [(-1, 4), (0, 3), (1, 2), (2, 1)]
    """
    seen = {tuple(window)}
    stack = [tuple(window)]
    while stack:
        w = stack.pop()
        for g in affine_covers_below(w):
            if g not in seen:
                seen.add(g)
                stack.append(g)
    return seen


# ---------------------------------------------------------------------------
# Poincare polynomial


def poincare_polynomial(p: Params, max_size: int = DEFAULT_MAX_SIZE) -> list[int]:
    """Coefficient list of the cell-count polynomial: coeff[d] cells of dim d.

    >>> poincare_polynomial(Params(1, 2, 2))
    [1, 2, 2]
    """
    lengths = [perm_length(lengths_to_perm(p, ell)) for ell in enumerate_length_tuples(p, max_size)]
    coeffs = [0] * (max(lengths) + 1)
    for l in lengths:
        coeffs[l] += 1
    return coeffs


def poincare_str(coeffs: list[int]) -> str:
    """Render a coefficient list as ``1 + 2q + 2q^2``."""
    terms = []
    for d, c in enumerate(coeffs):
        if c == 0:
            continue
        if d == 0:
            terms.append(str(c))
        else:
            q = "q" if d == 1 else f"q^{d}"
            terms.append(q if c == 1 else f"{c}{q}")
    return " + ".join(terms) or "0"


# ---------------------------------------------------------------------------
# cell closures


def cell_lower_set(p: Params, jug: JugglingPattern) -> set[JugglingPattern]:
    """All patterns below ``jug``, i.e. the fixed points in its cell closure."""
    jug = check_juggling_pattern(p, jug)
    out = set()
    for ell in enumerate_length_tuples(p):
        other = lengths_to_jug(p, ell)
        if jug_leq(other, jug):
            out.add(other)
    return out


# ---------------------------------------------------------------------------
# order equivalence


@dataclass
class OrderReport:
    params: Params
    vertex_count: int
    relation_size: int
    method: str
    ok: bool
    violation: str | None = None
    sizes: dict = field(default_factory=dict)

    def __str__(self) -> str:
        status = "ok" if self.ok else f"FAIL ({self.violation})"
        return (
            f"order equivalence {self.params.k},{self.params.n},{self.params.omega}: "
            f"{status}; {self.vertex_count} vertices, {self.relation_size} related pairs "
            f"[{self.method}]"
        )


def _pattern_matrix(patterns: list[JugglingPattern]) -> np.ndarray:
    return np.array([[x for s in jug for x in s] for jug in patterns], dtype=np.int16)


def _closure_sizes(num_vertices: int, pairs: list[tuple[int, int]], order_key) -> list[int]:
    """Reachability bitsets of the DAG given by ``pairs`` (src -> tgt).

    ``order_key[v]`` must strictly decrease along edges (here: the length),
    so processing vertices by increasing key is a reverse topological order.
    Returns the reach bitset of each vertex (self included).
    """
    succs: list[list[int]] = [[] for _ in range(num_vertices)]
    for s, t in pairs:
        if not order_key[t] < order_key[s]:
            raise ValueError(f"relation pair {s} -> {t} does not decrease the grading")
        succs[s].append(t)
    reach = [0] * num_vertices
    for v in sorted(range(num_vertices), key=lambda v: order_key[v]):
        r = 1 << v
        for t in succs[v]:
            r |= reach[t]
        reach[v] = r
    return reach


def _relation_pairs_direct(pat_mat: np.ndarray) -> set[tuple[int, int]]:
    """All pairs (u, v) with vertex v below vertex u in the pattern order."""
    nv = pat_mat.shape[0]
    pairs = set()
    for u in range(nv):
        below = (pat_mat[u] <= pat_mat).all(axis=1)
        pairs.update((u, v) for v in np.flatnonzero(below))
    return pairs


def _count_pattern_relation(pat_mat: np.ndarray, chunk: int = 64) -> int:
    """Number of pairs (u, v) with v below u, counted without materializing."""
    nv = pat_mat.shape[0]
    total = 0
    for start in range(0, nv, chunk):
        block = pat_mat[start : start + chunk]
        below = (block[:, None, :] <= pat_mat[None, :, :]).all(axis=2)
        total += int(below.sum())
    return total


def verify_order_equivalence(
    p: Params,
    max_size: int = DEFAULT_MAX_SIZE,
    graph: MomentGraph | None = None,
    covers: dict | None = None,
) -> OrderReport:
    """Check that the three partial orders agree as relations.

    The componentwise pattern order, the reachability order of the moment
    graph, and the Bruhat order restricted to the bounded windows are
    transported to vertex indices through the bijections and compared as sets
    of ordered pairs.  Small instances are compared directly; larger ones use
    an exact two-step argument: every moment-graph edge and every Bruhat cover
    is checked to be a pattern-order relation (so both closures are contained
    in the pattern order), and the three relation cardinalities are compared.
    """
    g = graph if graph is not None else build_graph(p, max_size)
    vertices = g.vertices
    nv = len(vertices)
    patterns = [lengths_to_jug(p, ell) for ell in vertices]
    windows = [lengths_to_perm(p, ell) for ell in vertices]
    lengths = [perm_length(w) for w in windows]
    win_index = {w: i for i, w in enumerate(windows)}
    pat_mat = _pattern_matrix(patterns)

    edge_pairs = [(e.source, e.target) for e in g.edges]
    cover_pairs = []
    for u, w in enumerate(windows):
        below = covers[w] if covers is not None else bruhat_covers_below(p, w)
        for gw in below:
            cover_pairs.append((u, win_index[gw]))

    for name, pairs in (("moment-graph edge", edge_pairs), ("Bruhat cover", cover_pairs)):
        if pairs:
            src = np.array([s for s, _ in pairs])
            tgt = np.array([t for _, t in pairs])
            bad = ~(pat_mat[src] <= pat_mat[tgt]).all(axis=1)
            if bad.any():
                b = int(np.flatnonzero(bad)[0])
                return OrderReport(
                    p, nv, 0, "inclusion", False,
                    f"{name} {vertices[pairs[b][0]]} -> {vertices[pairs[b][1]]} "
                    f"is not a pattern-order relation",
                )

    if nv <= DIRECT_LIMIT:
        rel_j = _relation_pairs_direct(pat_mat)
        reach_c = _closure_sizes(nv, edge_pairs, lengths)
        rel_c = {(u, v) for u in range(nv) for v in _bits(reach_c[u])}
        reach_b = _closure_sizes(nv, cover_pairs, lengths)
        rel_b = {(u, v) for u in range(nv) for v in _bits(reach_b[u])}
        sizes = {"pattern": len(rel_j), "moment": len(rel_c), "bruhat": len(rel_b)}
        if rel_j == rel_c == rel_b:
            return OrderReport(p, nv, len(rel_j), "direct", True, sizes=sizes)
        for name, rel in (("moment", rel_c), ("bruhat", rel_b)):
            diff = rel_j.symmetric_difference(rel)
            if diff:
                u, v = sorted(diff)[0]
                return OrderReport(
                    p, nv, len(rel_j), "direct", False,
                    f"pair {vertices[u]} >= {vertices[v]}: pattern vs {name} orders disagree",
                    sizes=sizes,
                )

    count_j = _count_pattern_relation(pat_mat)
    count_c = sum(r.bit_count() for r in _closure_sizes(nv, edge_pairs, lengths))
    count_b = sum(r.bit_count() for r in _closure_sizes(nv, cover_pairs, lengths))
    sizes = {"pattern": count_j, "moment": count_c, "bruhat": count_b}
    if count_j == count_c == count_b:
        return OrderReport(p, nv, count_j, "counted", True, sizes=sizes)
    return OrderReport(
        p, nv, count_j, "counted", False,
        f"relation sizes differ: pattern {count_j}, moment {count_c}, bruhat {count_b}",
        sizes=sizes,
    )


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low
