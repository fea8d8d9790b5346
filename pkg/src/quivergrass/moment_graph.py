"""Moment graph of the torus action: cut-and-paste moves, edges, characters.

Vertices are length tuples.  A move (i, j, r) cuts r boxes from position i and
pastes them at position j; it lands in the tuple set again exactly when ``0 <=
r <= min(l_i, n*omega - l_j)`` and either ``i + l_i - r == j + l_j (mod n)``
(the cut point aligns with the paste point, so the move swaps the two residue
classes ``j + l_j``; on windows this is multiplication by an affine
reflection) or ``r == 0 (mod n)`` (whole periods move, residues unchanged).
Aligned moves with ``r >= 1`` and ``l_i > l_j + r`` are exactly the
one-dimensional orbits and give the directed edges, labelled by the character
``eps_j - eps_i + (l_i - l_j - r) * delta``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .core import (
    DEFAULT_MAX_SIZE,
    LengthTuple,
    Params,
    check_length_tuple,
    enumerate_length_tuples,
)


class MoveError(ValueError):
    """A cut-and-paste move violated one of its feasibility conditions."""


@dataclass(frozen=True)
class Character:
    """Integer character c_1*eps_1 + ... + c_n*eps_n + d*delta of the torus."""

    eps: tuple[int, ...]
    delta: int

    def rotated(self, m: int) -> "Character":
        """Shift every eps index by m (cyclically); delta is fixed."""
        n = len(self.eps)
        return Character(tuple(self.eps[(i - m) % n] for i in range(n)), self.delta)

    def __str__(self) -> str:
        """Render like "e1-e2+3d", positive eps terms first."""
        terms = []
        by_sign = sorted(enumerate(self.eps, start=1), key=lambda ic: (ic[1] < 0, ic[0]))
        for i, c in by_sign:
            if c == 0:
                continue
            sign = "-" if c < 0 else ("+" if terms else "")
            mag = abs(c)
            terms.append(f"{sign}{'' if mag == 1 else mag}e{i}")
        if self.delta:
            sign = "-" if self.delta < 0 else ("+" if terms else "")
            mag = abs(self.delta)
            terms.append(f"{sign}{'' if mag == 1 else mag}d")
        return "".join(terms) or "0"


@dataclass(frozen=True)
class Edge:
    source: int
    target: int
    label: Character
    move: tuple[int, int, int]


@dataclass
class MomentGraph:
    params: Params
    vertices: list[LengthTuple]
    edges: list[Edge]

    def __post_init__(self):
        self.index = {v: i for i, v in enumerate(self.vertices)}
        self.out_edges: list[list[Edge]] = [[] for _ in self.vertices]
        for e in self.edges:
            self.out_edges[e.source].append(e)

    def out_degree(self, v: LengthTuple) -> int:
        return len(self.out_edges[self.index[v]])

    def edge_between(self, src: LengthTuple, tgt: LengthTuple) -> Edge | None:
        i, j = self.index[src], self.index[tgt]
        for e in self.out_edges[i]:
            if e.target == j:
                return e
        return None


def apply_move(p: Params, ell, i: int, j: int, r: int) -> LengthTuple:
    """Apply the cut-and-paste move (i, j, r) to a length tuple.

    >>> apply_move(Params(1, 2, 2), (4, 0), 1, 2, 3)
    (1, 3)
    >>> apply_move(Params(1, 2, 2), (3, 1), 1, 2, 1)
    (2, 2)
    """
    ell = check_length_tuple(p, ell)
    if not (1 <= i <= p.n and 1 <= j <= p.n and i != j):
        raise MoveError(f"positions must be distinct vertices in [1, {p.n}]: i={i}, j={j}")
    li, lj = ell[i - 1], ell[j - 1]
    if not (0 <= r <= min(li, p.nw - lj)):
        raise MoveError(
            f"r={r} outside feasible range [0, min(l_{i}, {p.nw} - l_{j})] = "
            f"[0, {min(li, p.nw - lj)}]"
        )
    if r % p.n != 0 and (i + li - r) % p.n != (j + lj) % p.n:
        raise MoveError(
            f"alignment failed: i + l_i - r = {i + li - r} != {j + lj} = j + l_j (mod {p.n}) "
            f"and r = {r} is not a multiple of n"
        )
    moved = list(ell)
    moved[i - 1] = li - r
    moved[j - 1] = lj + r
    return check_length_tuple(p, tuple(moved))


def move_label(p: Params, ell: LengthTuple, i: int, j: int, r: int) -> Character:
    """Character of the edge from ``ell`` along the move (i, j, r)."""
    eps = [0] * p.n
    eps[j - 1] += 1
    eps[i - 1] -= 1
    return Character(tuple(eps), ell[i - 1] - ell[j - 1] - r)


def build_graph(p: Params, max_size: int = DEFAULT_MAX_SIZE) -> MomentGraph:
    """Moment graph on all length tuples of ``p``.

    Edges are the feasible moves with r >= 1, i != j and ``l_i > l_j + r``;
    moves with r = 0 or i = j fix the tuple and are excluded.
    """
    vertices = enumerate_length_tuples(p, max_size)
    index = {v: i for i, v in enumerate(vertices)}
    edges = []
    for src_idx, ell in enumerate(vertices):
        for i in range(1, p.n + 1):
            li = ell[i - 1]
            for j in range(1, p.n + 1):
                if i == j:
                    continue
                lj = ell[j - 1]
                # aligned moves: r determined mod n, never 0 for distinct residues
                r0 = (i + li - j - lj) % p.n
                for r in range(r0 if r0 >= 1 else r0 + p.n, min(li, p.nw - lj) + 1, p.n):
                    if li <= lj + r:
                        continue
                    tgt = apply_move(p, ell, i, j, r)
                    edges.append(Edge(src_idx, index[tgt], move_label(p, ell, i, j, r), (i, j, r)))
    edges.sort(key=lambda e: (e.source, e.target))
    return MomentGraph(p, vertices, edges)


def rotate_tuple(m: int, ell: LengthTuple) -> LengthTuple:
    """Cyclic shift: position j of the result holds l_{j-m}.

    >>> rotate_tuple(1, (4, 0))
    (0, 4)
    """
    n = len(ell)
    return tuple(ell[(j - m) % n] for j in range(n))


@dataclass
class RotationReport:
    params: Params
    checked: int
    ok: bool
    violation: str | None = None


def check_rotation_equivariance(g: MomentGraph) -> RotationReport:
    """Verify that rotating a tuple by m maps edges to edges with rotated labels.

    For every edge ``ell -> f_{i,j,r}(ell)`` and every residue m, the edge
    ``m.ell -> f_{i+m,j+m,r}(m.ell)`` must exist with label equal to the
    original label with eps indices shifted by m.
    """
    p = g.params
    checked = 0
    for e in g.edges:
        src = g.vertices[e.source]
        i, j, r = e.move
        for m in range(p.n):
            rsrc = rotate_tuple(m, src)
            im, jm = (i + m - 1) % p.n + 1, (j + m - 1) % p.n + 1
            try:
                rtgt = apply_move(p, rsrc, im, jm, r)
            except MoveError as exc:
                return RotationReport(p, checked, False, f"move {(im, jm, r)} on {rsrc}: {exc}")
            found = g.edge_between(rsrc, rtgt)
            if found is None:
                return RotationReport(p, checked, False, f"missing edge {rsrc} -> {rtgt}")
            if found.label != e.label.rotated(m):
                return RotationReport(
                    p, checked, False,
                    f"edge {rsrc} -> {rtgt} labelled {found.label}, expected {e.label.rotated(m)}",
                )
            checked += 1
    return RotationReport(p, checked, True)


# ---------------------------------------------------------------------------
# export

GRAPH_SCHEMA = "quivergrass/moment-graph/1"


def graph_to_dot(g: MomentGraph) -> str:
    lines = ["digraph moment_graph {"]
    for v in g.vertices:
        name = "(" + ",".join(map(str, v)) + ")"
        lines.append(f'  "{name}";')
    for e in g.edges:
        s = "(" + ",".join(map(str, g.vertices[e.source])) + ")"
        t = "(" + ",".join(map(str, g.vertices[e.target])) + ")"
        lines.append(f'  "{s}" -> "{t}" [label="{e.label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_json(g: MomentGraph) -> str:
    doc = {
        "schema": GRAPH_SCHEMA,
        "k": g.params.k,
        "n": g.params.n,
        "omega": g.params.omega,
        "vertices": [list(v) for v in g.vertices],
        "edges": [
            {
                "source": e.source,
                "target": e.target,
                "move": list(e.move),
                "label": {"eps": list(e.label.eps), "delta": e.label.delta},
            }
            for e in g.edges
        ],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def graph_from_json(text: str) -> MomentGraph:
    doc = json.loads(text)
    if doc.get("schema") != GRAPH_SCHEMA:
        raise ValueError(f"unexpected schema {doc.get('schema')!r}")
    p = Params(doc["k"], doc["n"], doc["omega"])
    vertices = [tuple(v) for v in doc["vertices"]]
    edges = [
        Edge(
            e["source"],
            e["target"],
            Character(tuple(e["label"]["eps"]), e["label"]["delta"]),
            tuple(e["move"]),
        )
        for e in doc["edges"]
    ]
    return MomentGraph(p, vertices, edges)
