"""Shared per-parameter-triple computations, cached for the whole session."""

from functools import lru_cache, cached_property

from quivergrass.core import (
    Params,
    enumerate_length_tuples,
    lengths_to_jug,
    lengths_to_perm,
    perm_length,
)
from quivergrass.moment_graph import build_graph
from quivergrass.order import bruhat_covers_below


def guarded_triples(limit: int):
    """All (k, n, omega) with n*omega <= limit, ordered by size."""
    out = []
    for n in range(1, limit + 1):
        for omega in range(1, limit // n + 1):
            for k in range(1, n + 1):
                out.append((k, n, omega))
    out.sort(key=lambda t: (t[1] * t[2], t))
    return out


class Workspace:
    """Lazily computed artifacts of one parameter triple."""

    def __init__(self, k: int, n: int, omega: int):
        self.p = Params(k, n, omega)

    @cached_property
    def tuples(self):
        return enumerate_length_tuples(self.p, max_size=self.p.nw)

    @cached_property
    def patterns(self):
        return [lengths_to_jug(self.p, ell) for ell in self.tuples]

    @cached_property
    def windows(self):
        return [lengths_to_perm(self.p, ell) for ell in self.tuples]

    @cached_property
    def lengths(self):
        return [perm_length(w) for w in self.windows]

    @cached_property
    def graph(self):
        return build_graph(self.p, max_size=self.p.nw)

    @cached_property
    def covers(self):
        return {w: bruhat_covers_below(self.p, w) for w in self.windows}


@lru_cache(maxsize=None)
def workspace(k: int, n: int, omega: int) -> Workspace:
    return Workspace(k, n, omega)
