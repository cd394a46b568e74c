"""Exact M(n, t) by maximum independent set search, and the LP bound chain.

Graphs are stored as one int bitset of neighbours per vertex; vertex ``v``
is the ``n``-bit word with value ``v``.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .bounds import frac_cover_bound
from .errors import ScaleLimitError
from .grain_model import BitWord, image_ints
from .lp import max_packing, min_covering

GRAPH_LIMIT = 16
LP_LIMIT = 10
DEFAULT_BUDGET = 5_000_000


@dataclass
class ConfusabilityGraph:
    n: int
    t: int
    adj: list[int]

    @property
    def order(self) -> int:
        return len(self.adj)

    def degree(self, v: int) -> int:
        return bin(self.adj[v]).count("1")

    def neighbors(self, v: int) -> list[int]:
        return _bits(self.adj[v])

    def has_edge(self, a: int, b: int) -> bool:
        return bool((self.adj[a] >> b) & 1)

    def edges(self):
        for a, nb in enumerate(self.adj):
            for b in _bits(nb >> (a + 1)):
                yield a, a + 1 + b

    @property
    def num_edges(self) -> int:
        return sum(bin(nb).count("1") for nb in self.adj) // 2


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _check_scale(n: int, limit: int, unsafe: bool) -> None:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n > limit and not unsafe:
        raise ScaleLimitError("n", n, limit)


def build_confusability_graph(n: int, t: int, *, unsafe: bool = False) -> ConfusabilityGraph:
    """Edges join distinct words whose spheres share a word.

    Built from an inverted index: every word y collects the sources x with y
    in sphere(x), and each such list becomes a clique.
    """
    _check_scale(n, GRAPH_LIMIT, unsafe)
    size = 1 << n
    sources: list[list[int]] = [[] for _ in range(size)]
    for x in range(size):
        for y in image_ints(x, n, t):
            sources[y].append(x)
    adj = [0] * size
    for group in sources:
        if len(group) < 2:
            continue
        mask = 0
        for x in group:
            mask |= 1 << x
        for x in group:
            adj[x] |= mask
    for x in range(size):
        adj[x] &= ~(1 << x)
    return ConfusabilityGraph(n, t, adj)


def _reverse_bits(mask: int, width: int) -> int:
    return int(format(mask, f"0{width}b")[::-1], 2) if mask else 0


def halves_split(g: ConfusabilityGraph) -> bool:
    """True when no edge joins words with different first bits and complement is an automorphism."""
    size = g.order
    half = size >> 1
    low = (1 << half) - 1
    for v in range(half):
        if g.adj[v] & ~low:
            return False
        # complement sends word v to size-1-v, i.e. reverses the bitset
        if _reverse_bits(g.adj[v], size) != g.adj[size - 1 - v]:
            return False
    return True


def connected_components(adj: list[int], vertices: Optional[Iterable[int]] = None) -> list[list[int]]:
    todo = set(range(len(adj))) if vertices is None else set(vertices)
    allowed = 0
    for v in todo:
        allowed |= 1 << v
    comps = []
    while todo:
        start = min(todo)
        seen = 1 << start
        frontier = seen
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= adj[v]
            frontier = nxt & allowed & ~seen
            seen |= frontier
        comp = _bits(seen)
        todo.difference_update(comp)
        comps.append(comp)
    return comps


class _OutOfBudget(Exception):
    pass


class _MisSearch:
    """Branch and bound for a maximum independent set with a clique-cover bound.

    Vertices are relabelled so that the highest-priority vertex, ordered by
    (degree descending, word value ascending), carries the highest local
    index.  The greedy cover colours from low indices up, so the branching
    loop, which walks the cover backwards, tries high-priority vertices first.
    """

    def __init__(self, adj: list[int], vertices: list[int], budget: int):
        deg = {v: bin(adj[v]).count("1") for v in vertices}
        priority = sorted(vertices, key=lambda v: (-deg[v], v))
        self.label = priority[::-1]
        local = {v: i for i, v in enumerate(self.label)}
        self.nbr = []
        for v in self.label:
            m = 0
            for u in _bits(adj[v]):
                i = local.get(u)
                if i is not None:
                    m |= 1 << i
            self.nbr.append(m)
        self.budget = budget
        self.nodes = 0
        self.best: list[int] = self._greedy()

    def _greedy(self) -> list[int]:
        # repeatedly take a minimum-degree vertex of what is left
        P = (1 << len(self.nbr)) - 1
        chosen = []
        while P:
            v = min(_bits(P), key=lambda i: (bin(self.nbr[i] & P).count("1"), self.label[i]))
            chosen.append(v)
            P &= ~self.nbr[v] & ~(1 << v)
        return chosen

    def _cover(self, P: int) -> tuple[list[int], list[int]]:
        order, bound = [], []
        k = 0
        U = P
        nbr = self.nbr
        while U:
            k += 1
            Q = U
            while Q:
                low = Q & -Q
                v = low.bit_length() - 1
                U ^= low
                Q &= nbr[v]
                order.append(v)
                bound.append(k)
        return order, bound

    def _expand(self, P: int, chosen: list[int]) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise _OutOfBudget
        order, bound = self._cover(P)
        for idx in range(len(order) - 1, -1, -1):
            if len(chosen) + bound[idx] <= len(self.best):
                return
            v = order[idx]
            chosen.append(v)
            rest = P & ~self.nbr[v] & ~(1 << v)
            if rest:
                self._expand(rest, chosen)
            elif len(chosen) > len(self.best):
                self.best = list(chosen)
            chosen.pop()
            P &= ~(1 << v)

    def run(self) -> bool:
        limit = sys.getrecursionlimit()
        sys.setrecursionlimit(max(limit, 4 * len(self.nbr) + 100))
        try:
            self._expand((1 << len(self.nbr)) - 1, [])
            return True
        except _OutOfBudget:
            return False
        finally:
            sys.setrecursionlimit(limit)

    def solution(self) -> list[int]:
        return sorted(self.label[i] for i in self.best)


@dataclass
class CodeSearchResult:
    n: int
    t: int
    size: int
    code: list[BitWord]
    optimal: bool
    nodes: int = 0

    def witness_text(self) -> str:
        return "".join(f"{w}\n" for w in self.code)


def maximum_independent_set(adj: list[int], vertices: list[int], budget: int) -> tuple[list[int], bool, int]:
    """Exact MIS of the induced subgraph, component by component."""
    code: list[int] = []
    optimal = True
    nodes = 0
    for comp in connected_components(adj, vertices):
        if len(comp) == 1:
            code.extend(comp)
            continue
        search = _MisSearch(adj, comp, max(budget - nodes, 0))
        optimal &= search.run()
        nodes += search.nodes
        code.extend(search.solution())
    return sorted(code), optimal, nodes


def max_code(n: int, t: int, budget: int = DEFAULT_BUDGET, *, unsafe: bool = False) -> CodeSearchResult:
    """Largest t-grain-correcting code of length n (exact unless the budget runs out)."""
    g = build_confusability_graph(n, t, unsafe=unsafe)
    size = g.order
    if halves_split(g):
        half, optimal, nodes = maximum_independent_set(g.adj, list(range(size >> 1)), budget)
        words = half + [size - 1 - v for v in half]
    else:
        words, optimal, nodes = maximum_independent_set(g.adj, list(range(size)), budget)
    code = [BitWord(n, v) for v in sorted(words)]
    if not code_is_valid(code, t):
        raise AssertionError(f"search returned a confusable code for n={n}, t={t}")
    return CodeSearchResult(n, t, len(code), code, optimal, nodes)


def code_is_valid(code: list[BitWord], t: int) -> bool:
    """Pairwise non-confusability checked by sphere intersection, not via the graph."""
    seen: dict[int, int] = {}
    for w in code:
        for y in image_ints(w.value, w.n, t):
            if seen.setdefault(y, w.value) != w.value:
                return False
    return True


def write_witness(result: CodeSearchResult, path) -> None:
    with open(path, "w") as fh:
        fh.write(result.witness_text())


def read_witness(path) -> list[BitWord]:
    with open(path) as fh:
        return [BitWord.from_str(line) for line in fh if line.strip()]


# -- LP chain -------------------------------------------------------------------

@dataclass
class LpChainResult:
    n: int
    t: int
    nu: int
    nu_f: Fraction
    tau_f: Fraction
    w_value: Fraction
    nu_optimal: bool = True
    packing: Optional[list[Fraction]] = None
    covering: Optional[list[Fraction]] = None

    @property
    def chain_holds(self) -> bool:
        return self.nu <= self.nu_f == self.tau_f <= self.w_value


def _hyperedge_components(edges: list[list[int]], num_vertices: int) -> list[tuple[list[int], list[int]]]:
    """Split the hypergraph into (vertices, hyperedge indices) blocks sharing no vertex."""
    parent = list(range(num_vertices))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for e in edges:
        root = find(e[0])
        for v in e[1:]:
            r = find(v)
            if r != root:
                parent[r] = root
    blocks: dict[int, tuple[list[int], list[int]]] = {}
    for v in range(num_vertices):
        blocks.setdefault(find(v), ([], []))[0].append(v)
    for j, e in enumerate(edges):
        blocks[find(e[0])][1].append(j)
    return [blocks[k] for k in sorted(blocks)]


def lp_fractional_chain(n: int, t: int, *, budget: int = DEFAULT_BUDGET, unsafe: bool = False) -> LpChainResult:
    """nu <= nu_f = tau_f <= |w_t| for the sphere hypergraph, in exact rationals.

    The fractional matching and covering LPs are solved separately (primal
    simplex and dual simplex) on each block of the hypergraph; a block that is
    the complement of one already solved reuses its mirrored solution.
    """
    _check_scale(n, LP_LIMIT, unsafe)
    size = 1 << n
    edges = [image_ints(x, n, t) for x in range(size)]
    z = [Fraction(0)] * size
    w = [Fraction(0)] * size
    solved: set[frozenset] = set()
    for verts, eidx in _hyperedge_components(edges, size):
        mirror = frozenset(size - 1 - v for v in verts)
        if mirror in solved:
            # complementation maps spheres to spheres; reuse the mirror block
            for j in eidx:
                z[j] = z[size - 1 - j]
            for v in verts:
                w[v] = w[size - 1 - v]
            continue
        solved.add(frozenset(verts))
        local = {v: i for i, v in enumerate(verts)}
        cols = [[local[v] for v in edges[j]] for j in eidx]
        pack = max_packing(cols, len(verts))
        cover = min_covering(cols, len(verts))
        for j, val in zip(eidx, pack.x):
            z[j] = val
        for v, val in zip(verts, cover.x):
            w[v] = val
    nu_f = sum(z, Fraction(0))
    tau_f = sum(w, Fraction(0))
    _check_feasible(edges, z, w)
    code = max_code(n, t, budget)
    return LpChainResult(
        n=n,
        t=t,
        nu=code.size,
        nu_f=nu_f,
        tau_f=tau_f,
        w_value=frac_cover_bound(n, t).exact,
        nu_optimal=code.optimal,
        packing=z,
        covering=w,
    )


def _check_feasible(edges: list[list[int]], z: list[Fraction], w: list[Fraction]) -> None:
    load = [Fraction(0)] * len(w)
    for j, e in enumerate(edges):
        if z[j] < 0:
            raise ArithmeticError("negative packing weight")
        for v in e:
            load[v] += z[j]
    if any(l > 1 for l in load):
        raise ArithmeticError("packing solution violates a vertex constraint")
    if any(x < 0 for x in w) or any(sum((w[v] for v in e), Fraction(0)) < 1 for e in edges):
        raise ArithmeticError("covering solution misses a hyperedge")
