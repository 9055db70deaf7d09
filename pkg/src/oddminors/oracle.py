"""Exact odd clique minor search on small graphs by exhaustive enumeration.

Ground truth for the constructions: `has_odd_clique_minor` decides whether a
certificate of a given order exists, and `odd_hadwiger` computes the exact
odd clique minor number by iterative deepening.

The search enumerates ordered families of pairwise-disjoint connected vertex
subsets in canonical order (each family listed once, subsets sorted by their
minimum vertex).  A subset's usable colorings are those whose bichromatic
internal edges span it connectedly, which is exactly the condition for being
proper on some spanning tree; the pairwise monochromatic-connector
requirement then becomes a small constraint problem over those colorings,
checked with one round of filtering during placement and solved by
backtracking at the leaves.  Everything is deterministic: no randomness, a
fixed enumeration order, and the first model found in that order is the one
reported.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional

from .constructions import odd_cycle_model, single_edge_model, singleton_model
from .errors import ParameterError, SearchTimeout
from .expansion import OddExpansionModel, Verdict, branch_tree, verify_odd_expansion
from .graphs import Graph, is_bipartite, norm_edge, spanning_tree


@dataclass(frozen=True)
class SearchBudget:
    """Limits for one exhaustive run: instance size cap, wall-clock seconds,
    and a search-node ceiling."""

    max_vertices: int = 16
    time_limit: float = 60.0
    node_limit: int = 100_000_000

    def __post_init__(self):
        if self.max_vertices <= 0 or self.time_limit <= 0 or self.node_limit <= 0:
            raise ParameterError("all budget fields must be positive")


@dataclass(frozen=True)
class ExactResult:
    """Outcome of odd_hadwiger.

    status: 'exact', 'lower_bound_only' (instance above the size cap), or
    'timeout' (budget exhausted; value is the best certified order found).
    refutation_order: for exhaustive results, the smallest order whose search
    came up empty; None when exactness is theorem-backed (bipartite or
    edgeless fast paths).
    """

    status: str
    value: int
    certificate: OddExpansionModel
    refutation_order: Optional[int] = None
    nodes: int = 0
    elapsed: float = 0.0


class _Budget:
    """Shared countdown across deepening rounds."""

    def __init__(self, budget: SearchBudget):
        self.node_limit = budget.node_limit
        self.deadline = time.monotonic() + budget.time_limit
        self.start = time.monotonic()
        self.nodes = 0

    def tick(self):
        self.nodes += 1
        if self.nodes > self.node_limit:
            raise SearchTimeout("node limit exhausted", nodes=self.nodes,
                                elapsed=time.monotonic() - self.start)
        if self.nodes % 256 == 0 and time.monotonic() > self.deadline:
            raise SearchTimeout("time limit exhausted", nodes=self.nodes,
                                elapsed=time.monotonic() - self.start)


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class _Search:
    def __init__(self, g: Graph, r: int, budget: _Budget):
        self.g = g
        self.r = r
        self.n = g.n
        self.budget = budget
        self.adj = [0] * g.n
        for u, v in g.edges:
            self.adj[u] |= 1 << v
            self.adj[v] |= 1 << u
        self.full = (1 << g.n) - 1
        # subset mask -> tuple of (ones, ones_nbrs, twos, twos_nbrs)
        self._coloring_cache: dict[int, tuple] = {}
        self._nbr_cache: dict[int, int] = {}

    # -- subset machinery -------------------------------------------------

    def _neighborhood(self, mask: int) -> int:
        out = self._nbr_cache.get(mask)
        if out is None:
            out = 0
            for v in _bits(mask):
                out |= self.adj[v]
            self._nbr_cache[mask] = out
        return out

    def _admissible_colorings(self, mask: int) -> tuple:
        """All usable colorings of a connected subset, as (ones, N(ones),
        twos, N(twos)) tuples; `ones` is the color-1 vertex set."""
        cached = self._coloring_cache.get(mask)
        if cached is not None:
            return cached
        verts = list(_bits(mask))
        k = len(verts)
        out = []
        for pick in range(1 << k):
            ones = 0
            for pos in range(k):
                if pick >> pos & 1:
                    ones |= 1 << verts[pos]
            if self._spans_bichromatic(mask, ones):
                out.append((ones, self._neighborhood(ones) if ones else 0,
                            mask ^ ones, self._neighborhood(mask ^ ones) if mask ^ ones else 0))
        result = tuple(out)
        self._coloring_cache[mask] = result
        return result

    def _spans_bichromatic(self, mask: int, ones: int) -> bool:
        twos = mask ^ ones
        start = mask & -mask
        reach = start
        frontier = start
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                vb = 1 << v
                nxt |= self.adj[v] & (twos if vb & ones else ones)
            nxt &= mask & ~reach
            reach |= nxt
            frontier = nxt
        return reach == mask

    def _connected_subsets(self, anchor: int, allowed: int, max_size: int):
        """Connected subsets of `allowed` containing `anchor`, each exactly
        once, in a fixed depth-first order."""
        adj = self.adj

        def rec(cur, ext, forb, size):
            yield cur
            if size >= max_size:
                return
            cand = ext & ~forb
            local_forb = forb
            while cand:
                vb = cand & -cand
                cand ^= vb
                local_forb |= vb
                v = vb.bit_length() - 1
                new_cur = cur | vb
                new_ext = (ext | (adj[v] & allowed)) & ~new_cur
                yield from rec(new_cur, new_ext, local_forb, size + 1)

        start = 1 << anchor
        yield from rec(start, adj[anchor] & allowed & ~start, 0, 1)

    # -- compatibility ----------------------------------------------------

    @staticmethod
    def _compatible(ca, cb) -> bool:
        # A monochromatic cross edge exists iff some color-1 vertex of one
        # side neighbors a color-1 vertex of the other, or likewise color-2.
        return bool(ca[1] & cb[0]) or bool(ca[3] & cb[2])

    def _filter_new(self, domains, new_dom):
        kept = tuple(c for c in new_dom
                     if all(any(self._compatible(ci, c) for ci in d) for d in domains))
        return kept

    def _filter_old(self, domains, new_dom):
        out = []
        for d in domains:
            kept = tuple(ci for ci in d if any(self._compatible(ci, c) for c in new_dom))
            if not kept:
                return None
            out.append(kept)
        return out

    # -- main recursion ----------------------------------------------------

    def run(self) -> Optional[OddExpansionModel]:
        if self.r > self.n:
            return None
        return self._place(0, [], [], self.full, -1)

    def _place(self, depth, masks, domains, unused, last_anchor):
        if depth == self.r:
            return self._solve_csp(masks, domains)
        remaining = self.r - depth
        anchors = unused & ~((1 << (last_anchor + 1)) - 1)
        for m in _bits(anchors):
            above_mask = ~((1 << (m + 1)) - 1)
            if (unused & above_mask).bit_count() < remaining - 1:
                break  # anchors are ascending; later ones only get worse
            allowed = unused & ~((1 << m) - 1)
            max_size = unused.bit_count() - (remaining - 1)
            for subset in self._connected_subsets(m, allowed, max_size):
                self.budget.tick()
                rest = unused & ~subset
                future = rest & above_mask
                if future.bit_count() < remaining - 1:
                    continue
                if remaining > 1:
                    # every future tree needs its own neighbor of each
                    # placed tree among the still-free high vertices
                    short = False
                    for placed in masks:
                        if (self._neighborhood(placed) & future).bit_count() < remaining - 1:
                            short = True
                            break
                    if short or (self._neighborhood(subset) & future).bit_count() < remaining - 1:
                        continue
                dom = self._admissible_colorings(subset)
                if not dom:
                    continue
                if depth == 0:
                    # fix the anchor's color to 1: global color swap symmetry
                    dom = tuple(c for c in dom if c[0] & (1 << m))
                dom = self._filter_new(domains, dom)
                if not dom:
                    continue
                filtered = self._filter_old(domains, dom)
                if filtered is None:
                    continue
                found = self._place(depth + 1, masks + [subset],
                                    filtered + [dom], rest, m)
                if found is not None:
                    return found
        return None

    def _solve_csp(self, masks, domains):
        r = self.r
        chosen = [None] * r

        def backtrack(k):
            if k == r:
                return True
            for c in domains[k]:
                if all(self._compatible(chosen[i], c) for i in range(k)):
                    chosen[k] = c
                    if backtrack(k + 1):
                        return True
            chosen[k] = None
            return False

        if not backtrack(0):
            return None
        return self._build_model(masks, chosen)

    def _build_model(self, masks, chosen):
        trees = []
        coloring = {}
        for mask, col in zip(masks, chosen):
            ones = col[0]
            verts = list(_bits(mask))
            for v in verts:
                coloring[v] = 1 if (1 << v) & ones else 2
            bi_edges = []
            for u in verts:
                for w in _bits(self.adj[u] & mask):
                    if u < w and coloring[u] != coloring[w]:
                        bi_edges.append((u, w))
            sub = Graph(self.n, frozenset(bi_edges))
            trees.append(branch_tree(verts, spanning_tree(sub, verts)))
        connectors = {}
        for i in range(len(trees)):
            for j in range(i + 1, len(trees)):
                best = None
                for u in trees[i].sorted_vertices:
                    cu = coloring[u]
                    for w in _bits(self.adj[u] & masks[j]):
                        if coloring[w] == cu:
                            e = norm_edge(u, w)
                            if best is None or e < best:
                                best = e
                connectors[(i, j)] = best
        return OddExpansionModel(tuple(trees), coloring, connectors)


def has_odd_clique_minor(g: Graph, r: int,
                         budget: Optional[SearchBudget] = None) -> Optional[OddExpansionModel]:
    """Search exhaustively for an order-r certificate.

    Returns a passing model, or None when the whole canonical enumeration
    was exhausted without one.  Raises SearchTimeout when the budget runs
    out first, which is a distinct outcome from absence.
    """
    if r < 1:
        raise ParameterError(f"order must be >= 1, got {r}")
    budget = budget or SearchBudget()
    if g.n > budget.max_vertices:
        raise ParameterError(
            f"instance has {g.n} vertices, above the budget cap {budget.max_vertices}; "
            f"pass an extended budget to search anyway")
    return _Search(g, r, _Budget(budget)).run()


def odd_hadwiger(g: Graph, budget: Optional[SearchBudget] = None) -> ExactResult:
    """Exact odd clique minor number with certificate.

    Fast paths: an edgeless graph has value 1 and a bipartite graph with an
    edge has value 2, both without search.  Otherwise the value is at least
    3 (odd cycle); instances within the size cap run iterative deepening
    until some order is exhaustively refuted.
    """
    if g.n < 1:
        raise ParameterError("graph has no vertices")
    budget = budget or SearchBudget()
    t0 = time.monotonic()
    if g.m == 0:
        return ExactResult("exact", 1, singleton_model(g), None, 0,
                           time.monotonic() - t0)
    if is_bipartite(g) is not None:
        return ExactResult("exact", 2, single_edge_model(g), None, 0,
                           time.monotonic() - t0)
    cycle_cert = odd_cycle_model(g)
    if g.n > budget.max_vertices:
        return ExactResult("lower_bound_only", 3, cycle_cert, None, 0,
                           time.monotonic() - t0)
    shared = _Budget(budget)
    best_value, best_cert = 3, cycle_cert
    r = 3
    while r <= g.n:
        try:
            model = _Search(g, r, shared).run()
        except SearchTimeout:
            return ExactResult("timeout", best_value, best_cert, None,
                               shared.nodes, time.monotonic() - t0)
        if model is None:
            return ExactResult("exact", best_value, best_cert, r,
                               shared.nodes, time.monotonic() - t0)
        best_value, best_cert = r, model
        r += 1
    return ExactResult("exact", best_value, best_cert, g.n + 1,
                       shared.nodes, time.monotonic() - t0)


def check_result(g: Graph, result: ExactResult) -> Verdict:
    """Re-verify the certificate carried by an ExactResult."""
    return verify_odd_expansion(g, result.certificate)
