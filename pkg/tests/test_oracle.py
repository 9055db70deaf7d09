import itertools
import random

import pytest

from oddminors import constructions as cons
from oddminors import graphs as gr
from oddminors.errors import ParameterError, SearchTimeout
from oddminors.expansion import verify_odd_expansion
from oddminors.oracle import (ExactResult, SearchBudget, _Budget, _Search,
                              has_odd_clique_minor, odd_hadwiger)


def brute_connected_subsets(g, anchor, allowed_mask, max_size):
    """All connected subsets by raw enumeration, for cross-checking."""
    allowed = [v for v in range(g.n) if allowed_mask >> v & 1]
    out = set()
    for k in range(1, max_size + 1):
        for combo in itertools.combinations(allowed, k):
            if anchor not in combo:
                continue
            seen = {combo[0]}
            stack = [combo[0]]
            while stack:
                u = stack.pop()
                for w in g.neighbors(u):
                    if w in combo and w not in seen:
                        seen.add(w)
                        stack.append(w)
            if len(seen) == k:
                out.add(sum(1 << v for v in combo))
    return out


@pytest.mark.parametrize("g", [gr.cycle(6), gr.complete(5), gr.star(4),
                               gr.product("direct", gr.complete(3), gr.complete(3))])
def test_connected_subset_enumeration_matches_brute_force(g):
    search = _Search(g, 1, _Budget(SearchBudget()))
    for anchor in (0, 1):
        allowed = (1 << g.n) - 1 - 0b10 if anchor == 0 else (1 << g.n) - 2
        if not allowed >> anchor & 1:
            allowed |= 1 << anchor
        got = list(search._connected_subsets(anchor, allowed, 4))
        assert len(got) == len(set(got))  # no duplicates
        assert set(got) == brute_connected_subsets(g, anchor, allowed, 4)


def brute_tree_proper_colorings(g, verts):
    """Colorings proper on at least one spanning tree, by enumerating all
    spanning trees explicitly."""
    verts = sorted(verts)
    internal = [e for e in g.edges if e[0] in verts and e[1] in verts]
    k = len(verts)
    spanning = []
    for combo in itertools.combinations(internal, k - 1):
        seen = {verts[0]}
        changed = True
        while changed:
            changed = False
            for u, v in combo:
                if (u in seen) != (v in seen):
                    seen |= {u, v}
                    changed = True
        if len(seen) == k:
            spanning.append(combo)
    ok = set()
    for bits in range(1 << k):
        coloring = {v: 1 if bits >> i & 1 else 2 for i, v in enumerate(verts)}
        for tree in spanning:
            if all(coloring[u] != coloring[v] for u, v in tree):
                ok.add(frozenset(v for v in verts if coloring[v] == 1))
                break
    return ok


@pytest.mark.parametrize("g,verts", [
    (gr.cycle(5), [0, 1, 2]),
    (gr.complete(4), [0, 1, 2, 3]),
    (gr.cycle(6), [0, 1, 2, 3]),
    (gr.product("cartesian", gr.complete(2), gr.complete(3)), [0, 1, 2, 3, 4, 5]),
    (gr.star(3), [0, 1, 2, 3]),
])
def test_admissible_colorings_match_spanning_tree_enumeration(g, verts):
    # The search treats a coloring as usable iff its bichromatic edges span
    # the subset connectedly; that must coincide with properness on some
    # explicitly enumerated spanning tree.
    search = _Search(g, 1, _Budget(SearchBudget()))
    mask = sum(1 << v for v in verts)
    got = {frozenset(v for v in verts if c[0] >> v & 1)
           for c in search._admissible_colorings(mask)}
    assert got == brute_tree_proper_colorings(g, verts)


def test_has_odd_clique_minor_examples():
    k4 = gr.complete(4)
    model = has_odd_clique_minor(k4, 4)
    assert model is not None and model.clique_order == 4
    assert verify_odd_expansion(k4, model, strict=True).passed

    c5 = gr.cycle(5)
    model = has_odd_clique_minor(c5, 3)
    assert model is not None
    assert verify_odd_expansion(c5, model, strict=True).passed

    assert has_odd_clique_minor(gr.cycle(4), 3) is None


def test_has_odd_clique_minor_order_one_and_beyond_n():
    g = gr.path(2)
    assert has_odd_clique_minor(g, 1) is not None
    assert has_odd_clique_minor(g, 3) is None
    with pytest.raises(ParameterError):
        has_odd_clique_minor(g, 0)


def test_budget_cap_and_timeout():
    big = gr.product("cartesian", gr.complete(5), gr.complete(5))
    with pytest.raises(ParameterError):
        has_odd_clique_minor(big, 3)
    host = gr.product("cartesian", gr.complete(4), gr.complete(4))
    with pytest.raises(SearchTimeout):
        has_odd_clique_minor(host, 7, SearchBudget(node_limit=50))


@pytest.mark.parametrize("n", range(1, 7))
def test_odd_hadwiger_complete(n):
    result = odd_hadwiger(gr.complete(n))
    assert result.status == "exact" and result.value == n
    assert verify_odd_expansion(gr.complete(n), result.certificate).passed
    assert result.certificate.clique_order == result.value


def test_odd_hadwiger_fast_paths():
    r = odd_hadwiger(gr.Graph(3, frozenset()))
    assert r.status == "exact" and r.value == 1 and r.refutation_order is None
    r = odd_hadwiger(gr.cycle(6))
    assert r.status == "exact" and r.value == 2 and r.refutation_order is None
    r = odd_hadwiger(gr.star(5))
    assert r.value == 2
    with pytest.raises(ParameterError):
        odd_hadwiger(gr.Graph(0, frozenset()))


def test_odd_hadwiger_odd_cycles():
    # every odd cycle up to the default size cap sits exactly at 3
    for k in range(1, 8):
        r = odd_hadwiger(gr.cycle(2 * k + 1))
        assert r.status == "exact" and r.value == 3
        if 2 * k + 1 > 3:
            assert r.refutation_order == 4
        assert verify_odd_expansion(gr.cycle(2 * k + 1), r.certificate).passed


def test_odd_hadwiger_above_cap_gives_lower_bound():
    big = gr.product("strong", gr.cycle(5), gr.cycle(5))
    r = odd_hadwiger(big)
    assert r.status == "lower_bound_only" and r.value == 3
    assert verify_odd_expansion(big, r.certificate).passed
    # bipartite stays exact at any size
    huge = gr.product("cartesian", gr.cycle(6), gr.cycle(8))
    r = odd_hadwiger(huge)
    assert r.status == "exact" and r.value == 2


def test_odd_hadwiger_timeout_keeps_best():
    host = gr.product("cartesian", gr.complete(4), gr.complete(4))
    r = odd_hadwiger(host, SearchBudget(node_limit=10))
    assert r.status == "timeout" and r.value >= 3
    assert verify_odd_expansion(host, r.certificate).passed


def random_graph(n, p, seed):
    rng = random.Random(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return gr.graph_from_edges(n, edges)


def test_anti_monotonicity_on_seeded_instances():
    for seed in range(6):
        g = random_graph(7, 0.55, seed)
        value = odd_hadwiger(g).value
        rng = random.Random(100 + seed)
        sub_edges = [e for e in g.edges if rng.random() < 0.7]
        sub = gr.graph_from_edges(g.n, sub_edges)
        assert odd_hadwiger(sub).value <= value


def test_search_value_is_repeatable_and_certificate_canonical():
    host = gr.product("direct", gr.complete(4), gr.complete(3))
    a = has_odd_clique_minor(host, 4)
    b = has_odd_clique_minor(host, 4)
    assert a == b  # canonical first-in-order certificate


def test_constructions_cross_validate_on_tiny_hosts():
    cases = [
        (gr.product("cartesian", gr.complete(3), gr.complete(3)),
         cons.cartesian_complete_model(3, 3).model),
        (gr.product("strong", gr.star(2), gr.star(2)), cons.star_model(2, 2)),
        (gr.product("direct", gr.complete(4), gr.complete(3)),
         cons.direct_general_model(4, 3)),
    ]
    for host, model in cases:
        found = has_odd_clique_minor(host, model.clique_order)
        assert found is not None
        assert verify_odd_expansion(host, found, strict=True).passed
