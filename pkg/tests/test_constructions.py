import pytest

from oddminors import constructions as cons
from oddminors import graphs as gr
from oddminors.errors import (ColoringMissingError, FactorModelError,
                              ParameterError)
from oddminors.expansion import (OddExpansionModel, branch_tree,
                                 serialize_model, verify_odd_expansion)

C5 = gr.cycle(5)
C5_K3 = OddExpansionModel(
    (branch_tree([0]), branch_tree([1, 2], [(1, 2)]), branch_tree([3, 4], [(3, 4)])),
    {0: 1, 1: 1, 2: 2, 3: 2, 4: 1},
)


def check_on(host, model, order=None):
    verdict = verify_odd_expansion(host, model, strict=True)
    assert verdict.passed, verdict.summary()
    if order is not None:
        assert model.clique_order == order


# ----------------------------------------------------------------------
# Small builders


def test_identity_model():
    k5 = gr.complete(5)
    model = cons.identity_model(k5)
    check_on(k5, model, 5)
    with pytest.raises(ParameterError):
        cons.identity_model(gr.cycle(4))


def test_singleton_and_edge_models():
    g = gr.path(3)
    check_on(g, cons.singleton_model(g), 1)
    check_on(g, cons.single_edge_model(g), 2)
    with pytest.raises(ParameterError):
        cons.single_edge_model(gr.Graph(2, frozenset()))


def test_odd_cycle_model_matches_hand_built_c5():
    model = cons.odd_cycle_model(C5)
    assert model == OddExpansionModel(
        C5_K3.trees, dict(C5_K3.coloring),
        {(0, 1): (0, 1), (0, 2): (0, 4), (1, 2): (2, 3)})
    check_on(C5, model, 3)
    assert cons.odd_cycle_model(gr.cycle(6)) is None
    for g in [gr.cycle(7), gr.cycle(9), gr.product("direct", gr.cycle(5), gr.cycle(5))]:
        check_on(g, cons.odd_cycle_model(g), 3)


# ----------------------------------------------------------------------
# Combined coloring


def test_witness_product_coloring_rule():
    # agree -> 1, differ -> 2
    out = cons.witness_product_coloring({0: 1}, {0: 1}, [(0, 0)], 1)
    assert out == {0: 1}
    out = cons.witness_product_coloring({0: 1}, {0: 2}, [(0, 0)], 1)
    assert out == {0: 2}
    grid = cons.witness_product_coloring({0: 1, 1: 2}, {0: 1, 1: 2},
                                         [(0, 0), (0, 1), (1, 0), (1, 1)], 2)
    assert [grid[i] for i in range(4)] == [1, 2, 2, 1]


def test_witness_product_coloring_swap_parity():
    dom = [(a, b) for a in range(2) for b in range(3)]
    cg, ch = {0: 1, 1: 2}, {0: 2, 1: 1, 2: 2}
    base = cons.witness_product_coloring(cg, ch, dom, 3)
    both = cons.witness_product_coloring({v: 3 - c for v, c in cg.items()},
                                         {v: 3 - c for v, c in ch.items()}, dom, 3)
    assert both == base
    one = cons.witness_product_coloring({v: 3 - c for v, c in cg.items()}, ch, dom, 3)
    assert one == {v: 3 - c for v, c in base.items()}


def test_witness_product_coloring_missing_coordinate():
    with pytest.raises(ColoringMissingError):
        cons.witness_product_coloring({}, {0: 1}, [(0, 0)], 1)
    with pytest.raises(ColoringMissingError):
        cons.witness_product_coloring({0: 1}, {}, [(0, 0)], 1)


# ----------------------------------------------------------------------
# Grid forest


def test_grid_forest_cells_and_cross_edges():
    k2 = gr.complete(2)
    mk2 = cons.identity_model(k2)
    gf = cons.product_grid_forest(C5, C5_K3, k2, mk2)
    assert gf.s == 3 and gf.t == 2
    assert len(gf.cells) == 6
    # every required same-row or same-column pair has a stored edge
    assert len(gf.cross_edges) == 3 * 1 + 2 * 3
    for (u, v) in gf.cross_edges.values():
        assert gf.coloring[u] == gf.coloring[v]
    # combined coloring is proper on every cell tree
    for cell in gf.cells.values():
        for u, v in cell.edges:
            assert gf.coloring[u] != gf.coloring[v]
    # cell sizes multiply the factor tree sizes
    sizes = {(i, j): len(gf.cells[(i, j)].vertices)
             for i in range(3) for j in range(2)}
    factor_sizes = [1, 2, 2]
    for i in range(3):
        for j in range(2):
            assert sizes[(i, j)] == factor_sizes[i] * 1


def test_grid_forest_all_singleton_factors():
    k2 = gr.complete(2)
    mk2 = cons.identity_model(k2)
    gf = cons.product_grid_forest(k2, mk2, k2, mk2)
    assert all(len(c.vertices) == 1 for c in gf.cells.values())
    assert set(gf.coloring.values()) == {1}


def test_grid_forest_rejects_invalid_factor():
    k2 = gr.complete(2)
    broken = OddExpansionModel((branch_tree([0]), branch_tree([1])), {0: 1, 1: 2})
    with pytest.raises(FactorModelError) as exc:
        cons.product_grid_forest(k2, broken, k2, cons.identity_model(k2))
    assert exc.value.verdict is not None and not exc.value.verdict.passed


# ----------------------------------------------------------------------
# Box products of cliques and lifting


@pytest.mark.parametrize("s,t", [(2, 2), (2, 5), (3, 3), (5, 7), (8, 2)])
def test_cartesian_complete_model(s, t):
    base = cons.cartesian_complete_model(s, t)
    host = gr.product("cartesian", gr.complete(s), gr.complete(t))
    check_on(host, base.model, s + t - 2)
    # the top-right corner stays unused
    corner = gr.flatten(0, t - 1, t)
    assert corner not in base.model.used_vertices()


def test_cartesian_complete_rejects_small_params():
    with pytest.raises(ParameterError):
        cons.cartesian_complete_model(1, 5)
    with pytest.raises(ParameterError):
        cons.cartesian_complete_model(4, 1)


def test_cartesian_lift_order2_smallest_case():
    k2 = gr.complete(2)
    mk2 = cons.identity_model(k2)
    lifted = cons.cartesian_lift(k2, mk2, k2, mk2)
    host = gr.product("cartesian", k2, k2)
    check_on(host, lifted, 2)


def test_cartesian_lift_c5_c5():
    lifted = cons.cartesian_lift(C5, C5_K3, C5, C5_K3,
                                 base=cons.cartesian_complete_model(3, 3))
    host = gr.product("cartesian", C5, C5)
    check_on(host, lifted, 4)


def test_cartesian_lift_k4_k4():
    k4 = gr.complete(4)
    mk4 = cons.identity_model(k4)
    lifted = cons.cartesian_lift(k4, mk4, k4, mk4,
                                 base=cons.cartesian_complete_model(4, 4))
    check_on(gr.product("cartesian", k4, k4), lifted, 6)


def test_cartesian_lift_validates_base():
    with pytest.raises(ParameterError):
        cons.cartesian_lift(C5, C5_K3, C5, C5_K3,
                            base=cons.cartesian_complete_model(3, 4))
    fail_base = cons.BaseModel(3, 3, OddExpansionModel(
        (branch_tree([0]), branch_tree([4])), {0: 1, 4: 2}))
    with pytest.raises(FactorModelError):
        cons.cartesian_lift(C5, C5_K3, C5, C5_K3, base=fail_base)


@pytest.mark.parametrize("n,d,order", [(3, 1, 3), (3, 2, 4), (4, 2, 6), (2, 4, 2), (3, 3, 5)])
def test_hamming_model(n, d, order):
    model = cons.hamming_model(n, d)
    assert model.clique_order == d * (n - 2) + 2 == order
    check_on(gr.hamming(n, d), model)


def test_hamming_model_params():
    with pytest.raises(ParameterError):
        cons.hamming_model(1, 2)
    with pytest.raises(ParameterError):
        cons.hamming_model(3, 0)


# ----------------------------------------------------------------------
# Strong, lexicographic, stars


def test_strong_model_k2_k2_is_k4():
    k2 = gr.complete(2)
    mk2 = cons.identity_model(k2)
    model = cons.strong_model(k2, mk2, k2, mk2)
    host = gr.product("strong", k2, k2)
    assert host.is_complete() and host.n == 4
    check_on(host, model, 4)


def test_strong_model_c5_c5():
    model = cons.strong_model(C5, C5_K3, C5, C5_K3)
    check_on(gr.product("strong", C5, C5), model, 9)
    lex = cons.strong_model(C5, C5_K3, C5, C5_K3, kind="lexicographic")
    check_on(gr.product("lexicographic", C5, C5), lex, 9)


def test_strong_model_degenerate_factor_is_flagged():
    k2 = gr.complete(2)
    one = cons.singleton_model(k2)
    model = cons.strong_model(k2, one, k2, cons.identity_model(k2))
    assert model.clique_order == 2
    assert model.notes
    check_on(gr.product("strong", k2, k2), model)
    # serialized form carries the flag
    text = serialize_model(model, gr.product("strong", k2, k2).content_hash())
    assert "meta:" in text


@pytest.mark.parametrize("r,t", [(1, 1), (2, 5), (3, 3), (5, 2), (4, 1)])
def test_star_model_case_split(r, t):
    model = cons.star_model(r, t)
    expected = r + 1 if r == t else min(r, t) + 2
    assert model.clique_order == expected
    check_on(gr.product("strong", gr.star(r), gr.star(t)), model)


def test_star_model_params():
    with pytest.raises(ParameterError):
        cons.star_model(0, 1)


# ----------------------------------------------------------------------
# Direct products of cliques


@pytest.mark.parametrize("t", range(6, 13))
def test_direct_k3_model(t):
    model = cons.direct_k3_model(t)
    host = gr.product("direct", gr.complete(t), gr.complete(3))
    check_on(host, model, t + 2)


def test_direct_k3_small_case_substitution():
    model = cons.direct_k3_model(6)
    # pair of trees 6 and 8 reroutes through row 6 when row 7 is absent
    e = model.connectors[(5, 7)]
    assert e == gr.norm_edge(gr.flatten(4, 1, 3), gr.flatten(5, 0, 3))
    assert model.clique_order == 8
    big = cons.direct_k3_model(7)
    e7 = big.connectors[(5, 7)]
    assert e7 == gr.norm_edge(gr.flatten(4, 1, 3), gr.flatten(6, 0, 3))


def test_direct_k3_tree_shapes():
    # six two-vertex trees, everything else a three-vertex path
    for t in (7, 10, 11):
        model = cons.direct_k3_model(t)
        sizes = sorted(len(tree.vertices) for tree in model.trees)
        assert sizes == [2] * 6 + [3] * (t - 4)


def test_direct_k3_params():
    with pytest.raises(ParameterError):
        cons.direct_k3_model(5)


def test_direct_k3_upper_bound_values():
    assert cons.direct_k3_upper_bound(6) == 8
    # individual terms at t = 9: (27-3)/3 + 3 and (27-12)/3 + 6 both hit 11
    assert (27 - 3) // 3 + 3 == 11
    assert (27 - 12) // 3 + 6 == 11
    for t in range(6, 101):
        assert cons.direct_k3_upper_bound(t) == t + 2
        assert cons.direct_k3_upper_bound(t) == cons.direct_k3_model(t).clique_order if t <= 12 else True


@pytest.mark.parametrize("t,s,order", [(4, 3, 4), (6, 6, 12), (5, 7, 10), (4, 9, 12)])
def test_direct_general_model(t, s, order):
    model = cons.direct_general_model(t, s)
    host = gr.product("direct", gr.complete(t), gr.complete(s))
    check_on(host, model, order)


def test_direct_general_ignores_trailing_columns():
    model = cons.direct_general_model(5, 7)
    used_cols = {v % 7 for v in model.used_vertices()}
    assert used_cols <= set(range(6))


def test_direct_general_params():
    with pytest.raises(ParameterError):
        cons.direct_general_model(3, 6)
    with pytest.raises(ParameterError):
        cons.direct_general_model(6, 2)


# ----------------------------------------------------------------------
# Dispatcher


def test_best_lower_bound_strong_and_cartesian():
    order, model = cons.best_lower_bound(C5, C5_K3, C5, C5_K3, "strong")
    assert order == 9
    check_on(gr.product("strong", C5, C5), model)
    order, model = cons.best_lower_bound(C5, C5_K3, C5, C5_K3, "cartesian")
    assert order == 4
    check_on(gr.product("cartesian", C5, C5), model)
    order, model = cons.best_lower_bound(C5, C5_K3, C5, C5_K3, "lexicographic")
    assert order == 9


def test_best_lower_bound_direct_cliques():
    k7, k3 = gr.complete(7), gr.complete(3)
    m7, m3 = cons.identity_model(k7), cons.identity_model(k3)
    order, model = cons.best_lower_bound(k7, m7, k3, m3, "direct")
    assert order == 9  # max(7 + 2, 7 * 1)
    check_on(gr.product("direct", k7, k3), model)
    order, model = cons.best_lower_bound(k3, m3, k7, m7, "direct")
    assert order == 9
    check_on(gr.product("direct", k3, k7), model)
    k6, k9 = gr.complete(6), gr.complete(9)
    order, model = cons.best_lower_bound(k6, cons.identity_model(k6),
                                         k9, cons.identity_model(k9), "direct")
    assert order == 18  # 6 * 3 beats nothing else
    check_on(gr.product("direct", k6, k9), model)


def test_best_lower_bound_direct_fallbacks():
    k2 = gr.complete(2)
    mk2 = cons.identity_model(k2)
    order, model = cons.best_lower_bound(k2, mk2, k2, mk2, "direct")
    assert order == 2  # bipartite product with an edge
    check_on(gr.product("direct", k2, k2), model)
    order, model = cons.best_lower_bound(C5, C5_K3, C5, C5_K3, "direct")
    assert order == 3  # odd cycle in the product
    check_on(gr.product("direct", C5, C5), model)


def test_best_lower_bound_cartesian_degenerate():
    k2 = gr.complete(2)
    one = cons.singleton_model(k2)
    assert cons.best_lower_bound(k2, one, k2, cons.identity_model(k2), "cartesian") is None


def test_best_lower_bound_rejects_bad_kind():
    with pytest.raises(ParameterError):
        cons.best_lower_bound(C5, C5_K3, C5, C5_K3, "tensorish")


# ----------------------------------------------------------------------
# Determinism


def test_constructions_are_byte_deterministic():
    host = gr.product("direct", gr.complete(8), gr.complete(3))
    h = host.content_hash()
    a = serialize_model(cons.direct_k3_model(8), h)
    b = serialize_model(cons.direct_k3_model(8), h)
    assert a == b
    host2 = gr.product("cartesian", C5, C5)
    a = serialize_model(cons.cartesian_lift(C5, C5_K3, C5, C5_K3), host2.content_hash())
    b = serialize_model(cons.cartesian_lift(C5, C5_K3, C5, C5_K3), host2.content_hash())
    assert a == b
