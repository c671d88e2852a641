import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from deltatree.errors import MissingLabel, NegativeEdge, NotZeroHyperbolic
from deltatree.generators import random_euclidean, random_tree
from deltatree.hyperbolicity import delta_four_point
from deltatree.metric_space import build_space
from deltatree.metric_tree import build_tree, leaf_metric, tree_from_graph
from deltatree.tree_realization import realize_tree, verify_embedding

from oracles import cycle_matrix, floyd_warshall

QUARTET = build_space(
    "abcd", [[0, 2, 3, 3], [2, 0, 3, 3], [3, 3, 0, 2], [3, 3, 2, 0]]
)
CAT_EDGES = [("a", "u", 1), ("b", "u", 1), ("u", "v", 1), ("c", "v", 1), ("d", "v", 1)]


def test_two_points():
    t = realize_tree(build_space("xy", [[0, 5], [5, 0]]))
    assert t.n == 2 and t.edges == ((0, 1, 5.0),)


def test_one_point():
    t = realize_tree(build_space("x", [[0]]))
    assert t.n == 1 and t.labels == ("x",)


def test_quartet_gives_caterpillar():
    t = realize_tree(QUARTET)
    assert verify_embedding(t, QUARTET) == 0.0
    assert t.n == 6
    steiner = [v for v in range(t.n) if t.labels[v].startswith("_s")]
    assert len(steiner) == 2
    assert sorted(t.degree(v) for v in steiner) == [3, 3]
    assert sorted(w for _, _, w in t.edges) == [1.0] * 5


def test_c4_rejected_with_cycle_witness():
    c4 = build_space(range(4), cycle_matrix(4))
    with pytest.raises(NotZeroHyperbolic) as exc:
        realize_tree(c4)
    assert exc.value.delta == 1.0
    assert tuple(exc.value.witness) == (0, 1, 2, 3)


def test_coincident_points_rejected():
    s = build_space("abc", [[0, 0, 1], [0, 0, 1], [1, 1, 0]])
    with pytest.raises(NegativeEdge):
        realize_tree(s)


def test_verify_embedding_examples():
    cat = build_tree("abcduv", CAT_EDGES)
    space = leaf_metric(cat, list("abcd"))
    assert verify_embedding(cat, space) == 0.0
    with pytest.raises(MissingLabel):
        verify_embedding(cat, build_space("az", [[0, 1], [1, 0]]))


@pytest.mark.parametrize("edge", range(5))
def test_perturbed_edge_error(edge):
    # every leaf pair crosses an edge at most once, so the error equals the bump
    edges = [(u, v, w + (0.1 if k == edge else 0.0)) for k, (u, v, w) in enumerate(CAT_EDGES)]
    bumped = build_tree("abcduv", edges)
    original = leaf_metric(build_tree("abcduv", CAT_EDGES), list("abcd"))
    names = "abcduv"
    ref = floyd_warshall(6, [(names.index(u), names.index(v), w) for u, v, w in edges])
    expected = max(
        abs(ref[i][j] - original.dist[i, j]) for i, j in itertools.combinations(range(4), 2)
    )
    assert verify_embedding(bumped, original) == pytest.approx(expected, abs=1e-12)
    assert expected == pytest.approx(0.1)


@given(st.integers(1, 20), st.integers(0, 10**6), st.data())
def test_round_trip_on_tree_metrics(n, seed, data):
    tree = tree_from_graph(random_tree(n, seed))
    k = data.draw(st.integers(1, n))
    chosen = data.draw(st.permutations(tree.labels))[:k]
    space = leaf_metric(tree, chosen)
    out = realize_tree(space)
    assert verify_embedding(out, space) <= 1e-6
    assert delta_four_point(leaf_metric(out)).delta <= 1e-7


@given(st.integers(4, 9), st.integers(0, 10**6))
def test_rejects_exactly_when_delta_positive(n, seed):
    space = random_euclidean(n, seed)
    d = delta_four_point(space).delta
    if d > 1e-7:
        with pytest.raises(NotZeroHyperbolic):
            realize_tree(space)
    else:  # pragma: no cover - generic Euclidean samples are never tree-like
        realize_tree(space)


def test_deterministic_output():
    space = leaf_metric(tree_from_graph(random_tree(15, 2)))
    a, b = realize_tree(space), realize_tree(space)
    assert a.labels == b.labels and a.edges == b.edges
