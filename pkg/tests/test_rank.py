"""Ranking: per-layer PageRank, the chained variant, and brokerage."""

import random

import numpy as np
import pytest

import oracles
from conftest import random_corpus
from leadnet.multiplex import (
    ORIENT_RECEIVER,
    ORIENT_SENDER,
    Layer,
    MultiplexTensor,
    build_tensor,
    layer_union,
)
from leadnet.rank import (
    AS_IS,
    LAYER_DIRECTION,
    TRANSPOSED,
    ConvergenceError,
    MprParams,
    RankVector,
    brokerage,
    multiplex_pagerank,
    pagerank,
)

FLOW = {TRANSPOSED: "against", AS_IS: "along"}


def random_layer(rng, n, orientation=ORIENT_RECEIVER, p=0.35):
    """A layer with correctly normalized random weights; nodes with no
    contributing edges stay dangling."""
    edges = {}
    for anchor in range(n):
        others = [v for v in range(n) if v != anchor and rng.random() < p]
        if not others:
            continue
        weights = [rng.uniform(0.1, 1.0) for _ in others]
        total = sum(weights)
        for other, weight in zip(others, weights):
            key = (other, anchor) if orientation == ORIENT_RECEIVER \
                else (anchor, other)
            edges[key] = weight / total
    return Layer(n=n, edges=edges, orientation=orientation)


def random_tensor(rng, n):
    return MultiplexTensor(
        n=n,
        empowerment=random_layer(rng, n, ORIENT_RECEIVER),
        collaboration=random_layer(rng, n, ORIENT_RECEIVER),
        credibility=random_layer(rng, n, ORIENT_SENDER),
    )


class TestRankVector:
    def test_must_sum_to_one(self):
        with pytest.raises(ValueError):
            RankVector(scores=np.array([0.5, 0.2]), label="x")

    def test_rejects_negative_entries(self):
        with pytest.raises(ValueError):
            RankVector(scores=np.array([1.5, -0.5]), label="x")

    def test_scores_are_read_only(self):
        vector = RankVector(scores=np.array([0.5, 0.5]), label="x")
        with pytest.raises(ValueError):
            vector.scores[0] = 1.0


class TestParamValidation:
    def test_alpha_in_open_interval(self):
        with pytest.raises(ValueError):
            MprParams(alpha=(1.0, 0.85, 0.85))

    def test_exponents_capped_at_one(self):
        with pytest.raises(ValueError):
            MprParams(beta=1.5)

    def test_layer_order_must_permute_layers(self):
        with pytest.raises(ValueError):
            MprParams(layer_order=("empowerment", "empowerment", "credibility"))

    def test_tolerance_positive(self):
        with pytest.raises(ValueError):
            MprParams(tol=0.0)


class TestPagerank:
    def test_symmetric_cycle_is_uniform(self):
        layer = Layer(n=2, edges={(0, 1): 1.0, (1, 0): 1.0},
                      orientation=ORIENT_RECEIVER)
        for direction in (TRANSPOSED, AS_IS):
            vector = pagerank(layer, direction)
            assert vector.scores == pytest.approx([0.5, 0.5], abs=1e-9)

    def test_empty_layer_gives_uniform(self):
        layer = Layer(n=4, edges={}, orientation=ORIENT_RECEIVER)
        vector = pagerank(layer, TRANSPOSED)
        assert vector.scores == pytest.approx([0.25] * 4)

    def test_direction_changes_the_beneficiary(self):
        # one stored edge 0 -> 1
        layer = Layer(n=2, edges={(0, 1): 1.0}, orientation=ORIENT_RECEIVER)
        against = pagerank(layer, TRANSPOSED).scores    # rank gathers at 0
        along = pagerank(layer, AS_IS).scores           # rank gathers at 1
        assert against[0] > against[1]
        assert along[1] > along[0]
        assert against[0] == pytest.approx(along[1])

    @pytest.mark.parametrize("seed", range(25))
    def test_matches_dense_eigenvector(self, seed):
        rng = random.Random(8000 + seed)
        n = rng.randrange(2, 26)
        orientation = rng.choice([ORIENT_RECEIVER, ORIENT_SENDER])
        direction = rng.choice([TRANSPOSED, AS_IS])
        alpha = rng.uniform(0.5, 0.95)
        layer = random_layer(rng, n, orientation)
        got = pagerank(layer, direction, alpha=alpha, tol=1e-13,
                       max_iter=100000).scores
        want = oracles.dense_pagerank(n, layer.edges, FLOW[direction], alpha)
        assert np.max(np.abs(got - want)) < 1e-9

    def test_non_convergence_raises_with_state(self):
        layer = Layer(n=2, edges={(0, 1): 1.0}, orientation=ORIENT_RECEIVER)
        with pytest.raises(ConvergenceError) as info:
            pagerank(layer, TRANSPOSED, max_iter=1, label="empowerment")
        assert info.value.label == "empowerment"
        assert info.value.residual > 0
        assert info.value.last_iterate.shape == (2,)


class TestChainedRanking:
    @pytest.mark.parametrize("seed", range(12))
    def test_zero_exponents_reduce_to_plain_pagerank(self, seed):
        rng = random.Random(8100 + seed)
        corpus, window, _t, _r = random_corpus(rng)
        tensor = build_tensor(window, corpus)
        params = MprParams(beta=0.0, gamma=0.0, tol=1e-12)
        result = multiplex_pagerank(tensor, params)
        for position, name in enumerate(params.layer_order):
            solo = pagerank(tensor.layer(name), LAYER_DIRECTION[name],
                            alpha=params.alpha[position], tol=1e-12)
            got = getattr(result, name).scores
            assert np.max(np.abs(got - solo.scores)) < 1e-10

    @pytest.mark.parametrize("seed", range(12))
    def test_matches_dense_reference(self, seed):
        rng = random.Random(8200 + seed)
        n = rng.randrange(3, 12)
        tensor = random_tensor(rng, n)
        order = ["empowerment", "collaboration", "credibility"]
        rng.shuffle(order)
        alphas = tuple(rng.uniform(0.6, 0.95) for _ in range(3))
        beta, gamma = rng.choice([(1.0, 1.0), (0.5, 0.3), (1.0, 0.0)])
        params = MprParams(alpha=alphas, beta=beta, gamma=gamma,
                           layer_order=tuple(order), tol=1e-12,
                           max_iter=200000)
        result = multiplex_pagerank(tensor, params)
        want = oracles.dense_multiplex_pagerank(
            n,
            [tensor.layer(name).edges for name in order],
            [FLOW[LAYER_DIRECTION[name]] for name in order],
            alphas, beta, gamma, tol=1e-14,
        )
        for name, expected in zip(order, want):
            got = getattr(result, name).scores
            assert np.max(np.abs(got - expected)) < 1e-8, name

    def test_leadership_is_the_last_layer(self):
        rng = random.Random(77)
        tensor = random_tensor(rng, 6)
        order = ("credibility", "empowerment", "collaboration")
        result = multiplex_pagerank(tensor, MprParams(layer_order=order))
        assert np.array_equal(result.leadership.scores,
                              result.collaboration.scores)
        assert result.leadership.label == "leadership"

    def test_deterministic_across_runs(self):
        rng = random.Random(78)
        corpus, window, _t, _r = random_corpus(rng)
        tensor = build_tensor(window, corpus)
        first = multiplex_pagerank(tensor, MprParams())
        second = multiplex_pagerank(tensor, MprParams())
        for name in ("empowerment", "collaboration", "credibility",
                     "leadership"):
            assert np.array_equal(getattr(first, name).scores,
                                  getattr(second, name).scores)


class TestBrokerage:
    def star(self, n):
        return [set(range(1, n))] + [{0} for _ in range(1, n)]

    def test_star_center_takes_all(self):
        scores = brokerage(self.star(4)).scores
        assert scores == pytest.approx([1.0, 0.0, 0.0, 0.0])

    def test_triangle_has_no_brokers(self):
        neighbors = [{1, 2}, {0, 2}, {0, 1}]
        assert brokerage(neighbors).scores == pytest.approx([1 / 3] * 3)

    def test_path_middle_bridges_one_pair(self):
        neighbors = [{1}, {0, 2}, {1}]
        assert brokerage(neighbors).scores == pytest.approx([0.0, 1.0, 0.0])

    def test_accepts_a_tensor(self):
        rng = random.Random(79)
        corpus, window, _t, _r = random_corpus(rng)
        tensor = build_tensor(window, corpus)
        via_tensor = brokerage(tensor).scores
        via_union = brokerage(layer_union(tensor)).scores
        assert np.array_equal(via_tensor, via_union)

    @pytest.mark.parametrize("seed", range(20))
    def test_matches_brute_force(self, seed):
        rng = random.Random(8300 + seed)
        n = rng.randrange(2, 12)
        neighbors = [set() for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < 0.4:
                    neighbors[i].add(j)
                    neighbors[j].add(i)
        got = brokerage(neighbors).scores
        want = oracles.brute_force_brokerage(neighbors)
        assert np.max(np.abs(got - want)) < 1e-12
