"""Leadership ranking: PageRank per layer, chained across layers, and an
ego-network brokerage score.

Rank mass moves between users along layer edges.  Which way it moves
depends on the layer's meaning:

* empowerment and collaboration credit the *source* of an edge (authors
  who got comments, commenters who answered), so rank flows against the
  stored edges ("transposed" direction);
* credibility credits the *target* (authors who received trust), so rank
  flows along the stored edges ("as_is" direction).

Either way the update multiplies by a matrix whose columns sum to 1
wherever the contributing user is connected, every iterate is
L1-renormalized, and damping teleports the remaining mass.  The chained
variant additionally scales each user's walk term by x_i**beta and their
teleport share by x_i**gamma, where x is the previous layer's converged
vector; with beta = gamma = 0 every layer reduces to plain PageRank.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple, Sequence

import numpy as np
from scipy import sparse

from .multiplex import LAYER_NAMES, Layer, MultiplexTensor, layer_union

AS_IS = "as_is"
TRANSPOSED = "transposed"

# Rank-flow direction per layer; see the module docstring.
LAYER_DIRECTION = {
    "empowerment": TRANSPOSED,
    "collaboration": TRANSPOSED,
    "credibility": AS_IS,
}


class ConvergenceError(Exception):
    def __init__(self, label: str, residual: float, last_iterate: np.ndarray):
        super().__init__(
            f"{label} ranking did not converge: residual {residual:.3e}"
        )
        self.label = label
        self.residual = residual
        self.last_iterate = last_iterate


@dataclass(frozen=True)
class RankVector:
    """A probability vector over corpus users (sums to 1, entries >= 0)."""

    scores: np.ndarray
    label: str

    def __post_init__(self) -> None:
        scores = np.asarray(self.scores, dtype=float)
        object.__setattr__(self, "scores", scores)
        if scores.ndim != 1 or scores.size < 1:
            raise ValueError("scores must be a non-empty vector")
        if not np.all(np.isfinite(scores)) or np.any(scores < 0):
            raise ValueError("scores must be finite and non-negative")
        if abs(scores.sum() - 1.0) > 1e-9:
            raise ValueError(f"scores must sum to 1, got {scores.sum()!r}")
        scores.setflags(write=False)


@dataclass(frozen=True)
class MprParams:
    """Knobs of the chained ranking.

    alpha: per-layer damping, each in (0, 1), ordered like layer_order.
    beta, gamma: chaining exponents, at most 1.
    epsilon_floor: replaces exact zeros of the previous layer's vector
    before exponentiation so a user can never be permanently frozen out.
    """

    alpha: tuple[float, float, float] = (0.85, 0.85, 0.85)
    beta: float = 1.0
    gamma: float = 1.0
    layer_order: tuple[str, str, str] = LAYER_NAMES
    tol: float = 1e-9
    max_iter: int = 1000
    epsilon_floor: float = 1e-12

    def __post_init__(self) -> None:
        if len(self.alpha) != 3 or not all(0.0 < a < 1.0 for a in self.alpha):
            raise ValueError("alpha must be three dampings, each in (0, 1)")
        if self.beta > 1.0 or self.gamma > 1.0:
            raise ValueError("beta and gamma must be <= 1")
        if sorted(self.layer_order) != sorted(LAYER_NAMES):
            raise ValueError(f"layer_order must permute {LAYER_NAMES}")
        if self.tol <= 0.0:
            raise ValueError("tol must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")
        if self.epsilon_floor <= 0.0:
            raise ValueError("epsilon_floor must be positive")


class MprResult(NamedTuple):
    empowerment: RankVector
    collaboration: RankVector
    credibility: RankVector
    leadership: RankVector


def _iteration_matrix(layer: Layer, direction: str) -> sparse.csr_matrix:
    """Matrix M with M[gainer, giver] = edge weight for the requested
    rank-flow direction over the stored edges."""
    if direction not in (AS_IS, TRANSPOSED):
        raise ValueError(f"unknown direction {direction!r}")
    n = layer.n
    if not layer.edges:
        return sparse.csr_matrix((n, n))
    rows = []
    cols = []
    vals = []
    for (i, j), w in layer.edges.items():
        if direction == TRANSPOSED:
            rows.append(i)
            cols.append(j)
        else:
            rows.append(j)
            cols.append(i)
        vals.append(w)
    return sparse.csr_matrix((vals, (rows, cols)), shape=(n, n))


def _power_iterate(
    matrix: sparse.csr_matrix,
    n: int,
    alpha: float,
    tol: float,
    max_iter: int,
    label: str,
    walk_scale: np.ndarray | None = None,
    teleport: np.ndarray | None = None,
) -> np.ndarray:
    if teleport is None:
        teleport = np.full(n, (1.0 - alpha) / n)
    r = np.full(n, 1.0 / n)
    residual = np.inf
    for _ in range(max_iter):
        moved = matrix @ r
        if walk_scale is not None:
            moved = walk_scale * moved
        nxt = alpha * moved + teleport
        total = nxt.sum()
        if total <= 0.0:
            raise ConvergenceError(label, np.inf, nxt)
        nxt /= total
        residual = float(np.abs(nxt - r).sum())
        r = nxt
        if residual < tol:
            return r
    raise ConvergenceError(label, residual, r)


def pagerank(
    layer: Layer,
    direction: str,
    alpha: float = 0.85,
    tol: float = 1e-9,
    max_iter: int = 1000,
    label: str = "pagerank",
) -> RankVector:
    """Damped power iteration on one layer; see the module docstring for
    what each direction means.  Raises ConvergenceError (carrying the
    last iterate and residual) when max_iter is exhausted."""
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must be in (0, 1)")
    matrix = _iteration_matrix(layer, direction)
    scores = _power_iterate(matrix, layer.n, alpha, tol, max_iter, label)
    return RankVector(scores=scores, label=label)


def multiplex_pagerank(
    tensor: MultiplexTensor, params: MprParams = MprParams()
) -> MprResult:
    """Rank layers in params.layer_order, feeding each converged vector
    into the next layer's walk and teleport terms.  The final layer's
    vector doubles as the leadership rank."""
    vectors: dict[str, np.ndarray] = {}
    prev: np.ndarray | None = None
    for position, name in enumerate(params.layer_order):
        layer = tensor.layer(name)
        alpha = params.alpha[position]
        matrix = _iteration_matrix(layer, LAYER_DIRECTION[name])
        if prev is None:
            scores = _power_iterate(
                matrix, tensor.n, alpha, params.tol, params.max_iter, name
            )
        else:
            x = np.where(prev <= 0.0, params.epsilon_floor, prev)
            walk_scale = x ** params.beta
            x_gamma = x ** params.gamma
            teleport = (1.0 - alpha) * x_gamma / x_gamma.sum()
            scores = _power_iterate(
                matrix, tensor.n, alpha, params.tol, params.max_iter, name,
                walk_scale=walk_scale, teleport=teleport,
            )
        vectors[name] = scores
        prev = scores
    assert prev is not None
    return MprResult(
        empowerment=RankVector(vectors["empowerment"], "empowerment"),
        collaboration=RankVector(vectors["collaboration"], "collaboration"),
        credibility=RankVector(vectors["credibility"], "credibility"),
        leadership=RankVector(prev.copy(), "leadership"),
    )


def brokerage(
    graph: MultiplexTensor | Sequence[set[int]], label: str = "brokerage"
) -> RankVector:
    """How often a user bridges otherwise unconnected neighbors.

    On the undirected union of the layer edge supports, a user scores one
    point per unordered neighbor pair with no direct edge; scores are
    normalized to a probability vector (uniform when nobody brokers)."""
    neighbors = layer_union(graph) if isinstance(graph, MultiplexTensor) else graph
    n = len(neighbors)
    if n < 1:
        raise ValueError("graph must have at least one node")
    raw = np.zeros(n)
    for v in range(n):
        raw[v] = sum(
            1
            for a, b in combinations(sorted(neighbors[v]), 2)
            if b not in neighbors[a]
        )
    total = raw.sum()
    scores = raw / total if total > 0 else np.full(n, 1.0 / n)
    return RankVector(scores=scores, label=label)
