"""Ground-truth flow engines on arbitrary small signed graphs.

Everything here treats a flow as a vector of nonzero integers, one per edge,
relative to the graph's reference orientation (see ``graphs``).  Kirchhoff's
law at a vertex reads: the sum over incident edges of coefficient * value is
zero, where the coefficient is -1 at the lower-index endpoint and the edge
sign at the higher one.

The exhaustive search ``find_nzflow`` is the oracle of record: its empty
answer is an exhaustiveness proof.  It runs on whichever kernel backend is
active (compiled or pure).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import kernels
from .graphs import (
    NotBipartiteError,
    SignedGraph,
    UnsupportedGraphError,
    balance_potential,
    edge_permutation,
    is_flow_admissible,
    switching_flip_vector,
)

MAX_ORACLE_EDGES = 40


@dataclass(frozen=True)
class Flow:
    """Nowhere-zero k-flow candidate: per-edge values in {±1, ..., ±(k-1)}."""

    k: int
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if self.k < 2:
            raise ValueError("flow bound k must be at least 2")


@dataclass(frozen=True)
class Trail:
    """Walk with no repeated edges, as a start vertex plus edge indices."""

    start: int
    edge_sequence: tuple[int, ...]


@dataclass(frozen=True)
class OneFactorization:
    """Three disjoint perfect matchings partitioning a cubic edge set."""

    factors: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]


@dataclass(frozen=True)
class FlowNumberResult:
    """Outcome of a flow-number computation.

    status is one of "found" (k and flow set), "not_admissible", or
    "cap_exceeded" (no k up to the cap worked; distinct from inadmissible).
    """

    status: str
    k: int | None = None
    flow: Flow | None = None


def kirchhoff_residuals(g: SignedGraph, values: Sequence[int]) -> list[int]:
    """Per-vertex signed imbalance of a raw assignment (zeros permitted)."""
    if len(values) != g.edge_count:
        raise ValueError("value vector length mismatch")
    sums = [0] * g.vertex_count
    for e, (lo, hi, s) in enumerate(g.edges):
        sums[lo] -= values[e]
        sums[hi] += s * values[e]
    return sums


def verify_flow(g: SignedGraph, flow: Flow) -> bool:
    """Check both flow invariants: value range and Kirchhoff at every vertex."""
    if len(flow.values) != g.edge_count:
        raise ValueError("flow has wrong number of edge values")
    for v in flow.values:
        if v == 0 or abs(v) > flow.k - 1:
            return False
    return all(r == 0 for r in kirchhoff_residuals(g, flow.values))


def _bfs_edge_order(g: SignedGraph) -> list[int]:
    order = []
    placed = [False] * g.edge_count
    seen = [False] * g.vertex_count
    for root in range(g.vertex_count):
        if seen[root]:
            continue
        seen[root] = True
        queue = [root]
        head = 0
        while head < len(queue):
            v = queue[head]
            head += 1
            for e, _ in g.incident(v):
                if not placed[e]:
                    placed[e] = True
                    order.append(e)
                a, b, _ = g.edges[e]
                w = b if a == v else a
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
    return order


def iter_nzflows(g: SignedGraph, k: int, limit: int) -> list[Flow]:
    """Up to ``limit`` distinct nowhere-zero k-flows, deterministic order."""
    if k < 2:
        raise ValueError("k must be at least 2")
    if g.edge_count > MAX_ORACLE_EDGES:
        raise UnsupportedGraphError(
            f"exhaustive search capped at {MAX_ORACLE_EDGES} edges"
        )
    lo = [a for a, _, _ in g.edges]
    hi = [b for _, b, _ in g.edges]
    sg = [s for _, _, s in g.edges]
    sols = kernels.search_flows(
        g.vertex_count, lo, hi, sg, k, _bfs_edge_order(g), limit
    )
    return [Flow(k=k, values=v) for v in sols]


def find_nzflow(g: SignedGraph, k: int) -> Flow | None:
    """One nowhere-zero k-flow, or None as an exhaustive nonexistence proof."""
    flows = iter_nzflows(g, k, limit=1)
    return flows[0] if flows else None


def flow_number(g: SignedGraph, cap: int = 8) -> FlowNumberResult:
    """Smallest k in [2, cap] admitting a nowhere-zero k-flow.

    Inadmissible graphs short-circuit (no search); a cap overrun is reported
    distinctly since larger k might still work.
    """
    if not is_flow_admissible(g):
        return FlowNumberResult(status="not_admissible")
    for k in range(2, cap + 1):
        flow = find_nzflow(g, k)
        if flow is not None:
            return FlowNumberResult(status="found", k=k, flow=flow)
    return FlowNumberResult(status="cap_exceeded")


def send_along_trail(
    g: SignedGraph, values: Sequence[int], trail: Trail, b: int
) -> list[int]:
    """Push value b along a trail, keeping every inner vertex balanced.

    The first edge's contribution at the start vertex changes by -b (a
    deficit b leaves the start); each later edge receives the unique ±b that
    cancels the change at the shared inner vertex.  Works on raw assignments,
    so zeros are allowed before and after.  The net effect is a deficit b at
    the start and a matching surplus at the end; around a closed trail on a
    balanced circuit the two cancel.
    """
    if b == 0:
        raise ValueError("push value must be nonzero")
    if not trail.edge_sequence:
        return list(values)
    out = list(values)
    if len(out) != g.edge_count:
        raise ValueError("value vector length mismatch")

    def coef_at(e, v):
        lo, hi, s = g.edges[e]
        if v == lo:
            return -1
        if v == hi:
            return s
        raise ValueError(f"edge {e} is not incident to vertex {v}")

    seen = set()
    at = trail.start
    first = trail.edge_sequence[0]
    # contribution at the start changes by -b: coef * delta = -b
    delta = -b * coef_at(first, at)
    prev_delta = delta
    prev_edge = first
    seen.add(first)
    out[first] += delta
    lo, hi, _ = g.edges[first]
    at = hi if at == lo else lo
    for e in trail.edge_sequence[1:]:
        if e in seen:
            raise ValueError("edge repeated; not a trail")
        seen.add(e)
        # cancel at the inner vertex: coef_in*prev + coef_out*delta = 0
        delta = -prev_delta * coef_at(prev_edge, at) * coef_at(e, at)
        out[e] += delta
        lo, hi, _ = g.edges[e]
        at = hi if at == lo else lo
        prev_delta = delta
        prev_edge = e
    return out


def _bipartition(g: SignedGraph) -> list[int]:
    """Two-colouring of the underlying graph; NotBipartiteError with witness."""
    colour = [-1] * g.vertex_count
    parent = [(-1, -1)] * g.vertex_count  # (vertex, edge)
    for root in range(g.vertex_count):
        if colour[root] != -1:
            continue
        colour[root] = 0
        queue = [root]
        head = 0
        while head < len(queue):
            v = queue[head]
            head += 1
            for e, _ in g.incident(v):
                a, b, _ = g.edges[e]
                w = b if a == v else a
                if colour[w] == -1:
                    colour[w] = colour[v] ^ 1
                    parent[w] = (v, e)
                    queue.append(w)
                elif colour[w] == colour[v]:
                    # reconstruct an odd cycle through v and w
                    path_v, path_w = [v], [w]
                    seen_v = {v: 0}
                    x = v
                    while parent[x][0] != -1:
                        x = parent[x][0]
                        seen_v[x] = len(path_v)
                        path_v.append(x)
                    x = w
                    while x not in seen_v:
                        x = parent[x][0]
                        path_w.append(x)
                    cut = seen_v[path_w[-1]]
                    cycle = path_v[: cut + 1] + path_w[-2::-1]
                    raise NotBipartiteError(cycle)
    return colour


def one_factorize(g: SignedGraph) -> OneFactorization:
    """Partition a cubic bipartite graph into three perfect matchings.

    Peels maximum matchings by augmenting paths; regular bipartite graphs
    stay perfectly matchable after each peel, so three rounds succeed.
    """
    if any(g.degree(v) != 3 for v in range(g.vertex_count)):
        raise UnsupportedGraphError("graph is not cubic")
    _bipartition(g)  # raises with an odd-cycle witness if not bipartite
    remaining = set(range(g.edge_count))
    factors = []
    for _ in range(3):
        matching = _perfect_matching(g, remaining)
        if matching is None:
            raise UnsupportedGraphError("matching peel failed")  # unreachable
        factors.append(tuple(sorted(matching)))
        remaining -= set(matching)
    return OneFactorization(factors=tuple(factors))


def _perfect_matching(g: SignedGraph, allowed: set[int]):
    """Perfect matching within the allowed edge set (Kuhn augmentation)."""
    colour = _bipartition(g)
    left = [v for v in range(g.vertex_count) if colour[v] == 0]
    match_of = [-1] * g.vertex_count  # vertex -> matched edge
    for src in left:
        seen = set()

        def augment(v):
            for e, _ in g.incident(v):
                if e not in allowed or e in seen:
                    continue
                seen.add(e)
                a, b, _ = g.edges[e]
                w = b if a == v else a
                if match_of[w] == -1 or augment(
                    g.edges[match_of[w]][0]
                    if g.edges[match_of[w]][1] == w
                    else g.edges[match_of[w]][1]
                ):
                    match_of[v] = e
                    match_of[w] = e
                    return True
            return False

        if not augment(src):
            return None
    return {match_of[v] for v in left}


def two_factor_circuits(g: SignedGraph, edge_set: Sequence[int]) -> list[Trail]:
    """Decompose a 2-regular spanning edge set into closed trails."""
    adj = {}
    for e in edge_set:
        a, b, _ = g.edges[e]
        adj.setdefault(a, []).append((e, b))
        adj.setdefault(b, []).append((e, a))
    if any(len(v) != 2 for v in adj.values()) or len(adj) != g.vertex_count:
        raise ValueError("edge set is not a spanning 2-factor")
    used = set()
    circuits = []
    for start in sorted(adj):
        if any(e not in used for e, _ in adj[start]):
            seq = []
            at = start
            while True:
                nxt = next(((e, w) for e, w in adj[at] if e not in used), None)
                if nxt is None:
                    break
                e, w = nxt
                used.add(e)
                seq.append(e)
                at = w
            if seq:
                circuits.append(Trail(start=start, edge_sequence=tuple(seq)))
    return circuits


def _circuit_balanced(g: SignedGraph, trail: Trail) -> bool:
    return sum(1 for e in trail.edge_sequence if g.edges[e][2] < 0) % 2 == 0


def flow_from_balanced_2factors(
    g: SignedGraph, fac: OneFactorization
) -> Flow | None:
    """4-flow from two balanced 2-factors of a cubic bipartite signed graph.

    Pushes 1 around each circuit of the first balanced 2-factor and 2 around
    each circuit of the second; the shared matching receives ±1±2, so all
    values land in {±1, ±2, ±3}.  None when fewer than two of the three
    2-factors are balanced.
    """
    f1, f2, f3 = fac.factors
    covered = sorted(f1 + f2 + f3)
    if covered != list(range(g.edge_count)):
        raise ValueError("factors do not partition the edge set")
    pairs = [(0, 1), (0, 2), (1, 2)]
    balanced = []
    for i, j in pairs:
        edges = fac.factors[i] + fac.factors[j]
        circuits = two_factor_circuits(g, edges)
        if all(_circuit_balanced(g, c) for c in circuits):
            balanced.append(((i, j), circuits))
    if len(balanced) < 2:
        return None
    (pair_a, circuits_a), (pair_b, circuits_b) = balanced[0], balanced[1]
    values = [0] * g.edge_count
    for c in circuits_a:
        values = send_along_trail(g, values, c, 1)
    for c in circuits_b:
        values = send_along_trail(g, values, c, 2)
    flow = Flow(k=4, values=values)
    if not verify_flow(g, flow):
        raise AssertionError("balanced 2-factor composition produced an invalid flow")
    return flow


def carry_values_switch(
    g: SignedGraph, members: Iterable[int], values: Sequence[int]
) -> list[int]:
    """Transport flow values across a switching (either direction).

    A valid flow on switch(g, X) maps to a valid flow on g (and back) by
    negating each edge whose lower-index endpoint lies in X; switching flips
    both half-edges at a switched vertex, and re-expressing against the new
    reference orientation costs exactly that local factor.
    """
    inside = set(members)
    return [
        -v if lo in inside else v for v, (lo, _, _) in zip(values, g.edges)
    ]


def carry_values_permutation(
    g: SignedGraph, perm: Sequence[int], values: Sequence[int]
) -> list[int]:
    """Transport values from the permuted graph back onto g's edge order.

    ``values`` is valid for the graph whose sign vector is g's pushed through
    the automorphism; the returned vector is valid for signs read off g.
    Positive edges whose endpoint order flips under the permutation negate.
    """
    ep = edge_permutation(g, perm)
    out = [0] * g.edge_count
    for i, (a, b, s) in enumerate(g.edges):
        v = values[ep[i]]
        if s == 1 and perm[a] > perm[b]:
            v = -v
        out[i] = v
    return out


def flow_to_json(flow: Flow) -> dict:
    return {"k": flow.k, "values": list(flow.values)}


def flow_from_json(data) -> Flow:
    if isinstance(data, str):
        data = json.loads(data)
    if not isinstance(data, dict) or "k" not in data or "values" not in data:
        raise ValueError('flow certificate JSON needs keys "k" and "values"')
    return Flow(k=int(data["k"]), values=tuple(int(v) for v in data["values"]))
