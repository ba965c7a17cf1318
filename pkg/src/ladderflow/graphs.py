"""Signed graphs: representation, switching algebra, balance, canonical forms.

A signed graph is a simple undirected graph whose edges carry a sign in
{+1, -1}.  Each edge also has a reference bidirected orientation derived from
its sign: a positive edge points from its lower-index endpoint to the higher
one, a negative edge has both half-edges directed away from their endpoints
(extroverted).  Flow values elsewhere in the package are integers relative to
this reference, so all orientation bookkeeping reduces to two rules:

    contribution of edge (a, b, s) with value x at min(a, b):  -x
    contribution at max(a, b):                                 s * x

Switching a vertex set X negates the sign of every edge with exactly one
endpoint in X.  Canonical forms minimise (negative edge count, sign vector)
over all switchings and a supplied list of graph automorphisms, which makes
equality of canonical sign vectors a decision procedure for switching
isomorphism with respect to those automorphisms.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

# Largest vertex count for which exhaustive switching enumeration is allowed:
# 2^(n-1) switchings, chunked.  Ladder specs of any size have their own
# cut-sweep minimiser in ladderflow.ladders.
MAX_EXHAUSTIVE_VERTICES = 24

_SWITCH_CHUNK = 1 << 16


class UnsupportedGraphError(ValueError):
    """Input graph lies outside the supported class for this operation."""


class NotBipartiteError(UnsupportedGraphError):
    """Raised with an odd-cycle witness when bipartiteness is required."""

    def __init__(self, odd_cycle):
        super().__init__(f"graph is not bipartite; odd cycle {odd_cycle}")
        self.odd_cycle = tuple(odd_cycle)


@dataclass(frozen=True)
class SignedGraph:
    """Simple signed graph; edges normalised to (lo, hi, sign) on creation."""

    vertex_count: int
    edges: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if self.vertex_count < 0:
            raise ValueError("vertex_count must be nonnegative")
        norm = []
        seen = set()
        for a, b, s in self.edges:
            a, b, s = int(a), int(b), int(s)
            if s not in (1, -1):
                raise ValueError(f"edge sign must be +1 or -1, got {s}")
            if a == b:
                raise ValueError(f"loop at vertex {a} is not supported")
            if not (0 <= a < self.vertex_count and 0 <= b < self.vertex_count):
                raise ValueError(f"edge ({a}, {b}) has an endpoint out of range")
            lo, hi = (a, b) if a < b else (b, a)
            if (lo, hi) in seen:
                raise ValueError(f"parallel edge ({lo}, {hi}) is not supported")
            seen.add((lo, hi))
            norm.append((lo, hi, s))
        object.__setattr__(self, "edges", tuple(norm))
        incidence = [[] for _ in range(self.vertex_count)]
        for i, (lo, hi, s) in enumerate(norm):
            incidence[lo].append((i, -1))
            incidence[hi].append((i, s))
        object.__setattr__(self, "_incidence", tuple(map(tuple, incidence)))
        object.__setattr__(
            self, "_edge_index", {(lo, hi): i for i, (lo, hi, _) in enumerate(norm)}
        )

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def signs(self) -> tuple[int, ...]:
        return tuple(s for _, _, s in self.edges)

    @property
    def negative_count(self) -> int:
        return sum(1 for s in self.signs if s < 0)

    def incident(self, v: int):
        """Pairs (edge index, contribution coefficient) at vertex v."""
        return self._incidence[v]

    def degree(self, v: int) -> int:
        return len(self._incidence[v])

    def edge_index(self, a: int, b: int) -> int:
        key = (a, b) if a < b else (b, a)
        return self._edge_index[key]

    def with_signs(self, signs: Sequence[int]) -> "SignedGraph":
        if len(signs) != self.edge_count:
            raise ValueError("sign vector length mismatch")
        return SignedGraph(
            self.vertex_count,
            tuple((a, b, int(s)) for (a, b, _), s in zip(self.edges, signs)),
        )

    def endpoints(self, e: int) -> tuple[int, int]:
        a, b, _ = self.edges[e]
        return a, b


@dataclass(frozen=True)
class CanonicalForm:
    """Minimum-negatives representative of a switching-isomorphism class.

    ``representative = switch(permute(g, witness_automorphism), witness_switching)``
    and no (automorphism, switching) pair reaches fewer negative edges, with
    ties broken by the lexicographically smallest sign vector (+1 < -1) in the
    graph's fixed edge order.
    """

    representative: SignedGraph
    min_negatives: int
    witness_switching: frozenset[int]
    witness_automorphism: tuple[int, ...]


def switching_flip_vector(g: SignedGraph, members: Iterable[int]) -> list[int]:
    """Per-edge factor: -1 where exactly one endpoint lies in the set."""
    inside = set(members)
    for v in inside:
        if not (0 <= v < g.vertex_count):
            raise ValueError(f"switching vertex {v} out of range")
    return [-1 if ((a in inside) != (b in inside)) else 1 for a, b, _ in g.edges]


def switch(g: SignedGraph, members: Iterable[int]) -> SignedGraph:
    """Negate the signs of all edges between the set and its complement."""
    flips = switching_flip_vector(g, members)
    return g.with_signs([s * f for s, f in zip(g.signs, flips)])


def balance_potential(g: SignedGraph):
    """Vertex potential p with sign(uv) = p(u)p(v), or None if none exists.

    Exists iff every circuit has an even number of negative edges; computed by
    BFS label propagation per component.
    """
    p = [0] * g.vertex_count
    for root in range(g.vertex_count):
        if p[root]:
            continue
        p[root] = 1
        queue = [root]
        while queue:
            v = queue.pop()
            for e, _ in g.incident(v):
                a, b, s = g.edges[e]
                w = b if a == v else a
                want = p[v] * s
                if p[w] == 0:
                    p[w] = want
                    queue.append(w)
                elif p[w] != want:
                    return None
    return p


def is_balanced(g: SignedGraph) -> bool:
    """True iff every circuit carries an even number of negative edges."""
    return balance_potential(g) is not None


def switching_between(g: SignedGraph, signs_a: Sequence[int], signs_b: Sequence[int]):
    """Switching set turning signs_a into signs_b on g's underlying graph.

    Returns a frozenset of vertices, or None when the two signatures are not
    switching equivalent.  Linear time: the edgewise product signature must be
    a cut, which is exactly balance of that product pattern.
    """
    product = [sa * sb for sa, sb in zip(signs_a, signs_b)]
    p = balance_potential(g.with_signs(product))
    if p is None:
        return None
    return frozenset(v for v in range(g.vertex_count) if p[v] < 0)


def connected_components(g: SignedGraph) -> list[list[int]]:
    seen = [False] * g.vertex_count
    comps = []
    for root in range(g.vertex_count):
        if seen[root]:
            continue
        comp = [root]
        seen[root] = True
        queue = [root]
        while queue:
            v = queue.pop()
            for e, _ in g.incident(v):
                a, b, _ = g.edges[e]
                w = b if a == v else a
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def find_bridges(g: SignedGraph) -> list[int]:
    """Edge indices of all bridges (iterative lowpoint DFS)."""
    disc = [-1] * g.vertex_count
    low = [0] * g.vertex_count
    bridges = []
    timer = 0
    for root in range(g.vertex_count):
        if disc[root] != -1:
            continue
        stack = [(root, -1, iter(g.incident(root)))]
        disc[root] = low[root] = timer
        timer += 1
        while stack:
            v, parent_edge, it = stack[-1]
            advanced = False
            for e, _ in it:
                if e == parent_edge:
                    continue
                a, b, _ = g.edges[e]
                w = b if a == v else a
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, e, iter(g.incident(w))))
                    advanced = True
                    break
                low[v] = min(low[v], disc[w])
            if not advanced:
                stack.pop()
                if stack:
                    u = stack[-1][0]
                    low[u] = min(low[u], low[v])
                    if low[v] > disc[u]:
                        bridges.append(parent_edge)
        # root handled implicitly
    return sorted(bridges)


def is_automorphism(g: SignedGraph, perm: Sequence[int]) -> bool:
    """True iff perm preserves the underlying (unsigned) edge set."""
    if sorted(perm) != list(range(g.vertex_count)):
        return False
    keys = {(a, b) for a, b, _ in g.edges}
    for a, b, _ in g.edges:
        pa, pb = perm[a], perm[b]
        if (min(pa, pb), max(pa, pb)) not in keys:
            return False
    return True


def edge_permutation(g: SignedGraph, perm: Sequence[int]) -> list[int]:
    """Map each edge index to the index of its image under the automorphism."""
    out = []
    for a, b, _ in g.edges:
        pa, pb = perm[a], perm[b]
        key = (pa, pb) if pa < pb else (pb, pa)
        idx = g._edge_index.get(key)
        if idx is None:
            raise ValueError("permutation is not an automorphism of the graph")
        out.append(idx)
    return out


def permute_signs(g: SignedGraph, perm: Sequence[int]) -> list[int]:
    """Sign vector of the permuted graph, on g's fixed edge ordering."""
    ep = edge_permutation(g, perm)
    out = [0] * g.edge_count
    for i, s in enumerate(g.signs):
        out[ep[i]] = s
    return out


def graph_automorphisms(g: SignedGraph, limit: int | None = None) -> list[tuple[int, ...]]:
    """All automorphisms of the underlying graph, by backtracking.

    Intended for small graphs (the special ladder orders whose underlying
    graphs have symmetries beyond the dihedral ones).
    """
    n = g.vertex_count
    adj = [set() for _ in range(n)]
    for a, b, _ in g.edges:
        adj[a].add(b)
        adj[b].add(a)
    degrees = [len(adj[v]) for v in range(n)]
    perms = []
    assignment = [-1] * n
    used = [False] * n

    def backtrack(v):
        if limit is not None and len(perms) >= limit:
            return
        if v == n:
            perms.append(tuple(assignment))
            return
        for w in range(n):
            if used[w] or degrees[w] != degrees[v]:
                continue
            ok = True
            for u in range(v):
                if (u in adj[v]) != (assignment[u] in adj[w]):
                    ok = False
                    break
            if ok:
                assignment[v] = w
                used[w] = True
                backtrack(v + 1)
                used[w] = False
                assignment[v] = -1

    backtrack(0)
    return perms


class SwitchingCanonicalizer:
    """Vectorised minimiser over (automorphism, switching) pairs.

    Precomputes, once per underlying graph, the 2^(n-1) switching flip table
    (vertex 0 pinned outside every switching set, since switching all vertices
    is the identity on signs) and the induced edge permutation of each
    automorphism.  ``canonicalize`` then reduces a sign vector in one numpy
    pass per automorphism, chunked to bound memory.
    """

    def __init__(self, g: SignedGraph, autos: Sequence[Sequence[int]]):
        if g.vertex_count > MAX_EXHAUSTIVE_VERTICES:
            raise UnsupportedGraphError(
                f"exhaustive switching enumeration capped at "
                f"{MAX_EXHAUSTIVE_VERTICES} vertices (got {g.vertex_count}); "
                "use the ladder cut-sweep minimiser for large ladders"
            )
        if not autos:
            raise ValueError("autos must be nonempty (include the identity)")
        self.graph = g
        self.autos = [tuple(a) for a in autos]
        self.edge_perms = np.array(
            [edge_permutation(g, a) for a in self.autos], dtype=np.int64
        )
        m = g.edge_count
        self._m = m
        self._nswitch = 1 << max(g.vertex_count - 1, 0)
        self._bit_weights = (1 << np.arange(m - 1, -1, -1, dtype=np.int64))
        self._ab = np.array([(a, b) for a, b, _ in g.edges], dtype=np.int64)

    def _flip_block(self, start: int, stop: int) -> np.ndarray:
        """Rows = switchings in [start, stop), cols = edges; 1 means flipped."""
        idx = np.arange(start, stop, dtype=np.int64)[:, None]
        a = self._ab[:, 0][None, :]
        b = self._ab[:, 1][None, :]
        # vertex v > 0 is in the switching set iff bit v-1 of the row index set
        bit_a = np.where(a > 0, (idx >> np.maximum(a - 1, 0)) & 1, 0)
        bit_b = np.where(b > 0, (idx >> np.maximum(b - 1, 0)) & 1, 0)
        return (bit_a ^ bit_b).astype(np.uint8)

    def canonicalize(self, signs: Sequence[int]) -> CanonicalForm:
        g = self.graph
        m = self._m
        base = np.array([1 if s < 0 else 0 for s in signs], dtype=np.uint8)
        if len(base) != m:
            raise ValueError("sign vector length mismatch")
        # permuted sign bit-vectors, one row per automorphism
        permuted = np.zeros((len(self.autos), m), dtype=np.uint8)
        rows = np.arange(len(self.autos))[:, None]
        permuted[rows, self.edge_perms] = base[None, :]
        best_key = None
        best = None  # (auto_idx, switch_idx)
        for start in range(0, self._nswitch, _SWITCH_CHUNK):
            stop = min(start + _SWITCH_CHUNK, self._nswitch)
            flips = self._flip_block(start, stop)
            switched = permuted[:, None, :] ^ flips[None, :, :]
            counts = switched.sum(axis=2, dtype=np.int64)
            packed = switched.astype(np.int64) @ self._bit_weights
            keys = (counts << m) | packed
            flat = int(np.argmin(keys))
            key = int(keys.flat[flat])
            if best_key is None or key < best_key:
                best_key = key
                a_idx, s_off = divmod(flat, stop - start)
                best = (a_idx, start + s_off)
        a_idx, s_idx = best
        members = frozenset(
            v for v in range(1, g.vertex_count) if (s_idx >> (v - 1)) & 1
        )
        rep_bits = (best_key & ((1 << m) - 1))
        rep_signs = [
            -1 if (rep_bits >> (m - 1 - i)) & 1 else 1 for i in range(m)
        ]
        return CanonicalForm(
            representative=g.with_signs(rep_signs),
            min_negatives=best_key >> m,
            witness_switching=members,
            witness_automorphism=self.autos[a_idx],
        )


def min_negative_edges(g: SignedGraph) -> CanonicalForm:
    """Global minimum of negative edges over all switchings (identity auto)."""
    identity = tuple(range(g.vertex_count))
    return SwitchingCanonicalizer(g, [identity]).canonicalize(g.signs)


def canonical_form(g: SignedGraph, autos: Sequence[Sequence[int]]) -> CanonicalForm:
    """Canonical representative under switching and the given automorphisms."""
    for a in autos:
        if not is_automorphism(g, a):
            raise ValueError("autos contains a non-automorphism")
    return SwitchingCanonicalizer(g, autos).canonicalize(g.signs)


def is_flow_admissible(g: SignedGraph) -> bool:
    """Admissibility for connected bridgeless signed graphs.

    True iff the switching-minimal number of negative edges is anything but
    one.  Bridged or disconnected inputs are rejected: every graph this
    package targets is bridgeless cubic.
    """
    if g.vertex_count == 0:
        raise UnsupportedGraphError("empty graph")
    if len(connected_components(g)) != 1:
        raise UnsupportedGraphError("disconnected graphs are not supported")
    if find_bridges(g):
        raise UnsupportedGraphError("graphs with bridges are not supported")
    return min_negative_edges(g).min_negatives != 1


def graph_to_json(g: SignedGraph) -> dict:
    return {"vertices": g.vertex_count, "edges": [[a, b, s] for a, b, s in g.edges]}


def graph_from_json(data) -> SignedGraph:
    if isinstance(data, str):
        data = json.loads(data)
    if not isinstance(data, dict) or "vertices" not in data or "edges" not in data:
        raise ValueError('graph JSON needs keys "vertices" and "edges"')
    return SignedGraph(int(data["vertices"]), tuple(tuple(e) for e in data["edges"]))
