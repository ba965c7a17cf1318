"""Circular and Moebius ladder specs: builders, symmetries, switching minima.

A ladder on n rungs has top vertices v_0..v_{n-1} (indices 0..n-1) and bottom
vertices u_0..u_{n-1} (indices n..2n-1).  Its 3n edges follow a fixed global
order used everywhere (flows, canonical tie-breaks, JSON):

    rungs   0..n-1:   v_i u_i
    top     0..n-1:   v_i v_{i+1} for i < n-1, then the top closure
    bottom  0..n-1:   u_i u_{i+1} for i < n-1, then the bottom closure

Circular closure joins v_{n-1}v_0 and u_{n-1}u_0; the Moebius closure twists:
v_{n-1}u_0 and u_{n-1}v_0.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from . import graphs
from .graphs import CanonicalForm, SignedGraph

CIRCULAR = "circular"
MOEBIUS = "moebius"

# Ladder orders whose underlying graph has symmetries beyond the natural
# rotation/reflection/rail-swap group: the 4-rung prism (the cube), and the
# 2- and 3-rung Moebius ladders (K_4 and K_{3,3}).
_EXTRA_SYMMETRY = {(CIRCULAR, 4), (MOEBIUS, 2), (MOEBIUS, 3)}

_auto_cache: dict = {}


@dataclass(frozen=True)
class LadderSpec:
    """Sign data of a circular or Moebius ladder with n rungs."""

    kind: str
    n: int
    rungs: tuple[int, ...]
    top: tuple[int, ...]
    bottom: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in (CIRCULAR, MOEBIUS):
            raise ValueError(f"kind must be '{CIRCULAR}' or '{MOEBIUS}'")
        minimum = 3 if self.kind == CIRCULAR else 2
        if self.n < minimum:
            raise ValueError(
                f"{self.kind} ladders need at least {minimum} rungs (got {self.n})"
            )
        for name, vec in (("rungs", self.rungs), ("top", self.top),
                          ("bottom", self.bottom)):
            vec = tuple(int(s) for s in vec)
            if len(vec) != self.n:
                raise ValueError(f"{name} must have length n={self.n}")
            if any(s not in (1, -1) for s in vec):
                raise ValueError(f"{name} entries must be +1 or -1")
            object.__setattr__(self, name, vec)

    @property
    def negative_count(self) -> int:
        return sum(1 for s in self.rungs + self.top + self.bottom if s < 0)

    def signs(self) -> tuple[int, ...]:
        return self.rungs + self.top + self.bottom


def all_positive(kind: str, n: int) -> LadderSpec:
    one = (1,) * n
    return LadderSpec(kind=kind, n=n, rungs=one, top=one, bottom=one)


def spec_from_signs(kind: str, n: int, signs: Sequence[int]) -> LadderSpec:
    if len(signs) != 3 * n:
        raise ValueError("sign vector must have length 3n")
    return LadderSpec(
        kind=kind,
        n=n,
        rungs=tuple(signs[:n]),
        top=tuple(signs[n:2 * n]),
        bottom=tuple(signs[2 * n:]),
    )


def rung_edge(i: int) -> int:
    return i


def top_edge(spec_or_n, i: int) -> int:
    n = spec_or_n.n if isinstance(spec_or_n, LadderSpec) else spec_or_n
    return n + i


def bottom_edge(spec_or_n, i: int) -> int:
    n = spec_or_n.n if isinstance(spec_or_n, LadderSpec) else spec_or_n
    return 2 * n + i


def build(spec: LadderSpec) -> SignedGraph:
    """Cubic signed graph on 2n vertices in the fixed global edge order."""
    n = spec.n
    edges = []
    for i in range(n):
        edges.append((i, n + i, spec.rungs[i]))
    for i in range(n - 1):
        edges.append((i, i + 1, spec.top[i]))
    if spec.kind == CIRCULAR:
        edges.append((n - 1, 0, spec.top[n - 1]))
    else:
        edges.append((n - 1, n, spec.top[n - 1]))
    for i in range(n - 1):
        edges.append((n + i, n + i + 1, spec.bottom[i]))
    if spec.kind == CIRCULAR:
        edges.append((2 * n - 1, n, spec.bottom[n - 1]))
    else:
        edges.append((2 * n - 1, 0, spec.bottom[n - 1]))
    return SignedGraph(vertex_count=2 * n, edges=tuple(edges))


def spec_from_graph_signs(spec: LadderSpec, signs: Sequence[int]) -> LadderSpec:
    """Reinterpret a sign vector in the global edge order as a spec."""
    return spec_from_signs(spec.kind, spec.n, signs)


# ---------------------------------------------------------------------------
# symmetries


def rotation_perm(kind: str, n: int, r: int) -> tuple[int, ...]:
    """Vertex permutation shifting slice j to slice j - r.

    For circular ladders rotations act separately on the two rails; for
    Moebius ladders they rotate the single 2n-cycle formed by both rails, so
    rotating by n is the rail swap.
    """
    perm = [0] * (2 * n)
    if kind == CIRCULAR:
        r %= n
        for i in range(n):
            perm[i] = (i + r) % n
            perm[n + i] = n + (i + r) % n
    else:
        r %= 2 * n
        for pos in range(2 * n):
            # cycle position: 0..n-1 are v's, n..2n-1 are u's
            perm[pos] = (pos + r) % (2 * n)
    return tuple(perm)


def reflection_perm(kind: str, n: int) -> tuple[int, ...]:
    """Mirror slice j to slice n-1-j on both rails (valid for both kinds)."""
    perm = [0] * (2 * n)
    for i in range(n):
        perm[i] = n - 1 - i
        perm[n + i] = n + (n - 1 - i)
    return tuple(perm)


def rail_swap_perm(n: int) -> tuple[int, ...]:
    perm = [0] * (2 * n)
    for i in range(n):
        perm[i] = n + i
        perm[n + i] = i
    return tuple(perm)


def ladder_automorphisms(kind: str, n: int) -> list[tuple[int, ...]]:
    """Automorphism group used for canonical forms and class enumeration.

    The natural group (rotations, reflection, rail swap; order 4n) equals the
    full automorphism group of the underlying graph except for the cube
    (4-rung prism), K_4 and K_{3,3}, where the full group is computed once by
    brute force so that class counts agree with switching isomorphism proper.
    """
    key = (kind, n)
    if key in _auto_cache:
        return _auto_cache[key]
    if key in _EXTRA_SYMMETRY:
        g = build(all_positive(kind, n))
        autos = graphs.graph_automorphisms(g)
    else:
        autos = []
        seen = set()
        steps = n if kind == CIRCULAR else 2 * n
        refl = reflection_perm(kind, n)
        swap = rail_swap_perm(n)
        for r in range(steps):
            rot = rotation_perm(kind, n, r)
            for with_refl in (False, True):
                base = tuple(rot[refl[i]] for i in range(2 * n)) if with_refl else rot
                for with_swap in (False, True):
                    perm = tuple(base[swap[i]] for i in range(2 * n)) if with_swap else base
                    if perm not in seen:
                        seen.add(perm)
                        autos.append(perm)
        autos.sort()
    _auto_cache[key] = autos
    return autos


def permute_spec(spec: LadderSpec, perm: Sequence[int]) -> LadderSpec:
    """Spec with signs pushed through a structure-preserving automorphism."""
    g = build(spec)
    return spec_from_graph_signs(spec, graphs.permute_signs(g, perm))


def rotate_spec(spec: LadderSpec, r: int) -> LadderSpec:
    """Relabel so old slice j+r becomes new slice j (O(n), no graph build)."""
    n = spec.n
    if spec.kind == CIRCULAR:
        r %= n
        rot = lambda vec: tuple(vec[(j + r) % n] for j in range(n))
        return LadderSpec(spec.kind, n, rot(spec.rungs), rot(spec.top),
                          rot(spec.bottom))
    r %= 2 * n
    rails = spec.top + spec.bottom
    rolled = tuple(rails[(j + r) % (2 * n)] for j in range(2 * n))
    rungs = tuple(spec.rungs[(j + r) % n] for j in range(n))
    return LadderSpec(spec.kind, n, rungs, rolled[:n], rolled[n:])


# ---------------------------------------------------------------------------
# switching minima (cut-sweep dynamic program, exact for any n)


def min_negatives_spec(spec: LadderSpec) -> tuple[int, frozenset[int]]:
    """Exact switching minimum of negative edges, with a witness set.

    Left-to-right dynamic program over rung slices; the state is the
    switch/no-switch choice at the current slice's two vertices, with v_0
    pinned unswitched (switching every vertex is the identity on signs) and
    the initial bottom choice kept in the state for the closure edges.
    O(n) time with 8 states.
    """
    n = spec.n
    # state: (x_u0, x_vi, x_ui), each ±1; x_v0 pinned to +1
    def rung_cost(i, xv, xu):
        return 1 if spec.rungs[i] * xv * xu < 0 else 0

    def rail_cost(sign, xa, xb):
        return 1 if sign * xa * xb < 0 else 0

    best = {}
    back = [{} for _ in range(n)]
    for xu0 in (1, -1):
        state = (xu0, 1, xu0)
        best[state] = rung_cost(0, 1, xu0)
    for i in range(1, n):
        nxt = {}
        for (xu0, xv, xu), cost in best.items():
            for nxv in (1, -1):
                for nxu in (1, -1):
                    c = (
                        cost
                        + rail_cost(spec.top[i - 1], xv, nxv)
                        + rail_cost(spec.bottom[i - 1], xu, nxu)
                        + rung_cost(i, nxv, nxu)
                    )
                    key = (xu0, nxv, nxu)
                    if key not in nxt or c < nxt[key]:
                        nxt[key] = c
                        back[i][key] = (xu0, xv, xu)
        best = nxt
    total_best = None
    end_state = None
    for (xu0, xv, xu), cost in best.items():
        if spec.kind == CIRCULAR:
            c = (
                cost
                + rail_cost(spec.top[n - 1], xv, 1)
                + rail_cost(spec.bottom[n - 1], xu, xu0)
            )
        else:
            c = (
                cost
                + rail_cost(spec.top[n - 1], xv, xu0)
                + rail_cost(spec.bottom[n - 1], xu, 1)
            )
        if total_best is None or c < total_best:
            total_best = c
            end_state = (xu0, xv, xu)
    # reconstruct the witness switching set
    members = set()
    state = end_state
    for i in range(n - 1, 0, -1):
        xu0, xv, xu = state
        if xv < 0:
            members.add(i)
        if xu < 0:
            members.add(n + i)
        state = back[i][state]
    xu0, xv, xu = state
    if xv < 0:
        members.add(0)
    if xu < 0:
        members.add(n)
    return total_best, frozenset(members)


def spec_admissible(spec: LadderSpec) -> bool:
    """Flow admissibility of a ladder spec (ladders are bridgeless cubic)."""
    return min_negatives_spec(spec)[0] != 1


def canonical_spec(spec: LadderSpec) -> CanonicalForm:
    """Full canonical form under the ladder group (desk-scale n only)."""
    g = build(spec)
    return graphs.canonical_form(g, ladder_automorphisms(spec.kind, spec.n))


# ---------------------------------------------------------------------------
# JSON


def spec_to_json(spec: LadderSpec) -> dict:
    return {
        "kind": spec.kind,
        "n": spec.n,
        "rungs": list(spec.rungs),
        "top": list(spec.top),
        "bottom": list(spec.bottom),
    }


def spec_from_json(data) -> LadderSpec:
    if isinstance(data, str):
        data = json.loads(data)
    required = {"kind", "n", "rungs", "top", "bottom"}
    if not isinstance(data, dict) or not required.issubset(data):
        raise ValueError(f"ladder JSON needs keys {sorted(required)}")
    return LadderSpec(
        kind=data["kind"],
        n=int(data["n"]),
        rungs=tuple(int(s) for s in data["rungs"]),
        top=tuple(int(s) for s in data["top"]),
        bottom=tuple(int(s) for s in data["bottom"]),
    )
