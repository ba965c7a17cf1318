"""Pure-Python backend for the two hot kernels.

Same contracts as the compiled extension ``ladderflow._native``; selected at
import time by ``ladderflow.kernels`` when the extension is unavailable or
LADDERFLOW_PURE is set.
"""

from __future__ import annotations

import numpy as np


def search_flows(vertex_count, edge_lo, edge_hi, edge_sign, k, base_order, limit):
    """Exhaustive backtracking search for nowhere-zero k-flow value vectors.

    Edges are assigned in ``base_order`` with unit propagation: whenever a
    vertex has one unassigned incident edge left, that edge's value is forced
    by Kirchhoff's law; a vertex whose remaining edges cannot absorb its
    current imbalance prunes the branch.  Returns up to ``limit`` solutions
    (each a tuple of per-edge values relative to the reference orientation),
    in a deterministic order.  An empty list is an exhaustiveness proof that
    no nowhere-zero k-flow exists.
    """
    m = len(edge_lo)
    max_val = k - 1
    # per-vertex incidence: (edge, coefficient); lo endpoint always -1,
    # hi endpoint carries the edge sign
    incidence = [[] for _ in range(vertex_count)]
    for e in range(m):
        incidence[edge_lo[e]].append((e, -1))
        incidence[edge_hi[e]].append((e, edge_sign[e]))

    values = [0] * m
    vsum = [0] * vertex_count
    vleft = [len(incidence[v]) for v in range(vertex_count)]
    trail = []  # assigned edges, for undo
    solutions = []

    branch_values = []
    for a in range(1, k):
        branch_values.append(a)
        branch_values.append(-a)

    def assign_cascade(e0, val0):
        """Assign e0 and cascade forced edges; False on contradiction.

        Partial work stays on the trail either way; the caller unwinds.
        """
        pending = [(e0, val0)]
        while pending:
            e, val = pending.pop()
            if values[e] != 0:
                if values[e] != val:
                    return False
                continue
            if val == 0 or abs(val) > max_val:
                return False
            values[e] = val
            trail.append(e)
            for v, coef in ((edge_lo[e], -1), (edge_hi[e], edge_sign[e])):
                vsum[v] += coef * val
                vleft[v] -= 1
                left = vleft[v]
                s = vsum[v]
                if abs(s) > max_val * left:
                    return False
                if left == 1:
                    for f, fcoef in incidence[v]:
                        if values[f] == 0:
                            pending.append((f, -s * fcoef))
                            break
        return True

    def undo(mark):
        while len(trail) > mark:
            e = trail.pop()
            val = values[e]
            values[e] = 0
            for v, coef in ((edge_lo[e], -1), (edge_hi[e], edge_sign[e])):
                vsum[v] -= coef * val
                vleft[v] += 1

    def dfs(pos):
        """Returns False once the solution limit is hit."""
        while pos < m and values[base_order[pos]] != 0:
            pos += 1
        if pos == m:
            solutions.append(tuple(values))
            return len(solutions) < limit
        e = base_order[pos]
        for val in branch_values:
            mark = len(trail)
            if assign_cascade(e, val):
                if not dfs(pos + 1):
                    undo(mark)
                    return False
            undo(mark)
        return True

    if m == 0:
        return [()]
    dfs(0)
    return solutions


def dp_chain_reachable(seed, mat_ids, mats, final):
    """Boolean transfer-matrix chain: any (start, state) path accepted?

    ``seed[c, s]`` marks states s reachable from closure assignment c after
    the first slice, ``mats[mat_ids[j]]`` is the transition relation of each
    middle slice, and ``final[s, c]`` marks closure-consistent endings.  Uses
    float32 BLAS products with re-thresholding, which keeps the chain linear
    in the number of slices.
    """
    reach = seed.astype(np.float32)
    mats_f = mats.astype(np.float32)
    for mid in mat_ids:
        reach = (reach @ mats_f[mid] > 0.0).astype(np.float32)
    return bool((reach.astype(bool) & final.astype(bool).T).any())
