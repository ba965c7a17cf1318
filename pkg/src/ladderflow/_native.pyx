# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled backend for the two hot kernels.

Mirrors the contracts of ``ladderflow._pure``: an exhaustive nowhere-zero
k-flow backtracking search with unit propagation, and the boolean
transfer-matrix chain used by the ladder interface DP.
"""

from libc.stdlib cimport malloc, free
from libc.string cimport memset


cdef struct SearchCtx:
    int m
    int nv
    int k
    int limit
    int *lo
    int *hi
    int *sg
    int *order
    int *values
    int *vsum
    int *vleft
    int *trail
    int trail_len
    # per-vertex incidence in CSR form
    int *inc_start
    int *inc_edge
    int *inc_coef


cdef bint _assign_cascade(SearchCtx *ctx, int e0, int val0):
    """Assign e0=val0 plus all forced consequences; False on contradiction.

    Assignments stay on the trail either way; the caller unwinds to its mark.
    """
    cdef int stack_buf[4096]
    cdef int depth = 0
    cdef int e, val, side, v, coef, left, s, f, j, fcoef, maxval
    maxval = ctx.k - 1
    stack_buf[0] = e0
    stack_buf[1] = val0
    depth = 1
    while depth > 0:
        depth -= 1
        e = stack_buf[2 * depth]
        val = stack_buf[2 * depth + 1]
        if ctx.values[e] != 0:
            if ctx.values[e] != val:
                return False
            continue
        if val == 0 or val > maxval or val < -maxval:
            return False
        ctx.values[e] = val
        ctx.trail[ctx.trail_len] = e
        ctx.trail_len += 1
        for side in range(2):
            if side == 0:
                v = ctx.lo[e]
                coef = -1
            else:
                v = ctx.hi[e]
                coef = ctx.sg[e]
            ctx.vsum[v] += coef * val
            ctx.vleft[v] -= 1
            left = ctx.vleft[v]
            s = ctx.vsum[v]
            if s < 0:
                s = -s
            if s > maxval * left:
                return False
            if left == 1:
                for j in range(ctx.inc_start[v], ctx.inc_start[v + 1]):
                    f = ctx.inc_edge[j]
                    if ctx.values[f] == 0:
                        fcoef = ctx.inc_coef[j]
                        if depth * 2 + 2 > 4096:
                            return False  # unreachable at supported sizes
                        stack_buf[2 * depth] = f
                        stack_buf[2 * depth + 1] = -ctx.vsum[v] * fcoef
                        depth += 1
                        break
    return True


cdef void _undo(SearchCtx *ctx, int mark):
    cdef int e, val, side, v, coef
    while ctx.trail_len > mark:
        ctx.trail_len -= 1
        e = ctx.trail[ctx.trail_len]
        val = ctx.values[e]
        ctx.values[e] = 0
        for side in range(2):
            if side == 0:
                v = ctx.lo[e]
                coef = -1
            else:
                v = ctx.hi[e]
                coef = ctx.sg[e]
            ctx.vsum[v] -= coef * val
            ctx.vleft[v] += 1


cdef bint _dfs(SearchCtx *ctx, int pos, list solutions):
    """Returns False once the solution limit is reached."""
    cdef int e, a, val, mark, i
    while pos < ctx.m and ctx.values[ctx.order[pos]] != 0:
        pos += 1
    if pos == ctx.m:
        solutions.append(
            tuple([ctx.values[i] for i in range(ctx.m)])
        )
        return len(solutions) < ctx.limit
    e = ctx.order[pos]
    for a in range(1, ctx.k):
        for val in (a, -a):
            mark = ctx.trail_len
            if _assign_cascade(ctx, e, val):
                if not _dfs(ctx, pos + 1, solutions):
                    _undo(ctx, mark)
                    return False
            _undo(ctx, mark)
    return True


def search_flows(vertex_count, edge_lo, edge_hi, edge_sign, k, base_order, limit):
    """See ``ladderflow._pure.search_flows``; identical contract."""
    cdef int m = len(edge_lo)
    cdef int nv = vertex_count
    cdef SearchCtx ctx
    cdef int i, v
    if m == 0:
        return [()]
    ctx.m = m
    ctx.nv = nv
    ctx.k = k
    ctx.limit = limit
    ctx.trail_len = 0
    solutions = []
    ctx.lo = <int *> malloc(m * sizeof(int))
    ctx.hi = <int *> malloc(m * sizeof(int))
    ctx.sg = <int *> malloc(m * sizeof(int))
    ctx.order = <int *> malloc(m * sizeof(int))
    ctx.values = <int *> malloc(m * sizeof(int))
    ctx.trail = <int *> malloc(m * sizeof(int))
    ctx.vsum = <int *> malloc(nv * sizeof(int))
    ctx.vleft = <int *> malloc(nv * sizeof(int))
    ctx.inc_start = <int *> malloc((nv + 1) * sizeof(int))
    ctx.inc_edge = <int *> malloc(2 * m * sizeof(int))
    ctx.inc_coef = <int *> malloc(2 * m * sizeof(int))
    try:
        for i in range(m):
            ctx.lo[i] = edge_lo[i]
            ctx.hi[i] = edge_hi[i]
            ctx.sg[i] = edge_sign[i]
            ctx.order[i] = base_order[i]
            ctx.values[i] = 0
        memset(ctx.vsum, 0, nv * sizeof(int))
        memset(ctx.vleft, 0, nv * sizeof(int))
        for i in range(m):
            ctx.vleft[ctx.lo[i]] += 1
            ctx.vleft[ctx.hi[i]] += 1
        ctx.inc_start[0] = 0
        # counting sort of (vertex, edge, coef) incidences
        for v in range(nv):
            ctx.inc_start[v + 1] = ctx.inc_start[v] + ctx.vleft[v]
        tmp = [ctx.inc_start[v] for v in range(nv)]
        for i in range(m):
            v = ctx.lo[i]
            ctx.inc_edge[tmp[v]] = i
            ctx.inc_coef[tmp[v]] = -1
            tmp[v] += 1
            v = ctx.hi[i]
            ctx.inc_edge[tmp[v]] = i
            ctx.inc_coef[tmp[v]] = ctx.sg[i]
            tmp[v] += 1
        _dfs(&ctx, 0, solutions)
        return solutions
    finally:
        free(ctx.lo)
        free(ctx.hi)
        free(ctx.sg)
        free(ctx.order)
        free(ctx.values)
        free(ctx.trail)
        free(ctx.vsum)
        free(ctx.vleft)
        free(ctx.inc_start)
        free(ctx.inc_edge)
        free(ctx.inc_coef)


def dp_chain_reachable(seed, mat_ids, mats, final):
    """See ``ladderflow._pure.dp_chain_reachable``; identical contract.

    Bitset rows: with S states a row is ceil(S/64) words, and one slice costs
    O(S^2) word operations.
    """
    cdef int S = seed.shape[0]
    cdef int words = (S + 63) // 64
    cdef int nmat = mats.shape[0]
    cdef int nmid = len(mat_ids)
    cdef unsigned long long *matbits
    cdef unsigned long long *cur
    cdef unsigned long long *nxt
    cdef unsigned long long *tmp
    cdef int c, s, w, t, j, mid
    cdef unsigned char[:, :] seed_v = seed
    cdef unsigned char[:, :, :] mats_v = mats
    cdef unsigned char[:, :] final_v = final
    cdef long[:] ids_v
    import numpy as _np
    ids_arr = _np.asarray(mat_ids, dtype=_np.int64)
    ids_v = ids_arr

    matbits = <unsigned long long *> malloc(nmat * S * words * 8)
    cur = <unsigned long long *> malloc(S * words * 8)
    nxt = <unsigned long long *> malloc(S * words * 8)
    if matbits == NULL or cur == NULL or nxt == NULL:
        if matbits != NULL:
            free(matbits)
        if cur != NULL:
            free(cur)
        if nxt != NULL:
            free(nxt)
        raise MemoryError()
    try:
        memset(matbits, 0, nmat * S * words * 8)
        for mid in range(nmat):
            for s in range(S):
                for t in range(S):
                    if mats_v[mid, s, t]:
                        matbits[(mid * S + s) * words + (t >> 6)] |= (
                            <unsigned long long> 1
                        ) << (t & 63)
        memset(cur, 0, S * words * 8)
        for c in range(S):
            for t in range(S):
                if seed_v[c, t]:
                    cur[c * words + (t >> 6)] |= (
                        <unsigned long long> 1
                    ) << (t & 63)
        for j in range(nmid):
            mid = ids_v[j]
            memset(nxt, 0, S * words * 8)
            for c in range(S):
                for s in range(S):
                    if cur[c * words + (s >> 6)] & (
                        (<unsigned long long> 1) << (s & 63)
                    ):
                        for w in range(words):
                            nxt[c * words + w] |= matbits[(mid * S + s) * words + w]
            tmp = cur
            cur = nxt
            nxt = tmp
        for c in range(S):
            for s in range(S):
                if final_v[s, c] and (
                    cur[c * words + (s >> 6)]
                    & ((<unsigned long long> 1) << (s & 63))
                ):
                    return True
        return False
    finally:
        free(matbits)
        free(cur)
        free(nxt)
