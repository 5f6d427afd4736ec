# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels; see ``_pycore`` for the reference semantics.

Sums are 64-bit. Point counts are capped well below the point where block or
label sums could overflow.
"""

from libc.stdlib cimport malloc, calloc, free

ctypedef long long i64

cdef enum:
    MAXMIN = 0
    MINDIFF = 1
    MINRATIO = 2


cdef inline bint accepts(int objective, i64 num, i64 den, i64 t_num, i64 t_den, bint strict) nogil:
    cdef i64 lhs = num * t_den
    cdef i64 rhs = t_num * den
    if objective == MAXMIN:
        return lhs > rhs if strict else lhs >= rhs
    return lhs < rhs if strict else lhs <= rhs


cdef struct PointState:
    int n
    int nb
    int objective
    int *blocks        # nb * 3
    int *inc_start     # n + 1
    int *inc           # 3 * nb
    i64 *assigned_sum
    int *free_slots
    int *label
    int *best
    i64 top[4]
    i64 t_num
    i64 t_den
    bint strict
    i64 stop_num
    i64 stop_den
    i64 nodes
    i64 budget
    bint found
    i64 num
    i64 den
    bint stopped
    bint aborted


cdef bint point_feasible(PointState *s, int lab) nogil:
    cdef i64 lo = lab + 1
    cdef i64 umin = 0, lmax = 0, hi_b, lo_b
    cdef int b, k
    for b in range(s.nb):
        k = s.free_slots[b]
        hi_b = s.assigned_sum[b] + s.top[k]
        lo_b = s.assigned_sum[b] + k * lo + k * (k - 1) // 2
        if b == 0 or hi_b < umin:
            umin = hi_b
        if b == 0 or lo_b > lmax:
            lmax = lo_b
    if s.objective == MAXMIN:
        return accepts(MAXMIN, umin, 1, s.t_num, s.t_den, s.strict)
    if s.objective == MINDIFF:
        return accepts(MINDIFF, lmax - umin, 1, s.t_num, s.t_den, s.strict)
    return accepts(MINRATIO, lmax, umin, s.t_num, s.t_den, s.strict)


cdef inline void point_place(PointState *s, int p, int lab, int sign) nogil:
    cdef int q
    if sign > 0:
        s.label[p] = lab
    else:
        s.label[p] = -1
    for q in range(s.inc_start[p], s.inc_start[p + 1]):
        s.assigned_sum[s.inc[q]] += sign * lab
        s.free_slots[s.inc[q]] -= sign


cdef void point_leaf(PointState *s) nogil:
    cdef i64 lo_sum = s.assigned_sum[0], hi_sum = s.assigned_sum[0], num, den
    cdef int b
    for b in range(1, s.nb):
        if s.assigned_sum[b] < lo_sum:
            lo_sum = s.assigned_sum[b]
        if s.assigned_sum[b] > hi_sum:
            hi_sum = s.assigned_sum[b]
    if s.objective == MAXMIN:
        num = lo_sum
        den = 1
    elif s.objective == MINDIFF:
        num = hi_sum - lo_sum
        den = 1
    else:
        num = hi_sum
        den = lo_sum
    if not accepts(s.objective, num, den, s.t_num, s.t_den, s.strict):
        return
    s.found = True
    s.num = num
    s.den = den
    for b in range(s.n):
        s.best[b] = s.label[b]
    s.t_num = num
    s.t_den = den
    s.strict = True
    if s.stop_den and not accepts(s.objective, s.stop_num, s.stop_den, num, den, True):
        s.stopped = True


cdef void point_dfs(PointState *s, int lab) nogil:
    cdef int p
    if lab == s.n:
        point_leaf(s)
        return
    for p in range(s.n):
        if s.label[p] >= 0:
            continue
        if s.budget and s.nodes >= s.budget:
            s.aborted = True
            return
        s.nodes += 1
        point_place(s, p, lab, 1)
        if point_feasible(s, lab):
            point_dfs(s, lab + 1)
        point_place(s, p, lab, -1)
        if s.stopped or s.aborted:
            return


def point_search(blocks, int n, int objective, int root, i64 t_num, i64 t_den, bint strict,
                 i64 stop_num, i64 stop_den, i64 budget):
    cdef PointState s
    cdef int nb = len(blocks), b, j, p, k
    s.n = n
    s.nb = nb
    s.objective = objective
    s.blocks = <int *> malloc(3 * nb * sizeof(int))
    s.inc_start = <int *> calloc(n + 1, sizeof(int))
    s.inc = <int *> malloc(3 * nb * sizeof(int))
    s.assigned_sum = <i64 *> calloc(nb, sizeof(i64))
    s.free_slots = <int *> malloc(nb * sizeof(int))
    s.label = <int *> malloc(n * sizeof(int))
    s.best = <int *> malloc(n * sizeof(int))
    cdef int *fill = <int *> calloc(n, sizeof(int))
    try:
        for b in range(nb):
            for j in range(3):
                p = blocks[b][j]
                s.blocks[3 * b + j] = p
                s.inc_start[p + 1] += 1
            s.free_slots[b] = 3
        for p in range(n):
            s.inc_start[p + 1] += s.inc_start[p]
            s.label[p] = -1
        for b in range(nb):
            for j in range(3):
                p = s.blocks[3 * b + j]
                s.inc[s.inc_start[p] + fill[p]] = b
                fill[p] += 1
        s.top[0] = 0
        for k in range(1, 4):
            s.top[k] = s.top[k - 1] + n - k
        s.t_num = t_num
        s.t_den = t_den
        s.strict = strict
        s.stop_num = stop_num
        s.stop_den = stop_den
        s.nodes = 0
        s.budget = budget
        s.found = False
        s.num = 0
        s.den = 1
        s.stopped = False
        s.aborted = False
        with nogil:
            if s.budget and s.nodes >= s.budget:
                s.aborted = True
            else:
                s.nodes += 1
                point_place(&s, root, 0, 1)
                if point_feasible(&s, 0):
                    point_dfs(&s, 1)
        witness = [s.best[p] for p in range(n)] if s.found else None
        return (bool(s.found), s.num, s.den, witness, s.nodes, not s.aborted, bool(s.stopped))
    finally:
        free(s.blocks)
        free(s.inc_start)
        free(s.inc)
        free(s.assigned_sum)
        free(s.free_slots)
        free(s.label)
        free(s.best)
        free(fill)


cdef struct DualState:
    int n
    int nb
    int *blocks
    i64 *cur
    int *free_slots
    int *label
    int *best
    i64 *top
    i64 total
    i64 t
    bint strict
    i64 stop_num
    i64 nodes
    i64 budget
    bint found
    i64 num
    bint stopped
    bint aborted


cdef bint dual_feasible(DualState *s, int lab) nogil:
    cdef i64 need = s.t + 1 if s.strict else s.t
    cdef i64 slack = s.total - s.n * need
    cdef i64 lo = lab + 1, waste = 0, w
    cdef int p, k
    for p in range(s.n):
        k = s.free_slots[p]
        if s.cur[p] + s.top[k] < need:
            return False
        w = s.cur[p] + k * lo + k * (k - 1) // 2 - need
        if w > 0:
            waste += w
    return waste <= slack


cdef inline void dual_place(DualState *s, int b, int lab, int sign) nogil:
    cdef int j, p
    if sign > 0:
        s.label[b] = lab
    else:
        s.label[b] = -1
    for j in range(3):
        p = s.blocks[3 * b + j]
        s.cur[p] += sign * lab
        s.free_slots[p] -= sign


cdef void dual_leaf(DualState *s) nogil:
    cdef i64 value = s.cur[0]
    cdef int p, b
    for p in range(1, s.n):
        if s.cur[p] < value:
            value = s.cur[p]
    if not (value > s.t if s.strict else value >= s.t):
        return
    s.found = True
    s.num = value
    for b in range(s.nb):
        s.best[b] = s.label[b]
    s.t = value
    s.strict = True
    if s.stop_num >= 0 and value >= s.stop_num:
        s.stopped = True


cdef void dual_dfs(DualState *s, int lab) nogil:
    cdef int b
    if lab == s.nb:
        dual_leaf(s)
        return
    for b in range(s.nb):
        if s.label[b] >= 0:
            continue
        if s.budget and s.nodes >= s.budget:
            s.aborted = True
            return
        s.nodes += 1
        dual_place(s, b, lab, 1)
        if dual_feasible(s, lab):
            dual_dfs(s, lab + 1)
        dual_place(s, b, lab, -1)
        if s.stopped or s.aborted:
            return


def dual_search(blocks, int n, int root, i64 t_num, bint strict, i64 stop_num, i64 budget):
    cdef DualState s
    cdef int nb = len(blocks), r = (n - 1) // 2, b, j, p, k
    s.n = n
    s.nb = nb
    s.blocks = <int *> malloc(3 * nb * sizeof(int))
    s.cur = <i64 *> calloc(n, sizeof(i64))
    s.free_slots = <int *> malloc(n * sizeof(int))
    s.label = <int *> malloc(nb * sizeof(int))
    s.best = <int *> malloc(nb * sizeof(int))
    s.top = <i64 *> calloc(r + 1, sizeof(i64))
    try:
        for b in range(nb):
            for j in range(3):
                s.blocks[3 * b + j] = blocks[b][j]
            s.label[b] = -1
        for p in range(n):
            s.free_slots[p] = r
        for k in range(1, r + 1):
            s.top[k] = s.top[k - 1] + nb - k
        s.total = 3 * <i64> nb * (nb - 1) // 2
        s.t = t_num
        s.strict = strict
        s.stop_num = stop_num
        s.nodes = 0
        s.budget = budget
        s.found = False
        s.num = 0
        s.stopped = False
        s.aborted = False
        with nogil:
            if s.budget and s.nodes >= s.budget:
                s.aborted = True
            else:
                s.nodes += 1
                dual_place(&s, root, 0, 1)
                if dual_feasible(&s, 0):
                    dual_dfs(&s, 1)
        witness = [s.best[b] for b in range(nb)] if s.found else None
        return (bool(s.found), s.num, 1, witness, s.nodes, not s.aborted, bool(s.stopped))
    finally:
        free(s.blocks)
        free(s.cur)
        free(s.free_slots)
        free(s.label)
        free(s.best)
        free(s.top)


cdef struct ReducedState:
    int n
    int nb
    int half
    int *blocks
    int *others       # 2 * half
    int *comp_start   # half + 1
    int *comp         # nb
    int *label
    int *best
    bint *used
    i64 t
    bint strict
    i64 nodes
    i64 budget
    bint found
    i64 num
    bint stopped
    bint aborted


cdef bint reduced_ok(ReducedState *s, int d) nogil:
    cdef i64 need = s.t + 1 if s.strict else s.t
    cdef int q, b
    for q in range(s.comp_start[d], s.comp_start[d + 1]):
        b = s.comp[q]
        if s.label[s.blocks[3 * b]] + s.label[s.blocks[3 * b + 1]] + s.label[s.blocks[3 * b + 2]] < need:
            return False
    return True


cdef void reduced_leaf(ReducedState *s) nogil:
    cdef i64 value = -1, v
    cdef int b, p
    for b in range(s.nb):
        v = s.label[s.blocks[3 * b]] + s.label[s.blocks[3 * b + 1]] + s.label[s.blocks[3 * b + 2]]
        if value < 0 or v < value:
            value = v
    if not (value > s.t if s.strict else value >= s.t):
        return
    s.found = True
    s.num = value
    for p in range(s.n):
        s.best[p] = s.label[p]
    s.t = value
    s.strict = True
    if value >= s.n:
        s.stopped = True


cdef void reduced_dfs(ReducedState *s, int d) nogil:
    cdef int i, orient, a, c
    if d == s.half:
        reduced_leaf(s)
        return
    a = s.others[2 * d]
    c = s.others[2 * d + 1]
    for i in range(1, s.half + 1):
        if s.used[i]:
            continue
        for orient in range(2):
            if s.budget and s.nodes >= s.budget:
                s.aborted = True
                return
            s.nodes += 1
            s.used[i] = True
            if orient == 0:
                s.label[a] = i
                s.label[c] = s.n - i
            else:
                s.label[a] = s.n - i
                s.label[c] = i
            if reduced_ok(s, d):
                reduced_dfs(s, d + 1)
            s.label[a] = -1
            s.label[c] = -1
            s.used[i] = False
            if s.stopped or s.aborted:
                return


def reduced_search(blocks, int n, int x, i64 t_num, bint strict, i64 budget):
    cdef ReducedState s
    cdef int nb = len(blocks), half = (n - 1) // 2, b, j, p, d, q, worst
    s.n = n
    s.nb = nb
    s.half = half
    s.blocks = <int *> malloc(3 * nb * sizeof(int))
    s.others = <int *> malloc(2 * half * sizeof(int))
    s.comp_start = <int *> calloc(half + 1, sizeof(int))
    s.comp = <int *> malloc(nb * sizeof(int))
    s.label = <int *> malloc(n * sizeof(int))
    s.best = <int *> malloc(n * sizeof(int))
    s.used = <bint *> calloc(half + 1, sizeof(bint))
    cdef int *labeled_after = <int *> malloc(n * sizeof(int))
    cdef int *fill = <int *> calloc(half, sizeof(int))
    try:
        d = 0
        for b in range(nb):
            for j in range(3):
                s.blocks[3 * b + j] = blocks[b][j]
        for p in range(n):
            s.label[p] = -1
        labeled_after[x] = -1
        for b in range(nb):
            if x == s.blocks[3 * b] or x == s.blocks[3 * b + 1] or x == s.blocks[3 * b + 2]:
                q = 0
                for j in range(3):
                    p = s.blocks[3 * b + j]
                    if p != x:
                        s.others[2 * d + q] = p
                        labeled_after[p] = d
                        q += 1
                d += 1
        for b in range(nb):
            worst = -1
            for j in range(3):
                if labeled_after[s.blocks[3 * b + j]] > worst:
                    worst = labeled_after[s.blocks[3 * b + j]]
            s.comp_start[worst + 1] += 1
        for d in range(half):
            s.comp_start[d + 1] += s.comp_start[d]
        for b in range(nb):
            worst = -1
            for j in range(3):
                if labeled_after[s.blocks[3 * b + j]] > worst:
                    worst = labeled_after[s.blocks[3 * b + j]]
            s.comp[s.comp_start[worst] + fill[worst]] = b
            fill[worst] += 1
        s.t = t_num
        s.strict = strict
        s.nodes = 0
        s.budget = budget
        s.found = False
        s.num = 0
        s.stopped = False
        s.aborted = False
        s.label[x] = 0
        with nogil:
            reduced_dfs(&s, 0)
        witness = [s.best[p] for p in range(n)] if s.found else None
        return (bool(s.found), s.num, 1, witness, s.nodes, not s.aborted, bool(s.stopped))
    finally:
        free(s.blocks)
        free(s.others)
        free(s.comp_start)
        free(s.comp)
        free(s.label)
        free(s.best)
        free(s.used)
        free(labeled_after)
        free(fill)
