"""Pure-Python search kernels.

Mirrors ``_core.pyx`` exactly, node counts included; used when the compiled
extension is unavailable or ``MAXMINSUM_PURE_PYTHON`` is set.

Every kernel returns ``(found, num, den, witness, nodes, complete, stopped)``.
``witness[e]`` is the label given to element ``e`` (a point or a block).
"""

from __future__ import annotations

MAXMIN, MINDIFF, MINRATIO = 0, 1, 2


class _Abort(Exception):
    pass


def _accepts(objective, num, den, t_num, t_den, strict):
    # is num/den at least as good as the threshold (strictly better if strict)?
    if objective == MAXMIN:
        lhs, rhs = num * t_den, t_num * den
        return lhs > rhs if strict else lhs >= rhs
    lhs, rhs = num * t_den, t_num * den
    return lhs < rhs if strict else lhs <= rhs


def point_search(blocks, n, objective, root, t_num, t_den, strict, stop_num, stop_den, budget):
    """Best point labeling of ``blocks`` whose label-0 point is ``root``.

    Labels are handed out in increasing order; at each step candidate points
    are tried in increasing index, so the first acceptable leaf is the
    lexicographically smallest "point receiving label 0, 1, ..." sequence.
    """
    nb = len(blocks)
    incident = [[] for _ in range(n)]
    for b, blk in enumerate(blocks):
        for p in blk:
            incident[p].append(b)
    assigned_sum = [0] * nb
    free = [3] * nb
    label = [-1] * n
    top = [0, n - 1, 2 * n - 3, 3 * n - 6]
    st = {"t_num": t_num, "t_den": t_den, "strict": strict, "nodes": 0,
          "found": False, "num": 0, "den": 1, "witness": None, "stopped": False}

    def feasible(lab):
        # labels 0..lab are placed; lab+1..n-1 remain
        lo = lab + 1
        umin = None
        lmax = None
        for b in range(nb):
            k = free[b]
            hi_b = assigned_sum[b] + top[k]
            lo_b = assigned_sum[b] + k * lo + k * (k - 1) // 2
            if umin is None or hi_b < umin:
                umin = hi_b
            if lmax is None or lo_b > lmax:
                lmax = lo_b
        if objective == MAXMIN:
            return _accepts(MAXMIN, umin, 1, st["t_num"], st["t_den"], st["strict"])
        if objective == MINDIFF:
            return _accepts(MINDIFF, lmax - umin, 1, st["t_num"], st["t_den"], st["strict"])
        return _accepts(MINRATIO, lmax, umin, st["t_num"], st["t_den"], st["strict"])

    def place(p, lab):
        label[p] = lab
        for b in incident[p]:
            assigned_sum[b] += lab
            free[b] -= 1

    def unplace(p, lab):
        label[p] = -1
        for b in incident[p]:
            assigned_sum[b] -= lab
            free[b] += 1

    def leaf():
        lo_sum = min(assigned_sum)
        hi_sum = max(assigned_sum)
        if objective == MAXMIN:
            num, den = lo_sum, 1
        elif objective == MINDIFF:
            num, den = hi_sum - lo_sum, 1
        else:
            num, den = hi_sum, lo_sum
        if not _accepts(objective, num, den, st["t_num"], st["t_den"], st["strict"]):
            return
        st.update(found=True, num=num, den=den, witness=list(label),
                  t_num=num, t_den=den, strict=1)
        if stop_den and not _accepts(objective, stop_num, stop_den, num, den, 1):
            st["stopped"] = True

    def dfs(lab):
        if lab == n:
            leaf()
            return
        for p in range(n):
            if label[p] >= 0:
                continue
            if budget and st["nodes"] >= budget:
                raise _Abort
            st["nodes"] += 1
            place(p, lab)
            if feasible(lab):
                dfs(lab + 1)
            unplace(p, lab)
            if st["stopped"]:
                return

    complete = True
    try:
        if budget and st["nodes"] >= budget:
            raise _Abort
        st["nodes"] += 1
        place(root, 0)
        if feasible(0):
            dfs(1)
    except _Abort:
        complete = False
    return (st["found"], st["num"], st["den"], st["witness"], st["nodes"], complete, st["stopped"])


def dual_search(blocks, n, root, t_num, strict, stop_num, budget):
    """Best block labeling (max dual min-sum) with block ``root`` labeled 0.

    Same enumeration discipline as :func:`point_search`, over blocks. Pruning
    uses two bounds: each point can at best collect the largest remaining
    labels, and the total excess over the threshold is fixed by the label sum,
    while each point collects at least the smallest remaining labels.
    """
    nb = len(blocks)
    r = (n - 1) // 2
    total = 3 * nb * (nb - 1) // 2
    cur = [0] * n
    free = [r] * n
    label = [-1] * nb
    top = [0] * (r + 1)
    for k in range(1, r + 1):
        top[k] = top[k - 1] + nb - k
    st = {"t": t_num, "strict": strict, "nodes": 0, "found": False,
          "num": 0, "witness": None, "stopped": False}

    def feasible(lab):
        need = st["t"] + 1 if st["strict"] else st["t"]
        slack = total - n * need
        lo = lab + 1
        waste = 0
        for p in range(n):
            k = free[p]
            if cur[p] + top[k] < need:
                return False
            w = cur[p] + k * lo + k * (k - 1) // 2 - need
            if w > 0:
                waste += w
        return waste <= slack

    def place(b, lab):
        label[b] = lab
        for p in blocks[b]:
            cur[p] += lab
            free[p] -= 1

    def unplace(b, lab):
        label[b] = -1
        for p in blocks[b]:
            cur[p] -= lab
            free[p] += 1

    def leaf():
        value = min(cur)
        ok = value > st["t"] if st["strict"] else value >= st["t"]
        if not ok:
            return
        st.update(found=True, num=value, witness=list(label), t=value, strict=1)
        if stop_num >= 0 and value >= stop_num:
            st["stopped"] = True

    def dfs(lab):
        if lab == nb:
            leaf()
            return
        for b in range(nb):
            if label[b] >= 0:
                continue
            if budget and st["nodes"] >= budget:
                raise _Abort
            st["nodes"] += 1
            place(b, lab)
            if feasible(lab):
                dfs(lab + 1)
            unplace(b, lab)
            if st["stopped"]:
                return

    complete = True
    try:
        if budget and st["nodes"] >= budget:
            raise _Abort
        st["nodes"] += 1
        place(root, 0)
        if feasible(0):
            dfs(1)
    except _Abort:
        complete = False
    return (st["found"], st["num"], 1, st["witness"], st["nodes"], complete, st["stopped"])


def reduced_search(blocks, n, x, t_num, strict, budget):
    """MaxMin search restricted to labelings sending ``x`` to 0 and every
    block through ``x`` onto some ``{0, i, n-i}``.

    Blocks through ``x`` are taken in increasing index; each is matched to an
    unused ``i`` (increasing), first with its smaller other point labeled
    ``i`` (orientation 0), then ``n-i`` (orientation 1). Stops once a labeling
    with min-sum ``n`` is found, which no labeling can beat.
    """
    nb = len(blocks)
    through = [b for b in range(nb) if x in blocks[b]]
    half = (n - 1) // 2
    others = []
    for b in through:
        a, c = sorted(p for p in blocks[b] if p != x)
        others.append((a, c))
    # blocks all of whose points are labeled once the first d+1 blocks through x are
    labeled_after = [0] * n
    labeled_after[x] = -1
    for d, (a, c) in enumerate(others):
        labeled_after[a] = d
        labeled_after[c] = d
    completes = [[] for _ in range(half)]
    for b, blk in enumerate(blocks):
        completes[max(labeled_after[p] for p in blk)].append(b)
    label = [-1] * n
    used = [False] * (half + 1)
    st = {"t": t_num, "strict": strict, "nodes": 0, "found": False,
          "num": 0, "witness": None, "stopped": False}

    def ok_at(d):
        need = st["t"] + 1 if st["strict"] else st["t"]
        for b in completes[d]:
            a, bb, c = blocks[b]
            if label[a] + label[bb] + label[c] < need:
                return False
        return True

    def leaf():
        value = min(label[a] + label[b] + label[c] for a, b, c in blocks)
        ok = value > st["t"] if st["strict"] else value >= st["t"]
        if not ok:
            return
        st.update(found=True, num=value, witness=list(label), t=value, strict=1)
        if value >= n:
            st["stopped"] = True

    def dfs(d):
        if d == half:
            leaf()
            return
        a, c = others[d]
        for i in range(1, half + 1):
            if used[i]:
                continue
            for orient in (0, 1):
                if budget and st["nodes"] >= budget:
                    raise _Abort
                st["nodes"] += 1
                used[i] = True
                if orient == 0:
                    label[a], label[c] = i, n - i
                else:
                    label[a], label[c] = n - i, i
                if ok_at(d):
                    dfs(d + 1)
                label[a] = label[c] = -1
                used[i] = False
                if st["stopped"]:
                    return

    complete = True
    label[x] = 0
    try:
        dfs(0)
    except _Abort:
        complete = False
    return (st["found"], st["num"], 1, st["witness"], st["nodes"], complete, st["stopped"])
