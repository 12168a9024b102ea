"""Pure-Python build kernels.

These mirror ``_ckernels.pyx`` line for line so that both backends return
identical structures and identical predicate counts. Inputs are lattice
sites sorted lexicographically; index order therefore is the tie order.
"""

BACKEND = "python"


def _orient(xs, ys, a, b, c):
    d = (xs[b] - xs[a]) * (ys[c] - ys[a]) - (ys[b] - ys[a]) * (xs[c] - xs[a])
    return (d > 0) - (d < 0)


def _incircle_sos(xs, ys, a, b, c, d):
    """Incircle sign for ccw abc with a lexicographic symbolic perturbation."""
    dx, dy = xs[d], ys[d]
    adx, ady = xs[a] - dx, ys[a] - dy
    bdx, bdy = xs[b] - dx, ys[b] - dy
    cdx, cdy = xs[c] - dx, ys[c] - dy
    det = ((adx * adx + ady * ady) * (bdx * cdy - bdy * cdx)
           - (bdx * bdx + bdy * bdy) * (adx * cdy - ady * cdx)
           + (cdx * cdx + cdy * cdy) * (adx * bdy - ady * bdx))
    if det:
        return 1 if det > 0 else -1
    # lifted-height perturbation, smaller index = larger epsilon
    order = sorted((a, b, c, d))
    for v in order:
        if v == a:
            s = _orient(xs, ys, d, b, c)
        elif v == b:
            s = _orient(xs, ys, d, c, a)
        elif v == c:
            s = _orient(xs, ys, d, a, b)
        else:
            s = -_orient(xs, ys, a, b, c)
        if s:
            return s
    return 0


def delaunay(xs, ys):
    """Delaunay graph of distinct lex-sorted lattice sites.

    Returns (adjacency as sorted neighbor lists, predicate count).
    """
    n = len(xs)
    adj = [[] for _ in range(n)]
    preds = 0
    if n <= 1:
        return adj, preds
    m = 2
    while m < n:
        preds += 1
        if _orient(xs, ys, 0, 1, m) != 0:
            break
        m += 1
    if m == n:
        for k in range(n - 1):
            adj[k].append(k + 1)
            adj[k + 1].append(k)
        return adj, preds

    V = []
    N = []
    o = _orient(xs, ys, 0, 1, m)
    for k in range(m - 1):
        if o > 0:
            V += [k, k + 1, m]
        else:
            V += [k + 1, k, m]
    # link edges generically, add ghosts on open edges
    edge_at = {}
    ntri = len(V) // 3
    for t in range(ntri):
        for k in range(3):
            edge_at[(V[3 * t + k], V[3 * t + (k + 1) % 3])] = 3 * t + k
    opens = [(a, b) for (a, b) in edge_at if (b, a) not in edge_at]
    opens.sort()
    for a, b in opens:
        t = len(V) // 3
        V += [b, a, -1]
        for k in range(3):
            edge_at[(V[3 * t + k], V[3 * t + (k + 1) % 3])] = 3 * t + k
    N = [-1] * len(V)
    for (a, b), slot in edge_at.items():
        N[slot] = edge_at[(b, a)] // 3
    hull_next = [-1] * n
    hull_prev = [-1] * n
    hull_tri = [-1] * n
    for t in range(ntri, len(V) // 3):
        b, a = V[3 * t], V[3 * t + 1]
        hull_next[a] = b
        hull_prev[b] = a
        hull_tri[a] = t

    def slot_of(u, t):
        base = 3 * u
        if N[base] == t:
            return 0
        if N[base + 1] == t:
            return 1
        return 2

    stack = []
    for p in range(m + 1, n):
        last = p - 1
        s = last
        while True:
            preds += 1
            if _orient(xs, ys, hull_prev[s], s, p) < 0:
                s = hull_prev[s]
            else:
                break
        e = last
        while True:
            preds += 1
            if _orient(xs, ys, e, hull_next[e], p) < 0:
                e = hull_next[e]
            else:
                break
        ghost_before = hull_tri[hull_prev[s]]
        ghost_after = hull_tri[e]
        first = hull_tri[s]
        last_conv = hull_tri[hull_prev[e]]
        a = s
        while a != e:
            t = hull_tri[a]
            V[3 * t + 2] = p
            stack.append(t)
            a = hull_next[a]
        g1 = len(V) // 3
        g2 = g1 + 1
        V += [p, s, -1, e, p, -1]
        N += [first, ghost_before, g2, last_conv, g1, ghost_after]
        N[3 * first + 1] = g1
        N[3 * ghost_before + 2] = g1
        N[3 * last_conv + 2] = g2
        N[3 * ghost_after + 1] = g2
        hull_next[s] = p
        hull_prev[p] = s
        hull_next[p] = e
        hull_prev[e] = p
        hull_tri[s] = g1
        hull_tri[p] = g2

        work = [(t, 0) for t in stack]
        stack.clear()
        while work:
            t, k = work.pop()
            u = N[3 * t + k]
            if V[3 * u] < 0 or V[3 * u + 1] < 0 or V[3 * u + 2] < 0:
                continue
            a = V[3 * t + k]
            b = V[3 * t + (k + 1) % 3]
            c = V[3 * t + (k + 2) % 3]
            k2 = slot_of(u, t)
            w = V[3 * u + (k2 + 2) % 3]
            preds += 1
            if _incircle_sos(xs, ys, a, b, c, w) <= 0:
                continue
            n_bc = N[3 * t + (k + 1) % 3]
            n_ca = N[3 * t + (k + 2) % 3]
            n_aw = N[3 * u + (k2 + 1) % 3]
            n_wb = N[3 * u + (k2 + 2) % 3]
            V[3 * t], V[3 * t + 1], V[3 * t + 2] = a, w, c
            N[3 * t], N[3 * t + 1], N[3 * t + 2] = n_aw, u, n_ca
            V[3 * u], V[3 * u + 1], V[3 * u + 2] = w, b, c
            N[3 * u], N[3 * u + 1], N[3 * u + 2] = n_wb, n_bc, t
            N[3 * n_aw + slot_of(n_aw, u)] = t
            N[3 * n_bc + slot_of(n_bc, t)] = u
            work.append((t, 0))
            work.append((u, 0))

    for t in range(len(V) // 3):
        a, b, c = V[3 * t], V[3 * t + 1], V[3 * t + 2]
        if a < 0 or b < 0 or c < 0:
            continue
        # each undirected edge appears in two triangles; record it from the
        # triangle where it runs from smaller to larger index, or where the
        # other side is a ghost
        for x, y, nb in ((a, b, N[3 * t]), (b, c, N[3 * t + 1]), (c, a, N[3 * t + 2])):
            ghost = V[3 * nb] < 0 or V[3 * nb + 1] < 0 or V[3 * nb + 2] < 0
            if x < y or ghost:
                adj[x].append(y)
                adj[y].append(x)
    for lst in adj:
        lst.sort()
    return adj, preds


def _meet(A1, B1, C1, A2, B2, C2):
    W = A1 * B2 - A2 * B1
    X = C1 * B2 - C2 * B1
    Y = A1 * C2 - A2 * C1
    if W < 0:
        return -X, -Y, -W
    return X, Y, W


def _box_lines(L):
    # bottom, right, top, left; tags -4, -1, -2, -3
    return ([0, 1, 0, -1], [-1, 0, 1, 0], [L, L, L, L], [-4, -1, -2, -3])


def voronoi_cells(xs, ys, adj, L):
    """Clip the box [-L, L]^2 by every Delaunay bisector of each site.

    Returns (table, predicate count). The table is the flat tuple
    (off, tag, A, B, C, X, Y, W): cell k owns slots off[k]..off[k+1]-1; edge
    s lies on line (A[s], B[s], C[s]) and is tagged with the neighbor index
    or a negative box side; vertex s = meet(edge s-1, edge s) is the start of
    edge s.
    """
    off = [0]
    TG, AA, BB, CC, XX, YY, WW = [], [], [], [], [], [], []
    preds = 0
    for p in range(len(xs)):
        px, py = xs[p], ys[p]
        A, B, C, tags = _box_lines(L)
        X = [-L, L, L, -L]
        Y = [-L, -L, L, L]
        W = [1, 1, 1, 1]
        pp = px * px + py * py
        for t in adj[p]:
            tx, ty = xs[t], ys[t]
            ha = 2 * (tx - px)
            hb = 2 * (ty - py)
            hc = tx * tx + ty * ty - pp
            m = len(tags)
            sg = []
            anypos = False
            for k in range(m):
                v = ha * X[k] + hb * Y[k] - hc * W[k]
                s = (v > 0) - (v < 0)
                sg.append(s)
                if s > 0:
                    anypos = True
            preds += m
            if not anypos:
                continue
            k0 = 0
            while sg[k0] >= 0:
                k0 += 1
            # the non-negative run rs..re, found by scanning on from k0
            k = (k0 + 1) % m
            while sg[k] < 0:
                k = (k + 1) % m
            rs = k
            while sg[(k + 1) % m] >= 0:
                k = (k + 1) % m
            re = k
            # keep edges re .. rs-1 (cyclic), then the new edge
            nA, nB, nC, nT, nX, nY, nW = [], [], [], [], [], [], []
            k = re
            while True:
                nA.append(A[k]); nB.append(B[k]); nC.append(C[k]); nT.append(tags[k])
                k = (k + 1) % m
                if k == rs:
                    break
            q = len(nT)
            X1, Y1, W1 = _meet(ha, hb, hc, nA[0], nB[0], nC[0])
            nX.append(X1); nY.append(Y1); nW.append(W1)
            k = (re + 1) % m
            for _ in range(q - 1):
                nX.append(X[k]); nY.append(Y[k]); nW.append(W[k])
                k = (k + 1) % m
            X2, Y2, W2 = _meet(nA[-1], nB[-1], nC[-1], ha, hb, hc)
            nA.append(ha); nB.append(hb); nC.append(hc); nT.append(t)
            nX.append(X2); nY.append(Y2); nW.append(W2)
            A, B, C, tags, X, Y, W = nA, nB, nC, nT, nX, nY, nW
        TG += tags; AA += A; BB += B; CC += C; XX += X; YY += Y; WW += W
        off.append(len(TG))
    return (off, TG, AA, BB, CC, XX, YY, WW), preds


def clip_convex(region, ha, hb, hc):
    """Clip a closed convex region by A*x + B*y <= C.

    Regions: ('poly', A, B, C, X, Y, W) with at least three vertices,
    ('seg', (a, b, c), p0, p1), ('pt', p) or None for empty. Every vertex
    is the meet of two input lines. Returns (region, predicate count).
    """
    kind = region[0]
    if kind == "pt":
        X, Y, W = region[1]
        v = ha * X + hb * Y - hc * W
        return (region if v <= 0 else None), 1
    if kind == "seg":
        line, p0, p1 = region[1], region[2], region[3]
        v0 = ha * p0[0] + hb * p0[1] - hc * p0[2]
        v1 = ha * p1[0] + hb * p1[1] - hc * p1[2]
        if v0 <= 0 and v1 <= 0:
            return region, 2
        if v0 >= 0 and v1 >= 0:
            if v0 == 0:
                return ("pt", p0), 2
            if v1 == 0:
                return ("pt", p1), 2
            return None, 2
        cut = _meet(line[0], line[1], line[2], ha, hb, hc)
        if v0 > 0:
            return ("seg", line, cut, p1), 2
        return ("seg", line, p0, cut), 2
    _, A, B, C, X, Y, W = region
    m = len(A)
    sg = []
    npos = nneg = 0
    for k in range(m):
        v = ha * X[k] + hb * Y[k] - hc * W[k]
        s = (v > 0) - (v < 0)
        sg.append(s)
        if s > 0:
            npos += 1
        elif s < 0:
            nneg += 1
    if npos == 0:
        return region, m
    if nneg == 0:
        zeros = [k for k in range(m) if sg[k] == 0]
        if not zeros:
            return None, m
        if len(zeros) == 1:
            k = zeros[0]
            return ("pt", (X[k], Y[k], W[k])), m
        k0, k1 = zeros
        if k1 == k0 + 1:
            # edge k0 runs from vertex k0 to vertex k0+1
            return ("seg", (A[k0], B[k0], C[k0]), (X[k0], Y[k0], W[k0]), (X[k1], Y[k1], W[k1])), m
        return ("seg", (A[k1], B[k1], C[k1]), (X[k1], Y[k1], W[k1]), (X[k0], Y[k0], W[k0])), m
    k0 = 0
    while sg[k0] >= 0:
        k0 += 1
    k = (k0 + 1) % m
    while sg[k] < 0:
        k = (k + 1) % m
    rs = k
    while sg[(k + 1) % m] >= 0:
        k = (k + 1) % m
    re = k
    nA, nB, nC, nX, nY, nW = [], [], [], [], [], []
    k = re
    while True:
        nA.append(A[k]); nB.append(B[k]); nC.append(C[k])
        k = (k + 1) % m
        if k == rs:
            break
    q = len(nA)
    X1, Y1, W1 = _meet(ha, hb, hc, nA[0], nB[0], nC[0])
    nX.append(X1); nY.append(Y1); nW.append(W1)
    k = (re + 1) % m
    for _ in range(q - 1):
        nX.append(X[k]); nY.append(Y[k]); nW.append(W[k])
        k = (k + 1) % m
    X2, Y2, W2 = _meet(nA[-1], nB[-1], nC[-1], ha, hb, hc)
    nA.append(ha); nB.append(hb); nC.append(hc)
    nX.append(X2); nY.append(Y2); nW.append(W2)
    if len(nA) == 2:
        # cannot happen for a proper cut of a polygon with interior
        raise AssertionError("clip produced a two-gon")
    return ("poly", nA, nB, nC, nX, nY, nW), m


def region_vertices(region):
    if region is None:
        return []
    if region[0] == "pt":
        return [region[1]]
    if region[0] == "seg":
        return [region[2], region[3]]
    _, A, B, C, X, Y, W = region
    return list(zip(X, Y, W))


def cell_overlaps(table_j, sampled, start, table_i, adj_i):
    """For each sampled upper-level site, intersect its cell with the lower cells it meets.

    sampled[k] is an index into the upper diagram and start[k] the index of
    the same site in the lower diagram. Breadth-first over lower cells,
    expanding through every nonempty (possibly degenerate) intersection.
    Returns ({lower index: [vertices]}, predicate count).
    """
    offj, _, Aj, Bj, Cj, Xj, Yj, Wj = table_j
    offi, _, Ai, Bi, Ci, _, _, _ = table_i
    out = {}
    preds = 0
    for s, root in zip(sampled, start):
        a, b = offj[s], offj[s + 1]
        base = ("poly", Aj[a:b], Bj[a:b], Cj[a:b], Xj[a:b], Yj[a:b], Wj[a:b])
        seen = {root}
        queue = [root]
        qi = 0
        while qi < len(queue):
            t = queue[qi]
            qi += 1
            region = base
            for k in range(offi[t], offi[t + 1]):
                region, c = clip_convex(region, Ai[k], Bi[k], Ci[k])
                preds += c
                if region is None:
                    break
            if region is None:
                continue
            out.setdefault(t, []).extend(region_vertices(region))
            for u in adj_i[t]:
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
    return out, preds
