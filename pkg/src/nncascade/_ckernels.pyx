# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled build kernels. Same algorithms, outputs and predicate counts as _kernels_py.

Coordinates must lie in [-2**13, 2**13]; every intermediate then fits in
128-bit integers (most fit in 64).
"""

from libc.stdint cimport int64_t
from libc.string cimport memcpy
from libcpp.vector cimport vector
from cpython cimport array
import array

cdef extern from *:
    ctypedef long long i128 "__int128"

BACKEND = "compiled"


cdef inline int sgn128(i128 v) noexcept nogil:
    return (v > 0) - (v < 0)


cdef inline int orient(const int64_t* xs, const int64_t* ys, int a, int b, int c) noexcept nogil:
    cdef int64_t d = (xs[b] - xs[a]) * (ys[c] - ys[a]) - (ys[b] - ys[a]) * (xs[c] - xs[a])
    return (d > 0) - (d < 0)


cdef int incircle_sos(const int64_t* xs, const int64_t* ys, int a, int b, int c, int d) noexcept nogil:
    cdef i128 dx = xs[d], dy = ys[d]
    cdef i128 adx = xs[a] - dx, ady = ys[a] - dy
    cdef i128 bdx = xs[b] - dx, bdy = ys[b] - dy
    cdef i128 cdx = xs[c] - dx, cdy = ys[c] - dy
    cdef i128 det = ((adx * adx + ady * ady) * (bdx * cdy - bdy * cdx)
                     - (bdx * bdx + bdy * bdy) * (adx * cdy - ady * cdx)
                     + (cdx * cdx + cdy * cdy) * (adx * bdy - ady * bdx))
    if det != 0:
        return 1 if det > 0 else -1
    cdef int order[4]
    order[0] = a; order[1] = b; order[2] = c; order[3] = d
    cdef int i, j, t, v, s
    for i in range(1, 4):
        t = order[i]
        j = i - 1
        while j >= 0 and order[j] > t:
            order[j + 1] = order[j]
            j -= 1
        order[j + 1] = t
    for i in range(4):
        v = order[i]
        if v == a:
            s = orient(xs, ys, d, b, c)
        elif v == b:
            s = orient(xs, ys, d, c, a)
        elif v == c:
            s = orient(xs, ys, d, a, b)
        else:
            s = -orient(xs, ys, a, b, c)
        if s != 0:
            return s
    return 0


cdef inline int slot_of(vector[int]& N, int u, int t) noexcept nogil:
    cdef int base = 3 * u
    if N[base] == t:
        return 0
    if N[base + 1] == t:
        return 1
    return 2


cdef inline bint is_ghost(vector[int]& V, int u) noexcept nogil:
    return V[3 * u] < 0 or V[3 * u + 1] < 0 or V[3 * u + 2] < 0


cdef vector[int64_t] to_vec(seq):
    cdef vector[int64_t] out
    out.reserve(len(seq))
    for v in seq:
        out.push_back(v)
    return out


def delaunay(xs_in, ys_in):
    """Delaunay graph of distinct lex-sorted lattice sites: (sorted neighbor lists, predicates)."""
    cdef vector[int64_t] xv = to_vec(xs_in)
    cdef vector[int64_t] yv = to_vec(ys_in)
    cdef int n = <int>xv.size()
    adj = [[] for _ in range(n)]
    cdef long long preds = 0
    if n <= 1:
        return adj, preds
    cdef const int64_t* xs = xv.data()
    cdef const int64_t* ys = yv.data()
    cdef int m = 2
    cdef int k
    while m < n:
        preds += 1
        if orient(xs, ys, 0, 1, m) != 0:
            break
        m += 1
    if m == n:
        for k in range(n - 1):
            adj[k].append(k + 1)
            adj[k + 1].append(k)
        return adj, preds

    cdef vector[int] V
    cdef vector[int] N
    cdef int o = orient(xs, ys, 0, 1, m)
    for k in range(m - 1):
        if o > 0:
            V.push_back(k); V.push_back(k + 1); V.push_back(m)
        else:
            V.push_back(k + 1); V.push_back(k); V.push_back(m)
    edge_at = {}
    cdef int ntri = <int>(V.size() // 3)
    cdef int t, kk
    for t in range(ntri):
        for kk in range(3):
            edge_at[(V[3 * t + kk], V[3 * t + (kk + 1) % 3])] = 3 * t + kk
    opens = sorted([(a, b) for (a, b) in edge_at if (b, a) not in edge_at])
    for a, b in opens:
        t = <int>(V.size() // 3)
        V.push_back(b); V.push_back(a); V.push_back(-1)
        for kk in range(3):
            edge_at[(V[3 * t + kk], V[3 * t + (kk + 1) % 3])] = 3 * t + kk
    N.resize(V.size(), -1)
    for (a, b), slot in edge_at.items():
        N[slot] = edge_at[(b, a)] // 3
    cdef vector[int] hull_next, hull_prev, hull_tri
    hull_next.resize(n, -1)
    hull_prev.resize(n, -1)
    hull_tri.resize(n, -1)
    cdef int ia, ib
    for t in range(ntri, <int>(V.size() // 3)):
        ib = V[3 * t]
        ia = V[3 * t + 1]
        hull_next[ia] = ib
        hull_prev[ib] = ia
        hull_tri[ia] = t

    cdef vector[int] work_t, work_k
    cdef int p, last, s, e, g1, g2, first, last_conv, ghost_before, ghost_after
    cdef int u, k2, w, av, bv, cv, n_bc, n_ca, n_aw, n_wb
    with nogil:
        for p in range(m + 1, n):
            last = p - 1
            s = last
            while True:
                preds += 1
                if orient(xs, ys, hull_prev[s], s, p) < 0:
                    s = hull_prev[s]
                else:
                    break
            e = last
            while True:
                preds += 1
                if orient(xs, ys, e, hull_next[e], p) < 0:
                    e = hull_next[e]
                else:
                    break
            ghost_before = hull_tri[hull_prev[s]]
            ghost_after = hull_tri[e]
            first = hull_tri[s]
            last_conv = hull_tri[hull_prev[e]]
            work_t.clear()
            work_k.clear()
            av = s
            while av != e:
                t = hull_tri[av]
                V[3 * t + 2] = p
                work_t.push_back(t)
                work_k.push_back(0)
                av = hull_next[av]
            g1 = <int>(V.size() // 3)
            g2 = g1 + 1
            V.push_back(p); V.push_back(s); V.push_back(-1)
            V.push_back(e); V.push_back(p); V.push_back(-1)
            N.push_back(first); N.push_back(ghost_before); N.push_back(g2)
            N.push_back(last_conv); N.push_back(g1); N.push_back(ghost_after)
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

            while work_t.size() > 0:
                t = work_t.back()
                kk = work_k.back()
                work_t.pop_back()
                work_k.pop_back()
                u = N[3 * t + kk]
                if is_ghost(V, u):
                    continue
                av = V[3 * t + kk]
                bv = V[3 * t + (kk + 1) % 3]
                cv = V[3 * t + (kk + 2) % 3]
                k2 = slot_of(N, u, t)
                w = V[3 * u + (k2 + 2) % 3]
                preds += 1
                if incircle_sos(xs, ys, av, bv, cv, w) <= 0:
                    continue
                n_bc = N[3 * t + (kk + 1) % 3]
                n_ca = N[3 * t + (kk + 2) % 3]
                n_aw = N[3 * u + (k2 + 1) % 3]
                n_wb = N[3 * u + (k2 + 2) % 3]
                V[3 * t] = av; V[3 * t + 1] = w; V[3 * t + 2] = cv
                N[3 * t] = n_aw; N[3 * t + 1] = u; N[3 * t + 2] = n_ca
                V[3 * u] = w; V[3 * u + 1] = bv; V[3 * u + 2] = cv
                N[3 * u] = n_wb; N[3 * u + 1] = n_bc; N[3 * u + 2] = t
                N[3 * n_aw + slot_of(N, n_aw, u)] = t
                N[3 * n_bc + slot_of(N, n_bc, t)] = u
                work_t.push_back(t); work_k.push_back(0)
                work_t.push_back(u); work_k.push_back(0)

    cdef int nt = <int>(V.size() // 3)
    cdef int x, y, nb
    for t in range(nt):
        if is_ghost(V, t):
            continue
        for kk in range(3):
            x = V[3 * t + kk]
            y = V[3 * t + (kk + 1) % 3]
            nb = N[3 * t + kk]
            if x < y or is_ghost(V, nb):
                adj[x].append(y)
                adj[y].append(x)
    for lst in adj:
        lst.sort()
    return adj, preds


cdef struct Poly:
    vector[int64_t] A
    vector[int64_t] B
    vector[int64_t] C
    vector[int64_t] X
    vector[int64_t] Y
    vector[int64_t] W
    vector[int64_t] T


cdef inline void meet(int64_t A1, int64_t B1, int64_t C1, int64_t A2, int64_t B2, int64_t C2,
                      int64_t* X, int64_t* Y, int64_t* W) noexcept nogil:
    cdef i128 w = <i128>A1 * B2 - <i128>A2 * B1
    cdef i128 x = <i128>C1 * B2 - <i128>C2 * B1
    cdef i128 y = <i128>A1 * C2 - <i128>A2 * C1
    if w < 0:
        w = -w; x = -x; y = -y
    X[0] = <int64_t>x
    Y[0] = <int64_t>y
    W[0] = <int64_t>w


cdef inline int side_sign(int64_t ha, int64_t hb, int64_t hc, int64_t X, int64_t Y, int64_t W) noexcept nogil:
    cdef i128 v = <i128>ha * X + <i128>hb * Y - <i128>hc * W
    return (v > 0) - (v < 0)


cdef void cut_poly(Poly* P, Poly* Q, vector[int]& sg, int64_t ha, int64_t hb, int64_t hc,
                   int64_t tag) noexcept nogil:
    """P has a proper cut by h (some vertex strictly outside, some strictly inside); result in Q."""
    cdef int m = <int>P.A.size()
    cdef int k0 = 0, k, rs, re, q, r
    cdef int64_t X1, Y1, W1
    while sg[k0] >= 0:
        k0 += 1
    k = (k0 + 1) % m
    while sg[k] < 0:
        k = (k + 1) % m
    rs = k
    while sg[(k + 1) % m] >= 0:
        k = (k + 1) % m
    re = k
    Q.A.clear(); Q.B.clear(); Q.C.clear(); Q.X.clear(); Q.Y.clear(); Q.W.clear(); Q.T.clear()
    k = re
    while True:
        Q.A.push_back(P.A[k]); Q.B.push_back(P.B[k]); Q.C.push_back(P.C[k]); Q.T.push_back(P.T[k])
        k = (k + 1) % m
        if k == rs:
            break
    q = <int>Q.A.size()
    meet(ha, hb, hc, Q.A[0], Q.B[0], Q.C[0], &X1, &Y1, &W1)
    Q.X.push_back(X1); Q.Y.push_back(Y1); Q.W.push_back(W1)
    k = (re + 1) % m
    for r in range(q - 1):
        Q.X.push_back(P.X[k]); Q.Y.push_back(P.Y[k]); Q.W.push_back(P.W[k])
        k = (k + 1) % m
    meet(Q.A[q - 1], Q.B[q - 1], Q.C[q - 1], ha, hb, hc, &X1, &Y1, &W1)
    Q.A.push_back(ha); Q.B.push_back(hb); Q.C.push_back(hc); Q.T.push_back(tag)
    Q.X.push_back(X1); Q.Y.push_back(Y1); Q.W.push_back(W1)


cdef array.array to_array(vector[int64_t]& v):
    cdef array.array out = array.array('q')
    array.resize(out, v.size())
    if v.size():
        memcpy(out.data.as_voidptr, v.data(), v.size() * sizeof(int64_t))
    return out


def voronoi_cells(xs_in, ys_in, adj, int64_t L):
    """Clipped Voronoi cells as a flat table; see the pure-Python kernel."""
    cdef vector[int64_t] xv = to_vec(xs_in)
    cdef vector[int64_t] yv = to_vec(ys_in)
    cdef int n = <int>xv.size()
    cdef vector[int64_t] off, TG, AA, BB, CC, XX, YY, WW
    cdef Poly P, Q
    cdef vector[int] sg
    cdef vector[int64_t] nbr
    cdef long long preds = 0
    cdef int p, k, m, ti
    cdef int64_t px, py, pp, tx, ty, ha, hb, hc
    cdef bint anypos
    off.push_back(0)
    for p in range(n):
        nbr = to_vec(adj[p])
        with nogil:
            px = xv[p]; py = yv[p]
            P.A.clear(); P.B.clear(); P.C.clear(); P.X.clear(); P.Y.clear(); P.W.clear(); P.T.clear()
            P.A.push_back(0); P.A.push_back(1); P.A.push_back(0); P.A.push_back(-1)
            P.B.push_back(-1); P.B.push_back(0); P.B.push_back(1); P.B.push_back(0)
            for k in range(4):
                P.C.push_back(L)
                P.W.push_back(1)
            P.T.push_back(-4); P.T.push_back(-1); P.T.push_back(-2); P.T.push_back(-3)
            P.X.push_back(-L); P.X.push_back(L); P.X.push_back(L); P.X.push_back(-L)
            P.Y.push_back(-L); P.Y.push_back(-L); P.Y.push_back(L); P.Y.push_back(L)
            pp = px * px + py * py
            for ti in range(<int>nbr.size()):
                tx = xv[nbr[ti]]; ty = yv[nbr[ti]]
                ha = 2 * (tx - px)
                hb = 2 * (ty - py)
                hc = tx * tx + ty * ty - pp
                m = <int>P.A.size()
                sg.resize(m)
                anypos = False
                for k in range(m):
                    sg[k] = side_sign(ha, hb, hc, P.X[k], P.Y[k], P.W[k])
                    if sg[k] > 0:
                        anypos = True
                preds += m
                if not anypos:
                    continue
                cut_poly(&P, &Q, sg, ha, hb, hc, nbr[ti])
                P.A.swap(Q.A); P.B.swap(Q.B); P.C.swap(Q.C); P.T.swap(Q.T)
                P.X.swap(Q.X); P.Y.swap(Q.Y); P.W.swap(Q.W)
            for k in range(<int>P.A.size()):
                TG.push_back(P.T[k]); AA.push_back(P.A[k]); BB.push_back(P.B[k]); CC.push_back(P.C[k])
                XX.push_back(P.X[k]); YY.push_back(P.Y[k]); WW.push_back(P.W[k])
            off.push_back(<int64_t>TG.size())
    table = (to_array(off), to_array(TG), to_array(AA), to_array(BB), to_array(CC),
             to_array(XX), to_array(YY), to_array(WW))
    return table, preds


# region kinds for cell_overlaps
cdef enum:
    EMPTY = 0
    POINT = 1
    SEG = 2
    POLY = 3


cdef struct Region:
    int kind
    Poly poly
    int64_t la, lb, lc  # carrier line of a segment
    int64_t x0, y0, w0, x1, y1, w1  # point / segment endpoints


cdef long long clip_region(Region* R, Poly* tmp, vector[int]& sg, int64_t ha, int64_t hb,
                           int64_t hc) noexcept nogil:
    cdef int m, k, npos, nneg, nz, z0, z1, s0, s1
    cdef int64_t cx, cy, cw
    if R.kind == POINT:
        if side_sign(ha, hb, hc, R.x0, R.y0, R.w0) > 0:
            R.kind = EMPTY
        return 1
    if R.kind == SEG:
        s0 = side_sign(ha, hb, hc, R.x0, R.y0, R.w0)
        s1 = side_sign(ha, hb, hc, R.x1, R.y1, R.w1)
        if s0 <= 0 and s1 <= 0:
            return 2
        if s0 >= 0 and s1 >= 0:
            if s0 == 0:
                R.kind = POINT
            elif s1 == 0:
                R.kind = POINT
                R.x0 = R.x1; R.y0 = R.y1; R.w0 = R.w1
            else:
                R.kind = EMPTY
            return 2
        meet(R.la, R.lb, R.lc, ha, hb, hc, &cx, &cy, &cw)
        if s0 > 0:
            R.x0 = cx; R.y0 = cy; R.w0 = cw
        else:
            R.x1 = cx; R.y1 = cy; R.w1 = cw
        return 2
    m = <int>R.poly.A.size()
    sg.resize(m)
    npos = 0
    nneg = 0
    for k in range(m):
        sg[k] = side_sign(ha, hb, hc, R.poly.X[k], R.poly.Y[k], R.poly.W[k])
        if sg[k] > 0:
            npos += 1
        elif sg[k] < 0:
            nneg += 1
    if npos == 0:
        return m
    if nneg == 0:
        nz = 0
        z0 = -1
        z1 = -1
        for k in range(m):
            if sg[k] == 0:
                if nz == 0:
                    z0 = k
                else:
                    z1 = k
                nz += 1
        if nz == 0:
            R.kind = EMPTY
        elif nz == 1:
            R.kind = POINT
            R.x0 = R.poly.X[z0]; R.y0 = R.poly.Y[z0]; R.w0 = R.poly.W[z0]
        elif z1 == z0 + 1:
            R.kind = SEG
            R.la = R.poly.A[z0]; R.lb = R.poly.B[z0]; R.lc = R.poly.C[z0]
            R.x0 = R.poly.X[z0]; R.y0 = R.poly.Y[z0]; R.w0 = R.poly.W[z0]
            R.x1 = R.poly.X[z1]; R.y1 = R.poly.Y[z1]; R.w1 = R.poly.W[z1]
        else:
            R.kind = SEG
            R.la = R.poly.A[z1]; R.lb = R.poly.B[z1]; R.lc = R.poly.C[z1]
            R.x0 = R.poly.X[z1]; R.y0 = R.poly.Y[z1]; R.w0 = R.poly.W[z1]
            R.x1 = R.poly.X[z0]; R.y1 = R.poly.Y[z0]; R.w1 = R.poly.W[z0]
        return m
    cut_poly(&R.poly, tmp, sg, ha, hb, hc, 0)
    R.poly.A.swap(tmp.A); R.poly.B.swap(tmp.B); R.poly.C.swap(tmp.C); R.poly.T.swap(tmp.T)
    R.poly.X.swap(tmp.X); R.poly.Y.swap(tmp.Y); R.poly.W.swap(tmp.W)
    return m


def cell_overlaps(table_j, sampled, start, table_i, adj_i):
    """Intersections of sampled upper cells with the lower cells they meet; see the pure-Python kernel."""
    cdef int64_t[:] offj = table_j[0]
    cdef int64_t[:] Aj = table_j[2]
    cdef int64_t[:] Bj = table_j[3]
    cdef int64_t[:] Cj = table_j[4]
    cdef int64_t[:] Xj = table_j[5]
    cdef int64_t[:] Yj = table_j[6]
    cdef int64_t[:] Wj = table_j[7]
    cdef int64_t[:] offi = table_i[0]
    cdef int64_t[:] Ai = table_i[2]
    cdef int64_t[:] Bi = table_i[3]
    cdef int64_t[:] Ci = table_i[4]
    cdef int ni = len(adj_i)
    cdef vector[int] aoff, anb
    cdef int t, k, u, s, root, qi, idx
    aoff.push_back(0)
    for t in range(ni):
        for u in adj_i[t]:
            anb.push_back(u)
        aoff.push_back(<int>anb.size())
    cdef vector[int] stamp
    stamp.resize(ni, 0)
    cdef vector[int] queue
    cdef Region R
    cdef Poly tmp
    cdef vector[int] sg
    cdef long long preds = 0
    cdef int a, b
    # collected vertices: per output record (t, X, Y, W)
    cdef vector[int] out_t
    cdef vector[int64_t] out_x, out_y, out_w
    cdef vector[int] samp = sampled
    cdef vector[int] roots = start
    with nogil:
        for idx in range(<int>samp.size()):
            s = samp[idx]
            root = roots[idx]
            queue.clear()
            queue.push_back(root)
            stamp[root] = idx + 1
            qi = 0
            while qi < <int>queue.size():
                t = queue[qi]
                qi += 1
                R.kind = POLY
                a = <int>offj[s]
                b = <int>offj[s + 1]
                R.poly.A.clear(); R.poly.B.clear(); R.poly.C.clear()
                R.poly.X.clear(); R.poly.Y.clear(); R.poly.W.clear(); R.poly.T.clear()
                for k in range(a, b):
                    R.poly.A.push_back(Aj[k]); R.poly.B.push_back(Bj[k]); R.poly.C.push_back(Cj[k])
                    R.poly.X.push_back(Xj[k]); R.poly.Y.push_back(Yj[k]); R.poly.W.push_back(Wj[k])
                    R.poly.T.push_back(0)
                for k in range(<int>offi[t], <int>offi[t + 1]):
                    preds += clip_region(&R, &tmp, sg, Ai[k], Bi[k], Ci[k])
                    if R.kind == EMPTY:
                        break
                if R.kind == EMPTY:
                    continue
                if R.kind == POINT:
                    out_t.push_back(t); out_x.push_back(R.x0); out_y.push_back(R.y0); out_w.push_back(R.w0)
                elif R.kind == SEG:
                    out_t.push_back(t); out_x.push_back(R.x0); out_y.push_back(R.y0); out_w.push_back(R.w0)
                    out_t.push_back(t); out_x.push_back(R.x1); out_y.push_back(R.y1); out_w.push_back(R.w1)
                else:
                    for k in range(<int>R.poly.X.size()):
                        out_t.push_back(t); out_x.push_back(R.poly.X[k])
                        out_y.push_back(R.poly.Y[k]); out_w.push_back(R.poly.W[k])
                for k in range(aoff[t], aoff[t + 1]):
                    u = anb[k]
                    if stamp[u] != idx + 1:
                        stamp[u] = idx + 1
                        queue.push_back(u)
    out = {}
    for k in range(<int>out_t.size()):
        t = out_t[k]
        lst = out.get(t)
        if lst is None:
            lst = out[t] = []
        lst.append((out_x[k], out_y[k], out_w[k]))
    return out, preds
