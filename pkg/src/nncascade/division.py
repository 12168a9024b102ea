"""r-divisions of Delaunay graphs: pieces with small fringes, and the samples they induce."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Sequence


@dataclass
class RDivision:
    """Vertex-disjoint pieces of a graph on vertices 0..n-1.

    ``fringes[l]`` holds the vertices of piece l with a neighbor outside it;
    the rest of the piece is its interior.
    """

    n: int
    r: int
    pieces: List[List[int]]
    fringes: List[List[int]]
    piece_of: List[int]
    work: int = 0
    sample: List[int] = field(default_factory=list)

    @property
    def trivial(self) -> bool:
        return len(self.pieces) <= 1

    @property
    def interiors(self) -> List[List[int]]:
        out = []
        for piece, fr in zip(self.pieces, self.fringes):
            fs = set(fr)
            out.append([v for v in piece if v not in fs])
        return out

    def membership(self, v: int) -> List[int]:
        return [self.piece_of[v]]


def piece_size_for(n: int, target: int) -> int:
    """Piece size r for n vertices and a target size: piece count rounded down, at least one."""
    count = max(1, n // target) if target > 0 else n
    return -(-n // count)


def _cut_score(V, side, adj):
    """Number of vertices of V with a neighbor of V on the other side."""
    score = 0
    work = 0
    for v in V:
        s = side[v]
        for u in adj[v]:
            work += 1
            t = side[u]
            if t >= 0 and t != s:
                score += 1
                break
    return score, work


def _split(V, adj, xs, ys, side):
    """Halve V along the best of an x-median, y-median or BFS-order cut."""
    h = (len(V) + 1) // 2
    work = 0
    by_x = V  # V is kept in index order, which is lexicographic
    by_y = sorted(V, key=lambda v: (ys[v], xs[v]))
    inset = set(V)
    order = []
    seen = set()
    for root in V:
        if root in seen:
            continue
        seen.add(root)
        queue = [root]
        qi = 0
        while qi < len(queue):
            v = queue[qi]
            qi += 1
            order.append(v)
            for u in adj[v]:
                work += 1
                if u in inset and u not in seen:
                    seen.add(u)
                    queue.append(u)
    best = None
    for cand in (by_x, by_y, order):
        for v in cand[:h]:
            side[v] = 0
        for v in cand[h:]:
            side[v] = 1
        score, w = _cut_score(V, side, adj)
        work += w
        if best is None or score < best[0]:
            best = (score, cand)
    for v in V:
        side[v] = -1
    cand = best[1]
    return sorted(cand[:h]), sorted(cand[h:]), work


def _fringe(piece, piece_of, pid, adj):
    out = []
    work = 0
    for v in piece:
        for u in adj[v]:
            work += 1
            if piece_of[u] != pid:
                out.append(v)
                break
    return out, work


def r_divide(adj: Sequence[Sequence[int]], r: int, xs, ys, c_f: float = 8.0) -> RDivision:
    """Recursive-separator r-division, then fringe repair and sibling merging."""
    n = len(adj)
    if r < 1:
        raise ValueError("piece size must be positive")
    m = sum(len(a) for a in adj) // 2
    if n >= 3 and m > 3 * n - 6:
        raise ValueError(f"{m} edges on {n} vertices: not a planar graph")
    if r >= n:
        return RDivision(n, r, [list(range(n))], [[]], [0] * n)
    side = [-1] * n
    work = 0
    leaves = []  # (vertices, parent id)
    stack = [(list(range(n)), -1)]
    node = 0
    while stack:
        V, parent = stack.pop()
        node += 1
        if len(V) <= r:
            leaves.append((V, parent))
            continue
        A, B, w = _split(V, adj, xs, ys, side)
        work += w
        stack.append((B, node))
        stack.append((A, node))

    limit = c_f * (r ** 0.5)
    piece_of = [0] * n

    def assign(pcs):
        for l, P in enumerate(pcs):
            for v in P:
                piece_of[v] = l

    pieces = [V for V, _ in leaves]
    parents = [p for _, p in leaves]
    assign(pieces)
    # split pieces whose fringe is too large
    changed = True
    while changed:
        changed = False
        out, outp = [], []
        for l, P in enumerate(pieces):
            fr, w = _fringe(P, piece_of, l, adj)
            work += w
            if len(fr) > limit and len(P) > 1:
                A, B, w = _split(P, adj, xs, ys, side)
                work += w
                node += 1
                out += [A, B]
                outp += [node, node]
                changed = True
            else:
                out.append(P)
                outp.append(parents[l])
        pieces, parents = out, outp
        assign(pieces)
    # merge sibling leaves that fit together
    merged, mparents = [], []
    l = 0
    while l < len(pieces):
        P = pieces[l]
        if (l + 1 < len(pieces) and parents[l] >= 0 and parents[l] == parents[l + 1]
                and len(P) + len(pieces[l + 1]) <= r):
            U = sorted(P + pieces[l + 1])
            for v in U:
                piece_of[v] = -2
            fr, w = _fringe(U, piece_of, -2, adj)
            work += w
            for v in P:
                piece_of[v] = l
            for v in pieces[l + 1]:
                piece_of[v] = l + 1
            if len(fr) <= limit:
                merged.append(U)
                mparents.append(-1)
                l += 2
                continue
        merged.append(P)
        mparents.append(parents[l])
        l += 1
    pieces = merged
    assign(pieces)
    fringes = []
    for l, P in enumerate(pieces):
        fr, w = _fringe(P, piece_of, l, adj)
        work += w
        fringes.append(fr)
    return RDivision(n, r, pieces, fringes, piece_of, work)


def division_for_level(adj, xs, ys, k: int, d: int, piece_scale: int, c_f: float) -> RDivision:
    """Division of a level's Delaunay graph with piece-size target piece_scale * d^(4k)."""
    n = len(adj)
    target = piece_scale * d ** (4 * k)
    if target >= n:
        div = RDivision(n, n, [list(range(n))], [[]], [0] * n)
    else:
        div = r_divide(adj, piece_size_for(n, target), xs, ys, c_f)
    div.sample = sorted(v for fr in div.fringes for v in fr)
    return div


def samples_for(diagram, k: int, d: int, piece_scale: int = 1, c_f: float = 8.0) -> list:
    """Sampled sites (coordinates) of a diagram's division at scale k."""
    div = division_for_level(diagram.adj, diagram.xs, diagram.ys, k, d, piece_scale, c_f)
    return [diagram.sites[v] for v in div.sample]


def validate_division(div: RDivision, adj, c_f: float, c_p: float, c_t: float) -> List[str]:
    """Violations of the piece invariants; empty when the division is sound."""
    bad = []
    n = div.n
    count = [0] * n
    for l, P in enumerate(div.pieces):
        if len(P) > div.r:
            bad.append(f"piece {l} has {len(P)} > r={div.r} vertices")
        inside = set(P)
        for v in P:
            count[v] += 1
        fr = sorted(v for v in P if any(u not in inside for u in adj[v]))
        if fr != sorted(div.fringes[l]):
            bad.append(f"piece {l} fringe differs from its definition")
        if len(fr) > c_f * div.r ** 0.5:
            bad.append(f"piece {l} fringe {len(fr)} > {c_f}*sqrt({div.r})")
    fringe_set = {v for fr in div.fringes for v in fr}
    for v in range(n):
        if count[v] == 0:
            bad.append(f"vertex {v} in no piece")
        elif count[v] > 1 and v not in fringe_set:
            bad.append(f"interior vertex {v} in {count[v]} pieces")
    if len(div.pieces) > c_p * max(1, n / div.r):
        bad.append(f"{len(div.pieces)} pieces > {c_p}*max(1, n/r)")
    if sum(len(P) for P in div.pieces) > c_t * n:
        bad.append("total piece size exceeds c_t * n")
    # interior vertices never see another piece
    for l, P in enumerate(div.pieces):
        inside = set(P)
        fs = set(div.fringes[l])
        for v in P:
            if v not in fs and any(u not in inside for u in adj[v]):
                bad.append(f"interior vertex {v} of piece {l} has an outside neighbor")
    return bad
