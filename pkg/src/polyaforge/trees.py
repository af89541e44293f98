"""Tree representations, canonical codes, and metric functionals.

Vertices are dense 0-based indices.  Canonical codes are preorder outdegree
sequences with children serialized in sorted-code order (AHU), so two rooted
trees get equal codes exactly when they are isomorphic as rooted trees.  A
free (unrooted) tree is encoded by rooting at its center; bicentral trees
encode as the sorted pair of the two half codes, which cannot collide with a
single-tree code because the outdegrees of a valid preorder sequence of
length L sum to L - 1.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

CanonicalCode = tuple  # tuple of non-negative ints


@dataclass(frozen=True)
class Tree:
    n: int
    adj: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_edges(n: int, edges) -> "Tree":
        edges = [(int(u), int(v)) for u, v in edges]
        if len(edges) != n - 1:
            raise ValueError(f"a tree on {n} vertices needs {n - 1} edges, got {len(edges)}")
        adj = [[] for _ in range(n)]
        seen = set()
        for u, v in edges:
            if u == v:
                raise ValueError("self-loop")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError("vertex index out of range")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError("parallel edge")
            seen.add(key)
            adj[u].append(v)
            adj[v].append(u)
        t = Tree(n, tuple(tuple(a) for a in adj))
        if n > 0 and len(_bfs_order(t.adj, 0)) != n:
            raise ValueError("graph is not connected")
        return t

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u in range(self.n):
            for v in self.adj[u]:
                if u < v:
                    out.append((u, v))
        out.sort()
        return out

    def to_ndjson(self) -> str:
        return json.dumps({"n": self.n, "edges": [list(e) for e in self.edges()]},
                          separators=(",", ":"))

    @staticmethod
    def from_ndjson(line: str) -> "Tree":
        obj = json.loads(line)
        return Tree.from_edges(obj["n"], obj["edges"])


@dataclass(frozen=True)
class RootedTree:
    n: int
    parent: tuple[int, ...]  # parent[0] == -1
    children: tuple[tuple[int, ...], ...] = field(default=None)  # derived

    def __post_init__(self):
        if self.parent[0] != -1:
            raise ValueError("vertex 0 must be the root (parent sentinel -1)")
        if self.children is None:
            ch = [[] for _ in range(self.n)]
            for v in range(1, self.n):
                p = self.parent[v]
                if not (0 <= p < self.n):
                    raise ValueError("parent index out of range")
                ch[p].append(v)
            object.__setattr__(self, "children", tuple(tuple(c) for c in ch))
        # acyclicity / spanning: every vertex must reach the root
        depth = [-1] * self.n
        depth[0] = 0
        for v in range(1, self.n):
            trail = []
            u = v
            while depth[u] < 0:
                trail.append(u)
                u = self.parent[u]
                if u < 0 or len(trail) > self.n:
                    raise ValueError("parent structure is not a rooted tree")
            for w in reversed(trail):
                depth[w] = depth[u] + 1
                u = w

    @staticmethod
    def from_parent(parent) -> "RootedTree":
        return RootedTree(len(parent), tuple(int(p) for p in parent))

    def to_tree(self) -> Tree:
        return Tree.from_edges(self.n, [(v, self.parent[v]) for v in range(1, self.n)])

    def outdegree(self, v: int) -> int:
        return len(self.children[v])

    def to_ndjson(self) -> str:
        return json.dumps({"n": self.n, "parent": list(self.parent)},
                          separators=(",", ":"))

    @staticmethod
    def from_ndjson(line: str) -> "RootedTree":
        obj = json.loads(line)
        return RootedTree(obj["n"], tuple(obj["parent"]))


# ---------------------------------------------------------------------------
# canonical codes

def canonical_code(t: RootedTree) -> CanonicalCode:
    """AHU code: preorder outdegrees with children in sorted-code order."""
    order = _topo_order(t)
    codes: list[tuple | None] = [None] * t.n
    for v in reversed(order):
        kid_codes = sorted(codes[c] for c in t.children[v])
        code = (len(kid_codes),)
        for kc in kid_codes:
            code = code + kc
        codes[v] = code
    return codes[0]


def rooted_code_from_adj(adj, root: int, parent: int = -1) -> CanonicalCode:
    """AHU code of the subtree of `adj` hanging from `root` away from `parent`."""
    # iterative post-order on (vertex, parent)
    codes: dict[int, tuple] = {}
    stack = [(root, parent, False)]
    while stack:
        v, p, done = stack.pop()
        if done:
            kid_codes = sorted(codes[c] for c in adj[v] if c != p)
            code = (len(kid_codes),)
            for kc in kid_codes:
                code = code + kc
            codes[v] = code
        else:
            stack.append((v, p, True))
            for c in adj[v]:
                if c != p:
                    stack.append((c, v, False))
    return codes[root]


def free_canonical_code(t: Tree) -> CanonicalCode:
    """Code invariant under unrooted isomorphism: root at the canonical center."""
    cs = centers(t)
    if len(cs) == 1:
        return rooted_code_from_adj(t.adj, cs[0])
    c1, c2 = cs
    a = rooted_code_from_adj(t.adj, c1, parent=c2)
    b = rooted_code_from_adj(t.adj, c2, parent=c1)
    lo, hi = (a, b) if a <= b else (b, a)
    return lo + hi


def tree_from_code(code: CanonicalCode) -> RootedTree:
    """Rebuild a rooted tree from its preorder outdegree sequence."""
    parent = [-1] * len(code)
    stack = [(0, code[0])]  # (vertex, children still to attach)
    for v in range(1, len(code)):
        while stack and stack[-1][1] == 0:
            stack.pop()
        p, left = stack[-1]
        stack[-1] = (p, left - 1)
        parent[v] = p
        stack.append((v, code[v]))
    return RootedTree.from_parent(parent)


# ---------------------------------------------------------------------------
# metrics

def _bfs_order(adj, src: int):
    dist = {src: 0}
    order = [src]
    q = deque([src])
    while q:
        u = q.popleft()
        for v in adj[u]:
            if v not in dist:
                dist[v] = dist[u] + 1
                order.append(v)
                q.append(v)
    return order


def _bfs_dist(adj, src: int, n: int):
    dist = [-1] * n
    dist[src] = 0
    q = deque([src])
    while q:
        u = q.popleft()
        for v in adj[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                q.append(v)
    return dist


def distance(t: Tree, u: int, v: int) -> int:
    if not (0 <= u < t.n and 0 <= v < t.n):
        raise IndexError("vertex index out of range")
    return _bfs_dist(t.adj, u, t.n)[v]


def diameter(t: Tree) -> int:
    """Longest path length via double BFS."""
    if t.n == 1:
        return 0
    d0 = _bfs_dist(t.adj, 0, t.n)
    far = max(range(t.n), key=lambda i: d0[i])
    d1 = _bfs_dist(t.adj, far, t.n)
    return max(d1)


def bfs_extremal_pair(t: Tree) -> tuple[int, int]:
    """End vertices of one diametral path (the pair found by double BFS)."""
    d0 = _bfs_dist(t.adj, 0, t.n)
    a = max(range(t.n), key=lambda i: d0[i])
    d1 = _bfs_dist(t.adj, a, t.n)
    b = max(range(t.n), key=lambda i: d1[i])
    return a, b


def centers(t: Tree) -> list[int]:
    """Classical center(s) by iterative leaf removal: 1 or 2 vertices."""
    n = t.n
    if n <= 2:
        return list(range(n))
    deg = [len(t.adj[v]) for v in range(n)]
    layer = [v for v in range(n) if deg[v] == 1]
    remaining = n
    while remaining > 2:
        nxt = []
        for u in layer:
            deg[u] = 0
            for v in t.adj[u]:
                if deg[v] > 0:
                    deg[v] -= 1
                    if deg[v] == 1:
                        nxt.append(v)
        remaining -= len(layer)
        layer = nxt
    return sorted(layer)


def k_neighborhood(t: Tree, v: int, k: int) -> RootedTree:
    """Subtree induced by vertices within distance k of v, rooted at v."""
    if not (0 <= v < t.n):
        raise IndexError("vertex index out of range")
    if k < 0:
        raise ValueError("k must be >= 0")
    idx = {v: 0}
    parent = [-1]
    q = deque([(v, 0)])
    while q:
        u, d = q.popleft()
        if d == k:
            continue
        for w in t.adj[u]:
            if w not in idx:
                idx[w] = len(parent)
                parent.append(idx[u])
                q.append((w, d + 1))
    return RootedTree.from_parent(parent)


def degree_histogram(t: Tree) -> dict[int, int]:
    hist: dict[int, int] = {}
    for v in range(t.n):
        d = len(t.adj[v])
        hist[d] = hist.get(d, 0) + 1
    return hist


def _topo_order(t: RootedTree) -> list[int]:
    """Parent-before-child order."""
    order = [0]
    i = 0
    while i < len(order):
        order.extend(t.children[order[i]])
        i += 1
    return order
