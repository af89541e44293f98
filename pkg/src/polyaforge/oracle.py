"""Brute-force enumeration oracle.

Exhaustively builds canonical codes for rooted trees, free trees, and the
three cycle-pointed classes (marked fixpoint / edge-centered / vertex-
centered), independently of the coefficient DP.  Guarded to small sizes.

Cycle-pointed classes are enumerated through pointing classes of rooted
trees, built recursively from the decomposition of a marked cycle: it is
either the root (a 1-cycle), or lies inside exactly one child subtree, or
spans an orbit of l >= 2 identical child subtrees carrying a pointed copy.
Each rooted tree of size s must yield exactly s pointing classes, which the
tests assert; this is the n-fold-cover property of cycle pointing.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations_with_replacement

from .degrees import DegreeSet
from .errors import SizeLimitExceeded
from .trees import Tree, free_canonical_code, tree_from_code

ORACLE_MAX_N = 14

# pointing-class tags
_ROOT, _CHILD, _ORBIT = 0, 1, 2


def _check_size(n: int) -> None:
    if n > ORACLE_MAX_N:
        raise SizeLimitExceeded(f"oracle enumeration capped at n = {ORACLE_MAX_N}")
    if n < 1:
        raise ValueError("n must be >= 1")


@lru_cache(maxsize=None)
def _rooted(key: str, n: int) -> tuple:
    """Canonical codes of rooted trees with n vertices, outdegrees in Omega*."""
    omega_star = DegreeSet.parse(key)
    if n == 1:
        return ((0,),) if 0 in omega_star else ()
    out = []
    for forest in _forests(key, n - 1, n - 1):
        if len(forest) in omega_star:
            out.append(_assemble(forest))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def _forests(key: str, total: int, max_size: int) -> tuple:
    """All multisets (sorted tuples) of rooted-tree codes with given total size."""
    if total == 0:
        return ((),)
    out = []
    for s in range(min(total, max_size), 0, -1):
        pool = _rooted(key, s)
        if not pool:
            continue
        for m in range(1, total // s + 1):
            for combo in combinations_with_replacement(pool, m):
                for rest in _forests(key, total - m * s, s - 1):
                    out.append(tuple(sorted(combo + rest)))
    return tuple(out)


def _assemble(forest: tuple) -> tuple:
    code = (len(forest),)
    for child in sorted(forest):
        code = code + child
    return code


@lru_cache(maxsize=None)
def _pointed(key: str, n: int) -> tuple:
    """Pointing classes of rooted trees of size n (outdegrees in Omega*)."""
    omega_star = DegreeSet.parse(key)
    classes = [(_ROOT, t) for t in _rooted(key, n)]
    for t in range(1, n):  # size of the subtree holding the mark
        for pc in _pointed(key, t):
            rest = n - 1 - t
            if rest < 0:
                continue
            # mark strictly inside one child subtree
            for forest in _forests(key, rest, rest if rest else 1):
                if len(forest) + 1 in omega_star:
                    classes.append((_CHILD, pc, forest))
            # mark spans an orbit of ell identical pointed copies
            for ell in range(2, (n - 1) // t + 1):
                rest = n - 1 - ell * t
                for forest in _forests(key, rest, rest if rest else 1):
                    if len(forest) + ell in omega_star:
                        classes.append((_ORBIT, ell, pc, forest))
    return tuple(sorted(classes))


def pointed_underlying(pcode: tuple) -> tuple:
    """Rooted-tree code underlying a pointing class."""
    tag = pcode[0]
    if tag == _ROOT:
        return pcode[1]
    if tag == _CHILD:
        _, pc, forest = pcode
        return _assemble(forest + (pointed_underlying(pc),))
    _, ell, pc, forest = pcode
    return _assemble(forest + (pointed_underlying(pc),) * ell)


def _s_codes(omega: DegreeSet, n: int) -> list:
    """Rooted codes with root child count in Omega, subtrees Omega*-valid."""
    key = omega.shift(1).key()
    if n == 1:
        return [(0,)] if 0 in omega else []
    out = []
    for forest in _forests(key, n - 1, n - 1):
        if len(forest) in omega:
            out.append(_assemble(forest))
    return sorted(out)


def _e_codes(omega: DegreeSet, n: int) -> list:
    if n % 2 != 0:
        return []
    return [("E",) + pc for pc in _pointed(omega.shift(1).key(), n // 2)]


def _v_codes(omega: DegreeSet, n: int) -> list:
    key = omega.shift(1).key()
    out = []
    for t in range(1, n):
        for ell in range(2, (n - 1) // t + 1):
            rest = n - 1 - ell * t
            lam = omega.shift(ell)
            if lam.is_empty():
                continue
            for pc in _pointed(key, t):
                for forest in _forests(key, rest, rest if rest else 1):
                    if len(forest) in lam:
                        out.append(("V", ell, pc, forest))
    return sorted(out)


def _free_codes(omega: DegreeSet, n: int) -> list:
    if n == 1:
        return [(0,)]  # degenerate single vertex, by convention
    seen = set()
    for code in _s_codes(omega, n):
        t = tree_from_code(code).to_tree()
        seen.add(free_canonical_code(t))
    return sorted(seen)


def brute_force_enumerate(omega: DegreeSet, n: int, kind: str) -> list:
    """Duplicate-free canonical codes of all objects of the given kind and size.

    kind: rooted | free | S | E | V.  "rooted" interprets omega as the
    degree set of the unrooted model and enumerates Omega*-outdegree trees.
    """
    _check_size(n)
    omega.validate_as_omega()
    if kind == "rooted":
        return list(_rooted(omega.shift(1).key(), n))
    if kind == "free":
        return _free_codes(omega, n)
    if kind == "S":
        return _s_codes(omega, n)
    if kind == "E":
        return _e_codes(omega, n)
    if kind == "V":
        return _v_codes(omega, n)
    raise ValueError(f"unknown kind: {kind}")


# ---------------------------------------------------------------------------
# explicit automorphism search (test support for marked cycles)

def has_automorphism_with_cycle(tree: Tree, cycle) -> bool:
    """Is the cyclic sequence `cycle` a cycle of some automorphism of `tree`?

    Backtracking search seeded with v_i -> v_{i+1}; complete for small trees.
    """
    n = tree.n
    cycle = list(cycle)
    if len(set(cycle)) != len(cycle):
        return False
    sigma = {}
    for i, v in enumerate(cycle):
        sigma[v] = cycle[(i + 1) % len(cycle)]
    deg = [len(tree.adj[v]) for v in range(n)]

    def extend(mapping, inverse):
        if len(mapping) == n:
            for u in range(n):
                mu = mapping[u]
                if sorted(mapping[w] for w in tree.adj[u]) != sorted(tree.adj[mu]):
                    return False
            return True
        # pick a mapped vertex with an unmapped neighbor, else seed a new one
        pivot = None
        for u in mapping:
            if any(w not in mapping for w in tree.adj[u]):
                pivot = u
                break
        if pivot is None:
            for u in range(n):
                if u not in mapping:
                    for img in range(n):
                        if img not in inverse and deg[img] == deg[u]:
                            mapping[u] = img
                            inverse[img] = u
                            if extend(mapping, inverse):
                                return True
                            del mapping[u], inverse[img]
                    return False
            return True
        w = next(x for x in tree.adj[pivot] if x not in mapping)
        target = mapping[pivot]
        for img in tree.adj[target]:
            if img in inverse or deg[img] != deg[w]:
                continue
            mapping[w] = img
            inverse[img] = w
            if extend(mapping, inverse):
                return True
            del mapping[w], inverse[img]
        return False

    mapping = dict(sigma)
    inverse = {v: k for k, v in sigma.items()}
    if len(inverse) != len(mapping):
        return False
    # seeded pairs must preserve degree
    if any(deg[a] != deg[b] for a, b in mapping.items()):
        return False
    return extend(mapping, inverse)
